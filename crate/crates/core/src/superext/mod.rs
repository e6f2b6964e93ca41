//! The superextension `λ(S)` of a finite semigroup: the star product on
//! maximal linked families, full multiplication tables, induced
//! homomorphisms, multiplication shifts and element names.

mod labels;
mod lambda;
mod shift;

pub use labels::{all_labels, paper_labels, PaperLabel};
pub use lambda::{
    build_lambda, build_lambda_with, lambda_hom, star, LambdaOptions, LambdaSemigroup,
    MAX_LAMBDA_BASE,
};
pub use shift::{shift_analysis, ShiftAnalysis, ShiftKind};
