use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use superext::report::{report_table, rows_to_csv, rows_to_json, Verdict};
use superext::semigroup::{
    automorphisms_with, group_shape, isomorphic_with, make_monogenic, power_ideal, Isomorphism,
    MonogenicSpec, OpTable, SearchOptions, Structure,
};
use superext::setfam::count_mlf;
use superext::shifts::conjecture_probe;
use superext::superext::{build_lambda_with, LambdaOptions};
use superext::Error;

/// Superextensions of finite semigroups.
#[derive(Parser)]
#[command(name = "superext", version)]
struct Cli {
    /// Allow the larger tiers (7 points for counting, 6-point bases for tables).
    #[arg(long, global = true)]
    perf: bool,
    /// Node budget for automorphism and isomorphism searches.
    #[arg(long, global = true, value_name = "NODES")]
    budget: Option<u64>,
    /// Write the result to this path instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Count the maximal linked families on n points.
    LambdaCount { n: usize },
    /// Write the table of lambda(M_{r,m}^k) as JSON.
    Build {
        r: usize,
        m: usize,
        #[arg(default_value_t = 1)]
        k: usize,
    },
    /// Automorphism group of a table file.
    Aut { table: PathBuf },
    /// Automorphism groups of every M_{r,m}^k up to the given size, compared
    /// with the bundled catalog.
    ReportTable {
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
    /// Decide whether two table files are isomorphic.
    Iso { a: PathBuf, b: PathBuf },
    /// Run the conjecture probe on all monogenic semigroups up to a size.
    Conjectures {
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
}

enum Failure {
    Core(Error),
    Io(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("SUPEREXT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // a second initialisation only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Capacity { .. } | Error::Budget { .. } => 2,
                Error::Parse(_) | Error::InvalidInput(_) => 3,
            })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let mut opts = SearchOptions::default();
    if let Some(b) = cli.budget {
        opts.budget = b;
    }
    match &cli.command {
        Command::LambdaCount { n } => lambda_count(cli, *n),
        Command::Build { r, m, k } => build(cli, *r, *m, *k),
        Command::Aut { table } => aut(cli, table, &opts),
        Command::ReportTable { max_size } => report(cli, *max_size, &opts),
        Command::Iso { a, b } => iso(cli, a, b, &opts),
        Command::Conjectures { max_size } => {
            let report = conjecture_probe(*max_size, &opts)?;
            let text = serde_json::to_string_pretty(&report).expect("report serialises");
            emit(cli.out.as_deref(), &text)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", text.trim_end()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Failure::Io(format!("stdout: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}

fn read_table(path: &Path) -> Result<OpTable, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(OpTable::from_json_str(&text)?)
}

fn lambda_count(cli: &Cli, n: usize) -> Outcome {
    let limit = if cli.perf { 7 } else { 6 };
    if n == 0 || n > limit {
        return Err(Error::Capacity {
            what: "ground set size for counting",
            got: n,
            limit,
        }
        .into());
    }
    let start = Instant::now();
    let count = count_mlf(n)?;
    let secs = start.elapsed().as_secs_f64();
    let text = if cli.format == Some(Format::Json) {
        json!({ "n": n, "count": count, "seconds": secs }).to_string()
    } else {
        format!("lambda({n}) = {count}  ({secs:.3} s)")
    };
    emit(cli.out.as_deref(), &text)
}

fn build(cli: &Cli, r: usize, m: usize, k: usize) -> Outcome {
    let spec = MonogenicSpec::new(r, m)?;
    if k == 0 || k > r {
        return Err(Error::InvalidInput(format!("power k must be in 1..={r}")).into());
    }
    let whole = make_monogenic(spec)?;
    let lam = build_lambda_with(&whole, LambdaOptions { perf: cli.perf })?;
    let (_, table) = lam.sub_lambda(&power_ideal(&whole, k))?;
    emit(cli.out.as_deref(), &table.to_json_string())
}

fn aut(cli: &Cli, path: &Path, opts: &SearchOptions) -> Outcome {
    let table = read_table(path)?;
    let search = automorphisms_with(&Structure::new(&table), opts)?;
    let shape = group_shape(&search.group, None);
    let label_sets = |sets: Vec<Vec<usize>>| -> Vec<Vec<String>> {
        sets.into_iter()
            .map(|s| s.into_iter().map(|x| table.label(x).to_string()).collect())
            .collect()
    };
    let orbits = label_sets(search.group.orbits());
    let text = if cli.format == Some(Format::Json) {
        serde_json::to_string_pretty(&json!({
            "order": shape.order.to_string(),
            "named_form": shape.named_form.as_ref().map(|_| shape.key()),
            "generators": search.group.generators(),
            "orbits": orbits,
            "nodes": search.nodes,
        }))
        .expect("json value serialises")
    } else {
        let mut lines = vec![
            format!("order: {}", shape.order),
            format!(
                "named form: {}",
                if shape.named_form.is_some() {
                    shape.key()
                } else {
                    "-".into()
                }
            ),
            "generators:".into(),
        ];
        lines.extend(
            search
                .group
                .generators()
                .iter()
                .map(|g| format!("  {:?}", g.images())),
        );
        lines.push("orbits:".into());
        lines.extend(
            orbits
                .iter()
                .filter(|o| o.len() > 1)
                .map(|o| format!("  {{{}}}", o.join(", "))),
        );
        lines.join("\n")
    };
    emit(cli.out.as_deref(), &text)
}

fn report(cli: &Cli, max_size: usize, opts: &SearchOptions) -> Outcome {
    let rows = report_table(max_size, opts)?;
    let text = match cli.format {
        Some(Format::Json) => rows_to_json(&rows)?,
        _ => rows_to_csv(&rows)?,
    };
    emit(cli.out.as_deref(), &text)?;
    let flagged = rows
        .iter()
        .filter(|r| r.verdict == Verdict::PaperEntryFlagged)
        .count();
    let mismatched: Vec<String> = rows
        .iter()
        .filter(|r| r.verdict == Verdict::Mismatch)
        .map(|r| r.name())
        .collect();
    eprintln!(
        "{} rows, {} flagged, {} mismatched",
        rows.len(),
        flagged,
        mismatched.len()
    );
    if mismatched.is_empty() {
        Ok(())
    } else {
        eprintln!("mismatch: {}", mismatched.join(", "));
        Err(Failure::Mismatch)
    }
}

fn iso(cli: &Cli, a: &Path, b: &Path, opts: &SearchOptions) -> Outcome {
    let (ta, tb) = (read_table(a)?, read_table(b)?);
    let verdict = isomorphic_with(&Structure::new(&ta), &Structure::new(&tb), opts)?;
    let text = match (&verdict, cli.format == Some(Format::Json)) {
        (Isomorphism::Isomorphic(w), true) => json!({
            "isomorphic": true,
            "witness": w.iter().enumerate()
                .map(|(x, &y)| (ta.label(x).to_string(), json!(tb.label(y))))
                .collect::<serde_json::Map<_, _>>(),
        })
        .to_string(),
        (Isomorphism::NotIsomorphic(why), true) => {
            json!({ "isomorphic": false, "reason": why.to_string() }).to_string()
        }
        (Isomorphism::Isomorphic(w), false) => {
            let mut lines = vec!["isomorphic".to_string()];
            lines.extend(
                w.iter()
                    .enumerate()
                    .map(|(x, &y)| format!("  {} -> {}", ta.label(x), tb.label(y))),
            );
            lines.join("\n")
        }
        (Isomorphism::NotIsomorphic(why), false) => format!("not isomorphic: {why}"),
    };
    emit(cli.out.as_deref(), &text)
}
