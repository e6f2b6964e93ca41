use super::OpTable;

/// `S^{·k}`: all products of `k` elements, sorted.
pub fn power_ideal(table: &OpTable, k: usize) -> Vec<usize> {
    assert!(k >= 1, "ideal powers start at 1");
    let n = table.size();
    let mut current: Vec<usize> = (0..n).collect();
    for _ in 1..k {
        let mut next = vec![false; n];
        for x in 0..n {
            for &y in &current {
                next[table.mul(x, y)] = true;
            }
        }
        let next: Vec<usize> = (0..n).filter(|&z| next[z]).collect();
        if next == current {
            break;
        }
        current = next;
    }
    current
}

pub fn idempotents(table: &OpTable) -> Vec<usize> {
    (0..table.size())
        .filter(|&e| table.mul(e, e) == e)
        .collect()
}

/// The strictly decreasing chain `S = S^{·1} ⊋ S^{·2} ⊋ ...` up to the point
/// where it stabilises.
pub fn ideal_chain(table: &OpTable) -> Vec<Vec<usize>> {
    let mut chain = vec![(0..table.size()).collect::<Vec<_>>()];
    loop {
        let last = chain.last().expect("chain is never empty");
        let n = table.size();
        let mut hit = vec![false; n];
        for x in 0..n {
            for &y in last {
                hit[table.mul(x, y)] = true;
            }
        }
        let next: Vec<usize> = (0..n).filter(|&z| hit[z]).collect();
        if &next == last {
            return chain;
        }
        chain.push(next);
    }
}

/// For each element the largest `k` with `x ∈ S^{·k}`, capped at the length
/// of the ideal chain.
pub fn ideal_depth(table: &OpTable) -> Vec<usize> {
    let mut depth = vec![0; table.size()];
    for (k, ideal) in ideal_chain(table).iter().enumerate() {
        for &x in ideal {
            depth[x] = k + 1;
        }
    }
    depth
}
