use crate::{adjacency, bits, check_vertices, mask_connected, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CvcSolution {
    /// `min(OPT, k+1)`, or `None` when no connected vertex cover exists.
    pub value: Option<usize>,
    /// A minimum connected vertex cover when one exists.
    pub witness: Vec<usize>,
}

pub fn is_cvc(n: usize, edges: &[(usize, usize)], s: &[usize]) -> bool {
    let Ok(adj) = adjacency(n, edges) else { return false };
    let mut mask = 0u32;
    for &v in s {
        if v >= n {
            return false;
        }
        mask |= 1 << v;
    }
    edges.iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1) && mask_connected(&adj, mask)
}

/// Minimum connected vertex cover by enumerating vertex sets in order of
/// size; the reported value is capped at `k + 1`.
pub fn exact_cvc(n: usize, edges: &[(usize, usize)], k: usize) -> Result<CvcSolution> {
    check_vertices(n, 20)?;
    let adj = adjacency(n, edges)?;
    let covers = |mask: u32| edges.iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1);
    let mut best: Option<u32> = None;
    for mask in 0u32..1 << n {
        if best.is_some_and(|b| b.count_ones() <= mask.count_ones()) {
            continue;
        }
        if covers(mask) && mask_connected(&adj, mask) {
            best = Some(mask);
        }
    }
    Ok(match best {
        Some(m) => CvcSolution { value: Some((m.count_ones() as usize).min(k + 1)), witness: bits(m) },
        None => CvcSolution { value: None, witness: Vec::new() },
    })
}
