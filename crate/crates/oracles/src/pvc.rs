use crate::{check_vertices, OracleError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PvcSolution {
    pub value: usize,
    pub witness: Vec<usize>,
}

pub fn covered(edges: &[(usize, usize)], s: &[usize]) -> usize {
    edges.iter().filter(|(u, v)| s.contains(u) || s.contains(v)).count()
}

/// Most edges touched by at most `k` vertices, over every such set.
pub fn exact_pvc(n: usize, edges: &[(usize, usize)], k: usize) -> Result<PvcSolution> {
    check_vertices(n, 32)?;
    if edges.iter().any(|&(u, v)| u >= n || v >= n) {
        return Err(OracleError::BadInput("edge endpoint out of range".into()));
    }
    let size = k.min(n);
    let mut best = PvcSolution { value: 0, witness: (0..size).collect() };
    let mut pick: Vec<usize> = (0..size).collect();
    loop {
        let c = covered(edges, &pick);
        if c > best.value {
            best = PvcSolution { value: c, witness: pick.clone() };
        }
        // next combination in lexicographic order
        let Some(i) = (0..size).rev().find(|&i| pick[i] < n - size + i) else { break };
        pick[i] += 1;
        for j in i + 1..size {
            pick[j] = pick[j - 1] + 1;
        }
    }
    Ok(best)
}
