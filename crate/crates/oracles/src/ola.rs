use crate::{check_vertices, OracleError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OlaSolution {
    pub value: u64,
    /// Vertices in layout order.
    pub witness: Vec<usize>,
}

/// `Σ |σ(u) − σ(v)|` for the layout listing vertices in `order`.
pub fn layout_value(n: usize, edges: &[(usize, usize)], order: &[usize]) -> Option<u64> {
    let mut pos = vec![usize::MAX; n];
    if order.len() != n {
        return None;
    }
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return None;
        }
        pos[v] = i;
    }
    Some(edges.iter().map(|&(u, v)| pos[u].abs_diff(pos[v]) as u64).sum())
}

fn check(n: usize, edges: &[(usize, usize)]) -> Result<()> {
    if edges.iter().any(|&(u, v)| u >= n || v >= n || u == v) {
        return Err(OracleError::BadInput("edge endpoint out of range".into()));
    }
    Ok(())
}

/// Minimum linear arrangement by trying every permutation.
pub fn exact_ola(n: usize, edges: &[(usize, usize)]) -> Result<OlaSolution> {
    check_vertices(n, 9)?;
    check(n, edges)?;
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = OlaSolution { value: layout_value(n, edges, &order).unwrap(), witness: order.clone() };
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            let v = layout_value(n, edges, &order).unwrap();
            if v < best.value {
                best = OlaSolution { value: v, witness: order.clone() };
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

/// Minimum linear arrangement via the cut formulation: the value of a
/// layout is the sum, over its `n − 1` gaps, of edges crossing the gap.
pub fn exact_ola_cuts(n: usize, edges: &[(usize, usize)]) -> Result<OlaSolution> {
    check_vertices(n, 20)?;
    check(n, edges)?;
    let full = (1usize << n) - 1;
    let cut = |s: usize| edges.iter().filter(|&&(u, v)| (s >> u & 1) != (s >> v & 1)).count() as u64;
    let mut table = vec![u64::MAX; full + 1];
    table[0] = 0;
    for s in 1..=full {
        let c = if s == full { 0 } else { cut(s) };
        let mut best = u64::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            best = best.min(table[s & !(1 << v)]);
        }
        table[s] = best + c;
    }
    let mut witness = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let c = if s == full { 0 } else { cut(s) };
        let v = (0..n).find(|&v| s >> v & 1 == 1 && table[s & !(1 << v)] + c == table[s]).unwrap();
        witness.push(v);
        s &= !(1 << v);
    }
    witness.reverse();
    Ok(OlaSolution { value: table[full], witness })
}
