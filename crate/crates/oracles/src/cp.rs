use std::collections::{HashMap, HashSet};

use crate::{bits, check_vertices, OracleError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CpSolution {
    /// `min(OPT, k+1)`.
    pub value: usize,
    /// Vertex sequences of `value` pairwise disjoint cycles.
    pub witness: Vec<Vec<usize>>,
}

fn multiplicities(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<u32>>> {
    let mut mult = vec![vec![0u32; n]; n];
    for &(u, v) in edges {
        if u >= n || v >= n || u == v {
            return Err(OracleError::BadInput(format!("edge ({u}, {v})")));
        }
        mult[u][v] += 1;
        mult[v][u] += 1;
    }
    Ok(mult)
}

/// Digons plus every induced cycle of the underlying simple graph, each as
/// a vertex sequence. Every cycle of the multigraph contains the vertex set
/// of one of these.
fn minimal_cycles(mult: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let n = mult.len();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if mult[u][v] >= 2 {
                out.push(vec![u, v]);
            }
        }
    }
    let adj = |a: usize, b: usize| mult[a][b] > 0;
    let mut seen = HashSet::new();
    for s in 0..n {
        let mut path = vec![s];
        extend(s, &mut path, &adj, n, &mut |cyc: &[usize]| {
            let mask = cyc.iter().fold(0u32, |m, &v| m | 1 << v);
            if seen.insert(mask) {
                out.push(cyc.to_vec());
            }
        });
    }
    out
}

fn extend(
    s: usize,
    path: &mut Vec<usize>,
    adj: &dyn Fn(usize, usize) -> bool,
    n: usize,
    found: &mut dyn FnMut(&[usize]),
) {
    let last = *path.last().unwrap();
    for x in s + 1..n {
        if !adj(last, x) || path.contains(&x) {
            continue;
        }
        let interior = if path.len() > 2 { &path[1..path.len() - 1] } else { &[][..] };
        if interior.iter().any(|&p| adj(p, x)) {
            continue;
        }
        if path.len() >= 2 && adj(s, x) {
            path.push(x);
            found(path);
            path.pop();
        } else if path.len() == 1 || !adj(s, x) {
            path.push(x);
            extend(s, path, adj, n, found);
            path.pop();
        }
    }
}

pub fn is_cycle(n: usize, edges: &[(usize, usize)], cycle: &[usize]) -> bool {
    let Ok(mult) = multiplicities(n, edges) else { return false };
    let l = cycle.len();
    if l < 2 || cycle.iter().any(|&v| v >= n) {
        return false;
    }
    let mut distinct = cycle.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != l {
        return false;
    }
    if l == 2 {
        return mult[cycle[0]][cycle[1]] >= 2;
    }
    (0..l).all(|i| mult[cycle[i]][cycle[(i + 1) % l]] > 0)
}

pub fn is_packing(n: usize, edges: &[(usize, usize)], cycles: &[Vec<usize>]) -> bool {
    let mut used = HashSet::new();
    cycles.iter().all(|c| is_cycle(n, edges, c) && c.iter().all(|&v| used.insert(v)))
}

/// Maximum number of vertex-disjoint cycles, capped at `k + 1`.
pub fn exact_cp(n: usize, edges: &[(usize, usize)], k: usize) -> Result<CpSolution> {
    check_vertices(n, 18)?;
    let mult = multiplicities(n, edges)?;
    let cap = k + 1;
    let cycles = minimal_cycles(&mult);
    let masks: Vec<u32> = cycles.iter().map(|c| c.iter().fold(0, |m, &v| m | 1 << v)).collect();
    let mut by_low: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, m) in masks.iter().enumerate() {
        by_low[m.trailing_zeros() as usize].push(i);
    }
    let mut memo: HashMap<u32, (usize, Option<usize>)> = HashMap::new();
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    best(full, cap, &masks, &by_low, &mut memo);
    let mut witness = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let (_, choice) = memo[&mask];
        match choice {
            Some(i) => {
                witness.push(cycles[i].clone());
                mask &= !masks[i];
            }
            None => mask &= mask - 1,
        }
        if witness.len() == cap || !memo.contains_key(&mask) {
            break;
        }
    }
    Ok(CpSolution { value: witness.len(), witness })
}

fn best(
    mask: u32,
    cap: usize,
    masks: &[u32],
    by_low: &[Vec<usize>],
    memo: &mut HashMap<u32, (usize, Option<usize>)>,
) -> usize {
    if mask == 0 {
        memo.insert(0, (0, None));
        return 0;
    }
    if let Some(&(v, _)) = memo.get(&mask) {
        return v;
    }
    let low = mask.trailing_zeros() as usize;
    let mut top = (best(mask & (mask - 1), cap, masks, by_low, memo), None);
    for &i in &by_low[low] {
        if top.0 >= cap {
            break;
        }
        if masks[i] & !mask == 0 {
            let with = 1 + best(mask & !masks[i], cap, masks, by_low, memo);
            if with > top.0 {
                top = (with.min(cap), Some(i));
            }
        }
    }
    memo.insert(mask, top);
    top.0
}

/// Vertex sets of every digon and induced cycle, for inspection in tests.
pub fn cycle_vertex_sets(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mult = multiplicities(n, edges)?;
    Ok(minimal_cycles(&mult)
        .into_iter()
        .map(|c| bits(c.iter().fold(0, |m, &v| m | 1 << v)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(exact_cp(4, &[(0, 1), (1, 2), (1, 3)], 3).unwrap().value, 0);
        let two = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
        let s = exact_cp(6, &two, 3).unwrap();
        assert_eq!(s.value, 2);
        assert!(is_packing(6, &two, &s.witness));
        assert_eq!(exact_cp(2, &[(0, 1), (0, 1)], 3).unwrap().value, 1);
        assert_eq!(exact_cp(6, &two, 0).unwrap().value, 1);
    }

    #[test]
    fn k4_has_one_disjoint_cycle() {
        let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        assert_eq!(exact_cp(4, &k4, 5).unwrap().value, 1);
        assert_eq!(cycle_vertex_sets(4, &k4).unwrap().len(), 4);
    }

    #[test]
    fn induced_cycles_of_c5_with_chord() {
        let g = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)];
        let mut sets = cycle_vertex_sets(5, &g).unwrap();
        sets.sort();
        assert_eq!(sets, vec![vec![0, 1, 2], vec![0, 2, 3, 4]]);
    }

    #[test]
    fn digons_and_triangles_mix() {
        let g = [(0, 1), (0, 1), (1, 2), (2, 3), (3, 7), (7, 2), (4, 5), (5, 6), (6, 4)];
        let s = exact_cp(8, &g, 4).unwrap();
        assert_eq!(s.value, 3);
        assert!(is_packing(8, &g, &s.witness));
        assert_eq!(exact_cp(8, &g, 1).unwrap().value, 2);
    }
}
