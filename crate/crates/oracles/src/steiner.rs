use crate::{OracleError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerSolution {
    pub value: u64,
    /// Tree edges of the metric closure, each with its shortest-path length.
    pub witness: Vec<(usize, usize, u64)>,
}

const INF: u64 = u64::MAX / 4;

pub fn shortest_paths(n: usize, edges: &[(usize, usize, u64)]) -> Vec<Vec<u64>> {
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v, w) in edges {
        d[u][v] = d[u][v].min(w);
        d[v][u] = d[v][u].min(w);
    }
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                let via = d[a][m] + d[m][b];
                if via < d[a][b] {
                    d[a][b] = via;
                }
            }
        }
    }
    d
}

fn mst(dist: &[Vec<u64>], nodes: &[usize]) -> (u64, Vec<(usize, usize, u64)>) {
    let mut in_tree = vec![false; nodes.len()];
    let mut best = vec![(INF, 0usize); nodes.len()];
    let mut total = 0;
    let mut tree = Vec::new();
    if nodes.is_empty() {
        return (0, tree);
    }
    best[0] = (0, 0);
    for _ in 0..nodes.len() {
        let i = (0..nodes.len()).filter(|&i| !in_tree[i]).min_by_key(|&i| best[i].0).unwrap();
        in_tree[i] = true;
        total += best[i].0;
        if i != 0 {
            tree.push((nodes[best[i].1], nodes[i], best[i].0));
        }
        for j in 0..nodes.len() {
            let d = dist[nodes[i]][nodes[j]];
            if !in_tree[j] && d < best[j].0 {
                best[j] = (d, i);
            }
        }
    }
    (total, tree)
}

/// Minimum Steiner tree: the best minimum spanning tree of the metric
/// closure over the terminals plus every subset of the other vertices.
pub fn exact_steiner(n: usize, edges: &[(usize, usize, u64)], terminals: &[usize]) -> Result<SteinerSolution> {
    if terminals.iter().any(|&t| t >= n) || edges.iter().any(|&(u, v, _)| u >= n || v >= n) {
        return Err(OracleError::BadInput("vertex out of range".into()));
    }
    let free: Vec<usize> = (0..n).filter(|v| !terminals.contains(v)).collect();
    if free.len() > 18 {
        return Err(OracleError::Refused(format!("{} non-terminals", free.len())));
    }
    let dist = shortest_paths(n, edges);
    if terminals.iter().any(|&a| terminals.iter().any(|&b| dist[a][b] >= INF)) {
        return Err(OracleError::BadInput("terminals are disconnected".into()));
    }
    let mut best = SteinerSolution { value: INF, witness: Vec::new() };
    for mask in 0u32..1 << free.len() {
        let mut nodes = terminals.to_vec();
        nodes.extend(free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
        if nodes.iter().any(|&v| dist[nodes[0]][v] >= INF) {
            continue;
        }
        let (cost, tree) = mst(&dist, &nodes);
        if cost < best.value {
            best = SteinerSolution { value: cost, witness: tree };
        }
    }
    Ok(best)
}
