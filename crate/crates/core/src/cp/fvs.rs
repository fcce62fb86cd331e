use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::{MultiGraph, VertexId};

/// Feedback vertex set by the local-ratio method with unit weights,
/// followed by reverse-order redundancy removal. At most twice optimal.
pub fn feedback_vertex_set(g: &MultiGraph) -> BTreeSet<VertexId> {
    let mut h = g.clone();
    let mut weight: BTreeMap<VertexId, f64> = h.vertices().map(|v| (v, 1.0)).collect();
    let mut picked = Vec::new();
    prune(&mut h);
    while h.n() > 0 {
        let gamma = h
            .vertices()
            .map(|v| weight[&v] / (h.degree(v) - 1) as f64)
            .fold(f64::INFINITY, f64::min);
        let mut zero = Vec::new();
        for v in h.vertices() {
            let w = weight.get_mut(&v).unwrap();
            *w -= gamma * (h.degree(v) - 1) as f64;
            if *w <= 1e-9 {
                zero.push(v);
            }
        }
        for v in zero {
            h.remove_vertex(v).unwrap();
            picked.push(v);
        }
        prune(&mut h);
    }
    let mut fvs: BTreeSet<VertexId> = picked.iter().copied().collect();
    for &v in picked.iter().rev() {
        fvs.remove(&v);
        if !g.without(&fvs).is_forest() {
            fvs.insert(v);
        }
    }
    fvs
}

fn prune(h: &mut MultiGraph) {
    let mut queue: Vec<VertexId> = h.vertices().filter(|&v| h.degree(v) <= 1).collect();
    while let Some(v) = queue.pop() {
        if !h.has_vertex(v) {
            continue;
        }
        let nbrs: Vec<VertexId> = h.neighbors(v).map(|(x, _)| x).collect();
        h.remove_vertex(v).unwrap();
        queue.extend(nbrs.into_iter().filter(|&x| h.degree(x) <= 1));
    }
}

/// A shortest cycle as a vertex sequence; digons first.
pub fn shortest_cycle(g: &MultiGraph) -> Option<Vec<VertexId>> {
    if let Some((u, v, _)) = g.edges().find(|&(_, _, c)| c >= 2) {
        return Some(vec![u, v]);
    }
    let mut best: Option<Vec<VertexId>> = None;
    for root in g.vertices() {
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut dist: BTreeMap<VertexId, usize> = BTreeMap::from([(root, 0)]);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for (w, _) in g.neighbors(u) {
                if parent.get(&u) == Some(&w) {
                    continue;
                }
                if let Some(&dw) = dist.get(&w) {
                    if dw < dist[&u] || best.as_ref().is_some_and(|b| dist[&u] + dw + 1 >= b.len()) {
                        continue;
                    }
                    let mut left = walk_up(&parent, u);
                    let mut right = walk_up(&parent, w);
                    while left.len() > 1 && right.len() > 1 && left[left.len() - 2] == right[right.len() - 2] {
                        left.pop();
                        right.pop();
                    }
                    right.pop();
                    left.reverse();
                    left.extend(right);
                    if best.as_ref().is_none_or(|b| left.len() < b.len()) {
                        best = Some(left);
                    }
                    continue;
                }
                dist.insert(w, dist[&u] + 1);
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    best.map(|c| rotate_min(&c))
}

fn walk_up(parent: &BTreeMap<VertexId, VertexId>, mut v: VertexId) -> Vec<VertexId> {
    let mut out = vec![v];
    while let Some(&p) = parent.get(&v) {
        out.push(p);
        v = p;
    }
    out
}

fn rotate_min(c: &[VertexId]) -> Vec<VertexId> {
    let i = (0..c.len()).min_by_key(|&i| c[i]).unwrap();
    let mut out = c[i..].to_vec();
    out.extend(&c[..i]);
    out
}

/// Repeatedly takes a shortest cycle and deletes its vertices.
pub fn greedy_cycles(g: &MultiGraph, limit: usize) -> Vec<Vec<VertexId>> {
    let mut h = g.clone();
    let mut out = Vec::new();
    while out.len() < limit {
        let Some(c) = shortest_cycle(&h) else { break };
        for &v in &c {
            h.remove_vertex(v).unwrap();
        }
        out.push(c);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EpSplit {
    Cycles(Vec<Vec<VertexId>>),
    Fvs { fvs: BTreeSet<VertexId>, within_bound: bool },
}

/// `c·t·ln t` with the natural logarithm.
pub fn ep_bound(c: f64, target: usize) -> f64 {
    let t = target as f64;
    c * t * t.ln()
}

/// Either `target` disjoint cycles or a feedback vertex set.
pub fn erdos_posa_split(g: &MultiGraph, target: usize, c: f64) -> EpSplit {
    let cycles = greedy_cycles(g, target);
    if cycles.len() >= target && target > 0 {
        return EpSplit::Cycles(cycles);
    }
    let fvs = feedback_vertex_set(g);
    let within_bound = fvs.len() as f64 <= ep_bound(c, target);
    EpSplit::Fvs { fvs, within_bound }
}
