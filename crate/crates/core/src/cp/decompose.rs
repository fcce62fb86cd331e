use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cp::fvs::{erdos_posa_split, EpSplit};
use crate::error::{Error, Result};
use crate::graph::{Minor, MultiGraph, VertexId};

pub type VertexSet = BTreeSet<VertexId>;

fn check_fvs(g: &MultiGraph, f: &VertexSet) -> Result<()> {
    if g.without(f).is_forest() {
        Ok(())
    } else {
        Err(Error::Malformed(format!("{f:?} is not a feedback vertex set")))
    }
}

/// Caps every multiplicity at two; returns the number of edges removed.
pub fn reduce_multiedge(m: &mut Minor) -> Result<usize> {
    let excess: Vec<(VertexId, VertexId, u32)> =
        m.graph.edges().filter(|&(_, _, c)| c > 2).map(|(u, v, c)| (u, v, c - 2)).collect();
    let mut removed = 0;
    for (u, v, c) in excess {
        m.delete_edges(u, v, c)?;
        removed += c as usize;
    }
    Ok(removed)
}

fn forest_degree(g: &MultiGraph, f: &VertexSet, v: VertexId) -> usize {
    g.neighbors(v).filter(|(x, _)| !f.contains(x)).map(|(_, c)| c as usize).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeafStep {
    Deleted(VertexId),
    Contracted { w: VertexId, z: VertexId, into: VertexId },
}

/// One application of the leaf rule, or `None` when at most
/// `|F|²(2|F|+1)` forest vertices have forest degree at most one.
pub fn reduce_leaf(m: &mut Minor, f: &VertexSet) -> Result<Option<LeafStep>> {
    check_fvs(&m.graph, f)?;
    let g = &m.graph;
    let low: Vec<VertexId> = g.vertices().filter(|v| !f.contains(v) && forest_degree(g, f, *v) <= 1).collect();
    let l = f.len();
    if low.len() <= l * l * (2 * l + 1) {
        return Ok(None);
    }
    let mut marked = VertexSet::new();
    let fv: Vec<VertexId> = f.iter().copied().collect();
    for (a, &u) in fv.iter().enumerate() {
        for &v in &fv[a..] {
            let class = low.iter().filter(|&&x| {
                if u == v {
                    g.multiplicity(x, u) >= 2
                } else {
                    g.multiplicity(x, u) > 0 && g.multiplicity(x, v) > 0
                }
            });
            marked.extend(class.take(2 * l + 1));
        }
    }
    let w = *low.iter().find(|x| !marked.contains(x)).expect("an unmarked low-degree vertex exists");
    let z = g.neighbors(w).map(|(x, _)| x).find(|x| !f.contains(x));
    match z {
        None => {
            m.delete_vertex(w)?;
            Ok(Some(LeafStep::Deleted(w)))
        }
        Some(z) => {
            let into = m.contract(w, z)?;
            Ok(Some(LeafStep::Contracted { w, z, into }))
        }
    }
}

/// Leaf rule and multiedge rule until neither applies.
pub fn reduce_leaves_exhaustively(m: &mut Minor, f: &VertexSet) -> Result<usize> {
    let mut steps = 0;
    reduce_multiedge(m)?;
    while reduce_leaf(m, f)?.is_some() {
        reduce_multiedge(m)?;
        steps += 1;
    }
    Ok(steps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Marking {
    Cycles(Vec<Vec<VertexId>>),
    Sets { f_prime: VertexSet, s: VertexSet },
}

/// Cuts deepest subtrees of the forest `G − F` that close a cycle with some
/// unused vertex of `F`, until `target` cuts or none is left. Tree roots are
/// the lowest ids under a virtual root.
pub fn mark_in_tree(g: &MultiGraph, f: &VertexSet, target: usize) -> Result<Marking> {
    check_fvs(g, f)?;
    let forest = g.without(f);
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut depth: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut children: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for comp in forest.components() {
        let root = comp[0];
        depth.insert(root, 1);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            children.entry(u).or_default();
            for (x, _) in forest.neighbors(u) {
                if !depth.contains_key(&x) {
                    depth.insert(x, depth[&u] + 1);
                    parent.insert(x, u);
                    children.entry(u).or_default().push(x);
                    stack.push(x);
                }
            }
        }
    }
    let mut order: Vec<VertexId> = depth.keys().copied().collect();
    order.sort_by_key(|v| (std::cmp::Reverse(depth[v]), *v));

    let mut alive: VertexSet = depth.keys().copied().collect();
    let mut unused: Vec<VertexId> = f.iter().copied().collect();
    let mut cuts: Vec<(VertexId, VertexId, VertexSet)> = Vec::new();
    while cuts.len() < target {
        let mut into_subtree: BTreeMap<VertexId, Vec<u32>> = BTreeMap::new();
        let mut found = None;
        for &u in &order {
            if !alive.contains(&u) {
                continue;
            }
            let mut cnt: Vec<u32> = unused.iter().map(|&w| g.multiplicity(w, u)).collect();
            for c in &children[&u] {
                if let Some(sub) = into_subtree.get(c) {
                    for (a, b) in cnt.iter_mut().zip(sub) {
                        *a += b;
                    }
                }
            }
            if found.is_none() {
                if let Some(i) = cnt.iter().position(|&c| c >= 2) {
                    found = Some((u, i));
                    break;
                }
            }
            into_subtree.insert(u, cnt);
        }
        let Some((u, i)) = found else { break };
        let mut sub = VertexSet::new();
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            if alive.remove(&x) {
                sub.insert(x);
                stack.extend(children[&x].iter().copied());
            }
        }
        let w = unused.remove(i);
        cuts.push((u, w, sub));
    }
    if cuts.len() >= target && target > 0 {
        let cycles = cuts.iter().map(|(_, w, sub)| cycle_through(g, &parent, *w, sub)).collect();
        return Ok(Marking::Cycles(cycles));
    }
    Ok(Marking::Sets {
        f_prime: cuts.iter().map(|c| c.1).collect(),
        s: cuts.iter().map(|c| c.0).collect(),
    })
}

fn cycle_through(g: &MultiGraph, parent: &BTreeMap<VertexId, VertexId>, w: VertexId, sub: &VertexSet) -> Vec<VertexId> {
    if let Some(&x) = sub.iter().find(|&&x| g.multiplicity(w, x) >= 2) {
        return vec![w, x];
    }
    let mut nbrs = sub.iter().filter(|&&x| g.multiplicity(w, x) > 0);
    let (a, b) = (*nbrs.next().unwrap(), *nbrs.next().unwrap());
    let up = |mut v: VertexId| {
        let mut out = vec![v];
        while let Some(&p) = parent.get(&v).filter(|p| sub.contains(p)) {
            out.push(p);
            v = p;
        }
        out
    };
    let mut left = up(a);
    let mut right = up(b);
    while left.len() > 1 && right.len() > 1 && left[left.len() - 2] == right[right.len() - 2] {
        left.pop();
        right.pop();
    }
    right.pop();
    let mut cycle = vec![w];
    cycle.extend(left);
    cycle.extend(right.into_iter().rev());
    cycle
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub fvs: VertexSet,
    pub z: VertexSet,
    pub r: VertexSet,
    pub s: VertexSet,
    /// Vertex sequences, each starting at its lower-id endpoint.
    pub paths: Vec<Vec<VertexId>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposed {
    Cycles(Vec<Vec<VertexId>>),
    Structure(Decomposition),
}

/// Erdős–Pósa split, exhaustive leaf reduction and tree marking on `m`,
/// then the `Z`, `R`, path decomposition of the resulting minor.
pub fn decompose(m: &mut Minor, target: usize, c: f64) -> Result<Decomposed> {
    reduce_multiedge(m)?;
    let f = match erdos_posa_split(&m.graph, target, c) {
        EpSplit::Cycles(cs) => return Ok(Decomposed::Cycles(cs)),
        EpSplit::Fvs { fvs, .. } => fvs,
    };
    reduce_leaves_exhaustively(m, &f)?;
    let g = &m.graph;
    let (f_prime, s) = match mark_in_tree(g, &f, target)? {
        Marking::Cycles(cs) => return Ok(Decomposed::Cycles(cs)),
        Marking::Sets { f_prime, s } => (f_prime, s),
    };
    let forest_vs: VertexSet = g.vertices().filter(|v| !f.contains(v)).collect();
    let q: VertexSet = forest_vs.iter().copied().filter(|&v| forest_degree(g, &f, v) >= 3).collect();
    let mut o = VertexSet::new();
    for w in f.difference(&f_prime) {
        o.extend(g.neighbors(*w).map(|(x, _)| x).filter(|x| !f.contains(x)));
    }
    let mut taken: VertexSet = f.clone();
    taken.extend(&q);
    taken.extend(&o);
    taken.extend(&s);
    let w: VertexSet = forest_vs
        .iter()
        .copied()
        .filter(|v| !taken.contains(v) && g.neighbors(*v).all(|(x, _)| taken.contains(&x)))
        .collect();
    let mut r: VertexSet = q.union(&o).copied().collect();
    r.extend(&s);
    r.extend(&w);
    r.extend(f.difference(&f_prime));
    let mut drop = r.clone();
    drop.extend(&f_prime);
    let rest = g.without(&drop);
    let paths = rest.components().into_iter().map(|comp| order_path(&rest, &comp)).collect();
    Ok(Decomposed::Structure(Decomposition { fvs: f, z: f_prime, r, s, paths }))
}

fn order_path(g: &MultiGraph, comp: &[VertexId]) -> Vec<VertexId> {
    let start = *comp.iter().filter(|&&v| g.degree(v) <= 1).min().unwrap_or(&comp[0]);
    let mut out = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let next = g.neighbors(cur).map(|(x, _)| x).find(|&x| Some(x) != prev && x != cur);
        match next {
            Some(x) if !out.contains(&x) => {
                out.push(x);
                prev = Some(cur);
                cur = x;
            }
            _ => break,
        }
    }
    out
}
