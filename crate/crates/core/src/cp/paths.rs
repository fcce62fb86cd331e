use std::collections::BTreeSet;

use crate::graph::{MultiGraph, VertexId};
use crate::ulic::{Interval, LabelledIntervalInstance};

/// Intervals `[i, j]` (1-based path positions) of potential subpaths; label
/// `a·|Z| + b` stands for the ordered pair `(z[a], z[b])`.
///
/// `u₁·vᵢ…vⱼ·u₂` must be induced apart from a possible `u₁u₂` edge, every
/// edge to `Z` single, except `u₁ = u₂`, `i = j` which needs exactly two
/// parallel edges.
pub fn potential_intervals(g: &MultiGraph, path: &[VertexId], z: &[VertexId]) -> Vec<Interval> {
    let l = path.len();
    let mult: Vec<Vec<u32>> = z.iter().map(|&u| path.iter().map(|&v| g.multiplicity(u, v)).collect()).collect();
    let prefix: Vec<Vec<usize>> = mult
        .iter()
        .map(|row| {
            let mut p = vec![0; l + 1];
            for i in 0..l {
                p[i + 1] = p[i] + usize::from(row[i] > 0);
            }
            p
        })
        .collect();
    let count = |a: usize, i: usize, j: usize| prefix[a][j + 1] - prefix[a][i];
    let q = z.len() as u32;
    let mut out = BTreeSet::new();
    for i in 0..l {
        for a in (0..z.len()).filter(|&a| mult[a][i] > 0) {
            for j in i..l {
                if j >= i + 2 && count(a, i + 1, j - 1) > 0 {
                    break;
                }
                for b in (0..z.len()).filter(|&b| mult[b][j] > 0) {
                    let ok = if a == b {
                        if i == j {
                            mult[a][i] == 2
                        } else {
                            mult[a][i] == 1 && mult[a][j] == 1 && count(a, i, j) == 2
                        }
                    } else {
                        mult[a][i] == 1 && mult[b][j] == 1 && count(a, i, j) == 1 && count(b, i, j) == 1
                    };
                    if ok {
                        let (lo, hi) = (i as i64 + 1, j as i64 + 1);
                        out.insert((lo, hi, a as u32 * q + b as u32));
                        out.insert((lo, hi, b as u32 * q + a as u32));
                    }
                }
            }
        }
    }
    out.into_iter().map(|(l, r, c)| Interval::new(l, r, c)).collect()
}

/// Window `P^(x,y)`: starts after the first neighbour of `x` and ends before
/// the last neighbour of `y`; `None` stands for the club symbol. Returns
/// `None` when a vertex has no neighbour on the path or the window is empty.
pub fn window(g: &MultiGraph, path: &[VertexId], x: Option<VertexId>, y: Option<VertexId>) -> Option<(usize, usize)> {
    let start = match x {
        None => 1,
        Some(x) => path.iter().position(|&v| g.multiplicity(x, v) > 0)? + 2,
    };
    let end = match y {
        None => path.len(),
        Some(y) => path.iter().rposition(|&v| g.multiplicity(y, v) > 0)?,
    };
    (start <= end).then_some((start, end))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathIntervalGraph {
    pub x: Option<VertexId>,
    pub y: Option<VertexId>,
    pub window: (usize, usize),
    pub instance: LabelledIntervalInstance,
}

/// One labelled interval graph per nonempty window `(x, y) ∈ (Z ∪ {♣})²`.
pub fn build_path_graphs(g: &MultiGraph, path: &[VertexId], z: &[VertexId]) -> Vec<PathIntervalGraph> {
    let all = potential_intervals(g, path, z);
    let ends: Vec<Option<VertexId>> = std::iter::once(None).chain(z.iter().copied().map(Some)).collect();
    let mut out = Vec::new();
    for &x in &ends {
        for &y in &ends {
            let Some((r, s)) = window(g, path, x, y) else { continue };
            let intervals =
                all.iter().copied().filter(|iv| iv.left >= r as i64 && iv.right <= s as i64).collect();
            out.push(PathIntervalGraph {
                x,
                y,
                window: (r, s),
                instance: LabelledIntervalInstance { intervals, q: (z.len() * z.len()) as u32 },
            });
        }
    }
    out
}

/// Largest number of same-label intervals over one point.
pub fn same_label_density(inst: &LabelledIntervalInstance) -> usize {
    let mut best = 0;
    for p in &inst.intervals {
        for point in [p.left, p.right] {
            let c = inst
                .intervals
                .iter()
                .filter(|o| o.label == p.label && o.left <= point && point <= o.right)
                .count();
            best = best.max(c);
        }
    }
    best
}

/// First and last vertex of the path plus the first and last neighbour of
/// each vertex of `Z`, as 1-based positions.
pub fn anchor_positions(g: &MultiGraph, path: &[VertexId], z: &[VertexId]) -> BTreeSet<usize> {
    let mut out = BTreeSet::from([1, path.len()]);
    for &u in z {
        if let Some(i) = path.iter().position(|&v| g.multiplicity(u, v) > 0) {
            out.insert(i + 1);
        }
        if let Some(i) = path.iter().rposition(|&v| g.multiplicity(u, v) > 0) {
            out.insert(i + 1);
        }
    }
    out
}
