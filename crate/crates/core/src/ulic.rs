//! Universal independent-set covering for labelled interval graphs.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::{check_eps, Rational};

/// A closed interval `[left, right]` carrying a label in `0..q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub left: i64,
    pub right: i64,
    pub label: u32,
}

impl Interval {
    pub fn new(left: i64, right: i64, label: u32) -> Self {
        Interval { left, right, label }
    }

    pub fn meets(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledIntervalInstance {
    pub intervals: Vec<Interval>,
    pub q: u32,
}

impl LabelledIntervalInstance {
    pub fn new(intervals: Vec<Interval>, q: u32) -> Result<Self> {
        for (i, iv) in intervals.iter().enumerate() {
            if iv.left > iv.right || iv.label >= q {
                return Err(Error::Malformed(format!("interval {i}: {iv:?} with q = {q}")));
            }
        }
        Ok(LabelledIntervalInstance { intervals, q })
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(a, &i)| {
            set[a + 1..].iter().all(|&j| i != j && !self.intervals[i].meets(&self.intervals[j]))
        })
    }

    pub fn labels_of(&self, set: &[usize]) -> BTreeSet<u32> {
        set.iter().map(|&i| self.intervals[i].label).collect()
    }
}

/// Proper coloring with the minimum number of colors: sweep by left
/// endpoint and reuse the smallest color whose interval already ended.
pub fn interval_min_coloring(inst: &LabelledIntervalInstance) -> Vec<u32> {
    let mut order: Vec<usize> = (0..inst.len()).collect();
    order.sort_by_key(|&i| (inst.intervals[i].left, inst.intervals[i].right, i));
    let mut colors = vec![0u32; inst.len()];
    let mut busy: BinaryHeap<Reverse<(i64, u32)>> = BinaryHeap::new();
    let mut free: BinaryHeap<Reverse<u32>> = BinaryHeap::new();
    let mut used = 0u32;
    for i in order {
        let iv = inst.intervals[i];
        while let Some(&Reverse((end, c))) = busy.peek() {
            if end >= iv.left {
                break;
            }
            busy.pop();
            free.push(Reverse(c));
        }
        let c = match free.pop() {
            Some(Reverse(c)) => c,
            None => {
                used += 1;
                used - 1
            }
        };
        colors[i] = c;
        busy.push(Reverse((iv.right, c)));
    }
    colors
}

pub fn chromatic_number(inst: &LabelledIntervalInstance) -> u32 {
    interval_min_coloring(inst).into_iter().max().map_or(0, |c| c + 1)
}

/// Labels `Λ = (Γ, κ)` packed as `Γ·χ + κ`; every class is independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub labels: Vec<u32>,
    pub chi: u32,
    /// Rich threshold `q·χ`.
    pub k: usize,
}

pub fn refine(inst: &LabelledIntervalInstance) -> Refinement {
    let kappa = interval_min_coloring(inst);
    let chi = kappa.iter().max().map_or(0, |c| c + 1).max(1);
    let labels = inst.intervals.iter().zip(&kappa).map(|(iv, &c)| iv.label * chi + c).collect();
    Refinement { labels, chi, k: inst.q as usize * chi as usize }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RichPoorSplit {
    pub rich: BTreeSet<u32>,
    pub poor: BTreeSet<u32>,
}

pub fn rich_poor_split(members: &[usize], labels: &[u32], k: usize) -> RichPoorSplit {
    let mut count: BTreeMap<u32, usize> = BTreeMap::new();
    for &i in members {
        *count.entry(labels[i]).or_insert(0) += 1;
    }
    let mut split = RichPoorSplit::default();
    for (l, c) in count {
        if c >= k {
            split.rich.insert(l);
        } else {
            split.poor.insert(l);
        }
    }
    split
}

/// Picks an independent set realizing exactly the labels in `rich`: take the
/// remaining rich-labelled interval with the smallest right endpoint, then
/// discard its closed neighborhood and every interval sharing its label.
/// On failure returns a label that could not be placed.
pub fn greedy_rich_realization(
    inst: &LabelledIntervalInstance,
    members: &[usize],
    labels: &[u32],
    rich: &BTreeSet<u32>,
) -> std::result::Result<Vec<usize>, u32> {
    let mut alive: Vec<usize> = members.iter().copied().filter(|&i| rich.contains(&labels[i])).collect();
    let mut todo = rich.clone();
    let mut picked = Vec::new();
    while !todo.is_empty() {
        let Some(&u) = alive.iter().min_by_key(|&&i| (inst.intervals[i].right, i)) else {
            return Err(*todo.iter().next().unwrap());
        };
        picked.push(u);
        todo.remove(&labels[u]);
        let iu = inst.intervals[u];
        alive.retain(|&i| labels[i] != labels[u] && !inst.intervals[i].meets(&iu));
    }
    Ok(picked)
}

/// Endpoints renumbered to distinct integers `1..=2n`, preserving closed
/// intersections: at equal coordinates left endpoints come first.
fn normalize(inst: &LabelledIntervalInstance) -> Vec<(u32, u32)> {
    let mut events: Vec<(i64, u8, usize)> = Vec::with_capacity(2 * inst.len());
    for (i, iv) in inst.intervals.iter().enumerate() {
        events.push((iv.left, 0, i));
        events.push((iv.right, 1, i));
    }
    events.sort_unstable();
    let mut out = vec![(0, 0); inst.len()];
    for (pos, &(_, side, i)) in events.iter().enumerate() {
        if side == 0 {
            out[i].0 = pos as u32 + 1;
        } else {
            out[i].1 = pos as u32 + 1;
        }
    }
    out
}

/// The marking recursion started on the whole instance at depth `depth`.
///
/// Every recursive call works on the intervals strictly inside an open
/// window of normalized coordinates, and what it marks depends only on that
/// window, so each window is expanded once at the largest depth it is
/// reached with.
pub fn mark_interval(inst: &LabelledIntervalInstance, labels: &[u32], k: usize, depth: usize) -> BTreeSet<usize> {
    let norm = normalize(inst);
    let top = 2 * inst.len() as u32 + 1;
    let mut marked = BTreeSet::new();
    let mut reached: HashMap<(u32, u32), usize> = HashMap::new();
    let mut queue: BinaryHeap<(usize, Reverse<(u32, u32)>)> = BinaryHeap::new();
    reached.insert((0, top), depth);
    queue.push((depth, Reverse((0, top))));
    while let Some((d, Reverse((p, q)))) = queue.pop() {
        if d < 2 || reached[&(p, q)] > d {
            continue;
        }
        let members: Vec<usize> = (0..inst.len()).filter(|&i| p < norm[i].0 && norm[i].1 < q).collect();
        if members.is_empty() {
            continue;
        }
        let split = rich_poor_split(&members, labels, k);
        let realized = greedy_rich_realization(inst, &members, labels, &split.rich)
            .expect("rich labels are realizable");
        marked.extend(realized);
        let mut points = vec![p, q];
        for &i in &members {
            if split.poor.contains(&labels[i]) {
                marked.insert(i);
                points.extend([norm[i].0, norm[i].1]);
            }
        }
        points.sort_unstable();
        points.dedup();
        for (a, &x) in points.iter().enumerate() {
            for &y in &points[a + 1..] {
                let child = (x, y);
                if reached.get(&child).is_some_and(|&seen| seen >= d - 1) {
                    continue;
                }
                reached.insert(child, d - 1);
                queue.push((d - 1, Reverse(child)));
            }
        }
    }
    marked
}

/// `⌈(1/ε′)·log₂(1/ε′)⌉` with `ε′ = ε/2`, raised until `(1−ε′)^d ≤ ε′`.
pub fn ulic_depth(eps: Rational) -> Result<usize> {
    check_eps(eps)?;
    let e = *eps.numer() as f64 / *eps.denom() as f64 / 2.0;
    let mut d = ((1.0 / e) * (1.0 / e).log2()).ceil().max(2.0) as usize;
    while (1.0 - e).powi(d as i32) > e {
        d += 1;
    }
    Ok(d)
}

/// `T(d) = (k² + k) + C(2k² + 2, 2)·T(d − 1)`, `T(1) = 0`.
pub fn size_recurrence(k: usize, depth: usize) -> u128 {
    let k = k as u128;
    let m = 2 * k * k + 2;
    let branch = m * (m - 1) / 2;
    let mut t = 0u128;
    for _ in 1..depth {
        t = (k * k + k).saturating_add(branch.saturating_mul(t));
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ulic {
    pub marked: BTreeSet<usize>,
    pub depth: usize,
    pub refinement: Refinement,
}

pub fn build_ulic(inst: &LabelledIntervalInstance, eps: Rational) -> Result<Ulic> {
    build_ulic_with_depth(inst, eps, None)
}

pub fn build_ulic_with_depth(inst: &LabelledIntervalInstance, eps: Rational, depth: Option<usize>) -> Result<Ulic> {
    check_eps(eps)?;
    let depth = match depth {
        Some(d) => d,
        None => ulic_depth(eps)?,
    };
    let refinement = refine(inst);
    let marked = mark_interval(inst, &refinement.labels, refinement.k, depth);
    Ok(Ulic { marked, depth, refinement })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lossy_oracles::ulic::realizable_label_sets;
    use proptest::prelude::*;

    fn inst(ivs: &[(i64, i64, u32)], q: u32) -> LabelledIntervalInstance {
        LabelledIntervalInstance::new(ivs.iter().map(|&(l, r, c)| Interval::new(l, r, c)).collect(), q).unwrap()
    }

    fn tuples(inst: &LabelledIntervalInstance, keep: &BTreeSet<usize>) -> Vec<(i64, i64, u32)> {
        keep.iter().map(|&i| inst.intervals[i]).map(|iv| (iv.left, iv.right, iv.label)).collect()
    }

    fn all(inst: &LabelledIntervalInstance) -> BTreeSet<usize> {
        (0..inst.len()).collect()
    }

    /// For each label set realizable in the whole instance, the best number
    /// of those labels realizable inside `x`.
    fn coverage_holds(inst: &LabelledIntervalInstance, x: &BTreeSet<usize>, frac: f64) -> bool {
        let full = realizable_label_sets(&tuples(inst, &all(inst)), inst.q as usize);
        let part = realizable_label_sets(&tuples(inst, x), inst.q as usize);
        (0..full.len()).filter(|&m| full[m]).all(|m| {
            let best = (0..part.len())
                .filter(|&s| part[s] && s & !m == 0)
                .map(|s: usize| s.count_ones())
                .max()
                .unwrap_or(0);
            best as f64 >= (frac * m.count_ones() as f64).ceil() - 1e-9
        })
    }

    #[test]
    fn coloring_examples() {
        assert_eq!(chromatic_number(&inst(&[(1, 2), (3, 4)].map(|(a, b)| (a, b, 0)), 1)), 1);
        assert_eq!(chromatic_number(&inst(&[(1, 10, 0), (2, 3, 0), (4, 5, 0)], 1)), 2);
        assert_eq!(chromatic_number(&inst(&[(1, 5, 0), (2, 6, 0), (3, 7, 0)], 1)), 3);
        assert_eq!(chromatic_number(&inst(&[(1, 2, 0), (2, 3, 0)], 1)), 2);
    }

    #[test]
    fn greedy_examples() {
        let a = inst(&[(1, 2, 0), (5, 6, 0), (3, 4, 1), (7, 8, 1)], 2);
        let labels: Vec<u32> = a.intervals.iter().map(|iv| iv.label).collect();
        let rich = BTreeSet::from([0, 1]);
        assert_eq!(greedy_rich_realization(&a, &[0, 1, 2, 3], &labels, &rich), Ok(vec![0, 2]));
        assert_eq!(greedy_rich_realization(&a, &[0, 1, 2, 3], &labels, &BTreeSet::new()), Ok(vec![]));

        let b = inst(&[(1, 4, 0), (5, 8, 0), (2, 3, 1), (6, 7, 1)], 2);
        let labels: Vec<u32> = b.intervals.iter().map(|iv| iv.label).collect();
        assert_eq!(greedy_rich_realization(&b, &[0, 1, 2, 3], &labels, &rich), Ok(vec![2, 1]));

        let c = inst(&[(1, 9, 0), (2, 3, 1)], 2);
        let labels: Vec<u32> = c.intervals.iter().map(|iv| iv.label).collect();
        assert!(greedy_rich_realization(&c, &[0, 1], &labels, &rich).is_err());
    }

    #[test]
    fn depth_values() {
        assert_eq!(ulic_depth(Rational::new(1, 2)).unwrap(), 8);
        assert_eq!(ulic_depth(Rational::new(17, 50)).unwrap(), 16);
        assert!(ulic_depth(Rational::from_integer(1)).is_err());
        for n in 1..200 {
            let eps = Rational::new(n, 200);
            let d = ulic_depth(eps).unwrap() as i32;
            let e = n as f64 / 400.0;
            assert!(1.0 - e - (1.0 - e).powi(d) >= 1.0 - 2.0 * e - 1e-12);
        }
    }

    #[test]
    fn depth_one_marks_nothing() {
        let a = inst(&[(1, 2, 0), (3, 4, 1)], 2);
        assert!(mark_interval(&a, &[0, 1], 2, 1).is_empty());
    }

    #[test]
    fn all_poor_marks_everything() {
        let a = inst(&[(1, 2, 0), (3, 4, 1), (2, 5, 2)], 3);
        let r = refine(&a);
        assert_eq!(mark_interval(&a, &r.labels, r.k, 2), all(&a));
    }

    #[test]
    fn single_rich_label_marks_greedy_only() {
        let ivs: Vec<_> = (0..6).map(|i| (3 * i, 3 * i + 1, 0)).collect();
        let a = inst(&ivs, 1);
        let r = refine(&a);
        assert_eq!(r.k, 1);
        for d in 2..5 {
            assert_eq!(mark_interval(&a, &r.labels, r.k, d), BTreeSet::from([0]));
        }
        let x = build_ulic(&a, Rational::new(1, 2)).unwrap();
        assert!(coverage_holds(&a, &x.marked, 0.5));
    }

    #[test]
    fn size_recurrence_values() {
        assert_eq!(size_recurrence(2, 1), 0);
        assert_eq!(size_recurrence(2, 2), 6);
        assert_eq!(size_recurrence(2, 3), 6 + 45 * 6);
    }

    fn arb_instance(max: usize, q: u32) -> impl Strategy<Value = LabelledIntervalInstance> {
        proptest::collection::vec((0i64..30, 0i64..8, 0..q), 0..max).prop_map(move |v| {
            let ivs = v.into_iter().map(|(l, len, c)| Interval::new(l, l + len, c)).collect();
            LabelledIntervalInstance::new(ivs, q).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn coloring_is_proper_and_tight(a in arb_instance(20, 3)) {
            let c = interval_min_coloring(&a);
            for i in 0..a.len() {
                for j in i + 1..a.len() {
                    if a.intervals[i].meets(&a.intervals[j]) {
                        prop_assert_ne!(c[i], c[j]);
                    }
                }
            }
            let clique = a.intervals.iter().map(|p| a.intervals.iter().filter(|o| o.left <= p.left && p.left <= o.right).count()).max().unwrap_or(0);
            prop_assert_eq!(chromatic_number(&a) as usize, clique);
        }

        #[test]
        fn greedy_realizes_rich_labels(a in arb_instance(18, 3)) {
            let r = refine(&a);
            let members: Vec<usize> = (0..a.len()).collect();
            let split = rich_poor_split(&members, &r.labels, r.k);
            let s = greedy_rich_realization(&a, &members, &r.labels, &split.rich).unwrap();
            prop_assert!(a.is_independent(&s));
            prop_assert_eq!(s.iter().map(|&i| r.labels[i]).collect::<BTreeSet<_>>(), split.rich);
        }

        #[test]
        fn ulic_covers_and_respects_size(a in arb_instance(12, 4), half in any::<bool>()) {
            let eps = if half { Rational::new(1, 2) } else { Rational::new(17, 50) };
            let x = build_ulic(&a, eps).unwrap();
            let frac = 1.0 - *eps.numer() as f64 / *eps.denom() as f64;
            prop_assert!(coverage_holds(&a, &x.marked, frac));
            prop_assert!(x.marked.len() as u128 <= size_recurrence(x.refinement.k, x.depth).max(a.len() as u128));
        }

        #[test]
        fn claim_for_shallow_depths(a in arb_instance(10, 3), d in 1usize..4) {
            // realizable label sets W of the refined labelling keep a
            // (1 − ε′ − (1 − ε′)^d) share inside the depth-d marks
            let r = refine(&a);
            let x = mark_interval(&a, &r.labels, r.k, d);
            let q = (a.q * r.chi) as usize;
            prop_assume!(q <= 12);
            let relabel = |keep: &BTreeSet<usize>| keep.iter().map(|&i| (a.intervals[i].left, a.intervals[i].right, r.labels[i])).collect::<Vec<_>>();
            let full = realizable_label_sets(&relabel(&all(&a)), q);
            let part = realizable_label_sets(&relabel(&x), q);
            let e = 0.25f64;
            for m in (0..full.len()).filter(|&m| full[m]) {
                let best = (0..part.len()).filter(|&s| part[s] && s & !m == 0).map(|s: usize| s.count_ones()).max().unwrap_or(0);
                let need = (1.0 - e - (1.0 - e).powi(d as i32)) * m.count_ones() as f64;
                prop_assert!(best as f64 >= need - 1e-9);
            }
        }
    }
}
