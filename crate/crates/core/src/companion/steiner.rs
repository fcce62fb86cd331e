//! Steiner Tree parameterized by the number of terminals.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::{Goal, Kernel, KernelOutput, Lifter, ParameterizedInstance, Problem, Rational, Value};
use crate::graph::{Minor, MinorTranscript, MultiGraph, VertexId};

pub const UNREACHABLE: u64 = u64::MAX;
pub const DEFAULT_DW_CAP: usize = 12;

pub type TreeEdges = Vec<(VertexId, VertexId)>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinerInstance {
    pub graph: MultiGraph,
    pub terminals: BTreeSet<VertexId>,
}

/// Edge weight, 1 for edges without one.
pub fn edge_weight(g: &MultiGraph, u: VertexId, v: VertexId) -> u64 {
    g.weight(u, v).unwrap_or(1)
}

fn norm(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

/// Whether `edges` form a tree of `g` containing every terminal.
pub fn is_steiner_tree(g: &MultiGraph, terminals: &BTreeSet<VertexId>, edges: &[(VertexId, VertexId)]) -> bool {
    let set: BTreeSet<_> = edges.iter().map(|&(u, v)| norm(u, v)).collect();
    if set.len() != edges.len() || edges.iter().any(|&(u, v)| u == v || g.multiplicity(u, v) == 0) {
        return false;
    }
    if edges.is_empty() {
        return terminals.len() <= 1 && terminals.iter().all(|&t| g.has_vertex(t));
    }
    let mut t = MultiGraph::new();
    for &(u, v) in &set {
        t.insert_vertex(u);
        t.insert_vertex(v);
    }
    for &(u, v) in &set {
        t.add_edge(u, v).unwrap();
    }
    t.n() == set.len() + 1 && t.is_connected() && terminals.iter().all(|&x| t.has_vertex(x))
}

pub fn tree_cost(g: &MultiGraph, edges: &[(VertexId, VertexId)]) -> u64 {
    edges.iter().map(|&(u, v)| edge_weight(g, u, v)).sum()
}

pub struct SteinerTree;

impl Problem for SteinerTree {
    type Instance = SteinerInstance;
    type Solution = TreeEdges;
    const NAME: &'static str = "steiner";
    const GOAL: Goal = Goal::Minimize;

    fn value(inst: &SteinerInstance, k: usize, sol: &TreeEdges) -> Value {
        if inst.terminals.len() > k {
            Value::NegInf
        } else if !is_steiner_tree(&inst.graph, &inst.terminals, sol) {
            Value::PosInf
        } else {
            Value::Finite(tree_cost(&inst.graph, sol) as i64)
        }
    }

    fn size(inst: &SteinerInstance) -> usize {
        inst.graph.n()
    }
}

/// All-pairs shortest paths with predecessors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricClosure {
    ids: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    dist: Vec<Vec<u64>>,
    pred: Vec<Vec<usize>>,
}

impl MetricClosure {
    pub fn new(g: &MultiGraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        let mut dist = vec![vec![UNREACHABLE; n]; n];
        let mut pred = vec![vec![usize::MAX; n]; n];
        for s in 0..n {
            let (d, p) = (&mut dist[s], &mut pred[s]);
            d[s] = 0;
            let mut heap = BinaryHeap::from([Reverse((0u64, s))]);
            while let Some(Reverse((du, u))) = heap.pop() {
                if du > d[u] {
                    continue;
                }
                for (x, _) in g.neighbors(ids[u]) {
                    let j = index[&x];
                    let nd = du.saturating_add(edge_weight(g, ids[u], x));
                    if nd < d[j] {
                        d[j] = nd;
                        p[j] = u;
                        heap.push(Reverse((nd, j)));
                    }
                }
            }
        }
        MetricClosure { ids, index, dist, pred }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn dist(&self, u: VertexId, v: VertexId) -> u64 {
        self.dist[self.index[&u]][self.index[&v]]
    }

    /// A shortest `u`–`v` path, both ends included.
    pub fn path(&self, u: VertexId, v: VertexId) -> Vec<VertexId> {
        let (s, mut t) = (self.index[&u], self.index[&v]);
        let mut out = vec![v];
        while t != s {
            t = self.pred[s][t];
            out.push(self.ids[t]);
        }
        out.reverse();
        out
    }

    /// The complete graph on mutually reachable pairs, weighted by distance.
    pub fn graph(&self) -> MultiGraph {
        let mut g = MultiGraph::new();
        for &v in &self.ids {
            g.insert_vertex(v);
        }
        for (i, &u) in self.ids.iter().enumerate() {
            for (j, &v) in self.ids.iter().enumerate().skip(i + 1) {
                if self.dist[i][j] != UNREACHABLE {
                    g.add_weighted_edge(u, v, self.dist[i][j]).unwrap();
                }
            }
        }
        g
    }
}

/// Minimum spanning tree of `nodes` in the closure: cost and edges.
pub fn closure_mst(c: &MetricClosure, nodes: &[VertexId]) -> (u64, TreeEdges) {
    let mut total = 0u64;
    let mut edges = Vec::new();
    if nodes.is_empty() {
        return (0, edges);
    }
    let mut in_tree = vec![false; nodes.len()];
    let mut best: Vec<(u64, usize)> = (0..nodes.len()).map(|j| (c.dist(nodes[0], nodes[j]), 0)).collect();
    in_tree[0] = true;
    for _ in 1..nodes.len() {
        let i = (0..nodes.len()).filter(|&i| !in_tree[i]).min_by_key(|&i| (best[i].0, i)).unwrap();
        in_tree[i] = true;
        total = total.saturating_add(best[i].0);
        edges.push(norm(nodes[best[i].1], nodes[i]));
        for j in 0..nodes.len() {
            let d = c.dist(nodes[i], nodes[j]);
            if !in_tree[j] && d < best[j].0 {
                best[j] = (d, i);
            }
        }
    }
    (total, edges)
}

/// Subset table of the Dreyfus–Wagner recursion over a fixed terminal list,
/// restricted to the vertices in `allowed`.
pub struct DwTable<'a> {
    closure: &'a MetricClosure,
    allowed: Vec<VertexId>,
    terminals: Vec<VertexId>,
    cost: Vec<Vec<u64>>,
    via: Vec<Vec<usize>>,
    split: Vec<Vec<usize>>,
}

impl<'a> DwTable<'a> {
    pub fn new(closure: &'a MetricClosure, allowed: &[VertexId], terminals: &[VertexId], cap: usize) -> Result<Self> {
        if terminals.len() > cap {
            return Err(Error::Budget(format!("{} terminals exceed the cap of {cap}", terminals.len())));
        }
        let a = allowed.len();
        let full = 1usize << terminals.len();
        let d = |i: usize, j: usize| closure.dist(allowed[i], allowed[j]);
        let mut cost = vec![vec![UNREACHABLE; a]; full];
        let mut via = vec![vec![usize::MAX; a]; full];
        let mut split = vec![vec![0usize; a]; full];
        for (t, &x) in terminals.iter().enumerate() {
            for v in 0..a {
                cost[1 << t][v] = closure.dist(x, allowed[v]);
            }
        }
        for s in 1..full {
            if s.count_ones() < 2 {
                continue;
            }
            let low = s & s.wrapping_neg();
            let mut merge = vec![(UNREACHABLE, 0usize); a];
            let rest = s ^ low;
            let mut sub = rest;
            loop {
                let s1 = sub | low;
                if s1 != s {
                    for (u, m) in merge.iter_mut().enumerate() {
                        let c = cost[s1][u].saturating_add(cost[s ^ s1][u]);
                        if c < m.0 {
                            *m = (c, s1);
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            for v in 0..a {
                for (u, &(m, s1)) in merge.iter().enumerate() {
                    let c = m.saturating_add(d(u, v));
                    if c < cost[s][v] {
                        cost[s][v] = c;
                        via[s][v] = u;
                        split[s][v] = s1;
                    }
                }
            }
        }
        Ok(DwTable { closure, allowed: allowed.to_vec(), terminals: terminals.to_vec(), cost, via, split })
    }

    fn collect(&self, s: usize, v: usize, out: &mut BTreeSet<(VertexId, VertexId)>) {
        let vid = self.allowed[v];
        if s.count_ones() == 1 {
            let t = self.terminals[s.trailing_zeros() as usize];
            if t != vid {
                out.insert(norm(t, vid));
            }
            return;
        }
        let u = self.via[s][v];
        if u != v {
            out.insert(norm(self.allowed[u], vid));
        }
        let s1 = self.split[s][v];
        self.collect(s1, u, out);
        self.collect(s ^ s1, u, out);
    }

    /// Optimal tree for the terminals in `mask`, as closure edges.
    pub fn tree(&self, mask: usize) -> Result<ClosureTree> {
        let chosen: Vec<VertexId> =
            (0..self.terminals.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.terminals[i]).collect();
        let Some(&first) = chosen.first() else {
            return Ok(ClosureTree::default());
        };
        if chosen.len() == 1 {
            return Ok(ClosureTree { cost: 0, vertices: BTreeSet::from([first]), edges: Vec::new() });
        }
        let root = self.allowed.iter().position(|&v| v == first).ok_or(Error::UnknownVertex(first))?;
        if self.cost[mask][root] == UNREACHABLE {
            return Err(Error::Malformed("terminals are disconnected".into()));
        }
        let mut union = BTreeSet::new();
        self.collect(mask, root, &mut union);
        let nodes: Vec<VertexId> = union.iter().flat_map(|&(u, v)| [u, v]).collect::<BTreeSet<_>>().into_iter().collect();
        let (_, edges) = closure_mst(self.closure, &nodes);
        let edges = prune_leaves(edges, &chosen.iter().copied().collect());
        let cost = edges.iter().map(|&(u, v)| self.closure.dist(u, v)).sum();
        let vertices = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        Ok(ClosureTree { cost, vertices, edges })
    }
}

/// A tree in the metric closure.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureTree {
    pub cost: u64,
    pub vertices: BTreeSet<VertexId>,
    pub edges: TreeEdges,
}

/// Exact Steiner tree of `terminals` in the closure.
pub fn dreyfus_wagner(closure: &MetricClosure, terminals: &[VertexId], cap: usize) -> Result<ClosureTree> {
    let table = DwTable::new(closure, closure.vertices(), terminals, cap)?;
    table.tree((1 << terminals.len()) - 1)
}

/// Repeatedly removes leaves outside `keep`.
pub fn prune_leaves(edges: TreeEdges, keep: &BTreeSet<VertexId>) -> TreeEdges {
    let mut edges: BTreeSet<(VertexId, VertexId)> = edges.into_iter().map(|(u, v)| norm(u, v)).collect();
    loop {
        let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &(u, v) in &edges {
            *deg.entry(u).or_default() += 1;
            *deg.entry(v).or_default() += 1;
        }
        let leaves: BTreeSet<VertexId> = deg.iter().filter(|&(v, &d)| d == 1 && !keep.contains(v)).map(|(&v, _)| v).collect();
        if leaves.is_empty() {
            return edges.into_iter().collect();
        }
        edges.retain(|(u, v)| !leaves.contains(u) && !leaves.contains(v));
    }
}

/// Replaces closure edges by shortest paths of `g` and returns a pruned
/// spanning tree of the union.
pub fn expand_closure_edges(
    g: &MultiGraph,
    closure: &MetricClosure,
    terminals: &BTreeSet<VertexId>,
    edges: &[(VertexId, VertexId)],
) -> TreeEdges {
    let mut union = BTreeSet::new();
    for &(u, v) in edges {
        for w in closure.path(u, v).windows(2) {
            union.insert(norm(w[0], w[1]));
        }
    }
    let mut sorted: Vec<(VertexId, VertexId)> = union.into_iter().collect();
    sorted.sort_by_key(|&(u, v)| (edge_weight(g, u, v), u, v));
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    fn find(p: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
        let up = *p.entry(v).or_insert(v);
        if up == v {
            return v;
        }
        let r = find(p, up);
        p.insert(v, r);
        r
    }
    let mut tree = Vec::new();
    for (u, v) in sorted {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent.insert(a, b);
            tree.push((u, v));
        }
    }
    prune_leaves(tree, terminals)
}

/// Optimal Steiner tree of an instance, as edges of its graph.
pub fn solve_exact(inst: &SteinerInstance, cap: usize) -> Result<TreeEdges> {
    let closure = MetricClosure::new(&inst.graph);
    let terminals: Vec<VertexId> = inst.terminals.iter().copied().collect();
    if terminals.iter().any(|&t| !inst.graph.has_vertex(t)) {
        return Err(Error::Malformed("terminal outside the graph".into()));
    }
    let t = dreyfus_wagner(&closure, &terminals, cap)?;
    Ok(expand_closure_edges(&inst.graph, &closure, &inst.terminals, &t.edges))
}

/// Smallest `k` with `1/⌊log₂ k⌋ ≤ ε/2`, that is `2^⌈2/ε⌉`.
pub fn restricted_k(eps: Rational) -> usize {
    let e = (Rational::from_integer(2) / eps).ceil().to_integer();
    if e >= usize::BITS as i64 - 1 {
        usize::MAX
    } else {
        1usize << e
    }
}

/// `ŵ(e) = ⌈w(e)/s⌉` with step `s = num/den`; zero when the step is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rounding {
    pub num: u128,
    pub den: u128,
}

impl Rounding {
    /// Step `ε·L/(4|R|)` with `L = w(T₂)/2`.
    pub fn new(eps: Rational, t2: u64, terminals: usize) -> Self {
        Rounding {
            num: *eps.numer() as u128 * t2 as u128,
            den: *eps.denom() as u128 * 8 * terminals.max(1) as u128,
        }
    }

    pub fn round(&self, w: u64) -> u64 {
        if self.num == 0 {
            0
        } else {
            (w as u128 * self.den).div_ceil(self.num) as u64
        }
    }

    pub fn step(&self) -> Rational {
        Rational::new(self.num as i64, self.den as i64)
    }
}

fn subsets_up_to(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        if cur.len() == s {
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, s, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct SteinerLifter {
    pub graph: MultiGraph,
    pub terminals: BTreeSet<VertexId>,
    pub closure: MetricClosure,
    pub closure_graph: MultiGraph,
    pub transcript: MinorTranscript,
    pub rounding: Rounding,
    pub t2: ClosureTree,
    pub k_restricted: usize,
    pub marked: BTreeSet<VertexId>,
}

impl SteinerLifter {
    /// Replays the transcript on the closure and rounds the weights.
    pub fn rebuild(&self) -> Result<MultiGraph> {
        let mut g = self.transcript.replay(&self.closure_graph)?;
        let edges: Vec<(VertexId, VertexId, u32)> = g.edges().collect();
        for (u, v, _) in edges {
            let w = self.rounding.round(edge_weight(&g, u, v));
            g.set_weight(u, v, w)?;
        }
        Ok(g)
    }
}

impl Lifter<SteinerTree> for SteinerLifter {
    fn lift(&self, reduced: &TreeEdges) -> TreeEdges {
        let in_kernel = |u: VertexId, v: VertexId| self.marked.contains(&u) && self.marked.contains(&v);
        let ok = reduced.iter().all(|&(u, v)| u != v && in_kernel(u, v)) && {
            let mut skeleton = MultiGraph::new();
            for &v in &self.marked {
                skeleton.insert_vertex(v);
            }
            for &(u, v) in reduced {
                if skeleton.multiplicity(u, v) == 0 {
                    skeleton.add_edge(u, v).unwrap();
                }
            }
            is_steiner_tree(&skeleton, &self.terminals, reduced)
        };
        let edges = if ok { reduced } else { &self.t2.edges };
        expand_closure_edges(&self.graph, &self.closure, &self.terminals, edges)
    }
}

pub type SteinerOutput = KernelOutput<SteinerTree, SteinerLifter>;

pub fn check_steiner_eps(eps: Rational) -> Result<()> {
    if eps <= Rational::from_integer(0) || eps > Rational::from_integer(1) {
        return Err(Error::Accuracy(format!("epsilon must lie in (0, 1], got {eps}")));
    }
    Ok(())
}

pub fn steiner_kernelize(inst: &SteinerInstance, k: usize, eps: Rational, dw_cap: usize) -> Result<SteinerOutput> {
    check_steiner_eps(eps)?;
    if inst.terminals.is_empty() {
        return Err(Error::Malformed("no terminals".into()));
    }
    if let Some(&t) = inst.terminals.iter().find(|&&t| !inst.graph.has_vertex(t)) {
        return Err(Error::UnknownVertex(t));
    }
    let closure = MetricClosure::new(&inst.graph);
    let terminals: Vec<VertexId> = inst.terminals.iter().copied().collect();
    if terminals.iter().any(|&a| closure.dist(terminals[0], a) == UNREACHABLE) {
        return Err(Error::Malformed("terminals are disconnected".into()));
    }
    let (t2_cost, t2_edges) = closure_mst(&closure, &terminals);
    let near: Vec<VertexId> = closure
        .vertices()
        .iter()
        .copied()
        .filter(|v| inst.terminals.contains(v) || terminals.iter().map(|&x| closure.dist(*v, x)).min().unwrap() < t2_cost)
        .collect();
    let kr = restricted_k(eps);
    let s = kr.min(terminals.len());
    if s > dw_cap {
        return Err(Error::Budget(format!("subsets of {s} terminals exceed the cap of {dw_cap}")));
    }
    let mut marked = inst.terminals.clone();
    if terminals.len() <= dw_cap {
        let table = DwTable::new(&closure, &near, &terminals, dw_cap)?;
        for sub in subsets_up_to(terminals.len(), s) {
            let mask = sub.iter().fold(0usize, |m, &i| m | 1 << i);
            marked.extend(table.tree(mask)?.vertices);
        }
    } else {
        for sub in subsets_up_to(terminals.len(), s) {
            let chosen: Vec<VertexId> = sub.iter().map(|&i| terminals[i]).collect();
            let table = DwTable::new(&closure, &near, &chosen, dw_cap)?;
            marked.extend(table.tree((1 << chosen.len()) - 1)?.vertices);
        }
    }
    let closure_graph = closure.graph();
    let mut minor = Minor::new(closure_graph.clone());
    for v in closure.vertices().iter().copied().filter(|v| !marked.contains(v)) {
        minor.delete_vertex(v)?;
    }
    let rounding = Rounding::new(eps, t2_cost, terminals.len());
    let lifter = SteinerLifter {
        graph: inst.graph.clone(),
        terminals: inst.terminals.clone(),
        closure,
        closure_graph,
        transcript: minor.transcript,
        rounding,
        t2: ClosureTree {
            cost: t2_cost,
            vertices: inst.terminals.clone(),
            edges: t2_edges,
        },
        k_restricted: kr,
        marked,
    };
    let reduced = SteinerInstance { graph: lifter.rebuild()?, terminals: inst.terminals.clone() };
    let r = terminals.len() as u128;
    let mut bound = r;
    let mut choose = 1u128;
    for i in 1..=s as u128 {
        choose = choose * (r - i + 1) / i;
        if i >= 3 {
            bound = bound.saturating_add(choose.saturating_mul(i - 2));
        }
    }
    Ok(KernelOutput {
        reduced: ParameterizedInstance::new(reduced, k),
        lifter,
        alpha: Rational::from_integer(1) + eps,
        strict: false,
        size_bound: Some(bound),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct SteinerKernel {
    pub eps: Rational,
    pub dw_cap: usize,
}

impl Kernel<SteinerTree> for SteinerKernel {
    type Lifter = SteinerLifter;

    fn run(&self, input: &ParameterizedInstance<SteinerInstance>) -> Result<SteinerOutput> {
        steiner_kernelize(&input.instance, input.k, self.eps, self.dw_cap)
    }
}
