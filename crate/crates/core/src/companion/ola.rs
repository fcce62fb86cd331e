//! Optimal Linear Arrangement parameterized by vertex cover.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::{Goal, Kernel, KernelOutput, Lifter, ParameterizedInstance, Problem, Rational, Value};
use crate::graph::{Minor, MinorTranscript, MultiGraph, VertexId};

pub type VertexSet = BTreeSet<VertexId>;

/// A graph with a vertex cover.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OlaInstance {
    pub graph: MultiGraph,
    pub cover: VertexSet,
}

/// `Σ |σ(u) − σ(v)|` over edges (with multiplicity) for the layout listing
/// vertices in `order`.
pub fn ola_val(g: &MultiGraph, order: &[VertexId]) -> Result<u64> {
    let mut pos = BTreeMap::new();
    for (i, &v) in order.iter().enumerate() {
        if !g.has_vertex(v) || pos.insert(v, i as u64).is_some() {
            return Err(Error::InvalidSolution(format!("{order:?} is not a layout")));
        }
    }
    if pos.len() != g.n() {
        return Err(Error::InvalidSolution(format!("{order:?} misses vertices")));
    }
    Ok(g.edges().map(|(u, v, c)| pos[&u].abs_diff(pos[&v]) * c as u64).sum())
}

pub struct LinearArrangement;

impl Problem for LinearArrangement {
    type Instance = OlaInstance;
    type Solution = Vec<VertexId>;
    const NAME: &'static str = "ola";
    const GOAL: Goal = Goal::Minimize;

    fn value(inst: &OlaInstance, k: usize, order: &Vec<VertexId>) -> Value {
        if inst.cover.len() > k || !inst.graph.is_vertex_cover(&inst.cover) {
            return Value::NegInf;
        }
        match ola_val(&inst.graph, order) {
            Ok(v) => Value::Finite(v as i64),
            Err(_) => Value::PosInf,
        }
    }

    fn size(inst: &OlaInstance) -> usize {
        inst.graph.n()
    }
}

/// Endpoints of a maximal matching, taken greedily in edge order.
pub fn matching_cover(g: &MultiGraph) -> VertexSet {
    let mut cover = VertexSet::new();
    for (u, v, _) in g.edges() {
        if !cover.contains(&u) && !cover.contains(&v) {
            cover.extend([u, v]);
        }
    }
    cover
}

/// Classes `I_S` of vertices outside the cover keyed by their neighbourhood.
pub fn twin_classes(g: &MultiGraph, cover: &VertexSet) -> BTreeMap<Vec<VertexId>, Vec<VertexId>> {
    let mut out: BTreeMap<Vec<VertexId>, Vec<VertexId>> = BTreeMap::new();
    for v in g.vertices().filter(|v| !cover.contains(v)) {
        out.entry(g.neighbor_set(v).into_iter().collect()).or_default().push(v);
    }
    out
}

/// `max(1, ⌊εn / (4k²·k²·2^{k+4})⌋)`.
pub fn group_size(n: usize, k: usize, eps: Rational) -> usize {
    if k == 0 || k > 90 {
        return 1;
    }
    let k = k as i128;
    let denom = 4 * k.pow(4) * (1i128 << (k + 4));
    let num = *eps.numer() as i128 * n as i128;
    let x = num / (*eps.denom() as i128 * denom);
    x.max(1) as usize
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OlaLifter {
    pub x: usize,
    /// Representative to its group, in id order.
    pub groups: BTreeMap<VertexId, Vec<VertexId>>,
    /// Vertices trimmed for divisibility, in id order.
    pub trimmed: Vec<VertexId>,
    pub vertices: Vec<VertexId>,
    pub transcript: MinorTranscript,
}

impl OlaLifter {
    /// The layout of `G₁` in which each group sits where its representative is.
    pub fn expand(&self, reduced: &[VertexId]) -> Vec<VertexId> {
        let mut out = Vec::new();
        for v in reduced {
            match self.groups.get(v) {
                Some(group) => out.extend(group),
                None => out.push(*v),
            }
        }
        out
    }
}

impl Lifter<LinearArrangement> for OlaLifter {
    fn lift(&self, reduced: &Vec<VertexId>) -> Vec<VertexId> {
        let known: VertexSet = self.vertices.iter().copied().collect();
        let mut seen = VertexSet::new();
        let mut out: Vec<VertexId> =
            self.expand(reduced).into_iter().filter(|v| known.contains(v) && seen.insert(*v)).collect();
        out.extend(self.trimmed.iter().copied().filter(|v| seen.insert(*v)));
        out.extend(self.vertices.iter().copied().filter(|v| seen.insert(*v)));
        out
    }
}

pub type OlaOutput = KernelOutput<LinearArrangement, OlaLifter>;

/// Intermediate graph `G₁`: the input minus the trimmed vertices.
pub fn trimmed_graph(g: &MultiGraph, lifter: &OlaLifter) -> MultiGraph {
    let drop: VertexSet = lifter.trimmed.iter().copied().collect();
    g.without(&drop)
}

pub fn ola_kernelize(inst: &OlaInstance, k: usize, eps: Rational, force_x: Option<usize>) -> Result<OlaOutput> {
    if eps <= Rational::from_integer(0) {
        return Err(Error::Accuracy(format!("epsilon must be positive, got {eps}")));
    }
    let g = &inst.graph;
    if !g.is_vertex_cover(&inst.cover) || inst.cover.iter().any(|&c| !g.has_vertex(c)) {
        return Err(Error::Malformed("the given set is not a vertex cover".into()));
    }
    if inst.cover.len() > k {
        return Err(Error::Malformed(format!("cover of size {} exceeds k = {k}", inst.cover.len())));
    }
    let x = match force_x {
        Some(0) => return Err(Error::Malformed("group size must be positive".into())),
        Some(x) => x,
        None => group_size(g.n(), k, eps),
    };
    let mut minor = Minor::new(g.clone());
    let mut trimmed = Vec::new();
    let mut groups = BTreeMap::new();
    let mut merged = Vec::new();
    for class in twin_classes(g, &inst.cover).into_values() {
        let cut = class.len() - class.len() % x;
        trimmed.extend_from_slice(&class[cut..]);
        for chunk in class[..cut].chunks(x) {
            groups.insert(chunk[0], chunk.to_vec());
            merged.extend_from_slice(&chunk[1..]);
        }
    }
    trimmed.sort_unstable();
    for &v in trimmed.iter().chain(&merged) {
        minor.delete_vertex(v)?;
    }
    let lifter = OlaLifter { x, groups, trimmed, vertices: g.vertices().collect(), transcript: minor.transcript };
    Ok(KernelOutput {
        reduced: ParameterizedInstance::new(OlaInstance { graph: minor.graph, cover: inst.cover.clone() }, k),
        lifter,
        alpha: Rational::from_integer(1) + eps,
        strict: false,
        size_bound: Some((k + g.n() / x) as u128),
    })
}

/// `(k + 1)·m/x + k²·n/x`.
pub fn reverse_slack(k: usize, m: usize, n: usize, x: usize) -> Rational {
    let (k, m, n, x) = (k as i64, m as i64, n as i64, x as i64);
    Rational::new((k + 1) * m + k * k * n, x)
}

/// `m²/(4k²)`; zero when `k = 0`.
pub fn opt_lower_bound(m: usize, k: usize) -> Rational {
    if k == 0 {
        return Rational::from_integer(0);
    }
    Rational::new((m * m) as i64, (4 * k * k) as i64)
}

#[derive(Clone, Copy, Debug)]
pub struct OlaKernel {
    pub eps: Rational,
    pub force_x: Option<usize>,
}

impl Kernel<LinearArrangement> for OlaKernel {
    type Lifter = OlaLifter;

    fn run(&self, input: &ParameterizedInstance<OlaInstance>) -> Result<OlaOutput> {
        ola_kernelize(&input.instance, input.k, self.eps, self.force_x)
    }
}
