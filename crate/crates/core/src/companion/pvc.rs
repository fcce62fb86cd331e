//! Partial Vertex Cover parameterized by the solution size.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::{Goal, Kernel, KernelOutput, Lifter, ParameterizedInstance, Problem, Rational, Value};
use crate::graph::{Minor, MinorTranscript, MultiGraph, VertexId};

pub type VertexSet = BTreeSet<VertexId>;

pub struct PartialVertexCover;

/// Edges with at least one endpoint in `s`, counted with multiplicity.
pub fn covered_edges(g: &MultiGraph, s: &VertexSet) -> usize {
    g.edges().filter(|(u, v, _)| s.contains(u) || s.contains(v)).map(|(_, _, c)| c as usize).sum()
}

impl Problem for PartialVertexCover {
    type Instance = MultiGraph;
    type Solution = VertexSet;
    const NAME: &'static str = "pvc";
    const GOAL: Goal = Goal::Maximize;

    fn value(g: &MultiGraph, k: usize, s: &VertexSet) -> Value {
        if s.len() > k || s.iter().any(|&v| !g.has_vertex(v)) {
            Value::NegInf
        } else {
            Value::Finite(covered_edges(g, s) as i64)
        }
    }

    fn size(g: &MultiGraph) -> usize {
        g.n()
    }
}

/// Vertices by non-increasing degree, ties by id.
pub fn degree_order(g: &MultiGraph) -> Vec<VertexId> {
    let mut vs: Vec<VertexId> = g.vertices().collect();
    vs.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    vs
}

/// `β·C(k,2)` with `β = α/(α − 1)`.
pub fn threshold(k: usize, alpha: Rational) -> Result<Rational> {
    let one = Rational::from_integer(1);
    if alpha <= one {
        return Err(Error::Accuracy(format!("alpha must exceed 1, got {alpha}")));
    }
    let beta = alpha / (alpha - one);
    let pairs = (k * k.saturating_sub(1) / 2) as i64;
    Ok(beta * Rational::from_integer(pairs))
}

/// `|V'| = k·⌈β·C(k,2)⌉ + 1`.
pub fn prefix_len(k: usize, alpha: Rational) -> Result<usize> {
    Ok(k * threshold(k, alpha)?.ceil().to_integer() as usize + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PvcCase {
    /// High-degree case: the answer is fixed in advance.
    TopDegree(VertexSet),
    Neighbourhood { prefix: Vec<VertexId> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PvcLifter {
    pub case: PvcCase,
    pub transcript: MinorTranscript,
}

impl Lifter<PartialVertexCover> for PvcLifter {
    fn lift(&self, reduced: &VertexSet) -> VertexSet {
        match &self.case {
            PvcCase::TopDegree(s) => s.clone(),
            PvcCase::Neighbourhood { .. } => reduced.clone(),
        }
    }
}

pub type PvcOutput = KernelOutput<PartialVertexCover, PvcLifter>;

pub fn pvc_kernelize(g: &MultiGraph, k: usize, alpha: Rational) -> Result<PvcOutput> {
    let t = threshold(k, alpha)?;
    let order = degree_order(g);
    let top = order.first().map_or(0, |&v| g.degree(v));
    let mut minor = Minor::new(g.clone());
    if Rational::from_integer(top as i64) >= t {
        for v in g.vertices() {
            minor.delete_vertex(v)?;
        }
        let s = order.iter().take(k).copied().collect();
        return Ok(KernelOutput {
            reduced: ParameterizedInstance::new(minor.graph, 0),
            lifter: PvcLifter { case: PvcCase::TopDegree(s), transcript: minor.transcript },
            alpha,
            strict: true,
            size_bound: Some(0),
        });
    }
    let prefix: Vec<VertexId> = order.iter().take(prefix_len(k, alpha)?).copied().collect();
    let mut keep: VertexSet = prefix.iter().copied().collect();
    for &v in &prefix {
        keep.extend(g.neighbor_set(v));
    }
    for v in g.vertices().filter(|v| !keep.contains(v)) {
        minor.delete_vertex(v)?;
    }
    let c = t.ceil().to_integer() as u128;
    Ok(KernelOutput {
        reduced: ParameterizedInstance::new(minor.graph, k),
        lifter: PvcLifter { case: PvcCase::Neighbourhood { prefix }, transcript: minor.transcript },
        alpha,
        strict: true,
        size_bound: Some((k as u128 * c + 1) * c.max(1)),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct PvcKernel {
    pub alpha: Rational,
}

impl Kernel<PartialVertexCover> for PvcKernel {
    type Lifter = PvcLifter;

    fn run(&self, input: &ParameterizedInstance<MultiGraph>) -> Result<PvcOutput> {
        pvc_kernelize(&input.instance, input.k, self.alpha)
    }
}
