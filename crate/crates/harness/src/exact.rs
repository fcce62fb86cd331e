//! Adapters from the exact solvers to the `Oracle` trait.

use std::collections::BTreeSet;

use lossy_kernels::companion::ola::{LinearArrangement, OlaInstance};
use lossy_kernels::companion::pvc::PartialVertexCover;
use lossy_kernels::companion::steiner::{edge_weight, SteinerInstance, SteinerTree};
use lossy_kernels::cp::{CyclePacking, Packing};
use lossy_kernels::cvc::{ConnectedVertexCover, VertexSet};
use lossy_kernels::df::{DisjointFactors, StringInstance};
use lossy_kernels::framework::{Oracle, Value};
use lossy_kernels::{Error, MultiGraph, Result, VertexId};
use lossy_oracles::OracleError;

fn refused(e: OracleError) -> Error {
    Error::Budget(e.to_string())
}

/// A graph relabelled onto `0..n`, parallel edges repeated.
pub struct Indexed {
    pub ids: Vec<VertexId>,
    pub edges: Vec<(usize, usize)>,
}

impl Indexed {
    pub fn new(g: &MultiGraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let idx = |v: VertexId| ids.binary_search(&v).unwrap();
        let edges = g
            .edges()
            .flat_map(|(u, v, c)| std::iter::repeat_n((idx(u), idx(v)), c as usize))
            .collect();
        Indexed { ids, edges }
    }

    pub fn index(&self, v: VertexId) -> usize {
        self.ids.binary_search(&v).unwrap()
    }

    pub fn back(&self, vs: &[usize]) -> Vec<VertexId> {
        vs.iter().map(|&i| self.ids[i]).collect()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Exact;

impl Oracle<ConnectedVertexCover> for Exact {
    fn solve(&self, g: &MultiGraph, k: usize) -> Result<(Value, VertexSet)> {
        let ix = Indexed::new(g);
        let s = lossy_oracles::cvc::exact_cvc(ix.ids.len(), &ix.edges, k).map_err(refused)?;
        Ok(match s.value {
            Some(v) => (Value::Finite(v as i64), ix.back(&s.witness).into_iter().collect()),
            None => (Value::PosInf, VertexSet::new()),
        })
    }
}

impl Oracle<CyclePacking> for Exact {
    fn solve(&self, g: &MultiGraph, k: usize) -> Result<(Value, Packing)> {
        let ix = Indexed::new(g);
        let s = lossy_oracles::cp::exact_cp(ix.ids.len(), &ix.edges, k).map_err(refused)?;
        Ok((Value::Finite(s.value as i64), s.witness.iter().map(|c| ix.back(c)).collect()))
    }
}

impl Oracle<DisjointFactors> for Exact {
    fn solve(&self, s: &StringInstance, _k: usize) -> Result<(Value, Vec<(usize, usize)>)> {
        let sol = lossy_oracles::df::exact_df(&s.text).map_err(refused)?;
        Ok((Value::Finite(sol.value as i64), sol.witness))
    }
}

impl Oracle<PartialVertexCover> for Exact {
    fn solve(&self, g: &MultiGraph, k: usize) -> Result<(Value, VertexSet)> {
        let ix = Indexed::new(g);
        let s = lossy_oracles::pvc::exact_pvc(ix.ids.len(), &ix.edges, k).map_err(refused)?;
        Ok((Value::Finite(s.value as i64), ix.back(&s.witness).into_iter().collect()))
    }
}

impl Oracle<SteinerTree> for Exact {
    fn solve(&self, inst: &SteinerInstance, k: usize) -> Result<(Value, Vec<(VertexId, VertexId)>)> {
        if inst.terminals.len() > k {
            return Ok((Value::NegInf, Vec::new()));
        }
        let g = &inst.graph;
        let ix = Indexed::new(g);
        let edges: Vec<(usize, usize, u64)> =
            g.edges().map(|(u, v, _)| (ix.index(u), ix.index(v), edge_weight(g, u, v))).collect();
        let terminals: Vec<usize> = inst.terminals.iter().map(|&t| ix.index(t)).collect();
        let s = lossy_oracles::steiner::exact_steiner(ix.ids.len(), &edges, &terminals).map_err(refused)?;
        let closure = lossy_kernels::companion::steiner::MetricClosure::new(g);
        let tree: Vec<(VertexId, VertexId)> = s.witness.iter().map(|&(u, v, _)| (ix.ids[u], ix.ids[v])).collect();
        let witness = lossy_kernels::companion::steiner::expand_closure_edges(g, &closure, &inst.terminals, &tree);
        Ok((Value::Finite(s.value as i64), witness))
    }
}

impl Oracle<LinearArrangement> for Exact {
    fn solve(&self, inst: &OlaInstance, k: usize) -> Result<(Value, Vec<VertexId>)> {
        if inst.cover.len() > k || !inst.graph.is_vertex_cover(&inst.cover) {
            return Ok((Value::NegInf, Vec::new()));
        }
        let ix = Indexed::new(&inst.graph);
        let n = ix.ids.len();
        let s = if n <= 9 {
            lossy_oracles::ola::exact_ola(n, &ix.edges)
        } else {
            lossy_oracles::ola::exact_ola_cuts(n, &ix.edges)
        }
        .map_err(refused)?;
        Ok((Value::Finite(s.value as i64), ix.back(&s.witness)))
    }
}

/// Every vertex set of `g`, smallest first; for exhaustive checks.
pub fn all_subsets(g: &MultiGraph) -> impl Iterator<Item = BTreeSet<VertexId>> + '_ {
    let ids: Vec<VertexId> = g.vertices().collect();
    (0u64..1 << ids.len()).map(move |m| (0..ids.len()).filter(|i| m >> i & 1 == 1).map(|i| ids[i]).collect())
}
