//! Vertex-disjoint cycle packing.

pub mod decompose;
pub mod fvs;
pub mod paths;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::framework::{max_alpha, Goal, Kernel, KernelOutput, Lifter, ParameterizedInstance, Problem, Rational, Value};
use crate::graph::{Minor, MinorOp, MinorTranscript, MultiGraph, VertexId};
use crate::ulic::build_ulic_with_depth;

pub use decompose::{decompose, mark_in_tree, reduce_leaf, reduce_multiedge, Decomposed, Decomposition, Marking};
pub use fvs::{erdos_posa_split, feedback_vertex_set, EpSplit};
pub use paths::{build_path_graphs, PathIntervalGraph};

pub type Cycle = Vec<VertexId>;
pub type Packing = Vec<Cycle>;

/// A closed walk without repeated vertices; two vertices need a double edge.
pub fn is_cycle(g: &MultiGraph, c: &[VertexId]) -> bool {
    let distinct: BTreeSet<_> = c.iter().collect();
    if c.len() < 2 || distinct.len() != c.len() || !c.iter().all(|&v| g.has_vertex(v)) {
        return false;
    }
    if c.len() == 2 {
        return g.multiplicity(c[0], c[1]) >= 2;
    }
    (0..c.len()).all(|i| g.multiplicity(c[i], c[(i + 1) % c.len()]) > 0)
}

pub fn is_packing(g: &MultiGraph, p: &[Cycle]) -> bool {
    let mut seen = BTreeSet::new();
    p.iter().all(|c| is_cycle(g, c) && c.iter().all(|&v| seen.insert(v)))
}

pub struct CyclePacking;

impl Problem for CyclePacking {
    type Instance = MultiGraph;
    type Solution = Packing;
    const NAME: &'static str = "cp";
    const GOAL: Goal = Goal::Maximize;

    fn value(g: &MultiGraph, k: usize, p: &Packing) -> Value {
        if is_packing(g, p) {
            Value::capped(p.len(), k)
        } else {
            Value::NegInf
        }
    }

    fn size(g: &MultiGraph) -> usize {
        g.n()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CpConfig {
    /// Erdős–Pósa constant.
    pub c: f64,
    pub ulic_depth: Option<usize>,
}

impl Default for CpConfig {
    fn default() -> Self {
        CpConfig { c: 4.0, ulic_depth: None }
    }
}

/// What the reduction saw, for inspection and structural checks.
#[derive(Clone, Debug, Default)]
pub struct CpTrace {
    pub early_exit: Option<Packing>,
    /// The minor the decomposition refers to.
    pub decomposed: Option<MultiGraph>,
    pub decomposition: Option<Decomposition>,
    pub path_graphs: Vec<Vec<PathIntervalGraph>>,
    pub kept: Vec<BTreeSet<usize>>,
}

/// Deletes everything but the given disjoint cycles and contracts each to a
/// digon.
fn collapse_to_digons(m: &mut Minor, cycles: &[Cycle]) -> Result<()> {
    let mut slot: BTreeMap<VertexId, (usize, usize)> = BTreeMap::new();
    for (ci, c) in cycles.iter().enumerate() {
        for (i, &v) in c.iter().enumerate() {
            slot.insert(v, (ci, i));
        }
    }
    let drop: Vec<VertexId> = m.graph.vertices().filter(|v| !slot.contains_key(v)).collect();
    for v in drop {
        m.delete_vertex(v)?;
    }
    let edges: Vec<(VertexId, VertexId, u32)> = m.graph.edges().collect();
    for (u, v, c) in edges {
        let (cu, iu) = slot[&u];
        let (cv, iv) = slot[&v];
        let len = cycles[cu].len();
        let allowed = if cu != cv {
            0
        } else if len == 2 {
            2
        } else if (iu + 1) % len == iv || (iv + 1) % len == iu {
            1
        } else {
            0
        };
        if c > allowed {
            m.delete_edges(u, v, c - allowed)?;
        }
    }
    for c in cycles {
        let mut cur = c[0];
        for &x in &c[1..c.len() - 1] {
            cur = m.contract(cur, x)?;
        }
    }
    Ok(())
}

/// Shortens one path: drops the `Z`-edges of unkept internal vertices, then
/// contracts each of them into its predecessor.
fn shorten_path(m: &mut Minor, path: &[VertexId], kept: &BTreeSet<usize>) -> Result<()> {
    let on_path: BTreeSet<VertexId> = path.iter().copied().collect();
    for (i, &v) in path.iter().enumerate() {
        if kept.contains(&(i + 1)) {
            continue;
        }
        let off: Vec<(VertexId, u32)> = m.graph.neighbors(v).filter(|(x, _)| !on_path.contains(x)).collect();
        for (x, c) in off {
            m.delete_edges(v, x, c)?;
        }
    }
    let mut cur = path[0];
    for (i, &v) in path.iter().enumerate().skip(1) {
        cur = if kept.contains(&(i + 1)) { v } else { m.contract(cur, v)? };
    }
    Ok(())
}

pub type CpOutput = KernelOutput<CyclePacking, CpLifter>;

pub fn cp_kernelize(g: &MultiGraph, k: usize, eps: Rational) -> Result<CpOutput> {
    Ok(cp_kernelize_with(g, k, eps, &CpConfig::default())?.0)
}

pub fn cp_kernelize_with(g: &MultiGraph, k: usize, eps: Rational, config: &CpConfig) -> Result<(CpOutput, CpTrace)> {
    let alpha = max_alpha(eps)?;
    let mut m = Minor::new(g.clone());
    let mut trace = CpTrace::default();
    let target = k + 1;
    match decompose(&mut m, target, config.c)? {
        Decomposed::Cycles(cycles) => {
            collapse_to_digons(&mut m, &cycles)?;
            trace.early_exit = Some(cycles);
        }
        Decomposed::Structure(dec) => {
            let z: Vec<VertexId> = dec.z.iter().copied().collect();
            let half = eps / 2;
            let snapshot = m.graph.clone();
            let mut plans = Vec::new();
            for path in &dec.paths {
                let graphs = build_path_graphs(&snapshot, path, &z);
                let mut kept = paths::anchor_positions(&snapshot, path, &z);
                for h in &graphs {
                    if h.instance.is_empty() {
                        continue;
                    }
                    let x = build_ulic_with_depth(&h.instance, half, config.ulic_depth)?;
                    for &i in &x.marked {
                        let iv = h.instance.intervals[i];
                        kept.insert(iv.left as usize);
                        kept.insert(iv.right as usize);
                    }
                }
                trace.path_graphs.push(graphs);
                trace.kept.push(kept.clone());
                plans.push((path.clone(), kept));
            }
            for (path, kept) in &plans {
                shorten_path(&mut m, path, kept)?;
            }
            trace.decomposed = Some(snapshot);
            trace.decomposition = Some(dec);
        }
    }
    let out = KernelOutput {
        reduced: ParameterizedInstance::new(m.graph, k),
        lifter: CpLifter::new(g.clone(), m.transcript),
        alpha,
        strict: false,
        size_bound: None,
    };
    Ok((out, trace))
}

#[derive(Clone, Copy, Debug)]
pub struct CpKernel {
    pub eps: Rational,
    pub config: CpConfig,
}

impl Kernel<CyclePacking> for CpKernel {
    type Lifter = CpLifter;

    fn run(&self, input: &ParameterizedInstance<MultiGraph>) -> Result<CpOutput> {
        Ok(cp_kernelize_with(&input.instance, input.k, self.eps, &self.config)?.0)
    }
}

#[derive(Clone, Debug)]
struct Merge {
    u: VertexId,
    v: VertexId,
    into: VertexId,
    nu: BTreeMap<VertexId, u32>,
    nv: BTreeMap<VertexId, u32>,
}

/// Undoes the transcript backwards; only contractions change a packing.
#[derive(Debug, Serialize, Deserialize)]
pub struct CpLifter {
    pub original: MultiGraph,
    pub transcript: MinorTranscript,
    #[serde(skip)]
    merges: OnceLock<Vec<Merge>>,
}

impl Clone for CpLifter {
    fn clone(&self) -> Self {
        CpLifter::new(self.original.clone(), self.transcript.clone())
    }
}

impl CpLifter {
    pub fn new(original: MultiGraph, transcript: MinorTranscript) -> Self {
        CpLifter { original, transcript, merges: OnceLock::new() }
    }

    fn merges(&self) -> &[Merge] {
        self.merges.get_or_init(|| {
            let mut g = self.original.clone();
            let mut out = Vec::new();
            for op in &self.transcript.ops {
                if let MinorOp::ContractEdge { u, v, into } = *op {
                    out.push(Merge {
                        u,
                        v,
                        into,
                        nu: g.neighbors(u).collect(),
                        nv: g.neighbors(v).collect(),
                    });
                }
                if g.apply(op).is_err() {
                    break;
                }
            }
            out
        })
    }
}

fn expand(m: &Merge, c: &Cycle) -> Cycle {
    let Some(pos) = c.iter().position(|&x| x == m.into) else { return c.clone() };
    let has = |side: &BTreeMap<VertexId, u32>, x: VertexId| side.get(&x).copied().unwrap_or(0);
    if c.len() == 2 {
        let x = c[1 - pos];
        return if has(&m.nu, x) >= 2 {
            vec![m.u, x]
        } else if has(&m.nv, x) >= 2 {
            vec![m.v, x]
        } else {
            vec![m.u, x, m.v]
        };
    }
    let a = c[(pos + c.len() - 1) % c.len()];
    let b = c[(pos + 1) % c.len()];
    let mid = if has(&m.nu, a) > 0 && has(&m.nu, b) > 0 {
        vec![m.u]
    } else if has(&m.nv, a) > 0 && has(&m.nv, b) > 0 {
        vec![m.v]
    } else if has(&m.nu, a) > 0 && has(&m.nv, b) > 0 {
        vec![m.u, m.v]
    } else if has(&m.nv, a) > 0 && has(&m.nu, b) > 0 {
        vec![m.v, m.u]
    } else {
        vec![m.u]
    };
    let mut out = c[..pos].to_vec();
    out.extend(mid);
    out.extend(&c[pos + 1..]);
    out
}

impl Lifter<CyclePacking> for CpLifter {
    fn lift(&self, reduced: &Packing) -> Packing {
        let mut p = reduced.clone();
        for m in self.merges().iter().rev() {
            for c in p.iter_mut() {
                *c = expand(m, c);
            }
        }
        p
    }
}
