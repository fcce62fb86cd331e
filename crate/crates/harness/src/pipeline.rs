//! Per-problem plumbing: parsing, kernel construction, solution files and
//! oracle-backed verification.

use std::fmt;
use std::str::FromStr;

use lossy_kernels::companion::ola::{matching_cover, LinearArrangement, OlaInstance, OlaKernel};
use lossy_kernels::companion::pvc::{PartialVertexCover, PvcKernel};
use lossy_kernels::companion::steiner::{SteinerInstance, SteinerKernel, SteinerTree, DEFAULT_DW_CAP};
use lossy_kernels::cp::{CpConfig, CpKernel, CyclePacking};
use lossy_kernels::cvc::{ConnectedVertexCover, CvcKernel};
use lossy_kernels::df::{DisjointFactors, DfKernel, StringInstance};
use lossy_kernels::framework::{
    rational, verify_ratio, Goal, Kernel, KernelOutput, Lifter, Oracle, ParameterizedInstance, Problem, Rational,
    Value,
};
use lossy_kernels::io::{parse_graph, parse_strings, write_graph, write_strings, GraphFile};
use lossy_kernels::{Error, MinorTranscript, MultiGraph, Result, VertexId};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::exact::Exact;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Cvc,
    Df,
    Cp,
    Pvc,
    Steiner,
    Ola,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 6] =
        [ProblemKind::Cvc, ProblemKind::Df, ProblemKind::Cp, ProblemKind::Pvc, ProblemKind::Steiner, ProblemKind::Ola];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Cvc => "cvc",
            ProblemKind::Df => "df",
            ProblemKind::Cp => "cp",
            ProblemKind::Pvc => "pvc",
            ProblemKind::Steiner => "steiner",
            ProblemKind::Ola => "ola",
        }
    }

    pub fn goal(self) -> Goal {
        match self {
            ProblemKind::Cvc | ProblemKind::Steiner | ProblemKind::Ola => Goal::Minimize,
            ProblemKind::Df | ProblemKind::Cp | ProblemKind::Pvc => Goal::Maximize,
        }
    }

    /// Whether the kernel takes `α` rather than `ε`.
    pub fn takes_alpha(self) -> bool {
        matches!(self, ProblemKind::Cvc | ProblemKind::Pvc)
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ProblemKind::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| format!("unknown problem {s}"))
    }
}

/// Kernel settings shared by every problem.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub k: Option<usize>,
    pub alpha: Option<f64>,
    pub eps: Option<f64>,
    pub force_x: Option<usize>,
    pub dw_cap: Option<usize>,
}

impl Params {
    /// The accuracy in the kernel's native form. `α` and `ε` convert by
    /// `α = 1 + ε` when minimizing and `α = 1/(1 − ε)` when maximizing.
    pub fn accuracy(&self, kind: ProblemKind) -> Result<Rational> {
        let one = Rational::from_integer(1);
        let minimize = kind.goal() == Goal::Minimize;
        match (kind.takes_alpha(), self.alpha, self.eps) {
            (true, Some(a), _) => rational(a),
            (true, None, Some(e)) => {
                let e = rational(e)?;
                Ok(if minimize { one + e } else { (one - e).recip() })
            }
            (false, _, Some(e)) => rational(e),
            (false, Some(a), None) => {
                let a = rational(a)?;
                Ok(if minimize { a - one } else { one - a.recip() })
            }
            (_, None, None) => Err(Error::Accuracy("give --alpha or --eps".into())),
        }
    }

    pub fn accuracy_f64(&self, kind: ProblemKind) -> f64 {
        if kind.takes_alpha() {
            self.alpha.or(self.eps).unwrap_or(f64::NAN)
        } else {
            self.eps.or(self.alpha).unwrap_or(f64::NAN)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Graph(GraphFile),
    Text(StringInstance),
}

impl Instance {
    pub fn parse(kind: ProblemKind, text: &str) -> Result<Instance> {
        match kind {
            ProblemKind::Df => {
                let first = parse_strings(text).into_iter().next().unwrap_or_default();
                Ok(Instance::Text(first))
            }
            _ => {
                let mut f = parse_graph(text)?;
                if kind == ProblemKind::Ola && f.cover.is_empty() {
                    f.cover = matching_cover(&f.graph);
                }
                Ok(Instance::Graph(f))
            }
        }
    }

    pub fn write(&self, k: usize) -> String {
        match self {
            Instance::Text(s) => write_strings(&[format!("k {k}")], std::slice::from_ref(s)),
            Instance::Graph(f) => {
                let mut f = f.clone();
                f.comments.retain(|c| !c.starts_with("k "));
                f.comments.push(format!("k {k}"));
                write_graph(&f)
            }
        }
    }

    /// The `k` from `--k`, else a problem default, else a `c k <k>` line.
    pub fn k(&self, kind: ProblemKind, explicit: Option<usize>) -> Result<usize> {
        if let Some(k) = explicit {
            return Ok(k);
        }
        match (kind, self) {
            (ProblemKind::Df, Instance::Text(s)) => Ok(s.alphabet().len()),
            (ProblemKind::Steiner, Instance::Graph(f)) => Ok(f.terminals.len()),
            (ProblemKind::Ola, Instance::Graph(f)) => Ok(f.cover.len()),
            (_, Instance::Graph(f)) => f
                .comments
                .iter()
                .find_map(|c| c.strip_prefix("k ").and_then(|k| k.trim().parse().ok()))
                .ok_or_else(|| Error::Malformed("no parameter: pass --k".into())),
            _ => Err(Error::Malformed("instance does not fit the problem".into())),
        }
    }

    fn graph(&self) -> Result<&GraphFile> {
        match self {
            Instance::Graph(f) => Ok(f),
            Instance::Text(_) => Err(Error::Malformed("expected a graph".into())),
        }
    }
}

fn ids_out(vs: impl IntoIterator<Item = VertexId>) -> Vec<u64> {
    vs.into_iter().map(|v| v as u64 + 1).collect()
}

fn ids_in(vs: &[u64]) -> Result<Vec<VertexId>> {
    vs.iter()
        .map(|&v| if v == 0 { Err(Error::Malformed("vertex ids start at 1".into())) } else { Ok((v - 1) as VertexId) })
        .collect()
}

fn from_json<T: serde::de::DeserializeOwned>(v: &serde_json::Value) -> Result<T> {
    Ok(serde_json::from_value(v.clone())?)
}

/// One problem's glue between files, kernels and oracles.
pub trait Pipe {
    type P: Problem;
    type K: Kernel<Self::P>;

    fn input(inst: &Instance) -> Result<<Self::P as Problem>::Instance>;
    fn output(original: &Instance, reduced: &<Self::P as Problem>::Instance) -> Instance;
    fn kernel(params: &Params) -> Result<Self::K>;
    fn sol_out(sol: &<Self::P as Problem>::Solution) -> serde_json::Value;
    fn sol_in(v: &serde_json::Value) -> Result<<Self::P as Problem>::Solution>;
    fn transcript(lifter: &<Self::K as Kernel<Self::P>>::Lifter) -> Option<MinorTranscript>;
    /// Whether the kernel's ratio guarantee applies under these settings.
    fn claims_ratio(_params: &Params) -> bool {
        true
    }
    /// Whether recorded operations rebuild the reduced instance exactly.
    fn replay_ok(
        original: &<Self::P as Problem>::Instance,
        out: &KernelOutput<Self::P, <Self::K as Kernel<Self::P>>::Lifter>,
    ) -> bool;
}

fn graph_replay(original: &MultiGraph, t: &MinorTranscript, reduced: &MultiGraph) -> bool {
    t.replay(original).is_ok_and(|g| g.canonical_bytes() == reduced.canonical_bytes())
}

pub struct CvcPipe;

impl Pipe for CvcPipe {
    type P = ConnectedVertexCover;
    type K = CvcKernel;

    fn input(inst: &Instance) -> Result<MultiGraph> {
        Ok(inst.graph()?.graph.clone())
    }
    fn output(_: &Instance, reduced: &MultiGraph) -> Instance {
        Instance::Graph(GraphFile::new(reduced.clone()))
    }
    fn kernel(params: &Params) -> Result<CvcKernel> {
        Ok(CvcKernel { alpha: params.accuracy(ProblemKind::Cvc)? })
    }
    fn sol_out(sol: &lossy_kernels::cvc::VertexSet) -> serde_json::Value {
        json!(ids_out(sol.iter().copied()))
    }
    fn sol_in(v: &serde_json::Value) -> Result<lossy_kernels::cvc::VertexSet> {
        Ok(ids_in(&from_json::<Vec<u64>>(v)?)?.into_iter().collect())
    }
    fn transcript(l: &lossy_kernels::cvc::CvcLifter) -> Option<MinorTranscript> {
        Some(l.transcript.clone())
    }
    fn replay_ok(g: &MultiGraph, out: &KernelOutput<ConnectedVertexCover, lossy_kernels::cvc::CvcLifter>) -> bool {
        graph_replay(g, &out.lifter.transcript, &out.reduced.instance)
    }
}

pub struct PvcPipe;

impl Pipe for PvcPipe {
    type P = PartialVertexCover;
    type K = PvcKernel;

    fn input(inst: &Instance) -> Result<MultiGraph> {
        Ok(inst.graph()?.graph.clone())
    }
    fn output(_: &Instance, reduced: &MultiGraph) -> Instance {
        Instance::Graph(GraphFile::new(reduced.clone()))
    }
    fn kernel(params: &Params) -> Result<PvcKernel> {
        Ok(PvcKernel { alpha: params.accuracy(ProblemKind::Pvc)? })
    }
    fn sol_out(sol: &lossy_kernels::companion::pvc::VertexSet) -> serde_json::Value {
        json!(ids_out(sol.iter().copied()))
    }
    fn sol_in(v: &serde_json::Value) -> Result<lossy_kernels::companion::pvc::VertexSet> {
        Ok(ids_in(&from_json::<Vec<u64>>(v)?)?.into_iter().collect())
    }
    fn transcript(l: &lossy_kernels::companion::pvc::PvcLifter) -> Option<MinorTranscript> {
        Some(l.transcript.clone())
    }
    fn replay_ok(
        g: &MultiGraph,
        out: &KernelOutput<PartialVertexCover, lossy_kernels::companion::pvc::PvcLifter>,
    ) -> bool {
        graph_replay(g, &out.lifter.transcript, &out.reduced.instance)
    }
}

pub struct CpPipe;

impl Pipe for CpPipe {
    type P = CyclePacking;
    type K = CpKernel;

    fn input(inst: &Instance) -> Result<MultiGraph> {
        Ok(inst.graph()?.graph.clone())
    }
    fn output(_: &Instance, reduced: &MultiGraph) -> Instance {
        Instance::Graph(GraphFile::new(reduced.clone()))
    }
    fn kernel(params: &Params) -> Result<CpKernel> {
        Ok(CpKernel { eps: params.accuracy(ProblemKind::Cp)?, config: CpConfig::default() })
    }
    fn sol_out(sol: &lossy_kernels::cp::Packing) -> serde_json::Value {
        json!(sol.iter().map(|c| ids_out(c.iter().copied())).collect::<Vec<_>>())
    }
    fn sol_in(v: &serde_json::Value) -> Result<lossy_kernels::cp::Packing> {
        from_json::<Vec<Vec<u64>>>(v)?.iter().map(|c| ids_in(c)).collect()
    }
    fn transcript(l: &lossy_kernels::cp::CpLifter) -> Option<MinorTranscript> {
        Some(l.transcript.clone())
    }
    fn replay_ok(g: &MultiGraph, out: &KernelOutput<CyclePacking, lossy_kernels::cp::CpLifter>) -> bool {
        graph_replay(g, &out.lifter.transcript, &out.reduced.instance)
    }
}

pub struct DfPipe;

impl Pipe for DfPipe {
    type P = DisjointFactors;
    type K = DfKernel;

    fn input(inst: &Instance) -> Result<StringInstance> {
        match inst {
            Instance::Text(s) => Ok(s.clone()),
            Instance::Graph(_) => Err(Error::Malformed("expected a string".into())),
        }
    }
    fn output(_: &Instance, reduced: &StringInstance) -> Instance {
        Instance::Text(reduced.clone())
    }
    fn kernel(params: &Params) -> Result<DfKernel> {
        Ok(DfKernel { eps: params.accuracy(ProblemKind::Df)? })
    }
    fn sol_out(sol: &Vec<(usize, usize)>) -> serde_json::Value {
        json!(sol)
    }
    fn sol_in(v: &serde_json::Value) -> Result<Vec<(usize, usize)>> {
        from_json(v)
    }
    fn transcript(_: &lossy_kernels::df::DfLifter) -> Option<MinorTranscript> {
        None
    }
    fn replay_ok(s: &StringInstance, out: &KernelOutput<DisjointFactors, lossy_kernels::df::DfLifter>) -> bool {
        let pos = out.lifter.map.positions();
        pos.iter().all(|&p| p >= 1 && p <= s.len())
            && pos.iter().map(|&p| s.letter(p)).collect::<Vec<_>>() == out.reduced.instance.text
    }
}

pub struct SteinerPipe;

impl Pipe for SteinerPipe {
    type P = SteinerTree;
    type K = SteinerKernel;

    fn input(inst: &Instance) -> Result<SteinerInstance> {
        let f = inst.graph()?;
        Ok(SteinerInstance { graph: f.graph.clone(), terminals: f.terminals.clone() })
    }
    fn output(_: &Instance, reduced: &SteinerInstance) -> Instance {
        Instance::Graph(GraphFile {
            graph: reduced.graph.clone(),
            terminals: reduced.terminals.clone(),
            ..Default::default()
        })
    }
    fn kernel(params: &Params) -> Result<SteinerKernel> {
        Ok(SteinerKernel {
            eps: params.accuracy(ProblemKind::Steiner)?,
            dw_cap: params.dw_cap.unwrap_or(DEFAULT_DW_CAP),
        })
    }
    fn sol_out(sol: &Vec<(VertexId, VertexId)>) -> serde_json::Value {
        json!(sol.iter().map(|&(u, v)| [u as u64 + 1, v as u64 + 1]).collect::<Vec<_>>())
    }
    fn sol_in(v: &serde_json::Value) -> Result<Vec<(VertexId, VertexId)>> {
        from_json::<Vec<[u64; 2]>>(v)?
            .iter()
            .map(|e| {
                let p = ids_in(e)?;
                Ok((p[0], p[1]))
            })
            .collect()
    }
    fn transcript(l: &lossy_kernels::companion::steiner::SteinerLifter) -> Option<MinorTranscript> {
        Some(l.transcript.clone())
    }
    fn replay_ok(
        _: &SteinerInstance,
        out: &KernelOutput<SteinerTree, lossy_kernels::companion::steiner::SteinerLifter>,
    ) -> bool {
        out.lifter.rebuild().is_ok_and(|g| g.canonical_bytes() == out.reduced.instance.graph.canonical_bytes())
    }
}

pub struct OlaPipe;

impl Pipe for OlaPipe {
    type P = LinearArrangement;
    type K = OlaKernel;

    fn input(inst: &Instance) -> Result<OlaInstance> {
        let f = inst.graph()?;
        Ok(OlaInstance { graph: f.graph.clone(), cover: f.cover.clone() })
    }
    fn output(_: &Instance, reduced: &OlaInstance) -> Instance {
        Instance::Graph(GraphFile { graph: reduced.graph.clone(), cover: reduced.cover.clone(), ..Default::default() })
    }
    fn kernel(params: &Params) -> Result<OlaKernel> {
        Ok(OlaKernel { eps: params.accuracy(ProblemKind::Ola)?, force_x: params.force_x })
    }
    fn sol_out(sol: &Vec<VertexId>) -> serde_json::Value {
        json!(ids_out(sol.iter().copied()))
    }
    fn sol_in(v: &serde_json::Value) -> Result<Vec<VertexId>> {
        ids_in(&from_json::<Vec<u64>>(v)?)
    }
    /// A forced group size can exceed what `ε` allows.
    fn claims_ratio(params: &Params) -> bool {
        params.force_x.is_none()
    }
    fn transcript(l: &lossy_kernels::companion::ola::OlaLifter) -> Option<MinorTranscript> {
        Some(l.transcript.clone())
    }
    fn replay_ok(
        inst: &OlaInstance,
        out: &KernelOutput<LinearArrangement, lossy_kernels::companion::ola::OlaLifter>,
    ) -> bool {
        graph_replay(&inst.graph, &out.lifter.transcript, &out.reduced.instance.graph)
    }
}

/// What `kernelize` reports and `lift` checks against.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Kernelized {
    pub problem: ProblemKind,
    pub params: Params,
    pub k: usize,
    pub k_reduced: usize,
    pub n: usize,
    pub n_reduced: usize,
    pub size_bound: Option<u128>,
    pub original: String,
    pub reduced: String,
    pub transcript: Option<MinorTranscript>,
}

/// One experiment row; empty cells mean the value was not computed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub instance: String,
    pub problem: String,
    pub accuracy: f64,
    pub n: usize,
    pub k: usize,
    pub n_reduced: Option<usize>,
    pub k_reduced: Option<usize>,
    pub size_bound: Option<u128>,
    pub opt: Option<Value>,
    pub opt_reduced: Option<Value>,
    pub val_kernel_sol: Option<Value>,
    pub val_lifted: Option<Value>,
    pub ratio: Option<f64>,
    pub guarantee_ok: Option<bool>,
    pub replay_ok: Option<bool>,
    pub status: String,
}

impl Row {
    pub fn violated(&self) -> bool {
        self.guarantee_ok == Some(false) || self.replay_ok == Some(false)
    }
}

fn kernelize_with<X: Pipe>(kind: ProblemKind, inst: &Instance, text: &str, params: &Params) -> Result<Kernelized> {
    let k = inst.k(kind, params.k)?;
    let input = ParameterizedInstance::new(X::input(inst)?, k);
    let out = X::kernel(params)?.run(&input)?;
    Ok(Kernelized {
        problem: kind,
        params: params.clone(),
        k,
        k_reduced: out.reduced.k,
        n: X::P::size(&input.instance),
        n_reduced: X::P::size(&out.reduced.instance),
        size_bound: out.size_bound,
        original: text.to_string(),
        reduced: X::output(inst, &out.reduced.instance).write(out.reduced.k),
        transcript: X::transcript(&out.lifter),
    })
}

fn lift_with<X: Pipe>(state: &Kernelized, solution: &serde_json::Value) -> Result<serde_json::Value> {
    let inst = Instance::parse(state.problem, &state.original)?;
    let input = ParameterizedInstance::new(X::input(&inst)?, state.k);
    let out = X::kernel(&state.params)?.run(&input)?;
    if X::output(&inst, &out.reduced.instance).write(out.reduced.k) != state.reduced {
        return Err(Error::Malformed("lift state does not match its own kernel run".into()));
    }
    let sol = X::sol_in(solution)?;
    Ok(X::sol_out(&out.lifter.lift(&sol)))
}

fn solve_with<X: Pipe>(kind: ProblemKind, inst: &Instance, k: Option<usize>) -> Result<(usize, Value, serde_json::Value)>
where
    Exact: Oracle<X::P>,
{
    let k = inst.k(kind, k)?;
    let (v, sol) = Exact.solve(&X::input(inst)?, k)?;
    Ok((k, v, X::sol_out(&sol)))
}

fn value_with<X: Pipe>(kind: ProblemKind, inst: &Instance, k: Option<usize>, sol: &serde_json::Value) -> Result<Value> {
    let k = inst.k(kind, k)?;
    Ok(X::P::value(&X::input(inst)?, k, &X::sol_in(sol)?))
}

fn verify_with<X: Pipe>(kind: ProblemKind, name: &str, inst: &Instance, params: &Params) -> Result<Row>
where
    Exact: Oracle<X::P>,
{
    let k = inst.k(kind, params.k)?;
    let input = ParameterizedInstance::new(X::input(inst)?, k);
    let accuracy = params.accuracy_f64(kind);
    let out = X::kernel(params)?.run(&input)?;
    let mut row = Row {
        instance: name.to_string(),
        problem: kind.name().to_string(),
        accuracy,
        n: X::P::size(&input.instance),
        k,
        n_reduced: Some(X::P::size(&out.reduced.instance)),
        k_reduced: Some(out.reduced.k),
        size_bound: out.size_bound,
        opt: None,
        opt_reduced: None,
        val_kernel_sol: None,
        val_lifted: None,
        ratio: None,
        guarantee_ok: None,
        replay_ok: Some(X::replay_ok(&input.instance, &out)),
        status: "verified".into(),
    };
    let solved = Exact.solve(&out.reduced.instance, out.reduced.k).and_then(|(_, sol)| {
        verify_ratio::<X::P, _, _>(name, accuracy, &input, &out, &sol, &Exact)
    });
    match solved {
        Ok(rep) => {
            row.opt = Some(rep.opt);
            row.opt_reduced = Some(rep.opt_reduced);
            row.val_kernel_sol = Some(rep.val_kernel_sol);
            row.val_lifted = Some(rep.val_lifted);
            row.ratio = Some(rep.ratio);
            if X::claims_ratio(params) {
                row.guarantee_ok = Some(rep.strict_ok);
            } else {
                row.status = "no-claim".into();
            }
        }
        Err(Error::Budget(msg)) => row.status = format!("unverified: {msg}"),
        Err(e) => return Err(e),
    }
    Ok(row)
}

fn sizes_with<X: Pipe>(kind: ProblemKind, name: &str, inst: &Instance, params: &Params) -> Result<Row> {
    let state = kernelize_with::<X>(kind, inst, "", params)?;
    Ok(Row {
        instance: name.to_string(),
        problem: kind.name().to_string(),
        accuracy: params.accuracy_f64(kind),
        n: state.n,
        k: state.k,
        n_reduced: Some(state.n_reduced),
        k_reduced: Some(state.k_reduced),
        size_bound: state.size_bound,
        opt: None,
        opt_reduced: None,
        val_kernel_sol: None,
        val_lifted: None,
        ratio: None,
        guarantee_ok: None,
        replay_ok: None,
        status: "unchecked".into(),
    })
}

macro_rules! dispatch {
    ($kind:expr, $f:ident, $($arg:expr),*) => {
        match $kind {
            ProblemKind::Cvc => $f::<CvcPipe>($($arg),*),
            ProblemKind::Pvc => $f::<PvcPipe>($($arg),*),
            ProblemKind::Cp => $f::<CpPipe>($($arg),*),
            ProblemKind::Df => $f::<DfPipe>($($arg),*),
            ProblemKind::Steiner => $f::<SteinerPipe>($($arg),*),
            ProblemKind::Ola => $f::<OlaPipe>($($arg),*),
        }
    };
}

pub fn kernelize(kind: ProblemKind, text: &str, params: &Params) -> Result<Kernelized> {
    let inst = Instance::parse(kind, text)?;
    dispatch!(kind, kernelize_with, kind, &inst, text, params)
}

pub fn lift(state: &Kernelized, solution: &serde_json::Value) -> Result<serde_json::Value> {
    dispatch!(state.problem, lift_with, state, solution)
}

/// Exact optimum: the parameter used, the value and a witness.
pub fn solve(kind: ProblemKind, inst: &Instance, k: Option<usize>) -> Result<(usize, Value, serde_json::Value)> {
    dispatch!(kind, solve_with, kind, inst, k)
}

pub fn evaluate(kind: ProblemKind, inst: &Instance, k: Option<usize>, sol: &serde_json::Value) -> Result<Value> {
    dispatch!(kind, value_with, kind, inst, k, sol)
}

pub fn verify(kind: ProblemKind, name: &str, inst: &Instance, params: &Params) -> Result<Row> {
    dispatch!(kind, verify_with, kind, name, inst, params)
}

pub fn sizes(kind: ProblemKind, name: &str, inst: &Instance, params: &Params) -> Result<Row> {
    dispatch!(kind, sizes_with, kind, name, inst, params)
}
