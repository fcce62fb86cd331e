//! Connected vertex cover: the degree rule, the false-twin rule, and a strict
//! lifting algorithm for each.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::{Goal, Kernel, KernelOutput, Lifter, ParameterizedInstance, Problem, Rational, Value};
use crate::graph::{Minor, MinorTranscript, MultiGraph, VertexId};

pub type VertexSet = BTreeSet<VertexId>;

pub struct ConnectedVertexCover;

impl Problem for ConnectedVertexCover {
    type Instance = MultiGraph;
    type Solution = VertexSet;
    const NAME: &'static str = "cvc";
    const GOAL: Goal = Goal::Minimize;

    fn value(g: &MultiGraph, k: usize, s: &VertexSet) -> Value {
        if is_cvc(g, s) {
            Value::capped(s.len(), k)
        } else {
            Value::PosInf
        }
    }

    fn size(g: &MultiGraph) -> usize {
        g.n()
    }
}

pub fn is_cvc(g: &MultiGraph, s: &VertexSet) -> bool {
    s.iter().all(|&v| g.has_vertex(v)) && g.is_vertex_cover(s) && g.induces_connected(s)
}

/// `d = ⌈α/(α−1)⌉`, exactly.
pub fn degree_threshold(alpha: Rational) -> Result<usize> {
    if alpha <= Rational::from_integer(1) {
        return Err(Error::Accuracy(format!("alpha must exceed 1, got {alpha}")));
    }
    Ok((alpha / (alpha - 1)).ceil().to_integer() as usize)
}

fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `k + C(k, d−1)(k+1) + 2k²`.
pub fn size_bound(k: usize, d: usize) -> u128 {
    let k = k as u128;
    k + binomial(k, d as u128 - 1) * (k + 1) + 2 * k * k
}

/// Same count with every neighborhood size `1..d−1` accounted for; this is
/// the bound the kernel enforces.
pub fn class_bound(k: usize, d: usize) -> u128 {
    let k = k as u128;
    let classes: u128 = (1..d as u128).map(|j| binomial(k, j)).sum();
    k + classes * (k + 1) + 2 * k * k
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CvcContext {
    pub d: usize,
    /// Vertices of degree at least `k + 1`.
    pub heavy: VertexSet,
    /// Vertices outside `heavy` whose whole neighborhood is heavy.
    pub inner: VertexSet,
}

impl CvcContext {
    pub fn new(g: &MultiGraph, k: usize, d: usize) -> Self {
        let heavy: VertexSet = g.vertices().filter(|&v| g.simple_degree(v) > k).collect();
        let inner = g
            .vertices()
            .filter(|v| !heavy.contains(v) && g.neighbors(*v).all(|(x, _)| heavy.contains(&x)))
            .collect();
        CvcContext { d, heavy, inner }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CvcStep {
    Twins {
        removed: VertexId,
    },
    Degree {
        v: VertexId,
        closed: VertexSet,
        w: VertexId,
        pendants: Vec<VertexId>,
        k_before: usize,
        k_after: usize,
    },
}

/// Rule 2: drop the lowest vertex with at least `k+1` false twins.
pub fn apply_rule_twins(m: &mut Minor, k: usize) -> Result<Option<CvcStep>> {
    let mut classes: BTreeMap<VertexSet, Vec<VertexId>> = BTreeMap::new();
    for v in m.graph.vertices() {
        let n = m.graph.neighbor_set(v);
        if !n.is_empty() {
            classes.entry(n).or_default().push(v);
        }
    }
    let target = classes.values().filter(|c| c.len() > k + 1).map(|c| c[0]).min();
    match target {
        Some(v) => {
            m.delete_vertex(v)?;
            Ok(Some(CvcStep::Twins { removed: v }))
        }
        None => Ok(None),
    }
}

/// Rule 1: collapse `N[v]` into one vertex `w` carrying `k` pendants.
pub fn apply_rule_degree(m: &mut Minor, k: usize, ctx: &CvcContext) -> Result<Option<CvcStep>> {
    let Some(v) = ctx.inner.iter().copied().find(|&v| m.graph.simple_degree(v) >= ctx.d) else {
        return Ok(None);
    };
    let open = m.graph.neighbor_set(v);
    let mut closed = open.clone();
    closed.insert(v);
    let mut w = v;
    for &h in &open {
        w = m.contract(w, h)?;
    }
    let multi: Vec<_> = m.graph.neighbors(w).filter(|&(_, c)| c > 1).collect();
    for (x, c) in multi {
        m.delete_edges(w, x, c - 1)?;
    }
    let mut pendants = Vec::with_capacity(k);
    for _ in 0..k {
        let p = m.add_vertex()?;
        m.add_edge(w, p)?;
        pendants.push(p);
    }
    let k_after = k + 1 - open.len();
    Ok(Some(CvcStep::Degree { v, closed, w, pendants, k_before: k, k_after }))
}

/// Lifting for one degree-rule application.
pub fn lift_rule_degree(before: &MultiGraph, after: &MultiGraph, step: &CvcStep, s: &VertexSet) -> VertexSet {
    let CvcStep::Degree { closed, w, pendants, k_after, .. } = step else {
        return s.clone();
    };
    if s.len() <= *k_after && is_cvc(after, s) {
        let mut out: VertexSet = s.iter().copied().filter(|x| x != w && !pendants.contains(x)).collect();
        out.extend(closed.iter().copied());
        out
    } else {
        non_isolated(before)
    }
}

fn non_isolated(g: &MultiGraph) -> VertexSet {
    g.vertices().filter(|&v| g.simple_degree(v) > 0).collect()
}

/// Internal vertices of a DFS tree of the component holding the lowest
/// edge: a connected vertex cover of at most twice the optimum.
pub fn dfs_tree_cover(g: &MultiGraph) -> VertexSet {
    let Some((root, _, _)) = g.edges().next() else { return VertexSet::new() };
    let mut internal = VertexSet::new();
    let mut seen = VertexSet::from([root]);
    let mut stack: Vec<(VertexId, Vec<VertexId>)> = vec![(root, g.neighbor_set(root).into_iter().rev().collect())];
    while let Some((u, pending)) = stack.last_mut() {
        let u = *u;
        match pending.pop() {
            Some(x) if seen.insert(x) => {
                internal.insert(u);
                let next = g.neighbor_set(x).into_iter().rev().collect();
                stack.push((x, next));
            }
            Some(_) => {}
            None => {
                stack.pop();
            }
        }
    }
    internal
}

/// Exhaustive application of both rules, twins first.
#[derive(Clone, Debug)]
pub struct RuleRun {
    pub minor: Minor,
    pub k: usize,
    pub steps: Vec<(usize, CvcStep)>,
}

pub fn reduce_exhaustively(g: &MultiGraph, k: usize, d: usize) -> Result<RuleRun> {
    let mut minor = Minor::new(g.clone());
    let mut k = k;
    let mut steps = Vec::new();
    loop {
        let at = minor.transcript.ops.len();
        if let Some(step) = apply_rule_twins(&mut minor, k)? {
            steps.push((at, step));
            continue;
        }
        let ctx = CvcContext::new(&minor.graph, k, d);
        if let Some(step) = apply_rule_degree(&mut minor, k, &ctx)? {
            if let CvcStep::Degree { k_after, .. } = step {
                k = k_after;
            }
            steps.push((at, step));
            continue;
        }
        return Ok(RuleRun { minor, k, steps });
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum CvcPlan {
    /// Undo the recorded rule applications.
    Rules { steps: Vec<(usize, CvcStep)>, rule_ops: usize },
    /// Ignore the reduced solution.
    Constant(VertexSet),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CvcLifter {
    pub original: MultiGraph,
    pub transcript: MinorTranscript,
    pub plan: CvcPlan,
    #[serde(skip)]
    stages: OnceLock<Vec<MultiGraph>>,
}

impl CvcLifter {
    fn new(original: MultiGraph, transcript: MinorTranscript, plan: CvcPlan) -> Self {
        CvcLifter { original, transcript, plan, stages: OnceLock::new() }
    }

    fn stages(&self) -> &[MultiGraph] {
        self.stages.get_or_init(|| {
            let CvcPlan::Rules { steps, rule_ops } = &self.plan else { return Vec::new() };
            let mut out = Vec::with_capacity(steps.len() + 1);
            let mut g = self.original.clone();
            let mut done = 0;
            for &(at, _) in steps.iter().chain(std::iter::once(&(*rule_ops, CvcStep::Twins { removed: 0 }))) {
                for op in &self.transcript.ops[done..at] {
                    g.apply(op).expect("transcript replays on its own original");
                }
                done = at;
                out.push(g.clone());
            }
            out
        })
    }
}

impl Lifter<ConnectedVertexCover> for CvcLifter {
    fn lift(&self, reduced: &VertexSet) -> VertexSet {
        let mut s = match &self.plan {
            CvcPlan::Constant(c) => return c.clone(),
            CvcPlan::Rules { steps, .. } => {
                let stages = self.stages();
                let mut s = reduced.clone();
                for (i, (_, step)) in steps.iter().enumerate().rev() {
                    s = lift_rule_degree(&stages[i], &stages[i + 1], step, &s);
                }
                s
            }
        };
        if !is_cvc(&self.original, &s) {
            s = non_isolated(&self.original);
        }
        s
    }
}

pub type CvcOutput = KernelOutput<ConnectedVertexCover, CvcLifter>;

fn keep_only(m: &mut Minor, keep: &VertexSet) -> Result<()> {
    let drop: Vec<_> = m.graph.vertices().filter(|v| !keep.contains(v)).collect();
    for v in drop {
        m.delete_vertex(v)?;
    }
    Ok(())
}

pub fn cvc_kernelize(g: &MultiGraph, k: usize, alpha: Rational) -> Result<CvcOutput> {
    let d = degree_threshold(alpha)?;
    let constant = |m: Minor, k_red: usize, sol: VertexSet| -> CvcOutput {
        KernelOutput {
            reduced: ParameterizedInstance::new(m.graph, k_red),
            lifter: CvcLifter::new(g.clone(), m.transcript, CvcPlan::Constant(sol)),
            alpha,
            strict: true,
            size_bound: Some(4),
        }
    };
    let edged: Vec<Vec<VertexId>> = g.components().into_iter().filter(|c| c.len() > 1).collect();
    let mut minor = Minor::new(g.clone());
    if edged.is_empty() {
        keep_only(&mut minor, &VertexSet::new())?;
        return Ok(constant(minor, 0, VertexSet::new()));
    }
    if edged.len() > 1 {
        let mut keep = VertexSet::new();
        for comp in &edged[..2] {
            let u = comp[0];
            let (v, _) = g.neighbors(u).next().unwrap();
            keep.extend([u, v]);
        }
        keep_only(&mut minor, &keep)?;
        return Ok(constant(minor, 0, non_isolated(g)));
    }
    if k == 0 {
        let (u, v, _) = g.edges().next().unwrap();
        keep_only(&mut minor, &VertexSet::from([u, v]))?;
        let c = minor.graph.multiplicity(u, v);
        if c > 1 {
            minor.delete_edges(u, v, c - 1)?;
        }
        return Ok(constant(minor, 0, dfs_tree_cover(g)));
    }
    let run = reduce_exhaustively(g, k, d)?;
    let live = non_isolated(&run.minor.graph).len();
    if live as u128 > class_bound(run.k, d) {
        let mut minor = run.minor;
        let (u, v, _) = minor.graph.edges().next().unwrap();
        keep_only(&mut minor, &VertexSet::from([u, v]))?;
        return Ok(constant(minor, 0, dfs_tree_cover(g)));
    }
    let rule_ops = run.minor.transcript.ops.len();
    Ok(KernelOutput {
        reduced: ParameterizedInstance::new(run.minor.graph, run.k),
        lifter: CvcLifter::new(g.clone(), run.minor.transcript, CvcPlan::Rules { steps: run.steps, rule_ops }),
        alpha,
        strict: true,
        size_bound: Some(class_bound(run.k, d)),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct CvcKernel {
    pub alpha: Rational,
}

impl Kernel<ConnectedVertexCover> for CvcKernel {
    type Lifter = CvcLifter;

    fn run(&self, input: &ParameterizedInstance<MultiGraph>) -> Result<CvcOutput> {
        cvc_kernelize(&input.instance, input.k, self.alpha)
    }
}
