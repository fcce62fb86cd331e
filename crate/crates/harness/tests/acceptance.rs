//! Acceptance suite: one PASS/FAIL line per criterion. Every check is an
//! exact inequality against an exhaustive oracle; runtimes are budgets.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use lossy_harness::exact::{all_subsets, Exact, Indexed};
use lossy_harness::gen::{generate, gnp, planted_cvc, Family, Generated, GeneratorSpec};
use lossy_kernels::companion::ola::{
    group_size, ola_kernelize, ola_val, opt_lower_bound, reverse_slack, trimmed_graph, OlaInstance,
};
use lossy_kernels::companion::pvc::{prefix_len, pvc_kernelize, PartialVertexCover, PvcCase};
use lossy_kernels::companion::steiner::{
    is_steiner_tree, steiner_kernelize, tree_cost, MetricClosure, SteinerInstance, SteinerTree, DEFAULT_DW_CAP,
};
use lossy_kernels::cp::paths::same_label_density;
use lossy_kernels::cp::{cp_kernelize_with, is_packing, CpConfig, Decomposition};
use lossy_kernels::cvc::{cvc_kernelize, degree_threshold, is_cvc, reduce_exhaustively, size_bound};
use lossy_kernels::df::{df_kernelize, StringInstance};
use lossy_kernels::framework::{check_strictness, Lifter, Oracle, ParameterizedInstance, Problem, Rational, Value};
use lossy_kernels::ulic::{build_ulic, Interval, LabelledIntervalInstance};
use lossy_kernels::{MinorTranscript, MultiGraph, VertexId};
use lossy_oracles::ulic::realizable_label_sets;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

static REPLAYS: AtomicUsize = AtomicUsize::new(0);
static REPLAY_FAILURES: AtomicUsize = AtomicUsize::new(0);
static LIFTS: AtomicUsize = AtomicUsize::new(0);
static INFEASIBLE: AtomicUsize = AtomicUsize::new(0);

fn rng(criterion: u64, i: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(criterion << 32 | i)
}

fn record_replay(ok: bool) {
    REPLAYS.fetch_add(1, Ordering::Relaxed);
    if !ok {
        REPLAY_FAILURES.fetch_add(1, Ordering::Relaxed);
    }
}

fn record_lift(ok: bool) {
    LIFTS.fetch_add(1, Ordering::Relaxed);
    if !ok {
        INFEASIBLE.fetch_add(1, Ordering::Relaxed);
    }
}

fn replays(original: &MultiGraph, t: &MinorTranscript, reduced: &MultiGraph) -> bool {
    t.replay(original).is_ok_and(|g| g.canonical_bytes() == reduced.canonical_bytes())
}

fn ceil_frac(x: i64, frac: Rational) -> i64 {
    (frac * Rational::from_integer(x)).ceil().to_integer()
}

/// Collects failures from a parallel sweep; keeps the first few messages.
fn sweep<T: Send>(items: Vec<T>, check: impl Fn(T) -> Result<(), String> + Sync) -> Result<usize, String> {
    let total = items.len();
    let failures: Vec<String> = items.into_par_iter().filter_map(|t| check(t).err()).collect();
    if failures.is_empty() {
        Ok(total)
    } else {
        let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
        Err(format!("{} of {total} failed: {}", failures.len(), shown.join("; ")))
    }
}

fn random_connected(r: &mut ChaCha8Rng, n: usize, p: f64) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(n);
    for v in 1..n as VertexId {
        let u = r.gen_range(0..v);
        g.add_edge(u, v).unwrap();
    }
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if g.multiplicity(u, v) == 0 && r.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn criterion_1() -> Outcome {
    let alphas = [Rational::new(3, 2), Rational::from_integer(2), Rational::from_integer(3)];
    let mut worst = 0f64;
    let items: Vec<u64> = (0..200).collect();
    let ratios: Vec<Result<f64, String>> = items
        .into_par_iter()
        .map(|i| {
            let mut r = rng(1, i);
            let k = r.gen_range(1..=6);
            let planted = r.gen_range(1..=k);
            let n = r.gen_range(planted + 1..=60);
            let p = r.gen_range(0.05..0.4);
            let g = planted_cvc(&mut r, n, planted, p);
            let mut worst = 0f64;
            for &alpha in &alphas {
                let d = degree_threshold(alpha).unwrap();
                let run = reduce_exhaustively(&g, k, d).map_err(|e| e.to_string())?;
                let bound = size_bound(k, d);
                let size = run.minor.graph.n() as u128;
                if size > bound {
                    return Err(format!("instance {i} alpha {alpha}: |V| = {size} > {bound}"));
                }
                worst = worst.max(size as f64 / bound as f64);
                let out = cvc_kernelize(&g, k, alpha).map_err(|e| e.to_string())?;
                record_replay(replays(&g, &out.lifter.transcript, &out.reduced.instance));
                let reduced = &out.reduced.instance;
                let cover = lossy_kernels::cvc::dfs_tree_cover(reduced);
                record_lift(is_cvc(&g, &out.lifter.lift(&cover)));
                if out.size_bound.is_some_and(|b| reduced.n() as u128 > b) {
                    return Err(format!("instance {i}: kernel exceeds its own bound"));
                }
            }
            Ok(worst)
        })
        .collect();
    for x in ratios {
        worst = worst.max(x?);
    }
    Ok(format!("200 graphs x 3 alphas, largest |V|/bound = {worst:.3}"))
}

fn criterion_2() -> Outcome {
    let alphas = [Rational::new(3, 2), Rational::from_integer(2), Rational::from_integer(3)];
    let items: Vec<(usize, u64)> = (1..=9).flat_map(|n| (0..500).map(move |i| (n, i))).collect();
    let enumerated = AtomicUsize::new(0);
    let count = sweep(items, |(n, i)| {
        let mut r = rng(2, (n as u64) << 16 | i);
        let p = r.gen_range(0.0..0.6);
        let g = random_connected(&mut r, n, p);
        let input = |k| ParameterizedInstance::new(g.clone(), k);
        for k in 0..=4 {
            for &alpha in &alphas {
                let out = cvc_kernelize(&g, k, alpha).map_err(|e| e.to_string())?;
                record_replay(replays(&g, &out.lifter.transcript, &out.reduced.instance));
                let h = &out.reduced.instance;
                let covers: Vec<_> = all_subsets(h).filter(|s| is_cvc(h, s)).collect();
                enumerated.fetch_add(covers.len(), Ordering::Relaxed);
                for s in &covers {
                    record_lift(is_cvc(&g, &out.lifter.lift(s)));
                }
                let ok = check_strictness(&input(k), &out, covers, &Exact).map_err(|e| e.to_string())?;
                if !ok {
                    return Err(format!("n {n} sample {i} k {k} alpha {alpha}"));
                }
            }
        }
        Ok(())
    })?;
    Ok(format!(
        "{count} connected graphs x k 0..=4 x 3 alphas, {} kernel covers lifted",
        enumerated.load(Ordering::Relaxed)
    ))
}

fn criterion_3() -> Outcome {
    let epsilons = [Rational::new(34, 100), Rational::new(1, 2)];
    let checked = AtomicUsize::new(0);
    let count = sweep((0..2000).collect(), |i: u64| {
        let mut r = rng(3, i);
        let q = r.gen_range(1..=4u32);
        let len = r.gen_range(0..=14);
        let intervals: Vec<Interval> = (0..len)
            .map(|_| {
                let l = r.gen_range(1..=24);
                Interval::new(l, l + r.gen_range(0..=6), r.gen_range(0..q))
            })
            .collect();
        let inst = LabelledIntervalInstance::new(intervals, q).map_err(|e| e.to_string())?;
        let tuples = |keep: &mut dyn Iterator<Item = usize>| -> Vec<(i64, i64, u32)> {
            keep.map(|i| inst.intervals[i]).map(|iv| (iv.left, iv.right, iv.label)).collect()
        };
        let full = realizable_label_sets(&tuples(&mut (0..inst.len())), q as usize);
        for &eps in &epsilons {
            let x = build_ulic(&inst, eps).map_err(|e| e.to_string())?;
            let part = realizable_label_sets(&tuples(&mut x.marked.iter().copied()), q as usize);
            for set in (0..full.len()).filter(|&m| full[m]) {
                let need = ceil_frac(set.count_ones() as i64, Rational::from_integer(1) - eps);
                let best = (0..part.len()).filter(|&m| part[m] && m & !set == 0).map(|m| m.count_ones()).max();
                checked.fetch_add(1, Ordering::Relaxed);
                if (best.unwrap_or(0) as i64) < need {
                    return Err(format!("sample {i} eps {eps}: label set {set:b} keeps {best:?} < {need}"));
                }
            }
        }
        Ok(())
    })?;
    Ok(format!("{count} instances x 2 epsilons, {} label sets checked", checked.load(Ordering::Relaxed)))
}

fn criterion_4() -> Outcome {
    let epsilons = [Rational::new(1, 4), Rational::new(1, 2)];
    let count = sweep((0..1000).collect(), |i: u64| {
        let mut r = rng(4, i);
        let sigma = r.gen_range(1..=6u8);
        let len = r.gen_range(0..=40);
        let text: String = (0..len).map(|_| (b'a' + r.gen_range(0..sigma)) as char).collect();
        let s = StringInstance::new(&text);
        let opt = lossy_oracles::df::exact_df(&s.text).map_err(|e| e.to_string())?.value as i64;
        for &eps in &epsilons {
            let out = df_kernelize(&s, eps).map_err(|e| e.to_string())?;
            let reduced = &out.reduced.instance;
            let pos = out.lifter.map.positions();
            record_replay(pos.iter().map(|&p| s.letter(p)).collect::<Vec<_>>() == reduced.text);
            let sol = lossy_oracles::df::exact_df(&reduced.text).map_err(|e| e.to_string())?;
            let need = ceil_frac(opt, Rational::from_integer(1) - eps);
            if (sol.value as i64) < need {
                return Err(format!("{text:?} eps {eps}: OPT' = {} < {need}", sol.value));
            }
            let lifted = out.lifter.lift(&sol.witness);
            let ok = s.is_solution(&lifted) && lifted.len() == sol.witness.len();
            record_lift(ok);
            if !ok {
                return Err(format!("{text:?}: lifted factors {lifted:?} invalid"));
            }
        }
        Ok(())
    })?;
    Ok(format!("{count} strings x 2 epsilons"))
}

struct CpCase {
    g: MultiGraph,
    k: usize,
}

fn cp_corpus() -> Vec<CpCase> {
    (0..500)
        .map(|i| {
            let mut r = rng(5, i);
            let n = r.gen_range(6..=18);
            let p = r.gen_range(0.05..0.3);
            let g = gnp(&mut r, n, p, 0.1);
            CpCase { g, k: r.gen_range(1..=4) }
        })
        .collect()
}

fn cp_opt(g: &MultiGraph, k: usize) -> Result<(Value, Vec<Vec<VertexId>>), String> {
    Oracle::<lossy_kernels::cp::CyclePacking>::solve(&Exact, g, k).map_err(|e| e.to_string())
}

fn criterion_5() -> Outcome {
    let half = Rational::new(1, 2);
    let early = AtomicUsize::new(0);
    let count = sweep(cp_corpus(), |c| {
        let (out, trace) = cp_kernelize_with(&c.g, c.k, half, &CpConfig::default()).map_err(|e| e.to_string())?;
        if trace.early_exit.is_some() {
            early.fetch_add(1, Ordering::Relaxed);
        }
        record_replay(replays(&c.g, &out.lifter.transcript, &out.reduced.instance));
        let (opt, _) = cp_opt(&c.g, c.k)?;
        let (opt_r, sol) = cp_opt(&out.reduced.instance, c.k)?;
        let need = ceil_frac(opt.finite().unwrap(), half);
        if opt_r.finite().unwrap() < need {
            return Err(format!("OPT'' = {opt_r} < {need}"));
        }
        let lifted = out.lifter.lift(&sol);
        let ok = lifted.len() == sol.len() && is_packing(&c.g, &lifted);
        record_lift(ok);
        if !ok {
            return Err(format!("lifted packing {lifted:?} invalid"));
        }
        Ok(())
    })?;
    Ok(format!("{count} multigraphs, {} early exits", early.load(Ordering::Relaxed)))
}

fn check_decomposition(h: &MultiGraph, dec: &Decomposition) -> Result<(), String> {
    let zr: BTreeSet<VertexId> = dec.z.union(&dec.r).copied().collect();
    let rest = h.without(&zr);
    let comps: BTreeSet<BTreeSet<VertexId>> =
        rest.components().into_iter().map(|c| c.into_iter().collect()).collect();
    let paths: BTreeSet<BTreeSet<VertexId>> = dec.paths.iter().map(|p| p.iter().copied().collect()).collect();
    if comps != paths || paths.len() != dec.paths.len() {
        return Err("paths are not the components of G' - (Z u R)".into());
    }
    for p in &dec.paths {
        if p.is_empty() {
            return Err("empty path".into());
        }
        for (a, &u) in p.iter().enumerate() {
            for (b, &v) in p.iter().enumerate().skip(a + 1) {
                let want = if b == a + 1 { 1 } else { 0 };
                if h.multiplicity(u, v) != want {
                    return Err(format!("path {p:?} is not an induced simple path"));
                }
            }
            let into_r: u32 = h.neighbors(u).filter(|(x, _)| dec.r.contains(x)).map(|(_, c)| c).sum();
            let end = a == 0 || a + 1 == p.len();
            if !end && into_r > 0 {
                return Err(format!("internal vertex {u} of {p:?} touches R"));
            }
            if end && into_r > 1 {
                return Err(format!("endpoint {u} of {p:?} has {into_r} edges into R"));
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let half = Rational::new(1, 2);
    let graphs = AtomicUsize::new(0);
    let count = sweep(cp_corpus(), |c| {
        let (_, trace) = cp_kernelize_with(&c.g, c.k, half, &CpConfig::default()).map_err(|e| e.to_string())?;
        let (Some(h), Some(dec)) = (&trace.decomposed, &trace.decomposition) else {
            return Ok(());
        };
        check_decomposition(h, dec)?;
        let (opt, _) = cp_opt(&c.g, c.k)?;
        if dec.z.len() as i64 > opt.finite().unwrap() {
            return Err(format!("|Z| = {} > OPT = {opt}", dec.z.len()));
        }
        for pg in trace.path_graphs.iter().flatten() {
            graphs.fetch_add(1, Ordering::Relaxed);
            let d = same_label_density(&pg.instance);
            if d > 2 {
                return Err(format!("same-label density {d} in window {:?}", pg.window));
            }
        }
        Ok(())
    })?;
    Ok(format!("{count} multigraphs, {} path interval graphs", graphs.load(Ordering::Relaxed)))
}

fn criterion_7() -> Outcome {
    let alphas = [Rational::new(3, 2), Rational::from_integer(2)];
    let cases = [AtomicUsize::new(0), AtomicUsize::new(0)];
    let count = sweep((0..500).collect(), |i: u64| {
        let mut r = rng(7, i);
        let n = r.gen_range(1..=20);
        let p = r.gen_range(0.02..0.5);
        let g = gnp(&mut r, n, p, 0.0);
        let k = r.gen_range(1..=3);
        let (opt, _) = Oracle::<PartialVertexCover>::solve(&Exact, &g, k).map_err(|e| e.to_string())?;
        let opt = opt.finite().unwrap();
        for &alpha in &alphas {
            let out = pvc_kernelize(&g, k, alpha).map_err(|e| e.to_string())?;
            let h = &out.reduced.instance;
            record_replay(replays(&g, &out.lifter.transcript, h));
            match &out.lifter.case {
                PvcCase::TopDegree(_) => {
                    cases[0].fetch_add(1, Ordering::Relaxed);
                    let lifted = out.lifter.lift(&BTreeSet::new());
                    let v = PartialVertexCover::value(&g, k, &lifted).finite().unwrap_or(-1);
                    record_lift(v >= 0);
                    if Rational::from_integer(v) * alpha < Rational::from_integer(opt) {
                        return Err(format!("sample {i} alpha {alpha}: case 1 lifted {v} < {opt}/alpha"));
                    }
                }
                PvcCase::Neighbourhood { prefix } => {
                    cases[1].fetch_add(1, Ordering::Relaxed);
                    let (opt_r, sol) = Oracle::<PartialVertexCover>::solve(&Exact, h, k).map_err(|e| e.to_string())?;
                    if opt_r.finite() != Some(opt) {
                        return Err(format!("sample {i} alpha {alpha}: OPT' = {opt_r} != {opt}"));
                    }
                    let lifted = out.lifter.lift(&sol);
                    let v = PartialVertexCover::value(&g, k, &lifted);
                    record_lift(v == Value::Finite(opt));
                    let max_deg = g.vertices().map(|v| g.degree(v)).max().unwrap_or(0);
                    let bound = prefix_len(k, alpha).unwrap() * (1 + max_deg);
                    if prefix.len() > prefix_len(k, alpha).unwrap() || h.n() > bound {
                        return Err(format!("sample {i} alpha {alpha}: |V(G')| = {} > {bound}", h.n()));
                    }
                }
            }
        }
        Ok(())
    })?;
    Ok(format!(
        "{count} graphs x 2 alphas, {} case-1 and {} case-2 runs",
        cases[0].load(Ordering::Relaxed),
        cases[1].load(Ordering::Relaxed)
    ))
}

fn criterion_8() -> Outcome {
    let epsilons = [Rational::new(1, 2), Rational::from_integer(1)];
    let max_bits = AtomicUsize::new(0);
    let count = sweep((0..200).collect(), |i: u64| {
        let mut r = rng(8, i);
        let n = r.gen_range(2..=16);
        let p = r.gen_range(0.0..0.35);
        let skeleton = random_connected(&mut r, n, p);
        let mut g = MultiGraph::with_vertices(n);
        for (u, v, _) in skeleton.edges() {
            g.add_weighted_edge(u, v, r.gen_range(1..=20)).unwrap();
        }
        let mut ids: Vec<VertexId> = (0..n as VertexId).collect();
        ids.shuffle(&mut r);
        let terminals: BTreeSet<VertexId> = ids[..r.gen_range(1..=n.min(6))].iter().copied().collect();
        let inst = SteinerInstance { graph: g.clone(), terminals: terminals.clone() };
        let k = terminals.len();
        let (opt, _) = Oracle::<SteinerTree>::solve(&Exact, &inst, k).map_err(|e| e.to_string())?;
        let opt = opt.finite().unwrap();
        for &eps in &epsilons {
            let out = steiner_kernelize(&inst, k, eps, DEFAULT_DW_CAP).map_err(|e| e.to_string())?;
            let reduced = &out.reduced.instance.graph;
            let l = &out.lifter;
            let fresh = l.transcript.replay(&MetricClosure::new(&g).graph()).map(|mut c| {
                let edges: Vec<_> = c.edges().collect();
                for (u, v, _) in edges {
                    let w = l.rounding.round(c.weight(u, v).unwrap_or(1));
                    c.set_weight(u, v, w).unwrap();
                }
                c
            });
            record_replay(fresh.is_ok_and(|c| c.canonical_bytes() == reduced.canonical_bytes()));
            let (_, sol) = Oracle::<SteinerTree>::solve(&Exact, &out.reduced.instance, k).map_err(|e| e.to_string())?;
            let lifted = l.lift(&sol);
            let feasible = is_steiner_tree(&g, &terminals, &lifted);
            record_lift(feasible);
            let cost = tree_cost(&g, &lifted) as i64;
            if !feasible || Rational::from_integer(cost) > (Rational::from_integer(1) + eps) * opt {
                return Err(format!("sample {i} eps {eps}: lifted cost {cost} vs OPT {opt} (feasible {feasible})"));
            }
            let top = reduced.edges().filter_map(|(u, v, _)| reduced.weight(u, v)).max().unwrap_or(0);
            if eps * Rational::from_integer(top as i64) > Rational::from_integer(48 * k as i64) {
                return Err(format!("sample {i} eps {eps}: rounded weight {top} exceeds 48|R|/eps"));
            }
            max_bits.fetch_max((u64::BITS - top.leading_zeros()) as usize, Ordering::Relaxed);
        }
        Ok(())
    })?;
    Ok(format!(
        "{count} weighted graphs x 2 epsilons, widest rounded weight {} bits",
        max_bits.load(Ordering::Relaxed)
    ))
}

fn vc_graph(r: &mut ChaCha8Rng, seed: u64) -> OlaInstance {
    let mut spec = GeneratorSpec::new(Family::VcBounded, seed);
    spec.k = r.gen_range(1..=3);
    spec.n = r.gen_range(spec.k + 1..=14);
    spec.p = r.gen_range(0.1..0.6);
    match generate(&spec).unwrap() {
        Generated::Graph(f) => OlaInstance { graph: f.graph, cover: f.cover },
        Generated::Text(_) => unreachable!(),
    }
}

fn exact_order(g: &MultiGraph) -> Result<(u64, Vec<VertexId>), String> {
    let ix = Indexed::new(g);
    let s = lossy_oracles::ola::exact_ola_cuts(ix.ids.len(), &ix.edges).map_err(|e| e.to_string())?;
    Ok((s.value, ix.back(&s.witness)))
}

fn criterion_9a() -> Result<String, String> {
    let grouped = AtomicUsize::new(0);
    let count = sweep((0..100).collect(), |i: u64| {
        let mut r = rng(9, i);
        let inst = vc_graph(&mut r, i);
        let k = inst.cover.len();
        let x = r.gen_range(2..=4);
        let out = ola_kernelize(&inst, k, Rational::new(1, 2), Some(x)).map_err(|e| e.to_string())?;
        record_replay(replays(&inst.graph, &out.lifter.transcript, &out.reduced.instance.graph));
        let g1 = trimmed_graph(&inst.graph, &out.lifter);
        let g2 = &out.reduced.instance.graph;
        if !out.lifter.groups.values().all(|grp| grp.len() == x) {
            return Err("group of the wrong size".into());
        }
        if g2.n() < g1.n() {
            grouped.fetch_add(1, Ordering::Relaxed);
        }
        let mut orders = vec![exact_order(g2)?.1];
        for _ in 0..20 {
            let mut s: Vec<VertexId> = g2.vertices().collect();
            s.shuffle(&mut r);
            orders.push(s);
        }
        let xx = x as i64;
        let slack = reverse_slack(k, inst.graph.m(), inst.graph.n(), x);
        for sigma2 in orders {
            let sigma1 = out.lifter.expand(&sigma2);
            let v1 = ola_val(&g1, &sigma1).map_err(|e| e.to_string())? as i64;
            let v2 = ola_val(g2, &sigma2).map_err(|e| e.to_string())? as i64;
            if v1 > xx * xx * v2 {
                return Err(format!("sample {i}: val1 {v1} > x^2 val2 = {}", xx * xx * v2));
            }
            if Rational::from_integer(v2) > Rational::new(v1, xx * xx) + slack {
                return Err(format!("sample {i}: val2 {v2} exceeds val1/x^2 + slack"));
            }
            let lifted = out.lifter.lift(&sigma2);
            record_lift(ola_val(&inst.graph, &lifted).is_ok());
        }
        Ok(())
    })?;
    Ok(format!("(a) {count} forced-x instances, {} with merged groups", grouped.load(Ordering::Relaxed)))
}

fn pair(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    b * (b - 1) / 2 + a
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    out.push(p.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            p.swap(if i % 2 == 0 { 0 } else { c[i] }, i);
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn edge_list(n: usize, mask: u64) -> Vec<(usize, usize)> {
    (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).filter(|&(i, j)| mask >> pair(i, j) & 1 == 1).collect()
}

fn canonical(n: usize, mask: u64, perms: &[Vec<usize>]) -> u64 {
    let edges = edge_list(n, mask);
    perms.iter().map(|p| edges.iter().fold(0u64, |m, &(i, j)| m | 1 << pair(p[i], p[j]))).min().unwrap()
}

/// One graph per isomorphism class on `n ≤ 7` vertices, as edge masks.
fn classes(n: usize) -> Vec<u64> {
    let mut level = vec![0u64];
    for size in 2..=n {
        let perms = permutations(size);
        let grown: BTreeSet<u64> = level
            .par_iter()
            .flat_map_iter(|&h| {
                let perms = &perms;
                (0..1u64 << (size - 1)).map(move |nb| {
                    let extra = (0..size - 1).filter(|&i| nb >> i & 1 == 1).fold(0, |m, i| m | 1 << pair(i, size - 1));
                    canonical(size, h | extra, perms)
                })
            })
            .collect();
        level = grown.into_iter().collect();
    }
    level
}

fn criterion_9b() -> Result<String, String> {
    let mut per_n = BTreeMap::new();
    let mut tables: Vec<Vec<u64>> = vec![vec![0]];
    for n in 2..=7 {
        tables.push(classes(n));
    }
    let known = [1, 2, 4, 11, 34, 156, 1044];
    for (n, t) in tables.iter().enumerate() {
        if t.len() != known[n] {
            return Err(format!("{} classes on {} vertices, expected {}", t.len(), n + 1, known[n]));
        }
    }
    let mut work: Vec<(usize, u64)> = Vec::new();
    for (n, t) in tables.iter().enumerate() {
        work.extend(t.iter().map(|&m| (n + 1, m)));
    }
    for &h in &tables[6] {
        for nb in 0..1u64 << 7 {
            let extra = (0..7).filter(|&i| nb >> i & 1 == 1).fold(0, |m, i| m | 1 << pair(i, 7));
            work.push((8, h | extra));
        }
    }
    for &(n, _) in &work {
        *per_n.entry(n).or_insert(0usize) += 1;
    }
    sweep(work, |(n, mask)| {
        let edges = edge_list(n, mask);
        let m = edges.len();
        if m == 0 {
            return Ok(());
        }
        let k = lossy_oracles::vc::min_vertex_cover(n, &edges).map_err(|e| e.to_string())?.len();
        let opt = lossy_oracles::ola::exact_ola_cuts(n, &edges).map_err(|e| e.to_string())?.value;
        if Rational::from_integer(opt as i64) < opt_lower_bound(m, k) {
            return Err(format!("graph {mask:b} on {n}: OPT {opt} < {m}^2/4*{k}^2"));
        }
        Ok(())
    })?;
    Ok(format!("(b) graphs checked per n {per_n:?}"))
}

fn criterion_9c() -> Result<String, String> {
    let count = sweep((0..100).collect(), |i: u64| {
        let mut r = rng(9, 1000 + i);
        let inst = vc_graph(&mut r, 1000 + i);
        let k = inst.cover.len();
        let eps = Rational::new(1, 2);
        if group_size(inst.graph.n(), k, eps) != 1 {
            return Err(format!("sample {i}: expected x = 1"));
        }
        let out = ola_kernelize(&inst, k, eps, None).map_err(|e| e.to_string())?;
        record_replay(replays(&inst.graph, &out.lifter.transcript, &out.reduced.instance.graph));
        let (opt, _) = exact_order(&inst.graph)?;
        let (_, sol) = exact_order(&out.reduced.instance.graph)?;
        let lifted = out.lifter.lift(&sol);
        let v = ola_val(&inst.graph, &lifted).map_err(|e| e.to_string())?;
        record_lift(true);
        if out.lifter.x != 1 || v != opt {
            return Err(format!("sample {i}: x = {}, lifted {v} vs OPT {opt}", out.lifter.x));
        }
        Ok(())
    })?;
    Ok(format!("(c) {count} instances with x = 1 lift to ratio exactly 1"))
}

fn criterion_9() -> Outcome {
    let a = criterion_9a()?;
    let b = criterion_9b()?;
    let c = criterion_9c()?;
    Ok(format!("{a}; {b}; {c}"))
}

fn criterion_10() -> Outcome {
    let replays = REPLAYS.load(Ordering::Relaxed);
    let bad = REPLAY_FAILURES.load(Ordering::Relaxed);
    let lifts = LIFTS.load(Ordering::Relaxed);
    let infeasible = INFEASIBLE.load(Ordering::Relaxed);
    let detail = format!("{replays} replays ({bad} diverged), {lifts} lifted witnesses ({infeasible} infeasible)");
    if bad == 0 && infeasible == 0 && replays > 0 && lifts > 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 10] = [
        (1, "CVC size bound", 30, criterion_1),
        (2, "CVC strictness", 120, criterion_2),
        (3, "ULIC covering", 120, criterion_3),
        (4, "Disjoint Factors", 60, criterion_4),
        (5, "Cycle Packing end-to-end", 300, criterion_5),
        (6, "Cycle Packing structure", 300, criterion_6),
        (7, "Partial Vertex Cover", 60, criterion_7),
        (8, "Steiner Tree", 120, criterion_8),
        (9, "Optimal Linear Arrangement", 180, criterion_9),
        (10, "Transcript soundness", 60, criterion_10),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let over = took > Duration::from_secs(budget);
        let (verdict, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {id:>2} {name:<28} {verdict} [{:.1} s / {budget} s] {detail}", took.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
