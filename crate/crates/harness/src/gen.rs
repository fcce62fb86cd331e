//! Seeded instance generators. Every generator draws from ChaCha8 seeded
//! with `seed`, so a spec and a seed pin the instance on every platform.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use lossy_kernels::df::StringInstance;
use lossy_kernels::io::GraphFile;
use lossy_kernels::{MultiGraph, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const RNG_ID: &str = "chacha8";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Gnp,
    PlantedCvc,
    PlantedCycles,
    RandomString,
    SteinerGrid,
    VcBounded,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Gnp,
        Family::PlantedCvc,
        Family::PlantedCycles,
        Family::RandomString,
        Family::SteinerGrid,
        Family::VcBounded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gnp => "gnp",
            Family::PlantedCvc => "planted-cvc",
            Family::PlantedCycles => "planted-cycles",
            Family::RandomString => "random-string",
            Family::SteinerGrid => "steiner-grid",
            Family::VcBounded => "vc-bounded",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| format!("unknown family {s}"))
    }
}

/// Parameters of a generator; fields a family does not use are ignored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    /// Vertices, string length, or grid rows.
    pub n: usize,
    /// Edge probability.
    pub p: f64,
    /// Planted solution size, cover size, or terminal count.
    pub k: usize,
    /// Alphabet size, or grid columns.
    pub width: usize,
    /// Probability that an edge is doubled.
    pub double: f64,
    /// Largest edge weight.
    pub max_weight: u64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        GeneratorSpec { family, n: 10, p: 0.2, k: 2, width: 3, double: 0.0, max_weight: 10, seed }
    }

    fn header(&self) -> Vec<String> {
        vec![
            format!("generator {} rng {RNG_ID} seed {}", self.family, self.seed),
            format!(
                "params n={} p={} k={} width={} double={} max_weight={}",
                self.n, self.p, self.k, self.width, self.double, self.max_weight
            ),
            format!("k {}", self.k),
        ]
    }

    fn check(&self) -> Result<(), String> {
        if !(0.0..=1.0).contains(&self.p) || !(0.0..=1.0).contains(&self.double) {
            return Err("probabilities must lie in [0, 1]".into());
        }
        match self.family {
            Family::PlantedCvc if self.k == 0 || self.k > self.n => Err("planted-cvc needs 1 <= k <= n".into()),
            Family::PlantedCycles if 2 * self.k > self.n => Err("planted-cycles needs n >= 2k".into()),
            Family::RandomString if self.width == 0 || self.width > 26 => Err("alphabet size must be in 1..=26".into()),
            Family::SteinerGrid if self.n * self.width == 0 || self.k == 0 || self.k > self.n * self.width => {
                Err("steiner-grid needs a nonempty grid and 1 <= k <= cells".into())
            }
            Family::SteinerGrid if self.max_weight == 0 => Err("max_weight must be positive".into()),
            Family::VcBounded if self.k == 0 || self.k > self.n => Err("vc-bounded needs 1 <= k <= n".into()),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generated {
    Graph(GraphFile),
    Text(StringInstance),
}

pub fn generate(spec: &GeneratorSpec) -> Result<Generated, String> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut file = match spec.family {
        Family::RandomString => {
            let text = (0..spec.n).map(|_| (b'a' + rng.gen_range(0..spec.width) as u8) as char).collect();
            return Ok(Generated::Text(StringInstance { text }));
        }
        Family::Gnp => GraphFile::new(gnp(&mut rng, spec.n, spec.p, spec.double)),
        Family::PlantedCvc => GraphFile::new(planted_cvc(&mut rng, spec.n, spec.k, spec.p)),
        Family::PlantedCycles => GraphFile::new(planted_cycles(&mut rng, spec.n, spec.k, spec.p, spec.double)),
        Family::SteinerGrid => steiner_grid(&mut rng, spec),
        Family::VcBounded => vc_bounded(&mut rng, spec.n, spec.k, spec.p),
    };
    file.comments = spec.header();
    Ok(Generated::Graph(file))
}

fn add(g: &mut MultiGraph, rng: &mut ChaCha8Rng, u: VertexId, v: VertexId, double: f64) {
    let c = if rng.gen_bool(double) { 2 } else { 1 };
    g.add_edges(u, v, c).unwrap();
}

pub fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64, double: f64) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(n);
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if rng.gen_bool(p) {
                add(&mut g, rng, u, v, double);
            }
        }
    }
    g
}

/// A random connected set `S` of size `k` that covers every edge; each other
/// vertex gets at least one neighbour in `S`.
pub fn planted_cvc(rng: &mut ChaCha8Rng, n: usize, k: usize, p: f64) -> MultiGraph {
    let mut ids: Vec<VertexId> = (0..n as VertexId).collect();
    ids.shuffle(rng);
    let (s, rest) = ids.split_at(k);
    let mut g = MultiGraph::with_vertices(n);
    for i in 1..k {
        let j = rng.gen_range(0..i);
        g.add_edge(s[i], s[j]).unwrap();
    }
    for i in 0..k {
        for j in i + 1..k {
            if g.multiplicity(s[i], s[j]) == 0 && rng.gen_bool(p) {
                g.add_edge(s[i], s[j]).unwrap();
            }
        }
    }
    for &v in rest {
        let anchor = s[rng.gen_range(0..k)];
        g.add_edge(v, anchor).unwrap();
        for &u in s {
            if u != anchor && rng.gen_bool(p) {
                g.add_edge(v, u).unwrap();
            }
        }
    }
    g
}

/// `k` vertex-disjoint cycles on random vertices plus `G(n, p)` noise.
pub fn planted_cycles(rng: &mut ChaCha8Rng, n: usize, k: usize, p: f64, double: f64) -> MultiGraph {
    let mut g = gnp(rng, n, p, double);
    let mut ids: Vec<VertexId> = (0..n as VertexId).collect();
    ids.shuffle(rng);
    let mut free = &ids[..];
    for i in 0..k {
        let left = k - i;
        let most = (free.len() / left).max(2);
        let len = rng.gen_range(2..=most.min(6));
        let (cyc, rest) = free.split_at(len);
        free = rest;
        if len == 2 {
            let have = g.multiplicity(cyc[0], cyc[1]);
            if have < 2 {
                g.add_edges(cyc[0], cyc[1], 2 - have).unwrap();
            }
        } else {
            for j in 0..len {
                let (u, v) = (cyc[j], cyc[(j + 1) % len]);
                if g.multiplicity(u, v) == 0 {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
    }
    g
}

/// An `n × width` grid with random weights, extra diagonals with
/// probability `p`, and `k` random terminals.
fn steiner_grid(rng: &mut ChaCha8Rng, spec: &GeneratorSpec) -> GraphFile {
    let (rows, cols) = (spec.n, spec.width);
    let id = |r: usize, c: usize| (r * cols + c) as VertexId;
    let mut g = MultiGraph::with_vertices(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let mut nbrs = Vec::new();
            if c + 1 < cols {
                nbrs.push(id(r, c + 1));
            }
            if r + 1 < rows {
                nbrs.push(id(r + 1, c));
            }
            if r + 1 < rows && c + 1 < cols && rng.gen_bool(spec.p) {
                nbrs.push(id(r + 1, c + 1));
            }
            for v in nbrs {
                let w = rng.gen_range(1..=spec.max_weight);
                g.add_weighted_edge(id(r, c), v, w).unwrap();
            }
        }
    }
    let mut cells: Vec<VertexId> = (0..(rows * cols) as VertexId).collect();
    cells.shuffle(rng);
    let terminals: BTreeSet<VertexId> = cells[..spec.k].iter().copied().collect();
    GraphFile { graph: g, terminals, ..Default::default() }
}

/// Cover `C = {0..k}`; every other vertex has a nonempty random
/// neighbourhood inside `C`.
fn vc_bounded(rng: &mut ChaCha8Rng, n: usize, k: usize, p: f64) -> GraphFile {
    let mut g = MultiGraph::with_vertices(n);
    for u in 0..k as VertexId {
        for v in u + 1..k as VertexId {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    for v in k as VertexId..n as VertexId {
        let forced = rng.gen_range(0..k as VertexId);
        for u in 0..k as VertexId {
            if u == forced || rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    GraphFile { graph: g, cover: (0..k as VertexId).collect(), ..Default::default() }
}
