//! Undirected multigraphs with stable ids and recorded minor operations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = u32;

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// An undirected multigraph. Vertex ids are never reused: fresh vertices get
/// `next_id`, which only grows.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct MultiGraph {
    adj: BTreeMap<VertexId, BTreeMap<VertexId, u32>>,
    weights: BTreeMap<(VertexId, VertexId), u64>,
    next_id: VertexId,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    next_id: VertexId,
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId, u32)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    weights: Vec<(VertexId, VertexId, u64)>,
}

impl From<MultiGraph> for GraphRepr {
    fn from(g: MultiGraph) -> Self {
        GraphRepr {
            next_id: g.next_id,
            vertices: g.vertices().collect(),
            edges: g.edges().collect(),
            weights: g.weights.iter().map(|(&(u, v), &w)| (u, v, w)).collect(),
        }
    }
}

impl TryFrom<GraphRepr> for MultiGraph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        let mut g = MultiGraph::new();
        for v in r.vertices {
            g.insert_vertex(v);
        }
        for (u, v, c) in r.edges {
            g.add_edges(u, v, c)?;
        }
        for (u, v, w) in r.weights {
            g.set_weight(u, v, w)?;
        }
        if r.next_id < g.next_id {
            return Err(Error::Malformed(format!("next_id {} below live ids", r.next_id)));
        }
        g.next_id = r.next_id;
        Ok(g)
    }
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edgeless graph on `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for v in 0..n as VertexId {
            g.insert_vertex(v);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Self::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn insert_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
        self.next_id = self.next_id.max(v + 1);
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let v = self.next_id;
        self.insert_vertex(v);
        v
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if self.adj.contains_key(&v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.add_edges(u, v, 1)
    }

    pub fn add_edges(&mut self, u: VertexId, v: VertexId, count: u32) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.check(u)?;
        self.check(v)?;
        if count == 0 {
            return Ok(());
        }
        *self.adj.get_mut(&u).unwrap().entry(v).or_insert(0) += count;
        *self.adj.get_mut(&v).unwrap().entry(u).or_insert(0) += count;
        Ok(())
    }

    pub fn add_weighted_edge(&mut self, u: VertexId, v: VertexId, w: u64) -> Result<()> {
        self.add_edge(u, v)?;
        let e = self.weights.entry(key(u, v)).or_insert(w);
        *e = (*e).min(w);
        Ok(())
    }

    pub fn set_weight(&mut self, u: VertexId, v: VertexId, w: u64) -> Result<()> {
        if self.multiplicity(u, v) == 0 {
            return Err(Error::NotAnEdge(u, v));
        }
        self.weights.insert(key(u, v), w);
        Ok(())
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<u64> {
        self.weights.get(&key(u, v)).copied()
    }

    pub fn is_weighted(&self) -> bool {
        !self.weights.is_empty()
    }

    /// Removes `count` parallel copies of `uv` (all of them if fewer exist).
    pub fn remove_edges(&mut self, u: VertexId, v: VertexId, count: u32) -> Result<()> {
        let have = self.multiplicity(u, v);
        if have == 0 {
            return Err(Error::NotAnEdge(u, v));
        }
        let left = have.saturating_sub(count);
        if left == 0 {
            self.adj.get_mut(&u).unwrap().remove(&v);
            self.adj.get_mut(&v).unwrap().remove(&u);
            self.weights.remove(&key(u, v));
        } else {
            self.adj.get_mut(&u).unwrap().insert(v, left);
            self.adj.get_mut(&v).unwrap().insert(u, left);
        }
        Ok(())
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        let nbrs = self.adj.remove(&v).ok_or(Error::UnknownVertex(v))?;
        for x in nbrs.keys() {
            self.adj.get_mut(x).unwrap().remove(&v);
            self.weights.remove(&key(v, *x));
        }
        Ok(())
    }

    /// Contracts `uv` into the fresh vertex `next_id`. Parallel edges are
    /// kept, loops dropped; a merged weight is the lighter of the two.
    pub fn contract(&mut self, u: VertexId, v: VertexId) -> Result<VertexId> {
        if self.multiplicity(u, v) == 0 {
            self.check(u)?;
            self.check(v)?;
            return Err(Error::NotAnEdge(u, v));
        }
        let mut merged: BTreeMap<VertexId, u32> = BTreeMap::new();
        let mut merged_w: BTreeMap<VertexId, u64> = BTreeMap::new();
        for s in [u, v] {
            for (&x, &c) in &self.adj[&s] {
                if x == u || x == v {
                    continue;
                }
                *merged.entry(x).or_insert(0) += c;
                if let Some(w) = self.weight(s, x) {
                    let e = merged_w.entry(x).or_insert(w);
                    *e = (*e).min(w);
                }
            }
        }
        self.remove_vertex(u)?;
        self.remove_vertex(v)?;
        let w = self.add_vertex();
        for (x, c) in merged {
            self.add_edges(w, x, c)?;
        }
        for (x, wt) in merged_w {
            self.weights.insert(key(w, x), wt);
        }
        Ok(w)
    }

    pub fn apply(&mut self, op: &MinorOp) -> Result<()> {
        match *op {
            MinorOp::DeleteVertex { v } => self.remove_vertex(v),
            MinorOp::DeleteEdge { u, v, count } => {
                if self.multiplicity(u, v) < count {
                    return Err(Error::Replay(format!("edge {u}-{v} has fewer than {count} copies")));
                }
                self.remove_edges(u, v, count)
            }
            MinorOp::ContractEdge { u, v, into } => {
                if into != self.next_id {
                    return Err(Error::Replay(format!("expected fresh id {into}, have {}", self.next_id)));
                }
                self.contract(u, v).map(|_| ())
            }
            MinorOp::AddVertex { v } => {
                if v != self.next_id {
                    return Err(Error::Replay(format!("expected fresh id {v}, have {}", self.next_id)));
                }
                self.add_vertex();
                Ok(())
            }
            MinorOp::AddEdge { u, v } => self.add_edge(u, v),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges counted with multiplicity.
    pub fn m(&self) -> usize {
        self.adj.values().flat_map(|a| a.values()).map(|&c| c as usize).sum::<usize>() / 2
    }

    pub fn next_id(&self) -> VertexId {
        self.next_id
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.vertices().collect()
    }

    /// Neighbors with multiplicities, ascending by id.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.adj.get(&v).into_iter().flat_map(|a| a.iter().map(|(&x, &c)| (x, c)))
    }

    pub fn neighbor_set(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.neighbors(v).map(|(x, _)| x).collect()
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u32 {
        self.adj.get(&u).and_then(|a| a.get(&v)).copied().unwrap_or(0)
    }

    /// Degree counted with multiplicity.
    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).map(|(_, c)| c as usize).sum()
    }

    pub fn simple_degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |a| a.len())
    }

    /// Each edge class once as `(u, v, multiplicity)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u32)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, a)| a.iter().filter(move |(&v, _)| u < v).map(move |(&v, &c)| (u, v, c)))
    }

    pub fn is_simple(&self) -> bool {
        self.edges().all(|(_, _, c)| c == 1)
    }

    /// `G[S]`, keeping ids, weights and `next_id`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> MultiGraph {
        let mut g = MultiGraph { next_id: self.next_id, ..Default::default() };
        for &v in keep {
            if let Some(a) = self.adj.get(&v) {
                g.adj.insert(v, a.iter().filter(|(x, _)| keep.contains(x)).map(|(&x, &c)| (x, c)).collect());
            }
        }
        g.weights = self
            .weights
            .iter()
            .filter(|((u, v), _)| keep.contains(u) && keep.contains(v))
            .map(|(&e, &w)| (e, w))
            .collect();
        g
    }

    /// `G - S`.
    pub fn without(&self, drop: &BTreeSet<VertexId>) -> MultiGraph {
        let keep = self.vertices().filter(|v| !drop.contains(v)).collect();
        self.induced(&keep)
    }

    /// Connected components in order of their smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in self.vertices() {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for (x, _) in self.neighbors(u) {
                    if seen.insert(x) {
                        comp.push(x);
                        queue.push_back(x);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether `G[S]` is connected (the empty set counts as connected).
    pub fn induces_connected(&self, s: &BTreeSet<VertexId>) -> bool {
        let Some(&start) = s.iter().next() else { return true };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for (x, _) in self.neighbors(u) {
                if s.contains(&x) && seen.insert(x) {
                    stack.push(x);
                }
            }
        }
        seen.len() == s.len()
    }

    pub fn is_vertex_cover(&self, s: &BTreeSet<VertexId>) -> bool {
        self.edges().all(|(u, v, _)| s.contains(&u) || s.contains(&v))
    }

    /// No cycles, digons included.
    pub fn is_forest(&self) -> bool {
        self.is_simple() && self.m() + self.components().len() == self.n()
    }

    /// Canonical byte encoding; equal graphs give equal bytes.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("graph serialization cannot fail")
    }
}

/// One recorded minor operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum MinorOp {
    DeleteVertex { v: VertexId },
    DeleteEdge { u: VertexId, v: VertexId, count: u32 },
    ContractEdge { u: VertexId, v: VertexId, into: VertexId },
    AddVertex { v: VertexId },
    AddEdge { u: VertexId, v: VertexId },
}

pub fn delete_vertex(g: &MultiGraph, v: VertexId) -> Result<(MultiGraph, MinorOp)> {
    let mut h = g.clone();
    h.remove_vertex(v)?;
    Ok((h, MinorOp::DeleteVertex { v }))
}

pub fn contract_edge(g: &MultiGraph, u: VertexId, v: VertexId) -> Result<(MultiGraph, MinorOp)> {
    let mut h = g.clone();
    let into = h.contract(u, v)?;
    Ok((h, MinorOp::ContractEdge { u, v, into }))
}

/// Where each surviving vertex came from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ancestry {
    pub origin: BTreeMap<VertexId, BTreeSet<VertexId>>,
    pub deleted: BTreeSet<VertexId>,
}

impl Ancestry {
    /// Ancestries are pairwise disjoint and, with the deleted vertices,
    /// cover exactly `original`.
    pub fn is_partition_of(&self, original: &BTreeSet<VertexId>) -> bool {
        let mut seen = self.deleted.clone();
        for set in self.origin.values() {
            for &v in set {
                if !seen.insert(v) {
                    return false;
                }
            }
        }
        &seen == original
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorTranscript {
    pub ops: Vec<MinorOp>,
}

impl MinorTranscript {
    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn replay(&self, original: &MultiGraph) -> Result<MultiGraph> {
        let mut g = original.clone();
        for op in &self.ops {
            g.apply(op)?;
        }
        Ok(g)
    }

    /// Graph before each op, followed by the final graph.
    pub fn snapshots(&self, original: &MultiGraph) -> Result<Vec<MultiGraph>> {
        let mut out = Vec::with_capacity(self.ops.len() + 1);
        let mut g = original.clone();
        for op in &self.ops {
            out.push(g.clone());
            g.apply(op)?;
        }
        out.push(g);
        Ok(out)
    }

    pub fn ancestry(&self, original: &MultiGraph) -> Result<Ancestry> {
        let mut anc = Ancestry {
            origin: original.vertices().map(|v| (v, BTreeSet::from([v]))).collect(),
            deleted: BTreeSet::new(),
        };
        for op in &self.ops {
            match *op {
                MinorOp::DeleteVertex { v } => {
                    let set = anc.origin.remove(&v).ok_or(Error::UnknownVertex(v))?;
                    anc.deleted.extend(set);
                }
                MinorOp::ContractEdge { u, v, into } => {
                    let mut a = anc.origin.remove(&u).ok_or(Error::UnknownVertex(u))?;
                    a.extend(anc.origin.remove(&v).ok_or(Error::UnknownVertex(v))?);
                    anc.origin.insert(into, a);
                }
                MinorOp::AddVertex { v } => {
                    anc.origin.insert(v, BTreeSet::new());
                }
                MinorOp::DeleteEdge { .. } | MinorOp::AddEdge { .. } => {}
            }
        }
        Ok(anc)
    }

    /// Maps reduced ids to the union of their original ancestors.
    pub fn replay_inverse(
        &self,
        original: &MultiGraph,
        reduced_solution: &BTreeSet<VertexId>,
    ) -> Result<BTreeSet<VertexId>> {
        let anc = self.ancestry(original)?;
        let mut out = BTreeSet::new();
        for v in reduced_solution {
            out.extend(anc.origin.get(v).ok_or(Error::UnknownVertex(*v))?.iter().copied());
        }
        Ok(out)
    }

    pub fn to_json_lines(&self) -> String {
        self.ops.iter().map(|op| serde_json::to_string(op).unwrap() + "\n").collect()
    }

    pub fn from_json_lines(text: &str) -> Result<Self> {
        let ops = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<Result<_, _>>()?;
        Ok(MinorTranscript { ops })
    }
}

/// A graph together with the operations that produced it.
#[derive(Clone, Debug)]
pub struct Minor {
    pub graph: MultiGraph,
    pub transcript: MinorTranscript,
}

impl Minor {
    pub fn new(graph: MultiGraph) -> Self {
        Minor { graph, transcript: MinorTranscript::default() }
    }

    fn record(&mut self, op: MinorOp) -> Result<()> {
        self.graph.apply(&op)?;
        self.transcript.ops.push(op);
        Ok(())
    }

    pub fn delete_vertex(&mut self, v: VertexId) -> Result<()> {
        self.record(MinorOp::DeleteVertex { v })
    }

    pub fn delete_edges(&mut self, u: VertexId, v: VertexId, count: u32) -> Result<()> {
        self.record(MinorOp::DeleteEdge { u, v, count })
    }

    pub fn contract(&mut self, u: VertexId, v: VertexId) -> Result<VertexId> {
        let into = self.graph.next_id();
        self.record(MinorOp::ContractEdge { u, v, into })?;
        Ok(into)
    }

    pub fn add_vertex(&mut self) -> Result<VertexId> {
        let v = self.graph.next_id();
        self.record(MinorOp::AddVertex { v })?;
        Ok(v)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.record(MinorOp::AddEdge { u, v })
    }
}
