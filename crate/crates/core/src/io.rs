//! Text formats. Graphs use DIMACS-style lines with 1-based ids:
//!
//! ```text
//! c comment
//! p edge <n> <m>
//! v <id>          optional; when present only listed ids exist
//! e <u> <v> [w]   repeated lines are parallel edges
//! t <v>           Steiner terminal
//! vc <v>          vertex-cover member
//! ```
//!
//! Interval files use `p intervals <count> <labels>` and `i <l> <r> <label>`;
//! string files hold one string per line with `#` comments.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::df::StringInstance;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexId};
use crate::ulic::{Interval, LabelledIntervalInstance};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: MultiGraph,
    pub terminals: BTreeSet<VertexId>,
    pub cover: BTreeSet<VertexId>,
    pub comments: Vec<String>,
}

impl GraphFile {
    pub fn new(graph: MultiGraph) -> Self {
        GraphFile { graph, ..Default::default() }
    }
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| bad(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| bad(line, format!("bad {what}")))
}

fn vertex(tok: Option<&str>, line: usize) -> Result<VertexId> {
    let v: VertexId = num(tok, line, "vertex")?;
    if v == 0 {
        return Err(bad(line, "vertex ids start at 1"));
    }
    Ok(v - 1)
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut header: Option<(usize, usize)> = None;
    let mut declared = Vec::new();
    let mut edges = Vec::new();
    let mut out = GraphFile::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let Some(tag) = toks.next() else { continue };
        match tag {
            "c" => out.comments.push(raw.trim_start()[1..].trim().to_string()),
            "p" => {
                if header.is_some() {
                    return Err(bad(line, "second problem line"));
                }
                let kind = toks.next().ok_or_else(|| bad(line, "missing format"))?;
                if kind != "edge" && kind != "col" {
                    return Err(bad(line, format!("unknown format {kind}")));
                }
                header = Some((num(toks.next(), line, "vertex count")?, num(toks.next(), line, "edge count")?));
            }
            "v" => declared.push((line, vertex(toks.next(), line)?)),
            "e" => {
                let u = vertex(toks.next(), line)?;
                let v = vertex(toks.next(), line)?;
                let w: Option<u64> = toks.next().map(|t| num(Some(t), line, "weight")).transpose()?;
                edges.push((line, u, v, w));
            }
            "t" => {
                out.terminals.insert(vertex(toks.next(), line)?);
            }
            "vc" => {
                out.cover.insert(vertex(toks.next(), line)?);
            }
            other => return Err(bad(line, format!("unknown line type {other}"))),
        }
        if tag != "c" && toks.next().is_some() {
            return Err(bad(line, "trailing tokens"));
        }
    }
    let (n, m) = header.ok_or_else(|| bad(0, "missing problem line"))?;
    if declared.is_empty() {
        out.graph = MultiGraph::with_vertices(n);
    } else {
        for (line, v) in declared {
            if v as usize >= n {
                return Err(bad(line, format!("vertex {} exceeds n = {n}", v + 1)));
            }
            out.graph.insert_vertex(v);
        }
    }
    if edges.len() != m {
        return Err(bad(0, format!("header promises {m} edges, found {}", edges.len())));
    }
    for (line, u, v, w) in edges {
        let res = match w {
            Some(w) => out.graph.add_weighted_edge(u, v, w),
            None => out.graph.add_edge(u, v),
        };
        res.map_err(|e| bad(line, e.to_string()))?;
    }
    for &v in out.terminals.iter().chain(&out.cover) {
        if !out.graph.has_vertex(v) {
            return Err(bad(0, format!("vertex {} is not in the graph", v + 1)));
        }
    }
    Ok(out)
}

pub fn write_graph(f: &GraphFile) -> String {
    let g = &f.graph;
    let mut s = String::new();
    for c in &f.comments {
        writeln!(s, "c {c}").unwrap();
    }
    let n = g.vertices().last().map_or(0, |v| v as usize + 1);
    writeln!(s, "p edge {n} {}", g.m()).unwrap();
    if g.n() != n {
        for v in g.vertices() {
            writeln!(s, "v {}", v + 1).unwrap();
        }
    }
    for (u, v, c) in g.edges() {
        for _ in 0..c {
            match g.weight(u, v) {
                Some(w) => writeln!(s, "e {} {} {w}", u + 1, v + 1).unwrap(),
                None => writeln!(s, "e {} {}", u + 1, v + 1).unwrap(),
            }
        }
    }
    for t in &f.terminals {
        writeln!(s, "t {}", t + 1).unwrap();
    }
    for c in &f.cover {
        writeln!(s, "vc {}", c + 1).unwrap();
    }
    s
}

pub fn parse_strings(text: &str) -> Vec<StringInstance> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.starts_with('#'))
        .map(StringInstance::new)
        .collect()
}

pub fn write_strings(comments: &[String], strings: &[StringInstance]) -> String {
    let mut s = String::new();
    for c in comments {
        writeln!(s, "# {c}").unwrap();
    }
    for x in strings {
        writeln!(s, "{}", x.as_string()).unwrap();
    }
    s
}

pub fn parse_intervals(text: &str) -> Result<LabelledIntervalInstance> {
    let mut header = None;
    let mut intervals = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if toks.next() != Some("intervals") {
                    return Err(bad(line, "expected `p intervals`"));
                }
                let count: usize = num(toks.next(), line, "interval count")?;
                let q: u32 = num(toks.next(), line, "label count")?;
                header = Some((count, q));
            }
            Some("i") => {
                let l: i64 = num(toks.next(), line, "left end")?;
                let r: i64 = num(toks.next(), line, "right end")?;
                let label: u32 = num(toks.next(), line, "label")?;
                intervals.push(Interval::new(l, r, label));
            }
            Some(other) => return Err(bad(line, format!("unknown line type {other}"))),
        }
    }
    let (count, q) = header.ok_or_else(|| bad(0, "missing problem line"))?;
    if count != intervals.len() {
        return Err(bad(0, format!("header promises {count} intervals, found {}", intervals.len())));
    }
    LabelledIntervalInstance::new(intervals, q)
}

pub fn write_intervals(inst: &LabelledIntervalInstance) -> String {
    let mut s = format!("p intervals {} {}\n", inst.intervals.len(), inst.q);
    for iv in &inst.intervals {
        writeln!(s, "i {} {} {}", iv.left, iv.right, iv.label).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let text = "c hello\np edge 4 4\ne 1 2\ne 1 2\ne 2 3 7\ne 3 4 2\nt 1\nt 4\nvc 2\nvc 3\n";
        let f = parse_graph(text).unwrap();
        assert_eq!(f.graph.n(), 4);
        assert_eq!(f.graph.multiplicity(0, 1), 2);
        assert_eq!(f.graph.weight(1, 2), Some(7));
        assert_eq!(f.terminals, BTreeSet::from([0, 3]));
        assert_eq!(f.cover, BTreeSet::from([1, 2]));
        assert_eq!(f.comments, vec!["hello".to_string()]);
        assert_eq!(write_graph(&f), text);
    }

    #[test]
    fn sparse_ids_survive() {
        let mut g = MultiGraph::from_edges(5, &[(0, 4), (2, 4)]).unwrap();
        g.remove_vertex(1).unwrap();
        let f = GraphFile::new(g.clone());
        let back = parse_graph(&write_graph(&f)).unwrap();
        assert_eq!(back.graph.vertex_set(), g.vertex_set());
        assert_eq!(back.graph.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_graph("e 1 2\n").is_err());
        assert!(parse_graph("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_graph("p edge 2 1\ne 1 1\n").is_err());
        assert!(parse_graph("p edge 2 2\ne 1 2\n").is_err());
        assert!(parse_graph("p edge 2 0\ne0 1 2\n").is_err());
        assert!(parse_graph("p edge 2 0\nt 0\n").is_err());
        let err = parse_graph("p edge 2 1\nx 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn strings_and_intervals() {
        let s = parse_strings("# corpus\naabb\n\nabab\n");
        assert_eq!(s.len(), 3);
        assert_eq!(s[0].as_string(), "aabb");
        assert!(s[1].is_empty());
        assert_eq!(write_strings(&["corpus".into()], &s), "# corpus\naabb\n\nabab\n");
        let inst = parse_intervals("p intervals 2 2\ni 1 3 0\ni 2 5 1\n").unwrap();
        assert_eq!(inst.intervals[1], Interval::new(2, 5, 1));
        assert_eq!(write_intervals(&inst), "p intervals 2 2\ni 1 3 0\ni 2 5 1\n");
        assert!(parse_intervals("p intervals 2 1\ni 1 3 0\n").is_err());
    }
}
