//! Multigraphs with labeled parallel edges, and the text forms `K7`, `L6`,
//! `2L6` and `v=5; e=1-2:1,1-2:2,...`.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge {0}-{1} is a loop")]
    Loop(usize, usize),
    #[error("edge endpoint {0} outside 1..={1}")]
    Endpoint(usize, usize),
    #[error("duplicate edge {0}-{1} with label {2}")]
    Duplicate(usize, usize, u32),
    #[error("cannot parse graph: {0}")]
    Parse(String),
}

/// An edge `{a, b}` (0-based, `a < b`) carrying a label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub label: u32,
}

impl Edge {
    pub fn shares_endpoint(&self, o: &Edge) -> bool {
        self.a == o.a || self.a == o.b || self.b == o.a || self.b == o.b
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertices: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    /// Builds a graph from 0-based endpoint pairs.
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize, u32)>) -> Result<Self, GraphError> {
        let mut out = Vec::new();
        for (a, b, label) in edges {
            if a == b {
                return Err(GraphError::Loop(a + 1, b + 1));
            }
            for v in [a, b] {
                if v >= vertices {
                    return Err(GraphError::Endpoint(v + 1, vertices));
                }
            }
            let e = Edge { a: a.min(b), b: a.max(b), label };
            if out.contains(&e) {
                return Err(GraphError::Duplicate(e.a + 1, e.b + 1, label));
            }
            out.push(e);
        }
        Ok(Multigraph { vertices, edges: out })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b, 1)));
        Multigraph::new(n, edges).expect("simple graph")
    }

    /// `sL_n`: vertices `0..=n`, with `s` parallel edges labeled `1..=s`
    /// between consecutive vertices.
    pub fn linear(s: u32, n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (1..=s).map(move |c| (i, i + 1, c)));
        Multigraph::new(n + 1, edges).expect("well formed")
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Graph on the vertices not in `removed`, renumbered in order.
    pub fn without_vertices(&self, removed: &[usize]) -> Multigraph {
        let keep: Vec<usize> = (0..self.vertices).filter(|v| !removed.contains(v)).collect();
        let index = |v: usize| keep.iter().position(|&k| k == v);
        let edges = self
            .edges
            .iter()
            .filter_map(|e| Some((index(e.a)?, index(e.b)?, e.label)));
        Multigraph::new(keep.len(), edges).expect("subgraph of a valid graph")
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v={}; e=", self.vertices)?;
        let parts: Vec<String> = self.edges.iter().map(|e| format!("{}-{}:{}", e.a + 1, e.b + 1, e.label)).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Multigraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = |m: &str| GraphError::Parse(format!("{m} in {s:?}"));
        if let Some(n) = s.strip_prefix('K') {
            let n: usize = n.parse().map_err(|_| bad("bad vertex count"))?;
            return Ok(Multigraph::complete(n));
        }
        if let Some((mult, n)) = s.split_once('L') {
            if !s.contains('=') {
                let mult: u32 = if mult.is_empty() { 1 } else { mult.parse().map_err(|_| bad("bad multiplicity"))? };
                let n: usize = n.parse().map_err(|_| bad("bad length"))?;
                if mult == 0 {
                    return Err(bad("multiplicity must be positive"));
                }
                return Ok(Multigraph::linear(mult, n));
            }
        }
        let mut vertices = None;
        let mut edges = Vec::new();
        for part in s.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (k, v) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            match k.trim() {
                "v" => vertices = Some(v.trim().parse::<usize>().map_err(|_| bad("bad vertex count"))?),
                "e" => {
                    for item in v.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                        let (ends, label) = match item.split_once(':') {
                            Some((e, l)) => (e, l.trim().parse::<u32>().map_err(|_| bad("bad edge label"))?),
                            None => (item, 1),
                        };
                        let (a, b) = ends.split_once('-').ok_or_else(|| bad("edge needs a-b"))?;
                        let a: usize = a.trim().parse().map_err(|_| bad("bad endpoint"))?;
                        let b: usize = b.trim().parse().map_err(|_| bad("bad endpoint"))?;
                        if a == 0 || b == 0 {
                            return Err(bad("vertices are numbered from 1"));
                        }
                        edges.push((a - 1, b - 1, label));
                    }
                }
                other => return Err(bad(&format!("unknown key {other:?}"))),
            }
        }
        let vertices = vertices.ok_or_else(|| bad("missing v="))?;
        Multigraph::new(vertices, edges)
    }
}
