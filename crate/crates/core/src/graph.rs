//! Multigraphs, their adjacency matrices mod p, and the line-oriented text
//! formats for graphs and codeword lists.
//!
//! Vertices are 0-based in the API and 1-based in files and reports.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::field::{FieldMatrix, FieldVector, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} is out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{family} needs at least {min} vertices, got {n}")]
    UnsupportedSize {
        family: &'static str,
        min: usize,
        n: usize,
    },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Undirected multigraph without self-loops. Multiplicities are kept as raw
/// non-negative integers; reduction mod p happens in [`Multigraph::adjacency_matrix`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    mult: Vec<u64>,
}

impl Multigraph {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        Ok(Self {
            n,
            mult: vec![0; n * n],
        })
    }

    /// Builds a graph from 0-based `(u, v, multiplicity)` triples.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut g = Self::new(n)?;
        for (u, v, m) in edges {
            g.add_edge(u, v, m)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Adds `m` parallel edges between the 0-based vertices `u` and `v`.
    pub fn add_edge(&mut self, u: usize, v: usize, m: u64) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w + 1,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u + 1));
        }
        self.mult[u * self.n + v] += m;
        self.mult[v * self.n + u] += m;
        Ok(())
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        self.mult[u * self.n + v]
    }

    /// Unordered pairs `u < v` with nonzero multiplicity, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter_map(move |v| {
                let m = self.multiplicity(u, v);
                (m > 0).then_some((u, v, m))
            })
        })
    }

    /// Γ with entry (i, j) = multiplicity mod p.
    pub fn adjacency_matrix(&self, f: &PrimeField) -> FieldMatrix {
        let mut gamma = FieldMatrix::zeros(self.n, self.n);
        for (u, v, m) in self.edges() {
            let r = f.reduce(m);
            gamma.set(u, v, r, f);
            gamma.set(v, u, r, f);
        }
        gamma
    }

    /// Vertices whose column of Γ vanishes mod p. For these the X operation
    /// acts as the identity map.
    pub fn isolated_vertices(&self, f: &PrimeField) -> Vec<usize> {
        (0..self.n)
            .filter(|&u| (0..self.n).all(|v| f.reduce(self.multiplicity(u, v)) == 0))
            .collect()
    }

    /// Edges present in the multigraph whose multiplicity is divisible by p.
    pub fn vanishing_edges(&self, f: &PrimeField) -> Vec<(usize, usize, u64)> {
        self.edges().filter(|&(_, _, m)| f.reduce(m) == 0).collect()
    }

    /// The graph with vertex `i` renamed to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut g = Self::new(self.n).expect("n >= 1");
        for (u, v, m) in self.edges() {
            g.add_edge(perm[u], perm[v], m).expect("valid permutation");
        }
        g
    }

    /// Writes the graph in the edge-list format, with a `p` header when given.
    pub fn serialize(&self, p: Option<&PrimeField>) -> String {
        let mut out = String::new();
        if let Some(f) = p {
            let _ = writeln!(out, "p {}", f.modulus());
        }
        let _ = writeln!(out, "n {}", self.n);
        for (u, v, m) in self.edges() {
            let _ = writeln!(out, "e {} {} {}", u + 1, v + 1, m);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cycle,
    Path,
    Complete,
    Edgeless,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::Complete => "complete",
            Family::Edgeless => "edgeless",
        }
    }
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cycle" => Ok(Family::Cycle),
            "path" => Ok(Family::Path),
            "complete" => Ok(Family::Complete),
            "edgeless" => Ok(Family::Edgeless),
            other => Err(GraphError::UnknownFamily(other.to_string())),
        }
    }
}

/// The standard simple graph of a family. Cycle `i` is joined to `i+1` and
/// the last vertex back to the first.
pub fn generate(family: Family, n: usize) -> Result<Multigraph, GraphError> {
    let min = if family == Family::Cycle { 3 } else { 1 };
    if n < min {
        return Err(GraphError::UnsupportedSize {
            family: family.name(),
            min,
            n,
        });
    }
    let mut g = Multigraph::new(n)?;
    match family {
        Family::Edgeless => {}
        Family::Path => {
            for i in 0..n - 1 {
                g.add_edge(i, i + 1, 1)?;
            }
        }
        Family::Cycle => {
            for i in 0..n {
                g.add_edge(i, (i + 1) % n, 1)?;
            }
        }
        Family::Complete => {
            for u in 0..n {
                for v in u + 1..n {
                    g.add_edge(u, v, 1)?;
                }
            }
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Multigraph,
    pub prime: Option<PrimeField>,
}

fn parse_int<T: FromStr>(tok: &str, line: usize, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::new(line, format!("invalid {what} `{tok}`")))
}

/// Parses the edge-list graph format.
///
/// ```text
/// # comment
/// p 3          (optional, at most once, before any edge)
/// n 5          (required, before any edge)
/// e 1 2        (multiplicity 1)
/// e 2 3 2      (repeated lines accumulate)
/// ```
pub fn parse_graph(text: &str) -> Result<ParsedGraph, ParseError> {
    let mut prime: Option<PrimeField> = None;
    let mut graph: Option<Multigraph> = None;
    let mut seen_edge = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if toks.len() != 2 {
                    return Err(ParseError::new(line, "expected `p <prime>`"));
                }
                if prime.is_some() {
                    return Err(ParseError::new(line, "duplicate `p` header"));
                }
                if seen_edge {
                    return Err(ParseError::new(line, "`p` header must precede edges"));
                }
                let p: u64 = parse_int(toks[1], line, "prime")?;
                let f = PrimeField::new(p).map_err(|e| ParseError::new(line, e.to_string()))?;
                prime = Some(f);
            }
            "n" => {
                if toks.len() != 2 {
                    return Err(ParseError::new(line, "expected `n <vertex-count>`"));
                }
                if graph.is_some() {
                    return Err(ParseError::new(line, "duplicate `n` line"));
                }
                let n: usize = parse_int(toks[1], line, "vertex count")?;
                let g = Multigraph::new(n).map_err(|e| ParseError::new(line, e.to_string()))?;
                graph = Some(g);
            }
            "e" => {
                if !(3..=4).contains(&toks.len()) {
                    return Err(ParseError::new(
                        line,
                        "expected `e <u> <v> [<multiplicity>]`",
                    ));
                }
                let Some(g) = graph.as_mut() else {
                    return Err(ParseError::new(line, "edge before `n` line"));
                };
                let u: usize = parse_int(toks[1], line, "vertex")?;
                let v: usize = parse_int(toks[2], line, "vertex")?;
                let m: u64 = match toks.get(3) {
                    Some(t) => parse_int(t, line, "multiplicity")?,
                    None => 1,
                };
                let n = g.vertex_count();
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(ParseError::new(
                            line,
                            GraphError::VertexOutOfRange { vertex: w, n }.to_string(),
                        ));
                    }
                }
                g.add_edge(u - 1, v - 1, m)
                    .map_err(|e| ParseError::new(line, e.to_string()))?;
                seen_edge = true;
            }
            other => {
                return Err(ParseError::new(line, format!("unknown record `{other}`")));
            }
        }
    }

    let graph =
        graph.ok_or_else(|| ParseError::new(text.lines().count().max(1), "missing `n` line"))?;
    Ok(ParsedGraph { graph, prime })
}

/// An assignment of a residue to each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphLabelling(pub FieldVector);

impl GraphLabelling {
    pub fn zero(n: usize) -> Self {
        Self(FieldVector::zeros(n))
    }

    pub fn from_values<I: IntoIterator<Item = i64>>(values: I, f: &PrimeField) -> Self {
        Self(FieldVector::from_values(values, f))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        self.0.as_slice()
    }
}

/// Parses one codeword per non-comment line, each holding `n` integers
/// reduced mod p.
pub fn parse_codewords(
    text: &str,
    n: usize,
    f: &PrimeField,
) -> Result<Vec<GraphLabelling>, ParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let values = trimmed
            .split_whitespace()
            .map(|t| parse_int::<i64>(t, line, "label"))
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != n {
            return Err(ParseError::new(
                line,
                format!("expected {n} labels, found {}", values.len()),
            ));
        }
        out.push(GraphLabelling::from_values(values, f));
    }
    Ok(out)
}
