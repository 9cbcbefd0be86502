//! Text formats: the matrix format, edge lists, DOT, JSON, and run
//! manifests.
//!
//! Matrix format: `n` on the first line, then `n` lines of `n`
//! space-separated bits. Edge-list format: one `u v` line per edge with
//! `u < v`, sorted. Streams of several objects separate blocks with one
//! blank line. All output is ASCII and newline-terminated.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matrix::{AdjacencyMatrix, LabeledGraph};

pub fn matrix_text(m: &AdjacencyMatrix) -> String {
    m.to_string()
}

/// Parses one matrix block. `first_line` is only used for diagnostics.
fn parse_matrix_lines(lines: &[(usize, &str)]) -> Result<AdjacencyMatrix> {
    let (&(head_no, head), rows) = lines
        .split_first()
        .ok_or_else(|| Error::parse(1, "empty matrix block"))?;
    let n: usize = head
        .trim()
        .parse()
        .map_err(|_| Error::parse(head_no, format!("expected vertex count, found {head:?}")))?;
    if n == 0 {
        return Err(Error::parse(head_no, "vertex count must be at least 1"));
    }
    if rows.len() != n {
        return Err(Error::parse(
            head_no,
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    let mut bits = vec![vec![false; n]; n];
    for (r, &(line_no, line)) in rows.iter().enumerate() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != n {
            return Err(Error::parse(
                line_no,
                format!("expected {n} entries, found {}", toks.len()),
            ));
        }
        for (c, tok) in toks.iter().enumerate() {
            bits[r][c] = match *tok {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::parse(
                        line_no,
                        format!("entry {other:?} is not 0 or 1"),
                    ))
                }
            };
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        if bits[i][i] {
            return Err(Error::parse(
                rows[i].0,
                format!("nonzero diagonal entry at ({0}, {0})", i + 1),
            ));
        }
        for j in i + 1..n {
            if bits[i][j] != bits[j][i] {
                return Err(Error::parse(
                    rows[j].0,
                    format!(
                        "asymmetric entries at ({}, {}) and ({}, {})",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    ),
                ));
            }
            if bits[i][j] {
                edges.push((i + 1, j + 1));
            }
        }
    }
    AdjacencyMatrix::from_edges(n, edges)
}

/// Splits text into blank-line separated blocks of numbered, non-empty
/// lines.
fn blocks(text: &str) -> Vec<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for (k, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push((k + 1, line));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<AdjacencyMatrix> {
    let mut bs = blocks(text);
    match bs.len() {
        0 => Err(Error::parse(1, "no matrix found")),
        1 => parse_matrix_lines(&bs.remove(0)),
        _ => Err(Error::parse(bs[1][0].0, "more than one matrix block")),
    }
}

pub fn parse_matrix_stream(text: &str) -> Result<Vec<AdjacencyMatrix>> {
    blocks(text).iter().map(|b| parse_matrix_lines(b)).collect()
}

pub fn edge_list_text(g: &LabeledGraph) -> String {
    let mut s = String::new();
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

fn parse_edge_lines(lines: &[(usize, &str)]) -> Result<Vec<(usize, usize)>> {
    lines
        .iter()
        .map(|&(no, line)| {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [a, b] = toks[..] else {
                return Err(Error::parse(
                    no,
                    format!("expected \"u v\", found {line:?}"),
                ));
            };
            let parse = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(no, format!("{t:?} is not a vertex label")))
            };
            let (u, v) = (parse(a)?, parse(b)?);
            if u == 0 || v == 0 {
                return Err(Error::parse(no, "labels start at 1"));
            }
            if u == v {
                return Err(Error::parse(no, format!("self-loop at {u}")));
            }
            Ok((u.min(v), u.max(v)))
        })
        .collect()
}

/// Edges of one edge-list block. The vertex count is not part of the
/// format; see [`graph_from_edges`].
pub fn parse_edge_list(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut bs = blocks(text);
    match bs.len() {
        0 => Ok(Vec::new()),
        1 => parse_edge_lines(&bs.remove(0)),
        _ => Err(Error::parse(bs[1][0].0, "more than one edge-list block")),
    }
}

pub fn parse_edge_list_stream(text: &str) -> Result<Vec<Vec<(usize, usize)>>> {
    blocks(text).iter().map(|b| parse_edge_lines(b)).collect()
}

/// Builds a graph from parsed edges. Without an explicit `n` the vertex
/// count is the largest endpoint (1 for an empty list).
pub fn graph_from_edges(edges: Vec<(usize, usize)>, n: Option<usize>) -> Result<LabeledGraph> {
    let n = n.unwrap_or_else(|| edges.iter().map(|&(_, v)| v).max().unwrap_or(1));
    LabeledGraph::new(n, edges)
}

/// Reads a single graph in either text format. A first line holding one
/// token marks the matrix format.
pub fn parse_graph(text: &str, n: Option<usize>) -> Result<LabeledGraph> {
    let first = text.lines().find(|l| !l.trim().is_empty());
    match first.map(|l| l.split_whitespace().count()) {
        Some(1) => {
            let m = parse_matrix(text)?;
            if let Some(n) = n.filter(|&n| n != m.n()) {
                return Err(Error::parse(
                    1,
                    format!("matrix has {} vertices, expected {n}", m.n()),
                ));
            }
            Ok(m.to_graph())
        }
        _ => graph_from_edges(parse_edge_list(text)?, n),
    }
}

/// Undirected DOT with edges annotated by their weight `|u - v|`.
pub fn export_dot(g: &LabeledGraph) -> String {
    dot_named("G", g)
}

pub fn dot_named(name: &str, g: &LabeledGraph) -> String {
    let mut s = format!("graph {name} {{\n");
    for v in 1..=g.n() {
        s.push_str(&format!("  {v};\n"));
    }
    for &(u, v) in g.edges() {
        s.push_str(&format!("  {u} -- {v} [label=\"{}\"];\n", v - u));
    }
    s.push_str("}\n");
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&LabeledGraph> for GraphJson {
    fn from(g: &LabeledGraph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for LabeledGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        LabeledGraph::new(j.n, j.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

/// Summary written next to every enumeration run. `elapsed_ms` is the
/// only field that varies between identical runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub algorithm: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n_e: Option<usize>,
    pub count: usize,
    pub checksum: String,
    pub elapsed_ms: u64,
}

/// Order-sensitive SHA-256 over the canonical serializations of a stream
/// of objects.
#[derive(Debug, Clone, Default)]
pub struct Checksum(Sha256);

impl Checksum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Each object is framed by its byte length so that concatenation
    /// cannot alias two different streams.
    pub fn update(&mut self, canonical: &str) {
        self.0.update((canonical.len() as u64).to_le_bytes());
        self.0.update(canonical.as_bytes());
    }

    pub fn hex(self) -> String {
        format!("{:x}", self.0.finalize())
    }
}
