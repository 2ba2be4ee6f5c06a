//! Graph and matrix file formats.
//!
//! The text format is line oriented:
//!
//! ```text
//! # two loops at one vertex
//! vertex v
//! edge e1 v v
//! edge e2 v v
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. The JSON form is
//! `{"vertices": [..], "edges": [{"id", "src", "dst"}, ..]}`.

use std::fmt;

use leavitt_core::graph::GraphError;
use leavitt_core::{BigInt, FgAbelianGroup, Graph, IntMatrix};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug)]
pub enum FormatError {
    Line { line: usize, message: String },
    Json(serde_json::Error),
    Graph(GraphError),
    Matrix(String),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Line { line, message } => write!(f, "line {line}: {message}"),
            FormatError::Json(e) => write!(f, "invalid JSON: {e}"),
            FormatError::Graph(e) => write!(f, "invalid graph: {e}"),
            FormatError::Matrix(m) => write!(f, "invalid matrix: {m}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

impl From<GraphError> for FormatError {
    fn from(e: GraphError) -> Self {
        FormatError::Graph(e)
    }
}

pub fn parse_graph_text(s: &str) -> Result<Graph, FormatError> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in s.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: &str| FormatError::Line { line: i + 1, message: message.into() };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["vertex", id] => vertices.push(id.to_string()),
            ["edge", id, src, dst] => edges.push((id.to_string(), src.to_string(), dst.to_string())),
            ["vertex", ..] => return Err(err("expected `vertex <id>`")),
            ["edge", ..] => return Err(err("expected `edge <id> <src> <dst>`")),
            _ => return Err(err("unknown record")),
        }
    }
    Ok(Graph::new(vertices, edges)?)
}

pub fn write_graph_text(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        out.push_str("vertex ");
        out.push_str(v);
        out.push('\n');
    }
    for e in g.edges() {
        let (s, r) = (&g.vertices()[e.src], &g.vertices()[e.dst]);
        out.push_str(&format!("edge {} {s} {r}\n", e.id));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    id: String,
    src: String,
    dst: String,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
}

pub fn graph_to_json(g: &Graph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!({"id": e.id, "src": g.vertices()[e.src], "dst": g.vertices()[e.dst]}))
        .collect();
    json!({"vertices": g.vertices(), "edges": edges})
}

pub fn write_graph_json(g: &Graph) -> String {
    let mut s = serde_json::to_string_pretty(&graph_to_json(g)).expect("serializable");
    s.push('\n');
    s
}

pub fn parse_graph_json(s: &str) -> Result<Graph, FormatError> {
    let g: GraphJson = serde_json::from_str(s)?;
    Ok(Graph::new(g.vertices, g.edges.into_iter().map(|e| (e.id, e.src, e.dst)))?)
}

/// JSON if the first non-blank character is `{`, text otherwise.
pub fn parse_graph(s: &str) -> Result<Graph, FormatError> {
    if s.trim_start().starts_with('{') {
        parse_graph_json(s)
    } else {
        parse_graph_text(s)
    }
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// `{rows, cols, entries, row_labels, col_labels}` with row-major decimal
/// string entries.
pub fn matrix_to_json(m: &IntMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": strings(m.entries()),
        "row_labels": m.row_labels(),
        "col_labels": m.col_labels(),
    })
}

#[derive(Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
    #[serde(default)]
    row_labels: Option<Vec<String>>,
    #[serde(default)]
    col_labels: Option<Vec<String>>,
}

pub fn matrix_from_json(v: &Value) -> Result<IntMatrix, FormatError> {
    let m: MatrixJson = serde_json::from_value(v.clone())?;
    if m.entries.len() != m.rows * m.cols {
        return Err(FormatError::Matrix(format!("{} entries for a {}x{} matrix", m.entries.len(), m.rows, m.cols)));
    }
    let entries = m
        .entries
        .iter()
        .map(|e| e.parse::<BigInt>().map_err(|_| FormatError::Matrix(format!("bad entry '{e}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    if m.row_labels.as_ref().is_some_and(|l| l.len() != m.rows) || m.col_labels.as_ref().is_some_and(|l| l.len() != m.cols) {
        return Err(FormatError::Matrix("label count does not match shape".into()));
    }
    Ok(IntMatrix::from_vec(m.rows, m.cols, entries).with_labels(m.row_labels, m.col_labels))
}

pub fn vector_to_json(v: &[BigInt]) -> Value {
    json!(strings(v))
}

/// `{rank, factors}`.
pub fn group_to_json(g: &FgAbelianGroup) -> Value {
    json!({"rank": g.rank(), "factors": strings(g.invariant_factors())})
}
