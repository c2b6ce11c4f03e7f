//! Edge-list and DIMACS readers and writers.
//!
//! Edge lists hold one `u v` pair per line with arbitrary whitespace-free
//! labels; `#` starts a comment. Labels get dense ids in order of first
//! appearance. A comment of the form `#@ node LABEL` declares a vertex, so
//! isolated vertices survive a write/read cycle while other tools still see a
//! plain comment.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;
use zeta_kit_core::Graph;

const NODE_PRAGMA: &str = "#@ node ";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::EdgeList => "edge-list",
            Format::Dimacs => "dimacs",
        }
    }

    /// Guesses from the extension, then from a leading `p` line.
    pub fn detect(path: &Path, text: &str) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("dimacs" | "col" | "clq") => return Format::Dimacs,
            Some("txt" | "edges" | "el") => return Format::EdgeList,
            _ => {}
        }
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && *l != "c" && !l.starts_with("c ") && !l.starts_with('#'));
        let header = first.map(|l| l.split_whitespace().take(2).collect::<Vec<_>>());
        match header.as_deref() {
            Some(["p", "edge" | "col"]) => Format::Dimacs,
            _ => Format::EdgeList,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn error(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphDocument {
    pub graph: Graph,
    /// External label per id; `None` for DIMACS input, whose labels are the
    /// 1-based ids.
    pub labels: Option<Vec<String>>,
    pub format: Format,
    pub warnings: Vec<String>,
}

impl GraphDocument {
    pub fn unlabeled(graph: Graph) -> Self {
        Self {
            graph,
            labels: None,
            format: Format::EdgeList,
            warnings: Vec::new(),
        }
    }

    pub fn label(&self, v: usize) -> String {
        match (&self.labels, self.format) {
            (Some(labels), _) => labels[v].clone(),
            (None, Format::Dimacs) => (v + 1).to_string(),
            (None, Format::EdgeList) => v.to_string(),
        }
    }

    pub fn labels_of(&self, vertices: impl IntoIterator<Item = usize>) -> Vec<String> {
        vertices.into_iter().map(|v| self.label(v)).collect()
    }
}

pub fn parse(text: &str, format: Format) -> Result<GraphDocument, ParseError> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

#[derive(Default)]
struct Labels {
    ids: HashMap<String, usize>,
    names: Vec<String>,
}

impl Labels {
    fn intern(&mut self, label: &str) -> usize {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.names.len();
        self.ids.insert(label.to_owned(), id);
        self.names.push(label.to_owned());
        id
    }
}

fn build(n: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::new(n, edges).expect("parsers reject loops and out-of-range ids")
}

pub fn parse_edge_list(text: &str) -> Result<GraphDocument, ParseError> {
    let mut labels = Labels::default();
    let mut edges = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        if let Some(pragma) = raw.trim_start().strip_prefix("#@") {
            match pragma.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["node", label] => {
                    labels.intern(label);
                    continue;
                }
                _ => return Err(error(line, "node declaration needs exactly one label")),
            }
        }
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [a, b] if a == b => return Err(error(line, format!("self-loop on {a}"))),
            [a, b] => {
                let u = labels.intern(a);
                let v = labels.intern(b);
                edges.push((u, v));
            }
            other => {
                return Err(error(line, format!("expected 2 tokens, found {}", other.len())));
            }
        }
    }
    let graph = build(labels.names.len(), edges);
    Ok(GraphDocument {
        graph,
        labels: Some(labels.names),
        format: Format::EdgeList,
        warnings: Vec::new(),
    })
}

fn parse_id(token: &str, n: usize, line: usize) -> Result<usize, ParseError> {
    let id: usize = token
        .parse()
        .map_err(|_| error(line, format!("vertex id {token:?} is not a positive integer")))?;
    if id == 0 || id > n {
        return Err(error(line, format!("vertex id {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

pub fn parse_dimacs(text: &str) -> Result<GraphDocument, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            ["c", ..] => {}
            ["p", kind, n, m] => {
                if header.is_some() {
                    return Err(error(line, "duplicate problem line"));
                }
                if *kind != "edge" && *kind != "col" {
                    return Err(error(line, format!("unsupported problem type {kind:?}")));
                }
                let n = n.parse().map_err(|_| error(line, format!("bad vertex count {n:?}")))?;
                let m = m.parse().map_err(|_| error(line, format!("bad edge count {m:?}")))?;
                header = Some((n, m, line));
            }
            ["p", ..] => return Err(error(line, "problem line must be \"p edge N M\"")),
            ["e", a, b] => {
                let Some((n, _, _)) = header else {
                    return Err(error(line, "edge before problem line"));
                };
                let u = parse_id(a, n, line)?;
                let v = parse_id(b, n, line)?;
                if u == v {
                    return Err(error(line, format!("self-loop on {a}")));
                }
                edges.push((u, v));
            }
            ["e", ..] => return Err(error(line, "edge line must be \"e u v\"")),
            [other, ..] => return Err(error(line, format!("unknown line type {other:?}"))),
        }
    }
    let Some((n, declared, header_line)) = header else {
        return Err(error(0, "missing problem line"));
    };
    let graph = build(n, edges);
    let mut warnings = Vec::new();
    if graph.edge_count() != declared {
        warnings.push(format!(
            "line {header_line}: header declares {declared} edges, found {} distinct",
            graph.edge_count()
        ));
    }
    Ok(GraphDocument {
        graph,
        labels: None,
        format: Format::Dimacs,
        warnings,
    })
}

/// Writes an edge list that reads back with the same ids: every vertex is
/// introduced, in id order, by an edge to an earlier neighbor or by a node
/// declaration, and the remaining edges follow.
pub fn write_edge_list(doc: &GraphDocument) -> String {
    let graph = &doc.graph;
    let mut out = String::new();
    let mut written = Vec::new();
    for v in graph.vertices() {
        match graph.neighbors(v).iter().find(|&&u| u < v) {
            Some(&u) => {
                writeln!(out, "{} {}", doc.label(u), doc.label(v)).unwrap();
                written.push((u, v));
            }
            None => writeln!(out, "{NODE_PRAGMA}{}", doc.label(v)).unwrap(),
        }
    }
    written.sort_unstable();
    for (u, v) in graph.edges() {
        if written.binary_search(&(u, v)).is_err() {
            writeln!(out, "{} {}", doc.label(u), doc.label(v)).unwrap();
        }
    }
    out
}

pub fn write_dimacs(graph: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", graph.vertex_count(), graph.edge_count());
    for (u, v) in graph.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn write(doc: &GraphDocument, format: Format) -> String {
    match format {
        Format::EdgeList => write_edge_list(doc),
        Format::Dimacs => write_dimacs(&doc.graph),
    }
}
