//! Text format for linear combinations.
//!
//! ```text
//! space lambda
//! term 1/2
//! vertex u tri a b c
//! vertex v tri x y z
//! edge a x t
//! edge b y
//! edge c z
//! term -1
//! ```
//!
//! Each `term COEF` line starts a graph document in the graph format; a term
//! with no lines is the empty graph. Terms are normalized on reading.

use std::fmt::Write;

use num_rational::BigRational;

use crate::graphs::{parse_graph, serialize_graph, BeadGraph, GraphError};

use super::{normalize, AlgebraError, DiagramElement, Space};

fn err(line: usize, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse { line, msg: msg.into() }
}

/// Parses an element; line numbers in errors refer to the whole document.
pub fn parse_element(text: &str) -> Result<DiagramElement, AlgebraError> {
    let mut space: Option<Space> = None;
    let mut terms: Vec<(BigRational, usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("space") => {
                if space.is_some() {
                    return Err(err(ln, "space declared twice"));
                }
                let name = words.next().ok_or_else(|| err(ln, "missing space name"))?;
                space = Some(name.parse().map_err(|m: String| err(ln, m))?);
            }
            Some("term") => {
                if space.is_none() {
                    return Err(err(ln, "`space` must come before the first term"));
                }
                let c = words.next().ok_or_else(|| err(ln, "missing coefficient"))?;
                let c: BigRational = c.parse().map_err(|_| err(ln, format!("bad coefficient `{c}`")))?;
                if words.next().is_some() {
                    return Err(err(ln, "trailing input after coefficient"));
                }
                terms.push((c, ln, String::new()));
            }
            Some(_) => match terms.last_mut() {
                Some((_, _, doc)) => {
                    doc.push_str(raw);
                    doc.push('\n');
                }
                None => return Err(err(ln, "graph line outside a term")),
            },
            None => unreachable!(),
        }
    }
    let space = space.ok_or_else(|| err(1, "missing `space` line"))?;
    let mut raw: Vec<(BigRational, BeadGraph)> = Vec::with_capacity(terms.len());
    for (c, start, doc) in terms {
        let g = parse_graph(&doc).map_err(|e| match e {
            GraphError::Parse { line, msg } => err(start + line, msg),
            other => err(start, other.to_string()),
        })?;
        raw.push((c, g));
    }
    normalize(space, &raw)
}

pub fn serialize_element(e: &DiagramElement) -> String {
    let mut out = String::new();
    writeln!(out, "space {}", e.space().name()).expect("write to string");
    for (_, t) in e.terms() {
        writeln!(out, "term {}", t.coef).expect("write to string");
        out.push_str(&serialize_graph(&t.graph));
    }
    out
}
