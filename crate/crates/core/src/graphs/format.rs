//! Line-based text format for a single graph.
//!
//! ```text
//! # theta
//! vertex u tri a b c
//! vertex v tri x y z
//! edge a x
//! edge b y t^2
//! edge c z 1 - t
//! ```
//!
//! `vertex NAME tri F1 F2 F3` lists flags in cyclic order; `vertex NAME leg
//! COLOR F` is a univalent vertex. `edge TAIL HEAD [BEAD]` pairs two flags;
//! the bead defaults to 1. Edges are numbered in the order they appear.

use std::collections::HashMap;
use std::fmt::Write;

use crate::laurent::LaurentPoly;

use super::{head_flag, tail_flag, BeadGraph, Edge, GraphError, Vertex};

fn err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && !s.starts_with('#') && s.chars().all(|c| !c.is_whitespace())
}

enum RawVertex {
    Tri([String; 3]),
    Leg(String, String),
}

pub fn parse_graph(text: &str) -> Result<BeadGraph, GraphError> {
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut raw: Vec<(usize, RawVertex)> = Vec::new();
    let mut flags: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "vertex" => {
                if words.len() < 3 {
                    return Err(err(ln, "expected `vertex NAME tri|leg ...`"));
                }
                let name = words[1];
                if names.insert(name.to_string(), raw.len()).is_some() {
                    return Err(err(ln, format!("vertex `{name}` defined twice")));
                }
                let v = match words[2] {
                    "tri" => {
                        if words.len() != 6 {
                            return Err(err(
                                ln,
                                format!("trivalent vertex `{name}` needs 3 flags, got {}", words.len() - 3),
                            ));
                        }
                        RawVertex::Tri([words[3].into(), words[4].into(), words[5].into()])
                    }
                    "leg" => {
                        if words.len() != 5 {
                            return Err(err(ln, format!("leg `{name}` needs a color and one flag")));
                        }
                        RawVertex::Leg(words[3].into(), words[4].into())
                    }
                    other => return Err(err(ln, format!("unknown vertex kind `{other}`"))),
                };
                raw.push((ln, v));
            }
            "edge" => {
                if words.len() < 3 {
                    return Err(err(ln, "expected `edge TAIL HEAD [BEAD]`"));
                }
                let e = edges.len();
                for (w, f) in [(words[1], tail_flag(e)), (words[2], head_flag(e))] {
                    if !is_ident(w) {
                        return Err(err(ln, format!("bad flag name `{w}`")));
                    }
                    if flags.insert(w.to_string(), f).is_some() {
                        return Err(err(ln, format!("flag `{w}` used by two edges")));
                    }
                }
                let bead = if words.len() > 3 {
                    words[3..]
                        .join(" ")
                        .parse::<LaurentPoly>()
                        .map_err(|e| err(ln, format!("bad bead: {e}")))?
                } else {
                    LaurentPoly::one()
                };
                edges.push(Edge { bead });
            }
            other => return Err(err(ln, format!("unknown record `{other}`"))),
        }
    }
    let lookup = |ln: usize, name: &str| {
        flags
            .get(name)
            .copied()
            .ok_or_else(|| err(ln, format!("flag `{name}` is not on any edge")))
    };
    let mut vertices = Vec::with_capacity(raw.len());
    for (ln, v) in &raw {
        vertices.push(match v {
            RawVertex::Tri(fs) => Vertex::Trivalent([lookup(*ln, &fs[0])?, lookup(*ln, &fs[1])?, lookup(*ln, &fs[2])?]),
            RawVertex::Leg(color, f) => Vertex::Leg {
                color: color.clone(),
                flag: lookup(*ln, f)?,
            },
        });
    }
    BeadGraph::new(vertices, edges).map_err(|e| match e {
        GraphError::FlagReused(_) | GraphError::FlagUnattached(_) => {
            let name = match e {
                GraphError::FlagReused(f) | GraphError::FlagUnattached(f) => flags
                    .iter()
                    .find(|(_, &v)| v == f)
                    .map(|(k, _)| k.clone())
                    .unwrap_or_default(),
                _ => unreachable!(),
            };
            let what = if matches!(e, GraphError::FlagReused(_)) {
                "is attached to two vertices"
            } else {
                "is not attached to any vertex"
            };
            GraphError::Invalid(format!("flag `{name}` {what}"))
        }
        other => other,
    })
}

pub fn serialize_graph(g: &BeadGraph) -> String {
    let mut out = String::new();
    for (i, v) in g.vertices().iter().enumerate() {
        match v {
            Vertex::Trivalent([a, b, c]) => writeln!(out, "vertex v{i} tri f{a} f{b} f{c}"),
            Vertex::Leg { color, flag } => writeln!(out, "vertex v{i} leg {color} f{flag}"),
        }
        .expect("write to string");
    }
    for (e, edge) in g.edges().iter().enumerate() {
        if edge.bead.is_one() {
            writeln!(out, "edge f{} f{}", tail_flag(e), head_flag(e))
        } else {
            writeln!(out, "edge f{} f{} {}", tail_flag(e), head_flag(e), edge.bead)
        }
        .expect("write to string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::*;

    const THETA: &str = "# theta\nvertex u tri a b c\nvertex v tri x y z\nedge a x\nedge b y\nedge c z\n";

    #[test]
    fn theta_text() {
        let g = parse_graph(THETA).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g, theta());
    }

    #[test]
    fn round_trip() {
        let beaded = theta_with_beads(["1 - t".parse().unwrap(), LaurentPoly::t_pow(-2), LaurentPoly::one()]);
        for g in [beaded, tetrahedron(), wheel(3), strut("x", STAR, LaurentPoly::t()), BeadGraph::empty()] {
            assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
        }
    }

    #[test]
    fn four_valent_rejected() {
        let text = "vertex u tri a b c d\nvertex v tri x y z\nedge a x\nedge b y\nedge c z\nedge d w\n";
        assert!(matches!(parse_graph(text), Err(GraphError::Parse { line: 1, .. })));
    }

    #[test]
    fn errors_carry_lines() {
        let text = "vertex u tri a b c\n\nedge a b\nedge c q 1 +* t\n";
        assert!(matches!(parse_graph(text), Err(GraphError::Parse { line: 4, .. })));
        assert!(matches!(parse_graph("blob\n"), Err(GraphError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_graph("vertex u tri a b z\nedge a b\n"),
            Err(GraphError::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_graph("edge a b\n"), Err(GraphError::Invalid(_))));
    }
}
