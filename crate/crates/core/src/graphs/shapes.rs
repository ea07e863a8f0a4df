//! Small named graphs used throughout the tests and the CLI.

use crate::laurent::LaurentPoly;

use super::{head_flag, tail_flag, BeadGraph, Edge, Vertex, STAR};

fn build(vertices: Vec<Vertex>, edges: Vec<Edge>) -> BeadGraph {
    BeadGraph::new(vertices, edges).expect("named shape is valid")
}

fn leg(color: &str, flag: usize) -> Vertex {
    Vertex::Leg {
        color: color.to_string(),
        flag,
    }
}

/// Two trivalent vertices joined by three edges, all running from vertex 0
/// to vertex 1.
pub fn theta() -> BeadGraph {
    theta_with_beads([LaurentPoly::one(), LaurentPoly::one(), LaurentPoly::one()])
}

pub fn theta_with_beads(beads: [LaurentPoly; 3]) -> BeadGraph {
    build(
        vec![
            Vertex::Trivalent([tail_flag(0), tail_flag(1), tail_flag(2)]),
            Vertex::Trivalent([head_flag(0), head_flag(1), head_flag(2)]),
        ],
        beads.into_iter().map(|bead| Edge { bead }).collect(),
    )
}

/// The complete graph on four vertices, edges from lower to higher vertex.
pub fn tetrahedron() -> BeadGraph {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); 4];
    for (e, &(a, b)) in pairs.iter().enumerate() {
        at[a].push(tail_flag(e));
        at[b].push(head_flag(e));
    }
    build(
        at.into_iter().map(|f| Vertex::Trivalent([f[0], f[1], f[2]])).collect(),
        vec![Edge::plain(); 6],
    )
}

/// A cycle of `n` trivalent vertices, each carrying one `*` leg.
pub fn wheel(n: usize) -> BeadGraph {
    assert!(n >= 1, "a wheel needs at least one spoke");
    // rim edge i runs from rim vertex i to rim vertex i+1; spoke i is edge n+i
    let mut vertices = Vec::with_capacity(2 * n);
    for i in 0..n {
        let incoming = head_flag((i + n - 1) % n);
        vertices.push(Vertex::Trivalent([incoming, tail_flag(i), tail_flag(n + i)]));
    }
    for i in 0..n {
        vertices.push(leg(STAR, head_flag(n + i)));
    }
    build(vertices, vec![Edge::plain(); 2 * n])
}

/// A single edge between two legs.
pub fn strut(tail_color: &str, head_color: &str, bead: LaurentPoly) -> BeadGraph {
    build(
        vec![leg(tail_color, tail_flag(0)), leg(head_color, head_flag(0))],
        vec![Edge { bead }],
    )
}

/// One trivalent vertex with three legs; every edge leaves the centre.
pub fn vortex(colors: [&str; 3]) -> BeadGraph {
    let mut vertices = vec![Vertex::Trivalent([tail_flag(0), tail_flag(1), tail_flag(2)])];
    for (e, c) in colors.iter().enumerate() {
        vertices.push(leg(c, head_flag(e)));
    }
    build(vertices, vec![Edge::plain(); 3])
}

/// A loop at a trivalent vertex whose third flag ends in a `*` leg.
pub fn tadpole() -> BeadGraph {
    build(
        vec![
            Vertex::Trivalent([tail_flag(0), head_flag(0), tail_flag(1)]),
            leg(STAR, head_flag(1)),
        ],
        vec![Edge::plain(); 2],
    )
}

/// Two loops joined by an edge.
pub fn dumbbell() -> BeadGraph {
    build(
        vec![
            Vertex::Trivalent([tail_flag(0), head_flag(0), tail_flag(2)]),
            Vertex::Trivalent([tail_flag(1), head_flag(1), head_flag(2)]),
        ],
        vec![Edge::plain(); 3],
    )
}
