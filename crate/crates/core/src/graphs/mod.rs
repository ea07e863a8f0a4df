//! Vertex-oriented unitrivalent graphs with oriented, beaded edges.
//!
//! Every edge `e` owns two flags (half-edges): `2e` at its tail and `2e + 1`
//! at its head. A trivalent vertex lists its three flags in cyclic order; a
//! leg lists its single flag and carries a color such as `*` or a link
//! component name.

mod canon;
mod format;
mod shapes;

pub use canon::{automorphisms, canonicalize, canonicalize_with, Automorphism, CanonOptions, CanonicalForm, CanonicalKey, TreePolicy};
pub use format::{parse_graph, serialize_graph};
pub use shapes::*;

use std::fmt;

use thiserror::Error;

use crate::laurent::LaurentPoly;

pub type Flag = usize;

/// Default bound on the number of vertices accepted by canonicalization.
pub const DEFAULT_VERTEX_BOUND: usize = 16;

pub const STAR: &str = "*";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("flag {0} does not exist")]
    NoSuchFlag(Flag),
    #[error("flag {0} is attached to more than one vertex")]
    FlagReused(Flag),
    #[error("flag {0} is not attached to any vertex")]
    FlagUnattached(Flag),
    #[error("graph has {count} vertices, above the bound {bound}")]
    TooLarge { count: usize, bound: usize },
    #[error("bead {bead} on edge {edge} is not a power of t; expand it first")]
    NonMonomialBead { edge: usize, bead: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Vertex {
    /// Three flags in cyclic order.
    Trivalent([Flag; 3]),
    Leg { color: String, flag: Flag },
}

impl Vertex {
    pub fn flags(&self) -> &[Flag] {
        match self {
            Vertex::Trivalent(f) => f,
            Vertex::Leg { flag, .. } => std::slice::from_ref(flag),
        }
    }

    pub fn is_trivalent(&self) -> bool {
        matches!(self, Vertex::Trivalent(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub bead: LaurentPoly,
}

impl Edge {
    pub fn plain() -> Self {
        Self {
            bead: LaurentPoly::one(),
        }
    }
}

/// Non-negative half-integer, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger(pub usize);

impl HalfInteger {
    pub fn doubled(self) -> usize {
        self.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BeadGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    flag_vertex: Vec<usize>,
}

pub const fn tail_flag(edge: usize) -> Flag {
    2 * edge
}

pub const fn head_flag(edge: usize) -> Flag {
    2 * edge + 1
}

pub const fn edge_of(flag: Flag) -> usize {
    flag / 2
}

pub const fn partner(flag: Flag) -> Flag {
    flag ^ 1
}

pub const fn is_tail(flag: Flag) -> bool {
    flag.is_multiple_of(2)
}

impl BeadGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let nflags = 2 * edges.len();
        let mut flag_vertex = vec![usize::MAX; nflags];
        for (v, vert) in vertices.iter().enumerate() {
            for &f in vert.flags() {
                if f >= nflags {
                    return Err(GraphError::NoSuchFlag(f));
                }
                if flag_vertex[f] != usize::MAX {
                    return Err(GraphError::FlagReused(f));
                }
                flag_vertex[f] = v;
            }
        }
        if let Some(f) = flag_vertex.iter().position(|&v| v == usize::MAX) {
            return Err(GraphError::FlagUnattached(f));
        }
        Ok(Self {
            vertices,
            edges,
            flag_vertex,
        })
    }

    pub fn empty() -> Self {
        Self {
            vertices: Vec::new(),
            edges: Vec::new(),
            flag_vertex: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_trivalent(&self) -> usize {
        self.vertices.iter().filter(|v| v.is_trivalent()).count()
    }

    pub fn num_legs(&self) -> usize {
        self.vertices.len() - self.num_trivalent()
    }

    pub fn is_legless(&self) -> bool {
        self.vertices.iter().all(Vertex::is_trivalent)
    }

    pub fn bead(&self, edge: usize) -> &LaurentPoly {
        &self.edges[edge].bead
    }

    pub fn set_bead(&mut self, edge: usize, bead: LaurentPoly) {
        self.edges[edge].bead = bead;
    }

    pub fn is_beadless(&self) -> bool {
        self.edges.iter().all(|e| e.bead.is_one())
    }

    pub fn vertex_of(&self, flag: Flag) -> usize {
        self.flag_vertex[flag]
    }

    pub fn tail(&self, edge: usize) -> usize {
        self.flag_vertex[tail_flag(edge)]
    }

    pub fn head(&self, edge: usize) -> usize {
        self.flag_vertex[head_flag(edge)]
    }

    /// Leg colors present, sorted and deduplicated.
    pub fn colors(&self) -> Vec<String> {
        let mut c: Vec<String> = self
            .vertices
            .iter()
            .filter_map(|v| match v {
                Vertex::Leg { color, .. } => Some(color.clone()),
                _ => None,
            })
            .collect();
        c.sort();
        c.dedup();
        c
    }

    /// Exponent of each bead when every bead is a pure power `t^k`.
    pub fn bead_exponents(&self) -> Result<Vec<i64>, GraphError> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, e)| match e.bead.as_monomial() {
                Some((c, k)) if num_traits::One::is_one(c) => Ok(k),
                _ => Err(GraphError::NonMonomialBead {
                    edge: i,
                    bead: e.bead.to_string(),
                }),
            })
            .collect()
    }

    /// Component index per vertex, numbered in order of first appearance.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(v) = stack.pop() {
                for &f in self.vertices[v].flags() {
                    let w = self.flag_vertex[partner(f)];
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    /// Connected components as separate graphs, in order of their lowest
    /// vertex; vertex and edge order is preserved within each.
    pub fn split_components(&self) -> Vec<BeadGraph> {
        let (count, comp) = self.components();
        let mut vmap = vec![0; self.vertices.len()];
        let mut verts: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            vmap[v] = verts[c].len();
            verts[c].push(v);
        }
        let mut emap = vec![0; self.edges.len()];
        let mut edges: Vec<Vec<usize>> = vec![Vec::new(); count];
        for e in 0..self.edges.len() {
            let c = comp[self.tail(e)];
            emap[e] = edges[c].len();
            edges[c].push(e);
        }
        let map_flag = |f: Flag| 2 * emap[edge_of(f)] + f % 2;
        (0..count)
            .map(|c| {
                let vertices = verts[c]
                    .iter()
                    .map(|&v| match &self.vertices[v] {
                        Vertex::Trivalent(fs) => Vertex::Trivalent(fs.map(map_flag)),
                        Vertex::Leg { color, flag } => Vertex::Leg {
                            color: color.clone(),
                            flag: map_flag(*flag),
                        },
                    })
                    .collect();
                let es = edges[c].iter().map(|&e| self.edges[e].clone()).collect();
                BeadGraph::new(vertices, es).expect("component of a valid graph")
            })
            .collect()
    }

    /// Spanning forest built from `first` (when given) and then the remaining
    /// edges in index order; loops are never tree edges.
    pub fn spanning_forest(&self, first: Option<usize>) -> Vec<bool> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut tree = vec![false; self.edges.len()];
        let order = first.into_iter().chain((0..self.edges.len()).filter(|&e| Some(e) != first));
        for e in order {
            let (a, b) = (find(&mut parent, self.tail(e)), find(&mut parent, self.head(e)));
            if a != b {
                parent[a] = b;
                tree[e] = true;
            }
        }
        tree
    }

    /// Pushes the exponent cochain `exps` off the spanning forest of
    /// [`BeadGraph::spanning_forest`] by holonomy moves, allowed here at every
    /// vertex. The result vanishes on tree edges and depends only on the class
    /// of `exps` modulo coboundaries.
    pub fn holonomy_normalize(&self, exps: &[i64], first: Option<usize>) -> Vec<i64> {
        let tree = self.spanning_forest(first);
        let n = self.vertices.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in (0..self.edges.len()).filter(|&e| tree[e]) {
            adj[self.tail(e)].push(e);
            adj[self.head(e)].push(e);
        }
        let mut pot: Vec<Option<i64>> = vec![None; n];
        for root in 0..n {
            if pot[root].is_some() {
                continue;
            }
            pot[root] = Some(0);
            let mut stack = vec![root];
            while let Some(x) = stack.pop() {
                let px = pot[x].expect("visited");
                for &e in &adj[x] {
                    let (y, py) = if self.tail(e) == x {
                        (self.head(e), px + exps[e])
                    } else {
                        (self.tail(e), px - exps[e])
                    };
                    if pot[y].is_none() {
                        pot[y] = Some(py);
                        stack.push(y);
                    }
                }
            }
        }
        let pot: Vec<i64> = pot.into_iter().map(|p| p.expect("forest spans")).collect();
        (0..self.edges.len())
            .map(|e| exps[e] + pot[self.tail(e)] - pot[self.head(e)])
            .collect()
    }

    /// Half the number of vertices.
    pub fn vassiliev_degree(&self) -> HalfInteger {
        HalfInteger(self.vertices.len())
    }

    /// Number of degree-three vertices left after iteratively shaving
    /// univalent vertices.
    pub fn euler_degree(&self) -> usize {
        let n = self.vertices.len();
        let mut degree: Vec<usize> = self.vertices.iter().map(|v| v.flags().len()).collect();
        let mut alive = vec![true; n];
        let mut edge_alive = vec![true; self.edges.len()];
        let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] || degree[v] != 1 {
                continue;
            }
            alive[v] = false;
            for &f in self.vertices[v].flags() {
                let e = edge_of(f);
                if !edge_alive[e] {
                    continue;
                }
                edge_alive[e] = false;
                degree[v] -= 1;
                let w = self.flag_vertex[partner(f)];
                degree[w] -= 1;
                if alive[w] && degree[w] == 1 {
                    stack.push(w);
                }
            }
        }
        (0..n).filter(|&v| alive[v] && degree[v] == 3).count()
    }

    /// First Betti number `E - V + components`.
    pub fn loop_degree(&self) -> usize {
        let (c, _) = self.components();
        self.edges.len() + c - self.vertices.len()
    }

    /// Reverses the cyclic order at a trivalent vertex.
    pub fn flip_vertex(&mut self, v: usize) {
        if let Vertex::Trivalent(f) = &mut self.vertices[v] {
            f.swap(1, 2);
        }
    }

    /// Reverses an edge, involuting its bead; the result is the same element
    /// under the orientation reversal relation.
    pub fn reverse_edge(&mut self, e: usize) {
        let swap = |f: Flag| {
            if edge_of(f) == e {
                partner(f)
            } else {
                f
            }
        };
        for v in &mut self.vertices {
            match v {
                Vertex::Trivalent(fs) => fs.iter_mut().for_each(|f| *f = swap(*f)),
                Vertex::Leg { flag, .. } => *flag = swap(*flag),
            }
        }
        self.flag_vertex.swap(tail_flag(e), head_flag(e));
        self.edges[e].bead = self.edges[e].bead.involute();
    }

    /// Applies the holonomy move at a trivalent vertex: every incident edge
    /// has its bead multiplied by `t^power` when it leaves `v` and by
    /// `t^-power` when it enters `v`.
    pub fn holonomy_move(&mut self, v: usize, power: i64) {
        let flags: Vec<Flag> = self.vertices[v].flags().to_vec();
        for f in flags {
            let e = edge_of(f);
            let k = if is_tail(f) { power } else { -power };
            self.edges[e].bead = self.edges[e].bead.shift(k);
        }
    }

    /// Disjoint union; the vertices and edges of `other` come after ours.
    pub fn disjoint_union(&self, other: &BeadGraph) -> BeadGraph {
        let shift = 2 * self.edges.len();
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().map(|v| match v {
            Vertex::Trivalent(f) => Vertex::Trivalent(f.map(|x| x + shift)),
            Vertex::Leg { color, flag } => Vertex::Leg {
                color: color.clone(),
                flag: flag + shift,
            },
        }));
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().cloned());
        BeadGraph::new(vertices, edges).expect("union of valid graphs")
    }

    /// Subdivides edge `e` with a new trivalent vertex carrying a leg of the
    /// given color. The new vertex is oriented (incoming, outgoing, leg); the
    /// bead stays on the incoming segment.
    pub fn attach_leg(&self, e: usize, color: &str) -> BeadGraph {
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        let out_edge = edges.len();
        let leg_edge = out_edge + 1;
        edges.push(Edge::plain());
        edges.push(Edge::plain());
        // the old head flag moves to the outgoing segment
        let old_head = head_flag(e);
        for v in &mut vertices {
            match v {
                Vertex::Trivalent(fs) => fs.iter_mut().for_each(|f| {
                    if *f == old_head {
                        *f = head_flag(out_edge)
                    }
                }),
                Vertex::Leg { flag, .. } => {
                    if *flag == old_head {
                        *flag = head_flag(out_edge)
                    }
                }
            }
        }
        vertices.push(Vertex::Trivalent([
            head_flag(e),
            tail_flag(out_edge),
            tail_flag(leg_edge),
        ]));
        vertices.push(Vertex::Leg {
            color: color.to_string(),
            flag: head_flag(leg_edge),
        });
        BeadGraph::new(vertices, edges).expect("subdivision of a valid graph")
    }

    /// Relabels vertices by `vperm` (old index -> new index) and edges by
    /// `eperm`; optionally reverses edges and rotates cyclic orders. The
    /// result is isomorphic to `self` with the same orientation class.
    pub fn relabel(&self, vperm: &[usize], eperm: &[usize], reverse: &[bool], rotate: &[usize]) -> BeadGraph {
        let map_flag = |f: Flag| {
            let e = edge_of(f);
            let end = if reverse[e] { 1 - f % 2 } else { f % 2 };
            2 * eperm[e] + end
        };
        let mut vertices = vec![Vertex::Trivalent([0, 0, 0]); self.vertices.len()];
        for (v, vert) in self.vertices.iter().enumerate() {
            vertices[vperm[v]] = match vert {
                Vertex::Trivalent(fs) => {
                    let r = rotate[v] % 3;
                    Vertex::Trivalent([
                        map_flag(fs[r]),
                        map_flag(fs[(r + 1) % 3]),
                        map_flag(fs[(r + 2) % 3]),
                    ])
                }
                Vertex::Leg { color, flag } => Vertex::Leg {
                    color: color.clone(),
                    flag: map_flag(*flag),
                },
            };
        }
        let mut edges = vec![Edge::plain(); self.edges.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            edges[eperm[e]] = Edge {
                bead: if reverse[e] {
                    edge.bead.involute()
                } else {
                    edge.bead.clone()
                },
            };
        }
        BeadGraph::new(vertices, edges).expect("relabeling of a valid graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_flags() {
        let e = vec![Edge::plain()];
        assert_eq!(
            BeadGraph::new(vec![Vertex::Trivalent([0, 1, 2])], e.clone()),
            Err(GraphError::NoSuchFlag(2))
        );
        let legs = vec![
            Vertex::Leg { color: "*".into(), flag: 0 },
            Vertex::Leg { color: "*".into(), flag: 0 },
        ];
        assert_eq!(BeadGraph::new(legs, e.clone()), Err(GraphError::FlagReused(0)));
        let one = vec![Vertex::Leg { color: "*".into(), flag: 0 }];
        assert_eq!(BeadGraph::new(one, e), Err(GraphError::FlagUnattached(1)));
    }

    #[test]
    fn vassiliev_examples() {
        assert_eq!(theta().vassiliev_degree(), HalfInteger(2));
        assert_eq!(theta().vassiliev_degree().to_string(), "1");
        for n in 1..6 {
            assert_eq!(wheel(n).vassiliev_degree(), HalfInteger(2 * n));
        }
        assert_eq!(strut(STAR, STAR, LaurentPoly::one()).vassiliev_degree(), HalfInteger(2));
        assert_eq!(vortex([STAR, STAR, STAR]).vassiliev_degree().to_string(), "2");
    }

    #[test]
    fn euler_examples() {
        for n in 1..6 {
            assert_eq!(wheel(n).euler_degree(), 0);
        }
        assert_eq!(theta().euler_degree(), 2);
        // connected trivalent graphs with n + 1 loops have Euler degree 2n
        assert_eq!(theta().loop_degree(), 2);
        assert_eq!(tetrahedron().euler_degree(), 4);
        assert_eq!(tetrahedron().loop_degree(), 3);
        assert_eq!(vortex([STAR, STAR, STAR]).euler_degree(), 0);
        let hairy = theta().attach_leg(0, STAR);
        assert_eq!(hairy.euler_degree(), 2);
    }

    #[test]
    fn loop_degree_examples() {
        assert_eq!(theta().loop_degree(), 2);
        assert_eq!(vortex([STAR, STAR, STAR]).loop_degree(), 0);
        assert_eq!(strut(STAR, STAR, LaurentPoly::one()).loop_degree(), 0);
        for n in 1..6 {
            assert_eq!(wheel(n).loop_degree(), 1);
        }
        assert_eq!(theta().disjoint_union(&theta()).loop_degree(), 4);
    }

    #[test]
    fn reverse_edge_involutes_bead() {
        let mut g = theta_with_beads([LaurentPoly::t(), LaurentPoly::one(), LaurentPoly::one()]);
        let (tail, head) = (g.tail(0), g.head(0));
        g.reverse_edge(0);
        assert_eq!(g.bead(0), &LaurentPoly::t_pow(-1));
        assert_eq!((g.tail(0), g.head(0)), (head, tail));
    }

    #[test]
    fn holonomy_move_signs() {
        let mut g = theta();
        g.holonomy_move(0, 1);
        // all theta edges leave vertex 0
        for e in 0..3 {
            assert_eq!(g.bead(e), &LaurentPoly::t());
        }
        g.holonomy_move(1, 1);
        assert!(g.is_beadless());
    }

    #[test]
    fn handshake() {
        for g in [theta(), tetrahedron(), wheel(4), vortex([STAR, "x", "y"])] {
            assert_eq!(3 * g.num_trivalent() + g.num_legs(), 2 * g.num_edges());
        }
    }
}
