//! Generator enumeration and IHX relations.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_rational::BigRational;
use num_traits::One;

use crate::graphs::{canonicalize_with, head_flag, tail_flag, BeadGraph, CanonOptions, CanonicalKey, Edge, GraphError, TreePolicy, Vertex, STAR};
use crate::laurent::LaurentPoly;

use super::{AlgebraError, DiagramElement, Space};

/// Largest Euler degree accepted by the enumerators.
pub const MAX_EULER: usize = 8;

/// Multigraphs (loops and parallel edges allowed) with `trivalent` vertices
/// of degree 3 and `legs` `*`-colored legs, covering every isomorphism class.
///
/// Vertices are numbered in the order they are reached from the lowest
/// unfinished vertex, and each vertex picks its partners in nondecreasing
/// order, which removes most duplicate labelings. Edges run from the vertex
/// that chose them to the partner.
pub fn multigraphs(trivalent: usize, legs: usize) -> Vec<BeadGraph> {
    let mut st = Growth {
        degree: Vec::new(),
        rem: Vec::new(),
        edges: Vec::new(),
        tri_left: trivalent,
        legs_left: legs,
        out: Vec::new(),
    };
    st.step(usize::MAX, 0);
    st.out
}

struct Growth {
    degree: Vec<usize>,
    rem: Vec<usize>,
    edges: Vec<(usize, usize)>,
    tri_left: usize,
    legs_left: usize,
    out: Vec<BeadGraph>,
}

impl Growth {
    fn kinds(&self) -> Vec<usize> {
        let mut k = Vec::new();
        if self.tri_left > 0 {
            k.push(3);
        }
        if self.legs_left > 0 {
            k.push(1);
        }
        k
    }

    fn push_vertex(&mut self, d: usize) {
        self.degree.push(d);
        self.rem.push(d);
        if d == 3 {
            self.tri_left -= 1;
        } else {
            self.legs_left -= 1;
        }
    }

    fn pop_vertex(&mut self) {
        let d = self.degree.pop().expect("vertex to pop");
        self.rem.pop();
        if d == 3 {
            self.tri_left += 1;
        } else {
            self.legs_left += 1;
        }
    }

    fn link(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
        self.rem[a] -= 1;
        self.rem[b] -= 1;
    }

    fn unlink(&mut self) {
        let (a, b) = self.edges.pop().expect("edge to pop");
        self.rem[a] += 1;
        self.rem[b] += 1;
    }

    fn step(&mut self, cur: usize, min_partner: usize) {
        let Some(c) = self.rem.iter().position(|&r| r > 0) else {
            if self.tri_left == 0 && self.legs_left == 0 {
                self.out.push(self.build());
                return;
            }
            // start a new component
            for d in self.kinds() {
                self.push_vertex(d);
                self.step(usize::MAX, 0);
                self.pop_vertex();
            }
            return;
        };
        let lo = if c == cur { min_partner } else { c };
        let n = self.degree.len();
        for j in lo..n {
            if j == c {
                if self.rem[c] >= 2 {
                    self.link(c, c);
                    self.step(c, c);
                    self.unlink();
                }
            } else if self.rem[j] > 0 {
                self.link(c, j);
                self.step(c, j);
                self.unlink();
            }
        }
        for d in self.kinds() {
            self.push_vertex(d);
            self.link(c, n);
            self.step(c, n);
            self.unlink();
            self.pop_vertex();
        }
    }

    fn build(&self) -> BeadGraph {
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); self.degree.len()];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            at[a].push(tail_flag(e));
            at[b].push(head_flag(e));
        }
        let vertices = at
            .into_iter()
            .map(|f| match f.len() {
                3 => Vertex::Trivalent([f[0], f[1], f[2]]),
                _ => Vertex::Leg {
                    color: STAR.to_string(),
                    flag: f[0],
                },
            })
            .collect();
        BeadGraph::new(vertices, vec![Edge::plain(); self.edges.len()]).expect("grown multigraph is valid")
    }
}

/// Canonical beadless trivalent graphs on `vertices` vertices, including
/// those that vanish by AS. Sorted by canonical key.
pub fn trivalent_shapes(vertices: usize) -> Result<Vec<BeadGraph>, AlgebraError> {
    let mut seen = BTreeMap::new();
    for g in multigraphs(vertices, 0) {
        let c = canonicalize_with(&g, &CanonOptions::default())?;
        seen.entry(c.key).or_insert(c.graph);
    }
    Ok(seen.into_values().collect())
}

fn check_euler(euler: usize) -> Result<(), AlgebraError> {
    if euler > MAX_EULER {
        return Err(AlgebraError::Bound(format!("euler degree {euler} exceeds the bound {MAX_EULER}")));
    }
    Ok(())
}

/// All exponent vectors in `[-w, w]^edges`, optionally with one edge pinned
/// at zero.
fn window_assignments(edges: usize, w: i64, pinned: Option<usize>) -> impl Iterator<Item = Vec<i64>> {
    let free: Vec<usize> = (0..edges).filter(|&e| Some(e) != pinned).collect();
    let base = (2 * w + 1) as u64;
    let total = base.pow(free.len() as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![0; edges];
        for &e in &free {
            v[e] = (code % base) as i64 - w;
            code /= base;
        }
        v
    })
}

fn with_exponents(g: &BeadGraph, exps: &[i64]) -> BeadGraph {
    let mut h = g.clone();
    for (e, &k) in exps.iter().enumerate() {
        h.set_bead(e, LaurentPoly::t_pow(k));
    }
    h
}

/// Holonomy classes of bead colorings of `shape` that have a representative
/// with every exponent in `[-w, w]`, as graphs with those exponents.
fn window_classes(shape: &BeadGraph, w: i64, pinned: Option<usize>) -> Vec<BeadGraph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for exps in window_assignments(shape.num_edges(), w, pinned) {
        if seen.insert(shape.holonomy_normalize(&exps, pinned)) {
            out.push(with_exponents(shape, &exps));
        }
    }
    out
}

/// Canonical nonvanishing generators of the given Euler degree.
///
/// For A(Λ) these are the holonomy classes admitting a representative with
/// all bead exponents in `[-window, window]`. A(*) additionally needs a
/// Vassiliev degree bound and returns generators of every Vassiliev degree up
/// to it.
pub fn generators(
    space: Space,
    euler: usize,
    window: i64,
    max_vassiliev: Option<usize>,
    policy: TreePolicy,
) -> Result<Vec<(CanonicalKey, BeadGraph)>, AlgebraError> {
    check_euler(euler)?;
    let opts = space.canon_options(policy);
    let mut found: BTreeMap<CanonicalKey, BeadGraph> = BTreeMap::new();
    let mut keep = |g: &BeadGraph| -> Result<(), GraphError> {
        let c = canonicalize_with(g, &opts)?;
        if c.sign != 0 {
            found.entry(c.key).or_insert(c.graph);
        }
        Ok(())
    };
    match space {
        Space::Phi | Space::Lambda => {
            if euler % 2 == 1 {
                return Ok(Vec::new());
            }
            for shape in trivalent_shapes(euler)? {
                if space == Space::Phi {
                    keep(&shape)?;
                } else {
                    for g in window_classes(&shape, window.max(0), None) {
                        keep(&g)?;
                    }
                }
            }
        }
        Space::Star => {
            let max = max_vassiliev.ok_or_else(|| AlgebraError::Bound("A(*) needs a Vassiliev degree bound".into()))?;
            for d in 0..=max {
                for k in euler..=2 * d {
                    let m = 2 * d - k;
                    if (3 * k + m) % 2 == 1 {
                        continue;
                    }
                    let mut local: BTreeSet<CanonicalKey> = BTreeSet::new();
                    for g in multigraphs(k, m) {
                        if g.euler_degree() != euler {
                            continue;
                        }
                        let c = canonicalize_with(&g, &opts)?;
                        if c.sign != 0 && local.insert(c.key.clone()) {
                            found.entry(c.key).or_insert(c.graph);
                        }
                    }
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// The three graphs of the IHX relation at edge `e`, or `None` when `e` is
/// not internal (a loop or an edge ending in a leg).
///
/// A holonomy move at the tail first makes the bead of `e` trivial; all other
/// beads ride along with their flags. Rotating the tail to `(e, B, A)` and the
/// head to `(e, C, D)`, the graphs are
/// I = `(e, B, A)(e, C, D)`, H = `(e, A, C)(e, D, B)`, X = `(e, B, C)(e, D, A)`,
/// and the relation is I − H + X.
pub fn ihx_triple(g: &BeadGraph, e: usize) -> Result<Option<[BeadGraph; 3]>, GraphError> {
    let (u, v) = (g.tail(e), g.head(e));
    if u == v || !g.vertices()[u].is_trivalent() || !g.vertices()[v].is_trivalent() {
        return Ok(None);
    }
    let k = match g.bead(e).as_monomial() {
        Some((c, k)) if c.is_one() => k,
        _ => {
            return Err(GraphError::NonMonomialBead {
                edge: e,
                bead: g.bead(e).to_string(),
            })
        }
    };
    let mut g = g.clone();
    g.holonomy_move(u, -k);
    let rotated = |w: usize, f: usize| {
        let fs = g.vertices()[w].flags();
        let i = fs.iter().position(|&x| x == f).expect("flag at vertex");
        [fs[i], fs[(i + 1) % 3], fs[(i + 2) % 3]]
    };
    let [eu, b, a] = rotated(u, tail_flag(e));
    let [ev, c, d] = rotated(v, head_flag(e));
    let with = |fu: [usize; 3], fv: [usize; 3]| {
        let mut vs = g.vertices().to_vec();
        vs[u] = Vertex::Trivalent(fu);
        vs[v] = Vertex::Trivalent(fv);
        BeadGraph::new(vs, g.edges().to_vec()).expect("rewiring keeps flags")
    };
    Ok(Some([
        with([eu, b, a], [ev, c, d]),
        with([eu, a, c], [ev, d, b]),
        with([eu, b, c], [ev, d, a]),
    ]))
}

fn relation(space: Space, policy: TreePolicy, triple: &[BeadGraph; 3]) -> Result<DiagramElement, AlgebraError> {
    let one = BigRational::one();
    let raw = [
        (one.clone(), triple[0].clone()),
        (-one.clone(), triple[1].clone()),
        (one, triple[2].clone()),
    ];
    super::normalize_with(space, policy, &raw)
}

/// IHX relations among the generators of [`generators`], normalized, nonzero
/// and without duplicates.
///
/// For A(Λ) each relation comes from a representative whose beads all lie in
/// the window with the contracted edge carrying bead 1, so every term is again
/// a windowed class.
pub fn ihx_generators(
    space: Space,
    euler: usize,
    window: i64,
    max_vassiliev: Option<usize>,
    policy: TreePolicy,
) -> Result<Vec<DiagramElement>, AlgebraError> {
    check_euler(euler)?;
    let mut seen: BTreeSet<Vec<(CanonicalKey, BigRational)>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut emit = |r: DiagramElement| {
        if r.is_zero() {
            return;
        }
        let sig: Vec<(CanonicalKey, BigRational)> = r.terms().map(|(k, t)| (k.clone(), t.coef.clone())).collect();
        if seen.insert(sig) {
            out.push(r);
        }
    };
    match space {
        Space::Phi | Space::Star => {
            for (_, g) in generators(space, euler, window, max_vassiliev, policy)? {
                for e in 0..g.num_edges() {
                    if let Some(t) = ihx_triple(&g, e)? {
                        emit(relation(space, policy, &t)?);
                    }
                }
            }
        }
        Space::Lambda => {
            if euler % 2 == 1 {
                return Ok(Vec::new());
            }
            for shape in trivalent_shapes(euler)? {
                for e in 0..shape.num_edges() {
                    if shape.tail(e) == shape.head(e) {
                        continue;
                    }
                    for g in window_classes(&shape, window.max(0), Some(e)) {
                        if let Some(t) = ihx_triple(&g, e)? {
                            emit(relation(space, policy, &t)?);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
