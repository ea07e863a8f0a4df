//! Bead rings of a graph as monomial lattice quotients.
//!
//! Every relation is binomial (monomial = 1), so a ring is the group ring of
//! `Z^generators / L` for a relation lattice `L`. Monomials are exponent
//! vectors and normal forms are taken modulo the Hermite normal form of `L`.
//!
//! * flag ring: one generator per flag, `t_{e_b} t_{e_t} = 1` per edge and the
//!   product of the three flags = 1 per trivalent vertex;
//! * edge ring: one generator per edge, one relation per trivalent vertex with
//!   exponent +1 on edges leaving it and -1 on edges entering it;
//! * H¹ ring: free on the edges outside a spanning forest.

use std::fmt;

use thiserror::Error;

use crate::graphs::{edge_of, head_flag, is_tail, tail_flag, BeadGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("the edge ring needs a legless graph")]
    HasLegs,
    #[error("graph has no trivalent vertex")]
    NoTrivalent,
    #[error("monomial has {got} exponents, presentation has {want} generators")]
    Length { got: usize, want: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    Flag,
    Edge,
    H1,
}

/// Exponent vector over the generators of a presentation.
pub type RingMonomial = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    kind: RingKind,
    generators: Vec<String>,
    relations: Vec<Vec<i64>>,
    /// Hermite basis of the relation lattice: leading entries positive,
    /// entries above each pivot reduced into `[0, pivot)`.
    hermite: Vec<Vec<i64>>,
    /// For H¹: the edges carrying the free generators.
    edges: Vec<usize>,
}

impl RingPresentation {
    fn new(kind: RingKind, generators: Vec<String>, relations: Vec<Vec<i64>>, edges: Vec<usize>) -> Self {
        let hermite = hermite_normal_form(&relations, generators.len());
        Self {
            kind,
            generators,
            relations,
            hermite,
            edges,
        }
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    pub fn hermite_basis(&self) -> &[Vec<i64>] {
        &self.hermite
    }

    /// Rank of the unit group modulo torsion: generators minus relation rank.
    pub fn rank(&self) -> usize {
        self.generators.len() - self.hermite.len()
    }

    fn check(&self, m: &[i64]) -> Result<(), RingError> {
        if m.len() != self.generators.len() {
            return Err(RingError::Length {
                got: m.len(),
                want: self.generators.len(),
            });
        }
        Ok(())
    }

    /// Unique representative of `m` modulo the relation lattice.
    pub fn normal_form(&self, m: &[i64]) -> Result<RingMonomial, RingError> {
        self.check(m)?;
        let mut v = m.to_vec();
        for row in &self.hermite {
            let p = row.iter().position(|&x| x != 0).expect("hermite rows are nonzero");
            let q = v[p].div_euclid(row[p]);
            if q != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= q * r;
                }
            }
        }
        Ok(v)
    }

    pub fn equal(&self, a: &[i64], b: &[i64]) -> Result<bool, RingError> {
        Ok(self.normal_form(a)? == self.normal_form(b)?)
    }

    pub fn multiply(&self, a: &[i64], b: &[i64]) -> Result<RingMonomial, RingError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            RingKind::Flag => "flag",
            RingKind::Edge => "edge",
            RingKind::H1 => "h1",
        };
        writeln!(f, "ring {kind}")?;
        writeln!(f, "generators {}", self.generators.join(" "))?;
        for r in &self.relations {
            let s: Vec<String> = r.iter().map(i64::to_string).collect();
            writeln!(f, "relation {}", s.join(" "))?;
        }
        writeln!(f, "rank {}", self.rank())
    }
}

/// Row Hermite normal form of the lattice spanned by `rows`.
pub fn hermite_normal_form(rows: &[Vec<i64>], width: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut out: Vec<Vec<i128>> = Vec::new();
    for col in 0..width {
        // gather rows with a nonzero entry in this column among the rest
        loop {
            let live: Vec<usize> = (0..m.len()).filter(|&i| m[i][col] != 0).collect();
            if live.len() <= 1 {
                break;
            }
            let best = *live.iter().min_by_key(|&&i| m[i][col].abs()).expect("nonempty");
            for &i in &live {
                if i != best {
                    let q = m[i][col] / m[best][col];
                    let pivot_row = m[best].clone();
                    for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= q * p;
                    }
                }
            }
        }
        if let Some(i) = (0..m.len()).find(|&i| m[i][col] != 0) {
            let mut row = m.swap_remove(i);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(row);
        }
        m.retain(|r| r.iter().any(|&x| x != 0));
    }
    // reduce entries above pivots
    let pivots: Vec<usize> = out.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
    for i in 0..out.len() {
        let (pc, pv) = (pivots[i], out[i][pivots[i]]);
        for j in 0..i {
            let q = out[j][pc].div_euclid(pv);
            if q != 0 {
                let row = out[i].clone();
                for (x, p) in out[j].iter_mut().zip(&row) {
                    *x -= q * p;
                }
            }
        }
    }
    out.into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).expect("hermite entry fits")).collect())
        .collect()
}

fn flag_name(f: usize) -> String {
    if is_tail(f) {
        format!("t{}b", edge_of(f))
    } else {
        format!("t{}t", edge_of(f))
    }
}

/// Flag presentation. Legs are allowed and carry no vertex relation, so the
/// strut gives `Z[t^±1]` and the vortex `Z[t1^±, t2^±, t3^±]/(t1 t2 t3 - 1)`.
pub fn flag_ring(g: &BeadGraph) -> RingPresentation {
    let n = 2 * g.num_edges();
    let mut relations = Vec::new();
    for e in 0..g.num_edges() {
        let mut r = vec![0; n];
        r[tail_flag(e)] = 1;
        r[head_flag(e)] = 1;
        relations.push(r);
    }
    for v in g.vertices() {
        if let Vertex::Trivalent(fs) = v {
            let mut r = vec![0; n];
            for &f in fs {
                r[f] += 1;
            }
            relations.push(r);
        }
    }
    RingPresentation::new(RingKind::Flag, (0..n).map(flag_name).collect(), relations, Vec::new())
}

fn check_trivalent(g: &BeadGraph) -> Result<(), RingError> {
    if !g.is_legless() {
        return Err(RingError::HasLegs);
    }
    if g.num_trivalent() == 0 {
        return Err(RingError::NoTrivalent);
    }
    Ok(())
}

/// Relation of the edge ring at vertex `v`: the holonomy move there.
fn vertex_relation(g: &BeadGraph, v: usize) -> Vec<i64> {
    let mut r = vec![0; g.num_edges()];
    for &f in g.vertices()[v].flags() {
        r[edge_of(f)] += if is_tail(f) { 1 } else { -1 };
    }
    r
}

pub fn edge_ring(g: &BeadGraph) -> Result<RingPresentation, RingError> {
    check_trivalent(g)?;
    let relations = (0..g.num_vertices()).map(|v| vertex_relation(g, v)).collect();
    let generators = (0..g.num_edges()).map(|e| format!("t{e}")).collect();
    Ok(RingPresentation::new(RingKind::Edge, generators, relations, Vec::new()))
}

/// Free presentation on the edges outside the default spanning forest.
pub fn h1_ring(g: &BeadGraph) -> Result<RingPresentation, RingError> {
    check_trivalent(g)?;
    let tree = g.spanning_forest(None);
    let edges: Vec<usize> = (0..g.num_edges()).filter(|&e| !tree[e]).collect();
    let generators = edges.iter().map(|e| format!("h{e}")).collect();
    Ok(RingPresentation::new(RingKind::H1, generators, Vec::new(), edges))
}

fn check_len(m: &[i64], want: usize) -> Result<(), RingError> {
    if m.len() != want {
        return Err(RingError::Length { got: m.len(), want });
    }
    Ok(())
}

/// `t_{e_b} -> t_e`, `t_{e_t} -> t_e^-1`.
pub fn flag_to_edge(m: &[i64], g: &BeadGraph) -> Result<RingMonomial, RingError> {
    check_len(m, 2 * g.num_edges())?;
    Ok((0..g.num_edges()).map(|e| m[tail_flag(e)] - m[head_flag(e)]).collect())
}

/// `t_e -> t_{e_b}`; inverse of [`flag_to_edge`] on normal forms.
pub fn edge_to_flag(m: &[i64], g: &BeadGraph) -> Result<RingMonomial, RingError> {
    check_len(m, g.num_edges())?;
    let mut out = vec![0; 2 * g.num_edges()];
    for (e, &k) in m.iter().enumerate() {
        out[tail_flag(e)] = k;
    }
    Ok(out)
}

/// Class of an edge cochain in H¹: its values after pushing it off the
/// spanning forest.
pub fn edge_to_h1(m: &[i64], g: &BeadGraph) -> Result<RingMonomial, RingError> {
    check_trivalent(g)?;
    check_len(m, g.num_edges())?;
    let normal = g.holonomy_normalize(m, None);
    let tree = g.spanning_forest(None);
    Ok((0..g.num_edges()).filter(|&e| !tree[e]).map(|e| normal[e]).collect())
}

/// The cochain supported off the forest with the given class coordinates.
pub fn h1_to_edge(m: &[i64], g: &BeadGraph) -> Result<RingMonomial, RingError> {
    let h1 = h1_ring(g)?;
    check_len(m, h1.edges.len())?;
    let mut out = vec![0; g.num_edges()];
    for (&e, &k) in h1.edges.iter().zip(m) {
        out[e] = k;
    }
    Ok(out)
}
