//! The diagram spaces A(*), A(φ) and A(Λ).
//!
//! Elements are rational combinations of canonical graphs. Normalization
//! applies linearity in the beads, orientation reversal, holonomy (for A(Λ)),
//! AS and graph automorphisms; IHX is handled by [`Quotient`].

mod enumerate;
mod format;
mod quotient;

pub use enumerate::{generators, ihx_generators, ihx_triple, multigraphs, trivalent_shapes};
pub use format::{parse_element, serialize_element};
pub use quotient::{graded_dimension, Quotient, QuotientOptions};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graphs::{automorphisms, canonicalize_with, edge_of, is_tail, tail_flag, BeadGraph, CanonOptions, CanonicalKey, GraphError, TreePolicy};
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cannot combine elements of {0} and {1}")]
    MixedSpaces(Space, Space),
    #[error("graph does not belong to {space}: {reason}")]
    WrongSpace { space: Space, reason: String },
    #[error("term outside the computed generator set: {0}")]
    OutsideBasis(String),
    #[error("euler degree {got} does not match the requested {want}")]
    Degree { got: usize, want: usize },
    #[error("{0}")]
    Bound(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Space {
    /// Unitrivalent, beadless.
    Star,
    /// Trivalent, beadless.
    Phi,
    /// Trivalent with Laurent beads, modulo holonomy.
    Lambda,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::Star => "star",
            Space::Phi => "phi",
            Space::Lambda => "lambda",
        }
    }

    /// Checks a graph with monomial beads against the space constraints.
    pub fn admits(self, g: &BeadGraph) -> Result<(), AlgebraError> {
        let fail = |reason: &str| {
            Err(AlgebraError::WrongSpace {
                space: self,
                reason: reason.to_string(),
            })
        };
        match self {
            Space::Star if !g.is_beadless() => fail("beads must all be 1"),
            Space::Phi if !g.is_beadless() => fail("beads must all be 1"),
            Space::Phi | Space::Lambda if !g.is_legless() => fail("graph has legs"),
            _ => Ok(()),
        }
    }

    pub fn canon_options(self, policy: TreePolicy) -> CanonOptions {
        match self {
            Space::Lambda => CanonOptions::with_holonomy(policy),
            _ => CanonOptions::default(),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Star => "A(*)",
            Space::Phi => "A(phi)",
            Space::Lambda => "A(Lambda)",
        })
    }
}

impl FromStr for Space {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "star" | "*" => Ok(Space::Star),
            "phi" => Ok(Space::Phi),
            "lambda" => Ok(Space::Lambda),
            _ => Err(format!("unknown space `{s}` (expected star, phi or lambda)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub graph: BeadGraph,
    pub coef: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramElement {
    space: Space,
    policy: TreePolicy,
    terms: BTreeMap<CanonicalKey, Term>,
}

/// Splits every bead into its monomials, returning monomial-bead graphs with
/// their coefficients.
pub fn expand_beads(g: &BeadGraph) -> Vec<(BigRational, BeadGraph)> {
    let mut out = vec![(BigRational::one(), g.clone())];
    for e in 0..g.num_edges() {
        let bead = g.bead(e);
        if bead.as_monomial().is_some_and(|(c, _)| c.is_one()) {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * bead.num_terms());
        for (c, h) in &out {
            for (k, a) in bead.terms() {
                let mut h = h.clone();
                h.set_bead(e, LaurentPoly::t_pow(k));
                next.push((c * a, h));
            }
        }
        out = next;
    }
    out
}

impl DiagramElement {
    pub fn zero(space: Space) -> Self {
        Self::zero_with(space, TreePolicy::default())
    }

    pub fn zero_with(space: Space, policy: TreePolicy) -> Self {
        Self {
            space,
            policy,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_graph(space: Space, g: &BeadGraph) -> Result<Self, AlgebraError> {
        normalize(space, &[(BigRational::one(), g.clone())])
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn policy(&self) -> TreePolicy {
        self.policy
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalKey, &Term)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &CanonicalKey) -> BigRational {
        self.terms.get(key).map_or_else(BigRational::zero, |t| t.coef.clone())
    }

    /// Adds `coef` times a graph with monomial beads.
    pub fn add_graph(&mut self, coef: &BigRational, g: &BeadGraph) -> Result<(), AlgebraError> {
        if coef.is_zero() {
            return Ok(());
        }
        for (c, h) in expand_beads(g) {
            self.space.admits(&h)?;
            let form = canonicalize_with(&h, &self.space.canon_options(self.policy))?;
            if form.sign == 0 {
                continue;
            }
            let c = c * coef * BigRational::from_integer(form.sign.into());
            self.add_term(form.key, form.graph, c);
        }
        Ok(())
    }

    fn add_term(&mut self, key: CanonicalKey, graph: BeadGraph, coef: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                if !coef.is_zero() {
                    v.insert(Term { graph, coef });
                }
            }
            Entry::Occupied(mut o) => {
                o.get_mut().coef += coef;
                if o.get().coef.is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.space != other.space {
            return Err(AlgebraError::MixedSpaces(self.space, other.space));
        }
        Ok(())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &BigRational, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        if other.policy == self.policy {
            for (k, t) in &other.terms {
                out.add_term(k.clone(), t.graph.clone(), c * &t.coef);
            }
        } else {
            for t in other.terms.values() {
                out.add_graph(&(c * &t.coef), &t.graph)?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add_scaled(&BigRational::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add_scaled(&-BigRational::one(), other)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero_with(self.space, self.policy);
        }
        let mut out = self.clone();
        for t in out.terms.values_mut() {
            t.coef *= c;
        }
        out
    }

    /// Re-normalizes under another holonomy tree policy.
    pub fn with_policy(&self, policy: TreePolicy) -> Result<Self, AlgebraError> {
        let mut out = Self::zero_with(self.space, policy);
        for t in self.terms.values() {
            out.add_graph(&t.coef, &t.graph)?;
        }
        Ok(out)
    }

    /// Euler degree shared by all terms, if homogeneous.
    pub fn euler_degree(&self) -> Option<usize> {
        let mut degs = self.terms.values().map(|t| t.graph.euler_degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// The combination as raw graphs, for feeding into another map.
    pub fn to_raw(&self) -> Vec<(BigRational, BeadGraph)> {
        self.terms.values().map(|t| (t.coef.clone(), t.graph.clone())).collect()
    }
}

pub fn normalize(space: Space, raw: &[(BigRational, BeadGraph)]) -> Result<DiagramElement, AlgebraError> {
    normalize_with(space, TreePolicy::default(), raw)
}

pub fn normalize_with(space: Space, policy: TreePolicy, raw: &[(BigRational, BeadGraph)]) -> Result<DiagramElement, AlgebraError> {
    let mut out = DiagramElement::zero_with(space, policy);
    for (c, g) in raw {
        out.add_graph(c, g)?;
    }
    Ok(out)
}

/// Images of `g` under the automorphisms of its underlying beadless graph:
/// each automorphism permutes the beads (involuting those on edges whose
/// direction it reverses). Every image equals `sign` times `g` in A(Λ).
pub fn bead_orbit(g: &BeadGraph) -> Result<Vec<(i8, BeadGraph)>, AlgebraError> {
    let mut shape = g.clone();
    for e in 0..shape.num_edges() {
        shape.set_bead(e, LaurentPoly::one());
    }
    let mut out: Vec<(i8, BeadGraph)> = Vec::new();
    for aut in automorphisms(&shape, &CanonOptions::default())? {
        let mut h = g.clone();
        for e in 0..g.num_edges() {
            let image = aut.flag_map[tail_flag(e)];
            let bead = if is_tail(image) {
                g.bead(e).clone()
            } else {
                g.bead(e).involute()
            };
            h.set_bead(edge_of(image), bead);
        }
        if !out.iter().any(|(_, x)| x == &h) {
            out.push((aut.sign, h));
        }
    }
    Ok(out)
}

/// Coinvariants of the automorphism action on bead labelings: the average of
/// the signed orbit, which normalizes to the same element as `g`.
pub fn coinvariant(g: &BeadGraph) -> Result<DiagramElement, AlgebraError> {
    let orbit = bead_orbit(g)?;
    let w = BigRational::new(1.into(), (orbit.len() as i64).into());
    let raw: Vec<(BigRational, BeadGraph)> = orbit
        .into_iter()
        .map(|(s, h)| (&w * BigRational::from_integer(s.into()), h))
        .collect();
    normalize(Space::Lambda, &raw)
}
