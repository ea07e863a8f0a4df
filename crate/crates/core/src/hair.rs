//! The hair map A(Λ) → A(*): a bead `t^k` becomes `exp(k h)` where `h^n`
//! stands for `n` new `*` legs along the edge.

use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{normalize, AlgebraError, DiagramElement, Space};
use crate::graphs::{BeadGraph, HalfInteger, STAR};
use crate::laurent::{Involution, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HairError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("hair map needs an element of A(Lambda), got {0}")]
    WrongSpace(Space),
    #[error("bead {bead} on edge {edge} is not a monomial")]
    NonMonomial { edge: usize, bead: String },
    #[error("graph of degree {degree} exceeds the truncation {max}")]
    AboveTruncation { degree: HalfInteger, max: usize },
}

/// Power series in `h` truncated after `h^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HairSeries {
    coeffs: Vec<BigRational>,
}

impl HairSeries {
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = BigRational::one();
        Self { coeffs }
    }

    /// `exp(k h)`: coefficient `k^n / n!` on `h^n`.
    pub fn exp(k: i64, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = BigRational::one();
        let k = BigRational::from_integer(k.into());
        for n in 0..=order {
            coeffs.push(c.clone());
            c = c * &k / BigRational::from_integer(BigInt::from(n + 1));
        }
        Self { coeffs }
    }

    /// Image of a Laurent polynomial, linearly in its monomials.
    pub fn from_laurent(p: &LaurentPoly, order: usize) -> Self {
        let mut out = Self {
            coeffs: vec![BigRational::zero(); order + 1],
        };
        for (k, c) in p.terms() {
            let e = Self::exp(k, order);
            for (o, x) in out.coeffs.iter_mut().zip(&e.coeffs) {
                *o += c * x;
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Constant term; agrees with the augmentation of the source bead.
    pub fn augment(&self) -> &BigRational {
        &self.coeffs[0]
    }
}

impl Mul for &HairSeries {
    type Output = HairSeries;
    fn mul(self, rhs: &HairSeries) -> HairSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        HairSeries { coeffs }
    }
}

impl Involution for HairSeries {
    /// `h -> -h`, matching `t -> t^-1`.
    fn involute(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        Self { coeffs }
    }
}

/// Attaches `n` legs along edge `e` from tail to head; returns the graph and
/// the indices of all segments that replaced `e`.
fn attach_legs(g: &BeadGraph, e: usize, n: usize) -> BeadGraph {
    let mut h = g.clone();
    let mut seg = e;
    for _ in 0..n {
        h = h.attach_leg(seg, STAR);
        // the outgoing segment is the first of the two new edges
        seg = h.num_edges() - 2;
    }
    h
}

/// Expands every edge of `g` by its series, truncating at Vassiliev degree
/// `max_vassiliev`. Output graphs are beadless.
pub fn hair_expand_series(g: &BeadGraph, series: &[HairSeries], max_vassiliev: usize) -> Result<Vec<(BigRational, BeadGraph)>, HairError> {
    let degree = g.vassiliev_degree();
    if degree.doubled() > 2 * max_vassiliev {
        return Err(HairError::AboveTruncation {
            degree,
            max: max_vassiliev,
        });
    }
    let budget = (2 * max_vassiliev - degree.doubled()) / 2;
    // leg counts per edge with total at most the budget
    let mut plans: Vec<(BigRational, Vec<usize>)> = vec![(BigRational::one(), Vec::new())];
    for s in series.iter().take(g.num_edges()) {
        let mut next = Vec::new();
        for (c, plan) in &plans {
            let used: usize = plan.iter().sum();
            for n in 0..=(budget - used).min(s.order()) {
                if s.coeff(n).is_zero() {
                    continue;
                }
                let mut p = plan.clone();
                p.push(n);
                next.push((c * s.coeff(n), p));
            }
        }
        plans = next;
    }
    let mut plain = g.clone();
    for e in 0..g.num_edges() {
        plain.set_bead(e, LaurentPoly::one());
    }
    let mut out = Vec::with_capacity(plans.len());
    for (c, plan) in plans {
        let mut h = plain.clone();
        for (e, &n) in plan.iter().enumerate() {
            h = attach_legs(&h, e, n);
        }
        out.push((c, h));
    }
    Ok(out)
}

/// Hair expansion of a single graph with monomial beads.
pub fn hair_expand(g: &BeadGraph, max_vassiliev: usize) -> Result<Vec<(BigRational, BeadGraph)>, HairError> {
    let mut series = Vec::with_capacity(g.num_edges());
    for e in 0..g.num_edges() {
        let k = match g.bead(e).as_monomial() {
            Some((c, k)) if c.is_one() => k,
            _ => {
                return Err(HairError::NonMonomial {
                    edge: e,
                    bead: g.bead(e).to_string(),
                })
            }
        };
        series.push(HairSeries::exp(k, max_vassiliev));
    }
    hair_expand_series(g, &series, max_vassiliev)
}

/// The hair map on elements of A(Λ), normalized in A(*).
pub fn hair_map(e: &DiagramElement, max_vassiliev: usize) -> Result<DiagramElement, HairError> {
    if e.space() != Space::Lambda {
        return Err(HairError::WrongSpace(e.space()));
    }
    let mut raw = Vec::new();
    for (c, g) in e.to_raw() {
        for (k, h) in hair_expand(&g, max_vassiliev)? {
            raw.push((&c * k, h));
        }
    }
    Ok(normalize(Space::Star, &raw)?)
}

/// Hair map of an arbitrary graph with monomial beads (legs allowed),
/// normalized in A(*).
pub fn hair_graph(g: &BeadGraph, max_vassiliev: usize) -> Result<DiagramElement, HairError> {
    Ok(normalize(Space::Star, &hair_expand(g, max_vassiliev)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exp_coefficients() {
        let s = HairSeries::exp(-1, 3);
        assert_eq!(s.coeffs(), &[q(1, 1), q(-1, 1), q(1, 2), q(-1, 6)]);
        let two = HairSeries::exp(2, 2);
        assert_eq!(two.coeffs(), &[q(1, 1), q(2, 1), q(2, 1)]);
    }

    #[test]
    fn series_multiplicative() {
        for (a, b) in [(1, 2), (-3, 1), (0, 4), (-2, -2)] {
            assert_eq!(&HairSeries::exp(a, 5) * &HairSeries::exp(b, 5), HairSeries::exp(a + b, 5));
        }
        let p: LaurentPoly = "t + 2*t^-1".parse().unwrap();
        assert_eq!(HairSeries::from_laurent(&p, 4).involute(), HairSeries::from_laurent(&p.involute(), 4));
        assert_eq!(HairSeries::from_laurent(&p, 4).augment(), &p.augment());
    }

    #[test]
    fn beadless_is_fixed() {
        let out = hair_expand(&theta(), 3).unwrap();
        assert_eq!(out, vec![(q(1, 1), theta())]);
    }

    #[test]
    fn strut_with_bead() {
        let s = strut("x", "y", LaurentPoly::t());
        let out = hair_expand(&s, 3).unwrap();
        assert_eq!(out.len(), 3);
        let coefs: Vec<_> = out.iter().map(|(c, _)| c.clone()).collect();
        assert_eq!(coefs, vec![q(1, 1), q(1, 1), q(1, 2)]);
        assert_eq!(out[1].1.num_legs(), 3);
        assert_eq!(out[2].1.num_legs(), 4);
        for (_, g) in &out {
            assert!(g.is_beadless());
            assert_eq!(g.euler_degree(), 0);
        }
    }

    #[test]
    fn inverse_bead_sign() {
        let s = strut("x", "y", LaurentPoly::t_pow(-1));
        let out = hair_expand(&s, 2).unwrap();
        assert_eq!(out[1].0, q(-1, 1));
    }

    #[test]
    fn legs_follow_edge_orientation() {
        let s = strut("x", "y", LaurentPoly::t());
        let (_, g) = &hair_expand(&s, 3).unwrap()[2];
        // walking from the x leg: the path visits the two new vertices in
        // attachment order and ends at y
        let x = g.vertices().iter().position(|v| matches!(v, Vertex::Leg { color, .. } if color == "x")).unwrap();
        let e0 = edge_of(g.vertices()[x].flags()[0]);
        let w1 = g.head(e0);
        assert_eq!(g.vertices()[w1].flags()[0], head_flag(e0));
    }

    #[test]
    fn rejects_bad_input() {
        let g = theta_with_beads(["1 + t".parse().unwrap(), LaurentPoly::one(), LaurentPoly::one()]);
        assert!(matches!(hair_expand(&g, 2), Err(HairError::NonMonomial { .. })));
        assert!(matches!(hair_expand(&tetrahedron(), 1), Err(HairError::AboveTruncation { .. })));
        let phi = DiagramElement::from_graph(Space::Phi, &theta()).unwrap();
        assert!(matches!(hair_map(&phi, 2), Err(HairError::WrongSpace(_))));
    }

    #[test]
    fn theta_hair_degrees() {
        let g = theta_with_beads([LaurentPoly::t(), LaurentPoly::one(), LaurentPoly::one()]);
        let e = DiagramElement::from_graph(Space::Lambda, &g).unwrap();
        let h = hair_map(&e, 3).unwrap();
        for (_, t) in h.terms() {
            assert_eq!(t.graph.euler_degree(), 2);
            assert!(t.graph.vassiliev_degree() >= HalfInteger(2));
        }
    }
}
