//! Clasper schemes and complete contraction.
//!
//! A scheme is a list of vortices (oriented Y pieces with three labelled legs)
//! and a pairing table on leg labels. Legs are ordered by their position in the
//! vortex list; an entry read from leg `a` to leg `b` equals the involution of
//! the entry read from `b` to `a`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::algebra::{normalize, AlgebraError, DiagramElement, Space};
use crate::graphs::{head_flag, tail_flag, BeadGraph, Edge, GraphError, Vertex};
use crate::laurent::{LaurentError, LaurentPoly, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has legs; only trivalent graphs can be broken")]
    HasLegs,
    #[error("odd number of legs ({0})")]
    OddLegs(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vortex {
    pub name: String,
    /// Leg labels in cyclic order.
    pub legs: [String; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClasperScheme {
    vortices: Vec<Vortex>,
    index: HashMap<String, usize>,
    /// Entries keyed `(i, j)` with `i <= j`, read from leg `i` to leg `j`.
    pairing: BTreeMap<(usize, usize), LaurentPoly>,
}

impl ClasperScheme {
    pub fn new(vortices: Vec<Vortex>) -> Result<Self, ContractionError> {
        let mut index = HashMap::new();
        let mut names = HashMap::new();
        for (v, vx) in vortices.iter().enumerate() {
            if names.insert(vx.name.clone(), v).is_some() {
                return Err(ContractionError::Invalid(format!("vortex `{}` listed twice", vx.name)));
            }
            for (slot, l) in vx.legs.iter().enumerate() {
                if index.insert(l.clone(), 3 * v + slot).is_some() {
                    return Err(ContractionError::Invalid(format!("leg `{l}` appears twice")));
                }
            }
        }
        Ok(Self {
            vortices,
            index,
            pairing: BTreeMap::new(),
        })
    }

    pub fn vortices(&self) -> &[Vortex] {
        &self.vortices
    }

    pub fn num_legs(&self) -> usize {
        3 * self.vortices.len()
    }

    pub fn label(&self, leg: usize) -> &str {
        &self.vortices[leg / 3].legs[leg % 3]
    }

    fn leg(&self, label: &str) -> Result<usize, ContractionError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| ContractionError::Invalid(format!("unknown leg `{label}`")))
    }

    /// Sets the entry read from `a` to `b`.
    pub fn set_pair(&mut self, a: &str, b: &str, value: LaurentPoly) -> Result<(), ContractionError> {
        let (i, j) = (self.leg(a)?, self.leg(b)?);
        if i == j && value.involute() != value {
            return Err(ContractionError::Invalid(format!("diagonal entry for `{a}` is not self-conjugate")));
        }
        let (key, v) = if i <= j { ((i, j), value) } else { ((j, i), value.involute()) };
        if v.is_zero() {
            self.pairing.remove(&key);
        } else {
            self.pairing.insert(key, v);
        }
        Ok(())
    }

    /// Entry read from leg index `i` to leg index `j`.
    pub fn entry(&self, i: usize, j: usize) -> LaurentPoly {
        if i <= j {
            self.pairing.get(&(i, j)).cloned().unwrap_or_else(LaurentPoly::zero)
        } else {
            self.entry(j, i).involute()
        }
    }

    pub fn pair(&self, a: &str, b: &str) -> Result<LaurentPoly, ContractionError> {
        Ok(self.entry(self.leg(a)?, self.leg(b)?))
    }

    /// Reverses the cyclic order of one vortex.
    pub fn flip_vortex(&self, v: usize) -> Self {
        let mut vortices = self.vortices.clone();
        vortices[v].legs.swap(1, 2);
        let mut out = Self::new(vortices).expect("same labels");
        for (&(i, j), p) in &self.pairing {
            out.set_pair(self.label(i), self.label(j), p.clone()).expect("labels exist");
        }
        out
    }

    /// Whether every entry is a constant.
    pub fn is_constant(&self) -> bool {
        self.pairing.values().all(|p| p.as_constant().is_some())
    }

    /// Pairing table as a hermitian matrix over legs.
    pub fn pairing_matrix(&self) -> Matrix<LaurentPoly> {
        let n = self.num_legs();
        Matrix::from_fn(n, n, |i, j| self.entry(i, j))
    }
}

/// One vortex per vertex, legs labelled by flag, each edge giving the pair
/// tail leg → head leg with the bead as entry.
pub fn break_graph(g: &BeadGraph) -> Result<ClasperScheme, ContractionError> {
    if !g.is_legless() {
        return Err(ContractionError::HasLegs);
    }
    let vortices = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(v, vert)| {
            let fs = vert.flags();
            Vortex {
                name: format!("v{v}"),
                legs: [format!("f{}", fs[0]), format!("f{}", fs[1]), format!("f{}", fs[2])],
            }
        })
        .collect();
    let mut s = ClasperScheme::new(vortices)?;
    for e in 0..g.num_edges() {
        s.set_pair(&format!("f{}", tail_flag(e)), &format!("f{}", head_flag(e)), g.bead(e).clone())?;
    }
    Ok(s)
}

fn matchings(s: &ClasperScheme, used: &mut Vec<bool>, current: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    let Some(i) = used.iter().position(|&u| !u) else {
        out.push(current.clone());
        return;
    };
    used[i] = true;
    for j in i + 1..used.len() {
        if used[j] || !s.pairing.contains_key(&(i, j)) {
            continue;
        }
        used[j] = true;
        current.push((i, j));
        matchings(s, used, current, out);
        current.pop();
        used[j] = false;
    }
    used[i] = false;
}

/// Perfect matchings of the legs supported on nonzero entries.
pub fn supported_matchings(s: &ClasperScheme) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    matchings(s, &mut vec![false; s.num_legs()], &mut Vec::new(), &mut out);
    out
}

/// The graph glued along a matching, edges oriented from the lower leg with
/// the entry read in that direction as bead.
pub fn glue(s: &ClasperScheme, matching: &[(usize, usize)]) -> BeadGraph {
    let mut flag = vec![0; s.num_legs()];
    let mut edges = Vec::with_capacity(matching.len());
    for (p, &(i, j)) in matching.iter().enumerate() {
        flag[i] = tail_flag(p);
        flag[j] = head_flag(p);
        edges.push(Edge { bead: s.entry(i, j) });
    }
    let vertices = (0..s.vortices.len())
        .map(|v| Vertex::Trivalent([flag[3 * v], flag[3 * v + 1], flag[3 * v + 2]]))
        .collect();
    BeadGraph::new(vertices, edges).expect("matching covers every leg once")
}

/// Sum over all gluings, in A(φ) when every entry is constant and in A(Λ)
/// otherwise. Constant entries multiply the coefficient.
pub fn complete_contraction(s: &ClasperScheme) -> Result<DiagramElement, ContractionError> {
    if s.num_legs() % 2 == 1 {
        return Err(ContractionError::OddLegs(s.num_legs()));
    }
    let space = if s.is_constant() { Space::Phi } else { Space::Lambda };
    let raw: Vec<(BigRational, BeadGraph)> = supported_matchings(s)
        .iter()
        .map(|m| (BigRational::one(), glue(s, m)))
        .collect();
    Ok(normalize(space, &raw)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignAudit {
    pub vortex: usize,
    /// Flipping the vortex negates the contraction.
    pub negated: bool,
    /// Flipping it twice restores the contraction.
    pub involutive: bool,
}

impl SignAudit {
    pub fn passed(&self) -> bool {
        self.negated && self.involutive
    }
}

pub fn contraction_sign_audit(s: &ClasperScheme, vortex: usize) -> Result<SignAudit, ContractionError> {
    let base = complete_contraction(s)?;
    let once = s.flip_vortex(vortex);
    let flipped = complete_contraction(&once)?;
    let twice = complete_contraction(&once.flip_vortex(vortex))?;
    Ok(SignAudit {
        vortex,
        negated: flipped == base.scale(&-BigRational::one()),
        involutive: twice == base,
    })
}

/// The full linking matrix `[[0, I], [I, F]]` of arms and leaves, with `F` the
/// pairing table.
pub fn arm_matrix(s: &ClasperScheme) -> Matrix<LaurentPoly> {
    let k = s.num_legs();
    Matrix::from_fn(2 * k, 2 * k, |r, c| {
        if r >= k && c >= k {
            s.entry(r - k, c - k)
        } else if (r < k && c == r + k) || (r >= k && c + k == r) {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        }
    })
}

pub fn parse_scheme(text: &str) -> Result<ClasperScheme, ContractionError> {
    let err = |line: usize, msg: String| ContractionError::Parse { line, msg };
    let mut vortices = Vec::new();
    let mut pairs: Vec<(usize, String, String, LaurentPoly)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "vortex" => {
                if words.len() != 5 {
                    return Err(err(ln, "expected `vortex NAME L1 L2 L3`".into()));
                }
                vortices.push(Vortex {
                    name: words[1].into(),
                    legs: [words[2].into(), words[3].into(), words[4].into()],
                });
            }
            "pair" => {
                if words.len() < 3 {
                    return Err(err(ln, "expected `pair A B [VALUE]`".into()));
                }
                let value = if words.len() > 3 {
                    words[3..]
                        .join(" ")
                        .parse::<LaurentPoly>()
                        .map_err(|e: LaurentError| err(ln, format!("bad entry: {e}")))?
                } else {
                    LaurentPoly::one()
                };
                pairs.push((ln, words[1].into(), words[2].into(), value));
            }
            other => return Err(err(ln, format!("unknown record `{other}`"))),
        }
    }
    let mut s = ClasperScheme::new(vortices).map_err(|e| err(1, e.to_string()))?;
    let mut seen = std::collections::HashSet::new();
    for (ln, a, b, v) in pairs {
        let (i, j) = (s.leg(&a).map_err(|e| err(ln, e.to_string()))?, s.leg(&b).map_err(|e| err(ln, e.to_string()))?);
        if !seen.insert((i.min(j), i.max(j))) {
            return Err(err(ln, format!("pair `{a}` `{b}` given twice")));
        }
        s.set_pair(&a, &b, v).map_err(|e| err(ln, e.to_string()))?;
    }
    Ok(s)
}

pub fn serialize_scheme(s: &ClasperScheme) -> String {
    let mut out = String::new();
    for v in &s.vortices {
        writeln!(out, "vortex {} {} {} {}", v.name, v.legs[0], v.legs[1], v.legs[2]).expect("write to string");
    }
    for (&(i, j), p) in &s.pairing {
        writeln!(out, "pair {} {} {}", s.label(i), s.label(j), p).expect("write to string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::*;
    use crate::laurent::block_negative_inverse;

    #[test]
    fn break_theta() {
        let s = break_graph(&theta()).unwrap();
        assert_eq!(s.vortices().len(), 2);
        assert_eq!(s.pairing.len(), 3);
        assert!(s.pairing.values().all(|p| p.is_one()));
        let beaded = theta_with_beads([LaurentPoly::t(), LaurentPoly::one(), LaurentPoly::one()]);
        let s = break_graph(&beaded).unwrap();
        assert_eq!(s.pair("f0", "f1").unwrap(), LaurentPoly::t());
        assert_eq!(s.pair("f1", "f0").unwrap(), LaurentPoly::t_pow(-1));
        assert!(matches!(break_graph(&vortex([STAR, STAR, STAR])), Err(ContractionError::HasLegs)));
    }

    #[test]
    fn contract_theta() {
        let beaded = theta_with_beads([LaurentPoly::t(), LaurentPoly::one(), LaurentPoly::one()]);
        let s = break_graph(&beaded).unwrap();
        assert_eq!(supported_matchings(&s).len(), 1);
        let c = complete_contraction(&s).unwrap();
        assert_eq!(c, DiagramElement::from_graph(Space::Lambda, &beaded).unwrap());
        let plain = complete_contraction(&break_graph(&theta()).unwrap()).unwrap();
        assert_eq!(plain.space(), Space::Phi);
        assert_eq!(plain, DiagramElement::from_graph(Space::Phi, &theta()).unwrap());
    }

    #[test]
    fn all_matchings_of_six_legs() {
        let mut s = break_graph(&theta()).unwrap();
        let labels: Vec<String> = (0..6).map(|i| s.label(i).to_string()).collect();
        for i in 0..6 {
            for j in i + 1..6 {
                s.set_pair(&labels[i], &labels[j], LaurentPoly::one()).unwrap();
            }
        }
        assert_eq!(supported_matchings(&s).len(), 15);
    }

    #[test]
    fn zero_scheme() {
        let s = ClasperScheme::new(break_graph(&theta()).unwrap().vortices().to_vec()).unwrap();
        assert!(complete_contraction(&s).unwrap().is_zero());
        let odd = ClasperScheme::new(vec![Vortex {
            name: "a".into(),
            legs: ["x".into(), "y".into(), "z".into()],
        }])
        .unwrap();
        assert_eq!(complete_contraction(&odd), Err(ContractionError::OddLegs(3)));
    }

    #[test]
    fn constant_entries_scale() {
        let mut s = break_graph(&theta()).unwrap();
        s.set_pair("f0", "f1", LaurentPoly::from_int(3)).unwrap();
        s.set_pair("f2", "f3", LaurentPoly::from_int(-2)).unwrap();
        let c = complete_contraction(&s).unwrap();
        let expect = DiagramElement::from_graph(Space::Phi, &theta())
            .unwrap()
            .scale(&BigRational::from_integer((-6).into()));
        assert_eq!(c, expect);
    }

    #[test]
    fn sign_audit_theta() {
        let s = break_graph(&theta()).unwrap();
        for v in 0..2 {
            assert!(contraction_sign_audit(&s, v).unwrap().passed());
        }
    }

    #[test]
    fn transpose_reading() {
        let beaded = theta_with_beads([LaurentPoly::t_pow(2), LaurentPoly::t(), LaurentPoly::one()]);
        let s = break_graph(&beaded).unwrap();
        let mut r = s.clone();
        for e in 0..3 {
            let (a, b) = (format!("f{}", tail_flag(e)), format!("f{}", head_flag(e)));
            let v = s.pair(&b, &a).unwrap();
            r.set_pair(&b, &a, v).unwrap();
        }
        assert_eq!(complete_contraction(&r).unwrap(), complete_contraction(&s).unwrap());
    }

    #[test]
    fn arm_matrix_inverse_gives_pairing() {
        let beaded = theta_with_beads([LaurentPoly::t(), "1 - t".parse().unwrap(), LaurentPoly::one()]);
        let s = break_graph(&beaded).unwrap();
        let inv = block_negative_inverse(&arm_matrix(&s)).unwrap();
        let k = s.num_legs();
        assert_eq!(inv.block(0, 0, k, k), s.pairing_matrix());
    }

    #[test]
    fn scheme_text() {
        let text = "vortex A a1 a2 a3\nvortex B b1 b2 b3\npair a1 b1 t\npair b2 a2\npair a3 b3 1 - t^-1\n";
        let s = parse_scheme(text).unwrap();
        assert_eq!(s.pair("a2", "b2").unwrap(), LaurentPoly::one());
        assert_eq!(s.pair("b1", "a1").unwrap(), LaurentPoly::t_pow(-1));
        assert_eq!(parse_scheme(&serialize_scheme(&s)).unwrap(), s);
        assert!(matches!(
            parse_scheme("vortex A a b c\npair a q\n"),
            Err(ContractionError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_scheme("vortex A a b c\nvortex B a d e\n"),
            Err(ContractionError::Parse { .. })
        ));
    }
}
