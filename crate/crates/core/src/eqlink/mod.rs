//! Linking numbers of two-component null links in the complement of the axis,
//! ordinary and lifted to the infinite cyclic cover.
//!
//! A component is a cyclic list of arcs. Each arc carries the signed number of
//! times it crosses the cut ray (counterclockwise = +1); the lift index of an
//! arc is the sum of the steps before it, counted from the basepoint arc.

mod axioms;
mod format;
mod generate;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::laurent::LaurentPoly;

pub use axioms::{run_axioms, AxiomCheck, AxiomReport};
pub use format::{parse_diagram, serialize_diagram};
pub use generate::{hopf, random_diagram, unlink, DiagramKind, GeneratorOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcRef {
    pub component: usize,
    pub arc: usize,
}

impl ArcRef {
    pub fn new(component: usize, arc: usize) -> Self {
        Self { component, arc }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    /// Ray intersections along each arc.
    pub steps: Vec<i64>,
    pub basepoint: usize,
}

impl Component {
    pub fn new(name: &str, steps: Vec<i64>) -> Self {
        Self {
            name: name.into(),
            steps,
            basepoint: 0,
        }
    }

    pub fn winding(&self) -> i64 {
        self.steps.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub over: ArcRef,
    pub under: ArcRef,
    /// +1 for a right-handed crossing.
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnnularDiagram {
    pub components: Vec<Component>,
    pub crossings: Vec<Crossing>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateName(String),
    EmptyComponent(String),
    BasepointOutOfRange { component: String, basepoint: usize },
    UnknownComponent { crossing: usize, component: usize },
    ArcOutOfRange { crossing: usize, component: String, arc: usize },
    SameArc { crossing: usize },
    BadSign { crossing: usize, sign: i8 },
    NotNull { component: String, winding: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateName(n) => write!(f, "component name `{n}` used twice"),
            Violation::EmptyComponent(n) => write!(f, "component `{n}` has no arcs"),
            Violation::BasepointOutOfRange { component, basepoint } => {
                write!(f, "basepoint {basepoint} of `{component}` is not an arc")
            }
            Violation::UnknownComponent { crossing, component } => {
                write!(f, "crossing {crossing} refers to missing component {component}")
            }
            Violation::ArcOutOfRange { crossing, component, arc } => {
                write!(f, "crossing {crossing} refers to missing arc {arc} of `{component}`")
            }
            Violation::SameArc { crossing } => write!(f, "crossing {crossing} uses one arc twice"),
            Violation::BadSign { crossing, sign } => write!(f, "crossing {crossing} has sign {sign}"),
            Violation::NotNull { component, winding } => {
                write!(f, "component `{component}` winds {winding} times around the axis")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EqLinkError {
    #[error("invalid diagram: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("no component named `{0}`")]
    UnknownComponent(String),
    #[error("linking needs two different components, got `{0}` twice")]
    SameComponent(String),
    #[error("cannot split: {0}")]
    Split(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Equivariant linking number, a Laurent polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqLinkValue {
    pub value: LaurentPoly,
}

impl fmt::Display for EqLinkValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

pub fn validate(d: &AnnularDiagram) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut names = HashSet::new();
    for c in &d.components {
        if !names.insert(c.name.as_str()) {
            out.push(Violation::DuplicateName(c.name.clone()));
        }
        if c.steps.is_empty() {
            out.push(Violation::EmptyComponent(c.name.clone()));
        } else if c.basepoint >= c.steps.len() {
            out.push(Violation::BasepointOutOfRange {
                component: c.name.clone(),
                basepoint: c.basepoint,
            });
        }
    }
    for (i, x) in d.crossings.iter().enumerate() {
        let mut ok = true;
        for r in [x.over, x.under] {
            match d.components.get(r.component) {
                None => {
                    out.push(Violation::UnknownComponent {
                        crossing: i,
                        component: r.component,
                    });
                    ok = false;
                }
                Some(c) if r.arc >= c.steps.len() => {
                    out.push(Violation::ArcOutOfRange {
                        crossing: i,
                        component: c.name.clone(),
                        arc: r.arc,
                    });
                    ok = false;
                }
                _ => {}
            }
        }
        if ok && x.over == x.under {
            out.push(Violation::SameArc { crossing: i });
        }
        if x.sign != 1 && x.sign != -1 {
            out.push(Violation::BadSign { crossing: i, sign: x.sign });
        }
    }
    for c in &d.components {
        let w = c.winding();
        if w != 0 {
            out.push(Violation::NotNull {
                component: c.name.clone(),
                winding: w,
            });
        }
    }
    out
}

fn check(d: &AnnularDiagram) -> Result<(), EqLinkError> {
    let v = validate(d);
    if v.is_empty() {
        Ok(())
    } else {
        Err(EqLinkError::Invalid(v))
    }
}

impl AnnularDiagram {
    pub fn component(&self, name: &str) -> Result<usize, EqLinkError> {
        self.components
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| EqLinkError::UnknownComponent(name.into()))
    }

    fn pair(&self, a: &str, b: &str) -> Result<(usize, usize), EqLinkError> {
        check(self)?;
        let (i, j) = (self.component(a)?, self.component(b)?);
        if i == j {
            return Err(EqLinkError::SameComponent(a.into()));
        }
        Ok((i, j))
    }

    /// Whether every arc has ray step zero.
    pub fn avoids_ray(&self) -> bool {
        self.components.iter().all(|c| c.steps.iter().all(|&s| s == 0))
    }
}

/// Lift index of every arc of component `c`.
pub fn lift_indices(d: &AnnularDiagram, c: usize) -> Result<Vec<i64>, EqLinkError> {
    let comp = d.components.get(c).ok_or_else(|| EqLinkError::UnknownComponent(format!("#{c}")))?;
    if comp.winding() != 0 {
        return Err(EqLinkError::Invalid(vec![Violation::NotNull {
            component: comp.name.clone(),
            winding: comp.winding(),
        }]));
    }
    let n = comp.steps.len();
    let mut idx = vec![0; n];
    let mut cur = 0;
    for k in 0..n {
        let a = (comp.basepoint + k) % n;
        idx[a] = cur;
        cur += comp.steps[a];
    }
    Ok(idx)
}

/// Sum of signs of crossings where `a` passes over `b`.
pub fn linking_number(d: &AnnularDiagram, a: &str, b: &str) -> Result<i64, EqLinkError> {
    let (i, j) = d.pair(a, b)?;
    Ok(d
        .crossings
        .iter()
        .filter(|x| x.over.component == i && x.under.component == j)
        .map(|x| x.sign as i64)
        .sum())
}

/// Σ sign · t^(idx_a − idx_b) over crossings where `a` passes over `b`.
pub fn eq_linking(d: &AnnularDiagram, a: &str, b: &str) -> Result<EqLinkValue, EqLinkError> {
    let (i, j) = d.pair(a, b)?;
    let (ia, ib) = (lift_indices(d, i)?, lift_indices(d, j)?);
    let mut value = LaurentPoly::zero();
    for x in &d.crossings {
        if x.over.component == i && x.under.component == j {
            value += &LaurentPoly::from_ints(&[(ia[x.over.arc] - ib[x.under.arc], x.sign as i64)]);
        }
    }
    Ok(EqLinkValue { value })
}

/// Same value computed from the crossings where `b` passes over `a`.
pub fn eq_linking_under(d: &AnnularDiagram, a: &str, b: &str) -> Result<EqLinkValue, EqLinkError> {
    let (i, j) = d.pair(a, b)?;
    let (ia, ib) = (lift_indices(d, i)?, lift_indices(d, j)?);
    let mut value = LaurentPoly::zero();
    for x in &d.crossings {
        if x.over.component == j && x.under.component == i {
            value += &LaurentPoly::from_ints(&[(ia[x.under.arc] - ib[x.over.arc], x.sign as i64)]);
        }
    }
    Ok(EqLinkValue { value })
}

/// Moves the basepoint of `c` along a detour winding `l` times around the
/// axis; the value in which `c` is the first argument gains a factor `t^l`.
pub fn slide_rebase(d: &AnnularDiagram, c: &str, l: i64) -> Result<AnnularDiagram, EqLinkError> {
    let ci = d.component(c)?;
    let mut out = d.clone();
    let comp = &mut out.components[ci];
    let b = comp.basepoint;
    // detour arcs M and N inserted just before the old basepoint
    comp.steps.splice(b..b, [-l, l]);
    comp.basepoint = b + 1;
    for x in &mut out.crossings {
        for r in [&mut x.over, &mut x.under] {
            if r.component == ci && r.arc >= b {
                r.arc += 2;
            }
        }
    }
    Ok(out)
}

/// Moves the basepoint of `c` to an existing arc.
pub fn with_basepoint(d: &AnnularDiagram, c: &str, arc: usize) -> Result<AnnularDiagram, EqLinkError> {
    let ci = d.component(c)?;
    let mut out = d.clone();
    out.components[ci].basepoint = arc;
    check(&out)?;
    Ok(out)
}

/// Cuts component `c` into the arcs `start..end` (cyclically) and the rest,
/// each closed by a finger arc that follows the basing back to the axis side
/// so lift indices are preserved. Returns the diagram with the first piece
/// in place of `c` and the diagram with the second piece.
pub fn connected_sum_split(
    d: &AnnularDiagram,
    c: &str,
    start: usize,
    end: usize,
) -> Result<(AnnularDiagram, AnnularDiagram), EqLinkError> {
    check(d)?;
    let ci = d.component(c)?;
    let comp = &d.components[ci];
    let n = comp.steps.len();
    if start >= n || end >= n || start == end {
        return Err(EqLinkError::Split(format!("bad cut {start}..{end} on {n} arcs")));
    }
    let first: Vec<usize> = (0..).map(|k| (start + k) % n).take_while(|&a| a != end).collect();
    let second: Vec<usize> = (0..).map(|k| (end + k) % n).take_while(|&a| a != start).collect();
    let w: i64 = first.iter().map(|&a| comp.steps[a]).sum();
    if w != 0 {
        return Err(EqLinkError::Split(format!("piece {start}..{end} winds {w} times around the axis")));
    }
    let idx = lift_indices(d, ci)?;
    let piece = |arcs: &[usize]| -> AnnularDiagram {
        let mut steps: Vec<i64> = arcs.iter().map(|&a| comp.steps[a]).collect();
        let basepoint = match arcs.iter().position(|&a| a == comp.basepoint) {
            Some(p) => p,
            None => {
                // finger from the end of the piece back to its start, passing
                // the basepoint level
                let m = idx[arcs[0]];
                steps.push(-m);
                steps.push(m);
                steps.len() - 1
            }
        };
        if steps.len() == arcs.len() {
            steps.push(0);
        }
        let pos: std::collections::HashMap<usize, usize> = arcs.iter().enumerate().map(|(p, &a)| (a, p)).collect();
        let mut out = d.clone();
        out.components[ci] = Component {
            name: comp.name.clone(),
            steps,
            basepoint,
        };
        out.crossings = d
            .crossings
            .iter()
            .filter_map(|x| {
                let mut x = *x;
                for r in [&mut x.over, &mut x.under] {
                    if r.component == ci {
                        r.arc = *pos.get(&r.arc)?;
                    }
                }
                Some(x)
            })
            .collect();
        out
    };
    Ok((piece(&first), piece(&second)))
}

/// Cuts `(start, end)` on component `c` whose first piece is null.
pub fn null_cuts(d: &AnnularDiagram, c: usize) -> Vec<(usize, usize)> {
    let steps = &d.components[c].steps;
    let n = steps.len();
    let mut out = Vec::new();
    for s in 0..n {
        let mut w = 0;
        for len in 1..n {
            w += steps[(s + len - 1) % n];
            if w == 0 {
                out.push((s, (s + len) % n));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn clasp() -> AnnularDiagram {
        let a = Component::new("a", vec![0, 1, 0, -1]);
        let b = Component::new("b", vec![0, 0, 0, 0]);
        let x = |over: (usize, usize), under: (usize, usize), sign| Crossing {
            over: ArcRef::new(over.0, over.1),
            under: ArcRef::new(under.0, under.1),
            sign,
        };
        AnnularDiagram {
            components: vec![a, b],
            crossings: vec![
                x((0, 0), (1, 0), 1),
                x((1, 1), (0, 1), 1),
                x((0, 2), (1, 3), -1),
                x((1, 2), (0, 3), -1),
            ],
        }
    }

    #[test]
    fn hopf_and_unlink() {
        let h = hopf();
        assert!(validate(&h).is_empty());
        assert_eq!(linking_number(&h, "a", "b").unwrap(), 1);
        assert_eq!(linking_number(&h, "b", "a").unwrap(), 1);
        assert_eq!(eq_linking(&h, "a", "b").unwrap().value, LaurentPoly::one());
        let u = unlink();
        assert_eq!(linking_number(&u, "a", "b").unwrap(), 0);
        assert!(eq_linking(&u, "a", "b").unwrap().value.is_zero());
    }

    #[test]
    fn violations() {
        let mut d = hopf();
        d.components[0].steps = vec![1, 0];
        assert!(matches!(validate(&d)[..], [Violation::NotNull { winding: 1, .. }]));
        assert!(matches!(eq_linking(&d, "a", "b"), Err(EqLinkError::Invalid(_))));
        let mut d = hopf();
        d.crossings[0].under.arc = 9;
        assert!(matches!(validate(&d)[..], [Violation::ArcOutOfRange { arc: 9, .. }]));
        let mut d = hopf();
        d.crossings[0].under = d.crossings[0].over;
        assert!(validate(&d).contains(&Violation::SameArc { crossing: 0 }));
        assert!(matches!(linking_number(&hopf(), "a", "a"), Err(EqLinkError::SameComponent(_))));
        assert!(matches!(linking_number(&hopf(), "a", "z"), Err(EqLinkError::UnknownComponent(_))));
    }

    #[test]
    fn lift_index_pattern() {
        let d = clasp();
        assert_eq!(lift_indices(&d, 0).unwrap(), vec![0, 0, 1, 1]);
        assert_eq!(lift_indices(&d, 1).unwrap(), vec![0; 4]);
        let mut e = d.clone();
        e.components[0].basepoint = 2;
        assert_eq!(lift_indices(&e, 0).unwrap(), vec![-1, -1, 0, 0]);
    }

    #[test]
    fn clasp_value() {
        let d = clasp();
        let v = eq_linking(&d, "a", "b").unwrap().value;
        assert_eq!(v, "1 - t".parse().unwrap());
        assert_eq!(v.augment(), BigRational::from_integer(linking_number(&d, "a", "b").unwrap().into()));
        assert_eq!(eq_linking_under(&d, "a", "b").unwrap().value, v);
        assert_eq!(eq_linking(&d, "b", "a").unwrap().value, v.involute());
    }

    #[test]
    fn sliding() {
        let d = clasp();
        let v = eq_linking(&d, "a", "b").unwrap().value;
        for l in -2..=2 {
            let s = slide_rebase(&d, "a", l).unwrap();
            assert!(validate(&s).is_empty());
            assert_eq!(eq_linking(&s, "a", "b").unwrap().value, v.shift(l));
            let s = slide_rebase(&d, "b", l).unwrap();
            assert_eq!(eq_linking(&s, "a", "b").unwrap().value, v.shift(-l));
        }
        let back = slide_rebase(&slide_rebase(&d, "a", 1).unwrap(), "a", -1).unwrap();
        assert_eq!(eq_linking(&back, "a", "b").unwrap(), eq_linking(&d, "a", "b").unwrap());
    }

    #[test]
    fn cutting() {
        let d = clasp();
        let v = eq_linking(&d, "a", "b").unwrap().value;
        // the first piece winds once: rejected
        assert!(matches!(connected_sum_split(&d, "a", 1, 2), Err(EqLinkError::Split(_))));
        for (s, e) in null_cuts(&d, 0) {
            let (p, q) = connected_sum_split(&d, "a", s, e).unwrap();
            assert!(validate(&p).is_empty() && validate(&q).is_empty());
            let sum = eq_linking(&p, "a", "b").unwrap().value + eq_linking(&q, "a", "b").unwrap().value;
            assert_eq!(sum, v, "cut {s}..{e}");
            let lk = linking_number(&p, "a", "b").unwrap() + linking_number(&q, "a", "b").unwrap();
            assert_eq!(lk, linking_number(&d, "a", "b").unwrap());
        }
        // everything in the first piece: the rest contributes nothing
        let mut h = hopf();
        h.components[0].steps.push(0);
        let (p, q) = connected_sum_split(&h, "a", 0, 2).unwrap();
        assert_eq!(eq_linking(&p, "a", "b").unwrap().value, LaurentPoly::one());
        assert!(eq_linking(&q, "a", "b").unwrap().value.is_zero());
    }

    #[test]
    fn basepoint_change_is_monomial() {
        let d = clasp();
        let v = eq_linking(&d, "a", "b").unwrap().value;
        let idx = lift_indices(&d, 0).unwrap();
        for (arc, &i) in idx.iter().enumerate() {
            let e = with_basepoint(&d, "a", arc).unwrap();
            assert_eq!(eq_linking(&e, "a", "b").unwrap().value, v.shift(-i));
        }
    }
}
