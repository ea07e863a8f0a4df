//! Property suite for the ordinary and equivariant linking numbers on a
//! seeded corpus of generated diagrams.

use std::fmt;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::laurent::LaurentPoly;

use super::{
    connected_sum_split, eq_linking, eq_linking_under, hopf, lift_indices, linking_number, null_cuts, random_diagram,
    slide_rebase, unlink, validate, with_basepoint, AnnularDiagram, DiagramKind, EqLinkError, GeneratorOptions,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub seed: u64,
    pub diagrams: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0 && c.passed > 0)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn record(&mut self, name: &'static str, ok: bool) {
        let c = match self.checks.iter_mut().find(|c| c.name == name) {
            Some(c) => c,
            None => {
                self.checks.push(AxiomCheck { name, passed: 0, failed: 0 });
                self.checks.last_mut().expect("just pushed")
            }
        };
        if ok {
            c.passed += 1;
        } else {
            c.failed += 1;
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {} diagrams {}", self.seed, self.diagrams)?;
        for c in &self.checks {
            let status = if c.failed == 0 { "pass" } else { "FAIL" };
            writeln!(f, "{status} {} {}/{}", c.name, c.passed, c.passed + c.failed)?;
        }
        Ok(())
    }
}

fn eq(d: &AnnularDiagram, a: &str, b: &str) -> Result<LaurentPoly, EqLinkError> {
    Ok(eq_linking(d, a, b)?.value)
}

fn lk(d: &AnnularDiagram, a: &str, b: &str) -> Result<i64, EqLinkError> {
    linking_number(d, a, b)
}

fn check_diagram<R: Rng>(d: &AnnularDiagram, kind: DiagramKind, rng: &mut R, report: &mut AxiomReport) -> Result<(), EqLinkError> {
    report.record("validity", validate(d).is_empty());
    for c in 0..2 {
        let idx = lift_indices(d, c)?;
        let comp = &d.components[c];
        let n = comp.steps.len();
        let last = (comp.basepoint + n - 1) % n;
        report.record("lift-cycle", idx[comp.basepoint] == 0 && idx[last] + comp.steps[last] == 0);
    }
    let v = eq(d, "a", "b")?;
    let l = lk(d, "a", "b")?;
    report.record("classical-symmetry", l == lk(d, "b", "a")?);
    report.record("symmetry", eq(d, "b", "a")? == v.involute());
    report.record("specialization", v.augment() == BigRational::from_integer(l.into()));
    report.record("over-under", eq_linking_under(d, "a", "b")?.value == v);
    for (c, name) in ["a", "b"].into_iter().enumerate() {
        let idx = lift_indices(d, c)?;
        let arc = rng.gen_range(0..idx.len());
        let moved = eq(&with_basepoint(d, name, arc)?, "a", "b")?;
        let k = if c == 0 { -idx[arc] } else { idx[arc] };
        report.record("basepoint", moved == v.shift(k));
        for s in -2..=2 {
            let slid = eq(&slide_rebase(d, name, s)?, "a", "b")?;
            report.record("sliding", slid == v.shift(if c == 0 { s } else { -s }));
        }
        if let Some(&(start, end)) = null_cuts(d, c).choose(rng) {
            let (p, q) = connected_sum_split(d, name, start, end)?;
            report.record("cutting", eq(&p, "a", "b")? + eq(&q, "a", "b")? == v);
            report.record("classical-cutting", lk(&p, "a", "b")? + lk(&q, "a", "b")? == l);
        }
    }
    if d.avoids_ray() {
        report.record("initial-condition", v == LaurentPoly::from_int(l));
    }
    if kind == DiagramKind::Split {
        report.record("unlink", l == 0 && v.is_zero());
    }
    Ok(())
}

/// Runs every property on `count` generated diagrams plus the fixed Hopf link
/// and unlink.
pub fn run_axioms(seed: u64, count: usize) -> AxiomReport {
    let mut report = AxiomReport {
        seed,
        diagrams: count,
        checks: Vec::new(),
    };
    let h = hopf();
    report.record("hopf", lk(&h, "a", "b") == Ok(1) && eq(&h, "a", "b") == Ok(LaurentPoly::one()));
    let u = unlink();
    report.record("unlink", lk(&u, "a", "b") == Ok(0) && eq(&u, "a", "b").is_ok_and(|v| v.is_zero()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let kind = match i % 5 {
            0 => DiagramKind::Ball,
            1 => DiagramKind::Split,
            _ => DiagramKind::General,
        };
        let d = random_diagram(&mut rng, &GeneratorOptions { kind, ..Default::default() });
        if check_diagram(&d, kind, &mut rng, &mut report).is_err() {
            report.record("no-errors", false);
        }
    }
    report
}
