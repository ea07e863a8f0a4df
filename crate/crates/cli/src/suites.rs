use beadgraph::algebra::{graded_dimension, trivalent_shapes, DiagramElement, QuotientOptions, Space};
use beadgraph::beadrings::{edge_ring, edge_to_flag, edge_to_h1, flag_ring, flag_to_edge, h1_ring, h1_to_edge};
use beadgraph::contraction::{break_graph, complete_contraction};
use beadgraph::eqlink::{eq_linking, hopf, linking_number, run_axioms};
use beadgraph::graphs::{tadpole, theta};
use beadgraph::hair::HairSeries;
use beadgraph::laurent::LaurentPoly;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::Report;

struct Tally(Vec<(String, usize, usize)>);

impl Tally {
    fn record(&mut self, name: &str, ok: bool) {
        let i = match self.0.iter().position(|(n, _, _)| n == name) {
            Some(i) => i,
            None => {
                self.0.push((name.into(), 0, 0));
                self.0.len() - 1
            }
        };
        if ok {
            self.0[i].1 += 1;
        } else {
            self.0[i].2 += 1;
        }
    }

    fn report(self, header: String) -> Report {
        let ok = self.0.iter().all(|(_, _, f)| *f == 0);
        let mut text = header;
        for (name, p, f) in &self.0 {
            let status = if *f == 0 { "pass" } else { "FAIL" };
            text.push_str(&format!("{status} {name} {p}/{}\n", p + f));
        }
        let checks: Vec<_> = self
            .0
            .iter()
            .map(|(n, p, f)| json!({ "name": n, "passed": p, "failed": f }))
            .collect();
        Report {
            text,
            json: json!({ "checks": checks, "all_passed": ok }),
            ok,
        }
    }
}

fn random_beads<R: Rng>(g: &beadgraph::graphs::BeadGraph, rng: &mut R, w: i64) -> beadgraph::graphs::BeadGraph {
    let mut h = g.clone();
    for e in 0..h.num_edges() {
        h.set_bead(e, LaurentPoly::t_pow(rng.gen_range(-w..=w)));
    }
    h
}

/// Seeded structural suites: linking axioms, AS flips, symbol identity, ring
/// round trips and hair multiplicativity.
pub fn axioms(seed: u64, count: usize) -> Report {
    let mut t = Tally(Vec::new());
    let lk = run_axioms(seed, count);
    for c in &lk.checks {
        t.0.push((format!("eqlink-{}", c.name), c.passed, c.failed));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let minus = -BigRational::from_integer(1.into());
    for vertices in [2, 4] {
        for g in trivalent_shapes(vertices).expect("small shapes canonicalize") {
            let e = DiagramElement::from_graph(Space::Phi, &g).expect("beadless graph");
            let mut f = g.clone();
            f.flip_vertex(0);
            let ef = DiagramElement::from_graph(Space::Phi, &f).expect("beadless graph");
            t.record("as-flip", ef == e.scale(&minus));
            let c = break_graph(&g).ok().and_then(|s| complete_contraction(&s).ok());
            t.record("symbol-identity", c.as_ref() == Some(&e));
            let b = random_beads(&g, &mut rng, 2);
            let eb = DiagramElement::from_graph(Space::Lambda, &b).expect("monomial beads");
            let cb = break_graph(&b).ok().and_then(|s| complete_contraction(&s).ok());
            t.record("symbol-identity-beaded", cb.as_ref() == Some(&eb));
            let (fr, er, hr) = (flag_ring(&g), edge_ring(&g).expect("trivalent"), h1_ring(&g).expect("trivalent"));
            t.record("h1-rank", hr.rank() == g.loop_degree());
            for _ in 0..count.div_ceil(20) {
                let m: Vec<i64> = (0..g.num_edges()).map(|_| rng.gen_range(-4..=4)).collect();
                let back = edge_to_h1(&m, &g).and_then(|h| h1_to_edge(&h, &g));
                t.record("ring-edge-h1-edge", back.is_ok_and(|b| er.equal(&b, &m).unwrap_or(false)));
                let mf: Vec<i64> = (0..2 * g.num_edges()).map(|_| rng.gen_range(-3..=3)).collect();
                let back = flag_to_edge(&mf, &g).and_then(|c| edge_to_flag(&c, &g));
                t.record("ring-flag-edge-flag", back.is_ok_and(|b| fr.equal(&b, &mf).unwrap_or(false)));
            }
        }
    }
    t.record(
        "tadpole-vanishes",
        DiagramElement::from_graph(Space::Star, &tadpole()).is_ok_and(|e| e.is_zero()),
    );
    for _ in 0..count {
        let (a, b) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        t.record("hair-multiplicative", &HairSeries::exp(a, 4) * &HairSeries::exp(b, 4) == HairSeries::exp(a + b, 4));
    }
    t.report(format!("seed {seed} count {count}\n"))
}

/// Small fixed values with known answers.
pub fn selftest() -> Report {
    let mut t = Tally(Vec::new());
    let opts = QuotientOptions::default();
    for (euler, want) in [(0, 1), (1, 0), (2, 1), (3, 0), (4, 2)] {
        let got = graded_dimension(Space::Phi, euler, opts).ok();
        t.record(&format!("dim-phi-{euler}"), got == Some(want));
    }
    let th = DiagramElement::from_graph(Space::Phi, &theta()).ok();
    let c = break_graph(&theta()).ok().and_then(|s| complete_contraction(&s).ok());
    t.record("contract-theta", c.is_some() && c == th);
    let h = hopf();
    t.record("lk-hopf", linking_number(&h, "a", "b") == Ok(1));
    t.record("eqlink-hopf", eq_linking(&h, "a", "b").is_ok_and(|v| v.value == LaurentPoly::one()));
    t.record(
        "tadpole-vanishes",
        DiagramElement::from_graph(Space::Star, &tadpole()).is_ok_and(|e| e.is_zero()),
    );
    t.report(String::new())
}
