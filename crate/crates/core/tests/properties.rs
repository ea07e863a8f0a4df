use beadgraph::algebra::{multigraphs, parse_element, serialize_element, DiagramElement, Space};
use beadgraph::eqlink::{
    connected_sum_split, eq_linking, linking_number, null_cuts, random_diagram, slide_rebase, GeneratorOptions,
};
use beadgraph::graphs::{canonicalize, canonicalize_with, parse_graph, serialize_graph, BeadGraph, CanonOptions, TreePolicy};
use beadgraph::laurent::LaurentPoly;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-5i64..=5, -5i64..=5), 0..5).prop_map(|t| LaurentPoly::from_ints(&t))
}

/// A small trivalent graph with monomial beads, chosen by seed.
fn beaded_graph(seed: u64) -> BeadGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<BeadGraph> = [2, 4].iter().flat_map(|&v| multigraphs(v, 0)).collect();
    let mut g = pool[rng.gen_range(0..pool.len())].clone();
    for e in 0..g.num_edges() {
        g.set_bead(e, LaurentPoly::t_pow(rng.gen_range(-2..=2)));
    }
    g
}

fn scramble(g: &BeadGraph, seed: u64) -> BeadGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vperm: Vec<usize> = (0..g.num_vertices()).collect();
    let mut eperm: Vec<usize> = (0..g.num_edges()).collect();
    vperm.shuffle(&mut rng);
    eperm.shuffle(&mut rng);
    let reverse: Vec<bool> = (0..g.num_edges()).map(|_| rng.gen()).collect();
    let rotate: Vec<usize> = (0..g.num_vertices()).map(|_| rng.gen_range(0..3)).collect();
    g.relabel(&vperm, &eperm, &reverse, &rotate)
}

proptest! {
    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()).involute(), a.involute() * b.involute());
        prop_assert_eq!((a.clone() * b.clone()).augment(), a.augment() * b.augment());
        prop_assert_eq!(a.involute().involute(), a.clone());
        prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
    }

    #[test]
    fn canonical_form_ignores_labels(seed in any::<u64>(), shuffle in any::<u64>()) {
        let g = beaded_graph(seed);
        let h = scramble(&g, shuffle);
        let (a, b) = (canonicalize(&g).unwrap(), canonicalize(&h).unwrap());
        prop_assert_eq!(&a.key, &b.key);
        prop_assert_eq!(a.sign, b.sign);
    }

    #[test]
    fn holonomy_moves_are_invisible(seed in any::<u64>(), v in 0usize..4, k in -2i64..=2) {
        let g = beaded_graph(seed);
        let mut h = g.clone();
        h.holonomy_move(v % g.num_vertices(), k);
        let opts = CanonOptions::with_holonomy(TreePolicy::Bfs);
        let (a, b) = (canonicalize_with(&g, &opts).unwrap(), canonicalize_with(&h, &opts).unwrap());
        prop_assert_eq!(a.key, b.key);
        prop_assert_eq!(a.sign, b.sign);
    }

    #[test]
    fn text_formats_round_trip(seed in any::<u64>(), c in -4i64..=4) {
        let g = beaded_graph(seed);
        let back = parse_graph(&serialize_graph(&g)).unwrap();
        prop_assert_eq!(&back, &g);
        let e = DiagramElement::from_graph(Space::Lambda, &g).unwrap().scale(&BigRational::from_integer(c.into()));
        prop_assert_eq!(parse_element(&serialize_element(&e)).unwrap(), e);
    }

    #[test]
    fn linking_laws(seed in any::<u64>(), l in -3i64..=3) {
        let d = random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), &GeneratorOptions::default());
        let v = eq_linking(&d, "a", "b").unwrap().value;
        prop_assert_eq!(eq_linking(&d, "b", "a").unwrap().value, v.involute());
        prop_assert_eq!(v.augment(), BigRational::from_integer(linking_number(&d, "a", "b").unwrap().into()));
        let s = slide_rebase(&d, "b", l).unwrap();
        prop_assert_eq!(eq_linking(&s, "a", "b").unwrap().value, v.shift(-l));
        for (start, end) in null_cuts(&d, 0) {
            let (p, q) = connected_sum_split(&d, "a", start, end).unwrap();
            prop_assert_eq!(eq_linking(&p, "a", "b").unwrap().value + eq_linking(&q, "a", "b").unwrap().value, v.clone());
        }
    }
}
