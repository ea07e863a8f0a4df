//! Independent reference computations checked against the library.

use beadgraph::algebra::{generators, graded_dimension, multigraphs, normalize, QuotientOptions, Space};
use beadgraph::contraction::{break_graph, complete_contraction, glue, supported_matchings};
use beadgraph::graphs::{
    automorphisms, dumbbell, edge_of, is_tail, strut, tetrahedron, theta, theta_with_beads, wheel, BeadGraph, CanonOptions,
    TreePolicy, Vertex, STAR,
};
use beadgraph::laurent::LaurentPoly;
use beadgraph::linalg::{integral_row, rank};
use num_rational::BigRational;
use num_traits::One;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn same_kind(g: &BeadGraph, a: usize, b: usize) -> bool {
    match (&g.vertices()[a], &g.vertices()[b]) {
        (Vertex::Trivalent(_), Vertex::Trivalent(_)) => true,
        (Vertex::Leg { color: x, .. }, Vertex::Leg { color: y, .. }) => x == y,
        _ => false,
    }
}

/// Sign of the image of a vertex's cyclic order: +1 for a rotation.
fn orientation(src: &[usize], dst: &[usize]) -> i8 {
    let k = dst.iter().position(|&f| f == src[0]).expect("flag maps into vertex");
    if dst[(k + 1) % 3] == src[1] {
        1
    } else {
        -1
    }
}

/// Signs of all automorphisms, by trying every vertex permutation and
/// assigning edges (with orientation) by backtracking.
fn brute_force(g: &BeadGraph) -> Vec<i8> {
    let (nv, ne) = (g.num_vertices(), g.num_edges());
    let mut signs = Vec::new();
    for sigma in permutations(nv) {
        if !(0..nv).all(|v| same_kind(g, v, sigma[v])) {
            continue;
        }
        let mut flag_map = vec![usize::MAX; 2 * ne];
        let mut used = vec![false; ne];
        assign(g, &sigma, 0, &mut used, &mut flag_map, &mut signs);
    }
    signs
}

fn assign(g: &BeadGraph, sigma: &[usize], e: usize, used: &mut [bool], flag_map: &mut [usize], signs: &mut Vec<i8>) {
    if e == g.num_edges() {
        let mut s = 1;
        for (v, vert) in g.vertices().iter().enumerate() {
            if let Vertex::Trivalent(fs) = vert {
                let img: Vec<usize> = fs.iter().map(|&f| flag_map[f]).collect();
                s *= orientation(&img, g.vertices()[sigma[v]].flags());
            }
        }
        signs.push(s);
        return;
    }
    let (u, v) = (sigma[g.tail(e)], sigma[g.head(e)]);
    for f in 0..g.num_edges() {
        if used[f] {
            continue;
        }
        for flip in [false, true] {
            let (t, h) = if flip { (v, u) } else { (u, v) };
            let bead = if flip { g.bead(e).involute() } else { g.bead(e).clone() };
            if g.tail(f) != t || g.head(f) != h || *g.bead(f) != bead {
                continue;
            }
            used[f] = true;
            let (a, b) = if flip { (2 * f + 1, 2 * f) } else { (2 * f, 2 * f + 1) };
            flag_map[2 * e] = a;
            flag_map[2 * e + 1] = b;
            assign(g, sigma, e + 1, used, flag_map, signs);
            used[f] = false;
        }
    }
}

fn check_automorphisms(g: &BeadGraph) {
    let mut expect = brute_force(g);
    let mut got: Vec<i8> = automorphisms(g, &CanonOptions::default()).unwrap().iter().map(|a| a.sign).collect();
    expect.sort();
    got.sort();
    assert_eq!(got, expect, "{g:?}");
}

#[test]
fn flag_conventions() {
    assert!(is_tail(0) && !is_tail(1));
    assert_eq!(edge_of(5), 2);
}

#[test]
fn automorphisms_match_brute_force() {
    for g in [theta(), tetrahedron(), dumbbell(), wheel(2), wheel(3), strut(STAR, STAR, LaurentPoly::one())] {
        check_automorphisms(&g);
    }
    check_automorphisms(&theta_with_beads([LaurentPoly::t(), LaurentPoly::t(), LaurentPoly::one()]));
    check_automorphisms(&theta_with_beads([LaurentPoly::t(), LaurentPoly::t(), LaurentPoly::t()]));
    for (tri, legs) in [(4, 0), (2, 2), (1, 3), (0, 2)] {
        for g in multigraphs(tri, legs) {
            check_automorphisms(&g);
        }
    }
}

#[test]
fn euler_two_from_fifteen_matchings() {
    // pair every leg of two vortices with every other leg
    let mut s = break_graph(&theta()).unwrap();
    let labels: Vec<String> = (0..6).map(|i| s.label(i).to_string()).collect();
    for i in 0..6 {
        for j in i + 1..6 {
            s.set_pair(&labels[i], &labels[j], LaurentPoly::one()).unwrap();
        }
    }
    let ms = supported_matchings(&s);
    assert_eq!(ms.len(), 15);
    let mut crossing = 0;
    let mut rows = Vec::new();
    for m in &ms {
        let between = m.iter().filter(|&&(i, j)| i / 3 != j / 3).count();
        let e = normalize(Space::Phi, &[(BigRational::one(), glue(&s, m))]).unwrap();
        if between == 3 {
            crossing += 1;
            assert_eq!(e.len(), 1);
        } else {
            // a leg glued to its own vortex closes a loop
            assert!(e.is_zero());
        }
        let gens = generators(Space::Phi, 2, 0, None, TreePolicy::Bfs).unwrap();
        let row = e
            .terms()
            .map(|(k, t)| (gens.iter().position(|(g, _)| g == k).unwrap(), t.coef.clone()))
            .collect();
        rows.push(integral_row(&row));
    }
    assert_eq!(crossing, 6);
    // the six theta gluings span one line and the alternating sum cancels
    assert_eq!(rank(rows), 1);
    assert_eq!(graded_dimension(Space::Phi, 2, QuotientOptions::default()).unwrap(), 1);
    assert!(complete_contraction(&s).unwrap().is_zero());
}

/// Multisets of struts (degree 1) and even wheels (degree 2k) of total
/// degree at most `d`.
fn star_euler_zero(d: usize) -> usize {
    // ways[n] = multisets of parts from {1, 2, 4, 6, ...} summing to n
    let mut ways = vec![0usize; d + 1];
    ways[0] = 1;
    let parts = std::iter::once(1).chain((1..=d / 2).map(|k| 2 * k));
    for p in parts {
        for n in p..=d {
            ways[n] += ways[n - p];
        }
    }
    ways.iter().sum()
}

#[test]
fn star_euler_zero_counts_struts_and_wheels() {
    for d in 0..=3 {
        let o = QuotientOptions {
            max_vassiliev: Some(d),
            ..Default::default()
        };
        assert_eq!(graded_dimension(Space::Star, 0, o).unwrap(), star_euler_zero(d), "degree {d}");
    }
}
