//! Canonical labeling of beaded graphs.
//!
//! The search walks every vertex ordering compatible with an
//! isomorphism-invariant colour refinement (individualising one vertex of the
//! first non-trivial cell at a time), then every ordering of parallel flags.
//! Each complete labeling yields an integer code; the canonical form is the
//! lexicographically least code. Labelings that reach the least code differ by
//! automorphisms, and their orientation parities decide the AS sign.
//!
//! With holonomy enabled, beads are first pushed off a spanning tree chosen
//! from the labeling itself, so the code only depends on the cohomology class
//! of the bead exponents.

use std::collections::BTreeMap;

use crate::laurent::LaurentPoly;

use super::{edge_of, head_flag, is_tail, partner, tail_flag, BeadGraph, Edge, Flag, GraphError, Vertex, DEFAULT_VERTEX_BOUND};

/// How the holonomy spanning tree is grown from a labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TreePolicy {
    #[default]
    Bfs,
    Dfs,
    /// Breadth-first from the highest-labelled vertex, flags visited in
    /// decreasing order.
    ReverseBfs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonOptions {
    pub vertex_bound: usize,
    /// `Some` to normalise beads modulo holonomy moves at trivalent vertices.
    pub holonomy: Option<TreePolicy>,
}

impl Default for CanonOptions {
    fn default() -> Self {
        Self {
            vertex_bound: DEFAULT_VERTEX_BOUND,
            holonomy: None,
        }
    }
}

impl CanonOptions {
    pub fn with_holonomy(policy: TreePolicy) -> Self {
        Self {
            holonomy: Some(policy),
            ..Self::default()
        }
    }
}

/// Total order key of a canonical graph. Equal keys mean equal canonical graphs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub colors: Vec<String>,
    pub code: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub graph: BeadGraph,
    /// `+1` or `-1` relative to the input orientation; `0` when an
    /// orientation-reversing automorphism forces the graph to vanish.
    pub sign: i8,
    pub key: CanonicalKey,
}

/// A self-map of the graph given on flags, with its orientation parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    pub flag_map: Vec<Flag>,
    pub vertex_map: Vec<usize>,
    pub sign: i8,
}

pub fn canonicalize(g: &BeadGraph) -> Result<CanonicalForm, GraphError> {
    canonicalize_with(g, &CanonOptions::default())
}

pub fn canonicalize_with(g: &BeadGraph, opts: &CanonOptions) -> Result<CanonicalForm, GraphError> {
    if g.num_vertices() > opts.vertex_bound {
        return Err(GraphError::TooLarge {
            count: g.num_vertices(),
            bound: opts.vertex_bound,
        });
    }
    // components are labelled separately and sorted, which avoids searching
    // through permutations of isomorphic components
    let colors = g.colors();
    let mut parts = Vec::new();
    for c in g.split_components() {
        parts.push(canonicalize_connected(&c, opts, &colors)?);
    }
    parts.sort_by(|a, b| a.1.cmp(&b.1));
    let mut graph = BeadGraph::empty();
    let mut code = vec![parts.len() as i64];
    let mut sign = 1;
    for (part, part_code, part_sign) in parts {
        graph = graph.disjoint_union(&part);
        code.extend(part_code);
        sign *= part_sign;
    }
    Ok(CanonicalForm {
        graph,
        sign,
        key: CanonicalKey { colors, code },
    })
}

fn canonicalize_connected(g: &BeadGraph, opts: &CanonOptions, colors: &[String]) -> Result<(BeadGraph, Vec<i64>, i8), GraphError> {
    let search = Search::run_with_colors(g, opts, colors.to_vec())?;
    let best = &search.leaves[search.best[0]];
    let sign = if search.best.iter().all(|&i| search.leaves[i].sign == best.sign) {
        best.sign
    } else {
        0
    };
    Ok((search.build(best), search.best_code.clone(), sign))
}

/// All automorphisms of `g` (beads compared exactly, up to orientation
/// reversal; modulo holonomy when `opts.holonomy` is set).
pub fn automorphisms(g: &BeadGraph, opts: &CanonOptions) -> Result<Vec<Automorphism>, GraphError> {
    let search = Search::run(g, opts)?;
    let base = &search.leaves[search.best[0]];
    let mut inv_base = vec![0; base.flag_index.len()];
    for (f, &i) in base.flag_index.iter().enumerate() {
        inv_base[i] = f;
    }
    let mut out: Vec<Automorphism> = search
        .best
        .iter()
        .map(|&li| {
            let leaf = &search.leaves[li];
            let flag_map: Vec<Flag> = leaf.flag_index.iter().map(|&i| inv_base[i]).collect();
            let vertex_map = (0..g.num_vertices())
                .map(|v| {
                    let f = g.vertices()[v].flags()[0];
                    g.vertex_of(flag_map[f])
                })
                .collect();
            Automorphism {
                flag_map,
                vertex_map,
                sign: leaf.sign * base.sign,
            }
        })
        .collect();
    out.sort_by(|a, b| a.flag_map.cmp(&b.flag_map));
    Ok(out)
}

struct Leaf {
    /// Position of each vertex in the labeling.
    position: Vec<usize>,
    /// Index of each flag in the labeling.
    flag_index: Vec<usize>,
    /// Normalised bead exponent per input edge, read from lower to higher
    /// flag index.
    exps: Vec<i64>,
    sign: i8,
}

struct Search<'a> {
    g: &'a BeadGraph,
    opts: CanonOptions,
    kind: Vec<i64>,
    exps: Vec<i64>,
    leaves: Vec<Leaf>,
    best_code: Vec<i64>,
    best: Vec<usize>,
}

impl<'a> Search<'a> {
    fn run(g: &'a BeadGraph, opts: &CanonOptions) -> Result<Self, GraphError> {
        if g.num_vertices() > opts.vertex_bound {
            return Err(GraphError::TooLarge {
                count: g.num_vertices(),
                bound: opts.vertex_bound,
            });
        }
        Self::run_with_colors(g, opts, g.colors())
    }

    fn run_with_colors(g: &'a BeadGraph, opts: &CanonOptions, colors: Vec<String>) -> Result<Self, GraphError> {
        let exps = g.bead_exponents()?;
        let kind = g
            .vertices()
            .iter()
            .map(|v| match v {
                Vertex::Trivalent(_) => 0,
                Vertex::Leg { color, .. } => 1 + colors.binary_search(color).expect("color listed") as i64,
            })
            .collect();
        let mut s = Search {
            g,
            opts: *opts,
            kind,
            exps,
            leaves: Vec::new(),
            best_code: Vec::new(),
            best: Vec::new(),
        };
        let initial: Vec<usize> = s.kind.iter().map(|&k| k as usize).collect();
        s.descend(initial);
        if s.leaves.is_empty() {
            // empty graph
            s.leaves.push(Leaf {
                position: Vec::new(),
                flag_index: Vec::new(),
                exps: Vec::new(),
                sign: 1,
            });
            s.best.push(0);
        }
        Ok(s)
    }

    fn neighbour_colours(&self, v: usize, colors: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = self.g.vertices()[v]
            .flags()
            .iter()
            .map(|&f| colors[self.g.vertex_of(partner(f))])
            .collect();
        out.sort_unstable();
        out
    }

    /// Colour refinement; cells keep their relative order.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let n = colors.len();
        loop {
            let sigs: Vec<(usize, Vec<usize>)> = (0..n)
                .map(|v| (colors[v], self.neighbour_colours(v, &colors)))
                .collect();
            let mut sorted: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
            sorted.sort();
            sorted.dedup();
            let next: Vec<usize> = sigs
                .iter()
                .map(|s| sorted.binary_search(&s).expect("signature present"))
                .collect();
            let before = {
                let mut c = colors.clone();
                c.sort_unstable();
                c.dedup();
                c.len()
            };
            colors = next;
            if sorted.len() == before {
                return colors;
            }
        }
    }

    fn descend(&mut self, colors: Vec<usize>) {
        let colors = self.refine(colors);
        let n = colors.len();
        let mut count = vec![0usize; n];
        for &c in &colors {
            count[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| count[c] > 1) else {
            self.leaf_flags(colors);
            return;
        };
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        for &v in &cell {
            let split: Vec<usize> = (0..n)
                .map(|u| 2 * colors[u] + usize::from(colors[u] == target && u != v))
                .collect();
            self.descend(split);
        }
    }

    /// Enumerates flag orderings for a fixed vertex order.
    fn leaf_flags(&mut self, position: Vec<usize>) {
        let n = position.len();
        let mut order = vec![0; n];
        for (v, &p) in position.iter().enumerate() {
            order[p] = v;
        }
        let mut flag_index = vec![usize::MAX; 2 * self.g.num_edges()];
        self.assign_vertex(&position, &order, 0, 0, &mut flag_index);
    }

    fn assign_vertex(&mut self, position: &[usize], order: &[usize], p: usize, next: usize, flag_index: &mut Vec<usize>) {
        if p == order.len() {
            self.finish(position, flag_index.clone());
            return;
        }
        let v = order[p];
        let flags = self.g.vertices()[v].flags().to_vec();
        // groups of flags sharing a partner vertex, in partner order
        let mut groups: BTreeMap<(usize, usize), Vec<Flag>> = BTreeMap::new();
        for &f in &flags {
            let w = self.g.vertex_of(partner(f));
            let key = if position[w] < p {
                // partner already labelled: its flag index orders ours
                (position[w], flag_index[partner(f)])
            } else {
                (position[w], 0)
            };
            groups.entry(key).or_default().push(f);
        }
        let groups: Vec<Vec<Flag>> = groups.into_values().collect();
        let mut choices: Vec<Vec<Vec<Flag>>> = Vec::new();
        for grp in &groups {
            choices.push(permutations(grp));
        }
        let mut pick = vec![0usize; groups.len()];
        loop {
            let mut idx = next;
            for (gi, c) in pick.iter().enumerate() {
                for &f in &choices[gi][*c] {
                    flag_index[f] = idx;
                    idx += 1;
                }
            }
            self.assign_vertex(position, order, p + 1, idx, flag_index);
            // odometer
            let mut k = 0;
            loop {
                if k == pick.len() {
                    for &f in &flags {
                        flag_index[f] = usize::MAX;
                    }
                    return;
                }
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
    }

    fn finish(&mut self, position: &[usize], flag_index: Vec<usize>) {
        let g = self.g;
        let potential = match self.opts.holonomy {
            Some(policy) => self.potential(position, &flag_index, policy),
            None => vec![0; g.num_vertices()],
        };
        let exps: Vec<i64> = (0..g.num_edges())
            .map(|e| {
                let c = self.exps[e] + potential[g.tail(e)] - potential[g.head(e)];
                if flag_index[tail_flag(e)] < flag_index[head_flag(e)] {
                    c
                } else {
                    -c
                }
            })
            .collect();
        let mut sign: i8 = 1;
        for vert in g.vertices() {
            if let Vertex::Trivalent(fs) = vert {
                let [a, b, c] = fs.map(|f| flag_index[f]);
                let even = (a < b && b < c) || (b < c && c < a) || (c < a && a < b);
                if !even {
                    sign = -sign;
                }
            }
        }
        let leaf = Leaf {
            position: position.to_vec(),
            flag_index,
            exps,
            sign,
        };
        // only leaves tying for the least code are kept
        let code = self.code(&leaf);
        if self.best.is_empty() || code < self.best_code {
            self.best_code = code;
            self.leaves.clear();
            self.leaves.push(leaf);
            self.best = vec![0];
        } else if code == self.best_code {
            self.best.push(self.leaves.len());
            self.leaves.push(leaf);
        }
    }

    /// Vertex potential whose coboundary zeroes the beads on a spanning tree.
    /// Legs are pinned at zero since holonomy moves only act at trivalent
    /// vertices.
    fn potential(&self, position: &[usize], flag_index: &[usize], policy: TreePolicy) -> Vec<i64> {
        let g = self.g;
        let n = g.num_vertices();
        let mut order = vec![0; n];
        for (v, &p) in position.iter().enumerate() {
            order[p] = v;
        }
        if policy == TreePolicy::ReverseBfs {
            order.reverse();
        }
        let sorted_flags = |v: usize| {
            let mut fs = g.vertices()[v].flags().to_vec();
            fs.sort_by_key(|&f| flag_index[f]);
            if policy == TreePolicy::ReverseBfs {
                fs.reverse();
            }
            fs
        };
        let (_, comp) = g.components();
        let mut pot: Vec<Option<i64>> = vec![None; n];
        let mut done_comp = vec![false; n];
        for &root in &order {
            let c = comp[root];
            if done_comp[c] {
                continue;
            }
            done_comp[c] = true;
            let mut seeds: Vec<usize> = order
                .iter()
                .copied()
                .filter(|&v| comp[v] == c && !g.vertices()[v].is_trivalent())
                .collect();
            if seeds.is_empty() {
                seeds.push(root);
            }
            for &s in &seeds {
                pot[s] = Some(0);
            }
            let mut frontier: std::collections::VecDeque<usize> = seeds.into_iter().collect();
            while let Some(x) = match policy {
                TreePolicy::Dfs => frontier.pop_back(),
                _ => frontier.pop_front(),
            } {
                let mut fs = sorted_flags(x);
                if policy == TreePolicy::Dfs {
                    fs.reverse();
                }
                for f in fs {
                    let y = g.vertex_of(partner(f));
                    if pot[y].is_some() {
                        continue;
                    }
                    let e = edge_of(f);
                    let px = pot[x].expect("visited");
                    // c + pot(tail) - pot(head) = 0 on the tree edge
                    pot[y] = Some(if is_tail(f) {
                        self.exps[e] + px
                    } else {
                        px - self.exps[e]
                    });
                    frontier.push_back(y);
                }
            }
        }
        pot.into_iter().map(|p| p.unwrap_or(0)).collect()
    }

    fn code(&self, leaf: &Leaf) -> Vec<i64> {
        let g = self.g;
        let mut code = Vec::with_capacity(3 + 4 * g.num_vertices());
        code.push(g.num_vertices() as i64);
        code.push(g.num_edges() as i64);
        let mut order = vec![0; g.num_vertices()];
        for (v, &p) in leaf.position.iter().enumerate() {
            order[p] = v;
        }
        for &v in &order {
            code.push(self.kind[v]);
            let mut fs = g.vertices()[v].flags().to_vec();
            fs.sort_by_key(|&f| leaf.flag_index[f]);
            for f in fs {
                let here = leaf.flag_index[f];
                let there = leaf.flag_index[partner(f)];
                code.push(there as i64);
                if here < there {
                    code.push(leaf.exps[edge_of(f)]);
                }
            }
        }
        code
    }

    fn build(&self, leaf: &Leaf) -> BeadGraph {
        let g = self.g;
        let nflags = leaf.flag_index.len();
        let mut by_index = vec![0; nflags];
        for (f, &i) in leaf.flag_index.iter().enumerate() {
            by_index[i] = f;
        }
        // edges are numbered by their lower flag index
        let mut new_flag = vec![0; nflags];
        let mut edges = Vec::with_capacity(g.num_edges());
        for i in 0..nflags {
            let f = by_index[i];
            let j = leaf.flag_index[partner(f)];
            if i < j {
                let e = edges.len();
                new_flag[i] = tail_flag(e);
                new_flag[j] = head_flag(e);
                edges.push(Edge {
                    bead: LaurentPoly::t_pow(leaf.exps[edge_of(f)]),
                });
            }
        }
        let mut order = vec![0; g.num_vertices()];
        for (v, &p) in leaf.position.iter().enumerate() {
            order[p] = v;
        }
        let vertices = order
            .iter()
            .map(|&v| {
                let mut idx: Vec<usize> = g.vertices()[v].flags().iter().map(|&f| leaf.flag_index[f]).collect();
                idx.sort_unstable();
                match &g.vertices()[v] {
                    Vertex::Trivalent(_) => Vertex::Trivalent([new_flag[idx[0]], new_flag[idx[1]], new_flag[idx[2]]]),
                    Vertex::Leg { color, .. } => Vertex::Leg {
                        color: color.clone(),
                        flag: new_flag[idx[0]],
                    },
                }
            })
            .collect();
        BeadGraph::new(vertices, edges).expect("canonical relabeling is valid")
    }
}

fn permutations(items: &[Flag]) -> Vec<Vec<Flag>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_relabel(g: &BeadGraph, rng: &mut ChaCha8Rng) -> BeadGraph {
        let mut vperm: Vec<usize> = (0..g.num_vertices()).collect();
        vperm.shuffle(rng);
        let mut eperm: Vec<usize> = (0..g.num_edges()).collect();
        eperm.shuffle(rng);
        let reverse: Vec<bool> = (0..g.num_edges()).map(|_| rng.gen()).collect();
        let rotate: Vec<usize> = (0..g.num_vertices()).map(|_| rng.gen_range(0..3)).collect();
        g.relabel(&vperm, &eperm, &reverse, &rotate)
    }

    #[test]
    fn tadpole_vanishes() {
        assert_eq!(canonicalize(&tadpole()).unwrap().sign, 0);
        assert_eq!(canonicalize(&dumbbell()).unwrap().sign, 0);
    }

    #[test]
    fn theta_is_stable_under_relabeling() {
        let base = canonicalize(&theta()).unwrap();
        assert_ne!(base.sign, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let h = random_relabel(&theta(), &mut rng);
            let c = canonicalize(&h).unwrap();
            assert_eq!(c.key, base.key);
            assert_eq!(c.graph, base.graph);
            assert_eq!(c.sign, base.sign);
        }
    }

    #[test]
    fn reversed_bead_edge() {
        let g = theta_with_beads([LaurentPoly::t(), LaurentPoly::one(), LaurentPoly::one()]);
        let mut h = g.clone();
        h.reverse_edge(0);
        assert_eq!(h.bead(0), &LaurentPoly::t_pow(-1));
        let (a, b) = (canonicalize(&g).unwrap(), canonicalize(&h).unwrap());
        assert_eq!(a.key, b.key);
        assert_eq!(a.sign, b.sign);
    }

    #[test]
    fn flip_negates_sign() {
        for g in [theta(), tetrahedron(), wheel(4), vortex(["x", "y", STAR])] {
            let a = canonicalize(&g).unwrap();
            let mut h = g.clone();
            h.flip_vertex(0);
            let b = canonicalize(&h).unwrap();
            assert_eq!(a.key, b.key);
            assert_eq!(a.sign, -b.sign);
        }
    }

    #[test]
    fn idempotent() {
        for g in [theta(), tetrahedron(), wheel(3), wheel(4), theta().disjoint_union(&tetrahedron())] {
            let a = canonicalize(&g).unwrap();
            let b = canonicalize(&a.graph).unwrap();
            assert_eq!(b.graph, a.graph);
            assert_eq!(b.sign, a.sign.abs());
        }
    }

    #[test]
    fn odd_wheels_vanish() {
        for n in 1..7 {
            let s = canonicalize(&wheel(n)).unwrap().sign;
            assert_eq!(s == 0, n % 2 == 1, "wheel {n}");
        }
    }

    #[test]
    fn automorphism_counts() {
        let opts = CanonOptions::default();
        assert_eq!(automorphisms(&theta(), &opts).unwrap().len(), 12);
        assert_eq!(automorphisms(&strut(STAR, STAR, LaurentPoly::one()), &opts).unwrap().len(), 2);
        assert_eq!(automorphisms(&strut("x", STAR, LaurentPoly::one()), &opts).unwrap().len(), 1);
        assert_eq!(automorphisms(&tetrahedron(), &opts).unwrap().len(), 24);
        let beaded = theta_with_beads([LaurentPoly::t(), LaurentPoly::t_pow(2), LaurentPoly::t_pow(3)]);
        assert_eq!(automorphisms(&beaded, &opts).unwrap().len(), 1);
    }

    #[test]
    fn automorphism_signs_match_vanishing() {
        let opts = CanonOptions::default();
        let auts = automorphisms(&tadpole(), &opts).unwrap();
        assert!(auts.iter().any(|a| a.sign == -1));
        let auts = automorphisms(&theta(), &opts).unwrap();
        assert!(auts.iter().all(|a| a.sign == 1));
    }

    #[test]
    fn holonomy_classes() {
        let opts = CanonOptions::with_holonomy(TreePolicy::Bfs);
        let g = theta_with_beads([LaurentPoly::t(), LaurentPoly::one(), LaurentPoly::one()]);
        let mut h = g.clone();
        h.holonomy_move(1, -3);
        let (a, b) = (canonicalize_with(&g, &opts).unwrap(), canonicalize_with(&h, &opts).unwrap());
        assert_eq!(a.key, b.key);
        assert_eq!(a.sign, b.sign);
        // a nontrivial class differs from the trivial one
        let c = canonicalize_with(&theta(), &opts).unwrap();
        assert_ne!(a.key, c.key);
    }

    #[test]
    fn vertex_bound() {
        let opts = CanonOptions {
            vertex_bound: 3,
            holonomy: None,
        };
        assert!(matches!(
            canonicalize_with(&tetrahedron(), &opts),
            Err(GraphError::TooLarge { count: 4, bound: 3 })
        ));
    }

    #[test]
    fn rejects_polynomial_beads() {
        let g = theta_with_beads(["1 + t".parse().unwrap(), LaurentPoly::one(), LaurentPoly::one()]);
        assert!(matches!(canonicalize(&g), Err(GraphError::NonMonomialBead { .. })));
    }

    #[test]
    fn empty_graph() {
        let c = canonicalize(&BeadGraph::empty()).unwrap();
        assert_eq!(c.sign, 1);
        assert_eq!(c.graph.num_vertices(), 0);
    }
}
