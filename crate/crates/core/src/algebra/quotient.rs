//! The quotient by IHX in a fixed degree, with exact rank and reduction.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graphs::{serialize_graph, BeadGraph, CanonicalKey, TreePolicy};
use crate::linalg::{integral_row, Echelon, RationalRow};

use super::{generators, ihx_generators, AlgebraError, DiagramElement, Space};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientOptions {
    /// Bead exponents range over `[-bead_window, bead_window]` (A(Λ) only).
    pub bead_window: i64,
    /// Vassiliev degree bound, required for A(*).
    pub max_vassiliev: Option<usize>,
    pub policy: TreePolicy,
    /// Shuffles the generator (column) order; `None` keeps canonical order.
    pub seed: Option<u64>,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        Self {
            bead_window: 1,
            max_vassiliev: None,
            policy: TreePolicy::Bfs,
            seed: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Quotient {
    space: Space,
    euler: usize,
    options: QuotientOptions,
    generators: Vec<BeadGraph>,
    /// Column of each graph; columns below `first_generator` hold graphs that
    /// only occur inside relations.
    column: HashMap<CanonicalKey, usize>,
    first_generator: usize,
    echelon: Echelon,
    relations: usize,
    basis: Vec<usize>,
}

impl Quotient {
    pub fn build(space: Space, euler: usize, options: QuotientOptions) -> Result<Self, AlgebraError> {
        let gens = generators(space, euler, options.bead_window, options.max_vassiliev, options.policy)?;
        let rels = ihx_generators(space, euler, options.bead_window, options.max_vassiliev, options.policy)?;
        let mut gens: Vec<(CanonicalKey, BeadGraph)> = gens;
        if let Some(seed) = options.seed {
            gens.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }
        let mut column: HashMap<CanonicalKey, usize> = HashMap::new();
        // relation terms outside the generator set are eliminated first
        let known: std::collections::HashSet<&CanonicalKey> = gens.iter().map(|(k, _)| k).collect();
        let mut extra: Vec<CanonicalKey> = Vec::new();
        for r in &rels {
            for (k, _) in r.terms() {
                if !known.contains(k) && !extra.contains(k) {
                    extra.push(k.clone());
                }
            }
        }
        for (i, k) in extra.iter().enumerate() {
            column.insert(k.clone(), i);
        }
        let first_generator = extra.len();
        for (i, (k, _)) in gens.iter().enumerate() {
            column.insert(k.clone(), first_generator + i);
        }
        let mut echelon = Echelon::new();
        for r in &rels {
            let row: RationalRow = r.terms().map(|(k, t)| (column[k], t.coef.clone())).collect();
            echelon.insert(integral_row(&row));
        }
        let total = first_generator + gens.len();
        let basis = (first_generator..total).filter(|&c| !echelon.is_pivot(c)).collect();
        Ok(Self {
            space,
            euler,
            options,
            generators: gens.into_iter().map(|(_, g)| g).collect(),
            column,
            first_generator,
            echelon,
            relations: rels.len(),
            basis,
        })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn euler(&self) -> usize {
        self.euler
    }

    pub fn options(&self) -> &QuotientOptions {
        &self.options
    }

    pub fn generators(&self) -> &[BeadGraph] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relation_count(&self) -> usize {
        self.relations
    }

    /// Rank of the relations restricted to the generator columns.
    pub fn rank(&self) -> usize {
        self.echelon.rank_from(self.first_generator)
    }

    pub fn dimension(&self) -> usize {
        self.generators.len() - self.rank()
    }

    /// Generators whose classes form the basis used by [`Quotient::reduce`].
    pub fn basis_graphs(&self) -> Vec<&BeadGraph> {
        self.basis
            .iter()
            .map(|&c| &self.generators[c - self.first_generator])
            .collect()
    }

    /// Coordinates of `e` in the quotient basis.
    pub fn reduce(&self, e: &DiagramElement) -> Result<Vec<BigRational>, AlgebraError> {
        if e.space() != self.space {
            return Err(AlgebraError::MixedSpaces(e.space(), self.space));
        }
        let e = if e.policy() == self.options.policy {
            e.clone()
        } else {
            e.with_policy(self.options.policy)?
        };
        let mut v = RationalRow::new();
        for (k, t) in e.terms() {
            let deg = t.graph.euler_degree();
            if deg != self.euler {
                return Err(AlgebraError::Degree {
                    got: deg,
                    want: self.euler,
                });
            }
            match self.column.get(k) {
                Some(&c) if c >= self.first_generator => {
                    v.insert(c, t.coef.clone());
                }
                _ => return Err(AlgebraError::OutsideBasis(serialize_graph(&t.graph).replace('\n', "; "))),
            }
        }
        let rem = self.echelon.remainder(&v);
        Ok(self
            .basis
            .iter()
            .map(|c| rem.get(c).cloned().unwrap_or_else(BigRational::zero))
            .collect())
    }

    /// Whether `a` and `b` agree in the quotient.
    pub fn equal(&self, a: &DiagramElement, b: &DiagramElement) -> Result<bool, AlgebraError> {
        Ok(self.reduce(&a.sub(b)?)?.iter().all(Zero::is_zero))
    }
}

/// Dimension of the degree-`euler` part of the quotient; for A(Λ) relative to
/// the bead window, for A(*) summed over Vassiliev degrees up to the bound.
pub fn graded_dimension(space: Space, euler: usize, options: QuotientOptions) -> Result<usize, AlgebraError> {
    Ok(Quotient::build(space, euler, options)?.dimension())
}
