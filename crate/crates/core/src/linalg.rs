//! Sparse exact elimination over the integers.
//!
//! Rows are kept primitive (content 1, positive leading coefficient) and
//! combined fraction-free, so entries stay small for the ±1 relation matrices
//! built by the algebra module. The pivot of a row is its smallest column, so
//! callers control elimination order through the column numbering.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type SparseRow = BTreeMap<usize, BigInt>;
pub type RationalRow = BTreeMap<usize, BigRational>;

fn make_primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let negate = row.values().next().is_some_and(|v| v.is_negative());
    if g.is_zero() {
        return;
    }
    if !g.is_one() || negate {
        let g = if negate { -g } else { g };
        for v in row.values_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a * row - b * other`, dropping zeros.
fn combine(row: &SparseRow, a: &BigInt, other: &SparseRow, b: &BigInt) -> SparseRow {
    let mut out = SparseRow::new();
    for (&c, v) in row {
        out.insert(c, a * v);
    }
    for (&c, v) in other {
        let e = out.entry(c).or_insert_with(BigInt::zero);
        *e -= b * v;
        if e.is_zero() {
            out.remove(&c);
        }
    }
    out
}

/// Integer row echelon form built one row at a time.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Adds a row; returns its pivot column if it was independent.
    pub fn insert(&mut self, mut row: SparseRow) -> Option<usize> {
        row.retain(|_, v| !v.is_zero());
        loop {
            let (&lead, lv) = row.iter().next()?;
            let Some(prow) = self.rows.get(&lead) else {
                make_primitive(&mut row);
                self.rows.insert(lead, row);
                return Some(lead);
            };
            let pv = &prow[&lead];
            let g = lv.gcd(pv);
            let (a, b) = (pv / &g, lv / &g);
            row = combine(&row, &a, prow, &b);
            make_primitive(&mut row);
        }
    }

    /// Normal form of `v` modulo the row space: the unique representative
    /// supported on non-pivot columns.
    pub fn remainder(&self, v: &RationalRow) -> RationalRow {
        let mut v: RationalRow = v.iter().filter(|(_, x)| !x.is_zero()).map(|(&c, x)| (c, x.clone())).collect();
        let mut cursor = 0usize;
        loop {
            let Some((&c, x)) = v.range(cursor..).find(|(c, _)| self.rows.contains_key(c)) else {
                return v;
            };
            let prow = &self.rows[&c];
            let factor = x / BigRational::from_integer(prow[&c].clone());
            for (&k, pv) in prow {
                let e = v.entry(k).or_insert_with(BigRational::zero);
                *e -= &factor * BigRational::from_integer(pv.clone());
                if e.is_zero() {
                    v.remove(&k);
                }
            }
            cursor = c + 1;
        }
    }

    /// Number of rows whose pivot lies at or beyond `col`. When every column
    /// below `col` is eliminated first, these rows span the relations
    /// supported on columns `col..`.
    pub fn rank_from(&self, col: usize) -> usize {
        self.rows.range(col..).count()
    }
}

pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Clears denominators of a rational row.
pub fn integral_row(v: &RationalRow) -> SparseRow {
    let l = v.values().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(&c, x)| (c, (x * BigRational::from_integer(l.clone())).to_integer()))
        .collect()
}
