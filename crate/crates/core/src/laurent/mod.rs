//! Laurent polynomials over the rationals.
//!
//! A [`LaurentPoly`] is an element of `Q[t, t^-1]` stored as a sparse map from
//! exponent to coefficient. Zero coefficients are never stored, so structural
//! equality is ring equality. The ring carries the involution `t -> t^-1` and
//! the augmentation `t -> 1`.
//!
//! The text syntax is `2*t^-1 + 1 - 1/2*t^3`; whitespace is ignored on input
//! and [`Display`](std::fmt::Display) emits the normalized form, which parses
//! back to the same value.

mod matrix;

pub use matrix::{block_negative_inverse, Matrix, MatrixError};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Types carrying the bar involution of the bead ring.
pub trait Involution {
    fn involute(&self) -> Self;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("coefficient {0} is not an integer")]
    NotIntegral(BigRational),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    /// `t^k` with coefficient one.
    pub fn t_pow(k: i64) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(coeff: BigRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Integer coefficients, convenient in tests: `from_ints(&[(-1, 2), (0, 1)])`.
    pub fn from_ints(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&(k, c)| (k, BigRational::from_integer(BigInt::from(c)))),
        )
    }

    fn add_term(&mut self, exp: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `Some((c, k))` when the polynomial is the single term `c t^k`.
    pub fn as_monomial(&self) -> Option<(&BigRational, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (c, *k))
        } else {
            None
        }
    }

    /// `Some(c)` when the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Evaluation at `t = 1`.
    pub fn augment(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Substitutes `t -> t^-1`.
    pub fn involute(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Integer-coefficient mode: fails on the first non-integer coefficient.
    pub fn ensure_integral(&self) -> Result<(), LaurentError> {
        match self.terms.values().find(|c| !c.is_integer()) {
            Some(c) => Err(LaurentError::NotIntegral(c.clone())),
            None => Ok(()),
        }
    }
}

impl Involution for LaurentPoly {
    fn involute(&self) -> Self {
        LaurentPoly::involute(self)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, -c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, abs: &BigRational, exp: i64) -> fmt::Result {
    if exp == 0 {
        return write!(f, "{abs}");
    }
    if !abs.is_one() {
        write!(f, "{abs}*")?;
    }
    if exp == 1 {
        write!(f, "t")
    } else {
        write!(f, "t^{exp}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exp, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_monomial(f, &c.abs(), *exp)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        Self { chars, idx: 0, src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars
            .get(self.idx)
            .map(|&(p, _)| p)
            .unwrap_or(self.src.len() + 1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, LaurentError> {
        Err(LaurentError::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.idx;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.idx += 1;
        }
        if self.idx == start {
            None
        } else {
            Some(self.chars[start..self.idx].iter().map(|&(_, c)| c).collect())
        }
    }

    fn rational(&mut self) -> Result<Option<BigRational>, LaurentError> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let num: BigInt = num.parse().expect("ascii digits");
        if self.eat('/') {
            let Some(den) = self.digits() else {
                return self.err("expected denominator after '/'");
            };
            let den: BigInt = den.parse().expect("ascii digits");
            if den.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Some(BigRational::new(num, den)))
        } else {
            Ok(Some(BigRational::from_integer(num)))
        }
    }

    fn exponent(&mut self) -> Result<i64, LaurentError> {
        if !self.eat('t') {
            return self.err("expected 't'");
        }
        if !self.eat('^') {
            return Ok(1);
        }
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let Some(d) = self.digits() else {
            return self.err("expected integer exponent");
        };
        let Ok(k) = d.parse::<i64>() else {
            return self.err("exponent out of range");
        };
        Ok(if neg { -k } else { k })
    }

    fn term(&mut self) -> Result<(i64, BigRational), LaurentError> {
        match self.rational()? {
            Some(c) => {
                if self.eat('*') || self.peek() == Some('t') {
                    Ok((self.exponent()?, c))
                } else {
                    Ok((0, c))
                }
            }
            None if self.peek() == Some('t') => Ok((self.exponent()?, BigRational::one())),
            None => self.err("expected coefficient or 't'"),
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly, LaurentError> {
        if self.chars.is_empty() {
            return self.err("empty polynomial");
        }
        let mut out = LaurentPoly::zero();
        let mut first = true;
        while self.peek().is_some() {
            let neg = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                return self.err("expected '+' or '-'");
            };
            first = false;
            let (k, c) = self.term()?;
            out.add_term(k, if neg { -c } else { c });
        }
        Ok(out)
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn involution_examples() {
        assert_eq!(p("t").involute(), p("t^-1"));
        assert_eq!(p("1").involute(), p("1"));
        assert_eq!(p("2t + t^-3").involute(), p("2*t^-1 + t^3"));
    }

    #[test]
    fn augmentation_examples() {
        assert_eq!(p("t").augment(), q(1, 1));
        assert_eq!(LaurentPoly::zero().augment(), q(0, 1));
        assert_eq!(p("3t^2 - t + 1").augment(), q(3, 1));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p("1+t") * p("1-t^-1"), p("t - t^-1"));
        let x = p("2*t^-1 + 1 - 1/2*t^3");
        assert_eq!(&x + &LaurentPoly::zero(), x);
        assert_eq!(p("t^2") * p("t^-2"), LaurentPoly::one());
        assert_eq!(&x - &x, LaurentPoly::zero());
    }

    #[test]
    fn display_is_normalized() {
        let x = p("  - 1/2 * t^3 + 2*t^-1+1 ");
        assert_eq!(x.to_string(), "2*t^-1 + 1 - 1/2*t^3");
        assert_eq!(p("t - t").to_string(), "0");
        assert_eq!(p("-t").to_string(), "-t");
        assert_eq!(p("4/2 t^+2").to_string(), "2*t^2");
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = "1 + * t".parse::<LaurentPoly>().unwrap_err();
        assert_eq!(
            err,
            LaurentError::Parse {
                pos: 5,
                msg: "expected coefficient or 't'".into()
            }
        );
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("1/0".parse::<LaurentPoly>().is_err());
        assert!("t^".parse::<LaurentPoly>().is_err());
        assert!("2t3".parse::<LaurentPoly>().is_err());
        assert_eq!(p("2 3"), p("23"));
    }

    #[test]
    fn integral_mode() {
        assert!(p("3t - 2").ensure_integral().is_ok());
        assert_eq!(
            p("1/2t").ensure_integral(),
            Err(LaurentError::NotIntegral(q(1, 2)))
        );
    }

    #[test]
    fn monomial_views() {
        assert_eq!(p("-3t^2").as_monomial(), Some((&q(-3, 1), 2)));
        assert_eq!(p("1 + t").as_monomial(), None);
        assert_eq!(p("5").as_constant(), Some(q(5, 1)));
        assert_eq!(LaurentPoly::zero().as_constant(), Some(q(0, 1)));
        assert_eq!(p("t").as_constant(), None);
    }
}
