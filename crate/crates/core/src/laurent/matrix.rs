use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_traits::{One, Zero};
use thiserror::Error;

use super::Involution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("entry grid has {len} entries, expected {rows}x{cols}")]
    Grid { rows: usize, cols: usize, len: usize },
    #[error("cannot multiply {0}x{1} by {2}x{3}")]
    Mismatch(usize, usize, usize, usize),
    #[error("not of block form [[0, I], [I, B]]: {0}")]
    BlockShape(String),
}

/// Dense matrix over a commutative ring. `LaurentMatrix` is the usual instance.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Grid {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.entries[r * self.cols + c] = v;
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let entries = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Copies out the `rows x cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + PartialEq + Add<Output = T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Mismatch(
                self.rows, self.cols, rhs.rows, rhs.cols,
            ));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    let cur = std::mem::replace(&mut out.entries[idx], T::zero());
                    out.entries[idx] = cur + a * b;
                }
            }
        }
        Ok(out)
    }
}

impl<T: Clone + Neg<Output = T>> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().cloned().map(|x| -x).collect(),
        }
    }
}

impl<T: Clone + Involution> Matrix<T> {
    /// Transpose combined with the entrywise involution.
    pub fn conjugate_transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).involute());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{}", self.rows, self.cols, self)
    }
}

/// Negative inverse of a linking matrix of the shape `[[0, I], [I, B]]`.
///
/// Returns `[[B, -I], [-I, 0]]`. `B` must be hermitian for the bar
/// involution (`B^T` with every entry involuted equals `B`). No general
/// inversion is attempted; anything not of this shape is rejected.
pub fn block_negative_inverse<T>(m: &Matrix<T>) -> Result<Matrix<T>, MatrixError>
where
    T: Clone + Zero + One + PartialEq + Neg<Output = T> + Involution + Add<Output = T>,
{
    if m.rows != m.cols {
        return Err(MatrixError::BlockShape(format!(
            "matrix is {}x{}, not square",
            m.rows, m.cols
        )));
    }
    if !m.rows.is_multiple_of(2) {
        return Err(MatrixError::BlockShape(format!(
            "odd size {} cannot split into equal blocks",
            m.rows
        )));
    }
    let k = m.rows / 2;
    for r in 0..m.rows {
        for c in 0..m.cols {
            let v = m.get(r, c);
            let expect_one = (r < k && c == r + k) || (r >= k && c + k == r);
            let in_b = r >= k && c >= k;
            if in_b {
                continue;
            }
            let ok = if expect_one { v.is_one() } else { v.is_zero() };
            if !ok {
                return Err(MatrixError::BlockShape(format!(
                    "unexpected entry at ({r}, {c})"
                )));
            }
        }
    }
    let b = m.block(k, k, k, k);
    if b.conjugate_transpose() != b {
        return Err(MatrixError::BlockShape(
            "lower-right block is not hermitian under the involution".into(),
        ));
    }
    Ok(Matrix::from_fn(2 * k, 2 * k, |r, c| {
        if r < k && c < k {
            b.get(r, c).clone()
        } else if (r < k && c == r + k) || (r >= k && c + k == r) {
            -T::one()
        } else {
            T::zero()
        }
    }))
}
