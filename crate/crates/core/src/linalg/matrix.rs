use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left_rows}x{left_cols} and {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ExactMatrix {
    /// # Panics
    ///
    /// If either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        ExactMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        ExactMatrix::from_fn(rows, cols, |_, _| BigInt::one())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// # Panics
    ///
    /// If the rows are empty or ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix::from_fn(r, c, |i, j| rows[i][j].clone().into())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn scale(&self, c: &BigInt) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `self - c·I`.
    pub fn shift_diagonal(&self, c: &BigInt) -> ExactMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.data[i * self.cols + i] -= c;
        }
        m
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.check_same_shape(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.check_same_shape(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// First entry (row-major) where the two matrices differ.
    pub fn first_difference(&self, other: &ExactMatrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|idx| (idx / self.cols, idx % self.cols))
    }

    fn check_same_shape(&self, other: &ExactMatrix) -> Result<(), LinalgError> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(self.mismatch(other))
        }
    }

    fn mismatch(&self, other: &ExactMatrix) -> LinalgError {
        LinalgError::DimensionMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    /// Entries as `i64` together with the largest absolute value, if every
    /// entry fits.
    fn as_small(&self) -> Option<(Vec<i64>, u128)> {
        let mut max = 0u128;
        let small = self
            .data
            .iter()
            .map(|x| {
                let v = x.to_i64()?;
                max = max.max(v.unsigned_abs() as u128);
                Some(v)
            })
            .collect::<Option<Vec<_>>>()?;
        Some((small, max))
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Exact product `a · b`.
///
/// When every entry fits in `i64` and `inner · max|a| · max|b|` fits in
/// `i128`, the sums are accumulated in `i128`; otherwise in `BigInt`. Both
/// paths are exact.
pub fn matmul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
    if a.cols != b.rows {
        return Err(a.mismatch(b));
    }
    let (n, inner, m) = (a.rows, a.cols, b.cols);

    if let (Some((sa, ma)), Some((sb, mb))) = (a.as_small(), b.as_small()) {
        let bound = ma
            .checked_mul(mb)
            .and_then(|p| p.checked_mul(inner as u128));
        if bound.is_some_and(|bd| bd <= i128::MAX as u128) {
            let mut acc = vec![0i128; n * m];
            for i in 0..n {
                let out = &mut acc[i * m..(i + 1) * m];
                for t in 0..inner {
                    let x = sa[i * inner + t] as i128;
                    if x == 0 {
                        continue;
                    }
                    let brow = &sb[t * m..(t + 1) * m];
                    for (o, &y) in out.iter_mut().zip(brow) {
                        *o += x * y as i128;
                    }
                }
            }
            return Ok(ExactMatrix {
                rows: n,
                cols: m,
                data: acc.into_iter().map(BigInt::from).collect(),
            });
        }
    }

    let mut data = vec![BigInt::zero(); n * m];
    for i in 0..n {
        for t in 0..inner {
            let x = a.get(i, t);
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                data[i * m + j] += x * b.get(t, j);
            }
        }
    }
    Ok(ExactMatrix {
        rows: n,
        cols: m,
        data,
    })
}

/// Largest absolute entry.
pub fn max_abs(m: &ExactMatrix) -> BigInt {
    m.entries()
        .iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}
