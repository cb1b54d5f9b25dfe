use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// A small dense integer matrix with exact arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(rows.iter().all(|r| r.as_ref().len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .flat_map(|r| r.as_ref().iter().copied())
                .collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Column vector `v` as an `n x 1` matrix.
    pub fn column(v: &[i64]) -> Self {
        IntMatrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// Row vector `v` as a `1 x n` matrix.
    pub fn row(v: &[i64]) -> Self {
        IntMatrix {
            rows: 1,
            cols: v.len(),
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn row_slice(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, factor: i64) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * factor).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        (0..e).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row_slice(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `Σ coeffs[i] * self^i`, lowest degree first.
    pub fn eval_poly(&self, coeffs: &[i64]) -> Self {
        let mut acc = Self::zeros(self.rows, self.cols);
        let mut power = Self::identity(self.rows);
        for &c in coeffs {
            acc = &acc + &power.scale(c);
            power = &power * self;
        }
        acc
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row_slice(i).iter().map(i64::to_string).collect();
            writeln!(f, "({})", row.join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixRole {
    /// Advances the structural vector from `H^∇(2^t - 1)` to `H^∇(2^(t+1) - 1)`,
    /// and in general from `H^∇m` to `H^∇(2m + 1)`.
    Transfer,
    /// Advances the structural vector from `H^∇m` to `H^∇(2m)` (`k = 8` only).
    Squaring,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    pub k: u32,
    pub role: MatrixRole,
    pub matrix: IntMatrix,
}

/// The transfer matrix `M` for `k` in `4..=8`.
pub fn transfer_matrix(k: u32) -> Result<TransferMatrix> {
    let matrix = match k {
        8 => IntMatrix::from_rows(&[
            [2, 4, 6, 0, 6],
            [0, 3, 1, 1, 2],
            [2, 0, 0, 0, 0],
            [0, 2, 0, 0, 0],
            [0, 0, 2, 0, 2],
        ]),
        4 => IntMatrix::from_rows(&[[0, 4, 3], [0, 2, 1], [2, -2, 1]]),
        5 => IntMatrix::from_rows(&[[0, 4, 3], [0, 2, 1], [3, -2, 2]]),
        6 => IntMatrix::from_rows(&[[2, 4, 5], [0, 3, 2], [2, -2, 1]]),
        7 => IntMatrix::from_rows(&[[2, 4, 5], [0, 3, 2], [3, -2, 2]]),
        _ => {
            return Err(Error::domain(format!(
                "transfer matrices exist for k in 4..=8, got k={k}"
            )))
        }
    };
    Ok(TransferMatrix {
        k,
        role: MatrixRole::Transfer,
        matrix,
    })
}

/// The squaring matrix `W` for `k = 8`.
pub fn squaring_matrix() -> TransferMatrix {
    TransferMatrix {
        k: 8,
        role: MatrixRole::Squaring,
        matrix: IntMatrix::from_rows(&[
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0],
            [1, 0, 0, 0, 0],
            [0, 1, 0, 0, 0],
            [0, 0, 1, 0, 1],
        ]),
    }
}

/// The row vector that sums element counts: `(1,0,1,0,1)` or `(1,0,1)`.
pub fn selector(k: u32) -> Result<Vec<i64>> {
    match k {
        8 => Ok(vec![1, 0, 1, 0, 1]),
        4..=7 => Ok(vec![1, 0, 1]),
        _ => Err(Error::domain(format!("no structural vectors for k={k}"))),
    }
}

/// Structural vector of `{1}`: a single C chain.
pub fn initial_vector(k: u32) -> Result<Vec<i64>> {
    match k {
        8 => Ok(vec![0, 0, 0, 0, 1]),
        4..=7 => Ok(vec![0, 0, 1]),
        _ => Err(Error::domain(format!("no structural vectors for k={k}"))),
    }
}
