//! Dense lower-triangular matrices with exact entries.
//!
//! Rows and columns are 1-indexed to match the usual double-subscript
//! notation; entry(n, k) is identically zero for k > n. Inversion is exact
//! back-substitution and is only defined for rational entries.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rat::{parse_rat, rat_to_string, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularMatrix<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Clone + Zero> TriangularMatrix<T> {
    /// Builds an N x N matrix from a 1-indexed entry function, evaluated only
    /// on the triangle k <= n.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let rows = (1..=n)
            .map(|i| (1..=i).map(|j| f(i, j)).collect())
            .collect();
        TriangularMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Entry at 1-indexed (n, k); zero above the diagonal.
    pub fn entry(&self, n: usize, k: usize) -> T {
        assert!(
            n >= 1 && k >= 1 && n <= self.dim(),
            "triangular index ({n},{k}) out of range for dim {}",
            self.dim()
        );
        if k > n {
            T::zero()
        } else {
            self.rows[n - 1][k - 1].clone()
        }
    }

    /// Row n as a slice of its n stored entries.
    pub fn row(&self, n: usize) -> &[T] {
        &self.rows[n - 1]
    }

    /// Leading principal N' x N' block.
    pub fn truncate(&self, n: usize) -> Self {
        assert!(n <= self.dim());
        TriangularMatrix {
            rows: self.rows[..n].to_vec(),
        }
    }
}

impl<T> TriangularMatrix<T>
where
    T: Clone + Zero + One + PartialEq + std::ops::Mul<Output = T>,
{
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_identity(&self) -> bool {
        for i in 1..=self.dim() {
            for j in 1..=i {
                let e = self.entry(i, j);
                if i == j {
                    if e != T::one() {
                        return false;
                    }
                } else if e != T::zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Exact matrix product; both operands must share a dimension.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in product");
        Self::from_fn(self.dim(), |n, k| {
            let mut acc = T::zero();
            for j in k..=n {
                acc = acc + self.entry(n, j) * other.entry(j, k);
            }
            acc
        })
    }
}

impl TriangularMatrix<Rat> {
    /// Exact inverse by back-substitution. The product with the input is the
    /// identity with no tolerance. Fails on a zero diagonal entry, naming the
    /// offending row.
    pub fn invert(&self) -> Result<Self> {
        let n = self.dim();
        for i in 1..=n {
            if self.entry(i, i).is_zero() {
                return Err(Error::SingularMatrix { row: i });
            }
        }
        let mut inv: Vec<Vec<Rat>> = Vec::with_capacity(n);
        for i in 1..=n {
            let mut row = vec![Rat::zero(); i];
            let diag = self.entry(i, i);
            row[i - 1] = Rat::one() / &diag;
            for k in (1..i).rev() {
                // B(i,k) = -(sum_{j=k..i-1} A(i,j) B(j,k)) / A(i,i)
                let mut acc = Rat::zero();
                for j in k..i {
                    acc += self.entry(i, j) * &inv[j - 1][k - 1];
                }
                row[k - 1] = -acc / &diag;
            }
            inv.push(row);
        }
        Ok(TriangularMatrix { rows: inv })
    }
}

impl TriangularMatrix<Polynomial> {
    /// Evaluates every entry at a fixed rational point.
    pub fn eval_at(&self, w0: &Rat) -> TriangularMatrix<Rat> {
        TriangularMatrix {
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|p| p.eval(w0)).collect())
                .collect(),
        }
    }
}

/// Inverts a lower-triangular rational matrix; free-function form of
/// [`TriangularMatrix::invert`].
pub fn invert_triangular(m: &TriangularMatrix<Rat>) -> Result<TriangularMatrix<Rat>> {
    m.invert()
}

/// On-disk form of a rational matrix: rationals as strings so golden files
/// stay bit-exact.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub rows: Vec<Vec<String>>,
}

/// On-disk form of a polynomial matrix: each entry is its coefficient array,
/// constant term first.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyMatrixFile {
    pub n: usize,
    pub rows: Vec<Vec<Vec<String>>>,
}

impl TriangularMatrix<Rat> {
    pub fn to_file(&self) -> MatrixFile {
        MatrixFile {
            n: self.dim(),
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(rat_to_string).collect())
                .collect(),
        }
    }

    pub fn from_file(file: &MatrixFile) -> Result<Self> {
        if file.rows.len() != file.n {
            return Err(Error::Parse(format!(
                "matrix file declares n = {} but has {} rows",
                file.n,
                file.rows.len()
            )));
        }
        let mut rows = Vec::with_capacity(file.n);
        for (i, row) in file.rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    i + 1
                )));
            }
            rows.push(
                row.iter()
                    .map(|s| parse_rat(s))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(TriangularMatrix { rows })
    }

    /// Triangular CSV: row n on its own line with n comma-separated entries.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(rat_to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let row = line.split(',').map(parse_rat).collect::<Result<Vec<_>>>()?;
            if row.len() != i + 1 {
                return Err(Error::Parse(format!(
                    "csv row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    i + 1
                )));
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse("empty matrix csv".into()));
        }
        Ok(TriangularMatrix { rows })
    }
}

impl TriangularMatrix<Polynomial> {
    pub fn to_file(&self) -> PolyMatrixFile {
        PolyMatrixFile {
            n: self.dim(),
            rows: self
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|p| p.coeffs().iter().map(rat_to_string).collect())
                        .collect()
                })
                .collect(),
        }
    }
}
