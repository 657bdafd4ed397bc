//! Dense exact matrices over the integers and the rationals.
//!
//! Infinite matrices never appear here directly: they are described by an
//! [`EntryGenerator`] and materialized through [`window`].

use std::fmt;
use std::ops::{AddAssign, Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::MatrixError;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

/// Matrix of arbitrary-precision integers.
pub type ExactMatrix = Matrix<BigInt>;

/// Matrix of exact rationals.
pub type RationalMatrix = Matrix<BigRational>;

/// Something that can produce entry `(i, j)` of an infinite matrix for every
/// `i, j >= 0`.
pub trait EntryGenerator {
    fn entry(&self, i: usize, j: usize) -> BigInt;
}

impl<F> EntryGenerator for F
where
    F: Fn(usize, usize) -> BigInt,
{
    fn entry(&self, i: usize, j: usize) -> BigInt {
        self(i, j)
    }
}

/// The `n x m` block of `gen` with rows `0..n` and columns `k..k+m`.
pub fn window<G: EntryGenerator + ?Sized>(gen: &G, n: usize, m: usize, k: usize) -> ExactMatrix {
    Matrix::from_fn(n, m, |i, j| gen.entry(i, k + j))
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::EntryCount {
                rows,
                cols,
                got: entries.len(),
            });
        }
        Ok(Matrix {
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(MatrixError::RaggedRows {
                expected: ncols,
                got: bad.len(),
            });
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// The block with rows `r0..r0+rows` and columns `c0..c0+cols`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(
            r0 + rows <= self.rows && c0 + cols <= self.cols,
            "submatrix out of bounds"
        );
        Matrix::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Upper-left `n x n` block.
    pub fn leading(&self, n: usize) -> Self {
        self.submatrix(0, 0, n, n)
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn diagonal(values: &[T]) -> Self {
        let n = values.len();
        Matrix::from_fn(
            n,
            n,
            |i, j| if i == j { values[i].clone() } else { T::zero() },
        )
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + for<'a> AddAssign<&'a T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    /// Exact product. Zero entries of `self` are skipped, which makes
    /// products of the sparse 0/1 families cheap.
    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = vec![T::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            let out_row = &mut out[i * rhs.cols..(i + 1) * rhs.cols];
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(rhs.row(l)) {
                    if !b.is_zero() {
                        *o += &(a * b);
                    }
                }
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: rhs.cols,
            entries: out,
        })
    }
}

/// Free-function form of [`Matrix::mul`].
pub fn mat_mul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
    a.mul(b)
}

impl ExactMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn to_rational(&self) -> RationalMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// `self^e`. Negative exponents need a triangular matrix with `+-1` on
    /// the diagonal, whose inverse is again integral.
    pub fn pow(&self, e: i64) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let base = if e < 0 {
            self.unimodular_triangular_inverse()?
        } else {
            self.clone()
        };
        let mut exp = e.unsigned_abs();
        let mut acc = Matrix::identity(self.rows);
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    fn unimodular_triangular_inverse(&self) -> Result<Self, MatrixError> {
        let n = self.rows;
        let unit_diag = (0..n).all(|i| self.get(i, i).abs().is_one());
        if !unit_diag {
            return Err(MatrixError::NotUnimodularTriangular);
        }
        if self.is_upper_triangular() {
            // Solve U X = I by back substitution; dividing by +-1 is multiplying by it.
            let mut x = ExactMatrix::zeros(n, n);
            for col in 0..n {
                for i in (0..=col).rev() {
                    let mut acc = if i == col {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    };
                    for j in i + 1..=col {
                        acc -= self.get(i, j) * x.get(j, col);
                    }
                    *x.get_mut(i, col) = acc * self.get(i, i);
                }
            }
            Ok(x)
        } else if self.is_lower_triangular() {
            Ok(self
                .transpose()
                .unimodular_triangular_inverse()?
                .transpose())
        } else {
            Err(MatrixError::NotUnimodularTriangular)
        }
    }

    /// Exact determinant by single-step Bareiss elimination with row swaps
    /// on zero pivots. The empty matrix has determinant 1.
    pub fn determinant(&self) -> Result<BigInt, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = self.iter_rows().map(<[BigInt]>::to_vec).collect();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            let (top, bottom) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            let pivot = &pivot_row[k];
            for row in bottom.iter_mut() {
                let lead = row[k].clone();
                for j in k + 1..n {
                    let v = &row[j] * pivot - &lead * &pivot_row[j];
                    row[j] = if prev.is_one() { v } else { v.div_floor(&prev) };
                }
                row[k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Unique `L D U` factorization with unit-diagonal `L` and `U`.
    pub fn ldu(&self) -> Result<LduFactors, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut work: Vec<Vec<BigRational>> = self
            .iter_rows()
            .map(|r| {
                r.iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        let mut lower = RationalMatrix::identity(n);
        let mut pivots = Vec::with_capacity(n);
        for k in 0..n {
            let pivot = work[k][k].clone();
            if pivot.is_zero() {
                return Err(MatrixError::VanishingMinor { order: k + 1 });
            }
            for i in k + 1..n {
                let factor = &work[i][k] / &pivot;
                if factor.is_zero() {
                    continue;
                }
                let (above, below) = work.split_at_mut(i);
                for (x, y) in below[0][k..].iter_mut().zip(&above[k][k..]) {
                    *x -= &factor * y;
                }
                *lower.get_mut(i, k) = factor;
            }
            pivots.push(pivot);
        }
        let upper = Matrix::from_fn(n, n, |i, j| {
            if j < i {
                BigRational::zero()
            } else {
                &work[i][j] / &pivots[i]
            }
        });
        Ok(LduFactors {
            l: lower,
            d: pivots,
            u: upper,
        })
    }

    /// Rank of the matrix reduced entrywise modulo the prime `p`.
    pub fn rank_mod_p(&self, p: u64) -> Result<usize, MatrixError> {
        if !is_prime(p) {
            return Err(MatrixError::NotPrime(p));
        }
        let modulus = BigInt::from(p);
        let mut rows: Vec<Vec<u64>> = self
            .iter_rows()
            .map(|r| {
                r.iter()
                    .map(|x| x.mod_floor(&modulus).to_u64().expect("residue fits in u64"))
                    .collect()
            })
            .collect();
        Ok(rank_mod_p_rows(&mut rows, self.cols, p))
    }
}

/// Result of [`ExactMatrix::ldu`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LduFactors {
    pub l: RationalMatrix,
    pub d: Vec<BigRational>,
    pub u: RationalMatrix,
}

impl LduFactors {
    /// `L * diag(D) * U`.
    pub fn reconstruct(&self) -> RationalMatrix {
        let ld = self
            .l
            .mul(&RationalMatrix::diagonal(&self.d))
            .expect("square factors");
        ld.mul(&self.u).expect("square factors")
    }

    /// `L` and `U` as integer matrices, when every entry is integral.
    pub fn integral_factors(&self) -> Option<(ExactMatrix, ExactMatrix)> {
        let to_int = |m: &RationalMatrix| -> Option<ExactMatrix> {
            if m.entries().iter().all(|x| x.is_integer()) {
                Some(m.map(|x| x.to_integer()))
            } else {
                None
            }
        };
        Some((to_int(&self.l)?, to_int(&self.u)?))
    }
}

/// Gaussian elimination over F_p on rows of residues `< p`. The first
/// nonzero entry in the lowest-indexed remaining row is used as pivot.
pub(crate) fn rank_mod_p_rows(rows: &mut [Vec<u64>], cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot_row) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let (top, bottom) = rows.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in bottom.iter_mut() {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(pivot.iter()) {
                *x = (*x + p - mul_mod(factor, y, p)) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut result = 1;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl<T: Neg<Output = T> + Clone> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

// Entries travel as decimal strings so arbitrary precision survives JSON.
impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixWire {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .iter_rows()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        if wire.entries.len() != wire.rows || wire.entries.iter().any(|r| r.len() != wire.cols) {
            return Err(D::Error::custom(format!(
                "entries do not form a {}x{} matrix",
                wire.rows, wire.cols
            )));
        }
        let mut entries = Vec::with_capacity(wire.rows * wire.cols);
        for s in wire.entries.iter().flatten() {
            entries.push(
                s.parse::<BigInt>()
                    .map_err(|e| D::Error::custom(format!("bad integer {s:?}: {e}")))?,
            );
        }
        Ok(Matrix {
            rows: wire.rows,
            cols: wire.cols,
            entries,
        })
    }
}
