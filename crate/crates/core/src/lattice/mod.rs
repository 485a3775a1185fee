//! Exact integer and rational linear algebra on lattice vectors.
//!
//! Everything here is arbitrary precision. The double description kernel
//! produces coefficient growth that would overflow machine integers on the
//! larger nef systems, so fixed-width arithmetic is never used.

mod linalg;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use linalg::{
    dot_rat, in_row_span, nullspace, primitive_from_rats, rank, rref, solve_square, Rref,
};
pub use snf::{smith_normal_form, SmithForm};

use crate::polyhedra::{dd_convert, HCone};

/// Exact rational number. The underlying type keeps the denominator positive
/// and the fraction reduced.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("row {row} has length {found}, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A vector of the lattice `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatVec(Vec<BigInt>);

impl LatVec {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatVec(coords)
    }

    pub fn zero(dim: usize) -> Self {
        LatVec(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Gcd of the absolute values of the entries; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn dot(&self, other: &LatVec) -> BigInt {
        assert_eq!(self.dim(), other.dim(), "dot product of mismatched vectors");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn to_rats(&self) -> Vec<Rat> {
        self.0
            .iter()
            .map(|x| Rat::from_integer(x.clone()))
            .collect()
    }

    pub fn add(&self, other: &LatVec) -> LatVec {
        assert_eq!(self.dim(), other.dim());
        LatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> LatVec {
        LatVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> LatVec {
        LatVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl From<Vec<i64>> for LatVec {
    fn from(v: Vec<i64>) -> Self {
        LatVec(v.into_iter().map(BigInt::from).collect())
    }
}

impl From<&[i64]> for LatVec {
    fn from(v: &[i64]) -> Self {
        LatVec(v.iter().copied().map(BigInt::from).collect())
    }
}

impl<const N: usize> From<[i64; N]> for LatVec {
    fn from(v: [i64; N]) -> Self {
        LatVec(v.into_iter().map(BigInt::from).collect())
    }
}

impl fmt::Display for LatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    ncols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>, ncols: usize) -> Result<Self, LatticeError> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(LatticeError::Ragged {
                    row: i,
                    expected: ncols,
                    found: r.len(),
                });
            }
        }
        Ok(IntMatrix { rows, ncols })
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().copied().map(BigInt::from).collect())
            .collect();
        Self::new(rows, ncols).expect("ragged matrix literal")
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_lat_rows(rows: &[LatVec], ncols: usize) -> Result<Self, LatticeError> {
        Self::new(rows.iter().map(|r| r.coords().to_vec()).collect(), ncols)
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            rows: vec![vec![BigInt::zero(); ncols]; nrows],
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub(crate) fn rows_mut(&mut self) -> &mut Vec<Vec<BigInt>> {
        &mut self.rows
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        IntMatrix {
            rows,
            ncols: self.nrows(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        if self.ncols != other.nrows() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.ncols,
                found: other.nrows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.ncols)
                    .map(|j| r.iter().zip(&other.rows).map(|(a, o)| a * &o[j]).sum())
                    .collect()
            })
            .collect();
        Ok(IntMatrix {
            rows,
            ncols: other.ncols,
        })
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &LatVec) -> Result<LatVec, LatticeError> {
        if v.dim() != self.ncols {
            return Err(LatticeError::DimensionMismatch {
                expected: self.ncols,
                found: v.dim(),
            });
        }
        Ok(LatVec::new(
            self.rows
                .iter()
                .map(|r| r.iter().zip(v.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    pub fn to_rat_rows(&self) -> Vec<Vec<Rat>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect()
    }
}

/// Divides `v` by the gcd of its entries.
pub fn primitive(v: &LatVec) -> Result<LatVec, LatticeError> {
    let g = v.content();
    if g.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(LatVec(v.0.iter().map(|x| x / &g).collect()))
}

pub fn is_primitive(v: &LatVec) -> bool {
    v.content().is_one()
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt, LatticeError> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(LatticeError::NotSquare {
            rows: n,
            cols: m.ncols(),
        });
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.rows.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Whether the nonnegative span of `vs` is all of `R^n`.
///
/// Decided by duality: the cone `{x : <x, v> >= 0 for all v}` must be `{0}`.
/// Returns false on empty input.
pub fn positively_spans(vs: &[LatVec]) -> bool {
    let Some(first) = vs.first() else {
        return false;
    };
    let dim = first.dim();
    assert!(
        vs.iter().all(|v| v.dim() == dim),
        "positively_spans: vectors of unequal dimension"
    );
    let rows: Vec<Vec<Rat>> = vs.iter().map(LatVec::to_rats).collect();
    let dual = dd_convert(&HCone::new(dim, rows).expect("rows checked above"));
    dual.extreme_rays().is_empty() && dual.lineality().is_empty()
}

/// Least common multiple of the denominators of `xs` (1 for empty input).
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

pub(crate) fn abs_cmp(a: &BigInt, b: &BigInt) -> std::cmp::Ordering {
    a.abs().cmp(&b.abs())
}
