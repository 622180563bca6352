//! Small dense real matrices.
//!
//! Every group element and generator in the crate is a square matrix of
//! dimension 2, 4, 5 or 6. Storage is a fixed 6×6 array so `Mat` is `Copy`
//! and never allocates; only the leading `dim × dim` block is meaningful.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

const MAX: usize = 6;

#[derive(Clone, Copy, PartialEq)]
pub struct Mat {
    dim: usize,
    data: [[f64; MAX]; MAX],
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 | 5 | 6 => Ok(()),
        _ => Err(Error::UnsupportedDimension(dim)),
    }
}

impl Mat {
    pub fn zeros(dim: usize) -> Self {
        assert!(check_dim(dim).is_ok(), "unsupported matrix dimension {dim}");
        Mat {
            dim,
            data: [[0.0; MAX]; MAX],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Mat::zeros(dim);
        for i in 0..dim {
            m.data[i][i] = 1.0;
        }
        m
    }

    /// Builds a matrix entrywise. Panics on an unsupported dimension.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Mat::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i][j] = f(i, j);
            }
        }
        m
    }

    /// Checked constructor from row slices.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        let mut m = Mat::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::NonFinite("matrix entry"));
                }
                m.data[i][j] = x;
            }
        }
        Ok(m)
    }

    /// Unchecked constructor for fixed tables; the row count selects the dimension.
    pub(crate) fn rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Mat::from_fn(N, |i, j| rows[i][j])
    }

    /// Diagonal matrix.
    pub fn diag(entries: &[f64]) -> Self {
        Mat::from_fn(entries.len(), |i, j| if i == j { entries[i] } else { 0.0 })
    }

    /// Matrix unit `e_{ij}` (single 1 at `(i, j)`).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zeros(dim);
        m.data[i][j] = 1.0;
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.dim && j < self.dim);
        self.data[i][j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        debug_assert!(i < self.dim && j < self.dim);
        self.data[i][j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.data[i][..self.dim].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.dim).map(|i| self.data[i][j]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|i| self.row(i)).collect()
    }

    /// Entries in row-major order.
    pub fn flatten(&self) -> Vec<f64> {
        (0..self.dim)
            .flat_map(|i| (0..self.dim).map(move |j| (i, j)))
            .map(|(i, j)| self.data[i][j])
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.dim, |i, j| self.data[j][i])
    }

    pub fn scale(&self, s: f64) -> Self {
        Mat::from_fn(self.dim, |i, j| s * self.data[i][j])
    }

    pub fn checked_mul(&self, rhs: &Mat) -> Result<Mat> {
        self.same_dim(rhs)?;
        let n = self.dim;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i][k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i][j] += a * rhs.data[k][j];
                }
            }
        }
        if !out.is_finite() {
            return Err(Error::NonFinite("matrix product"));
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Mat) -> Result<Mat> {
        self.same_dim(rhs)?;
        Ok(Mat::from_fn(self.dim, |i, j| {
            self.data[i][j] + rhs.data[i][j]
        }))
    }

    pub fn checked_sub(&self, rhs: &Mat) -> Result<Mat> {
        self.same_dim(rhs)?;
        Ok(Mat::from_fn(self.dim, |i, j| {
            self.data[i][j] - rhs.data[i][j]
        }))
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: x.len(),
            });
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.data[i][j] * x[j]).sum())
            .collect())
    }

    fn same_dim(&self, rhs: &Mat) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.flatten().iter().all(|x| x.is_finite())
    }

    /// True when every entry is an exact integer.
    pub fn is_integer(&self) -> bool {
        self.flatten().iter().all(|x| x.fract() == 0.0)
    }

    /// Max-norm `max |a_ij|`.
    pub fn max_abs(&self) -> f64 {
        self.flatten().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Max-norm of the entrywise difference. Panics if dimensions differ.
    pub fn max_abs_diff(&self, other: &Mat) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        (*self - *other).max_abs()
    }

    /// Frobenius inner product `tr(Aᵀ B)`.
    pub fn dot(&self, other: &Mat) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.flatten()
            .iter()
            .zip(other.flatten())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Copies `self` into the top-left block of a larger matrix.
    ///
    /// With `unit_diagonal` the remaining diagonal is 1 (group elements);
    /// without it the padding is 0 (algebra elements).
    pub fn embed(&self, dim: usize, unit_diagonal: bool) -> Mat {
        assert!(dim >= self.dim);
        let mut out = if unit_diagonal {
            Mat::identity(dim)
        } else {
            Mat::zeros(dim)
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.data[i][j] = self.data[i][j];
            }
        }
        out
    }

    /// Top-left `dim × dim` block.
    pub fn block(&self, dim: usize) -> Mat {
        assert!(dim <= self.dim);
        Mat::from_fn(dim, |i, j| self.data[i][j])
    }

    fn lu(&self) -> (Mat, Vec<usize>, f64) {
        // Doolittle with partial pivoting; returns packed LU, permutation and sign.
        let n = self.dim;
        let mut a = *self;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&x, &y| a.data[x][k].abs().total_cmp(&a.data[y][k].abs()))
                .unwrap();
            if p != k {
                a.data.swap(p, k);
                perm.swap(p, k);
                sign = -sign;
            }
            let pivot = a.data[k][k];
            if pivot == 0.0 {
                continue;
            }
            for i in k + 1..n {
                let l = a.data[i][k] / pivot;
                a.data[i][k] = l;
                for j in k + 1..n {
                    a.data[i][j] -= l * a.data[k][j];
                }
            }
        }
        (a, perm, sign)
    }

    pub fn det(&self) -> f64 {
        let (lu, _, sign) = self.lu();
        (0..self.dim).map(|i| lu.data[i][i]).product::<f64>() * sign
    }

    /// Inverse via LU; fails when `|det| < abs_tol`.
    pub fn inverse(&self, abs_tol: f64) -> Result<Mat> {
        let n = self.dim;
        let (lu, perm, sign) = self.lu();
        let det = (0..n).map(|i| lu.data[i][i]).product::<f64>() * sign;
        if !(det.abs() >= abs_tol) {
            return Err(Error::SingularMatrix { det });
        }
        let mut inv = Mat::zeros(n);
        for col in 0..n {
            // Solve L U x = P e_col.
            let mut x = [0.0; MAX];
            for i in 0..n {
                let mut s = if perm[i] == col { 1.0 } else { 0.0 };
                for k in 0..i {
                    s -= lu.data[i][k] * x[k];
                }
                x[i] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[i];
                for k in i + 1..n {
                    s -= lu.data[i][k] * x[k];
                }
                x[i] = s / lu.data[i][i];
            }
            for i in 0..n {
                inv.data[i][col] = x[i];
            }
        }
        if !inv.is_finite() {
            return Err(Error::SingularMatrix { det });
        }
        Ok(inv)
    }

    /// Similarity transform `s · self · s⁻¹` for a diagonal `s`.
    pub fn diag_similarity(&self, s: &[f64]) -> Mat {
        assert_eq!(s.len(), self.dim);
        Mat::from_fn(self.dim, |i, j| s[i] * self.data[i][j] / s[j])
    }
}

/// Checked product, `a · b`.
pub fn mat_mul(a: &Mat, b: &Mat) -> Result<Mat> {
    a.checked_mul(b)
}

/// Checked inverse with the given singularity threshold.
pub fn mat_inverse(a: &Mat, abs_tol: f64) -> Result<Mat> {
    a.inverse(abs_tol)
}

/// Lie bracket `[x, y] = x·y − y·x`.
pub fn bracket(x: &Mat, y: &Mat) -> Result<Mat> {
    x.checked_mul(y)?.checked_sub(&y.checked_mul(x)?)
}

// Operator impls panic on dimension mismatch; use the checked_* methods at
// API boundaries.
impl Mul for Mat {
    type Output = Mat;
    fn mul(self, rhs: Mat) -> Mat {
        self.checked_mul(&rhs).expect("matrix product")
    }
}

impl Mul<&Mat> for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.checked_mul(rhs).expect("matrix product")
    }
}

impl Add for Mat {
    type Output = Mat;
    fn add(self, rhs: Mat) -> Mat {
        self.checked_add(&rhs).expect("matrix sum")
    }
}

impl Sub for Mat {
    type Output = Mat;
    fn sub(self, rhs: Mat) -> Mat {
        self.checked_sub(&rhs).expect("matrix difference")
    }
}

impl Neg for Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(-1.0)
    }
}

impl Mul<Mat> for f64 {
    type Output = Mat;
    fn mul(self, rhs: Mat) -> Mat {
        rhs.scale(self)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat{}[", self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                write!(f, "{:>12.6} ", self.data[i][j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}
