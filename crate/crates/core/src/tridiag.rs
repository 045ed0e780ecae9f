//! Tridiagonal Toeplitz operator `A(a, b, c)`: `a` on the sub-diagonal,
//! `b` on the diagonal, `c` on the super-diagonal.

use serde::Serialize;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction};

/// Relative pivot tolerance for the elimination in [`TridiagonalOperator::solve`].
pub const PIVOT_TOL: f64 = 1e-14;

/// Relative threshold below which the last normalized determinant counts as zero.
pub const DETERMINANT_TOL: f64 = 1e-12;

/// Both residuals of [`TridiagonalOperator::inverse_check`] must be below this.
pub const INVERSE_TOL: f64 = 1e-9;

/// Smallest size the scheme operator accepts.
pub const MIN_SCHEME_N: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TridiagonalOperator {
    n: usize,
    sub: f64,
    diag: f64,
    sup: f64,
}

impl TridiagonalOperator {
    /// General operator of size `n >= 1`.
    pub fn new(n: usize, sub: f64, diag: f64, sup: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::GridTooSmall { n, min: 1 });
        }
        for v in [sub, diag, sup] {
            if !v.is_finite() {
                return Err(Error::OutOfDomain {
                    value: v,
                    domain: "finite coefficients".into(),
                });
            }
        }
        Ok(Self { n, sub, diag, sup })
    }

    /// The central second-difference operator `A(1/h^2, -2/h^2, 1/h^2)` on
    /// the interior nodes of `g`.
    pub fn scheme(g: &Grid) -> Result<Self> {
        if g.n() < MIN_SCHEME_N {
            return Err(Error::GridTooSmall {
                n: g.n(),
                min: MIN_SCHEME_N,
            });
        }
        let inv_h2 = 1.0 / (g.h() * g.h());
        Self::new(g.n(), inv_h2, -2.0 * inv_h2, inv_h2)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sub(&self) -> f64 {
        self.sub
    }

    pub fn diag(&self) -> f64 {
        self.diag
    }

    pub fn sup(&self) -> f64 {
        self.sup
    }

    pub fn is_symmetric(&self) -> bool {
        self.sub == self.sup
    }

    /// Entry `(i, j)`, 0-based.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n, "entry ({i}, {j}) outside {0}x{0}", self.n);
        if i == j {
            self.diag
        } else if j + 1 == i {
            self.sub
        } else if i + 1 == j {
            self.sup
        } else {
            0.0
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            m.set(i, i, self.diag);
            if i > 0 {
                m.set(i, i - 1, self.sub);
            }
            if i + 1 < self.n {
                m.set(i, i + 1, self.sup);
            }
        }
        m
    }

    pub fn max_row_sum(&self) -> f64 {
        let (a, b, c) = (self.sub.abs(), self.diag.abs(), self.sup.abs());
        match self.n {
            1 => b,
            2 => b + a.max(c),
            _ => a + b + c,
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: len,
            });
        }
        Ok(())
    }

    /// `A v`, touching only the three bands.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_len(v.len())?;
        let n = self.n;
        Ok((0..n)
            .map(|i| {
                let mut s = self.diag * v[i];
                if i > 0 {
                    s += self.sub * v[i - 1];
                }
                if i + 1 < n {
                    s += self.sup * v[i + 1];
                }
                s
            })
            .collect())
    }

    pub fn matvec(&self, v: &GridFunction) -> Result<GridFunction> {
        GridFunction::new(*v.grid(), self.apply(v.values())?)
    }

    /// Solve `A u = f` by forward elimination and back substitution.
    ///
    /// Fails with [`Error::Singular`] when a pivot falls below
    /// `PIVOT_TOL` times the largest coefficient.
    pub fn solve(&self, f: &[f64]) -> Result<Vec<f64>> {
        self.check_len(f.len())?;
        let n = self.n;
        let scale = self.sub.abs().max(self.diag.abs()).max(self.sup.abs());
        let guard = PIVOT_TOL * scale;

        let mut upper = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        let mut pivot = self.diag;
        for i in 0..n {
            if i > 0 {
                pivot = self.diag - self.sub * upper[i - 1];
            }
            if !(pivot.abs() > guard) {
                return Err(Error::Singular { row: i, pivot });
            }
            upper[i] = self.sup / pivot;
            rhs[i] = if i > 0 {
                (f[i] - self.sub * rhs[i - 1]) / pivot
            } else {
                f[i] / pivot
            };
        }
        let mut u = rhs;
        for i in (0..n - 1).rev() {
            u[i] -= upper[i] * u[i + 1];
        }
        Ok(u)
    }

    pub fn solve_grid(&self, f: &GridFunction) -> Result<GridFunction> {
        GridFunction::new(*f.grid(), self.solve(f.values())?)
    }

    /// Normalized determinants `M_0..=M_k` with `det(A_j) = a^j M_j`.
    pub fn determinant_sequence(&self, k: usize) -> Result<DeterminantSequence> {
        DeterminantSequence::new(self.diag, self.sub, self.sup, k)
    }

    /// Determinant of the full `n x n` operator.
    pub fn determinant(&self) -> f64 {
        if self.sub == 0.0 {
            return self.diag.powi(self.n as i32);
        }
        let seq = DeterminantSequence::new(self.diag, self.sub, self.sup, self.n)
            .expect("sub-diagonal checked non-zero");
        self.sub.powi(self.n as i32) * seq.last()
    }

    pub fn determinant_nonzero(&self) -> bool {
        if self.sub == 0.0 {
            // Upper bidiagonal (or diagonal): det = b^N.
            return self.diag != 0.0;
        }
        let seq = DeterminantSequence::new(self.diag, self.sub, self.sup, self.n)
            .expect("sub-diagonal checked non-zero");
        seq.is_nonzero()
    }

    /// `A^{-1}` built one column at a time by solving against unit vectors.
    pub fn inverse(&self) -> Result<DenseMatrix> {
        let n = self.n;
        let mut cols = Vec::with_capacity(n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            cols.push(self.solve(&e)?);
            e[j] = 0.0;
        }
        DenseMatrix::from_columns(n, &cols)
    }

    /// Two-sided residuals of a candidate inverse.
    pub fn inverse_check(&self, inverse: &DenseMatrix) -> Result<InverseResidual> {
        if inverse.rows() != self.n || inverse.cols() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: inverse.rows().max(inverse.cols()),
            });
        }
        let a = self.to_dense();
        let eye = DenseMatrix::identity(self.n);
        let right = a.matmul(inverse)?.max_abs_diff(&eye)?;
        let left = inverse.matmul(&a)?.max_abs_diff(&eye)?;
        Ok(InverseResidual {
            right,
            left,
            verified: right <= INVERSE_TOL && left <= INVERSE_TOL,
        })
    }
}

/// Max-entry residuals of `A X - I` (`right`) and `X A - I` (`left`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InverseResidual {
    pub right: f64,
    pub left: f64,
    pub verified: bool,
}

/// Normalized leading principal minors of `A(a, b, c)`.
///
/// With `D = b/a` the minors obey `M_k = D M_{k-1} - (c/a) M_{k-2}`, which is
/// `M_k = D M_{k-1} - M_{k-2}` in the symmetric case. Dividing by `a^k` keeps
/// the values O(k) for the scheme operator where `a = h^{-2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterminantSequence {
    ratio: f64,
    coupling: f64,
    values: Vec<f64>,
}

impl DeterminantSequence {
    pub fn new(diag: f64, sub: f64, sup: f64, k: usize) -> Result<Self> {
        if sub == 0.0 {
            return Err(Error::ZeroSubdiagonal);
        }
        let ratio = diag / sub;
        let coupling = sup / sub;
        let mut values = Vec::with_capacity(k + 1);
        values.push(1.0);
        if k >= 1 {
            values.push(ratio);
        }
        for j in 2..=k {
            let next = ratio * values[j - 1] - coupling * values[j - 2];
            values.push(next);
        }
        Ok(Self {
            ratio,
            coupling,
            values,
        })
    }

    /// `D = b/a`.
    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn last(&self) -> f64 {
        *self.values.last().expect("sequence has M_0")
    }

    /// `|M_k| > DETERMINANT_TOL * max(1, max_j |M_j|)`.
    pub fn is_nonzero(&self) -> bool {
        let running = self.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        self.last().abs() > DETERMINANT_TOL * running
    }
}

/// Symmetric recurrence `M_k = d M_{k-1} - M_{k-2}` in exact integer
/// arithmetic. `None` on overflow.
pub fn integer_determinants(d: i64, k: usize) -> Option<Vec<i64>> {
    let mut values = vec![1i64];
    if k >= 1 {
        values.push(d);
    }
    for j in 2..=k {
        let next = d.checked_mul(values[j - 1])?.checked_sub(values[j - 2])?;
        values.push(next);
    }
    Some(values)
}
