//! Closed-form eigen system of `A(a, b, c)` and the stability bound for the
//! central second-difference operator.
//!
//! Indices `m` (eigenpair) and `j` (vector component) are 1-based:
//!
//! ```text
//! lambda_m = b + 2 sqrt(ac) cos(m pi / (N+1))
//! s_m[j]   = (a/c)^((j-1)/2) sqrt(2/(N+1)) sin(j m pi / (N+1))
//! ```
//!
//! For `a = c` the vectors are orthonormal and `A = S diag(lambda) S^T`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::tridiag::{TridiagonalOperator, MIN_SCHEME_N};

/// Relative tolerance of [`verify_eigenpair`].
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-10;
/// Relative tolerance of [`normality_check`], scaled by `||A||_inf^2`.
pub const NORMALITY_TOL: f64 = 1e-9;
/// Relative tolerance of [`diagonalization_check`], scaled by `||A||_inf`.
pub const DIAGONALIZATION_TOL: f64 = 1e-9;
/// Distance from a multiple of `2 pi` at which [`cosine_sum`] refuses a step.
pub const DEGENERATE_STEP_TOL: f64 = 1e-12;
/// Slack allowed on the concavity inequality.
pub const CONCAVITY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair {
    /// 1-based index.
    pub m: usize,
    pub lambda: f64,
    pub vector: Vec<f64>,
}

fn check_index(m: usize, n: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::IndexOutOfRange { index: m, max: n });
    }
    Ok(())
}

fn require_symmetric(op: &TridiagonalOperator) -> Result<()> {
    if !op.is_symmetric() {
        return Err(Error::Asymmetric {
            a: op.sub(),
            c: op.sup(),
        });
    }
    Ok(())
}

/// `lambda_m` without the vector.
pub fn analytic_eigenvalue(op: &TridiagonalOperator, m: usize) -> Result<f64> {
    check_index(m, op.n())?;
    let ac = op.sub() * op.sup();
    if ac < 0.0 {
        return Err(Error::ComplexSpectrum(ac));
    }
    let theta = m as f64 * PI / (op.n() + 1) as f64;
    Ok(op.diag() + 2.0 * ac.sqrt() * theta.cos())
}

/// Closed-form `(lambda_m, s_m)`. The residual is not checked here.
pub fn analytic_eigenpair(op: &TridiagonalOperator, m: usize) -> Result<EigenPair> {
    let lambda = analytic_eigenvalue(op, m)?;
    let (a, c) = (op.sub(), op.sup());
    let ratio = if a == c {
        1.0
    } else if a == 0.0 || c == 0.0 {
        return Err(Error::DefectiveCoupling);
    } else {
        a / c
    };
    let n = op.n();
    let np1 = (n + 1) as f64;
    let norm = (2.0 / np1).sqrt();
    let vector = (1..=n)
        .map(|j| {
            let prefactor = if ratio == 1.0 {
                1.0
            } else {
                ratio.powf((j as f64 - 1.0) / 2.0)
            };
            prefactor * norm * (j as f64 * m as f64 * PI / np1).sin()
        })
        .collect();
    Ok(EigenPair { m, lambda, vector })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenResidual {
    /// `||A s - lambda s||_max`.
    pub residual: f64,
    pub threshold: f64,
    pub verified: bool,
}

/// Checks `A s_m = lambda_m s_m` in the max norm.
pub fn verify_eigenpair(op: &TridiagonalOperator, pair: &EigenPair) -> Result<EigenResidual> {
    let av = op.apply(&pair.vector)?;
    let residual = av
        .iter()
        .zip(&pair.vector)
        .map(|(x, s)| (x - pair.lambda * s).abs())
        .fold(0.0, f64::max);
    let threshold = EIGEN_RESIDUAL_TOL * (pair.lambda.abs() + op.max_row_sum());
    Ok(EigenResidual {
        residual,
        threshold,
        verified: residual <= threshold,
    })
}

/// All `N` closed-form pairs, `m = 1..=N`.
pub fn analytic_spectrum(op: &TridiagonalOperator) -> Result<Vec<EigenPair>> {
    (1..=op.n()).map(|m| analytic_eigenpair(op, m)).collect()
}

/// Matrix `S` whose `m`-th column is `s_m`.
pub fn eigenvector_matrix(op: &TridiagonalOperator) -> Result<DenseMatrix> {
    let cols: Vec<Vec<f64>> = analytic_spectrum(op)?
        .into_iter()
        .map(|p| p.vector)
        .collect();
    DenseMatrix::from_columns(op.n(), &cols)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthonormalityResidual {
    /// `max |S^T S - I|`
    pub gram: f64,
    /// `max |S S^T - I|`
    pub outer: f64,
}

impl OrthonormalityResidual {
    pub fn max(&self) -> f64 {
        self.gram.max(self.outer)
    }
}

/// Orthonormality of the analytic eigenvectors (symmetric operators only).
pub fn orthonormality_check(op: &TridiagonalOperator) -> Result<OrthonormalityResidual> {
    require_symmetric(op)?;
    let s = eigenvector_matrix(op)?;
    let st = s.transpose();
    let eye = DenseMatrix::identity(op.n());
    Ok(OrthonormalityResidual {
        gram: st.matmul(&s)?.max_abs_diff(&eye)?,
        outer: s.matmul(&st)?.max_abs_diff(&eye)?,
    })
}

/// `sum_{k=0}^{n-1} cos(a0 + k d) = sin(n d/2) / sin(d/2) * cos(a0 + (n-1) d/2)`.
///
/// Errors when `d` is within `DEGENERATE_STEP_TOL` of a multiple of `2 pi`;
/// the sum is then `n cos(a0)` and callers must branch themselves.
pub fn cosine_sum(a0: f64, d: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::OutOfDomain {
            value: 0.0,
            domain: "term count n >= 1".into(),
        });
    }
    let turns = d / (2.0 * PI);
    if ((turns - turns.round()) * 2.0 * PI).abs() <= DEGENERATE_STEP_TOL {
        return Err(Error::DegenerateStep(d));
    }
    let nf = n as f64;
    Ok((nf * d / 2.0).sin() / (d / 2.0).sin() * (a0 + (nf - 1.0) * d / 2.0).cos())
}

/// `sum_{m=1}^{N} 2/(N+1) sin^2(i m pi/(N+1))`, evaluated through
/// `sin^2 t = (1 - cos 2t)/2` and [`cosine_sum`]. Equals 1 for `1 <= i <= N`.
pub fn sine_square_sum(i: usize, n: usize) -> Result<f64> {
    check_index(i, n)?;
    let np1 = (n + 1) as f64;
    let step = 2.0 * i as f64 * PI / np1;
    let cos_part = cosine_sum(step, step, n)?;
    Ok(2.0 / np1 * 0.5 * (n as f64 - cos_part))
}

/// `sum_{k=1}^{N} sin(k i pi/(N+1)) sin(k j pi/(N+1))` for `i != j`, written
/// as the half-difference of two cosine series. Vanishes for every valid
/// pair because `i - j` and `i + j` share parity.
pub fn cross_orthogonality_sum(i: usize, j: usize, n: usize) -> Result<f64> {
    check_index(i, n)?;
    check_index(j, n)?;
    if i == j {
        return Err(Error::EqualIndices(i));
    }
    let np1 = (n + 1) as f64;
    let diff = (i as f64 - j as f64) * PI / np1;
    let sum = (i + j) as f64 * PI / np1;
    Ok(0.5 * cosine_sum(diff, diff, n)? - 0.5 * cosine_sum(sum, sum, n)?)
}

/// Whether `i - j` and `i + j + 2` are both even or both odd (always true;
/// the cancellation in [`cross_orthogonality_sum`] rests on it).
pub fn same_parity(i: i64, j: i64) -> bool {
    (i - j).rem_euclid(2) == (i + j + 2).rem_euclid(2)
}

/// Closed-form spectrum of `A^{-1}`: pairs `(1/lambda_m, s_m)`.
pub fn inverse_spectrum(op: &TridiagonalOperator) -> Result<Vec<EigenPair>> {
    if !op.determinant_nonzero() {
        return Err(Error::Singular {
            row: op.n(),
            pivot: 0.0,
        });
    }
    let scale = op.max_row_sum();
    analytic_spectrum(op)?
        .into_iter()
        .map(|p| {
            if p.lambda.abs() <= 1e-12 * scale {
                return Err(Error::Singular {
                    row: p.m,
                    pivot: p.lambda,
                });
            }
            Ok(EigenPair {
                lambda: 1.0 / p.lambda,
                ..p
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalityResidual {
    /// `max |X X^T - X^T X|`
    pub residual: f64,
    pub threshold: f64,
    pub normal: bool,
}

pub fn normality_check(m: &DenseMatrix) -> Result<NormalityResidual> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let mt = m.transpose();
    let residual = m.matmul(&mt)?.max_abs_diff(&mt.matmul(m)?)?;
    let threshold = NORMALITY_TOL * m.max_row_sum().powi(2);
    Ok(NormalityResidual {
        residual,
        threshold,
        normal: residual <= threshold,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagonalizationResidual {
    /// `max |S diag(lambda) S^T - A|`
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

pub fn diagonalization_check(op: &TridiagonalOperator) -> Result<DiagonalizationResidual> {
    require_symmetric(op)?;
    let pairs = analytic_spectrum(op)?;
    let n = op.n();
    let mut scaled = DenseMatrix::zeros(n, n);
    for (col, p) in pairs.iter().enumerate() {
        for (row, s) in p.vector.iter().enumerate() {
            scaled.set(row, col, s * p.lambda);
        }
    }
    let s = eigenvector_matrix(op)?;
    let rebuilt = scaled.matmul(&s.transpose())?;
    let residual = rebuilt.max_abs_diff(&op.to_dense())?;
    let threshold = DIAGONALIZATION_TOL * op.max_row_sum();
    Ok(DiagonalizationResidual {
        residual,
        threshold,
        passed: residual <= threshold,
    })
}

/// Eigenvalue `m` of the scheme operator on `g`, written as
/// `-(4/h^2) sin^2(m pi / (2(N+1)))` to avoid the cancellation in
/// `-1 + cos(.)` for small `m/(N+1)`.
pub fn scheme_eigenvalue(g: &Grid, m: usize) -> f64 {
    let s = (m as f64 * PI / (2.0 * (g.n() + 1) as f64)).sin();
    -4.0 / (g.h() * g.h()) * s * s
}

/// Uniform stability certificate for the scheme operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralSummary {
    #[serde(rename = "N")]
    pub n: usize,
    pub h: f64,
    /// Eigenvalue of smallest magnitude (`m = 1`), negative.
    pub lambda_min: f64,
    /// `1/|lambda_min|`, the 2-norm of the inverse.
    pub inv_norm: f64,
    /// `L^2/4`.
    pub bound: f64,
    pub satisfied: bool,
}

impl SpectralSummary {
    pub fn lambda_min_abs(&self) -> f64 {
        self.lambda_min.abs()
    }

    pub fn spectral_norm_inverse(&self) -> f64 {
        self.inv_norm
    }
}

/// `1/|lambda_min| = h^2 / (4 sin^2(pi/(2(N+1))))` for the scheme operator,
/// compared against `L^2/4`. `satisfied` also requires
/// `1/|lambda_m| <= 1/|lambda_min|` for every `m`.
pub fn stability_summary(n: usize, length: f64) -> Result<SpectralSummary> {
    if n < MIN_SCHEME_N {
        return Err(Error::GridTooSmall {
            n,
            min: MIN_SCHEME_N,
        });
    }
    let g = Grid::new(n, length)?;
    let lambda_min = scheme_eigenvalue(&g, 1);
    let inv_norm = 1.0 / lambda_min.abs();
    let bound = length * length / 4.0;
    let dominated = (1..=n).all(|m| 1.0 / scheme_eigenvalue(&g, m).abs() <= inv_norm * (1.0 + 1e-12));
    Ok(SpectralSummary {
        n,
        h: g.h(),
        lambda_min,
        inv_norm,
        bound,
        satisfied: dominated && inv_norm <= bound,
    })
}

/// `x^2 / sin^2 x`.
pub fn concavity_ratio(x: f64) -> f64 {
    let s = x.sin();
    x * x / (s * s)
}

/// `x^2 / sin^2 x <= pi^2/4` on `(0, pi/2]`.
pub fn concavity_bound(x: f64) -> Result<bool> {
    if !(x > 0.0 && x <= FRAC_PI_2) {
        return Err(Error::OutOfDomain {
            value: x,
            domain: "(0, pi/2]".into(),
        });
    }
    Ok(concavity_ratio(x) <= PI * PI / 4.0 + CONCAVITY_SLACK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use laxcheck_oracle as oracle;
    use proptest::prelude::*;

    fn op(n: usize, a: f64, b: f64, c: f64) -> TridiagonalOperator {
        TridiagonalOperator::new(n, a, b, c).unwrap()
    }

    #[test]
    fn eigenvalue_examples() {
        let a = op(3, 1.0, -2.0, 1.0);
        assert!((analytic_eigenpair(&a, 2).unwrap().lambda + 2.0).abs() < 1e-15);

        let (vals, vecs) = oracle::jacobi_eigen(&oracle::tridiagonal(3, 1.0, -2.0, 1.0));
        let p1 = analytic_eigenpair(&a, 1).unwrap();
        assert!((p1.lambda - (-2.0 + 2f64.sqrt())).abs() < 1e-15);
        assert!((p1.lambda - vals[2]).abs() < 1e-12);

        let expected = [0.5, 2f64.sqrt() / 2.0, 0.5];
        let sign = vecs[1][2].signum();
        for (j, e) in expected.iter().enumerate() {
            assert!((p1.vector[j] - e).abs() < 1e-15);
            assert!((sign * vecs[j][2] - e).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenpair_errors() {
        let a = op(3, 1.0, -2.0, 1.0);
        assert!(matches!(analytic_eigenpair(&a, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(analytic_eigenpair(&a, 4), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(
            analytic_eigenpair(&op(3, 1.0, 0.0, -1.0), 1),
            Err(Error::ComplexSpectrum(_))
        ));
        assert!(matches!(
            analytic_eigenpair(&op(3, 1.0, 0.0, 0.0), 1),
            Err(Error::DefectiveCoupling)
        ));
    }

    #[test]
    fn verify_examples() {
        let g = Grid::new(10, 1.0).unwrap();
        let a = TridiagonalOperator::scheme(&g).unwrap();
        for m in 1..=10 {
            let p = analytic_eigenpair(&a, m).unwrap();
            assert!(verify_eigenpair(&a, &p).unwrap().verified);
        }

        let eye = op(4, 0.0, 1.0, 0.0);
        let p = analytic_eigenpair(&eye, 3).unwrap();
        assert_eq!(p.lambda, 1.0);
        assert_eq!(verify_eigenpair(&eye, &p).unwrap().residual, 0.0);

        let mut p = analytic_eigenpair(&a, 2).unwrap();
        let smax = p.vector.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        p.lambda += 0.1;
        let r = verify_eigenpair(&a, &p).unwrap();
        assert!(!r.verified);
        assert!((r.residual - 0.1 * smax).abs() < 1e-9);
    }

    #[test]
    fn orthonormality_examples() {
        let r = orthonormality_check(&op(3, 1.0, -2.0, 1.0)).unwrap();
        assert!(r.max() <= 1e-12);

        let s = eigenvector_matrix(&op(2, 1.0, -2.0, 1.0)).unwrap();
        let k = (2.0f64 / 3.0).sqrt();
        let t = PI / 3.0;
        let hand = [
            [t.sin() * k, (2.0 * t).sin() * k],
            [(2.0 * t).sin() * k, (4.0 * t).sin() * k],
        ];
        for i in 0..2 {
            for j in 0..2 {
                assert!((s.get(i, j) - hand[i][j]).abs() < 1e-15);
            }
        }
        assert!(orthonormality_check(&op(2, 1.0, -2.0, 1.0)).unwrap().max() < 1e-15);

        // Columns have unit length only because of the sqrt(2/(N+1)) factor.
        let s = eigenvector_matrix(&op(9, 3.0, 1.0, 3.0)).unwrap();
        for j in 0..9 {
            let len: f64 = (0..9).map(|i| s.get(i, j).powi(2)).sum();
            assert!((len - 1.0).abs() < 1e-13);
        }

        assert!(matches!(
            orthonormality_check(&op(3, 1.0, -2.0, 2.0)),
            Err(Error::Asymmetric { .. })
        ));
    }

    #[test]
    fn cosine_sum_examples() {
        assert!(cosine_sum(0.0, FRAC_PI_2, 4).unwrap().abs() < 1e-15);
        assert!((cosine_sum(0.3, 1.1, 1).unwrap() - 0.3f64.cos()).abs() < 1e-15);
        let closed = cosine_sum(PI / 3.0, 0.7, 13).unwrap();
        let naive = oracle::naive_cosine_sum(PI / 3.0, 0.7, 13);
        assert!((closed - naive).abs() <= 1e-12);

        assert!(matches!(cosine_sum(0.1, 0.0, 3), Err(Error::DegenerateStep(_))));
        assert!(matches!(cosine_sum(0.1, 4.0 * PI, 3), Err(Error::DegenerateStep(_))));
        assert!(cosine_sum(0.1, 1.0, 0).is_err());
    }

    #[test]
    fn sine_square_examples() {
        assert!((sine_square_sum(1, 3).unwrap() - 1.0).abs() < 1e-15);
        for (i, n) in [(4, 7), (3, 3)] {
            let v = sine_square_sum(i, n).unwrap();
            assert!((v - 1.0).abs() <= 1e-12);
            assert!((v - oracle::naive_sine_square_sum(i, n)).abs() <= 1e-12);
        }
        assert!(sine_square_sum(0, 3).is_err());
        assert!(sine_square_sum(4, 3).is_err());
    }

    #[test]
    fn cross_sum_examples() {
        for (i, j, n) in [(1, 2, 3), (1, 5, 5)] {
            assert!(cross_orthogonality_sum(i, j, n).unwrap().abs() <= 1e-11);
            assert!(oracle::naive_sine_product_sum(i, j, n).abs() <= 1e-11);
        }
        assert!(matches!(cross_orthogonality_sum(2, 2, 5), Err(Error::EqualIndices(2))));
        // i = 4, j = 2 (0-based): both 2 and 8 are even.
        assert_eq!((4 - 2) % 2, 0);
        assert_eq!((4 + 2 + 2) % 2, 0);
        assert!(same_parity(4, 2));
    }

    #[test]
    fn parity_always_agrees() {
        for i in 0..=100 {
            for j in 0..=100 {
                assert!(same_parity(i, j), "{i} {j}");
            }
        }
    }

    #[test]
    fn inverse_spectrum_examples() {
        let g = Grid::new(3, 4.0).unwrap(); // h = 1
        let a = TridiagonalOperator::scheme(&g).unwrap();
        let inv = inverse_spectrum(&a).unwrap();
        assert!((inv[1].lambda + 0.5).abs() < 1e-15);

        let eye = op(5, 0.0, 1.0, 0.0);
        assert!(inverse_spectrum(&eye).unwrap().iter().all(|p| p.lambda == 1.0));

        let g = Grid::new(8, 1.0).unwrap();
        let a = TridiagonalOperator::scheme(&g).unwrap();
        let dense_inv = a.inverse().unwrap();
        let (vals, _) = oracle::jacobi_eigen(&dense_inv.to_rows());
        let mut recip: Vec<f64> = inverse_spectrum(&a).unwrap().iter().map(|p| p.lambda).collect();
        recip.sort_by(f64::total_cmp);
        for (v, r) in vals.iter().zip(&recip) {
            assert!((v - r).abs() <= 1e-8, "{v} vs {r}");
        }

        assert!(inverse_spectrum(&op(5, 1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn normality_examples() {
        let g = Grid::new(6, 1.0).unwrap();
        let inv = TridiagonalOperator::scheme(&g).unwrap().inverse().unwrap();
        let r = normality_check(&inv).unwrap();
        assert!(r.residual <= 1e-10 && r.normal);

        let sym = DenseMatrix::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![2.0, -1.0, 0.5],
            vec![3.0, 0.5, 4.0],
        ])
        .unwrap();
        assert!(normality_check(&sym).unwrap().residual <= 1e-14);

        let jordan = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let r = normality_check(&jordan).unwrap();
        assert_eq!(r.residual, 1.0);
        assert!(!r.normal);

        assert!(matches!(
            normality_check(&DenseMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn stability_examples() {
        let s = stability_summary(4096, 1.0).unwrap();
        assert!((s.inv_norm - 1.0 / (PI * PI)).abs() / (1.0 / (PI * PI)) < 1e-6);
        assert!((s.inv_norm - 0.101321).abs() < 1e-6);

        for n in [3, 10, 100] {
            let s = stability_summary(n, 2.0).unwrap();
            assert_eq!(s.bound, 1.0);
            assert!(s.satisfied);
        }

        let s = stability_summary(3, 1.0).unwrap();
        let hand = (1.0 / 16.0) / (4.0 * (PI / 8.0).sin().powi(2));
        assert!((s.inv_norm - hand).abs() < 1e-15);
        assert!((s.inv_norm - 0.10669).abs() < 1e-5);

        // The sin^2 form agrees with the cosine form of lambda_1.
        let g = Grid::new(3, 1.0).unwrap();
        let a = TridiagonalOperator::scheme(&g).unwrap();
        let l1 = analytic_eigenvalue(&a, 1).unwrap();
        assert!((l1 - s.lambda_min).abs() <= 1e-12 * l1.abs());

        assert!(stability_summary(2, 1.0).is_err());
    }

    #[test]
    fn stability_json_fields() {
        let s = stability_summary(7, 1.0).unwrap();
        let v = serde_json::to_value(s).unwrap();
        for key in ["N", "h", "lambda_min", "inv_norm", "bound", "satisfied"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn concavity_examples() {
        assert!(concavity_bound(FRAC_PI_2).unwrap());
        assert!((concavity_ratio(FRAC_PI_2) - PI * PI / 4.0).abs() <= 1e-12);
        assert!((concavity_ratio(0.001) - 1.0).abs() < 1e-6);
        assert!(concavity_bound(0.001).unwrap());
        assert!((concavity_ratio(1.0) - 1.4123).abs() < 1e-4);
        assert!(concavity_bound(1.0).unwrap());
        assert!(concavity_bound(0.0).is_err());
        assert!(concavity_bound(1.6).is_err());
    }

    #[test]
    fn diagonalization_examples() {
        let g = Grid::new(5, 6.0).unwrap();
        let a = TridiagonalOperator::scheme(&g).unwrap();
        assert!(diagonalization_check(&a).unwrap().residual <= 1e-10);

        let eye = op(6, 0.0, 1.0, 0.0);
        assert!(diagonalization_check(&eye).unwrap().residual < 1e-14);

        let g = Grid::new(16, 1.0).unwrap();
        let a = TridiagonalOperator::scheme(&g).unwrap();
        let r = diagonalization_check(&a).unwrap();
        assert!(r.residual <= 1e-6 / (g.h() * g.h()));
        assert!(r.passed);
    }

    #[test]
    fn stability_monotone_and_bounded() {
        // x/sin(x) grows with x = pi/(2(N+1)), so 1/|lambda_min| falls toward
        // L^2/pi^2 from above as N grows.
        for length in [1.0, 2.5, 10.0] {
            let mut prev = f64::INFINITY;
            let mut n = 4;
            while n <= 4096 {
                let s = stability_summary(n, length).unwrap();
                assert!(s.satisfied);
                assert!(s.inv_norm < prev);
                assert!(s.inv_norm > length * length / (PI * PI));
                prev = s.inv_norm;
                n *= 2;
            }
        }
    }

    proptest! {
        #[test]
        fn symmetric_pairs_verify(n in 3usize..=64, a in 0.01f64..10.0, b in -20.0f64..20.0) {
            let t = op(n, a, b, a);
            for m in 1..=n {
                let p = analytic_eigenpair(&t, m).unwrap();
                prop_assert!(verify_eigenpair(&t, &p).unwrap().verified);
            }
        }

        #[test]
        fn asymmetric_pairs_match_dense(n in 3usize..=8, a in 0.2f64..3.0, c in 0.2f64..3.0, b in -4.0f64..4.0) {
            let t = op(n, a, b, c);
            // A(a,b,c) is similar to the symmetric A(sqrt(ac), b, sqrt(ac)).
            let g = (a * c).sqrt();
            let (vals, _) = oracle::jacobi_eigen(&oracle::tridiagonal(n, g, b, g));
            let dense = oracle::tridiagonal(n, a, b, c);
            let mut analytic: Vec<f64> = Vec::new();
            for m in 1..=n {
                let p = analytic_eigenpair(&t, m).unwrap();
                let av = oracle::matvec(&dense, &p.vector);
                let scale = p.vector.iter().fold(0.0f64, |s, v| s.max(v.abs()));
                for (x, s) in av.iter().zip(&p.vector) {
                    prop_assert!((x - p.lambda * s).abs() <= 1e-6 * scale * (1.0 + p.lambda.abs()));
                }
                analytic.push(p.lambda);
            }
            analytic.sort_by(f64::total_cmp);
            for (x, y) in analytic.iter().zip(&vals) {
                prop_assert!((x - y).abs() <= 1e-6);
            }
        }
    }
}
