//! Brute-force reference computations for cross-checking `laxcheck`.
//!
//! Nothing here depends on the library it checks. Matrices are plain
//! `Vec<Vec<f64>>` in row-major order, solved and diagonalized with the
//! textbook dense algorithms.

pub type Dense = Vec<Vec<f64>>;

/// Dense materialization of the tridiagonal Toeplitz matrix with `sub` below,
/// `diag` on and `sup` above the diagonal.
pub fn tridiagonal(n: usize, sub: f64, diag: f64, sup: f64) -> Dense {
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        m[i][i] = diag;
        if i > 0 {
            m[i][i - 1] = sub;
        }
        if i + 1 < n {
            m[i][i + 1] = sup;
        }
    }
    m
}

pub fn identity(n: usize) -> Dense {
    let mut m = vec![vec![0.0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

pub fn matvec(a: &Dense, v: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut c = vec![vec![0.0; m]; n];
    for i in 0..n {
        for p in 0..k {
            let aip = a[i][p];
            for j in 0..m {
                c[i][j] += aip * b[p][j];
            }
        }
    }
    c
}

pub fn transpose(a: &Dense) -> Dense {
    let rows = a.len();
    let cols = a[0].len();
    (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j]).collect())
        .collect()
}

pub fn max_abs_diff(a: &Dense, b: &Dense) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max)
}

/// Gaussian elimination with partial pivoting. Returns `None` when a pivot
/// column is exactly zero.
pub fn gauss_solve(a: &Dense, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.len();
    let mut m: Dense = a.clone();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[piv][col] == 0.0 {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                m[row][k] -= factor * m[col][k];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| m[i][k] * x[k]).sum();
        x[i] = (rhs[i] - s) / m[i][i];
    }
    Some(x)
}

/// Determinant by LU with partial pivoting.
pub fn lu_determinant(a: &Dense) -> f64 {
    let n = a.len();
    let mut m = a.clone();
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            for k in col..n {
                m[row][k] -= factor * m[col][k];
            }
        }
    }
    det
}

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix.
///
/// Sweeps until the largest off-diagonal entry is below `1e-12` times the
/// Frobenius norm (or an absolute `1e-300` for the zero matrix). Returns the
/// eigenvalues in ascending order and the matching eigenvectors as columns.
pub fn jacobi_eigen(a: &Dense) -> (Vec<f64>, Dense) {
    let n = a.len();
    let mut m = a.clone();
    let mut v = identity(n);
    let frob: f64 = m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let tol = (1e-12 * frob).max(1e-300);

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(m[p][q].abs());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() <= tol * 1e-3 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i][i].total_cmp(&m[j][j]));
    let values = order.iter().map(|&i| m[i][i]).collect();
    let vectors = (0..n)
        .map(|row| order.iter().map(|&col| v[row][col]).collect())
        .collect();
    (values, vectors)
}

/// Term-by-term `sum_{k=0}^{n-1} cos(a0 + k d)`.
pub fn naive_cosine_sum(a0: f64, d: f64, n: usize) -> f64 {
    (0..n).map(|k| (a0 + k as f64 * d).cos()).sum()
}

/// Term-by-term `sum_{m=1}^{n} 2/(n+1) sin^2(i m pi / (n+1))`.
pub fn naive_sine_square_sum(i: usize, n: usize) -> f64 {
    let np1 = (n + 1) as f64;
    (1..=n)
        .map(|m| {
            let s = (i as f64 * m as f64 * std::f64::consts::PI / np1).sin();
            2.0 / np1 * s * s
        })
        .sum()
}

/// Term-by-term `sum_{k=1}^{n} sin(k i pi/(n+1)) sin(k j pi/(n+1))`.
pub fn naive_sine_product_sum(i: usize, j: usize, n: usize) -> f64 {
    let np1 = (n + 1) as f64;
    let pi = std::f64::consts::PI;
    (1..=n)
        .map(|k| {
            let k = k as f64;
            (k * i as f64 * pi / np1).sin() * (k * j as f64 * pi / np1).sin()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_solves_small_system() {
        let a = vec![vec![0.0, 2.0], vec![1.0, 1.0]];
        let x = gauss_solve(&a, &[2.0, 3.0]).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-15 && (x[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lu_determinant_with_row_swap() {
        let a = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert_eq!(lu_determinant(&a), -1.0);
        assert_eq!(lu_determinant(&tridiagonal(3, 1.0, -2.0, 1.0)).round(), -4.0);
    }

    #[test]
    fn jacobi_recovers_known_spectrum() {
        let (vals, vecs) = jacobi_eigen(&tridiagonal(3, 1.0, -2.0, 1.0));
        let s2 = 2f64.sqrt();
        let expected = [-2.0 - s2, -2.0, -2.0 + s2];
        for (v, e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-13, "{v} vs {e}");
        }
        let vtv = matmul(&transpose(&vecs), &vecs);
        assert!(max_abs_diff(&vtv, &identity(3)) < 1e-13);
    }
}
