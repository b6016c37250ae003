//! Eigenvalues of small dense real symmetric matrices: Householder
//! reduction to tridiagonal form followed by implicit QL with Wilkinson
//! shifts. Eigenvectors are never formed.

use crate::error::{Error, Result};

const MAX_QL_ITERATIONS: usize = 60;

/// Eigenvalues of the symmetric row-major `n x n` matrix `a`, ascending.
/// Only the lower triangle is read.
pub fn symmetric_eigenvalues(a: &[f64], n: usize) -> Result<Vec<f64>> {
    debug_assert_eq!(a.len(), n * n);
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut m: Vec<Vec<f64>> = (0..n).map(|i| a[i * n..(i + 1) * n].to_vec()).collect();
    let (mut d, mut e) = tridiagonalize(&mut m);
    tridiagonal_ql(&mut d, &mut e)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Householder reduction; returns the diagonal and the sub-diagonal
/// (`e[i]` couples `i - 1` and `i`, `e[0] = 0`).
#[allow(clippy::needless_range_loop)]
fn tridiagonalize(a: &mut [Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        if l > 0 {
            let scale: f64 = a[i][..=l].iter().map(|x| x.abs()).sum();
            if scale == 0.0 {
                e[i] = a[i][l];
                continue;
            }
            let mut h = 0.0;
            for k in 0..=l {
                a[i][k] /= scale;
                h += a[i][k] * a[i][k];
            }
            let f = a[i][l];
            let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
            e[i] = scale * g;
            h -= f * g;
            a[i][l] = f - g;
            let mut f = 0.0;
            for j in 0..=l {
                let mut g = 0.0;
                for k in 0..=j {
                    g += a[j][k] * a[i][k];
                }
                for k in j + 1..=l {
                    g += a[k][j] * a[i][k];
                }
                e[j] = g / h;
                f += e[j] * a[i][j];
            }
            let hh = f / (h + h);
            for j in 0..=l {
                let f = a[i][j];
                let g = e[j] - hh * f;
                e[j] = g;
                for k in 0..=j {
                    a[j][k] -= f * e[k] + g * a[i][k];
                }
            }
        } else {
            e[i] = a[i][l];
        }
    }
    for (i, di) in d.iter_mut().enumerate() {
        *di = a[i][i];
    }
    (d, e)
}

/// Implicit QL on a symmetric tridiagonal matrix; eigenvalues land in `d`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::Invariant(
                    "symmetric eigensolver failed to converge".into(),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Cyclic Jacobi rotations; slower, but shares no code with the QL path.
/// Used to cross-check it.
pub fn jacobi_eigenvalues(a: &[f64], n: usize) -> Vec<f64> {
    let mut m = a.to_vec();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j] * m[i * n + j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    d.sort_by(f64::total_cmp);
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn path_spectrum_closed_form() {
        // Path on n vertices: 2 cos(k pi / (n + 1)).
        for n in 1..12 {
            let mut a = vec![0.0; n * n];
            for i in 0..n.saturating_sub(1) {
                a[i * n + i + 1] = 1.0;
                a[(i + 1) * n + i] = 1.0;
            }
            let got = symmetric_eigenvalues(&a, n).unwrap();
            let mut want: Vec<f64> = (1..=n)
                .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / (n + 1) as f64).cos())
                .collect();
            want.sort_by(f64::total_cmp);
            assert!(close(&got, &want, 1e-12), "n={n}: {got:?}");
        }
    }

    #[test]
    fn agrees_with_jacobi_and_nalgebra() {
        let n = 7;
        let mut a = vec![0.0; n * n];
        let mut x = 0.3f64;
        for i in 0..n {
            for j in 0..=i {
                x = (x * 3.7 + 0.11).fract();
                a[i * n + j] = x - 0.5;
                a[j * n + i] = x - 0.5;
            }
        }
        let ql = symmetric_eigenvalues(&a, n).unwrap();
        let jac = jacobi_eigenvalues(&a, n);
        let mut na: Vec<f64> = nalgebra::DMatrix::from_row_slice(n, n, &a)
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        na.sort_by(f64::total_cmp);
        assert!(close(&ql, &jac, 1e-12));
        assert!(close(&ql, &na, 1e-12));
    }

    #[test]
    fn repeated_and_zero_eigenvalues() {
        assert!(close(
            &symmetric_eigenvalues(&[0.0; 9], 3).unwrap(),
            &[0.0; 3],
            0.0
        ));
        let id = [2.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 2.0];
        assert!(close(
            &symmetric_eigenvalues(&id, 3).unwrap(),
            &[2.0; 3],
            1e-15
        ));
        assert!(symmetric_eigenvalues(&[], 0).unwrap().is_empty());
    }
}
