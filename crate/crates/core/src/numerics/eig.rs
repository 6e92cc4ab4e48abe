use super::matrix::{inner, vec_norm, ComplexMatrix};
use crate::error::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default relative tolerance on the off-diagonal Frobenius mass.
pub const DEFAULT_EIG_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigResult {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, aligned with `values`.
    pub vectors: ComplexMatrix,
}

impl EigResult {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.vectors.rows()).map(|i| self.vectors[(i, k)]).collect()
    }
}

/// Full spectrum of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// The input is symmetrized as `(M + M^dagger)/2` after checking it is
/// Hermitian within `1e-10 * max(1, max|M_ij|)`.
pub fn hermitian_eig(m: &ComplexMatrix, tol: f64) -> Result<EigResult> {
    if !m.is_square() {
        return Err(Error::shape(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    m.ensure_finite()?;
    let herm_tol = 1e-10 * m.max_abs().max(1.0);
    if !m.is_hermitian(herm_tol) {
        return Err(Error::Data("matrix is not Hermitian".into()));
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let target = tol * scale;

    let off_mass = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_mass(&a) > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Convergence(format!(
                "Jacobi did not converge in {MAX_SWEEPS} sweeps"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let beta = a[(p, q)];
                let mag = beta.norm();
                if mag == 0.0 || mag < f64::MIN_POSITIVE * 1e3 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U = diag(1, e^{-i phi}) * [[c, s], [-s, c]] restricted to (p, q).
                let ph = (beta / mag).conj();
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0);
                let u_qp = -ph * s;
                let u_qq = ph * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, k| v[(r, order[k])]);
    Ok(EigResult { values, vectors })
}

/// Largest eigenvalue of a Hermitian matrix.
pub fn lambda_max(m: &ComplexMatrix) -> Result<f64> {
    let r = hermitian_eig(m, DEFAULT_EIG_TOL)?;
    r.values
        .first()
        .copied()
        .ok_or_else(|| Error::shape("empty matrix has no eigenvalues"))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn lambda_min(m: &ComplexMatrix) -> Result<f64> {
    let r = hermitian_eig(m, DEFAULT_EIG_TOL)?;
    r.values
        .last()
        .copied()
        .ok_or_else(|| Error::shape("empty matrix has no eigenvalues"))
}

fn gram_small(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.rows() <= a.cols() {
        a.matmul(&a.adjoint())
    } else {
        a.adjoint().matmul(a)
    }
}

/// Largest singular value, `sqrt(lambda_max(A^dagger A))`.
pub fn spectral_norm(a: &ComplexMatrix) -> Result<f64> {
    a.ensure_finite()?;
    if a.rows() == 0 || a.cols() == 0 {
        return Ok(0.0);
    }
    Ok(lambda_max(&gram_small(a)?)?.max(0.0).sqrt())
}

/// All `min(rows, cols)` singular values in descending order.
///
/// Read off the Hermitian dilation `[[0, A], [A^dagger, 0]]`, whose spectrum
/// is `+-sigma_i` padded with zeros; this keeps small singular values accurate.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    a.ensure_finite()?;
    let (r, c) = (a.rows(), a.cols());
    let n = r + c;
    let dil = ComplexMatrix::from_fn(n, n, |i, j| {
        if i < r && j >= r {
            a[(i, j - r)]
        } else if i >= r && j < r {
            a[(j, i - r)].conj()
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let eig = hermitian_eig(&dil, DEFAULT_EIG_TOL)?;
    Ok(eig.values[..r.min(c)].iter().map(|&x| x.max(0.0)).collect())
}

/// Spectral norm by seeded power iteration on the smaller Gram matrix.
///
/// Stops once the residual `||B v - rho v||` falls below `tol * rho`; used
/// as an independent cross-check of [`spectral_norm`].
pub fn power_iteration_norm(a: &ComplexMatrix, tol: f64, max_iter: usize, seed: u64) -> Result<f64> {
    a.ensure_finite()?;
    if a.rows() == 0 || a.cols() == 0 || a.max_abs() == 0.0 {
        return Ok(0.0);
    }
    let b = gram_small(a)?;
    let n = b.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let nv = vec_norm(&v);
    v.iter_mut().for_each(|z| *z /= nv);
    for _ in 0..max_iter {
        let w = b.matvec(&v)?;
        let rho = inner(&v, &w).re;
        let resid: f64 = w
            .iter()
            .zip(&v)
            .map(|(wi, vi)| (wi - vi * rho).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if rho > 0.0 && resid <= tol * rho {
            return Ok(rho.sqrt());
        }
        let nw = vec_norm(&w);
        if nw == 0.0 {
            return Ok(0.0);
        }
        v = w.into_iter().map(|z| z / nw).collect();
    }
    Err(Error::Convergence(format!(
        "power iteration did not reach tolerance {tol} in {max_iter} steps"
    )))
}
