//! Cyclic complex Jacobi eigensolver for small Hermitian matrices.

use super::matrix::{ComplexMatrix, ComplexScalar};
use crate::error::{Error, Result};

/// Relative tolerance on `max |H - H^dagger|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Sweeps stop once the off-diagonal Frobenius mass falls below this
/// fraction of `‖H‖_F`.
pub const CONVERGENCE_RATIO: f64 = 1e-14;

pub const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `H = V diag(values) V^dagger`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, matching `values`.
    pub vectors: ComplexMatrix,
    pub sweeps: usize,
}

impl HermitianEigen {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let lambda: Vec<ComplexScalar> = self.values.iter().map(|&x| ComplexScalar::new(x, 0.0)).collect();
        &(&self.vectors * &ComplexMatrix::diag(&lambda)) * &self.vectors.dagger()
    }
}

pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(Error::NotSquare { rows: h.rows(), cols: h.cols() });
    }
    let asymmetry = h.hermitian_asymmetry();
    if asymmetry > HERMITIAN_TOL * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian { asymmetry });
    }

    let n = h.rows();
    // Work on the exactly Hermitian part so rounding noise in the input
    // cannot accumulate across sweeps.
    let mut a = (h + &h.dagger()).scale_real(0.5);
    for i in 0..n {
        a[(i, i)] = ComplexScalar::new(a[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = CONVERGENCE_RATIO * a.frobenius_norm();

    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS && off_diagonal_mass(&a) > threshold {
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors, sweeps })
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Annihilates `a[p][q]` with the unitary `J = diag(1, e^{-iφ}) G`, where
/// `e^{iφ}` is the phase of `a[p][q]` and `G` is the real Jacobi rotation.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let magnitude = apq.norm();
    if magnitude == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase_conj = apq.conj() / magnitude;

    let theta = (aqq - app) / (2.0 * magnitude);
    let t = if theta == 0.0 { 1.0 } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let j_pp = ComplexScalar::new(c, 0.0);
    let j_pq = ComplexScalar::new(s, 0.0);
    let j_qp = phase_conj * (-s);
    let j_qq = phase_conj * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;

        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = ComplexScalar::new(0.0, 0.0);
    a[(q, p)] = ComplexScalar::new(0.0, 0.0);
    a[(p, p)] = ComplexScalar::new(a[(p, p)].re, 0.0);
    a[(q, q)] = ComplexScalar::new(a[(q, q)].re, 0.0);
}

/// Largest singular value, from the spectrum of `M^dagger M`.
pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    let gram = &m.dagger() * m;
    let eig = hermitian_eigen(&gram).expect("M^dagger M is Hermitian by construction");
    eig.values.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    #[test]
    fn identity_spectrum() {
        let eig = hermitian_eigen(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(eig.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn pauli_z_spectrum() {
        let z = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
        let eig = hermitian_eigen(&z).unwrap();
        assert_eq!(eig.values, vec![-1.0, 1.0]);
    }

    #[test]
    fn pauli_y_vectors_reconstruct() {
        let y = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        let eig = hermitian_eigen(&y).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-15 && (eig.values[1] - 1.0).abs() < 1e-15);
        assert!(eig.reconstruct().max_abs_diff(&y) < 1e-14);
        let vv = &eig.vectors.dagger() * &eig.vectors;
        assert!(vv.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        match hermitian_eigen(&m) {
            Err(Error::NotHermitian { asymmetry }) => assert_eq!(asymmetry, 1.0),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
        assert!(matches!(hermitian_eigen(&ComplexMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn zero_matrix_is_already_diagonal() {
        let eig = hermitian_eigen(&ComplexMatrix::zeros(4, 4)).unwrap();
        assert_eq!(eig.sweeps, 0);
        assert!(eig.values.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn operator_norm_cases() {
        assert!((operator_norm(&ComplexMatrix::identity(5)) - 1.0).abs() < 1e-15);
        let half = ComplexMatrix::diag(&[c(-0.5, 0.0); 8]);
        assert!((operator_norm(&half) - 0.5).abs() < 1e-15);
        // Rank-one [[0, 2], [0, 0]] has singular values {2, 0}.
        let nilpotent = ComplexMatrix::from_real(2, 2, &[0.0, 2.0, 0.0, 0.0]).unwrap();
        assert!((operator_norm(&nilpotent) - 2.0).abs() < 1e-14);
    }
}
