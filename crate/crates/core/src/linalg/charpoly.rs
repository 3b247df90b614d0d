use super::matrix::{ComplexMatrix, ComplexScalar};
use crate::error::{Error, Result};

/// Monic polynomial stored with the leading coefficient first.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialCoefficients {
    coeffs: Vec<ComplexScalar>,
}

impl PolynomialCoefficients {
    pub fn new(coeffs: Vec<ComplexScalar>) -> Result<Self> {
        match coeffs.first() {
            Some(lead) if *lead == ComplexScalar::new(1.0, 0.0) => Ok(Self { coeffs }),
            _ => Err(Error::InvalidArgument("polynomial must be monic with leading coefficient 1".into())),
        }
    }

    /// `z^n - 1`.
    pub fn roots_of_unity(n: usize) -> Self {
        let mut coeffs = vec![ComplexScalar::new(0.0, 0.0); n + 1];
        coeffs[0] = ComplexScalar::new(1.0, 0.0);
        coeffs[n] -= ComplexScalar::new(1.0, 0.0);
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[ComplexScalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: ComplexScalar) -> ComplexScalar {
        self.coeffs.iter().fold(ComplexScalar::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Max coefficientwise distance; infinity for differing degrees.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        if self.coeffs.len() != other.coeffs.len() {
            return f64::INFINITY;
        }
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// `det(zI - M)` by the Faddeev-LeVerrier trace recursion.
pub fn char_poly(m: &ComplexMatrix) -> Result<PolynomialCoefficients> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let identity = ComplexMatrix::identity(n);
    let mut coeffs = vec![ComplexScalar::new(0.0, 0.0); n + 1];
    coeffs[0] = ComplexScalar::new(1.0, 0.0);

    // M_k = M * M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(M M_k) / k
    let mut aux = ComplexMatrix::zeros(n, n);
    for k in 1..=n {
        aux = &(m * &aux) + &identity.scale(coeffs[k - 1]);
        let trace = (m * &aux).trace()?;
        coeffs[k] = -trace / k as f64;
    }
    Ok(PolynomialCoefficients { coeffs })
}
