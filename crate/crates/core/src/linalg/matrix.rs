use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Double-precision complex scalar used throughout the crate.
pub type ComplexScalar = Complex64;

/// Dense row-major complex matrix.
///
/// All operator-valued quantities (shift, phase, Weyl, displacement and
/// observable matrices, states, superoperators and Choi matrices) are stored
/// in this type. The arithmetic operators (`*`, `+`, `-`) panic on a shape
/// mismatch; use [`ComplexMatrix::matmul`] and friends for checked variants.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ComplexScalar>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<ComplexScalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch { expected: "at least 1x1".into(), found: format!("{rows}x{cols}") });
        }
        if rows * cols != entries.len() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries for {rows}x{cols}", rows * cols),
                found: format!("{} entries", entries.len()),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ComplexScalar) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Builds a matrix from real row-major data.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| ComplexScalar::new(x, 0.0)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ComplexScalar::new(0.0, 0.0))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ComplexScalar::new(1.0, 0.0) } else { ComplexScalar::new(0.0, 0.0) })
    }

    pub fn diag(values: &[ComplexScalar]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i] } else { ComplexScalar::new(0.0, 0.0) })
    }

    /// Matrix unit `E_ij` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = ComplexScalar::new(1.0, 0.0);
        m
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

    pub fn entries(&self) -> &[ComplexScalar] {
        &self.entries
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows on the right operand", self.cols),
                found: format!("{}x{}", rhs.rows, rhs.cols),
            });
        }
        let mut out = vec![ComplexScalar::new(0.0, 0.0); self.rows * rhs.cols];
        for i in 0..self.rows {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            let out_row = &mut out[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in row.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.entries[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { rows: self.rows, cols: rhs.cols, entries: out })
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a + b))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a - b))
    }

    pub fn scale(&self, factor: ComplexScalar) -> Self {
        self.map(|z| z * factor)
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.map(|z| z * factor)
    }

    pub fn map(&self, f: impl Fn(ComplexScalar) -> ComplexScalar) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|&z| f(z)).collect() }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Result<ComplexScalar> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok((0..self.rows).map(|i| self[(i, i)]).sum())
    }

    /// Hilbert-Schmidt pairing `Tr(A^dagger B)`.
    pub fn hs_inner(&self, rhs: &Self) -> Result<ComplexScalar> {
        self.same_shape(rhs)?;
        Ok(self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.conj() * b).sum())
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        Self::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            self[(i / rhs.rows, j / rhs.cols)] * rhs[(i % rhs.rows, j % rhs.cols)]
        })
    }

    pub fn pow(&self, exponent: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Column-stacking vectorization.
    pub fn vectorize(&self) -> Vec<ComplexScalar> {
        let mut out = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self[(i, j)]);
            }
        }
        out
    }

    /// Inverse of [`ComplexMatrix::vectorize`].
    pub fn unvectorize(rows: usize, cols: usize, data: &[ComplexScalar]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        Ok(Self::from_fn(rows, cols, |i, j| data[j * rows + i]))
    }

    pub fn column(&self, j: usize) -> Vec<ComplexScalar> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn apply_vector(&self, v: &[ComplexScalar]) -> Result<Vec<ComplexScalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", self.cols),
                found: format!("length {}", v.len()),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-abs-entry distance. Returns infinity when shapes differ.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        if self.shape() != rhs.shape() {
            return f64::INFINITY;
        }
        self.entries.iter().zip(&rhs.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |H - H^dagger|` entrywise; infinity for non-square input.
    pub fn hermitian_asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Largest imaginary-part magnitude over all entries.
    pub fn max_imag(&self) -> f64 {
        self.entries.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// `AB - BA`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    fn same_shape(&self, rhs: &Self) -> Result<()> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", rhs.rows, rhs.cols),
            });
        }
        Ok(())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(ComplexScalar, ComplexScalar) -> ComplexScalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = ComplexScalar;

    fn index(&self, (i, j): (usize, usize)) -> &ComplexScalar {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexScalar {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>9.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let m = ComplexMatrix::from_fn(3, 3, |i, j| c(i as f64 - 0.5 * j as f64, (i * j) as f64));
        assert_eq!(&ComplexMatrix::identity(3) * &m, m);
    }

    #[test]
    fn pauli_products() {
        assert_eq!(&pauli_x() * &pauli_x(), ComplexMatrix::identity(2));
        let zx = &pauli_z() * &pauli_x();
        assert_eq!(zx, ComplexMatrix::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0]).unwrap());
    }

    #[test]
    fn rejects_bad_shapes() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.trace(), Err(Error::NotSquare { .. })));
        assert!(a.hs_inner(&ComplexMatrix::zeros(3, 2)).is_err());
        assert!(ComplexMatrix::new(2, 2, vec![c(0.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::new(0, 2, vec![]).is_err());
        assert!(ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn trace_and_dagger() {
        assert_eq!(ComplexMatrix::identity(4).trace().unwrap(), c(4.0, 0.0));
        let m = ComplexMatrix::from_fn(2, 3, |i, j| c(i as f64, j as f64 + 1.0));
        assert_eq!(m.dagger().dagger(), m);
        assert_eq!(m.dagger()[(2, 1)], c(1.0, -3.0));
    }

    #[test]
    fn vectorize_stacks_columns() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let v = m.vectorize();
        assert_eq!(v, vec![c(1.0, 0.0), c(3.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)]);
        assert_eq!(ComplexMatrix::unvectorize(2, 2, &v).unwrap(), m);
    }

    #[test]
    fn kron_of_units() {
        let k = ComplexMatrix::unit(2, 0, 1).kron(&ComplexMatrix::unit(3, 2, 0));
        assert_eq!(k.shape(), (6, 6));
        assert_eq!(k[(2, 3)], c(1.0, 0.0));
        assert_eq!(k.max_abs(), 1.0);
        assert_eq!(k.entries().iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let m = ComplexMatrix::from_fn(3, 3, |i, j| c((i + 2 * j) as f64 * 0.1, 0.2 * i as f64));
        let cube = &(&m * &m) * &m;
        assert!(m.pow(3).unwrap().max_abs_diff(&cube) < 1e-14);
        assert_eq!(m.pow(0).unwrap(), ComplexMatrix::identity(3));
    }
}
