//! Mutually unbiased bases from eigenbases of Heisenberg-Weyl observables.
//!
//! For prime `d` the generator of commuting family `α` is `(1, α)` for
//! `α = 1..d-1`, `(1, 0)` for `α = d` and `(0, 1)` for `α = d + 1`. The
//! eigenbasis of that generator's observable diagonalizes every member of
//! the family, and the `d + 1` eigenbases are mutually unbiased.

use crate::error::{Error, Result};
use crate::hwops::{check_dimension, hw_observable, is_prime, subset_generators, ChiConvention, WeylIndex};
use crate::linalg::{hermitian_eigen, ComplexMatrix, ComplexScalar};

/// Adjacent eigenvalues closer than this reject the basis.
pub const DEGENERACY_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct Basis {
    /// Family label `α ∈ 1..=d+1`.
    pub label: usize,
    pub generator: WeylIndex,
    /// Orthonormal columns, ordered by ascending eigenvalue.
    pub vectors: ComplexMatrix,
    pub eigenvalues: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct ProjectorSet {
    pub label: usize,
    pub projectors: Vec<ComplexMatrix>,
}

impl Basis {
    pub fn dim(&self) -> usize {
        self.vectors.rows()
    }

    pub fn vector(&self, r: usize) -> Vec<ComplexScalar> {
        self.vectors.column(r)
    }

    pub fn projectors(&self) -> ProjectorSet {
        let d = self.dim();
        let projectors = (0..d)
            .map(|r| {
                let v = self.vector(r);
                ComplexMatrix::from_fn(d, d, |i, j| v[i] * v[j].conj())
            })
            .collect();
        ProjectorSet { label: self.label, projectors }
    }

    /// `max |V^dagger V - I|`.
    pub fn orthonormality_deviation(&self) -> f64 {
        (&self.vectors.dagger() * &self.vectors).max_abs_diff(&ComplexMatrix::identity(self.dim()))
    }
}

/// The `d + 1` bases for an odd prime `d`.
pub fn mub_bases(d: usize, chi: ChiConvention) -> Result<Vec<Basis>> {
    check_dimension(d)?;
    if d == 2 || !is_prime(d) {
        return Err(Error::NotOddPrime(d));
    }
    eigenbases(d, chi)
}

/// Qubit special case: eigenbases of `Y`, `Z`, `X` under the same labeling
/// (`(1,1)`, `(1,0)`, `(0,1)`).
pub fn qubit_bases(chi: ChiConvention) -> Result<Vec<Basis>> {
    eigenbases(2, chi)
}

/// Odd-prime bases, or the qubit bases when `d = 2`.
pub fn bases_for(d: usize, chi: ChiConvention) -> Result<Vec<Basis>> {
    if d == 2 {
        qubit_bases(chi)
    } else {
        mub_bases(d, chi)
    }
}

fn eigenbases(d: usize, chi: ChiConvention) -> Result<Vec<Basis>> {
    subset_generators(d)
        .into_iter()
        .enumerate()
        .map(|(pos, generator)| {
            let q = hw_observable(generator, chi).matrix;
            let eig = hermitian_eigen(&q)?;
            if let Some(gap) = eig.values.windows(2).map(|w| w[1] - w[0]).reduce(f64::min) {
                if gap < DEGENERACY_THRESHOLD {
                    return Err(Error::DegenerateSpectrum { gap, threshold: DEGENERACY_THRESHOLD });
                }
            }
            Ok(Basis { label: pos + 1, generator, vectors: fix_phases(&eig.vectors), eigenvalues: eig.values })
        })
        .collect()
}

/// Rotates each column so its first non-negligible component is real and
/// positive.
fn fix_phases(vectors: &ComplexMatrix) -> ComplexMatrix {
    let mut out = vectors.clone();
    for j in 0..vectors.cols() {
        let col = vectors.column(j);
        let scale = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if let Some(lead) = col.iter().find(|z| z.norm() > 1e-8 * scale) {
            let rot = lead.conj() / lead.norm();
            for (i, z) in col.iter().enumerate() {
                out[(i, j)] = z * rot;
            }
        }
    }
    out
}

/// Pinching `σ ↦ Σ_r P_r σ P_r`.
pub fn projector_map_apply(set: &ProjectorSet, sigma: &ComplexMatrix) -> Result<ComplexMatrix> {
    let d = set.projectors.first().map(|p| p.rows()).unwrap_or(0);
    if sigma.shape() != (d, d) {
        return Err(Error::DimensionMismatch {
            expected: format!("{d}x{d}"),
            found: format!("{}x{}", sigma.rows(), sigma.cols()),
        });
    }
    Ok(set.projectors.iter().fold(ComplexMatrix::zeros(d, d), |acc, p| &acc + &(&(p * sigma) * p)))
}

/// Largest `| |⟨η_r^α|η_s^β⟩|² - 1/d |` over all `α ≠ β` and all `r, s`.
pub fn max_unbiasedness_deviation(bases: &[Basis]) -> f64 {
    let mut worst: f64 = 0.0;
    for (a, ba) in bases.iter().enumerate() {
        for bb in &bases[a + 1..] {
            worst = worst.max(pair_unbiasedness_deviation(ba, bb));
        }
    }
    worst
}

pub fn pair_unbiasedness_deviation(a: &Basis, b: &Basis) -> f64 {
    let d = a.dim();
    let overlaps = &a.vectors.dagger() * &b.vectors;
    overlaps.entries().iter().map(|z| (z.norm_sqr() - 1.0 / d as f64).abs()).fold(0.0, f64::max)
}

/// Table of `|⟨η_r^α|η_s^β⟩|²` for one pair of bases.
pub fn overlap_table(a: &Basis, b: &Basis) -> Vec<Vec<f64>> {
    let overlaps = &a.vectors.dagger() * &b.vectors;
    (0..a.dim()).map(|r| (0..b.dim()).map(|s| overlaps[(r, s)].norm_sqr()).collect()).collect()
}

/// `‖Φ_α(Φ_β(σ)) - Tr(σ) I/d‖` maximized over the matrix units `E_ij`.
pub fn verify_complementarity(bases: &[Basis], alpha: usize, beta: usize) -> Result<f64> {
    if alpha == beta {
        return Err(Error::InvalidArgument("complementarity needs two distinct bases".into()));
    }
    let find = |label: usize| {
        bases
            .iter()
            .find(|b| b.label == label)
            .ok_or_else(|| Error::InvalidArgument(format!("no basis with label {label}")))
    };
    let pa = find(alpha)?.projectors();
    let pb = find(beta)?.projectors();
    let d = find(alpha)?.dim();
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let e = ComplexMatrix::unit(d, i, j);
            let out = projector_map_apply(&pa, &projector_map_apply(&pb, &e)?)?;
            let expected = ComplexMatrix::identity(d).scale(e.trace()? / d as f64);
            worst = worst.max(out.max_abs_diff(&expected));
        }
    }
    Ok(worst)
}

/// `‖Σ_r P_r - I‖`.
pub fn completeness_deviation(set: &ProjectorSet) -> f64 {
    let d = set.projectors[0].rows();
    set.projectors.iter().fold(ComplexMatrix::zeros(d, d), |acc, p| &acc + p).max_abs_diff(&ComplexMatrix::identity(d))
}

/// Largest `‖[P_r^α, Q]‖` over the projectors of basis `α` and the members
/// `Q` of family `α`.
pub fn family_diagonalization_deviation(basis: &Basis, chi: ChiConvention) -> f64 {
    let d = basis.dim();
    let set = basis.projectors();
    (1..d)
        .map(|n| hw_observable(basis.generator.scaled(n), chi).matrix)
        .flat_map(|q| set.projectors.iter().map(move |p| p.commutator(&q).max_abs()).collect::<Vec<_>>())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn three_dimensional_bases() {
        let bases = mub_bases(3, ChiConvention::Plus).unwrap();
        assert_eq!(bases.len(), 4);
        for b in &bases {
            assert!(b.orthonormality_deviation() < 1e-12);
            for r in 0..3 {
                let first = b.vector(r).into_iter().find(|z| z.norm() > 1e-8).unwrap();
                assert!(first.im.abs() < 1e-14 && first.re > 0.0);
            }
        }
        assert!(max_unbiasedness_deviation(&bases) <= 1e-10);
        for row in overlap_table(&bases[0], &bases[1]) {
            for x in row {
                assert!((x - 1.0 / 3.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn five_dimensional_bases() {
        let bases = mub_bases(5, ChiConvention::Minus).unwrap();
        assert_eq!(bases.len(), 6);
        assert!(max_unbiasedness_deviation(&bases) <= 1e-10);
    }

    #[test]
    fn rejects_non_odd_primes() {
        assert_eq!(mub_bases(2, ChiConvention::Plus).unwrap_err(), Error::NotOddPrime(2));
        assert_eq!(mub_bases(9, ChiConvention::Plus).unwrap_err(), Error::NotOddPrime(9));
        assert!(qubit_bases(ChiConvention::Plus).is_ok());
    }

    #[test]
    fn qubit_bases_are_unbiased() {
        let bases = qubit_bases(ChiConvention::Plus).unwrap();
        assert_eq!(bases.len(), 3);
        assert!(max_unbiasedness_deviation(&bases) <= 1e-12);
    }

    #[test]
    fn projectors_and_pinching() {
        let bases = mub_bases(3, ChiConvention::Plus).unwrap();
        let set = bases[0].projectors();
        for p in &set.projectors {
            assert!((&(p * p) - p).max_abs() < 1e-12);
            assert!((p.trace().unwrap().re - 1.0).abs() < 1e-12);
            assert!(p.hermitian_asymmetry() < 1e-14);
        }
        assert!(completeness_deviation(&set) < 1e-12);

        let fixed = projector_map_apply(&set, &set.projectors[0]).unwrap();
        assert!(fixed.max_abs_diff(&set.projectors[0]) < 1e-12);
        let mixed = ComplexMatrix::identity(3).scale_real(1.0 / 3.0);
        assert!(projector_map_apply(&set, &mixed).unwrap().max_abs_diff(&mixed) < 1e-12);

        let mut rng = SplitMix64::new(3);
        let sigma = rng.complex_matrix(3, 3);
        let out = projector_map_apply(&set, &sigma).unwrap();
        assert!((out.trace().unwrap() - sigma.trace().unwrap()).norm() < 1e-12);
        assert!(projector_map_apply(&set, &ComplexMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn complementarity_both_orders() {
        let bases = mub_bases(3, ChiConvention::Plus).unwrap();
        let pa = bases[0].projectors();
        let pb = bases[1].projectors();
        let e00 = ComplexMatrix::unit(3, 0, 0);
        let ab = projector_map_apply(&pa, &projector_map_apply(&pb, &e00).unwrap()).unwrap();
        let ba = projector_map_apply(&pb, &projector_map_apply(&pa, &e00).unwrap()).unwrap();
        let third = ComplexMatrix::identity(3).scale_real(1.0 / 3.0);
        assert!(ab.max_abs_diff(&third) <= 1e-10);
        assert!(ba.max_abs_diff(&third) <= 1e-10);
        assert!(verify_complementarity(&bases, 1, 2).unwrap() <= 1e-10);
        assert!(verify_complementarity(&bases, 2, 1).unwrap() <= 1e-10);
        assert!(verify_complementarity(&bases, 2, 2).is_err());
    }

    #[test]
    fn complementarity_on_random_hermitian_d5() {
        let bases = mub_bases(5, ChiConvention::Plus).unwrap();
        let mut rng = SplitMix64::new(11);
        let sigma = rng.hermitian(5);
        let expected = ComplexMatrix::identity(5).scale(sigma.trace().unwrap() / 5.0);
        let (p2, p5) = (bases[1].projectors(), bases[4].projectors());
        let both = [
            projector_map_apply(&p2, &projector_map_apply(&p5, &sigma).unwrap()).unwrap(),
            projector_map_apply(&p5, &projector_map_apply(&p2, &sigma).unwrap()).unwrap(),
        ];
        for out in both {
            assert!(out.max_abs_diff(&expected) < 1e-10);
        }
    }

    #[test]
    fn each_basis_diagonalizes_its_family() {
        for d in [3, 5] {
            for b in mub_bases(d, ChiConvention::Plus).unwrap() {
                assert!(family_diagonalization_deviation(&b, ChiConvention::Plus) <= 1e-9);
            }
        }
    }

    #[test]
    fn observable_spectrum_is_nondegenerate_cosines() {
        let bases = mub_bases(3, ChiConvention::Plus).unwrap();
        let z_basis = bases.iter().find(|b| b.generator == WeylIndex::new(1, 0, 3).unwrap()).unwrap();
        let mut expected: Vec<f64> = (0..3)
            .map(|j| 2f64.sqrt() * (2.0 * std::f64::consts::PI * j as f64 / 3.0 + std::f64::consts::FRAC_PI_4).cos())
            .collect();
        expected.sort_by(f64::total_cmp);
        for (a, b) in z_basis.eigenvalues.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
