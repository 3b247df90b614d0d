//! Shift, phase, Weyl and displacement operators, Heisenberg-Weyl
//! observables, and the commuting-subset partition for prime dimensions.
//!
//! Index arithmetic is always modulo `d`. The product `k·l` that appears in
//! the displacement phase (and in the `(-1)^{kl}` signs used by the spectral
//! checks) is the residue `(k·l) mod d`.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexScalar};

/// Pair `(k, l)` of residues modulo `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeylIndex {
    k: usize,
    l: usize,
    d: usize,
}

impl WeylIndex {
    /// Builds an index, reducing `k` and `l` modulo `d`. Negative inputs are
    /// accepted and mapped to their residues.
    pub fn new(k: i64, l: i64, d: usize) -> Result<Self> {
        check_dimension(d)?;
        let m = d as i64;
        Ok(Self { k: k.rem_euclid(m) as usize, l: l.rem_euclid(m) as usize, d })
    }

    pub fn identity(d: usize) -> Result<Self> {
        Self::new(0, 0, d)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && self.l == 0
    }

    /// `(-k, -l)` modulo `d`.
    pub fn negated(&self) -> Self {
        Self { k: (self.d - self.k) % self.d, l: (self.d - self.l) % self.d, d: self.d }
    }

    /// `(n·k, n·l)` modulo `d`.
    pub fn scaled(&self, n: usize) -> Self {
        Self { k: (n * self.k) % self.d, l: (n * self.l) % self.d, d: self.d }
    }

    pub fn shifted(&self, other: &Self) -> Self {
        Self { k: (self.k + other.k) % self.d, l: (self.l + other.l) % self.d, d: self.d }
    }

    /// Residue of `k·l` modulo `d`.
    pub fn reduced_product(&self) -> usize {
        (self.k * self.l) % self.d
    }

    /// `(-1)^{(k·l) mod d}`.
    pub fn parity_sign(&self) -> f64 {
        if self.reduced_product().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// Row-major position `k·d + l`.
    pub fn flat(&self) -> usize {
        self.k * self.d + self.l
    }

    pub fn from_flat(flat: usize, d: usize) -> Result<Self> {
        check_dimension(d)?;
        if flat >= d * d {
            return Err(Error::InvalidArgument(format!("flat index {flat} out of range for d={d}")));
        }
        Ok(Self { k: flat / d, l: flat % d, d })
    }

    /// All `d²` indices in row-major order.
    pub fn all(d: usize) -> Result<Vec<Self>> {
        check_dimension(d)?;
        Ok((0..d * d).map(|f| Self { k: f / d, l: f % d, d }).collect())
    }

    /// The `d² - 1` indices other than `(0, 0)`, row-major.
    pub fn non_identity(d: usize) -> Result<Vec<Self>> {
        Ok(Self::all(d)?.into_iter().filter(|i| !i.is_identity()).collect())
    }
}

impl fmt::Display for WeylIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

/// Selects `χ = (1+i)/2` (`Plus`) or `χ = (1-i)/2` (`Minus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ChiConvention {
    #[default]
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl ChiConvention {
    pub fn value(self) -> ComplexScalar {
        match self {
            ChiConvention::Plus => ComplexScalar::new(0.5, 0.5),
            ChiConvention::Minus => ComplexScalar::new(0.5, -0.5),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ChiConvention::Plus => "+",
            ChiConvention::Minus => "-",
        }
    }
}

impl std::str::FromStr for ChiConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(ChiConvention::Plus),
            "-" | "minus" => Ok(ChiConvention::Minus),
            other => Err(Error::InvalidArgument(format!("chi must be '+' or '-', got '{other}'"))),
        }
    }
}

/// Hermitian observable `Q_{k,l} = χ D_{k,l} + χ* D_{k,l}^dagger`.
#[derive(Debug, Clone)]
pub struct HWObservable {
    pub index: WeylIndex,
    pub matrix: ComplexMatrix,
}

pub(crate) fn check_dimension(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    Ok(())
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// `ω^m` with `ω = exp(2πi/d)`.
pub fn root_of_unity(m: usize, d: usize) -> ComplexScalar {
    ComplexScalar::from_polar(1.0, 2.0 * PI * (m % d) as f64 / d as f64)
}

/// Cyclic shift `X|r⟩ = |r+1 mod d⟩`.
pub fn shift_op(d: usize) -> Result<ComplexMatrix> {
    check_dimension(d)?;
    Ok(ComplexMatrix::from_fn(d, d, |i, j| {
        if i == (j + 1) % d {
            ComplexScalar::new(1.0, 0.0)
        } else {
            ComplexScalar::new(0.0, 0.0)
        }
    }))
}

/// Phase `Z|r⟩ = ω^r |r⟩`.
pub fn phase_op(d: usize) -> Result<ComplexMatrix> {
    check_dimension(d)?;
    let diag: Vec<ComplexScalar> = (0..d).map(|r| root_of_unity(r, d)).collect();
    Ok(ComplexMatrix::diag(&diag))
}

/// `Z^k X^l`, built entrywise: it sends `|r⟩` to `ω^{k(r+l)} |r+l⟩`.
pub fn clock_shift(k: usize, l: usize, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(
        d,
        d,
        |i, j| {
            if i == (j + l) % d {
                root_of_unity(k * i, d)
            } else {
                ComplexScalar::new(0.0, 0.0)
            }
        },
    )
}

/// `W_{k,l} = X^l Z^k`.
pub fn weyl_op(idx: WeylIndex) -> ComplexMatrix {
    let d = idx.d;
    // X^l Z^k |r⟩ = ω^{kr} |r+l⟩
    ComplexMatrix::from_fn(d, d, |i, j| {
        if i == (j + idx.l) % d {
            root_of_unity(idx.k * j, d)
        } else {
            ComplexScalar::new(0.0, 0.0)
        }
    })
}

/// `D_{k,l} = exp(-iπ (kl mod d)/d) Z^k X^l`.
pub fn displacement_op(idx: WeylIndex) -> ComplexMatrix {
    let phase = ComplexScalar::from_polar(1.0, -PI * idx.reduced_product() as f64 / idx.d as f64);
    clock_shift(idx.k, idx.l, idx.d).scale(phase)
}

pub fn hw_observable(idx: WeylIndex, chi: ChiConvention) -> HWObservable {
    let disp = displacement_op(idx);
    let chi = chi.value();
    let matrix = &disp.scale(chi) + &disp.dagger().scale(chi.conj());
    HWObservable { index: idx, matrix }
}

/// All `d²` observables in row-major index order.
pub fn all_observables(d: usize, chi: ChiConvention) -> Result<Vec<HWObservable>> {
    Ok(WeylIndex::all(d)?.into_iter().map(|i| hw_observable(i, chi)).collect())
}

/// Partition of the non-identity indices of a prime dimension into `d + 1`
/// sets of `d - 1` mutually commuting labels.
///
/// The order is `{(n, αn)}` for `α = 1..d-1`, then `{(n, 0)}`, then
/// `{(0, n)}`, each listed for `n = 1..d-1`. Position `α - 1` in the returned
/// vector is the family label `α` used by the channel constructors.
pub fn commuting_subsets(d: usize) -> Result<Vec<Vec<WeylIndex>>> {
    check_dimension(d)?;
    if !is_prime(d) {
        return Err(Error::NotPrime(d));
    }
    let mut sets: Vec<Vec<WeylIndex>> = Vec::with_capacity(d + 1);
    for generator in subset_generators(d) {
        sets.push((1..d).map(|n| generator.scaled(n)).collect());
    }
    Ok(sets)
}

/// Generators `(1, α)` for `α = 1..d-1`, then `(1, 0)` and `(0, 1)`.
pub fn subset_generators(d: usize) -> Vec<WeylIndex> {
    let mut gens: Vec<WeylIndex> = (1..d).map(|a| WeylIndex { k: 1, l: a, d }).collect();
    gens.push(WeylIndex { k: 1, l: 0, d });
    gens.push(WeylIndex { k: 0, l: 1, d });
    gens
}

/// `‖Q_{k,l}² + Q_{-k,-l}² - 2I‖`.
pub fn verify_square_pair(idx: WeylIndex, chi: ChiConvention) -> f64 {
    let q = hw_observable(idx, chi).matrix;
    let q_neg = hw_observable(idx.negated(), chi).matrix;
    let lhs = &(&q * &q) + &(&q_neg * &q_neg);
    lhs.max_abs_diff(&ComplexMatrix::identity(idx.d).scale_real(2.0))
}

/// `‖Σ_{n=1}^{d-1} Q_{nk,nl}² - (d-1)I‖`.
pub fn verify_sum_of_squares(idx: WeylIndex, chi: ChiConvention) -> Result<f64> {
    if idx.is_identity() {
        return Err(Error::InvalidArgument("sum of squares needs (k, l) != (0, 0)".into()));
    }
    let d = idx.d;
    let mut acc = ComplexMatrix::zeros(d, d);
    for n in 1..d {
        let q = hw_observable(idx.scaled(n), chi).matrix;
        acc = &acc + &(&q * &q);
    }
    Ok(acc.max_abs_diff(&ComplexMatrix::identity(d).scale_real((d - 1) as f64)))
}

/// Largest within-subset commutator norm over the prime-dimension partition.
pub fn max_within_subset_commutator(d: usize, chi: ChiConvention) -> Result<f64> {
    let subsets = commuting_subsets(d)?;
    let mut worst: f64 = 0.0;
    for set in &subsets {
        let ops: Vec<ComplexMatrix> = set.iter().map(|&i| hw_observable(i, chi).matrix).collect();
        for (a, qa) in ops.iter().enumerate() {
            for qb in &ops[a + 1..] {
                worst = worst.max(qa.commutator(qb).max_abs());
            }
        }
    }
    Ok(worst)
}

/// Largest `‖[Q_{k,l}, Q_{nk,nl}]‖` over all indices and multipliers. Needs
/// no primality, so it covers composite dimensions too.
pub fn max_multiple_commutator(d: usize, chi: ChiConvention) -> Result<f64> {
    let obs = all_observables(d, chi)?;
    let mut worst: f64 = 0.0;
    for q in &obs {
        for n in 2..d {
            let multiple = &obs[q.index.scaled(n).flat()].matrix;
            worst = worst.max(q.matrix.commutator(multiple).max_abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn idx(k: i64, l: i64, d: usize) -> WeylIndex {
        WeylIndex::new(k, l, d).unwrap()
    }

    #[test]
    fn index_reduces_mod_d() {
        let i = idx(-1, 7, 5);
        assert_eq!((i.k(), i.l()), (4, 2));
        assert_eq!(i.negated(), idx(1, 3, 5));
        assert_eq!(idx(2, 3, 5).reduced_product(), 1);
        assert!(WeylIndex::new(0, 0, 1).is_err());
    }

    #[test]
    fn qubit_shift_and_phase() {
        assert_eq!(shift_op(2).unwrap(), ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap());
        let z = phase_op(2).unwrap();
        assert!(z.max_abs_diff(&ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()) < 1e-15);
        assert_eq!(shift_op(1), Err(Error::DimensionTooSmall(1)));
        assert!(phase_op(0).is_err());
    }

    #[test]
    fn shift_wraps_around() {
        let x = shift_op(3).unwrap();
        // X|2⟩ = |0⟩: column 2 has its one in row 0.
        assert_eq!(x[(0, 2)], c(1.0, 0.0));
        assert_eq!(x.column(2).iter().filter(|z| z.norm() > 0.0).count(), 1);
        let x5 = shift_op(5).unwrap();
        assert_eq!(x5.pow(5).unwrap(), ComplexMatrix::identity(5));
    }

    #[test]
    fn clock_shift_matches_powers() {
        for d in 2..=5 {
            let x = shift_op(d).unwrap();
            let z = phase_op(d).unwrap();
            for k in 0..d {
                for l in 0..d {
                    let expected = &z.pow(k as u32).unwrap() * &x.pow(l as u32).unwrap();
                    assert!(clock_shift(k, l, d).max_abs_diff(&expected) < 1e-13);
                    let w = &x.pow(l as u32).unwrap() * &z.pow(k as u32).unwrap();
                    assert!(weyl_op(idx(k as i64, l as i64, d)).max_abs_diff(&w) < 1e-13);
                }
            }
        }
    }

    #[test]
    fn weyl_composition_law() {
        let d = 3;
        for a in WeylIndex::all(d).unwrap() {
            for b in WeylIndex::all(d).unwrap() {
                let lhs = &weyl_op(a) * &weyl_op(b);
                let rhs = weyl_op(a.shifted(&b)).scale(root_of_unity(a.k() * b.l(), d));
                assert!(lhs.max_abs_diff(&rhs) < 1e-14, "{a} {b}");
            }
        }
    }

    #[test]
    fn weyl_adjoint_phase() {
        let d = 5;
        let w = weyl_op(idx(1, 2, d));
        let expected = weyl_op(idx(-1, -2, d)).scale(ComplexScalar::from_polar(1.0, 4.0 * PI / d as f64));
        assert!(w.dagger().max_abs_diff(&expected) < 1e-14);
        assert_eq!(weyl_op(idx(0, 0, d)), ComplexMatrix::identity(d));
    }

    #[test]
    fn displacement_examples() {
        assert!(displacement_op(idx(0, 0, 4)).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
        let y = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        assert!(displacement_op(idx(1, 1, 2)).max_abs_diff(&y) < 1e-15);
        let d5 = displacement_op(idx(2, 3, 5));
        assert!(d5.dagger().max_abs_diff(&displacement_op(idx(-2, -3, 5))) < 1e-14);
    }

    #[test]
    fn qubit_observables_are_paulis() {
        let chi = ChiConvention::Plus;
        let x = hw_observable(idx(0, 1, 2), chi).matrix;
        let z = hw_observable(idx(1, 0, 2), chi).matrix;
        let y = hw_observable(idx(1, 1, 2), chi).matrix;
        assert!(x.max_abs_diff(&ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()) < 1e-15);
        assert!(z.max_abs_diff(&ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()) < 1e-15);
        let pauli_y = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        assert!(y.max_abs_diff(&pauli_y) < 1e-15);
        assert_eq!(hw_observable(idx(0, 0, 3), chi).matrix, ComplexMatrix::identity(3));
    }

    #[test]
    fn gram_matrix_d3() {
        for chi in [ChiConvention::Plus, ChiConvention::Minus] {
            let qs = all_observables(3, chi).unwrap();
            for (a, qa) in qs.iter().enumerate() {
                for (b, qb) in qs.iter().enumerate() {
                    let expected = if a == b { 3.0 } else { 0.0 };
                    assert!((qa.matrix.hs_inner(&qb.matrix).unwrap() - c(expected, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn partition_d3_matches_enumeration() {
        let sets = commuting_subsets(3).unwrap();
        let as_pairs: Vec<Vec<(usize, usize)>> =
            sets.iter().map(|s| s.iter().map(|i| (i.k(), i.l())).collect()).collect();
        assert_eq!(
            as_pairs,
            vec![vec![(1, 1), (2, 2)], vec![(1, 2), (2, 1)], vec![(1, 0), (2, 0)], vec![(0, 1), (0, 2)]]
        );
        let five = commuting_subsets(5).unwrap();
        assert_eq!(five.len(), 6);
        assert!(five.iter().all(|s| s.len() == 4));
        assert_eq!(commuting_subsets(6).unwrap_err(), Error::NotPrime(6));
    }

    #[test]
    fn commuting_pair_d3() {
        let chi = ChiConvention::Plus;
        let a = hw_observable(idx(1, 1, 3), chi).matrix;
        let b = hw_observable(idx(2, 2, 3), chi).matrix;
        assert!(a.commutator(&b).max_abs() < 1e-14);
    }

    #[test]
    fn square_pair_examples() {
        let chi = ChiConvention::Plus;
        assert_eq!(verify_square_pair(idx(0, 0, 4), chi), 0.0);
        assert!(verify_square_pair(idx(1, 2, 3), chi) <= 1e-10);
        assert!(verify_square_pair(idx(1, 1, 4), chi) <= 1e-10);
    }

    #[test]
    fn sum_of_squares_examples() {
        let chi = ChiConvention::Plus;
        assert!(verify_sum_of_squares(idx(1, 1, 3), chi).unwrap() <= 1e-10);
        assert_eq!(verify_sum_of_squares(idx(0, 1, 2), chi).unwrap(), 0.0);
        assert!(verify_sum_of_squares(idx(2, 3, 7), chi).unwrap() <= 1e-10);
        assert!(verify_sum_of_squares(idx(0, 0, 3), chi).is_err());
    }

    #[test]
    fn primes() {
        let found: Vec<usize> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(found, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn multiples_commute_at_any_dimension() {
        for d in [2, 4, 6] {
            assert!(max_multiple_commutator(d, ChiConvention::Plus).unwrap() <= 1e-12, "d={d}");
        }
        let q = hw_observable(idx(1, 0, 4), ChiConvention::Plus).matrix;
        let other = hw_observable(idx(0, 1, 4), ChiConvention::Plus).matrix;
        assert!(q.commutator(&other).max_abs() > 0.1);
    }
}
