//! Linear maps of the form `Y ↦ Σ w_i L_i Y R_i` and their matrix
//! representations.
//!
//! Vectorization is column-stacking throughout, so the superoperator of
//! `Y ↦ A Y B` is `B^T ⊗ A`. The Choi matrix is the unnormalized
//! `Σ_ij E_ij ⊗ Λ(E_ij)`. Two maps are compared by the max-entry distance of
//! their superoperators, never by their term lists.

mod channels;
mod weights;

pub use channels::{
    gen_pauli_channel_hw, gen_pauli_channel_mub, refined_map, refined_pair_map, u_family, v_family, RefinedWeights,
};
pub use weights::{WeightFile, WeightVector};

use crate::error::{Error, Result};
use crate::hwops::{check_dimension, hw_observable, weyl_op, ChiConvention, WeylIndex};
use crate::linalg::{hermitian_eigen, ComplexMatrix, ComplexScalar};

/// Choi eigenvalues at or above `-CP_TOLERANCE` count as non-negative.
pub const CP_TOLERANCE: f64 = 1e-10;

/// Probability vectors must sum to one within this tolerance.
pub const PROBABILITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct SandwichTerm {
    pub weight: f64,
    pub left: ComplexMatrix,
    pub right: ComplexMatrix,
}

#[derive(Debug, Clone)]
pub struct SandwichMap {
    d: usize,
    terms: Vec<SandwichTerm>,
}

impl SandwichMap {
    /// The zero map on `d×d` operators.
    pub fn empty(d: usize) -> Result<Self> {
        check_dimension(d)?;
        Ok(Self { d, terms: Vec::new() })
    }

    pub fn identity(d: usize) -> Result<Self> {
        let mut map = Self::empty(d)?;
        map.push(1.0, ComplexMatrix::identity(d), ComplexMatrix::identity(d))?;
        Ok(map)
    }

    pub fn push(&mut self, weight: f64, left: ComplexMatrix, right: ComplexMatrix) -> Result<()> {
        for m in [&left, &right] {
            if m.shape() != (self.d, self.d) {
                return Err(Error::DimensionMismatch {
                    expected: format!("{0}x{0}", self.d),
                    found: format!("{}x{}", m.rows(), m.cols()),
                });
            }
        }
        if !weight.is_finite() {
            return Err(Error::InvalidWeights("term weight must be finite".into()));
        }
        self.terms.push(SandwichTerm { weight, left, right });
        Ok(())
    }

    /// Adds `weight · op Y op`.
    pub fn push_symmetric(&mut self, weight: f64, op: ComplexMatrix) -> Result<()> {
        self.push(weight, op.clone(), op)
    }

    /// Appends the terms of `other`, each scaled by `factor`.
    pub fn extend_scaled(&mut self, other: &SandwichMap, factor: f64) -> Result<()> {
        if other.d != self.d {
            return Err(Error::DimensionMismatch {
                expected: format!("d={}", self.d),
                found: format!("d={}", other.d),
            });
        }
        for t in &other.terms {
            self.terms.push(SandwichTerm { weight: t.weight * factor, left: t.left.clone(), right: t.right.clone() });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &[SandwichTerm] {
        &self.terms
    }

    pub fn apply(&self, y: &ComplexMatrix) -> Result<ComplexMatrix> {
        if y.shape() != (self.d, self.d) {
            return Err(Error::DimensionMismatch {
                expected: format!("{0}x{0}", self.d),
                found: format!("{}x{}", y.rows(), y.cols()),
            });
        }
        Ok(self.terms.iter().fold(ComplexMatrix::zeros(self.d, self.d), |acc, t| {
            &acc + &(&(&t.left * y) * &t.right).scale_real(t.weight)
        }))
    }

    /// Image of the matrix unit `E_ij`: `Σ w L[:, i] R[j, :]`.
    pub fn apply_unit(&self, i: usize, j: usize) -> ComplexMatrix {
        let d = self.d;
        let mut out = ComplexMatrix::zeros(d, d);
        for t in &self.terms {
            for a in 0..d {
                let la = t.left[(a, i)] * t.weight;
                if la.re == 0.0 && la.im == 0.0 {
                    continue;
                }
                for b in 0..d {
                    out[(a, b)] += la * t.right[(j, b)];
                }
            }
        }
        out
    }

    pub fn superoperator(&self) -> Superoperator {
        let d = self.d;
        let n = d * d;
        let mut s = ComplexMatrix::zeros(n, n);
        for j in 0..d {
            for i in 0..d {
                let col = j * d + i;
                for (row, z) in self.apply_unit(i, j).vectorize().into_iter().enumerate() {
                    s[(row, col)] = z;
                }
            }
        }
        Superoperator { d, matrix: s }
    }

    pub fn choi(&self) -> ChoiMatrix {
        let d = self.d;
        let mut c = ComplexMatrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                let block = self.apply_unit(i, j);
                for a in 0..d {
                    for b in 0..d {
                        c[(i * d + a, j * d + b)] = block[(a, b)];
                    }
                }
            }
        }
        ChoiMatrix { d, matrix: c }
    }
}

/// `d²×d²` matrix acting on column-stacked operators.
#[derive(Debug, Clone)]
pub struct Superoperator {
    d: usize,
    matrix: ComplexMatrix,
}

impl Superoperator {
    pub fn from_matrix(d: usize, matrix: ComplexMatrix) -> Result<Self> {
        check_dimension(d)?;
        if matrix.shape() != (d * d, d * d) {
            return Err(Error::DimensionMismatch {
                expected: format!("{0}x{0}", d * d),
                found: format!("{}x{}", matrix.rows(), matrix.cols()),
            });
        }
        Ok(Self { d, matrix })
    }

    pub fn identity(d: usize) -> Result<Self> {
        Self::from_matrix(d, ComplexMatrix::identity(d * d))
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn apply(&self, y: &ComplexMatrix) -> Result<ComplexMatrix> {
        let v = self.matrix.apply_vector(&y.vectorize())?;
        ComplexMatrix::unvectorize(self.d, self.d, &v)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn after(&self, inner: &Superoperator) -> Result<Superoperator> {
        if self.d != inner.d {
            return Err(Error::DimensionMismatch {
                expected: format!("d={}", self.d),
                found: format!("d={}", inner.d),
            });
        }
        Ok(Superoperator { d: self.d, matrix: self.matrix.matmul(&inner.matrix)? })
    }

    /// Max-entry distance; infinity for different dimensions.
    pub fn distance(&self, other: &Superoperator) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }
}

#[derive(Debug, Clone)]
pub struct ChoiMatrix {
    d: usize,
    matrix: ComplexMatrix,
}

impl ChoiMatrix {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Ascending spectrum.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eigen(&self.matrix)?.values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpVerdict {
    pub completely_positive: bool,
    pub min_eigenvalue: f64,
}

/// `outer ∘ inner` as a superoperator.
pub fn compose(outer: &SandwichMap, inner: &SandwichMap) -> Result<Superoperator> {
    outer.superoperator().after(&inner.superoperator())
}

pub fn is_completely_positive(map: &SandwichMap) -> Result<CpVerdict> {
    let min_eigenvalue = map.choi().eigenvalues()?[0];
    Ok(CpVerdict { completely_positive: min_eigenvalue >= -CP_TOLERANCE, min_eigenvalue })
}

/// `‖Λ(I) - I‖`.
pub fn is_unital(map: &SandwichMap) -> f64 {
    let id = ComplexMatrix::identity(map.dim());
    map.apply(&id).expect("square input").max_abs_diff(&id)
}

/// Max over matrix units of `|Tr Λ(E_ij) - Tr E_ij|`.
pub fn is_trace_preserving(map: &SandwichMap) -> f64 {
    let d = map.dim();
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let tr = map.apply_unit(i, j).trace().expect("square");
            let expected = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((tr - ComplexScalar::new(expected, 0.0)).norm());
        }
    }
    worst
}

/// `Λ(Y) = Σ p_{k,l} Q_{k,l} Y Q_{k,l}` over all `d²` indices.
pub fn hw_map(p: &WeightVector, chi: ChiConvention) -> Result<SandwichMap> {
    let d = p.dim();
    let mut map = SandwichMap::empty(d)?;
    for idx in WeylIndex::all(d)? {
        map.push_symmetric(p.get(idx), hw_observable(idx, chi).matrix)?;
    }
    Ok(map)
}

/// `Λ_W(Y) = Σ p_{k,l} W_{k,l} Y W_{k,l}^dagger` for a probability vector.
pub fn weyl_channel(p: &WeightVector) -> Result<SandwichMap> {
    if !p.is_probability(PROBABILITY_TOLERANCE) {
        return Err(Error::InvalidWeights("Weyl channel weights must be a probability vector".into()));
    }
    let mut map = SandwichMap::empty(p.dim())?;
    for idx in WeylIndex::all(p.dim())? {
        let w = weyl_op(idx);
        let w_dag = w.dagger();
        map.push(p.get(idx), w, w_dag)?;
    }
    Ok(map)
}

/// True when `p` is symmetric under index negation and
/// `p_{0,0} = 1 - Σ_{(k,l)≠(0,0)} p_{k,l}`.
pub fn unitality_sufficient(p: &WeightVector) -> bool {
    let tol = PROBABILITY_TOLERANCE;
    let origin = WeylIndex::identity(p.dim()).expect("valid dimension");
    let rest: f64 = p.sum() - p.get(origin);
    p.negation_asymmetry() <= tol && (p.get(origin) - (1.0 - rest)).abs() <= tol
}

/// `Φ̃_{k,l}(Y) = Q_{k,l} Y Q_{k,l} + Q_{-k,-l} Y Q_{-k,-l}`.
pub fn pair_map(idx: WeylIndex, chi: ChiConvention) -> Result<SandwichMap> {
    let mut map = SandwichMap::empty(idx.dim())?;
    map.push_symmetric(1.0, hw_observable(idx, chi).matrix)?;
    map.push_symmetric(1.0, hw_observable(idx.negated(), chi).matrix)?;
    Ok(map)
}

/// Largest `‖S(Ψ_a ∘ Ψ_b) - S(Ψ_b ∘ Ψ_a)‖` over all pairs of pair maps.
pub fn max_pair_map_commutator(d: usize, chi: ChiConvention) -> Result<f64> {
    let supers: Vec<Superoperator> =
        WeylIndex::all(d)?.into_iter().map(|i| pair_map(i, chi).map(|m| m.superoperator())).collect::<Result<_>>()?;
    let mut worst: f64 = 0.0;
    for (a, sa) in supers.iter().enumerate() {
        for sb in &supers[a + 1..] {
            worst = worst.max(sa.after(sb)?.distance(&sb.after(sa)?));
        }
    }
    Ok(worst)
}
