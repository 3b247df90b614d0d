//! Generalized Pauli channels, built from Heisenberg-Weyl observables or
//! from mutually unbiased bases, and the pair-refined family.

use crate::error::{Error, Result};
use crate::hwops::{check_dimension, hw_observable, is_prime, subset_generators, ChiConvention, WeylIndex};
use crate::linalg::ComplexMatrix;
use crate::mub::{bases_for, Basis};

use super::{pair_map, SandwichMap, PROBABILITY_TOLERANCE};

fn check_prime(d: usize) -> Result<()> {
    check_dimension(d)?;
    if !is_prime(d) {
        return Err(Error::NotPrime(d));
    }
    Ok(())
}

fn check_channel_weights(p: &[f64], d: usize) -> Result<()> {
    if p.len() != d + 2 {
        return Err(Error::InvalidWeights(format!("expected {} weights (p_0..p_{{d+1}}), got {}", d + 2, p.len())));
    }
    let total: f64 = p.iter().sum();
    if p.iter().any(|&x| !x.is_finite() || x < 0.0) || (total - 1.0).abs() > PROBABILITY_TOLERANCE {
        return Err(Error::InvalidWeights("channel weights must form a probability vector".into()));
    }
    Ok(())
}

fn family_generator(alpha: usize, d: usize) -> Result<WeylIndex> {
    if alpha == 0 || alpha > d + 1 {
        return Err(Error::InvalidArgument(format!("family label {alpha} outside 1..={}", d + 1)));
    }
    Ok(subset_generators(d)[alpha - 1])
}

/// `U_α(X) = Σ_{n=1}^{d-1} Q_{n g} X Q_{n g}` for the generator `g` of
/// family `α`.
pub fn u_family(alpha: usize, d: usize, chi: ChiConvention) -> Result<SandwichMap> {
    check_prime(d)?;
    let g = family_generator(alpha, d)?;
    let mut map = SandwichMap::empty(d)?;
    for n in 1..d {
        map.push_symmetric(1.0, hw_observable(g.scaled(n), chi).matrix)?;
    }
    Ok(map)
}

/// `V_α = d Φ_α - I` from the projectors of one basis.
pub fn v_family(basis: &Basis) -> Result<SandwichMap> {
    let d = basis.dim();
    let mut map = SandwichMap::empty(d)?;
    map.push_symmetric(-1.0, ComplexMatrix::identity(d))?;
    for p in basis.projectors().projectors {
        map.push_symmetric(d as f64, p)?;
    }
    Ok(map)
}

/// `Λ = p_0 I + 1/(d-1) Σ_{α=1}^{d+1} p_α U_α`.
pub fn gen_pauli_channel_hw(p: &[f64], d: usize, chi: ChiConvention) -> Result<SandwichMap> {
    check_prime(d)?;
    check_channel_weights(p, d)?;
    let mut map = SandwichMap::empty(d)?;
    map.push_symmetric(p[0], ComplexMatrix::identity(d))?;
    let norm = 1.0 / (d - 1) as f64;
    for (alpha, &weight) in p.iter().enumerate().skip(1) {
        map.extend_scaled(&u_family(alpha, d, chi)?, weight * norm)?;
    }
    Ok(map)
}

/// `Λ = p_0 I + 1/(d-1) Σ_{α=1}^{d+1} p_α V_α` with `V_α` from the MUB
/// projectors of family `α`. Requires an odd prime, or `d = 2` where the
/// Pauli eigenbases are used.
pub fn gen_pauli_channel_mub(p: &[f64], d: usize, chi: ChiConvention) -> Result<SandwichMap> {
    check_dimension(d)?;
    check_channel_weights(p, d)?;
    let bases = bases_for(d, chi)?;
    let mut map = SandwichMap::empty(d)?;
    map.push_symmetric(p[0], ComplexMatrix::identity(d))?;
    let norm = 1.0 / (d - 1) as f64;
    for basis in &bases {
        map.extend_scaled(&v_family(basis)?, p[basis.label] * norm)?;
    }
    Ok(map)
}

/// Weights for the pair-refined map: `p_0` and, for each family
/// `α = 1..d+1`, one weight per pair `i = 1..(d-1)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinedWeights {
    pub p0: f64,
    pub pairs: Vec<Vec<f64>>,
}

impl RefinedWeights {
    /// Every pair in family `α` carries `p[α]`.
    pub fn uniform_families(p: &[f64], d: usize) -> Self {
        let half = (d - 1) / 2;
        Self { p0: p[0], pairs: (1..=d + 1).map(|a| vec![p[a]; half]).collect() }
    }

    pub fn from_flat(p0: f64, flat: &[f64], d: usize) -> Result<Self> {
        let half = (d - 1) / 2;
        if flat.len() != (d + 1) * half {
            return Err(Error::InvalidWeights(format!("expected {} pair weights, got {}", (d + 1) * half, flat.len())));
        }
        Ok(Self { p0, pairs: flat.chunks(half).map(<[f64]>::to_vec).collect() })
    }
}

/// `U_α^i(X) = Q_{i g} X Q_{i g} + Q_{-i g} X Q_{-i g}`.
pub fn refined_pair_map(alpha: usize, i: usize, d: usize, chi: ChiConvention) -> Result<SandwichMap> {
    check_prime(d)?;
    if d == 2 {
        return Err(Error::NotOddPrime(d));
    }
    if i == 0 || i > (d - 1) / 2 {
        return Err(Error::InvalidArgument(format!("pair index {i} outside 1..={}", (d - 1) / 2)));
    }
    pair_map(family_generator(alpha, d)?.scaled(i), chi)
}

/// `Ψ(X) = p_0 X + 1/(d-1) Σ_α Σ_i p_α^i U_α^i(X)`.
pub fn refined_map(weights: &RefinedWeights, d: usize, chi: ChiConvention) -> Result<SandwichMap> {
    check_prime(d)?;
    if d == 2 {
        return Err(Error::NotOddPrime(d));
    }
    let half = (d - 1) / 2;
    if weights.pairs.len() != d + 1 || weights.pairs.iter().any(|f| f.len() != half) {
        return Err(Error::InvalidWeights(format!("expected {} families of {half} pair weights", d + 1)));
    }
    let mut map = SandwichMap::empty(d)?;
    map.push_symmetric(weights.p0, ComplexMatrix::identity(d))?;
    let norm = 1.0 / (d - 1) as f64;
    for (a, family) in weights.pairs.iter().enumerate() {
        for (i, &w) in family.iter().enumerate() {
            map.extend_scaled(&refined_pair_map(a + 1, i + 1, d, chi)?, w * norm)?;
        }
    }
    Ok(map)
}
