//! Transfer matrices in the normalized Heisenberg-Weyl basis and the qutrit
//! case study built on them.
//!
//! With `Γ_0 = I/√d` and `Γ_i = Q_i/√d` (row-major, identity excluded) the
//! entries are `R_{βα} = ⟨Γ_β, Φ(Γ_α)⟩`. The block split is
//!
//! ```text
//! R = [ R00  s ]
//!     [ t    Δ ]
//! ```
//!
//! so `t` (the image of the identity) decides unitality and `s` (the trace
//! of the images) decides trace preservation.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hwops::{check_dimension, hw_observable, ChiConvention, WeylIndex};
use crate::linalg::{operator_norm, ComplexMatrix, ComplexScalar};
use crate::maps::{hw_map, is_completely_positive, is_unital, pair_map, SandwichMap, Superoperator, WeightVector};

/// Largest imaginary part tolerated in a transfer-matrix entry.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Slack for the flags derived from the block decomposition.
pub const BLOCK_TOLERANCE: f64 = 1e-10;

/// Slack on the positivity gate so boundary cases register as holding.
pub const GATE_TOLERANCE: f64 = 1e-12;

/// Orthonormal Hermitian operator basis `Γ_0 = I/√d`, `Γ_i = Q_i/√d`.
#[derive(Debug, Clone)]
pub struct HWBasis {
    d: usize,
    chi: ChiConvention,
    operators: Vec<ComplexMatrix>,
}

impl HWBasis {
    /// Fails with `BasisNormalization` if the Gram matrix is off the
    /// identity by more than `1e-10` or a non-identity element has trace.
    pub fn new(d: usize, chi: ChiConvention) -> Result<Self> {
        check_dimension(d)?;
        let norm = 1.0 / (d as f64).sqrt();
        let operators: Vec<ComplexMatrix> =
            WeylIndex::all(d)?.into_iter().map(|i| hw_observable(i, chi).matrix.scale_real(norm)).collect();
        let mut worst: f64 = 0.0;
        for (a, ga) in operators.iter().enumerate() {
            for (b, gb) in operators.iter().enumerate().skip(a) {
                let expected = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((ga.hs_inner(gb)? - ComplexScalar::new(expected, 0.0)).norm());
            }
            if a > 0 {
                worst = worst.max(ga.trace()?.norm());
            }
        }
        if worst > 1e-10 {
            return Err(Error::BasisNormalization(worst));
        }
        Ok(Self { d, chi, operators })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn chi(&self) -> ChiConvention {
        self.chi
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    /// `d²×d²` matrix whose columns are the vectorized basis elements.
    fn change_of_basis(&self) -> ComplexMatrix {
        let n = self.d * self.d;
        let cols: Vec<Vec<ComplexScalar>> = self.operators.iter().map(ComplexMatrix::vectorize).collect();
        ComplexMatrix::from_fn(n, n, |r, c| cols[c][r])
    }
}

/// Real `d²×d²` transfer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RMatrix {
    size: usize,
    entries: Vec<f64>,
}

impl RMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.size + col]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.size).map(<[f64]>::to_vec).collect()
    }

    pub fn matmul(&self, rhs: &RMatrix) -> Result<RMatrix> {
        if self.size != rhs.size {
            return Err(Error::DimensionMismatch { expected: self.size.to_string(), found: rhs.size.to_string() });
        }
        let n = self.size;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                for j in 0..n {
                    entries[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(RMatrix { size: n, entries })
    }

    pub fn max_abs_diff(&self, rhs: &RMatrix) -> f64 {
        if self.size != rhs.size {
            return f64::INFINITY;
        }
        self.entries.iter().zip(&rhs.entries).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Largest magnitude off the diagonal.
    pub fn off_diagonal(&self) -> f64 {
        let n = self.size;
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).abs())
            .fold(0.0, f64::max)
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.size).map(|i| self.get(i, i)).collect()
    }

    pub fn decompose(&self) -> RDecomposition {
        let n = self.size;
        RDecomposition {
            r00: self.get(0, 0),
            t: (1..n).map(|b| self.get(b, 0)).collect(),
            s: (1..n).map(|a| self.get(0, a)).collect(),
            delta: (1..n).map(|b| (1..n).map(|a| self.get(b, a)).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RDecomposition {
    pub r00: f64,
    pub t: Vec<f64>,
    pub s: Vec<f64>,
    pub delta: Vec<Vec<f64>>,
}

impl RDecomposition {
    pub fn reassemble(&self) -> RMatrix {
        let n = self.t.len() + 1;
        let mut entries = vec![0.0; n * n];
        entries[0] = self.r00;
        for i in 1..n {
            entries[i * n] = self.t[i - 1];
            entries[i] = self.s[i - 1];
            for j in 1..n {
                entries[i * n + j] = self.delta[i - 1][j - 1];
            }
        }
        RMatrix { size: n, entries }
    }

    pub fn delta_operator_norm(&self) -> f64 {
        let n = self.delta.len();
        operator_norm(&ComplexMatrix::from_fn(n, n, |i, j| ComplexScalar::new(self.delta[i][j], 0.0)))
    }

    pub fn delta_off_diagonal(&self) -> f64 {
        let n = self.delta.len();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    worst = worst.max(self.delta[i][j].abs());
                }
            }
        }
        worst
    }

    pub fn delta_diagonal(&self) -> Vec<f64> {
        (0..self.delta.len()).map(|i| self.delta[i][i]).collect()
    }
}

fn euclidean(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Transfer matrix of a superoperator, `G^dagger S G` with `G` the
/// change-of-basis matrix.
pub fn r_matrix_of_superoperator(sup: &Superoperator, basis: &HWBasis) -> Result<RMatrix> {
    if sup.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: format!("d={}", basis.dim()),
            found: format!("d={}", sup.dim()),
        });
    }
    let g = basis.change_of_basis();
    let r = g.dagger().matmul(&sup.matrix().matmul(&g)?)?;
    let n = r.rows();
    let mut entries = Vec::with_capacity(n * n);
    for row in 0..n {
        for col in 0..n {
            let z = r[(row, col)];
            if z.im.abs() > IMAGINARY_TOLERANCE {
                return Err(Error::ImaginaryResidue { row, col, residue: z.im.abs() });
            }
            entries.push(z.re);
        }
    }
    Ok(RMatrix { size: n, entries })
}

pub fn r_matrix(map: &SandwichMap, basis: &HWBasis) -> Result<(RMatrix, RDecomposition)> {
    let r = r_matrix_of_superoperator(&map.superoperator(), basis)?;
    let dec = r.decompose();
    Ok((r, dec))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnitalTp {
    pub unital: bool,
    pub trace_preserving: bool,
}

/// Unital iff `t = 0` and `R00 = √(d2/d1)`; trace preserving iff `s = 0`
/// and `R00 = √(d1/d2)`.
pub fn unital_tp_characterize(dec: &RDecomposition, d1: usize, d2: usize) -> UnitalTp {
    let tol = BLOCK_TOLERANCE;
    let ratio = (d2 as f64 / d1 as f64).sqrt();
    let zero = |v: &[f64]| v.iter().all(|x| x.abs() <= tol);
    UnitalTp {
        unital: zero(&dec.t) && (dec.r00 - ratio).abs() <= tol,
        trace_preserving: zero(&dec.s) && (dec.r00 - 1.0 / ratio).abs() <= tol,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityGate {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// `√(d2-1)‖t‖ + √(d1-1)‖s‖ + √((d2-1)(d1-1))‖Δ‖_∞ ≤ R00`. Holding implies
/// the map is positive; failing says nothing.
pub fn positivity_sufficient(dec: &RDecomposition, d1: usize, d2: usize) -> PositivityGate {
    let a = (d2 as f64 - 1.0).sqrt();
    let b = (d1 as f64 - 1.0).sqrt();
    let lhs = a * euclidean(&dec.t) + b * euclidean(&dec.s) + a * b * dec.delta_operator_norm();
    let rhs = dec.r00;
    PositivityGate { lhs, rhs, holds: lhs <= rhs + GATE_TOLERANCE }
}

/// `λ_{k,l,m,n} = 2 cos(2π(kn - lm)/d)`.
pub fn eigenvalue_formula(k: usize, l: usize, m: usize, n: usize, d: usize) -> f64 {
    let phase = (k * n) as f64 - (l * m) as f64;
    2.0 * (2.0 * PI * phase / d as f64).cos()
}

/// Largest `‖Φ̃_{k,l}(Q_{m,n}) - λ Q_{m,n}‖` over all `d⁴` index tuples.
pub fn verify_eigenvalue_formula(d: usize, chi: ChiConvention) -> Result<f64> {
    let indices = WeylIndex::all(d)?;
    let observables: Vec<ComplexMatrix> = indices.iter().map(|&i| hw_observable(i, chi).matrix).collect();
    let mut worst: f64 = 0.0;
    for &kl in &indices {
        let map = pair_map(kl, chi)?;
        for (mn, q) in indices.iter().zip(&observables) {
            let lambda = eigenvalue_formula(kl.k(), kl.l(), mn.k(), mn.l(), d);
            worst = worst.max(map.apply(q)?.max_abs_diff(&q.scale_real(lambda)));
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagonalCheck {
    pub off_diagonal: f64,
    pub formula_deviation: f64,
}

/// For odd `d` and `p` symmetric under negation the transfer matrix of the
/// H.W. map is diagonal with entry `p_{0,0} + Σ_pairs p_{k,l} λ_{k,l,m,n}`
/// at `Γ_{m,n}`.
pub fn diagonal_r_check(p: &WeightVector, chi: ChiConvention) -> Result<DiagonalCheck> {
    let d = p.dim();
    if d.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("diagonal transfer matrix needs odd d, got {d}")));
    }
    let asym = p.negation_asymmetry();
    if asym > BLOCK_TOLERANCE {
        return Err(Error::InvalidWeights(format!("weights are not negation-symmetric (asymmetry {asym:e})")));
    }
    let basis = HWBasis::new(d, chi)?;
    let (r, _) = r_matrix(&hw_map(p, chi)?, &basis)?;
    let origin = WeylIndex::identity(d)?;
    let diag = r.diagonal();
    let mut worst: f64 = 0.0;
    for (pos, mn) in WeylIndex::all(d)?.into_iter().enumerate() {
        // Summing over all non-identity indices counts each pair twice.
        let pairs: f64 = WeylIndex::non_identity(d)?
            .into_iter()
            .map(|kl| p.get(kl) * eigenvalue_formula(kl.k(), kl.l(), mn.k(), mn.l(), d))
            .sum();
        worst = worst.max((diag[pos] - (p.get(origin) + 0.5 * pairs)).abs());
    }
    Ok(DiagonalCheck { off_diagonal: r.off_diagonal(), formula_deviation: worst })
}

/// `max_ij ‖Λ(E_ij) - ½(Tr(E_ij) I - E_ij)‖`.
pub fn reduction_map_deviation(map: &SandwichMap) -> f64 {
    let d = map.dim();
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let unit = ComplexMatrix::unit(d, i, j);
            let trace = if i == j { 1.0 } else { 0.0 };
            let expected = (&ComplexMatrix::identity(d).scale_real(trace) - &unit).scale_real(0.5);
            worst = worst.max(map.apply_unit(i, j).max_abs_diff(&expected));
        }
    }
    worst
}

/// Qutrit weights `p_0..p_8` for `Q_0 = Q_{0,0}, Q_1 = Q_{0,1}, …,
/// Q_8 = Q_{2,2}`. The negation pairs are `(1,2)`, `(3,6)`, `(4,8)`,
/// `(5,7)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseStudyWeights {
    pub p: [f64; 9],
}

impl CaseStudyWeights {
    pub fn new(p: [f64; 9]) -> Result<Self> {
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidWeights("case-study weights must be finite".into()));
        }
        Ok(Self { p })
    }

    /// Symmetric weights from `p_0` and the pair representatives
    /// `p_1, p_3, p_4, p_5`.
    pub fn symmetric(p0: f64, p1: f64, p3: f64, p4: f64, p5: f64) -> Self {
        Self { p: [p0, p1, p1, p3, p4, p5, p3, p5, p4] }
    }

    /// Symmetric unital weights whose `Δ` diagonal is `(λ1, λ2, λ3, λ4)`.
    pub fn from_lambdas(lambdas: [f64; 4]) -> Self {
        let total = (4.0 - lambdas.iter().sum::<f64>()) / 9.0;
        let rep = lambdas.map(|l| (l - 1.0) / 3.0 + total);
        Self::symmetric(1.0 - 2.0 * total, rep[0], rep[1], rep[2], rep[3])
    }

    pub fn reduction() -> Self {
        let mut p = [1.0 / 6.0; 9];
        p[0] = -1.0 / 3.0;
        Self { p }
    }

    pub fn weight_vector(&self) -> WeightVector {
        WeightVector::new(3, self.p.to_vec()).expect("nine finite weights")
    }

    pub fn representatives(&self) -> [f64; 4] {
        [self.p[1], self.p[3], self.p[4], self.p[5]]
    }

    pub fn is_symmetric(&self) -> bool {
        self.weight_vector().negation_asymmetry() <= BLOCK_TOLERANCE
    }

    /// `p_1 = p_2, p_3 = p_6, p_4 = p_8, p_5 = p_7` and
    /// `p_0 = 1 - 2(p_1 + p_3 + p_4 + p_5)`.
    pub fn unital_condition(&self) -> bool {
        let [p1, p3, p4, p5] = self.representatives();
        self.is_symmetric() && (self.p[0] - (1.0 - 2.0 * (p1 + p3 + p4 + p5))).abs() <= BLOCK_TOLERANCE
    }

    /// `p_0, p_1, p_3, p_4, p_5 ≥ 0`, stated for symmetric weights.
    pub fn cp_condition(&self) -> bool {
        self.p[0] >= 0.0 && self.representatives().iter().all(|&x| x >= 0.0)
    }

    /// `λ1 = 1 - 3(p3+p4+p5)`, `λ2 = 1 - 3(p1+p4+p5)`,
    /// `λ3 = 1 - 3(p1+p3+p5)`, `λ4 = 1 - 3(p1+p3+p4)`.
    pub fn lambdas(&self) -> [f64; 4] {
        let rep = self.representatives();
        let total: f64 = rep.iter().sum();
        rep.map(|x| 1.0 - 3.0 * (total - x))
    }

    /// The `Δ` diagonal in basis order `Q_1..Q_8`.
    pub fn expected_delta_diagonal(&self) -> [f64; 8] {
        let [l1, l2, l3, l4] = self.lambdas();
        [l1, l1, l2, l3, l4, l2, l4, l3]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseStudyReport {
    pub weights: Vec<f64>,
    pub unital: bool,
    pub cp: bool,
    pub delta_diagonal: Vec<f64>,
    pub gate: PositivityGate,
    pub two_positive: Option<bool>,
    #[serde(skip)]
    pub unital_condition: bool,
    #[serde(skip)]
    pub cp_condition: bool,
    #[serde(skip)]
    pub min_choi_eigenvalue: f64,
    #[serde(skip)]
    pub delta_off_diagonal: f64,
    /// Distance from the `λ` formulas; `None` without the symmetry hypothesis.
    #[serde(skip)]
    pub delta_formula_deviation: Option<f64>,
    #[serde(skip)]
    pub decomposition: RDecomposition,
}

/// Two-positive check: when the gate holds and all `λ` share a sign, at
/// least two of `p_1, p_3, p_4, p_5` must exceed `1e-12`. `None` when the
/// hypotheses are not met.
pub fn two_positive_verdict(w: &CaseStudyWeights, gate: &PositivityGate) -> Option<bool> {
    let lambdas = w.lambdas();
    let same_sign = lambdas.iter().all(|&l| l >= 0.0) || lambdas.iter().all(|&l| l <= 0.0);
    if !(w.unital_condition() && gate.holds && same_sign) {
        return None;
    }
    Some(w.representatives().iter().filter(|&&x| x > 1e-12).count() >= 2)
}

pub fn d3_case_study(w: &CaseStudyWeights, chi: ChiConvention) -> Result<CaseStudyReport> {
    let map = hw_map(&w.weight_vector(), chi)?;
    let basis = HWBasis::new(3, chi)?;
    let (_, dec) = r_matrix(&map, &basis)?;
    let cp = is_completely_positive(&map)?;
    let gate = positivity_sufficient(&dec, 3, 3);
    let delta_diagonal = dec.delta_diagonal();
    let delta_formula_deviation = w.is_symmetric().then(|| {
        delta_diagonal.iter().zip(w.expected_delta_diagonal()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    });
    Ok(CaseStudyReport {
        weights: w.p.to_vec(),
        unital: is_unital(&map) <= BLOCK_TOLERANCE,
        cp: cp.completely_positive,
        delta_diagonal,
        gate,
        two_positive: two_positive_verdict(w, &gate),
        unital_condition: w.unital_condition(),
        cp_condition: w.cp_condition(),
        min_choi_eigenvalue: cp.min_eigenvalue,
        delta_off_diagonal: dec.delta_off_diagonal(),
        delta_formula_deviation,
        decomposition: dec,
    })
}
