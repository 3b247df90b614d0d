//! Analysis commands for user-supplied weights and basis dumps.

use std::path::Path;

use anyhow::{bail, Context, Result};
use hwmap::maps::{hw_map, is_completely_positive, is_trace_preserving, is_unital};
use hwmap::mub::{max_unbiasedness_deviation, mub_bases, overlap_table};
use hwmap::rmatrix::{
    d3_case_study, diagonal_r_check, positivity_sufficient, r_matrix, unital_tp_characterize, CaseStudyReport,
    CaseStudyWeights, DiagonalCheck, HWBasis, PositivityGate, RDecomposition, UnitalTp,
};
use hwmap::{ChiConvention, WeightVector};
use serde::Serialize;

pub fn load_weights(path: &Path, chi_override: Option<ChiConvention>) -> Result<(WeightVector, ChiConvention)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read weight file {}", path.display()))?;
    let (w, chi) =
        WeightVector::from_json(&text).with_context(|| format!("malformed weight file {}", path.display()))?;
    Ok((w, chi_override.unwrap_or(chi)))
}

#[derive(Debug, Serialize)]
pub struct ChannelReport {
    pub d: usize,
    pub chi: &'static str,
    pub weight_sum: f64,
    pub unital: bool,
    pub unital_deviation: f64,
    pub trace_preserving: bool,
    pub trace_deviation: f64,
    pub cp: bool,
    pub min_choi_eigenvalue: f64,
    pub transfer_flags: UnitalTp,
    pub gate: PositivityGate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case_study: Option<CaseStudyReport>,
}

pub fn channel(weights: &WeightVector, chi: ChiConvention, tol: f64) -> Result<ChannelReport> {
    let d = weights.dim();
    let map = hw_map(weights, chi)?;
    let (_, dec) = r_matrix(&map, &HWBasis::new(d, chi)?)?;
    let unital_deviation = is_unital(&map);
    let trace_deviation = is_trace_preserving(&map);
    let cp = is_completely_positive(&map)?;
    let case_study = if d == 3 {
        let p: [f64; 9] = weights.values().try_into().expect("nine weights at d = 3");
        Some(d3_case_study(&CaseStudyWeights::new(p)?, chi)?)
    } else {
        None
    };
    Ok(ChannelReport {
        d,
        chi: chi.symbol(),
        weight_sum: weights.sum(),
        unital: unital_deviation <= tol,
        unital_deviation,
        trace_preserving: trace_deviation <= tol,
        trace_deviation,
        cp: cp.completely_positive,
        min_choi_eigenvalue: cp.min_eigenvalue,
        transfer_flags: unital_tp_characterize(&dec, d, d),
        gate: positivity_sufficient(&dec, d, d),
        case_study,
    })
}

#[derive(Debug, Serialize)]
pub struct BasisDump {
    pub label: usize,
    pub generator: [usize; 2],
    pub eigenvalues: Vec<f64>,
    /// `vectors[r][i] = [re, im]` of component `i` of vector `r`.
    pub vectors: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Serialize)]
pub struct MubReport {
    pub d: usize,
    pub chi: &'static str,
    pub bases: Vec<BasisDump>,
    pub max_unbiasedness_deviation: f64,
    /// `overlaps[a][b][r][s] = |<e^a_r|e^b_s>|^2` for `a < b`, in pair order.
    pub overlaps: Vec<Vec<Vec<f64>>>,
}

pub fn mub(d: usize, chi: ChiConvention) -> Result<MubReport> {
    let bases = mub_bases(d, chi)?;
    let dumps = bases
        .iter()
        .map(|b| BasisDump {
            label: b.label,
            generator: [b.generator.k(), b.generator.l()],
            eigenvalues: b.eigenvalues.clone(),
            vectors: (0..b.dim()).map(|r| b.vector(r).iter().map(|z| [z.re, z.im]).collect()).collect(),
        })
        .collect();
    let mut overlaps = Vec::new();
    for (a, ba) in bases.iter().enumerate() {
        for bb in &bases[a + 1..] {
            overlaps.push(overlap_table(ba, bb));
        }
    }
    Ok(MubReport {
        d,
        chi: chi.symbol(),
        bases: dumps,
        max_unbiasedness_deviation: max_unbiasedness_deviation(&bases),
        overlaps,
    })
}

#[derive(Debug, Serialize)]
pub struct RMatrixReport {
    pub d: usize,
    pub chi: &'static str,
    pub r: Vec<Vec<f64>>,
    pub decomposition: RDecomposition,
    pub flags: UnitalTp,
    pub gate: PositivityGate,
    pub off_diagonal: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagonal_check: Option<DiagonalCheck>,
}

pub fn rmatrix(weights: &WeightVector, chi: ChiConvention, tol: f64) -> Result<RMatrixReport> {
    let d = weights.dim();
    let (r, dec) = r_matrix(&hw_map(weights, chi)?, &HWBasis::new(d, chi)?)?;
    let diagonal_check =
        if d % 2 == 1 && weights.negation_asymmetry() <= tol { Some(diagonal_r_check(weights, chi)?) } else { None };
    Ok(RMatrixReport {
        d,
        chi: chi.symbol(),
        r: r.rows(),
        flags: unital_tp_characterize(&dec, d, d),
        gate: positivity_sufficient(&dec, d, d),
        off_diagonal: r.off_diagonal(),
        decomposition: dec,
        diagonal_check,
    })
}

pub fn case_study(weights: Option<&WeightVector>, chi: ChiConvention) -> Result<CaseStudyReport> {
    let w = match weights {
        None => CaseStudyWeights::reduction(),
        Some(w) if w.dim() == 3 => CaseStudyWeights::new(w.values().try_into().expect("nine weights"))?,
        Some(w) => bail!("the case study is defined for d = 3, weight file has d = {}", w.dim()),
    };
    Ok(d3_case_study(&w, chi)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hwmap::WeylIndex;

    #[test]
    fn reduction_channel_report() {
        let w = CaseStudyWeights::reduction().weight_vector();
        let r = channel(&w, ChiConvention::Plus, 1e-10).unwrap();
        assert!(r.unital && !r.cp && r.trace_preserving);
        assert!((r.gate.lhs - 1.0).abs() < 1e-12 && (r.gate.rhs - 1.0).abs() < 1e-12);
        assert!(r.case_study.is_some());
    }

    #[test]
    fn empty_weights_give_zero_map() {
        let r = channel(&WeightVector::zeros(3).unwrap(), ChiConvention::Plus, 1e-10).unwrap();
        assert!(!r.unital && r.cp);
    }

    #[test]
    fn mub_dump_shape() {
        let r = mub(3, ChiConvention::Plus).unwrap();
        assert_eq!(r.bases.len(), 4);
        assert_eq!(r.bases.iter().map(|b| b.vectors.len()).sum::<usize>(), 12);
        assert!(r.overlaps.iter().flatten().flatten().all(|x| (x - 1.0 / 3.0).abs() < 1e-10));
        assert!(mub(4, ChiConvention::Plus).is_err());
        assert!(mub(2, ChiConvention::Plus).is_err());
    }

    #[test]
    fn identity_rmatrix_dump() {
        let r = rmatrix(&WeightVector::delta(WeylIndex::identity(3).unwrap()), ChiConvention::Plus, 1e-10).unwrap();
        for (i, row) in r.r.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert!((x - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
        assert!(r.flags.unital && r.flags.trace_preserving);
    }

    #[test]
    fn case_study_rejects_other_dimensions() {
        assert!(case_study(Some(&WeightVector::zeros(4).unwrap()), ChiConvention::Plus).is_err());
        assert!(case_study(None, ChiConvention::Plus).unwrap().gate.holds);
    }
}
