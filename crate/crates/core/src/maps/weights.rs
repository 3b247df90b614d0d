use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hwops::{check_dimension, ChiConvention, WeylIndex};

/// Real weights `p_{k,l}` indexed row-major by `WeylIndex`. Entries may be
/// negative.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    d: usize,
    values: Vec<f64>,
}

impl WeightVector {
    pub fn new(d: usize, values: Vec<f64>) -> Result<Self> {
        check_dimension(d)?;
        if values.len() != d * d {
            return Err(Error::InvalidWeights(format!("expected {} weights for d={d}, got {}", d * d, values.len())));
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidWeights("weights must be finite".into()));
        }
        Ok(Self { d, values })
    }

    pub fn zeros(d: usize) -> Result<Self> {
        Self::new(d, vec![0.0; d * d])
    }

    /// All weight on a single index.
    pub fn delta(idx: WeylIndex) -> Self {
        let d = idx.dim();
        let mut values = vec![0.0; d * d];
        values[idx.flat()] = 1.0;
        Self { d, values }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, idx: WeylIndex) -> f64 {
        self.values[idx.flat()]
    }

    pub fn set(&mut self, idx: WeylIndex, value: f64) {
        self.values[idx.flat()] = value;
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn is_probability(&self, tol: f64) -> bool {
        self.values.iter().all(|&x| x >= 0.0) && (self.sum() - 1.0).abs() <= tol
    }

    /// Largest `|p_{k,l} - p_{-k,-l}|`.
    pub fn negation_asymmetry(&self) -> f64 {
        WeylIndex::all(self.d)
            .expect("valid dimension")
            .into_iter()
            .map(|i| (self.get(i) - self.get(i.negated())).abs())
            .fold(0.0, f64::max)
    }

    /// Parses the JSON weight-file format
    /// `{"d": int, "chi": "+"|"-", "weights": [[k, l, value], ...]}`.
    /// Missing indices default to zero and `chi` defaults to `+`.
    pub fn from_json(text: &str) -> Result<(Self, ChiConvention)> {
        let file: WeightFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidWeights(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        file.into_weights()
    }

    pub fn to_json(&self, chi: ChiConvention) -> String {
        let weights = WeylIndex::all(self.d)
            .expect("valid dimension")
            .into_iter()
            .filter(|&i| self.get(i) != 0.0)
            .map(|i| (i.k() as i64, i.l() as i64, self.get(i)))
            .collect();
        let file = WeightFile { d: self.d as i64, chi, weights };
        serde_json::to_string_pretty(&file).expect("weight file serializes")
    }
}

/// On-disk layout of a weight file.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightFile {
    pub d: i64,
    #[serde(default)]
    pub chi: ChiConvention,
    pub weights: Vec<(i64, i64, f64)>,
}

impl WeightFile {
    pub fn into_weights(self) -> Result<(WeightVector, ChiConvention)> {
        if self.d < 2 {
            return Err(Error::InvalidWeights(format!("field \"d\": dimension must be at least 2, got {}", self.d)));
        }
        let d = self.d as usize;
        let mut values = vec![0.0; d * d];
        let mut seen = vec![false; d * d];
        for (pos, &(k, l, value)) in self.weights.iter().enumerate() {
            let range = 0..self.d;
            if !range.contains(&k) || !range.contains(&l) {
                return Err(Error::InvalidWeights(format!(
                    "field \"weights[{pos}]\": index ({k}, {l}) out of range for d={d}"
                )));
            }
            if !value.is_finite() {
                return Err(Error::InvalidWeights(format!("field \"weights[{pos}]\": value must be finite")));
            }
            let flat = k as usize * d + l as usize;
            if seen[flat] {
                return Err(Error::InvalidWeights(format!("field \"weights[{pos}]\": duplicate index ({k}, {l})")));
            }
            seen[flat] = true;
            values[flat] = value;
        }
        Ok((WeightVector::new(d, values)?, self.chi))
    }
}
