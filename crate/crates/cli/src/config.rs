use std::path::PathBuf;

use anyhow::{bail, Result};
use hwmap::ChiConvention;

pub const DEFAULT_DIMENSIONS: [usize; 5] = [2, 3, 4, 5, 7];
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const TOLERANCE_ENV: &str = "HWMAP_TOLERANCE";

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub dimensions: Vec<usize>,
    pub tolerance: f64,
    pub chi: ChiConvention,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn new(
        dimensions: Vec<usize>,
        tolerance: f64,
        chi: ChiConvention,
        seed: u64,
        out: Option<PathBuf>,
    ) -> Result<Self> {
        validate_tolerance(tolerance)?;
        if dimensions.is_empty() {
            bail!("no dimensions given");
        }
        if let Some(bad) = dimensions.iter().find(|&&d| d < 2) {
            bail!("dimension must be at least 2, got {bad}");
        }
        Ok(Self { dimensions, tolerance, chi, seed, out })
    }
}

pub fn validate_tolerance(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        bail!("tolerance must be a positive finite number, got {tol}");
    }
    Ok(())
}

/// Flag value if given, then the environment, then the default.
pub fn resolve_tolerance(flag: Option<f64>, env: Option<&str>) -> Result<f64> {
    let tol = match (flag, env) {
        (Some(t), _) => t,
        (None, Some(text)) => match text.trim().parse::<f64>() {
            Ok(t) => t,
            Err(_) => bail!("{TOLERANCE_ENV}={text:?} is not a number"),
        },
        (None, None) => DEFAULT_TOLERANCE,
    };
    validate_tolerance(tol)?;
    Ok(tol)
}
