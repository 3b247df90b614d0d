use std::fmt::Write as _;

use serde::Serialize;

use crate::config::SuiteConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Info => "info",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimRecord {
    pub suite: &'static str,
    pub claim: &'static str,
    pub anchor: &'static str,
    pub d: usize,
    pub deviation: Option<f64>,
    pub tolerance: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClaimRecord {
    pub fn measured(
        suite: &'static str,
        claim: &'static str,
        anchor: &'static str,
        d: usize,
        deviation: f64,
        tolerance: f64,
    ) -> Self {
        let status = if deviation <= tolerance { Status::Pass } else { Status::Fail };
        Self { suite, claim, anchor, d, deviation: Some(deviation), tolerance, status, note: None }
    }

    pub fn with_status(mut self, status: Status, note: impl Into<String>) -> Self {
        self.status = status;
        self.note = Some(note.into());
        self
    }

    pub fn skipped(
        suite: &'static str,
        claim: &'static str,
        anchor: &'static str,
        d: usize,
        tolerance: f64,
        why: &str,
    ) -> Self {
        Self {
            suite,
            claim,
            anchor,
            d,
            deviation: None,
            tolerance,
            status: Status::Skipped,
            note: Some(why.to_owned()),
        }
    }

    /// Records an error raised while measuring as a failure.
    pub fn errored(
        suite: &'static str,
        claim: &'static str,
        anchor: &'static str,
        d: usize,
        tolerance: f64,
        err: &hwmap::Error,
    ) -> Self {
        Self { suite, claim, anchor, d, deviation: None, tolerance, status: Status::Fail, note: Some(err.to_string()) }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub info: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub dimensions: Vec<usize>,
    pub tolerance: f64,
    pub chi: &'static str,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: &'static str,
    pub config: ConfigEcho,
    pub summary: Summary,
    pub claims: Vec<ClaimRecord>,
}

impl VerificationReport {
    pub fn new(config: &SuiteConfig, claims: Vec<ClaimRecord>) -> Self {
        let mut summary = Summary { total: claims.len(), ..Summary::default() };
        for c in &claims {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
                Status::Info => summary.info += 1,
            }
        }
        Self {
            suite: "verify",
            config: ConfigEcho {
                dimensions: config.dimensions.clone(),
                tolerance: config.tolerance,
                chi: config.chi.symbol(),
                seed: config.seed,
            },
            summary,
            claims,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<12} {:<30} {:>3} {:>12} {:>10}  {:<8} anchor",
            "suite", "claim", "d", "deviation", "tol", "status"
        );
        for c in &self.claims {
            let dev = c.deviation.map_or_else(|| "-".to_owned(), |x| format!("{x:.3e}"));
            let _ = writeln!(
                out,
                "{:<12} {:<30} {:>3} {:>12} {:>10.1e}  {:<8} {}",
                c.suite,
                c.claim,
                c.d,
                dev,
                c.tolerance,
                c.status.as_str(),
                c.anchor
            );
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "\n{} claims: {} pass, {} fail, {} skipped, {} info",
            s.total, s.pass, s.fail, s.skipped, s.info
        );
        out
    }
}

/// Renders any JSON document as `path  value` lines.
pub fn flatten_table(value: &serde_json::Value) -> String {
    fn walk(prefix: &str, v: &serde_json::Value, out: &mut String) {
        match v {
            serde_json::Value::Object(map) => {
                for (k, child) in map {
                    let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&path, child, out);
                }
            }
            serde_json::Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                for (i, child) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), child, out);
                }
            }
            other => {
                let _ = writeln!(out, "{prefix:<32} {other}");
            }
        }
    }
    let mut out = String::new();
    walk("", value, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use hwmap::ChiConvention;

    fn config() -> SuiteConfig {
        SuiteConfig { dimensions: vec![3], tolerance: 1e-10, chi: ChiConvention::Plus, seed: 0, out: None }
    }

    #[test]
    fn summary_counts_match_records() {
        let claims = vec![
            ClaimRecord::measured("a", "x", "", 3, 0.0, 1e-10),
            ClaimRecord::measured("a", "y", "", 3, 1.0, 1e-10),
            ClaimRecord::skipped("a", "z", "", 3, 1e-10, "prime only"),
            ClaimRecord::measured("a", "w", "", 3, 1.0, 1e-10).with_status(Status::Info, "reported only"),
        ];
        let report = VerificationReport::new(&config(), claims);
        assert_eq!(report.summary, Summary { total: 4, pass: 1, fail: 1, skipped: 1, info: 1 });
        assert!(!report.all_pass());
    }

    #[test]
    fn json_key_order_is_stable() {
        let report = VerificationReport::new(&config(), vec![ClaimRecord::measured("a", "x", "", 3, 0.0, 1e-10)]);
        let json = report.to_json();
        let order = ["\"suite\"", "\"config\"", "\"summary\"", "\"claims\""];
        let pos: Vec<usize> = order.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(report.to_table().contains("1 claims: 1 pass"));
    }

    #[test]
    fn flatten_nested() {
        let v: serde_json::Value = serde_json::from_str(r#"{"a": {"b": 1}, "c": [1, 2], "e": [{"f": true}]}"#).unwrap();
        let table = flatten_table(&v);
        assert!(table.contains("a.b"));
        assert!(table.contains("[1,2]"));
        assert!(table.contains("e[0].f"));
    }
}
