use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::table::summarize;
use super::AnalysisError;

/// Variance floor applied when both samples have zero spread but different
/// means, so the statistic stays finite.
pub const VARIANCE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TTestResult {
    pub t: f64,
    pub df: f64,
    /// Two-sided.
    pub p: f64,
    pub mean_a: f64,
    pub mean_b: f64,
}

impl TTestResult {
    pub fn significant(&self, alpha: f64) -> bool {
        self.p < alpha
    }
}

/// Welch's unequal-variance t-test.
pub fn welch_t_test(a: &[f64], b: &[f64]) -> Result<TTestResult, AnalysisError> {
    if a.len() < 2 || b.len() < 2 {
        return Err(AnalysisError::TooFewSamples {
            a: a.len(),
            b: b.len(),
        });
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(AnalysisError::NonFinite);
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mean_a, sd_a, _) = summarize(a);
    let (mean_b, sd_b, _) = summarize(b);
    let (mut va, mut vb) = (sd_a * sd_a, sd_b * sd_b);

    if va == 0.0 && vb == 0.0 {
        if mean_a == mean_b {
            return Ok(TTestResult {
                t: 0.0,
                df: na + nb - 2.0,
                p: 1.0,
                mean_a,
                mean_b,
            });
        }
        va = VARIANCE_FLOOR;
        vb = VARIANCE_FLOOR;
    }

    let (ea, eb) = (va / na, vb / nb);
    let se2 = ea + eb;
    let t = (mean_a - mean_b) / se2.sqrt();
    let df = se2 * se2 / (ea * ea / (na - 1.0) + eb * eb / (nb - 1.0));
    let dist = StudentsT::new(0.0, 1.0, df).map_err(|e| AnalysisError::Distribution(e.to_string()))?;
    let p = (2.0 * dist.sf(t.abs())).min(1.0);
    Ok(TTestResult { t, df, p, mean_a, mean_b })
}
