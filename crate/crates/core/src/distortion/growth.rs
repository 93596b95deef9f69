//! Polynomial-versus-exponential classification of ball growth.

use serde::{Deserialize, Serialize};

use super::BallTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthVerdict {
    Subexponential,
    Exponential,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub ball_sizes: Vec<usize>,
    /// Local log-log slope log(|B(r)|/|B(r−1)|)/log(r/(r−1)).
    pub local_exponents: Vec<f64>,
    /// Least-squares slope of log|B(r)| against log r over [R/2, R].
    pub fitted_exponent: f64,
    /// |B(R)|/|B(R−1)|.
    pub last_ratio: f64,
    pub verdict: GrowthVerdict,
}

/// Smallest radius at which the classifier is trusted.
pub const MIN_GROWTH_RADIUS: u32 = 8;
/// Exponential growth makes the local exponent grow linearly in r;
/// polynomial growth keeps it bounded. Verdict: exponential iff the local
/// exponent at R exceeds this multiple of the one at R/2.
pub const EXPONENT_GROWTH_FACTOR: f64 = 1.5;

fn local_exponent(b: &[usize], r: usize) -> f64 {
    let num = (b[r] as f64 / b[r - 1] as f64).ln();
    let den = (r as f64 / (r - 1) as f64).ln();
    num / den
}

pub fn classify_growth(table: &BallTable) -> GrowthReport {
    let b = &table.ball_sizes;
    let r = table.radius as usize;
    let local_exponents: Vec<f64> = (2..=r).map(|i| local_exponent(b, i)).collect();
    let lo = (r / 2).max(1);
    let pts: Vec<(f64, f64)> = (lo..=r).map(|i| ((i as f64).ln(), (b[i] as f64).ln())).collect();
    let fitted_exponent = if pts.len() >= 2 {
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    } else {
        0.0
    };
    let last_ratio = if r >= 1 { b[r] as f64 / b[r - 1] as f64 } else { 1.0 };
    let verdict = if r >= 4 && local_exponent(b, r) > EXPONENT_GROWTH_FACTOR * local_exponent(b, r / 2) {
        GrowthVerdict::Exponential
    } else {
        GrowthVerdict::Subexponential
    };
    GrowthReport {
        ball_sizes: b.clone(),
        local_exponents,
        fitted_exponent,
        last_ratio,
        verdict,
    }
}
