//! Distortion curves of designated subgroups and their comparison with the
//! log-metric.

use serde::Serialize;

use super::{BallTable, DistortionError, GroupElement, GroupModel, ModelKind};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistortionCurve {
    pub model: String,
    pub subgroup: String,
    pub size_measure: String,
    pub radius: u32,
    /// Distinct `(intrinsic size, ambient length)` pairs, sorted.
    pub rows: Vec<(u64, u32)>,
}

/// The designated subgroup of each model and its intrinsic size; `None`
/// when `g` is outside the subgroup.
pub fn intrinsic_size(model: &GroupModel, g: &GroupElement) -> Option<u64> {
    match (&model.kind, g) {
        (ModelKind::BaumslagSolitar { .. }, GroupElement::Bs { num, exp: 0, shift: 0 }) => Some(num.unsigned_abs() as u64),
        (ModelKind::SolLattice { .. }, GroupElement::Sol { v, shift: 0 }) => {
            Some((v[0].unsigned_abs() + v[1].unsigned_abs()) as u64)
        }
        (ModelKind::Lamplighter { n }, GroupElement::Lamp { lamps, pos: 0 }) => {
            let weight: u64 = lamps.iter().map(|&(_, v)| v.min(n - v) as u64).sum();
            let diam = match (lamps.first(), lamps.last()) {
                (Some(a), Some(b)) => (b.0 - a.0) as u64,
                _ => 0,
            };
            Some(weight + diam)
        }
        (ModelKind::HeisenbergZ, GroupElement::Heis([0, 0, c])) => Some(c.unsigned_abs()),
        (ModelKind::FreeAbelian { .. }, GroupElement::Zk(v)) => Some(v.iter().map(|x| x.unsigned_abs()).sum()),
        _ => None,
    }
}

fn subgroup_description(kind: &ModelKind) -> (&'static str, &'static str) {
    match kind {
        ModelKind::BaumslagSolitar { .. } => ("<a> (integer part of Z[1/n])", "|m| for a^m"),
        ModelKind::SolLattice { .. } => ("Z^2", "l1 norm of v"),
        ModelKind::Lamplighter { .. } => ("finitely supported lamps at position 0", "lamp weight + support diameter"),
        ModelKind::HeisenbergZ => ("center", "|c| for z^c"),
        ModelKind::FreeAbelian { .. } => ("whole group", "l1 norm"),
    }
}

pub fn distortion_curve(model: &GroupModel, table: &BallTable) -> DistortionCurve {
    let mut rows: Vec<(u64, u32)> = table
        .iter()
        .filter_map(|(g, l)| intrinsic_size(model, g).map(|s| (s, l)))
        .collect();
    rows.sort_unstable();
    rows.dedup();
    let (subgroup, measure) = subgroup_description(&model.kind);
    DistortionCurve {
        model: model.spec.clone(),
        subgroup: subgroup.into(),
        size_measure: measure.into(),
        radius: table.radius,
        rows,
    }
}

impl DistortionCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("intrinsic_size,ambient_length\n");
        for (s, l) in &self.rows {
            out.push_str(&format!("{s},{l}\n"));
        }
        out
    }

    /// Largest intrinsic size seen at ambient length ≤ ℓ, for ℓ = 0..=R.
    pub fn envelope(&self) -> Vec<u64> {
        let mut env = vec![0u64; self.radius as usize + 1];
        for &(s, l) in &self.rows {
            env[l as usize] = env[l as usize].max(s);
        }
        for i in 1..env.len() {
            env[i] = env[i].max(env[i - 1]);
        }
        env
    }

    pub fn max_size(&self) -> u64 {
        self.rows.iter().map(|r| r.0).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogMetricFit {
    /// Largest c with c·log₂(1+s) ≤ ℓ on rows with s > 0.
    pub c_low: f64,
    /// Smallest c with ℓ ≤ c·log₂(1+s) + c on every row.
    pub c_high: f64,
    /// Doubling rate of the size envelope over the upper half of the radius:
    /// (log₂(1+E(R)) − log₂(1+E(R/2))) / (R − R/2).
    pub upper_rate: f64,
    /// Same rate over [R/4, R/2].
    pub lower_rate: f64,
    pub log_equivalent: bool,
}

/// Minimal envelope doubling rate (doublings per generator step) for a
/// log-equivalent verdict.
pub const MIN_DOUBLING_RATE: f64 = 0.25;
/// The rate must not decay faster than this factor between the two halves.
pub const RATE_DECAY_TOLERANCE: f64 = 0.75;

fn envelope_rate(env: &[u64], from: usize, to: usize) -> f64 {
    if to <= from {
        return 0.0;
    }
    let g = |i: usize| ((1 + env[i]) as f64).log2();
    (g(to) - g(from)) / (to - from) as f64
}

pub fn log_metric_compare(curve: &DistortionCurve) -> Result<LogMetricFit, DistortionError> {
    let positive: Vec<&(u64, u32)> = curve.rows.iter().filter(|r| r.0 > 0).collect();
    if positive.is_empty() {
        return Err(DistortionError::EmptyCurve);
    }
    let log = |s: u64| ((1 + s) as f64).log2();
    let c_low = positive
        .iter()
        .map(|&&(s, l)| l as f64 / log(s))
        .fold(f64::INFINITY, f64::min);
    let c_high = curve
        .rows
        .iter()
        .map(|&(s, l)| l as f64 / (log(s) + 1.0))
        .fold(0.0, f64::max);
    let env = curve.envelope();
    let r = curve.radius as usize;
    let upper_rate = envelope_rate(&env, r / 2, r);
    let lower_rate = envelope_rate(&env, r / 4, r / 2);
    let log_equivalent = upper_rate >= MIN_DOUBLING_RATE && upper_rate >= RATE_DECAY_TOLERANCE * lower_rate;
    Ok(LogMetricFit {
        c_low,
        c_high,
        upper_rate,
        lower_rate,
        log_equivalent,
    })
}
