//! Finite metric spaces: (quasi-)ultrametric checks, log-metrics, fibered
//! maps with metrically parallel fibers, ultrametric ball partitions, the
//! fiberwise refinement construction and minimal-multiplicity covers.

mod cover;
mod instances;
mod refine;

pub use cover::{dimension_at_scale, min_multiplicity_cover, MAX_EXACT_COVER_POINTS};
pub use instances::{random_fibered_instance, shift_quotient_example, FiberedInstance, QuotientExample};
pub use refine::{
    burillo_refinement, refine_level, subdominant_ultrametric, AccessLog, DistanceSource, LevelReport,
    RefinementReport,
};

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{fmt_rational, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoveringError {
    #[error("malformed distance grid: {0}")]
    Malformed(String),
    #[error("triangle inequality fails on ({}, {}, {}): {detail}", triple[0], triple[1], triple[2])]
    MetricViolation { triple: [String; 3], detail: String },
    #[error("not ultrametric on ({}, {}, {})", triple[0], triple[1], triple[2])]
    NotUltrametric { triple: [String; 3] },
    #[error("hypothesis {hypothesis} fails: {witness}")]
    HypothesisFailure { hypothesis: String, witness: String },
    #[error("point {0} is not covered")]
    NotACovering(String),
    #[error("exact search supports at most {budget} points, got {points}")]
    BudgetExceeded { points: usize, budget: usize },
}

/// Labelled points with a symmetric rational distance grid (zero diagonal,
/// positive off the diagonal). The triangle inequality is checked by
/// [`check_space`] and by every operation that needs it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<Q>>,
}

impl FiniteMetricSpace {
    pub fn new(labels: Vec<String>, dist: Vec<Vec<Q>>) -> Result<Self, CoveringError> {
        let n = labels.len();
        if dist.len() != n || dist.iter().any(|r| r.len() != n) {
            return Err(CoveringError::Malformed(format!("expected a {n}×{n} grid")));
        }
        for i in 0..n {
            if !dist[i][i].is_zero() {
                return Err(CoveringError::Malformed(format!("d({0},{0}) ≠ 0", labels[i])));
            }
            for j in 0..i {
                if dist[i][j] != dist[j][i] {
                    return Err(CoveringError::Malformed(format!("d({},{}) not symmetric", labels[i], labels[j])));
                }
                if !dist[i][j].is_positive() {
                    return Err(CoveringError::Malformed(format!(
                        "d({},{}) must be positive for distinct points",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(FiniteMetricSpace { labels, dist })
    }

    /// Builds from a distance function on `0..n`, labelling points by index.
    pub fn from_fn(n: usize, d: impl Fn(usize, usize) -> Q) -> Result<Self, CoveringError> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let dist = (0..n).map(|i| (0..n).map(|j| if i == j { Q::zero() } else { d(i, j) }).collect()).collect();
        Self::new(labels, dist)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn d(&self, i: usize, j: usize) -> &Q {
        &self.dist[i][j]
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.dist
    }

    pub fn diameter_of(&self, set: &[usize]) -> Q {
        let mut m = Q::zero();
        for (a, &i) in set.iter().enumerate() {
            for &j in &set[a + 1..] {
                if self.dist[i][j] > m {
                    m = self.dist[i][j].clone();
                }
            }
        }
        m
    }

    pub fn subspace(&self, points: &[usize]) -> FiniteMetricSpace {
        FiniteMetricSpace {
            labels: points.iter().map(|&i| self.labels[i].clone()).collect(),
            dist: points.iter().map(|&i| points.iter().map(|&j| self.dist[i][j].clone()).collect()).collect(),
        }
    }

    fn triple(&self, i: usize, j: usize, k: usize) -> [String; 3] {
        [self.labels[i].clone(), self.labels[j].clone(), self.labels[k].clone()]
    }

    pub(crate) fn require_metric(&self) -> Result<(), CoveringError> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.dist[i][k] > &self.dist[i][j] + &self.dist[j][k] {
                        return Err(CoveringError::MetricViolation {
                            triple: self.triple(i, j, k),
                            detail: format!(
                                "{} > {} + {}",
                                fmt_rational(&self.dist[i][k]),
                                fmt_rational(&self.dist[i][j]),
                                fmt_rational(&self.dist[j][k])
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// First triple with d(x,z) > max(d(x,y), d(y,z)).
    pub(crate) fn ultrametric_witness(&self) -> Option<[usize; 3]> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.dist[i][k] > self.dist[i][j].clone().max(self.dist[j][k].clone()) {
                        return Some([i, j, k]);
                    }
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceCheck {
    pub metric_ok: bool,
    pub ultrametric: bool,
    pub ultrametric_witness: Option<[String; 3]>,
    /// Smallest C with d(x,z) ≤ max(d(x,y), d(y,z)) + C for all triples.
    #[serde(serialize_with = "crate::exactmath::ser_q")]
    pub minimal_quasi_constant: Q,
    /// Verdict for the requested constant, if one was given.
    pub quasi_ultrametric: Option<bool>,
}

pub fn check_space(space: &FiniteMetricSpace, quasi_constant: Option<&Q>) -> Result<SpaceCheck, CoveringError> {
    space.require_metric()?;
    let n = space.len();
    let mut c = Q::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let excess = space.d(i, k) - space.d(i, j).max(space.d(j, k));
                if excess > c {
                    c = excess;
                }
            }
        }
    }
    let witness = space.ultrametric_witness();
    Ok(SpaceCheck {
        metric_ok: true,
        ultrametric: witness.is_none(),
        ultrametric_witness: witness.map(|[i, j, k]| space.triple(i, j, k)),
        quasi_ultrametric: quasi_constant.map(|q| &c <= q),
        minimal_quasi_constant: c,
    })
}

/// Grid precision of [`log_metric`]: values are multiples of 2⁻¹⁶.
pub const LOG_METRIC_BITS: u32 = 16;

/// `ln(1+d)` rounded up to the dyadic grid 2⁻¹⁶ (with a 1e−9 guard against
/// float error), so the result dominates the true value; 0 stays 0.
pub fn log_distance(d: &Q) -> Q {
    if d.is_zero() {
        return Q::zero();
    }
    let scale = (1u64 << LOG_METRIC_BITS) as f64;
    let v = d.to_f64().expect("finite distance").ln_1p() + 1e-9;
    let k = (v * scale).ceil() as i64;
    Q::new(k.into(), (1i64 << LOG_METRIC_BITS).into())
}

/// The log-metric (X, ln(1+d)). Upward rounding to a common grid keeps the
/// triangle inequality: the true values satisfy it by concavity, and a sum
/// of grid points bounds the rounded-up left-hand side.
pub fn log_metric(space: &FiniteMetricSpace) -> Result<FiniteMetricSpace, CoveringError> {
    space.require_metric()?;
    let dist = space.dist.iter().map(|r| r.iter().map(log_distance).collect()).collect();
    Ok(FiniteMetricSpace {
        labels: space.labels.clone(),
        dist,
    })
}

/// `f : X → Y` with a bilipschitz constant for the fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberedMap {
    pub x: FiniteMetricSpace,
    pub y: FiniteMetricSpace,
    pub f: Vec<usize>,
    pub lambda: Q,
}

impl FiberedMap {
    /// Checks totality, λ ≥ 1 and the 1-Lipschitz normalization.
    pub fn new(x: FiniteMetricSpace, y: FiniteMetricSpace, f: Vec<usize>, lambda: Q) -> Result<Self, CoveringError> {
        if f.len() != x.len() || f.iter().any(|&v| v >= y.len()) {
            return Err(CoveringError::Malformed("fiber assignment must map every point of X into Y".into()));
        }
        if lambda < Q::from_integer(1.into()) {
            return Err(CoveringError::Malformed("lambda must be ≥ 1".into()));
        }
        for i in 0..x.len() {
            for j in 0..i {
                if y.d(f[i], f[j]) > x.d(i, j) {
                    return Err(CoveringError::HypothesisFailure {
                        hypothesis: "1-lipschitz".into(),
                        witness: format!("d_Y(f({0}), f({1})) > d_X({0}, {1})", x.labels[i], x.labels[j]),
                    });
                }
            }
        }
        Ok(FiberedMap { x, y, f, lambda })
    }

    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.x.len()).filter(|&i| self.f[i] == y).collect()
    }

    pub fn preimage(&self, set: &[usize]) -> Vec<usize> {
        (0..self.x.len()).filter(|&i| set.contains(&self.f[i])).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParallelVerdict {
    pub parallel: bool,
    /// max over (x, y) of min over z ∈ f⁻¹(f(y)) of d(x,z) − d(f(x), f(y)).
    #[serde(serialize_with = "crate::exactmath::ser_q")]
    pub slack: Q,
    /// A pair attaining the slack (when positive).
    pub witness: Option<(String, String)>,
}

pub fn parallel_fibers_check(map: &FiberedMap) -> ParallelVerdict {
    let all: Vec<usize> = (0..map.x.len()).collect();
    parallel_fibers_check_from(map, &all)
}

/// The check restricted to source points `sources` (both x and the target
/// fibers' base points), with witnesses z drawn from all of X. Used for
/// truncated spaces, where points near the boundary lose their witnesses.
pub fn parallel_fibers_check_from(map: &FiberedMap, sources: &[usize]) -> ParallelVerdict {
    let fibers: Vec<Vec<usize>> = (0..map.y.len()).map(|y| map.fiber(y)).collect();
    let mut targets: Vec<usize> = sources.iter().map(|&s| map.f[s]).collect();
    targets.sort_unstable();
    targets.dedup();
    let mut slack = Q::zero();
    let mut witness = None;
    for &x in sources {
        for &target in &targets {
            if fibers[target].is_empty() {
                continue;
            }
            let base = map.y.d(map.f[x], target);
            let best = fibers[target]
                .iter()
                .map(|&z| map.x.d(x, z) - base)
                .min()
                .expect("nonempty fiber");
            if best > slack {
                slack = best;
                witness = Some((map.x.labels[x].clone(), map.x.labels[fibers[target][0]].clone()));
            }
        }
    }
    ParallelVerdict {
        parallel: slack.is_zero(),
        slack,
        witness,
    }
}

/// Sets covering a space; mesh and multiplicity are always recomputed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Covering {
    pub sets: Vec<Vec<usize>>,
    #[serde(serialize_with = "crate::exactmath::ser_q")]
    pub mesh: Q,
    pub multiplicity: usize,
}

impl Covering {
    pub fn new(space: &FiniteMetricSpace, mut sets: Vec<Vec<usize>>) -> Result<Self, CoveringError> {
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
        }
        let mult = multiplicity(space.len(), &sets);
        if let Some(p) = (0..space.len()).find(|&p| !sets.iter().any(|s| s.contains(&p))) {
            return Err(CoveringError::NotACovering(space.labels[p].clone()));
        }
        let mesh = sets.iter().map(|s| space.diameter_of(s)).max().unwrap_or_else(Q::zero);
        Ok(Covering {
            sets,
            mesh,
            multiplicity: mult,
        })
    }

    /// Every set lies inside some set of `coarser`.
    pub fn refines(&self, coarser: &[Vec<usize>]) -> bool {
        refines(&self.sets, coarser)
    }
}

pub(crate) fn multiplicity(n: usize, sets: &[Vec<usize>]) -> usize {
    let mut count = vec![0usize; n];
    for s in sets {
        for &p in s {
            count[p] += 1;
        }
    }
    count.into_iter().max().unwrap_or(0)
}

pub(crate) fn refines(finer: &[Vec<usize>], coarser: &[Vec<usize>]) -> bool {
    finer.iter().all(|s| coarser.iter().any(|c| s.iter().all(|p| c.contains(p))))
}

/// Open balls of radius r in an ultrametric space: classes of d < r.
pub fn ultrametric_ball_partition(space: &FiniteMetricSpace, r: &Q) -> Result<Covering, CoveringError> {
    space.require_metric()?;
    if let Some([i, j, k]) = space.ultrametric_witness() {
        return Err(CoveringError::NotUltrametric {
            triple: space.triple(i, j, k),
        });
    }
    Covering::new(space, ball_classes(space.len(), |i, j| space.d(i, j) < r))
}

/// Classes of an equivalence relation given as a predicate, in order of
/// their smallest member.
pub(crate) fn ball_classes(n: usize, same: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut class: Vec<Option<usize>> = vec![None; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class[i].is_some() {
            continue;
        }
        let c = out.len();
        let members: Vec<usize> = (i..n).filter(|&j| class[j].is_none() && same(i, j)).collect();
        for &j in &members {
            class[j] = Some(c);
        }
        out.push(members);
    }
    out
}
