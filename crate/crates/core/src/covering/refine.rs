//! The fiberwise refinement: from coverings U_k of the base with scales
//! r_k, build coverings V_k of the total space with the same multiplicity.

use std::cell::RefCell;
use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use super::{ball_classes, multiplicity, refines, Covering, CoveringError, FiberedMap, FiniteMetricSpace};
use crate::exactmath::{fmt_rational, Q};

/// Distance oracle on `0..len()`.
pub trait DistanceSource {
    fn len(&self) -> usize;
    fn dist(&self, i: usize, j: usize) -> Q;
}

impl DistanceSource for FiniteMetricSpace {
    fn len(&self) -> usize {
        FiniteMetricSpace::len(self)
    }
    fn dist(&self, i: usize, j: usize) -> Q {
        self.d(i, j).clone()
    }
}

/// Records every queried pair (as `(min, max)`).
pub struct AccessLog<'a, D: DistanceSource> {
    inner: &'a D,
    pub accessed: RefCell<BTreeSet<(usize, usize)>>,
}

impl<'a, D: DistanceSource> AccessLog<'a, D> {
    pub fn new(inner: &'a D) -> Self {
        AccessLog {
            inner,
            accessed: RefCell::new(BTreeSet::new()),
        }
    }
}

impl<D: DistanceSource> DistanceSource for AccessLog<'_, D> {
    fn len(&self) -> usize {
        self.inner.len()
    }
    fn dist(&self, i: usize, j: usize) -> Q {
        self.accessed.borrow_mut().insert((i.min(j), i.max(j)));
        self.inner.dist(i, j)
    }
}

/// Subdominant (single-linkage) ultrametric on `points`: the largest
/// ultrametric below d. Returned as a dense grid indexed like `points`.
pub fn subdominant_ultrametric<D: DistanceSource>(d: &D, points: &[usize]) -> Vec<Vec<Q>> {
    let n = points.len();
    let mut u: Vec<Vec<Q>> = (0..n)
        .map(|a| (0..n).map(|b| if a == b { Q::zero() } else { d.dist(points[a], points[b]) }).collect())
        .collect();
    // minimax path closure
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                let via = u[a][k].clone().max(u[k][b].clone());
                if via < u[a][b] {
                    u[a][b] = via;
                }
            }
        }
    }
    u
}

/// One level of the construction. For each base set U_α (with y_α its
/// smallest point): partition the fiber over y_α into subdominant-ultrametric
/// balls of radius 3r, then V_αβ = {x ∈ f⁻¹(U_α) : d(x, B'_αβ) ≤ r}.
///
/// Distances queried: pairs inside the chosen fibers, and pairs (x, b) with
/// f(x) ∈ U_α, b in the fiber over y_α.
pub fn refine_level<D: DistanceSource>(d: &D, f: &[usize], u_sets: &[Vec<usize>], r: &Q) -> Vec<Vec<usize>> {
    let three_r = r * Q::from_integer(3.into());
    let mut out = Vec::new();
    for set in u_sets {
        let Some(&y_alpha) = set.iter().min() else { continue };
        let fiber: Vec<usize> = (0..f.len()).filter(|&i| f[i] == y_alpha).collect();
        let ultra = subdominant_ultrametric(d, &fiber);
        let blocks = ball_classes(fiber.len(), |a, b| ultra[a][b] < three_r);
        let domain: Vec<usize> = (0..f.len()).filter(|&i| set.contains(&f[i])).collect();
        for block in blocks {
            let v: Vec<usize> = domain
                .iter()
                .copied()
                .filter(|&x| block.iter().any(|&b| d.dist(x, fiber[b]) <= *r))
                .collect();
            out.push(v);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    #[serde(serialize_with = "crate::exactmath::ser_q")]
    pub scale: Q,
    pub u_multiplicity: usize,
    pub v_multiplicity: usize,
    #[serde(serialize_with = "crate::exactmath::ser_q")]
    pub v_mesh: Q,
    /// (3λ+2)·r_k, a strict bound.
    #[serde(serialize_with = "crate::exactmath::ser_q")]
    pub mesh_bound: Q,
    pub covers: bool,
    pub multiplicity_ok: bool,
    pub mesh_ok: bool,
    pub refines_previous: bool,
    pub v_sets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinementReport {
    #[serde(serialize_with = "crate::exactmath::ser_q")]
    pub lambda: Q,
    pub levels: Vec<LevelReport>,
}

impl RefinementReport {
    pub fn passed(&self) -> bool {
        self.levels
            .iter()
            .all(|l| l.covers && l.multiplicity_ok && l.mesh_ok && l.refines_previous)
    }
}

fn failure(hypothesis: &str, witness: String) -> CoveringError {
    CoveringError::HypothesisFailure {
        hypothesis: hypothesis.into(),
        witness,
    }
}

/// Checks the hypotheses, then builds and verifies V_k for every level.
pub fn burillo_refinement(map: &FiberedMap, levels: &[(Vec<Vec<usize>>, Q)]) -> Result<RefinementReport, CoveringError> {
    map.x.require_metric()?;
    map.y.require_metric()?;
    let lambda = &map.lambda;
    let factor = lambda * Q::from_integer(3.into()) + Q::from_integer(2.into());

    if let Some(y) = (0..map.y.len()).find(|&y| map.fiber(y).is_empty()) {
        return Err(failure("surjective", format!("empty fiber over {}", map.y.labels()[y])));
    }
    let par = super::parallel_fibers_check(map);
    if !par.parallel {
        let (a, b) = par.witness.unwrap_or_default();
        return Err(failure(
            "parallel_fibers",
            format!("slack {} at ({a}, {b})", fmt_rational(&par.slack)),
        ));
    }
    for y in 0..map.y.len() {
        let fiber = map.fiber(y);
        let u = subdominant_ultrametric(&map.x, &fiber);
        for a in 0..fiber.len() {
            for b in 0..a {
                if map.x.d(fiber[a], fiber[b]) > &(lambda * &u[a][b]) {
                    return Err(failure(
                        "fiber_bilipschitz",
                        format!(
                            "d({}, {}) exceeds λ times the subdominant ultrametric",
                            map.x.labels()[fiber[a]],
                            map.x.labels()[fiber[b]]
                        ),
                    ));
                }
            }
        }
    }
    for (k, (sets, r)) in levels.iter().enumerate() {
        let cov = Covering::new(&map.y, sets.clone()).map_err(|e| failure("base_covering", format!("level {k}: {e}")))?;
        if &cov.mesh > r {
            return Err(failure(
                "base_mesh",
                format!("level {k}: mesh {} > r = {}", fmt_rational(&cov.mesh), fmt_rational(r)),
            ));
        }
        if k > 0 {
            let prev = &levels[k - 1];
            if r * &factor > prev.1 {
                return Err(failure(
                    "scale",
                    format!(
                        "r_{k} = {} > r_{} / (3λ+2) = {}",
                        fmt_rational(r),
                        k - 1,
                        fmt_rational(&(&prev.1 / &factor))
                    ),
                ));
            }
            if !refines(sets, &prev.0) {
                return Err(failure("base_refinement", format!("U_{k} does not refine U_{}", k - 1)));
            }
        }
    }

    let mut reports: Vec<LevelReport> = Vec::new();
    for (k, (sets, r)) in levels.iter().enumerate() {
        let v = refine_level(&map.x, &map.f, sets, r);
        let covers = (0..map.x.len()).all(|p| v.iter().any(|s| s.contains(&p)));
        let v_mult = multiplicity(map.x.len(), &v);
        let u_mult = multiplicity(map.y.len(), sets);
        let mesh = v.iter().map(|s| map.x.diameter_of(s)).max().unwrap_or_else(Q::zero);
        let bound = &factor * r;
        let refines_previous = k == 0 || refines(&v, &reports[k - 1].v_sets);
        reports.push(LevelReport {
            scale: r.clone(),
            u_multiplicity: u_mult,
            v_multiplicity: v_mult,
            mesh_ok: mesh < bound,
            v_mesh: mesh,
            mesh_bound: bound,
            covers,
            multiplicity_ok: v_mult <= u_mult,
            refines_previous,
            v_sets: v,
        });
    }
    Ok(RefinementReport {
        lambda: lambda.clone(),
        levels: reports,
    })
}
