//! Test-instance generators: random fibered products over a line, and
//! truncated group quotients from the BFS models.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CoveringError, FiberedMap, FiniteMetricSpace};
use crate::distortion::{build_model, cayley_ball, DistortionError, GroupElement};
use crate::exactmath::Q;

#[derive(Clone, Debug)]
pub struct FiberedInstance {
    pub seed: u64,
    pub map: FiberedMap,
    /// Base coverings with their scales, coarsest first.
    pub levels: Vec<(Vec<Vec<usize>>, Q)>,
}

fn qi(x: i64) -> Q {
    Q::from_integer(x.into())
}

/// Random dendrogram ultrametric on `n` points with merge heights from
/// `heights` (non-decreasing along the merge sequence).
fn dendrogram(rng: &mut ChaCha8Rng, n: usize, heights: &[i64]) -> Vec<Vec<Q>> {
    let mut u = vec![vec![Q::zero(); n]; n];
    let mut clusters: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut hs: Vec<i64> = (1..n).map(|_| *heights.choose(rng).expect("heights")).collect();
    hs.sort_unstable();
    for h in hs {
        let a = rng.gen_range(0..clusters.len());
        let ca = clusters.swap_remove(a);
        let b = rng.gen_range(0..clusters.len());
        for &i in &ca {
            for &j in &clusters[b] {
                u[i][j] = qi(h);
                u[j][i] = qi(h);
            }
        }
        clusters[b].extend(ca);
    }
    u
}

/// Shortest-path closure (turns a λ-distorted ultrametric into a metric
/// still sandwiched between u and λu).
fn metric_closure(d: &mut [Vec<Q>]) {
    let n = d.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &d[i][k] + &d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
}

/// Greedy windows of diameter ≤ r inside each parent set, consecutive
/// windows sharing an endpoint at random (to create overlaps).
fn windows(rng: &mut ChaCha8Rng, pos: &[i64], parents: &[Vec<usize>], r: i64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for p in parents {
        let mut s = 0;
        loop {
            let mut e = s;
            while e + 1 < p.len() && pos[p[e + 1]] - pos[p[s]] <= r {
                e += 1;
            }
            let w = p[s..=e].to_vec();
            if !out.contains(&w) {
                out.push(w);
            }
            if e + 1 == p.len() {
                break;
            }
            s = if e > s && rng.gen_bool(0.5) { e } else { e + 1 };
        }
    }
    out
}

/// X = Y × B with the max metric, f the projection. Y is a random subset
/// of a line, B a dendrogram ultrametric (λ = 1) or a λ-distortion of one
/// (λ = 2). Three base levels at scales q², q, 1 with q = 3λ+2.
pub fn random_fibered_instance(seed: u64, max_points: usize) -> FiberedInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambda: i64 = rng.gen_range(1..=2);
    let q = 3 * lambda + 2;
    let m = rng.gen_range(2..=6usize.min(max_points.max(2)));
    let b = rng.gen_range(1..=(max_points / m).clamp(1, 8));
    let gaps = [1, 2, q, q * q, q * q + q];
    let mut pos = vec![0i64];
    for _ in 1..m {
        pos.push(pos.last().unwrap() + gaps.choose(&mut rng).unwrap());
    }
    let y = FiniteMetricSpace::from_fn(m, |i, j| qi((pos[i] - pos[j]).abs())).expect("line metric");

    let mut d_b = dendrogram(&mut rng, b, &[1, 2, q, 2 * q, q * q, 3 * q * q]);
    if lambda == 2 {
        for i in 0..b {
            for j in 0..i {
                let c = [Q::new(1.into(), 1.into()), Q::new(3.into(), 2.into()), qi(2)]
                    .choose(&mut rng)
                    .unwrap()
                    .clone();
                d_b[i][j] = &d_b[i][j] * &c;
                d_b[j][i] = d_b[i][j].clone();
            }
        }
        metric_closure(&mut d_b);
    }

    let n = m * b;
    let labels = (0..n).map(|i| format!("y{}b{}", i / b, i % b)).collect();
    let dist = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| y.d(i / b, j / b).clone().max(d_b[i % b][j % b].clone()))
                .collect()
        })
        .collect();
    let x = FiniteMetricSpace::new(labels, dist).expect("product metric");
    let f = (0..n).map(|i| i / b).collect();
    let map = FiberedMap::new(x, y, f, qi(lambda)).expect("projection is 1-Lipschitz");

    let mut levels = Vec::new();
    let mut parents = vec![(0..m).collect::<Vec<_>>()];
    for r in [q * q, q, 1] {
        let sets = windows(&mut rng, &pos, &parents, r);
        levels.push((sets.clone(), qi(r)));
        parents = sets;
    }
    FiberedInstance { seed, map, levels }
}

fn shift(g: &GroupElement) -> Option<i64> {
    match g {
        GroupElement::Bs { shift, .. } | GroupElement::Sol { shift, .. } => Some(*shift),
        GroupElement::Lamp { pos, .. } => Some(*pos),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct QuotientExample {
    pub map: FiberedMap,
    /// Points of the inner ball of radius ⌊R/2⌋.
    pub interior: Vec<usize>,
}

/// Ball of radius R in a model with a Z quotient (bs, sol, lamp), mapped to
/// its shift coordinate. Distances are exact word distances |g⁻¹h| read
/// from the ball of radius 2R.
pub fn shift_quotient_example(spec: &str, radius: u32) -> Result<QuotientExample, DistortionError> {
    let model = build_model(spec)?;
    let small = cayley_ball(&model, radius)?;
    let big = cayley_ball(&model, 2 * radius)?;
    let pts: Vec<&GroupElement> = small.elements.iter().collect();
    let shifts: Vec<i64> = pts
        .iter()
        .map(|g| shift(g).ok_or_else(|| DistortionError::Parse(format!("{spec} has no shift quotient"))))
        .collect::<Result<_, _>>()?;
    let mut ys: BTreeMap<i64, usize> = BTreeMap::new();
    for &s in &shifts {
        let k = ys.len();
        ys.entry(s).or_insert(k);
    }
    let ylist: Vec<i64> = {
        let mut v: Vec<(usize, i64)> = ys.iter().map(|(&s, &i)| (i, s)).collect();
        v.sort_unstable();
        v.into_iter().map(|(_, s)| s).collect()
    };
    let n = pts.len();
    let inv: Vec<GroupElement> = pts.iter().map(|g| model.inverse(g)).collect();
    let mut dist = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for j in 0..i {
            let l = big
                .length_of(&model.mul(&inv[i], pts[j]))
                .expect("distance within the doubled ball");
            dist[i][j] = qi(l as i64);
            dist[j][i] = qi(l as i64);
        }
    }
    let labels = pts.iter().map(|g| g.to_string()).collect();
    let x = FiniteMetricSpace::new(labels, dist).expect("word metric");
    let y = FiniteMetricSpace::new(
        ylist.iter().map(|s| s.to_string()).collect(),
        ylist.iter().map(|a| ylist.iter().map(|b| qi((a - b).abs())).collect()).collect(),
    )
    .expect("line metric");
    let f = shifts.iter().map(|s| ys[s]).collect();
    let map = FiberedMap::new(x, y, f, qi(1)).map_err(|e: CoveringError| DistortionError::Parse(e.to_string()))?;
    let interior = (0..n).filter(|&i| small.lengths[i] <= radius / 2).collect();
    Ok(QuotientExample { map, interior })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::{burillo_refinement, parallel_fibers_check, parallel_fibers_check_from};
    use crate::exactmath::q;

    #[test]
    fn bs_quotient_slack_on_interior() {
        let e = shift_quotient_example("bs:1:2", 6).unwrap();
        assert_eq!(e.map.x.len(), 375);
        let inner = parallel_fibers_check_from(&e.map, &e.interior);
        assert!(inner.slack <= q(1), "slack {}", inner.slack);
        // boundary points lose their witnesses in the truncation
        assert!(parallel_fibers_check(&e.map).slack > q(1));
    }

    #[test]
    fn random_instances_are_valid() {
        for seed in 0..10 {
            let inst = random_fibered_instance(seed, 48);
            assert!(inst.map.x.len() <= 48);
            assert!(burillo_refinement(&inst.map, &inst.levels).unwrap().passed(), "seed {seed}");
        }
    }
}
