//! The Cartan section of `G → G/N` and the probe of its distortion
//! estimate.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bch::{bch, bch_symbolic, MPoly};
use super::radical::exponential_radical;
use super::ExpradError;
use crate::exactmath::{to_f64, RationalMatrix, Q};
use crate::liealg::{
    cartan_subalgebra, is_nilpotent, is_solvable, nilpotency_class, quotient_algebra, series, LieAlgebra, QuotientMap,
    Subspace,
};

/// `n = R_exp`, `h` a Cartan subalgebra, `w = h ∩ n`, `v` a complement of
/// `w` in `h` (so `v ⊕ w = h` and `v ⊕ n = g`). In exponential
/// coordinates on `H = v ⊕ w`, `(x,0)·(y,0) = (x·y, P(x,y))`.
#[derive(Clone, Debug)]
pub struct SectionData {
    pub n: Subspace,
    pub h: Subspace,
    pub v: Subspace,
    pub w: Subspace,
    /// The Cartan subalgebra as an algebra in the basis `v_1..v_a, w_1..w_b`.
    pub h_algebra: LieAlgebra,
    /// `P` as `w`-coordinates, in variables `x_1..x_a, y_1..y_a`.
    pub bch_polynomial: Vec<MPoly>,
    /// Group law of `H/W` in `v`-coordinates.
    pub quotient_law: Vec<MPoly>,
    pub degree_bound: usize,
    pub quotient: LieAlgebra,
    pub quotient_map: QuotientMap,
}

impl SectionData {
    pub fn v_dim(&self) -> usize {
        self.v.dim()
    }

    pub fn is_split(&self) -> bool {
        self.bch_polynomial.iter().all(MPoly::is_zero)
    }

    /// `P(x, y)` at a rational point.
    pub fn eval_p(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let pt: Vec<Q> = x.iter().chain(y).cloned().collect();
        self.bch_polynomial.iter().map(|p| p.eval(&pt)).collect()
    }

    /// Product in `H/W ≅ v`.
    pub fn quotient_product(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let pt: Vec<Q> = x.iter().chain(y).cloned().collect();
        self.quotient_law.iter().map(|p| p.eval(&pt)).collect()
    }

    /// Variable names `x_<basis>` / `y_<basis>` for rendering `P`.
    pub fn variable_names(&self) -> Vec<String> {
        let names: Vec<String> = self.h_algebra.basis_names()[..self.v_dim()].to_vec();
        names
            .iter()
            .map(|n| format!("x[{n}]"))
            .chain(names.iter().map(|n| format!("y[{n}]")))
            .collect()
    }
}

/// Coordinates of `v` in an arbitrary (independent) list of vectors.
fn coordinates_in(basis: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let n = v.len();
    let k = basis.len();
    let mut cols = basis.to_vec();
    cols.push(v.to_vec());
    let m = RationalMatrix::from_columns(&cols, n);
    let ker = m.nullspace();
    // exactly one kernel vector with nonzero last entry when v ∈ span
    let sol = ker.into_iter().find(|c| !c[k].is_zero())?;
    let s = -sol[k].clone();
    Some(sol[..k].iter().map(|c| c / &s).collect())
}

pub fn section_data(g: &LieAlgebra) -> Result<SectionData, ExpradError> {
    if !is_solvable(g) {
        return Err(crate::liealg::LieError::NotSolvable.into());
    }
    let rep = exponential_radical(g)?;
    if !is_nilpotent(&rep.quotient) {
        return Err(ExpradError::NotWeaklyTriangulable);
    }
    let n = rep.radical.clone();
    if rep.minimality_certified && n != series(g).stable_term {
        return Err(ExpradError::Invariant("exponential radical differs from the stable term".into()));
    }
    let data = cartan_subalgebra(g)?;
    let h = data.cartan;
    let w = h.intersection(&n);
    let v = w.complement_within(&h);
    if !h.sum(&n).is_full() || v.sum(&w) != h || !v.intersection(&w).is_zero() {
        return Err(ExpradError::Invariant("Cartan decomposition h + n = g, v ⊕ w = h fails".into()));
    }
    if !v.sum(&n).is_full() || !v.intersection(&n).is_zero() {
        return Err(ExpradError::Invariant("v is not a complement of n".into()));
    }
    let basis: Vec<Vec<Q>> = v.basis().iter().chain(w.basis()).cloned().collect();
    let names: Vec<String> = basis.iter().map(|b| g.describe(b)).collect();
    let names = names
        .into_iter()
        .map(|s| if s.contains(' ') { format!("({s})") } else { s })
        .collect();
    let h_algebra = LieAlgebra::from_table(format!("{}_cartan", g.name()), names, |i, j| {
        coordinates_in(&basis, &g.bracket(&basis[i], &basis[j])).expect("h is a subalgebra")
    })?;
    let class = nilpotency_class(&h_algebra)
        .ok_or_else(|| ExpradError::Invariant("Cartan subalgebra is not nilpotent".into()))?
        .max(1);
    let a = v.dim();
    let idx: Vec<usize> = (0..a).collect();
    let z = bch_symbolic(&h_algebra, class, &idx);
    let quotient_law = z[..a].to_vec();
    let p = z[a..].to_vec();
    for comp in &p {
        for (e, _) in comp.terms() {
            let has_x = e[..a].iter().any(|&k| k > 0);
            let has_y = e[a..].iter().any(|&k| k > 0);
            if !has_x || !has_y {
                return Err(ExpradError::Invariant("P does not vanish on an axis".into()));
            }
            if e.iter().sum::<u32>() as usize > class {
                return Err(ExpradError::Invariant("deg P exceeds the nilpotency class".into()));
            }
        }
    }
    let (quotient, quotient_map) = quotient_algebra(g, &n)?;
    let sd = SectionData {
        n,
        h,
        v,
        w,
        h_algebra,
        bch_polynomial: p,
        quotient_law,
        degree_bound: class,
        quotient,
        quotient_map,
    };
    check_section(g, &sd)?;
    Ok(sd)
}

/// The v-coordinates must map isomorphically onto g/n, and the H/W law
/// must agree with the BCH law of g/n under that identification.
fn check_section(g: &LieAlgebra, sd: &SectionData) -> Result<(), ExpradError> {
    let a = sd.v_dim();
    let images: Vec<Vec<Q>> = sd.v.basis().iter().map(|b| sd.quotient_map.project(b)).collect();
    if Subspace::span(sd.quotient.dim(), images.clone()).dim() != a || a != sd.quotient.dim() {
        return Err(ExpradError::Invariant("v does not project onto g/n".into()));
    }
    let class = nilpotency_class(&sd.quotient).unwrap_or(1).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ec7);
    for _ in 0..4 {
        let x: Vec<Q> = (0..a).map(|_| Q::from_integer(rng.gen_range(-4..=4).into())).collect();
        let y: Vec<Q> = (0..a).map(|_| Q::from_integer(rng.gen_range(-4..=4).into())).collect();
        let to_q = |c: &[Q]| {
            let mut out = vec![Q::zero(); sd.quotient.dim()];
            for (ci, im) in c.iter().zip(&images) {
                for (o, t) in out.iter_mut().zip(im) {
                    *o += ci * t;
                }
            }
            out
        };
        let via_v = to_q(&sd.quotient_product(&x, &y));
        let direct = bch(&sd.quotient, class, &to_q(&x), &to_q(&y));
        if via_v != direct {
            return Err(ExpradError::Invariant("section is not compatible with the quotient law".into()));
        }
    }
    let _ = g;
    Ok(())
}

/// One row of the lift probe.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftRow {
    pub scale: f64,
    /// max over pairs of r(n)
    pub ratio: f64,
    /// max over pairs of log(1 + ‖P(−δx, δy)‖) / n
    pub growth_term: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftProbe {
    pub rows: Vec<LiftRow>,
    pub max_ratio: f64,
    /// First scale from which the growth term strictly decreases to the
    /// end of the sweep (None if it never does).
    pub decreasing_from: Option<f64>,
}

/// Lower-central layer index (1-based) of each `v` coordinate in `g/n`,
/// used for the homogeneous quasi-norm and the dilations.
fn layers(sd: &SectionData) -> Vec<usize> {
    let s = series(&sd.quotient);
    sd.v
        .basis()
        .iter()
        .map(|b| {
            let p = sd.quotient_map.project(b);
            s.lower_central.iter().rposition(|c| c.contains(&p)).unwrap_or(0) + 1
        })
        .collect()
}

fn quasi_norm(x: &[Q], layer: &[usize]) -> f64 {
    let top = layer.iter().copied().max().unwrap_or(1);
    (1..=top)
        .map(|i| {
            let l1: f64 = x
                .iter()
                .zip(layer)
                .filter(|(_, &l)| l == i)
                .map(|(c, _)| to_f64(c).abs())
                .sum();
            l1.powf(1.0 / i as f64)
        })
        .sum()
}

/// Seeded sample pairs of distinct integer points in `v`-coordinates.
pub fn sample_pairs(sd: &SectionData, seed: u64, count: usize) -> Vec<(Vec<Q>, Vec<Q>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = sd.v_dim();
    let mut out = Vec::new();
    while out.len() < count {
        let x: Vec<Q> = (0..a).map(|_| Q::from_integer(rng.gen_range(-5..=5).into())).collect();
        let y: Vec<Q> = (0..a).map(|_| Q::from_integer(rng.gen_range(-5..=5).into())).collect();
        if x != y {
            out.push((x, y));
        }
    }
    out
}

/// r(n) = [d(δx, δy) + log(1 + ‖P(−δx, δy)‖)] / (n · d(x, y)), with
/// d the homogeneous quasi-norm distance on `g/n` and δ the dilations.
pub fn lift_probe(sd: &SectionData, samples: &[(Vec<Q>, Vec<Q>)], scales: &[u64]) -> Result<LiftProbe, ExpradError> {
    let layer = layers(sd);
    let dist = |x: &[Q], y: &[Q]| {
        let nx: Vec<Q> = x.iter().map(|c| -c).collect();
        quasi_norm(&sd.quotient_product(&nx, y), &layer)
    };
    let mut base = Vec::new();
    for (k, (x, y)) in samples.iter().enumerate() {
        let d = dist(x, y);
        if x == y || d == 0.0 {
            return Err(ExpradError::DegenerateSample { index: k });
        }
        base.push(d);
    }
    let mut rows = Vec::new();
    for &n in scales {
        let nq = Q::from_integer(n.into());
        let dil = |x: &[Q]| -> Vec<Q> {
            x.iter()
                .zip(&layer)
                .map(|(c, &l)| {
                    let mut t = c.clone();
                    for _ in 0..l {
                        t *= &nq;
                    }
                    t
                })
                .collect()
        };
        let mut ratio = 0f64;
        let mut growth = 0f64;
        for ((x, y), d0) in samples.iter().zip(&base) {
            let (dx, dy) = (dil(x), dil(y));
            let neg: Vec<Q> = dx.iter().map(|c| -c).collect();
            let p = sd.eval_p(&neg, &dy);
            let pn = p.iter().map(|c| to_f64(c).powi(2)).sum::<f64>().sqrt();
            let lg = (1.0 + pn).ln();
            let r = (dist(&dx, &dy) + lg) / (n as f64 * d0);
            ratio = ratio.max(r);
            growth = growth.max(lg / n as f64);
        }
        rows.push(LiftRow {
            scale: n as f64,
            ratio,
            growth_term: growth,
        });
    }
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let mut decreasing_from = None;
    for i in (0..rows.len()).rev() {
        if i + 1 == rows.len() || rows[i].growth_term > rows[i + 1].growth_term {
            decreasing_from = Some(rows[i].scale);
        } else {
            break;
        }
    }
    if rows.len() < 2 {
        decreasing_from = None;
    }
    Ok(LiftProbe {
        rows,
        max_ratio,
        decreasing_from,
    })
}

/// Powers of two `2^0..=2^k`.
pub fn dyadic_scales(k: u32) -> Vec<u64> {
    (0..=k).map(|i| 1u64 << i).collect()
}
