//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach the output; exits non-zero if
//! any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use expcone_core::catalog::{self, load};
use expcone_core::covering::{burillo_refinement, dimension_at_scale, random_fibered_instance};
use expcone_core::distortion::{
    build_model, cayley_ball, cayley_ball_with_budget, classify_growth, distortion_curve, log_metric_compare,
    GrowthVerdict, DEFAULT_BALL_BUDGET,
};
use expcone_core::exactmath::{q, qr, to_f64, RationalMatrix, Q};
use expcone_core::exprad::{
    cat0_verdict, cat0_verdict_with, conedim_with, dyadic_scales, exponential_radical, is_weakly_triangulable,
    lift_probe, radical_by_route, sample_pairs, section_data, Cat0Reason, RadicalMethod,
};
use expcone_core::formats::parse_algebra;
use expcone_core::liealg::*;
use expcone_core::padic::{property_harness_parallel, PadicContext};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// criterion 1
const CONEDIM_MAX_TIME: Duration = Duration::from_secs(1);
// criterion 2
const BASIS_CHANGES_PER_ALGEBRA: usize = 100;
// criterion 3
const RANDOM_SOLVABLE_ALGEBRAS: usize = 1000;
const EIGEN_TOLERANCE: f64 = 1e-6;
// criterion 4
const PADIC_SAMPLES: usize = 10_000;
const PADIC_MAX_TIME: Duration = Duration::from_secs(30);
// criterion 5
const FIBERED_INSTANCES: u64 = 200;
const FIBERED_MAX_POINTS: usize = 48;
const BRUTE_FORCE_POINTS: usize = 12;
// criterion 6
const DISTORTION_RADIUS: u32 = 13;
const C_HIGH_BOUND: f64 = 6.0;
/// c_high of BS(1,2) at radius 13 from the first oracle run; tracked as a
/// regression value.
const C_HIGH_FROZEN: f64 = 2.0125609755649867;
// criterion 7
const GROWTH_RADII: [u32; 2] = [8, 12];
// criterion 9
const LIFT_SEED: u64 = 0;
const LIFT_MAX_EXPONENT: u32 = 12;
const LIFT_SAMPLES: usize = 16;
const LIFT_DECREASING_FROM: f64 = 16.0;
/// Bound `a` on r(n): the maximum from the first oracle run.
const LIFT_RATIO_BOUND: f64 = 1.3752152997677491;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Result<String, String> {
    let expected: &[(&str, Option<usize>)] = &[
        ("heisenberg", Some(3)),
        ("sol", Some(1)),
        ("rotation", Some(3)),
        ("weakly_triangulable", Some(1)),
        ("twisted_heisenberg_pair", Some(3)),
        ("heisenberg_on_heisenberg", None),
        ("sl2_annotated", Some(1)),
    ];
    let mut slowest = Duration::ZERO;
    for &(name, value) in expected {
        let start = Instant::now();
        let g = parse_algebra(catalog::entry(name).unwrap().text).map_err(|e| format!("{name}: {e:?}"))?;
        let rep = exponential_radical(&g).map_err(|e| format!("{name}: {e}"))?;
        let cd = conedim_with(&g, &rep).map_err(|e| format!("{name}: {e}"))?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        ensure(elapsed < CONEDIM_MAX_TIME, || format!("{name} took {elapsed:?}"))?;
        match value {
            Some(v) => ensure(cd.value == v, || format!("{name}: conedim {} != {v}", cd.value))?,
            None => ensure(rep.radical.dim() + 2 == g.dim() && cd.value == 2, || {
                format!("{name}: R_exp dim {} in dim {}, conedim {}", rep.radical.dim(), g.dim(), cd.value)
            })?,
        }
        if name == "twisted_heisenberg_pair" {
            ensure(rep.radical.dim() == 3 && g.dim() == 6 && rep.quotient.is_abelian(), || {
                "twisted_heisenberg_pair: expected R_exp of dim 3 in dim 6 with abelian quotient".into()
            })?;
        }
    }
    Ok(format!("7 catalog values exact, slowest {:.0} ms", slowest.as_secs_f64() * 1e3))
}

#[derive(Debug, PartialEq, Eq)]
struct Fingerprint {
    derived: Vec<usize>,
    lower_central: Vec<usize>,
    nilradical: usize,
    cartan: usize,
    growth: GrowthVariant,
    triangulable: bool,
    radical: usize,
    conedim: usize,
    cat0: bool,
    weakly_triangulable: bool,
}

fn fingerprint(g: &LieAlgebra) -> Result<Fingerprint, String> {
    let s = series(g);
    let rep = exponential_radical(g).map_err(|e| e.to_string())?;
    let c = cartan_subalgebra(g).map_err(|e| e.to_string())?;
    Ok(Fingerprint {
        derived: s.derived.iter().map(Subspace::dim).collect(),
        lower_central: s.lower_central.iter().map(Subspace::dim).collect(),
        nilradical: nilradical(g).dim(),
        cartan: c.cartan.dim(),
        growth: growth_class(&c).variant,
        triangulable: triangulable_from(&c),
        radical: rep.radical.dim(),
        conedim: conedim_with(g, &rep).map_err(|e| e.to_string())?.value,
        cat0: cat0_verdict_with(&rep).map_err(|e| e.to_string())?.embeds,
        weakly_triangulable: is_nilpotent(&rep.quotient),
    })
}

/// Invertible matrix with entries m/d, m ∈ [−3, 3], d ∈ {1, 2, 3}.
fn random_rational_invertible(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    loop {
        let rows: Vec<Vec<Q>> = (0..n)
            .map(|_| (0..n).map(|_| qr(rng.gen_range(-3..=3), rng.gen_range(1..=3))).collect())
            .collect();
        let m = RationalMatrix::from_rows(rows).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

fn routes_agree(g: &LieAlgebra) -> Result<bool, String> {
    let a = radical_by_route(g, RadicalMethod::StableLcs).map_err(|e| e.to_string())?;
    let b = radical_by_route(g, RadicalMethod::WeightIdeal).map_err(|e| e.to_string())?;
    Ok(a == b)
}

fn criterion_2() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut algebras = Vec::new();
    for name in catalog::names() {
        let g = load(name).unwrap();
        if is_solvable(&g) && is_triangulable(&g).map_err(|e| e.to_string())? {
            algebras.push((name, g));
        }
    }
    let mut checked = 0;
    for (name, g) in &algebras {
        ensure(routes_agree(g)?, || format!("{name}: routes differ"))?;
        let f = fingerprint(g)?;
        for k in 0..BASIS_CHANGES_PER_ALGEBRA {
            let h = g
                .change_basis(&random_rational_invertible(&mut rng, g.dim()))
                .map_err(|e| e.to_string())?;
            ensure(routes_agree(&h)?, || format!("{name}, change {k}: routes differ"))?;
            let fh = fingerprint(&h)?;
            ensure(fh == f, || format!("{name}, change {k}: {fh:?} != {f:?}"))?;
            checked += 1;
        }
    }
    let names: Vec<&str> = algebras.iter().map(|(n, _)| *n).collect();
    Ok(format!("{} triangulable algebras ({}), {checked} conjugates, 0 mismatches", names.len(), names.join(", ")))
}

/// `t` acting on V by a block-triangular matrix (1×1 real blocks and 2×2
/// rotation-dilation blocks), conjugated on V and then on the whole algebra.
fn random_solvable(rng: &mut ChaCha8Rng) -> LieAlgebra {
    let n = rng.gen_range(1..=5);
    let profile = rng.gen_range(0..3);
    let mut d = vec![vec![Q::from_integer(0.into()); n]; n];
    let mut i = 0;
    while i < n {
        let rotation = i + 1 < n && profile != 0 && rng.gen_bool(0.6);
        if rotation {
            let a = if profile == 1 { 0 } else { rng.gen_range(-1..=1) };
            let b = rng.gen_range(1..=2);
            d[i][i] = q(a);
            d[i + 1][i + 1] = q(a);
            d[i][i + 1] = q(-b);
            d[i + 1][i] = q(b);
            i += 2;
        } else {
            d[i][i] = if profile == 1 { q(0) } else { q(rng.gen_range(-2..=2)) };
            i += 1;
        }
    }
    // strictly upper entries outside the diagonal blocks
    for r in 0..n {
        for c in r + 1..n {
            if d[r][c] == q(0) && d[c][r] == q(0) && rng.gen_bool(0.5) {
                d[r][c] = q(rng.gen_range(-2..=2));
            }
        }
    }
    let dm = RationalMatrix::from_rows(d).unwrap();
    let p = loop {
        let rows: Vec<Vec<Q>> = (0..n).map(|_| (0..n).map(|_| q(rng.gen_range(-2..=2))).collect()).collect();
        let m = RationalMatrix::from_rows(rows).unwrap();
        if m.rank() == n {
            break m;
        }
    };
    let conj = &(&p * &dm) * &p.inverse().unwrap();
    let names: Vec<String> = std::iter::once("t".to_string()).chain((1..=n).map(|i| format!("v{i}"))).collect();
    let g = LieAlgebra::from_table("random", names, |a, b| {
        let mut out = vec![Q::from_integer(0.into()); n + 1];
        if a == 0 && b > 0 {
            for (r, o) in out.iter_mut().skip(1).enumerate() {
                *o = conj.row(r)[b - 1].clone();
            }
        } else if b == 0 && a > 0 {
            for (r, o) in out.iter_mut().skip(1).enumerate() {
                *o = -conj.row(r)[a - 1].clone();
            }
        }
        out
    })
    .unwrap();
    let outer = loop {
        let rows: Vec<Vec<Q>> = (0..=n).map(|_| (0..=n).map(|_| q(rng.gen_range(-2..=2))).collect()).collect();
        let m = RationalMatrix::from_rows(rows).unwrap();
        if m.rank() == n + 1 {
            break m;
        }
    };
    g.change_basis(&outer).unwrap()
}

/// Eigenvalues by Schur decomposition; when the iteration stalls or a 2×2
/// block yields NaN (seen on nilpotent blocks), retry on a random similar
/// matrix.
fn eigenvalues(m: &DMatrix<f64>, rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
    let n = m.nrows();
    let mut a = m.clone();
    for _ in 0..10 {
        if let Some(s) = a.clone().try_schur(1e-14, 10_000) {
            let ev: Vec<(f64, f64)> = s.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect();
            if ev.iter().all(|z| z.0.is_finite() && z.1.is_finite()) {
                return ev;
            }
        }
        let p = DMatrix::<f64>::from_fn(n, n, |i, j| if i == j { 4.0 } else { rng.gen_range(-1.0..1.0) });
        a = &p * m * p.try_inverse().unwrap();
    }
    panic!("no finite eigenvalues after 10 similarity retries");
}

/// (all eigenvalues real, all purely imaginary), classifying cluster means
/// (clusters within 1e-2 absorb the scatter of defective eigenvalues).
fn spectrum_flags(m: &DMatrix<f64>, rng: &mut ChaCha8Rng) -> (bool, bool) {
    let roots = eigenvalues(m, rng);
    let mut used = vec![false; roots.len()];
    let (mut real, mut imaginary) = (true, true);
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut members = vec![i];
        used[i] = true;
        for j in i + 1..roots.len() {
            let (a, b) = (roots[i], roots[j]);
            if !used[j] && ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt() < 1e-2 {
                used[j] = true;
                members.push(j);
            }
        }
        let k = members.len() as f64;
        let re = members.iter().map(|&j| roots[j].0).sum::<f64>() / k;
        let im = members.iter().map(|&j| roots[j].1).sum::<f64>() / k;
        let tol = EIGEN_TOLERANCE * (1.0 + (re * re + im * im).sqrt());
        real &= im.abs() < tol;
        imaginary &= re.abs() < tol;
    }
    (real, imaginary)
}

fn to_float(m: &RationalMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| to_f64(&m.row(i)[j]))
}

fn criterion_3() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut oracle_rng = ChaCha8Rng::seed_from_u64(33);
    let (mut type_r, mut triangulable) = (0, 0);
    for k in 0..RANDOM_SOLVABLE_ALGEBRAS {
        let g = random_solvable(&mut rng);
        let exact_r = is_type_r(&g).map_err(|e| format!("algebra {k}: {e}"))?.is_polynomial();
        let exact_t = is_triangulable(&g).map_err(|e| format!("algebra {k}: {e}"))?;
        let (mut all_real, mut all_imag) = (true, true);
        for b in 0..g.dim() {
            let (r, i) = spectrum_flags(&to_float(&g.ad_basis(b)), &mut oracle_rng);
            all_real &= r;
            all_imag &= i;
        }
        ensure(exact_r == all_imag && exact_t == all_real, || {
            format!("algebra {k}: exact (type R {exact_r}, triangulable {exact_t}) vs oracle ({all_imag}, {all_real})\n{g:?}")
        })?;
        type_r += usize::from(exact_r);
        triangulable += usize::from(exact_t);
    }
    Ok(format!(
        "{RANDOM_SOLVABLE_ALGEBRAS} algebras (type R {type_r}, triangulable {triangulable}), 0 disagreements"
    ))
}

fn criterion_4() -> Result<String, String> {
    let start = Instant::now();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut checks = 0;
    for p in [2, 3, 5] {
        for n in [2, 3, 4] {
            let rep = property_harness_parallel(PadicContext::new(p, n).unwrap(), PADIC_SAMPLES, 0, workers);
            ensure(rep.passed(), || format!("p={p}, n={n}: {:?}", rep.violations.first()))?;
            checks += rep.checks_run;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < PADIC_MAX_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!("9 configurations x {PADIC_SAMPLES} samples, {checks} exact checks, 0 violations, {:.1} s", elapsed.as_secs_f64()))
}

fn criterion_5() -> Result<String, String> {
    let mut small = 0;
    for seed in 0..FIBERED_INSTANCES {
        let inst = random_fibered_instance(seed, FIBERED_MAX_POINTS);
        let map = &inst.map;
        ensure(map.x.len() <= FIBERED_MAX_POINTS && inst.levels.len() == 3, || format!("seed {seed}: bad instance"))?;
        let rep = burillo_refinement(map, &inst.levels).map_err(|e| format!("seed {seed}: {e}"))?;
        for (k, l) in rep.levels.iter().enumerate() {
            ensure(l.covers && l.multiplicity_ok && l.mesh_ok && l.refines_previous, || {
                format!("seed {seed}, level {k}: {l:?}")
            })?;
        }
        if map.x.len() <= BRUTE_FORCE_POINTS {
            small += 1;
            for (_, r) in &inst.levels {
                let dx = dimension_at_scale(&map.x, r).map_err(|e| e.to_string())?;
                let dy = dimension_at_scale(&map.y, r).map_err(|e| e.to_string())?;
                ensure(dx <= dy, || format!("seed {seed}, r = {r}: dim X {dx} > dim Y {dy}"))?;
            }
        }
    }
    Ok(format!("{FIBERED_INSTANCES} instances refined, {small} with <= {BRUTE_FORCE_POINTS} points brute-forced"))
}

fn criterion_6() -> Result<String, String> {
    let bs = build_model("bs:1:2").unwrap();
    let table = cayley_ball_with_budget(&bs, DISTORTION_RADIUS, DEFAULT_BALL_BUDGET).map_err(|e| e.to_string())?;
    let curve = distortion_curve(&bs, &table);
    let lower = 1u64 << ((DISTORTION_RADIUS - 3) / 2);
    ensure(curve.max_size() >= lower, || format!("max m = {} < {lower}", curve.max_size()))?;
    let a = bs.generator_index("a").unwrap();
    let mut prev = 0;
    let mut lengths = Vec::new();
    for k in 0..=5u32 {
        let g = bs.word(&vec![a; 1 << k]);
        let len = table.length_of(&g).ok_or_else(|| format!("a^{} outside the ball", 1 << k))?;
        ensure(len >= prev && len <= 2 * k + 2, || format!("|a^{}| = {len}", 1 << k))?;
        prev = len;
        lengths.push(len);
    }
    let fit = log_metric_compare(&curve).map_err(|e| e.to_string())?;
    ensure(fit.c_low.is_finite() && fit.c_high.is_finite() && fit.c_high <= C_HIGH_BOUND, || {
        format!("c_high = {}", fit.c_high)
    })?;
    ensure((fit.c_high - C_HIGH_FROZEN).abs() < 1e-9, || format!("c_high {} drifted from {C_HIGH_FROZEN}", fit.c_high))?;

    let sol = build_model("sol:2,1,1,1").unwrap();
    let st = cayley_ball(&sol, DISTORTION_RADIUS).map_err(|e| e.to_string())?;
    let sc = distortion_curve(&sol, &st);
    ensure(sc.max_size() >= 32, || format!("sol max |v|_1 = {}", sc.max_size()))?;

    let zk = build_model("zk:2").unwrap();
    let zt = cayley_ball(&zk, DISTORTION_RADIUS).map_err(|e| e.to_string())?;
    let zfit = log_metric_compare(&distortion_curve(&zk, &zt)).map_err(|e| e.to_string())?;
    ensure(!zfit.log_equivalent, || "free_abelian(2) reported log-equivalent".into())?;
    Ok(format!(
        "BS(1,2) ball({DISTORTION_RADIUS}) has {} elements, max m {}, |a^(2^k)| = {lengths:?}, c_low {:.3}, c_high {:.4}; sol max |v|_1 {}; Z^2 not log-equivalent",
        table.len(),
        curve.max_size(),
        fit.c_low,
        fit.c_high,
        sc.max_size()
    ))
}

fn criterion_7() -> Result<String, String> {
    let models = [
        ("heis", GrowthVerdict::Subexponential),
        ("zk:1", GrowthVerdict::Subexponential),
        ("zk:2", GrowthVerdict::Subexponential),
        ("zk:3", GrowthVerdict::Subexponential),
        ("bs:1:2", GrowthVerdict::Exponential),
        ("sol:2,1,1,1", GrowthVerdict::Exponential),
        ("lamp:2", GrowthVerdict::Exponential),
    ];
    for r in GROWTH_RADII {
        for (spec, expected) in models {
            let m = build_model(spec).unwrap();
            let t = cayley_ball(&m, r).map_err(|e| e.to_string())?;
            let g = classify_growth(&t);
            ensure(g.verdict == expected, || format!("{spec} at R = {r}: {:?}", g.verdict))?;
        }
    }
    Ok(format!("7 models classified correctly at R = {GROWTH_RADII:?}"))
}

fn criterion_8() -> Result<String, String> {
    let mut type_r = Vec::new();
    for name in catalog::names() {
        let g = load(name).unwrap();
        if !is_solvable(&g) || !is_type_r(&g).map_err(|e| e.to_string())?.is_polynomial() {
            continue;
        }
        let s = nilshadow(&g).map_err(|e| format!("{name}: {e}"))?;
        ensure(is_nilpotent(&s) && s.dim() == g.dim(), || format!("{name}: nilshadow not nilpotent of the same dim"))?;
        if is_nilpotent(&g) {
            ensure(s.structure_constants() == g.structure_constants(), || format!("{name}: nilshadow changed a nilpotent algebra"))?;
        }
        type_r.push(name);
    }
    let rot = nilshadow(&load("rotation").unwrap()).map_err(|e| e.to_string())?;
    ensure(rot.is_abelian() && rot.dim() == 3, || "rotation: nilshadow is not abelian R^3".into())?;
    Ok(format!("type R algebras {}; rotation -> R^3", type_r.join(", ")))
}

fn criterion_9() -> Result<String, String> {
    let g = load("twisted_heisenberg_pair").unwrap();
    let sd = section_data(&g).map_err(|e| e.to_string())?;
    ensure(sd.h.sum(&sd.n).is_full(), || "h + n != g".into())?;
    ensure(sd.v.intersection(&sd.w).is_zero() && sd.v.sum(&sd.w) == sd.h, || "v + w is not a direct sum equal to h".into())?;
    ensure(sd.v.intersection(&sd.n).is_zero() && sd.v.sum(&sd.n).is_full(), || "v + n is not a direct sum equal to g".into())?;
    let a = sd.v_dim();
    for p in &sd.bch_polynomial {
        for (exps, _) in p.terms() {
            let in_x = exps[..a].iter().any(|&e| e > 0);
            let in_y = exps[a..].iter().any(|&e| e > 0);
            ensure(in_x && in_y, || "P has a monomial vanishing on one side".into())?;
        }
    }
    let class = nilpotency_class(&sd.h_algebra).ok_or("h is not nilpotent")?;
    let degree = sd.bch_polynomial.iter().filter_map(|p| p.total_degree()).max().unwrap_or(0) as usize;
    ensure(degree <= class && sd.degree_bound <= class.max(1), || format!("deg P {degree} > class {class}"))?;

    let samples = sample_pairs(&sd, LIFT_SEED, LIFT_SAMPLES);
    let probe = lift_probe(&sd, &samples, &dyadic_scales(LIFT_MAX_EXPONENT)).map_err(|e| e.to_string())?;
    let tail: Vec<_> = probe.rows.iter().filter(|r| r.scale >= LIFT_DECREASING_FROM).collect();
    for w in tail.windows(2) {
        ensure(w[1].growth_term < w[0].growth_term, || format!("growth term not decreasing at n = {}", w[1].scale))?;
    }
    ensure(probe.max_ratio <= LIFT_RATIO_BOUND * (1.0 + 1e-12), || format!("max r(n) = {} > a = {LIFT_RATIO_BOUND}", probe.max_ratio))?;
    Ok(format!(
        "deg P = {degree} <= class(h) = {class}; log(1+|P|)/n decreasing from n = {LIFT_DECREASING_FROM}; max r(n) = {:?} <= a = {LIFT_RATIO_BOUND}",
        probe.max_ratio
    ))
}

fn criterion_10() -> Result<String, String> {
    for name in ["sol", "twisted_heisenberg_pair"] {
        let v = cat0_verdict(&load(name).unwrap()).map_err(|e| e.to_string())?;
        ensure(v.embeds, || format!("{name} does not embed"))?;
    }
    let v = cat0_verdict(&load("heisenberg_by_sol").unwrap()).map_err(|e| e.to_string())?;
    ensure(!v.embeds && v.reason == Cat0Reason::QuotientNonabelianNilshadow, || format!("heisenberg_by_sol: {v:?}"))?;
    let wt = is_weakly_triangulable(&load("heisenberg_by_sol").unwrap()).map_err(|e| e.to_string())?;
    Ok(format!("sol, twisted_heisenberg_pair embed; heisenberg_by_sol does not (quotient_nonabelian_nilshadow, weakly triangulable {wt})"))
}

fn main() {
    let criteria: [(u32, &str, Check); 10] = [
        (1, "catalog cone dimensions", criterion_1),
        (2, "radical route agreement under basis changes", criterion_2),
        (3, "type R / triangulability certificates vs eigenvalue oracle", criterion_3),
        (4, "p-adic exact properties", criterion_4),
        (5, "fiberwise refinement construction", criterion_5),
        (6, "distortion signatures", criterion_6),
        (7, "growth dichotomy", criterion_7),
        (8, "nilshadow invariants", criterion_8),
        (9, "section and lift estimate", criterion_9),
        (10, "CAT(0) verdicts", criterion_10),
    ];
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (id, title, check) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {id} ({title}): {detail} [{secs:.1} s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id} ({title}): {why} [{secs:.1} s]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
