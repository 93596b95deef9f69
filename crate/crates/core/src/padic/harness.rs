//! Randomized verification of the norm and length inequalities.
//!
//! Sample `i` is drawn from its own ChaCha stream keyed by `(seed, i)`, so
//! the report does not depend on how samples are split across workers.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::*;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: &'static str,
    pub sample: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub prime: u64,
    pub size: usize,
    pub samples: usize,
    pub seed: u64,
    pub checks_run: usize,
    pub violations: Vec<Violation>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    rng
}

/// `±p^k·m/m'`, `k ∈ [−6,6]`, `m,m' ∈ [1,9]`.
fn entry(rng: &mut ChaCha8Rng, p: u64) -> Q {
    let k: i32 = rng.gen_range(-6..=6);
    let m: i64 = rng.gen_range(1..=9);
    let m2: i64 = rng.gen_range(1..=9);
    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
    let pk = BigInt::from(p).pow(k.unsigned_abs());
    let (num, den) = if k >= 0 {
        (pk * (s * m), BigInt::from(m2))
    } else {
        (BigInt::from(s * m), pk * m2)
    };
    Q::new(num, den)
}

fn random_unipotent(rng: &mut ChaCha8Rng, ctx: PadicContext) -> PadicTriangularMatrix {
    let n = ctx.size();
    let mut m = RationalMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            // leave some entries zero so sparse matrices get exercised
            if rng.gen_bool(0.8) {
                m[(i, j)] = entry(rng, ctx.prime());
            }
        }
    }
    PadicTriangularMatrix::new(ctx, m).expect("unipotent")
}

fn random_diagonal(rng: &mut ChaCha8Rng, ctx: PadicContext) -> PadicTriangularMatrix {
    let d: Vec<Q> = (0..ctx.size()).map(|_| entry(rng, ctx.prime())).collect();
    PadicTriangularMatrix::new(ctx, RationalMatrix::diagonal(&d)).expect("diagonal")
}

fn random_triangular(rng: &mut ChaCha8Rng, ctx: PadicContext) -> PadicTriangularMatrix {
    let d = random_diagonal(rng, ctx).diagonal_entries();
    random_unipotent(rng, ctx).scale_rows(&d)
}

fn ceil(x: &Q) -> i64 {
    let c = x.ceil().to_integer();
    i64::try_from(c).expect("length fits in i64")
}

/// Runs every check on one sample and returns how many checks ran.
fn run_sample(ctx: PadicContext, seed: u64, index: usize, out: &mut Vec<Violation>) -> usize {
    let mut rng = sample_rng(seed, index);
    let a = random_unipotent(&mut rng, ctx);
    let b = random_unipotent(&mut rng, ctx);
    let c = random_unipotent(&mut rng, ctx);
    let d = random_diagonal(&mut rng, ctx);
    let g1 = random_triangular(&mut rng, ctx);
    let g2 = random_triangular(&mut rng, ctx);
    let mut fail = |check: &'static str, detail: String| {
        out.push(Violation {
            check,
            sample: index,
            detail,
        })
    };
    let na = ultranorm_log(&a).unwrap();
    let nb = ultranorm_log(&b).unwrap();

    // ultrametric product bound
    let nab = ultranorm_log(&a.mul(&b)).unwrap();
    if nab > na.clone().max(nb.clone()) {
        fail("product", format!("‖AB‖={nab} > max({na}, {nb})"));
    }
    // inverse preserves the norm
    let a_inv = a.inverse();
    let ninv = ultranorm_log(&a_inv).unwrap();
    if ninv != na {
        fail("inverse", format!("‖A⁻¹‖={ninv} ≠ ‖A‖={na}"));
    }
    // conjugation by a diagonal costs at most ‖d‖²
    let nd = diagonal_norm_log(&d);
    let conj = ultranorm_log(&a.conjugate_by_diagonal(&d.diagonal_entries())).unwrap();
    let bound = nd.scale(&Q::from_integer(2.into())).plus(&na);
    if conj > bound {
        fail("conjugation", format!("‖d⁻¹Ad‖={conj} > 2·{nd} + {na}"));
    }
    // length is subadditive
    let (l1, l2) = (length(&g1), length(&g2));
    let l12 = length(&g1.mul(&g2));
    if l12 > &l1 + &l2 {
        fail(
            "subadditivity",
            format!("|g1g2|={} > {} + {}", fmt_rational(&l12), fmt_rational(&l1), fmt_rational(&l2)),
        );
    }
    // shrinking: |u| ≤ k ⇒ ‖w^{−k} u w^{k}‖ ≤ 1
    let k = ceil(&length(&a));
    let shrunk = ultranorm_log(&a.conjugate_by_diagonal(&ctx.shrink_power(k).diagonal_entries())).unwrap();
    if shrunk > LogNorm::Value(Q::zero()) {
        fail("shrink", format!("k={k}: ‖w^-k A w^k‖={shrunk} > 0"));
    }
    // ultrametric triangle inequality on the unipotent group
    let dist = |x: &PadicTriangularMatrix, y: &PadicTriangularMatrix| ultranorm_log(&x.mul(y)).unwrap().ell();
    let (dab, dbc, dac) = (dist(&a_inv, &b), dist(&b.inverse(), &c), dist(&a_inv, &c));
    if dac > dab.clone().max(dbc.clone()) {
        fail("ultrametric", format!("d(A,C)={} > max(d(A,B), d(B,C))", fmt_rational(&dac)));
    }
    // symmetric length on diagonals
    if length(&d) != length(&d.inverse()) {
        fail("diagonal_inverse", "length(d⁻¹) ≠ length(d)".into());
    }
    // identity has norm bottom and length zero
    if index == 0 {
        let id = PadicTriangularMatrix::new(ctx, RationalMatrix::identity(ctx.size())).unwrap();
        if ultranorm_log(&id).unwrap() != LogNorm::Bottom || !length(&id).is_zero() {
            fail("identity", "identity has nonzero size".into());
        }
    }
    7
}

pub fn property_harness(ctx: PadicContext, samples: usize, seed: u64) -> HarnessReport {
    property_harness_parallel(ctx, samples, seed, 1)
}

/// Same report as [`property_harness`], with samples split into contiguous
/// blocks across `workers` threads.
pub fn property_harness_parallel(ctx: PadicContext, samples: usize, seed: u64, workers: usize) -> HarnessReport {
    let workers = workers.clamp(1, samples.max(1));
    let block = samples.div_ceil(workers);
    let parts: Vec<(usize, Vec<Violation>)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    let mut v = Vec::new();
                    let mut checks = 0;
                    for i in (w * block)..((w + 1) * block).min(samples) {
                        checks += run_sample(ctx, seed, i, &mut v);
                    }
                    (checks, v)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("harness worker")).collect()
    });
    let mut checks_run = 0;
    let mut violations = Vec::new();
    for (c, v) in parts {
        checks_run += c;
        violations.extend(v);
    }
    HarnessReport {
        prime: ctx.prime(),
        size: ctx.size(),
        samples,
        seed,
        checks_run,
        violations,
    }
}
