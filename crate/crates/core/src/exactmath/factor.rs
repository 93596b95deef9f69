//! Factorization of rational polynomials into irreducibles.
//!
//! Squarefree pieces come from Yun's algorithm; each piece is then split by
//! Zassenhaus: factor modulo a small prime (distinct-degree plus
//! Cantor–Zassenhaus equal-degree splitting), Hensel-lift to a modulus beyond
//! the Mignotte bound, and recombine lifted factors by trial division over ℤ.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Polynomial;
use super::rational::Q;

/// Squarefree pieces above this degree are returned unsplit.
pub const MAX_FACTOR_DEGREE: usize = 12;

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// coefficients. Constants are dropped.
pub fn factor_over_q(p: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    for (piece, mult) in p.squarefree_decomposition() {
        let deg = piece.degree().unwrap_or(0);
        if deg <= 1 || deg > MAX_FACTOR_DEGREE {
            out.push((piece, mult));
            continue;
        }
        let ints = piece.primitive_integer();
        for g in factor_squarefree_integer(&ints) {
            let poly = Polynomial::new(g.into_iter().map(Q::from_integer).collect()).monic();
            out.push((poly, mult));
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
    });
    out
}

type ZPoly = Vec<BigInt>;
type FpPoly = Vec<u64>;

fn z_trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn z_mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    z_trim(out)
}

fn z_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    z_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn z_symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half: BigInt = m / 2;
    z_trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn z_primitive(a: ZPoly) -> ZPoly {
    let mut g = BigInt::zero();
    for c in &a {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return a;
    }
    if a.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    a.into_iter().map(|c| c / &g).collect()
}

/// Exact division over ℤ, `None` when `d` does not divide `a`.
fn z_divides(a: &[BigInt], d: &[BigInt]) -> Option<ZPoly> {
    let mut rem: ZPoly = a.to_vec();
    let dd = d.len().checked_sub(1)?;
    if rem.len() < d.len() {
        return None;
    }
    let lc = d.last()?;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let (c, r) = rem[k + dd].div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, dc) in d.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
        }
        quot[k] = c;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(z_trim(quot))
    } else {
        None
    }
}

fn fp_trim(mut v: FpPoly) -> FpPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_from_z(a: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    fp_trim(
        a.iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
            .collect(),
    )
}

fn fp_pow_scalar(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * a as u128) % p as u128) as u64;
        }
        a = ((a as u128 * a as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow_scalar(a, p - 2, p)
}

fn fp_add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn fp_scale(a: &[u64], c: u64, p: u64) -> FpPoly {
    fp_trim(a.iter().map(|&x| ((x as u128 * c as u128) % p as u128) as u64).collect())
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % p as u128;
        }
    }
    fp_trim(out.into_iter().map(|x| x as u64).collect())
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), fp_trim(rem));
    }
    let inv = fp_inv(b[db], p);
    let mut quot = vec![0u64; rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = ((rem[k + db] as u128 * inv as u128) % p as u128) as u64;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let sub = ((c as u128 * bj as u128) % p as u128) as u64;
                rem[k + j] = (rem[k + j] + p - sub) % p;
            }
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (fp_trim(quot), fp_trim(rem))
}

fn fp_monic(a: &[u64], p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => fp_scale(a, fp_inv(lc, p), p),
    }
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut x = fp_trim(a.to_vec());
    let mut y = fp_trim(b.to_vec());
    while !y.is_empty() {
        let r = fp_divrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// `(g, s, t)` with `s·a + t·b = g`, `g` monic.
fn fp_ext_gcd(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (quot, r) = fp_divrem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&quot, &s1, p), p);
        let t = fp_sub(&t0, &fp_mul(&quot, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = fp_inv(*r0.last().expect("nonzero gcd"), p);
    (
        fp_scale(&r0, inv, p),
        fp_scale(&s0, inv, p),
        fp_scale(&t0, inv, p),
    )
}

fn fp_powmod(base: &[u64], exp: &BigUint, modulus: &[u64], p: u64) -> FpPoly {
    let mut acc = vec![1u64];
    let base = fp_divrem(base, modulus, p).1;
    for bit in (0..exp.bits()).rev() {
        acc = fp_divrem(&fp_mul(&acc, &acc, p), modulus, p).1;
        if exp.bit(bit) {
            acc = fp_divrem(&fp_mul(&acc, &base, p), modulus, p).1;
        }
    }
    acc
}

fn fp_derivative(a: &[u64], p: u64) -> FpPoly {
    fp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| ((k as u128 * c as u128) % p as u128) as u64)
            .collect(),
    )
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn fp_distinct_degree(f: &[u64], p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut d = 1;
    while rest.len() > 2 * d {
        h = fp_powmod(&h, &pb, &rest, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &rest, p);
        if g.len() > 1 {
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_divrem(&h, &rest, p).1;
            out.push((g, d));
        }
        d += 1;
    }
    if rest.len() > 1 {
        let deg = rest.len() - 1;
        out.push((rest, deg));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles.
fn fp_equal_degree(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let deg = f.len() - 1;
    if deg == d {
        return vec![f.to_vec()];
    }
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = fp_trim((0..deg).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, &exp, f, p), &[1], p);
        let g = fp_gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let other = fp_monic(&fp_divrem(f, &g, p).0, p);
            let mut out = fp_equal_degree(&g, d, p, rng);
            out.extend(fp_equal_degree(&other, d, p, rng));
            return out;
        }
    }
}

fn fp_factor(f: &[u64], p: u64) -> Vec<FpPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d ^ p);
    let monic = fp_monic(f, p);
    let mut out = Vec::new();
    for (g, d) in fp_distinct_degree(&monic, p) {
        out.extend(fp_equal_degree(&g, d, p, &mut rng));
    }
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|n| (2..).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

fn mignotte_modulus_exponent(f: &[BigInt], p: u64) -> u32 {
    let n = f.len() as u32 - 1;
    let norm: BigInt = f.iter().map(|c| c.abs()).sum();
    let lc = f.last().expect("nonzero").abs();
    let bound: BigInt = (BigInt::one() << n) * norm * lc * 2;
    let mut k = 1;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    k
}

fn to_z(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Two-factor linear Hensel lifting of `f ≡ lc·g0·h0 (mod p)` to `p^k`.
fn hensel_two(f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let lc = f.last().expect("nonzero").clone();
    let pb = BigInt::from(p);
    let lc_inv = fp_inv(lc.mod_floor(&pb).to_u64().expect("fits"), p);
    let (_, s, t) = fp_ext_gcd(g0, h0, p);
    let mut g = to_z(g0);
    let mut h = to_z(h0);
    let mut pk = pb.clone();
    for _ in 1..k {
        let prod = z_mul(&z_mul(&g, &h), &[lc.clone()]);
        let n = f.len().max(prod.len());
        let err: ZPoly = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b) / &pk
            })
            .collect();
        let e = fp_scale(&fp_from_z(&err, p), lc_inv, p);
        let (quot, dg) = fp_divrem(&fp_mul(&e, &t, p), g0, p);
        let dh = fp_add(&fp_mul(&e, &s, p), &fp_mul(&quot, h0, p), p);
        let bump = |base: &mut ZPoly, delta: &[u64]| {
            if base.len() < delta.len() {
                base.resize(delta.len(), BigInt::zero());
            }
            for (i, &d) in delta.iter().enumerate() {
                base[i] += &pk * d;
            }
        };
        bump(&mut g, &dg);
        bump(&mut h, &dh);
        pk *= &pb;
    }
    (g, h)
}

fn lift_all(f: &[BigInt], factors: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let modulus = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let lc = f.last().expect("nonzero");
        let inv = mod_inverse(lc, &modulus);
        return vec![z_mod(&z_mul(f, &[inv]), &modulus)];
    }
    let rest = factors[1..]
        .iter()
        .fold(vec![1u64], |acc, u| fp_mul(&acc, u, p));
    let (g, h) = hensel_two(f, &factors[0], &rest, p, k);
    let mut out = vec![z_mod(&g, &modulus)];
    out.extend(lift_all(&z_mod(&h, &modulus), &factors[1..], p, k));
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    e.x.mod_floor(m)
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors over ℤ of a primitive squarefree integer polynomial.
fn factor_squarefree_integer(f: &[BigInt]) -> Vec<ZPoly> {
    let f = z_trim(f.to_vec());
    if f.len() <= 2 {
        return vec![f];
    }
    let lc = f.last().expect("nonzero").clone();
    // the prime with the fewest modular factors among the first few admissible ones
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    for p in small_primes().filter(|p| !(&lc % p).is_zero()).take(40) {
        let fp = fp_from_z(&f, p);
        if fp.len() != f.len() || fp_gcd(&fp, &fp_derivative(&fp, p), p).len() > 1 {
            continue;
        }
        let facs = fp_factor(&fp, p);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        if best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
        if best.is_some() && p > 60 {
            break;
        }
    }
    let (p, facs) = best.expect("a prime keeping f squarefree exists");
    if facs.len() == 1 {
        return vec![f];
    }
    let k = mignotte_modulus_exponent(&f, p);
    let modulus = BigInt::from(p).pow(k);
    let mut lifted = lift_all(&f, &facs, p, k);
    let mut rest = f;
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in subsets(lifted.len(), size) {
            let lc = rest.last().expect("nonzero").clone();
            let prod = subset
                .iter()
                .fold(vec![lc], |acc, &i| z_mod(&z_mul(&acc, &lifted[i]), &modulus));
            let cand = z_primitive(z_symmetric(&prod, &modulus));
            if cand.len() < 2 {
                continue;
            }
            if let Some(quot) = z_divides(&rest, &cand) {
                found = Some((subset, cand, quot));
                break;
            }
        }
        match found {
            Some((subset, cand, quot)) => {
                out.push(cand);
                rest = z_primitive(quot);
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if rest.len() > 1 {
        out.push(rest);
    }
    out
}
