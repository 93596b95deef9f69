//! p-adic valuations, the ultranorm on unipotent upper-triangular
//! matrices, the length on the triangular group, and the split-torus cone
//! dimension. All norms live on the `log_p` scale as exact rationals.

mod harness;

pub use harness::{property_harness, property_harness_parallel, HarnessReport, Violation};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{fmt_rational, RationalMatrix, Q};
use crate::liealg::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("entry ({0},{1}) below the diagonal is nonzero")]
    NotTriangular(usize, usize),
    #[error("diagonal entry {0} is zero")]
    SingularDiagonal(usize),
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not compactly generated: [S,U] misses {}", missing.join(", "))]
    NotCompactlyGenerated { missing: Vec<String> },
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn vp_int(x: &BigInt, p: &BigInt) -> i64 {
    if let (Some(mut v), Some(p)) = (x.abs().to_u64(), p.to_u64()) {
        let mut k = 0;
        while v % p == 0 {
            v /= p;
            k += 1;
        }
        return k;
    }
    let mut x = x.abs();
    let mut k = 0;
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        x = q;
        k += 1;
    }
}

/// p-adic valuation; `None` stands for +∞ (the valuation of 0).
pub fn vp(x: &Q, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    Some(vp_int(x.numer(), &pb) - vp_int(x.denom(), &pb))
}

/// log_p of a norm: `Bottom` is the norm of zero (log = −∞).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LogNorm {
    Bottom,
    Value(Q),
}

impl LogNorm {
    /// ℓ = max(0, log).
    pub fn ell(&self) -> Q {
        match self {
            LogNorm::Bottom => Q::zero(),
            LogNorm::Value(v) if v.is_negative() => Q::zero(),
            LogNorm::Value(v) => v.clone(),
        }
    }

    /// log of a product of norms.
    pub fn plus(&self, other: &LogNorm) -> LogNorm {
        match (self, other) {
            (LogNorm::Value(a), LogNorm::Value(b)) => LogNorm::Value(a + b),
            _ => LogNorm::Bottom,
        }
    }

    pub fn scale(&self, k: &Q) -> LogNorm {
        match self {
            LogNorm::Value(a) => LogNorm::Value(a * k),
            LogNorm::Bottom => LogNorm::Bottom,
        }
    }
}

impl PartialOrd for LogNorm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogNorm {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LogNorm::Bottom, LogNorm::Bottom) => Ordering::Equal,
            (LogNorm::Bottom, _) => Ordering::Less,
            (_, LogNorm::Bottom) => Ordering::Greater,
            (LogNorm::Value(a), LogNorm::Value(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for LogNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogNorm::Bottom => write!(f, "bottom"),
            LogNorm::Value(v) => write!(f, "{}", fmt_rational(v)),
        }
    }
}

impl Serialize for LogNorm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PadicContext {
    p: u64,
    n: usize,
}

impl PadicContext {
    pub fn new(p: u64, n: usize) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if n == 0 {
            return Err(PadicError::DimensionMismatch("size must be positive".into()));
        }
        Ok(PadicContext { p, n })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// log_p |x| = −v_p(x).
    pub fn log_abs(&self, x: &Q) -> LogNorm {
        match vp(x, self.p) {
            None => LogNorm::Bottom,
            Some(v) => LogNorm::Value(Q::from_integer((-v).into())),
        }
    }

    /// `diag(1, p, …, p^{n−1})`.
    pub fn shrink_matrix(&self) -> PadicTriangularMatrix {
        self.shrink_power(1)
    }

    /// `w^k = diag(1, p^k, …, p^{k(n−1)})`, built directly.
    pub fn shrink_power(&self, k: i64) -> PadicTriangularMatrix {
        let d: Vec<Q> = (0..self.n)
            .map(|i| {
                let e = BigInt::from(self.p).pow((k.unsigned_abs() as u32) * i as u32);
                if k >= 0 {
                    Q::from_integer(e)
                } else {
                    Q::new(BigInt::one(), e)
                }
            })
            .collect();
        PadicTriangularMatrix {
            ctx: *self,
            m: RationalMatrix::diagonal(&d),
        }
    }
}

/// Invertible upper-triangular matrix over Q, read p-adically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicTriangularMatrix {
    ctx: PadicContext,
    m: RationalMatrix,
}

impl PadicTriangularMatrix {
    pub fn new(ctx: PadicContext, m: RationalMatrix) -> Result<Self, PadicError> {
        if m.rows() != ctx.n || m.cols() != ctx.n {
            return Err(PadicError::DimensionMismatch(format!(
                "expected {0}×{0}, got {1}×{2}",
                ctx.n,
                m.rows(),
                m.cols()
            )));
        }
        for i in 0..ctx.n {
            for j in 0..i {
                if !m[(i, j)].is_zero() {
                    return Err(PadicError::NotTriangular(i + 1, j + 1));
                }
            }
            if m[(i, i)].is_zero() {
                return Err(PadicError::SingularDiagonal(i + 1));
            }
        }
        Ok(PadicTriangularMatrix { ctx, m })
    }

    pub fn context(&self) -> PadicContext {
        self.ctx
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.m
    }

    pub fn is_unipotent(&self) -> bool {
        (0..self.ctx.n).all(|i| self.m[(i, i)].is_one())
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.ctx.n;
        (0..n).all(|i| (i + 1..n).all(|j| self.m[(i, j)].is_zero()))
    }

    /// Product, summing only over `i ≤ k ≤ j`.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.ctx.n;
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Q::zero();
                for k in i..=j {
                    let (a, b) = (&self.m[(i, k)], &other.m[(k, j)]);
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                m[(i, j)] = acc;
            }
        }
        PadicTriangularMatrix { ctx: self.ctx, m }
    }

    /// Inverse by back substitution.
    pub fn inverse(&self) -> Self {
        let n = self.ctx.n;
        let mut m = RationalMatrix::zeros(n, n);
        for j in 0..n {
            m[(j, j)] = Q::one() / &self.m[(j, j)];
            for i in (0..j).rev() {
                let mut acc = Q::zero();
                for k in i + 1..=j {
                    let (a, b) = (&self.m[(i, k)], &m[(k, j)]);
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                m[(i, j)] = -acc / &self.m[(i, i)];
            }
        }
        PadicTriangularMatrix { ctx: self.ctx, m }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = PadicTriangularMatrix {
            ctx: self.ctx,
            m: RationalMatrix::identity(self.ctx.n),
        };
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `d⁻¹·self·d` for `d = diag(entries)`, by entry scaling.
    pub fn conjugate_by_diagonal(&self, d: &[Q]) -> Self {
        let n = self.ctx.n;
        let mut m = self.m.clone();
        for i in 0..n {
            for j in i + 1..n {
                if !m[(i, j)].is_zero() {
                    m[(i, j)] = &self.m[(i, j)] * &d[j] / &d[i];
                }
            }
        }
        PadicTriangularMatrix { ctx: self.ctx, m }
    }

    pub fn diagonal_entries(&self) -> Vec<Q> {
        (0..self.ctx.n).map(|i| self.m[(i, i)].clone()).collect()
    }

    /// `diag(entries)·self`, by row scaling.
    pub fn scale_rows(&self, d: &[Q]) -> Self {
        let n = self.ctx.n;
        let mut m = self.m.clone();
        for i in 0..n {
            for j in i..n {
                if !m[(i, j)].is_zero() {
                    m[(i, j)] = &self.m[(i, j)] * &d[i];
                }
            }
        }
        PadicTriangularMatrix { ctx: self.ctx, m }
    }

    /// `g = d·u` with `d` diagonal and `u = d⁻¹g` unipotent.
    pub fn decompose(&self) -> (Self, Self) {
        let n = self.ctx.n;
        let diag: Vec<Q> = (0..n).map(|i| self.m[(i, i)].clone()).collect();
        let d = RationalMatrix::diagonal(&diag);
        let inv: Vec<Q> = diag.iter().map(|x| x.recip()).collect();
        (PadicTriangularMatrix { ctx: self.ctx, m: d }, self.scale_rows(&inv))
    }
}

/// `log_p ‖A‖ = max_{i<j} −v_p(a_ij)/(j−i)`; `Bottom` for the identity.
pub fn ultranorm_log(u: &PadicTriangularMatrix) -> Result<LogNorm, PadicError> {
    if !u.is_unipotent() {
        return Err(PadicError::NotUnipotent);
    }
    let n = u.ctx.n;
    let mut best = LogNorm::Bottom;
    for i in 0..n {
        for j in i + 1..n {
            let v = u
                .ctx
                .log_abs(&u.m[(i, j)])
                .scale(&Q::new(BigInt::one(), BigInt::from(j - i)));
            best = best.max(v);
        }
    }
    Ok(best)
}

/// Symmetric diagonal norm: `log_p ‖d‖ = max_i |v_p(d_i)|`, i.e.
/// `‖d‖ = max_i max(|d_i|, |d_i|⁻¹)`.
pub fn diagonal_norm_log(d: &PadicTriangularMatrix) -> LogNorm {
    let m = (0..d.ctx.n)
        .map(|i| vp(&d.m[(i, i)], d.ctx.p).expect("nonzero diagonal").abs())
        .max()
        .unwrap_or(0);
    LogNorm::Value(Q::from_integer(m.into()))
}

/// `|g| = max(2ℓ(‖d‖), ℓ(‖u‖))` for `g = d·u`, in `log p` units.
pub fn length(g: &PadicTriangularMatrix) -> Q {
    let (d, u) = g.decompose();
    let a = diagonal_norm_log(&d).ell() * Q::from_integer(2.into());
    let b = ultranorm_log(&u).expect("unipotent by construction").ell();
    a.max(b)
}

/// Ultrametric distance `ℓ(‖u⁻¹v‖)` between unipotent matrices.
pub fn unipotent_distance(u: &PadicTriangularMatrix, v: &PadicTriangularMatrix) -> Result<Q, PadicError> {
    Ok(ultranorm_log(&u.inverse().mul(v))?.ell())
}

/// Split-torus data for the cone dimension of a p-adic algebraic group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTorusData {
    pub split_torus_dim: usize,
    /// Labels of a basis of the Lie algebra of the unipotent radical.
    pub unipotent_basis: Vec<String>,
    /// Action of the isotropic reductive part on that basis (one matrix
    /// per generator, acting on column coordinate vectors).
    pub action: Vec<RationalMatrix>,
}

/// Checks `U = [S,U]` (the images of the generators span `U`) and returns
/// the split torus dimension.
pub fn padic_conedim(data: &SplitTorusData) -> Result<usize, PadicError> {
    let k = data.unipotent_basis.len();
    let mut images = Vec::new();
    for a in &data.action {
        if a.rows() != k || a.cols() != k {
            return Err(PadicError::DimensionMismatch(format!(
                "action matrices must be {k}×{k}"
            )));
        }
        for j in 0..k {
            images.push(a.column(j));
        }
    }
    let span = Subspace::span(k, images);
    if !span.is_full() {
        let missing = span
            .complement_indices()
            .into_iter()
            .map(|i| data.unipotent_basis[i].clone())
            .collect();
        return Err(PadicError::NotCompactlyGenerated { missing });
    }
    Ok(data.split_torus_dim)
}

/// The full upper-triangular group of size `n`: split torus of dimension
/// `n` acting on `e_ij` (i<j) with weight `t_i − t_j`.
pub fn upper_triangular_data(n: usize) -> SplitTorusData {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let labels = pairs.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
    let action = (0..n)
        .map(|k| {
            let w: Vec<Q> = pairs
                .iter()
                .map(|&(i, j)| Q::from_integer(((i == k) as i64 - (j == k) as i64).into()))
                .collect();
            RationalMatrix::diagonal(&w)
        })
        .collect();
    SplitTorusData {
        split_torus_dim: n,
        unipotent_basis: labels,
        action,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{q, qr};

    fn ctx(p: u64, n: usize) -> PadicContext {
        PadicContext::new(p, n).unwrap()
    }

    fn unip(c: PadicContext, entries: &[((usize, usize), Q)]) -> PadicTriangularMatrix {
        let mut m = RationalMatrix::identity(c.size());
        for ((i, j), v) in entries {
            m[(*i, *j)] = v.clone();
        }
        PadicTriangularMatrix::new(c, m).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(&q(8), 2), Some(3));
        assert_eq!(vp(&qr(3, 4), 2), Some(-2));
        assert_eq!(vp(&q(0), 5), None);
        assert_eq!(vp(&qr(-50, 3), 5), Some(2));
    }

    #[test]
    fn ultranorm_examples() {
        let c = ctx(3, 2);
        assert_eq!(ultranorm_log(&unip(c, &[])).unwrap(), LogNorm::Bottom);
        let a = unip(c, &[((0, 1), qr(1, 27))]);
        assert_eq!(ultranorm_log(&a).unwrap(), LogNorm::Value(q(3)));
        let c3 = ctx(3, 3);
        let b = unip(c3, &[((0, 2), qr(1, 81)), ((0, 1), q(2)), ((1, 2), q(5))]);
        assert_eq!(ultranorm_log(&b).unwrap(), LogNorm::Value(q(2)));
        let bad = PadicTriangularMatrix::new(c, RationalMatrix::diagonal(&[q(2), q(1)])).unwrap();
        assert_eq!(ultranorm_log(&bad), Err(PadicError::NotUnipotent));
    }

    #[test]
    fn length_examples() {
        let c = ctx(5, 2);
        let d = PadicTriangularMatrix::new(c, RationalMatrix::diagonal(&[qr(1, 5), q(1)])).unwrap();
        assert_eq!(length(&d), q(2));
        assert_eq!(length(&d.inverse()), q(2));
        assert_eq!(length(&unip(c, &[((0, 1), qr(1, 125))])), q(3));
        assert_eq!(length(&unip(c, &[])), q(0));
    }

    #[test]
    fn hand_pair_product() {
        let c = ctx(2, 3);
        let a = unip(c, &[((0, 1), qr(1, 2))]);
        let b = unip(c, &[((1, 2), qr(1, 2))]);
        let ab = a.mul(&b);
        assert_eq!(ab.matrix()[(0, 2)], qr(1, 4));
        assert_eq!(ultranorm_log(&ab).unwrap(), LogNorm::Value(q(1)));
    }

    #[test]
    fn conjugation_example() {
        let c = ctx(7, 2);
        let d = PadicTriangularMatrix::new(c, RationalMatrix::diagonal(&[qr(1, 7), q(1)])).unwrap();
        let u = unip(c, &[((0, 1), qr(1, 7))]);
        let conj = d.inverse().mul(&u).mul(&d);
        // exponent ≤ 2·1 + 1
        assert!(ultranorm_log(&conj).unwrap() <= LogNorm::Value(q(3)));
    }

    #[test]
    fn scaling_shortcuts_match_products() {
        let c = ctx(3, 3);
        let u = unip(c, &[((0, 1), qr(2, 9)), ((0, 2), q(-27)), ((1, 2), qr(5, 3))]);
        let d = PadicTriangularMatrix::new(c, RationalMatrix::diagonal(&[qr(1, 3), q(9), qr(-2, 7)])).unwrap();
        let e = d.diagonal_entries();
        assert_eq!(u.conjugate_by_diagonal(&e), d.inverse().mul(&u).mul(&d));
        assert_eq!(u.scale_rows(&e), d.mul(&u));
        assert_eq!(c.shrink_power(-2), c.shrink_matrix().pow(-2));
        let g = d.mul(&u);
        assert_eq!(g.mul(&g.inverse()).matrix(), &RationalMatrix::identity(3));
        let (dd, uu) = g.decompose();
        assert_eq!((dd, uu), (d, u));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(PadicContext::new(9, 2), Err(PadicError::NotPrime(9)));
        let c = ctx(2, 2);
        let lower = RationalMatrix::from_i64(&[&[1, 0], &[1, 1]]);
        assert_eq!(PadicTriangularMatrix::new(c, lower), Err(PadicError::NotTriangular(2, 1)));
        let sing = RationalMatrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(PadicTriangularMatrix::new(c, sing), Err(PadicError::SingularDiagonal(2)));
    }

    #[test]
    fn conedim_examples() {
        for n in 1..=4 {
            assert_eq!(padic_conedim(&upper_triangular_data(n)).unwrap(), n);
        }
        let sl2 = SplitTorusData {
            split_torus_dim: 1,
            unipotent_basis: vec![],
            action: vec![RationalMatrix::zeros(0, 0)],
        };
        assert_eq!(padic_conedim(&sl2).unwrap(), 1);
        let bare = SplitTorusData {
            split_torus_dim: 0,
            unipotent_basis: vec!["e".into()],
            action: vec![],
        };
        assert_eq!(
            padic_conedim(&bare),
            Err(PadicError::NotCompactlyGenerated { missing: vec!["e".into()] })
        );
    }
}
