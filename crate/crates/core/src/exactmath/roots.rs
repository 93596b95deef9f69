//! Sturm sequences and exact root-location certificates.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::poly::Polynomial;
use super::rational::Q;
use super::MathError;

/// Where the complex roots of a rational polynomial lie, counted with
/// multiplicity.
///
/// `zero_multiplicity + real_positive + real_negative
///  + 2·(pure_imaginary_pairs + other_complex_pairs) = degree`
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootLocationCertificate {
    pub degree: usize,
    pub zero_multiplicity: usize,
    pub real_positive: usize,
    pub real_negative: usize,
    pub pure_imaginary_pairs: usize,
    pub other_complex_pairs: usize,
    pub method_trace: String,
}

impl RootLocationCertificate {
    pub fn all_purely_imaginary(&self) -> bool {
        self.zero_multiplicity + 2 * self.pure_imaginary_pairs == self.degree
    }

    pub fn all_real(&self) -> bool {
        self.zero_multiplicity + self.real_positive + self.real_negative == self.degree
    }

    /// Number of roots (with multiplicity) whose real part is nonzero.
    pub fn nonzero_real_part(&self) -> usize {
        self.real_positive + self.real_negative + 2 * self.other_complex_pairs
    }

    pub fn is_consistent(&self) -> bool {
        self.zero_multiplicity
            + self.real_positive
            + self.real_negative
            + 2 * (self.pure_imaginary_pairs + self.other_complex_pairs)
            == self.degree
    }
}

/// Canonical Sturm chain `p, p', -rem(p, p'), ...`.
pub fn sturm_sequence(p: &Polynomial) -> Vec<Polynomial> {
    let mut seq = vec![p.clone()];
    if p.degree().unwrap_or(0) == 0 {
        return seq;
    }
    seq.push(p.derivative());
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn count_sign_changes<I: Iterator<Item = i8>>(signs: I) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn changes_at(seq: &[Polynomial], x: &Q) -> usize {
    count_sign_changes(seq.iter().map(|s| sign(&s.eval(x))))
}

fn changes_at_pos_inf(seq: &[Polynomial]) -> usize {
    count_sign_changes(seq.iter().map(|s| sign(&s.leading())))
}

fn changes_at_neg_inf(seq: &[Polynomial]) -> usize {
    count_sign_changes(seq.iter().map(|s| {
        let lc = sign(&s.leading());
        if s.degree().unwrap_or(0) % 2 == 1 {
            -lc
        } else {
            lc
        }
    }))
}

/// An endpoint of a real interval.
#[derive(Clone, Debug)]
pub enum Bound {
    NegInf,
    At(Q),
    PosInf,
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn count_distinct_real_roots(p: &Polynomial, a: &Bound, b: &Bound) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(&p.squarefree_part());
    let at = |bound: &Bound| match bound {
        Bound::NegInf => changes_at_neg_inf(&seq),
        Bound::PosInf => changes_at_pos_inf(&seq),
        Bound::At(x) => changes_at(&seq, x),
    };
    at(a).saturating_sub(at(b))
}

/// Classifies every root of `p` by location, exactly.
///
/// Real roots are counted by Sturm chains on each squarefree factor. Roots on
/// the imaginary axis are the `iy` with `y` a real root of `gcd(A, B)` where
/// `f(iy) = A(y) + i·B(y)`; those come in conjugate pairs.
pub fn root_location_certificate(p: &Polynomial) -> Result<RootLocationCertificate, MathError> {
    let degree = p.degree().ok_or(MathError::ZeroPolynomial)?;
    let mut trace = String::new();
    let (zero_multiplicity, rest) = p.strip_zero_roots();
    let _ = writeln!(trace, "strip λ^{zero_multiplicity}; remaining {rest}");
    let mut cert = RootLocationCertificate {
        degree,
        zero_multiplicity,
        real_positive: 0,
        real_negative: 0,
        pure_imaginary_pairs: 0,
        other_complex_pairs: 0,
        method_trace: String::new(),
    };
    let zero = Q::zero();
    for (f, mult) in rest.squarefree_decomposition() {
        let deg = f.degree().unwrap_or(0);
        let pos = count_distinct_real_roots(&f, &Bound::At(zero.clone()), &Bound::PosInf);
        let neg = count_distinct_real_roots(&f, &Bound::NegInf, &Bound::At(zero.clone()));
        let nonreal = deg - pos - neg;
        let (re, im) = f.split_on_imaginary_axis();
        let axis = re.gcd(&im);
        let axis_roots = if axis.is_zero() {
            0
        } else {
            count_distinct_real_roots(&axis, &Bound::NegInf, &Bound::PosInf)
        };
        let imag_pairs = axis_roots / 2;
        let _ = writeln!(
            trace,
            "factor ({f})^{mult}: sturm(0,+inf]={pos} sturm(-inf,0]={neg} \
             non-real={nonreal} gcd(Re,Im)={axis} axis-roots={axis_roots}"
        );
        cert.real_positive += mult * pos;
        cert.real_negative += mult * neg;
        cert.pure_imaginary_pairs += mult * imag_pairs;
        cert.other_complex_pairs += mult * (nonreal / 2 - imag_pairs);
    }
    cert.method_trace = trace;
    debug_assert!(cert.is_consistent());
    Ok(cert)
}

/// Decides "every root is purely imaginary or zero" without any counting of
/// complex roots: strip `λ^m`, require `q(λ) = r(λ²)`, then require every root
/// of `r` to be real and negative.
pub fn all_roots_purely_imaginary(p: &Polynomial) -> Result<bool, MathError> {
    if p.is_zero() {
        return Err(MathError::ZeroPolynomial);
    }
    let (_, q) = p.strip_zero_roots();
    let Some(r) = q.even_part_as_square() else {
        return Ok(false);
    };
    let zero = Q::zero();
    let negative: usize = r
        .squarefree_decomposition()
        .iter()
        .map(|(f, m)| m * count_distinct_real_roots(f, &Bound::NegInf, &Bound::At(zero.clone())))
        .sum();
    Ok(negative == r.degree().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{q, qr};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    #[test]
    fn rotation_generator_is_pure_imaginary() {
        let c = root_location_certificate(&p(&[1, 0, 1])).unwrap();
        assert_eq!(c.pure_imaginary_pairs, 1);
        assert_eq!(c.other_complex_pairs, 0);
        assert!(c.all_purely_imaginary());
        assert!(!c.all_real());
    }

    #[test]
    fn one_plus_minus_i() {
        // λ² - 2λ + 2 has roots 1 ± i
        let c = root_location_certificate(&p(&[2, -2, 1])).unwrap();
        assert_eq!(c.other_complex_pairs, 1);
        assert_eq!(c.pure_imaginary_pairs, 0);
        assert_eq!(c.nonzero_real_part(), 2);
    }

    #[test]
    fn cubic_with_zero_root() {
        let c = root_location_certificate(&p(&[0, -1, 0, 1])).unwrap();
        assert_eq!(
            (c.zero_multiplicity, c.real_positive, c.real_negative),
            (1, 1, 1)
        );
        assert!(c.all_real());
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(
            root_location_certificate(&Polynomial::zero()),
            Err(MathError::ZeroPolynomial)
        );
        assert!(all_roots_purely_imaginary(&Polynomial::zero()).is_err());
    }

    #[test]
    fn multiplicities_are_counted() {
        // (λ²+1)² (λ-3)³ λ
        let f = &(&p(&[1, 0, 1]).pow(2) * &p(&[-3, 1]).pow(3)) * &p(&[0, 1]);
        let c = root_location_certificate(&f).unwrap();
        assert_eq!(c.pure_imaginary_pairs, 2);
        assert_eq!(c.real_positive, 3);
        assert_eq!(c.zero_multiplicity, 1);
        assert!(c.is_consistent());
    }

    #[test]
    fn interval_counts() {
        // roots 1, 2, 3
        let f = &(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[-3, 1]);
        let n = |a: Q, b: Q| count_distinct_real_roots(&f, &Bound::At(a), &Bound::At(b));
        assert_eq!(n(q(0), q(4)), 3);
        assert_eq!(n(qr(3, 2), qr(5, 2)), 1);
        assert_eq!(n(q(1), q(2)), 1); // (1, 2]
        assert_eq!(n(q(4), q(9)), 0);
    }

    #[test]
    fn even_reduction_agrees_with_certificate() {
        for coeffs in [
            vec![1, 0, 1],
            vec![4, 0, 5, 0, 1],
            vec![0, 0, 1, 0, 1],
            vec![-1, 0, 1],
            vec![1, 0, 1, 0, 1],
            vec![2, -2, 1],
        ] {
            let f = p(&coeffs);
            assert_eq!(
                all_roots_purely_imaginary(&f).unwrap(),
                root_location_certificate(&f).unwrap().all_purely_imaginary(),
                "{f}"
            );
        }
    }
}
