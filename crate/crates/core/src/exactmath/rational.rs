//! Rational scalars and small helpers around [`BigRational`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used everywhere in the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Parses `"3"`, `"-2/5"` or `"+7/1"`.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// Canonical `p/q` rendering (`p` alone when the denominator is 1).
pub fn fmt_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // huge values: go through the logarithm of numerator and denominator
        let sign = if x.is_negative() { -1.0 } else { 1.0 };
        let ln = ln_abs_bigint(x.numer()) - ln_abs_bigint(x.denom());
        sign * ln.exp()
    })
}

fn ln_abs_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.abs().to_f64().unwrap_or(f64::MAX).ln();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Dot product of two coordinate vectors.
pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn fmt_vector(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        assert_eq!(parse_rational("-6/4"), Some(qr(-3, 2)));
        assert_eq!(fmt_rational(&qr(-3, 2)), "-3/2");
        assert_eq!(fmt_rational(&q(4)), "4");
        assert_eq!(parse_rational("+7"), Some(q(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn float_conversion_of_huge_values() {
        let big = Q::from_integer(BigInt::from(10).pow(400));
        let small = Q::new(BigInt::one(), BigInt::from(3));
        assert!((to_f64(&small) - 1.0 / 3.0).abs() < 1e-15);
        assert!(to_f64(&big).is_infinite() || to_f64(&big) > 1e300);
    }
}

/// `serialize_with` helper: rationals as `"p/q"` strings.
pub fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(x))
}
