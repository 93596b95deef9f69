//! Dense univariate polynomials with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, q, Q};

/// Polynomial stored lowest degree first; trailing zeros are always trimmed,
/// so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Q>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `c·λ^k`
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The indeterminate `λ`.
    pub fn x() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&(Q::one() / lc))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * q(k as i64))
                .collect(),
        )
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Polynomial::zero(), self.clone());
        }
        let inv = Q::one() / d.leading();
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn rem(&self, d: &Polynomial) -> Polynomial {
        self.div_rem(d).1
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn exact_div(&self, d: &Polynomial) -> Polynomial {
        let (quot, rem) = self.div_rem(d);
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        quot
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn pow(&self, k: usize) -> Polynomial {
        (0..k).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// Splits off the largest power of `λ`: returns `(m, q)` with `p = λ^m·q`
    /// and `q(0) ≠ 0`.
    pub fn strip_zero_roots(&self) -> (usize, Polynomial) {
        let m = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (m, Polynomial::new(self.coeffs[m..].to_vec()))
    }

    /// If only even powers occur, returns `r` with `p(λ) = r(λ²)`.
    pub fn even_part_as_square(&self) -> Option<Polynomial> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Polynomial::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }

    /// `p(-λ)`
    pub fn reflect(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Writes `p(i·y) = A(y) + i·B(y)` and returns `(A, B)`.
    pub fn split_on_imaginary_axis(&self) -> (Polynomial, Polynomial) {
        let mut re = vec![Q::zero(); self.coeffs.len()];
        let mut im = vec![Q::zero(); self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            match k % 4 {
                0 => re[k] = c.clone(),
                1 => im[k] = c.clone(),
                2 => re[k] = -c,
                _ => im[k] = -c,
            }
        }
        (Polynomial::new(re), Polynomial::new(im))
    }

    /// Yun's algorithm: `p = c·∏ fᵢ^i` with every `fᵢ` monic, squarefree and
    /// pairwise coprime. Factors equal to 1 are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Polynomial, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.exact_div(&a);
        let mut c = df.exact_div(&a);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            b = b.exact_div(&g);
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.exact_div(&g);
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Monic squarefree part: the product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Polynomial {
        if self.degree().unwrap_or(0) == 0 {
            return Polynomial::one();
        }
        let f = self.monic();
        f.exact_div(&f.gcd(&f.derivative()))
    }

    /// Multiplies through by the lcm of denominators and divides by the content,
    /// returning a primitive integer polynomial with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<num_bigint::BigInt> {
        use num_integer::Integer;
        let mut lcm = num_bigint::BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<num_bigint::BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = num_bigint::BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return ints;
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
        ints
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", fmt_rational(&mag))?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}λ", if show_coeff { "·" } else { "" })?,
                _ => write!(f, "{}λ^{}", if show_coeff { "·" } else { "" }, k)?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::qr;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    #[test]
    fn division_and_gcd() {
        // (λ-1)(λ+2) and (λ-1)(λ-3)
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[-3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (quo, rem) = a.div_rem(&p(&[-1, 1]));
        assert_eq!(quo, p(&[2, 1]));
        assert!(rem.is_zero());
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // λ^2 (λ-1)^3 (λ^2+1)
        let f = &(&p(&[0, 1]).pow(2) * &p(&[-1, 1]).pow(3)) * &p(&[1, 0, 1]);
        let dec = f.squarefree_decomposition();
        assert_eq!(
            dec,
            vec![(p(&[1, 0, 1]), 1), (p(&[0, 1]), 2), (p(&[-1, 1]), 3)]
        );
        let rebuilt = dec
            .iter()
            .fold(Polynomial::one(), |acc, (g, m)| &acc * &g.pow(*m));
        assert_eq!(rebuilt, f.monic());
    }

    #[test]
    fn imaginary_axis_split() {
        // p(λ) = λ² + 1 ⇒ p(iy) = 1 - y²
        let (a, b) = p(&[1, 0, 1]).split_on_imaginary_axis();
        assert_eq!(a, p(&[1, 0, -1]));
        assert!(b.is_zero());
        // p(λ) = λ - 2 ⇒ p(iy) = -2 + i·y
        let (a, b) = p(&[-2, 1]).split_on_imaginary_axis();
        assert_eq!(a, p(&[-2]));
        assert_eq!(b, p(&[0, 1]));
    }

    #[test]
    fn primitive_integer_form() {
        let f = Polynomial::new(vec![qr(1, 2), qr(-3, 4), qr(-1, 4)]);
        let ints: Vec<i64> = f
            .primitive_integer()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        assert_eq!(ints, vec![-2, 3, 1]);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 1]).to_string(), "λ^2 + 1");
        assert_eq!(p(&[0, -1, 0, 1]).to_string(), "λ^3 - λ");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }
}
