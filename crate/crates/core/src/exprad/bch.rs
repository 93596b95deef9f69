//! Baker–Campbell–Hausdorff products in nilpotent algebras, numerically
//! exact and symbolically (polynomials in the coordinates of both factors).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactmath::Q;
use crate::liealg::LieAlgebra;

/// Coefficients of the right-nested words `[w1,[w2,…[w_{m-1},w_m]]]` in
/// Dynkin's form of the BCH series, for words of length `1..=max_len`
/// over `{X = false, Y = true}`. Words whose value is trivially zero are
/// omitted.
pub fn dynkin_coefficients(max_len: usize) -> Vec<(Vec<bool>, Q)> {
    let mut out = Vec::new();
    for m in 1..=max_len {
        for code in 0u64..(1u64 << m) {
            let word: Vec<bool> = (0..m).map(|i| code >> (m - 1 - i) & 1 == 1).collect();
            if m >= 2 && word[m - 1] == word[m - 2] {
                continue;
            }
            let c = word_coefficient(&word);
            if !c.is_zero() {
                out.push((word, c));
            }
        }
    }
    out
}

/// Σ over splittings of the word into k blocks X^r Y^s (r+s > 0) of
/// (−1)^{k−1} / (k · m · Π r! s!).
fn word_coefficient(word: &[bool]) -> Q {
    let m = word.len();
    // dp[pos][k] = Σ Π 1/(r!s!) over splittings of word[..pos] into k blocks
    let mut dp = vec![vec![Q::zero(); m + 1]; m + 1];
    dp[0][0] = Q::one();
    for pos in 0..m {
        for k in 0..m {
            if dp[pos][k].is_zero() {
                continue;
            }
            // block starting at pos: X^r then Y^s
            let mut r = 0;
            while pos + r < m && !word[pos + r] {
                r += 1;
            }
            for rr in 0..=r {
                // rr X's (must take a prefix of the X-run), then s Y's
                let after_x = pos + rr;
                let mut s_max = 0;
                if rr == r {
                    while after_x + s_max < m && word[after_x + s_max] {
                        s_max += 1;
                    }
                }
                for s in 0..=s_max {
                    if rr + s == 0 {
                        continue;
                    }
                    let w = Q::one() / (factorial(rr) * factorial(s));
                    let add = &dp[pos][k] * w;
                    dp[after_x + s][k + 1] += add;
                }
            }
        }
    }
    let mut total = Q::zero();
    for k in 1..=m {
        if dp[m][k].is_zero() {
            continue;
        }
        let sign = if k % 2 == 1 { Q::one() } else { -Q::one() };
        total += sign * &dp[m][k] / Q::from_integer((k * m).into());
    }
    total
}

fn factorial(n: usize) -> Q {
    Q::from_integer((1..=n as u64).product::<u64>().max(1).into())
}

fn nested_bracket<T: Clone>(word: &[bool], x: &T, y: &T, bracket: &dyn Fn(&T, &T) -> T) -> T {
    let pick = |b: bool| if b { y.clone() } else { x.clone() };
    let mut acc = pick(word[word.len() - 1]);
    for &b in word[..word.len() - 1].iter().rev() {
        acc = bracket(&pick(b), &acc);
    }
    acc
}

/// `log(exp X · exp Y)` in a nilpotent algebra of class ≤ `class`.
pub fn bch(g: &LieAlgebra, class: usize, x: &[Q], y: &[Q]) -> Vec<Q> {
    let mut z = vec![Q::zero(); g.dim()];
    let br = |a: &Vec<Q>, b: &Vec<Q>| g.bracket(a, b);
    for (word, c) in dynkin_coefficients(class) {
        let t = nested_bracket(&word, &x.to_vec(), &y.to_vec(), &br);
        for (zi, ti) in z.iter_mut().zip(t) {
            *zi += &c * ti;
        }
    }
    z
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Vec<u32>, Q>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, Q::one());
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        let entry = self.terms.entry(e).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_scaled(&mut self, other: &MPoly, c: &Q) {
        for (e, v) in &other.terms {
            self.add_term(e.clone(), v * c);
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut total = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = crate::exactmath::to_f64(c);
                for (x, &k) in point.iter().zip(e) {
                    t *= x.powi(k as i32);
                }
                t
            })
            .sum()
    }

    /// Render with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut mono = Vec::new();
            for (n, &k) in names.iter().zip(e) {
                match k {
                    0 => {}
                    1 => mono.push(n.clone()),
                    _ => mono.push(format!("{n}^{k}")),
                }
            }
            let coeff = crate::exactmath::fmt_rational(c);
            parts.push(if mono.is_empty() {
                coeff
            } else if c.is_one() {
                mono.join("*")
            } else {
                format!("{coeff}*{}", mono.join("*"))
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Vector-valued polynomial bracket in `g`.
fn bracket_poly(g: &LieAlgebra, a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let n = g.dim();
    let mut out = vec![MPoly::zero(); n];
    for (&(i, j), v) in g.structure_constants() {
        // (a_i b_j − a_j b_i) · [e_i, e_j]
        if (a[i].is_zero() || b[j].is_zero()) && (a[j].is_zero() || b[i].is_zero()) {
            continue;
        }
        let mut w = a[i].mul(&b[j]);
        w.add_scaled(&a[j].mul(&b[i]), &-Q::one());
        if w.is_zero() {
            continue;
        }
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out[k].add_scaled(&w, c);
            }
        }
    }
    out
}

/// Symbolic BCH product of `X = Σ x_i e_{idx_i}` and `Y = Σ y_i e_{idx_i}`
/// where `idx` selects the coordinates that vary. Variables are ordered
/// `x_1..x_k, y_1..y_k`.
pub fn bch_symbolic(g: &LieAlgebra, class: usize, idx: &[usize]) -> Vec<MPoly> {
    let n = g.dim();
    let k = idx.len();
    let mut x = vec![MPoly::zero(); n];
    let mut y = vec![MPoly::zero(); n];
    for (v, &i) in idx.iter().enumerate() {
        x[i] = MPoly::var(2 * k, v);
        y[i] = MPoly::var(2 * k, k + v);
    }
    let mut z = vec![MPoly::zero(); n];
    let br = |a: &Vec<MPoly>, b: &Vec<MPoly>| bracket_poly(g, a, b);
    for (word, c) in dynkin_coefficients(class) {
        let t = nested_bracket(&word, &x, &y, &br);
        for (zi, ti) in z.iter_mut().zip(&t) {
            zi.add_scaled(ti, &c);
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{q, qr};
    use crate::liealg::LieAlgebra;

    fn filiform(n: usize) -> LieAlgebra {
        // [e0, e_i] = e_{i+1} for 1 ≤ i < n−1: class n−1
        let names = (0..n).map(|i| format!("e{i}")).collect();
        LieAlgebra::from_table("filiform", names, |i, j| {
            let mut v = vec![q(0); n];
            if i == 0 && j >= 1 && j + 1 < n {
                v[j + 1] = q(1);
            }
            v
        })
        .unwrap()
    }

    #[test]
    fn matches_third_order_formula() {
        let g = filiform(4);
        let x = vec![q(1), qr(2, 3), q(-1), q(2)];
        let y = vec![q(-2), q(1), qr(1, 5), q(0)];
        let xy = g.bracket(&x, &y);
        let xxy = g.bracket(&x, &xy);
        let yxy = g.bracket(&y, &xy);
        let expect: Vec<Q> = (0..4)
            .map(|i| &x[i] + &y[i] + qr(1, 2) * &xy[i] + qr(1, 12) * &xxy[i] - qr(1, 12) * &yxy[i])
            .collect();
        assert_eq!(bch(&g, 3, &x, &y), expect);
    }

    #[test]
    fn associative_in_class_four() {
        let g = filiform(5);
        let a = vec![q(1), q(2), qr(-1, 2), q(3), q(0)];
        let b = vec![q(-1), q(1), q(1), qr(2, 7), q(5)];
        let c = vec![qr(3, 2), q(0), q(-4), q(1), q(1)];
        let left = bch(&g, 4, &bch(&g, 4, &a, &b), &c);
        let right = bch(&g, 4, &a, &bch(&g, 4, &b, &c));
        assert_eq!(left, right);
        let neg: Vec<Q> = a.iter().map(|t| -t).collect();
        assert!(bch(&g, 4, &a, &neg).iter().all(|t| t.is_zero()));
    }

    fn heisenberg() -> LieAlgebra {
        let names = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        LieAlgebra::from_table("h3", names, |i, j| match (i, j) {
            (0, 1) => vec![q(0), q(0), q(1)],
            _ => vec![q(0); 3],
        })
        .unwrap()
    }

    #[test]
    fn heisenberg_product() {
        let g = heisenberg();
        let z = bch(&g, 2, &[q(1), q(0), q(0)], &[q(0), q(1), q(0)]);
        assert_eq!(z, vec![q(1), q(1), qr(1, 2)]);
        let s = bch_symbolic(&g, 2, &[0, 1]);
        let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        assert_eq!(s[2].render(&names), "-1/2*b*c + 1/2*a*d");
    }
}
