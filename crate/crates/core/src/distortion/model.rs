//! Exact canonical forms for a handful of finitely generated solvable groups.

use std::fmt;

use super::DistortionError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// BS(1,n) = Z[1/n] ⋊ Z, `t` acting by multiplication by n.
    BaumslagSolitar { n: i64 },
    /// Z² ⋊_A Z with |det A| = 1.
    SolLattice { a: [[i64; 2]; 2] },
    /// Z/n ≀ Z.
    Lamplighter { n: u32 },
    HeisenbergZ,
    FreeAbelian { k: usize },
}

/// Canonical forms; structural equality is group equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// `(num / n^exp, shift)`, with `exp = 0` or `n ∤ num`.
    Bs { num: i128, exp: u32, shift: i64 },
    Sol { v: [i128; 2], shift: i64 },
    /// Nonzero lamps sorted by position, values in 1..n.
    Lamp { lamps: Vec<(i64, u32)>, pos: i64 },
    Heis([i64; 3]),
    Zk(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupModel {
    pub kind: ModelKind,
    pub spec: String,
    pub generators: Vec<(String, GroupElement)>,
}

fn parse_int<T: std::str::FromStr>(s: &str, spec: &str) -> Result<T, DistortionError> {
    s.trim()
        .parse()
        .map_err(|_| DistortionError::Parse(format!("bad integer {s:?} in model spec {spec:?}")))
}

/// Parses `bs:1:<n>`, `sol:<a>,<b>,<c>,<d>`, `lamp:<n>`, `heis`, `zk:<k>`.
pub fn build_model(spec: &str) -> Result<GroupModel, DistortionError> {
    let parts: Vec<&str> = spec.trim().split(':').collect();
    let kind = match parts.as_slice() {
        ["bs", one, n] => {
            if one.trim() != "1" {
                return Err(DistortionError::Parse(format!("only bs:1:<n> is supported, got {spec:?}")));
            }
            let n: i64 = parse_int(n, spec)?;
            if n < 2 {
                return Err(DistortionError::Parse(format!("bs needs n ≥ 2, got {n}")));
            }
            ModelKind::BaumslagSolitar { n }
        }
        ["sol", entries] => {
            let e: Vec<i64> = entries
                .split(',')
                .map(|x| parse_int(x, spec))
                .collect::<Result<_, _>>()?;
            if e.len() != 4 {
                return Err(DistortionError::Parse(format!("sol needs 4 entries, got {}", e.len())));
            }
            let det = e[0] * e[3] - e[1] * e[2];
            if det.abs() != 1 {
                return Err(DistortionError::NonInvertibleAction { det });
            }
            ModelKind::SolLattice {
                a: [[e[0], e[1]], [e[2], e[3]]],
            }
        }
        ["lamp", n] => {
            let n: u32 = parse_int(n, spec)?;
            if n < 2 {
                return Err(DistortionError::Parse(format!("lamp needs n ≥ 2, got {n}")));
            }
            ModelKind::Lamplighter { n }
        }
        ["heis"] => ModelKind::HeisenbergZ,
        ["zk", k] => {
            let k: usize = parse_int(k, spec)?;
            if k == 0 {
                return Err(DistortionError::Parse("zk needs k ≥ 1".into()));
            }
            ModelKind::FreeAbelian { k }
        }
        _ => return Err(DistortionError::Parse(format!("unknown model spec {spec:?}"))),
    };
    Ok(GroupModel::new(kind, spec.trim()))
}

fn mat_mul(a: &[[i128; 2]; 2], b: &[[i128; 2]; 2]) -> [[i128; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn ipow(n: i64, e: u32) -> i128 {
    (n as i128).checked_pow(e).expect("coordinate overflow")
}

impl GroupModel {
    fn new(kind: ModelKind, spec: &str) -> Self {
        let mut m = GroupModel {
            kind,
            spec: spec.to_string(),
            generators: Vec::new(),
        };
        let base: Vec<(String, GroupElement)> = match &m.kind {
            ModelKind::BaumslagSolitar { .. } => vec![
                ("a".into(), GroupElement::Bs { num: 1, exp: 0, shift: 0 }),
                ("t".into(), GroupElement::Bs { num: 0, exp: 0, shift: 1 }),
            ],
            ModelKind::SolLattice { .. } => vec![
                ("x".into(), GroupElement::Sol { v: [1, 0], shift: 0 }),
                ("y".into(), GroupElement::Sol { v: [0, 1], shift: 0 }),
                ("t".into(), GroupElement::Sol { v: [0, 0], shift: 1 }),
            ],
            ModelKind::Lamplighter { .. } => vec![
                ("a".into(), GroupElement::Lamp { lamps: vec![(0, 1)], pos: 0 }),
                ("t".into(), GroupElement::Lamp { lamps: vec![], pos: 1 }),
            ],
            ModelKind::HeisenbergZ => vec![
                ("x".into(), GroupElement::Heis([1, 0, 0])),
                ("y".into(), GroupElement::Heis([0, 1, 0])),
            ],
            ModelKind::FreeAbelian { k } => (0..*k)
                .map(|i| {
                    let mut v = vec![0; *k];
                    v[i] = 1;
                    (format!("e{}", i + 1), GroupElement::Zk(v))
                })
                .collect(),
        };
        for (name, g) in base {
            let inv = m.inverse(&g);
            m.generators.push((name.clone(), g.clone()));
            if inv != g {
                m.generators.push((format!("{name}^-1"), inv));
            }
        }
        m
    }

    pub fn identity(&self) -> GroupElement {
        match &self.kind {
            ModelKind::BaumslagSolitar { .. } => GroupElement::Bs { num: 0, exp: 0, shift: 0 },
            ModelKind::SolLattice { .. } => GroupElement::Sol { v: [0, 0], shift: 0 },
            ModelKind::Lamplighter { .. } => GroupElement::Lamp { lamps: vec![], pos: 0 },
            ModelKind::HeisenbergZ => GroupElement::Heis([0; 3]),
            ModelKind::FreeAbelian { k } => GroupElement::Zk(vec![0; *k]),
        }
    }

    /// A^k for the sol action (k may be negative; det = ±1 keeps it integral).
    fn action_power(&self, k: i64) -> [[i128; 2]; 2] {
        let ModelKind::SolLattice { a } = &self.kind else {
            unreachable!("sol action on a non-sol model")
        };
        let det = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) as i128;
        let fwd = [[a[0][0] as i128, a[0][1] as i128], [a[1][0] as i128, a[1][1] as i128]];
        let inv = [[det * fwd[1][1], -det * fwd[0][1]], [-det * fwd[1][0], det * fwd[0][0]]];
        let step = if k >= 0 { fwd } else { inv };
        let mut m = [[1, 0], [0, 1]];
        for _ in 0..k.unsigned_abs() {
            m = mat_mul(&m, &step);
        }
        m
    }

    fn bs_normalize(n: i64, mut num: i128, mut exp: u32, shift: i64) -> GroupElement {
        if num == 0 {
            exp = 0;
        }
        while exp > 0 && num % n as i128 == 0 {
            num /= n as i128;
            exp -= 1;
        }
        GroupElement::Bs { num, exp, shift }
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        use GroupElement as E;
        match (&self.kind, g, h) {
            (ModelKind::BaumslagSolitar { n }, E::Bs { num: a, exp: e, shift: k }, E::Bs { num: b, exp: f, shift: m }) => {
                // (x,k)(y,m) = (x + n^k y, k+m)
                let (b, f) = {
                    let f2 = *f as i64 - k;
                    if f2 >= 0 {
                        (*b, f2 as u32)
                    } else {
                        (b * ipow(*n, (-f2) as u32), 0)
                    }
                };
                let big = (*e).max(f);
                let num = a * ipow(*n, big - e) + b * ipow(*n, big - f);
                Self::bs_normalize(*n, num, big, k + m)
            }
            (ModelKind::SolLattice { .. }, E::Sol { v, shift: k }, E::Sol { v: w, shift: m }) => {
                let p = self.action_power(*k);
                E::Sol {
                    v: [
                        v[0] + p[0][0] * w[0] + p[0][1] * w[1],
                        v[1] + p[1][0] * w[0] + p[1][1] * w[1],
                    ],
                    shift: k + m,
                }
            }
            (ModelKind::Lamplighter { n }, E::Lamp { lamps: f, pos: p }, E::Lamp { lamps: g, pos: q }) => {
                let mut out: Vec<(i64, u32)> = Vec::with_capacity(f.len() + g.len());
                let (mut i, mut j) = (0, 0);
                while i < f.len() || j < g.len() {
                    let gi = g.get(j).map(|&(x, v)| (x + p, v));
                    match (f.get(i), gi) {
                        (Some(&(x, v)), Some((y, w))) if x == y => {
                            let s = (v + w) % n;
                            if s != 0 {
                                out.push((x, s));
                            }
                            i += 1;
                            j += 1;
                        }
                        (Some(&(x, v)), Some((y, _))) if x < y => {
                            out.push((x, v));
                            i += 1;
                        }
                        (Some(&(x, v)), None) => {
                            out.push((x, v));
                            i += 1;
                        }
                        (_, Some((y, w))) => {
                            out.push((y, w));
                            j += 1;
                        }
                        (None, None) => unreachable!(),
                    }
                }
                E::Lamp { lamps: out, pos: p + q }
            }
            (ModelKind::HeisenbergZ, E::Heis(a), E::Heis(b)) => {
                E::Heis([a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]])
            }
            (ModelKind::FreeAbelian { .. }, E::Zk(a), E::Zk(b)) => {
                E::Zk(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => panic!("element does not belong to model {}", self.spec),
        }
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        use GroupElement as E;
        match (&self.kind, g) {
            (ModelKind::BaumslagSolitar { n }, E::Bs { num, exp, shift }) => {
                // (x,k)⁻¹ = (−n^{−k} x, −k)
                let e2 = *exp as i64 + shift;
                if e2 >= 0 {
                    Self::bs_normalize(*n, -num, e2 as u32, -shift)
                } else {
                    Self::bs_normalize(*n, -num * ipow(*n, (-e2) as u32), 0, -shift)
                }
            }
            (ModelKind::SolLattice { .. }, E::Sol { v, shift }) => {
                let p = self.action_power(-shift);
                E::Sol {
                    v: [-(p[0][0] * v[0] + p[0][1] * v[1]), -(p[1][0] * v[0] + p[1][1] * v[1])],
                    shift: -shift,
                }
            }
            (ModelKind::Lamplighter { n }, E::Lamp { lamps, pos }) => E::Lamp {
                lamps: lamps.iter().map(|&(x, v)| (x - pos, n - v)).collect(),
                pos: -pos,
            },
            (ModelKind::HeisenbergZ, E::Heis(a)) => E::Heis([-a[0], -a[1], -a[2] + a[0] * a[1]]),
            (ModelKind::FreeAbelian { .. }, E::Zk(a)) => E::Zk(a.iter().map(|x| -x).collect()),
            _ => panic!("element does not belong to model {}", self.spec),
        }
    }

    /// Product of a word of generator indices.
    pub fn word(&self, letters: &[usize]) -> GroupElement {
        letters
            .iter()
            .fold(self.identity(), |acc, &i| self.mul(&acc, &self.generators[i].1))
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|(n, _)| n == name)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Bs { num, exp, shift } if *exp == 0 => write!(f, "({num}, {shift})"),
            GroupElement::Bs { num, exp, shift } => write!(f, "({num}/n^{exp}, {shift})"),
            GroupElement::Sol { v, shift } => write!(f, "(({}, {}), {shift})", v[0], v[1]),
            GroupElement::Lamp { lamps, pos } => {
                let l: Vec<String> = lamps.iter().map(|(x, v)| format!("{x}:{v}")).collect();
                write!(f, "({{{}}}, {pos})", l.join(","))
            }
            GroupElement::Heis(a) => write!(f, "({}, {}, {})", a[0], a[1], a[2]),
            GroupElement::Zk(v) => {
                let l: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", l.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        let bs = build_model("bs:1:2").unwrap();
        let names: Vec<&str> = bs.generators.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["a", "a^-1", "t", "t^-1"]);
        assert_eq!(
            build_model("sol:2,1,1,1").unwrap().kind,
            ModelKind::SolLattice { a: [[2, 1], [1, 1]] }
        );
        assert_eq!(build_model("sol:2,0,0,2"), Err(DistortionError::NonInvertibleAction { det: 4 }));
        assert!(matches!(build_model("bs:2:3"), Err(DistortionError::Parse(_))));
        assert!(matches!(build_model("tree"), Err(DistortionError::Parse(_))));
        assert_eq!(build_model("zk:3").unwrap().generators.len(), 6);
        // Z/2: a is its own inverse
        assert_eq!(build_model("lamp:2").unwrap().generators.len(), 3);
    }

    #[test]
    fn conjugation_identities() {
        let bs = build_model("bs:1:2").unwrap();
        let (a, t, ti) = (0, 2, 3);
        // t a t⁻¹ = a²
        assert_eq!(bs.word(&[t, a, ti]), bs.word(&[a, a]));
        // t⁻¹ a t = "a^{1/2}"
        assert_eq!(bs.word(&[ti, a, t]), GroupElement::Bs { num: 1, exp: 1, shift: 0 });
        let heis = build_model("heis").unwrap();
        assert_eq!(heis.word(&[0, 2, 1, 3]), GroupElement::Heis([0, 0, 1]));
        let sol = build_model("sol:2,1,1,1").unwrap();
        assert_eq!(sol.word(&[4, 0, 5]), GroupElement::Sol { v: [2, 1], shift: 0 });
        let lamp = build_model("lamp:3").unwrap();
        let l = lamp.word(&[2, 0, 3, 0, 0]);
        assert_eq!(l, GroupElement::Lamp { lamps: vec![(0, 2), (1, 1)], pos: 0 });
        assert_eq!(lamp.mul(&l, &lamp.inverse(&l)), lamp.identity());
    }
}
