//! Series, radicals, ideals and quotients.

use num_traits::Zero;

use super::algebra::LieAlgebra;
use super::subspace::{unit, Subspace};
use super::LieError;
use crate::exactmath::{RationalMatrix, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    /// g ⊇ [g,g] ⊇ … ending at the first repeated term.
    pub derived: Vec<Subspace>,
    /// C¹ = g, C^{k+1} = [g, C^k], ending at the first repeated term.
    pub lower_central: Vec<Subspace>,
    /// The term where the lower central series stabilizes.
    pub stable_term: Subspace,
}

pub fn series(g: &LieAlgebra) -> Series {
    let mut derived = vec![g.full()];
    loop {
        let last = derived.last().unwrap();
        let next = g.bracket_spaces(last, last);
        if &next == last {
            break;
        }
        derived.push(next);
    }
    let mut lower_central = vec![g.full()];
    loop {
        let last = lower_central.last().unwrap();
        let next = g.bracket_spaces(&g.full(), last);
        if &next == last {
            break;
        }
        lower_central.push(next);
    }
    let stable_term = lower_central.last().unwrap().clone();
    Series {
        derived,
        lower_central,
        stable_term,
    }
}

pub fn is_solvable(g: &LieAlgebra) -> bool {
    series(g).derived.last().unwrap().is_zero()
}

pub fn is_nilpotent(g: &LieAlgebra) -> bool {
    series(g).stable_term.is_zero()
}

/// Nilpotency class (number of nonzero lower-central terms), if nilpotent.
pub fn nilpotency_class(g: &LieAlgebra) -> Option<usize> {
    let s = series(g);
    if !s.stable_term.is_zero() {
        return None;
    }
    Some(s.lower_central.len() - 1)
}

/// Lower central series of a subalgebra `h` computed inside `g`.
pub fn subalgebra_lower_central(g: &LieAlgebra, h: &Subspace) -> Vec<Subspace> {
    let mut out = vec![h.clone()];
    loop {
        let last = out.last().unwrap();
        let next = g.bracket_spaces(h, last);
        if &next == last {
            break;
        }
        out.push(next);
    }
    out
}

pub fn is_nilpotent_subalgebra(g: &LieAlgebra, h: &Subspace) -> bool {
    subalgebra_lower_central(g, h).last().unwrap().is_zero()
}

pub fn killing_form(g: &LieAlgebra) -> RationalMatrix {
    let n = g.dim();
    let ads: Vec<RationalMatrix> = (0..n).map(|i| g.ad_basis(i)).collect();
    let mut k = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let t = (&ads[i] * &ads[j]).trace();
            k[(i, j)] = t.clone();
            k[(j, i)] = t;
        }
    }
    k
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicInvariants {
    pub is_solvable: bool,
    pub is_nilpotent: bool,
    pub solvable_radical: Subspace,
    pub killing_form: RationalMatrix,
}

pub fn basic_invariants(g: &LieAlgebra) -> BasicInvariants {
    let s = series(g);
    let killing = killing_form(g);
    let is_solvable = s.derived.last().unwrap().is_zero();
    BasicInvariants {
        is_solvable,
        is_nilpotent: s.stable_term.is_zero(),
        solvable_radical: if is_solvable {
            g.full()
        } else {
            killing_orthogonal(g, &killing, &s.derived[1.min(s.derived.len() - 1)])
        },
        killing_form: killing,
    }
}

pub fn solvable_radical(g: &LieAlgebra) -> Subspace {
    basic_invariants(g).solvable_radical
}

fn killing_orthogonal(g: &LieAlgebra, k: &RationalMatrix, s: &Subspace) -> Subspace {
    if s.is_zero() {
        return g.full();
    }
    let rows: Vec<Vec<Q>> = s.basis().iter().map(|v| k.mul_vec(v)).collect();
    let m = RationalMatrix::from_rows(rows).expect("rectangular");
    Subspace::span(g.dim(), m.nullspace())
}

/// Largest nilpotent ideal: `{x ∈ r : ad x nilpotent}` for the solvable
/// radical `r`.
///
/// `[g, r]` is always inside. The operators `ad r` are simultaneously
/// triangularizable, so `tr(ad x · ad u₁ ⋯ ad u_ℓ) = Σᵢ λᵢ(x)λᵢ(u₁)⋯λᵢ(u_ℓ)`
/// for the weights `λᵢ`. Letting the `uⱼ` run over multisets of coset
/// representatives of `r / [g, r]` and `ℓ < dim g`, the vanishing of all
/// these traces is (by a Vandermonde argument) equivalent to every weight
/// vanishing on `x` — a linear system.
pub fn nilradical(g: &LieAlgebra) -> Subspace {
    let n = g.dim();
    let r = solvable_radical(g);
    if r.is_zero() {
        return r;
    }
    let d = g.bracket_spaces(&g.full(), &r);
    let reps = d.complement_within(&r);
    if reps.is_zero() {
        return d;
    }
    let ads: Vec<RationalMatrix> = reps.basis().iter().map(|v| g.ad(v)).collect();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    // products over non-decreasing index sequences, grown level by level
    let mut level: Vec<(usize, RationalMatrix)> = vec![(0, RationalMatrix::identity(n))];
    for _ in 0..n {
        for (_, w) in &level {
            rows.push(ads.iter().map(|a| (a * w).trace()).collect());
        }
        let mut next = Vec::new();
        for (start, w) in &level {
            for (j, a) in ads.iter().enumerate().skip(*start) {
                next.push((j, w * a));
            }
        }
        level = next;
    }
    let m = RationalMatrix::from_rows(rows).expect("rectangular");
    let extra = m.nullspace().into_iter().map(|c| reps.combine(&c));
    let nil = d.sum(&Subspace::span(n, extra));
    debug_assert!(nil.basis().iter().all(|v| g.ad(v).is_nilpotent()));
    nil
}

/// Smallest ideal containing `s`.
pub fn ideal_closure(g: &LieAlgebra, s: &Subspace) -> Subspace {
    let mut cur = s.clone();
    loop {
        let next = cur.sum(&g.bracket_spaces(&g.full(), &cur));
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Projection onto a quotient by an ideal, using the non-pivot standard
/// basis vectors as a complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    pub ideal: Subspace,
    pub complement_indices: Vec<usize>,
    /// `dim(g/i) × dim(g)` matrix.
    pub projection: RationalMatrix,
}

impl QuotientMap {
    pub fn project(&self, v: &[Q]) -> Vec<Q> {
        let r = self.ideal.reduce(v);
        self.complement_indices.iter().map(|&i| r[i].clone()).collect()
    }

    /// The section sending quotient coordinates to the complement.
    pub fn lift(&self, c: &[Q]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.ideal.ambient_dim()];
        for (&i, x) in self.complement_indices.iter().zip(c) {
            v[i] = x.clone();
        }
        v
    }

    pub fn project_subspace(&self, s: &Subspace) -> Subspace {
        Subspace::span(
            self.complement_indices.len(),
            s.basis().iter().map(|v| self.project(v)),
        )
    }

    /// Full preimage of a quotient subspace.
    pub fn preimage(&self, s: &Subspace) -> Subspace {
        let lifted = Subspace::span(self.ideal.ambient_dim(), s.basis().iter().map(|c| self.lift(c)));
        lifted.sum(&self.ideal)
    }
}

pub fn quotient_algebra(g: &LieAlgebra, i: &Subspace) -> Result<(LieAlgebra, QuotientMap), LieError> {
    if let Some((k, v, w)) = g.ideal_witness(i) {
        return Err(LieError::NotAnIdeal {
            witness: format!(
                "[{}, {}] = {} escapes the subspace",
                g.basis_names()[k],
                g.describe(&v),
                g.describe(&w)
            ),
        });
    }
    let n = g.dim();
    let comp = i.complement_indices();
    let k = comp.len();
    let mut proj = RationalMatrix::zeros(k, n);
    let map = QuotientMap {
        ideal: i.clone(),
        complement_indices: comp.clone(),
        projection: RationalMatrix::zeros(k, n),
    };
    for j in 0..n {
        let c = map.project(&unit(n, j));
        for (r, x) in c.into_iter().enumerate() {
            proj[(r, j)] = x;
        }
    }
    let names = comp.iter().map(|&c| g.basis_names()[c].clone()).collect();
    let q = LieAlgebra::from_table_unchecked(format!("{}/ideal", g.name()), names, |a, b| {
        map.project(g.basis_bracket(comp[a], comp[b]))
    });
    Ok((
        q,
        QuotientMap {
            projection: proj,
            ..map
        },
    ))
}
