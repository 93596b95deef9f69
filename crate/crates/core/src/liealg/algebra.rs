//! Structure-constant representation of finite-dimensional Lie algebras.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::subspace::{unit, Subspace};
use super::LieError;
use crate::exactmath::{fmt_vector, is_zero_vec, jordan_chevalley, RationalMatrix, Q};

/// Extra structure that cannot be derived from the bracket alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralAnnotations {
    pub simply_connected: bool,
    pub max_compact_dim: usize,
    /// Noncompact part of a Levi factor.
    pub levi_noncompact: Option<Subspace>,
    /// (real rank, rational rank of the center) of the semisimple part.
    pub levi_georank: Option<(usize, usize)>,
    /// Commuting semisimple derivations with rational eigenvalues.
    pub split_torus: Option<Vec<RationalMatrix>>,
}

impl Default for StructuralAnnotations {
    fn default() -> Self {
        StructuralAnnotations {
            simply_connected: true,
            max_compact_dim: 0,
            levi_noncompact: None,
            levi_georank: None,
            split_torus: None,
        }
    }
}

/// Unvalidated bracket table. Entries may be given in either order; the
/// `(j, i)` form is negated on storage.
#[derive(Clone, Debug, Default)]
pub struct RawStructureConstants {
    pub name: String,
    pub basis_names: Vec<String>,
    pub entries: Vec<(usize, usize, Vec<Q>)>,
    pub annotations: StructuralAnnotations,
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    basis_names: Vec<String>,
    structure: BTreeMap<(usize, usize), Vec<Q>>,
    // dense copy of the table, row-major over (i, j), for fast brackets
    dense: Vec<Vec<Q>>,
    annotations: StructuralAnnotations,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.basis_names == other.basis_names && self.structure == other.structure
    }
}

/// Validate a raw table: shapes, antisymmetry, Jacobi, annotations.
pub fn validate(raw: RawStructureConstants) -> Result<LieAlgebra, LieError> {
    let n = raw.basis_names.len();
    let mut structure: BTreeMap<(usize, usize), Vec<Q>> = BTreeMap::new();
    for (i, j, v) in raw.entries {
        if i >= n || j >= n {
            return Err(LieError::DimensionMismatch(format!(
                "bracket index ({i},{j}) outside basis of size {n}"
            )));
        }
        if v.len() != n {
            return Err(LieError::DimensionMismatch(format!(
                "bracket [{},{}] has {} coordinates, expected {n}",
                raw.basis_names[i],
                raw.basis_names[j],
                v.len()
            )));
        }
        if i == j {
            if !is_zero_vec(&v) {
                return Err(LieError::DimensionMismatch(format!(
                    "[{0},{0}] must vanish",
                    raw.basis_names[i]
                )));
            }
            continue;
        }
        let (key, val) = if i < j {
            ((i, j), v)
        } else {
            ((j, i), v.iter().map(|x| -x).collect())
        };
        if let Some(prev) = structure.get(&key) {
            if *prev != val {
                return Err(LieError::DimensionMismatch(format!(
                    "conflicting entries for [{},{}]",
                    raw.basis_names[key.0], raw.basis_names[key.1]
                )));
            }
        }
        if is_zero_vec(&val) {
            structure.remove(&key);
        } else {
            structure.insert(key, val);
        }
    }
    let g = LieAlgebra::from_parts(raw.name, raw.basis_names, structure, raw.annotations);
    g.check_jacobi()?;
    g.check_annotations()?;
    Ok(g)
}

impl LieAlgebra {
    fn from_parts(
        name: String,
        basis_names: Vec<String>,
        structure: BTreeMap<(usize, usize), Vec<Q>>,
        annotations: StructuralAnnotations,
    ) -> Self {
        let n = basis_names.len();
        let mut dense = vec![vec![Q::zero(); n]; n * n];
        for (&(i, j), v) in &structure {
            dense[i * n + j] = v.clone();
            dense[j * n + i] = v.iter().map(|x| -x).collect();
        }
        LieAlgebra {
            name,
            basis_names,
            structure,
            dense,
            annotations,
        }
    }

    /// Build from a bracket function on basis indices, skipping validation
    /// of Jacobi (callers guarantee it, e.g. transported brackets).
    pub(crate) fn from_table_unchecked(
        name: impl Into<String>,
        basis_names: Vec<String>,
        mut f: impl FnMut(usize, usize) -> Vec<Q>,
    ) -> Self {
        let n = basis_names.len();
        let mut structure = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                if !is_zero_vec(&v) {
                    structure.insert((i, j), v);
                }
            }
        }
        Self::from_parts(name.into(), basis_names, structure, StructuralAnnotations::default())
    }

    /// Like `from_table_unchecked`, but runs the Jacobi check.
    pub fn from_table(
        name: impl Into<String>,
        basis_names: Vec<String>,
        f: impl FnMut(usize, usize) -> Vec<Q>,
    ) -> Result<Self, LieError> {
        let g = Self::from_table_unchecked(name, basis_names, f);
        g.check_jacobi()?;
        Ok(g)
    }

    pub fn abelian(name: impl Into<String>, n: usize) -> Self {
        let names = (1..=n).map(|i| format!("e{i}")).collect();
        Self::from_table_unchecked(name, names, |_, _| vec![Q::zero(); n])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn structure_constants(&self) -> &BTreeMap<(usize, usize), Vec<Q>> {
        &self.structure
    }

    pub fn annotations(&self) -> &StructuralAnnotations {
        &self.annotations
    }

    pub fn with_annotations(mut self, a: StructuralAnnotations) -> Result<Self, LieError> {
        self.annotations = a;
        self.check_annotations()?;
        Ok(self)
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.is_empty()
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Q] {
        &self.dense[i * self.dim() + j]
    }

    pub fn bracket(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (&(i, j), c) in &self.structure {
            // [u,v] picks up (u_i v_j − u_j v_i)·[e_i,e_j]
            let w = &u[i] * &v[j] - &u[j] * &v[i];
            if w.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(c) {
                if !x.is_zero() {
                    *o += &w * x;
                }
            }
        }
        out
    }

    /// Matrix of `ad x` acting on column coordinate vectors.
    pub fn ad(&self, x: &[Q]) -> RationalMatrix {
        let n = self.dim();
        let cols: Vec<Vec<Q>> = (0..n).map(|j| self.bracket(x, &unit(n, j))).collect();
        RationalMatrix::from_columns(&cols, n)
    }

    pub fn ad_basis(&self, i: usize) -> RationalMatrix {
        self.ad(&unit(self.dim(), i))
    }

    /// Span of all brackets `[a, b]` with `a ∈ A`, `b ∈ B`.
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut out = Vec::new();
        for u in a.basis() {
            for v in b.basis() {
                let w = self.bracket(u, v);
                if !is_zero_vec(&w) {
                    out.push(w);
                }
            }
        }
        Subspace::span(self.dim(), out)
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.dim())
    }

    pub fn derived(&self) -> Subspace {
        self.bracket_spaces(&self.full(), &self.full())
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_spaces(s, s))
    }

    /// `Ok` if `s` is an ideal, otherwise a witness `(basis index, vector of
    /// s, bracket)` escaping it.
    pub fn ideal_witness(&self, s: &Subspace) -> Option<(usize, Vec<Q>, Vec<Q>)> {
        let n = self.dim();
        for i in 0..n {
            let e = unit(n, i);
            for v in s.basis() {
                let w = self.bracket(&e, v);
                if !s.contains(&w) {
                    return Some((i, v.clone(), w));
                }
            }
        }
        None
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        self.ideal_witness(s).is_none()
    }

    /// Centralizer of a subspace: `{x : [x, s] = 0}`.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        let n = self.dim();
        let mut rows = Vec::new();
        for v in s.basis() {
            // x ↦ [x, v] = −ad(v) x
            let m = self.ad(v);
            for r in 0..n {
                rows.push(m.row(r).to_vec());
            }
        }
        if rows.is_empty() {
            return self.full();
        }
        let m = RationalMatrix::from_rows(rows).expect("rectangular");
        Subspace::span(n, m.nullspace())
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.full())
    }

    /// Normalizer of a subspace: `{x : [x, s] ⊆ s}`.
    pub fn normalizer(&self, s: &Subspace) -> Subspace {
        let n = self.dim();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        // residue map modulo s is linear; constraint rows are residues of
        // [e_j, v] as j varies, per coordinate
        for v in s.basis() {
            let residues: Vec<Vec<Q>> = (0..n)
                .map(|j| s.reduce(&self.bracket(&unit(n, j), v)))
                .collect();
            for c in 0..n {
                rows.push(residues.iter().map(|r| r[c].clone()).collect());
            }
        }
        if rows.is_empty() {
            return self.full();
        }
        let m = RationalMatrix::from_rows(rows).expect("rectangular");
        Subspace::span(n, m.nullspace())
    }

    /// Restriction of a structure to a subalgebra, in the subspace basis.
    pub fn subalgebra(&self, s: &Subspace, name: impl Into<String>) -> Result<LieAlgebra, LieError> {
        if !self.is_subalgebra(s) {
            return Err(LieError::NotASubalgebra);
        }
        let names = s
            .basis()
            .iter()
            .map(|v| self.describe(v))
            .collect();
        let basis = s.basis().to_vec();
        Ok(Self::from_table_unchecked(name, names, |i, j| {
            s.coordinates(&self.bracket(&basis[i], &basis[j]))
                .expect("closed under bracket")
        }))
    }

    /// Transport the bracket to the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &RationalMatrix) -> Result<LieAlgebra, LieError> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(LieError::DimensionMismatch("basis change must be n×n".into()));
        }
        let inv = p.inverse().map_err(LieError::Math)?;
        let cols: Vec<Vec<Q>> = (0..n).map(|j| p.column(j)).collect();
        let names = (1..=n).map(|i| format!("f{i}")).collect();
        let mut g = Self::from_table_unchecked(format!("{}'", self.name), names, |i, j| {
            inv.mul_vec(&self.bracket(&cols[i], &cols[j]))
        });
        let mut ann = self.annotations.clone();
        ann.levi_noncompact = ann
            .levi_noncompact
            .map(|s| Subspace::span(n, s.basis().iter().map(|v| inv.mul_vec(v))));
        ann.split_torus = ann
            .split_torus
            .map(|ts| ts.iter().map(|d| &(&inv * d) * p).collect());
        g.annotations = ann;
        Ok(g)
    }

    /// Human-readable linear combination of basis names.
    pub fn describe(&self, v: &[Q]) -> String {
        let mut s = String::new();
        for (c, name) in v.iter().zip(&self.basis_names) {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Q::zero();
            let a = if neg { -c } else { c.clone() };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                s.push_str(&crate::exactmath::fmt_rational(&a));
                s.push(' ');
            }
            s.push_str(name);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (unit(n, i), unit(n, j), unit(n, k));
                    let a = self.bracket(&ei, self.basis_bracket(j, k));
                    let b = self.bracket(&ej, self.basis_bracket(k, i));
                    let c = self.bracket(&ek, self.basis_bracket(i, j));
                    let r: Vec<Q> = a
                        .iter()
                        .zip(&b)
                        .zip(&c)
                        .map(|((x, y), z)| x + y + z)
                        .collect();
                    if !is_zero_vec(&r) {
                        return Err(LieError::JacobiViolation {
                            triple: [
                                self.basis_names[i].clone(),
                                self.basis_names[j].clone(),
                                self.basis_names[k].clone(),
                            ],
                            residual: fmt_vector(&r),
                            residual_vector: r,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_annotations(&self) -> Result<(), LieError> {
        let n = self.dim();
        if let Some(s) = &self.annotations.levi_noncompact {
            if s.ambient_dim() != n {
                return Err(LieError::InvalidAnnotation("levi_noncompact has wrong ambient dimension".into()));
            }
            if !self.is_subalgebra(s) {
                return Err(LieError::InvalidAnnotation("levi_noncompact is not a subalgebra".into()));
            }
        }
        if let Some(ts) = &self.annotations.split_torus {
            for (k, d) in ts.iter().enumerate() {
                if d.rows() != n || d.cols() != n {
                    return Err(LieError::InvalidAnnotation(format!("split_torus[{k}] is not {n}×{n}")));
                }
                let (_, nil) = jordan_chevalley(d).map_err(LieError::Math)?;
                if !nil.is_zero() {
                    return Err(LieError::InvalidAnnotation(format!("split_torus[{k}] is not semisimple")));
                }
                if !is_derivation(self, d) {
                    return Err(LieError::InvalidAnnotation(format!("split_torus[{k}] is not a derivation")));
                }
                let cp = d.charpoly().map_err(LieError::Math)?;
                let rational = crate::exactmath::factor_over_q(&cp)
                    .iter()
                    .all(|(f, _)| f.degree() == Some(1));
                if !rational {
                    return Err(LieError::InvalidAnnotation(format!(
                        "split_torus[{k}] has non-rational eigenvalues"
                    )));
                }
                for e in &ts[..k] {
                    if !d.commutes_with(e) {
                        return Err(LieError::InvalidAnnotation("split_torus generators do not commute".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `D[x,y] = [Dx,y] + [x,Dy]` on all basis pairs.
pub fn is_derivation(g: &LieAlgebra, d: &RationalMatrix) -> bool {
    let n = g.dim();
    let cols: Vec<Vec<Q>> = (0..n).map(|j| d.column(j)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.mul_vec(g.basis_bracket(i, j));
            let a = g.bracket(&cols[i], &unit(n, j));
            let b = g.bracket(&unit(n, i), &cols[j]);
            let rhs: Vec<Q> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: String,
}

impl LieAlgebra {
    /// Nonzero brackets as readable triples, for reports.
    pub fn bracket_listing(&self) -> Vec<BracketEntry> {
        self.structure
            .iter()
            .map(|(&(i, j), v)| BracketEntry {
                left: self.basis_names[i].clone(),
                right: self.basis_names[j].clone(),
                value: self.describe(v),
            })
            .collect()
    }
}
