//! Rational subspaces in canonical (reduced echelon) form.

use num_traits::{One, Zero};

use crate::exactmath::{RationalMatrix, Q};

/// Subspace of `Q^n` spanned by the rows of a reduced echelon matrix.
///
/// The representation is canonical: two subspaces are equal exactly when
/// their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| unit(ambient, i)))
    }

    pub fn span<I: IntoIterator<Item = Vec<Q>>>(ambient: usize, vectors: I) -> Self {
        let rows: Vec<Vec<Q>> = vectors.into_iter().collect();
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let m = RationalMatrix::from_rows(rows).expect("vectors of equal length");
        assert_eq!(m.cols(), ambient, "vector length differs from ambient dimension");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> RationalMatrix {
        if self.basis.is_empty() {
            return RationalMatrix::zeros(0, self.ambient);
        }
        RationalMatrix::from_rows(self.basis.clone()).expect("rectangular basis")
    }

    /// Residue of `v` modulo the subspace: zero at every pivot column.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &c * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn combine(&self, coords: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o += c * r;
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::span(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient);
        }
        // a·U = b·W  ⇔  (a, b) in the kernel of [Uᵀ | -Wᵀ]
        let k = self.dim();
        let mut cols: Vec<Vec<Q>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()));
        let m = RationalMatrix::from_columns(&cols, self.ambient);
        let vectors = m.nullspace().into_iter().map(|c| self.combine(&c[..k]));
        Self::span(self.ambient, vectors)
    }

    /// Standard basis indices not used as pivots; the corresponding unit
    /// vectors span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }

    /// A complement of `self` inside `outer` (which must contain `self`),
    /// chosen among the basis vectors of `outer`.
    pub fn complement_within(&self, outer: &Subspace) -> Subspace {
        let mut acc = self.clone();
        let mut chosen = Vec::new();
        for v in &outer.basis {
            if !acc.contains(v) {
                acc = acc.sum(&Self::span(self.ambient, [v.clone()]));
                chosen.push(v.clone());
            }
        }
        Self::span(self.ambient, chosen)
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, map: &RationalMatrix) -> Subspace {
        Self::span(map.rows(), self.basis.iter().map(|v| map.mul_vec(v)))
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    fn v(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&a| q(a)).collect()
    }

    #[test]
    fn canonical_form_identifies_equal_spans() {
        let a = Subspace::span(3, [v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, [v(&[1, 0, -1]), v(&[2, 3, 1])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::span(3, [v(&[0, 1, 0])]));
        assert!(a.sum(&b).is_full());
        assert!(a.intersection(&Subspace::zero(3)).is_zero());
    }

    #[test]
    fn coordinates_roundtrip() {
        let a = Subspace::span(3, [v(&[1, 2, 0]), v(&[0, 1, 1])]);
        let w = v(&[2, 5, 1]);
        let c = a.coordinates(&w).unwrap();
        assert_eq!(a.combine(&c), w);
        assert!(a.coordinates(&v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn complement_within_outer() {
        let outer = Subspace::full(4);
        let inner = Subspace::span(4, [v(&[1, 1, 0, 0])]);
        let c = inner.complement_within(&outer);
        assert_eq!(c.dim(), 3);
        assert!(inner.intersection(&c).is_zero());
        assert!(inner.sum(&c).is_full());
    }
}
