//! Twisting a type-R algebra into its nilpotent shadow.

use super::algebra::LieAlgebra;
use super::cartan::{cartan_subalgebra, growth_class};
use super::structure::{is_nilpotent, nilradical, quotient_algebra};
use super::LieError;
use crate::exactmath::{jordan_chevalley, RationalMatrix, Q};

/// Nilpotent algebra on the same vector space, with bracket
/// `[a,b]' = [a,b] − σ(a)b + σ(b)a`, where `σ` assigns to each element the
/// semisimple part of the Cartan action it induces modulo the nilradical.
pub fn nilshadow(g: &LieAlgebra) -> Result<LieAlgebra, LieError> {
    if is_nilpotent(g) {
        return Ok(g.clone());
    }
    let data = cartan_subalgebra(g)?;
    if !growth_class(&data).is_polynomial() {
        return Err(LieError::NotTypeR);
    }
    let n = g.dim();
    let nil = nilradical(g);
    let (_, proj) = quotient_algebra(g, &nil)?;

    // Cartan vectors whose images span g/n.
    let mut reps: Vec<Vec<Q>> = Vec::new();
    let mut image = crate::liealg::Subspace::zero(proj.complement_indices.len());
    for y in data.cartan.basis() {
        let p = proj.project(y);
        if !image.contains(&p) {
            image = image.sum(&crate::liealg::Subspace::span(p.len(), [p]));
            reps.push(y.clone());
        }
    }
    if image.dim() != proj.complement_indices.len() {
        return Err(LieError::Invariant("Cartan subalgebra does not span g modulo the nilradical".into()));
    }
    let mut semisimple = Vec::new();
    for y in &reps {
        let (s, _) = jordan_chevalley(&g.ad(y)).map_err(LieError::Math)?;
        semisimple.push(s);
    }
    // σ(e_j) as a combination of the semisimple parts
    let rep_images: Vec<Vec<Q>> = reps.iter().map(|y| proj.project(y)).collect();
    let m = RationalMatrix::from_columns(&rep_images, rep_images.len());
    let inv = m.inverse().map_err(LieError::Math)?;
    let sigma: Vec<RationalMatrix> = (0..n)
        .map(|j| {
            let e = crate::liealg::subspace::unit(n, j);
            let c = inv.mul_vec(&proj.project(&e));
            let mut acc = RationalMatrix::zeros(n, n);
            for (ci, s) in c.iter().zip(&semisimple) {
                acc = &acc + &s.scale(ci);
            }
            acc
        })
        .collect();

    let shadow = LieAlgebra::from_table(
        format!("{}_nilshadow", g.name()),
        g.basis_names().to_vec(),
        |i, j| {
            let mut v = g.basis_bracket(i, j).to_vec();
            let a = sigma[i].column(j);
            let b = sigma[j].column(i);
            for ((x, p), r) in v.iter_mut().zip(a).zip(b) {
                *x = &*x - &p + &r;
            }
            v
        },
    )
    .map_err(|e| LieError::Invariant(format!("twisted bracket fails Jacobi: {e}")))?;
    if !is_nilpotent(&shadow) {
        return Err(LieError::Invariant("twisted bracket is not nilpotent".into()));
    }
    Ok(shadow)
}
