//! Exponential radical, cone dimension, weak triangulability and the
//! CAT(0) verdict.

use serde::Serialize;

use super::ExpradError;
use crate::liealg::{
    cartan_subalgebra, growth_class, ideal_closure, is_nilpotent, is_solvable, nilradical, nilshadow,
    quotient_algebra, series, solvable_radical, triangulable_from, GrowthClass, LieAlgebra, LieError,
    QuotientMap, Subspace,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadicalMethod {
    /// Stable term of the lower central series (triangulable input).
    StableLcs,
    /// Iterated ideal closure of exponentially growing weight components.
    WeightIdeal,
    /// Built from Levi or split-torus annotations.
    Annotated,
}

#[derive(Clone, Debug)]
pub struct ExpRadicalReport {
    pub radical: Subspace,
    pub method: RadicalMethod,
    pub quotient: LieAlgebra,
    pub quotient_map: QuotientMap,
    pub quotient_growth: GrowthClass,
    /// False when the weight route ran on non-triangulable input, where
    /// minimality is not independently certified.
    pub minimality_certified: bool,
}

/// Radical by a specific route (solvable input only for the first two).
pub fn radical_by_route(g: &LieAlgebra, method: RadicalMethod) -> Result<Subspace, ExpradError> {
    match method {
        RadicalMethod::StableLcs => Ok(series(g).stable_term),
        RadicalMethod::WeightIdeal => weight_ideal(g),
        RadicalMethod::Annotated => annotated(g),
    }
}

fn weight_ideal(g: &LieAlgebra) -> Result<Subspace, ExpradError> {
    if !is_solvable(g) {
        return Err(LieError::NotSolvable.into());
    }
    let mut radical = g.zero_space();
    loop {
        let (cur, map) = quotient_algebra(g, &radical)?;
        let data = cartan_subalgebra(&cur)?;
        let mut bad = cur.zero_space();
        for comp in &data.components {
            if comp.flags_per_basis.iter().any(|c| !c.all_purely_imaginary()) {
                bad = bad.sum(&comp.space);
            }
        }
        if bad.is_zero() {
            return Ok(radical);
        }
        radical = map.preimage(&ideal_closure(&cur, &bad));
    }
}

fn annotated(g: &LieAlgebra) -> Result<Subspace, ExpradError> {
    let ann = g.annotations();
    let r = solvable_radical(g);
    if let Some(snc) = &ann.levi_noncompact {
        let r_alg = g.subalgebra(&r, "radical")?;
        let inner = if r.is_zero() {
            r.clone()
        } else {
            weight_ideal(&r_alg)?
        };
        let inner = Subspace::span(g.dim(), inner.basis().iter().map(|c| r.combine(c)));
        let s = inner.sum(&g.bracket_spaces(snc, &r));
        return Ok(ideal_closure(g, &s));
    }
    if let Some(torus) = &ann.split_torus {
        let n = nilradical(g);
        let images = torus
            .iter()
            .flat_map(|d| n.basis().iter().map(move |u| d.mul_vec(u)))
            .collect::<Vec<_>>();
        return Ok(ideal_closure(g, &Subspace::span(g.dim(), images)));
    }
    Err(ExpradError::AnnotationRequired(
        "non-solvable input needs `levi_noncompact` or `split_torus`".into(),
    ))
}

/// Growth class of the solvable radical of `q` (the whole algebra when
/// solvable).
fn radical_growth(q: &LieAlgebra) -> Result<GrowthClass, ExpradError> {
    let r = solvable_radical(q);
    let ra = q.subalgebra(&r, "radical")?;
    if ra.dim() == 0 {
        return Ok(GrowthClass {
            variant: crate::liealg::GrowthVariant::Polynomial,
            witness: None,
        });
    }
    Ok(growth_class(&cartan_subalgebra(&ra)?))
}

pub fn exponential_radical(g: &LieAlgebra) -> Result<ExpRadicalReport, ExpradError> {
    let (radical, method, certified) = if is_solvable(g) {
        let data = cartan_subalgebra(g)?;
        if triangulable_from(&data) {
            (series(g).stable_term, RadicalMethod::StableLcs, true)
        } else {
            (weight_ideal(g)?, RadicalMethod::WeightIdeal, false)
        }
    } else {
        (annotated(g)?, RadicalMethod::Annotated, true)
    };
    let (quotient, quotient_map) = quotient_algebra(g, &radical)?;
    let quotient_growth = radical_growth(&quotient)?;
    if !quotient_growth.is_polynomial() {
        return Err(ExpradError::Invariant(
            "quotient by the exponential radical is not of polynomial growth".into(),
        ));
    }
    Ok(ExpRadicalReport {
        radical,
        method,
        quotient: quotient.with_name(format!("{}/R_exp", g.name())),
        quotient_map,
        quotient_growth,
        minimality_certified: certified,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeDimRoute {
    Solvable,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeDimReport {
    pub value: usize,
    pub georank_part: usize,
    pub geodim_part: usize,
    pub route: ConeDimRoute,
    pub radical_dim: usize,
}

pub fn conedim(g: &LieAlgebra) -> Result<ConeDimReport, ExpradError> {
    conedim_with(g, &exponential_radical(g)?)
}

pub fn conedim_with(g: &LieAlgebra, rep: &ExpRadicalReport) -> Result<ConeDimReport, ExpradError> {
    let compact = g.annotations().max_compact_dim;
    let rdim = rep.radical.dim();
    if is_solvable(g) {
        let geodim = (g.dim() - rdim)
            .checked_sub(compact)
            .ok_or_else(|| ExpradError::Invariant("max_compact_dim exceeds the quotient dimension".into()))?;
        return Ok(ConeDimReport {
            value: geodim,
            georank_part: 0,
            geodim_part: geodim,
            route: ConeDimRoute::Solvable,
            radical_dim: rdim,
        });
    }
    let (r, z) = g.annotations().levi_georank.ok_or_else(|| {
        ExpradError::AnnotationRequired("non-solvable input needs `levi_georank`".into())
    })?;
    let rad = solvable_radical(g);
    let inside = rad.intersection(&rep.radical).dim();
    let geodim = (rad.dim() - inside)
        .checked_sub(compact)
        .ok_or_else(|| ExpradError::Invariant("max_compact_dim exceeds the quotient dimension".into()))?;
    Ok(ConeDimReport {
        value: r + z + geodim,
        georank_part: r + z,
        geodim_part: geodim,
        route: ConeDimRoute::General,
        radical_dim: rdim,
    })
}

pub fn is_weakly_triangulable(g: &LieAlgebra) -> Result<bool, ExpradError> {
    if !is_solvable(g) {
        return Err(LieError::NotSolvable.into());
    }
    Ok(is_nilpotent(&exponential_radical(g)?.quotient))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Cat0Reason {
    QuotientAbelian,
    QuotientQuasiAbelian,
    QuotientNonabelianNilshadow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cat0Verdict {
    pub embeds: bool,
    pub reason: Cat0Reason,
    pub quotient_nilshadow_dim: usize,
}

/// Embeds iff the amenable (here: solvable) radical of `g/R_exp` is
/// quasi-abelian, i.e. its nilshadow is abelian.
pub fn cat0_verdict(g: &LieAlgebra) -> Result<Cat0Verdict, ExpradError> {
    cat0_verdict_with(&exponential_radical(g)?)
}

pub fn cat0_verdict_with(rep: &ExpRadicalReport) -> Result<Cat0Verdict, ExpradError> {
    let q = &rep.quotient;
    let r = solvable_radical(q);
    let a = q.subalgebra(&r, "amenable_radical")?;
    let shadow = nilshadow(&a)?;
    let reason = if a.is_abelian() {
        Cat0Reason::QuotientAbelian
    } else if shadow.is_abelian() {
        Cat0Reason::QuotientQuasiAbelian
    } else {
        Cat0Reason::QuotientNonabelianNilshadow
    };
    Ok(Cat0Verdict {
        embeds: reason != Cat0Reason::QuotientNonabelianNilshadow,
        reason,
        quotient_nilshadow_dim: shadow.dim(),
    })
}
