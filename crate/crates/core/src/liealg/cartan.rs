//! Cartan subalgebras, weight components and the growth predicates built
//! on their spectra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::LieAlgebra;
use super::structure::{is_nilpotent_subalgebra, is_solvable};
use super::subspace::Subspace;
use super::LieError;
use crate::exactmath::{factor_over_q, q, root_location_certificate, Polynomial, RationalMatrix, RootLocationCertificate, Q};

/// Number of random candidates tried before giving up.
pub const REGULAR_ELEMENT_BUDGET: usize = 64;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightComponent {
    pub space: Subspace,
    /// Characteristic polynomial of `ad x` restricted to the component.
    pub charpoly_of_regular: Polynomial,
    /// One certificate per Cartan basis vector, in basis order.
    pub flags_per_basis: Vec<RootLocationCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub cartan: Subspace,
    pub regular_element: Vec<Q>,
    /// Fitting-null component first.
    pub components: Vec<WeightComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthWitness {
    pub cartan_vector: Vec<Q>,
    pub component: usize,
    pub certificate: RootLocationCertificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthVariant {
    Polynomial,
    Exponential,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthClass {
    pub variant: GrowthVariant,
    pub witness: Option<GrowthWitness>,
}

impl GrowthClass {
    pub fn is_polynomial(&self) -> bool {
        self.variant == GrowthVariant::Polynomial
    }
}

/// Matrix of the restriction of `t` to an invariant subspace, in the
/// subspace's basis.
pub fn restrict(t: &RationalMatrix, s: &Subspace) -> Result<RationalMatrix, LieError> {
    let k = s.dim();
    let mut out = RationalMatrix::zeros(k, k);
    for (j, b) in s.basis().iter().enumerate() {
        let image = t.mul_vec(b);
        let c = s
            .coordinates(&image)
            .ok_or_else(|| LieError::DimensionMismatch("subspace is not invariant".into()))?;
        for (i, x) in c.into_iter().enumerate() {
            out[(i, j)] = x;
        }
    }
    Ok(out)
}

fn fitting_null(a: &RationalMatrix) -> Subspace {
    let n = a.rows();
    Subspace::span(n, a.pow(n).nullspace())
}

fn is_cartan(g: &LieAlgebra, h: &Subspace) -> bool {
    g.is_subalgebra(h) && is_nilpotent_subalgebra(g, h) && g.normalizer(h) == *h
}

/// Cartan subalgebra of a solvable algebra via a seeded search for a
/// regular element.
pub fn cartan_subalgebra(g: &LieAlgebra) -> Result<CartanData, LieError> {
    cartan_subalgebra_seeded(g, DEFAULT_SEED)
}

pub fn cartan_subalgebra_seeded(g: &LieAlgebra, seed: u64) -> Result<CartanData, LieError> {
    if !is_solvable(g) {
        return Err(LieError::NotSolvable);
    }
    let n = g.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Basis vectors first: when one of them is regular the Cartan
    // subalgebra comes out in the coordinates the input was written in.
    let basis = (0..n).map(|i| crate::liealg::unit(n, i));
    let random = (0..REGULAR_ELEMENT_BUDGET)
        .map(move |_| (0..n).map(|_| q(rng.gen_range(-3..=3))).collect::<Vec<Q>>());
    for x in basis.chain(random) {
        let ad = g.ad(&x);
        let h = fitting_null(&ad);
        if !is_cartan(g, &h) {
            continue;
        }
        return Ok(CartanData {
            components: weight_components(g, &h, &ad)?,
            cartan: h,
            regular_element: x,
        });
    }
    Err(LieError::RegularElementNotFound {
        attempts: REGULAR_ELEMENT_BUDGET + n,
    })
}

fn weight_components(g: &LieAlgebra, h: &Subspace, ad: &RationalMatrix) -> Result<Vec<WeightComponent>, LieError> {
    let n = g.dim();
    let cp = ad.charpoly().map_err(LieError::Math)?;
    let mut factors = factor_over_q(&cp);
    // zero weight first
    factors.sort_by_key(|(f, _)| f != &Polynomial::x());
    let cartan_ads: Vec<RationalMatrix> = h.basis().iter().map(|y| g.ad(y)).collect();
    let mut out = Vec::new();
    for (f, m) in factors {
        let space = Subspace::span(n, ad.eval_poly(&f.pow(m)).nullspace());
        let restricted = restrict(ad, &space)?;
        let mut flags = Vec::new();
        for a in &cartan_ads {
            let r = restrict(a, &space)?;
            let c = root_location_certificate(&r.charpoly().map_err(LieError::Math)?).map_err(LieError::Math)?;
            flags.push(c);
        }
        out.push(WeightComponent {
            charpoly_of_regular: restricted.charpoly().map_err(LieError::Math)?,
            space,
            flags_per_basis: flags,
        });
    }
    Ok(out)
}

pub fn growth_class(data: &CartanData) -> GrowthClass {
    for (ci, comp) in data.components.iter().enumerate() {
        for (yi, cert) in comp.flags_per_basis.iter().enumerate() {
            if !cert.all_purely_imaginary() {
                return GrowthClass {
                    variant: GrowthVariant::Exponential,
                    witness: Some(GrowthWitness {
                        cartan_vector: data.cartan.basis()[yi].clone(),
                        component: ci,
                        certificate: cert.clone(),
                    }),
                };
            }
        }
    }
    GrowthClass {
        variant: GrowthVariant::Polynomial,
        witness: None,
    }
}

/// Polynomial growth (type R) iff every Cartan element acts on every
/// weight component with purely imaginary spectrum.
pub fn is_type_r(g: &LieAlgebra) -> Result<GrowthClass, LieError> {
    Ok(growth_class(&cartan_subalgebra(g)?))
}

pub fn triangulable_from(data: &CartanData) -> bool {
    data.components
        .iter()
        .all(|c| c.flags_per_basis.iter().all(RootLocationCertificate::all_real))
}

/// All Cartan spectra real.
pub fn is_triangulable(g: &LieAlgebra) -> Result<bool, LieError> {
    Ok(triangulable_from(&cartan_subalgebra(g)?))
}
