use expcone_core::catalog::load;
use expcone_core::exactmath::{q, Q};
use expcone_core::liealg::*;

fn span(g: &LieAlgebra, names: &[&str]) -> Subspace {
    let n = g.dim();
    Subspace::span(
        n,
        names.iter().map(|s| {
            let i = g.basis_names().iter().position(|b| b == s).unwrap();
            unit(n, i)
        }),
    )
}

#[test]
fn series_examples() {
    let sol = load("sol").unwrap();
    assert_eq!(series(&sol).stable_term, span(&sol, &["x", "y"]));
    let e41 = load("twisted_heisenberg_pair").unwrap();
    assert_eq!(series(&e41).stable_term, span(&e41, &["x1", "y1", "z"]));
    let ab = LieAlgebra::abelian("r4", 4);
    let s = series(&ab);
    assert!(s.stable_term.is_zero());
    assert_eq!(s.lower_central.len(), 2);
}

#[test]
fn basic_invariant_examples() {
    let h = load("heisenberg").unwrap();
    let b = basic_invariants(&h);
    assert!(b.is_solvable && b.is_nilpotent && b.solvable_radical.is_full());
    let sl2 = load("sl2_annotated").unwrap();
    let b = basic_invariants(&sl2);
    assert!(!b.is_solvable);
    assert!(b.solvable_radical.is_zero());
    // 3×3 determinant oracle: K = [[8,0,0],[0,0,4],[0,4,0]], det = −128
    assert_eq!(b.killing_form.determinant().unwrap(), q(-128));
    let sol = load("sol").unwrap();
    let b = basic_invariants(&sol);
    assert!(b.is_solvable && !b.is_nilpotent);
}

#[test]
fn nilradical_examples() {
    let sol = load("sol").unwrap();
    assert_eq!(nilradical(&sol), span(&sol, &["x", "y"]));
    let h = load("heisenberg").unwrap();
    assert!(nilradical(&h).is_full());
    let e42 = load("heisenberg_on_heisenberg").unwrap();
    let n = nilradical(&e42);
    assert_eq!(n, span(&e42, &["x1", "y1", "z", "yp"]));
    // brute-force oracle: every vector of n is ad-nilpotent, and adding xp breaks it
    for v in n.basis() {
        assert!(e42.ad(v).is_nilpotent());
    }
    let xp = unit(5, 0);
    assert!(!e42.ad(&xp).is_nilpotent());
    let sl2 = load("sl2_annotated").unwrap();
    assert!(nilradical(&sl2).is_zero());
}

#[test]
fn cartan_examples() {
    let sol = load("sol").unwrap();
    let c = cartan_subalgebra(&sol).unwrap();
    assert_eq!(c.cartan, span(&sol, &["t"]));
    let spaces: Vec<Subspace> = c.components.iter().map(|w| w.space.clone()).collect();
    assert_eq!(spaces, vec![span(&sol, &["t"]), span(&sol, &["x"]), span(&sol, &["y"])]);

    let h = load("heisenberg").unwrap();
    let c = cartan_subalgebra(&h).unwrap();
    assert!(c.cartan.is_full());
    assert_eq!(c.components.len(), 1);

    let rot = load("rotation").unwrap();
    let c = cartan_subalgebra(&rot).unwrap();
    assert_eq!(c.cartan, span(&rot, &["t"]));
    assert_eq!(c.components.len(), 2);
    assert_eq!(c.components[1].space, span(&rot, &["x", "y"]));

    assert!(matches!(
        cartan_subalgebra(&load("sl2_annotated").unwrap()),
        Err(LieError::NotSolvable)
    ));
}

#[test]
fn growth_and_triangulability_examples() {
    assert!(is_type_r(&LieAlgebra::abelian("r2", 2)).unwrap().is_polynomial());
    let sol = load("sol").unwrap();
    let gc = is_type_r(&sol).unwrap();
    assert_eq!(gc.variant, GrowthVariant::Exponential);
    let w = gc.witness.unwrap();
    assert_eq!(w.cartan_vector, vec![q(1), q(0), q(0)]);
    assert_eq!(w.certificate.real_positive, 1);
    let c = cartan_subalgebra(&sol).unwrap();
    assert_eq!(c.components[w.component].space, span(&sol, &["x"]));

    assert!(is_type_r(&load("rotation").unwrap()).unwrap().is_polynomial());
    assert!(is_triangulable(&sol).unwrap());
    assert!(!is_triangulable(&load("weakly_triangulable").unwrap()).unwrap());
    assert!(is_triangulable(&load("heisenberg").unwrap()).unwrap());
}

#[test]
fn nilshadow_examples() {
    let h = load("heisenberg").unwrap();
    assert_eq!(nilshadow(&h).unwrap(), h);
    let rot = load("rotation").unwrap();
    let s = nilshadow(&rot).unwrap();
    assert!(s.is_abelian());
    assert_eq!(s.dim(), 3);
    assert!(matches!(nilshadow(&load("sol").unwrap()), Err(LieError::NotTypeR)));
}

#[test]
fn quotient_examples() {
    let sol = load("sol").unwrap();
    let (qa, map) = quotient_algebra(&sol, &span(&sol, &["x", "y"])).unwrap();
    assert_eq!(qa.dim(), 1);
    assert_eq!(map.projection.rows(), 1);
    let e41 = load("twisted_heisenberg_pair").unwrap();
    let (qa, _) = quotient_algebra(&e41, &series(&e41).stable_term).unwrap();
    assert_eq!(qa.dim(), 3);
    assert!(qa.is_abelian());
    let h = load("heisenberg").unwrap();
    let (qa, _) = quotient_algebra(&h, &h.center()).unwrap();
    assert!(qa.is_abelian() && qa.dim() == 2);
    assert!(matches!(
        quotient_algebra(&sol, &span(&sol, &["t"])),
        Err(LieError::NotAnIdeal { .. })
    ));
}

#[test]
fn ideal_closure_examples() {
    let h = load("heisenberg").unwrap();
    assert_eq!(ideal_closure(&h, &span(&h, &["z"])), span(&h, &["z"]));
    let sol = load("sol").unwrap();
    assert_eq!(ideal_closure(&sol, &span(&sol, &["x"])), span(&sol, &["x"]));
    // [t,x1] = x1 + 2y1 and [y1,x1] = −z pull in the whole left copy
    let e41 = load("twisted_heisenberg_pair").unwrap();
    let c = ideal_closure(&e41, &span(&e41, &["x1"]));
    assert!(c.contains(&unit(6, 1)) && c.contains(&unit(6, 3)));
    assert!(e41.is_ideal(&c));
}

#[test]
fn solvable_catalog_structural_invariants() {
    for name in expcone_core::catalog::names() {
        let g = load(name).unwrap();
        if !is_solvable(&g) {
            continue;
        }
        let n = nilradical(&g);
        assert!(n.contains_subspace(&g.derived()), "{name}");
        for v in n.basis() {
            assert!(g.ad(v).is_nilpotent(), "{name}");
        }
        // reductive quotient: radical of g/n is central, i.e. g/n abelian here
        let (qa, _) = quotient_algebra(&g, &n).unwrap();
        assert!(qa.center().contains_subspace(&solvable_radical(&qa)), "{name}");

        let c = cartan_subalgebra(&g).unwrap();
        assert!(c.cartan.sum(&n).is_full(), "{name}");
        let mut total = Subspace::zero(g.dim());
        let mut dims = 0;
        for w in &c.components {
            dims += w.space.dim();
            total = total.sum(&w.space);
            for y in c.cartan.basis() {
                let ad = g.ad(y);
                for v in w.space.basis() {
                    assert!(w.space.contains(&ad.mul_vec(v)), "{name}: component not invariant");
                }
            }
        }
        assert!(total.is_full() && dims == g.dim(), "{name}");

        let tri = triangulable_from(&c);
        let r = growth_class(&c).is_polynomial();
        if tri && r {
            assert!(is_nilpotent(&g), "{name}");
        }
        if r {
            let s = nilshadow(&g).unwrap();
            assert!(is_nilpotent(&s) && s.dim() == g.dim(), "{name}");
        }
    }
}

#[test]
fn ideal_closure_is_ideal_for_random_seeds() {
    let e = load("heisenberg_on_heisenberg").unwrap();
    for i in 0..e.dim() {
        let c = ideal_closure(&e, &Subspace::span(5, [unit(5, i)]));
        assert!(e.is_ideal(&c));
    }
    let _ = Q::from_integer(0.into());
}
