use expcone_core::catalog::{load, names};
use expcone_core::exactmath::{q, Q, RationalMatrix};
use expcone_core::exprad::*;
use expcone_core::liealg::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn span(g: &LieAlgebra, names: &[&str]) -> Subspace {
    let n = g.dim();
    Subspace::span(
        n,
        names.iter().map(|s| unit(n, g.basis_names().iter().position(|b| b == s).unwrap())),
    )
}

#[test]
fn radical_examples() {
    let sol = load("sol").unwrap();
    let r = exponential_radical(&sol).unwrap();
    assert_eq!(r.radical, span(&sol, &["x", "y"]));
    assert_eq!(r.method, RadicalMethod::StableLcs);
    assert_eq!(r.quotient.dim(), 1);

    let e41 = load("twisted_heisenberg_pair").unwrap();
    let r = exponential_radical(&e41).unwrap();
    assert_eq!(r.radical, span(&e41, &["x1", "y1", "z"]));
    assert!(r.quotient.is_abelian() && r.quotient.dim() == 3);

    let e42 = load("heisenberg_on_heisenberg").unwrap();
    let r = exponential_radical(&e42).unwrap();
    assert_eq!(e42.dim() - r.radical.dim(), 2);

    let wt = load("weakly_triangulable").unwrap();
    let r = exponential_radical(&wt).unwrap();
    assert_eq!(r.method, RadicalMethod::WeightIdeal);
    assert_eq!(r.radical, span(&wt, &["x", "y"]));

    let dh = load("dilation_heisenberg").unwrap();
    assert_eq!(exponential_radical(&dh).unwrap().radical, span(&dh, &["x", "y", "z"]));
}

#[test]
fn conedim_examples() {
    let expect = [
        ("heisenberg", 3),
        ("sol", 1),
        ("rotation", 3),
        ("weakly_triangulable", 1),
        ("twisted_heisenberg_pair", 3),
        ("heisenberg_on_heisenberg", 2),
        ("sl2_annotated", 1),
        ("sl2_universal", 2),
        ("heisenberg_by_sol", 3),
        ("dilation_heisenberg", 1),
    ];
    for (name, v) in expect {
        let c = conedim(&load(name).unwrap()).unwrap();
        assert_eq!(c.value, v, "{name}");
        assert_eq!(c.value, c.georank_part + c.geodim_part);
    }
    let sl2 = load("sl2_annotated").unwrap();
    assert_eq!(conedim(&sl2).unwrap().route, ConeDimRoute::General);
    let bare = sl2.with_annotations(StructuralAnnotations::default()).unwrap();
    assert!(matches!(conedim(&bare), Err(ExpradError::AnnotationRequired(_))));
}

#[test]
fn weak_triangulability() {
    let wt = load("weakly_triangulable").unwrap();
    assert!(is_weakly_triangulable(&wt).unwrap());
    assert!(!is_triangulable(&wt).unwrap());
    assert!(is_weakly_triangulable(&load("sol").unwrap()).unwrap());
    assert!(is_weakly_triangulable(&load("heisenberg").unwrap()).unwrap());
}

#[test]
fn cat0_examples() {
    for name in ["sol", "twisted_heisenberg_pair", "dilation_heisenberg", "heisenberg_by_sol", "rotation", "heisenberg"] {
        let v = cat0_verdict(&load(name).unwrap()).unwrap();
        let expect = !matches!(name, "heisenberg_by_sol" | "heisenberg");
        assert_eq!(v.embeds, expect, "{name}");
    }
    let v = cat0_verdict(&load("heisenberg_by_sol").unwrap()).unwrap();
    assert_eq!(v.reason, Cat0Reason::QuotientNonabelianNilshadow);
    assert_eq!(cat0_verdict(&load("rotation").unwrap()).unwrap().reason, Cat0Reason::QuotientQuasiAbelian);
    assert_eq!(cat0_verdict(&load("sol").unwrap()).unwrap().reason, Cat0Reason::QuotientAbelian);
}

#[test]
fn route_agreement_on_triangulable_catalog() {
    for name in names() {
        let g = load(name).unwrap();
        if !is_solvable(&g) || !is_triangulable(&g).unwrap() {
            continue;
        }
        assert_eq!(
            radical_by_route(&g, RadicalMethod::StableLcs).unwrap(),
            radical_by_route(&g, RadicalMethod::WeightIdeal).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn quotient_has_trivial_radical() {
    for name in names() {
        let g = load(name).unwrap();
        let r = exponential_radical(&g).unwrap();
        assert!(r.quotient_growth.is_polynomial());
        assert!(g.is_ideal(&r.radical));
        if is_solvable(&r.quotient) {
            assert!(exponential_radical(&r.quotient).unwrap().radical.is_zero(), "{name}");
        }
    }
}

#[test]
fn conedim_monotone_under_quotients() {
    for name in names() {
        let g = load(name).unwrap();
        if !is_solvable(&g) {
            continue;
        }
        let c = conedim(&g).unwrap().value;
        let s = series(&g);
        let mut ideals: Vec<Subspace> = s.lower_central.iter().chain(&s.derived).cloned().collect();
        ideals.push(nilradical(&g));
        ideals.push(g.center());
        ideals.push(exponential_radical(&g).unwrap().radical);
        for i in ideals {
            let (qa, _) = quotient_algebra(&g, &i).unwrap();
            assert!(conedim(&qa).unwrap().value <= c, "{name}");
        }
    }
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    loop {
        let rows: Vec<Vec<Q>> = (0..n)
            .map(|_| (0..n).map(|_| q(rng.gen_range(-3..=3))).collect())
            .collect();
        let m = RationalMatrix::from_rows(rows).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

#[test]
fn cat0_invariant_under_basis_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["sol", "heisenberg_by_sol", "rotation"] {
        let g = load(name).unwrap();
        let v = cat0_verdict(&g).unwrap().embeds;
        for _ in 0..5 {
            let h = g.change_basis(&random_invertible(&mut rng, g.dim())).unwrap();
            assert_eq!(cat0_verdict(&h).unwrap().embeds, v, "{name}");
        }
    }
}

#[test]
fn section_examples() {
    let sol = load("sol").unwrap();
    let sd = section_data(&sol).unwrap();
    assert!(sd.w.is_zero());
    assert!(sd.is_split());
    let samples = sample_pairs(&sd, 0, 8);
    let probe = lift_probe(&sd, &samples, &dyadic_scales(6)).unwrap();
    assert!(probe.rows.iter().all(|r| (r.ratio - 1.0).abs() < 1e-12));

    let e41 = load("twisted_heisenberg_pair").unwrap();
    let sd = section_data(&e41).unwrap();
    assert_eq!(sd.h, span(&e41, &["t", "z", "x2", "y2"]));
    assert_eq!(sd.w, span(&e41, &["z"]));
    assert!(!sd.is_split());
    assert_eq!(sd.degree_bound, 2);
    let names = sd.variable_names();
    assert_eq!(sd.bch_polynomial[0].render(&names), "-1/2*x[y2]*y[x2] + 1/2*x[x2]*y[y2]");

    let h = load("heisenberg").unwrap();
    let sd = section_data(&h).unwrap();
    // n = stable term = 0: the section is the identity of H3
    assert!(sd.n.is_zero() && sd.w.is_zero());
    assert_eq!(sd.v.dim(), 3);
    assert!(sd.is_split());

    let bad = vec![(vec![q(1), q(0), q(0)], vec![q(1), q(0), q(0)])];
    let sd = section_data(&e41).unwrap();
    assert!(matches!(lift_probe(&sd, &bad, &[1]), Err(ExpradError::DegenerateSample { index: 0 })));
}

#[test]
fn lift_probe_twisted_heisenberg_pair_decays() {
    let e41 = load("twisted_heisenberg_pair").unwrap();
    let sd = section_data(&e41).unwrap();
    let samples = sample_pairs(&sd, 0, 16);
    let probe = lift_probe(&sd, &samples, &dyadic_scales(12)).unwrap();
    for r in &probe.rows {
        println!("{} {} {}", r.scale, r.ratio, r.growth_term);
    }
    assert!(probe.decreasing_from.unwrap() <= 16.0);
}
