//! Master integrals and reductions for the one-loop propagator systems.

mod common;

use common::data_path;
use lda_core::apps::{apply_patterns, reduce_to_masters, residue_class_basis};
use lda_core::diff::{DiffPoly, DiffTerm};
use lda_core::frontend::{load_system, parse_expression, parse_scalar, Renderer, SystemSpec};
use lda_core::janet::janet_basis;
use lda_core::oracle::oracle_normal_form;
use lda_core::scalar::RatFun;

const COEFFICIENT: &str = "-(d-2-2*k-2*n)*(d-4-2*k-2*n)*(d-2-k-n)*(d-3-k-n)*(d-n-2*k) \
    / (q2^3*(k+1)*(d-2*k-4)*k*(d-2*k-2)*n)";

#[test]
fn massive_masters() {
    let spec = load_system(data_path("ibp_massive.json")).unwrap();
    let b = janet_basis(&spec.equations, &spec.ranking).unwrap();
    let ms = residue_class_basis(&b, &spec.boundary).unwrap();
    let r = Renderer::new(&spec.symbols, &spec.functions);
    assert_eq!(r.terms_list(&ms), "[f(k,n+1), f(k,n+2), f(k+1,n+1)]");
}

#[test]
fn massless_masters_and_reduction() {
    let spec = load_system(data_path("ibp_massless.json")).unwrap();
    let b = janet_basis(&spec.equations, &spec.ranking).unwrap();
    let ms = residue_class_basis(&b, &spec.boundary).unwrap();
    assert_eq!(ms, vec![DiffTerm::new(0, [1, 1])]);
    let target = DiffTerm::new(0, [3, 2]);
    let rep = reduce_to_masters(&target, &b, &spec.boundary, true);
    let expected = parse_scalar(COEFFICIENT, spec.scope()).unwrap();
    assert_eq!(rep.combination, vec![(DiffTerm::new(0, [1, 1]), expected)]);
    assert!(rep.constant.is_zero());
    let f = &rep.factored.as_ref().unwrap()[0];
    assert_eq!(f.expand(spec.symbols.len()), rep.combination[0].1);
}

#[test]
fn oracle_confirms_the_reduction_at_bound_five() {
    let spec = load_system(data_path("ibp_massless.json")).unwrap();
    let nsyms = spec.symbols.len();
    let target = DiffPoly::term(DiffTerm::new(0, [3, 2]), RatFun::one(nsyms));
    let nf = oracle_normal_form(&target, &spec.equations, &spec.ranking, 5).unwrap();
    let expected = parse_expression(&format!("({COEFFICIENT})*f(k+1,n+1)"), spec.scope()).unwrap();
    assert_eq!(apply_patterns(&nf, &spec.boundary), expected);
}

#[test]
fn patterns_commute_with_reduction_when_vanishing_terms_are_standard() {
    // leading term f(k,n+1): every term with n = 0 is standard
    let spec = SystemSpec::from_json(
        r#"{"variables": ["k", "n"], "parameters": ["d"], "functions": ["f"],
            "equations": ["f(k,n+1) - (k+d)*f(k+1,n) + f(k,n)"],
            "ranking": {"type": "orderly", "function_order": ["f"], "variable_order": ["n", "k"]},
            "boundary": ["f(k+j,n)=0"]}"#,
    )
    .unwrap();
    let b = janet_basis(&spec.equations, &spec.ranking).unwrap();
    let pats = &spec.boundary;
    let nsyms = spec.symbols.len();
    for a in 0..4 {
        for c in 0..4 {
            let h = DiffPoly::term(DiffTerm::new(0, [a, c]), RatFun::one(nsyms));
            let after = apply_patterns(&b.j_normal_form(&h), pats);
            let interleaved = b.j_normal_form_filtered(&h, |t| !pats.iter().any(|p| p.matches(t)));
            let before = apply_patterns(&b.j_normal_form(&apply_patterns(&h, pats)), pats);
            assert_eq!(after, interleaved, "f(k+{a},n+{c})");
            assert_eq!(after, before, "f(k+{a},n+{c})");
        }
    }
}

#[test]
fn interleaved_erasure_differs_on_the_massless_system() {
    // f(k+2,n) is a leading term and matches f(k+j,n)=0
    let spec = load_system(data_path("ibp_massless.json")).unwrap();
    let b = janet_basis(&spec.equations, &spec.ranking).unwrap();
    let pats = &spec.boundary;
    assert!(b
        .leading_terms()
        .iter()
        .any(|t| pats.iter().any(|p| p.matches(t))));
    let h = DiffPoly::term(DiffTerm::new(0, [3, 2]), RatFun::one(spec.symbols.len()));
    let after = apply_patterns(&b.j_normal_form(&h), pats);
    let interleaved = b.j_normal_form_filtered(&h, |t| !pats.iter().any(|p| p.matches(t)));
    assert_ne!(after, interleaved);
}

#[test]
fn residue_basis_is_the_exact_complement() {
    let spec = load_system(data_path("ibp_massive.json")).unwrap();
    let b = janet_basis(&spec.equations, &spec.ranking).unwrap();
    let ms = residue_class_basis(&b, &spec.boundary).unwrap();
    for a in 0..6 {
        for c in 0..6 {
            let t = DiffTerm::new(0, [a, c]);
            let excluded =
                b.find_divisor(&t).is_some() || spec.boundary.iter().any(|p| p.matches(&t));
            assert_eq!(ms.contains(&t), !excluded, "f(k+{a},n+{c})");
        }
    }
}

#[test]
fn reductions_are_sound() {
    // target - combination lies in the span of the shifted equations and the vanishing terms
    let spec = load_system(data_path("ibp_massive.json")).unwrap();
    let b = janet_basis(&spec.equations, &spec.ranking).unwrap();
    let nsyms = spec.symbols.len();
    for target in [
        DiffTerm::new(0, [2, 2]),
        DiffTerm::new(0, [1, 3]),
        DiffTerm::new(0, [3, 1]),
    ] {
        let rep = reduce_to_masters(&target, &b, &spec.boundary, false);
        let mut diff = DiffPoly::term(target.clone(), RatFun::one(nsyms));
        diff.add_scaled(&-RatFun::one(nsyms), &rep.normal_form());
        let nf = oracle_normal_form(&diff, &spec.equations, &spec.ranking, 6).unwrap();
        assert!(apply_patterns(&nf, &spec.boundary).is_zero(), "{target:?}");
        for (t, _) in &rep.combination {
            assert!(rep.masters.contains(t));
        }
    }
}
