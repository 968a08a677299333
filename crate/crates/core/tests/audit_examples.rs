//! Worked instances of the audit, with the expected sides recomputed by
//! chain counting and face counting.

mod common;

use posetlab::audit::{audit_poset, recompute_verdict, AuditOptions, AuditReport, Verdict};
use posetlab::generators::{face_poset_of_complex, simplex_boundary, torus7, FamilyParams};
use posetlab::FinitePoset;
use serde_json::{json, Value};

use common::{chain_count_chi, chain_count_mobius};

fn family(name: &str, params: &[usize]) -> FinitePoset {
    FamilyParams::new(name, params, 0).build_poset().unwrap()
}

fn audit(name: &str, p: &FinitePoset) -> AuditReport {
    let report = audit_poset(name, p, AuditOptions::default());
    for c in &report.checks {
        assert_eq!(recompute_verdict(c), c.verdict, "{name}:{}", c.id);
    }
    report
}

fn sides(r: &AuditReport, id: &str) -> (Value, Value, Verdict) {
    let c = r.check(id).unwrap_or_else(|| panic!("{} has no check {id}", r.instance));
    (c.lhs.clone(), c.rhs.clone(), c.verdict)
}

/// Both sides of the main inequality from chain counts in `P̂`.
fn main_inequality_oracle(p: &FinitePoset) -> (i64, i64) {
    let hat = p.attach_max();
    let top = hat.maximum().unwrap();
    let bottom = p.minimum().unwrap();
    let atoms: Vec<usize> = p.up_covers(bottom).to_vec();
    let lhs = atoms.iter().map(|&x| chain_count_mobius(&hat, hat.index_of(p.label(x)).unwrap(), top).abs()).sum();
    let alpha =
        p.maximal_elements().into_iter().map(|y| atoms.iter().filter(|&&x| p.le(x, y)).count() as i64).min().unwrap();
    let rhs = alpha * chain_count_mobius(&hat, hat.index_of(p.label(bottom)).unwrap(), top).abs();
    (lhs, rhs)
}

/// `P` without its maximal elements.
fn drop_maximal(p: &FinitePoset) -> FinitePoset {
    let maximal = p.maximal_elements();
    let keep = p.element_set(p.elements().filter(|x| !maximal.contains(x)));
    p.induced(&keep).unwrap()
}

#[test]
fn four_cycle() {
    let p = family("cycle", &[4]);
    let r = audit("cycle-4", &p);
    assert!(r.passed());
    assert_eq!(main_inequality_oracle(&p), (4, 2));
    assert_eq!(sides(&r, "main-inequality"), (json!(4), json!(2), Verdict::Pass));
    // Q is the minimum plus four vertices: |χ̃(Q)| = 3.
    let chi_q = chain_count_chi(&drop_maximal(&p)).unwrap();
    assert_eq!(chi_q.abs(), 3);
    assert_eq!(sides(&r, "defect-identity"), (json!(2), json!(2), Verdict::Pass));
    assert_eq!(sides(&r, "basis-cardinality").0, json!(chi_q.abs()));
    // Greedy picks three edges, each with α(y) - 1 = 1; |χ̃(R)| = 1.
    assert_eq!(sides(&r, "sufficient-inequality"), (json!(3), json!(1), Verdict::Pass));
    // h^(c)_1 = f_0 - 2 with f_0 = 4.
    assert_eq!(sides(&r, "cubical-h-nonnegative").0, json!(2));
    assert_eq!(sides(&r, "truncation-buchsbaum-star").2, Verdict::Pass);
    assert_eq!(sides(&r, "rho-surjective"), (json!(4), json!(4), Verdict::Pass));
}

#[test]
fn tetrahedron_boundary() {
    let p = face_poset_of_complex(&simplex_boundary(3));
    let r = audit("tetrahedron", &p);
    assert!(r.passed());
    let (lhs, rhs) = main_inequality_oracle(&p);
    assert_eq!(sides(&r, "main-inequality"), (json!(lhs), json!(rhs), Verdict::Pass));
    assert_eq!(sides(&r, "truncation-doubly-cm"), (json!(true), json!(true), Verdict::Pass));
    assert_eq!(sides(&r, "sufficient-inequality").2, Verdict::Pass);
}

#[test]
fn triangle_boundary() {
    let p = face_poset_of_complex(&simplex_boundary(2));
    let r = audit("triangle", &p);
    assert!(r.passed());
    // toric h = simplicial h = (1, 1, 1)
    assert_eq!(sides(&r, "toric-h-nonnegative").0, json!(1));
    assert_eq!(sides(&r, "defect-identity").2, Verdict::Pass);
    assert_eq!(r.hypothesis("meet-semilattice"), Some(true));
}

#[test]
fn three_cube_boundary() {
    let p = family("cube-boundary", &[3]);
    let r = audit("cube-boundary-3", &p);
    assert!(r.passed());
    let (lhs, rhs) = main_inequality_oracle(&p);
    assert_eq!(sides(&r, "main-inequality"), (json!(lhs), json!(rhs), Verdict::Pass));
    assert_eq!(sides(&r, "rho-surjective"), (json!(8), json!(8), Verdict::Pass));
    // h^(c)_2 = 2 f_1 - 3 f_0 + 4 with (f_0, f_1) = (8, 12).
    let by_rank = |k: usize| p.elements().filter(|&x| p.height(x) == k).count() as i64;
    assert_eq!((by_rank(1), by_rank(2), by_rank(3)), (8, 12, 6));
    assert_eq!(sides(&r, "cubical-h-nonnegative").0, json!(2 * by_rank(2) - 3 * by_rank(1) + 4));
    for id in ["defect-identity", "step-identity", "truncation-doubly-cm", "cubical-direct-formula"] {
        assert_eq!(sides(&r, id).2, Verdict::Pass, "{id}");
    }
}

#[test]
fn rank_one_is_trivial() {
    let p = FinitePoset::from_covers(&["0", "a", "b", "c"], &[("0", "a"), ("0", "b"), ("0", "c")]).unwrap();
    let r = audit("star", &p);
    assert!(r.passed());
    assert_eq!(sides(&r, "main-inequality").2, Verdict::Pass);
    assert_eq!(sides(&r, "defect-identity").2, Verdict::Inapplicable);
}

#[test]
fn failed_hypotheses_never_fail_checks() {
    // μ(0, d) = 2, so not lower Eulerian.
    let p = FinitePoset::from_covers(
        &["0", "a", "b", "c", "d"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "d"), ("b", "d"), ("c", "d")],
    )
    .unwrap();
    let r = audit("fan", &p);
    assert_eq!(r.hypothesis("lower-eulerian"), Some(false));
    assert!(r.passed());
    let main = r.check("main-inequality").unwrap();
    assert_eq!(main.verdict, Verdict::Inapplicable);
    assert!(main.witness["requires"].as_array().unwrap().contains(&json!("lower-eulerian")));
    // Hall's theorem holds regardless.
    assert_eq!(sides(&r, "hall").2, Verdict::Pass);

    let torus = face_poset_of_complex(&torus7());
    let r = audit("torus", &torus);
    assert_eq!(r.hypothesis("cohen-macaulay"), Some(false));
    assert_eq!(sides(&r, "main-inequality").2, Verdict::Inapplicable);
    assert!(r.passed());
}

#[test]
fn records_serialize_both_sides() {
    let r = audit("cycle-4", &family("cycle", &[4]));
    let v = serde_json::to_value(r.check("main-inequality").unwrap()).unwrap();
    assert_eq!(v["relation"], "ge");
    assert_eq!(v["verdict"], "pass");
    assert!(v.get("witness").is_none());
    assert!(v["anchor"].as_str().is_some_and(|s| !s.is_empty()));
}
