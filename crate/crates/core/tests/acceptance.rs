//! Acceptance suite: one PASS/FAIL line per criterion, computed from a full
//! audit of the built-in suite plus independent recomputations.
//!
//! Lines are written straight to stdout so they show up without
//! `--nocapture`.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use posetlab::audit::{audit_suite, recompute_verdict, AuditOptions, AuditReport, SuiteReport, Verdict};
use posetlab::generators::{builtin_suite, simplex_boundary, FamilyParams, Generated};
use posetlab::homology::{classify, PrimeField};
use posetlab::hvectors::cubical_h;
use serde_json::json;

use common::{chain_count_chi, chain_count_mobius};

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: String) -> Self {
        Outcome { ok, detail }
    }
}

/// Checks with a given id, across the suite.
fn records<'a>(
    report: &'a SuiteReport,
    id: &'a str,
) -> impl Iterator<Item = (&'a AuditReport, &'a posetlab::audit::CheckRecord)> + 'a {
    report.instances.iter().filter_map(move |r| r.check(id).map(|c| (r, c)))
}

/// No failures among `ids`, and a pass on every instance selected by `need`.
fn all_pass(report: &SuiteReport, ids: &[&str], need: impl Fn(&AuditReport) -> bool) -> Outcome {
    let mut passes = 0;
    let mut bad = Vec::new();
    for id in ids {
        for (inst, c) in records(report, id) {
            match c.verdict {
                Verdict::Pass => passes += 1,
                Verdict::Fail => bad.push(format!("{}:{id} failed", inst.instance)),
                Verdict::Inapplicable if need(inst) => bad.push(format!("{}:{id} not evaluated", inst.instance)),
                Verdict::Inapplicable => {}
            }
        }
    }
    let ok = bad.is_empty() && passes > 0;
    let detail = if ok { format!("{passes} checks pass") } else { format!("{passes} pass; {}", summarize(&bad)) };
    Outcome::new(ok, detail)
}

fn summarize(items: &[String]) -> String {
    if items.is_empty() {
        return "nothing evaluated".into();
    }
    let head: Vec<&str> = items.iter().take(3).map(String::as_str).collect();
    format!("{} problems, e.g. {}", items.len(), head.join(", "))
}

fn holds(inst: &AuditReport, hyp: &str) -> bool {
    inst.hypothesis(hyp) == Some(true)
}

/// Instances satisfying the hypotheses of the main inequality.
fn qualifying(inst: &AuditReport) -> bool {
    holds(inst, "lower-eulerian") && holds(inst, "cohen-macaulay") && holds(inst, "rank-at-least-2")
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    let detail = format!("{}; {}", a.detail, b.detail);
    Outcome::new(a.ok && b.ok, detail)
}

fn check_lhs_rhs(report: &SuiteReport, instance: &str, id: &str) -> Option<(serde_json::Value, serde_json::Value)> {
    let inst = report.instances.iter().find(|r| r.instance == instance)?;
    let c = inst.check(id)?;
    Some((c.lhs.clone(), c.rhs.clone()))
}

#[test]
fn acceptance() {
    let field = PrimeField::default();
    let suite = builtin_suite();
    let started = Instant::now();
    let report = audit_suite("all", &suite, AuditOptions::new(field));
    let audit_time = started.elapsed();

    // Every recorded verdict must follow from the recorded values; a
    // mismatch invalidates whichever criterion relies on it.
    let mismatches: Vec<String> = report
        .instances
        .iter()
        .flat_map(|r| r.checks.iter().map(move |c| (r, c)))
        .filter(|(_, c)| recompute_verdict(c) != c.verdict)
        .map(|(r, c)| format!("{}:{}", r.instance, c.id))
        .collect();
    assert!(mismatches.is_empty(), "verdicts not recomputable: {mismatches:?}");

    let mut results: Vec<(&str, Outcome)> = Vec::new();

    // 1. Hall agreement, plus a chain-counting oracle on the smaller posets.
    {
        let max_elems = suite.iter().map(|i| i.poset.len()).max().unwrap_or(0);
        let mut oracle_bad = Vec::new();
        let mut oracle_pairs = 0usize;
        for inst in suite.iter().filter(|i| i.poset.len() <= 60) {
            let p = &inst.poset;
            let mu = p.mobius();
            for x in p.elements() {
                for y in p.elements().filter(|&y| p.lt(x, y)) {
                    oracle_pairs += 1;
                    if mu.get(x, y) != Some(chain_count_mobius(p, x, y)) {
                        oracle_bad.push(format!("{}:({},{})", inst.name, p.label(x), p.label(y)));
                    }
                }
            }
            if p.chi_tilde().ok() != chain_count_chi(p) {
                oracle_bad.push(format!("{}:chi", inst.name));
            }
        }
        let hall = all_pass(&report, &["hall"], |_| true);
        let ok = hall.ok
            && suite.len() >= 30
            && max_elems <= 2000
            && audit_time <= Duration::from_secs(120)
            && oracle_bad.is_empty();
        let detail = format!(
            "{} instances (max {} elements), {}; chain oracle on {oracle_pairs} pairs{}; audit {:.1}s",
            suite.len(),
            max_elems,
            hall.detail,
            if oracle_bad.is_empty() { String::new() } else { format!(" {}", summarize(&oracle_bad)) },
            audit_time.as_secs_f64()
        );
        results.push(("mobius-hall-agreement", Outcome::new(ok, detail)));
    }

    // 2. χ̃ = ψ on lower Eulerian instances.
    results.push(("chi-equals-psi", all_pass(&report, &["chi-psi"], |r| holds(r, "lower-eulerian"))));

    // 3. Atom removal on Boolean lattices and cube face lattices, with the
    // Möbius value recounted by chains.
    {
        let mut cases = Vec::new();
        for n in 2..=5 {
            cases.push((format!("boolean-{n}"), posetlab::generators::boolean_lattice(n).unwrap()));
        }
        for n in 1..=3 {
            cases.push((format!("cube-{n}"), posetlab::generators::cube_face_lattice(n).unwrap()));
        }
        let mut bad = Vec::new();
        let mut square = None;
        for (name, p) in &cases {
            let bottom = p.minimum().unwrap();
            let atoms: Vec<usize> = p.elements().filter(|&x| p.height(x) == 1).collect();
            let d = p.height(p.maximum().unwrap()) as u32;
            let mut keep = FixedBitSet::with_capacity(p.len());
            keep.insert_range(..);
            for &a in &atoms {
                keep.set(a, false);
            }
            let q = p.induced(&keep).unwrap();
            let q_bottom = q.index_of(p.label(bottom)).unwrap();
            let q_top = q.maximum().unwrap();
            let oracle = chain_count_mobius(&q, q_bottom, q_top);
            let expected = (-1i64).pow(d - 1) * (atoms.len() as i64 - 1);
            let audited = check_lhs_rhs(&report, name, "atom-removal-mobius");
            let agrees = audited == Some((json!(oracle), json!(expected)));
            if oracle != expected || !agrees {
                bad.push(format!("{name}: oracle {oracle}, formula {expected}, audit {audited:?}"));
            }
            if name == "cube-2" {
                square = Some(oracle);
            }
        }
        let ok = bad.is_empty() && square == Some(3);
        let detail =
            if ok { format!("{} lattices agree; square face lattice gives 3", cases.len()) } else { summarize(&bad) };
        results.push(("atom-removal-mobius", Outcome::new(ok, detail)));
    }

    // 4. Betti numbers of the interval poset.
    results.push(("interval-poset-homology", all_pass(&report, &["interval-homology"], |r| r.elements <= 60)));

    // 5. Lower Eulerian interval posets.
    results.push((
        "interval-poset-lower-eulerian",
        all_pass(&report, &["interval-poset-lower-eulerian"], |r| holds(r, "locally-eulerian")),
    ));

    // 6. Euler–Poincaré on every complex built.
    results.push(("euler-poincare", all_pass(&report, &["euler-poincare"], |_| true)));

    // 7. The main inequality.
    {
        let base = all_pass(&report, &["main-inequality"], qualifying);
        let in_range = report
            .instances
            .iter()
            .filter(|r| qualifying(r) && matches!(r.rank, Some(2..=4)))
            .filter(|r| r.check("main-inequality").map(|c| c.verdict) == Some(Verdict::Pass))
            .count();
        let cycle = check_lhs_rhs(&report, "cycle-4", "main-inequality");
        let cube = report
            .instances
            .iter()
            .find(|r| r.instance == "cube-boundary-3")
            .and_then(|r| r.check("main-inequality"))
            .map(|c| c.verdict);
        let ok = base.ok
            && in_range >= 15
            && cycle == Some((json!(4), json!(2)))
            && cube == Some(Verdict::Pass)
            && audit_time <= Duration::from_secs(600);
        let detail = format!("{}; {in_range} qualifying of rank 2..4; 4-cycle {:?}", base.detail, cycle);
        results.push(("main-inequality", Outcome::new(ok, detail)));
    }

    // 8. Proof identities and the greedy basis.
    results.push((
        "proof-identities-and-basis",
        all_pass(
            &report,
            &[
                "defect-identity",
                "step-identity",
                "step-interval-route",
                "omega-span",
                "basis-cardinality",
                "sufficient-inequality",
                "basis-order-independence",
            ],
            qualifying,
        ),
    ));

    // 9. h-vector identities and nonnegativity corollaries.
    results.push((
        "h-vector-identities",
        both(
            all_pass(&report, &["identity-simplicial", "alpha-simplicial"], |r| {
                qualifying(r) && holds(r, "simplicial")
            }),
            both(
                all_pass(
                    &report,
                    &["identity-cubical", "alpha-cubical", "cubical-h-nonnegative", "cubical-h-top-nonnegative"],
                    |r| qualifying(r) && holds(r, "cubical"),
                ),
                all_pass(&report, &["toric-h-nonnegative", "toric-h-top-nonnegative"], |r| {
                    qualifying(r) && holds(r, "meet-semilattice")
                }),
            ),
        ),
    ));

    // 10. Toric h-vectors.
    results.push((
        "toric-h-vectors",
        all_pass(&report, &["toric-equals-simplicial", "dehn-somerville", "toric-boundary-entries"], |r| {
            holds(r, "lower-eulerian") && holds(r, "rank-at-least-1") && holds(r, "simplicial")
        }),
    ));

    // 11. Cubical h-vectors, with the 4-cycle computed afresh.
    {
        let base = all_pass(
            &report,
            &[
                "cubical-division-exact",
                "cubical-top-entry",
                "cubical-coefficient-comparison",
                "cubical-direct-formula",
                "hetyei-decomposition",
            ],
            |r| qualifying(r) && holds(r, "cubical"),
        );
        let Generated::Poset(c4) = FamilyParams::new("cycle", &[4], 0).build().unwrap() else {
            panic!("cycle family yields a poset")
        };
        let h = cubical_h(&c4).unwrap().entries_i64();
        let ok = base.ok && h == Some(vec![2, 2, 2]);
        results.push(("cubical-h-vectors", Outcome::new(ok, format!("{}; 4-cycle h^c = {h:?}", base.detail))));
    }

    // 12. Classifiers on simplex boundaries, the equivalence, surjectivity.
    {
        let mut bad = Vec::new();
        for k in 1..=5 {
            let c = classify(&simplex_boundary(k), field);
            if !(c.gorenstein_star.holds && c.doubly_cohen_macaulay.holds && c.buchsbaum_star.holds) {
                bad.push(format!("boundary of {k}-simplex"));
            }
        }
        let spheres = match bad.is_empty() {
            true => Outcome::new(true, "simplex boundaries k=1..5 classify".into()),
            false => Outcome::new(false, summarize(&bad)),
        };
        let rest = all_pass(&report, &["aw-equivalence-bar", "aw-equivalence-truncation", "rho-surjective"], |r| {
            qualifying(r) && holds(r, "maximal-intervals-doubly-cm")
        });
        results.push(("classifiers", both(spheres, rest)));
    }

    // 13. Determinism of the serialized report.
    {
        let again = audit_suite("all", &suite, AuditOptions::new(field));
        let same = again.to_json() == report.to_json();
        results.push(("deterministic-report", Outcome::new(same, format!("{} bytes", report.to_json().len()))));
    }

    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    for (i, (name, o)) in results.iter().enumerate() {
        let tag = if o.ok { "PASS" } else { "FAIL" };
        writeln!(out, "[{tag}] {:>2} {name}: {}", i + 1, o.detail).unwrap();
    }
    out.flush().unwrap();
    let failed: Vec<&str> = results.iter().filter(|(_, o)| !o.ok).map(|(n, _)| *n).collect();
    assert_eq!(results.len(), 13);
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
