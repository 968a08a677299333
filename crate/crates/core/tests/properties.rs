//! Randomized comparisons of the library against brute-force oracles on
//! small complexes and their face posets.

mod common;

use posetlab::audit::{audit_poset, AuditOptions};
use posetlab::generators::face_poset_of_complex;
use posetlab::homology::{is_cohen_macaulay, reduced_homology, PrimeField};
use posetlab::hvectors::{simplicial_h, toric_h};
use posetlab::io::{complex_to_json, parse_instance, Instance};
use posetlab::SimplicialComplex;
use proptest::prelude::*;

use common::{chain_count_chi, chain_count_mobius, closure, dense_is_cm, dense_reduced_betti, h_from_f};

/// Generators as vertex subsets of `{0..n}`.
fn generators() -> impl Strategy<Value = Vec<Vec<u32>>> {
    (3u32..=6).prop_flat_map(|n| {
        prop::collection::vec(1u32..(1 << n), 1..6)
            .prop_map(move |masks| masks.into_iter().map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect()).collect())
    })
}

fn build(gens: &[Vec<u32>]) -> SimplicialComplex {
    let labeled: Vec<Vec<String>> = gens.iter().map(|g| g.iter().map(|v| format!("v{v}")).collect()).collect();
    SimplicialComplex::from_generators(&labeled).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mobius_is_hall_chain_count(gens in generators()) {
        let p = face_poset_of_complex(&build(&gens));
        let mu = p.mobius();
        for x in p.elements() {
            for y in p.elements().filter(|&y| p.le(x, y)) {
                prop_assert_eq!(mu.get(x, y), Some(chain_count_mobius(&p, x, y)));
            }
        }
    }

    #[test]
    fn betti_numbers_match_dense_elimination(gens in generators(), p in prop::sample::select(vec![2u32, 3, 101])) {
        let c = build(&gens);
        let h = reduced_homology(&c, PrimeField::new(p).unwrap());
        let oracle = dense_reduced_betti(&closure(&gens), p as u64);
        for (k, &b) in oracle.iter().enumerate() {
            prop_assert_eq!(h.betti(k as isize - 1), b, "degree {}", k as isize - 1);
        }
    }

    #[test]
    fn euler_characteristics_agree(gens in generators()) {
        let c = build(&gens);
        let faces = closure(&gens);
        let betti = dense_reduced_betti(&faces, 101);
        let alternating: i64 = betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { -(b as i64) } else { b as i64 }).sum();
        let p = face_poset_of_complex(&c);
        prop_assert_eq!(c.chi_tilde(), alternating);
        prop_assert_eq!(p.chi_tilde().ok(), chain_count_chi(&p));
        prop_assert_eq!(p.chi_tilde().unwrap(), alternating);
        prop_assert_eq!(p.psi().unwrap(), alternating);
    }

    #[test]
    fn cohen_macaulay_matches_link_oracle(gens in generators()) {
        let c = build(&gens);
        let verdict = is_cohen_macaulay(&c, PrimeField::default());
        prop_assert_eq!(verdict.holds, dense_is_cm(&closure(&gens), 101));
    }

    #[test]
    fn h_vectors_match_face_counts(gens in generators()) {
        let faces = closure(&gens);
        let d = faces.iter().map(Vec::len).max().unwrap();
        let f: Vec<i64> = (0..=d).map(|k| faces.iter().filter(|s| s.len() == k).count() as i64).collect();
        let p = face_poset_of_complex(&build(&gens));
        let h = simplicial_h(&p).unwrap();
        prop_assert_eq!(h.entries_i64().unwrap(), h_from_f(&f, d));
        prop_assert_eq!(toric_h(&p).unwrap().entries, h.entries);
    }

    #[test]
    fn audit_never_fails(gens in generators()) {
        let p = face_poset_of_complex(&build(&gens));
        let report = audit_poset("random", &p, AuditOptions::default());
        let failures: Vec<&str> = report.failures().map(|c| c.id.as_str()).collect();
        prop_assert!(failures.is_empty(), "{:?}", failures);
    }

    #[test]
    fn complex_json_roundtrip(gens in generators()) {
        let c = build(&gens);
        let text = complex_to_json("c", &c);
        let Instance::Complex { complex, .. } = parse_instance(&text).unwrap() else { panic!("complex expected") };
        prop_assert_eq!(complex.f_vector(), c.f_vector());
        prop_assert_eq!(complex_to_json("c", &complex), text);
    }
}
