use std::collections::BTreeSet;

use foldcx::budget::Budgets;
use foldcx::verify::{
    closure_search, enumerate_immersions, family_survey, find_map, verify_main_theorem,
    EnumerationFilter,
};
use foldcx::{build_d, canonical_form, Variant};

/// Closure from `D_0` and the enumeration agree on what `D_0` can grow into.
#[test]
fn closure_from_d0_matches_enumeration() {
    const FACES: usize = 4;
    let budgets = Budgets::default();
    let classes = enumerate_immersions(&EnumerationFilter::closed(FACES, &[0, 1]), &budgets)
        .unwrap()
        .classes;
    for v in [Variant::Standard, Variant::Tilde] {
        let d0 = build_d(0, v);
        let closure = closure_search(&d0, FACES, &budgets).unwrap();
        let found: BTreeSet<Vec<u8>> = closure
            .results
            .iter()
            .map(|r| canonical_form(&r.complex))
            .collect();
        let reachable: BTreeSet<Vec<u8>> = classes
            .iter()
            .filter(|x| x.domain.num_faces() <= FACES && find_map(&d0, x).unwrap().is_some())
            .map(canonical_form)
            .collect();
        assert_eq!(found, reachable, "{v:?}");
        assert!(closure.max_depth >= 2);
    }
}

#[test]
fn reports_are_reproducible() {
    let a = verify_main_theorem(3, &Budgets::default()).unwrap();
    let b = verify_main_theorem(3, &Budgets::default()).unwrap();
    assert!(a.passed());
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn every_d_i_collapses() {
    let r = family_survey(8, &Budgets::default()).unwrap();
    assert!(r.passed(), "{}", r.to_table());
    assert!(r.rows.iter().any(|row| row.input.contains("collapse")));
}

#[test]
fn budgets_are_hard_limits() {
    let tiny = Budgets {
        enumeration_nodes: 10,
        ..Budgets::default()
    };
    let err = enumerate_immersions(&EnumerationFilter::closed(3, &[0, 1]), &tiny).unwrap_err();
    assert!(err.is_budget());
}
