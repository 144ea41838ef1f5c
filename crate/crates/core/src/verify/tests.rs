use std::sync::Arc;

use super::*;
use crate::mappings::{constant_map, enumerate_maps, MapClass, PosetMap};
use crate::samples;

#[test]
fn every_statement_holds_at_three() {
    for s in statements() {
        let v = s.run(Scope::with_n_max(3.min(s.max_n_max))).unwrap();
        assert!(v.holds, "{v}");
        assert!(v.instances_checked > 0, "{}", s.id);
        assert!(v.witness.is_none());
    }
}

#[test]
fn iso_dedup_runs_fewer_instances() {
    let full = run_statement("redirect-ucp", Scope::with_n_max(4)).unwrap();
    let dedup = run_statement(
        "redirect-ucp",
        Scope {
            n_max: Some(4),
            iso_dedup: true,
        },
    )
    .unwrap();
    assert!(full.holds && dedup.holds);
    assert!(dedup.instances_checked < full.instances_checked);
}

#[test]
fn budgets_are_validated() {
    assert_eq!(
        run_statement("constant-map-ucp", Scope::with_n_max(7)).unwrap_err(),
        VerifyError::SizeOutOfRange { n: 7, max: 6 }
    );
    assert!(run_statement("constant-map-ucp", Scope::with_n_max(0)).is_err());
    assert_eq!(
        run_statement("nope", Scope::default()).unwrap_err(),
        VerifyError::UnknownStatement("nope".into())
    );
    // run_all caps explicit budgets instead of failing
    assert!(run_all(Scope::with_n_max(2)).unwrap().iter().all(|v| v.holds));
}

#[test]
fn single_element_semilattice_is_vacuous() {
    let v = verify_semilattice_chain(1).unwrap();
    assert!(v.holds);
    assert_eq!(v.instances_checked, 2);
}

#[test]
fn butterfly_instances() {
    let p = samples::butterfly_top();
    let inst = Instance::new(p.clone());
    for id in ["constant-map-ucp", "redirect-strictly-monotone", "redirect-ucp", "minimal-upper-bound"] {
        let outcome = statement(id).unwrap().check_instance(&inst);
        assert!(outcome.failure.is_none(), "{id}");
    }
    // both sides of the constant-map statement agree at the top element
    let shared = Arc::new(p);
    let top = shared.element("1").unwrap();
    assert!(constant_map(&shared, top).unwrap().is_ucp().unwrap());
    assert!(shared.is_up_directed() && shared.is_maximal(top));
}

#[test]
fn square_join_counterexample() {
    let inst = Instance::new(samples::square());
    assert!(statement("semilattice-chain").unwrap().check_instance(&inst).failure.is_none());
}

#[test]
fn ordinal_sum_of_two_antichain_and_point() {
    let v = verify_ordinal_sum(1).unwrap();
    assert!(v.holds);
    let p = crate::constructions::ordinal_sum(&samples::antichain(2), &samples::chain(1)).unwrap();
    let inst = Instance::with_params(p, vec![2, 1]);
    let outcome = statement("ordinal-sum").unwrap().check_instance(&inst);
    assert!(outcome.failure.is_none());
    // any self-map of the antichain, with the top fixed
    assert_eq!(outcome.checked, 4);
}

#[test]
fn chain_product_counts_pairs() {
    let p = crate::constructions::direct_product(&samples::chain(2), &samples::chain(2)).unwrap();
    let inst = Instance::with_params(p, vec![2, 2]);
    let outcome = statement("chain-product-homomorphism").unwrap().check_instance(&inst);
    assert!(outcome.failure.is_none());
    // 3 * 3 decomposable monotone maps plus the count comparison
    assert_eq!(outcome.checked, 10);
}

#[test]
fn monotone_does_not_imply_ucp() {
    let v = search_counterexample("monotone", "ucp", Scope::with_n_max(2)).unwrap();
    assert!(!v.holds);
    let w = v.witness.as_ref().unwrap();
    // the first poset with a counterexample is the 2-antichain, and the
    // first monotone map there is the constant map to `a`
    assert!(w.poset.is_antichain() && w.poset.len() == 2);
    assert_eq!(w.map.as_deref(), Some(&[0, 0][..]));
    assert!(replay(&v).unwrap());
}

#[test]
fn ucp_implies_monotone_by_search() {
    let v = search_counterexample("ucp", "monotone", Scope::with_n_max(4)).unwrap();
    assert!(v.holds);
    assert!(v.witness.is_none());
    assert_eq!(replay(&v), Err(VerifyError::NoWitness));
    let trivial = search_counterexample("identity", "true", Scope::with_n_max(3)).unwrap();
    assert!(trivial.holds);
    // one identity per poset
    assert_eq!(trivial.instances_checked, 1 + 3 + 19);
}

#[test]
fn search_rejects_unknown_predicates() {
    assert_eq!(
        search_counterexample("monotone", "shiny", Scope::default()).unwrap_err(),
        VerifyError::UnknownPredicate("shiny".into())
    );
}

#[test]
fn tampered_witness_does_not_replay() {
    let mut v = search_counterexample("monotone", "ucp", Scope::with_n_max(2)).unwrap();
    // the top element of a chain: the constant map there is ucp
    let w = v.witness.as_mut().unwrap();
    w.poset = samples::chain(2);
    w.map = Some(vec![1, 1]);
    assert!(!replay(&v).unwrap());
}

#[test]
fn statement_witness_replays() {
    // a search verdict carries a statement-free witness; rebuild a failing
    // outcome for a statement by feeding it a non-chain as a "chain"
    let inst = Instance::new(samples::antichain(2));
    let outcome = statement("chain-maps").unwrap().check_instance(&inst);
    let w = outcome.failure.expect("an antichain breaks the chain characterization");
    let v = Verdict {
        statement_id: "chain-maps".into(),
        holds: false,
        instances_checked: outcome.checked,
        witness: Some(w),
        note: None,
        elapsed: Default::default(),
    };
    assert!(replay(&v).unwrap());
}

#[test]
fn runs_are_deterministic() {
    for id in ["monotone-cone-facts", "quotient", "decomposition"] {
        let a = run_statement(id, Scope::with_n_max(3)).unwrap();
        let b = run_statement(id, Scope::with_n_max(3)).unwrap();
        assert!(a.same_outcome(&b), "{id}");
    }
    let a = search_counterexample("strictly-monotone", "ucp", Scope::with_n_max(4)).unwrap();
    let b = search_counterexample("strictly-monotone", "ucp", Scope::with_n_max(4)).unwrap();
    assert!(a.same_outcome(&b));
    assert!(!a.holds);
}

#[test]
fn search_uses_class_enumeration() {
    let p = Arc::new(samples::chain(4));
    let monotone: Vec<PosetMap> = enumerate_maps(&p, MapClass::Monotone).collect();
    assert_eq!(monotone.len(), 35);
    let v = search_counterexample("monotone", "true", Scope::with_n_max(1)).unwrap();
    assert_eq!(v.instances_checked, 1);
}

#[test]
fn text_and_records() {
    let v = search_counterexample("monotone", "ucp", Scope::with_n_max(2)).unwrap();
    let text = v.to_string();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("verdict search:monotone=>ucp fails instances="));
    assert!(lines.contains(&"  witness.poset: elements: a b"));
    assert!(lines.contains(&"  witness.map: a->a b->a"));
    assert!(lines.contains(&"  witness.clause: monotone => ucp"));

    let record = VerdictRecord::from(&v);
    let w = record.witness.as_ref().unwrap();
    assert_eq!(w.poset.elements, ["a", "b"]);
    assert!(w.poset.covers.is_empty());
    assert_eq!(w.map.as_deref(), Some(&["a".to_owned(), "a".to_owned()][..]));

    let held = verify_constant_map_ucp(2).unwrap();
    assert!(held.to_string().starts_with("verdict constant-map-ucp holds instances="));
    assert!(VerdictRecord::from(&held).witness.is_none());
}

#[test]
fn quotient_records_classes() {
    let p = samples::butterfly_bounded();
    let theta = crate::mappings::Equivalence::from_blocks(6, &[vec![0], vec![1, 2], vec![3, 4], vec![5]]).unwrap();
    let w = Witness::new(&p, "example").classes(&theta).elements(&[1, 2]);
    let record = WitnessRecord::from(&w);
    assert_eq!(
        record.classes.unwrap(),
        vec![vec!["0"], vec!["a", "b"], vec!["c", "d"], vec!["1"]]
    );
    assert_eq!(record.elements, ["a", "b"]);
    assert_eq!(record.poset.covers.len(), 8);
}
