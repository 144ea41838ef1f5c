use std::path::PathBuf;
use std::process::Command;

use posetlab::PosetDocument;
use posetlab_core::verify::enumerate_posets;
use posetlab_core::{Equivalence, PosetMap};
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_posetlab"))
        .args(args)
        .env("POSETLAB_WORKERS", "2")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn check_reports_witnesses() {
    assert_eq!(run(&["check", &fixture("butterfly_top.poset"), "ucp"]), (1, "false, witness (a,b)\n".into(), String::new()));
    assert_eq!(run(&["check", &fixture("butterfly_top.poset"), "strictly-monotone"]).0, 0);
    assert_eq!(run(&["check", &fixture("butterfly_top.poset"), "up-directed"]).0, 0);
    assert_eq!(run(&["check", &fixture("butterfly_top.poset"), "join-semilattice"]).1, "false, witness (a,b)\n");
    assert_eq!(run(&["check", &fixture("singleton.poset"), "monotone"]), (0, "true\n".into(), String::new()));
    assert_eq!(run(&["check", &fixture("butterfly_bounded.poset"), "strongly-monotone"]).1, "true\n");
    assert_eq!(run(&["check", &fixture("butterfly_bounded.poset"), "s-equivalence"]).1, "true\n");
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = run(&["check", &fixture("butterfly_top.poset"), "shiny"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown property `shiny`"), "{err}");
    let (code, _, err) = run(&["check", &fixture("chain2.poset"), "ucp"]);
    assert_eq!(code, 2);
    assert!(err.contains("needs a `map:` line"), "{err}");
    assert_eq!(run(&["verify", "no-such-statement"]).0, 2);
    assert_eq!(run(&["verify", "redirect-ucp", "--n-max", "7"]).0, 2);
    assert_eq!(run(&["search", "--hypothesis", "monotone", "--conclusion", "nope"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn bad_worker_count_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_posetlab"))
        .arg("list")
        .env("POSETLAB_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_name_file_and_line() {
    let dir = std::env::temp_dir().join(format!("posetlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.poset");
    std::fs::write(&path, "elements: a b\ncover: a < b\ncover: b < a\n").unwrap();
    let (code, _, err) = run(&["print", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("broken.poset: line 3: cycle"), "{err}");
}

#[test]
fn quotient_of_bounded_butterfly_is_a_chain() {
    let (code, out, _) = run(&["quotient", &fixture("butterfly_bounded.poset")]);
    assert_eq!(code, 0);
    assert_eq!(out, "elements: [0] [a] [c] [1]\ncover: [0] < [a]\ncover: [a] < [c]\ncover: [c] < [1]\n");
}

#[test]
fn quotient_rejects_bad_classes() {
    let dir = std::env::temp_dir().join(format!("posetlab-q-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.poset");
    std::fs::write(&path, "elements: x y z\ncover: x < y\ncover: y < z\nclasses: {x,z}{y}\n").unwrap();
    let (code, out, err) = run(&["quotient", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (1, ""));
    assert!(err.starts_with("not an S-equivalence"), "{err}");
}

#[test]
fn dot_edges_are_covers() {
    let (code, dot, _) = run(&["export-dot", &fixture("butterfly_bounded.poset")]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph poset {"));
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 8);
    assert!(dot.contains("\"0\" -> \"a\";"));
}

#[test]
fn sums_and_products() {
    let (_, sum, _) = run(&["sum", &fixture("antichain2.poset"), &fixture("chain2.poset")]);
    assert_eq!(sum, "elements: p q x y\ncover: p < x\ncover: q < x\ncover: x < y\n");
    let (_, product, _) = run(&["product", &fixture("chain2.poset"), &fixture("antichain2.poset")]);
    let doc = PosetDocument::parse(&product).unwrap();
    assert_eq!(doc.poset.len(), 4);
    assert_eq!(doc.poset.covers().len(), 2);
    // clashing labels are kept apart
    let (code, sum, _) = run(&["sum", &fixture("chain2.poset"), &fixture("chain2.poset")]);
    assert_eq!(code, 0);
    assert_eq!(PosetDocument::parse(&sum).unwrap().poset.len(), 4);
}

#[test]
fn verify_and_search_report_verdicts() {
    let (code, out, _) = run(&["verify", "redirect-ucp", "--n-max", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("verdict redirect-ucp holds instances="), "{out}");
    let (code, out, _) = run(&["search", "--hypothesis", "monotone", "--conclusion", "ucp", "--json"]);
    assert_eq!(code, 1);
    let records: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(records[0]["statement"], "search:monotone=>ucp");
    assert_eq!(records[0]["holds"], false);
    assert_eq!(records[0]["witness"]["map"], serde_json::json!(["a", "a"]));
    let (code, _, _) = run(&["search", "--hypothesis", "ucp", "--conclusion", "monotone", "--iso-dedup", "--seed", "7"]);
    assert_eq!(code, 0);
}

#[test]
fn list_names_every_statement() {
    let (code, out, _) = run(&["list"]);
    assert_eq!(code, 0);
    for s in posetlab_core::verify::statements() {
        assert!(out.contains(s.id), "{}", s.id);
    }
}

fn arb_document() -> impl Strategy<Value = PosetDocument> {
    (1usize..=4)
        .prop_flat_map(|n| {
            let count = enumerate_posets(n, false).unwrap().count();
            (Just(n), 0..count, proptest::collection::vec(0..n, n), proptest::collection::vec(0..n, n), any::<(bool, bool)>())
        })
        .prop_map(|(n, pick, image, ids, (with_map, with_classes))| {
            let mut doc = PosetDocument::new(enumerate_posets(n, false).unwrap().nth(pick).unwrap());
            if with_map {
                doc.map = Some(PosetMap::self_map(doc.poset.clone(), image).unwrap());
            }
            if with_classes {
                doc.classes = Some(Equivalence::from_class_ids(&ids));
            }
            doc
        })
}

proptest! {
    #[test]
    fn documents_round_trip(doc in arb_document()) {
        let text = doc.to_string();
        let parsed = PosetDocument::parse(&text).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(parsed.to_string(), text);
    }
}
