//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs without the libtest harness so the lines always print:
//! `cargo test -p posetlab --test acceptance`.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use posetlab::PosetDocument;
use posetlab_core::constructions::{is_s_equivalence, quotient_poset};
use posetlab_core::mappings::{enumerate_maps, redirect_map, ConeRange};
use posetlab_core::verify::{self, enumerate_posets, enumerate_posets_up_to, Scope, Verdict};
use posetlab_core::{ElementSet, Equivalence, MapClass, Poset, PosetMap};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn set(p: &Poset, labels: &[&str]) -> ElementSet {
    labels.iter().map(|l| p.index_of(l).unwrap()).fold(ElementSet::EMPTY, ElementSet::with)
}

/// Runs statements at the given budget (or their default) and summarizes.
fn statements(ids: &[&str], n_max: Option<usize>, limit: Duration) -> Check {
    let start = Instant::now();
    let mut parts = Vec::new();
    for id in ids {
        let v: Verdict = verify::run_statement(id, Scope { n_max, iso_dedup: false }).map_err(|e| e.to_string())?;
        if !v.holds {
            return Err(format!("{id} fails:\n{v}"));
        }
        parts.push(format!("{id}:{}", v.instances_checked));
    }
    let elapsed = start.elapsed();
    within(elapsed, limit)?;
    Ok(format!("{} in {elapsed:.2?}", parts.join(" ")))
}

fn butterfly_fixture() -> Check {
    let start = Instant::now();
    let p = Arc::new(posetlab_core::samples::butterfly_top());
    let f = PosetMap::from_labels(p.clone(), &["c", "c", "c", "1", "1"]).map_err(|e| e.to_string())?;
    ensure(f.is_ucp() == Ok(true) && f.is_monotone(), "f = (c,c,c,1,1) is monotone and ucp")?;
    let (a, b) = (p.index_of("a").unwrap(), p.index_of("b").unwrap());
    let g = redirect_map(&p, a, b).map_err(|e| e.to_string())?;
    ensure(g.is_monotone() && g.is_strictly_monotone(), "g is monotone and strictly monotone")?;
    ensure(g.is_ucp() == Ok(false), "g is not ucp")?;
    ensure(g.cone_violation(ConeRange::All) == Ok(Some((a, b))), "g fails at (a,b)")?;
    let image = g.image_of(p.upper_cone_pair(a, b));
    let target = p.upper_cone_pair(g.apply(a), g.apply(b));
    ensure(image == set(&p, &["c", "d", "1"]), "g(U(a,b)) = {c,d,1}")?;
    ensure(target == set(&p, &["b", "c", "d", "1"]), "U(g(a),g(b)) = {b,c,d,1}")?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!(
        "g(U(a,b)) = {} != {} = U(g(a),g(b)) in {elapsed:.2?}",
        p.format_set(image),
        p.format_set(target)
    ))
}

fn quotient_fixture() -> Check {
    let start = Instant::now();
    let p = Arc::new(posetlab_core::samples::butterfly_bounded());
    let f = PosetMap::from_labels(p.clone(), &["0", "a", "a", "c", "c", "1"]).map_err(|e| e.to_string())?;
    ensure(f.is_strongly_monotone(), "f = (0,a,a,c,c,1) is strongly monotone")?;
    let kernel = f.kernel();
    let stated = Equivalence::from_blocks(6, &[vec![0], vec![1, 2], vec![3, 4], vec![5]]).map_err(|e| e.to_string())?;
    ensure(kernel == stated, "ker f = {0}{a,b}{c,d}{1}")?;
    ensure(is_s_equivalence(&p, &kernel), "ker f is an S-equivalence")?;
    let q = quotient_poset(&p, &kernel).map_err(|e| e.to_string())?;
    ensure(q.poset.len() == 4 && q.poset.is_chain(), "quotient is a 4-chain")?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!("quotient {} in {elapsed:.2?}", q.poset.labels().join(" < ")))
}

fn all_tables(n: usize) -> Vec<Vec<usize>> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|t| (0..n).map(move |v| [t.clone(), vec![v]].concat()))
            .collect()
    })
}

/// Counts reflexive, antisymmetric, transitive relations by scanning every
/// off-diagonal relation.
fn relation_scan(n: usize) -> usize {
    let off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    (0u64..1 << off.len())
        .filter(|bits| {
            let mut r = vec![vec![false; n]; n];
            for (k, &(i, j)) in off.iter().enumerate() {
                r[i][j] = bits >> k & 1 == 1;
            }
            (0..n).all(|i| {
                (0..n).all(|j| {
                    (i == j || !(r[i][j] && r[j][i]))
                        && (0..n).all(|k| i == j || j == k || !(r[i][j] && r[j][k]) || i == k || r[i][k])
                })
            })
        })
        .count()
}

fn enumeration_oracles() -> Check {
    let mut maps = 0;
    for p in enumerate_posets_up_to(3, false).map_err(|e| e.to_string())? {
        let p = Arc::new(p);
        for class in MapClass::ALL {
            let fast: BTreeSet<Vec<usize>> = enumerate_maps(&p, class).map(|f| f.into_image()).collect();
            let slow: BTreeSet<Vec<usize>> = all_tables(p.len())
                .into_iter()
                .filter(|t| class.contains(&PosetMap::self_map(p.clone(), t.clone()).unwrap()))
                .collect();
            ensure(fast == slow, format!("{} maps differ on {:?}", class.name(), p.labels()))?;
            maps += fast.len();
        }
    }
    let mut counts = Vec::new();
    for n in 1..=4 {
        let labeled = enumerate_posets(n, false).map_err(|e| e.to_string())?.count();
        let oracle = relation_scan(n);
        ensure(labeled == oracle, format!("n={n}: {labeled} posets, oracle {oracle}"))?;
        counts.push(labeled.to_string());
    }
    Ok(format!("{maps} class members agree; poset counts {}", counts.join(",")))
}

fn run_cli(args: &[&str]) -> (u8, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_posetlab")).args(args).output().expect("cli runs");
    (
        out.status.code().unwrap_or(-1) as u8,
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn cli_contract() -> Check {
    let fixture = |name: &str| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("fixtures")
            .join(name)
            .to_string_lossy()
            .into_owned()
    };
    let top = fixture("butterfly_top.poset");
    let (code, out, _) = run_cli(&["check", &top, "ucp"]);
    ensure(code == 1 && out == "false, witness (a,b)\n", format!("check ucp: {code} {out:?}"))?;
    let (code, out, _) = run_cli(&["check", &top, "monotone"]);
    ensure(code == 0 && out == "true\n", format!("check monotone: {code} {out:?}"))?;
    let (code, _, err) = run_cli(&["check", &top, "no-such-property"]);
    ensure(code == 2 && !err.is_empty(), format!("unknown property exits {code}"))?;
    let (code, _, _) = run_cli(&["check", &fixture("missing.poset"), "ucp"]);
    ensure(code == 2, format!("missing file exits {code}"))?;

    let (code, printed, _) = run_cli(&["print", &top]);
    ensure(code == 0, "print exits 0")?;
    let original = PosetDocument::parse(&std::fs::read_to_string(&top).unwrap()).map_err(|e| e.to_string())?;
    let reparsed = PosetDocument::parse(&printed).map_err(|e| e.to_string())?;
    ensure(original == reparsed, "print then parse is the identity")?;

    let start = Instant::now();
    let (code, out, _) = run_cli(&["verify", "all", "--n-max", "3"]);
    let elapsed = start.elapsed();
    let total = verify::statements().len();
    ensure(code == 0 && out.ends_with(&format!("{total}/{total} hold\n")), format!("verify all: {code}"))?;
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("exit codes 0/1/2, round trip, verify all --n-max 3 in {elapsed:.2?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("butterfly fixture: f ucp, g strictly monotone but not ucp", butterfly_fixture),
        ("bounded butterfly: kernel, S-equivalence, 4-chain quotient", quotient_fixture),
        ("iff suites over all labeled posets n <= 5", || {
            statements(
                &["constant-map-ucp", "redirect-strictly-monotone", "redirect-ucp", "redirect-cover", "redirect-strictly-ucp"],
                Some(5),
                Duration::from_secs(60),
            )
        }),
        ("map-quantified suites at default budgets", || {
            statements(
                &[
                    "monotone-cone-facts",
                    "injective-filter-ucp",
                    "chain-maps",
                    "semilattice-chain",
                    "chain-product-homomorphism",
                    "decomposition",
                    "minimal-upper-bound",
                    "ordinal-sum",
                    "quotient",
                ],
                None,
                Duration::from_secs(600),
            )
        }),
        ("enumeration oracles", enumeration_oracles),
        ("class inclusions exhaustively at n <= 4", || {
            statements(&["class-inclusions", "monotone-cone-facts"], Some(4), Duration::from_secs(60))
        }),
        ("decomposition round trip on products of <= 9 elements", || {
            statements(&["decomposition"], Some(9), Duration::from_secs(600))
        }),
        ("cli contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}  ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}  ({why})", i + 1);
            }
        }
    }
    println!("{}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
