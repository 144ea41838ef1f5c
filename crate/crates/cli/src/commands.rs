//! Command implementations. Each returns a [`Report`] carrying the text to
//! print and the exit code; errors map to exit code 2.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use posetlab_core::constructions::{self, quotient_poset, ConstructionError};
use posetlab_core::mappings::StrongMonotoneViolation;
use posetlab_core::verify::{self, Scope, Verdict, VerdictRecord, VerifyError};
use posetlab_core::PosetMap;
use thiserror::Error;

use crate::document::{ParseError, PosetDocument};
use crate::dot::to_dot;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILS: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("unknown property `{0}` (see `posetlab list`)")]
    UnknownProperty(String),
    #[error("property `{0}` needs a `map:` line")]
    MissingMap(String),
    #[error("property `{0}` needs a `classes:` line")]
    MissingClasses(String),
    #[error("quotient needs a `classes:` or `map:` line")]
    NothingToQuotient,
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Report {
    fn ok(stdout: String) -> Report {
        Report {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn verdict(stdout: String, holds: bool) -> Report {
        Report {
            stdout,
            stderr: String::new(),
            code: if holds { EXIT_OK } else { EXIT_FAILS },
        }
    }
}

pub fn load(path: &Path) -> Result<PosetDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    PosetDocument::parse(&text).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

/// What a property needs from the document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subject {
    Map,
    Poset,
    Classes,
}

/// Properties accepted by `check`, with what each one inspects.
pub const PROPERTIES: [(&str, Subject); 16] = [
    ("monotone", Subject::Map),
    ("strictly-monotone", Subject::Map),
    ("ucp", Subject::Map),
    ("strictly-ucp", Subject::Map),
    ("strongly-ucp", Subject::Map),
    ("strongly-monotone", Subject::Map),
    ("injective", Subject::Map),
    ("principal-filters", Subject::Map),
    ("join-homomorphism", Subject::Map),
    ("meet-homomorphism", Subject::Map),
    ("up-directed", Subject::Poset),
    ("chain", Subject::Poset),
    ("antichain", Subject::Poset),
    ("join-semilattice", Subject::Poset),
    ("meet-semilattice", Subject::Poset),
    ("s-equivalence", Subject::Classes),
];

/// `Ok(None)` when the property holds, `Ok(Some(reason))` when it fails.
pub fn evaluate(doc: &PosetDocument, property: &str) -> Result<Option<String>, CliError> {
    let subject = PROPERTIES
        .iter()
        .find(|(name, _)| *name == property)
        .map(|&(_, s)| s)
        .ok_or_else(|| CliError::UnknownProperty(property.to_owned()))?;
    let p = &*doc.poset;
    let pair = |(x, y): (usize, usize)| format!("witness ({},{})", p.label(x), p.label(y));
    Ok(match subject {
        Subject::Map => {
            let f = doc.map.as_ref().ok_or_else(|| CliError::MissingMap(property.to_owned()))?;
            evaluate_map(f, property, pair)
        }
        Subject::Poset => {
            let n = p.len();
            let first_pair = |bad: &dyn Fn(usize, usize) -> bool| {
                (0..n).flat_map(|x| (x..n).map(move |y| (x, y))).find(|&(x, y)| bad(x, y))
            };
            let found = match property {
                "up-directed" => first_pair(&|x, y| p.upper_cone_pair(x, y).is_empty()),
                "chain" => first_pair(&|x, y| p.incomparable(x, y)),
                "antichain" => first_pair(&|x, y| x != y && p.comparable(x, y)),
                "join-semilattice" => first_pair(&|x, y| p.join(x, y).is_none()),
                "meet-semilattice" => first_pair(&|x, y| p.meet(x, y).is_none()),
                _ => unreachable!("registered poset property"),
            };
            found.map(pair)
        }
        Subject::Classes => {
            let theta = doc.classes.as_ref().ok_or_else(|| CliError::MissingClasses(property.to_owned()))?;
            constructions::s_equivalence_violation(p, theta)?.map(|v| v.describe(p))
        }
    })
}

fn evaluate_map(f: &PosetMap, property: &str, pair: impl Fn((usize, usize)) -> String) -> Option<String> {
    let cone = |r: Result<Option<(usize, usize)>, _>| r.expect("documents hold self-maps").map(&pair);
    let homomorphism = |r: Result<Option<(usize, usize)>, posetlab_core::mappings::MapError>| match r {
        Ok(v) => v.map(&pair),
        Err(e) => Some(e.to_string()),
    };
    use posetlab_core::mappings::ConeRange;
    match property {
        "monotone" => f.monotone_violation().map(&pair),
        "strictly-monotone" => f.strict_monotone_violation().map(&pair),
        "ucp" => cone(f.cone_violation(ConeRange::All)),
        "strictly-ucp" => cone(f.cone_violation(ConeRange::Distinct)),
        "strongly-ucp" => cone(f.cone_violation(ConeRange::DistinctImages)),
        "strongly-monotone" => f.strongly_monotone_violation().map(|v| match v {
            StrongMonotoneViolation::NotMonotone(x, y) => format!("{}, not monotone", pair((x, y))),
            StrongMonotoneViolation::Unrealized(x, y) => format!("{}, image relation not realized", pair((x, y))),
        }),
        "injective" => f.injective_violation().map(&pair),
        "principal-filters" => f
            .principal_filter_violation()
            .map(|x| format!("witness ({})", f.dom().label(x))),
        "join-homomorphism" => homomorphism(f.join_homomorphism_violation()),
        "meet-homomorphism" => homomorphism(f.meet_homomorphism_violation()),
        _ => unreachable!("registered map property"),
    }
}

pub fn cmd_check(doc: &PosetDocument, property: &str) -> Result<Report, CliError> {
    Ok(match evaluate(doc, property)? {
        None => Report::verdict("true\n".into(), true),
        Some(reason) => Report::verdict(format!("false, {reason}\n"), false),
    })
}

fn render(verdicts: &[Verdict], json: bool) -> Result<String, CliError> {
    if json {
        let records: Vec<VerdictRecord> = verdicts.iter().map(VerdictRecord::from).collect();
        return Ok(serde_json::to_string_pretty(&records)? + "\n");
    }
    let mut out = String::new();
    for v in verdicts {
        out.push_str(&v.to_string());
    }
    let holding = verdicts.iter().filter(|v| v.holds).count();
    let _ = writeln!(out, "{holding}/{} hold", verdicts.len());
    Ok(out)
}

/// Runs one statement or `all`. The exit code is 0 iff every verdict holds.
pub fn cmd_verify(target: &str, scope: Scope, json: bool) -> Result<Report, CliError> {
    let verdicts = if target == "all" {
        verify::run_all(scope)?
    } else {
        vec![verify::run_statement(target, scope)?]
    };
    let holds = verdicts.iter().all(|v| v.holds);
    Ok(Report::verdict(render(&verdicts, json)?, holds))
}

pub fn cmd_search(hypothesis: &str, conclusion: &str, scope: Scope, json: bool) -> Result<Report, CliError> {
    let verdict = verify::search_counterexample(hypothesis, conclusion, scope)?;
    let holds = verdict.holds;
    Ok(Report::verdict(render(&[verdict], json)?, holds))
}

/// Quotient by the document's classes, or by the kernel of its map.
pub fn cmd_quotient(doc: &PosetDocument) -> Result<Report, CliError> {
    let theta = match (&doc.classes, &doc.map) {
        (Some(theta), _) => theta.clone(),
        (None, Some(f)) => f.kernel(),
        (None, None) => return Err(CliError::NothingToQuotient),
    };
    match quotient_poset(&doc.poset, &theta) {
        Ok(q) => Ok(Report::ok(PosetDocument::new((*q.poset).clone()).to_string())),
        Err(ConstructionError::NotSEquivalence { violation, defect }) => Ok(Report {
            stdout: String::new(),
            stderr: format!(
                "not an S-equivalence: {}; the class relation fails {}\n",
                violation.describe(&doc.poset),
                defect.describe(&doc.poset)
            ),
            code: EXIT_FAILS,
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_export_dot(doc: &PosetDocument) -> Report {
    Report::ok(to_dot(&doc.poset))
}

pub fn cmd_sum(a: &PosetDocument, b: &PosetDocument) -> Result<Report, CliError> {
    let p = constructions::ordinal_sum(&a.poset, &b.poset)?;
    Ok(Report::ok(PosetDocument::new(p).to_string()))
}

pub fn cmd_product(a: &PosetDocument, b: &PosetDocument) -> Result<Report, CliError> {
    let p = constructions::direct_product(&a.poset, &b.poset)?;
    Ok(Report::ok(PosetDocument::new(p).to_string()))
}

pub fn cmd_print(doc: &PosetDocument) -> Report {
    Report::ok(doc.to_string())
}

pub fn cmd_list() -> Report {
    let mut out = String::from("statements (id, default n-max, what n-max bounds):\n");
    for s in verify::statements() {
        let _ = writeln!(out, "  {:<28} {:>2}  {}", s.id, s.default_n_max, s.budget);
        let _ = writeln!(out, "      {}", s.summary);
    }
    out.push_str("search predicates:\n ");
    for name in verify::predicate_names() {
        let _ = write!(out, " {name}");
    }
    out.push_str("\ncheck properties:\n ");
    for (name, _) in PROPERTIES {
        let _ = write!(out, " {name}");
    }
    out.push('\n');
    Report::ok(out)
}
