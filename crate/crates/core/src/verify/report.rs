//! Serializable views of verdicts and their line-oriented text form.
//!
//! The JSON document for a verdict is a [`VerdictRecord`]:
//!
//! ```text
//! { "statement": "constant-map-ucp", "holds": true, "instances_checked": 24315,
//!   "elapsed_ms": 12.5, "note": null,
//!   "witness": null | { "poset": { "elements": ["a","b"], "covers": [["a","b"]] },
//!                       "params": [], "elements": ["a"], "map": ["b","b"] | null,
//!                       "classes": [["a","b"]] | null, "clause": "..." } }
//! ```

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use super::{Verdict, Witness};
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosetRecord {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

impl From<&Poset> for PosetRecord {
    fn from(p: &Poset) -> Self {
        PosetRecord {
            elements: p.labels().to_vec(),
            covers: p
                .covers()
                .into_iter()
                .map(|(a, b)| [p.label(a).to_owned(), p.label(b).to_owned()])
                .collect(),
        }
    }
}

/// Classes as lists of labels.
pub type EquivalenceRecord = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub poset: PosetRecord,
    pub params: Vec<usize>,
    pub elements: Vec<String>,
    pub map: Option<Vec<String>>,
    pub classes: Option<EquivalenceRecord>,
    pub clause: String,
}

impl From<&Witness> for WitnessRecord {
    fn from(w: &Witness) -> Self {
        let p = &w.poset;
        let labels = |xs: &[usize]| xs.iter().map(|&x| p.label(x).to_owned()).collect::<Vec<_>>();
        WitnessRecord {
            poset: PosetRecord::from(p),
            params: w.params.clone(),
            elements: labels(&w.elements),
            map: w.map.as_deref().map(labels),
            classes: w.classes.as_ref().map(|theta| {
                theta
                    .blocks()
                    .into_iter()
                    .map(|b| p.set_labels(b).into_iter().map(str::to_owned).collect())
                    .collect()
            }),
            clause: w.clause.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub statement: String,
    pub holds: bool,
    pub instances_checked: u64,
    pub elapsed_ms: f64,
    pub note: Option<String>,
    pub witness: Option<WitnessRecord>,
}

impl From<&Verdict> for VerdictRecord {
    fn from(v: &Verdict) -> Self {
        VerdictRecord {
            statement: v.statement_id.clone(),
            holds: v.holds,
            instances_checked: v.instances_checked,
            elapsed_ms: v.elapsed.as_secs_f64() * 1000.0,
            note: v.note.clone(),
            witness: v.witness.as_ref().map(WitnessRecord::from),
        }
    }
}

/// Line-oriented form:
///
/// ```text
/// verdict constant-map-ucp holds instances=24315 elapsed_ms=12
///   note: ...
///   witness.poset: elements: a b; cover: a < b
///   witness.elements: a
///   witness.map: a->b b->b
///   witness.classes: {a,b}
///   witness.clause: ...
/// ```
impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "verdict {} {} instances={} elapsed_ms={}",
            self.statement_id,
            if self.holds { "holds" } else { "fails" },
            self.instances_checked,
            self.elapsed.as_millis()
        )?;
        if let Some(note) = &self.note {
            writeln!(f, "  note: {note}")?;
        }
        if let Some(w) = &self.witness {
            let p = &w.poset;
            let mut poset = format!("elements: {}", p.labels().join(" "));
            for (a, b) in p.covers() {
                let _ = write!(poset, "; cover: {} < {}", p.label(a), p.label(b));
            }
            writeln!(f, "  witness.poset: {poset}")?;
            if !w.params.is_empty() {
                let params: Vec<String> = w.params.iter().map(usize::to_string).collect();
                writeln!(f, "  witness.params: {}", params.join(" "))?;
            }
            if !w.elements.is_empty() {
                let elements: Vec<&str> = w.elements.iter().map(|&x| p.label(x)).collect();
                writeln!(f, "  witness.elements: {}", elements.join(" "))?;
            }
            if let Some(image) = &w.map {
                let arrows: Vec<String> = image
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| format!("{}->{}", p.label(x), p.label(y)))
                    .collect();
                writeln!(f, "  witness.map: {}", arrows.join(" "))?;
            }
            if let Some(theta) = &w.classes {
                writeln!(f, "  witness.classes: {}", theta.format_with(p))?;
            }
            writeln!(f, "  witness.clause: {}", w.clause)?;
        }
        Ok(())
    }
}
