//! Exhaustive machine checks of characterization statements over small
//! posets, and a generic counterexample search.
//!
//! Every statement is registered under a descriptive id (see
//! [`statements`]). A run enumerates the statement's instances, checks them
//! in parallel and merges the results in enumeration order, so the reported
//! witness is always the first failing instance regardless of scheduling.

mod posets;
mod report;
mod search;
mod statements;

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::mappings::Equivalence;
use crate::poset::Poset;

pub use posets::{enumerate_posets, enumerate_posets_up_to, PosetStream, MAX_ENUMERATION_SIZE};
pub use report::{EquivalenceRecord, PosetRecord, VerdictRecord, WitnessRecord};
pub use search::{predicate_names, search_counterexample, PREDICATES};
pub use statements::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("size {n} out of range 1..={max}")]
    SizeOutOfRange { n: usize, max: usize },
    #[error("unknown statement `{0}`")]
    UnknownStatement(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("verdict has no witness to replay")]
    NoWitness,
}

/// Quantifier budget for a run. `n_max: None` uses the statement default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Scope {
    pub n_max: Option<usize>,
    pub iso_dedup: bool,
}

impl Scope {
    pub fn with_n_max(n_max: usize) -> Scope {
        Scope {
            n_max: Some(n_max),
            iso_dedup: false,
        }
    }
}

/// A concrete failing instance: the poset, the instance parameters, the
/// elements and map involved, and the clause that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub poset: Poset,
    pub params: Vec<usize>,
    pub elements: Vec<usize>,
    pub map: Option<Vec<usize>>,
    pub classes: Option<Equivalence>,
    pub clause: String,
}

impl Witness {
    pub fn new(poset: &Poset, clause: impl Into<String>) -> Witness {
        Witness {
            poset: poset.clone(),
            params: Vec::new(),
            elements: Vec::new(),
            map: None,
            classes: None,
            clause: clause.into(),
        }
    }

    pub fn elements(mut self, elements: &[usize]) -> Witness {
        self.elements = elements.to_vec();
        self
    }

    pub fn map(mut self, image: &[usize]) -> Witness {
        self.map = Some(image.to_vec());
        self
    }

    pub fn classes(mut self, theta: &Equivalence) -> Witness {
        self.classes = Some(theta.clone());
        self
    }

    pub fn params(mut self, params: &[usize]) -> Witness {
        self.params = params.to_vec();
        self
    }
}

/// Outcome of one statement run.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub statement_id: String,
    pub holds: bool,
    pub instances_checked: u64,
    pub witness: Option<Witness>,
    pub note: Option<String>,
    pub elapsed: Duration,
}

impl Verdict {
    /// Equality on everything except timing.
    pub fn same_outcome(&self, other: &Verdict) -> bool {
        self.statement_id == other.statement_id
            && self.holds == other.holds
            && self.instances_checked == other.instances_checked
            && self.witness == other.witness
            && self.note == other.note
    }
}

/// One unit of parallel work: a poset plus statement-specific parameters.
#[derive(Debug, Clone)]
pub struct Instance {
    pub poset: Arc<Poset>,
    pub params: Vec<usize>,
}

impl Instance {
    pub fn new(poset: Poset) -> Instance {
        Instance {
            poset: Arc::new(poset),
            params: Vec::new(),
        }
    }

    pub fn with_params(poset: Poset, params: Vec<usize>) -> Instance {
        Instance {
            poset: Arc::new(poset),
            params,
        }
    }
}

/// Result of checking a single instance.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub checked: u64,
    pub failure: Option<Witness>,
}

impl Outcome {
    /// Counts one check; records `failure` if none recorded yet.
    pub(crate) fn record(&mut self, failure: impl FnOnce() -> Option<Witness>) -> bool {
        self.checked += 1;
        if self.failure.is_none() {
            self.failure = failure();
        }
        self.failure.is_none()
    }
}

/// Checks every instance in parallel and merges in input order.
pub(crate) fn run_instances<F>(id: &str, instances: Vec<Instance>, note: Option<String>, check: F) -> Verdict
where
    F: Fn(&Instance) -> Outcome + Sync,
{
    let start = Instant::now();
    let outcomes: Vec<Outcome> = instances.par_iter().map(&check).collect();
    let instances_checked = outcomes.iter().map(|o| o.checked).sum();
    let witness = outcomes.into_iter().find_map(|o| o.failure);
    Verdict {
        statement_id: id.to_owned(),
        holds: witness.is_none(),
        instances_checked,
        witness,
        note,
        elapsed: start.elapsed(),
    }
}

/// Re-runs the check that produced `verdict`'s witness on the witness
/// instance alone. Returns whether the same failure is reproduced.
pub fn replay(verdict: &Verdict) -> Result<bool, VerifyError> {
    let witness = verdict.witness.as_ref().ok_or(VerifyError::NoWitness)?;
    if let Some(query) = verdict.statement_id.strip_prefix(search::SEARCH_PREFIX) {
        return search::replay(query, witness);
    }
    let statement = statement(&verdict.statement_id)?;
    let instance = Instance::with_params(witness.poset.clone(), witness.params.clone());
    let outcome = (statement.check)(&instance);
    Ok(outcome.failure.as_ref() == Some(witness))
}

#[cfg(test)]
mod tests;
