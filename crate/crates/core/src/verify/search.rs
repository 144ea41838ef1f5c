//! Generic counterexample search over `(poset, self-map)` pairs.

use std::sync::Arc;

use super::{enumerate_posets_up_to, run_instances, Instance, Outcome, Scope, Verdict, VerifyError, Witness};
use crate::mappings::{enumerate_maps, MapClass, PosetMap};

pub(crate) const SEARCH_PREFIX: &str = "search:";

/// Default poset size bound for [`search_counterexample`].
pub const DEFAULT_SEARCH_N_MAX: usize = 4;

type MapPredicate = fn(&PosetMap) -> bool;

/// Registered predicates: name, test, and the map class whose enumeration
/// yields exactly the maps satisfying it (when there is one).
pub static PREDICATES: [(&str, MapPredicate, Option<MapClass>); 18] = [
    ("true", |_| true, Some(MapClass::All)),
    ("false", |_| false, None),
    ("identity", |f| f.image().iter().enumerate().all(|(x, &y)| x == y), None),
    ("constant", |f| f.image().windows(2).all(|w| w[0] == w[1]), None),
    ("injective", PosetMap::is_injective, None),
    ("monotone", PosetMap::is_monotone, Some(MapClass::Monotone)),
    ("strictly-monotone", PosetMap::is_strictly_monotone, Some(MapClass::StrictlyMonotone)),
    ("ucp", |f| f.is_ucp().unwrap_or(false), Some(MapClass::Ucp)),
    ("strictly-ucp", |f| f.is_strictly_ucp().unwrap_or(false), Some(MapClass::StrictlyUcp)),
    ("strongly-ucp", |f| f.is_strongly_ucp().unwrap_or(false), Some(MapClass::StronglyUcp)),
    ("strongly-monotone", PosetMap::is_strongly_monotone, Some(MapClass::StronglyMonotone)),
    ("principal-filters", PosetMap::preserves_principal_filters, None),
    ("join-homomorphism", |f| f.is_join_homomorphism().unwrap_or(false), None),
    ("meet-homomorphism", |f| f.is_meet_homomorphism().unwrap_or(false), None),
    ("up-directed", |f| f.dom().is_up_directed(), None),
    ("chain", |f| f.dom().is_chain(), None),
    ("antichain", |f| f.dom().is_antichain(), None),
    ("join-semilattice", |f| f.dom().is_join_semilattice(), None),
];

pub fn predicate_names() -> impl Iterator<Item = &'static str> {
    PREDICATES.iter().map(|(name, _, _)| *name)
}

fn lookup(name: &str) -> Result<(MapPredicate, Option<MapClass>), VerifyError> {
    PREDICATES
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|&(_, test, class)| (test, class))
        .ok_or_else(|| VerifyError::UnknownPredicate(name.to_owned()))
}

/// Looks for a self-map satisfying `hypothesis` but not `conclusion` over
/// every poset up to `scope.n_max` (default 4). The witness is the first
/// counterexample in poset order, then map enumeration order.
pub fn search_counterexample(hypothesis: &str, conclusion: &str, scope: Scope) -> Result<Verdict, VerifyError> {
    let (hyp, class) = lookup(hypothesis)?;
    let (con, _) = lookup(conclusion)?;
    let n_max = scope.n_max.unwrap_or(DEFAULT_SEARCH_N_MAX);
    let instances: Vec<Instance> = enumerate_posets_up_to(n_max, scope.iso_dedup)?
        .into_iter()
        .map(Instance::new)
        .collect();
    let clause = format!("{hypothesis} => {conclusion}");
    let id = format!("{SEARCH_PREFIX}{hypothesis}=>{conclusion}");
    let check = |inst: &Instance| {
        let mut out = Outcome::default();
        for f in enumerate_maps(&inst.poset, class.unwrap_or(MapClass::All)) {
            if !hyp(&f) {
                continue;
            }
            let ok = out.record(|| (!con(&f)).then(|| Witness::new(&inst.poset, clause.clone()).map(f.image())));
            if !ok {
                break;
            }
        }
        out
    };
    Ok(run_instances(&id, instances, None, check))
}

/// Checks that the witness map satisfies the hypothesis and fails the
/// conclusion named in `query` (`hypothesis=>conclusion`).
pub(crate) fn replay(query: &str, witness: &Witness) -> Result<bool, VerifyError> {
    let (hypothesis, conclusion) = query
        .split_once("=>")
        .ok_or_else(|| VerifyError::UnknownPredicate(query.to_owned()))?;
    let (hyp, _) = lookup(hypothesis)?;
    let (con, _) = lookup(conclusion)?;
    let Some(image) = &witness.map else {
        return Ok(false);
    };
    let Ok(f) = PosetMap::self_map(Arc::new(witness.poset.clone()), image.clone()) else {
        return Ok(false);
    };
    Ok(hyp(&f) && !con(&f))
}
