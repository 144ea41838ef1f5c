//! The registered statements and their instance checks.
//!
//! Each check compares the map-level predicate against the structural
//! condition computed separately, so a verifier never reuses the
//! characterization it is testing.

use std::collections::HashSet;
use std::sync::Arc;

use super::{enumerate_posets_up_to, run_instances, Instance, Outcome, Scope, Verdict, VerifyError, Witness};
use crate::constructions::{
    antichain, chain, collapse_violation, decompose_self_map, direct_product, is_s_equivalence, ordinal_sum,
    product_map, quotient_poset, transfer_violation, antisymmetry_defect, transitivity_defect, Decomposition, Split,
};
use crate::mappings::{constant_map, enumerate_maps, redirect_map, Equivalence, MapClass, PosetMap};
use crate::poset::Poset;
use crate::set::ElementSet;

/// Largest product carrier on which every self-map is scanned for
/// decomposability.
pub const EXHAUSTIVE_PRODUCT_SIZE: usize = 6;
/// Factor shapes whose `a^a * b^b` table pairs exceed this are skipped.
pub const ROUND_TRIP_LIMIT: usize = 46_656;

/// A registered statement: how to generate its instances and check one.
pub struct Statement {
    pub id: &'static str,
    pub summary: &'static str,
    /// What `n_max` bounds for this statement.
    pub budget: &'static str,
    pub default_n_max: usize,
    pub max_n_max: usize,
    pub note: Option<&'static str>,
    instances: fn(usize, bool) -> Result<Vec<Instance>, VerifyError>,
    pub(crate) check: fn(&Instance) -> Outcome,
}

impl Statement {
    /// Runs at `scope.n_max`, or the default; errors outside `1..=max_n_max`.
    pub fn run(&self, scope: Scope) -> Result<Verdict, VerifyError> {
        let n_max = scope.n_max.unwrap_or(self.default_n_max);
        if n_max == 0 || n_max > self.max_n_max {
            return Err(VerifyError::SizeOutOfRange {
                n: n_max,
                max: self.max_n_max,
            });
        }
        let instances = (self.instances)(n_max, scope.iso_dedup)?;
        Ok(run_instances(self.id, instances, self.note.map(str::to_owned), self.check))
    }

    /// Checks a single instance, as the parallel runner does.
    pub fn check_instance(&self, instance: &Instance) -> Outcome {
        (self.check)(instance)
    }
}

static STATEMENTS: [Statement; 15] = [
    Statement {
        id: "constant-map-ucp",
        summary: "a constant map is upper cone preserving iff the poset is up-directed and its value is maximal",
        budget: "poset size",
        default_n_max: 5,
        max_n_max: 6,
        note: None,
        instances: all_posets,
        check: constant_map_ucp,
    },
    Statement {
        id: "monotone-cone-facts",
        summary: "monotone maps and cone containments; ucp maps are monotone and send filters to filters; \
                  every poset with two or more elements has a monotone map that is not ucp",
        budget: "poset size",
        default_n_max: 4,
        max_n_max: 5,
        note: None,
        instances: all_posets,
        check: monotone_cone_facts,
    },
    Statement {
        id: "injective-filter-ucp",
        summary: "an injective map with f([x)) = [f(x)) for all x is upper cone preserving",
        budget: "poset size",
        default_n_max: 4,
        max_n_max: 5,
        note: None,
        instances: all_posets,
        check: injective_filter_ucp,
    },
    Statement {
        id: "class-inclusions",
        summary: "ucp implies strictly and strongly ucp; strictly ucp and injective implies strongly ucp",
        budget: "poset size",
        default_n_max: 4,
        max_n_max: 5,
        note: None,
        instances: all_posets,
        check: class_inclusions,
    },
    Statement {
        id: "redirect-strictly-monotone",
        summary: "f_ab is strictly monotone iff a || b, L*(a) within L*(b) and U*(a) within U*(b)",
        budget: "poset size",
        default_n_max: 5,
        max_n_max: 6,
        note: None,
        instances: all_posets,
        check: redirect_strictly_monotone,
    },
    Statement {
        id: "redirect-ucp",
        summary: "f_ab is upper cone preserving iff a is minimal and U*(a) = U(b)",
        budget: "poset size",
        default_n_max: 5,
        max_n_max: 6,
        note: None,
        instances: all_posets,
        check: redirect_ucp,
    },
    Statement {
        id: "redirect-cover",
        summary: "U*(a) = U(b) implies that b covers a",
        budget: "poset size",
        default_n_max: 5,
        max_n_max: 6,
        note: None,
        instances: all_posets,
        check: redirect_cover,
    },
    Statement {
        id: "redirect-strictly-ucp",
        summary: "f_ab is strictly upper cone preserving iff |L(a)| <= 2 and U*(a) = U(b)",
        budget: "poset size",
        default_n_max: 5,
        max_n_max: 6,
        note: None,
        instances: all_posets,
        check: redirect_strictly_ucp,
    },
    Statement {
        id: "chain-maps",
        summary: "on a chain, a strictly monotone map is ucp iff its image is a filter, \
                  and a monotone map is ucp iff U(f(x)) lies in the image for all x",
        budget: "chain length",
        default_n_max: 6,
        max_n_max: 6,
        note: None,
        instances: all_chains,
        check: chain_maps,
    },
    Statement {
        id: "semilattice-chain",
        summary: "a join-semilattice is a chain iff every monotone self-map is a join homomorphism",
        budget: "poset size",
        default_n_max: 5,
        max_n_max: 6,
        note: Some(
            "for non-chains the map sending x < c∨d to c and the rest to c∨d is checked for every \
             incomparable pair c, d, and a monotone non-homomorphism is also found by search",
        ),
        instances: join_semilattices,
        check: semilattice_chain,
    },
    Statement {
        id: "chain-product-homomorphism",
        summary: "monotone directly decomposable self-maps of a product of two chains are lattice homomorphisms",
        budget: "factor chain length",
        default_n_max: 3,
        max_n_max: 3,
        note: None,
        instances: chain_products,
        check: chain_product_homomorphism,
    },
    Statement {
        id: "decomposition",
        summary: "a map on a product decomposes iff each output coordinate depends only on its own input coordinate",
        budget: "product size",
        default_n_max: 9,
        max_n_max: 9,
        note: Some(
            "every pair of factor maps is round-tripped on chain and antichain factors with at most \
             46656 table pairs; all self-maps are scanned on products of at most 6 elements",
        ),
        instances: products,
        check: decomposition,
    },
    Statement {
        id: "minimal-upper-bound",
        summary: "if a || b and c is minimal in U(a,b), the map sending x < c to a and the rest to c is monotone \
                  and breaks the cone equation at (a,b); every non-chain has a monotone map that is not strictly ucp",
        budget: "poset size",
        default_n_max: 5,
        max_n_max: 6,
        note: Some(
            "finite posets satisfy the descending chain condition, so the non-chain clause is the \
             corollary for every finite poset; it is checked by search, which also covers posets where \
             no U(a,b) with a || b is nonempty",
        ),
        instances: all_posets,
        check: minimal_upper_bound,
    },
    Statement {
        id: "ordinal-sum",
        summary: "every strictly monotone self-map of antichain ⊕ chain maps the antichain into itself, \
                  fixes the chain and is strongly ucp",
        budget: "antichain size and chain length",
        default_n_max: 3,
        max_n_max: 4,
        note: None,
        instances: antichain_chain_sums,
        check: ordinal_sum_maps,
    },
    Statement {
        id: "quotient",
        summary: "the kernel of a strongly monotone map is an S-equivalence; the quotient by an equivalence \
                  is a poset with strongly monotone projection exactly when it is an S-equivalence",
        budget: "poset size",
        default_n_max: 4,
        max_n_max: 5,
        note: Some("condition (i) is checked against transitivity and condition (ii) against antisymmetry of the class order"),
        instances: all_posets,
        check: quotient,
    },
];

/// Every registered statement, in run order.
pub fn statements() -> &'static [Statement] {
    &STATEMENTS
}

pub fn statement(id: &str) -> Result<&'static Statement, VerifyError> {
    STATEMENTS
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| VerifyError::UnknownStatement(id.to_owned()))
}

pub fn run_statement(id: &str, scope: Scope) -> Result<Verdict, VerifyError> {
    statement(id)?.run(scope)
}

/// Runs every statement. An explicit `n_max` is capped at each statement's
/// own maximum.
pub fn run_all(scope: Scope) -> Result<Vec<Verdict>, VerifyError> {
    STATEMENTS
        .iter()
        .map(|s| {
            let n_max = scope.n_max.map(|n| n.min(s.max_n_max));
            s.run(Scope { n_max, ..scope })
        })
        .collect()
}

pub fn verify_constant_map_ucp(n_max: usize) -> Result<Verdict, VerifyError> {
    run_statement("constant-map-ucp", Scope::with_n_max(n_max))
}

pub fn verify_monotone_cone_facts(n_max: usize) -> Result<Verdict, VerifyError> {
    run_statement("monotone-cone-facts", Scope::with_n_max(n_max))
}

pub fn verify_injective_filter_ucp(n_max: usize) -> Result<Verdict, VerifyError> {
    run_statement("injective-filter-ucp", Scope::with_n_max(n_max))
}

pub fn verify_class_inclusions(n_max: usize) -> Result<Verdict, VerifyError> {
    run_statement("class-inclusions", Scope::with_n_max(n_max))
}

pub fn verify_redirect_strictly_monotone(n_max: usize) -> Result<Verdict, VerifyError> {
    run_statement("redirect-strictly-monotone", Scope::with_n_max(n_max))
}

pub fn verify_redirect_ucp(n_max: usize) -> Result<Verdict, VerifyError> {
    run_statement("redirect-ucp", Scope::with_n_max(n_max))
}

pub fn verify_redirect_cover(n_max: usize) -> Result<Verdict, VerifyError> {
    run_statement("redirect-cover", Scope::with_n_max(n_max))
}

pub fn verify_redirect_strictly_ucp(n_max: usize) -> Result<Verdict, VerifyError> {
    run_statement("redirect-strictly-ucp", Scope::with_n_max(n_max))
}

pub fn verify_chain_maps(n_max: usize) -> Result<Verdict, VerifyError> {
    run_statement("chain-maps", Scope::with_n_max(n_max))
}

pub fn verify_semilattice_chain(n_max: usize) -> Result<Verdict, VerifyError> {
    run_statement("semilattice-chain", Scope::with_n_max(n_max))
}

pub fn verify_chain_product_homomorphism(n_max: usize) -> Result<Verdict, VerifyError> {
    run_statement("chain-product-homomorphism", Scope::with_n_max(n_max))
}

pub fn verify_decomposition(n_max: usize) -> Result<Verdict, VerifyError> {
    run_statement("decomposition", Scope::with_n_max(n_max))
}

pub fn verify_minimal_upper_bound(n_max: usize) -> Result<Verdict, VerifyError> {
    run_statement("minimal-upper-bound", Scope::with_n_max(n_max))
}

/// Antichain sizes and chain lengths both range over `1..=n_max`.
pub fn verify_ordinal_sum(n_max: usize) -> Result<Verdict, VerifyError> {
    run_statement("ordinal-sum", Scope::with_n_max(n_max))
}

pub fn verify_quotient(n_max: usize) -> Result<Verdict, VerifyError> {
    run_statement("quotient", Scope::with_n_max(n_max))
}

// ---- instance generators ----

fn all_posets(n_max: usize, iso_dedup: bool) -> Result<Vec<Instance>, VerifyError> {
    Ok(enumerate_posets_up_to(n_max, iso_dedup)?.into_iter().map(Instance::new).collect())
}

fn join_semilattices(n_max: usize, iso_dedup: bool) -> Result<Vec<Instance>, VerifyError> {
    Ok(enumerate_posets_up_to(n_max, iso_dedup)?
        .into_iter()
        .filter(Poset::is_join_semilattice)
        .map(Instance::new)
        .collect())
}

/// Every labeled chain on `a, b, ..` (one per permutation), or one chain
/// per length with `iso_dedup`.
fn all_chains(n_max: usize, iso_dedup: bool) -> Result<Vec<Instance>, VerifyError> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let labels: Vec<String> = (0..n).map(|i| char::from(b'a' + i as u8).to_string()).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let covers: Vec<(usize, usize)> = perm.windows(2).map(|w| (w[0], w[1])).collect();
            let p = Poset::from_index_covers(labels.clone(), &covers).expect("a chain is acyclic");
            out.push(Instance::new(p));
            if iso_dedup || !next_permutation(&mut perm) {
                break;
            }
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn chain_products(n_max: usize, _iso_dedup: bool) -> Result<Vec<Instance>, VerifyError> {
    let mut out = Vec::new();
    for m in 1..=n_max {
        for k in 1..=n_max {
            let p = direct_product(&chain(m).expect("nonzero"), &chain(k).expect("nonzero")).expect("small");
            out.push(Instance::with_params(p, vec![m, k]));
        }
    }
    Ok(out)
}

/// Products `A × B` with `|A| |B| <= n_max`, each factor a chain or an
/// antichain.
fn products(n_max: usize, _iso_dedup: bool) -> Result<Vec<Instance>, VerifyError> {
    let shapes = |n: usize| -> Vec<Poset> {
        if n == 1 {
            vec![chain(1).expect("nonzero")]
        } else {
            vec![chain(n).expect("nonzero"), antichain(n).expect("nonzero")]
        }
    };
    let mut out = Vec::new();
    for a in 1..=n_max {
        for b in 1..=n_max / a {
            if a.pow(a as u32).saturating_mul(b.pow(b as u32)) > ROUND_TRIP_LIMIT {
                continue;
            }
            for fa in shapes(a) {
                for fb in shapes(b) {
                    let p = direct_product(&fa, &fb).expect("small");
                    out.push(Instance::with_params(p, vec![a, b]));
                }
            }
        }
    }
    Ok(out)
}

fn antichain_chain_sums(n_max: usize, _iso_dedup: bool) -> Result<Vec<Instance>, VerifyError> {
    let mut out = Vec::new();
    for m in 1..=n_max {
        for k in 1..=n_max {
            let p = ordinal_sum(&antichain(m).expect("nonzero"), &chain(k).expect("nonzero")).expect("small");
            out.push(Instance::with_params(p, vec![m, k]));
        }
    }
    Ok(out)
}

// ---- checks ----

fn witness(inst: &Instance, clause: impl Into<String>) -> Witness {
    Witness::new(&inst.poset, clause).params(&inst.params)
}

fn map(p: &Arc<Poset>, image: Vec<usize>) -> PosetMap {
    PosetMap::self_map(p.clone(), image).expect("image in range")
}

fn constant_map_ucp(inst: &Instance) -> Outcome {
    let p = &inst.poset;
    let directed = p.is_up_directed();
    let mut out = Outcome::default();
    for a in 0..p.len() {
        let f = constant_map(p, a).expect("element in range");
        let ucp = f.is_ucp().expect("self-map");
        let structural = directed && p.is_maximal(a);
        let ok = out.record(|| {
            (ucp != structural).then(|| {
                witness(inst, format!("constant map ucp = {ucp}, up-directed with maximal value = {structural}"))
                    .elements(&[a])
                    .map(f.image())
            })
        });
        if !ok {
            break;
        }
    }
    out
}

fn monotone_cone_facts(inst: &Instance) -> Outcome {
    let p = &inst.poset;
    let n = p.len();
    let filters = p.all_filters();
    let mut out = Outcome::default();
    let mut found_non_ucp = false;
    for f in enumerate_maps(p, MapClass::All) {
        let fail = |clause: &str, elements: &[usize]| Some(witness(inst, clause).elements(elements).map(f.image()));
        let failure = || {
            let monotone = f.is_monotone();
            let by_cones = (0..n).find(|&x| !f.image_of(p.up_set(x)).is_subset(p.up_set(f.apply(x))));
            if monotone != by_cones.is_none() {
                return fail("monotone iff f(U(x)) within U(f(x)) for all x", &by_cones.into_iter().collect::<Vec<_>>());
            }
            if monotone {
                for x in 0..n {
                    for y in x..n {
                        let (fx, fy) = (f.apply(x), f.apply(y));
                        if !f.image_of(p.upper_cone_pair(x, y)).is_subset(p.upper_cone_pair(fx, fy)) {
                            return fail("monotone implies f(U(x,y)) within U(f(x),f(y))", &[x, y]);
                        }
                        if !f.image_of(p.lower_cone_pair(x, y)).is_subset(p.lower_cone_pair(fx, fy)) {
                            return fail("monotone implies f(L(x,y)) within L(f(x),f(y))", &[x, y]);
                        }
                    }
                }
                for bits in 0..1u64 << n {
                    let a = ElementSet::from_bits(bits);
                    let fa = f.image_of(a);
                    let members: Vec<usize> = a.iter().collect();
                    if !f.image_of(p.lower_cone(a)).is_subset(p.lower_cone(fa)) {
                        return fail("monotone implies f(L(A)) within L(f(A))", &members);
                    }
                    if !f.image_of(p.upper_cone(a)).is_subset(p.upper_cone(fa)) {
                        return fail("monotone implies f(U(A)) within U(f(A))", &members);
                    }
                }
            }
            let ucp = f.is_ucp().expect("self-map");
            if ucp {
                if !monotone {
                    return fail("ucp implies monotone", &[]);
                }
                if let Some(filter) = filters.iter().find(|flt| !p.is_filter(f.image_of(flt.carrier()))) {
                    return fail("ucp maps filters to filters", &filter.carrier().iter().collect::<Vec<_>>());
                }
            }
            None
        };
        if !out.record(failure) {
            return out;
        }
        if !found_non_ucp && f.is_monotone() && !f.is_ucp().expect("self-map") {
            found_non_ucp = true;
        }
    }
    if n > 1 {
        out.record(|| (!found_non_ucp).then(|| witness(inst, "two or more elements admit a monotone map that is not ucp")));
    }
    out
}

fn injective_filter_ucp(inst: &Instance) -> Outcome {
    let p = &inst.poset;
    let mut out = Outcome::default();
    for f in enumerate_maps(p, MapClass::All) {
        if !f.is_injective() || !f.preserves_principal_filters() {
            continue;
        }
        let ok = out.record(|| {
            (!f.is_ucp().expect("self-map"))
                .then(|| witness(inst, "injective and preserving principal filters implies ucp").map(f.image()))
        });
        if !ok {
            break;
        }
    }
    out
}

fn class_inclusions(inst: &Instance) -> Outcome {
    let p = &inst.poset;
    let mut out = Outcome::default();
    for f in enumerate_maps(p, MapClass::All) {
        let ucp = f.is_ucp().expect("self-map");
        let strictly = f.is_strictly_ucp().expect("self-map");
        let strongly = f.is_strongly_ucp().expect("self-map");
        let clause = if ucp && !strictly {
            Some("ucp implies strictly ucp")
        } else if ucp && !strongly {
            Some("ucp implies strongly ucp")
        } else if strictly && f.is_injective() && !strongly {
            Some("strictly ucp and injective implies strongly ucp")
        } else {
            None
        };
        if !out.record(|| clause.map(|c| witness(inst, c).map(f.image()))) {
            break;
        }
    }
    out
}

/// Runs `compare(a, b, f_ab)` over all ordered pairs of distinct elements;
/// it returns `Some(clause)` on failure.
fn over_redirects(inst: &Instance, compare: impl Fn(usize, usize, &PosetMap) -> Option<String>) -> Outcome {
    let p = &inst.poset;
    let mut out = Outcome::default();
    for a in 0..p.len() {
        for b in 0..p.len() {
            if a == b {
                continue;
            }
            let f = redirect_map(p, a, b).expect("distinct elements");
            let ok = out.record(|| compare(a, b, &f).map(|c| witness(inst, c).elements(&[a, b]).map(f.image())));
            if !ok {
                return out;
            }
        }
    }
    out
}

fn strict_cones(p: &Poset, a: usize) -> (ElementSet, ElementSet) {
    (p.down_set(a).without(a), p.up_set(a).without(a))
}

fn redirect_strictly_monotone(inst: &Instance) -> Outcome {
    let p = &inst.poset;
    over_redirects(inst, |a, b, f| {
        let lhs = f.is_strictly_monotone();
        let (la, ua) = strict_cones(p, a);
        let (lb, ub) = strict_cones(p, b);
        let rhs = p.incomparable(a, b) && la.is_subset(lb) && ua.is_subset(ub);
        (lhs != rhs).then(|| format!("strictly monotone = {lhs}, incomparable with nested strict cones = {rhs}"))
    })
}

fn redirect_ucp(inst: &Instance) -> Outcome {
    let p = &inst.poset;
    over_redirects(inst, |a, b, f| {
        let lhs = f.is_ucp().expect("self-map");
        let rhs = p.is_minimal(a) && strict_cones(p, a).1 == p.up_set(b);
        (lhs != rhs).then(|| format!("ucp = {lhs}, a minimal with U*(a) = U(b) = {rhs}"))
    })
}

fn redirect_cover(inst: &Instance) -> Outcome {
    let p = &inst.poset;
    over_redirects(inst, |a, b, _| {
        (strict_cones(p, a).1 == p.up_set(b) && !p.is_cover(a, b)).then(|| "U*(a) = U(b) implies a covered by b".to_owned())
    })
}

fn redirect_strictly_ucp(inst: &Instance) -> Outcome {
    let p = &inst.poset;
    over_redirects(inst, |a, b, f| {
        let lhs = f.is_strictly_ucp().expect("self-map");
        let rhs = p.down_set(a).len() <= 2 && strict_cones(p, a).1 == p.up_set(b);
        (lhs != rhs).then(|| format!("strictly ucp = {lhs}, |L(a)| <= 2 with U*(a) = U(b) = {rhs}"))
    })
}

fn chain_maps(inst: &Instance) -> Outcome {
    let p = &inst.poset;
    let mut out = Outcome::default();
    for f in enumerate_maps(p, MapClass::StrictlyMonotone) {
        let ucp = f.is_ucp().expect("self-map");
        let filter = p.is_filter(f.image_set());
        let ok = out.record(|| {
            (ucp != filter).then(|| {
                witness(inst, format!("strictly monotone on a chain: ucp = {ucp}, image is a filter = {filter}"))
                    .map(f.image())
            })
        });
        if !ok {
            return out;
        }
    }
    for f in enumerate_maps(p, MapClass::Monotone) {
        let ucp = f.is_ucp().expect("self-map");
        let image = f.image_set();
        let covered = (0..p.len()).find(|&x| !p.up_set(f.apply(x)).is_subset(image));
        let ok = out.record(|| {
            (ucp != covered.is_none()).then(|| {
                witness(inst, format!("monotone on a chain: ucp = {ucp}, U(f(x)) within f(C) = {}", covered.is_none()))
                    .elements(&covered.into_iter().collect::<Vec<_>>())
                    .map(f.image())
            })
        });
        if !ok {
            return out;
        }
    }
    out
}

fn semilattice_chain(inst: &Instance) -> Outcome {
    let p = &inst.poset;
    let n = p.len();
    let mut out = Outcome::default();
    let mut searched = 0u64;
    let non_hom = enumerate_maps(p, MapClass::Monotone).find(|f| {
        searched += 1;
        f.join_homomorphism_violation().expect("join-semilattice").is_some()
    });
    out.checked += searched;
    let is_chain = p.is_chain();
    let ok = out.record(|| {
        (non_hom.is_none() != is_chain).then(|| {
            let w = witness(inst, format!("chain = {is_chain}, every monotone map a join homomorphism = {}", non_hom.is_none()));
            match &non_hom {
                Some(f) => w.map(f.image()),
                None => w,
            }
        })
    });
    if !ok || is_chain {
        return out;
    }
    for c in 0..n {
        for d in c + 1..n {
            if !p.incomparable(c, d) {
                continue;
            }
            let j = p.join(c, d).expect("join-semilattice");
            let g = map(p, (0..n).map(|x| if p.lt(x, j) { c } else { j }).collect());
            let ok = out.record(|| {
                let clause = if !g.is_monotone() {
                    Some("the map built from an incomparable pair is monotone")
                } else if g.apply(j) != j || p.join(g.apply(c), g.apply(d)) != Some(c) || j == c {
                    Some("the map built from an incomparable pair has g(c∨d) = c∨d != c = g(c)∨g(d)")
                } else {
                    None
                };
                clause.map(|cl| witness(inst, cl).elements(&[c, d]).map(g.image()))
            });
            if !ok {
                return out;
            }
        }
    }
    out
}

/// Number of monotone self-maps of an `n`-chain: `C(2n-1, n)`.
fn chain_monotone_count(n: usize) -> u64 {
    (0..n as u64).fold(1, |acc, i| acc * (2 * n as u64 - 1 - i) / (i + 1))
}

fn chain_product_homomorphism(inst: &Instance) -> Outcome {
    let p = &inst.poset;
    let (m, k) = (inst.params[0], inst.params[1]);
    let split = Split::new(m, k);
    let mut out = Outcome::default();
    let mut decomposable = 0u64;
    for f in enumerate_maps(p, MapClass::Monotone) {
        let d = decompose_self_map(&f, split).expect("split matches");
        if !d.is_decomposable() {
            continue;
        }
        decomposable += 1;
        let ok = out.record(|| {
            let join = f.is_join_homomorphism().expect("lattice");
            let meet = f.is_meet_homomorphism().expect("lattice");
            (!join || !meet).then(|| {
                witness(inst, format!("decomposable monotone map: join homomorphism = {join}, meet homomorphism = {meet}"))
                    .map(f.image())
            })
        });
        if !ok {
            return out;
        }
    }
    let expected = chain_monotone_count(m) * chain_monotone_count(k);
    out.record(|| {
        (decomposable != expected).then(|| {
            witness(inst, format!("{decomposable} decomposable monotone maps, expected {expected} pairs of monotone factor maps"))
        })
    });
    out
}

/// All `n^n` image tables on `0..n`.
fn all_tables(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut t = vec![0; n];
    loop {
        out.push(t.clone());
        let Some(i) = (0..n).rev().find(|&i| t[i] + 1 < n) else {
            return out;
        };
        t[i] += 1;
        for v in &mut t[i + 1..] {
            *v = 0;
        }
    }
}

fn decomposition(inst: &Instance) -> Outcome {
    let p = &inst.poset;
    let split = Split::new(inst.params[0], inst.params[1]);
    let (a1, a2) = match decompose_self_map(&PosetMap::identity(p.clone()), split).expect("split matches") {
        Decomposition::Decomposable { f1, f2 } => (f1.dom().clone(), f2.dom().clone()),
        Decomposition::NotDecomposable(_) => unreachable!("the identity decomposes"),
    };
    let mut out = Outcome::default();
    let mut product_images = HashSet::new();
    for t1 in all_tables(a1.len()) {
        for t2 in all_tables(a2.len()) {
            let (f1, f2) = (map(&a1, t1.clone()), map(&a2, t2.clone()));
            let g = map(p, product_map(&f1, &f2).expect("small").into_image());
            let ok = out.record(|| {
                let fail = |clause: &str| Some(witness(inst, clause).map(g.image()));
                match decompose_self_map(&g, split).expect("split matches") {
                    Decomposition::NotDecomposable(_) => return fail("a product map decomposes"),
                    Decomposition::Decomposable { f1: h1, f2: h2 } => {
                        if h1.image() != t1 || h2.image() != t2 {
                            return fail("decomposition recovers the factor maps");
                        }
                    }
                }
                // every anchor reads off the same factor maps
                for (x1, &z1) in t1.iter().enumerate() {
                    for (x2, &z2) in t2.iter().enumerate() {
                        let y = g.apply(x1 * split.second + x2);
                        if (y / split.second, y % split.second) != (z1, z2) {
                            return fail("factor maps are independent of the anchor");
                        }
                    }
                }
                None
            });
            if !ok {
                return out;
            }
            product_images.insert(g.into_image());
        }
    }
    if p.len() > EXHAUSTIVE_PRODUCT_SIZE {
        return out;
    }
    for g in enumerate_maps(p, MapClass::All) {
        let ok = out.record(|| {
            let fail = |clause: &str| Some(witness(inst, clause).map(g.image()));
            let is_product = product_images.contains(g.image());
            match decompose_self_map(&g, split).expect("split matches") {
                Decomposition::Decomposable { f1, f2 } => {
                    if !is_product {
                        return fail("only product maps decompose");
                    }
                    if product_map(&f1, &f2).expect("small").image() != g.image() {
                        return fail("decomposition recomposes to the map");
                    }
                }
                Decomposition::NotDecomposable(q) => {
                    if is_product {
                        return fail("every product map decomposes");
                    }
                    if !q.violates(&g, split, split) {
                        return fail("the reported quadruple violates the coordinate condition");
                    }
                }
            }
            None
        });
        if !ok {
            break;
        }
    }
    out
}

fn minimal_upper_bound(inst: &Instance) -> Outcome {
    let p = &inst.poset;
    let n = p.len();
    let mut out = Outcome::default();
    for a in 0..n {
        for b in a + 1..n {
            if !p.incomparable(a, b) {
                continue;
            }
            let cone = p.upper_cone_pair(a, b);
            for c in p.minimal_in(cone).iter() {
                let f = map(p, (0..n).map(|x| if p.lt(x, c) { a } else { c }).collect());
                let ok = out.record(|| {
                    let clause = if !f.is_monotone() {
                        Some("the map built from a minimal upper bound is monotone")
                    } else if f.image_of(cone) == p.upper_cone_pair(f.apply(a), f.apply(b)) {
                        Some("the map built from a minimal upper bound breaks the cone equation at (a,b)")
                    } else if f.is_strictly_ucp().expect("self-map") {
                        Some("the map built from a minimal upper bound is not strictly ucp")
                    } else {
                        None
                    };
                    clause.map(|cl| witness(inst, cl).elements(&[a, b, c]).map(f.image()))
                });
                if !ok {
                    return out;
                }
            }
        }
    }
    if !p.is_chain() {
        let found = enumerate_maps(p, MapClass::Monotone)
            .any(|f| f.cone_violation(crate::mappings::ConeRange::Distinct).expect("self-map").is_some());
        out.record(|| {
            (!found).then(|| witness(inst, "a non-chain has a monotone map that is not strictly ucp"))
        });
    }
    out
}

fn ordinal_sum_maps(inst: &Instance) -> Outcome {
    let p = &inst.poset;
    let m = inst.params[0];
    let antichain_part: ElementSet = (0..m).collect();
    let mut out = Outcome::default();
    for f in enumerate_maps(p, MapClass::StrictlyMonotone) {
        let ok = out.record(|| {
            let clause = if !f.image_of(antichain_part).is_subset(antichain_part) {
                Some("strictly monotone maps send the antichain into itself")
            } else if (m..p.len()).any(|x| f.apply(x) != x) {
                Some("strictly monotone maps fix the chain")
            } else if !f.is_strongly_ucp().expect("self-map") {
                Some("strictly monotone maps are strongly ucp")
            } else {
                None
            };
            clause.map(|c| witness(inst, c).map(f.image()))
        });
        if !ok {
            break;
        }
    }
    out
}

fn quotient(inst: &Instance) -> Outcome {
    let p = &inst.poset;
    let mut out = Outcome::default();
    for f in enumerate_maps(p, MapClass::StronglyMonotone) {
        let kernel = f.kernel();
        let ok = out.record(|| {
            (!is_s_equivalence(p, &kernel)).then(|| {
                witness(inst, "the kernel of a strongly monotone map is an S-equivalence")
                    .map(f.image())
                    .classes(&kernel)
            })
        });
        if !ok {
            return out;
        }
    }
    for theta in Equivalence::all(p.len()) {
        let ok = out.record(|| {
            let fail = |clause: &str| Some(witness(inst, clause).classes(&theta));
            let transfer = transfer_violation(p, &theta).expect("partition size").is_none();
            let transitive = transitivity_defect(p, &theta).expect("partition size").is_none();
            let collapse = collapse_violation(p, &theta).expect("partition size").is_none();
            let antisymmetric = antisymmetry_defect(p, &theta).expect("partition size").is_none();
            if transfer != transitive {
                return fail("condition (i) holds iff the class order is transitive");
            }
            if collapse != antisymmetric {
                return fail("condition (ii) holds iff the class order is antisymmetric");
            }
            match quotient_poset(p, &theta) {
                Ok(q) => {
                    if !(transfer && collapse) {
                        return fail("only S-equivalences have a quotient poset");
                    }
                    if q.poset.len() != theta.num_classes() || q.projection.kernel() != theta {
                        return fail("the projection sends each element to its class");
                    }
                    if !q.projection.is_strongly_monotone() {
                        return fail("the projection onto the quotient is strongly monotone");
                    }
                }
                Err(_) => {
                    if transfer && collapse {
                        return fail("every S-equivalence has a quotient poset");
                    }
                }
            }
            None
        });
        if !ok {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_monotone_counts() {
        assert_eq!(
            (1..=6).map(chain_monotone_count).collect::<Vec<_>>(),
            [1, 3, 10, 35, 126, 462]
        );
    }

    #[test]
    fn permutations() {
        let mut v = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(v, [2, 1, 0]);
    }

    #[test]
    fn table_count() {
        assert_eq!(all_tables(3).len(), 27);
        assert_eq!(all_tables(1), vec![vec![0]]);
    }

    #[test]
    fn chain_instances() {
        assert_eq!(all_chains(3, false).unwrap().len(), 1 + 2 + 6);
        assert_eq!(all_chains(3, true).unwrap().len(), 3);
        assert!(all_chains(4, false).unwrap().iter().all(|i| i.poset.is_chain()));
    }

    #[test]
    fn product_instances() {
        let sizes: Vec<(usize, usize)> = products(4, false)
            .unwrap()
            .iter()
            .map(|i| (i.params[0], i.params[1]))
            .collect();
        assert_eq!(sizes, [(1, 1), (1, 2), (1, 2), (1, 3), (1, 3), (1, 4), (1, 4), (2, 1), (2, 1), (2, 2), (2, 2), (2, 2), (2, 2), (3, 1), (3, 1), (4, 1), (4, 1)]);
    }

    #[test]
    fn large_trivial_splits_are_skipped() {
        let sizes: HashSet<(usize, usize)> = products(9, false)
            .unwrap()
            .iter()
            .map(|i| (i.params[0], i.params[1]))
            .collect();
        for kept in [(3, 3), (2, 4), (4, 2), (1, 6), (6, 1)] {
            assert!(sizes.contains(&kept), "{kept:?}");
        }
        for skipped in [(1, 7), (9, 1), (5, 1)] {
            assert_eq!(sizes.contains(&skipped), skipped == (5, 1), "{skipped:?}");
        }
    }

    #[test]
    fn ids_are_unique() {
        let ids: HashSet<&str> = statements().iter().map(|s| s.id).collect();
        assert_eq!(ids.len(), statements().len());
    }
}
