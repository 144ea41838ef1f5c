//! Filters (upward-closed subsets) and the lattice they form under inclusion.

use crate::poset::{Poset, PosetError};
use crate::set::{ElementSet, MAX_ELEMENTS};

/// An upward-closed subset. The empty set is a filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filter(ElementSet);

impl Filter {
    /// Checks upward closure of `set` in `p`.
    pub fn new(p: &Poset, set: ElementSet) -> Option<Filter> {
        p.is_filter(set).then_some(Filter(set))
    }

    pub fn carrier(self) -> ElementSet {
        self.0
    }
}

impl Poset {
    pub fn is_filter(&self, set: ElementSet) -> bool {
        set.is_subset(self.carrier()) && set.iter().all(|x| self.up_set(x).is_subset(set))
    }

    /// `[a)`.
    pub fn principal_filter(&self, a: usize) -> Filter {
        Filter(self.up_set(a))
    }

    /// Every filter, ordered by size and then by bitmask, so `∅` comes first
    /// and the carrier last.
    pub fn all_filters(&self) -> Vec<Filter> {
        // Deciding elements top-down, `x` may join only once all of `U*(x)` has.
        let mut order = self.linear_extension();
        order.reverse();
        let mut out = Vec::new();
        let mut stack = vec![(0usize, ElementSet::EMPTY)];
        while let Some((depth, current)) = stack.pop() {
            if depth == order.len() {
                out.push(Filter(current));
                continue;
            }
            let x = order[depth];
            stack.push((depth + 1, current));
            if self.up_set(x).without(x).is_subset(current) {
                stack.push((depth + 1, current.with(x)));
            }
        }
        out.sort_by_key(|f| (f.0.len(), f.0.bits()));
        out
    }

    /// `(Fil P, ⊆)` as a poset. Filters are labelled `<x|y|..>` with members
    /// in index order; the empty filter is `<>`.
    pub fn filter_lattice(&self) -> Result<Poset, PosetError> {
        let filters = self.all_filters();
        if filters.len() > MAX_ELEMENTS {
            return Err(PosetError::TooLarge {
                size: filters.len(),
            });
        }
        let labels = filters
            .iter()
            .map(|f| format!("<{}>", self.set_labels(f.0).join("|")))
            .collect();
        let up = filters
            .iter()
            .map(|f| {
                filters
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| f.0.is_subset(g.0))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Poset::from_up_sets(labels, up)
    }
}
