//! Upper and lower cones and the order-theoretic predicates built on them.

use crate::poset::Poset;
use crate::set::ElementSet;

/// Flags and element lists describing the shape of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSummary {
    pub is_up_directed: bool,
    pub is_chain: bool,
    pub is_antichain: bool,
    pub minimal: Vec<usize>,
    pub maximal: Vec<usize>,
    /// Cover pairs `(lower, upper)` in lexicographic index order.
    pub covers: Vec<(usize, usize)>,
    pub is_join_semilattice: bool,
    /// `joins[x][y]` is the least element of `U(x,y)` when it exists.
    pub joins: Vec<Vec<Option<usize>>>,
}

impl Poset {
    /// `U(A)`: every element above all members of `A`. `U(∅)` is the carrier.
    pub fn upper_cone(&self, set: ElementSet) -> ElementSet {
        set.iter()
            .fold(self.carrier(), |acc, a| acc.intersection(self.up_set(a)))
    }

    /// `L(A)`: every element below all members of `A`. `L(∅)` is the carrier.
    pub fn lower_cone(&self, set: ElementSet) -> ElementSet {
        set.iter()
            .fold(self.carrier(), |acc, a| acc.intersection(self.down_set(a)))
    }

    /// `U(x,y)`.
    pub fn upper_cone_pair(&self, x: usize, y: usize) -> ElementSet {
        self.up_set(x).intersection(self.up_set(y))
    }

    /// `L(x,y)`.
    pub fn lower_cone_pair(&self, x: usize, y: usize) -> ElementSet {
        self.down_set(x).intersection(self.down_set(y))
    }

    /// `(L*(a), U*(a))`: the cones of `a` with `a` itself removed.
    pub fn punctured_cones(&self, a: usize) -> (ElementSet, ElementSet) {
        (self.down_set(a).without(a), self.up_set(a).without(a))
    }

    pub fn is_up_directed(&self) -> bool {
        (0..self.len()).all(|x| (x..self.len()).all(|y| !self.upper_cone_pair(x, y).is_empty()))
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|x| self.up_set(x).union(self.down_set(x)) == self.carrier())
    }

    pub fn is_antichain(&self) -> bool {
        (0..self.len()).all(|x| self.up_set(x) == ElementSet::singleton(x))
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        self.down_set(x) == ElementSet::singleton(x)
    }

    pub fn is_maximal(&self, x: usize) -> bool {
        self.up_set(x) == ElementSet::singleton(x)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_minimal(x)).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_maximal(x)).collect()
    }

    /// Minimal members of `set` under the induced order.
    pub fn minimal_in(&self, set: ElementSet) -> ElementSet {
        set.iter()
            .filter(|&x| self.down_set(x).intersection(set) == ElementSet::singleton(x))
            .collect()
    }

    /// The least member of `set`, if there is one.
    pub fn least_in(&self, set: ElementSet) -> Option<usize> {
        set.iter().find(|&x| set.is_subset(self.up_set(x)))
    }

    /// The greatest member of `set`, if there is one.
    pub fn greatest_in(&self, set: ElementSet) -> Option<usize> {
        set.iter().find(|&x| set.is_subset(self.down_set(x)))
    }

    /// `x ∨ y`, the least element of `U(x,y)`.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        self.least_in(self.upper_cone_pair(x, y))
    }

    /// `x ∧ y`, the greatest element of `L(x,y)`.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        self.greatest_in(self.lower_cone_pair(x, y))
    }

    pub fn is_join_semilattice(&self) -> bool {
        (0..self.len()).all(|x| (x + 1..self.len()).all(|y| self.join(x, y).is_some()))
    }

    pub fn is_meet_semilattice(&self) -> bool {
        (0..self.len()).all(|x| (x + 1..self.len()).all(|y| self.meet(x, y).is_some()))
    }

    /// `a ≺ b`: `a < b` with nothing strictly between.
    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.lt(a, b)
            && self
                .up_set(a)
                .intersection(self.down_set(b))
                .without(a)
                .without(b)
                .is_empty()
    }

    /// The covering relation (Hasse diagram edges), lexicographic by index.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.up_set(a).iter().map(move |b| (a, b)))
            .filter(|&(a, b)| self.is_cover(a, b))
            .collect()
    }

    pub fn order_summary(&self) -> OrderSummary {
        let n = self.len();
        let joins: Vec<Vec<Option<usize>>> = (0..n)
            .map(|x| (0..n).map(|y| self.join(x, y)).collect())
            .collect();
        OrderSummary {
            is_up_directed: self.is_up_directed(),
            is_chain: self.is_chain(),
            is_antichain: self.is_antichain(),
            minimal: self.minimal_elements(),
            maximal: self.maximal_elements(),
            covers: self.covers(),
            is_join_semilattice: joins.iter().flatten().all(Option::is_some),
            joins,
        }
    }
}
