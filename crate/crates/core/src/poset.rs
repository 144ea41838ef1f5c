//! The finite poset type: construction, validation and the raw order relation.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::set::{ElementSet, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("a poset needs at least one element")]
    Empty,
    #[error("{size} elements exceed the supported maximum of {MAX_ELEMENTS}")]
    TooLarge { size: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("element index {index} out of range for {size} elements")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("cycle detected: `{first}` and `{second}` lie below each other")]
    Cycle { first: String, second: String },
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
}

/// A finite partially ordered set.
///
/// Elements are indexed `0..len()` in input order. `up[i]` holds every `j`
/// with `i <= j` and `down[i]` every `j` with `j <= i`; both are kept in sync.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    labels: Vec<String>,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
}

/// Labels are whitespace-free tokens that do not collide with the document
/// syntax (`,` `{` `}` `:` `->` and a leading `#`).
pub fn is_valid_label(label: &str) -> bool {
    !label.is_empty()
        && !label.starts_with('#')
        && !label.contains("->")
        && !label
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ',' | '{' | '}' | ':'))
}

fn check_labels(labels: &[String]) -> Result<HashMap<&str, usize>, PosetError> {
    if labels.is_empty() {
        return Err(PosetError::Empty);
    }
    if labels.len() > MAX_ELEMENTS {
        return Err(PosetError::TooLarge { size: labels.len() });
    }
    let mut index = HashMap::with_capacity(labels.len());
    for (i, label) in labels.iter().enumerate() {
        if !is_valid_label(label) {
            return Err(PosetError::InvalidLabel(label.clone()));
        }
        if index.insert(label.as_str(), i).is_some() {
            return Err(PosetError::DuplicateLabel(label.clone()));
        }
    }
    Ok(index)
}

/// Reflexive-transitive closure of row bitmasks, Warshall style.
fn close(rows: &mut [ElementSet]) {
    let n = rows.len();
    for (i, row) in rows.iter_mut().enumerate() {
        row.insert(i);
    }
    for k in 0..n {
        let via = rows[k];
        for row in rows.iter_mut() {
            if row.contains(k) {
                *row = row.union(via);
            }
        }
    }
}

fn transpose(rows: &[ElementSet]) -> Vec<ElementSet> {
    let mut cols = vec![ElementSet::EMPTY; rows.len()];
    for (i, row) in rows.iter().enumerate() {
        for j in row.iter() {
            cols[j].insert(i);
        }
    }
    cols
}

impl Poset {
    /// Builds a poset from element labels and cover pairs `(lower, upper)`.
    /// The order is the reflexive-transitive closure of the pairs; pairs that
    /// are not actual covers are accepted and absorbed by the closure.
    pub fn from_covers<L, S>(labels: L, covers: &[(&str, &str)]) -> Result<Poset, PosetError>
    where
        L: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let pairs = resolve_pairs(&labels, covers)?;
        Poset::from_index_covers(labels, &pairs)
    }

    pub fn from_index_covers(
        labels: Vec<String>,
        covers: &[(usize, usize)],
    ) -> Result<Poset, PosetError> {
        check_labels(&labels)?;
        let n = labels.len();
        let mut up = vec![ElementSet::EMPTY; n];
        for &(lo, hi) in covers {
            for index in [lo, hi] {
                if index >= n {
                    return Err(PosetError::IndexOutOfRange { index, size: n });
                }
            }
            up[lo].insert(hi);
        }
        close(&mut up);
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(PosetError::Cycle {
                        first: labels[i].clone(),
                        second: labels[j].clone(),
                    });
                }
            }
        }
        let down = transpose(&up);
        Ok(Poset { labels, up, down })
    }

    /// Builds a poset from a full order relation given as pairs `x <= y`.
    /// Reflexive pairs may be omitted; the relation is validated, not closed.
    pub fn from_relation<L, S>(labels: L, pairs: &[(&str, &str)]) -> Result<Poset, PosetError>
    where
        L: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let pairs = resolve_pairs(&labels, pairs)?;
        let mut up = vec![ElementSet::EMPTY; labels.len()];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for (lo, hi) in pairs {
            up[lo].insert(hi);
        }
        Poset::from_up_sets(labels, up)
    }

    /// Validating constructor from explicit rows: `up[i]` must be exactly the
    /// set of elements above `i`.
    pub fn from_up_sets(labels: Vec<String>, up: Vec<ElementSet>) -> Result<Poset, PosetError> {
        check_labels(&labels)?;
        let n = labels.len();
        if up.len() != n {
            return Err(PosetError::RowCount {
                expected: n,
                found: up.len(),
            });
        }
        let carrier = ElementSet::full(n);
        for (i, row) in up.iter().enumerate() {
            if !row.is_subset(carrier) {
                let index = row.difference(carrier).first().unwrap_or(n);
                return Err(PosetError::IndexOutOfRange { index, size: n });
            }
            if !row.contains(i) {
                return Err(PosetError::NotReflexive(labels[i].clone()));
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(PosetError::Cycle {
                        first: labels[i].clone(),
                        second: labels[j].clone(),
                    });
                }
                if let Some(k) = up[j].difference(up[i]).first() {
                    return Err(PosetError::NotTransitive(
                        labels[i].clone(),
                        labels[j].clone(),
                        labels[k].clone(),
                    ));
                }
            }
        }
        let down = transpose(&up);
        Ok(Poset { labels, up, down })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; posets are non-empty by construction.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Like [`index_of`](Self::index_of) but reports unknown labels as errors.
    pub fn element(&self, label: &str) -> Result<usize, PosetError> {
        self.index_of(label)
            .ok_or_else(|| PosetError::UnknownLabel(label.to_owned()))
    }

    /// The whole carrier as a set.
    pub fn carrier(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        !self.comparable(x, y)
    }

    /// `U(x)`, the principal upper set of `x`.
    pub fn up_set(&self, x: usize) -> ElementSet {
        self.up[x]
    }

    /// `L(x)`, the principal lower set of `x`.
    pub fn down_set(&self, x: usize) -> ElementSet {
        self.down[x]
    }

    pub fn up_rows(&self) -> &[ElementSet] {
        &self.up
    }

    /// Labels of the members of `set`, in index order.
    pub fn set_labels(&self, set: ElementSet) -> Vec<&str> {
        set.iter().map(|i| self.label(i)).collect()
    }

    /// Renders a set as `{a,b,c}` in index order.
    pub fn format_set(&self, set: ElementSet) -> String {
        format!("{{{}}}", self.set_labels(set).join(","))
    }

    /// The order-dual poset on the same labels.
    pub fn dual(&self) -> Poset {
        Poset {
            labels: self.labels.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// The induced subposet on `elements`, keeping their labels. Indices in
    /// the result follow the order of `elements`.
    pub fn restrict(&self, elements: &[usize]) -> Result<Poset, PosetError> {
        let labels = elements.iter().map(|&i| self.labels[i].clone()).collect();
        let up = elements
            .iter()
            .map(|&i| {
                elements
                    .iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.leq(i, j))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        Poset::from_up_sets(labels, up)
    }

    /// Same order, new labels.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Poset, PosetError> {
        if labels.len() != self.len() {
            return Err(PosetError::RowCount {
                expected: self.len(),
                found: labels.len(),
            });
        }
        check_labels(&labels)?;
        Ok(Poset {
            labels,
            up: self.up.clone(),
            down: self.down.clone(),
        })
    }

    /// A deterministic linear extension: repeatedly take the lowest-index
    /// minimal element of what remains.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = ElementSet::EMPTY;
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n)
                .find(|&i| !placed.contains(i) && self.down[i].without(i).is_subset(placed))
                .expect("finite poset always has a minimal element");
            placed.insert(next);
            order.push(next);
        }
        order
    }
}

fn resolve_pairs(labels: &[String], pairs: &[(&str, &str)]) -> Result<Vec<(usize, usize)>, PosetError> {
    let index = check_labels(labels)?;
    let lookup = |l: &str| {
        index
            .get(l)
            .copied()
            .ok_or_else(|| PosetError::UnknownLabel(l.to_owned()))
    };
    pairs
        .iter()
        .map(|&(lo, hi)| Ok((lookup(lo)?, lookup(hi)?)))
        .collect()
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        write!(f, "Poset[{}; {}]", self.labels.join(" "), covers.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::butterfly_top;

    #[test]
    fn butterfly_relations() {
        let p = butterfly_top();
        let [a, b, c, d, top] = [0, 1, 2, 3, 4];
        assert!(p.incomparable(a, b));
        assert!(p.incomparable(c, d));
        assert!(p.lt(a, top));
        assert!(p.leq(b, c));
        assert!(!p.leq(c, a));
    }

    #[test]
    fn singleton_is_identity() {
        let p = Poset::from_covers(["x"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.leq(0, 0));
    }

    #[test]
    fn two_cycle_rejected() {
        let err = Poset::from_covers(["p", "q"], &[("p", "q"), ("q", "p")]).unwrap_err();
        assert!(matches!(err, PosetError::Cycle { .. }));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Poset::from_covers(["x", "x"], &[]).unwrap_err(),
            PosetError::DuplicateLabel("x".into())
        );
        assert_eq!(
            Poset::from_covers(["x"], &[("x", "y")]).unwrap_err(),
            PosetError::UnknownLabel("y".into())
        );
        assert_eq!(
            Poset::from_covers(Vec::<String>::new(), &[]).unwrap_err(),
            PosetError::Empty
        );
        assert!(matches!(
            Poset::from_covers(["a,b"], &[]).unwrap_err(),
            PosetError::InvalidLabel(_)
        ));
        let many: Vec<String> = (0..65).map(|i| format!("e{i}")).collect();
        assert_eq!(
            Poset::from_covers(many, &[]).unwrap_err(),
            PosetError::TooLarge { size: 65 }
        );
    }

    #[test]
    fn full_relation_is_validated() {
        let p = Poset::from_relation(["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z")]).unwrap();
        assert!(p.leq(0, 2));
        let err = Poset::from_relation(["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap_err();
        assert_eq!(err, PosetError::NotTransitive("x".into(), "y".into(), "z".into()));
    }

    #[test]
    fn linear_extension_respects_order() {
        let p = butterfly_top();
        let ext = p.linear_extension();
        assert_eq!(ext, vec![0, 1, 2, 3, 4]);
        let q = Poset::from_covers(["top", "mid", "bot"], &[("bot", "mid"), ("mid", "top")]).unwrap();
        assert_eq!(q.linear_extension(), vec![2, 1, 0]);
    }

    #[test]
    fn restrict_and_dual() {
        let p = butterfly_top();
        let sub = p.restrict(&[0, 2, 4]).unwrap();
        assert_eq!(sub.labels(), ["a", "c", "1"]);
        assert!(sub.lt(0, 2));
        let d = p.dual();
        assert!(d.leq(4, 0));
        assert_eq!(d.dual(), p);
    }
}
