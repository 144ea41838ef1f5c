use std::fmt;

use thiserror::Error;

use crate::poset::Poset;
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("element {0} appears in more than one class")]
    Repeated(usize),
    #[error("element {0} is in no class")]
    Missing(usize),
    #[error("element {index} out of range for {size} elements")]
    OutOfRange { index: usize, size: usize },
    #[error("empty class")]
    EmptyClass,
}

/// A partition of `0..n`, stored as a class id per element.
///
/// Ids are canonical: classes are numbered `0..` in order of their smallest
/// member, so two equal partitions always compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Equivalence {
    class_of: Vec<usize>,
    classes: usize,
}

impl Equivalence {
    /// Groups elements by equal ids; any id values are accepted.
    pub fn from_class_ids(ids: &[usize]) -> Equivalence {
        let mut renumber = std::collections::HashMap::new();
        let class_of: Vec<usize> = ids
            .iter()
            .map(|id| {
                let next = renumber.len();
                *renumber.entry(*id).or_insert(next)
            })
            .collect();
        Equivalence {
            classes: renumber.len(),
            class_of,
        }
    }

    /// Builds from explicit blocks, which must partition `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Equivalence, EquivalenceError> {
        let mut ids = vec![usize::MAX; n];
        for (c, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(EquivalenceError::EmptyClass);
            }
            for &x in block {
                if x >= n {
                    return Err(EquivalenceError::OutOfRange { index: x, size: n });
                }
                if ids[x] != usize::MAX {
                    return Err(EquivalenceError::Repeated(x));
                }
                ids[x] = c;
            }
        }
        if let Some(x) = ids.iter().position(|&c| c == usize::MAX) {
            return Err(EquivalenceError::Missing(x));
        }
        Ok(Equivalence::from_class_ids(&ids))
    }

    /// Every element in its own class.
    pub fn identity(n: usize) -> Equivalence {
        Equivalence {
            class_of: (0..n).collect(),
            classes: n,
        }
    }

    /// A single class.
    pub fn total(n: usize) -> Equivalence {
        Equivalence {
            class_of: vec![0; n],
            classes: usize::from(n > 0),
        }
    }

    /// Every partition of `0..n` in restricted-growth-string order.
    pub fn all(n: usize) -> Partitions {
        Partitions {
            rgs: vec![0; n],
            done: false,
        }
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_ids(&self) -> &[usize] {
        &self.class_of
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// `[x]Θ` as a set.
    pub fn class_set_of(&self, x: usize) -> ElementSet {
        self.members(self.class_of[x])
    }

    pub fn members(&self, class: usize) -> ElementSet {
        self.class_of
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == class)
            .map(|(x, _)| x)
            .collect()
    }

    /// All classes, in id order.
    pub fn blocks(&self) -> Vec<ElementSet> {
        let mut out = vec![ElementSet::EMPTY; self.classes];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].insert(x);
        }
        out
    }

    /// Least member of a class.
    pub fn representative(&self, class: usize) -> usize {
        self.class_of
            .iter()
            .position(|&c| c == class)
            .expect("class ids are contiguous")
    }

    /// Renders as `{a}{b,c}` using the labels of `p`.
    pub fn format_with(&self, p: &Poset) -> String {
        self.blocks().into_iter().map(|b| p.format_set(b)).collect()
    }
}

impl fmt::Debug for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in self.blocks() {
            write!(f, "{block:?}")?;
        }
        Ok(())
    }
}

/// Iterator over all partitions of a fixed-size set.
pub struct Partitions {
    rgs: Vec<usize>,
    done: bool,
}

impl Iterator for Partitions {
    type Item = Equivalence;

    fn next(&mut self) -> Option<Equivalence> {
        if self.done {
            return None;
        }
        let current = Equivalence::from_class_ids(&self.rgs);
        // Advance the restricted growth string: rgs[i] <= 1 + max(rgs[..i]).
        let n = self.rgs.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let prefix_max = self.rgs[..i].iter().copied().max().unwrap_or(0);
            if self.rgs[i] <= prefix_max {
                self.rgs[i] += 1;
                for v in &mut self.rgs[i + 1..] {
                    *v = 0;
                }
                break;
            }
        }
        Some(current)
    }
}
