//! Backtracking enumeration of self-maps by preservation class.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use super::{ConeRange, PosetMap};
use crate::poset::Poset;

/// Map classes that [`enumerate_maps`] can generate directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapClass {
    All,
    Monotone,
    StrictlyMonotone,
    Ucp,
    StrictlyUcp,
    StronglyUcp,
    StronglyMonotone,
}

impl MapClass {
    pub const ALL: [MapClass; 7] = [
        MapClass::All,
        MapClass::Monotone,
        MapClass::StrictlyMonotone,
        MapClass::Ucp,
        MapClass::StrictlyUcp,
        MapClass::StronglyUcp,
        MapClass::StronglyMonotone,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapClass::All => "all",
            MapClass::Monotone => "monotone",
            MapClass::StrictlyMonotone => "strictly-monotone",
            MapClass::Ucp => "ucp",
            MapClass::StrictlyUcp => "strictly-ucp",
            MapClass::StronglyUcp => "strongly-ucp",
            MapClass::StronglyMonotone => "strongly-monotone",
        }
    }

    /// Membership test on a complete self-map, without pruning.
    pub fn contains(self, f: &PosetMap) -> bool {
        let cone = |range| f.cone_violation(range).map(|v| v.is_none()).unwrap_or(false);
        match self {
            MapClass::All => true,
            MapClass::Monotone => f.is_monotone(),
            MapClass::StrictlyMonotone => f.is_strictly_monotone(),
            MapClass::Ucp => cone(ConeRange::All),
            MapClass::StrictlyUcp => cone(ConeRange::Distinct),
            MapClass::StronglyUcp => cone(ConeRange::DistinctImages),
            MapClass::StronglyMonotone => f.is_strongly_monotone(),
        }
    }

    fn cone_range(self) -> Option<ConeRange> {
        match self {
            MapClass::Ucp => Some(ConeRange::All),
            MapClass::StrictlyUcp => Some(ConeRange::Distinct),
            MapClass::StronglyUcp => Some(ConeRange::DistinctImages),
            _ => None,
        }
    }
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown map class `{0}`")]
pub struct ParseMapClassError(pub String);

impl FromStr for MapClass {
    type Err = ParseMapClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MapClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| ParseMapClassError(s.to_owned()))
    }
}

/// Yields every self-map of `p` in `class`, each exactly once.
///
/// Images are assigned one element at a time along a fixed linear extension
/// and every partial assignment is checked against the class's pairwise
/// condition on the pairs it already decides. For the cone classes the
/// extension is taken top-down, so that when `x` and `y` are both decided all
/// of `U(x,y)` is too and the cone equation for the pair is final.
pub fn enumerate_maps(p: &Arc<Poset>, class: MapClass) -> MapEnumerator {
    let mut order = p.linear_extension();
    if class.cone_range().is_some() {
        order.reverse();
    }
    let n = p.len();
    MapEnumerator {
        poset: p.clone(),
        class,
        order,
        image: vec![0; n],
        next_value: vec![0; n],
        depth: 0,
        done: n == 0,
    }
}

pub struct MapEnumerator {
    poset: Arc<Poset>,
    class: MapClass,
    order: Vec<usize>,
    image: Vec<usize>,
    next_value: Vec<usize>,
    depth: usize,
    done: bool,
}

impl MapEnumerator {
    /// Whether the assignment at `order[d]` is consistent with `order[..d]`.
    fn consistent(&self, d: usize) -> bool {
        let p = &*self.poset;
        let f = &self.image;
        let x = self.order[d];
        let v = f[x];
        let decided = &self.order[..d];
        match self.class {
            MapClass::All => true,
            MapClass::Monotone | MapClass::StronglyMonotone => decided.iter().all(|&y| {
                (!p.leq(x, y) || p.leq(v, f[y])) && (!p.leq(y, x) || p.leq(f[y], v))
            }),
            MapClass::StrictlyMonotone => decided.iter().all(|&y| {
                (!p.lt(x, y) || p.lt(v, f[y])) && (!p.lt(y, x) || p.lt(f[y], v))
            }),
            MapClass::Ucp | MapClass::StrictlyUcp | MapClass::StronglyUcp => {
                let range = self.class.cone_range().expect("cone class");
                self.order[..=d].iter().all(|&y| {
                    if !range.admits(x, y, v, f[y]) {
                        return true;
                    }
                    let cone = p.upper_cone_pair(x, y);
                    let lhs: crate::set::ElementSet = cone.iter().map(|z| f[z]).collect();
                    lhs == p.upper_cone_pair(v, f[y])
                })
            }
        }
    }

    fn leaf_ok(&self) -> bool {
        match self.class {
            MapClass::StronglyMonotone => {
                let f = PosetMap::self_map(self.poset.clone(), self.image.clone()).expect("in range");
                f.is_strongly_monotone()
            }
            _ => true,
        }
    }
}

impl Iterator for MapEnumerator {
    type Item = PosetMap;

    fn next(&mut self) -> Option<PosetMap> {
        let n = self.order.len();
        loop {
            if self.done {
                return None;
            }
            if self.depth == n {
                self.depth -= 1;
                if self.leaf_ok() {
                    let image = self.image.clone();
                    return Some(PosetMap::self_map(self.poset.clone(), image).expect("in range"));
                }
                continue;
            }
            let d = self.depth;
            let x = self.order[d];
            let mut advanced = false;
            while self.next_value[d] < n {
                self.image[x] = self.next_value[d];
                self.next_value[d] += 1;
                if self.consistent(d) {
                    advanced = true;
                    break;
                }
            }
            if advanced {
                self.depth += 1;
                if self.depth < n {
                    self.next_value[self.depth] = 0;
                }
            } else if d == 0 {
                self.done = true;
            } else {
                self.depth -= 1;
            }
        }
    }
}
