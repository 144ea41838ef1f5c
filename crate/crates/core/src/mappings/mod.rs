//! Maps between posets and the preservation classes they can belong to.

mod enumerate;
mod equivalence;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::poset::{Poset, PosetError};
use crate::set::ElementSet;

pub use enumerate::{enumerate_maps, MapClass, MapEnumerator, ParseMapClassError};
pub use equivalence::{Equivalence, EquivalenceError, Partitions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("image table has {found} entries, domain has {expected} elements")]
    LengthMismatch { expected: usize, found: usize },
    #[error("image index {index} out of range for codomain of {size} elements")]
    ImageOutOfRange { index: usize, size: usize },
    #[error("cone-preservation classes are defined for self-maps only")]
    NotSelfMap,
    #[error("the {0} is not a join-semilattice")]
    NotJoinSemilattice(&'static str),
    #[error("the {0} is not a meet-semilattice")]
    NotMeetSemilattice(&'static str),
    #[error("the redirect map needs two distinct elements")]
    SameElement,
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Which pairs `(x, y)` an upper-cone equation is required for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeRange {
    /// Every pair: upper cone preserving.
    All,
    /// `x != y`: strictly upper cone preserving.
    Distinct,
    /// `f(x) != f(y)`: strongly upper cone preserving.
    DistinctImages,
}

impl ConeRange {
    fn admits(self, x: usize, y: usize, fx: usize, fy: usize) -> bool {
        match self {
            ConeRange::All => true,
            ConeRange::Distinct => x != y,
            ConeRange::DistinctImages => fx != fy,
        }
    }
}

/// Why a map fails to be strongly monotone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrongMonotoneViolation {
    /// `x <= y` but `f(x) </= f(y)`.
    NotMonotone(usize, usize),
    /// `f(a) <= f(b)` yet no `a' <= b'` with `f(a') = f(a)`, `f(b') = f(b)`.
    Unrealized(usize, usize),
}

/// A map between finite posets, given by its image table.
#[derive(Clone)]
pub struct PosetMap {
    dom: Arc<Poset>,
    cod: Arc<Poset>,
    image: Vec<usize>,
}

impl PartialEq for PosetMap {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image && same_poset(&self.dom, &other.dom) && same_poset(&self.cod, &other.cod)
    }
}

impl Eq for PosetMap {}

fn same_poset(a: &Arc<Poset>, b: &Arc<Poset>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PosetMap {
    pub fn new(dom: Arc<Poset>, cod: Arc<Poset>, image: Vec<usize>) -> Result<PosetMap, MapError> {
        if image.len() != dom.len() {
            return Err(MapError::LengthMismatch {
                expected: dom.len(),
                found: image.len(),
            });
        }
        if let Some(&index) = image.iter().find(|&&v| v >= cod.len()) {
            return Err(MapError::ImageOutOfRange {
                index,
                size: cod.len(),
            });
        }
        Ok(PosetMap { dom, cod, image })
    }

    pub fn self_map(p: Arc<Poset>, image: Vec<usize>) -> Result<PosetMap, MapError> {
        PosetMap::new(p.clone(), p, image)
    }

    /// A self-map given by image labels listed in domain order.
    pub fn from_labels(p: Arc<Poset>, images: &[&str]) -> Result<PosetMap, MapError> {
        let image = images
            .iter()
            .map(|l| p.element(l))
            .collect::<Result<Vec<_>, _>>()?;
        PosetMap::self_map(p, image)
    }

    pub fn identity(p: Arc<Poset>) -> PosetMap {
        let image = (0..p.len()).collect();
        PosetMap::new(p.clone(), p, image).expect("identity is well formed")
    }

    pub fn dom(&self) -> &Arc<Poset> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Poset> {
        &self.cod
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn into_image(self) -> Vec<usize> {
        self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn is_self_map(&self) -> bool {
        same_poset(&self.dom, &self.cod)
    }

    /// Pointwise image `f(S)`.
    pub fn image_of(&self, set: ElementSet) -> ElementSet {
        set.iter().map(|x| self.image[x]).collect()
    }

    /// `f(P)`.
    pub fn image_set(&self) -> ElementSet {
        self.image_of(self.dom.carrier())
    }

    /// First pair `x <= y` (index order) with `f(x) </= f(y)`.
    pub fn monotone_violation(&self) -> Option<(usize, usize)> {
        let n = self.dom.len();
        (0..n)
            .flat_map(|x| self.dom.up_set(x).iter().map(move |y| (x, y)))
            .find(|&(x, y)| !self.cod.leq(self.image[x], self.image[y]))
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone_violation().is_none()
    }

    /// First pair `x < y` with `f(x) </ f(y)`.
    pub fn strict_monotone_violation(&self) -> Option<(usize, usize)> {
        let n = self.dom.len();
        (0..n)
            .flat_map(|x| self.dom.up_set(x).without(x).iter().map(move |y| (x, y)))
            .find(|&(x, y)| !self.cod.lt(self.image[x], self.image[y]))
    }

    pub fn is_strictly_monotone(&self) -> bool {
        self.strict_monotone_violation().is_none()
    }

    /// First unordered pair `x <= y` (by index) in `range` where
    /// `f(U(x,y)) != U(f(x),f(y))`. Cones are symmetric in their arguments,
    /// so one orientation per pair is enough.
    pub fn cone_violation(&self, range: ConeRange) -> Result<Option<(usize, usize)>, MapError> {
        if !self.is_self_map() {
            return Err(MapError::NotSelfMap);
        }
        let (p, f) = (&*self.dom, &self.image);
        for x in 0..p.len() {
            for y in x..p.len() {
                if !range.admits(x, y, f[x], f[y]) {
                    continue;
                }
                if self.image_of(p.upper_cone_pair(x, y)) != p.upper_cone_pair(f[x], f[y]) {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    /// Upper cone preserving: `f(U(x,y)) = U(f(x),f(y))` for all `x, y`.
    pub fn is_ucp(&self) -> Result<bool, MapError> {
        Ok(self.cone_violation(ConeRange::All)?.is_none())
    }

    pub fn is_strictly_ucp(&self) -> Result<bool, MapError> {
        Ok(self.cone_violation(ConeRange::Distinct)?.is_none())
    }

    pub fn is_strongly_ucp(&self) -> Result<bool, MapError> {
        Ok(self.cone_violation(ConeRange::DistinctImages)?.is_none())
    }

    pub fn strongly_monotone_violation(&self) -> Option<StrongMonotoneViolation> {
        if let Some((x, y)) = self.monotone_violation() {
            return Some(StrongMonotoneViolation::NotMonotone(x, y));
        }
        let n = self.dom.len();
        let mut fibre = vec![ElementSet::EMPTY; self.cod.len()];
        for (x, &v) in self.image.iter().enumerate() {
            fibre[v].insert(x);
        }
        for a in 0..n {
            for b in 0..n {
                let (fa, fb) = (self.image[a], self.image[b]);
                if !self.cod.leq(fa, fb) {
                    continue;
                }
                let realized = fibre[fa]
                    .iter()
                    .any(|a2| self.dom.up_set(a2).intersects(fibre[fb]));
                if !realized {
                    return Some(StrongMonotoneViolation::Unrealized(a, b));
                }
            }
        }
        None
    }

    /// Monotone, and every relation `f(a) <= f(b)` between images is
    /// witnessed by some `a' <= b'` in the corresponding fibres.
    pub fn is_strongly_monotone(&self) -> bool {
        self.strongly_monotone_violation().is_none()
    }

    /// First pair with `f(x ∨ y) != f(x) ∨ f(y)`.
    pub fn join_homomorphism_violation(&self) -> Result<Option<(usize, usize)>, MapError> {
        if !self.dom.is_join_semilattice() {
            return Err(MapError::NotJoinSemilattice("domain"));
        }
        if !self.cod.is_join_semilattice() {
            return Err(MapError::NotJoinSemilattice("codomain"));
        }
        let n = self.dom.len();
        for x in 0..n {
            for y in x + 1..n {
                let joined = self.dom.join(x, y).expect("join-semilattice");
                let image_join = self.cod.join(self.image[x], self.image[y]).expect("join-semilattice");
                if self.image[joined] != image_join {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_join_homomorphism(&self) -> Result<bool, MapError> {
        Ok(self.join_homomorphism_violation()?.is_none())
    }

    /// First pair with `f(x ∧ y) != f(x) ∧ f(y)`.
    pub fn meet_homomorphism_violation(&self) -> Result<Option<(usize, usize)>, MapError> {
        if !self.dom.is_meet_semilattice() {
            return Err(MapError::NotMeetSemilattice("domain"));
        }
        if !self.cod.is_meet_semilattice() {
            return Err(MapError::NotMeetSemilattice("codomain"));
        }
        let n = self.dom.len();
        for x in 0..n {
            for y in x + 1..n {
                let met = self.dom.meet(x, y).expect("meet-semilattice");
                let image_meet = self.cod.meet(self.image[x], self.image[y]).expect("meet-semilattice");
                if self.image[met] != image_meet {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_meet_homomorphism(&self) -> Result<bool, MapError> {
        Ok(self.meet_homomorphism_violation()?.is_none())
    }

    pub fn injective_violation(&self) -> Option<(usize, usize)> {
        let n = self.dom.len();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.image[x] == self.image[y])
    }

    pub fn is_injective(&self) -> bool {
        self.injective_violation().is_none()
    }

    /// First `x` with `f([x)) != [f(x))`.
    pub fn principal_filter_violation(&self) -> Option<usize> {
        (0..self.dom.len()).find(|&x| self.image_of(self.dom.up_set(x)) != self.cod.up_set(self.image[x]))
    }

    pub fn preserves_principal_filters(&self) -> bool {
        self.principal_filter_violation().is_none()
    }

    /// The equivalence identifying elements with equal images.
    pub fn kernel(&self) -> Equivalence {
        Equivalence::from_class_ids(&self.image)
    }

    /// Renders the map as `x->f(x) ..` using labels.
    pub fn to_arrows(&self) -> String {
        self.image
            .iter()
            .enumerate()
            .map(|(x, &v)| format!("{}->{}", self.dom.label(x), self.cod.label(v)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for PosetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PosetMap[{}]", self.to_arrows())
    }
}

/// The constant self-map with value `a`.
pub fn constant_map(p: &Arc<Poset>, a: usize) -> Result<PosetMap, MapError> {
    check_element(p, a)?;
    PosetMap::self_map(p.clone(), vec![a; p.len()])
}

/// The self-map sending `a` to `b` and fixing every other element.
pub fn redirect_map(p: &Arc<Poset>, a: usize, b: usize) -> Result<PosetMap, MapError> {
    check_element(p, a)?;
    check_element(p, b)?;
    if a == b {
        return Err(MapError::SameElement);
    }
    let mut image: Vec<usize> = (0..p.len()).collect();
    image[a] = b;
    PosetMap::self_map(p.clone(), image)
}

fn check_element(p: &Poset, index: usize) -> Result<(), MapError> {
    if index < p.len() {
        Ok(())
    } else {
        Err(PosetError::IndexOutOfRange {
            index,
            size: p.len(),
        }
        .into())
    }
}
