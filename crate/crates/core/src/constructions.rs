//! Building new posets and maps from old ones: ordinal sums, direct
//! products, product maps and their decomposition, and quotients by
//! S-equivalences.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::mappings::{Equivalence, MapError, PosetMap};
use crate::poset::{Poset, PosetError};
use crate::set::{ElementSet, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("size must be at least 1")]
    ZeroSize,
    #[error("{size} elements exceed the supported maximum of {MAX_ELEMENTS}")]
    TooLarge { size: usize },
    #[error("split {first}x{second} does not match a carrier of {size} elements")]
    SplitMismatch { first: usize, second: usize, size: usize },
    #[error("partition covers {found} elements, poset has {expected}")]
    PartitionSize { expected: usize, found: usize },
    #[error("not an S-equivalence: {violation}; the class relation fails {defect}")]
    NotSEquivalence {
        violation: SViolation,
        defect: RelationDefect,
    },
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// `0 < 1 < .. < n-1`, labelled by index.
pub fn chain(n: usize) -> Result<Poset, ConstructionError> {
    let labels = index_labels(n)?;
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(Poset::from_index_covers(labels, &covers)?)
}

/// `n` pairwise incomparable elements labelled by index.
pub fn antichain(n: usize) -> Result<Poset, ConstructionError> {
    Ok(Poset::from_index_covers(index_labels(n)?, &[])?)
}

fn index_labels(n: usize) -> Result<Vec<String>, ConstructionError> {
    match n {
        0 => Err(ConstructionError::ZeroSize),
        n if n > MAX_ELEMENTS => Err(ConstructionError::TooLarge { size: n }),
        n => Ok((0..n).map(|i| i.to_string()).collect()),
    }
}

/// `A ⊕ B`: `A` then `B`, with every element of `A` below every element of
/// `B`. Labels of `B` that clash with `A` get primes appended.
pub fn ordinal_sum(a: &Poset, b: &Poset) -> Result<Poset, ConstructionError> {
    let size = a.len() + b.len();
    if size > MAX_ELEMENTS {
        return Err(ConstructionError::TooLarge { size });
    }
    let mut labels: Vec<String> = a.labels().to_vec();
    let taken: HashSet<&str> = a.labels().iter().map(String::as_str).collect();
    let mut suffix = String::new();
    while b.labels().iter().any(|l| taken.contains(format!("{l}{suffix}").as_str())) {
        suffix.push('\'');
    }
    labels.extend(b.labels().iter().map(|l| format!("{l}{suffix}")));

    let offset = a.len();
    let upper_block: ElementSet = (offset..size).collect();
    let mut up = Vec::with_capacity(size);
    for x in 0..a.len() {
        up.push(a.up_set(x).union(upper_block));
    }
    for y in 0..b.len() {
        up.push(b.up_set(y).iter().map(|j| j + offset).collect());
    }
    Ok(Poset::from_up_sets(labels, up)?)
}

/// `A × B` under the componentwise order. The element `(i, j)` sits at flat
/// index `i * |B| + j` and is labelled `(x;y)`.
pub fn direct_product(a: &Poset, b: &Poset) -> Result<Poset, ConstructionError> {
    let size = a.len() * b.len();
    if size > MAX_ELEMENTS {
        return Err(ConstructionError::TooLarge { size });
    }
    let m = b.len();
    let mut labels = Vec::with_capacity(size);
    let mut up = Vec::with_capacity(size);
    for i in 0..a.len() {
        for j in 0..m {
            labels.push(format!("({};{})", a.label(i), b.label(j)));
            up.push(
                a.up_set(i)
                    .iter()
                    .flat_map(|i2| b.up_set(j).iter().map(move |j2| i2 * m + j2))
                    .collect(),
            );
        }
    }
    Ok(Poset::from_up_sets(labels, up)?)
}

/// `(f1 × f2)(x1, x2) = (f1(x1), f2(x2))` on the product carriers.
pub fn product_map(f1: &PosetMap, f2: &PosetMap) -> Result<PosetMap, ConstructionError> {
    let dom = Arc::new(direct_product(f1.dom(), f2.dom())?);
    let cod = if f1.is_self_map() && f2.is_self_map() {
        dom.clone()
    } else {
        Arc::new(direct_product(f1.cod(), f2.cod())?)
    };
    let (n2, c2) = (f2.dom().len(), f2.cod().len());
    let image = (0..dom.len())
        .map(|x| f1.apply(x / n2) * c2 + f2.apply(x % n2))
        .collect();
    Ok(PosetMap::new(dom, cod, image)?)
}

/// Factor sizes of a product carrier laid out as in [`direct_product`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Split {
    pub first: usize,
    pub second: usize,
}

impl Split {
    pub fn new(first: usize, second: usize) -> Split {
        Split { first, second }
    }

    pub fn size(self) -> usize {
        self.first * self.second
    }

    fn check(self, size: usize) -> Result<(), ConstructionError> {
        if self.first == 0 || self.second == 0 || self.size() != size {
            return Err(ConstructionError::SplitMismatch {
                first: self.first,
                second: self.second,
                size,
            });
        }
        Ok(())
    }

    fn pair(self, x: usize) -> (usize, usize) {
        (x / self.second, x % self.second)
    }

    fn flat(self, x1: usize, x2: usize) -> usize {
        x1 * self.second + x2
    }
}

/// Which projection a decomposition witness disagrees on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    First,
    Second,
}

/// A quadruple `x1, y1 ∈ A1`, `x2, y2 ∈ A2` violating the decomposability
/// condition: for [`Component::First`], `p1 f(x1,x2) != p1 f(x1,y2)` (and
/// `y1 = x1`); for [`Component::Second`], `p2 f(x1,x2) != p2 f(y1,x2)` (and
/// `y2 = x2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quadruple {
    pub component: Component,
    pub x1: usize,
    pub y1: usize,
    pub x2: usize,
    pub y2: usize,
}

impl Quadruple {
    /// Re-evaluates the condition directly on `g`'s image table.
    pub fn violates(&self, g: &PosetMap, dom: Split, cod: Split) -> bool {
        let at = |a: usize, b: usize| cod.pair(g.apply(dom.flat(a, b)));
        match self.component {
            Component::First => at(self.x1, self.x2).0 != at(self.x1, self.y2).0,
            Component::Second => at(self.x1, self.x2).1 != at(self.y1, self.x2).1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Decomposable { f1: PosetMap, f2: PosetMap },
    NotDecomposable(Quadruple),
}

impl Decomposition {
    pub fn is_decomposable(&self) -> bool {
        matches!(self, Decomposition::Decomposable { .. })
    }
}

/// Decides whether `g` factors as `f1 × f2`, using the anchor index 0 in
/// each factor to read off the factor maps.
pub fn decompose_map(g: &PosetMap, dom: Split, cod: Split) -> Result<Decomposition, ConstructionError> {
    dom.check(g.dom().len())?;
    cod.check(g.cod().len())?;
    if let Some(q) = find_quadruple(g, dom, cod) {
        return Ok(Decomposition::NotDecomposable(q));
    }
    let (a1, a2) = (0, 0);
    let dom1 = Arc::new(factor(g.dom(), dom, Component::First)?);
    let dom2 = Arc::new(factor(g.dom(), dom, Component::Second)?);
    let (cod1, cod2) = if g.is_self_map() && dom == cod {
        (dom1.clone(), dom2.clone())
    } else {
        (
            Arc::new(factor(g.cod(), cod, Component::First)?),
            Arc::new(factor(g.cod(), cod, Component::Second)?),
        )
    };
    let image1 = (0..dom.first).map(|x1| cod.pair(g.apply(dom.flat(x1, a2))).0).collect();
    let image2 = (0..dom.second).map(|x2| cod.pair(g.apply(dom.flat(a1, x2))).1).collect();
    Ok(Decomposition::Decomposable {
        f1: PosetMap::new(dom1, cod1, image1)?,
        f2: PosetMap::new(dom2, cod2, image2)?,
    })
}

/// [`decompose_map`] for a self-map with the same split on both sides.
pub fn decompose_self_map(g: &PosetMap, split: Split) -> Result<Decomposition, ConstructionError> {
    decompose_map(g, split, split)
}

fn find_quadruple(g: &PosetMap, dom: Split, cod: Split) -> Option<Quadruple> {
    let at = |a: usize, b: usize| cod.pair(g.apply(dom.flat(a, b)));
    for x1 in 0..dom.first {
        for x2 in 0..dom.second {
            for y2 in x2 + 1..dom.second {
                if at(x1, x2).0 != at(x1, y2).0 {
                    return Some(Quadruple { component: Component::First, x1, y1: x1, x2, y2 });
                }
            }
        }
    }
    for x2 in 0..dom.second {
        for x1 in 0..dom.first {
            for y1 in x1 + 1..dom.first {
                if at(x1, x2).1 != at(y1, x2).1 {
                    return Some(Quadruple { component: Component::Second, x1, y1, x2, y2: x2 });
                }
            }
        }
    }
    None
}

/// The factor poset read off a product carrier at anchor 0 of the other
/// coordinate. Labels of the form `(x;y)` are split back into `x` or `y`.
fn factor(p: &Poset, split: Split, which: Component) -> Result<Poset, ConstructionError> {
    let elements: Vec<usize> = match which {
        Component::First => (0..split.first).map(|i| split.flat(i, 0)).collect(),
        Component::Second => (0..split.second).map(|j| split.flat(0, j)).collect(),
    };
    let sub = p.restrict(&elements)?;
    let parts: Option<Vec<String>> = elements
        .iter()
        .map(|&x| {
            split_pair_label(p.label(x)).map(|(l, r)| match which {
                Component::First => l.to_owned(),
                Component::Second => r.to_owned(),
            })
        })
        .collect();
    match parts {
        Some(labels) => Ok(sub.relabel(labels).unwrap_or(sub)),
        None => Ok(sub),
    }
}

/// Splits `(x;y)` at its top-level `;`.
fn split_pair_label(label: &str) -> Option<(&str, &str)> {
    let inner = label.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0i32;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' if depth == 0 => return Some((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    None
}

/// A failed S-equivalence condition with the offending elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SViolation {
    /// `a <= b`, `b' <= c`, `b Θ b'`, yet no `a' ∈ [a]`, `c' ∈ [c]` with
    /// `a' <= c'`.
    Transfer { a: usize, b: usize, b2: usize, c: usize },
    /// `a <= b`, `b' <= a'`, `a Θ a'`, `b Θ b'`, yet `a` and `b` lie in
    /// different classes.
    Collapse { a: usize, a2: usize, b: usize, b2: usize },
}

impl SViolation {
    /// `"i"` or `"ii"`, the condition that failed.
    pub fn condition(&self) -> &'static str {
        match self {
            SViolation::Transfer { .. } => "i",
            SViolation::Collapse { .. } => "ii",
        }
    }

    pub fn describe(&self, p: &Poset) -> String {
        let l = |x: usize| p.label(x);
        match *self {
            SViolation::Transfer { a, b, b2, c } => format!(
                "condition (i) fails at a={} b={} b'={} c={}: no a'~a, c'~c with a'<=c'",
                l(a), l(b), l(b2), l(c)
            ),
            SViolation::Collapse { a, a2, b, b2 } => format!(
                "condition (ii) fails at a={} a'={} b={} b'={}: a and b are not equivalent",
                l(a), l(a2), l(b), l(b2)
            ),
        }
    }
}

impl fmt::Display for SViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SViolation::Transfer { a, b, b2, c } => {
                write!(f, "condition (i) fails at a={a} b={b} b'={b2} c={c}")
            }
            SViolation::Collapse { a, a2, b, b2 } => {
                write!(f, "condition (ii) fails at a={a} a'={a2} b={b} b'={b2}")
            }
        }
    }
}

/// How the induced relation on classes fails to be a partial order.
/// Classes are named by their representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationDefect {
    Antisymmetry { first: usize, second: usize },
    Transitivity { first: usize, second: usize, third: usize },
}

impl RelationDefect {
    /// Names classes as `[x]` using the labels of `p`.
    pub fn describe(&self, p: &Poset) -> String {
        let l = |x: usize| p.label(x);
        match *self {
            RelationDefect::Antisymmetry { first, second } => {
                format!("antisymmetry between [{}] and [{}]", l(first), l(second))
            }
            RelationDefect::Transitivity { first, second, third } => {
                format!("transitivity through [{}] <= [{}] <= [{}]", l(first), l(second), l(third))
            }
        }
    }
}

impl fmt::Display for RelationDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RelationDefect::Antisymmetry { first, second } => {
                write!(f, "antisymmetry between classes of {first} and {second}")
            }
            RelationDefect::Transitivity { first, second, third } => {
                write!(f, "transitivity through classes of {first}, {second}, {third}")
            }
        }
    }
}

fn check_partition(p: &Poset, theta: &Equivalence) -> Result<(), ConstructionError> {
    if theta.len() != p.len() {
        return Err(ConstructionError::PartitionSize {
            expected: p.len(),
            found: theta.len(),
        });
    }
    Ok(())
}

/// `[a]Θ <= [c]Θ` as rows over class ids: some member of the first class
/// lies below some member of the second.
fn class_relation(p: &Poset, theta: &Equivalence) -> Vec<ElementSet> {
    let blocks = theta.blocks();
    blocks
        .iter()
        .map(|&from| {
            let above = from
                .iter()
                .fold(ElementSet::EMPTY, |acc, x| acc.union(p.up_set(x)));
            (0..blocks.len()).filter(|&c| blocks[c].intersects(above)).collect()
        })
        .collect()
}

/// Condition (i): whenever `a <= b`, `b Θ b'` and `b' <= c`, some member of
/// `[a]Θ` lies below some member of `[c]Θ`.
pub fn transfer_violation(p: &Poset, theta: &Equivalence) -> Result<Option<SViolation>, ConstructionError> {
    check_partition(p, theta)?;
    let related = |a: usize, c: usize| {
        let targets = theta.class_set_of(c);
        theta
            .class_set_of(a)
            .iter()
            .any(|a2| p.up_set(a2).intersects(targets))
    };
    for a in 0..p.len() {
        for b in p.up_set(a).iter() {
            for b2 in theta.class_set_of(b).iter() {
                for c in p.up_set(b2).iter() {
                    if !related(a, c) {
                        return Ok(Some(SViolation::Transfer { a, b, b2, c }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Condition (ii): `a <= b`, `b' <= a'` with `a Θ a'` and `b Θ b'` force
/// `a Θ b`.
pub fn collapse_violation(p: &Poset, theta: &Equivalence) -> Result<Option<SViolation>, ConstructionError> {
    check_partition(p, theta)?;
    for a in 0..p.len() {
        for b in p.up_set(a).iter() {
            if theta.same(a, b) {
                continue;
            }
            for a2 in theta.class_set_of(a).iter() {
                if let Some(b2) = theta.class_set_of(b).intersection(p.down_set(a2)).first() {
                    return Ok(Some(SViolation::Collapse { a, a2, b, b2 }));
                }
            }
        }
    }
    Ok(None)
}

/// Both S-equivalence conditions, condition (i) first.
pub fn s_equivalence_violation(p: &Poset, theta: &Equivalence) -> Result<Option<SViolation>, ConstructionError> {
    match transfer_violation(p, theta)? {
        Some(v) => Ok(Some(v)),
        None => collapse_violation(p, theta),
    }
}

pub fn is_s_equivalence(p: &Poset, theta: &Equivalence) -> bool {
    matches!(s_equivalence_violation(p, theta), Ok(None))
}

/// Two distinct classes related both ways under the induced class relation.
pub fn antisymmetry_defect(p: &Poset, theta: &Equivalence) -> Result<Option<RelationDefect>, ConstructionError> {
    check_partition(p, theta)?;
    let rel = class_relation(p, theta);
    let rep = |c: usize| theta.representative(c);
    for c in 0..rel.len() {
        for d in c + 1..rel.len() {
            if rel[c].contains(d) && rel[d].contains(c) {
                return Ok(Some(RelationDefect::Antisymmetry { first: rep(c), second: rep(d) }));
            }
        }
    }
    Ok(None)
}

/// Classes `[x] <= [y] <= [z]` with `[x] </= [z]`.
pub fn transitivity_defect(p: &Poset, theta: &Equivalence) -> Result<Option<RelationDefect>, ConstructionError> {
    check_partition(p, theta)?;
    let rel = class_relation(p, theta);
    let rep = |c: usize| theta.representative(c);
    for c in 0..rel.len() {
        for d in rel[c].iter() {
            if let Some(e) = rel[d].difference(rel[c]).first() {
                return Ok(Some(RelationDefect::Transitivity {
                    first: rep(c),
                    second: rep(d),
                    third: rep(e),
                }));
            }
        }
    }
    Ok(None)
}

/// Whether the induced class relation fails to be a partial order, checked
/// directly on the relation: antisymmetry first, then transitivity.
pub fn class_relation_defect(p: &Poset, theta: &Equivalence) -> Result<Option<RelationDefect>, ConstructionError> {
    match antisymmetry_defect(p, theta)? {
        Some(d) => Ok(Some(d)),
        None => transitivity_defect(p, theta),
    }
}

/// `P/Θ` together with the canonical projection `x ↦ [x]Θ`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub poset: Arc<Poset>,
    pub projection: PosetMap,
}

/// The quotient poset of `p` by an S-equivalence. Class `k` is labelled
/// `[x]` where `x` is its least-index member.
pub fn quotient_poset(p: &Arc<Poset>, theta: &Equivalence) -> Result<Quotient, ConstructionError> {
    if let Some(violation) = s_equivalence_violation(p, theta)? {
        let defect = class_relation_defect(p, theta)?
            .expect("a failed S-equivalence condition breaks the class order");
        return Err(ConstructionError::NotSEquivalence { violation, defect });
    }
    let labels = (0..theta.num_classes())
        .map(|c| format!("[{}]", p.label(theta.representative(c))))
        .collect();
    let poset = Arc::new(Poset::from_up_sets(labels, class_relation(p, theta))?);
    let projection = PosetMap::new(p.clone(), poset.clone(), theta.class_ids().to_vec())?;
    Ok(Quotient { poset, projection })
}
