//! Small named posets used throughout tests, docs and benchmarks.

use crate::poset::Poset;

/// Two minimal elements `a`, `b`, both below two incomparable `c`, `d`,
/// which share a top `1`.
pub fn butterfly_top() -> Poset {
    Poset::from_covers(
        ["a", "b", "c", "d", "1"],
        &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")],
    )
    .expect("valid poset")
}

/// [`butterfly_top`] with an added bottom `0`.
pub fn butterfly_bounded() -> Poset {
    Poset::from_covers(
        ["0", "a", "b", "c", "d", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "c"),
            ("b", "d"),
            ("c", "1"),
            ("d", "1"),
        ],
    )
    .expect("valid poset")
}

/// `0 < 1 < .. < n-1`, labelled by index. Panics on `n == 0`.
pub fn chain(n: usize) -> Poset {
    crate::constructions::chain(n).expect("n >= 1")
}

/// `n` pairwise incomparable elements labelled by index. Panics on `n == 0`.
pub fn antichain(n: usize) -> Poset {
    crate::constructions::antichain(n).expect("n >= 1")
}

/// The four-element Boolean lattice `0 < x, y < 1`.
pub fn square() -> Poset {
    Poset::from_covers(
        ["0", "x", "y", "1"],
        &[("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")],
    )
    .expect("valid poset")
}

#[cfg(test)]
pub(crate) fn arb_poset(max: usize) -> impl proptest::strategy::Strategy<Value = Poset> {
    use proptest::prelude::*;
    (1..=max)
        .prop_flat_map(|n| {
            let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            (perm, proptest::collection::vec(any::<bool>(), n * n))
        })
        .prop_map(|(perm, bits)| {
            let n = perm.len();
            // Edges only go forward along `perm`, so the closure is acyclic.
            let mut covers = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if bits[i * n + j] {
                        covers.push((perm[i], perm[j]));
                    }
                }
            }
            let labels = (0..n).map(|i| format!("e{i}")).collect();
            Poset::from_index_covers(labels, &covers).expect("acyclic")
        })
}
