//! Enumeration of all labeled posets of a given size.

use std::collections::HashSet;

use super::VerifyError;
use crate::poset::Poset;
use crate::set::ElementSet;

/// Largest size [`enumerate_posets`] accepts.
pub const MAX_ENUMERATION_SIZE: usize = 6;

/// Every poset on `n` elements labelled `a, b, ..`, each labeled order
/// exactly once. With `iso_dedup`, only the first member of each
/// isomorphism class (in enumeration order) is kept.
///
/// Posets on `n` elements are grown from those on `n - 1` by adding the new
/// element with a down-set `D` below it and an up-set `U` above it, where
/// `D` and `U` are disjoint and every member of `D` lies below every member
/// of `U`. Each labeled order arises from exactly one such choice.
pub fn enumerate_posets(n: usize, iso_dedup: bool) -> Result<PosetStream, VerifyError> {
    if n == 0 || n > MAX_ENUMERATION_SIZE {
        return Err(VerifyError::SizeOutOfRange {
            n,
            max: MAX_ENUMERATION_SIZE,
        });
    }
    Ok(PosetStream {
        rows: level(n).into_iter(),
        labels: (0..n).map(letter_label).collect(),
        seen: iso_dedup.then(HashSet::new),
    })
}

/// All posets of sizes `1..=n_max`, concatenated in size order.
pub fn enumerate_posets_up_to(n_max: usize, iso_dedup: bool) -> Result<Vec<Poset>, VerifyError> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.extend(enumerate_posets(n, iso_dedup)?);
    }
    Ok(out)
}

fn letter_label(i: usize) -> String {
    char::from(b'a' + i as u8).to_string()
}

pub struct PosetStream {
    rows: std::vec::IntoIter<Vec<ElementSet>>,
    labels: Vec<String>,
    seen: Option<HashSet<u64>>,
}

impl Iterator for PosetStream {
    type Item = Poset;

    fn next(&mut self) -> Option<Poset> {
        loop {
            let rows = self.rows.next()?;
            if let Some(seen) = &mut self.seen {
                if !seen.insert(canonical_code(&rows)) {
                    continue;
                }
            }
            let p = Poset::from_up_sets(self.labels.clone(), rows).expect("enumerated rows form a poset");
            return Some(p);
        }
    }
}

/// Up-set rows of every labeled poset on `n` elements.
fn level(n: usize) -> Vec<Vec<ElementSet>> {
    let mut current = vec![vec![ElementSet::singleton(0)]];
    for k in 1..n {
        let mut next = Vec::new();
        for up in &current {
            let down = down_rows(up);
            let subsets = || (0..1u64 << k).map(ElementSet::from_bits);
            let down_closed: Vec<ElementSet> = subsets()
                .filter(|d| d.iter().all(|x| down[x].is_subset(*d)))
                .collect();
            let up_closed: Vec<ElementSet> = subsets()
                .filter(|u| u.iter().all(|x| up[x].is_subset(*u)))
                .collect();
            for &below in &down_closed {
                // everything above the new element must be above all of `below`
                let allowed = below
                    .iter()
                    .fold(ElementSet::full(k), |acc, d| acc.intersection(up[d]));
                for &above in &up_closed {
                    if above.intersects(below) || !above.is_subset(allowed) {
                        continue;
                    }
                    let mut rows: Vec<ElementSet> = up
                        .iter()
                        .enumerate()
                        .map(|(i, &row)| if below.contains(i) { row.with(k) } else { row })
                        .collect();
                    rows.push(above.with(k));
                    next.push(rows);
                }
            }
        }
        current = next;
    }
    current
}

fn down_rows(up: &[ElementSet]) -> Vec<ElementSet> {
    let mut down = vec![ElementSet::EMPTY; up.len()];
    for (i, row) in up.iter().enumerate() {
        for j in row.iter() {
            down[j].insert(i);
        }
    }
    down
}

/// The least relation bitstring over relabelings that sort elements by
/// `(|down|, |up|)`. Isomorphic posets share the code; any relabeling that
/// realizes an isomorphism preserves those degrees, so restricting to
/// degree-sorted relabelings loses nothing.
pub(crate) fn canonical_code(up: &[ElementSet]) -> u64 {
    let n = up.len();
    debug_assert!(n * n <= 64);
    let down = down_rows(up);
    let signature = |i: usize| (down[i].len(), up[i].len());
    let mut slots: Vec<(usize, usize)> = (0..n).map(signature).collect();
    slots.sort_unstable();

    let mut best = u64::MAX;
    let mut placed = vec![usize::MAX; n];
    let mut used = ElementSet::EMPTY;
    fn search(
        pos: usize,
        up: &[ElementSet],
        slots: &[(usize, usize)],
        signature: &dyn Fn(usize) -> (usize, usize),
        placed: &mut [usize],
        used: &mut ElementSet,
        best: &mut u64,
    ) {
        let n = up.len();
        if pos == n {
            let mut code = 0u64;
            for i in 0..n {
                for j in 0..n {
                    if up[placed[i]].contains(placed[j]) {
                        code |= 1 << (i * n + j);
                    }
                }
            }
            *best = (*best).min(code);
            return;
        }
        for x in 0..n {
            if used.contains(x) || signature(x) != slots[pos] {
                continue;
            }
            used.insert(x);
            placed[pos] = x;
            search(pos + 1, up, slots, signature, placed, used, best);
            used.remove(x);
        }
    }
    search(0, up, &slots, &signature, &mut placed, &mut used, &mut best);
    best
}
