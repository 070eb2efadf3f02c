//! Isomorph-free enumeration of small posets.
//!
//! Every poset on `n` elements is a poset on `n - 1` elements plus one new
//! maximal element sitting above some down-set, so level `n` is produced
//! from level `n - 1` and deduplicated by canonical key. The canonical key
//! is the lexicographically least off-diagonal relation bit string over all
//! labelings that list elements by a sorted isomorphism invariant.

use std::collections::BTreeMap;

use super::{FinitePoset, PosetError};

pub const DEFAULT_ENUMERATION_CAP: usize = 7;

/// The key packs `n * (n - 1)` bits into a `u64`.
const MAX_KEY_SIZE: usize = 8;

type Invariant = (usize, usize, Vec<usize>, Vec<usize>);

fn invariant(p: &FinitePoset, x: usize) -> Invariant {
    let mut below: Vec<usize> = p
        .down_of(x)
        .ones()
        .filter(|&y| y != x)
        .map(|y| p.up_of(y).count_ones(..))
        .collect();
    let mut above: Vec<usize> = p
        .up_of(x)
        .ones()
        .filter(|&y| y != x)
        .map(|y| p.down_of(y).count_ones(..))
        .collect();
    below.sort_unstable();
    above.sort_unstable();
    (
        p.down_of(x).count_ones(..),
        p.up_of(x).count_ones(..),
        below,
        above,
    )
}

struct Canon<'a> {
    p: &'a FinitePoset,
    /// `class_of_slot[i]`: index of the invariant class that slot `i` must hold.
    class_of_slot: Vec<usize>,
    class_of: Vec<usize>,
    nbits: u32,
    best: Option<(u64, Vec<usize>)>,
    labeling: Vec<usize>,
    used: Vec<bool>,
}

impl Canon<'_> {
    fn search(&mut self, k: usize, partial: u64, bits: u32) {
        let n = self.p.len();
        if k == n {
            let better = match &self.best {
                None => true,
                Some((b, _)) => partial < *b,
            };
            if better {
                self.best = Some((partial, self.labeling.clone()));
            }
            return;
        }
        for x in 0..n {
            if self.used[x] || self.class_of[x] != self.class_of_slot[k] {
                continue;
            }
            let mut value = partial;
            let mut width = bits;
            for i in 0..k {
                let y = self.labeling[i];
                value = (value << 1) | self.p.leq(y, x) as u64;
                value = (value << 1) | self.p.leq(x, y) as u64;
                width += 2;
            }
            if let Some((b, _)) = &self.best {
                let prefix = b >> (self.nbits - width);
                if value > prefix {
                    continue;
                }
            }
            self.used[x] = true;
            self.labeling.push(x);
            self.search(k + 1, value, width);
            self.labeling.pop();
            self.used[x] = false;
        }
    }
}

fn canonical_labeling(p: &FinitePoset) -> (u64, Vec<usize>) {
    let n = p.len();
    assert!(n <= MAX_KEY_SIZE, "canonical keys support at most {MAX_KEY_SIZE} elements");
    let invs: Vec<Invariant> = (0..n).map(|x| invariant(p, x)).collect();
    let mut distinct = invs.clone();
    distinct.sort();
    distinct.dedup();
    let class_of: Vec<usize> = invs
        .iter()
        .map(|v| distinct.binary_search(v).expect("present"))
        .collect();
    let mut class_of_slot = class_of.clone();
    class_of_slot.sort_unstable();
    let mut c = Canon {
        p,
        class_of_slot,
        class_of,
        nbits: (n * n.saturating_sub(1)) as u32,
        best: None,
        labeling: Vec::with_capacity(n),
        used: vec![false; n],
    };
    c.search(0, 0, 0);
    c.best.expect("at least one labeling")
}

/// Canonical key; equal keys (for equal sizes) mean isomorphic posets.
pub fn canonical_key(p: &FinitePoset) -> u64 {
    canonical_labeling(p).0
}

pub fn canonical_form(p: &FinitePoset) -> FinitePoset {
    let (_, labeling) = canonical_labeling(p);
    p.relabel(&labeling)
}

/// One representative per isomorphism class of `n`-element posets, in
/// increasing canonical-key order.
pub fn enumerate_posets(n: usize, cap: usize) -> Result<Vec<FinitePoset>, PosetError> {
    let cap = cap.min(MAX_KEY_SIZE);
    if n > cap {
        return Err(PosetError::CapExceeded { n, cap });
    }
    let mut level = vec![FinitePoset::antichain(0)];
    for size in 1..=n {
        let mut next: BTreeMap<u64, FinitePoset> = BTreeMap::new();
        let old = size - 1;
        for p in &level {
            for mask in 0u32..(1 << old) {
                let below = |i: usize| mask >> i & 1 == 1;
                let closed = (0..old).all(|y| !below(y) || p.down_of(y).ones().all(below));
                if !closed {
                    continue;
                }
                let q = FinitePoset::from_fn(size, |i, j| {
                    if j == old {
                        i == old || below(i)
                    } else if i == old {
                        false
                    } else {
                        p.leq(i, j)
                    }
                })
                .expect("adding a maximal element keeps the axioms");
                let (key, labeling) = canonical_labeling(&q);
                next.entry(key).or_insert_with(|| q.relabel(&labeling));
            }
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::iso;
    use std::collections::BTreeSet;

    /// Independent oracle: every labeled relation on `n` points, keyed by the
    /// lexicographically least row-major matrix over all `n!` relabelings.
    fn brute_force_count(n: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for mask in 0u64..(1 << pairs.len()) {
            let rel = |i: usize, j: usize| {
                i == j || {
                    let idx = pairs.iter().position(|&p| p == (i, j)).unwrap();
                    mask >> idx & 1 == 1
                }
            };
            if FinitePoset::from_fn(n, rel).is_err() {
                continue;
            }
            let key = perms
                .iter()
                .map(|pi| {
                    (0..n)
                        .flat_map(|i| (0..n).map(move |j| (i, j)))
                        .map(|(i, j)| rel(pi[i], pi[j]))
                        .collect::<Vec<bool>>()
                })
                .min()
                .unwrap();
            seen.insert(key);
        }
        seen.len()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn counts_match_brute_force_oracle() {
        for n in 0..=4 {
            assert_eq!(
                enumerate_posets(n, 7).unwrap().len(),
                brute_force_count(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn counts_match_unlabeled_poset_sequence() {
        let expected = [1, 1, 2, 5, 16, 63, 318];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(enumerate_posets(n, 7).unwrap().len(), e, "n = {n}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate_posets(8, 7),
            Err(PosetError::CapExceeded { n: 8, cap: 7 })
        );
    }

    #[test]
    fn outputs_are_pairwise_non_isomorphic() {
        for n in 0..=5 {
            let all = enumerate_posets(n, 7).unwrap();
            for i in 0..all.len() {
                for j in (i + 1)..all.len() {
                    assert!(iso(&all[i], &all[j]).is_none(), "n={n} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let p = FinitePoset::from_generating_pairs(5, &[(0, 2), (1, 2), (2, 4), (3, 4)]).unwrap();
        for perm in permutations(5).into_iter().step_by(7) {
            let q = p.relabel(&perm);
            assert_eq!(canonical_form(&q), canonical_form(&p));
        }
    }
}
