//! The two claims about the bipartite example, checked on `example48_p(n)`.

use serde::Serialize;

use super::families::{example48_p, example48_q, Ex48};
use crate::ideals::x_plus;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim1 {
    /// `Q` splits into the antichains `{(m, 0)}` and `{(m, 1)}`.
    pub bipartite: bool,
    pub down_sets: bool,
    /// `X ↦ X` is injective and order-reflecting into the down-sets of `Q`.
    pub embedding: bool,
    /// `X ∨ X' = X ∪ X'`.
    pub unions: bool,
}

impl Claim1 {
    pub fn holds(&self) -> bool {
        self.bipartite && self.down_sets && self.embedding && self.unions
    }
}

pub fn example48_claim1(n: usize) -> Claim1 {
    let q = example48_q(n);
    let (p, elems) = example48_p(n);
    let sets: Vec<_> = elems.iter().map(|e| e.down_set(n)).collect();
    let level = |x: usize| x % 2;
    let bipartite = q
        .strict_pairs()
        .iter()
        .all(|&(a, b)| level(a) == 0 && level(b) == 1);
    let down_sets = sets.iter().all(|s| q.is_down_set(s.bits()));
    let len = elems.len();
    let embedding = (0..len).all(|x| (0..len).all(|y| p.leq(x, y) == sets[x].is_subset(&sets[y])));
    let unions = (0..len).all(|x| (x..len).all(|y| sets[p.join(x, y)] == sets[x].union(&sets[y])));
    Claim1 {
        bipartite,
        down_sets,
        embedding,
        unions,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim2Row {
    pub n: usize,
    /// `|I_n|` inside the truncation.
    pub size: usize,
    /// `I_n ⊊ I_{n-1}` (true for `n = 0`).
    pub strict: bool,
    /// `I_n⁺ = I_n ∨ {Y_n}` in `J(P)`.
    pub plus_is_join_with_y: bool,
    /// `I_n⁺ ≠ I_n`.
    pub in_delta: bool,
}

/// `I_n = {X : min F > n}` for `n ≤ upto` inside `example48_p(depth)`.
/// Ideals of the finite truncation are principal, so `I_n` is handled
/// through the join of its members.
pub fn example48_claim2(depth: usize, upto: usize) -> Vec<Claim2Row> {
    let (p, elems) = example48_p(depth);
    let index = |e: Ex48| elems.iter().position(|&x| x == e);
    let mut rows: Vec<Claim2Row> = Vec::new();
    let mut prev: Option<usize> = None;
    for n in 0..=upto {
        let members: Vec<usize> = (0..elems.len()).filter(|&x| elems[x].f > n).collect();
        let Ok(top) = p.join_set(members.iter().copied()) else {
            break;
        };
        let y = index(Ex48 { f: n, g: 1 << n });
        let plus = x_plus(&p, top);
        rows.push(Claim2Row {
            n,
            size: members.len(),
            strict: prev.is_none_or(|q| p.leq(top, q) && top != q),
            plus_is_join_with_y: y.is_some_and(|y| plus == p.join(top, y)),
            in_delta: plus != top,
        });
        prev = Some(top);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim1_small() {
        for n in 0..=5 {
            assert!(example48_claim1(n).holds(), "n = {n}");
        }
    }

    #[test]
    fn claim2_in_truncation() {
        let rows = example48_claim2(8, 6);
        assert_eq!(rows.len(), 7);
        for r in &rows {
            assert!(r.strict && r.plus_is_join_with_y && r.in_delta, "{r:?}");
        }
        let sizes: Vec<usize> = rows.iter().map(|r| r.size).collect();
        assert!(sizes.windows(2).all(|w| w[1] < w[0]));
    }
}
