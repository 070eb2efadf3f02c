//! Finite posets on the labels `0..n`.
//!
//! The order is stored twice, as one principal down-set and one principal
//! up-set bitset per element, so that `leq` is a single bit probe and
//! closure computations are word-parallel unions.

mod enumerate;
mod io;
mod iso;

pub use enumerate::{canonical_form, canonical_key, enumerate_posets, DEFAULT_ENUMERATION_CAP};
pub use io::{PosetJson, PosetJsonError};
pub use iso::iso;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("relation matrix is not {0}x{0}")]
    ShapeMismatch(usize),
    #[error("element {0} out of range for a poset of size {1}")]
    OutOfRange(usize, usize),
    #[error("enumeration size {n} exceeds the configured cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    n: usize,
    down: Vec<FixedBitSet>,
    up: Vec<FixedBitSet>,
}

impl std::fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FinitePoset")
            .field("n", &self.n)
            .field("strict", &self.strict_pairs())
            .finish()
    }
}

impl FinitePoset {
    /// Validates a dense relation matrix (`rel[i][j]` means `i <= j`).
    pub fn from_relation(rel: &[Vec<bool>]) -> Result<Self, PosetError> {
        let n = rel.len();
        if rel.iter().any(|row| row.len() != n) {
            return Err(PosetError::ShapeMismatch(n));
        }
        Self::from_fn(n, |i, j| rel[i][j])
    }

    /// Validates the relation given by `leq(i, j)`.
    pub fn from_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self, PosetError> {
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    down[j].insert(i);
                    up[i].insert(j);
                }
            }
        }
        let p = FinitePoset { n, down, up };
        p.check_axioms()?;
        Ok(p)
    }

    /// Builds the reflexive-transitive closure of `pairs` and validates it
    /// (only antisymmetry can fail).
    pub fn from_generating_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in down.iter_mut().enumerate() {
            row.insert(x);
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(PosetError::OutOfRange(a.max(b), n));
            }
            down[b].insert(a);
        }
        // Warshall over bit rows.
        for k in 0..n {
            let dk = down[k].clone();
            for row in down.iter_mut() {
                if row.contains(k) {
                    row.union_with(&dk);
                }
            }
        }
        Self::from_fn(n, |i, j| down[j].contains(i))
    }

    pub(crate) fn from_down_sets_unchecked(down: Vec<FixedBitSet>) -> Self {
        let n = down.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (y, d) in down.iter().enumerate() {
            for x in d.ones() {
                up[x].insert(y);
            }
        }
        FinitePoset { n, down, up }
    }

    fn check_axioms(&self) -> Result<(), PosetError> {
        let n = self.n;
        for x in 0..n {
            if !self.leq(x, x) {
                return Err(PosetError::NotReflexive(x));
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if self.leq(x, y) && self.leq(y, x) {
                    return Err(PosetError::NotAntisymmetric(x, y));
                }
            }
        }
        for x in 0..n {
            for y in self.up[x].ones() {
                if let Some(z) = self.up[y].difference(&self.up[x]).next() {
                    return Err(PosetError::NotTransitive(x, y, z));
                }
            }
        }
        Ok(())
    }

    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, |i, j| i <= j).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn(n, |i, j| i == j).expect("antichain is a poset")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Principal down-set `↓x` as a raw bitset.
    #[inline]
    pub fn down_of(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// Principal up-set `↑x` as a raw bitset.
    #[inline]
    pub fn up_of(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.n)
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.n);
        s.insert_range(..);
        s
    }

    /// All strictly related pairs `(x, y)` with `x < y`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for y in 0..self.n {
            for x in self.down[y].ones() {
                if x != y {
                    out.push((x, y));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn down_closure(&self, a: &FixedBitSet) -> DownSet {
        let mut s = self.empty_set();
        for x in a.ones() {
            s.union_with(&self.down[x]);
        }
        DownSet(s)
    }

    /// `↑A`, returned as a down-set of the dual order.
    pub fn up_closure(&self, a: &FixedBitSet) -> DownSet {
        let mut s = self.empty_set();
        for x in a.ones() {
            s.union_with(&self.up[x]);
        }
        DownSet(s)
    }

    pub fn principal(&self, x: usize) -> DownSet {
        DownSet(self.down[x].clone())
    }

    pub fn is_down_set(&self, s: &FixedBitSet) -> bool {
        s.ones().all(|y| self.down[y].is_subset(s))
    }

    /// Accepts `s` as a down-set of this poset.
    pub fn down_set(&self, s: FixedBitSet) -> Option<DownSet> {
        if s.len() == self.n && self.is_down_set(&s) {
            Some(DownSet(s))
        } else {
            None
        }
    }

    pub fn is_directed(&self, s: &FixedBitSet) -> bool {
        if s.is_clear() {
            return false;
        }
        let members: Vec<usize> = s.ones().collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                let common = self.up[a].intersection(&self.up[b]);
                if !common.into_iter().any(|c| s.contains(c)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn minimal_elements(&self, s: &FixedBitSet) -> Vec<usize> {
        s.ones()
            .filter(|&x| self.down[x].ones().all(|y| y == x || !s.contains(y)))
            .collect()
    }

    pub fn maximal_elements(&self, s: &FixedBitSet) -> Vec<usize> {
        s.ones()
            .filter(|&x| self.up[x].ones().all(|y| y == x || !s.contains(y)))
            .collect()
    }

    /// Global minimum, if any.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.n).find(|&x| self.up[x].count_ones(..) == self.n)
    }

    /// Global maximum, if any.
    pub fn top(&self) -> Option<usize> {
        (0..self.n).find(|&x| self.down[x].count_ones(..) == self.n)
    }

    /// Cover pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for y in 0..self.n {
            for x in self.down[y].ones() {
                if x == y {
                    continue;
                }
                let between = self.up[x]
                    .intersection(&self.down[y])
                    .any(|z| z != x && z != y);
                if !between {
                    out.push((x, y));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// A linear extension: elements sorted by `|↓x|` then label.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| (self.down[x].count_ones(..), x));
        order
    }

    /// `h(x)`: length (in steps) of the longest chain ending at `x`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0usize; self.n];
        for x in self.linear_extension() {
            rank[x] = self.down[x]
                .ones()
                .filter(|&y| y != x)
                .map(|y| rank[y] + 1)
                .max()
                .unwrap_or(0);
        }
        rank
    }

    /// Length (in steps) of the longest chain starting at `x`.
    pub fn coranks(&self) -> Vec<usize> {
        let mut corank = vec![0usize; self.n];
        for x in self.linear_extension().into_iter().rev() {
            corank[x] = self.up[x]
                .ones()
                .filter(|&y| y != x)
                .map(|y| corank[y] + 1)
                .max()
                .unwrap_or(0);
        }
        corank
    }

    /// Number of elements of a longest chain.
    pub fn height(&self) -> usize {
        if self.n == 0 {
            0
        } else {
            self.ranks().into_iter().max().unwrap_or(0) + 1
        }
    }

    /// Size of a largest antichain (Dilworth via bipartite matching).
    pub fn width(&self) -> usize {
        let n = self.n;
        let mut match_right: Vec<Option<usize>> = vec![None; n];
        let mut matched = 0;
        for u in 0..n {
            let mut seen = vec![false; n];
            if self.augment(u, &mut seen, &mut match_right) {
                matched += 1;
            }
        }
        n - matched
    }

    fn augment(&self, u: usize, seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
        for v in self.up[u].ones() {
            if v == u || seen[v] {
                continue;
            }
            seen[v] = true;
            if match_right[v].is_none_or(|w| self.augment(w, seen, match_right)) {
                match_right[v] = Some(u);
                return true;
            }
        }
        false
    }

    pub fn invariants(&self) -> PosetInvariants {
        PosetInvariants {
            height: self.height(),
            width: self.width(),
            covers: self.covers(),
            down: (0..self.n).map(|x| self.principal(x)).collect(),
        }
    }

    pub fn dual(&self) -> FinitePoset {
        FinitePoset {
            n: self.n,
            down: self.up.clone(),
            up: self.down.clone(),
        }
    }

    /// Every element of `self` placed below every element of `other`.
    pub fn ordinal_sum(&self, other: &FinitePoset) -> FinitePoset {
        let (a, b) = (self.n, other.n);
        FinitePoset::from_fn(a + b, |i, j| match (i < a, j < a) {
            (true, true) => self.leq(i, j),
            (false, false) => other.leq(i - a, j - a),
            (true, false) => true,
            (false, true) => false,
        })
        .expect("ordinal sum of posets is a poset")
    }

    /// Disjoint union with no relations across the two parts.
    pub fn direct_sum(&self, other: &FinitePoset) -> FinitePoset {
        let (a, b) = (self.n, other.n);
        FinitePoset::from_fn(a + b, |i, j| match (i < a, j < a) {
            (true, true) => self.leq(i, j),
            (false, false) => other.leq(i - a, j - a),
            _ => false,
        })
        .expect("direct sum of posets is a poset")
    }

    /// Componentwise order; the pair `(i, j)` gets label `i * |other| + j`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let m = other.n;
        FinitePoset::from_fn(self.n * m, |x, y| {
            self.leq(x / m, y / m) && other.leq(x % m, y % m)
        })
        .expect("product of posets is a poset")
    }

    pub fn compose(op: Compose, p: &FinitePoset, q: &FinitePoset) -> FinitePoset {
        match op {
            Compose::OrdinalSum => p.ordinal_sum(q),
            Compose::DirectSum => p.direct_sum(q),
            Compose::Product => p.product(q),
            Compose::Dual => p.dual(),
        }
    }

    /// Relabels so that new label `i` is old element `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> FinitePoset {
        assert_eq!(perm.len(), self.n);
        FinitePoset::from_fn(self.n, |i, j| self.leq(perm[i], perm[j])).expect("relabeling")
    }

    /// The induced subposet on `keep`, labelled in increasing order.
    pub fn induced(&self, keep: &[usize]) -> FinitePoset {
        FinitePoset::from_fn(keep.len(), |i, j| self.leq(keep[i], keep[j])).expect("subposet")
    }

    /// Hasse diagram in Graphviz DOT syntax.
    pub fn to_dot(&self, name: &str, labels: Option<&[String]>) -> String {
        let mut s = format!("digraph \"{}\" {{\n  rankdir=BT;\n  node [shape=plaintext];\n", name);
        for x in 0..self.n {
            let label = labels.map_or_else(|| x.to_string(), |l| l[x].clone());
            s.push_str(&format!("  n{} [label=\"{}\"];\n", x, label.replace('"', "\\\"")));
        }
        for (x, y) in self.covers() {
            s.push_str(&format!("  n{} -> n{};\n", x, y));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Compose {
    OrdinalSum,
    DirectSum,
    Product,
    Dual,
}

/// A downward-closed subset of some [`FinitePoset`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DownSet(FixedBitSet);

impl DownSet {
    /// For tests that need a set that is not actually down-closed.
    #[cfg(test)]
    pub(crate) fn from_bits_unchecked(bits: FixedBitSet) -> Self {
        DownSet(bits)
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.0
    }

    pub fn into_bits(self) -> FixedBitSet {
        self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn members(&self) -> Vec<usize> {
        self.0.ones().collect()
    }

    pub fn is_subset(&self, other: &DownSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Unions of down-sets are down-sets.
    pub fn union(&self, other: &DownSet) -> DownSet {
        let mut s = self.0.clone();
        s.union_with(&other.0);
        DownSet(s)
    }

    /// Intersections of down-sets are down-sets.
    pub fn intersection(&self, other: &DownSet) -> DownSet {
        let mut s = self.0.clone();
        s.intersect_with(&other.0);
        DownSet(s)
    }

    pub fn difference(&self, other: &DownSet) -> FixedBitSet {
        let mut s = self.0.clone();
        s.difference_with(&other.0);
        s
    }
}

impl Serialize for DownSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.ones())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PosetInvariants {
    pub height: usize,
    pub width: usize,
    pub covers: Vec<(usize, usize)>,
    pub down: Vec<DownSet>,
}

pub fn bits_from(n: usize, xs: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for x in xs {
        s.insert(x);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean2() -> FinitePoset {
        // 0 = {}, 1 = {0}, 2 = {1}, 3 = {0,1}
        FinitePoset::from_fn(4, |i, j| i & j == i).unwrap()
    }

    #[test]
    fn validate_examples() {
        let id: Vec<Vec<bool>> = (0..3).map(|i| (0..3).map(|j| i == j).collect()).collect();
        let p = FinitePoset::from_relation(&id).unwrap();
        assert_eq!(p.width(), 3);
        assert_eq!(p.height(), 1);

        let tri: Vec<Vec<bool>> = (0..3).map(|i| (0..3).map(|j| i <= j).collect()).collect();
        assert_eq!(FinitePoset::from_relation(&tri).unwrap(), FinitePoset::chain(3));

        let mut bad = id.clone();
        bad[0][1] = true;
        bad[1][2] = true;
        assert_eq!(
            FinitePoset::from_relation(&bad),
            Err(PosetError::NotTransitive(0, 1, 2))
        );
    }

    #[test]
    fn axiom_errors_carry_witnesses() {
        assert_eq!(
            FinitePoset::from_fn(2, |i, j| i != j || i == 0),
            Err(PosetError::NotReflexive(1))
        );
        assert_eq!(
            FinitePoset::from_fn(2, |_, _| true),
            Err(PosetError::NotAntisymmetric(0, 1))
        );
        assert!(FinitePoset::from_relation(&[vec![true, false]]).is_err());
    }

    #[test]
    fn closures() {
        let c = FinitePoset::chain(3);
        assert_eq!(c.down_closure(&bits_from(3, [2])).members(), vec![0, 1, 2]);
        let a = FinitePoset::antichain(3);
        assert_eq!(a.down_closure(&bits_from(3, [0, 1])).members(), vec![0, 1]);
        let b = boolean2();
        assert_eq!(b.down_closure(&bits_from(4, [1])).members(), vec![0, 1]);
        assert_eq!(b.up_closure(&bits_from(4, [1])).members(), vec![1, 3]);
    }

    #[test]
    fn compositions() {
        let one = FinitePoset::chain(1);
        assert_eq!(one.direct_sum(&one), FinitePoset::antichain(2));
        let two = FinitePoset::chain(2);
        assert_eq!(two.ordinal_sum(&two), FinitePoset::chain(4));
        assert!(iso(&two.product(&two), &boolean2()).is_some());
        assert_eq!(
            FinitePoset::compose(Compose::Dual, &FinitePoset::chain(3), &one),
            FinitePoset::from_fn(3, |i, j| i >= j).unwrap()
        );
    }

    #[test]
    fn invariant_examples() {
        let c4 = FinitePoset::chain(4);
        assert_eq!((c4.height(), c4.width()), (4, 1));
        let b = boolean2();
        assert_eq!((b.height(), b.width()), (3, 2));
        assert_eq!(b.covers(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        let inv = b.invariants();
        assert_eq!(inv.down.len(), 4);
        assert_eq!(inv.down[3].len(), 4);
    }

    #[test]
    fn directedness() {
        let b = boolean2();
        assert!(b.is_directed(&b.full_set()));
        assert!(!b.is_directed(&bits_from(4, [1, 2])));
        assert!(!b.is_directed(&b.empty_set()));
    }

    #[test]
    fn generating_pairs_take_transitive_closure() {
        let p = FinitePoset::from_generating_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p, FinitePoset::chain(3));
        assert!(matches!(
            FinitePoset::from_generating_pairs(2, &[(0, 1), (1, 0)]),
            Err(PosetError::NotAntisymmetric(0, 1))
        ));
    }

    #[test]
    fn dot_lists_covers_only() {
        let dot = FinitePoset::chain(3).to_dot("c3", None);
        assert!(dot.contains("n0 -> n1"));
        assert!(dot.contains("n1 -> n2"));
        assert!(!dot.contains("n0 -> n2"));
    }
}
