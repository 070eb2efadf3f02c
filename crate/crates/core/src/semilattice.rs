//! Finite join-semilattices: a poset plus its total join table.

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::poset::{FinitePoset, PosetJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemilatticeError {
    #[error("{x} and {y} have no least upper bound (minimal upper bounds: {minimal_upper_bounds:?})")]
    NoLub {
        x: usize,
        y: usize,
        minimal_upper_bounds: Vec<usize>,
    },
    #[error("join of the empty set requested but there is no bottom")]
    EmptyJoinWithoutBottom,
    #[error("operation needs a least element")]
    NoBottom,
    #[error("element {0} out of range")]
    OutOfRange(usize),
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteJoinSemilattice {
    poset: FinitePoset,
    join: Vec<u32>,
    bottom: Option<usize>,
    top: Option<usize>,
}

impl std::fmt::Debug for FiniteJoinSemilattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteJoinSemilattice")
            .field("n", &self.len())
            .field("bottom", &self.bottom)
            .field("strict", &self.poset.strict_pairs())
            .finish()
    }
}

impl FiniteJoinSemilattice {
    /// Succeeds iff every pair of elements has a least upper bound.
    pub fn new(poset: FinitePoset) -> Result<Self, SemilatticeError> {
        let n = poset.len();
        let mut join = vec![0u32; n * n];
        let size: Vec<usize> = (0..n).map(|x| poset.down_of(x).count_ones(..)).collect();
        for x in 0..n {
            for y in x..n {
                let mut ub = poset.up_of(x).clone();
                ub.intersect_with(poset.up_of(y));
                let lub = ub
                    .ones()
                    .min_by_key(|&u| size[u])
                    .filter(|&c| ub.is_subset(poset.up_of(c)));
                match lub {
                    Some(z) => {
                        join[x * n + y] = z as u32;
                        join[y * n + x] = z as u32;
                    }
                    None => {
                        return Err(SemilatticeError::NoLub {
                            x,
                            y,
                            minimal_upper_bounds: poset.minimal_elements(&ub),
                        })
                    }
                }
            }
        }
        let bottom = poset.bottom();
        let top = poset.top();
        Ok(FiniteJoinSemilattice {
            poset,
            join,
            bottom,
            top,
        })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn into_poset(self) -> FinitePoset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    /// `⋁S`; the empty join is the bottom.
    pub fn join_set(&self, s: impl IntoIterator<Item = usize>) -> Result<usize, SemilatticeError> {
        let mut it = s.into_iter();
        match it.next() {
            None => self.bottom.ok_or(SemilatticeError::EmptyJoinWithoutBottom),
            Some(first) => Ok(it.fold(first, |acc, x| self.join(acc, x))),
        }
    }

    /// Greatest lower bound of `x` and `y`, if one exists. In a
    /// join-semilattice the common lower bounds are join-closed, so the meet
    /// exists exactly when some lower bound does.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let lower = self.poset.down_of(x).intersection(self.poset.down_of(y));
        lower.reduce(|a, b| self.join(a, b))
    }

    /// Greatest lower bound of a set; the empty meet is the top.
    pub fn meet_set(&self, s: impl IntoIterator<Item = usize>) -> Option<usize> {
        let mut common = self.poset.full_set();
        let mut any = false;
        for x in s {
            common.intersect_with(self.poset.down_of(x));
            any = true;
        }
        if !any {
            return self.top;
        }
        common.ones().reduce(|a, b| self.join(a, b))
    }

    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (x..n).all(|y| self.meet(x, y).is_some()))
    }

    fn require_bottom(&self) -> Result<usize, SemilatticeError> {
        self.bottom.ok_or(SemilatticeError::NoBottom)
    }

    fn lower_covers(&self, x: usize) -> Vec<usize> {
        let strict: Vec<usize> = self.poset.down_of(x).ones().filter(|&y| y != x).collect();
        strict
            .iter()
            .copied()
            .filter(|&y| !strict.iter().any(|&z| z != y && self.poset.lt(y, z)))
            .collect()
    }

    /// Non-zero `x` such that `x = a ∨ b` forces `x ∈ {a, b}`. In a finite
    /// join-semilattice with 0 these are the elements with exactly one lower
    /// cover.
    pub fn join_irreducibles(&self) -> Result<Vec<usize>, SemilatticeError> {
        let zero = self.require_bottom()?;
        Ok((0..self.len())
            .filter(|&x| x != zero && self.lower_covers(x).len() == 1)
            .collect())
    }

    /// Non-zero `x` such that `x ≤ a ∨ b` forces `x ≤ a` or `x ≤ b`;
    /// equivalently the complement of `↑x` is closed under joins.
    pub fn join_primes(&self) -> Result<Vec<usize>, SemilatticeError> {
        let zero = self.require_bottom()?;
        Ok((0..self.len())
            .filter(|&x| x != zero && self.is_prime(x))
            .collect())
    }

    fn is_prime(&self, x: usize) -> bool {
        let mut rest = self.poset.up_of(x).clone();
        rest.toggle_range(..);
        let rest: Vec<usize> = rest.ones().collect();
        rest.iter().all(|&a| rest.iter().all(|&b| !self.leq(x, self.join(a, b))))
    }

    /// A set of join-irreducibles joining to `x` from which nothing can be
    /// dropped. Empty for the bottom.
    pub fn irreducible_decomposition(&self, x: usize) -> Result<Vec<usize>, SemilatticeError> {
        if x >= self.len() {
            return Err(SemilatticeError::OutOfRange(x));
        }
        let irr = self.join_irreducibles()?;
        let below: FixedBitSet = irr.iter().copied().filter(|&j| self.leq(j, x)).collect();
        let mut below_set = FixedBitSet::with_capacity(self.len());
        below_set.extend(below.ones());
        let mut parts = self.poset.maximal_elements(&below_set);
        let mut i = 0;
        while i < parts.len() {
            let without: Vec<usize> = parts
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &p)| p)
                .collect();
            if self.join_set(without.iter().copied())? == x {
                parts = without;
            } else {
                i += 1;
            }
        }
        debug_assert_eq!(self.join_set(parts.iter().copied()).ok(), Some(x));
        Ok(parts)
    }

    /// `x ≰ ⋁F` for every `x ∈ X` and non-empty `F ⊆ X ∖ {x}`. Sets
    /// containing the bottom are never independent. Since `⋁F` grows with
    /// `F`, only `F = X ∖ {x}` needs checking.
    pub fn is_independent(&self, xs: &[usize]) -> bool {
        let mut set: Vec<usize> = xs.to_vec();
        set.sort_unstable();
        set.dedup();
        if self.bottom.is_some_and(|b| set.contains(&b)) {
            return false;
        }
        if set.len() < 2 {
            return true;
        }
        set.iter().enumerate().all(|(i, &x)| {
            let rest = set
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &y)| y)
                .reduce(|a, b| self.join(a, b))
                .expect("at least one other element");
            !self.leq(x, rest)
        })
    }

    /// A maximum-cardinality independent set (capped at `bound` elements),
    /// lexicographically least among the maximum ones.
    pub fn max_independent(&self, bound: usize) -> Vec<usize> {
        let candidates: Vec<usize> = (0..self.len()).filter(|&x| Some(x) != self.bottom).collect();
        let mut best = Vec::new();
        let mut current = Vec::new();
        self.independent_dfs(&candidates, 0, bound, &mut current, &mut best);
        best
    }

    fn independent_dfs(
        &self,
        candidates: &[usize],
        from: usize,
        bound: usize,
        current: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if current.len() > best.len() {
            *best = current.clone();
        }
        if best.len() >= bound {
            return;
        }
        for i in from..candidates.len() {
            if current.len() + (candidates.len() - i) <= best.len() {
                return;
            }
            current.push(candidates[i]);
            if self.is_independent(current) {
                self.independent_dfs(candidates, i + 1, bound, current, best);
                if best.len() >= bound {
                    current.pop();
                    return;
                }
            }
            current.pop();
        }
    }

    pub fn lattice_tests(&self) -> LatticeLaws {
        let n = self.len();
        if !self.is_lattice() {
            return LatticeLaws {
                is_lattice: false,
                is_modular: false,
                is_distributive: false,
                modular_violation: None,
                distributive_violation: None,
            };
        }
        let meet = |a: usize, b: usize| self.meet(a, b).expect("lattice");
        let mut modular_violation = None;
        let mut distributive_violation = None;
        'outer: for x in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if modular_violation.is_none()
                        && self.leq(x, b)
                        && self.join(x, meet(a, b)) != meet(self.join(x, a), b)
                    {
                        modular_violation = Some([x, a, b]);
                    }
                    if distributive_violation.is_none()
                        && meet(x, self.join(a, b)) != self.join(meet(x, a), meet(x, b))
                    {
                        distributive_violation = Some([x, a, b]);
                    }
                    if modular_violation.is_some() && distributive_violation.is_some() {
                        break 'outer;
                    }
                }
            }
        }
        LatticeLaws {
            is_lattice: true,
            is_modular: modular_violation.is_none(),
            is_distributive: distributive_violation.is_none(),
            modular_violation,
            distributive_violation,
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let n = self.len();
        let join: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| self.join(x, y)).collect()).collect();
        let p = PosetJson::from(&self.poset);
        serde_json::json!({ "n": p.n, "leq": p.leq, "join": join, "bottom": self.bottom })
    }
}

/// Outcome of the lattice-law scan. Violations are `[x, a, b]` triples:
/// for modularity `x ≤ b` and `x ∨ (a ∧ b) ≠ (x ∨ a) ∧ b`; for
/// distributivity `x ∧ (a ∨ b) ≠ (x ∧ a) ∨ (x ∧ b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeLaws {
    pub is_lattice: bool,
    pub is_modular: bool,
    pub is_distributive: bool,
    pub modular_violation: Option<[usize; 3]>,
    pub distributive_violation: Option<[usize; 3]>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean(k: usize) -> FiniteJoinSemilattice {
        let n = 1 << k;
        FiniteJoinSemilattice::new(FinitePoset::from_fn(n, |i, j| i & j == i).unwrap()).unwrap()
    }

    /// 0 < a < b < 1 and 0 < c < 1: labels 0, a=1, b=2, c=3, 1=4.
    fn pentagon() -> FiniteJoinSemilattice {
        let p = FinitePoset::from_generating_pairs(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        FiniteJoinSemilattice::new(p).unwrap()
    }

    fn all_subsets(xs: &[usize]) -> Vec<Vec<usize>> {
        (0..1usize << xs.len())
            .map(|m| (0..xs.len()).filter(|i| m >> i & 1 == 1).map(|i| xs[i]).collect())
            .collect()
    }

    fn brute_irreducible(l: &FiniteJoinSemilattice, x: usize) -> bool {
        let n = l.len();
        Some(x) != l.bottom()
            && (0..n).all(|a| (0..n).all(|b| l.join(a, b) != x || a == x || b == x))
    }

    fn brute_prime(l: &FiniteJoinSemilattice, x: usize) -> bool {
        let n = l.len();
        Some(x) != l.bottom()
            && (0..n).all(|a| {
                (0..n).all(|b| !l.leq(x, l.join(a, b)) || l.leq(x, a) || l.leq(x, b))
            })
    }

    #[test]
    fn boolean_join_is_union() {
        let b3 = boolean(3);
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(b3.join(x, y), x | y);
                assert_eq!(b3.meet(x, y), Some(x & y));
            }
        }
        assert_eq!(b3.join_set([1, 2, 4]).unwrap(), 7);
        assert_eq!(b3.join_set([]).unwrap(), 0);
    }

    #[test]
    fn antichain_has_no_lub() {
        let err = FiniteJoinSemilattice::new(FinitePoset::antichain(2)).unwrap_err();
        assert_eq!(
            err,
            SemilatticeError::NoLub {
                x: 0,
                y: 1,
                minimal_upper_bounds: vec![]
            }
        );
        // Two maximal elements above two minimal ones: two minimal upper bounds.
        let bowtie = FinitePoset::from_generating_pairs(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(matches!(
            FiniteJoinSemilattice::new(bowtie),
            Err(SemilatticeError::NoLub { minimal_upper_bounds, .. }) if minimal_upper_bounds == vec![2, 3]
        ));
    }

    #[test]
    fn empty_join_needs_bottom() {
        let v = FinitePoset::from_generating_pairs(3, &[(0, 2), (1, 2)]).unwrap();
        let l = FiniteJoinSemilattice::new(v).unwrap();
        assert_eq!(l.join_set([]), Err(SemilatticeError::EmptyJoinWithoutBottom));
        assert_eq!(l.join_irreducibles(), Err(SemilatticeError::NoBottom));
    }

    #[test]
    fn chain_join_is_max() {
        let c = FiniteJoinSemilattice::new(FinitePoset::chain(4)).unwrap();
        assert_eq!(c.join_set([1, 3]).unwrap(), 3);
        assert_eq!(c.irreducible_decomposition(3).unwrap(), vec![3]);
        assert!(!c.is_independent(&[1, 2]));
        assert_eq!(c.max_independent(4).len(), 1);
    }

    #[test]
    fn boolean_irreducibles_are_atoms() {
        let b3 = boolean(3);
        assert_eq!(b3.join_irreducibles().unwrap(), vec![1, 2, 4]);
        assert_eq!(b3.join_primes().unwrap(), vec![1, 2, 4]);
        assert_eq!(b3.irreducible_decomposition(0b101).unwrap(), vec![1, 4]);
        assert!(b3.is_independent(&[1, 2, 4]));
        assert_eq!(b3.max_independent(8), vec![1, 2, 4]);
    }

    #[test]
    fn pentagon_irreducibles_and_primes() {
        let p = pentagon();
        let irr = p.join_irreducibles().unwrap();
        assert_eq!(irr, vec![1, 2, 3]);
        for x in 0..5 {
            assert_eq!(irr.contains(&x), brute_irreducible(&p, x));
        }
        let pri = p.join_primes().unwrap();
        let brute: Vec<usize> = (0..5).filter(|&x| brute_prime(&p, x)).collect();
        assert_eq!(pri, brute);
        assert_eq!(pri, vec![1, 3]);
    }

    #[test]
    fn pentagon_is_not_modular() {
        let laws = pentagon().lattice_tests();
        assert!(laws.is_lattice && !laws.is_modular && !laws.is_distributive);
        let [x, a, b] = laws.modular_violation.unwrap();
        let p = pentagon();
        let m = |u, v| p.meet(u, v).unwrap();
        assert!(p.leq(x, b));
        assert_ne!(p.join(x, m(a, b)), m(p.join(x, a), b));
    }

    #[test]
    fn small_lattices_pass_laws() {
        let laws = boolean(3).lattice_tests();
        assert!(laws.is_lattice && laws.is_modular && laws.is_distributive);
        // L(1) = 1 + (1 ⊕ 1) + 1 is the 4-element diamond.
        let l1 = FinitePoset::chain(1)
            .ordinal_sum(&FinitePoset::antichain(2))
            .ordinal_sum(&FinitePoset::chain(1));
        let laws = FiniteJoinSemilattice::new(l1).unwrap().lattice_tests();
        assert!(laws.is_modular);
    }

    #[test]
    fn non_lattice_semilattice() {
        // Join-semilattice without bottom: two minimal elements under a top.
        let v = FinitePoset::from_generating_pairs(3, &[(0, 2), (1, 2)]).unwrap();
        let l = FiniteJoinSemilattice::new(v).unwrap();
        assert_eq!(l.meet(0, 1), None);
        assert!(!l.lattice_tests().is_lattice);
        assert_eq!(l.meet_set([]), Some(2));
    }

    #[test]
    fn independence_matches_all_subsets_definition() {
        let b3 = boolean(3);
        let p = pentagon();
        for l in [&b3, &p] {
            let elems: Vec<usize> = (0..l.len()).filter(|&x| Some(x) != l.bottom()).collect();
            for xs in all_subsets(&elems) {
                let brute = xs.iter().all(|&x| {
                    let others: Vec<usize> = xs.iter().copied().filter(|&y| y != x).collect();
                    all_subsets(&others)
                        .into_iter()
                        .filter(|f| !f.is_empty())
                        .all(|f| !l.leq(x, l.join_set(f).unwrap()))
                });
                assert_eq!(l.is_independent(&xs), brute, "{xs:?}");
            }
        }
        assert!(!b3.is_independent(&[0, 1]));
    }

    #[test]
    fn decompositions_are_minimal() {
        let p = pentagon();
        for x in 0..5 {
            let d = p.irreducible_decomposition(x).unwrap();
            assert_eq!(p.join_set(d.iter().copied()).unwrap(), x);
            for drop in 0..d.len() {
                let rest: Vec<usize> = d.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &y)| y).collect();
                assert_ne!(p.join_set(rest).unwrap(), x);
            }
        }
    }
}
