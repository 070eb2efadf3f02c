//! Down-set and ideal lattices, completely meet-irreducibles, the `φ` maps
//! and closures of set families under union.

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::poset::{bits_from, DownSet, FinitePoset};
use crate::semilattice::FiniteJoinSemilattice;

/// Largest number of down-sets a lattice may materialize.
pub const DOWNSET_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("more than {cap} down-sets")]
    CapExceeded { cap: usize },
    #[error("{0} is the least element, so P \\ ↑x is empty")]
    EmptyComplement(usize),
    #[error("no top element, so h(L) is undefined")]
    NoTop,
    #[error("the family is empty")]
    EmptyFamily,
    #[error("family member {0} is not a down-set of the ground poset")]
    NotDownSet(usize),
}

fn sort_sets(sets: &mut [DownSet]) {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members().cmp(&b.members())));
}

/// All down-sets of `p`, ordered by size then lexicographically (so `∅`
/// comes first and `P` last).
pub fn down_sets(p: &FinitePoset, cap: usize) -> Result<Vec<DownSet>, IdealError> {
    let order = p.linear_extension();
    let mut out = Vec::new();
    let mut current = p.empty_set();
    collect_down_sets(p, &order, 0, &mut current, &mut out, cap)?;
    let mut sets: Vec<DownSet> = out.into_iter().map(|b| p.down_set(b).expect("closed by construction")).collect();
    sort_sets(&mut sets);
    Ok(sets)
}

fn collect_down_sets(
    p: &FinitePoset,
    order: &[usize],
    k: usize,
    current: &mut FixedBitSet,
    out: &mut Vec<FixedBitSet>,
    cap: usize,
) -> Result<(), IdealError> {
    if k == order.len() {
        if out.len() >= cap {
            return Err(IdealError::CapExceeded { cap });
        }
        out.push(current.clone());
        return Ok(());
    }
    let x = order[k];
    collect_down_sets(p, order, k + 1, current, out, cap)?;
    if p.down_of(x).ones().all(|y| y == x || current.contains(y)) {
        current.insert(x);
        collect_down_sets(p, order, k + 1, current, out, cap)?;
        current.set(x, false);
    }
    Ok(())
}

/// The poset of the given sets under inclusion, labeled by position.
pub fn inclusion_order(sets: &[DownSet]) -> FinitePoset {
    let down = sets
        .iter()
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(sets.len());
            row.extend((0..sets.len()).filter(|&j| sets[j].is_subset(a)));
            row
        })
        .collect();
    FinitePoset::from_down_sets_unchecked(down)
}

/// `I(P)` (which for finite `P` is also `I_{<ω}(P)`) as a lattice whose
/// element `i` is `sets[i]`; joins are unions.
#[derive(Debug, Clone)]
pub struct DownSetLattice {
    pub sets: Vec<DownSet>,
    pub lattice: FiniteJoinSemilattice,
}

impl DownSetLattice {
    pub fn index_of(&self, s: &DownSet) -> Option<usize> {
        self.sets
            .binary_search_by(|a| a.len().cmp(&s.len()).then_with(|| a.members().cmp(&s.members())))
            .ok()
    }

    pub fn principal_index(&self, p: &FinitePoset, x: usize) -> usize {
        self.index_of(&p.principal(x)).expect("principal down-sets are listed")
    }

    pub fn labels(&self) -> Vec<String> {
        self.sets.iter().map(|s| set_label(&s.members())).collect()
    }

    pub fn to_dot(&self, name: &str) -> String {
        self.lattice.poset().to_dot(name, Some(&self.labels()))
    }
}

pub fn set_label(xs: &[usize]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn initial_segment_lattice(p: &FinitePoset) -> Result<DownSetLattice, IdealError> {
    initial_segment_lattice_capped(p, DOWNSET_CAP)
}

pub fn initial_segment_lattice_capped(p: &FinitePoset, cap: usize) -> Result<DownSetLattice, IdealError> {
    let sets = down_sets(p, cap)?;
    let lattice = FiniteJoinSemilattice::new(inclusion_order(&sets)).expect("down-sets are closed under union");
    Ok(DownSetLattice { sets, lattice })
}

/// Every non-empty directed down-set, found by scanning all down-sets.
/// Ordered by size then lexicographically.
pub fn ideal_lattice(p: &FinitePoset) -> Result<Vec<DownSet>, IdealError> {
    Ok(down_sets(p, DOWNSET_CAP)?
        .into_iter()
        .filter(|s| !s.is_empty() && p.is_directed(s.bits()))
        .collect())
}

/// `x⁺`, the meet of all strict upper bounds of `x` (the top when there are
/// none). In a finite join-semilattice the strict upper bounds of `x` have
/// `x` as a common lower bound, so this meet always exists.
pub fn x_plus(l: &FiniteJoinSemilattice, x: usize) -> usize {
    let strict = l.poset().up_of(x).ones().filter(|&y| y != x);
    l.meet_set(strict).unwrap_or(x)
}

/// `Δ(L) = {x : x ≠ x⁺}`.
pub fn delta(l: &FiniteJoinSemilattice) -> Vec<usize> {
    (0..l.len()).filter(|&x| x_plus(l, x) != x).collect()
}

/// The unique minimum family of ideals covering `P ∖ ↑x`: the principal
/// ideals of the maximal elements of the complement.
pub fn cover_by_ideals(p: &FinitePoset, x: usize) -> Result<Vec<DownSet>, IdealError> {
    let mut rest = p.up_of(x).clone();
    rest.toggle_range(..);
    if rest.is_clear() {
        return Err(IdealError::EmptyComplement(x));
    }
    Ok(p.maximal_elements(&rest).into_iter().map(|m| p.principal(m)).collect())
}

/// `φ_Q(x) = {J ∈ Q : x ∉ J}`, each image a set of indices into `Q`.
#[derive(Debug, Clone, Serialize)]
pub struct PhiMap {
    pub images: Vec<Vec<usize>>,
    pub images_are_initial_segments: bool,
    pub order_preserving: bool,
    pub embedding: bool,
    /// `(x, y)` with `x ≰ y` and no `J` holding `y` but not `x`.
    pub violation: Option<(usize, usize)>,
}

impl PhiMap {
    pub fn is_injective(&self) -> bool {
        let mut seen: Vec<&Vec<usize>> = self.images.iter().collect();
        seen.sort();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// `φ(x ∨ y) = φ(x) ∪ φ(y)` for all pairs; `Some((x, y))` on failure.
    pub fn join_violation(&self, l: &FiniteJoinSemilattice) -> Option<(usize, usize)> {
        let n = l.len();
        for x in 0..n {
            for y in x..n {
                let mut u: Vec<usize> = self.images[x].iter().chain(&self.images[y]).copied().collect();
                u.sort_unstable();
                u.dedup();
                if u != self.images[l.join(x, y)] {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

pub fn phi_q(p: &FinitePoset, q: &[DownSet]) -> PhiMap {
    let n = p.len();
    let images: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..q.len()).filter(|&j| !q[j].contains(x)).collect())
        .collect();
    let images_are_initial_segments = images.iter().all(|img| {
        img.iter()
            .all(|&j| (0..q.len()).all(|i| !q[i].is_subset(&q[j]) || img.contains(&i)))
    });
    let sub = |a: &Vec<usize>, b: &Vec<usize>| a.iter().all(|i| b.contains(i));
    let mut order_preserving = true;
    let mut violation = None;
    for x in 0..n {
        for y in 0..n {
            if p.leq(x, y) {
                order_preserving &= sub(&images[x], &images[y]);
            } else if violation.is_none() && sub(&images[x], &images[y]) {
                violation = Some((x, y));
            }
        }
    }
    PhiMap {
        images,
        images_are_initial_segments,
        order_preserving,
        embedding: order_preserving && violation.is_none(),
        violation,
    }
}

/// `φ_Δ` on a finite join-semilattice. Ideals of a finite poset are
/// principal, so `Δ(J(P))` is represented by `{↓m : m ∈ Δ(P)}`.
#[derive(Debug, Clone, Serialize)]
pub struct PhiDelta {
    pub delta: Vec<usize>,
    pub delta_ideals: Vec<DownSet>,
    pub map: PhiMap,
    pub injective: bool,
    pub join_violation: Option<(usize, usize)>,
}

pub fn phi_delta(l: &FiniteJoinSemilattice) -> PhiDelta {
    let d = delta(l);
    let delta_ideals: Vec<DownSet> = d.iter().map(|&m| l.poset().principal(m)).collect();
    let map = phi_q(l.poset(), &delta_ideals);
    PhiDelta {
        injective: map.is_injective(),
        join_violation: map.join_violation(l),
        delta: d,
        delta_ideals,
        map,
    }
}

/// Height of every element (`0` on minimal elements) and of the whole
/// lattice (`h(top) + 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Heights {
    pub of: Vec<usize>,
    pub top: Option<usize>,
}

impl Heights {
    pub fn total(&self) -> Result<usize, IdealError> {
        self.top.map(|t| self.of[t] + 1).ok_or(IdealError::NoTop)
    }
}

pub fn heights(p: &FinitePoset) -> Heights {
    let mut of = vec![0; p.len()];
    for x in p.linear_extension() {
        of[x] = p
            .down_of(x)
            .ones()
            .filter(|&y| y != x)
            .map(|y| of[y] + 1)
            .max()
            .unwrap_or(0);
    }
    Heights { of, top: p.top() }
}

/// `F`, its union closure `F^{<ω}` (non-empty unions; with `Q` finite this
/// is also `F^∪`) and the join-semilattice `P := F^{<ω}`.
#[derive(Debug, Clone)]
pub struct FamilyClosure {
    pub ground: FinitePoset,
    pub family: Vec<DownSet>,
    pub unions: Vec<DownSet>,
    pub p: FiniteJoinSemilattice,
}

pub fn family_closures(q: &FinitePoset, family: &[DownSet]) -> Result<FamilyClosure, IdealError> {
    if family.is_empty() {
        return Err(IdealError::EmptyFamily);
    }
    for (i, f) in family.iter().enumerate() {
        if f.bits().len() != q.len() || !q.is_down_set(f.bits()) {
            return Err(IdealError::NotDownSet(i));
        }
    }
    let mut unions: Vec<DownSet> = family.to_vec();
    sort_sets(&mut unions);
    unions.dedup();
    let mut frontier = unions.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for f in family {
                let u = a.union(f);
                if !unions.contains(&u) && !next.contains(&u) {
                    next.push(u);
                }
            }
        }
        unions.extend(next.iter().cloned());
        frontier = next;
    }
    sort_sets(&mut unions);
    let p = FiniteJoinSemilattice::new(inclusion_order(&unions)).expect("unions are closed under union");
    Ok(FamilyClosure {
        ground: q.clone(),
        family: family.to_vec(),
        unions,
        p,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ClosureCheck {
    Holds,
    /// Two ideals of `P` with the same union, or with unions ordered
    /// differently from the ideals themselves.
    NotAnIsomorphism { ideals: (Vec<usize>, Vec<usize>) },
    /// A member of `F^∪` hit by no ideal.
    NotOnto { set: Vec<usize> },
    /// An ideal of `Δ(J(P))` that is not `P_{¬x}` for any `x ∈ Q`.
    NotOfFormNegX { ideal: Vec<usize> },
}

impl FamilyClosure {
    /// `P_{¬x}` as element indices of `P`.
    pub fn neg(&self, x: usize) -> Vec<usize> {
        (0..self.unions.len()).filter(|&i| !self.unions[i].contains(x)).collect()
    }

    pub fn bar(&self, ideal: &DownSet) -> DownSet {
        let mut acc = self.ground.empty_set();
        for i in ideal.members() {
            acc.union_with(self.unions[i].bits());
        }
        self.ground.down_set(acc).expect("unions of down-sets are down-sets")
    }

    /// The ideals of `P`, found by a directedness scan.
    pub fn ideals(&self) -> Result<Vec<DownSet>, IdealError> {
        ideal_lattice(self.p.poset())
    }

    /// `X ↦ ⋃X` is an order-isomorphism from `J(P)` onto `F^∪`.
    pub fn verify_bar_isomorphism(&self) -> Result<ClosureCheck, IdealError> {
        let ideals = self.ideals()?;
        let bars: Vec<DownSet> = ideals.iter().map(|i| self.bar(i)).collect();
        for a in 0..ideals.len() {
            for b in 0..ideals.len() {
                if ideals[a].is_subset(&ideals[b]) != bars[a].is_subset(&bars[b]) {
                    return Ok(ClosureCheck::NotAnIsomorphism {
                        ideals: (ideals[a].members(), ideals[b].members()),
                    });
                }
            }
        }
        for u in &self.unions {
            if !bars.contains(u) {
                return Ok(ClosureCheck::NotOnto { set: u.members() });
            }
        }
        Ok(ClosureCheck::Holds)
    }

    /// Every member of `Δ(J(P))` is `P_{¬x}` for some `x ∈ Q`.
    pub fn verify_delta_form(&self) -> Result<ClosureCheck, IdealError> {
        let ideals = self.ideals()?;
        let j = FiniteJoinSemilattice::new(inclusion_order(&ideals)).expect("ideals of a finite join-semilattice");
        for m in delta(&j) {
            let members = ideals[m].members();
            if !(0..self.ground.len()).any(|x| self.neg(x) == members) {
                return Ok(ClosureCheck::NotOfFormNegX { ideal: members });
            }
        }
        Ok(ClosureCheck::Holds)
    }

    /// Some proper `P_{¬x}` that is an ideal of `P` but not in `Δ(J(P))`,
    /// showing the converse of the `Δ` characterization fails. (`P` itself
    /// is never in `Δ`, so it is skipped as uninformative.)
    pub fn converse_counterexample(&self) -> Result<Option<usize>, IdealError> {
        let ideals = self.ideals()?;
        let j = FiniteJoinSemilattice::new(inclusion_order(&ideals)).expect("ideals of a finite join-semilattice");
        let d: Vec<Vec<usize>> = delta(&j).into_iter().map(|m| ideals[m].members()).collect();
        Ok((0..self.ground.len()).find(|&x| {
            let neg = self.neg(x);
            let set = bits_from(self.unions.len(), neg.iter().copied());
            !neg.is_empty() && neg.len() < self.unions.len() && self.p.poset().is_down_set(&set) && self.p.poset().is_directed(&set) && !d.contains(&neg)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::iso;

    fn boolean(k: usize) -> FinitePoset {
        FinitePoset::from_fn(1 << k, |i, j| i & j == i).unwrap()
    }

    fn js(p: FinitePoset) -> FiniteJoinSemilattice {
        FiniteJoinSemilattice::new(p).unwrap()
    }

    fn ds(p: &FinitePoset, xs: &[usize]) -> DownSet {
        p.down_set(bits_from(p.len(), xs.iter().copied())).unwrap()
    }

    #[test]
    fn down_set_lattices() {
        let l = initial_segment_lattice(&FinitePoset::antichain(2)).unwrap();
        assert!(iso(l.lattice.poset(), &boolean(2)).is_some());
        let l = initial_segment_lattice(&FinitePoset::chain(3)).unwrap();
        assert!(iso(l.lattice.poset(), &FinitePoset::chain(4)).is_some());
        let l = initial_segment_lattice(&FinitePoset::antichain(3)).unwrap();
        assert_eq!(l.sets.len(), 8);
        assert!(iso(l.lattice.poset(), &boolean(3)).is_some());
        assert!(l.sets[0].is_empty());
        assert_eq!(
            initial_segment_lattice_capped(&FinitePoset::antichain(4), 15).unwrap_err(),
            IdealError::CapExceeded { cap: 15 }
        );
    }

    #[test]
    fn down_set_count_matches_brute_force() {
        let p = FinitePoset::from_generating_pairs(5, &[(0, 2), (1, 2), (2, 4), (3, 4)]).unwrap();
        let brute = (0u32..32)
            .filter(|m| p.is_down_set(&bits_from(5, (0..5).filter(|i| m >> i & 1 == 1))))
            .count();
        assert_eq!(down_sets(&p, DOWNSET_CAP).unwrap().len(), brute);
    }

    #[test]
    fn ideals_are_principal() {
        let b2 = boolean(2);
        let ideals = ideal_lattice(&b2).unwrap();
        assert_eq!(ideals.len(), 4);
        assert!(iso(&inclusion_order(&ideals), &b2).is_some());
        let a2 = FinitePoset::antichain(2);
        let ideals = ideal_lattice(&a2).unwrap();
        assert_eq!(ideals, vec![ds(&a2, &[0]), ds(&a2, &[1])]);
    }

    #[test]
    fn delta_examples() {
        let b2 = js(boolean(2));
        assert_eq!(delta(&b2), vec![1, 2]);
        assert_eq!(x_plus(&b2, 0), 0);
        let c3 = js(FinitePoset::chain(3));
        assert_eq!(delta(&c3), vec![0, 1]);
        assert_eq!(x_plus(&c3, 2), 2);
        assert_eq!(delta(&js(boolean(3))), vec![3, 5, 6]);
    }

    #[test]
    fn covers() {
        let b2 = boolean(2);
        assert_eq!(cover_by_ideals(&b2, 1).unwrap(), vec![ds(&b2, &[0, 2])]);
        assert_eq!(cover_by_ideals(&b2, 0), Err(IdealError::EmptyComplement(0)));
        let c3 = FinitePoset::chain(3);
        assert_eq!(cover_by_ideals(&c3, 1).unwrap(), vec![ds(&c3, &[0])]);
        let b3 = boolean(3);
        let cover = cover_by_ideals(&b3, 0b011).unwrap();
        assert_eq!(cover.len(), 2);
        let mut union = b3.empty_set();
        for c in &cover {
            union.union_with(c.bits());
        }
        let expected: Vec<usize> = (0..8).filter(|&s| s & 0b011 != 0b011).collect();
        assert_eq!(union.ones().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn phi_q_examples() {
        let c3 = FinitePoset::chain(3);
        let all = ideal_lattice(&c3).unwrap();
        let m = phi_q(&c3, &all);
        assert!(m.embedding && m.images_are_initial_segments);
        let b2 = boolean(2);
        let m = phi_q(&b2, &[ds(&b2, &[0])]);
        assert!(m.order_preserving && !m.embedding);
        let (x, y) = m.violation.unwrap();
        assert!(!b2.leq(x, y));
    }

    #[test]
    fn phi_delta_examples() {
        let c3 = js(FinitePoset::chain(3));
        let pd = phi_delta(&c3);
        assert_eq!(pd.map.images, vec![vec![], vec![0], vec![0, 1]]);
        assert!(pd.injective && pd.join_violation.is_none());
        let b2 = js(boolean(2));
        let pd = phi_delta(&b2);
        // Δ = {↓{0}, ↓{1}} = {c0, c1}: {0} ↦ {c1}, {1} ↦ {c0}.
        assert_eq!(pd.map.images, vec![vec![], vec![1], vec![0], vec![0, 1]]);
        assert!(pd.injective && pd.join_violation.is_none());
    }

    #[test]
    fn heights_examples() {
        let h = heights(&FinitePoset::chain(5));
        assert_eq!(h.of[4], 4);
        assert_eq!(h.total(), Ok(5));
        assert_eq!(heights(&boolean(3)).of[7], 3);
        let ia2 = initial_segment_lattice(&FinitePoset::antichain(2)).unwrap();
        assert_eq!(heights(ia2.lattice.poset()).total(), Ok(3));
        assert_eq!(heights(&FinitePoset::antichain(2)).total(), Err(IdealError::NoTop));
    }

    #[test]
    fn closures_of_small_families() {
        let a2 = FinitePoset::antichain(2);
        let fc = family_closures(&a2, &[ds(&a2, &[0]), ds(&a2, &[1])]).unwrap();
        assert_eq!(fc.unions.len(), 3);
        assert_eq!(fc.verify_bar_isomorphism().unwrap(), ClosureCheck::Holds);
        assert_eq!(fc.verify_delta_form().unwrap(), ClosureCheck::Holds);
        assert_eq!(fc.neg(0), vec![1]);

        let c3 = FinitePoset::chain(3);
        let fam: Vec<DownSet> = (0..3).map(|x| c3.principal(x)).collect();
        let fc = family_closures(&c3, &fam).unwrap();
        assert!(iso(fc.p.poset(), &c3).is_some());
        assert_eq!(fc.verify_bar_isomorphism().unwrap(), ClosureCheck::Holds);

        assert_eq!(family_closures(&c3, &[]).unwrap_err(), IdealError::EmptyFamily);
        let bad = DownSet::from_bits_unchecked(bits_from(3, [2]));
        assert_eq!(family_closures(&c3, &[bad]).unwrap_err(), IdealError::NotDownSet(0));
    }

    #[test]
    fn dot_labels_sets() {
        let l = initial_segment_lattice(&FinitePoset::antichain(2)).unwrap();
        let dot = l.to_dot("I");
        assert!(dot.contains("{0,1}"));
    }

    #[test]
    fn delta_form_converse_fails() {
        // F^{<ω} ≅ boolean(2); P_{¬1} = {∅} is an ideal but ∅⁺ = ∅.
        let q = FinitePoset::antichain(3);
        let f = [ds(&q, &[0, 1]), ds(&q, &[1, 2]), ds(&q, &[])];
        let c = family_closures(&q, &f).unwrap();
        assert_eq!(c.verify_delta_form().unwrap(), ClosureCheck::Holds);
        assert_eq!(c.converse_counterexample().unwrap(), Some(1));
    }

}
