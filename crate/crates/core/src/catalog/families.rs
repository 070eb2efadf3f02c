//! Finite members of the named families.

use crate::ideals::set_label;
use crate::poset::{bits_from, DownSet, FinitePoset};
use crate::semilattice::FiniteJoinSemilattice;

fn lattice(p: FinitePoset) -> FiniteJoinSemilattice {
    FiniteJoinSemilattice::new(p).expect("family is join-closed")
}

fn mask_label(mask: u64) -> String {
    let xs: Vec<usize> = (0..64).filter(|i| mask >> i & 1 == 1).collect();
    set_label(&xs)
}

/// Subsets of `{0..n-1}` under inclusion; element `m` is the bitmask `m`.
pub fn boolean(n: usize) -> FiniteJoinSemilattice {
    lattice(FinitePoset::from_fn(1 << n, |i, j| i & j == i).expect("inclusion order"))
}

pub fn boolean_labels(n: usize) -> Vec<String> {
    (0..1u64 << n).map(mask_label).collect()
}

pub fn chain(n: usize) -> FinitePoset {
    FinitePoset::chain(n)
}

pub fn antichain(n: usize) -> FinitePoset {
    FinitePoset::antichain(n)
}

/// Position of the pair `(i, j)`, `i < j`, in the level-major pair order.
pub fn pair_code(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

pub fn pair_of_code(c: usize) -> (usize, usize) {
    let mut j = 1;
    while pair_code(0, j + 1) <= c {
        j += 1;
    }
    (c - pair_code(0, j), j)
}

/// `(i, j) ≤ (i', j')` iff `i' ≤ i` and `j ≤ j'`.
pub fn pair_leq(a: (usize, usize), b: (usize, usize)) -> bool {
    b.0 <= a.0 && a.1 <= b.1
}

pub fn pair_join(a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
    (a.0.min(b.0), a.1.max(b.1))
}

/// Pairs `(i, j)` with `0 ≤ i < j < n`, optionally with a new least element
/// (label 0, pairs shifted by one).
pub fn omega_pairs(n: usize, bottom: bool) -> FiniteJoinSemilattice {
    let pairs = n * n.saturating_sub(1) / 2;
    let off = bottom as usize;
    let p = FinitePoset::from_fn(pairs + off, |x, y| {
        if bottom && x == 0 {
            return true;
        }
        if bottom && y == 0 {
            return false;
        }
        pair_leq(pair_of_code(x - off), pair_of_code(y - off))
    })
    .expect("pair order");
    lattice(p)
}

pub fn omega_pairs_labels(n: usize, bottom: bool) -> Vec<String> {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut out: Vec<String> = if bottom { vec!["⊥".into()] } else { vec![] };
    out.extend((0..pairs).map(|c| {
        let (i, j) = pair_of_code(c);
        format!("({i},{j})")
    }));
    out
}

/// `1 + (1 ⊕ chain(n)) + 1`: label 0 is the bottom, 1 the lone side
/// element, `2..n+1` the chain and `n + 2` the top.
pub fn l_alpha(n: usize) -> FiniteJoinSemilattice {
    let one = FinitePoset::chain(1);
    let middle = one.direct_sum(&FinitePoset::chain(n));
    lattice(one.ordinal_sum(&middle).ordinal_sum(&one))
}

/// The intersection of the natural order on `{0..n-1}` with the linear
/// order listing `perm[0] < perm[1] < …`.
pub fn sierp(perm: &[usize]) -> Option<FinitePoset> {
    let n = perm.len();
    let mut pos = vec![usize::MAX; n];
    for (k, &x) in perm.iter().enumerate() {
        if x >= n || pos[x] != usize::MAX {
            return None;
        }
        pos[x] = k;
    }
    FinitePoset::from_fn(n, |x, y| x <= y && pos[x] <= pos[y]).ok()
}

/// A finite piece of `Ω(α)` for finite `α`: the sierpinskisation of `ωα`
/// (restricted to `n` points per copy of `ω`) with `ω` through
/// `ψ(m, c) = m·α + c`. Label `ψ(m, c)` is the element `(m, c)`.
pub fn omega_alpha(alpha: usize, n: usize) -> FinitePoset {
    let size = alpha * n;
    // L lists ωα in order: copy c, then position m.
    let perm: Vec<usize> = (0..alpha)
        .flat_map(|c| (0..n).map(move |m| m * alpha + c))
        .collect();
    sierp(&perm).unwrap_or_else(|| FinitePoset::antichain(size))
}

/// `{0..n} × {0, 1}` with `(m, i) < (m', j)` iff `m > m'` and `i < j`;
/// `(m, i)` has label `2m + i`.
pub fn example48_q(n: usize) -> FinitePoset {
    FinitePoset::from_fn(2 * (n + 1), |x, y| {
        x == y || {
            let (m, i) = (x / 2, x % 2);
            let (m2, j) = (y / 2, y % 2);
            m > m2 && i < j
        }
    })
    .expect("bipartite order")
}

/// An element `F × {0} ∪ G × {1}` with `F = [f, ∞)`; `g` is the bitmask of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ex48 {
    pub f: usize,
    pub g: u64,
}

impl Ex48 {
    pub fn valid(&self) -> bool {
        if self.g == 0 {
            return false;
        }
        let min_g = self.g.trailing_zeros() as usize;
        min_g + 1 >= self.f && min_g <= self.f
    }

    pub fn level(&self) -> usize {
        self.f.max(63 - self.g.leading_zeros() as usize)
    }

    pub fn leq(&self, other: &Ex48) -> bool {
        other.f <= self.f && self.g & !other.g == 0
    }

    pub fn join(&self, other: &Ex48) -> Ex48 {
        Ex48 {
            f: self.f.min(other.f),
            g: self.g | other.g,
        }
    }

    pub fn code(&self) -> u64 {
        (self.g << 6) | self.f as u64
    }

    pub fn from_code(c: u64) -> Ex48 {
        Ex48 {
            f: (c & 63) as usize,
            g: c >> 6,
        }
    }

    /// As a down-set of `example48_q(n)`, `F` clipped to `{f..n}`.
    pub fn down_set(&self, n: usize) -> DownSet {
        let q = example48_q(n);
        let xs = (self.f..=n)
            .map(|m| 2 * m)
            .chain((0..=n).filter(|&m| self.g >> m & 1 == 1).map(|m| 2 * m + 1));
        q.down_set(bits_from(q.len(), xs)).expect("valid elements are down-sets")
    }

    pub fn label(&self) -> String {
        format!("F={}..,G={}", self.f, mask_label(self.g))
    }
}

/// Elements of level exactly `d`, ordered by code.
pub fn example48_level(d: usize) -> Vec<Ex48> {
    let mut out = Vec::new();
    for f in 0..=d {
        for g in 1u64..(1 << (d + 1)) {
            let e = Ex48 { f, g };
            if e.valid() && e.level() == d {
                out.push(e);
            }
        }
    }
    out.sort_by_key(|e| e.code());
    out
}

/// All elements of level at most `n`, in (level, code) order.
pub fn example48_elements(n: usize) -> Vec<Ex48> {
    (0..=n).flat_map(example48_level).collect()
}

/// Example 4.8's semilattice, truncated: `F` a final segment of `{0..n}`,
/// `G ⊆ {0..n}` non-empty, `min F - 1 ≤ min G ≤ min F`, ordered by
/// inclusion.
pub fn example48_p(n: usize) -> (FiniteJoinSemilattice, Vec<Ex48>) {
    let elems = example48_elements(n);
    let p = FinitePoset::from_fn(elems.len(), |x, y| elems[x].leq(&elems[y])).expect("inclusion order");
    (lattice(p), elems)
}

/// `ω ⊕ ω*` truncated: labels `0..a` are `0 < 1 < …` and label `a + k`
/// is `-(k + 1)`, so `a > a + 1 > …`.
pub fn omega_plus_omegastar(a: usize, b: usize) -> FinitePoset {
    FinitePoset::chain(a).direct_sum(&FinitePoset::chain(b).dual())
}

/// The image of `(i, j)` of the pair semilattice in `ω ⊕ ω*`:
/// `{0..j-1} ∪ ↓(-(i + 1))`, inside `omega_plus_omegastar(a, b)`.
pub fn remark414_image(i: usize, j: usize, a: usize, b: usize) -> DownSet {
    let q = omega_plus_omegastar(a, b);
    let xs = (0..j.min(a)).chain((i..b).map(|k| a + k));
    q.down_set(bits_from(a + b, xs)).expect("union of down-sets")
}
