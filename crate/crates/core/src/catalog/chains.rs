//! Descending chains of ideals `I_0 ⊋ I_1 ⊋ …` of oracle posets, each with
//! exact, family-specific containment tests.

use super::families::Ex48;
use super::oracle::{Example48, FinSets, OmegaPairs, OmegaStar, OraclePoset};

pub trait IdealChain: Send + Sync {
    fn oracle(&self) -> &dyn OraclePoset;
    fn name(&self) -> String;

    /// `x ∈ I_n`. The union of the chain is `I_0`.
    fn contains(&self, n: usize, x: u64) -> bool;

    /// Some element of `I_n ∖ I_{n+1}`.
    fn separating_element(&self, n: usize) -> u64;

    /// An element of `I_n` of level above `d`, or `None` if `I_n` has no
    /// such element.
    fn unbounded_witness(&self, n: usize, d: usize) -> Option<u64>;

    /// `z ∈ {x} ∨ I_m`, the least ideal containing `x` and `I_m`.
    fn join_ideal_contains(&self, x: u64, m: usize, z: u64) -> bool;

    /// `I_n ⊆ {x} ∨ I_m`.
    fn contained_in_join(&self, n: usize, x: u64, m: usize) -> bool;

    /// An index `s` such that `contained_in_join(n, x, m)` is the same for
    /// every `m ≥ s`.
    fn stable_index(&self, n: usize, x: u64) -> usize;

    /// `I_m ⊆ ↓x`.
    fn below(&self, m: usize, x: u64) -> bool;
}

/// `I_n` = finite subsets of `{m : m ≥ n}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinSetsChain;

fn max_bit(x: u64) -> Option<usize> {
    (x != 0).then(|| 63 - x.leading_zeros() as usize)
}

fn range_mask(lo: usize, hi: usize) -> u64 {
    if hi <= lo {
        0
    } else {
        (u64::MAX >> (64 - (hi - lo))) << lo
    }
}

impl IdealChain for FinSetsChain {
    fn oracle(&self) -> &dyn OraclePoset {
        &FinSets
    }

    fn name(&self) -> String {
        "fin-sets".into()
    }

    fn contains(&self, n: usize, x: u64) -> bool {
        x & range_mask(0, n) == 0
    }

    fn separating_element(&self, n: usize) -> u64 {
        1 << n
    }

    fn unbounded_witness(&self, n: usize, d: usize) -> Option<u64> {
        Some(1 << n.max(d + 1))
    }

    fn join_ideal_contains(&self, x: u64, m: usize, z: u64) -> bool {
        z & range_mask(0, m) & !x == 0
    }

    fn contained_in_join(&self, n: usize, x: u64, m: usize) -> bool {
        let need = range_mask(n, m);
        need & !x == 0
    }

    fn stable_index(&self, n: usize, x: u64) -> usize {
        (n + 1).max(max_bit(x).map_or(0, |b| b + 2))
    }

    fn below(&self, _m: usize, _x: u64) -> bool {
        false
    }
}

/// `I_n = {(i, j) : n ≤ i}` (plus the least element when present).
#[derive(Debug, Clone, Copy, Default)]
pub struct OmegaPairsChain {
    pub pairs: OmegaPairs,
}

impl OmegaPairsChain {
    /// `{x} ∨ I_m = I_{min(i, m)}` for `x = (i, j)`, and `I_m` for `x = ⊥`.
    fn join_index(&self, x: u64, m: usize) -> usize {
        self.pairs.decode(x).map_or(m, |(i, _)| i.min(m))
    }
}

impl IdealChain for OmegaPairsChain {
    fn oracle(&self) -> &dyn OraclePoset {
        &self.pairs
    }

    fn name(&self) -> String {
        self.pairs.name()
    }

    fn contains(&self, n: usize, x: u64) -> bool {
        self.pairs.decode(x).is_none_or(|(i, _)| i >= n)
    }

    fn separating_element(&self, n: usize) -> u64 {
        self.pairs.code(n, n + 1)
    }

    fn unbounded_witness(&self, n: usize, d: usize) -> Option<u64> {
        Some(self.pairs.code(n, (n + 1).max(d + 1)))
    }

    fn join_ideal_contains(&self, x: u64, m: usize, z: u64) -> bool {
        self.contains(self.join_index(x, m), z)
    }

    fn contained_in_join(&self, n: usize, x: u64, m: usize) -> bool {
        n >= self.join_index(x, m)
    }

    fn stable_index(&self, _n: usize, x: u64) -> usize {
        self.pairs.decode(x).map_or(0, |(i, _)| i)
    }

    fn below(&self, _m: usize, _x: u64) -> bool {
        false
    }
}

/// `I_n = ↓(-(n + 1))`, the principal ideals of `ω*`.
#[derive(Debug, Clone, Copy, Default)]
pub struct OmegaStarChain;

impl IdealChain for OmegaStarChain {
    fn oracle(&self) -> &dyn OraclePoset {
        &OmegaStar
    }

    fn name(&self) -> String {
        "omega-star".into()
    }

    fn contains(&self, n: usize, x: u64) -> bool {
        x as usize >= n
    }

    fn separating_element(&self, n: usize) -> u64 {
        n as u64
    }

    fn unbounded_witness(&self, n: usize, d: usize) -> Option<u64> {
        Some(n.max(d) as u64)
    }

    /// `{x} ∨ I_m = ↓max(x, -(m + 1))`.
    fn join_ideal_contains(&self, x: u64, m: usize, z: u64) -> bool {
        z >= x.min(m as u64)
    }

    fn contained_in_join(&self, n: usize, x: u64, m: usize) -> bool {
        n as u64 >= x.min(m as u64)
    }

    fn stable_index(&self, _n: usize, x: u64) -> usize {
        x as usize
    }

    fn below(&self, m: usize, x: u64) -> bool {
        m as u64 >= x
    }
}

/// `I_n = {X : (n, 0) ∉ X}`, i.e. `min F > n`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Example48Chain;

impl IdealChain for Example48Chain {
    fn oracle(&self) -> &dyn OraclePoset {
        &Example48
    }

    fn name(&self) -> String {
        "example48".into()
    }

    fn contains(&self, n: usize, x: u64) -> bool {
        Ex48::from_code(x).f > n
    }

    fn separating_element(&self, n: usize) -> u64 {
        // Y_n = {(n, 1)} ∪ {(m, 0) : m ≥ n} lies in I_{n-1} but not I_n, so
        // I_n ∖ I_{n+1} holds Y_{n+1}.
        Ex48 { f: n + 1, g: 1 << (n + 1) }.code()
    }

    fn unbounded_witness(&self, n: usize, d: usize) -> Option<u64> {
        let f = (n + 1).max(d + 1);
        (f < 58).then(|| Ex48 { f, g: 1 << f }.code())
    }

    fn join_ideal_contains(&self, x: u64, m: usize, z: u64) -> bool {
        let (x, z) = (Ex48::from_code(x), Ex48::from_code(z));
        z.f >= x.f.min(m + 1) && z.g & range_mask(0, m) & !x.g == 0
    }

    fn contained_in_join(&self, n: usize, x: u64, m: usize) -> bool {
        let x = Ex48::from_code(x);
        m <= n || (range_mask(n, m) & !x.g == 0 && x.f <= n + 1)
    }

    fn stable_index(&self, n: usize, x: u64) -> usize {
        let g = Ex48::from_code(x).g;
        (n + 1).max(max_bit(g).map_or(0, |b| b + 2))
    }

    fn below(&self, _m: usize, _x: u64) -> bool {
        false
    }
}
