//! Countable posets given by an element codec, order and join oracles and a
//! level function with finitely many elements per level.

use std::collections::HashMap;

use super::families::{example48_level, pair_code, pair_join, pair_leq, pair_of_code, Ex48};
use super::CatalogError;
use crate::ideals::set_label;
use crate::poset::FinitePoset;
use crate::semilattice::FiniteJoinSemilattice;

pub trait OraclePoset: Send + Sync {
    fn name(&self) -> String;
    fn level(&self, x: u64) -> usize;
    /// Codes of the elements of level exactly `d`, increasing.
    fn elements_at_level(&self, d: usize) -> Vec<u64>;
    fn leq(&self, x: u64, y: u64) -> bool;
    /// `None` when the family has no join oracle.
    fn join(&self, x: u64, y: u64) -> Option<u64>;
    fn has_join(&self) -> bool {
        true
    }
    fn label(&self, x: u64) -> String;

    /// `Tr_d` in codec order: by level, then code.
    fn elements_up_to(&self, d: usize) -> Vec<u64> {
        (0..=d).flat_map(|l| self.elements_at_level(l)).collect()
    }

    fn lt(&self, x: u64, y: u64) -> bool {
        x != y && self.leq(x, y)
    }
}

/// Finite subsets of `ω`; code = bitmask, level = largest member (`∅` has
/// level 0).
#[derive(Debug, Clone, Copy, Default)]
pub struct FinSets;

impl OraclePoset for FinSets {
    fn name(&self) -> String {
        "fin-sets".into()
    }

    fn level(&self, x: u64) -> usize {
        if x == 0 {
            0
        } else {
            63 - x.leading_zeros() as usize
        }
    }

    fn elements_at_level(&self, d: usize) -> Vec<u64> {
        if d == 0 {
            vec![0, 1]
        } else {
            ((1u64 << d)..(1u64 << (d + 1))).collect()
        }
    }

    fn leq(&self, x: u64, y: u64) -> bool {
        x & !y == 0
    }

    fn join(&self, x: u64, y: u64) -> Option<u64> {
        Some(x | y)
    }

    fn label(&self, x: u64) -> String {
        let xs: Vec<usize> = (0..64).filter(|i| x >> i & 1 == 1).collect();
        set_label(&xs)
    }
}

/// `ω* = {-1 > -2 > …}`; code `c` is `-(c + 1)` at level `c + 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct OmegaStar;

impl OraclePoset for OmegaStar {
    fn name(&self) -> String {
        "omega-star".into()
    }

    fn level(&self, x: u64) -> usize {
        x as usize + 1
    }

    fn elements_at_level(&self, d: usize) -> Vec<u64> {
        if d == 0 {
            vec![]
        } else {
            vec![d as u64 - 1]
        }
    }

    fn leq(&self, x: u64, y: u64) -> bool {
        x >= y
    }

    fn join(&self, x: u64, y: u64) -> Option<u64> {
        Some(x.min(y))
    }

    fn label(&self, x: u64) -> String {
        format!("-{}", x + 1)
    }
}

/// The chain `ω`; code `c` is `c` at level `c`.
#[derive(Debug, Clone, Copy, Default)]
pub struct OmegaChain;

impl OraclePoset for OmegaChain {
    fn name(&self) -> String {
        "omega".into()
    }

    fn level(&self, x: u64) -> usize {
        x as usize
    }

    fn elements_at_level(&self, d: usize) -> Vec<u64> {
        vec![d as u64]
    }

    fn leq(&self, x: u64, y: u64) -> bool {
        x <= y
    }

    fn join(&self, x: u64, y: u64) -> Option<u64> {
        Some(x.max(y))
    }

    fn label(&self, x: u64) -> String {
        x.to_string()
    }
}

/// Pairs `(i, j)`, `i < j`, at level `j`, optionally with a least element
/// (code 0, level 0; pairs shifted by one).
#[derive(Debug, Clone, Copy, Default)]
pub struct OmegaPairs {
    pub bottom: bool,
}

impl OmegaPairs {
    pub fn code(&self, i: usize, j: usize) -> u64 {
        (pair_code(i, j) + self.bottom as usize) as u64
    }

    /// `None` for the least element.
    pub fn decode(&self, x: u64) -> Option<(usize, usize)> {
        if self.bottom {
            (x > 0).then(|| pair_of_code(x as usize - 1))
        } else {
            Some(pair_of_code(x as usize))
        }
    }
}

impl OraclePoset for OmegaPairs {
    fn name(&self) -> String {
        if self.bottom {
            "omega-pairs:bottom=true".into()
        } else {
            "omega-pairs".into()
        }
    }

    fn level(&self, x: u64) -> usize {
        self.decode(x).map_or(0, |(_, j)| j)
    }

    fn elements_at_level(&self, d: usize) -> Vec<u64> {
        if d == 0 {
            return if self.bottom { vec![0] } else { vec![] };
        }
        (0..d).map(|i| self.code(i, d)).collect()
    }

    fn leq(&self, x: u64, y: u64) -> bool {
        match (self.decode(x), self.decode(y)) {
            (None, _) => true,
            (_, None) => false,
            (Some(a), Some(b)) => pair_leq(a, b),
        }
    }

    fn join(&self, x: u64, y: u64) -> Option<u64> {
        Some(match (self.decode(x), self.decode(y)) {
            (None, _) => y,
            (_, None) => x,
            (Some(a), Some(b)) => {
                let (i, j) = pair_join(a, b);
                self.code(i, j)
            }
        })
    }

    fn label(&self, x: u64) -> String {
        match self.decode(x) {
            None => "⊥".into(),
            Some((i, j)) => format!("({i},{j})"),
        }
    }
}

/// Example 4.8's semilattice; level = `max(min F, max G)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Example48;

impl OraclePoset for Example48 {
    fn name(&self) -> String {
        "example48".into()
    }

    fn level(&self, x: u64) -> usize {
        Ex48::from_code(x).level()
    }

    fn elements_at_level(&self, d: usize) -> Vec<u64> {
        example48_level(d).into_iter().map(|e| e.code()).collect()
    }

    fn leq(&self, x: u64, y: u64) -> bool {
        Ex48::from_code(x).leq(&Ex48::from_code(y))
    }

    fn join(&self, x: u64, y: u64) -> Option<u64> {
        Some(Ex48::from_code(x).join(&Ex48::from_code(y)).code())
    }

    fn label(&self, x: u64) -> String {
        Ex48::from_code(x).label()
    }
}

/// The pair semilattice with a least element, presented by its images in
/// `I_{<ω}(ω ⊕ ω*)`: `(i, j) ↦ {0..j-1} ∪ ↓(-(i + 1))`, `⊥ ↦ ∅`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Remark414;

impl Remark414 {
    const PAIRS: OmegaPairs = OmegaPairs { bottom: true };
}

impl OraclePoset for Remark414 {
    fn name(&self) -> String {
        "remark414".into()
    }

    fn level(&self, x: u64) -> usize {
        Self::PAIRS.level(x)
    }

    fn elements_at_level(&self, d: usize) -> Vec<u64> {
        Self::PAIRS.elements_at_level(d)
    }

    fn leq(&self, x: u64, y: u64) -> bool {
        Self::PAIRS.leq(x, y)
    }

    fn join(&self, x: u64, y: u64) -> Option<u64> {
        Self::PAIRS.join(x, y)
    }

    fn label(&self, x: u64) -> String {
        match Self::PAIRS.decode(x) {
            None => "∅".into(),
            Some((i, j)) => format!("{{0..{}}}∪↓-{}", j - 1, i + 1),
        }
    }
}

/// `Tr_d` materialized; element `k` of the finite structures is `codes[k]`.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub depth: usize,
    pub codes: Vec<u64>,
    pub poset: FinitePoset,
    pub semilattice: Option<FiniteJoinSemilattice>,
}

impl Truncation {
    pub fn index_of(&self, code: u64) -> Option<usize> {
        self.codes.iter().position(|&c| c == code)
    }

    pub fn labels(&self, o: &dyn OraclePoset) -> Vec<String> {
        self.codes.iter().map(|&c| o.label(c)).collect()
    }
}

pub fn truncate(o: &dyn OraclePoset, d: usize) -> Result<Truncation, CatalogError> {
    let codes = o.elements_up_to(d);
    let poset = FinitePoset::from_fn(codes.len(), |x, y| o.leq(codes[x], codes[y]))
        .map_err(|e| CatalogError::BadOracle(format!("{} at depth {d}: {e}", o.name())))?;
    if !o.has_join() {
        return Ok(Truncation {
            depth: d,
            codes,
            poset,
            semilattice: None,
        });
    }
    let index: HashMap<u64, usize> = codes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let n = codes.len();
    let mut table = vec![0usize; n * n];
    for x in 0..n {
        for y in x..n {
            let j = o.join(codes[x], codes[y]).expect("join oracle present");
            let Some(&k) = index.get(&j) else {
                return Err(CatalogError::TruncationNotJoinClosed {
                    a: o.label(codes[x]),
                    b: o.label(codes[y]),
                });
            };
            table[x * n + y] = k;
            table[y * n + x] = k;
        }
    }
    let l = FiniteJoinSemilattice::new(poset.clone())
        .map_err(|e| CatalogError::BadOracle(format!("{} at depth {d}: {e}", o.name())))?;
    for x in 0..n {
        for y in 0..n {
            if l.join(x, y) != table[x * n + y] {
                return Err(CatalogError::BadOracle(format!(
                    "{}: join oracle disagrees with the order on {} and {}",
                    o.name(),
                    o.label(codes[x]),
                    o.label(codes[y])
                )));
            }
        }
    }
    Ok(Truncation {
        depth: d,
        codes,
        poset,
        semilattice: Some(l),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::families;
    use crate::poset::iso;

    /// A family whose join escapes the truncation.
    struct Leaky;

    impl OraclePoset for Leaky {
        fn name(&self) -> String {
            "leaky".into()
        }
        fn level(&self, x: u64) -> usize {
            x as usize
        }
        fn elements_at_level(&self, d: usize) -> Vec<u64> {
            vec![d as u64]
        }
        fn leq(&self, x: u64, y: u64) -> bool {
            x == y
        }
        fn join(&self, x: u64, y: u64) -> Option<u64> {
            Some(x + y + 100)
        }
        fn label(&self, x: u64) -> String {
            x.to_string()
        }
    }

    #[test]
    fn levels_partition_codes() {
        let fams: Vec<Box<dyn OraclePoset>> = vec![
            Box::new(FinSets),
            Box::new(OmegaStar),
            Box::new(OmegaChain),
            Box::new(OmegaPairs { bottom: false }),
            Box::new(OmegaPairs { bottom: true }),
            Box::new(Example48),
        ];
        for o in &fams {
            for d in 0..6 {
                for c in o.elements_at_level(d) {
                    assert_eq!(o.level(c), d, "{}", o.name());
                }
            }
        }
    }

    #[test]
    fn truncations_match_finite_families() {
        let t = truncate(&FinSets, 3).unwrap();
        assert_eq!(t.poset, *families::boolean(4).poset());
        let t = truncate(&OmegaPairs { bottom: false }, 4).unwrap();
        assert_eq!(t.codes.len(), 10);
        assert!(iso(&t.poset, families::omega_pairs(5, false).poset()).is_some());
        let t = truncate(&OmegaStar, 5).unwrap();
        assert!(iso(&t.poset, &FinitePoset::chain(5)).is_some());
        let t = truncate(&Example48, 4).unwrap();
        assert!(iso(&t.poset, families::example48_p(4).0.poset()).is_some());
    }

    #[test]
    fn leaky_family_is_rejected() {
        assert!(matches!(
            truncate(&Leaky, 2),
            Err(CatalogError::TruncationNotJoinClosed { .. })
        ));
    }
}
