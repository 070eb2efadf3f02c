//! Descending sequences of finitely generated down-sets, and the
//! pigeonhole extraction from an antichain of down-sets.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::ChainError;
use crate::catalog::families::{omega_plus_omegastar, remark414_image};
use crate::poset::{DownSet, FinitePoset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Descent {
    /// `Q' = Q ∖ Ī_m`.
    pub q_prime: Vec<usize>,
    /// `y_n = x_n ∖ Ī_m`.
    pub ys: Vec<Vec<usize>>,
    /// `drops[n] ∈ y_n ∖ y_{n+1}`.
    pub drops: Vec<usize>,
}

fn members(b: &FixedBitSet) -> Vec<usize> {
    b.ones().collect()
}

fn violated(relation: &'static str, indices: Vec<isize>) -> ChainError {
    ChainError::PreconditionViolated { relation, indices }
}

/// `chain` is `Ī_{-1}, Ī_0, …, Ī_m` (each ideal of `I(Q)` given by its
/// union) and `xs` is `x_0, …, x_m`. Checks `x_n ⊆ Ī_{n-1}`, `x_n ⊄ Ī_n`,
/// `Ī_n ⊆ x_n ∪ Ī_j` for all `j` and strict descent, then returns the
/// `y_n = x_n ∖ Ī_m` with each `y_n ⊋ y_{n+1}` certified by an element of
/// `x_n ∖ Ī_n`.
pub fn prop_1_2_descent(q: &FinitePoset, chain: &[DownSet], xs: &[DownSet]) -> Result<Descent, ChainError> {
    if xs.is_empty() || chain.len() != xs.len() + 1 {
        return Err(ChainError::TooSmall(2));
    }
    let m = xs.len() - 1;
    // chain[n + 1] is Ī_n.
    let bar = |n: isize| &chain[(n + 1) as usize];
    for n in 0..=m as isize {
        if !bar(n).is_subset(bar(n - 1)) || bar(n) == bar(n - 1) {
            return Err(violated("Ī_n ⊊ Ī_{n-1}", vec![n - 1, n]));
        }
    }
    for (n, x) in xs.iter().enumerate() {
        let n = n as isize;
        if !x.is_subset(bar(n - 1)) {
            return Err(violated("x_n ∈ I_{n-1}", vec![n]));
        }
        if x.is_subset(bar(n)) {
            return Err(violated("x_n ∉ I_n", vec![n]));
        }
        for j in -1..=m as isize {
            if !bar(n).is_subset(&x.union(bar(j))) {
                return Err(violated("I_n ⊆ {x_n} ∨ I_j", vec![n, j]));
            }
        }
    }
    let bottom = bar(m as isize);
    let mut q_prime = q.full_set();
    q_prime.difference_with(bottom.bits());
    let ys: Vec<FixedBitSet> = xs.iter().map(|x| x.difference(bottom)).collect();
    let mut drops = Vec::new();
    for n in 0..m {
        // x_{n+1} ∪ Ī_m ⊆ Ī_n ⊂ x_n ∪ Ī_m.
        if !ys[n + 1].is_subset(&ys[n]) {
            return Err(ChainError::VerificationFailed(format!("y_{} ⊄ y_{n}", n + 1)));
        }
        let e = x_minus(&xs[n], bar(n as isize))
            .find(|&e| !ys[n + 1].contains(e))
            .ok_or_else(|| ChainError::VerificationFailed(format!("y_{n} = y_{}", n + 1)))?;
        drops.push(e);
    }
    Ok(Descent {
        q_prime: members(&q_prime),
        ys: ys.iter().map(members).collect(),
        drops,
    })
}

fn x_minus(x: &DownSet, y: &DownSet) -> impl Iterator<Item = usize> {
    members(&x.difference(y)).into_iter()
}

/// The descent input obtained from the pair semilattice inside
/// `I_{<ω}(ω ⊕ ω*)`, truncated to `ω`-part `{0..m}` and `ω*`-part
/// `{-1..-(m+2)}`: `x_n` is the image of `(n, n + 1)` and `Ī_n` the union
/// of the images of `(i, j)`, `n < i < j`.
pub fn remark414_descent_fixture(m: usize) -> (FinitePoset, Vec<DownSet>, Vec<DownSet>) {
    let (a, b) = (m + 1, m + 2);
    let q = omega_plus_omegastar(a, b);
    let bar = |n: isize| {
        let lo = (n + 1) as usize;
        let mut u = q.down_closure(&FixedBitSet::with_capacity(a + b));
        for i in lo..b {
            for j in i + 1..=a.max(i + 1) {
                u = u.union(&remark414_image(i, j, a, b));
            }
        }
        u
    };
    let chain = (-1..=m as isize).map(bar).collect();
    let xs = (0..=m).map(|n| remark414_image(n, n + 1, a, b)).collect();
    (q, chain, xs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ramsey {
    /// `f[i][j - i - 1] = f(i, j) ∈ Max(F_i) ∖ F_j`.
    pub f: Vec<Vec<usize>>,
    /// The indices `X` on which `f(i, ·)` is constant.
    pub stable: Vec<usize>,
    /// The constant value of `f(i, ·)` on later members of `X`, for each
    /// `i ∈ X` but the last.
    pub constants: Vec<usize>,
    /// `G_i = ⋃{F_j : i ≤ j ∈ X}` for `i ∈ X`.
    pub g_chain: Vec<Vec<usize>>,
    /// `(position in X, element of G_i ∖ G_next)`.
    pub drops: Vec<(usize, usize)>,
}

/// `f(i, j)` is the least element of `Max(F_i) ∖ F_j`. `X` grows from
/// `i = min S`, keeping the largest class of `{j ∈ S : j > i}` under
/// `f(i, ·)` (ties to the least value).
pub fn ramsey_extract(q: &FinitePoset, family: &[DownSet]) -> Result<Ramsey, ChainError> {
    let m = family.len();
    for i in 0..m {
        for j in 0..m {
            if i != j && family[i].is_subset(&family[j]) {
                return Err(ChainError::NotAnAntichain(i, j));
            }
        }
    }
    let f: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            let max = q.maximal_elements(family[i].bits());
            (i + 1..m)
                .map(|j| *max.iter().find(|&&e| !family[j].contains(e)).expect("antichain"))
                .collect()
        })
        .collect();
    let fv = |i: usize, j: usize| f[i][j - i - 1];
    let mut s: Vec<usize> = (0..m).collect();
    let mut stable = Vec::new();
    let mut constants = Vec::new();
    while let Some((&i, rest)) = s.split_first() {
        stable.push(i);
        if rest.is_empty() {
            break;
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &j in rest {
            classes.entry(fv(i, j)).or_default().push(j);
        }
        let (&value, _) = classes
            .iter()
            .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(a.0)))
            .expect("non-empty");
        constants.push(value);
        s = classes.remove(&value).expect("class");
    }
    let g: Vec<DownSet> = (0..stable.len())
        .map(|p| {
            stable[p..]
                .iter()
                .fold(q.down_closure(&q.empty_set()), |u, &j| u.union(&family[j]))
        })
        .collect();
    let mut drops = Vec::new();
    for p in 0..g.len().saturating_sub(1) {
        if !g[p + 1].is_subset(&g[p]) {
            return Err(ChainError::VerificationFailed(format!("G chain increases at {p}")));
        }
        let c = constants[p];
        if g[p].contains(c) && !g[p + 1].contains(c) {
            drops.push((p, c));
        }
    }
    Ok(Ramsey {
        f,
        stable,
        constants,
        g_chain: g.iter().map(|d| d.members()).collect(),
        drops,
    })
}

/// `F_i` = the image of `(i, i + 1)` in `I(ω ⊕ ω*)`, `i ≤ m`, with `ω`-part
/// `{0..m}` and `ω*`-part `{-1..-(m+2)}`.
pub fn remark414_antichain(m: usize) -> (FinitePoset, Vec<DownSet>) {
    let (a, b) = (m + 1, m + 2);
    let q = omega_plus_omegastar(a, b);
    let fam = (0..=m).map(|i| remark414_image(i, i + 1, a, b)).collect();
    (q, fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::bits_from;

    #[test]
    fn remark414_descent() {
        for m in 0..=5 {
            let (q, chain, xs) = remark414_descent_fixture(m);
            let d = prop_1_2_descent(&q, &chain, &xs).unwrap();
            let a = m + 1;
            // y_n = {-(n+1), …, -(m+1)}, i.e. labels a+n..=a+m.
            for (n, y) in d.ys.iter().enumerate() {
                assert_eq!(*y, (a + n..=a + m).collect::<Vec<_>>());
            }
            assert_eq!(d.drops, (0..m).map(|n| a + n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn descent_rejects_bad_inputs() {
        let (q, mut chain, xs) = remark414_descent_fixture(3);
        chain.swap(1, 2);
        assert!(matches!(
            prop_1_2_descent(&q, &chain, &xs),
            Err(ChainError::PreconditionViolated { .. })
        ));
        let (q, chain, mut xs) = remark414_descent_fixture(3);
        // x_1 = x_2 keeps x_1 ⊆ Ī_1.
        xs[1] = xs[2].clone();
        assert!(matches!(
            prop_1_2_descent(&q, &chain, &xs),
            Err(ChainError::PreconditionViolated { relation: "x_n ∉ I_n", .. })
        ));
    }

    #[test]
    fn remark414_ramsey() {
        let (q, fam) = remark414_antichain(12);
        let r = ramsey_extract(&q, &fam).unwrap();
        assert_eq!(r.stable, (0..=12).collect::<Vec<_>>());
        assert_eq!(r.drops.len(), 12);
        for w in r.g_chain.windows(2) {
            assert!(w[1].iter().all(|e| w[0].contains(e)));
        }
    }

    #[test]
    fn singleton_antichain() {
        let q = FinitePoset::antichain(3);
        let fam: Vec<DownSet> = (0..3).map(|i| q.principal(i)).collect();
        let r = ramsey_extract(&q, &fam).unwrap();
        assert_eq!(r.g_chain, vec![vec![0, 1, 2], vec![1, 2], vec![2]]);
        assert_eq!(r.drops, vec![(0, 0), (1, 1)]);
        let nested = vec![q.principal(0), q.down_closure(&bits_from(3, [0, 1]))];
        assert_eq!(ramsey_extract(&q, &nested), Err(ChainError::NotAnAntichain(0, 1)));
    }
}
