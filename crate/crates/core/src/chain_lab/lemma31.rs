//! Independent sets and separating chains.

use serde::Serialize;

use super::{
    ideal_join, independent_by_definition, join_all, least_element, sorted_chain, ChainError,
};
use crate::catalog::IdealChain;
use crate::poset::{bits_from, DownSet};
use crate::semilattice::FiniteJoinSemilattice;

/// `I_n` = the ideal generated by `X ∖ {x_0, …, x_n}`, `n < |X|`. The last
/// member is generated by nothing: `{⊥}` when there is a least element, the
/// empty down-set otherwise.
pub fn lemma_3_1_forward(l: &FiniteJoinSemilattice, xs: &[usize]) -> Result<Vec<DownSet>, ChainError> {
    if xs.len() < 2 {
        return Err(ChainError::TooSmall(2));
    }
    if !l.is_independent(xs) {
        return Err(ChainError::NotIndependent);
    }
    let p = l.poset();
    Ok((0..xs.len())
        .map(|n| match l.join_set(xs[n + 1..].iter().copied()) {
            Ok(top) => p.principal(top),
            Err(_) => p.down_closure(&bits_from(l.len(), l.bottom())),
        })
        .collect())
}

/// The inductive choice on a finite chain: `I_0` is the second-largest
/// member, `x_0` the least element of the union outside it, and each step
/// takes the first smaller `J` with `I ⊈ {x_0 ∨ … ∨ x_{n-1}} ∨ J` and the
/// least `z ∈ I ∖ ({x_0 ∨ … ∨ x_{n-1}} ∨ J)`. Stops when no `J` separates.
pub fn lemma_3_1_extract_finite(l: &FiniteJoinSemilattice, chain: &[DownSet]) -> Result<Vec<usize>, ChainError> {
    let c = sorted_chain(chain)?;
    if c.len() < 2 {
        return Err(ChainError::TooSmall(2));
    }
    let Some(x0) = c[0].difference(&c[1]).ones().next() else {
        return Err(ChainError::SeparationFailedAtStep { step: 0 });
    };
    let mut xs = vec![x0];
    let mut cur = 1;
    let mut x = x0;
    loop {
        let i = &c[cur];
        let found = (cur + 1..c.len()).find_map(|jj| {
            let xj = ideal_join(l, x, &c[jj]);
            i.difference(&xj).ones().next().map(|z| (jj, z))
        });
        let Some((jj, z)) = found else { break };
        xs.push(z);
        x = l.join(x, z);
        cur = jj;
    }
    if !l.is_independent(&xs) {
        return Err(ChainError::VerificationFailed(format!("{xs:?} is not independent")));
    }
    Ok(xs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma31Witness {
    pub family: String,
    pub xs: Vec<u64>,
    pub labels: Vec<String>,
    /// Chain index of `I_n` for each `x_n`.
    pub ideals: Vec<usize>,
    pub verified_independent: bool,
}

/// Chain index `k_0 = 1`, `x_0` the least element of `I_0 ∖ I_1`; then
/// `k_n` the least index with `I_{k_{n-1}} ⊈ {x} ∨ I_{k_n}` for
/// `x = x_0 ∨ … ∨ x_{n-1}` and `x_n` the least element of the difference.
/// Elements are searched in codec order up to level `depth`.
pub fn lemma_3_1_extract(chain: &dyn IdealChain, k: usize, depth: usize) -> Result<Lemma31Witness, ChainError> {
    let o = chain.oracle();
    let mut xs = Vec::new();
    let mut ideals = Vec::new();
    if k > 0 {
        let x0 = least_element(o, depth, |x| chain.contains(0, x) && !chain.contains(1, x))
            .ok_or(ChainError::WitnessSearchExhausted { step: 0, depth })?;
        xs.push(x0);
        ideals.push(1);
    }
    for step in 1..k {
        let prev = *ideals.last().expect("started");
        let x = join_all(o, &xs).expect("non-empty");
        let stable = chain.stable_index(prev, x).max(prev + 1);
        let m = (prev + 1..=stable)
            .find(|&m| !chain.contained_in_join(prev, x, m))
            .ok_or(ChainError::SeparationFailedAtStep { step })?;
        let z = least_element(o, depth, |z| chain.contains(prev, z) && !chain.join_ideal_contains(x, m, z))
            .ok_or(ChainError::WitnessSearchExhausted { step, depth })?;
        xs.push(z);
        ideals.push(m);
    }
    let verified_independent = independent_by_definition(
        |a, b| o.leq(a, b),
        |a, b| o.join(a, b).expect("join oracle"),
        &xs,
    );
    if !verified_independent {
        return Err(ChainError::VerificationFailed("extracted set is not independent".into()));
    }
    Ok(Lemma31Witness {
        family: chain.name(),
        labels: xs.iter().map(|&x| o.label(x)).collect(),
        xs,
        ideals,
        verified_independent,
    })
}
