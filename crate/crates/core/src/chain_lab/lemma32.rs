//! `ω*` or `Ω(ω*)` from a chain of ideals whose infinite subchains do not
//! separate.

use serde::Serialize;

use super::{join_all, least_element, ChainError};
use crate::catalog::families::{omega_pairs, pair_join, pair_of_code};
use crate::catalog::{truncate, IdealChain, OraclePoset};
use crate::embed::{EmbeddingMap, Mode};

/// Truncations up to this many elements get a finite embedding check.
const TRUNCATION_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma32Checks {
    /// `x_n ≤ y_n ∈ I_{n-1}`.
    pub a: bool,
    /// `y_n ≰ y_0 ∨ y_{n-1}`.
    pub b: bool,
    /// `y_j ≤ y_i ∨ y_n` for `i ≤ j ≤ n`.
    pub c: bool,
    pub injective: bool,
    pub join_preserving: bool,
}

impl Lemma32Checks {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c && self.injective && self.join_preserving
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Lemma32Witness {
    /// Every examined member meets `E`: a strictly descending sequence.
    CaseI {
        xs: Vec<u64>,
        labels: Vec<String>,
        /// `I_{ideals[n]} ⊂ ↓x_n`.
        ideals: Vec<usize>,
    },
    /// `I_start` misses `E`: the `y`-sequence and `f(i, j) = y_i ∨ y_j` on
    /// `omega_pairs(k + 1)`.
    CaseII {
        start: usize,
        xs: Vec<u64>,
        ideals: Vec<usize>,
        zs: Vec<u64>,
        ts: Vec<Vec<u64>>,
        ys: Vec<u64>,
        y_labels: Vec<String>,
        /// `f` in pair-code order of `omega_pairs(k + 1)`.
        f: Vec<u64>,
        checks: Lemma32Checks,
        /// `f` as a join-embedding into `Tr_truncation_depth`, when that
        /// truncation is small enough to materialize.
        embedding: Option<EmbeddingMap>,
        truncation_depth: usize,
    },
}

/// `x ∈ E`: `I_m ⊂ ↓x` for some `m ≤ depth`.
fn in_e(chain: &dyn IdealChain, x: u64, depth: usize) -> Option<usize> {
    (0..=depth).find(|&m| chain.below(m, x) && !chain.contains(m, x))
}

/// Runs the case split on members `I_n`, `n < depth`, then the construction
/// of the case found. Choices are least in codec order.
pub fn lemma_3_2_extract(chain: &dyn IdealChain, k: usize, depth: usize) -> Result<Lemma32Witness, ChainError> {
    let missing = (0..depth.max(1)).find(|&n| {
        least_element(chain.oracle(), depth, |x| chain.contains(n, x) && in_e(chain, x, depth).is_some()).is_none()
    });
    match missing {
        None => case_one(chain, k, depth),
        Some(start) => case_two(chain, start, k, depth),
    }
}

fn case_one(chain: &dyn IdealChain, k: usize, depth: usize) -> Result<Lemma32Witness, ChainError> {
    let o = chain.oracle();
    let mut xs = Vec::new();
    let mut ideals = Vec::new();
    let mut within = 0;
    for step in 0..k {
        let x = least_element(o, depth, |x| chain.contains(within, x) && in_e(chain, x, depth).is_some())
            .ok_or(ChainError::WitnessSearchExhausted { step, depth })?;
        let m = in_e(chain, x, depth).expect("x in E");
        xs.push(x);
        ideals.push(m);
        within = m;
    }
    if let Some(w) = xs.windows(2).find(|w| !o.lt(w[1], w[0])) {
        return Err(ChainError::VerificationFailed(format!(
            "{} is not below {}",
            o.label(w[1]),
            o.label(w[0])
        )));
    }
    Ok(Lemma32Witness::CaseI {
        labels: xs.iter().map(|&x| o.label(x)).collect(),
        xs,
        ideals,
    })
}

fn case_two(chain: &dyn IdealChain, start: usize, k: usize, depth: usize) -> Result<Lemma32Witness, ChainError> {
    let o = chain.oracle();
    let join = |a: u64, b: u64| o.join(a, b).expect("join oracle");
    // x_n, I_n with x_n ∈ I_{n-1} ∖ I_n and I_n ⊆ {x_n} ∨ J for every J.
    let mut xs: Vec<u64> = Vec::new();
    let mut ideals: Vec<usize> = Vec::new();
    for step in 0..=k {
        let prev = ideals.last().copied().unwrap_or(start);
        let pick = (prev + 1..=prev + depth.max(1)).find_map(|m| {
            least_element(o, depth, |x| {
                chain.contains(prev, x)
                    && !chain.contains(m, x)
                    && (m..=chain.stable_index(m, x).max(m)).all(|j| chain.contained_in_join(m, x, j))
            })
            .map(|x| (m, x))
        });
        let (m, x) = pick.ok_or(ChainError::WitnessSearchExhausted { step, depth })?;
        xs.push(x);
        ideals.push(m);
    }
    let within = |n: usize| if n == 0 { start } else { ideals[n - 1] };

    let mut ys = vec![xs[0]];
    let mut zs = Vec::new();
    let mut ts = Vec::new();
    for n in 1..=k {
        let i_prev = within(n);
        let above = join_all(o, &ys).expect("non-empty");
        let z = least_element(o, depth, |z| chain.contains(i_prev, z) && !o.leq(z, above))
            .ok_or(ChainError::WitnessSearchExhausted { step: n, depth })?;
        let mut tn = Vec::new();
        for j in 0..n.saturating_sub(1) {
            let s = join_all(o, &ys[j + 1..n]).expect("non-empty");
            let t = least_element(o, depth, |t| chain.contains(i_prev, t) && o.leq(s, join(xs[j], t)))
                .ok_or(ChainError::WitnessSearchExhausted { step: n, depth })?;
            tn.push(t);
        }
        let mut y = join(xs[n], z);
        if let Some(t) = join_all(o, &tn) {
            y = join(y, t);
        }
        zs.push(z);
        ts.push(tn);
        ys.push(y);
    }

    let pattern = omega_pairs(k + 1, false);
    let pairs: Vec<(usize, usize)> = (0..pattern.len()).map(pair_of_code).collect();
    let f: Vec<u64> = pairs.iter().map(|&(i, j)| join(ys[i], ys[j])).collect();
    let checks = check_case_two(o, chain, start, &xs, &ideals, &ys, &pairs, &f);
    if !checks.all() {
        return Err(ChainError::VerificationFailed(format!("{checks:?}")));
    }
    let truncation_depth = f.iter().map(|&y| o.level(y)).max().unwrap_or(0);
    let embedding = finite_embedding(o, &pattern, &f, truncation_depth)?;
    Ok(Lemma32Witness::CaseII {
        start,
        y_labels: ys.iter().map(|&y| o.label(y)).collect(),
        xs,
        ideals,
        zs,
        ts,
        ys,
        f,
        checks,
        embedding,
        truncation_depth,
    })
}

#[allow(clippy::too_many_arguments)]
fn check_case_two(
    o: &dyn OraclePoset,
    chain: &dyn IdealChain,
    start: usize,
    xs: &[u64],
    ideals: &[usize],
    ys: &[u64],
    pairs: &[(usize, usize)],
    f: &[u64],
) -> Lemma32Checks {
    let join = |a: u64, b: u64| o.join(a, b).expect("join oracle");
    let within = |n: usize| if n == 0 { start } else { ideals[n - 1] };
    let k = ys.len() - 1;
    let a = (0..=k).all(|n| o.leq(xs[n], ys[n]) && chain.contains(within(n), ys[n]));
    let b = (1..=k).all(|n| !o.leq(ys[n], join(ys[0], ys[n - 1])));
    let c = (0..=k).all(|n| (0..=n).all(|j| (0..=j).all(|i| o.leq(ys[j], join(ys[i], ys[n])))));
    let mut sorted = f.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let injective = sorted.len() == f.len();
    let code = |p: (usize, usize)| pairs.iter().position(|&q| q == p).expect("pattern closed under joins");
    let join_preserving = (0..pairs.len())
        .all(|u| (0..pairs.len()).all(|v| f[code(pair_join(pairs[u], pairs[v]))] == join(f[u], f[v])));
    Lemma32Checks { a, b, c, injective, join_preserving }
}

fn finite_embedding(
    o: &dyn OraclePoset,
    pattern: &crate::semilattice::FiniteJoinSemilattice,
    f: &[u64],
    d: usize,
) -> Result<Option<EmbeddingMap>, ChainError> {
    if o.elements_up_to(d).len() > TRUNCATION_LIMIT {
        return Ok(None);
    }
    let t = truncate(o, d)?;
    let Some(l) = &t.semilattice else { return Ok(None) };
    let table: Option<Vec<usize>> = f.iter().map(|&y| t.index_of(y)).collect();
    let Some(table) = table else { return Ok(None) };
    let map = EmbeddingMap { mode: Mode::Join, table };
    map.verify(pattern.into(), l.into())
        .map_err(|v| ChainError::VerificationFailed(v.to_string()))?;
    Ok(Some(map))
}
