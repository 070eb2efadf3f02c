//! Exhaustive and seeded-random sweeps behind `ordlab verify`.
//!
//! Exhaustive sweeps run over one representative of every isomorphism class
//! of posets (or of join-semilattices, lattices) up to `max_size`. Random
//! sweeps draw `(Q, F)` pairs from a ChaCha stream seeded by `seed`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::catalog::families::l_alpha;
use crate::chain_lab::{ramsey_extract, remark414_antichain, ChainError};
use crate::embed::{min_ground, search, theorem_1_4_check, EmbedError, Mode, DEFAULT_NODE_BUDGET};
use crate::ideals::{
    cover_by_ideals, down_sets, family_closures, ideal_lattice, inclusion_order, initial_segment_lattice,
    phi_delta, phi_q, x_plus, ClosureCheck, IdealError, DOWNSET_CAP,
};
use crate::poset::{enumerate_posets, iso, DownSet, FinitePoset, PosetError, PosetJson, DEFAULT_ENUMERATION_CAP};
use crate::semilattice::{FiniteJoinSemilattice, SemilatticeError};

pub const THEOREM_IDS: [&str; 13] = [
    "fact4.1",
    "fact4.2",
    "thm1.1",
    "thm1.4",
    "thm2.1c",
    "thm2.1d",
    "lemma4.3",
    "lemma4.9a",
    "lemma4.9b",
    "prop4.4",
    "prop4.10",
    "dedekind-L2",
    "thm4.13-finite",
];

/// Random families are drawn over grounds of at most this size.
pub const RANDOM_GROUND_MAX: usize = 5;
/// Random families have at most this many members.
pub const RANDOM_FAMILY_MAX: usize = 5;
/// Brute-force minimality of decompositions stops at this size.
pub const MINIMALITY_MAX_SIZE: usize = 5;

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error("unknown theorem id {0:?}")]
    UnknownTheoremId(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Semilattice(#[from] SemilatticeError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepParams {
    pub max_size: usize,
    /// `thm1.4` only; both 2 and 3 when unset.
    pub k: Option<usize>,
    pub seed: u64,
    /// Number of random `(Q, F)` samples.
    pub trials: usize,
    pub budget: u64,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            max_size: 6,
            k: None,
            seed: 0,
            trials: 1000,
            budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeCount {
    pub size: usize,
    pub checked: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub pass: bool,
    pub checked: usize,
    /// Items checked per size (of the poset, semilattice or random ground).
    pub per_size: Vec<SizeCount>,
    /// The first failing item in sweep order.
    pub counterexample: Option<Value>,
    pub notes: Vec<String>,
}

fn sweep<T, F>(id: &str, groups: &[(usize, Vec<T>)], check: F) -> Result<TheoremReport, TheoremError>
where
    T: Sync,
    F: Fn(&T) -> Result<Option<Value>, TheoremError> + Sync,
{
    let mut per_size = Vec::new();
    let mut counterexample = None;
    for (size, items) in groups {
        let results = items.par_iter().map(&check).collect::<Result<Vec<_>, _>>()?;
        if counterexample.is_none() {
            counterexample = results.into_iter().flatten().next();
        }
        per_size.push(SizeCount { size: *size, checked: items.len() });
    }
    Ok(TheoremReport {
        id: id.to_string(),
        pass: counterexample.is_none(),
        checked: per_size.iter().map(|s| s.checked).sum(),
        per_size,
        counterexample,
        notes: Vec::new(),
    })
}

/// Combines two sweeps of one theorem; sizes are summed.
fn merge(mut a: TheoremReport, b: TheoremReport) -> TheoremReport {
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for s in a.per_size.iter().chain(&b.per_size) {
        *sizes.entry(s.size).or_default() += s.checked;
    }
    a.per_size = sizes.into_iter().map(|(size, checked)| SizeCount { size, checked }).collect();
    a.checked += b.checked;
    a.pass &= b.pass;
    a.counterexample = a.counterexample.or(b.counterexample);
    a.notes.extend(b.notes);
    a
}

fn poset_json(p: &FinitePoset) -> Value {
    serde_json::to_value(PosetJson::from(p)).expect("plain data serializes")
}

/// One poset per isomorphism class, grouped by size `1..=max_size`.
pub fn posets_by_size(max_size: usize) -> Result<Vec<(usize, Vec<FinitePoset>)>, TheoremError> {
    (1..=max_size)
        .map(|n| Ok((n, enumerate_posets(n, DEFAULT_ENUMERATION_CAP)?)))
        .collect()
}

/// One join-semilattice per isomorphism class, grouped by size. With
/// `need_bottom` only those with a least element (that is, the lattices).
pub fn semilattices_by_size(
    max_size: usize,
    need_bottom: bool,
) -> Result<Vec<(usize, Vec<FiniteJoinSemilattice>)>, TheoremError> {
    Ok(posets_by_size(max_size)?
        .into_iter()
        .map(|(n, ps)| {
            let ls = ps
                .into_iter()
                .filter_map(|p| FiniteJoinSemilattice::new(p).ok())
                .filter(|l| !need_bottom || l.bottom().is_some())
                .collect();
            (n, ls)
        })
        .collect())
}

/// A random poset on `1..=max_n` points (each `i < j` related with
/// probability 1/3, then closed) and `1..=RANDOM_FAMILY_MAX` random
/// down-sets of it.
pub fn random_family(rng: &mut ChaCha8Rng, max_n: usize) -> (FinitePoset, Vec<DownSet>) {
    let n = rng.gen_range(1..=max_n.max(1));
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|_| rng.gen_ratio(1, 3))
        .collect();
    let q = FinitePoset::from_generating_pairs(n, &pairs).expect("pairs go up in label order");
    let m = rng.gen_range(1..=RANDOM_FAMILY_MAX);
    let family = (0..m)
        .map(|_| {
            let mut s = q.empty_set();
            s.extend((0..n).filter(|_| rng.gen_bool(0.5)));
            q.down_closure(&s)
        })
        .collect();
    (q, family)
}

fn random_samples(params: &SweepParams) -> Vec<(usize, Vec<(FinitePoset, Vec<DownSet>)>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let max_n = params.max_size.clamp(1, RANDOM_GROUND_MAX);
    let mut groups: BTreeMap<usize, Vec<_>> = BTreeMap::new();
    for _ in 0..params.trials {
        let (q, f) = random_family(&mut rng, max_n);
        groups.entry(q.len()).or_default().push((q, f));
    }
    groups.into_iter().collect()
}

fn family_json(q: &FinitePoset, f: &[DownSet]) -> Value {
    json!({ "ground": poset_json(q), "family": f.iter().map(|d| d.members()).collect::<Vec<_>>() })
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

pub fn verify(id: &str, params: &SweepParams) -> Result<TheoremReport, TheoremError> {
    match id {
        "fact4.1" => fact_4_1(params),
        "fact4.2" => fact_4_2(params),
        "thm1.1" => thm_1_1(params),
        "thm1.4" => thm_1_4(params),
        "thm2.1c" => thm_2_1c(params),
        "thm2.1d" => thm_2_1d(params),
        "lemma4.3" => lemma_4_3(params),
        "lemma4.9a" => lemma_4_9a(params),
        "lemma4.9b" => lemma_4_9b(params),
        "prop4.4" => prop_4_4(params),
        "prop4.10" => prop_4_10(params),
        "dedekind-L2" => dedekind_l2(params),
        "thm4.13-finite" => thm_4_13_finite(params),
        _ => Err(TheoremError::UnknownTheoremId(id.to_string())),
    }
}

/// Irreducibles and primes of `I(Q)` are exactly the principal down-sets.
fn fact_4_1(params: &SweepParams) -> Result<TheoremReport, TheoremError> {
    sweep("fact4.1", &posets_by_size(params.max_size)?, &|q: &FinitePoset| {
        let l = initial_segment_lattice(q)?;
        let irr = l.lattice.join_irreducibles()?;
        let pri = l.lattice.join_primes()?;
        let down = sorted(q.elements().map(|x| l.principal_index(q, x)).collect());
        Ok((irr != down || pri != down).then(|| {
            let members = |v: &[usize]| v.iter().map(|&i| l.sets[i].members()).collect::<Vec<_>>();
            json!({
                "poset": poset_json(q),
                "irreducibles": members(&irr),
                "primes": members(&pri),
                "principal": members(&down),
            })
        }))
    })
}

fn joins_its_primes(l: &FiniteJoinSemilattice, primes: &[usize]) -> Option<usize> {
    (0..l.len()).find(|&x| {
        let below = primes.iter().copied().filter(|&p| l.leq(p, x));
        l.join_set(below).ok() != Some(x)
    })
}

/// Every member of `I(Q)` is a join of primes; a semilattice with 0 whose
/// members are joins of primes is `I` of its primes.
fn fact_4_2(params: &SweepParams) -> Result<TheoremReport, TheoremError> {
    let forward = sweep("fact4.2", &posets_by_size(params.max_size)?, &|q: &FinitePoset| {
        let l = initial_segment_lattice(q)?;
        let primes = l.lattice.join_primes()?;
        Ok(joins_its_primes(&l.lattice, &primes)
            .map(|x| json!({ "poset": poset_json(q), "not_a_join_of_primes": l.sets[x].members() })))
    })?;
    let mut converse_hits = 0usize;
    let lattices = semilattices_by_size(params.max_size, true)?;
    let backward = sweep("fact4.2", &lattices, &|l: &FiniteJoinSemilattice| {
        let primes = l.join_primes()?;
        if joins_its_primes(l, &primes).is_some() {
            return Ok(None);
        }
        let rebuilt = initial_segment_lattice(&l.poset().induced(&primes))?;
        Ok(iso(l.poset(), rebuilt.lattice.poset())
            .is_none()
            .then(|| json!({ "semilattice": poset_json(l.poset()), "primes": primes })))
    })?;
    for (_, ls) in &lattices {
        for l in ls {
            let primes = l.join_primes()?;
            converse_hits += usize::from(joins_its_primes(l, &primes).is_none());
        }
    }
    let mut r = merge(forward, backward);
    r.notes.push(format!(
        "{converse_hits} semilattices with 0 have every element a join of primes and were rebuilt as I(primes)"
    ));
    Ok(r)
}

/// `J(P) ≅ P` for finite `P` with 0, and every down-set of `P` is
/// generated by its finitely many maximal elements.
fn thm_1_1(params: &SweepParams) -> Result<TheoremReport, TheoremError> {
    sweep("thm1.1", &semilattices_by_size(params.max_size, true)?, &|l: &FiniteJoinSemilattice| {
        let p = l.poset();
        let ideals = ideal_lattice(p)?;
        if iso(&inclusion_order(&ideals), p).is_none() {
            return Ok(Some(json!({ "semilattice": poset_json(p), "ideals": ideals.len() })));
        }
        for s in down_sets(p, DOWNSET_CAP)? {
            let gens = p.maximal_elements(s.bits());
            let mut g = p.empty_set();
            g.extend(gens);
            if p.down_closure(&g) != s {
                return Ok(Some(json!({ "semilattice": poset_json(p), "down_set": s.members() })));
            }
        }
        Ok(None)
    })
}

/// Independent `k`-set ⟺ `boolean(k)` join-embeds ⟺ `boolean(k)` order-embeds.
fn thm_1_4(params: &SweepParams) -> Result<TheoremReport, TheoremError> {
    let ks = match params.k {
        Some(k) => vec![k],
        None => vec![2, 3],
    };
    let budget = params.budget;
    let mut report: Option<TheoremReport> = None;
    let lattices = semilattices_by_size(params.max_size, true)?;
    for &k in &ks {
        let r = sweep("thm1.4", &lattices, &|l: &FiniteJoinSemilattice| {
            let v = theorem_1_4_check(l, k, budget)?;
            Ok((!v.equivalent).then(|| {
                json!({
                    "semilattice": poset_json(l.poset()),
                    "k": k,
                    "independent": v.independent.is_some(),
                    "join_embedding": v.join_embedding.is_some(),
                    "order_embedding": v.order_embedding.is_some(),
                })
            }))
        })?;
        report = Some(match report {
            None => r,
            Some(acc) => merge(acc, r),
        });
    }
    let mut r = report.expect("at least one k");
    r.notes.push(format!("k in {ks:?}"));
    r.notes.push(crate::embed::FINITE_COLLAPSE_NOTE.to_string());
    Ok(r)
}

/// Every element is the join of its irreducible decomposition, and on
/// small sizes no proper subset of the decomposition has the same join.
fn thm_2_1c(params: &SweepParams) -> Result<TheoremReport, TheoremError> {
    let mut r = sweep("thm2.1c", &semilattices_by_size(params.max_size, true)?, &|l: &FiniteJoinSemilattice| {
        let irr = l.join_irreducibles()?;
        for x in 0..l.len() {
            let parts = l.irreducible_decomposition(x)?;
            let joined = l.join_set(parts.iter().copied())?;
            let fail = |why: &str| Some(json!({ "semilattice": poset_json(l.poset()), "x": x, "parts": parts, "why": why }));
            if joined != x {
                return Ok(fail("join differs"));
            }
            if !parts.iter().all(|p| irr.contains(p)) {
                return Ok(fail("part not irreducible"));
            }
            if l.len() <= MINIMALITY_MAX_SIZE {
                let full = (1usize << parts.len()) - 1;
                let redundant = (0..full).any(|mask| {
                    let sub = (0..parts.len()).filter(|i| mask >> i & 1 == 1).map(|i| parts[i]);
                    l.join_set(sub).ok() == Some(x)
                });
                if redundant {
                    return Ok(fail("a proper subset has the same join"));
                }
            }
        }
        Ok(None)
    })?;
    r.notes
        .push(format!("minimality checked by subset enumeration on sizes ≤ {MINIMALITY_MAX_SIZE}"));
    Ok(r)
}

/// A finite `P` with 0 is always wqo, so the sweep checks the other side:
/// each `x` is the join of the irreducibles below it (the irreducibles,
/// being finitely many, are wqo).
fn thm_2_1d(params: &SweepParams) -> Result<TheoremReport, TheoremError> {
    let mut r = sweep("thm2.1d", &semilattices_by_size(params.max_size, true)?, &|l: &FiniteJoinSemilattice| {
        let irr = l.join_irreducibles()?;
        let missed = (0..l.len()).find(|&x| {
            let below = irr.iter().copied().filter(|&j| l.leq(j, x));
            l.join_set(below).ok() != Some(x)
        });
        Ok(missed.map(|x| json!({ "semilattice": poset_json(l.poset()), "x": x, "irreducibles": irr })))
    })?;
    r.notes.push("finite posets are wqo, so both sides must hold".into());
    Ok(r)
}

/// `x ∈ I⁺ ∖ I` ⟺ `I` is a maximal ideal of `P ∖ ↑x`, for every ideal `I`
/// and every `x`.
fn lemma_4_3(params: &SweepParams) -> Result<TheoremReport, TheoremError> {
    sweep("lemma4.3", &semilattices_by_size(params.max_size, false)?, &|l: &FiniteJoinSemilattice| {
        let p = l.poset();
        let ideals = ideal_lattice(p)?;
        let j = FiniteJoinSemilattice::new(inclusion_order(&ideals))?;
        for (i, ideal) in ideals.iter().enumerate() {
            let plus = &ideals[x_plus(&j, i)];
            for x in p.elements() {
                let lhs = plus.contains(x) && !ideal.contains(x);
                // An ideal lies in P ∖ ↑x iff it misses x.
                let rhs = !ideal.contains(x)
                    && ideals
                        .iter()
                        .all(|k| k == ideal || !ideal.is_subset(k) || k.contains(x));
                if lhs != rhs {
                    return Ok(Some(json!({
                        "semilattice": poset_json(p),
                        "ideal": ideal.members(),
                        "x": x,
                        "in_plus_minus_ideal": lhs,
                        "maximal_in_complement": rhs,
                    })));
                }
            }
        }
        Ok(None)
    })
}

fn lemma_4_9a(params: &SweepParams) -> Result<TheoremReport, TheoremError> {
    let mut r = sweep("lemma4.9a", &random_samples(params), &|(q, f): &(FinitePoset, Vec<DownSet>)| {
        let c = family_closures(q, f)?;
        Ok(match c.verify_bar_isomorphism()? {
            ClosureCheck::Holds => None,
            bad => Some(json!({ "sample": family_json(q, f), "failure": bad })),
        })
    })?;
    r.notes.push(format!("{} random samples, seed {}", params.trials, params.seed));
    Ok(r)
}

fn lemma_4_9b(params: &SweepParams) -> Result<TheoremReport, TheoremError> {
    let samples = random_samples(params);
    let mut r = sweep("lemma4.9b", &samples, &|(q, f): &(FinitePoset, Vec<DownSet>)| {
        let c = family_closures(q, f)?;
        Ok(match c.verify_delta_form()? {
            ClosureCheck::Holds => None,
            bad => Some(json!({ "sample": family_json(q, f), "failure": bad })),
        })
    })?;
    r.notes.push(format!("{} random samples, seed {}", params.trials, params.seed));
    for (q, f) in samples.iter().flat_map(|(_, s)| s) {
        if let Some(x) = family_closures(q, f)?.converse_counterexample()? {
            r.notes.push(format!(
                "converse fails: P_(not {x}) is an ideal outside Delta(J(P)) for {}",
                family_json(q, f)
            ));
            break;
        }
    }
    Ok(r)
}

/// (ii), (iii) and (iv) all hold on every finite join-semilattice.
fn prop_4_4(params: &SweepParams) -> Result<TheoremReport, TheoremError> {
    sweep("prop4.4", &semilattices_by_size(params.max_size, false)?, &|l: &FiniteJoinSemilattice| {
        let p = l.poset();
        let fail = |item: &str, x: Option<usize>| Ok(Some(json!({ "semilattice": poset_json(p), "item": item, "x": x })));
        for x in p.elements() {
            let mut rest = p.up_of(x).clone();
            rest.toggle_range(..);
            let cover = match cover_by_ideals(p, x) {
                Ok(c) => c,
                Err(IdealError::EmptyComplement(_)) => Vec::new(),
                Err(e) => return Err(e.into()),
            };
            let mut union = p.empty_set();
            for c in &cover {
                union.union_with(c.bits());
            }
            if union != rest || !cover.iter().all(|c| !c.is_empty() && p.is_directed(c.bits())) {
                return fail("iv", Some(x));
            }
        }
        let d = phi_delta(l);
        if !d.map.embedding || d.join_violation.is_some() {
            return fail("iii", None);
        }
        let all = phi_q(p, &ideal_lattice(p)?);
        if !all.embedding || all.join_violation(l).is_some() {
            return fail("ii", None);
        }
        Ok(None)
    })
}

/// `φ_Δ` is an injective join-preserving map into the subsets of
/// `Δ(J(P))`, and the least ground set is no larger than `Δ`.
fn prop_4_10(params: &SweepParams) -> Result<TheoremReport, TheoremError> {
    let budget = params.budget;
    sweep("prop4.10", &semilattices_by_size(params.max_size, false)?, &|l: &FiniteJoinSemilattice| {
        let d = phi_delta(l);
        let m = min_ground(l, budget)?;
        Ok((!d.injective || d.join_violation.is_some() || m.size > d.delta.len()).then(|| {
            json!({
                "semilattice": poset_json(l.poset()),
                "injective": d.injective,
                "join_violation": d.join_violation,
                "delta": d.delta.len(),
                "min_ground": m.size,
            })
        }))
    })
}

/// Modular ⟺ no sublattice isomorphic to the pentagon `L(2)`.
fn dedekind_l2(params: &SweepParams) -> Result<TheoremReport, TheoremError> {
    let budget = params.budget;
    let pentagon = l_alpha(2);
    sweep("dedekind-L2", &semilattices_by_size(params.max_size, true)?, &|l: &FiniteJoinSemilattice| {
        let modular = l.lattice_tests().is_modular;
        let pent = search(Mode::Sublattice, (&pentagon).into(), l.into(), budget)?.map;
        Ok((modular == pent.is_some()).then(|| {
            json!({ "lattice": poset_json(l.poset()), "modular": modular, "pentagon": pent.map(|m| m.table) })
        }))
    })
}

/// Members of `F` pairwise incomparable under inclusion, greedily in order.
fn antichain_subfamily(f: &[DownSet]) -> Vec<DownSet> {
    let mut out: Vec<DownSet> = Vec::new();
    for d in f {
        if out.iter().all(|e| !d.is_subset(e) && !e.is_subset(d)) {
            out.push(d.clone());
        }
    }
    out
}

fn ramsey_failure(q: &FinitePoset, a: &[DownSet]) -> Result<Option<String>, TheoremError> {
    let r = ramsey_extract(q, a)?;
    for (i, row) in r.f.iter().enumerate() {
        let max = q.maximal_elements(a[i].bits());
        for (off, &v) in row.iter().enumerate() {
            if !max.contains(&v) || a[i + off + 1].contains(v) {
                return Ok(Some(format!("f({i}, {}) = {v} is not in Max(F_i) minus F_j", i + off + 1)));
            }
        }
    }
    for (p, &i) in r.stable.iter().enumerate().take(r.constants.len()) {
        if let Some(&j) = r.stable[p + 1..].iter().find(|&&j| r.f[i][j - i - 1] != r.constants[p]) {
            return Ok(Some(format!("f({i}, ·) not constant on X at {j}")));
        }
    }
    for w in r.g_chain.windows(2) {
        if !w[1].iter().all(|e| w[0].contains(e)) {
            return Ok(Some("G chain increases".into()));
        }
    }
    for &(p, c) in &r.drops {
        if !r.g_chain[p].contains(&c) || r.g_chain[p + 1].contains(&c) {
            return Ok(Some(format!("drop {c} at {p} is not certified")));
        }
    }
    Ok(None)
}

/// The 7 ⟹ 1 extraction on random antichains of down-sets and on the
/// pair-image antichains `m ≤ 12`: the `G`-chain is nonincreasing, every
/// drop is certified, and on the pair images at least one drop occurs.
fn thm_4_13_finite(params: &SweepParams) -> Result<TheoremReport, TheoremError> {
    let mut r = sweep("thm4.13-finite", &random_samples(params), &|(q, f): &(FinitePoset, Vec<DownSet>)| {
        let a = antichain_subfamily(f);
        if a.len() < 2 {
            return Ok(None);
        }
        Ok(ramsey_failure(q, &a)?.map(|why| json!({ "sample": family_json(q, &a), "why": why })))
    })?;
    let fixtures: Vec<(usize, Vec<usize>)> = vec![(0, (1..=12).collect())];
    let pair_images = sweep("thm4.13-finite", &fixtures, &|&m: &usize| {
        let (q, a) = remark414_antichain(m);
        let why = match ramsey_failure(&q, &a)? {
            Some(w) => Some(w),
            None => ramsey_extract(&q, &a)?.drops.is_empty().then(|| "no strict drop".to_string()),
        };
        Ok(why.map(|w| json!({ "pair_images": m, "why": w })))
    })?;
    let drops = ramsey_extract(&remark414_antichain(12).0, &remark414_antichain(12).1)?.drops.len();
    r.notes.push(format!("{} random samples, seed {}", params.trials, params.seed));
    r.notes.push(format!("pair-image antichain m = 12: {drops} certified drops"));
    let mut r = merge(r, pair_images);
    r.per_size.retain(|s| s.size > 0);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(max_size: usize) -> SweepParams {
        SweepParams {
            max_size,
            trials: 100,
            ..SweepParams::default()
        }
    }

    #[test]
    fn every_id_passes_on_small_sizes() {
        for id in THEOREM_IDS {
            let r = verify(id, &small(4)).unwrap();
            assert!(r.pass, "{id}: {:?}", r.counterexample);
            assert!(r.checked > 0, "{id}");
        }
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(
            verify("thm9.9", &SweepParams::default()),
            Err(TheoremError::UnknownTheoremId(_))
        ));
    }

    #[test]
    fn fact41_counts_posets() {
        let r = verify("fact4.1", &small(5)).unwrap();
        let counts: Vec<usize> = r.per_size.iter().map(|s| s.checked).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
        assert_eq!(r.checked, 87);
    }

    #[test]
    fn semilattice_counts() {
        // Lattices with 1..=6 elements: 1, 1, 1, 2, 5, 15.
        let counts: Vec<usize> = semilattices_by_size(6, true)
            .unwrap()
            .iter()
            .map(|(_, ls)| ls.len())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
    }

    #[test]
    fn random_samples_are_seeded() {
        let p = small(5);
        let a = random_samples(&p);
        let b = random_samples(&p);
        assert_eq!(a.len(), b.len());
        for ((sa, xa), (sb, xb)) in a.iter().zip(&b) {
            assert_eq!(sa, sb);
            assert_eq!(xa.len(), xb.len());
            for ((qa, fa), (qb, fb)) in xa.iter().zip(xb) {
                assert_eq!(qa, qb);
                assert_eq!(fa, fb);
            }
        }
        assert_eq!(a.iter().map(|(_, s)| s.len()).sum::<usize>(), 100);
    }

    #[test]
    fn lemma49b_reports_a_converse_failure() {
        let r = verify("lemma4.9b", &small(5)).unwrap();
        assert!(r.pass);
        assert!(r.notes.iter().any(|n| n.starts_with("converse fails")));
    }
}
