//! Exact backtracking search for order-, join- and sublattice-embeddings,
//! plus the scans built on it.

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::families::{boolean, l_alpha, omega_pairs};
use crate::ideals::delta;
use crate::poset::FinitePoset;
use crate::semilattice::FiniteJoinSemilattice;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Order,
    Join,
    Sublattice,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "order" => Ok(Mode::Order),
            "join" => Ok(Mode::Join),
            "sublattice" => Ok(Mode::Sublattice),
            _ => Err(format!("unknown mode {s:?}")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("{0} is not a lattice")]
    NotALattice(&'static str),
    #[error("{0} is not a join-semilattice")]
    NotASemilattice(&'static str),
    #[error("node budget of {budget} exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("pinned element {0} out of range")]
    BadPin(usize),
    #[error("semilattice has no least element")]
    NoBottom,
    #[error("k must be at least 1")]
    ZeroK,
}

/// Either side of an embedding problem.
#[derive(Debug, Clone, Copy)]
pub enum Operand<'a> {
    Poset(&'a FinitePoset),
    Semilattice(&'a FiniteJoinSemilattice),
}

impl<'a> Operand<'a> {
    pub fn poset(&self) -> &'a FinitePoset {
        match self {
            Operand::Poset(p) => p,
            Operand::Semilattice(l) => l.poset(),
        }
    }

    pub fn semilattice(&self) -> Option<&'a FiniteJoinSemilattice> {
        match self {
            Operand::Poset(_) => None,
            Operand::Semilattice(l) => Some(l),
        }
    }
}

impl<'a> From<&'a FinitePoset> for Operand<'a> {
    fn from(p: &'a FinitePoset) -> Self {
        Operand::Poset(p)
    }
}

impl<'a> From<&'a FiniteJoinSemilattice> for Operand<'a> {
    fn from(l: &'a FiniteJoinSemilattice) -> Self {
        Operand::Semilattice(l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingMap {
    pub mode: Mode,
    pub table: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum Violation {
    #[error("map has {got} entries, source has {want}")]
    WrongLength { got: usize, want: usize },
    #[error("image of {0} is out of range")]
    OutOfRange(usize),
    #[error("{0} and {1} share an image")]
    NotInjective(usize, usize),
    #[error("order between {0} and {1} not reflected")]
    Order(usize, usize),
    #[error("join of {0} and {1} not preserved")]
    Join(usize, usize),
    #[error("meet of {0} and {1} not preserved")]
    Meet(usize, usize),
    #[error("mode needs {0} operands")]
    MissingStructure(&'static str),
}

impl EmbeddingMap {
    pub fn image(&self, x: usize) -> usize {
        self.table[x]
    }

    /// Re-checks the map against the definition of its mode, by brute force
    /// over all pairs.
    pub fn verify(&self, a: Operand, b: Operand) -> Result<(), Violation> {
        let (pa, pb) = (a.poset(), b.poset());
        let n = pa.len();
        if self.table.len() != n {
            return Err(Violation::WrongLength { got: self.table.len(), want: n });
        }
        if let Some(x) = (0..n).find(|&x| self.table[x] >= pb.len()) {
            return Err(Violation::OutOfRange(x));
        }
        let f = &self.table;
        for x in 0..n {
            for y in 0..n {
                if x != y && f[x] == f[y] {
                    return Err(Violation::NotInjective(x, y));
                }
                if pa.leq(x, y) != pb.leq(f[x], f[y]) {
                    return Err(Violation::Order(x, y));
                }
            }
        }
        if self.mode == Mode::Order {
            return Ok(());
        }
        let (Some(la), Some(lb)) = (a.semilattice(), b.semilattice()) else {
            return Err(Violation::MissingStructure("join-semilattice"));
        };
        for x in 0..n {
            for y in 0..n {
                if f[la.join(x, y)] != lb.join(f[x], f[y]) {
                    return Err(Violation::Join(x, y));
                }
                if self.mode == Mode::Sublattice {
                    match (la.meet(x, y), lb.meet(f[x], f[y])) {
                        (Some(m), Some(mb)) if f[m] == mb => {}
                        (Some(_), Some(_)) => return Err(Violation::Meet(x, y)),
                        _ => return Err(Violation::MissingStructure("lattice")),
                    }
                }
            }
        }
        Ok(())
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &EmbeddingMap) -> EmbeddingMap {
        let mode = match (self.mode, g.mode) {
            (Mode::Sublattice, Mode::Sublattice) => Mode::Sublattice,
            (Mode::Order, _) | (_, Mode::Order) => Mode::Order,
            _ => Mode::Join,
        };
        EmbeddingMap {
            mode,
            table: self.table.iter().map(|&x| g.table[x]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub map: Option<EmbeddingMap>,
    /// Partial assignments tried.
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Sig {
    rank: usize,
    corank: usize,
    down: usize,
    up: usize,
}

fn signatures(p: &FinitePoset) -> Vec<Sig> {
    let (r, c) = (p.ranks(), p.coranks());
    (0..p.len())
        .map(|x| Sig {
            rank: r[x],
            corank: c[x],
            down: p.down_of(x).count_ones(..),
            up: p.up_of(x).count_ones(..),
        })
        .collect()
}

/// The target, renumbered so that increasing index is increasing
/// (height, label).
struct Target {
    orig: Vec<usize>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    apart: Vec<FixedBitSet>,
    sig: Vec<Sig>,
    join: Vec<u32>,
    meet: Vec<u32>,
}

impl Target {
    fn new(p: &FinitePoset, l: Option<&FiniteJoinSemilattice>, meets: bool) -> Self {
        let n = p.len();
        let sig0 = signatures(p);
        let mut orig: Vec<usize> = (0..n).collect();
        orig.sort_by_key(|&x| (sig0[x].rank, x));
        let mut pos = vec![0; n];
        for (i, &x) in orig.iter().enumerate() {
            pos[x] = i;
        }
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        let mut apart = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in 0..n {
                let (i, j) = (pos[x], pos[y]);
                if x == y {
                    continue;
                }
                if p.leq(y, x) {
                    below[i].insert(j);
                } else if p.leq(x, y) {
                    above[i].insert(j);
                } else {
                    apart[i].insert(j);
                }
            }
        }
        let mut join = Vec::new();
        let mut meet = Vec::new();
        if let Some(l) = l {
            join = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    join[pos[x] * n + pos[y]] = pos[l.join(x, y)] as u32;
                }
            }
            if meets {
                meet = vec![0; n * n];
                for x in 0..n {
                    for y in 0..n {
                        meet[pos[x] * n + pos[y]] = pos[l.meet(x, y).expect("lattice")] as u32;
                    }
                }
            }
        }
        let sig = orig.iter().map(|&x| sig0[x]).collect();
        Target { orig, below, above, apart, sig, join, meet }
    }

    fn len(&self) -> usize {
        self.orig.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rel {
    Below,
    Above,
    Apart,
}

#[derive(Debug, Clone, Copy)]
struct Triple {
    u: usize,
    v: usize,
    w: usize,
    meet: bool,
}

/// A static source ordering with, for each step, the relations to earlier
/// elements and the operation triples completed by that step.
struct Plan {
    order: Vec<usize>,
    rels: Vec<Vec<(usize, Rel)>>,
    triples: Vec<Vec<Triple>>,
    forced: Vec<Option<Triple>>,
    allowed: Vec<FixedBitSet>,
    pin: Vec<Option<usize>>,
}

impl Plan {
    fn new(
        mode: Mode,
        p: &FinitePoset,
        l: Option<&FiniteJoinSemilattice>,
        t: &Target,
        pins: &[(usize, usize)],
    ) -> Self {
        let n = p.len();
        let ranks = p.ranks();
        let mut ops: Vec<Triple> = Vec::new();
        if let (Some(l), true) = (l, mode != Mode::Order) {
            for u in 0..n {
                for v in u + 1..n {
                    if p.comparable(u, v) {
                        continue;
                    }
                    ops.push(Triple { u, v, w: l.join(u, v), meet: false });
                    if mode == Mode::Sublattice {
                        let w = l.meet(u, v).expect("lattice");
                        ops.push(Triple { u, v, w, meet: true });
                    }
                }
            }
        }
        let mut placed = FixedBitSet::with_capacity(n);
        let mut order: Vec<usize> = pins.iter().map(|&(x, _)| x).collect();
        for &x in &order {
            placed.insert(x);
        }
        while order.len() < n {
            let forced = ops
                .iter()
                .filter(|t| placed[t.u] && placed[t.v] && !placed[t.w])
                .map(|t| t.w)
                .min_by_key(|&w| (ranks[w], w));
            let next = forced.unwrap_or_else(|| {
                (0..n)
                    .filter(|&x| !placed[x])
                    .min_by_key(|&x| (ranks[x], x))
                    .expect("unplaced element")
            });
            placed.insert(next);
            order.push(next);
        }
        let mut step = vec![0; n];
        for (i, &x) in order.iter().enumerate() {
            step[x] = i;
        }
        let rels = order
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                order[..i]
                    .iter()
                    .map(|&z| {
                        let r = if p.leq(x, z) {
                            Rel::Below
                        } else if p.leq(z, x) {
                            Rel::Above
                        } else {
                            Rel::Apart
                        };
                        (z, r)
                    })
                    .collect()
            })
            .collect();
        let mut triples = vec![Vec::new(); n];
        let mut forced = vec![None; n];
        for tr in ops {
            let last = step[tr.u].max(step[tr.v]).max(step[tr.w]);
            if last == step[tr.w] && forced[last].is_none() {
                forced[last] = Some(tr);
            }
            triples[last].push(tr);
        }
        let sig = signatures(p);
        let allowed = order
            .iter()
            .map(|&x| {
                let s = sig[x];
                let mut b = FixedBitSet::with_capacity(t.len());
                for (y, ty) in t.sig.iter().enumerate() {
                    if ty.rank >= s.rank && ty.corank >= s.corank && ty.down >= s.down && ty.up >= s.up {
                        b.insert(y);
                    }
                }
                b
            })
            .collect();
        let mut pin = vec![None; n];
        let mut pos = vec![0; t.len()];
        for (i, &x) in t.orig.iter().enumerate() {
            pos[x] = i;
        }
        for &(x, y) in pins {
            pin[step[x]] = Some(pos[y]);
        }
        Plan { order, rels, triples, forced, allowed, pin }
    }
}

struct Dfs<'a> {
    plan: &'a Plan,
    t: &'a Target,
    image: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Dfs<'_> {
    fn op(&self, tr: &Triple, a: usize, b: usize) -> usize {
        let n = self.t.len();
        let table = if tr.meet { &self.t.meet } else { &self.t.join };
        table[a * n + b] as usize
    }

    fn candidates(&self, i: usize) -> FixedBitSet {
        let mut c = self.plan.allowed[i].clone();
        for &(z, r) in &self.plan.rels[i] {
            let fz = self.image[z];
            let row = match r {
                Rel::Below => &self.t.below[fz],
                Rel::Above => &self.t.above[fz],
                Rel::Apart => &self.t.apart[fz],
            };
            c.intersect_with(row);
        }
        c
    }

    fn go(&mut self, i: usize) -> Result<bool, EmbedError> {
        if i == self.plan.order.len() {
            return Ok(true);
        }
        let x = self.plan.order[i];
        let cand = self.candidates(i);
        let single = match (self.plan.pin[i], self.plan.forced[i]) {
            (Some(y), _) => Some(y),
            (None, Some(tr)) => Some(self.op(&tr, self.image[tr.u], self.image[tr.v])),
            _ => None,
        };
        let list: Vec<usize> = match single {
            Some(y) => cand.contains(y).then_some(y).into_iter().collect(),
            None => cand.ones().collect(),
        };
        for y in list {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(EmbedError::BudgetExhausted { budget: self.budget });
            }
            self.image[x] = y;
            let ok = self.plan.triples[i]
                .iter()
                .all(|tr| self.op(tr, self.image[tr.u], self.image[tr.v]) == self.image[tr.w]);
            if ok && self.go(i + 1)? {
                return Ok(true);
            }
        }
        self.image[x] = usize::MAX;
        Ok(false)
    }
}

fn structures<'a>(
    mode: Mode,
    a: Operand<'a>,
    b: Operand<'a>,
) -> Result<(Option<&'a FiniteJoinSemilattice>, Option<&'a FiniteJoinSemilattice>), EmbedError> {
    match mode {
        Mode::Order => Ok((None, None)),
        Mode::Join | Mode::Sublattice => {
            let la = a.semilattice().ok_or(EmbedError::NotASemilattice("source"))?;
            let lb = b.semilattice().ok_or(EmbedError::NotASemilattice("target"))?;
            if mode == Mode::Sublattice {
                if !la.is_lattice() {
                    return Err(EmbedError::NotALattice("source"));
                }
                if !lb.is_lattice() {
                    return Err(EmbedError::NotALattice("target"));
                }
            }
            Ok((Some(la), Some(lb)))
        }
    }
}

/// Complete search; the first solution in (height, label) order of the
/// candidate images is returned.
pub fn search(mode: Mode, a: Operand, b: Operand, budget: u64) -> Result<SearchReport, EmbedError> {
    search_pinned(mode, a, b, &[], budget)
}

/// As [`search`], with some images fixed in advance.
pub fn search_pinned(
    mode: Mode,
    a: Operand,
    b: Operand,
    pins: &[(usize, usize)],
    budget: u64,
) -> Result<SearchReport, EmbedError> {
    let (la, lb) = structures(mode, a, b)?;
    let (pa, pb) = (a.poset(), b.poset());
    if let Some(&(x, y)) = pins.iter().find(|&&(x, y)| x >= pa.len() || y >= pb.len()) {
        return Err(EmbedError::BadPin(if x >= pa.len() { x } else { y }));
    }
    let none = SearchReport { map: None, nodes: 0 };
    if pa.len() > pb.len() || pa.height() > pb.height() {
        return Ok(none);
    }
    let t = Target::new(pb, lb, mode == Mode::Sublattice);
    let plan = Plan::new(mode, pa, la, &t, pins);
    let mut dfs = Dfs {
        plan: &plan,
        t: &t,
        image: vec![usize::MAX; pa.len()],
        nodes: 0,
        budget,
    };
    let found = dfs.go(0)?;
    let map = found.then(|| EmbeddingMap {
        mode,
        table: dfs.image.iter().map(|&y| t.orig[y]).collect(),
    });
    if let Some(m) = &map {
        debug_assert_eq!(m.verify(a, b), Ok(()));
    }
    Ok(SearchReport { map, nodes: dfs.nodes })
}

pub fn order_embed(a: &FinitePoset, b: &FinitePoset) -> Result<Option<EmbeddingMap>, EmbedError> {
    Ok(search(Mode::Order, a.into(), b.into(), DEFAULT_NODE_BUDGET)?.map)
}

pub fn join_embed(
    a: &FiniteJoinSemilattice,
    b: &FiniteJoinSemilattice,
) -> Result<Option<EmbeddingMap>, EmbedError> {
    Ok(search(Mode::Join, a.into(), b.into(), DEFAULT_NODE_BUDGET)?.map)
}

pub fn sublattice_embed(
    a: &FiniteJoinSemilattice,
    b: &FiniteJoinSemilattice,
) -> Result<Option<EmbeddingMap>, EmbedError> {
    Ok(search(Mode::Sublattice, a.into(), b.into(), DEFAULT_NODE_BUDGET)?.map)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenScan {
    /// Largest `k ≤ kmax` with `boolean(k)` join-embedding.
    pub max_bk: usize,
    /// Largest `k ≤ kmax` with `omega_pairs_with_bottom(k)` join-embedding.
    pub max_omegak: usize,
    /// `None` when the semilattice is not a lattice.
    pub has_l2: Option<bool>,
    pub nodes: u64,
}

/// Both patterns form increasing chains of join-subsemilattices, so each scan
/// stops at the first `k` that fails.
pub fn forbidden_scan(l: &FiniteJoinSemilattice, kmax: usize, budget: u64) -> Result<ForbiddenScan, EmbedError> {
    let mut nodes = 0;
    let mut largest = |make: &dyn Fn(usize) -> FiniteJoinSemilattice, from: usize| {
        let mut best = 0;
        for k in from..=kmax {
            let r = search(Mode::Join, (&make(k)).into(), l.into(), budget)?;
            nodes += r.nodes;
            if r.map.is_none() {
                break;
            }
            best = k;
        }
        Ok::<usize, EmbedError>(best)
    };
    let max_bk = largest(&boolean, 0)?;
    let max_omegak = largest(&|k| omega_pairs(k, true), 1)?;
    let has_l2 = if l.is_lattice() {
        let r = search(Mode::Sublattice, (&l_alpha(2)).into(), l.into(), budget)?;
        nodes += r.nodes;
        Some(r.map.is_some())
    } else {
        None
    };
    Ok(ForbiddenScan { max_bk, max_omegak, has_l2, nodes })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem14Verdict {
    pub k: usize,
    /// (i) an independent set of size `k`.
    pub independent: Option<Vec<usize>>,
    /// (ii) `boolean(k)` join-embeds.
    pub join_embedding: Option<EmbeddingMap>,
    /// (iii) `boolean(k)` order-embeds.
    pub order_embedding: Option<EmbeddingMap>,
    pub equivalent: bool,
    pub note: &'static str,
}

pub const FINITE_COLLAPSE_NOTE: &str =
    "finite L: J(L) is isomorphic to L and the powerset of k is boolean(k), so (iv) and (v) coincide with (iii)";

pub fn theorem_1_4_check(l: &FiniteJoinSemilattice, k: usize, budget: u64) -> Result<Theorem14Verdict, EmbedError> {
    if k == 0 {
        return Err(EmbedError::ZeroK);
    }
    if l.bottom().is_none() {
        return Err(EmbedError::NoBottom);
    }
    let ind = l.max_independent(k);
    let independent = (ind.len() >= k).then_some(ind);
    let b = boolean(k);
    let join_embedding = search(Mode::Join, (&b).into(), l.into(), budget)?.map;
    let order_embedding = search(Mode::Order, b.poset().into(), l.poset().into(), budget)?.map;
    let (i, ii, iii) = (independent.is_some(), join_embedding.is_some(), order_embedding.is_some());
    Ok(Theorem14Verdict {
        k,
        independent,
        join_embedding,
        order_embedding,
        equivalent: i == ii && ii == iii,
        note: FINITE_COLLAPSE_NOTE,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinGround {
    pub size: usize,
    /// `|Δ|`, where the search starts.
    pub upper_bound: usize,
    /// `max(height - 1, ⌈log2 |P|⌉)`.
    pub lower_bound: usize,
    pub map: EmbeddingMap,
    pub nodes: u64,
}

fn ceil_log2(n: usize) -> usize {
    (usize::BITS - n.saturating_sub(1).leading_zeros()) as usize
}

/// The least `m` with `P` join-embedding in `boolean(m)`. A join-embedding
/// can always be shifted to send the least element to `∅` (subtract its
/// image everywhere), so the bottom is pinned.
pub fn min_ground(p: &FiniteJoinSemilattice, budget: u64) -> Result<MinGround, EmbedError> {
    let upper_bound = delta(p).len();
    let lower_bound = p.poset().height().saturating_sub(1).max(ceil_log2(p.len()));
    let mut nodes = 0;
    let mut attempt = |m: usize| -> Result<Option<EmbeddingMap>, EmbedError> {
        let b = boolean(m);
        let pins: Vec<(usize, usize)> = p.bottom().map(|x| (x, 0)).into_iter().collect();
        let r = search_pinned(Mode::Join, p.into(), (&b).into(), &pins, budget)?;
        nodes += r.nodes;
        Ok(r.map)
    };
    let mut m = upper_bound;
    let mut best = attempt(m)?;
    while best.is_none() {
        m += 1;
        best = attempt(m)?;
    }
    while m > lower_bound {
        match attempt(m - 1)? {
            Some(f) => {
                m -= 1;
                best = Some(f);
            }
            None => break,
        }
    }
    Ok(MinGround {
        size: m,
        upper_bound,
        lower_bound,
        map: best.expect("found"),
        nodes,
    })
}
