//! Rank-distance codes built from words: the component sets π_a, J_b, A_1,
//! A_2, the non-linear family `Π_I ∪ Γ_I ∪ A_1 ∪ A_2 ∪ {0}`, the linear
//! Gabidulin baseline, and exact distance checks.
//!
//! Distance checks come in two modes. [`DistanceMode::BruteForce`] looks at
//! every unordered pair. [`DistanceMode::Orbit`] uses a group of
//! rank-distance isometries that leaves the code invariant (by default the
//! Singer pairs `a_i ↦ λ a_i x^{q^i}`): every pair `(u, v)` is equivalent to
//! `(r, v')` with `r` the representative of the orbit of `u`, so only
//! representatives need to be compared against the whole code.

use std::collections::BTreeMap;
use std::sync::Arc;

use indexmap::{IndexMap, IndexSet};
use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::fq_label;
use crate::fp;
use crate::gfield::{Elt, FieldCtx};
use crate::linforms::{rank, singer_act, singer_orbit, Word};

/// Provenance of a codeword.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Component {
    Pi(Elt),
    J(Elt),
    A1,
    A2,
    Zero,
    Other,
}

/// A finite set of words with a claimed minimum distance.
#[derive(Clone)]
pub struct RankCode {
    ctx: Arc<FieldCtx>,
    words: IndexMap<Word, Component>,
    claimed_distance: usize,
    set: Vec<Elt>,
}

impl std::fmt::Debug for RankCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RankCode")
            .field("ctx", &self.ctx)
            .field("len", &self.words.len())
            .field("claimed_distance", &self.claimed_distance)
            .finish()
    }
}

impl RankCode {
    /// Builds a code from tagged words; duplicates keep their first tag.
    pub fn new(
        ctx: Arc<FieldCtx>,
        claimed_distance: usize,
        set: Vec<Elt>,
        entries: impl IntoIterator<Item = (Word, Component)>,
    ) -> Result<RankCode> {
        let m = ctx.m();
        let mut words = IndexMap::new();
        for (w, tag) in entries {
            if w.len() != m {
                return Err(Error::WordLength {
                    expected: m,
                    got: w.len(),
                });
            }
            words.entry(w).or_insert(tag);
        }
        Ok(RankCode {
            ctx,
            words,
            claimed_distance,
            set,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn ctx_arc(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn m(&self) -> usize {
        self.ctx.m()
    }

    pub fn q(&self) -> u64 {
        self.ctx.q()
    }

    pub fn claimed_distance(&self) -> usize {
        self.claimed_distance
    }

    /// The parameter set I for family codes, empty otherwise.
    pub fn set(&self) -> &[Elt] {
        &self.set
    }

    pub fn words(&self) -> impl ExactSizeIterator<Item = &Word> {
        self.words.keys()
    }

    pub fn word(&self, i: usize) -> &Word {
        self.words.get_index(i).unwrap().0
    }

    pub fn entries(&self) -> impl ExactSizeIterator<Item = (&Word, &Component)> {
        self.words.iter()
    }

    pub fn tag(&self, w: &Word) -> Option<Component> {
        self.words.get(w).copied()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains_key(w)
    }

    /// Number of words per tag, in tag order.
    pub fn component_sizes(&self) -> BTreeMap<Component, usize> {
        let mut out = BTreeMap::new();
        for tag in self.words.values() {
            *out.entry(*tag).or_insert(0) += 1;
        }
        out
    }

    /// A copy without the word at position `i`.
    pub fn without(&self, i: usize) -> RankCode {
        let mut c = self.clone();
        c.words.shift_remove_index(i);
        c
    }

    /// Singleton-like bound q^{m(m-s)} for the claimed distance d = s + 1,
    /// saturating at `u128::MAX`.
    pub fn singleton_bound(&self) -> u128 {
        let s = self.claimed_distance.saturating_sub(1);
        let m = self.m() as u32;
        let exp = m * (m - (s as u32).min(m));
        (self.q() as u128).checked_pow(exp).unwrap_or(u128::MAX)
    }
}

/// Coefficients `α^{1+q+…+q^{i-1}}` for `i = 0..m`.
pub(crate) fn pi_coefficients(ctx: &FieldCtx, alpha: Elt) -> Vec<Elt> {
    let mut out = Vec::with_capacity(ctx.m());
    let mut c = Elt::ONE;
    for i in 0..ctx.m() {
        out.push(c);
        c = ctx.mul(c, ctx.frobenius(alpha, i));
    }
    out
}

/// First element of norm `a`, used as the α of π_a and J_a.
pub fn norm_representative(ctx: &FieldCtx, a: Elt) -> Result<Elt> {
    Ok(ctx.norm_fiber(a)?[0])
}

/// `(1, α, α^{1+q}, …, α^{1+…+q^{m-2}})` with N(α) = a.
pub fn pi_representative(ctx: &FieldCtx, a: Elt) -> Result<Word> {
    let alpha = norm_representative(ctx, a)?;
    Ok(Word(pi_coefficients(ctx, alpha)))
}

/// `(1, 0, …, 0, -α)` with N(α) = b.
pub fn j_representative(ctx: &FieldCtx, b: Elt) -> Result<Word> {
    let alpha = norm_representative(ctx, b)?;
    let m = ctx.m();
    let mut w = Word::unit(m, 0, Elt::ONE);
    w.0[m - 1] = ctx.neg(alpha);
    Ok(w)
}

/// π_a = {(λx, λαx^q, λα^{1+q}x^{q²}, …)} over λ, x ≠ 0, with N(α) = a.
pub fn build_pi(ctx: &FieldCtx, a: Elt) -> Result<IndexSet<Word>> {
    Ok(singer_orbit(ctx, &pi_representative(ctx, a)?))
}

/// J_b = {(λx, 0, …, 0, -λαx^{q^{m-1}})} over λ, x ≠ 0, with N(α) = b.
pub fn build_j(ctx: &FieldCtx, b: Elt) -> Result<IndexSet<Word>> {
    Ok(singer_orbit(ctx, &j_representative(ctx, b)?))
}

/// A_1 = {(x, 0, …, 0)} for `axis == 1`, A_2 = {(0, …, 0, x)} for
/// `axis == 2`, x ≠ 0.
pub fn build_axis(ctx: &FieldCtx, axis: usize) -> Result<IndexSet<Word>> {
    let m = ctx.m();
    let pos = match axis {
        1 => 0,
        2 => m - 1,
        _ => return Err(Error::InvalidParameter(format!("axis must be 1 or 2, got {axis}"))),
    };
    Ok(ctx.units().map(|x| Word::unit(m, pos, x)).collect())
}

/// Checks and canonicalizes a parameter set I ⊆ F_q \ {0, 1}: sorted in
/// F_q order, duplicates removed.
pub fn normalize_set(ctx: &FieldCtx, set: &[Elt]) -> Result<Vec<Elt>> {
    let mut out: Vec<Elt> = Vec::new();
    for &a in set {
        if !ctx.in_fq(a) || a.is_zero() || a == Elt::ONE {
            return Err(Error::InvalidParameter(format!(
                "set element {} is not in F_q \\ {{0, 1}}",
                a.packed()
            )));
        }
        if !out.contains(&a) {
            out.push(a);
        }
    }
    out.sort_by_key(|&a| ctx.fq_index(a));
    Ok(out)
}

/// The family `Π_I ∪ Γ_I ∪ A_1 ∪ A_2 ∪ {0}` with claimed distance m - 1.
pub fn build_family(ctx: Arc<FieldCtx>, set: &[Elt]) -> Result<RankCode> {
    if ctx.q() <= 2 {
        return Err(Error::InvalidParameter("the family needs q > 2".into()));
    }
    let m = ctx.m();
    if m < 3 {
        return Err(Error::InvalidParameter("the family needs m >= 3".into()));
    }
    let set = normalize_set(&ctx, set)?;
    if set.is_empty() {
        warn!("empty parameter set: the family degenerates to the linear code {{(x, 0, …, 0, y)}}");
    }
    let mut entries: Vec<(Word, Component)> = Vec::with_capacity((ctx.order() as usize).pow(2));
    for &a in &set {
        entries.extend(build_pi(&ctx, a)?.into_iter().map(|w| (w, Component::Pi(a))));
    }
    for b in ctx.fq_units() {
        if set.contains(&b) {
            continue;
        }
        entries.extend(build_j(&ctx, b)?.into_iter().map(|w| (w, Component::J(b))));
    }
    entries.extend(build_axis(&ctx, 1)?.into_iter().map(|w| (w, Component::A1)));
    entries.extend(build_axis(&ctx, 2)?.into_iter().map(|w| (w, Component::A2)));
    entries.push((Word::zero(m), Component::Zero));
    RankCode::new(ctx, m - 1, set, entries)
}

/// Linear baseline: all words with `a_i = 0` for `i > m - s - 1`; size
/// q^{m(m-s)}, claimed distance s + 1.
pub fn build_gabidulin(ctx: Arc<FieldCtx>, s: usize) -> Result<RankCode> {
    let m = ctx.m();
    if s >= m {
        return Err(Error::InvalidParameter(format!("s must be < m = {m}, got {s}")));
    }
    let k = m - s;
    let elems: Vec<Elt> = ctx.elements().collect();
    let n = elems.len() as u64;
    let total = n
        .checked_pow(k as u32)
        .filter(|&t| t <= 1 << 26)
        .ok_or(Error::TooLarge {
            order: None,
            bound: 1 << 26,
        })?;
    let entries = (0..total).map(|mut idx| {
        let mut w = Word::zero(m);
        for slot in w.0.iter_mut().take(k) {
            *slot = elems[(idx % n) as usize];
            idx /= n;
        }
        let tag = if w.is_zero() {
            Component::Zero
        } else {
            Component::Other
        };
        (w, tag)
    });
    RankCode::new(ctx.clone(), s + 1, Vec::new(), entries)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMode {
    BruteForce,
    Orbit,
}

type Generator = Arc<dyn Fn(&FieldCtx, &Word) -> Word + Send + Sync>;

/// A group of rank-distance isometries given by generators.
#[derive(Clone)]
pub struct SymmetryGroup {
    generators: Vec<Generator>,
}

impl SymmetryGroup {
    pub fn new(generators: Vec<Generator>) -> SymmetryGroup {
        SymmetryGroup { generators }
    }

    /// The Singer pairs `(σ^i, σ^j)`: generated by `λ = g` and by `x = g`.
    pub fn singer() -> SymmetryGroup {
        SymmetryGroup::new(vec![
            Arc::new(|ctx: &FieldCtx, w: &Word| singer_act(ctx, w, ctx.generator(), Elt::ONE)),
            Arc::new(|ctx: &FieldCtx, w: &Word| singer_act(ctx, w, Elt::ONE, ctx.generator())),
        ])
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Partitions the code into orbits (lists of word indices, first entry is
    /// the representative). Fails if some orbit leaves the code.
    pub fn orbits(&self, code: &RankCode) -> Result<Vec<Vec<usize>>> {
        let ctx = code.ctx();
        let mut seen = vec![false; code.len()];
        let mut out = Vec::new();
        for start in 0..code.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let w = code.word(orbit[k]).clone();
                for g in &self.generators {
                    let img = g(ctx, &w);
                    let Some(idx) = code.words.get_index_of(&img) else {
                        return Err(Error::InvalidParameter(
                            "code is not invariant under the symmetry group".into(),
                        ));
                    };
                    if !seen[idx] {
                        seen[idx] = true;
                        orbit.push(idx);
                    }
                }
                k += 1;
            }
            out.push(orbit);
        }
        Ok(out)
    }
}

fn rank_between(ctx: &FieldCtx, a: &Word, b: &Word) -> usize {
    rank(ctx, &a.sub(ctx, b))
}

/// Minimum rank distance over distinct pairs.
pub fn min_distance(code: &RankCode, mode: DistanceMode) -> Result<usize> {
    min_distance_with(code, mode, &SymmetryGroup::singer())
}

/// [`min_distance`] with an explicit group for orbit mode. Falls back to
/// brute force (with a warning) when the code is not invariant.
pub fn min_distance_with(code: &RankCode, mode: DistanceMode, group: &SymmetryGroup) -> Result<usize> {
    if code.len() < 2 {
        return Err(Error::TooFewWords);
    }
    let ctx = code.ctx();
    let words: Vec<&Word> = code.words().collect();
    match mode {
        DistanceMode::BruteForce => Ok(brute_force_min(ctx, &words)),
        DistanceMode::Orbit => match group.orbits(code) {
            Ok(orbits) => Ok(orbits
                .iter()
                .map(|o| {
                    let r = o[0];
                    (0..words.len())
                        .into_par_iter()
                        .filter(|&j| j != r)
                        .map(|j| rank_between(ctx, words[r], words[j]))
                        .min()
                        .unwrap()
                })
                .min()
                .unwrap()),
            Err(_) => {
                warn!("code is not orbit-invariant; falling back to brute force");
                Ok(brute_force_min(ctx, &words))
            }
        },
    }
}

fn brute_force_min(ctx: &FieldCtx, words: &[&Word]) -> usize {
    (0..words.len())
        .into_par_iter()
        .filter_map(|i| {
            words[i + 1..]
                .iter()
                .map(|w| rank_between(ctx, words[i], w))
                .min()
        })
        .min()
        .unwrap_or(usize::MAX)
}

/// Brute-force minimum distance among the given word indices only.
pub fn min_distance_among(code: &RankCode, indices: &[usize]) -> Result<usize> {
    if indices.len() < 2 {
        return Err(Error::TooFewWords);
    }
    let words: Vec<&Word> = indices.iter().map(|&i| code.word(i)).collect();
    Ok(brute_force_min(code.ctx(), &words))
}

/// Minimum over `i` in `indices` and all other code words `v` of
/// rank(word_i - v), by brute force.
pub fn min_distance_from(code: &RankCode, indices: &[usize]) -> Result<usize> {
    if code.len() < 2 {
        return Err(Error::TooFewWords);
    }
    let ctx = code.ctx();
    Ok(indices
        .par_iter()
        .map(|&i| {
            let u = code.word(i);
            code.words()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| rank_between(ctx, u, v))
                .min()
                .unwrap()
        })
        .min()
        .unwrap_or(usize::MAX))
}

/// Histogram of rank(w1 - w2) over unordered pairs of distinct words.
pub fn distance_distribution(code: &RankCode, mode: DistanceMode) -> BTreeMap<usize, u64> {
    distance_distribution_with(code, mode, &SymmetryGroup::singer())
}

pub fn distance_distribution_with(
    code: &RankCode,
    mode: DistanceMode,
    group: &SymmetryGroup,
) -> BTreeMap<usize, u64> {
    let ctx = code.ctx();
    let m = ctx.m();
    let words: Vec<&Word> = code.words().collect();
    let add = |mut a: Vec<u64>, b: Vec<u64>| {
        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        a
    };
    let counts = match (mode, group.orbits(code)) {
        (DistanceMode::Orbit, Ok(orbits)) => {
            // each unordered pair is seen twice across all (rep, other) pairs
            // after weighting by orbit size
            let doubled = orbits
                .par_iter()
                .map(|o| {
                    let r = o[0];
                    let mut h = vec![0u64; m + 1];
                    for (j, w) in words.iter().enumerate() {
                        if j != r {
                            h[rank_between(ctx, words[r], w)] += o.len() as u64;
                        }
                    }
                    h
                })
                .reduce(|| vec![0u64; m + 1], add);
            doubled.into_iter().map(|c| c / 2).collect()
        }
        (mode, orbits) => {
            if mode == DistanceMode::Orbit && orbits.is_err() {
                warn!("code is not orbit-invariant; falling back to brute force");
            }
            (0..words.len())
                .into_par_iter()
                .map(|i| {
                    let mut h = vec![0u64; m + 1];
                    for w in &words[i + 1..] {
                        h[rank_between(ctx, words[i], w)] += 1;
                    }
                    h
                })
                .reduce(|| vec![0u64; m + 1], add)
        }
    };
    counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MrdReport {
    pub size: usize,
    pub claimed_distance: usize,
    /// Singleton-like bound for the claimed distance, as a decimal string
    /// (it can exceed 64 bits).
    pub singleton_bound: String,
    pub min_distance: Option<usize>,
    pub mrd: bool,
}

/// Size against the Singleton-like bound and the exact minimum distance.
pub fn verify_mrd(code: &RankCode, mode: DistanceMode) -> MrdReport {
    let bound = code.singleton_bound();
    let min_distance = min_distance(code, mode).ok();
    let mrd = code.len() as u128 == bound && min_distance == Some(code.claimed_distance);
    MrdReport {
        size: code.len(),
        claimed_distance: code.claimed_distance,
        singleton_bound: bound.to_string(),
        min_distance,
        mrd,
    }
}

/// F_q-dimension of the span of the code words.
pub fn span_dimension(code: &RankCode) -> usize {
    let ctx = code.ctx();
    let mut span = fp::Span::new(ctx.p());
    for w in code.words() {
        span.insert(&w.digits(ctx));
        if span.dim() == ctx.degree() * ctx.m() {
            break;
        }
    }
    span.dim() / ctx.h()
}

/// Finds `(w1, w2, c)` with `w1 + c·w2` outside the code, or `None` when the
/// code is an F_q-subspace.
///
/// Tries the pair shape `w1 ∈ A_2`, `w2 ∈ π_a` first, then all pairs of
/// distinct words in code order.
pub fn linearity_witness(code: &RankCode) -> Option<(Word, Word, Elt)> {
    let ctx = code.ctx();
    let dim = span_dimension(code);
    if (code.q() as u128).checked_pow(dim as u32) == Some(code.len() as u128) {
        return None;
    }
    let units = ctx.fq_units();
    let try_pair = |u: &Word, v: &Word| {
        units
            .iter()
            .find(|&&c| !code.contains(&u.add(ctx, &v.scale(ctx, c))))
            .map(|&c| (u.clone(), v.clone(), c))
    };
    let a2 = code.entries().filter(|(_, t)| **t == Component::A2);
    for (u, _) in a2 {
        let pis = code.entries().filter(|(_, t)| matches!(t, Component::Pi(_)));
        for (v, _) in pis {
            if let Some(w) = try_pair(u, v) {
                return Some(w);
            }
        }
    }
    let words: Vec<&Word> = code.words().collect();
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            if let Some(w) = try_pair(u, v).or_else(|| try_pair(v, u)) {
                return Some(w);
            }
        }
    }
    // only reachable for a code missing zero with fewer than two words
    words.first().and_then(|u| try_pair(u, u))
}

/// One pairwise-rank inequality checked over a family of word pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCheck {
    pub name: String,
    pub pairs: u64,
    pub min_rank: Option<usize>,
    pub bound: usize,
    /// `true` when the check asks for exact equality with `bound`.
    pub exact: bool,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    /// Every pair.
    Exhaustive,
    /// One representative of the first set against all of the second.
    Representatives,
}

struct Sets {
    pi: Vec<(Elt, IndexSet<Word>)>,
    j: Vec<(Elt, IndexSet<Word>)>,
    a1: IndexSet<Word>,
    a2: IndexSet<Word>,
}

fn pair_check(
    ctx: &FieldCtx,
    name: String,
    xs: &IndexSet<Word>,
    ys: &IndexSet<Word>,
    same: bool,
    coverage: Coverage,
    bound: usize,
) -> RankCheck {
    let m = ctx.m();
    let firsts: Vec<&Word> = match coverage {
        Coverage::Exhaustive => xs.iter().collect(),
        Coverage::Representatives => xs.iter().take(1).collect(),
    };
    let ys: Vec<&Word> = ys.iter().collect();
    let (pairs, min_rank) = firsts
        .par_iter()
        .enumerate()
        .map(|(i, u)| {
            // within one set only unordered distinct pairs
            let others: &[&Word] = if same && coverage == Coverage::Exhaustive {
                &ys[i + 1..]
            } else {
                &ys
            };
            others
                .iter()
                .filter(|v| *v != u)
                .fold((0u64, m + 1), |(n, lo), v| {
                    (n + 1, lo.min(rank_between(ctx, u, v)))
                })
        })
        .reduce(|| (0, m + 1), |a, b| (a.0 + b.0, a.1.min(b.1)));
    let min_rank = (pairs > 0).then_some(min_rank);
    RankCheck {
        name,
        pairs,
        min_rank,
        bound,
        exact: false,
        pass: min_rank.is_none_or(|r| r >= bound),
    }
}

fn rank_check(ctx: &FieldCtx, name: &str, ws: &IndexSet<Word>, expected: usize, exact: bool) -> RankCheck {
    let ranks: Vec<usize> = ws.par_iter().map(|w| rank(ctx, w)).collect();
    let min_rank = ranks.iter().copied().min();
    let pass = ranks
        .iter()
        .all(|&r| if exact { r == expected } else { r >= expected });
    RankCheck {
        name: name.to_string(),
        pairs: ranks.len() as u64,
        min_rank,
        bound: expected,
        exact,
        pass,
    }
}

/// Checks every pairwise-rank inequality behind the family's minimum
/// distance: π vs π (parameters outside {0, 1}), J vs J, π vs J (distinct
/// parameters), A_1 vs A_2, π vs A_i, J vs A_i, plus the single-word rank
/// facts (π_1 has rank 1, A_i have rank m, `(x, 0, …, 0, y)` has rank at
/// least m - 1).
pub fn verify_rank_lemmas(ctx: &FieldCtx, coverage: Coverage) -> Result<Vec<RankCheck>> {
    let m = ctx.m();
    let units = ctx.fq_units();
    let sets = Sets {
        pi: units
            .iter()
            .map(|&a| Ok((a, build_pi(ctx, a)?)))
            .collect::<Result<_>>()?,
        j: units
            .iter()
            .map(|&b| Ok((b, build_j(ctx, b)?)))
            .collect::<Result<_>>()?,
        a1: build_axis(ctx, 1)?,
        a2: build_axis(ctx, 2)?,
    };
    let lbl = |a: Elt| fq_label(ctx, a);
    let mut out = Vec::new();

    out.push(rank_check(ctx, "rank(pi_1) = 1", &sets.pi[0].1, 1, true));
    out.push(rank_check(ctx, "rank(A_1) = m", &sets.a1, m, true));
    out.push(rank_check(ctx, "rank(A_2) = m", &sets.a2, m, true));
    let line: IndexSet<Word> = ctx
        .elements()
        .flat_map(|x| {
            ctx.elements().map(move |y| {
                let mut w = Word::zero(m);
                w.0[0] = x;
                w.0[m - 1] = y;
                w
            })
        })
        .filter(|w| !w.is_zero())
        .collect();
    out.push(rank_check(ctx, "rank(x,0,...,0,y) >= m-1", &line, m - 1, false));

    let nontrivial: Vec<&(Elt, IndexSet<Word>)> =
        sets.pi.iter().filter(|(a, _)| *a != Elt::ONE).collect();
    for (i, (a, pa)) in nontrivial.iter().enumerate() {
        for (b, pb) in &nontrivial[i..] {
            out.push(pair_check(
                ctx,
                format!("pi_{} vs pi_{}", lbl(*a), lbl(*b)),
                pa,
                pb,
                a == b,
                coverage,
                m - 1,
            ));
        }
    }
    for (i, (a, ja)) in sets.j.iter().enumerate() {
        for (b, jb) in &sets.j[i..] {
            out.push(pair_check(
                ctx,
                format!("J_{} vs J_{}", lbl(*a), lbl(*b)),
                ja,
                jb,
                a == b,
                coverage,
                m - 1,
            ));
        }
    }
    for (a, pa) in &sets.pi {
        for (b, jb) in &sets.j {
            if a == b {
                continue;
            }
            out.push(pair_check(
                ctx,
                format!("pi_{} vs J_{}", lbl(*a), lbl(*b)),
                pa,
                jb,
                false,
                coverage,
                m - 1,
            ));
        }
    }
    out.push(pair_check(
        ctx,
        "A_1 vs A_2".into(),
        &sets.a1,
        &sets.a2,
        false,
        coverage,
        m - 1,
    ));
    for (a, pa) in &nontrivial {
        for (name, ax) in [("A_1", &sets.a1), ("A_2", &sets.a2)] {
            out.push(pair_check(
                ctx,
                format!("pi_{} vs {name}", lbl(*a)),
                pa,
                ax,
                false,
                coverage,
                m - 1,
            ));
        }
    }
    for (b, jb) in &sets.j {
        for (name, ax) in [("A_1", &sets.a1), ("A_2", &sets.a2)] {
            out.push(pair_check(
                ctx,
                format!("J_{} vs {name}", lbl(*b)),
                jb,
                ax,
                false,
                coverage,
                m - 1,
            ));
        }
    }
    Ok(out)
}
