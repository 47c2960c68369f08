//! Structural invariants: series, centralizers, Frattini, power and
//! omega subgroups, generator counts, abelian invariants and p-group
//! predicates.
//!
//! Operations take the group `g` together with the subgroup they act
//! on; passing `g.whole()` computes the invariant of `g` itself.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::lattice::{all_subgroups, SubgroupLattice};

/// Smallest subgroup of `ambient` that contains `seed` and is normalized
/// by `ambient`.
pub fn normal_closure(g: &FiniteGroup, seed: &[Elem], ambient: &Subgroup) -> Result<Subgroup> {
    let start = g.closure(seed)?;
    Ok(normal_closure_of(g, start, ambient))
}

/// Closes `k` under conjugation by the generators of `ambient`.
pub(crate) fn normal_closure_of(g: &FiniteGroup, mut k: Subgroup, ambient: &Subgroup) -> Subgroup {
    let conj_by: Vec<(Elem, Elem)> = ambient.gens().iter().map(|&a| (g.inv(a), a)).collect();
    let mut pos = 0;
    while pos < k.gens().len() {
        let x = k.gens()[pos];
        for &(ai, a) in &conj_by {
            let c = g.mul(g.mul(ai, x), a);
            if !k.contains(c) {
                k = g.extend(&k, &[c]);
            }
        }
        pos += 1;
    }
    k
}

/// `[A, B]` for subgroups normalized by `ambient`: the normal closure in
/// `ambient` of the commutators of their generators.
pub fn commutator_subgroup(g: &FiniteGroup, a: &Subgroup, b: &Subgroup, ambient: &Subgroup) -> Subgroup {
    let mut k = g.trivial();
    for &x in a.gens() {
        for &y in b.gens() {
            let c = g.comm(x, y);
            if !k.contains(c) {
                k = g.extend(&k, &[c]);
            }
        }
    }
    normal_closure_of(g, k, ambient)
}

/// `H'`.
pub fn derived_subgroup(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    commutator_subgroup(g, h, h, h)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    Derived,
    LowerCentral,
}

/// A descending series, listed until it stabilizes.
#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
    /// Number of strict steps; this is `dl` or `cl` when
    /// `reaches_trivial` holds.
    pub length: usize,
    pub reaches_trivial: bool,
}

impl SeriesReport {
    /// The `i`-th term, 1-based (`term(1)` is the group); the stable last
    /// term is repeated beyond the listed range.
    pub fn term(&self, i: usize) -> &Subgroup {
        let idx = i.max(1) - 1;
        &self.terms[idx.min(self.terms.len() - 1)]
    }

    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }
}

pub fn derived_series(g: &FiniteGroup, h: &Subgroup) -> SeriesReport {
    let mut terms = vec![h.clone()];
    loop {
        let last = terms.last().unwrap();
        let next = derived_subgroup(g, last);
        if next.order() == last.order() {
            break;
        }
        terms.push(next);
    }
    finish_series(SeriesKind::Derived, terms)
}

/// `K_1 = H`, `K_{i+1} = [K_i, H]`.
pub fn lower_central_series(g: &FiniteGroup, h: &Subgroup) -> SeriesReport {
    let mut terms = vec![h.clone()];
    loop {
        let last = terms.last().unwrap();
        let next = commutator_subgroup(g, last, h, h);
        if next.order() == last.order() {
            break;
        }
        terms.push(next);
    }
    finish_series(SeriesKind::LowerCentral, terms)
}

fn finish_series(kind: SeriesKind, terms: Vec<Subgroup>) -> SeriesReport {
    let reaches_trivial = terms.last().unwrap().is_trivial();
    SeriesReport {
        kind,
        length: terms.len() - 1,
        terms,
        reaches_trivial,
    }
}

fn filter_subgroup(g: &FiniteGroup, h: &Subgroup, keep: impl Fn(Elem) -> bool) -> Subgroup {
    let mut members = BitSet::new(g.order());
    for x in h.iter() {
        if keep(x) {
            members.insert(x.index());
        }
    }
    g.subgroup_from_members(members)
}

/// `Z(H)`.
pub fn center(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    centralizer(g, h, h)
}

/// Elements of `ambient` commuting with every element of `s`.
pub fn centralizer(g: &FiniteGroup, s: &Subgroup, ambient: &Subgroup) -> Subgroup {
    let gens = s.gens().to_vec();
    filter_subgroup(g, ambient, |x| gens.iter().all(|&y| g.commutes(x, y)))
}

/// Elements of `ambient` normalizing `h`.
pub fn normalizer(g: &FiniteGroup, h: &Subgroup, ambient: &Subgroup) -> Result<Subgroup> {
    h.same_parent(ambient)?;
    let gens = h.gens().to_vec();
    Ok(filter_subgroup(g, ambient, |a| {
        let ai = g.inv(a);
        gens.iter().all(|&x| h.contains(g.mul(g.mul(ai, x), a)))
    }))
}

/// The prime `p` if `n = p^k` with `k >= 1`.
pub fn prime_of_power(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    (m == 1).then_some(p)
}

/// `log_p(n)` for a power `n` of `p`.
pub fn log_p(n: usize, p: usize) -> u32 {
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        m /= p;
        k += 1;
    }
    k
}

/// The prime of a non-trivial p-subgroup.
pub fn p_of(h: &Subgroup) -> Result<usize> {
    prime_of_power(h.order()).ok_or(Error::NotPGroup(h.order()))
}

/// `Phi(H) = H' H^p` for a p-group `H`.
pub fn frattini(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    if h.is_trivial() {
        return Ok(h.clone());
    }
    let p = p_of(h)? as u64;
    let d = derived_subgroup(g, h);
    let powers: Vec<Elem> = h.gens().iter().map(|&x| g.pow(x, p)).collect();
    Ok(g.extend(&d, &powers))
}

/// Order of `x` in a group whose order is a power of `p`.
pub fn p_order(g: &FiniteGroup, x: Elem, p: u64) -> u64 {
    let mut y = x;
    let mut k = 1;
    while !y.is_identity() {
        y = g.pow(y, p);
        k *= p;
    }
    k
}

/// `Omega_s(H) = <x in H : x^{p^s} = 1>`.
pub fn omega(g: &FiniteGroup, h: &Subgroup, s: u32) -> Result<Subgroup> {
    if h.is_trivial() {
        return Ok(h.clone());
    }
    let p = p_of(h)? as u64;
    let q = p.pow(s);
    let seed: Vec<Elem> = h.iter().filter(|&x| g.pow(x, q).is_identity()).collect();
    g.closure(&seed)
}

/// `Agemo_s(H) = <x^{p^s} : x in H>`.
pub fn agemo(g: &FiniteGroup, h: &Subgroup, s: u32) -> Result<Subgroup> {
    if h.is_trivial() {
        return Ok(h.clone());
    }
    let p = p_of(h)? as u64;
    let q = p.pow(s);
    let mut k = g.trivial();
    for x in h.iter() {
        let y = g.pow(x, q);
        if !k.contains(y) {
            k = g.extend(&k, &[y]);
        }
    }
    Ok(k)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OmegaAgemo {
    Omega,
    Agemo,
}

pub fn omega_agemo(g: &FiniteGroup, h: &Subgroup, s: u32, which: OmegaAgemo) -> Result<Subgroup> {
    match which {
        OmegaAgemo::Omega => omega(g, h, s),
        OmegaAgemo::Agemo => agemo(g, h, s),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `exp(H)`.
pub fn exponent(g: &FiniteGroup, h: &Subgroup) -> u64 {
    if let Some(p) = prime_of_power(h.order()) {
        return h.iter().map(|x| p_order(g, x, p as u64)).max().unwrap_or(1);
    }
    h.iter().fold(1u64, |acc, x| {
        let o = g.order_of(x) as u64;
        acc / gcd(acc, o) * o
    })
}

/// Least `k >= 1` with `x^k` in `b`.
pub fn order_modulo(g: &FiniteGroup, x: Elem, b: &Subgroup) -> u64 {
    let mut y = x;
    let mut k = 1;
    while !b.contains(y) {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

/// `exp(A/B)` for `B` normal in `A`.
pub fn quotient_exponent(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> u64 {
    a.iter().fold(1u64, |acc, x| {
        let o = order_modulo(g, x, b);
        acc / gcd(acc, o) * o
    })
}

/// Invariant factors `d_1 | d_2 | ... | d_k` of an abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianType {
    pub invariant_factors: Vec<u64>,
}

impl AbelianType {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank() <= 1
    }

    /// All factors equal to `p`.
    pub fn is_elementary(&self, p: u64) -> bool {
        self.invariant_factors.iter().all(|&d| d == p)
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
}

impl std::fmt::Display for AbelianType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.invariant_factors.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Number of elements of each order in an abelian group of the given
/// invariant factors.
fn order_counts_of_type(factors: &[u64]) -> HashMap<u64, u64> {
    let mut counts: HashMap<u64, u64> = HashMap::from([(1, 1)]);
    for &d in factors {
        let mut next = HashMap::new();
        for (&o, &c) in &counts {
            for e in 0..d {
                let oe = d / gcd(d, e);
                let l = o / gcd(o, oe) * oe;
                *next.entry(l).or_insert(0) += c;
            }
        }
        counts = next;
    }
    counts
}

/// Invariant factors of an abelian subgroup, peeling off a cyclic factor
/// of maximal order at each step. Checked against element-order counts.
pub fn abelian_type(g: &FiniteGroup, h: &Subgroup) -> Result<AbelianType> {
    if !h.is_abelian(g) {
        return Err(Error::NotAbelian);
    }
    let mut k = g.trivial();
    let mut factors = Vec::new();
    while k.order() < h.order() {
        let (x, o) = h
            .iter()
            .map(|x| (x, order_modulo(g, x, &k)))
            .max_by_key(|&(x, o)| (o, std::cmp::Reverse(x)))
            .unwrap();
        factors.push(o);
        k = g.extend(&k, &[x]);
    }
    factors.reverse();
    let mut actual: HashMap<u64, u64> = HashMap::new();
    for x in h.iter() {
        *actual.entry(g.order_of(x) as u64).or_insert(0) += 1;
    }
    assert_eq!(
        actual,
        order_counts_of_type(&factors),
        "peeled invariant factors disagree with element orders"
    );
    Ok(AbelianType {
        invariant_factors: factors,
    })
}

/// Tries to generate `h` with `k` elements, visiting at most `budget`
/// candidate tuples. Candidates are taken in decreasing element order.
fn generated_by_k(g: &FiniteGroup, h: &Subgroup, k: usize, budget: &mut usize) -> Result<bool> {
    let mut cands: Vec<Elem> = h.iter().filter(|x| !x.is_identity()).collect();
    cands.sort_by_key(|&x| std::cmp::Reverse(g.order_of(x)));
    fn rec(
        g: &FiniteGroup,
        h: &Subgroup,
        cands: &[Elem],
        from: usize,
        left: usize,
        acc: &Subgroup,
        budget: &mut usize,
    ) -> Result<bool> {
        if left == 0 {
            return Ok(acc.order() == h.order());
        }
        for i in from..cands.len() {
            if acc.contains(cands[i]) {
                continue;
            }
            if *budget == 0 {
                return Err(Error::SearchBudgetExceeded(0));
            }
            *budget -= 1;
            let next = g.extend(acc, &[cands[i]]);
            if rec(g, h, cands, i + 1, left - 1, &next, budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
    rec(g, h, &cands, 0, k, &g.trivial(), budget)
}

/// Default number of closures the generator search may perform.
pub const GENERATOR_SEARCH_BUDGET: usize = 200_000;

/// `d(H)`: Burnside basis count for p-groups, bounded search otherwise.
pub fn min_generators(g: &FiniteGroup, h: &Subgroup) -> Result<usize> {
    if h.is_trivial() {
        return Ok(0);
    }
    if let Some(p) = prime_of_power(h.order()) {
        let phi = frattini(g, h)?;
        return Ok(log_p(h.order() / phi.order(), p) as usize);
    }
    min_generators_by_search(g, h, GENERATOR_SEARCH_BUDGET)
}

/// Smallest `k` such that some `k` elements generate `h`.
pub fn min_generators_by_search(g: &FiniteGroup, h: &Subgroup, budget: usize) -> Result<usize> {
    if h.is_trivial() {
        return Ok(0);
    }
    let mut left = budget;
    for k in 1.. {
        match generated_by_k(g, h, k, &mut left) {
            Ok(true) => return Ok(k),
            Ok(false) => {}
            Err(_) => return Err(Error::SearchBudgetExceeded(budget)),
        }
    }
    unreachable!()
}

/// Hall's test: `(xy)^p` lies in `x^p y^p Agemo_1(<x,y>')` for all `x, y`.
/// Returns a failing pair if there is one.
pub fn regularity_witness(g: &FiniteGroup, h: &Subgroup) -> Result<Option<(Elem, Elem)>> {
    if h.is_trivial() {
        return Ok(None);
    }
    let p = p_of(h)? as u64;
    let elems: Vec<Elem> = h.iter().collect();
    let pth: Vec<Elem> = {
        let mut v = vec![Elem::IDENTITY; g.order()];
        for &x in &elems {
            v[x.index()] = g.pow(x, p);
        }
        v
    };
    let mut memo: HashMap<BitSet, Subgroup> = HashMap::new();
    for &x in &elems {
        for &y in &elems {
            let lhs = pth[g.mul(x, y).index()];
            let rhs = g.mul(pth[x.index()], pth[y.index()]);
            if lhs == rhs {
                continue;
            }
            // w = (x^p y^p)^-1 (xy)^p must lie in Agemo_1(<x,y>').
            let w = g.mul(g.inv(rhs), lhs);
            let xy = g.closure(&[x, y])?;
            let ag = match memo.get(xy.members()) {
                Some(a) => a.clone(),
                None => {
                    let a = agemo(g, &derived_subgroup(g, &xy), 1).unwrap_or_else(|_| g.trivial());
                    memo.insert(xy.members().clone(), a.clone());
                    a
                }
            };
            if !ag.contains(w) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

pub fn is_regular(g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    Ok(regularity_witness(g, h)?.is_none())
}

/// `(xy)^p = x^p y^p` for all `x, y`; returns a failing pair if any.
pub fn p_abelian_witness(g: &FiniteGroup, h: &Subgroup) -> Result<Option<(Elem, Elem)>> {
    if h.is_trivial() {
        return Ok(None);
    }
    let p = p_of(h)? as u64;
    let mut pth = vec![Elem::IDENTITY; g.order()];
    for x in h.iter() {
        pth[x.index()] = g.pow(x, p);
    }
    for x in h.iter() {
        for y in h.iter() {
            if pth[g.mul(x, y).index()] != g.mul(pth[x.index()], pth[y.index()]) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// `{g : [K_2, g] <= K_4}` (generators of `K_2` suffice since
/// `[K_3, K_2] <= K_4`).
pub fn fundamental_subgroup(g: &FiniteGroup, h: &Subgroup, lcs: &SeriesReport) -> Subgroup {
    let k2 = lcs.term(2).clone();
    let k4 = lcs.term(4).clone();
    filter_subgroup(g, h, |x| k2.gens().iter().all(|&y| k4.contains(g.comm(y, x))))
}

#[derive(Clone, Debug)]
pub struct PGroupProfile {
    pub p: usize,
    pub n: u32,
    pub is_regular: bool,
    pub is_p_abelian: bool,
    pub is_metabelian: bool,
    pub is_minimal_nonabelian: bool,
    pub is_maximal_class: bool,
    /// Present for groups of maximal class with `n >= 4`.
    pub fundamental_subgroup: Option<Subgroup>,
    pub d: usize,
    pub cl: usize,
    pub dl: usize,
    pub exponent: u64,
}

/// All p-group predicates of `h`. `maximals` must list the maximal
/// subgroups of `h`.
pub fn p_group_profile(g: &FiniteGroup, h: &Subgroup, maximals: &[Subgroup]) -> Result<PGroupProfile> {
    let p = p_of(h)?;
    let n = log_p(h.order(), p);
    let lcs = lower_central_series(g, h);
    let ds = derived_series(g, h);
    let abelian = h.is_abelian(g);
    let cl = lcs.length;
    let is_maximal_class = n >= 2 && cl as u32 == n - 1;
    Ok(PGroupProfile {
        p,
        n,
        is_regular: is_regular(g, h)?,
        is_p_abelian: p_abelian_witness(g, h)?.is_none(),
        is_metabelian: ds.length <= 2,
        is_minimal_nonabelian: !abelian && maximals.iter().all(|m| m.is_abelian(g)),
        is_maximal_class,
        fundamental_subgroup: (is_maximal_class && n >= 4).then(|| fundamental_subgroup(g, h, &lcs)),
        d: min_generators(g, h)?,
        cl,
        dl: ds.length,
        exponent: exponent(g, h),
    })
}

/// A normal Sylow subgroup with a complement.
#[derive(Clone, Debug)]
pub struct SylowSplit {
    pub sylow: Subgroup,
    pub complement: Subgroup,
    pub complement_abelian: bool,
}

/// `p`-part of `n`.
pub fn p_part(n: usize, p: usize) -> usize {
    let mut q = 1;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        q *= p;
    }
    q
}

/// `G = P ⋊ A` with `P` the normal Sylow `p`-subgroup, read off a lattice.
/// An abelian complement is preferred when there are several.
pub fn sylow_decomposition_in(g: &FiniteGroup, p: usize, lattice: &SubgroupLattice) -> Result<Option<SylowSplit>> {
    if lattice.parent_uid() != g.uid() {
        return Err(Error::ParentMismatch);
    }
    let q = p_part(g.order(), p);
    let sylows: Vec<&Subgroup> = lattice.iter().filter(|h| h.order() == q).collect();
    // Sylow subgroups are conjugate, so a normal one is the only one.
    if sylows.len() != 1 {
        return Ok(None);
    }
    let sylow = sylows[0].clone();
    let complements: Vec<&Subgroup> = lattice
        .iter()
        .filter(|a| a.order() == g.order() / q && a.members().intersection(sylow.members()).count() == 1)
        .collect();
    let pick = complements
        .iter()
        .find(|a| a.is_abelian(g))
        .or_else(|| complements.first());
    Ok(pick.map(|a| SylowSplit {
        sylow: sylow.clone(),
        complement: (*a).clone(),
        complement_abelian: a.is_abelian(g),
    }))
}

/// As [`sylow_decomposition_in`], enumerating the lattice of `g` first.
pub fn sylow_decomposition(g: &FiniteGroup, p: usize, cap: usize) -> Result<Option<SylowSplit>> {
    sylow_decomposition_in(g, p, &all_subgroups(g, cap)?)
}
