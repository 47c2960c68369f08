//! Polycyclic presentations of finite p-groups: collection to normal form,
//! overlap consistency checks, and realization as a [`FiniteGroup`].
//!
//! Generators `g_1, ..., g_n` carry relative orders `o_i`. Every element has
//! a unique normal form `g_1^{e_1} ... g_n^{e_n}` with `0 <= e_i < o_i` when
//! the presentation is consistent. Relations are stored as
//! `g_i^{o_i} = w_i` (power rules, `w_i` in generators after `i`) and
//! `[g_j, g_i] = w_{ji}` for `j > i` (commutator rules, `w_{ji}` in
//! generators after `j`). Brackets follow `[x, y] = x^-1 y^-1 x y`, so
//! `g_j^{g_i} = g_j [g_j, g_i]`.
//!
//! Generator indices are 0-based in this API.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Backend, Elem, FiniteGroup, UNIVERSE_CAP};

/// Rewrite steps allowed for a single collection.
pub const STEP_BOUND: u64 = 10_000_000;

/// Largest number of generators accepted.
pub const MAX_GENERATORS: usize = 12;

/// A word with non-negative exponents: `(generator, exponent)` syllables.
pub type PcWord = Vec<(usize, u32)>;

/// Exponent vector of a normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NormalForm(pub Vec<u32>);

impl NormalForm {
    pub fn identity(n: usize) -> Self {
        NormalForm(vec![0; n])
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn syllables(&self) -> PcWord {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcPresentation {
    prime: u32,
    rel_orders: Vec<u32>,
    power_rules: Vec<PcWord>,
    comm_rules: BTreeMap<(usize, usize), PcWord>,
}

fn prime_power_base(n: u32) -> Option<u32> {
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

impl PcPresentation {
    /// Presentation with the given relative orders and all rules trivial.
    pub fn new(rel_orders: Vec<u32>) -> Result<Self> {
        let n = rel_orders.len();
        if n == 0 || n > MAX_GENERATORS {
            return Err(Error::InvalidPresentation(format!(
                "generator count {n} outside 1..={MAX_GENERATORS}"
            )));
        }
        let mut prime = None;
        for (i, &o) in rel_orders.iter().enumerate() {
            let p = prime_power_base(o).ok_or_else(|| {
                Error::InvalidPresentation(format!(
                    "relative order {o} of generator {} is not a prime power",
                    i + 1
                ))
            })?;
            if *prime.get_or_insert(p) != p {
                return Err(Error::InvalidPresentation(
                    "relative orders involve more than one prime".into(),
                ));
            }
        }
        Ok(Self {
            prime: prime.unwrap(),
            power_rules: vec![Vec::new(); n],
            rel_orders,
            comm_rules: BTreeMap::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.rel_orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rel_orders.is_empty()
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn rel_orders(&self) -> &[u32] {
        &self.rel_orders
    }

    pub fn power_rule(&self, i: usize) -> &PcWord {
        &self.power_rules[i]
    }

    /// Word for `[g_j, g_i]`, `j > i`; empty means trivial.
    pub fn comm_rule(&self, j: usize, i: usize) -> &[(usize, u32)] {
        self.comm_rules.get(&(j, i)).map_or(&[], |w| w.as_slice())
    }

    pub fn comm_rules(&self) -> impl Iterator<Item = (&(usize, usize), &PcWord)> {
        self.comm_rules.iter()
    }

    /// Number of elements when consistent.
    pub fn order(&self) -> u128 {
        self.rel_orders.iter().map(|&o| o as u128).product()
    }

    fn check_word(&self, word: &[(usize, u32)], after: usize, what: &str) -> Result<()> {
        for &(k, e) in word {
            if k >= self.len() {
                return Err(Error::InvalidPresentation(format!(
                    "{what}: generator {} out of range",
                    k + 1
                )));
            }
            if k <= after {
                return Err(Error::InvalidPresentation(format!(
                    "{what}: generator {} must come after generator {}",
                    k + 1,
                    after + 1
                )));
            }
            if e >= self.rel_orders[k] {
                return Err(Error::InvalidPresentation(format!(
                    "{what}: exponent {e} of generator {} not below its relative order",
                    k + 1
                )));
            }
        }
        Ok(())
    }

    /// Sets `g_i^{o_i} = word`; the word may only use generators after `i`.
    pub fn set_power(&mut self, i: usize, word: PcWord) -> Result<()> {
        if i >= self.len() {
            return Err(Error::InvalidPresentation(format!("generator {} out of range", i + 1)));
        }
        self.check_word(&word, i, &format!("power rule of generator {}", i + 1))?;
        self.power_rules[i] = word.into_iter().filter(|&(_, e)| e != 0).collect();
        Ok(())
    }

    /// Sets `[g_j, g_i] = word` for `j > i`; the word may only use
    /// generators after `j`.
    pub fn set_commutator(&mut self, j: usize, i: usize, word: PcWord) -> Result<()> {
        if j <= i || j >= self.len() {
            return Err(Error::InvalidPresentation(format!(
                "commutator rule ({}, {}) needs {} > {}",
                j + 1,
                i + 1,
                j + 1,
                i + 1
            )));
        }
        self.check_word(&word, j, &format!("commutator rule [g{}, g{}]", j + 1, i + 1))?;
        let word: PcWord = word.into_iter().filter(|&(_, e)| e != 0).collect();
        if word.is_empty() {
            self.comm_rules.remove(&(j, i));
        } else {
            self.comm_rules.insert((j, i), word);
        }
        Ok(())
    }
}

/// Precomputed conjugates `(g_j^t)^(g_i^e)` as normal words.
#[derive(Debug)]
struct ChunkTables {
    // Indexed by [i][j][e][t]; only j > i, 1 <= e < o_i, 1 <= t < o_j are filled.
    words: Vec<Vec<Vec<Vec<PcWord>>>>,
}

/// Collection from the left over a fixed presentation.
#[derive(Debug)]
pub struct Collector {
    pres: PcPresentation,
    n: usize,
    orders: Vec<u32>,
    // conj[i][j] = g_j [g_j, g_i] for j > i.
    conj: Vec<Vec<PcWord>>,
    // Bit j set when [g_j, g_i] is non-trivial.
    noncommuting: Vec<u32>,
    chunks: Option<ChunkTables>,
    bound: u64,
}

const CHUNK_TABLE_LIMIT: u64 = 400_000;

impl Collector {
    /// Collector moving one generator at a time; no precomputation.
    pub fn basic(pres: &PcPresentation) -> Self {
        let n = pres.len();
        let mut conj = vec![vec![Vec::new(); n]; n];
        let mut noncommuting = vec![0u32; n];
        for i in 0..n {
            for j in i + 1..n {
                let c = pres.comm_rule(j, i);
                let mut w = vec![(j, 1)];
                w.extend_from_slice(c);
                conj[i][j] = w;
                if !c.is_empty() {
                    noncommuting[i] |= 1 << j;
                }
            }
        }
        Collector {
            pres: pres.clone(),
            n,
            orders: pres.rel_orders.clone(),
            conj,
            noncommuting,
            chunks: None,
            bound: STEP_BOUND,
        }
    }

    /// Collector using exponent chunks when the tables are small enough.
    pub fn chunked(pres: &PcPresentation) -> Result<Self> {
        let mut c = Self::basic(pres);
        let n = c.n;
        let size: u64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (c.orders[i] as u64 - 1) * (c.orders[j] as u64 - 1))
            .sum();
        if size > CHUNK_TABLE_LIMIT {
            return Ok(c);
        }
        let mut words = vec![Vec::new(); n];
        for i in 0..n {
            words[i] = vec![Vec::new(); n];
            for j in i + 1..n {
                let oi = c.orders[i] as usize;
                let oj = c.orders[j] as usize;
                let mut by_e = vec![Vec::new(); oi];
                for (e, slot) in by_e.iter_mut().enumerate().skip(1) {
                    let mut by_t = vec![Vec::new(); oj];
                    for (t, out) in by_t.iter_mut().enumerate().skip(1) {
                        if c.noncommuting[i] == 0 {
                            *out = vec![(j, t as u32)];
                            continue;
                        }
                        let mut r = vec![0u32; n];
                        c.collect_into(&mut r, &[(j, t as u32), (i, e as u32)])?;
                        debug_assert_eq!(r[i], e as u32);
                        r[i] = 0;
                        *out = NormalForm(r).syllables();
                    }
                    *slot = by_t;
                }
                words[i][j] = by_e;
            }
        }
        c.chunks = Some(ChunkTables { words });
        Ok(c)
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn rel_orders(&self) -> &[u32] {
        &self.orders
    }

    fn push_word(stack: &mut Vec<(usize, u32)>, word: &[(usize, u32)]) {
        stack.extend(word.iter().rev().copied());
    }

    /// Multiplies the normal form `r` in place by `word` (left to right).
    pub fn collect_into(&self, r: &mut [u32], word: &[(usize, u32)]) -> Result<()> {
        let n = self.n;
        let mut stack: Vec<(usize, u32)> = Vec::with_capacity(64);
        Self::push_word(&mut stack, word);
        let mut steps: u64 = 0;
        while let Some((i, e)) = stack.pop() {
            if e == 0 {
                continue;
            }
            steps += 1;
            if steps > self.bound {
                return Err(Error::NonTerminating(self.bound));
            }
            let o = self.orders[i];
            if e >= o {
                // Split oversized syllables into chunks below the relative order.
                stack.push((i, e - (o - 1)));
                stack.push((i, o - 1));
                continue;
            }
            let mut tail_mask = 0u32;
            for (j, &x) in r.iter().enumerate().skip(i + 1) {
                if x != 0 {
                    tail_mask |= 1 << j;
                }
            }
            if tail_mask == 0 {
                let s = r[i] + e;
                r[i] = s % o;
                for _ in 0..s / o {
                    Self::push_word(&mut stack, &self.pres.power_rules[i]);
                }
                continue;
            }
            if tail_mask & self.noncommuting[i] == 0 {
                let s = r[i] + e;
                r[i] = s % o;
                if s >= o {
                    // g_i commutes with the tail, but the power word must be
                    // collected before the tail is put back.
                    let tail: PcWord = (i + 1..n).filter(|&j| r[j] != 0).map(|j| (j, r[j])).collect();
                    for x in r.iter_mut().skip(i + 1) {
                        *x = 0;
                    }
                    Self::push_word(&mut stack, &tail);
                    for _ in 0..s / o {
                        Self::push_word(&mut stack, &self.pres.power_rules[i]);
                    }
                }
                continue;
            }
            let tail: Vec<u32> = r[i + 1..].to_vec();
            for x in r.iter_mut().skip(i + 1) {
                *x = 0;
            }
            match &self.chunks {
                Some(tables) => {
                    // r g_i^e = prefix g_i^{r_i + e} tail^(g_i^e)
                    for j in (i + 1..n).rev() {
                        let t = tail[j - i - 1];
                        if t != 0 {
                            Self::push_word(&mut stack, &tables.words[i][j][e as usize][t as usize]);
                        }
                    }
                    let s = r[i] + e;
                    r[i] = s % o;
                    for _ in 0..s / o {
                        Self::push_word(&mut stack, &self.pres.power_rules[i]);
                    }
                }
                None => {
                    // r g_i^e = prefix g_i^{r_i + 1} tail^(g_i) g_i^{e-1}
                    if e > 1 {
                        stack.push((i, e - 1));
                    }
                    for j in (i + 1..n).rev() {
                        let t = tail[j - i - 1];
                        for _ in 0..t {
                            Self::push_word(&mut stack, &self.conj[i][j]);
                        }
                    }
                    let s = r[i] + 1;
                    r[i] = s % o;
                    if s >= o {
                        Self::push_word(&mut stack, &self.pres.power_rules[i]);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, a: &NormalForm, b: &NormalForm) -> Result<NormalForm> {
        let mut r = a.0.clone();
        self.collect_into(&mut r, &b.syllables())?;
        Ok(NormalForm(r))
    }

    pub fn generator(&self, i: usize, e: u32) -> NormalForm {
        let mut v = vec![0; self.n];
        v[i] = e;
        NormalForm(v)
    }

    /// Inverse by successively clearing leading exponents.
    pub fn inverse(&self, a: &NormalForm) -> Result<NormalForm> {
        let mut z = a.0.clone();
        let mut y = vec![0u32; self.n];
        for i in 0..self.n {
            if z[i] != 0 {
                let k = self.orders[i] - z[i];
                self.collect_into(&mut z, &[(i, k)])?;
                self.collect_into(&mut y, &[(i, k)])?;
            }
        }
        debug_assert!(z.iter().all(|&e| e == 0));
        Ok(NormalForm(y))
    }

    /// Normal form of a word with signed exponents.
    pub fn collect(&self, word: &[(usize, i64)]) -> Result<NormalForm> {
        let mut r = vec![0u32; self.n];
        for &(i, e) in word {
            if i >= self.n {
                return Err(Error::InvalidPresentation(format!("generator {} out of range", i + 1)));
            }
            if e >= 0 {
                self.collect_into(&mut r, &[(i, e as u32)])?;
            } else {
                let mut pos = vec![0u32; self.n];
                self.collect_into(&mut pos, &[(i, e.unsigned_abs() as u32)])?;
                let inv = self.inverse(&NormalForm(pos))?;
                self.collect_into(&mut r, &inv.syllables())?;
            }
        }
        Ok(NormalForm(r))
    }

    fn power_nf(&self, i: usize) -> Result<NormalForm> {
        let mut r = vec![0u32; self.n];
        self.collect_into(&mut r, &self.pres.power_rules[i])?;
        Ok(NormalForm(r))
    }
}

/// Normal form of a word under a presentation, using the basic collector.
pub fn collect(pres: &PcPresentation, word: &[(usize, i64)]) -> Result<NormalForm> {
    Collector::basic(pres).collect(word)
}

/// One failed overlap test: the test word and both collected sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapFailure {
    pub test: String,
    pub left: Option<NormalForm>,
    pub right: Option<NormalForm>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub tests_run: usize,
    pub failure: Option<OverlapFailure>,
}

/// Runs the overlap tests
/// `g_k (g_j g_i) = (g_k g_j) g_i` for `k > j > i`,
/// `g_j^{o_j} g_i = g_j^{o_j - 1} (g_j g_i)` and
/// `(g_j g_i^{o_i - 1}) g_i = g_j g_i^{o_i}` for `j > i`, and
/// `g_i^{o_i} g_i = g_i g_i^{o_i}`, stopping at the first failure.
pub fn check_consistency(pres: &PcPresentation) -> ConsistencyReport {
    let c = Collector::basic(pres);
    let n = pres.len();
    let g = |i: usize| c.generator(i, 1);
    let name = |i: usize| format!("g{}", i + 1);
    let mut tests_run = 0;

    let mut run = |test: String, compute: &dyn Fn() -> Result<(NormalForm, NormalForm)>| {
        tests_run += 1;
        match compute() {
            Ok((l, r)) if l == r => None,
            Ok((l, r)) => Some(OverlapFailure {
                test,
                left: Some(l),
                right: Some(r),
                note: None,
            }),
            Err(e) => Some(OverlapFailure {
                test,
                left: None,
                right: None,
                note: Some(e.to_string()),
            }),
        }
    };

    let mut failure = None;
    'outer: {
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let f = run(
                        format!("{} ({} {})", name(k), name(j), name(i)),
                        &|| {
                            let left = c.mul(&c.mul(&g(k), &g(j))?, &g(i))?;
                            let right = c.mul(&g(k), &c.mul(&g(j), &g(i))?)?;
                            Ok((left, right))
                        },
                    );
                    if f.is_some() {
                        failure = f;
                        break 'outer;
                    }
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                let oj = pres.rel_orders[j];
                let oi = pres.rel_orders[i];
                let f = run(format!("{}^{} {}", name(j), oj, name(i)), &|| {
                    let left = c.mul(&c.power_nf(j)?, &g(i))?;
                    let right = c.mul(&c.generator(j, oj - 1), &c.mul(&g(j), &g(i))?)?;
                    Ok((left, right))
                });
                if f.is_some() {
                    failure = f;
                    break 'outer;
                }
                let f = run(format!("{} {}^{}", name(j), name(i), oi), &|| {
                    let left = c.mul(&c.mul(&g(j), &c.generator(i, oi - 1))?, &g(i))?;
                    let right = c.mul(&g(j), &c.power_nf(i)?)?;
                    Ok((left, right))
                });
                if f.is_some() {
                    failure = f;
                    break 'outer;
                }
            }
        }
        for i in 0..n {
            let oi = pres.rel_orders[i];
            let f = run(format!("{}^{}", name(i), oi + 1), &|| {
                let p = c.power_nf(i)?;
                Ok((c.mul(&p, &g(i))?, c.mul(&g(i), &p)?))
            });
            if f.is_some() {
                failure = f;
                break 'outer;
            }
        }
    }
    ConsistencyReport {
        consistent: failure.is_none(),
        tests_run,
        failure,
    }
}

/// Backend state of a realized pc group: ids are mixed-radix encodings of
/// normal forms with the first generator least significant.
#[derive(Debug, Clone)]
pub(crate) struct PcStore {
    collector: Arc<Collector>,
    strides: Vec<u32>,
}

impl PcStore {
    #[inline]
    fn decode(&self, id: u32, out: &mut [u32]) {
        let mut x = id;
        for (k, o) in self.collector.orders.iter().enumerate() {
            out[k] = x % o;
            x /= o;
        }
    }

    #[inline]
    fn encode(&self, v: &[u32]) -> u32 {
        v.iter().zip(&self.strides).map(|(e, s)| e * s).sum()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let n = self.collector.n;
        let mut r = [0u32; MAX_GENERATORS];
        let mut bv = [0u32; MAX_GENERATORS];
        self.decode(a, &mut r[..n]);
        self.decode(b, &mut bv[..n]);
        let word: PcWord = (0..n).filter(|&k| bv[k] != 0).map(|k| (k, bv[k])).collect();
        self.collector
            .collect_into(&mut r[..n], &word)
            .expect("collection in a consistent presentation terminates");
        self.encode(&r[..n])
    }

    pub fn inv(&self, a: u32) -> u32 {
        let n = self.collector.n;
        let mut v = vec![0u32; n];
        self.decode(a, &mut v);
        let y = self
            .collector
            .inverse(&NormalForm(v))
            .expect("collection in a consistent presentation terminates");
        self.encode(&y.0)
    }

    pub fn normal_form(&self, id: u32) -> NormalForm {
        let mut v = vec![0u32; self.collector.n];
        self.decode(id, &mut v);
        NormalForm(v)
    }

    pub fn id_of(&self, nf: &NormalForm) -> u32 {
        self.encode(&nf.0)
    }
}

/// Realizes a consistent presentation; generators of the group are the pc
/// generators `g_1, ..., g_n` in order.
pub fn realize_pc_group(pres: &PcPresentation) -> Result<FiniteGroup> {
    let report = check_consistency(pres);
    if let Some(f) = report.failure {
        return Err(Error::Inconsistent(format!(
            "overlap test {} fails{}",
            f.test,
            f.note.map(|n| format!(": {n}")).unwrap_or_default()
        )));
    }
    let order = pres.order();
    if order > UNIVERSE_CAP as u128 {
        return Err(Error::UniverseOverflow { cap: UNIVERSE_CAP });
    }
    let collector = Arc::new(Collector::chunked(pres)?);
    let mut strides = Vec::with_capacity(pres.len());
    let mut s = 1u32;
    for &o in pres.rel_orders() {
        strides.push(s);
        s *= o;
    }
    let gens = strides.iter().map(|&s| Elem(s)).collect();
    Ok(FiniteGroup::from_backend(
        Backend::Pc(PcStore { collector, strides }),
        order as usize,
        gens,
    ))
}

/// Normal form of an element of a realized pc group.
pub fn normal_form_of(g: &FiniteGroup, x: Elem) -> Option<NormalForm> {
    match g.backend() {
        Backend::Pc(store) => Some(store.normal_form(x.0)),
        _ => None,
    }
}

/// Element id of a normal form in a realized pc group.
pub fn element_of(g: &FiniteGroup, nf: &NormalForm) -> Option<Elem> {
    match g.backend() {
        Backend::Pc(store) if nf.0.len() == store.collector.n => Some(Elem(store.id_of(nf))),
        _ => None,
    }
}

/// Pc generator `g_i` raised to `e`, as an element id.
pub fn pc_generator(g: &FiniteGroup, i: usize, e: u32) -> Option<Elem> {
    match g.backend() {
        Backend::Pc(store) if i < store.collector.n => {
            Some(Elem(store.strides[i] * (e % store.collector.orders[i])))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(p: u32) -> PcPresentation {
        PcPresentation::new(vec![p]).unwrap()
    }

    /// Q8 as <i, j, z | i^2 = z, j^2 = z, [j, i] = z, z^2 = 1>.
    fn q8() -> PcPresentation {
        let mut p = PcPresentation::new(vec![2, 2, 2]).unwrap();
        p.set_power(0, vec![(2, 1)]).unwrap();
        p.set_power(1, vec![(2, 1)]).unwrap();
        p.set_commutator(1, 0, vec![(2, 1)]).unwrap();
        p
    }

    #[test]
    fn cyclic_is_consistent() {
        let r = check_consistency(&cyclic(7));
        assert!(r.consistent);
        assert_eq!(realize_pc_group(&cyclic(7)).unwrap().order(), 7);
    }

    #[test]
    fn rejects_bad_rules() {
        let mut p = PcPresentation::new(vec![2, 2, 2]).unwrap();
        assert!(p.set_commutator(1, 0, vec![(1, 1)]).is_err());
        assert!(p.set_power(2, vec![(1, 1)]).is_err());
        assert!(p.set_commutator(0, 1, vec![(2, 1)]).is_err());
        assert!(PcPresentation::new(vec![6]).is_err());
        assert!(PcPresentation::new(vec![2, 3]).is_err());
    }

    #[test]
    fn normal_words_collect_to_themselves() {
        let c = Collector::basic(&q8());
        let nf = c.collect(&[(0, 1), (1, 1), (2, 1)]).unwrap();
        assert_eq!(nf.0, vec![1, 1, 1]);
    }

    #[test]
    fn q8_relations() {
        let g = realize_pc_group(&q8()).unwrap();
        assert_eq!(g.order(), 8);
        let i = pc_generator(&g, 0, 1).unwrap();
        let j = pc_generator(&g, 1, 1).unwrap();
        let z = pc_generator(&g, 2, 1).unwrap();
        assert_eq!(g.mul(i, i), z);
        assert_eq!(g.order_of(i), 4);
        assert_eq!(g.comm(j, i), z);
        assert_eq!(g.mul(i, j), g.mul(g.mul(j, i), z));
    }

    #[test]
    fn trivial_rules_give_elementary_abelian() {
        let g = realize_pc_group(&PcPresentation::new(vec![2, 2]).unwrap()).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert!(g.elements().all(|x| g.order_of(x) <= 2));
    }

    #[test]
    fn inconsistent_power_rule_is_detected() {
        // g1^2 = g2 with [g2, g1] = g3 forces g2 to commute with g1: broken.
        let mut p = PcPresentation::new(vec![2, 2, 2]).unwrap();
        p.set_power(0, vec![(1, 1)]).unwrap();
        p.set_commutator(1, 0, vec![(2, 1)]).unwrap();
        let r = check_consistency(&p);
        assert!(!r.consistent);
        assert!(realize_pc_group(&p).is_err());
    }

    #[test]
    fn negative_exponents() {
        let c = Collector::basic(&q8());
        // i^-1 = i^3 = i z
        assert_eq!(c.collect(&[(0, -1)]).unwrap().0, vec![1, 0, 1]);
        assert!(c.collect(&[(0, 1), (0, -1)]).unwrap().is_identity());
    }
}
