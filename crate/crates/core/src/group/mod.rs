//! Uniform finite-group abstraction over dense element ids.
//!
//! Every group, whatever its backend, exposes its elements as ids
//! `0..order` with id 0 the identity. Small groups (order at most
//! [`TABLE_CAP`]) carry a cached Cayley table; larger ones compute products
//! through their backend on demand.

mod perm;
mod quotient;
mod subgroup;

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pc::PcStore;

pub use perm::{Permutation, MAX_DEGREE, UNIVERSE_CAP};
pub use subgroup::Subgroup;

pub(crate) use perm::PermStore;
pub(crate) use quotient::QuotientStore;

/// Groups up to this order get a precomputed multiplication table.
pub const TABLE_CAP: usize = 4096;

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

/// Dense element id. The identity is always `Elem(0)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl From<usize> for Elem {
    fn from(i: usize) -> Self {
        Elem(i as u32)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendKind {
    Permutation,
    CayleyTable,
    Pc,
    Quotient,
}

#[derive(Debug, Clone)]
pub(crate) struct CayleyTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

#[derive(Debug, Clone)]
pub(crate) enum Backend {
    Table,
    Perm(PermStore),
    Pc(PcStore),
    Quotient(QuotientStore),
}

/// A finite group with a multiplication oracle on element ids.
///
/// Immutable after construction and safe to share across threads.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    uid: u64,
    order: usize,
    gens: Vec<Elem>,
    backend: Backend,
    table: Option<CayleyTable>,
}

impl FiniteGroup {
    pub(crate) fn from_backend(backend: Backend, order: usize, gens: Vec<Elem>) -> Self {
        let mut g = FiniteGroup {
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            order,
            gens,
            backend,
            table: None,
        };
        if order <= TABLE_CAP && !matches!(g.backend, Backend::Table) {
            g.table = Some(g.build_table());
        }
        g
    }

    fn build_table(&self) -> CayleyTable {
        let n = self.order;
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = self.backend_mul(a as u32, b as u32);
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            let row = &mul[a * n..(a + 1) * n];
            inv[a] = row.iter().position(|&x| x == 0).expect("group has inverses") as u32;
        }
        CayleyTable { n, mul, inv }
    }

    /// Builds a group from a full multiplication table with identity at 0.
    ///
    /// Checks closure, identity, inverses and associativity (exhaustively up
    /// to order 64, on a deterministic sample above).
    pub fn from_cayley_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > TABLE_CAP {
            return Err(Error::InvalidTable(format!("order {n} exceeds {TABLE_CAP}")));
        }
        let mut mul = vec![0u32; n * n];
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {a} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for (b, &c) in row.iter().enumerate() {
                if c >= n || seen[c] {
                    return Err(Error::InvalidTable(format!("row {a} is not a permutation")));
                }
                seen[c] = true;
                mul[a * n + b] = c as u32;
            }
        }
        for a in 0..n {
            if mul[a] != a as u32 || mul[a * n] != a as u32 {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        let m = |a: usize, b: usize| mul[a * n + b] as usize;
        let check = |a: usize, b: usize, c: usize| m(m(a, b), c) == m(a, m(b, c));
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(Error::InvalidTable(format!(
                                "not associative at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            // Fixed seed so validation is reproducible.
            let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9_7f4a_7c15);
            for _ in 0..100_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !check(a, b, c) {
                    return Err(Error::InvalidTable(format!(
                        "not associative at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| m(a, b) == 0).unwrap() as u32;
        }
        let mut g = FiniteGroup {
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            order: n,
            gens: Vec::new(),
            backend: Backend::Table,
            table: Some(CayleyTable { n, mul, inv }),
        };
        g.gens = g.greedy_generators(&(0..n).map(Elem::from).collect::<Vec<_>>());
        Ok(g)
    }

    /// Wraps a table built internally (already known to be a group).
    pub(crate) fn from_table_unchecked(n: usize, mul: Vec<u32>, gens: Vec<Elem>) -> Self {
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = mul[a * n..(a + 1) * n].iter().position(|&x| x == 0).unwrap() as u32;
        }
        FiniteGroup {
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            order: n,
            gens,
            backend: Backend::Table,
            table: Some(CayleyTable { n, mul, inv }),
        }
    }

    /// Same group with a different generating list. The caller guarantees
    /// the list generates the whole group.
    pub fn with_generators(&self, gens: Vec<Elem>) -> Self {
        FiniteGroup {
            gens,
            ..self.clone()
        }
    }

    /// Picks a short generating list from `candidates`, keeping each
    /// candidate that enlarges the subgroup generated so far.
    pub(crate) fn greedy_generators(&self, candidates: &[Elem]) -> Vec<Elem> {
        let mut h = self.trivial();
        for &c in candidates {
            if h.order() == self.order {
                break;
            }
            if !h.contains(c) {
                h = self.extend(&h, &[c]);
            }
        }
        h.gens().to_vec()
    }

    pub fn uid(&self) -> u64 {
        self.uid
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn backend_kind(&self) -> BackendKind {
        match self.backend {
            Backend::Table => BackendKind::CayleyTable,
            Backend::Perm(_) => BackendKind::Permutation,
            Backend::Pc(_) => BackendKind::Pc,
            Backend::Quotient(_) => BackendKind::Quotient,
        }
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub(crate) fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order as u32).map(Elem)
    }

    pub fn check(&self, x: Elem) -> Result<Elem> {
        if x.index() < self.order {
            Ok(x)
        } else {
            Err(Error::InvalidId {
                id: x.index(),
                order: self.order,
            })
        }
    }

    fn backend_mul(&self, a: u32, b: u32) -> u32 {
        match &self.backend {
            Backend::Table => {
                let t = self.table.as_ref().unwrap();
                t.mul[a as usize * t.n + b as usize]
            }
            Backend::Perm(p) => p.mul(a, b),
            Backend::Pc(p) => p.mul(a, b),
            Backend::Quotient(q) => q.mul(a, b),
        }
    }

    /// Unchecked product; ids must be valid.
    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.table {
            Some(t) => Elem(t.mul[x.index() * t.n + y.index()]),
            None => Elem(self.backend_mul(x.0, y.0)),
        }
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        if let Some(t) = &self.table {
            return Elem(t.inv[x.index()]);
        }
        Elem(match &self.backend {
            Backend::Table => unreachable!(),
            Backend::Perm(p) => p.inv(x.0),
            Backend::Pc(p) => p.inv(x.0),
            Backend::Quotient(q) => q.inv(x.0),
        })
    }

    /// Checked product.
    pub fn multiply(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(self.check(x)?, self.check(y)?))
    }

    pub fn inverse(&self, x: Elem) -> Result<Elem> {
        Ok(self.inv(self.check(x)?))
    }

    pub fn pow(&self, x: Elem, mut k: u64) -> Elem {
        let mut base = x;
        let mut acc = Elem::IDENTITY;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// Signed power; negative exponents use the inverse.
    pub fn zpow(&self, x: Elem, k: i64) -> Elem {
        if k >= 0 {
            self.pow(x, k as u64)
        } else {
            self.inv(self.pow(x, k.unsigned_abs()))
        }
    }

    pub fn order_of(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut y = x;
        while !y.is_identity() {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn element_order(&self, x: Elem) -> Result<usize> {
        Ok(self.order_of(self.check(x)?))
    }

    /// `x^-1 y^-1 x y`.
    #[inline]
    pub fn comm(&self, x: Elem, y: Elem) -> Elem {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inv(yx), xy)
    }

    pub fn commutator(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.comm(self.check(x)?, self.check(y)?))
    }

    /// Left-normed iterated commutator `[x1, x2, ..., xk]`.
    pub fn comm_seq(&self, xs: &[Elem]) -> Elem {
        let mut it = xs.iter();
        let mut acc = *it.next().unwrap_or(&Elem::IDENTITY);
        for &x in it {
            acc = self.comm(acc, x);
        }
        acc
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutes(&self, x: Elem, y: Elem) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_abelian(&self) -> bool {
        self.whole().is_abelian(self)
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::trivial(self)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::whole(self)
    }

    /// Subgroup generated by `seed`.
    pub fn closure(&self, seed: &[Elem]) -> Result<Subgroup> {
        for &s in seed {
            self.check(s)?;
        }
        Ok(self.extend(&self.trivial(), seed))
    }

    /// Subgroup generated by `base` and `extra`, built coset by coset on
    /// top of the known subgroup `base` (Dimino's method).
    pub fn extend(&self, base: &Subgroup, extra: &[Elem]) -> Subgroup {
        let mut members = base.members().clone();
        let mut elements: Vec<Elem> = base.iter().collect();
        let mut gens = base.gens().to_vec();
        for &g in extra {
            if members.contains(g.index()) {
                continue;
            }
            gens.push(g);
            let prev = elements.clone();
            let add_coset = |rep: Elem, members: &mut crate::BitSet, elements: &mut Vec<Elem>| {
                for &h in &prev {
                    let e = self.mul(h, rep);
                    members.insert(e.index());
                    elements.push(e);
                }
            };
            add_coset(g, &mut members, &mut elements);
            let mut reps = vec![g];
            let mut pos = 0;
            while pos < reps.len() {
                let r = reps[pos];
                for &s in &gens {
                    let t = self.mul(r, s);
                    if !members.contains(t.index()) {
                        reps.push(t);
                        add_coset(t, &mut members, &mut elements);
                    }
                }
                pos += 1;
            }
        }
        let order = elements.len();
        Subgroup::from_parts(self.uid, members, gens, order)
    }

    /// Subgroup with the given member set, generators chosen greedily.
    pub fn subgroup_from_members(&self, members: crate::BitSet) -> Subgroup {
        let cands: Vec<Elem> = members.iter().map(Elem::from).collect();
        let mut h = self.trivial();
        for c in cands {
            if h.order() == members.count() {
                break;
            }
            if !h.contains(c) {
                h = self.extend(&h, &[c]);
            }
        }
        h
    }

    /// Element id of a permutation in a permutation group.
    pub fn perm_id(&self, p: &Permutation) -> Option<Elem> {
        match &self.backend {
            Backend::Perm(store) if p.degree() == store.degree => {
                store.id_of(p.pack()).map(Elem)
            }
            _ => None,
        }
    }

    pub fn permutation(&self, x: Elem) -> Option<Permutation> {
        match &self.backend {
            Backend::Perm(store) => Some(Permutation::unpack(store.elements[x.index()], store.degree)),
            _ => None,
        }
    }

    /// Fingerprint of the multiplication table, for regression tests.
    pub fn table_fingerprint(&self) -> Option<u64> {
        let t = self.table.as_ref()?;
        // FNV-1a over the table entries.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &v in &t.mul {
            for b in v.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100_0000_01b3);
            }
        }
        Some(h)
    }
}

/// Permutation group generated by `gens`; all generators share one degree.
pub fn make_perm_group(gens: &[Permutation]) -> Result<FiniteGroup> {
    make_perm_group_capped(gens, UNIVERSE_CAP)
}

pub fn make_perm_group_capped(gens: &[Permutation], cap: usize) -> Result<FiniteGroup> {
    let (store, gen_ids) = perm::close_permutations(gens, cap)?;
    let order = store.elements.len();
    Ok(FiniteGroup::from_backend(
        Backend::Perm(store),
        order,
        gen_ids.into_iter().map(Elem).collect(),
    ))
}

/// Quotient `G/N` together with the natural projection (indexed by ids of `G`).
pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Vec<Elem>)> {
    quotient::quotient_group(g, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(degree, cycles).unwrap()
    }

    fn s6() -> FiniteGroup {
        make_perm_group(&[cyc(6, &[&[1, 2]]), cyc(6, &[&[1, 2, 3, 4, 5, 6]])]).unwrap()
    }

    #[test]
    fn perm_group_orders() {
        let n = make_perm_group(&[cyc(6, &[&[1, 2, 3]]), cyc(6, &[&[4, 5, 6]])]).unwrap();
        assert_eq!(n.order(), 9);
        let one = make_perm_group(&[Permutation::identity(4)]).unwrap();
        assert_eq!(one.order(), 1);
        assert_eq!(s6().order(), 720);
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let err = make_perm_group(&[cyc(3, &[&[1, 2]]), cyc(4, &[&[1, 2]])]).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
    }

    #[test]
    fn identity_and_inverse() {
        let g = s6();
        for x in g.elements().step_by(7) {
            assert_eq!(g.mul(Elem::IDENTITY, x), x);
            assert_eq!(g.mul(x, g.inv(x)), Elem::IDENTITY);
        }
        let t = g.perm_id(&cyc(6, &[&[1, 2]])).unwrap();
        assert_eq!(g.mul(t, t), Elem::IDENTITY);
        assert!(g.multiply(Elem(720), t).is_err());
    }

    #[test]
    fn element_orders() {
        let g = s6();
        assert_eq!(g.element_order(Elem::IDENTITY).unwrap(), 1);
        let x = g.perm_id(&cyc(6, &[&[1, 4, 2, 5], &[3, 6]])).unwrap();
        assert_eq!(g.element_order(x).unwrap(), 4);
    }

    #[test]
    fn commutator_convention() {
        let g = s6();
        let x = g.perm_id(&cyc(6, &[&[1, 2]])).unwrap();
        let y = g.perm_id(&cyc(6, &[&[2, 3]])).unwrap();
        assert_eq!(g.comm(x, x), Elem::IDENTITY);
        let expect = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
        assert_eq!(g.comm(x, y), expect);
    }

    #[test]
    fn closure_examples() {
        let g = s6();
        assert_eq!(g.closure(&[]).unwrap().order(), 1);
        let a = g.perm_id(&cyc(6, &[&[1, 2, 3]])).unwrap();
        let b = g.perm_id(&cyc(6, &[&[4, 5, 6]])).unwrap();
        let n = g.closure(&[a, b]).unwrap();
        assert_eq!(n.order(), 9);
        let again = g.closure(&n.iter().collect::<Vec<_>>()).unwrap();
        assert_eq!(again.members(), n.members());
    }

    #[test]
    fn cayley_table_validation() {
        let c3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let g = FiniteGroup::from_cayley_table(&c3).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.generators().len(), 1);
        let bad = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        assert!(FiniteGroup::from_cayley_table(&bad).is_err());
    }
}
