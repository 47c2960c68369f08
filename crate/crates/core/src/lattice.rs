//! Subgroup lattices: exhaustive enumeration, meet, join and maximal
//! subgroups.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::structure::{self, frattini, log_p, p_of};

/// Default largest group order accepted by [`all_subgroups`].
pub const DEFAULT_LATTICE_CAP: usize = 2000;

/// All subgroups of a group in canonical order (by order, then
/// [`BitSet::lex_cmp`]).
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    parent: u64,
    all: Vec<Subgroup>,
    index: HashMap<BitSet, usize>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    pub fn parent_uid(&self) -> u64 {
        self.parent
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.all
    }

    pub fn iter(&self) -> impl Iterator<Item = &Subgroup> {
        self.all.iter()
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.all[i]
    }

    pub fn position(&self, members: &BitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn contains(&self, h: &Subgroup) -> bool {
        h.parent_uid() == self.parent && self.index.contains_key(h.members())
    }

    pub fn trivial(&self) -> &Subgroup {
        &self.all[0]
    }

    pub fn whole(&self) -> &Subgroup {
        self.all.last().unwrap()
    }

    /// Subgroups of `h` (including `h`), in canonical order.
    pub fn subgroups_of<'a>(&'a self, h: &'a Subgroup) -> impl Iterator<Item = &'a Subgroup> + 'a {
        self.all
            .iter()
            .filter(move |k| k.order() <= h.order() && h.order() % k.order() == 0 && k.is_subgroup_of(h))
    }

    /// Maximal subgroups read off the lattice.
    pub fn maximal_subgroups(&self) -> Result<Vec<Subgroup>> {
        let whole = self.whole();
        if whole.is_trivial() {
            return Err(Error::TrivialGroup);
        }
        let proper = &self.all[..self.all.len() - 1];
        Ok(proper
            .iter()
            .filter(|m| {
                !proper
                    .iter()
                    .any(|l| l.order() > m.order() && l.order() % m.order() == 0 && m.is_subgroup_of(l))
            })
            .cloned()
            .collect())
    }
}

/// Every subgroup of `g`, found as the join-closure of the cyclic
/// subgroups: starting from the cyclic subgroups, each known subgroup is
/// joined with each cyclic subgroup it does not contain until nothing new
/// appears.
pub fn all_subgroups(g: &FiniteGroup, cap: usize) -> Result<SubgroupLattice> {
    if g.order() > cap {
        return Err(Error::OrderCapExceeded { order: g.order(), cap });
    }
    let mut index: HashMap<BitSet, usize> = HashMap::new();
    let mut all: Vec<Subgroup> = Vec::new();
    let mut add = |h: Subgroup, all: &mut Vec<Subgroup>| -> bool {
        if index.contains_key(h.members()) {
            return false;
        }
        index.insert(h.members().clone(), all.len());
        all.push(h);
        true
    };
    add(g.trivial(), &mut all);
    let mut atoms: Vec<Subgroup> = Vec::new();
    let mut seen = BitSet::new(g.order());
    for x in g.elements() {
        if seen.contains(x.index()) {
            continue;
        }
        let c = g.closure(&[x])?;
        // Every generator of <x> gives the same atom.
        for y in c.iter() {
            if c.order() == g.order_of(y) {
                seen.insert(y.index());
            }
        }
        if add(c.clone(), &mut all) {
            atoms.push(c);
        }
    }
    let mut frontier: Vec<usize> = (1..all.len()).collect();
    while !frontier.is_empty() {
        let joins: Vec<Vec<Subgroup>> = frontier
            .par_iter()
            .map(|&i| {
                let h = &all[i];
                atoms
                    .iter()
                    .filter(|a| !h.contains(a.gens()[0]))
                    .map(|a| g.extend(h, a.gens()))
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for j in joins.into_iter().flatten() {
            if add(j, &mut all) {
                next.push(all.len() - 1);
            }
        }
        frontier = next;
    }
    all.sort_by(|a, b| a.canonical_cmp(b));
    let index = all
        .iter()
        .enumerate()
        .map(|(i, h)| (h.members().clone(), i))
        .collect();
    Ok(SubgroupLattice {
        parent: g.uid(),
        all,
        index,
    })
}

/// `A ∩ B`.
pub fn meet(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    a.same_parent(b)?;
    Ok(g.subgroup_from_members(a.members().intersection(b.members())))
}

/// `<A, B>`.
pub fn join(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    a.same_parent(b)?;
    Ok(g.extend(a, b.gens()))
}

/// Smallest normal subgroup of `g` containing `seed`.
pub fn normal_closure(g: &FiniteGroup, seed: &[Elem]) -> Result<Subgroup> {
    structure::normal_closure(g, seed, &g.whole())
}

/// A Burnside basis of a p-group `h`: generators of `h` whose images form
/// a basis of `h / Phi(h)`.
pub fn burnside_basis(g: &FiniteGroup, h: &Subgroup, phi: &Subgroup) -> Vec<Elem> {
    let mut b = phi.clone();
    let mut basis = Vec::new();
    for &x in h.gens() {
        if !b.contains(x) {
            basis.push(x);
            b = g.extend(&b, &[x]);
        }
    }
    basis
}

/// Maximal subgroups of a p-group as preimages of the hyperplanes of
/// `h / Phi(h)`, in canonical order. There are `(p^d - 1)/(p - 1)` of them.
pub fn maximal_subgroups_pgroup(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    if h.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    let p = p_of(h)?;
    let phi = frattini(g, h)?;
    let d = log_p(h.order() / phi.order(), p) as usize;
    let basis = burnside_basis(g, h, &phi);
    debug_assert_eq!(basis.len(), d);
    let mut out = Vec::new();
    // Functionals f with first non-zero coordinate 1, in lexicographic order.
    for pivot in 0..d {
        let free = d - pivot - 1;
        for code in 0..p.pow(free as u32) {
            let mut f = vec![0usize; d];
            f[pivot] = 1;
            let mut c = code;
            for slot in f.iter_mut().skip(pivot + 1) {
                *slot = c % p;
                c /= p;
            }
            let bk = basis[pivot];
            let lifts: Vec<Elem> = (0..d)
                .filter(|&j| j != pivot)
                .map(|j| {
                    if f[j] == 0 {
                        basis[j]
                    } else {
                        g.mul(basis[j], g.pow(bk, ((p - f[j]) % p) as u64))
                    }
                })
                .collect();
            out.push(g.extend(&phi, &lifts));
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

/// Maximal subgroups of `g`: from the lattice when one is given,
/// otherwise through the Frattini quotient (p-groups only).
pub fn maximal_subgroups(g: &FiniteGroup, lattice: Option<&SubgroupLattice>) -> Result<Vec<Subgroup>> {
    if g.order() == 1 {
        return Err(Error::TrivialGroup);
    }
    match lattice {
        Some(l) => {
            if l.parent_uid() != g.uid() {
                return Err(Error::ParentMismatch);
            }
            l.maximal_subgroups()
        }
        None => maximal_subgroups_pgroup(g, &g.whole()),
    }
}

/// Intersection of the maximal subgroups listed in a lattice.
pub fn frattini_from_lattice(g: &FiniteGroup, lattice: &SubgroupLattice) -> Result<Subgroup> {
    let maximals = lattice.maximal_subgroups()?;
    let mut members = BitSet::full(g.order());
    for m in &maximals {
        members = members.intersection(m.members());
    }
    Ok(g.subgroup_from_members(members))
}
