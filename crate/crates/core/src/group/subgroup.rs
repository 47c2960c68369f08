use std::cmp::Ordering;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

use super::{Elem, FiniteGroup};

/// A subgroup of a parent group: member bitset plus generator witnesses.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: u64,
    members: BitSet,
    gens: Vec<Elem>,
    order: usize,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub(crate) fn from_parts(parent: u64, members: BitSet, gens: Vec<Elem>, order: usize) -> Self {
        debug_assert_eq!(members.count(), order);
        Self {
            parent,
            members,
            gens,
            order,
        }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        let mut members = BitSet::new(g.order());
        members.insert(0);
        Self::from_parts(g.uid(), members, Vec::new(), 1)
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::from_parts(
            g.uid(),
            BitSet::full(g.order()),
            g.generators().to_vec(),
            g.order(),
        )
    }

    pub fn parent_uid(&self) -> u64 {
        self.parent
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x.index())
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter().map(Elem::from)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order <= other.order && self.members.is_subset(&other.members)
    }

    pub fn same_parent(&self, other: &Subgroup) -> Result<()> {
        if self.parent == other.parent {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// Generators commute pairwise.
    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, &x)| self.gens[i + 1..].iter().all(|&y| g.commutes(x, y)))
    }

    /// Closed under conjugation by the generators of `ambient`.
    pub fn is_normal_in(&self, g: &FiniteGroup, ambient: &Subgroup) -> bool {
        self.gens
            .iter()
            .all(|&x| ambient.gens.iter().all(|&a| self.contains(g.conj(x, a))))
    }

    pub fn with_gens(mut self, gens: Vec<Elem>) -> Self {
        self.gens = gens;
        self
    }

    /// Canonical order: by size, then by [`BitSet::lex_cmp`].
    pub fn canonical_cmp(&self, other: &Subgroup) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.lex_cmp(&other.members))
    }
}
