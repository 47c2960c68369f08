use std::sync::Arc;

use crate::error::{Error, Result};

use super::{Backend, Elem, FiniteGroup, Subgroup, TABLE_CAP};

/// Coset representatives of `G/N` plus the id-to-coset lookup.
#[derive(Debug, Clone)]
pub(crate) struct QuotientStore {
    parent: Arc<FiniteGroup>,
    coset_of: Vec<u32>,
    reps: Vec<Elem>,
}

impl QuotientStore {
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.parent.mul(self.reps[a as usize], self.reps[b as usize]);
        self.coset_of[p.index()]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.coset_of[self.parent.inv(self.reps[a as usize]).index()]
    }
}

pub(crate) fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Vec<Elem>)> {
    n.same_parent(&g.whole())?;
    if !n.is_normal_in(g, &g.whole()) {
        return Err(Error::NotNormal);
    }
    const UNSET: u32 = u32::MAX;
    let mut coset_of = vec![UNSET; g.order()];
    let mut reps = Vec::with_capacity(g.order() / n.order());
    let normal: Vec<Elem> = n.iter().collect();
    for x in g.elements() {
        if coset_of[x.index()] != UNSET {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &h in &normal {
            coset_of[g.mul(h, x).index()] = id;
        }
    }
    let q = reps.len();
    let mut gens: Vec<Elem> = g
        .generators()
        .iter()
        .map(|x| Elem(coset_of[x.index()]))
        .filter(|x| !x.is_identity())
        .collect();
    gens.dedup();
    let projection: Vec<Elem> = coset_of.iter().map(|&c| Elem(c)).collect();
    let group = if q <= TABLE_CAP {
        let mut mul = vec![0u32; q * q];
        for a in 0..q {
            for b in 0..q {
                mul[a * q + b] = coset_of[g.mul(reps[a], reps[b]).index()];
            }
        }
        FiniteGroup::from_table_unchecked(q, mul, gens)
    } else {
        FiniteGroup::from_backend(
            Backend::Quotient(QuotientStore {
                parent: Arc::new(g.clone()),
                coset_of,
                reps,
            }),
            q,
            gens,
        )
    };
    let gens = group.greedy_generators(&group.generators().to_vec());
    Ok((group.with_generators(gens), projection))
}
