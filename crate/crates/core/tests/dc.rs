mod common;

use std::collections::BTreeSet;

use common::{backtracking_subgroups, corpus_groups, naive_dc, naive_derived_set, set_of, Set};
use dcgroup::constructors::families::{
    abelian, dihedral, generalized_quaternion, modular_max_cyclic, semidihedral, sl23, symmetric,
    wreath_cyclic,
};
use dcgroup::constructors::{direct_product, s6_example};
use dcgroup::dc::{
    commutator_image_lemma, dc_2group_predicate, dc_fast, dc_sufficient_conditions, derived_set,
    is_chain, is_dc_oracle, is_sublattice, DcMethod, DerivedSet, SufficientCondition,
};
use dcgroup::lattice::all_subgroups;
use dcgroup::structure::prime_of_power;
use dcgroup::{quotient_group, Elem, Error, FiniteGroup, Permutation};
use proptest::prelude::*;

#[test]
fn derived_set_matches_naive() {
    for (id, g) in corpus_groups(48) {
        let lattice = all_subgroups(&g, 2000).unwrap();
        let ds = derived_set(&g, &lattice).unwrap();
        let ours: BTreeSet<Set> = ds.members.iter().map(set_of).collect();
        assert_eq!(ours.len(), ds.len(), "{id}");
        assert_eq!(ours, naive_derived_set(&g), "{id}");
        assert_eq!(ds.chain.is_some(), naive_dc(&g), "{id}");
        for (m, w) in ds.members.iter().zip(&ds.witnesses) {
            assert_eq!(&dcgroup::structure::derived_subgroup(&g, w), m, "{id}");
        }
    }
}

#[test]
fn sl23_is_dc_with_three_derived_subgroups() {
    let g = sl23().unwrap();
    let v = is_dc_oracle(&g, 2000).unwrap();
    assert!(v.is_dc);
    assert_eq!(v.method, DcMethod::Oracle);
    let ds = derived_set(&g, &all_subgroups(&g, 2000).unwrap()).unwrap();
    assert_eq!(ds.orders(), vec![1, 2, 8]);
    assert_eq!(ds.chain, Some(vec![0, 1, 2]));
}

#[test]
fn s4_has_incomparable_klein_derived_subgroups() {
    let g = symmetric(4).unwrap();
    let ds = derived_set(&g, &all_subgroups(&g, 2000).unwrap()).unwrap();
    let el = |c: &[&[usize]]| g.perm_id(&Permutation::from_cycles(4, c).unwrap()).unwrap();
    let a = g.closure(&[el(&[&[1, 2], &[3, 4]])]).unwrap();
    let b = g.closure(&[el(&[&[1, 3], &[2, 4]])]).unwrap();
    assert!(ds.contains(&a) && ds.contains(&b));
    let v = is_dc_oracle(&g, 2000).unwrap();
    assert!(!v.is_dc);
    let (x, y) = v.witness.unwrap();
    assert!(!x.is_subgroup_of(&y) && !y.is_subgroup_of(&x));
}

#[test]
fn abelian_groups_are_dc_without_a_lattice() {
    let g = abelian(&[2, 4, 8, 16]).unwrap();
    let v = is_dc_oracle(&g, 10).unwrap();
    assert!(v.is_dc);
    assert_eq!(v.method, DcMethod::AbelianShortcut);
    assert!(matches!(is_dc_oracle(&symmetric(4).unwrap(), 10), Err(Error::OrderCapExceeded { .. })));
}

#[test]
fn chains_are_sublattices() {
    let mut chains = 0;
    for (id, g) in corpus_groups(729) {
        let lattice = all_subgroups(&g, 2000).unwrap();
        let mut ds = derived_set(&g, &lattice).unwrap();
        if is_chain(&mut ds) {
            chains += 1;
            assert!(is_sublattice(&g, &ds, &lattice).unwrap().is_ok(), "{id}");
        }
    }
    assert!(chains > 20);
}

#[test]
fn s6_derived_set_is_not_a_sublattice() {
    let ex = s6_example().unwrap();
    let g = &ex.group;
    let lattice = all_subgroups(g, 2000).unwrap();
    let ds = derived_set(g, &lattice).unwrap();
    assert!(ds.chain.is_none());
    let failure = is_sublattice(g, &ds, &lattice).unwrap().unwrap_err();
    assert!(ds.contains(&failure.a) && ds.contains(&failure.b));
    assert!(!ds.contains(&failure.result));
}

#[test]
fn two_group_predicate_agrees_with_oracle_on_corpus() {
    let mut compared = 0;
    for (id, g) in corpus_groups(64) {
        if prime_of_power(g.order()) != Some(2) {
            continue;
        }
        let oracle = is_dc_oracle(&g, 2000).unwrap().is_dc;
        assert_eq!(dc_2group_predicate(&g).unwrap(), oracle, "{id}");
        compared += 1;
    }
    assert!(compared >= 25);
    assert!(matches!(dc_2group_predicate(&sl23().unwrap()), Err(Error::NotTwoGroup(24))));
}

#[test]
fn sufficient_conditions_are_sound() {
    let mut fired = 0;
    for (id, g) in corpus_groups(2000) {
        if g.order() == 1 || prime_of_power(g.order()).is_none() {
            continue;
        }
        let conds = dc_sufficient_conditions(&g, None).unwrap();
        if !conds.is_empty() {
            fired += 1;
            assert!(is_dc_oracle(&g, 2000).unwrap().is_dc, "{id}: {conds:?}");
        }
    }
    assert!(fired > 15);
    let m16 = modular_max_cyclic(2, 16).unwrap();
    assert!(dc_sufficient_conditions(&m16, None).unwrap().contains(&SufficientCondition::CyclicDerived));
    let w = wreath_cyclic(3, 3).unwrap();
    assert!(dc_sufficient_conditions(&w, None)
        .unwrap()
        .contains(&SufficientCondition::TwoGeneratorAbelianMaximal));
    assert!(dc_sufficient_conditions(&symmetric(4).unwrap(), None).is_err());
}

#[test]
fn fast_verdicts_agree_with_oracle() {
    for (id, g) in corpus_groups(2000) {
        if let Some(v) = dc_fast(&g).unwrap() {
            assert_eq!(v.is_dc, is_dc_oracle(&g, 2000).unwrap().is_dc, "{id}: {:?}", v.method);
        }
    }
}

/// Oracle-DC groups have only DC subgroups and quotients, checked here
/// with the backtracking enumerator instead of the lattice.
#[test]
fn dc_is_inherited_by_subgroups_and_quotients() {
    let mut quotients = 0;
    for (id, g) in corpus_groups(32) {
        if !is_dc_oracle(&g, 2000).unwrap().is_dc {
            continue;
        }
        let subs = backtracking_subgroups(&g);
        let derived: Vec<(Set, Set)> = subs
            .iter()
            .map(|s| (s.clone(), common::naive_derived(&g, s)))
            .collect();
        for s in &subs {
            let ds: Vec<&Set> = derived.iter().filter(|(k, _)| k.is_subset(s)).map(|(_, d)| d).collect();
            let chain = ds.iter().all(|a| ds.iter().all(|b| a.is_subset(b) || b.is_subset(a)));
            assert!(chain, "{id}: subgroup of order {}", s.len());
            let gens: Vec<Elem> = s.iter().map(|&x| Elem(x)).collect();
            let h = g.closure(&gens).unwrap();
            if h.is_normal_in(&g, &g.whole()) {
                let (q, _) = quotient_group(&g, &h).unwrap();
                assert!(naive_dc(&q), "{id}: quotient by order {}", h.order());
                quotients += 1;
            }
        }
    }
    assert!(quotients > 50);
}

#[test]
fn commutator_images() {
    for (id, g) in corpus_groups(243) {
        if g.order() > 1 && prime_of_power(g.order()).is_none() {
            assert!(commutator_image_lemma(&g).is_err());
            continue;
        }
        let outcome = commutator_image_lemma(&g).unwrap();
        assert!(!outcome.is_fail(), "{id}: {outcome:?}");
    }
}

#[derive(Clone, Debug)]
enum TwoGroup {
    Dihedral(usize),
    Quaternion(usize),
    Semidihedral(usize),
    Modular(usize),
    C4WrC2,
    Abelian(Vec<usize>),
}

impl TwoGroup {
    fn build(&self) -> FiniteGroup {
        match self {
            TwoGroup::Dihedral(n) => dihedral(*n),
            TwoGroup::Quaternion(n) => generalized_quaternion(*n),
            TwoGroup::Semidihedral(n) => semidihedral(*n),
            TwoGroup::Modular(n) => modular_max_cyclic(2, *n),
            TwoGroup::C4WrC2 => wreath_cyclic(4, 2),
            TwoGroup::Abelian(inv) => abelian(inv),
        }
        .unwrap()
    }
}

fn two_group() -> impl Strategy<Value = TwoGroup> {
    prop_oneof![
        prop::sample::select(vec![4usize, 8, 16, 32]).prop_map(TwoGroup::Dihedral),
        prop::sample::select(vec![8usize, 16, 32]).prop_map(TwoGroup::Quaternion),
        prop::sample::select(vec![16usize, 32]).prop_map(TwoGroup::Semidihedral),
        prop::sample::select(vec![16usize, 32]).prop_map(TwoGroup::Modular),
        Just(TwoGroup::C4WrC2),
        prop::collection::vec(prop::sample::select(vec![2usize, 4]), 1..3).prop_map(TwoGroup::Abelian),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn two_group_predicate_on_random_products(a in two_group(), b in two_group()) {
        let (ga, gb) = (a.build(), b.build());
        prop_assume!(ga.order() * gb.order() <= 64);
        let g = direct_product(&ga, &gb).unwrap();
        let oracle = is_dc_oracle(&g, 2000).unwrap().is_dc;
        prop_assert_eq!(dc_2group_predicate(&g).unwrap(), oracle);
        if g.order() <= 32 {
            prop_assert_eq!(naive_dc(&g), oracle);
        }
    }

    #[test]
    fn chain_flag_is_pairwise_comparability(gi in 0usize..3, picks in prop::collection::vec(any::<usize>(), 0..8)) {
        let g = [symmetric(4), dihedral(16), sl23()][gi].clone().unwrap();
        let lattice = all_subgroups(&g, 2000).unwrap();
        let mut chosen: Vec<usize> = picks.iter().map(|k| k % lattice.len()).collect();
        chosen.sort();
        chosen.dedup();
        let members: Vec<_> = chosen.iter().map(|&i| lattice.get(i).clone()).collect();
        let mut ds = DerivedSet {
            witnesses: members.clone(),
            members,
            chain: None,
            incomparable_witness: None,
        };
        let pairwise = ds.members.iter().all(|a| {
            ds.members.iter().all(|b| set_of(a).is_subset(&set_of(b)) || set_of(b).is_subset(&set_of(a)))
        });
        prop_assert_eq!(is_chain(&mut ds), pairwise);
        prop_assert_eq!(ds.chain.is_some(), pairwise);
        if let Some((i, j)) = ds.incomparable_witness {
            let (a, b) = (set_of(&ds.members[i]), set_of(&ds.members[j]));
            prop_assert!(!a.is_subset(&b) && !b.is_subset(&a));
        }
    }
}
