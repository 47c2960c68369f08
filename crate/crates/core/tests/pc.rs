mod common;

use std::collections::BTreeMap;

use dcgroup::constructors::witnesses::{group1, group1_orientation, group2, group2_presentation, Orientation};
use dcgroup::constructors::GroupSpec;
use dcgroup::pc::{
    check_consistency, collect, element_of, normal_form_of, realize_pc_group, Collector, NormalForm,
    PcPresentation,
};
use dcgroup::{Elem, Error};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every single-rule mutation of `pres`: one power or commutator rule is
/// replaced by the identity or by a single power of a later generator.
fn single_rule_mutations(pres: &PcPresentation) -> Vec<(String, PcPresentation)> {
    let n = pres.len();
    let words = |after: usize| {
        let mut ws = vec![Vec::new()];
        for k in after + 1..n {
            for e in 1..pres.rel_orders()[k] {
                ws.push(vec![(k, e)]);
            }
        }
        ws
    };
    let mut out = Vec::new();
    for i in 0..n {
        for w in words(i) {
            if &w != pres.power_rule(i) {
                let mut m = pres.clone();
                m.set_power(i, w.clone()).unwrap();
                out.push((format!("g{}^o = {w:?}", i + 1), m));
            }
        }
    }
    for j in 0..n {
        for i in 0..j {
            for w in words(j) {
                if w.as_slice() != pres.comm_rule(j, i) {
                    let mut m = pres.clone();
                    m.set_commutator(j, i, w.clone()).unwrap();
                    out.push((format!("[g{}, g{}] = {w:?}", j + 1, i + 1), m));
                }
            }
        }
    }
    out
}

/// Searches triples of generator powers `g^1`, `g^(o-1)` for a failure of
/// associativity under plain collection. Overlap failures are exactly such
/// triples, so this is an independent consistency oracle.
fn associativity_failure(pres: &PcPresentation) -> Option<(NormalForm, NormalForm, NormalForm)> {
    let c = Collector::basic(pres);
    let mut atoms = Vec::new();
    for i in 0..pres.len() {
        let o = pres.rel_orders()[i];
        atoms.push(c.generator(i, 1));
        if o > 2 {
            atoms.push(c.generator(i, o - 1));
        }
    }
    for a in &atoms {
        for b in &atoms {
            let ab = c.mul(a, b).ok()?;
            for d in &atoms {
                let left = c.mul(&ab, d).ok()?;
                let right = c.mul(a, &c.mul(b, d).ok()?).ok()?;
                if left != right {
                    return Some((a.clone(), b.clone(), d.clone()));
                }
            }
        }
    }
    None
}

#[test]
fn group2_presentation_is_consistent() {
    let pres = group2_presentation().unwrap();
    let report = check_consistency(&pres);
    assert!(report.consistent, "{:?}", report.failure);
    assert!(report.tests_run > 0);
    assert_eq!(pres.order(), 78125);
    assert!(associativity_failure(&pres).is_none());
}

#[test]
fn group2_mutations_agree_with_associativity_oracle() {
    let pres = group2_presentation().unwrap();
    let mutations = single_rule_mutations(&pres);
    let mut inconsistent = 0;
    for (what, m) in &mutations {
        let report = check_consistency(m);
        let oracle = associativity_failure(m);
        assert_eq!(report.consistent, oracle.is_none(), "{what}: {report:?} vs {oracle:?}");
        if !report.consistent {
            inconsistent += 1;
            let failure = report.failure.as_ref().unwrap();
            assert!(!failure.test.is_empty());
            assert!(matches!(realize_pc_group(m), Err(Error::Inconsistent(_))));
        }
    }
    assert!(inconsistent > 0);
    assert!(inconsistent < mutations.len());
}

#[test]
fn cyclic_and_elementary_presentations() {
    let cp = PcPresentation::new(vec![7]).unwrap();
    assert!(check_consistency(&cp).consistent);
    let g = realize_pc_group(&cp).unwrap();
    assert_eq!(g.order(), 7);
    assert!(g.is_abelian());

    let klein = PcPresentation::new(vec![2, 2]).unwrap();
    let g = realize_pc_group(&klein).unwrap();
    assert_eq!(g.order(), 4);
    assert!(g.elements().all(|x| g.mul(x, x).is_identity()));
}

#[test]
fn invalid_presentations_are_rejected() {
    assert!(PcPresentation::new(vec![]).is_err());
    assert!(PcPresentation::new(vec![2, 3]).is_err());
    assert!(PcPresentation::new(vec![6]).is_err());
    let mut p = PcPresentation::new(vec![3, 3, 3]).unwrap();
    assert!(p.set_commutator(1, 0, vec![(1, 1)]).is_err());
    assert!(p.set_commutator(0, 1, vec![(2, 1)]).is_err());
    assert!(p.set_power(0, vec![(1, 3)]).is_err());
    assert!(p.set_commutator(1, 0, vec![(2, 1)]).is_ok());
}

#[test]
fn group2_relations_and_power_orders() {
    let ex = group2().unwrap();
    let g = &ex.group;
    assert_eq!(g.order(), 78125);
    for check in ex.verify_relations() {
        assert!(check.holds, "{}", check.relation);
    }
    let a1 = ex.handle("a1").unwrap();
    assert!(!g.pow(a1, 5).is_identity());
    assert!(g.pow(a1, 25).is_identity());
}

#[test]
fn group1_relations_hold_after_realization() {
    assert_eq!(group1_orientation(7).unwrap(), Orientation::Standard);
    let ex = group1(7).unwrap();
    let g = &ex.group;
    assert_eq!(g.order(), 823_543);
    let h = |n: &str| ex.handle(n).unwrap();
    assert_eq!(g.comm(h("x"), h("a")), h("a1"));
    for j in 1..=4 {
        assert_eq!(g.comm(h(&format!("a{j}")), h("a")), h(&format!("a{}", j + 1)));
    }
    for check in ex.verify_relations() {
        assert!(check.holds, "{}", check.relation);
    }
}

#[test]
fn group1_needs_a_prime_of_at_least_seven() {
    assert!(group1(5).is_err());
    assert!(group1(9).is_err());
}

#[test]
fn collect_is_idempotent_on_normal_forms() {
    let pres = group2_presentation().unwrap();
    let g = realize_pc_group(&pres).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2000 {
        let x = Elem(rng.gen_range(0..g.order() as u32));
        let nf = normal_form_of(&g, x).unwrap();
        let word: Vec<(usize, i64)> = nf.0.iter().enumerate().map(|(i, &e)| (i, e as i64)).collect();
        assert_eq!(collect(&pres, &word).unwrap(), nf);
        assert_eq!(element_of(&g, &nf), Some(x));
    }
}

/// `[1, 2]`-style keys of the spec format.
fn as_spec(pres: &PcPresentation) -> GroupSpec {
    let one_based = |w: &[(usize, u32)]| w.iter().map(|&(k, e)| (k + 1, e)).collect::<Vec<_>>();
    let mut powers = BTreeMap::new();
    for i in 0..pres.len() {
        if !pres.power_rule(i).is_empty() {
            powers.insert((i + 1).to_string(), one_based(pres.power_rule(i)));
        }
    }
    let commutators = pres
        .comm_rules()
        .map(|(&(j, i), w)| (format!("({},{})", j + 1, i + 1), one_based(w)))
        .collect();
    GroupSpec::Pc {
        orders: pres.rel_orders().to_vec(),
        powers,
        commutators,
    }
}

#[test]
fn group2_transcribed_as_a_pc_spec() {
    let pres = group2_presentation().unwrap();
    let spec = GroupSpec::from_json(&as_spec(&pres).to_canonical_json()).unwrap();
    let g = spec.realize().unwrap();
    let reference = group2().unwrap().group;
    assert_eq!(g.order(), 78125);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let x = Elem(rng.gen_range(0..g.order() as u32));
        let y = Elem(rng.gen_range(0..g.order() as u32));
        assert_eq!(normal_form_of(&g, g.mul(x, y)), normal_form_of(&reference, reference.mul(x, y)));
    }
}

#[test]
fn corpus_pc_groups_associate_exhaustively() {
    for (id, spec) in common::corpus() {
        if !matches!(spec, GroupSpec::Pc { .. }) {
            continue;
        }
        let g = spec.realize().unwrap();
        assert!(g.order() <= 4096, "{id}");
        for x in g.elements() {
            for y in g.elements() {
                let xy = g.mul(x, y);
                for z in g.elements() {
                    assert_eq!(g.mul(xy, z), g.mul(x, g.mul(y, z)), "{id}");
                }
            }
        }
    }
}

#[test]
fn large_pc_groups_associate_on_random_triples() {
    for g in [group2().unwrap().group, group1(7).unwrap().group] {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = g.order() as u32;
        for _ in 0..100_000 {
            let (x, y, z) = (
                Elem(rng.gen_range(0..n)),
                Elem(rng.gen_range(0..n)),
                Elem(rng.gen_range(0..n)),
            );
            assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        }
    }
}

fn word_strategy(n: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..n, -30i64..30), 0..24)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn basic_and_chunked_collectors_agree(word in word_strategy(7)) {
        let pres = group2_presentation().unwrap();
        let basic = Collector::basic(&pres).collect(&word).unwrap();
        let chunked = Collector::chunked(&pres).unwrap().collect(&word).unwrap();
        prop_assert_eq!(basic, chunked);
    }

    #[test]
    fn collection_is_a_homomorphism(u in word_strategy(7), v in word_strategy(7)) {
        let pres = group2_presentation().unwrap();
        let c = Collector::basic(&pres);
        let uv: Vec<(usize, i64)> = u.iter().chain(&v).copied().collect();
        let joined = c.collect(&uv).unwrap();
        prop_assert_eq!(joined, c.mul(&c.collect(&u).unwrap(), &c.collect(&v).unwrap()).unwrap());
        let cu = c.collect(&u).unwrap();
        prop_assert!(c.mul(&cu, &c.inverse(&cu).unwrap()).unwrap().is_identity());
    }
}
