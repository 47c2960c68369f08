//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero
//! exit status if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::{backtracking_subgroups, corpus, corpus_groups, set_of, Set};
use dcgroup::census::{theorem_census, CensusEntry, CensusOptions, CensusReport, Claim, GroupReport};
use dcgroup::constructors::families::{abelian, dihedral, generalized_quaternion, sl23, symmetric};
use dcgroup::constructors::witnesses::{group1, group1_orientation, group2, Orientation};
use dcgroup::constructors::{direct_product, s6_example};
use dcgroup::dc::{
    dc_2group_predicate, derived_set, example_properties, is_dc_oracle, is_sublattice, sublattice_violation,
    DcMethod, LatticeOp,
};
use dcgroup::lattice::{all_subgroups, meet};
use dcgroup::pc::check_consistency;
use dcgroup::structure::{derived_series, derived_subgroup, normalizer, prime_of_power, sylow_decomposition};
use dcgroup::FiniteGroup;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_census(threads: usize) -> CensusReport {
    let entries: Vec<CensusEntry> = corpus().into_iter().map(|(id, spec)| CensusEntry { id, spec }).collect();
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(|| theorem_census(&entries, &CensusOptions::default()))
}

/// Zero failures and at least one pass for every listed claim.
fn claims_clean(census: &CensusReport, claims: &[Claim]) -> Verdict {
    let mut parts = Vec::new();
    for &c in claims {
        let t = &census.tally[&c];
        ensure(t.fail == 0, || {
            let who: Vec<String> = census
                .groups
                .iter()
                .filter(|g| g.outcome(c).is_some_and(|o| o.is_fail()))
                .map(|g| g.id.clone())
                .collect();
            format!("{} failed on {}", c.id(), who.join(", "))
        })?;
        ensure(t.pass > 0, || format!("{} never exercised", c.id()))?;
        parts.push(format!("{} {}", c.id(), t.pass));
    }
    Ok(parts.join(", "))
}

fn oracle_dc_pgroups(census: &CensusReport) -> impl Iterator<Item = &GroupReport> {
    census.groups.iter().filter(|g| {
        g.dc.method == Some(DcMethod::Oracle) && g.dc.is_dc == Some(true) && g.invariants.p.is_some()
    })
}

fn criterion1() -> Verdict {
    let ex = s6_example().map_err(|e| e.to_string())?;
    let g = &ex.group;
    let hd = derived_subgroup(g, &ex.h);
    let kd = derived_subgroup(g, &ex.k);
    ensure(hd.order() == 18, || format!("|H'| = {}", hd.order()))?;
    let semidirect = g.extend(&ex.n, &[ex.elem(&[&[1, 2], &[4, 5]])]);
    ensure(hd == semidirect, || "H' differs from N x| <(12)(45)>".into())?;
    ensure(kd == ex.k, || "K' differs from K".into())?;
    let m = meet(g, &hd, &kd).map_err(|e| e.to_string())?;
    ensure(m.order() == 6, || format!("|H' ∩ K'| = {}", m.order()))?;
    let nm = normalizer(g, &m, &g.whole()).map_err(|e| e.to_string())?;
    ensure(nm.order() == 12, || format!("|N(H' ∩ K')| = {}", nm.order()))?;
    let lattice = all_subgroups(g, 2000).map_err(|e| e.to_string())?;
    let hits = lattice.iter().filter(|s| derived_subgroup(g, s) == m).count();
    ensure(hits == 0, || format!("{hits} subgroups have derived subgroup H' ∩ K'"))?;
    let ds = derived_set(g, &lattice).map_err(|e| e.to_string())?;
    ensure(ds.contains(&hd) && ds.contains(&kd), || "H' or K' missing from DS".into())?;
    let failure = sublattice_violation(g, &ds, &hd, &kd)
        .map_err(|e| e.to_string())?
        .ok_or("(H', K') is not a violation")?;
    ensure(failure.op == LatticeOp::Meet && failure.result == m, || {
        format!("violation is {:?} of order {}", failure.op, failure.result.order())
    })?;
    let whole = is_sublattice(g, &ds, &lattice).map_err(|e| e.to_string())?;
    ensure(whole.is_err(), || "is_sublattice reported true".into())?;
    Ok(format!("|L(S6)| = {}, |DS| = {}, H' ∩ K' of order 6 is not a derived subgroup", lattice.len(), ds.len()))
}

fn criterion2() -> Verdict {
    let g = sl23().map_err(|e| e.to_string())?;
    let v = is_dc_oracle(&g, 2000).map_err(|e| e.to_string())?;
    ensure(v.is_dc && v.method == DcMethod::Oracle, || format!("{v:?}"))?;
    let ds = derived_set(&g, &all_subgroups(&g, 2000).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(ds.orders() == [1, 2, 8] && ds.chain.is_some(), || format!("DS orders {:?}", ds.orders()))?;
    let split = sylow_decomposition(&g, 2, 2000)
        .map_err(|e| e.to_string())?
        .ok_or("no Sylow split")?;
    ensure(
        split.sylow.order() == 8 && split.complement.order() == 3 && split.complement_abelian,
        || format!("split ({}, {})", split.sylow.order(), split.complement.order()),
    )?;
    Ok("DS chain 1 < 2 < 8, P of order 8, abelian A of order 3".into())
}

fn criterion3() -> Verdict {
    let mut compared = 0;
    let mut dc = 0;
    for (id, g) in corpus_groups(64) {
        if prime_of_power(g.order()) != Some(2) {
            continue;
        }
        let oracle = is_dc_oracle(&g, 2000).map_err(|e| e.to_string())?.is_dc;
        let fast = dc_2group_predicate(&g).map_err(|e| e.to_string())?;
        ensure(fast == oracle, || format!("{id}: predicate {fast}, oracle {oracle}"))?;
        compared += 1;
        dc += oracle as usize;
    }
    ensure(compared >= 25, || format!("only {compared} two-groups"))?;
    Ok(format!("{compared} two-groups of order <= 64 agree ({dc} DC, {} not)", compared - dc))
}

fn criterion4(census: &CensusReport) -> Verdict {
    let mut checked = 0;
    let mut primes = BTreeSet::new();
    let mut at_bound = 0;
    for g in oracle_dc_pgroups(census) {
        let inv = &g.invariants;
        let p = inv.p.unwrap();
        let rank = inv.derived_rank.ok_or_else(|| format!("{}: no d(G')", g.id))?;
        ensure(rank <= p, || format!("{}: d(G') = {rank} > {p}", g.id))?;
        if rank == p {
            let t = inv.derived_type.as_ref().ok_or_else(|| format!("{}: no type", g.id))?;
            ensure(t.rank() == p && t.is_elementary(p as u64), || format!("{}: G' = {t}", g.id))?;
            at_bound += 1;
        }
        primes.insert(p);
        checked += 1;
    }
    ensure(primes.is_superset(&BTreeSet::from([2, 3, 5])), || format!("primes {primes:?}"))?;
    claims_clean(census, &[Claim::DcDerivedRank, Claim::DcDerivedRankElementary])?;
    Ok(format!("{checked} oracle-DC p-groups, primes {primes:?}, {at_bound} with d(G') = p"))
}

fn criterion5(census: &CensusReport) -> Verdict {
    claims_clean(
        census,
        &[
            Claim::DcLcsFactorsCyclic,
            Claim::DcLcsTermContainment,
            Claim::DcCenterMeetCyclic,
            Claim::DcCenterMeetLastTerm,
            Claim::DcRegularDerivedRank,
            Claim::DcAbelianMaximalDerivedRank,
            Claim::DcAgemoIndex,
        ],
    )
}

fn criterion6(census: &CensusReport) -> Verdict {
    let groups = claims_clean(census, &[Claim::DcSubgroupHeredity, Claim::DcQuotientHeredity])?;
    let direct: Vec<_> = census.pairs.iter().filter(|p| p.claim == Claim::DcDirectProduct).collect();
    ensure(direct.len() >= 10, || format!("only {} direct pairs", direct.len()))?;
    ensure(direct.iter().all(|p| p.outcome.is_pass()), || {
        let bad: Vec<String> = direct
            .iter()
            .filter(|p| !p.outcome.is_pass())
            .map(|p| format!("{} x {}", p.left, p.right))
            .collect();
        format!("direct product pairs failed: {}", bad.join(", "))
    })?;
    let central = claims_clean(census, &[Claim::DcCentralProduct])?;
    Ok(format!("{groups}, {} direct-product pairs, {central}", direct.len()))
}

fn criterion7(census: &CensusReport) -> Verdict {
    claims_clean(
        census,
        &[
            Claim::MinimalNonabelianDerived,
            Claim::TwoGenAbelianMaximalCenter,
            Claim::CommutatorImage,
            Claim::MetabelianCommutatorPower,
            Claim::TwoGeneratorDerivedAbelian,
            Claim::LcsExponentMonotone,
            Claim::ClassBelowPRegular,
            Claim::RegularPowerCommutator,
            Claim::LcsSubgroupEquality,
        ],
    )
}

fn criterion8() -> Verdict {
    let start = Instant::now();
    let ex = group2().map_err(|e| e.to_string())?;
    let report = check_consistency(&ex.presentation);
    ensure(report.consistent, || format!("{:?}", report.failure))?;
    ensure(ex.group.order() == 78125, || format!("|G| = {}", ex.group.order()))?;
    let props = example_properties(&ex.group).map_err(|e| e.to_string())?;
    ensure(props.derived_nonabelian, || "G' abelian".into())?;
    ensure(props.center_cyclic, || "Z(G) not cyclic".into())?;
    ensure(props.d == 2, || format!("d(G) = {}", props.d))?;
    ensure(props.maximal_count == 6, || format!("{} maximal subgroups", props.maximal_count))?;
    ensure(props.small_derived_maximals.len() == 1, || {
        format!("{} maximal subgroups with |M'| = 5", props.small_derived_maximals.len())
    })?;
    ensure(props.other_centers_cyclic, || "some Z(M) not cyclic".into())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs <= 300.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} overlap tests, 6 maximal subgroups, unique M0, {secs:.1}s", report.tests_run))
}

fn criterion9() -> Verdict {
    let start = Instant::now();
    ensure(group1_orientation(7).map_err(|e| e.to_string())? == Orientation::Standard, || {
        "relations do not pin the stated orientation".into()
    })?;
    let ex = group1(7).map_err(|e| e.to_string())?;
    let g = &ex.group;
    ensure(check_consistency(&ex.presentation).consistent, || "inconsistent".into())?;
    ensure(g.order() == 823_543, || format!("|G| = {}", g.order()))?;
    let h = |n: &str| ex.handle(n).ok_or(format!("no generator {n}"));
    ensure(g.comm(h("x")?, h("a")?) == h("a1")?, || "[x,a] != a1".into())?;
    for j in 1..=4 {
        let (aj, next) = (h(&format!("a{j}"))?, h(&format!("a{}", j + 1))?);
        ensure(g.comm(aj, h("a")?) == next, || format!("[a{j},a] != a{}", j + 1))?;
    }
    let failed: Vec<String> = ex.verify_relations().into_iter().filter(|c| !c.holds).map(|c| c.relation).collect();
    ensure(failed.is_empty(), || format!("relations fail: {}", failed.join(", ")))?;
    let props = example_properties(g).map_err(|e| e.to_string())?;
    ensure(props.all_hold(), || format!("{props:?}"))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs <= 1200.0, || format!("took {secs:.1}s"))?;
    Ok(format!("Z(G) cyclic, d(G) = 2, unique M0 among {} maximal subgroups, {secs:.1}s", props.maximal_count))
}

fn criterion10(census: &CensusReport) -> Verdict {
    let mut checked = 0;
    for g in oracle_dc_pgroups(census).filter(|g| g.invariants.p.is_some_and(|p| p <= 3)) {
        let dl = g.invariants.dl.ok_or_else(|| format!("{}: no dl", g.id))?;
        ensure(dl <= 2, || format!("{}: dl = {dl}", g.id))?;
        checked += 1;
    }
    claims_clean(census, &[Claim::DcSmallPrimeMetabelian])?;
    let ex = group2().map_err(|e| e.to_string())?;
    let ds = derived_series(&ex.group, &ex.group.whole());
    ensure(ds.length == 3 && ds.reaches_trivial, || format!("dl = {}", ds.length))?;
    ensure(!ds.term(2).is_abelian(&ex.group), || "G' abelian".into())?;
    let report = census.group("group2").ok_or("group2 missing from census")?;
    ensure(report.invariants.dl == Some(3) && report.dc.is_dc == Some(true), || {
        format!("census reports dl {:?}, DC {:?}", report.invariants.dl, report.dc.is_dc)
    })?;
    Ok(format!("{checked} oracle-DC p-groups with p <= 3 have dl <= 2; group2 has dl 3"))
}

fn criterion11(census: &CensusReport) -> Verdict {
    let one = serde_json::to_string(census).map_err(|e| e.to_string())?;
    let four = serde_json::to_string(&run_census(4)).map_err(|e| e.to_string())?;
    ensure(one == four, || "census differs between 1 and 4 threads".into())?;
    let mut groups = corpus_groups(48);
    let c2 = abelian(&[2]).map_err(|e| e.to_string())?;
    let extra: Vec<(String, FiniteGroup)> = vec![
        ("d24".into(), dihedral(24).map_err(|e| e.to_string())?),
        ("q8xc2xc3".into(), {
            let q = direct_product(&generalized_quaternion(8).map_err(|e| e.to_string())?, &c2)
                .map_err(|e| e.to_string())?;
            direct_product(&q, &abelian(&[3]).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?
        }),
        ("s4xc2".into(), direct_product(&symmetric(4).map_err(|e| e.to_string())?, &c2).map_err(|e| e.to_string())?),
        ("c2^5".into(), abelian(&[2, 2, 2, 2, 2]).map_err(|e| e.to_string())?),
    ];
    groups.extend(extra);
    for (id, g) in &groups {
        let lattice = all_subgroups(g, 2000).map_err(|e| e.to_string())?;
        let ours: BTreeSet<Set> = lattice.iter().map(set_of).collect();
        let theirs = backtracking_subgroups(g);
        ensure(ours == theirs && ours.len() == lattice.len(), || {
            format!("{id}: {} subgroups vs {} by backtracking", lattice.len(), theirs.len())
        })?;
    }
    Ok(format!(
        "{} bytes identical across 1 and 4 threads; {} lattices match backtracking",
        one.len(),
        groups.len()
    ))
}

fn guarded(f: impl FnOnce() -> Verdict) -> Verdict {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    })
}

fn main() -> ExitCode {
    let start = Instant::now();
    let census = catch_unwind(|| run_census(1)).map_err(|_| "census panicked".to_string());
    let with_census = |f: fn(&CensusReport) -> Verdict| match &census {
        Ok(c) => guarded(|| f(c)),
        Err(e) => Err(e.clone()),
    };
    let results: Vec<Verdict> = vec![
        guarded(criterion1),
        guarded(criterion2),
        guarded(criterion3),
        with_census(criterion4),
        with_census(criterion5),
        with_census(criterion6),
        with_census(criterion7),
        guarded(criterion8),
        guarded(criterion9),
        with_census(criterion10),
        with_census(criterion11),
    ];
    let mut failed = 0;
    for (i, r) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({why})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass in {:.1}s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
