//! Per-group analysis reports and the corpus-wide census of claims about
//! DC groups and the p-group facts they rest on.
//!
//! Every claim is evaluated only on groups meeting its hypothesis and is
//! recorded as passed, failed (with a concrete witness) or skipped (with
//! the unmet hypothesis). Claims that need the DC verdict use the lattice
//! oracle only.

use std::cell::OnceCell;
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructors::families::{abelian, cyclic, dihedral};
use crate::constructors::products::{central_product, direct_product};
use crate::constructors::spec::GroupSpec;
use crate::constructors::witnesses::{group1, group2, s6_example, PcExample, S6Example};
use crate::dc::{
    commutator_image_lemma, dc_2group_predicate, dc_fast, dc_sufficient_conditions, derived_set,
    derived_set_within, example_properties, is_dc_oracle, is_sublattice, sublattice_violation,
    verdict_from, DcMethod, DerivedSet, ExampleProperties, LatticeOp, Outcome, SufficientCondition,
};
use crate::error::{Error, Result};
use crate::group::{quotient_group, Elem, FiniteGroup, Subgroup};
use crate::lattice::{
    all_subgroups, frattini_from_lattice, join, maximal_subgroups_pgroup, meet, SubgroupLattice,
    DEFAULT_LATTICE_CAP,
};
use crate::structure::{
    abelian_type, agemo, center, derived_series, derived_subgroup, exponent, frattini,
    fundamental_subgroup, is_regular, log_p, lower_central_series, min_generators,
    min_generators_by_search, normalizer, order_modulo, p_abelian_witness, prime_of_power,
    quotient_exponent, sylow_decomposition_in, AbelianType, SeriesReport,
    GENERATOR_SEARCH_BUDGET,
};

/// Claims quantifying over all pairs of elements run up to this order.
pub const DEFAULT_PAIR_CAP: usize = 2000;
/// The commutator power identity is checked on all pairs up to this order
/// and on random pairs above it.
pub const EXHAUSTIVE_PAIRS_ORDER: usize = 128;
pub const RANDOM_PAIRS: usize = 10_000;
const BRUTE_FORCE_ORDER: usize = 200;
const MAXIMAL_ROUTES_ORDER: usize = 512;
const PAIR_FACTOR_ORDER: usize = 32;
const PAIR_PRODUCT_ORDER: usize = 128;
const DIRECT_PAIRS: usize = 20;
const CENTRAL_PAIRS: usize = 10;

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub lattice_cap: usize,
    /// Never enumerate lattices; decide DC by fast criteria only.
    pub fast_only: bool,
    pub pair_cap: usize,
    pub seed: u64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            lattice_cap: DEFAULT_LATTICE_CAP,
            fast_only: false,
            pair_cap: DEFAULT_PAIR_CAP,
            seed: 0x5eed,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    ChainImpliesSublattice,
    DcSolvable,
    DcSylowSplit,
    DcSubgroupHeredity,
    DcQuotientHeredity,
    DcLcsFactorsCyclic,
    DcLcsTermContainment,
    DcCenterMeetCyclic,
    DcCenterMeetLastTerm,
    DcRegularDerivedRank,
    DcAbelianMaximalDerivedRank,
    DcAgemoIndex,
    DcDerivedRank,
    DcDerivedRankElementary,
    DcTwoGroupCriterion,
    DcTwoGeneratorTwoGroup,
    DcSmallPrimeMetabelian,
    DcSufficientSoundness,
    DcMaxClassThreeGroups,
    DcDirectProduct,
    DcCentralProduct,
    MinimalNonabelianDerived,
    MaxClassThreeFundamental,
    MaxClassMaximalSubgroups,
    TwoGenAbelianMaximalCenter,
    CommutatorImage,
    MetabelianCommutatorPower,
    PAbelianCriterion,
    TwoGeneratorDerivedAbelian,
    LcsExponentMonotone,
    ClassBelowPRegular,
    RegularPowerCommutator,
    LcsSubgroupEquality,
    FrattiniTwoRoutes,
    BurnsideBasis,
    DerivedPairsClosure,
    MaximalTwoRoutes,
    ExampleProperties,
    ExampleRelations,
    S6DerivedMeet,
}

impl Claim {
    pub const ALL: [Claim; 40] = [
        Claim::ChainImpliesSublattice,
        Claim::DcSolvable,
        Claim::DcSylowSplit,
        Claim::DcSubgroupHeredity,
        Claim::DcQuotientHeredity,
        Claim::DcLcsFactorsCyclic,
        Claim::DcLcsTermContainment,
        Claim::DcCenterMeetCyclic,
        Claim::DcCenterMeetLastTerm,
        Claim::DcRegularDerivedRank,
        Claim::DcAbelianMaximalDerivedRank,
        Claim::DcAgemoIndex,
        Claim::DcDerivedRank,
        Claim::DcDerivedRankElementary,
        Claim::DcTwoGroupCriterion,
        Claim::DcTwoGeneratorTwoGroup,
        Claim::DcSmallPrimeMetabelian,
        Claim::DcSufficientSoundness,
        Claim::DcMaxClassThreeGroups,
        Claim::DcDirectProduct,
        Claim::DcCentralProduct,
        Claim::MinimalNonabelianDerived,
        Claim::MaxClassThreeFundamental,
        Claim::MaxClassMaximalSubgroups,
        Claim::TwoGenAbelianMaximalCenter,
        Claim::CommutatorImage,
        Claim::MetabelianCommutatorPower,
        Claim::PAbelianCriterion,
        Claim::TwoGeneratorDerivedAbelian,
        Claim::LcsExponentMonotone,
        Claim::ClassBelowPRegular,
        Claim::RegularPowerCommutator,
        Claim::LcsSubgroupEquality,
        Claim::FrattiniTwoRoutes,
        Claim::BurnsideBasis,
        Claim::DerivedPairsClosure,
        Claim::MaximalTwoRoutes,
        Claim::ExampleProperties,
        Claim::ExampleRelations,
        Claim::S6DerivedMeet,
    ];

    pub fn id(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .expect("claims serialize as strings")
    }

    pub fn statement(self) -> &'static str {
        match self {
            Claim::ChainImpliesSublattice => "if DS(G) is a chain, it is closed under meet and join",
            Claim::DcSolvable => "a DC group is solvable",
            Claim::DcSylowSplit => "a DC group is P ⋊ A with P a normal Sylow p-subgroup and A an abelian p'-subgroup",
            Claim::DcSubgroupHeredity => "every subgroup of a DC group is DC",
            Claim::DcQuotientHeredity => "every quotient of a DC group is DC",
            Claim::DcLcsFactorsCyclic => "a non-abelian DC p-group has K_i/K_{i+1} cyclic for 2 <= i <= cl",
            Claim::DcLcsTermContainment => "in a non-abelian DC p-group, |K_i| <= |H'| implies K_i <= H'",
            Claim::DcCenterMeetCyclic => "a non-abelian DC p-group with d(G') = 2 has G' ∩ Z(G) cyclic",
            Claim::DcCenterMeetLastTerm => "a non-abelian DC p-group with exp(G') = p has G' ∩ Z(G) = K_c ≅ C_p",
            Claim::DcRegularDerivedRank => "a non-abelian regular DC p-group, p odd, has d(G') <= p - 2",
            Claim::DcAbelianMaximalDerivedRank => "a non-abelian DC p-group with an abelian maximal subgroup has d(G') <= p - 1",
            Claim::DcAgemoIndex => "a non-abelian DC p-group has |G' : Agemo_1(G')| <= p^p",
            Claim::DcDerivedRank => "a non-abelian DC p-group has d(G') <= p",
            Claim::DcDerivedRankElementary => "a non-abelian DC p-group with d(G') = p has G' ≅ C_p^p",
            Claim::DcTwoGroupCriterion => "a 2-group is DC iff G' is cyclic, or G' ≅ C_2^2 and cl(G) = 3",
            Claim::DcTwoGeneratorTwoGroup => "a two-generator non-abelian 2-group is DC iff G' is cyclic or G' ≅ C_2^2",
            Claim::DcSmallPrimeMetabelian => "a DC p-group with p <= 3 has dl(G) <= 2",
            Claim::DcSufficientSoundness => "a p-group with cyclic G', or two generators and an abelian maximal subgroup, or maximal class with |G_1'| = p (p > 2, n >= p + 2) is DC",
            Claim::DcMaxClassThreeGroups => "a 3-group of maximal class of order 3^n, n >= 5, is DC",
            Claim::DcDirectProduct => "for a non-abelian p-group G and a p-group A, G × A is DC iff G is DC and A is abelian",
            Claim::DcCentralProduct => "for a non-abelian p-group G and an abelian p-group A, G ∗ A is DC iff G is DC",
            Claim::MinimalNonabelianDerived => "a minimal non-abelian group has G' a p-group, of order p when G is a p-group",
            Claim::MaxClassThreeFundamental => "the fundamental subgroup of a 3-group of maximal class is abelian or minimal non-abelian",
            Claim::MaxClassMaximalSubgroups => "in a group of maximal class of order p^n, p > 2, n >= p + 2, every maximal subgroup other than G_1 has maximal class",
            Claim::TwoGenAbelianMaximalCenter => "a non-abelian p-group with d(G) = 2 and an abelian maximal subgroup has Z(G) ∩ G' = K_c ≅ C_p",
            Claim::CommutatorImage => "a p-group with d(G') <= 2 has G' = {[x, g] : g in G} for some x",
            Claim::MetabelianCommutatorPower => "in a metabelian group [x^n, y] = ∏_{i=1}^{n} [x, y, (i-1)x]^C(n,i)",
            Claim::PAbelianCriterion => "a two-generator metabelian p-group is p-abelian iff exp(G') <= p and cl(G) < p",
            Claim::TwoGeneratorDerivedAbelian => "a p-group with d(G) <= 2 and d(G') <= 2 has G' abelian",
            Claim::LcsExponentMonotone => "a p-group has exp(K_i/K_{i+1}) <= exp(K_{i-1}/K_i) for i >= 2",
            Claim::ClassBelowPRegular => "a p-group of class less than p is regular",
            Claim::RegularPowerCommutator => "in a regular p-group [x^{p^k}, y^{p^n}] = 1 iff [x, y]^{p^{k+n}} = 1 (k + n <= 2)",
            Claim::LcsSubgroupEquality => "in a nilpotent group, G' = H'K_3(G) implies K_i(G) = K_i(H) for all i >= 2",
            Claim::FrattiniTwoRoutes => "the intersection of the maximal subgroups of a p-group equals G'G^p",
            Claim::BurnsideBasis => "a p-group needs exactly log_p |G : Phi(G)| generators",
            Claim::DerivedPairsClosure => "the derived subgroup equals the closure of all commutators of pairs",
            Claim::MaximalTwoRoutes => "the maximal subgroups of a p-group read off the lattice equal the preimages of hyperplanes of G/Phi(G)",
            Claim::ExampleProperties => "the order p^7 example has cyclic center, d(G) = 2, a unique maximal M_0 with |M_0'| = p, cyclic Z(M) for the other maximal subgroups, and non-abelian G'",
            Claim::ExampleRelations => "the realized order p^7 example satisfies every stated defining relation",
            Claim::S6DerivedMeet => "in S6, H' ∩ K' has no subgroup with that derived subgroup, so DS(S6) is not a sublattice",
        }
    }
}

/// A subgroup as its order and a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRef {
    pub order: usize,
    pub generators: Vec<u32>,
}

impl From<&Subgroup> for SubgroupRef {
    fn from(h: &Subgroup) -> Self {
        SubgroupRef {
            order: h.order(),
            generators: h.gens().iter().map(|x| x.0).collect(),
        }
    }
}

fn sref(h: &Subgroup) -> String {
    format!("order {} gens {:?}", h.order(), SubgroupRef::from(h).generators)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub order: usize,
    pub factorization: Vec<(usize, u32)>,
    pub p: Option<usize>,
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub cl: Option<usize>,
    pub dl: Option<usize>,
    /// `None` when the generator search ran out of budget.
    pub d: Option<usize>,
    pub derived_order: usize,
    /// Invariant factors of `G'`; `None` when `G'` is non-abelian.
    pub derived_type: Option<AbelianType>,
    /// `d(G')`, for p-groups.
    pub derived_rank: Option<usize>,
    pub center_order: usize,
    pub exponent: u64,
    pub lower_central_orders: Vec<usize>,
    pub derived_series_orders: Vec<usize>,
}

impl Invariants {
    /// `G'` type for tables: invariant factors, or `non-abelian`.
    pub fn derived_type_label(&self) -> String {
        match &self.derived_type {
            Some(t) => t.to_string(),
            None => "non-abelian".to_string(),
        }
    }
}

pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        let mut e = 0;
        while n % q == 0 {
            n /= q;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SublatticeWitness {
    pub a: SubgroupRef,
    pub b: SubgroupRef,
    pub op: LatticeOp,
    pub result: SubgroupRef,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DcSection {
    pub is_dc: Option<bool>,
    pub method: Option<DcMethod>,
    pub lattice_size: Option<usize>,
    pub derived_set: Option<Vec<SubgroupRef>>,
    pub incomparable: Option<(SubgroupRef, SubgroupRef)>,
    pub is_sublattice: Option<bool>,
    pub sublattice_failure: Option<SublatticeWitness>,
    pub sufficient_conditions: Option<Vec<SufficientCondition>>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim: Claim,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub id: String,
    pub invariants: Invariants,
    pub dc: DcSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<ExampleProperties>,
    pub claims: Vec<ClaimResult>,
}

impl GroupReport {
    pub fn outcome(&self, claim: Claim) -> Option<&Outcome> {
        self.claims.iter().find(|c| c.claim == claim).map(|c| &c.outcome)
    }

    pub fn failed_claims(&self) -> Vec<Claim> {
        self.claims
            .iter()
            .filter(|c| c.outcome.is_fail())
            .map(|c| c.claim)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairResult {
    pub claim: Claim,
    pub left: String,
    pub right: String,
    pub product_order: usize,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecFailure {
    pub id: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub groups: Vec<GroupReport>,
    pub pairs: Vec<PairResult>,
    /// Specs that could not be read or realized; skipped, not fatal.
    pub skipped_specs: Vec<SpecFailure>,
    pub tally: BTreeMap<Claim, Tally>,
    /// Claims whose hypothesis no corpus member met.
    pub unexercised: Vec<Claim>,
}

impl CensusReport {
    pub fn failure_count(&self) -> usize {
        self.tally.values().map(|t| t.fail).sum()
    }

    pub fn group(&self, id: &str) -> Option<&GroupReport> {
        self.groups.iter().find(|g| g.id == id)
    }

    pub fn record_skipped_spec(&mut self, id: String, reason: String) {
        self.skipped_specs.push(SpecFailure { id, reason });
        self.skipped_specs.sort_by(|a, b| a.id.cmp(&b.id));
    }

    fn finish(&mut self) {
        let mut tally: BTreeMap<Claim, Tally> = Claim::ALL.iter().map(|&c| (c, Tally::default())).collect();
        let all = self
            .groups
            .iter()
            .flat_map(|g| g.claims.iter().map(|c| (c.claim, &c.outcome)))
            .chain(self.pairs.iter().map(|p| (p.claim, &p.outcome)));
        for (claim, outcome) in all {
            let t = tally.get_mut(&claim).expect("every claim is tallied");
            match outcome {
                Outcome::Pass { .. } => t.pass += 1,
                Outcome::Fail { .. } => t.fail += 1,
                Outcome::Skipped { .. } => t.skipped += 1,
            }
        }
        self.unexercised = tally
            .iter()
            .filter(|(_, t)| t.pass + t.fail == 0)
            .map(|(&c, _)| c)
            .collect();
        self.tally = tally;
    }
}

/// What the census knows about a group beyond its abstract structure.
enum Extra {
    None,
    S6(Box<S6Example>),
    Pc(Box<PcExample>),
}

fn realize(spec: &GroupSpec) -> Result<(FiniteGroup, Extra)> {
    if let GroupSpec::Witness { name, p } = spec {
        match (name.as_str(), p) {
            ("s6_example", None) => {
                let ex = s6_example()?;
                return Ok((ex.group.clone(), Extra::S6(Box::new(ex))));
            }
            ("group1", Some(p)) => {
                let ex = group1(*p)?;
                return Ok((ex.group.clone(), Extra::Pc(Box::new(ex))));
            }
            ("group2", None) => {
                let ex = group2()?;
                return Ok((ex.group.clone(), Extra::Pc(Box::new(ex))));
            }
            _ => {}
        }
    }
    Ok((spec.realize()?, Extra::None))
}

struct LatticeData {
    lattice: SubgroupLattice,
    derived: Vec<Subgroup>,
    ds: DerivedSet,
}

struct Ctx<'a> {
    g: &'a FiniteGroup,
    opts: &'a CensusOptions,
    whole: Subgroup,
    p: Option<usize>,
    n: u32,
    lcs: SeriesReport,
    dseries: SeriesReport,
    derived: Subgroup,
    center: Subgroup,
    d: Option<usize>,
    d_derived: Option<usize>,
    lat: Option<LatticeData>,
    oracle: Option<bool>,
    maximals: OnceCell<Option<Vec<Subgroup>>>,
    regular: OnceCell<Option<bool>>,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a FiniteGroup, opts: &'a CensusOptions) -> Result<Self> {
        let whole = g.whole();
        let p = prime_of_power(g.order());
        let lcs = lower_central_series(g, &whole);
        let dseries = derived_series(g, &whole);
        let derived = dseries.term(2).clone();
        let d = match min_generators(g, &whole) {
            Ok(d) => Some(d),
            Err(Error::SearchBudgetExceeded(_)) => None,
            Err(e) => return Err(e),
        };
        let d_derived = match p {
            Some(_) => Some(min_generators(g, &derived)?),
            None => None,
        };
        let lat = if !opts.fast_only && g.order() <= opts.lattice_cap {
            let lattice = all_subgroups(g, opts.lattice_cap)?;
            let derived: Vec<Subgroup> = lattice.subgroups().par_iter().map(|h| derived_subgroup(g, h)).collect();
            let ds = derived_set(g, &lattice)?;
            Some(LatticeData { lattice, derived, ds })
        } else {
            None
        };
        let oracle = lat.as_ref().map(|l| l.ds.chain.is_some());
        Ok(Ctx {
            g,
            opts,
            center: center(g, &whole),
            n: p.map_or(0, |p| log_p(g.order(), p)),
            whole,
            p,
            lcs,
            dseries,
            derived,
            d,
            d_derived,
            lat,
            oracle,
            maximals: OnceCell::new(),
            regular: OnceCell::new(),
        })
    }

    fn is_abelian(&self) -> bool {
        self.derived.is_trivial()
    }

    fn cl(&self) -> Option<usize> {
        self.lcs.reaches_trivial.then_some(self.lcs.length)
    }

    /// Maximal subgroups of a non-trivial p-group.
    fn maximals(&self) -> Option<&[Subgroup]> {
        self.maximals
            .get_or_init(|| match self.p {
                Some(_) => maximal_subgroups_pgroup(self.g, &self.whole).ok(),
                None => self.lat.as_ref().and_then(|l| l.lattice.maximal_subgroups().ok()),
            })
            .as_deref()
    }

    fn has_abelian_maximal(&self) -> bool {
        self.maximals().is_some_and(|ms| ms.iter().any(|m| m.is_abelian(self.g)))
    }

    fn regular(&self) -> Option<bool> {
        *self.regular.get_or_init(|| {
            (self.p.is_some() && self.g.order() <= self.opts.pair_cap)
                .then(|| is_regular(self.g, &self.whole).expect("p-group"))
        })
    }

    /// The p of a non-abelian p-group that the oracle found DC.
    fn dc_nonabelian_p(&self) -> std::result::Result<usize, Outcome> {
        let p = self.p.ok_or_else(|| Outcome::skipped("not a p-group"))?;
        if self.is_abelian() {
            return Err(Outcome::skipped("abelian"));
        }
        self.require_dc()?;
        Ok(p)
    }

    fn require_dc(&self) -> std::result::Result<(), Outcome> {
        match self.oracle {
            None => Err(Outcome::skipped("no lattice oracle")),
            Some(false) => Err(Outcome::skipped("not DC")),
            Some(true) => Ok(()),
        }
    }

    fn lattice(&self) -> std::result::Result<&LatticeData, Outcome> {
        self.lat.as_ref().ok_or_else(|| Outcome::skipped("no lattice"))
    }

    fn require_p(&self) -> std::result::Result<usize, Outcome> {
        match self.p {
            Some(p) => Ok(p),
            None if self.g.order() == 1 => Err(Outcome::skipped("trivial group")),
            None => Err(Outcome::skipped("not a p-group")),
        }
    }

    fn within_pair_cap(&self) -> std::result::Result<(), Outcome> {
        if self.g.order() > self.opts.pair_cap {
            return Err(Outcome::skipped(format!(
                "order {} exceeds the pairwise cap {}",
                self.g.order(),
                self.opts.pair_cap
            )));
        }
        Ok(())
    }

    fn is_maximal_class(&self) -> bool {
        self.n >= 2 && self.cl() == Some(self.n as usize - 1)
    }
}

macro_rules! hyp {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(o) => return o,
        }
    };
}

fn unless(cond: bool, reason: &str) -> std::result::Result<(), Outcome> {
    if cond {
        Ok(())
    } else {
        Err(Outcome::skipped(reason))
    }
}

fn is_cyclic(g: &FiniteGroup, h: &Subgroup) -> bool {
    h.is_abelian(g) && abelian_type(g, h).is_ok_and(|t| t.is_cyclic())
}

fn chain_implies_sublattice(c: &Ctx) -> Outcome {
    let l = hyp!(c.lattice());
    hyp!(unless(l.ds.chain.is_some(), "DS(G) is not a chain"));
    let m = &l.ds.members;
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if let Some(f) = sublattice_violation(c.g, &l.ds, &m[i], &m[j]).expect("same parent") {
                return Outcome::fail(format!(
                    "{:?} of {} and {} is {}",
                    f.op,
                    sref(&f.a),
                    sref(&f.b),
                    sref(&f.result)
                ));
            }
        }
    }
    Outcome::pass()
}

fn dc_solvable(c: &Ctx) -> Outcome {
    hyp!(c.require_dc());
    Outcome::check(c.dseries.reaches_trivial, || {
        format!("derived series stops at order {}", c.dseries.terms.last().unwrap().order())
    })
}

fn dc_sylow_split(c: &Ctx) -> Outcome {
    hyp!(c.require_dc());
    hyp!(unless(c.g.order() > 1, "trivial group"));
    let l = hyp!(c.lattice());
    for (q, _) in factorize(c.g.order()) {
        if let Some(s) = sylow_decomposition_in(c.g, q, &l.lattice).expect("same parent") {
            if s.complement_abelian {
                return Outcome::pass_with(format!(
                    "p = {q}: |P| = {}, |A| = {}",
                    s.sylow.order(),
                    s.complement.order()
                ));
            }
        }
    }
    Outcome::fail("no prime has a normal Sylow subgroup with an abelian complement")
}

fn dc_subgroup_heredity(c: &Ctx) -> Outcome {
    hyp!(c.require_dc());
    if c.is_abelian() {
        return Outcome::pass_with("abelian");
    }
    let l = hyp!(c.lattice());
    for h in l.lattice.iter() {
        let ds = derived_set_within(&l.lattice, &l.derived, h);
        if let Some((a, b)) = ds.incomparable_witness {
            return Outcome::fail(format!(
                "subgroup {} has incomparable {} and {}",
                sref(h),
                sref(&ds.members[a]),
                sref(&ds.members[b])
            ));
        }
    }
    Outcome::pass_with(format!("{} subgroups", l.lattice.len()))
}

fn dc_quotient_heredity(c: &Ctx) -> Outcome {
    hyp!(c.require_dc());
    if c.is_abelian() {
        return Outcome::pass_with("abelian");
    }
    let l = hyp!(c.lattice());
    let mut checked = 0;
    for n in l.lattice.iter().filter(|n| n.is_normal_in(c.g, &c.whole)) {
        // G/N is abelian once G' <= N.
        if c.derived.is_subgroup_of(n) {
            continue;
        }
        let (q, _) = quotient_group(c.g, n).expect("normal subgroup");
        let v = is_dc_oracle(&q, c.opts.lattice_cap).expect("quotient within cap");
        if !v.is_dc {
            return Outcome::fail(format!("G/N is not DC for N = {}", sref(n)));
        }
        checked += 1;
    }
    Outcome::pass_with(format!("{checked} non-abelian quotients"))
}

fn dc_lcs_factors_cyclic(c: &Ctx) -> Outcome {
    hyp!(c.dc_nonabelian_p());
    for i in 2..=c.lcs.length {
        let (k, next) = (c.lcs.term(i), c.lcs.term(i + 1));
        let index = (k.order() / next.order()) as u64;
        if !k.iter().any(|x| order_modulo(c.g, x, next) == index) {
            return Outcome::fail(format!("K_{i}/K_{} of order {index} is not cyclic", i + 1));
        }
    }
    Outcome::pass()
}

fn dc_lcs_term_containment(c: &Ctx) -> Outcome {
    hyp!(c.dc_nonabelian_p());
    let l = hyp!(c.lattice());
    for i in 2..=c.lcs.length {
        let k = c.lcs.term(i);
        for (h, hd) in l.lattice.iter().zip(&l.derived) {
            if k.order() <= hd.order() && !k.is_subgroup_of(hd) {
                return Outcome::fail(format!("K_{i} not inside H' for H = {}", sref(h)));
            }
        }
    }
    Outcome::pass()
}

fn meet_center(c: &Ctx) -> Subgroup {
    meet(c.g, &c.derived, &c.center).expect("same parent")
}

fn dc_center_meet_cyclic(c: &Ctx) -> Outcome {
    hyp!(c.dc_nonabelian_p());
    hyp!(unless(c.d_derived == Some(2), "d(G') != 2"));
    let m = meet_center(c);
    Outcome::check(is_cyclic(c.g, &m), || format!("G' ∩ Z(G) = {} is not cyclic", sref(&m)))
}

fn dc_center_meet_last_term(c: &Ctx) -> Outcome {
    let p = hyp!(c.dc_nonabelian_p());
    hyp!(unless(exponent(c.g, &c.derived) == p as u64, "exp(G') != p"));
    let m = meet_center(c);
    let kc = c.lcs.term(c.lcs.length);
    Outcome::check(m == *kc && kc.order() == p, || {
        format!("G' ∩ Z(G) = {}, K_c = {}", sref(&m), sref(kc))
    })
}

fn derived_rank(c: &Ctx) -> usize {
    c.d_derived.expect("p-group")
}

fn dc_regular_derived_rank(c: &Ctx) -> Outcome {
    let p = hyp!(c.dc_nonabelian_p());
    hyp!(unless(p > 2, "p = 2"));
    hyp!(c.within_pair_cap());
    hyp!(unless(c.regular() == Some(true), "not regular"));
    let r = derived_rank(c);
    Outcome::check(r + 2 <= p, || format!("d(G') = {r}"))
}

fn dc_abelian_maximal_derived_rank(c: &Ctx) -> Outcome {
    let p = hyp!(c.dc_nonabelian_p());
    hyp!(unless(c.has_abelian_maximal(), "no abelian maximal subgroup"));
    let r = derived_rank(c);
    Outcome::check(r < p, || format!("d(G') = {r}"))
}

fn dc_agemo_index(c: &Ctx) -> Outcome {
    let p = hyp!(c.dc_nonabelian_p());
    let a = agemo(c.g, &c.derived, 1).expect("p-group");
    let index = c.derived.order() / a.order();
    Outcome::check(index <= p.pow(p as u32), || format!("|G' : Agemo_1(G')| = {index}"))
}

fn dc_derived_rank(c: &Ctx) -> Outcome {
    let p = hyp!(c.dc_nonabelian_p());
    let r = derived_rank(c);
    Outcome::check(r <= p, || format!("d(G') = {r}"))
}

fn dc_derived_rank_elementary(c: &Ctx) -> Outcome {
    let p = hyp!(c.dc_nonabelian_p());
    hyp!(unless(derived_rank(c) == p, "d(G') != p"));
    let ok = c.derived.is_abelian(c.g)
        && abelian_type(c.g, &c.derived).is_ok_and(|t| t.invariant_factors == vec![p as u64; p]);
    Outcome::check(ok, || format!("G' of order {} is not elementary abelian", c.derived.order()))
}

fn dc_two_group_criterion(c: &Ctx) -> Outcome {
    hyp!(unless(c.p == Some(2), "not a 2-group"));
    let oracle = hyp!(c.oracle.ok_or_else(|| Outcome::skipped("no lattice oracle")));
    let predicate = dc_2group_predicate(c.g).expect("2-group");
    Outcome::check(predicate == oracle, || format!("criterion {predicate}, oracle {oracle}"))
}

fn dc_two_generator_two_group(c: &Ctx) -> Outcome {
    hyp!(unless(c.p == Some(2), "not a 2-group"));
    hyp!(unless(!c.is_abelian(), "abelian"));
    hyp!(unless(c.d == Some(2), "d(G) != 2"));
    let oracle = hyp!(c.oracle.ok_or_else(|| Outcome::skipped("no lattice oracle")));
    let t = abelian_type(c.g, &c.derived).ok();
    let predicate = t.is_some_and(|t| t.is_cyclic() || t.invariant_factors == [2, 2]);
    Outcome::check(predicate == oracle, || format!("criterion {predicate}, oracle {oracle}"))
}

fn dc_small_prime_metabelian(c: &Ctx) -> Outcome {
    let p = hyp!(c.require_p());
    hyp!(unless(p <= 3, "p > 3"));
    hyp!(c.require_dc());
    Outcome::check(c.dseries.length <= 2, || format!("dl(G) = {}", c.dseries.length))
}

fn dc_sufficient_soundness(c: &Ctx) -> Outcome {
    hyp!(c.require_p());
    let oracle = hyp!(c.oracle.ok_or_else(|| Outcome::skipped("no lattice oracle")));
    let conds = dc_sufficient_conditions(c.g, c.maximals()).expect("p-group");
    hyp!(unless(!conds.is_empty(), "no sufficient condition holds"));
    Outcome::check(oracle, || format!("{conds:?} hold but the oracle says not DC"))
}

fn dc_max_class_three_groups(c: &Ctx) -> Outcome {
    hyp!(unless(c.p == Some(3), "not a 3-group"));
    hyp!(unless(c.n >= 5 && c.is_maximal_class(), "not of maximal class with n >= 5"));
    let oracle = hyp!(c.oracle.ok_or_else(|| Outcome::skipped("no lattice oracle")));
    Outcome::check(oracle, || "oracle says not DC".into())
}

fn minimal_nonabelian_derived(c: &Ctx) -> Outcome {
    hyp!(unless(!c.is_abelian(), "abelian"));
    let ms = hyp!(c.maximals().ok_or_else(|| Outcome::skipped("maximal subgroups unavailable")));
    hyp!(unless(ms.iter().all(|m| m.is_abelian(c.g)), "not minimal non-abelian"));
    let q = prime_of_power(c.derived.order());
    let ok = match (c.p, q) {
        (Some(p), Some(_)) => c.derived.order() == p,
        (None, Some(_)) => true,
        _ => false,
    };
    Outcome::check(ok, || format!("|G'| = {}", c.derived.order()))
}

fn fundamental(c: &Ctx) -> Subgroup {
    fundamental_subgroup(c.g, &c.whole, &c.lcs)
}

fn max_class_three_fundamental(c: &Ctx) -> Outcome {
    hyp!(unless(c.p == Some(3), "not a 3-group"));
    hyp!(unless(c.n >= 4 && c.is_maximal_class(), "not of maximal class with n >= 4"));
    let g1 = fundamental(c);
    if g1.is_abelian(c.g) {
        return Outcome::pass_with("G_1 abelian");
    }
    let ms = maximal_subgroups_pgroup(c.g, &g1).expect("non-trivial p-group");
    Outcome::check(ms.iter().all(|m| m.is_abelian(c.g)), || {
        format!("G_1 = {} is neither abelian nor minimal non-abelian", sref(&g1))
    })
}

fn max_class_maximal_subgroups(c: &Ctx) -> Outcome {
    let p = hyp!(c.require_p());
    hyp!(unless(p > 2 && c.n as usize >= p + 2, "needs p > 2 and n >= p + 2"));
    hyp!(unless(c.is_maximal_class(), "not of maximal class"));
    let g1 = fundamental(c);
    for m in c.maximals().expect("p-group") {
        if *m == g1 {
            continue;
        }
        let cl = lower_central_series(c.g, m).length;
        if cl as u32 != c.n - 2 {
            return Outcome::fail(format!("maximal {} has class {cl}", sref(m)));
        }
    }
    Outcome::pass()
}

fn two_gen_abelian_maximal_center(c: &Ctx) -> Outcome {
    let p = hyp!(c.require_p());
    hyp!(unless(!c.is_abelian(), "abelian"));
    hyp!(unless(c.d == Some(2), "d(G) != 2"));
    hyp!(unless(c.has_abelian_maximal(), "no abelian maximal subgroup"));
    let m = meet_center(c);
    let kc = c.lcs.term(c.lcs.length);
    Outcome::check(m == *kc && kc.order() == p, || {
        format!("Z(G) ∩ G' = {}, K_c = {}", sref(&m), sref(kc))
    })
}

fn commutator_image(c: &Ctx) -> Outcome {
    hyp!(c.require_p());
    hyp!(c.within_pair_cap());
    commutator_image_lemma(c.g).expect("p-group")
}

/// Rows of Pascal's triangle modulo `m`, up to row `n`.
fn pascal_rows(n: usize, m: u64) -> Vec<Vec<u64>> {
    let mut rows = vec![vec![1 % m]];
    for k in 1..=n {
        let prev = &rows[k - 1];
        let mut row = vec![1 % m; k + 1];
        for i in 1..k {
            row[i] = (prev[i - 1] + prev[i]) % m;
        }
        rows.push(row);
    }
    rows
}

/// First `n` for which the identity fails on `(x, y)`.
fn commutator_power_failure(g: &FiniteGroup, x: Elem, y: Elem, e: usize, rows: &[Vec<u64>]) -> Option<usize> {
    // c[i - 1] = [x, y, (i - 1)x]; once trivial, all later terms are.
    let mut cs = vec![g.comm(x, y)];
    while cs.len() < e && !cs.last().unwrap().is_identity() {
        cs.push(g.comm(*cs.last().unwrap(), x));
    }
    let mut xn = Elem::IDENTITY;
    for (n, row) in rows.iter().enumerate().take(e + 1).skip(1) {
        xn = g.mul(xn, x);
        let lhs = g.comm(xn, y);
        let rhs = cs
            .iter()
            .take(n)
            .enumerate()
            .fold(Elem::IDENTITY, |acc, (i, &ci)| g.mul(acc, g.pow(ci, row[i + 1])));
        if lhs != rhs {
            return Some(n);
        }
    }
    None
}

fn metabelian_commutator_power(c: &Ctx) -> Outcome {
    hyp!(unless(c.dseries.reaches_trivial && c.dseries.length <= 2, "not metabelian"));
    let g = c.g;
    let e = exponent(g, &c.whole);
    let rows = pascal_rows(e as usize, e);
    let fail = |x: Elem, y: Elem| {
        commutator_power_failure(g, x, y, e as usize, &rows)
            .map(|n| Outcome::fail(format!("x = {}, y = {}, n = {n}", x.0, y.0)))
    };
    if g.order() <= EXHAUSTIVE_PAIRS_ORDER {
        for x in g.elements() {
            for y in g.elements() {
                if let Some(f) = fail(x, y) {
                    return f;
                }
            }
        }
        return Outcome::pass_with("all pairs");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(c.opts.seed);
    for _ in 0..RANDOM_PAIRS {
        let x = Elem::from(rng.gen_range(0..g.order()));
        let y = Elem::from(rng.gen_range(0..g.order()));
        if let Some(f) = fail(x, y) {
            return f;
        }
    }
    Outcome::pass_with(format!("{RANDOM_PAIRS} random pairs"))
}

fn p_abelian_criterion(c: &Ctx) -> Outcome {
    let p = hyp!(c.require_p());
    hyp!(unless(c.d.is_some_and(|d| d <= 2), "d(G) > 2"));
    hyp!(unless(c.dseries.length <= 2, "not metabelian"));
    hyp!(c.within_pair_cap());
    let p_abelian = p_abelian_witness(c.g, &c.whole).expect("p-group").is_none();
    let cl = c.lcs.length;
    let predicate = exponent(c.g, &c.derived) <= p as u64 && cl < p;
    Outcome::check(p_abelian == predicate, || {
        format!("p-abelian {p_abelian}, exp(G') <= p and cl < p is {predicate}")
    })
}

fn two_generator_derived_abelian(c: &Ctx) -> Outcome {
    hyp!(c.require_p());
    hyp!(unless(c.d.is_some_and(|d| d <= 2), "d(G) > 2"));
    hyp!(unless(derived_rank(c) <= 2, "d(G') > 2"));
    Outcome::check(c.derived.is_abelian(c.g), || "G' is non-abelian".into())
}

fn lcs_exponent_monotone(c: &Ctx) -> Outcome {
    hyp!(c.require_p());
    let exps: Vec<u64> = (1..=c.lcs.length)
        .map(|i| quotient_exponent(c.g, c.lcs.term(i), c.lcs.term(i + 1)))
        .collect();
    for i in 1..exps.len() {
        if exps[i] > exps[i - 1] {
            return Outcome::fail(format!("factor exponents {exps:?}"));
        }
    }
    Outcome::pass()
}

fn class_below_p_regular(c: &Ctx) -> Outcome {
    let p = hyp!(c.require_p());
    hyp!(unless(c.lcs.length < p, "cl(G) >= p"));
    hyp!(c.within_pair_cap());
    Outcome::check(c.regular() == Some(true), || "not regular".into())
}

fn regular_power_commutator(c: &Ctx) -> Outcome {
    let p = hyp!(c.require_p()) as u64;
    hyp!(c.within_pair_cap());
    hyp!(unless(c.regular() == Some(true), "not regular"));
    let g = c.g;
    let powers: Vec<Vec<Elem>> = (0..3u32)
        .map(|k| g.elements().map(|x| g.pow(x, p.pow(k))).collect())
        .collect();
    for x in g.elements() {
        for y in g.elements() {
            let cxy = g.comm(x, y);
            for k in 0..3usize {
                for n in 0..3 - k {
                    let left = g.comm(powers[k][x.index()], powers[n][y.index()]).is_identity();
                    let right = g.pow(cxy, p.pow((k + n) as u32)).is_identity();
                    if left != right {
                        return Outcome::fail(format!("x = {}, y = {}, k = {k}, n = {n}", x.0, y.0));
                    }
                }
            }
        }
    }
    Outcome::pass()
}

fn lcs_subgroup_equality(c: &Ctx) -> Outcome {
    hyp!(unless(c.lcs.reaches_trivial, "not nilpotent"));
    let l = hyp!(c.lattice());
    let k3 = c.lcs.term(3);
    let mut matched = 0;
    for (h, hd) in l.lattice.iter().zip(&l.derived) {
        if join(c.g, hd, k3).expect("same parent") != c.derived {
            continue;
        }
        matched += 1;
        let lh = lower_central_series(c.g, h);
        for i in 2..=c.lcs.length + 1 {
            if lh.term(i) != c.lcs.term(i) {
                return Outcome::fail(format!("K_{i} differs for H = {}", sref(h)));
            }
        }
    }
    Outcome::pass_with(format!("{matched} subgroups meet the hypothesis"))
}

fn frattini_two_routes(c: &Ctx) -> Outcome {
    hyp!(c.require_p());
    let l = hyp!(c.lattice());
    let a = frattini_from_lattice(c.g, &l.lattice).expect("non-trivial");
    let b = frattini(c.g, &c.whole).expect("p-group");
    Outcome::check(a == b, || format!("lattice {}, powers {}", sref(&a), sref(&b)))
}

fn burnside_basis(c: &Ctx) -> Outcome {
    let p = hyp!(c.require_p());
    hyp!(unless(c.g.order() <= BRUTE_FORCE_ORDER, "order above 200"));
    let phi = frattini(c.g, &c.whole).expect("p-group");
    let expected = log_p(c.g.order() / phi.order(), p) as usize;
    match min_generators_by_search(c.g, &c.whole, GENERATOR_SEARCH_BUDGET) {
        Ok(d) => Outcome::check(d == expected, || format!("search {d}, Frattini count {expected}")),
        Err(_) => Outcome::skipped("generator search budget exhausted"),
    }
}

fn commutator_closure(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let comms: Vec<Elem> = h.iter().flat_map(|x| h.iter().map(move |y| g.comm(x, y))).collect();
    g.closure(&comms).expect("valid ids")
}

fn derived_pairs_closure(c: &Ctx) -> Outcome {
    let subgroups: Vec<(&Subgroup, &Subgroup)> = match &c.lat {
        Some(l) => l
            .lattice
            .iter()
            .zip(&l.derived)
            .filter(|(h, _)| h.order() <= BRUTE_FORCE_ORDER)
            .collect(),
        None => {
            hyp!(unless(c.g.order() <= BRUTE_FORCE_ORDER, "order above 200"));
            vec![(&c.whole, &c.derived)]
        }
    };
    for (h, hd) in &subgroups {
        let brute = commutator_closure(c.g, h);
        if brute != **hd {
            return Outcome::fail(format!("H = {}: {} vs {}", sref(h), sref(hd), sref(&brute)));
        }
    }
    Outcome::pass_with(format!("{} subgroups", subgroups.len()))
}

fn maximal_two_routes(c: &Ctx) -> Outcome {
    hyp!(c.require_p());
    hyp!(unless(c.g.order() <= MAXIMAL_ROUTES_ORDER, "order above 512"));
    let l = hyp!(c.lattice());
    let a = l.lattice.maximal_subgroups().expect("non-trivial");
    let b = c.maximals().expect("p-group");
    Outcome::check(a == b, || format!("lattice gives {}, hyperplanes give {}", a.len(), b.len()))
}

fn example_relations(ex: &PcExample) -> Outcome {
    let bad: Vec<String> = ex
        .verify_relations()
        .into_iter()
        .filter(|r| !r.holds)
        .map(|r| r.relation)
        .collect();
    Outcome::check(bad.is_empty(), || format!("failing relations: {}", bad.join("; ")))
}

fn s6_derived_meet(c: &Ctx, ex: &S6Example) -> Outcome {
    let l = hyp!(c.lattice());
    let g = c.g;
    let mut problems: Vec<String> = Vec::new();
    let hd = derived_subgroup(g, &ex.h);
    let kd = derived_subgroup(g, &ex.k);
    let mut seed = ex.n.gens().to_vec();
    seed.push(ex.elem(&[&[1, 2], &[4, 5]]));
    let expected = g.closure(&seed).expect("valid ids");
    if hd.order() != 18 || hd != expected {
        problems.push(format!("H' = {}", sref(&hd)));
    }
    if kd != ex.k {
        problems.push("K' != K".into());
    }
    let m = meet(g, &hd, &kd).expect("same parent");
    if m.order() != 6 {
        problems.push(format!("|H' ∩ K'| = {}", m.order()));
    }
    let nm = normalizer(g, &m, &c.whole).expect("same parent").order();
    if nm != 12 {
        problems.push(format!("|N(H' ∩ K')| = {nm}"));
    }
    if l.ds.contains(&m) {
        problems.push("H' ∩ K' is a derived subgroup".into());
    }
    if !l.ds.contains(&hd) || !l.ds.contains(&kd) {
        problems.push("H' or K' missing from DS".into());
    }
    match sublattice_violation(g, &l.ds, &hd, &kd).expect("same parent") {
        Some(f) if f.op == LatticeOp::Meet && f.result == m => {}
        _ => problems.push("H', K' do not witness a missing meet".into()),
    }
    Outcome::check(problems.is_empty(), || problems.join("; "))
}

fn dc_section(c: &Ctx, extra: &Extra, example: Option<&ExampleProperties>) -> DcSection {
    let mut s = DcSection::default();
    if let Some(l) = &c.lat {
        let v = verdict_from(&l.ds);
        s.is_dc = Some(v.is_dc);
        s.method = Some(DcMethod::Oracle);
        s.lattice_size = Some(l.lattice.len());
        s.derived_set = Some(l.ds.members.iter().map(SubgroupRef::from).collect());
        s.incomparable = v.witness.map(|(a, b)| ((&a).into(), (&b).into()));
        let sub = is_sublattice(c.g, &l.ds, &l.lattice).expect("same parent");
        s.is_sublattice = Some(sub.is_ok());
        s.sublattice_failure = sub.err().map(|f| SublatticeWitness {
            a: (&f.a).into(),
            b: (&f.b).into(),
            op: f.op,
            result: (&f.result).into(),
        });
    } else if let (Extra::Pc(_), Some(props)) = (extra, example) {
        if props.all_hold() {
            s.is_dc = Some(true);
            s.method = Some(DcMethod::PropertiesVerified);
        } else {
            s.note = Some("stated properties do not all hold".into());
        }
    } else if let Some(v) = dc_fast(c.g).expect("valid group") {
        s.is_dc = Some(v.is_dc);
        s.method = Some(v.method);
    } else {
        s.note = Some(if c.opts.fast_only {
            "undecided by fast criteria".into()
        } else {
            format!("order exceeds the lattice cap {} and no fast criterion applies", c.opts.lattice_cap)
        });
    }
    if c.p.is_some() {
        s.sufficient_conditions = dc_sufficient_conditions(c.g, c.maximals()).ok();
    }
    s
}

fn invariants(c: &Ctx) -> Invariants {
    Invariants {
        order: c.g.order(),
        factorization: factorize(c.g.order()),
        p: c.p,
        is_abelian: c.is_abelian(),
        is_nilpotent: c.lcs.reaches_trivial,
        cl: c.cl(),
        dl: c.dseries.reaches_trivial.then_some(c.dseries.length),
        d: c.d,
        derived_order: c.derived.order(),
        derived_type: abelian_type(c.g, &c.derived).ok(),
        derived_rank: c.d_derived,
        center_order: c.center.order(),
        exponent: exponent(c.g, &c.whole),
        lower_central_orders: c.lcs.orders(),
        derived_series_orders: c.dseries.orders(),
    }
}

fn run_claims(c: &Ctx, extra: &Extra, example: Option<&ExampleProperties>) -> Vec<ClaimResult> {
    let mut out = Vec::new();
    for claim in Claim::ALL {
        let outcome = match claim {
            Claim::ChainImpliesSublattice => chain_implies_sublattice(c),
            Claim::DcSolvable => dc_solvable(c),
            Claim::DcSylowSplit => dc_sylow_split(c),
            Claim::DcSubgroupHeredity => dc_subgroup_heredity(c),
            Claim::DcQuotientHeredity => dc_quotient_heredity(c),
            Claim::DcLcsFactorsCyclic => dc_lcs_factors_cyclic(c),
            Claim::DcLcsTermContainment => dc_lcs_term_containment(c),
            Claim::DcCenterMeetCyclic => dc_center_meet_cyclic(c),
            Claim::DcCenterMeetLastTerm => dc_center_meet_last_term(c),
            Claim::DcRegularDerivedRank => dc_regular_derived_rank(c),
            Claim::DcAbelianMaximalDerivedRank => dc_abelian_maximal_derived_rank(c),
            Claim::DcAgemoIndex => dc_agemo_index(c),
            Claim::DcDerivedRank => dc_derived_rank(c),
            Claim::DcDerivedRankElementary => dc_derived_rank_elementary(c),
            Claim::DcTwoGroupCriterion => dc_two_group_criterion(c),
            Claim::DcTwoGeneratorTwoGroup => dc_two_generator_two_group(c),
            Claim::DcSmallPrimeMetabelian => dc_small_prime_metabelian(c),
            Claim::DcSufficientSoundness => dc_sufficient_soundness(c),
            Claim::DcMaxClassThreeGroups => dc_max_class_three_groups(c),
            // Evaluated on pairs of groups by the census.
            Claim::DcDirectProduct | Claim::DcCentralProduct => continue,
            Claim::MinimalNonabelianDerived => minimal_nonabelian_derived(c),
            Claim::MaxClassThreeFundamental => max_class_three_fundamental(c),
            Claim::MaxClassMaximalSubgroups => max_class_maximal_subgroups(c),
            Claim::TwoGenAbelianMaximalCenter => two_gen_abelian_maximal_center(c),
            Claim::CommutatorImage => commutator_image(c),
            Claim::MetabelianCommutatorPower => metabelian_commutator_power(c),
            Claim::PAbelianCriterion => p_abelian_criterion(c),
            Claim::TwoGeneratorDerivedAbelian => two_generator_derived_abelian(c),
            Claim::LcsExponentMonotone => lcs_exponent_monotone(c),
            Claim::ClassBelowPRegular => class_below_p_regular(c),
            Claim::RegularPowerCommutator => regular_power_commutator(c),
            Claim::LcsSubgroupEquality => lcs_subgroup_equality(c),
            Claim::FrattiniTwoRoutes => frattini_two_routes(c),
            Claim::BurnsideBasis => burnside_basis(c),
            Claim::DerivedPairsClosure => derived_pairs_closure(c),
            Claim::MaximalTwoRoutes => maximal_two_routes(c),
            Claim::ExampleProperties => match example {
                Some(props) => Outcome::check(props.all_hold(), || format!("{props:?}")),
                None => continue,
            },
            Claim::ExampleRelations => match extra {
                Extra::Pc(ex) => example_relations(ex),
                _ => continue,
            },
            Claim::S6DerivedMeet => match extra {
                Extra::S6(ex) => s6_derived_meet(c, ex),
                _ => continue,
            },
        };
        out.push(ClaimResult { claim, outcome });
    }
    out
}

/// Data kept for the pair claims.
struct PairCandidate {
    id: String,
    group: FiniteGroup,
    p: usize,
    is_dc: bool,
}

fn analyze(id: &str, spec: &GroupSpec, opts: &CensusOptions) -> Result<(GroupReport, Option<PairCandidate>)> {
    let (g, extra) = realize(spec)?;
    let c = Ctx::new(&g, opts)?;
    let example = match &extra {
        Extra::Pc(_) => Some(example_properties(&g)?),
        _ => None,
    };
    let report = GroupReport {
        id: id.to_string(),
        invariants: invariants(&c),
        dc: dc_section(&c, &extra, example.as_ref()),
        claims: run_claims(&c, &extra, example.as_ref()),
        example,
    };
    let candidate = match (c.p, c.oracle) {
        (Some(p), Some(is_dc)) if !c.is_abelian() && g.order() <= PAIR_FACTOR_ORDER => Some(PairCandidate {
            id: id.to_string(),
            group: g.clone(),
            p,
            is_dc,
        }),
        _ => None,
    };
    Ok((report, candidate))
}

/// Realizes one spec and evaluates every applicable claim on it.
pub fn analyze_spec(id: &str, spec: &GroupSpec, opts: &CensusOptions) -> Result<GroupReport> {
    Ok(analyze(id, spec, opts)?.0)
}

pub struct CensusEntry {
    pub id: String,
    pub spec: GroupSpec,
}

struct Partner {
    name: String,
    group: FiniteGroup,
    abelian: bool,
}

fn direct_partners(p: usize) -> Vec<Partner> {
    let mut out = vec![Partner {
        name: format!("C{p}"),
        group: cyclic(p).expect("small cyclic group"),
        abelian: true,
    }];
    if p == 2 {
        out.push(Partner {
            name: "C2xC2".into(),
            group: abelian(&[2, 2]).expect("small abelian group"),
            abelian: true,
        });
        out.push(Partner {
            name: "D8".into(),
            group: dihedral(8).expect("D8"),
            abelian: false,
        });
    }
    out
}

fn evaluate_pair(claim: Claim, g: &PairCandidate, a: &Partner) -> Result<Option<PairResult>> {
    let (product, expected) = match claim {
        Claim::DcDirectProduct => (direct_product(&g.group, &a.group)?, g.is_dc && a.abelian),
        _ => {
            // Identify an order-p central subgroup of G with the one of C_{p^2}.
            let z = center(&g.group, &g.group.whole());
            let Some(zg) = z.iter().find(|&x| g.group.order_of(x) == g.p) else {
                return Ok(None);
            };
            let za = a.group.pow(a.group.generators()[0], g.p as u64);
            (central_product(&g.group, &a.group, &[(zg, za)])?.0, g.is_dc)
        }
    };
    if product.order() > PAIR_PRODUCT_ORDER {
        return Ok(None);
    }
    let got = is_dc_oracle(&product, PAIR_PRODUCT_ORDER.max(DEFAULT_LATTICE_CAP))?.is_dc;
    Ok(Some(PairResult {
        claim,
        left: g.id.clone(),
        right: a.name.clone(),
        product_order: product.order(),
        outcome: Outcome::check(got == expected, || format!("product DC {got}, expected {expected}")),
    }))
}

fn pair_claims(candidates: &[PairCandidate]) -> Vec<PairResult> {
    // Non-DC factors first, then odd primes, so the capped sample is varied.
    let mut order: Vec<&PairCandidate> = candidates.iter().collect();
    order.sort_by(|a, b| (a.is_dc, b.p, &a.id).cmp(&(b.is_dc, a.p, &b.id)));
    let mut jobs: Vec<(Claim, &PairCandidate, Partner)> = Vec::new();
    let (mut direct, mut central) = (0, 0);
    for g in order {
        for a in direct_partners(g.p) {
            if direct < DIRECT_PAIRS && g.group.order() * a.group.order() <= PAIR_PRODUCT_ORDER {
                jobs.push((Claim::DcDirectProduct, g, a));
                direct += 1;
            }
        }
        if central < CENTRAL_PAIRS && g.group.order() * g.p <= PAIR_PRODUCT_ORDER {
            let a = Partner {
                name: format!("C{}", g.p * g.p),
                group: cyclic(g.p * g.p).expect("small cyclic group"),
                abelian: true,
            };
            jobs.push((Claim::DcCentralProduct, g, a));
            central += 1;
        }
    }
    jobs.par_iter()
        .map(|(claim, g, a)| match evaluate_pair(*claim, g, a) {
            Ok(r) => r,
            Err(e) => Some(PairResult {
                claim: *claim,
                left: g.id.clone(),
                right: a.name.clone(),
                product_order: 0,
                outcome: Outcome::skipped(e.to_string()),
            }),
        })
        .flatten()
        .collect()
}

/// Analyzes every entry and the pair claims. Groups are processed in
/// parallel on the current rayon pool; the report is sorted by id, so it
/// does not depend on the number of threads.
pub fn theorem_census(entries: &[CensusEntry], opts: &CensusOptions) -> CensusReport {
    let mut results: Vec<(String, Result<(GroupReport, Option<PairCandidate>)>)> = entries
        .par_iter()
        .map(|e| (e.id.clone(), analyze(&e.id, &e.spec, opts)))
        .collect();
    results.sort_by(|a, b| a.0.cmp(&b.0));
    let mut report = CensusReport::default();
    let mut candidates = Vec::new();
    for (id, r) in results {
        match r {
            Ok((g, cand)) => {
                report.groups.push(g);
                candidates.extend(cand);
            }
            Err(e) => report.record_skipped_spec(id, e.to_string()),
        }
    }
    report.pairs = pair_claims(&candidates);
    report.finish();
    report
}
