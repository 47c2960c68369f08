//! The explicit groups behind the non-sublattice example in `S6` and the
//! two non-metabelian DC p-groups of order `p^7`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Permutation, Subgroup};
use crate::pc::{realize_pc_group, PcPresentation};
use crate::structure::normalizer;

use super::families::symmetric;

/// `G = S6` with `N = <(123),(456)>`, `H = N_G(N)`,
/// `L = <(1425)(36),(12)>` and `K = A5` acting on `{1,...,5}`.
#[derive(Clone, Debug)]
pub struct S6Example {
    pub group: FiniteGroup,
    pub n: Subgroup,
    pub l: Subgroup,
    pub h: Subgroup,
    pub k: Subgroup,
}

impl S6Example {
    /// Element id of a permutation given by 1-based cycles.
    pub fn elem(&self, cycles: &[&[usize]]) -> Elem {
        let p = Permutation::from_cycles(6, cycles).expect("valid cycles");
        self.group.perm_id(&p).expect("every permutation lies in S6")
    }

    pub fn subgroup(&self, gens: &[&[&[usize]]]) -> Subgroup {
        let ids: Vec<Elem> = gens.iter().map(|c| self.elem(c)).collect();
        self.group.closure(&ids).expect("valid ids")
    }
}

pub fn s6_example() -> Result<S6Example> {
    let group = symmetric(6)?;
    let mut ex = S6Example {
        n: group.trivial(),
        l: group.trivial(),
        h: group.trivial(),
        k: group.trivial(),
        group,
    };
    ex.n = ex.subgroup(&[&[&[1, 2, 3]], &[&[4, 5, 6]]]);
    ex.l = ex.subgroup(&[&[&[1, 4, 2, 5], &[3, 6]], &[&[1, 2]]]);
    ex.k = ex.subgroup(&[&[&[1, 2, 3]], &[&[1, 2, 3, 4, 5]]]);
    ex.h = normalizer(&ex.group, &ex.n, &ex.group.whole())?;
    Ok(ex)
}

/// A relation among named generators: `lhs = rhs`, where the right side
/// is a product of powers of named generators (empty means identity).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Power {
        name: String,
        exponent: u64,
        rhs: Vec<(String, i64)>,
    },
    Commutator {
        left: String,
        right: String,
        rhs: Vec<(String, i64)>,
    },
}

impl Relation {
    fn power(name: &str, exponent: u64) -> Self {
        Relation::Power {
            name: name.into(),
            exponent,
            rhs: Vec::new(),
        }
    }

    fn comm(left: &str, right: &str, rhs: &[(&str, i64)]) -> Self {
        Relation::Commutator {
            left: left.into(),
            right: right.into(),
            rhs: rhs.iter().map(|&(n, e)| (n.to_string(), e)).collect(),
        }
    }

    pub fn describe(&self) -> String {
        let word = |rhs: &[(String, i64)]| {
            if rhs.is_empty() {
                "1".to_string()
            } else {
                rhs.iter()
                    .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        };
        match self {
            Relation::Power { name, exponent, rhs } => format!("{name}^{exponent} = {}", word(rhs)),
            Relation::Commutator { left, right, rhs } => format!("[{left}, {right}] = {}", word(rhs)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

/// A realized pc group with its generator names and defining relations as
/// originally stated (before conversion to pc rules).
#[derive(Clone, Debug)]
pub struct PcExample {
    pub presentation: PcPresentation,
    pub group: FiniteGroup,
    pub handles: Vec<(String, Elem)>,
    pub relations: Vec<Relation>,
}

impl PcExample {
    pub fn handle(&self, name: &str) -> Option<Elem> {
        self.handles.iter().find(|(n, _)| n == name).map(|&(_, x)| x)
    }

    fn word(&self, rhs: &[(String, i64)]) -> Elem {
        rhs.iter().fold(Elem::IDENTITY, |acc, (n, e)| {
            let x = self.handle(n).expect("relation names a known generator");
            self.group.mul(acc, self.group.zpow(x, *e))
        })
    }

    /// Evaluates every stated relation in the realized group.
    pub fn verify_relations(&self) -> Vec<RelationCheck> {
        let g = &self.group;
        self.relations
            .iter()
            .map(|r| {
                let holds = match r {
                    Relation::Power { name, exponent, rhs } => {
                        g.pow(self.handle(name).unwrap(), *exponent) == self.word(rhs)
                    }
                    Relation::Commutator { left, right, rhs } => {
                        g.comm(self.handle(left).unwrap(), self.handle(right).unwrap()) == self.word(rhs)
                    }
                };
                RelationCheck {
                    relation: r.describe(),
                    holds,
                }
            })
            .collect()
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

const GROUP1_NAMES: [&str; 7] = ["x", "a", "a1", "a2", "a3", "a4", "a5"];

/// Pc rules for the order-`p^7` group on `x, a, a1, ..., a5` (pc generators
/// in that order). With `flipped`, every relation whose value is `a5`
/// instead takes `a5^-1`.
pub fn group1_presentation(p: u32, flipped: bool) -> Result<PcPresentation> {
    if !is_prime(p) || p < 7 {
        return Err(Error::ParamOutOfRange(format!("p = {p} must be a prime at least 7")));
    }
    let mut pres = PcPresentation::new(vec![p; 7])?;
    let (plus, minus) = if flipped { (p - 1, 1) } else { (1, p - 1) };
    // [a, x] = [x, a]^-1 = a1^-1
    pres.set_commutator(1, 0, vec![(2, p - 1)])?;
    // [a_j, a] = a_{j+1}
    for j in 2..6 {
        pres.set_commutator(j, 1, vec![(j + 1, 1)])?;
    }
    // a5 is central, so reversing a bracket with value a5 inverts it.
    pres.set_commutator(3, 2, vec![(6, minus)])?; // [a2, a1] = [a1, a2]^-1
    pres.set_commutator(2, 0, vec![(6, minus)])?; // [a1, x] = [x, a1]^-1
    pres.set_commutator(3, 0, vec![(6, plus)])?; // [a2, x]
    pres.set_commutator(4, 0, vec![(6, plus)])?; // [a3, x]
    Ok(pres)
}

fn group1_relations(p: u32) -> Vec<Relation> {
    let mut rels: Vec<Relation> = GROUP1_NAMES.iter().map(|n| Relation::power(n, p as u64)).collect();
    rels.push(Relation::comm("x", "a", &[("a1", 1)]));
    for j in 1..=4 {
        let aj = format!("a{j}");
        let next = format!("a{}", j + 1);
        rels.push(Relation::comm(&aj, "a", &[(&next, 1)]));
    }
    let a5 = [("a5", 1)];
    rels.push(Relation::comm("a1", "a2", &a5));
    rels.push(Relation::comm("x", "a1", &a5));
    rels.push(Relation::comm("a2", "x", &a5));
    rels.push(Relation::comm("a3", "x", &a5));
    // Remaining pairs commute.
    let listed = |u: &str, v: &str| {
        rels.iter().any(|r| match r {
            Relation::Commutator { left, right, .. } => {
                (left == u && right == v) || (left == v && right == u)
            }
            _ => false,
        })
    };
    let mut trivial = Vec::new();
    for (i, u) in GROUP1_NAMES.iter().enumerate() {
        for v in &GROUP1_NAMES[i + 1..] {
            if !listed(u, v) {
                trivial.push(Relation::comm(u, v, &[]));
            }
        }
    }
    rels.extend(trivial);
    rels
}

/// The order-`p^7` group on `x, a, a1, ..., a5`, `p >= 7`.
pub fn group1(p: u32) -> Result<PcExample> {
    build_group1(p, false)
}

fn build_group1(p: u32, flipped: bool) -> Result<PcExample> {
    let presentation = group1_presentation(p, flipped)?;
    let group = realize_pc_group(&presentation)?;
    let handles = GROUP1_NAMES
        .iter()
        .zip(group.generators())
        .map(|(n, &x)| (n.to_string(), x))
        .collect();
    Ok(PcExample {
        presentation,
        group,
        handles,
        relations: group1_relations(p),
    })
}

/// Which sign of `a5` in the rules reproduces the stated relations.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Standard,
    Flipped,
    Ambiguous,
    Neither,
}

/// Realizes both sign choices for the `a5` relations of [`group1`] and
/// reports which of them satisfy every stated relation.
pub fn group1_orientation(p: u32) -> Result<Orientation> {
    let verifies = |flipped| -> Result<bool> {
        match build_group1(p, flipped) {
            Ok(ex) => Ok(ex.verify_relations().iter().all(|c| c.holds)),
            Err(Error::Inconsistent(_)) => Ok(false),
            Err(e) => Err(e),
        }
    };
    Ok(match (verifies(false)?, verifies(true)?) {
        (true, true) => Orientation::Ambiguous,
        (true, false) => Orientation::Standard,
        (false, true) => Orientation::Flipped,
        (false, false) => Orientation::Neither,
    })
}

const GROUP2_NAMES: [&str; 5] = ["a1", "a2", "a3", "a4", "a5"];

/// Pc rules for the order-`5^7` group on `a1, ..., a5`. Since `a1` and `a3`
/// have order 25, the pc generators are `a1, a2, a3, a4, a5, a1^5, a3^5`,
/// all of relative order 5. The rules involving the two power generators
/// follow from the stated relations: `a3^5` is central, and
/// `[a1^5, a2] = a3^-5`.
pub fn group2_presentation() -> Result<PcPresentation> {
    let mut pres = PcPresentation::new(vec![5; 7])?;
    pres.set_power(0, vec![(5, 1)])?;
    pres.set_power(2, vec![(6, 1)])?;
    pres.set_commutator(1, 0, vec![(2, 1)])?; // [a2, a1] = a3
    pres.set_commutator(2, 1, vec![(3, 1)])?; // [a3, a2] = a4
    pres.set_commutator(3, 1, vec![(4, 1)])?; // [a4, a2] = a5
    pres.set_commutator(4, 1, vec![(5, 1)])?; // [a5, a2] = a1^5
    pres.set_commutator(3, 0, vec![(6, 4)])?; // [a4, a1] = [a1, a4]^-1 = a3^-5
    pres.set_commutator(3, 2, vec![(6, 4)])?; // [a4, a3] = a3^-5
    pres.set_commutator(4, 0, vec![(6, 4)])?; // [a5, a1] = a3^-5
    pres.set_commutator(5, 1, vec![(6, 4)])?; // [a1^5, a2] = a3^-5
    Ok(pres)
}

fn group2_relations() -> Vec<Relation> {
    let a35 = [("a3", 5)];
    vec![
        Relation::power("a1", 25),
        Relation::power("a3", 25),
        Relation::power("a2", 5),
        Relation::power("a4", 5),
        Relation::power("a5", 5),
        Relation::comm("a2", "a1", &[("a3", 1)]),
        Relation::comm("a3", "a2", &[("a4", 1)]),
        Relation::comm("a4", "a2", &[("a5", 1)]),
        Relation::comm("a5", "a2", &[("a1", 5)]),
        Relation::comm("a1", "a4", &a35),
        Relation::comm("a3", "a4", &a35),
        Relation::comm("a1", "a5", &a35),
        Relation::comm("a1", "a3", &[]),
        Relation::comm("a3", "a5", &[]),
        Relation::comm("a4", "a5", &[]),
    ]
}

/// The order-`5^7` group on `a1, ..., a5`.
pub fn group2() -> Result<PcExample> {
    let presentation = group2_presentation()?;
    let group = realize_pc_group(&presentation)?;
    let handles = GROUP2_NAMES
        .iter()
        .zip(group.generators())
        .map(|(n, &x)| (n.to_string(), x))
        .collect();
    Ok(PcExample {
        presentation,
        group,
        handles,
        relations: group2_relations(),
    })
}

/// Named access to the explicit groups.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    S6Example,
    Group1 { p: u32 },
    Group2,
}

pub enum WitnessBundle {
    S6(Box<S6Example>),
    Pc(Box<PcExample>),
}

impl WitnessBundle {
    pub fn group(&self) -> &FiniteGroup {
        match self {
            WitnessBundle::S6(ex) => &ex.group,
            WitnessBundle::Pc(ex) => &ex.group,
        }
    }
}

pub fn named_witness(which: Witness) -> Result<WitnessBundle> {
    Ok(match which {
        Witness::S6Example => WitnessBundle::S6(Box::new(s6_example()?)),
        Witness::Group1 { p } => WitnessBundle::Pc(Box::new(group1(p)?)),
        Witness::Group2 => WitnessBundle::Pc(Box::new(group2()?)),
    })
}
