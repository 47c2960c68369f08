//! JSON group specifications.
//!
//! ```json
//! {"kind": "family", "name": "dihedral", "order": 16}
//! {"kind": "perm_gens", "degree": 6, "generators": [[1,0,2,3,4,5], [1,2,3,4,5,0]]}
//! {"kind": "pc", "orders": [2,2,2], "powers": {"1": [[3,1]]}, "commutators": {"(2,1)": [[3,1]]}}
//! {"kind": "semidirect", "normal": {...}, "quotient": {...}, "action": [[0,2,1]]}
//! ```
//!
//! Pc generator indices are 1-based; permutation images and element ids
//! are 0-based. Element ids of component groups are those produced by
//! realizing the component spec, which is deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{make_perm_group, quotient_group, Elem, FiniteGroup, Permutation};
use crate::pc::{realize_pc_group, PcPresentation};

use super::families::{build_family, FamilyParams};
use super::products::{central_product, direct_product, semidirect_product};
use super::witnesses::{group1, group2, s6_example};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Family {
        name: String,
        #[serde(flatten)]
        params: FamilyParams,
    },
    PermGens {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Cayley {
        table: Vec<Vec<usize>>,
    },
    Pc {
        orders: Vec<u32>,
        #[serde(default)]
        powers: BTreeMap<String, Vec<(usize, u32)>>,
        #[serde(default)]
        commutators: BTreeMap<String, Vec<(usize, u32)>>,
    },
    Direct {
        factors: Vec<GroupSpec>,
    },
    Semidirect {
        normal: Box<GroupSpec>,
        quotient: Box<GroupSpec>,
        action: Vec<Vec<usize>>,
    },
    Central {
        left: Box<GroupSpec>,
        right: Box<GroupSpec>,
        identify: Vec<(usize, usize)>,
    },
    QuotientOf {
        group: Box<GroupSpec>,
        normal: Vec<usize>,
    },
    Witness {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<u32>,
    },
}

fn schema(msg: String) -> Error {
    Error::SchemaViolation(msg)
}

fn parse_index(s: &str, n: usize) -> Result<usize> {
    let i: usize = s
        .trim()
        .parse()
        .map_err(|_| schema(format!("generator index {s:?} is not an integer")))?;
    if i == 0 || i > n {
        return Err(schema(format!("generator index {i} outside 1..={n}")));
    }
    Ok(i - 1)
}

fn parse_pair(key: &str, n: usize) -> Result<(usize, usize)> {
    let inner = key.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 2 {
        return Err(schema(format!("commutator key {key:?} is not of the form (j,i)")));
    }
    Ok((parse_index(parts[0], n)?, parse_index(parts[1], n)?))
}

fn pc_word(word: &[(usize, u32)], n: usize) -> Result<Vec<(usize, u32)>> {
    word.iter()
        .map(|&(k, e)| Ok((parse_index(&k.to_string(), n)?, e)))
        .collect()
}

/// Converts the JSON pc form (1-based) into a presentation.
pub fn pc_presentation(
    orders: &[u32],
    powers: &BTreeMap<String, Vec<(usize, u32)>>,
    commutators: &BTreeMap<String, Vec<(usize, u32)>>,
) -> Result<PcPresentation> {
    let to_schema = |e: Error| match e {
        Error::InvalidPresentation(m) => Error::SchemaViolation(m),
        other => other,
    };
    let mut pres = PcPresentation::new(orders.to_vec()).map_err(to_schema)?;
    let n = orders.len();
    for (key, word) in powers {
        let i = parse_index(key, n)?;
        pres.set_power(i, pc_word(word, n)?).map_err(to_schema)?;
    }
    for (key, word) in commutators {
        let (j, i) = parse_pair(key, n)?;
        pres.set_commutator(j, i, pc_word(word, n)?).map_err(to_schema)?;
    }
    Ok(pres)
}

fn elem(g: &FiniteGroup, id: usize) -> Result<Elem> {
    g.check(Elem::from(id))
}

impl GroupSpec {
    pub fn family(name: &str, params: FamilyParams) -> Self {
        GroupSpec::Family {
            name: name.to_string(),
            params,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            let msg = format!("line {} column {}: {e}", e.line(), e.column());
            if e.is_data() {
                Error::SchemaViolation(msg)
            } else {
                Error::Parse(msg)
            }
        })
    }

    /// Canonical JSON text: keys in declaration order, no whitespace.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("specs always serialize")
    }

    /// Builds the group. Realization is deterministic.
    pub fn realize(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Family { name, params } => build_family(name, params),
            GroupSpec::PermGens { degree, generators } => {
                let perms = generators
                    .iter()
                    .map(|images| {
                        if images.len() != *degree {
                            return Err(Error::DegreeMismatch {
                                expected: *degree,
                                found: images.len(),
                            });
                        }
                        Permutation::from_images(images)
                    })
                    .collect::<Result<Vec<_>>>()?;
                if perms.is_empty() {
                    return make_perm_group(&[Permutation::identity(*degree)]);
                }
                make_perm_group(&perms)
            }
            GroupSpec::Cayley { table } => FiniteGroup::from_cayley_table(table),
            GroupSpec::Pc {
                orders,
                powers,
                commutators,
            } => realize_pc_group(&pc_presentation(orders, powers, commutators)?),
            GroupSpec::Direct { factors } => {
                let mut it = factors.iter();
                let first = it
                    .next()
                    .ok_or_else(|| schema("direct product needs at least one factor".into()))?;
                let mut g = first.realize()?;
                for f in it {
                    g = direct_product(&g, &f.realize()?)?;
                }
                Ok(g)
            }
            GroupSpec::Semidirect {
                normal,
                quotient,
                action,
            } => semidirect_product(&normal.realize()?, &quotient.realize()?, action),
            GroupSpec::Central {
                left,
                right,
                identify,
            } => {
                let a = left.realize()?;
                let b = right.realize()?;
                let pairs = identify
                    .iter()
                    .map(|&(x, y)| Ok((elem(&a, x)?, elem(&b, y)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(central_product(&a, &b, &pairs)?.0)
            }
            GroupSpec::QuotientOf { group, normal } => {
                let g = group.realize()?;
                let seed = normal.iter().map(|&x| elem(&g, x)).collect::<Result<Vec<_>>>()?;
                let n = g.closure(&seed)?;
                Ok(quotient_group(&g, &n)?.0)
            }
            GroupSpec::Witness { name, p } => match (name.as_str(), p) {
                ("s6_example", None) => Ok(s6_example()?.group),
                ("group1", Some(p)) => Ok(group1(*p)?.group),
                ("group2", None) => Ok(group2()?.group),
                ("group1", None) => Err(schema("witness group1 needs p".into())),
                _ => Err(Error::UnknownFamily(name.clone())),
            },
        }
    }
}
