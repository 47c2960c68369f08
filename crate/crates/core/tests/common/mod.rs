//! Brute-force oracles shared by the integration tests. They use only the
//! group multiplication and never the library's closure, lattice or series
//! code.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::path::{Path, PathBuf};

use dcgroup::constructors::GroupSpec;
use dcgroup::{Elem, FiniteGroup, Subgroup};

pub type Set = BTreeSet<u32>;

pub fn set_of(h: &Subgroup) -> Set {
    h.iter().map(|x| x.0).collect()
}

/// Inverse as the last power before the identity.
pub fn naive_inv(g: &FiniteGroup, x: Elem) -> Elem {
    let mut prev = Elem::IDENTITY;
    let mut p = x;
    while !p.is_identity() {
        prev = p;
        p = g.mul(p, x);
    }
    prev
}

/// `x^-1 y^-1 x y`.
pub fn naive_comm(g: &FiniteGroup, x: Elem, y: Elem) -> Elem {
    let a = g.mul(naive_inv(g, x), naive_inv(g, y));
    g.mul(g.mul(a, x), y)
}

/// All products of seed elements; in a finite group this is `<seed>`.
pub fn naive_closure(g: &FiniteGroup, seed: &[Elem]) -> Set {
    let mut seen: Set = BTreeSet::from([0]);
    let mut frontier = vec![Elem::IDENTITY];
    while let Some(x) = frontier.pop() {
        for &t in seed {
            let y = g.mul(x, t);
            if seen.insert(y.0) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn elems(s: &Set) -> Vec<Elem> {
    s.iter().map(|&x| Elem(x)).collect()
}

/// Closure of every commutator of two elements of `h`.
pub fn naive_derived(g: &FiniteGroup, h: &Set) -> Set {
    let xs = elems(h);
    let comms: HashSet<u32> = xs
        .iter()
        .flat_map(|&x| xs.iter().map(move |&y| naive_comm(g, x, y).0))
        .collect();
    let seed: Vec<Elem> = comms.into_iter().map(Elem).collect();
    naive_closure(g, &seed)
}

/// Every subgroup, by depth-first search from the trivial subgroup: each
/// step adjoins one element outside the current subgroup.
pub fn backtracking_subgroups(g: &FiniteGroup) -> BTreeSet<Set> {
    let mut found: BTreeSet<Set> = BTreeSet::new();
    let mut stack: Vec<Set> = vec![BTreeSet::from([0])];
    while let Some(s) = stack.pop() {
        if !found.insert(s.clone()) {
            continue;
        }
        for x in g.elements() {
            if s.contains(&x.0) {
                continue;
            }
            let mut seed = elems(&s);
            seed.push(x);
            let t = naive_closure(g, &seed);
            if !found.contains(&t) {
                stack.push(t);
            }
        }
    }
    found
}

/// `{H' : H <= G}` from the backtracking enumerator.
pub fn naive_derived_set(g: &FiniteGroup) -> BTreeSet<Set> {
    backtracking_subgroups(g).iter().map(|h| naive_derived(g, h)).collect()
}

/// DC by pairwise comparison of all derived subgroups.
pub fn naive_dc(g: &FiniteGroup) -> bool {
    let ds: Vec<Set> = naive_derived_set(g).into_iter().collect();
    ds.iter()
        .all(|a| ds.iter().all(|b| a.is_subset(b) || b.is_subset(a)))
}

pub fn naive_center(g: &FiniteGroup) -> Set {
    g.elements()
        .filter(|&x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x)))
        .map(|x| x.0)
        .collect()
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Corpus specs as `(id, spec)` sorted by id.
pub fn corpus() -> Vec<(String, GroupSpec)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let id = p.file_stem().unwrap().to_string_lossy().into_owned();
            let spec = GroupSpec::from_json(&std::fs::read_to_string(&p).unwrap())
                .unwrap_or_else(|e| panic!("{id}: {e}"));
            (id, spec)
        })
        .collect()
}

/// Realized corpus groups up to `max_order`, skipping the named examples
/// that are only realized on demand.
pub fn corpus_groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
    corpus()
        .into_iter()
        .filter(|(_, s)| !matches!(s, GroupSpec::Witness { name, .. } if name != "s6_example"))
        .map(|(id, s)| {
            let g = s.realize().unwrap_or_else(|e| panic!("{id}: {e}"));
            (id, g)
        })
        .filter(|(_, g)| g.order() <= max_order)
        .collect()
}
