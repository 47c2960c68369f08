//! Permutations on at most 16 points and the permutation-group backend.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported degree; images pack into a single `u64`.
pub const MAX_DEGREE: usize = 16;

/// Default cap on the number of elements a closure may produce.
pub const UNIVERSE_CAP: usize = 1_000_000;

/// A permutation of `0..degree`. Products compose left to right:
/// `(x * y)(i) = y(x(i))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u8).collect(),
        }
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(n));
        }
        let mut seen = [false; MAX_DEGREE];
        for &i in images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Self {
            images: images.iter().map(|&i| i as u8).collect(),
        })
    }

    /// Builds a permutation from 1-based cycles, e.g. `[[1, 4, 2, 5], [3, 6]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > degree || b == 0 || b > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle point out of range 1..={degree}"
                    )));
                }
                images[a - 1] = b - 1;
            }
        }
        Self::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u8;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub(crate) fn pack(&self) -> u64 {
        self.images
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &j)| acc | (j as u64) << (4 * i))
    }

    pub(crate) fn unpack(packed: u64, degree: usize) -> Permutation {
        Permutation {
            images: (0..degree).map(|i| (packed >> (4 * i) & 0xf) as u8).collect(),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = [false; MAX_DEGREE];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.apply(p);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn compose_packed(a: u64, b: u64, degree: usize) -> u64 {
    let mut out = 0u64;
    for i in 0..degree {
        let ai = (a >> (4 * i)) & 0xf;
        let bi = (b >> (4 * ai)) & 0xf;
        out |= bi << (4 * i);
    }
    out
}

#[inline]
pub(crate) fn invert_packed(a: u64, degree: usize) -> u64 {
    let mut out = 0u64;
    for i in 0..degree {
        let ai = (a >> (4 * i)) & 0xf;
        out |= (i as u64) << (4 * ai);
    }
    out
}

/// Element storage of a permutation group.
#[derive(Debug, Clone)]
pub(crate) struct PermStore {
    pub degree: usize,
    pub elements: Vec<u64>,
    pub index: HashMap<u64, u32>,
}

impl PermStore {
    pub fn id_of(&self, packed: u64) -> Option<u32> {
        self.index.get(&packed).copied()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = compose_packed(self.elements[a as usize], self.elements[b as usize], self.degree);
        self.index[&p]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.index[&invert_packed(self.elements[a as usize], self.degree)]
    }
}

/// Enumerates the closure of `gens` one coset at a time. Element 0 is the
/// identity; the returned vector lists the ids of the non-identity generators
/// in input order (duplicates removed).
pub(crate) fn close_permutations(
    gens: &[Permutation],
    cap: usize,
) -> Result<(PermStore, Vec<u32>)> {
    let degree = gens.first().map_or(0, |g| g.degree());
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(degree));
    }
    let identity = Permutation::identity(degree).pack();
    let mut elements = vec![identity];
    let mut index = HashMap::from([(identity, 0u32)]);
    let mut used: Vec<u64> = Vec::new();

    for g in gens {
        let g = g.pack();
        if index.contains_key(&g) {
            continue;
        }
        used.push(g);
        let prev = elements.clone();
        let mut reps = vec![g];
        let add_coset = |rep: u64, elements: &mut Vec<u64>, index: &mut HashMap<u64, u32>| {
            for &h in &prev {
                let e = compose_packed(h, rep, degree);
                index.insert(e, elements.len() as u32);
                elements.push(e);
            }
            if elements.len() > cap {
                Err(Error::UniverseOverflow { cap })
            } else {
                Ok(())
            }
        };
        add_coset(g, &mut elements, &mut index)?;
        let mut pos = 0;
        while pos < reps.len() {
            let r = reps[pos];
            for &s in &used {
                let t = compose_packed(r, s, degree);
                if !index.contains_key(&t) {
                    reps.push(t);
                    add_coset(t, &mut elements, &mut index)?;
                }
            }
            pos += 1;
        }
    }
    let gen_ids = used.iter().map(|p| index[p]).collect();
    Ok((
        PermStore {
            degree,
            elements,
            index,
        },
        gen_ids,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_are_one_based() {
        let p = Permutation::from_cycles(6, &[&[1, 4, 2, 5], &[3, 6]]).unwrap();
        assert_eq!(p.images(), vec![3, 4, 5, 1, 0, 2]);
        assert_eq!(format!("{p:?}"), "(1,4,2,5)(3,6)");
    }

    #[test]
    fn packed_ops_match_vec_ops() {
        let a = Permutation::from_cycles(7, &[&[1, 2, 3], &[5, 7]]).unwrap();
        let b = Permutation::from_cycles(7, &[&[2, 6], &[3, 4, 5]]).unwrap();
        assert_eq!(
            Permutation::unpack(compose_packed(a.pack(), b.pack(), 7), 7),
            a.compose(&b)
        );
        assert_eq!(Permutation::unpack(invert_packed(a.pack(), 7), 7), a.inverse());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(&[0, 0, 1]).is_err());
    }

    #[test]
    fn closure_cap_is_enforced() {
        let a = Permutation::from_cycles(6, &[&[1, 2]]).unwrap();
        let b = Permutation::from_cycles(6, &[&[1, 2, 3, 4, 5, 6]]).unwrap();
        assert_eq!(
            close_permutations(&[a, b], 100).unwrap_err(),
            Error::UniverseOverflow { cap: 100 }
        );
    }
}
