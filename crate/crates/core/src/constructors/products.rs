//! Direct, central and semidirect products as Cayley tables.

use crate::error::{Error, Result};
use crate::group::{quotient_group, Elem, FiniteGroup, TABLE_CAP};

fn product_order(a: usize, b: usize) -> Result<usize> {
    match a.checked_mul(b) {
        Some(n) if n <= TABLE_CAP => Ok(n),
        _ => Err(Error::OrderCapExceeded {
            order: a.saturating_mul(b),
            cap: TABLE_CAP,
        }),
    }
}

/// `A x B` on pairs; `(a, b)` has id `a + |A| b`. Generators are those of
/// `A` followed by those of `B`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let n = product_order(na, nb)?;
    let mut mul = vec![0u32; n * n];
    for x in 0..n {
        let (xa, xb) = (Elem::from(x % na), Elem::from(x / na));
        for y in 0..n {
            let (ya, yb) = (Elem::from(y % na), Elem::from(y / na));
            mul[x * n + y] = a.mul(xa, ya).0 + na as u32 * b.mul(xb, yb).0;
        }
    }
    let gens = a
        .generators()
        .iter()
        .copied()
        .chain(b.generators().iter().map(|y| Elem(y.0 * na as u32)))
        .collect();
    Ok(FiniteGroup::from_table_unchecked(n, mul, gens))
}

/// Id of `(x, y)` in [`direct_product`]`(a, b)`.
pub fn pair_id(a: &FiniteGroup, x: Elem, y: Elem) -> Elem {
    Elem(x.0 + a.order() as u32 * y.0)
}

/// `A * B`: the direct product modulo `{(z, phi(z)^-1)}`, where `phi` is the
/// isomorphism `Z_A -> Z_B` determined by `identify` (pairs of central
/// elements `(z_a, z_b)` with `phi(z_a) = z_b`).
///
/// Returns the product together with the images of `A` and `B` in it
/// (indexed by the element ids of `A` and `B`).
pub fn central_product(
    a: &FiniteGroup,
    b: &FiniteGroup,
    identify: &[(Elem, Elem)],
) -> Result<(FiniteGroup, Vec<Elem>, Vec<Elem>)> {
    for &(za, zb) in identify {
        a.check(za)?;
        b.check(zb)?;
        let central = |g: &FiniteGroup, z: Elem| g.generators().iter().all(|&x| g.commutes(x, z));
        if !central(a, za) || !central(b, zb) {
            return Err(Error::NotCentral);
        }
    }
    let ab = direct_product(a, b)?;
    let seed: Vec<Elem> = identify
        .iter()
        .map(|&(za, zb)| pair_id(a, za, b.inv(zb)))
        .collect();
    let d = ab.closure(&seed)?;
    // phi is a well-defined injective homomorphism exactly when D meets both
    // factors trivially.
    let za = a.closure(&identify.iter().map(|p| p.0).collect::<Vec<_>>())?;
    let zb = b.closure(&identify.iter().map(|p| p.1).collect::<Vec<_>>())?;
    if d.order() != za.order() || d.order() != zb.order() {
        return Err(Error::NotIsomorphism);
    }
    let (g, proj) = quotient_group(&ab, &d)?;
    let left = a.elements().map(|x| proj[pair_id(a, x, Elem::IDENTITY).index()]).collect();
    let right = b.elements().map(|y| proj[pair_id(a, Elem::IDENTITY, y).index()]).collect();
    Ok((g, left, right))
}

fn check_automorphism(n: &FiniteGroup, alpha: &[u32], which: usize) -> Result<()> {
    let size = n.order();
    if alpha.len() != size || alpha[0] != 0 {
        return Err(Error::NotAutomorphism(which));
    }
    let mut seen = vec![false; size];
    for &x in alpha {
        if x as usize >= size || seen[x as usize] {
            return Err(Error::NotAutomorphism(which));
        }
        seen[x as usize] = true;
    }
    for x in n.elements() {
        for y in n.elements() {
            let lhs = alpha[n.mul(x, y).index()];
            let rhs = n.mul(Elem(alpha[x.index()]), Elem(alpha[y.index()])).0;
            if lhs != rhs {
                return Err(Error::NotAutomorphism(which));
            }
        }
    }
    Ok(())
}

/// `N ⋊ H` with `(n1, h1)(n2, h2) = (n1 alpha_{h1}(n2), h1 h2)`; `(n, h)` has
/// id `n + |N| h`. `action[k]` lists the images of `N`'s ids under the
/// automorphism attached to the `k`-th generator of `H`.
///
/// Each action entry is checked to be an automorphism, and the assignment
/// is checked to extend to a homomorphism `H -> Aut(N)` along every edge of
/// the Cayley graph of `H`.
pub fn semidirect_product(n: &FiniteGroup, h: &FiniteGroup, action: &[Vec<usize>]) -> Result<FiniteGroup> {
    let hgens = h.generators();
    if action.len() != hgens.len() {
        return Err(Error::SchemaViolation(format!(
            "action lists {} automorphisms for {} generators",
            action.len(),
            hgens.len()
        )));
    }
    let size = product_order(n.order(), h.order())?;
    let alphas: Vec<Vec<u32>> = action
        .iter()
        .map(|a| a.iter().map(|&x| x as u32).collect())
        .collect();
    for (k, a) in alphas.iter().enumerate() {
        check_automorphism(n, a, k)?;
    }
    // alpha_{hg} = alpha_h after alpha_g.
    let nn = n.order();
    let mut maps: Vec<Option<Vec<u32>>> = vec![None; h.order()];
    maps[0] = Some((0..nn as u32).collect());
    let mut queue = vec![Elem::IDENTITY];
    let mut pos = 0;
    while pos < queue.len() {
        let x = queue[pos];
        pos += 1;
        let ax = maps[x.index()].clone().unwrap();
        for (k, &g) in hgens.iter().enumerate() {
            let y = h.mul(x, g);
            let ay: Vec<u32> = alphas[k].iter().map(|&v| ax[v as usize]).collect();
            match &maps[y.index()] {
                Some(existing) if *existing != ay => return Err(Error::ActionNotHomomorphic),
                Some(_) => {}
                None => {
                    maps[y.index()] = Some(ay);
                    queue.push(y);
                }
            }
        }
    }
    let maps: Vec<Vec<u32>> = maps.into_iter().map(Option::unwrap).collect();
    let mut mul = vec![0u32; size * size];
    for x in 0..size {
        let (n1, h1) = (Elem::from(x % nn), Elem::from(x / nn));
        let a1 = &maps[h1.index()];
        for y in 0..size {
            let (n2, h2) = (y % nn, Elem::from(y / nn));
            let nprod = n.mul(n1, Elem(a1[n2]));
            mul[x * size + y] = nprod.0 + nn as u32 * h.mul(h1, h2).0;
        }
    }
    let gens = n
        .generators()
        .iter()
        .copied()
        .chain(hgens.iter().map(|y| Elem(y.0 * nn as u32)))
        .collect();
    let g = FiniteGroup::from_table_unchecked(size, mul, gens);
    let gens = g.greedy_generators(g.generators());
    Ok(g.with_generators(gens))
}

#[cfg(test)]
mod tests {
    use super::super::families::*;
    use super::*;

    #[test]
    fn direct_with_trivial_keeps_table() {
        let d8 = dihedral(8).unwrap();
        let one = cyclic(1).unwrap();
        let p = direct_product(&d8, &one).unwrap();
        assert_eq!(p.order(), 8);
        assert_eq!(p.table_fingerprint(), d8.table_fingerprint());
    }

    #[test]
    fn central_product_of_q8_and_c4() {
        let q8 = generalized_quaternion(8).unwrap();
        let c4 = cyclic(4).unwrap();
        let zq = q8.elements().find(|&x| q8.order_of(x) == 2).unwrap();
        let (g, _, _) = central_product(&q8, &c4, &[(zq, Elem(2))]).unwrap();
        assert_eq!(g.order(), 16);
        let bad = central_product(&q8, &c4, &[(zq, Elem(1))]);
        assert_eq!(bad.unwrap_err(), Error::NotIsomorphism);
        let x = q8.generators()[0];
        assert_eq!(central_product(&q8, &c4, &[(x, Elem(2))]).unwrap_err(), Error::NotCentral);
    }

    #[test]
    fn trivial_action_is_direct() {
        let c3 = cyclic(3).unwrap();
        let c2 = cyclic(2).unwrap();
        let id: Vec<usize> = (0..3).collect();
        let g = semidirect_product(&c3, &c2, &[id]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_abelian());
    }

    #[test]
    fn inversion_gives_s3() {
        let c3 = cyclic(3).unwrap();
        let c2 = cyclic(2).unwrap();
        let g = semidirect_product(&c3, &c2, &[vec![0, 2, 1]]).unwrap();
        assert!(!g.is_abelian());
        assert_eq!(g.elements().filter(|&x| g.order_of(x) == 2).count(), 3);
    }

    #[test]
    fn action_checks() {
        let c3 = cyclic(3).unwrap();
        let c2 = cyclic(2).unwrap();
        let c4 = cyclic(4).unwrap();
        assert_eq!(
            semidirect_product(&c3, &c2, &[vec![0, 2, 2]]).unwrap_err(),
            Error::NotAutomorphism(0)
        );
        // Swapping two generators of C4 is an automorphism of order 2, which
        // C3 cannot act by.
        assert_eq!(
            semidirect_product(&c4, &c3, &[vec![0, 3, 2, 1]]).unwrap_err(),
            Error::ActionNotHomomorphic
        );
    }
}
