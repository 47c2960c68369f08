//! Classical families, realized as permutation groups or Cayley tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{make_perm_group, Elem, FiniteGroup, Permutation, MAX_DEGREE, TABLE_CAP};

/// Integer parameters of a family; each family reads the ones it needs and
/// rejects the rest.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<usize>,
}

impl FamilyParams {
    pub fn order(order: usize) -> Self {
        Self {
            order: Some(order),
            ..Self::default()
        }
    }

    pub fn n(n: usize) -> Self {
        Self {
            n: Some(n),
            ..Self::default()
        }
    }

    fn only(&self, family: &str, allowed: &[&str]) -> Result<()> {
        let present = [
            ("order", self.order.is_some()),
            ("n", self.n.is_some()),
            ("p", self.p.is_some()),
            ("m", self.m.is_some()),
            ("invariants", self.invariants.is_some()),
            ("exponent", self.exponent.is_some()),
        ];
        for (name, set) in present {
            if set && !allowed.contains(&name) {
                return Err(Error::ParamOutOfRange(format!(
                    "{family} does not take parameter {name}"
                )));
            }
        }
        Ok(())
    }
}

fn need(v: Option<usize>, family: &str, name: &str) -> Result<usize> {
    v.ok_or_else(|| Error::ParamOutOfRange(format!("{family} needs parameter {name}")))
}

fn out_of_range(msg: String) -> Error {
    Error::ParamOutOfRange(msg)
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `p^k` if `n` is a power of the prime `p`.
fn log_p(n: usize, p: usize) -> Option<u32> {
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        if m % p != 0 {
            return None;
        }
        m /= p;
        k += 1;
    }
    Some(k)
}

fn pow_mod(mut b: usize, mut e: usize, m: usize) -> usize {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Group of pairs `x^i y^j` (`0 <= i < m`, `0 <= j < k`) with
/// `x^m = 1`, `y^k = x^t` and `y x y^-1 = x^r`; element `x^i y^j` has id
/// `i + m j`. Generators are `x` then `y`.
fn metacyclic(m: usize, k: usize, r: usize, t: usize) -> Result<FiniteGroup> {
    debug_assert_eq!(pow_mod(r, k, m), 1 % m);
    debug_assert_eq!(r * t % m, t % m);
    let n = m * k;
    if n > TABLE_CAP {
        return Err(Error::OrderCapExceeded { order: n, cap: TABLE_CAP });
    }
    let rp: Vec<usize> = (0..k).map(|j| pow_mod(r, j, m)).collect();
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        let (i, j) = (a % m, a / m);
        for b in 0..n {
            let (i2, j2) = (b % m, b / m);
            // x^i y^j x^i2 y^j2 = x^{i + r^j i2} y^{j + j2}
            let mut e = i + rp[j] * i2;
            let mut f = j + j2;
            if f >= k {
                f -= k;
                e += t;
            }
            mul[a * n + b] = (e % m + m * f) as u32;
        }
    }
    let mut gens = Vec::new();
    if m > 1 {
        gens.push(Elem(1));
    }
    if k > 1 {
        gens.push(Elem(m as u32));
    }
    let g = FiniteGroup::from_table_unchecked(n, mul, gens.clone());
    let gens = g.greedy_generators(&gens);
    Ok(g.with_generators(gens))
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(out_of_range("cyclic group needs order at least 1".into()));
    }
    metacyclic(n, 1, 1, 0)
}

/// Direct product of cyclic groups with the given orders; ids are mixed
/// radix with the first factor least significant.
pub fn abelian(invariants: &[usize]) -> Result<FiniteGroup> {
    if invariants.iter().any(|&d| d == 0) {
        return Err(out_of_range("invariants must be positive".into()));
    }
    let n: usize = invariants
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .filter(|&n| n <= TABLE_CAP)
        .ok_or(Error::OrderCapExceeded {
            order: usize::MAX,
            cap: TABLE_CAP,
        })?;
    let decode = |mut x: usize| -> Vec<usize> {
        invariants
            .iter()
            .map(|&d| {
                let e = x % d;
                x /= d;
                e
            })
            .collect()
    };
    let encode = |v: &[usize]| -> usize {
        v.iter()
            .zip(invariants)
            .rev()
            .fold(0, |acc, (&e, &d)| acc * d + e)
    };
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        let va = decode(a);
        for b in 0..n {
            let vb = decode(b);
            let s: Vec<usize> = va
                .iter()
                .zip(&vb)
                .zip(invariants)
                .map(|((x, y), d)| (x + y) % d)
                .collect();
            mul[a * n + b] = encode(&s) as u32;
        }
    }
    let mut gens = Vec::new();
    let mut stride = 1;
    for &d in invariants {
        if d > 1 {
            gens.push(Elem(stride as u32));
        }
        stride *= d;
    }
    Ok(FiniteGroup::from_table_unchecked(n, mul, gens))
}

/// Dihedral group of the given order `2n`: rotation `x` of order `n`,
/// reflection `y`.
pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || order % 2 != 0 {
        return Err(out_of_range(format!("dihedral order {order} must be even and positive")));
    }
    let m = order / 2;
    metacyclic(m, 2, m - 1, 0)
}

/// Generalized quaternion group of order `2^k`, `k >= 3`.
pub fn generalized_quaternion(order: usize) -> Result<FiniteGroup> {
    match log_p(order, 2) {
        Some(k) if k >= 3 => {
            let m = order / 2;
            metacyclic(m, 2, m - 1, m / 2)
        }
        _ => Err(out_of_range(format!(
            "generalized quaternion order {order} must be 2^k with k >= 3"
        ))),
    }
}

/// Semidihedral group of order `2^k`, `k >= 4`: `y x y^-1 = x^{2^{k-2} - 1}`.
pub fn semidihedral(order: usize) -> Result<FiniteGroup> {
    match log_p(order, 2) {
        Some(k) if k >= 4 => {
            let m = order / 2;
            metacyclic(m, 2, m / 2 - 1, 0)
        }
        _ => Err(out_of_range(format!(
            "semidihedral order {order} must be 2^k with k >= 4"
        ))),
    }
}

/// Non-abelian group of order `p^n` with a cyclic maximal subgroup that is
/// neither dihedral, semidihedral nor quaternion:
/// `y x y^-1 = x^{1 + p^{n-2}}`.
pub fn modular_max_cyclic(p: usize, order: usize) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(out_of_range(format!("{p} is not prime")));
    }
    let min = if p == 2 { 4 } else { 3 };
    match log_p(order, p) {
        Some(n) if n >= min => {
            let m = order / p;
            metacyclic(m, p, 1 + m / p, 0)
        }
        _ => Err(out_of_range(format!(
            "modular group order {order} must be {p}^n with n >= {min}"
        ))),
    }
}

/// Extraspecial group of order `p^3`, `p` odd, of exponent `p`
/// (Heisenberg group over `F_p`) or `p^2`.
pub fn extraspecial_p3(p: usize, exponent: usize) -> Result<FiniteGroup> {
    if !is_prime(p) || p == 2 {
        return Err(out_of_range(format!("extraspecial p^3 needs an odd prime, got {p}")));
    }
    if exponent == p * p {
        return metacyclic(p * p, p, 1 + p, 0);
    }
    if exponent != p {
        return Err(out_of_range(format!("exponent must be {p} or {}", p * p)));
    }
    // (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b'); id a + p b + p^2 c.
    let n = p * p * p;
    let mut mul = vec![0u32; n * n];
    for x in 0..n {
        let (a, b, c) = (x % p, x / p % p, x / (p * p));
        for y in 0..n {
            let (a2, b2, c2) = (y % p, y / p % p, y / (p * p));
            let z = (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p);
            mul[x * n + y] = z as u32;
        }
    }
    Ok(FiniteGroup::from_table_unchecked(n, mul, vec![Elem(1), Elem(p as u32)]))
}

fn cycle(degree: usize, points: &[usize]) -> Permutation {
    Permutation::from_cycles(degree, &[points]).expect("valid cycle")
}

/// Symmetric group on `n` points, generated by `(1,2)` and `(1,2,...,n)`.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 9 {
        return Err(out_of_range(format!("symmetric degree {n} outside 1..=9")));
    }
    if n == 1 {
        return make_perm_group(&[Permutation::identity(1)]);
    }
    let all: Vec<usize> = (1..=n).collect();
    make_perm_group(&[cycle(n, &[1, 2]), cycle(n, &all)])
}

/// Alternating group on `n` points, generated by `(1,2,3)` and an
/// `n`- or `(n-1)`-cycle of even parity.
pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 10 {
        return Err(out_of_range(format!("alternating degree {n} outside 1..=10")));
    }
    if n < 3 {
        return make_perm_group(&[Permutation::identity(n)]);
    }
    let long: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
    make_perm_group(&[cycle(n, &[1, 2, 3]), cycle(n, &long)])
}

/// `SL(2, 3)` as a Cayley table over its 24 matrices, listed in
/// lexicographic order of `(a, b, c, d)` with the identity moved to id 0.
pub fn sl23() -> Result<FiniteGroup> {
    let mut mats: Vec<[usize; 4]> = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    if (a * d + 6 - b * c) % 3 == 1 {
                        mats.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let id = mats.iter().position(|m| *m == [1, 0, 0, 1]).unwrap();
    let ident = mats.remove(id);
    mats.insert(0, ident);
    let index = |m: [usize; 4]| mats.iter().position(|x| *x == m).unwrap();
    let n = mats.len();
    let mut mul = vec![0u32; n * n];
    for (i, x) in mats.iter().enumerate() {
        for (j, y) in mats.iter().enumerate() {
            let z = [
                (x[0] * y[0] + x[1] * y[2]) % 3,
                (x[0] * y[1] + x[1] * y[3]) % 3,
                (x[2] * y[0] + x[3] * y[2]) % 3,
                (x[2] * y[1] + x[3] * y[3]) % 3,
            ];
            mul[i * n + j] = index(z) as u32;
        }
    }
    // [[1,1],[0,1]] and [[1,0],[1,1]] generate SL(2,3).
    let gens = vec![Elem(index([1, 1, 0, 1]) as u32), Elem(index([1, 0, 1, 1]) as u32)];
    Ok(FiniteGroup::from_table_unchecked(n, mul, gens))
}

/// Regular wreath product `C_m wr C_n` on `mn` points: block `b` holds
/// points `bm+1, ..., bm+m`. Generators are an `m`-cycle on block 0 and the
/// block shift.
pub fn wreath_cyclic(m: usize, n: usize) -> Result<FiniteGroup> {
    if m < 2 || n < 1 || m * n > MAX_DEGREE {
        return Err(out_of_range(format!(
            "wreath product C{m} wr C{n} needs m >= 2, n >= 1 and mn <= {MAX_DEGREE}"
        )));
    }
    let degree = m * n;
    let base = cycle(degree, &(1..=m).collect::<Vec<_>>());
    let mut gens = vec![base];
    if n > 1 {
        let images: Vec<usize> = (0..degree).map(|x| (x + m) % degree).collect();
        gens.push(Permutation::from_images(&images)?);
    }
    make_perm_group(&gens)
}

/// Builds a named family. Names: `cyclic(order)`, `abelian(invariants)`,
/// `dihedral(order)`, `generalized_quaternion(order)`, `semidihedral(order)`,
/// `modular_max_cyclic(p, order)`, `extraspecial_p3(p, exponent)`,
/// `symmetric(n)`, `alternating(n)`, `sl23`, `wreath_cyclic(m, n)`.
pub fn build_family(name: &str, params: &FamilyParams) -> Result<FiniteGroup> {
    let order = || need(params.order, name, "order");
    match name {
        "cyclic" => {
            params.only(name, &["order"])?;
            cyclic(order()?)
        }
        "abelian" => {
            params.only(name, &["invariants"])?;
            abelian(params.invariants.as_deref().ok_or_else(|| {
                out_of_range("abelian needs parameter invariants".into())
            })?)
        }
        "dihedral" => {
            params.only(name, &["order"])?;
            dihedral(order()?)
        }
        "generalized_quaternion" => {
            params.only(name, &["order"])?;
            generalized_quaternion(order()?)
        }
        "semidihedral" => {
            params.only(name, &["order"])?;
            semidihedral(order()?)
        }
        "modular_max_cyclic" => {
            params.only(name, &["p", "order"])?;
            modular_max_cyclic(need(params.p, name, "p")?, order()?)
        }
        "extraspecial_p3" => {
            params.only(name, &["p", "exponent"])?;
            extraspecial_p3(need(params.p, name, "p")?, need(params.exponent, name, "exponent")?)
        }
        "symmetric" => {
            params.only(name, &["n"])?;
            symmetric(need(params.n, name, "n")?)
        }
        "alternating" => {
            params.only(name, &["n"])?;
            alternating(need(params.n, name, "n")?)
        }
        "sl23" => {
            params.only(name, &[])?;
            sl23()
        }
        "wreath_cyclic" => {
            params.only(name, &["m", "n"])?;
            wreath_cyclic(need(params.m, name, "m")?, need(params.n, name, "n")?)
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn associative(g: &FiniteGroup) -> bool {
        g.elements().all(|a| {
            g.elements()
                .all(|b| g.elements().all(|c| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))))
        })
    }

    fn generated(g: &FiniteGroup) -> bool {
        g.closure(g.generators()).unwrap().order() == g.order()
    }

    #[test]
    fn orders() {
        assert_eq!(symmetric(6).unwrap().order(), 720);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert_eq!(sl23().unwrap().order(), 24);
        assert_eq!(wreath_cyclic(2, 4).unwrap().order(), 64);
        assert_eq!(wreath_cyclic(3, 3).unwrap().order(), 81);
        assert_eq!(dihedral(2).unwrap().order(), 2);
        assert_eq!(dihedral(4).unwrap().order(), 4);
        assert_eq!(extraspecial_p3(5, 25).unwrap().order(), 125);
    }

    #[test]
    fn small_tables_are_groups() {
        let groups = [
            cyclic(12).unwrap(),
            abelian(&[2, 4]).unwrap(),
            dihedral(8).unwrap(),
            dihedral(12).unwrap(),
            generalized_quaternion(16).unwrap(),
            semidihedral(16).unwrap(),
            modular_max_cyclic(2, 16).unwrap(),
            modular_max_cyclic(3, 27).unwrap(),
            extraspecial_p3(3, 3).unwrap(),
            sl23().unwrap(),
        ];
        for g in &groups {
            assert!(associative(g));
            assert!(generated(g));
        }
    }

    #[test]
    fn element_order_statistics() {
        let count = |g: &FiniteGroup, k: usize| g.elements().filter(|&x| g.order_of(x) == k).count();
        let q8 = generalized_quaternion(8).unwrap();
        assert_eq!(count(&q8, 2), 1);
        assert_eq!(count(&q8, 4), 6);
        let d8 = dihedral(8).unwrap();
        assert_eq!(count(&d8, 2), 5);
        let sd16 = semidihedral(16).unwrap();
        assert_eq!(count(&sd16, 2), 5);
        let m16 = modular_max_cyclic(2, 16).unwrap();
        assert_eq!(count(&m16, 2), 3);
        assert!(!m16.is_abelian());
        let heis = extraspecial_p3(3, 3).unwrap();
        assert_eq!(count(&heis, 3), 26);
        let sl = sl23().unwrap();
        assert_eq!(count(&sl, 2), 1);
        assert_eq!(count(&sl, 3), 8);
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            build_family("nope", &FamilyParams::default()),
            Err(Error::UnknownFamily(_))
        ));
        assert!(build_family("generalized_quaternion", &FamilyParams::order(12)).is_err());
        assert!(build_family("symmetric", &FamilyParams::order(6)).is_err());
        assert_eq!(build_family("symmetric", &FamilyParams::n(4)).unwrap().order(), 24);
    }
}
