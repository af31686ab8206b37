//! Factorisation over `F_p`: squarefree decomposition, distinct-degree
//! splitting and Cantor-Zassenhaus equal-degree splitting, plus
//! irreducibility testing and enumeration of monic irreducibles.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{divisors, factorize, mobius};
use crate::poly::Poly;

/// `unit * prod(factor^exp)` with monic irreducible factors in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub unit: u64,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn recompose(&self, p: u64) -> Poly {
        let mut acc = Poly::constant(p, self.unit);
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }

    pub fn max_degree(&self) -> usize {
        self.factors.iter().map(|(f, _)| f.deg() as usize).max().unwrap_or(0)
    }
}

/// Factor a non-zero polynomial. The RNG seed only affects the route taken
/// by equal-degree splitting, never the result.
pub fn factor(f: &Poly) -> Factorization {
    factor_seeded(f, 0x5eed)
}

pub fn factor_seeded(f: &Poly, seed: u64) -> Factorization {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let unit = f.lead();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // A factor can show up in two squarefree layers when its multiplicity
    // is not a pure power of p, so exponents are merged.
    let mut merged: BTreeMap<Poly, u32> = BTreeMap::new();
    for (sf, mult) in squarefree(&f.monic()) {
        for (g, k) in distinct_degree(&sf) {
            for h in equal_degree(&g, k, &mut rng) {
                *merged.entry(h).or_default() += mult;
            }
        }
    }
    Factorization { unit, factors: merged.into_iter().collect() }
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with
/// each `g` squarefree and `f = prod g^m`.
pub fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.deg() <= 0 {
        return out;
    }
    let df = f.derivative();
    let (mut c, mut w) = if df.is_zero() {
        (f.clone(), Poly::one(p))
    } else {
        let c = f.gcd(&df);
        let w = f.div_exact(&c).unwrap();
        (c, w)
    };
    let mut i = 1u32;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).unwrap();
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(&y).unwrap();
        w = y;
    }
    if c.deg() > 0 {
        // What remains is a p-th power; its p-th root has coefficients
        // at indices divisible by p (Frobenius is the identity on F_p).
        let root = Poly::new(p, c.coeffs().iter().step_by(p as usize).copied().collect());
        for (g, m) in squarefree(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree factorisation of a squarefree monic polynomial.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = Poly::x(p);
    let mut h = x.rem(&rest);
    let mut k = 0;
    while rest.deg() >= 2 * (k as isize + 1) {
        k += 1;
        h = h.pow_mod(p as u128, &rest);
        let g = (&h - &x).gcd(&rest);
        if g.deg() > 0 {
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest);
            out.push((g, k));
        }
    }
    if rest.deg() > 0 {
        let d = rest.deg() as usize;
        out.push((rest, d));
    }
    out
}

/// Split a product of distinct monic irreducibles all of degree `k`.
pub fn equal_degree<R: Rng>(f: &Poly, k: usize, rng: &mut R) -> Vec<Poly> {
    let n = f.deg() as usize;
    if n == k {
        return vec![f.clone()];
    }
    let p = f.p;
    loop {
        let a = Poly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() <= 0 {
            continue;
        }
        let b = splitting_element(&a, f, k);
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < f.deg() {
            let h = f.div_exact(&g).unwrap();
            let mut out = equal_degree(&g, k, rng);
            out.extend(equal_degree(&h, k, rng));
            return out;
        }
    }
}

/// For odd `p`: `a^((p^k-1)/2) - 1`; for `p = 2`: the absolute trace
/// `a + a^2 + ... + a^(2^(k-1))` of `F_{2^k}`.
fn splitting_element(a: &Poly, f: &Poly, k: usize) -> Poly {
    let p = f.p;
    if p == 2 {
        let mut t = a.rem(f);
        let mut acc = t.clone();
        for _ in 1..k {
            t = t.mul_mod(&t, f);
            acc = &acc + &t;
        }
        return acc;
    }
    // a^((p^k-1)/(p-1)) then raise to (p-1)/2; avoids a huge exponent.
    let mut t = a.rem(f);
    let mut norm = t.clone();
    for _ in 1..k {
        t = t.pow_mod(p as u128, f);
        norm = norm.mul_mod(&t, f);
    }
    &norm.pow_mod(((p - 1) / 2) as u128, f) - &Poly::one(p)
}

/// Irreducibility by the gcd ladder: `X^(p^n) = X mod f` and
/// `gcd(X^(p^(n/l)) - X, f) = 1` for each prime `l | n`.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.deg() {
        d if d < 1 => return false,
        1 => return true,
        d => d as usize,
    };
    let p = f.p;
    let x = Poly::x(p);
    let mut powers = vec![x.rem(f)];
    for _ in 0..n {
        let last = powers.last().unwrap();
        powers.push(last.pow_mod(p as u128, f));
    }
    if powers[n] != x.rem(f) {
        return false;
    }
    factorize(n as u64)
        .into_iter()
        .all(|(l, _)| (&powers[n / l as usize] - &x).gcd(f).is_one())
}

/// Number of monic irreducible polynomials of degree `k` over `F_p`.
pub fn count_irreducible(p: u64, k: u64) -> u128 {
    let mut total: i128 = 0;
    for e in divisors(k) {
        let mu = mobius(e) as i128;
        if mu != 0 {
            total += mu * (p as i128).pow((k / e) as u32);
        }
    }
    (total / k as i128) as u128
}

/// All monic irreducibles of degree exactly `k`, by sieving out products
/// of lower-degree irreducibles. Sorted in [`Poly`] order.
pub fn monic_irreducibles(p: u64, k: usize) -> Vec<Poly> {
    if k == 0 {
        return vec![];
    }
    let total = (p as u128).pow(k as u32);
    assert!(total <= 1 << 26, "too many polynomials to sieve");
    let mut composite = vec![false; total as usize];
    let smaller: Vec<Vec<Poly>> = (1..=k / 2).map(|j| monic_irreducibles(p, j)).collect();
    for (j, irr) in smaller.iter().enumerate() {
        let j = j + 1;
        let rest = (p as u128).pow((k - j) as u32);
        for q in irr {
            for idx in 0..rest {
                let mut r = Poly::from_index(p, idx, k - j);
                r = &r + &Poly::monomial(p, 1, k - j);
                let prod = q * &r;
                let key = Poly::new(p, prod.coeffs()[..k].to_vec()).index();
                composite[key as usize] = true;
            }
        }
    }
    let mut out: Vec<Poly> = (0..total)
        .filter(|&i| !composite[i as usize])
        .map(|i| &Poly::from_index(p, i, k) + &Poly::monomial(p, 1, k))
        .collect();
    out.sort();
    out
}

/// Number of monic irreducibles of degree at most `kappa`.
pub fn count_irreducible_upto(p: u64, kappa: u64) -> u128 {
    (1..=kappa).map(|k| count_irreducible(p, k)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(f: &Poly) -> bool {
        // Oracle: no monic divisor of degree 1..=deg/2, by enumeration.
        let p = f.p;
        let n = f.deg() as usize;
        if n < 1 {
            return false;
        }
        for k in 1..=n / 2 {
            for idx in 0..(p as u128).pow(k as u32) {
                let g = &Poly::from_index(p, idx, k) + &Poly::monomial(p, 1, k);
                if g.divides(f) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn factor_examples() {
        let f = Poly::from_i64(13, &[-1, 0, 1]);
        let fac = factor(&f);
        assert_eq!(
            fac.factors,
            vec![(Poly::from_i64(13, &[1, 1]), 1), (Poly::from_i64(13, &[-1, 1]), 1)]
        );
        let a = Poly::from_i64(43, &[-3, 0, 0, 0, 0, 0, 1]);
        assert_eq!(factor(&a).factors, vec![(a.clone(), 1)]);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&Poly::from_i64(43, &[-3, 0, 0, 0, 0, 0, 1])));
        assert!(!is_irreducible(&Poly::from_i64(13, &[-4, 0, 1])));
        assert!(is_irreducible(&Poly::from_i64(7, &[-1, -1, 0, 0, 0, 0, 0, 1])));
    }

    #[test]
    fn irreducible_agrees_with_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2u64, 3, 5] {
            for _ in 0..150 {
                let n = rng.gen_range(1..=6);
                let mut v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
                v.push(1);
                let f = Poly::new(p, v);
                assert_eq!(is_irreducible(&f), brute_irreducible(&f), "{f:?}");
            }
        }
    }

    #[test]
    fn sieve_matches_count() {
        for (p, k) in [(2u64, 5usize), (3, 4), (5, 3), (13, 2), (43, 2)] {
            let irr = monic_irreducibles(p, k);
            assert_eq!(irr.len() as u128, count_irreducible(p, k as u64));
            assert!(irr.iter().all(is_irreducible));
        }
    }

    #[test]
    fn char_two_and_powers() {
        let x1 = Poly::new(2, vec![1, 1]);
        let f = &x1.pow(4) * &Poly::new(2, vec![1, 1, 1]).pow(3);
        let fac = factor(&f);
        assert_eq!(fac.factors, vec![(x1, 4), (Poly::new(2, vec![1, 1, 1]), 3)]);
        let h = Poly::from_i64(3, &[2, 1]).pow(5);
        assert_eq!(factor(&h).factors, vec![(Poly::from_i64(3, &[2, 1]), 5)]);
        let g = Poly::from_i64(3, &[1, 1]).pow(9);
        assert_eq!(factor(&g).factors, vec![(Poly::from_i64(3, &[1, 1]), 9)]);
    }
}
