//! Integer arithmetic on `u64` with `u128` intermediates: modular powers,
//! primality, factorisation of group orders, primitive roots and CRT.

use std::collections::HashMap;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        ((a as u128 + m as u128 - b as u128) % m as u128) as u64
    }
}

pub fn pow_mod(mut b: u64, mut e: u128, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Largest modulus accepted by [`is_prime_trial`]: trial division up to
/// `sqrt(2^40)` stays below a million divisions.
pub const TRIAL_DIVISION_LIMIT: u64 = 1 << 40;

/// Primality by trial division. Only meant for field characteristics,
/// which are bounded by [`TRIAL_DIVISION_LIMIT`].
pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

/// Deterministic Miller-Rabin for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d as u128, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| add_mod(mul_mod(x, x, n), c, n);
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorisation as sorted `(prime, exponent)` pairs.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut counts: HashMap<u64, u32> = HashMap::new();
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        let mut m = m;
        for p in [2u64, 3, 5, 7, 11, 13] {
            while m % p == 0 {
                *counts.entry(p).or_default() += 1;
                m /= p;
            }
        }
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            *counts.entry(m).or_default() += 1;
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    let mut v: Vec<_> = counts.into_iter().collect();
    v.sort();
    v
}

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let primes: Vec<u64> = factorize(p - 1).into_iter().map(|(l, _)| l).collect();
    (2..p)
        .find(|&g| primes.iter().all(|&l| pow_mod(g, ((p - 1) / l) as u128, p) != 1))
        .expect("a prime has a primitive root")
}

/// Multiplicative order of `a` in `(Z/pZ)^*`.
pub fn order_mod(a: u64, p: u64) -> u64 {
    let mut n = p - 1;
    for (l, _) in factorize(p - 1) {
        while n.is_multiple_of(l) && pow_mod(a, (n / l) as u128, p) == 1 {
            n /= l;
        }
    }
    n
}

/// Discrete logarithm of `h` to base `g` in `F_p^*` (baby-step giant-step).
pub fn dlog_fp(g: u64, h: u64, p: u64) -> Option<u64> {
    let n = p - 1;
    let m = (n as f64).sqrt().ceil() as u64 + 1;
    let mut table = HashMap::with_capacity(m as usize);
    let mut cur = 1u64;
    for j in 0..m {
        table.entry(cur).or_insert(j);
        cur = mul_mod(cur, g, p);
    }
    let giant = inv_mod(pow_mod(g, m as u128, p), p)?;
    let mut y = h % p;
    for i in 0..=m {
        if let Some(&j) = table.get(&y) {
            return Some((i * m + j) % n);
        }
        y = mul_mod(y, giant, p);
    }
    None
}

/// Chinese remaindering of `(residue, modulus)` pairs with coprime moduli.
pub fn crt(parts: &[(u64, u64)]) -> (u64, u64) {
    let mut x: u128 = 0;
    let mut m: u128 = 1;
    for &(r, n) in parts {
        let n128 = n as u128;
        let mm = (m % n128) as u64;
        let inv = inv_mod(mm, n).expect("coprime moduli");
        let diff = sub_mod(r % n, (x % n128) as u64, n);
        let k = mul_mod(diff, inv, n) as u128;
        x += m * k;
        m *= n128;
    }
    (x as u64, m as u64)
}

/// `p^d` as a `u128`, or `None` on overflow.
pub fn checked_pow(p: u64, d: u32) -> Option<u128> {
    let mut r: u128 = 1;
    for _ in 0..d {
        r = r.checked_mul(p as u128)?;
    }
    Some(r)
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (l, e) in factorize(n) {
        let cur = out.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= l;
            out.extend(cur.iter().map(|&c| c * pk));
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_roots_small() {
        assert_eq!(primitive_root(43), 3);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(2), 1);
        assert_eq!(primitive_root(370801), 17);
        // 3 has full order modulo 43: checked against 2, 3, 7.
        for l in [2u64, 3, 7] {
            assert_ne!(pow_mod(3, (42 / l) as u128, 43), 1);
        }
    }

    #[test]
    fn primality_agrees() {
        for n in 0..5000u64 {
            assert_eq!(is_prime(n), is_prime_trial(n), "{n}");
        }
    }

    #[test]
    fn factor_group_orders() {
        assert_eq!(factorize(13u64.pow(7) - 1), vec![(2, 2), (3, 1), (5229043, 1)]);
        assert_eq!(
            factorize(43u64.pow(6) - 1),
            vec![(2, 3), (3, 2), (7, 1), (11, 1), (13, 1), (139, 1), (631, 1)]
        );
    }

    #[test]
    fn crt_small() {
        let (x, m) = crt(&[(2, 3), (3, 5), (2, 7)]);
        assert_eq!((x, m), (23, 105));
    }

    #[test]
    fn dlog_small() {
        for h in 1..43 {
            let l = dlog_fp(3, h, 43).unwrap();
            assert_eq!(pow_mod(3, l as u128, 43), h);
        }
    }

    #[test]
    fn inverse() {
        for a in 1..97 {
            assert_eq!(mul_mod(a, inv_mod(a, 97).unwrap(), 97), 1);
        }
        assert_eq!(inv_mod(6, 9), None);
    }
}
