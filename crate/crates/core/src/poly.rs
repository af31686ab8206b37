//! Dense univariate polynomials over `F_p`.
//!
//! Coefficients are stored low degree first and kept normalised (no
//! trailing zeros), so the zero polynomial is the empty vector.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::{add_mod, inv_mod, mul_mod, sub_mod};
use crate::field::Fp;

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::MinusInfinity => None,
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::MinusInfinity, Degree::MinusInfinity) => Ordering::Equal,
            (Degree::MinusInfinity, _) => Ordering::Less,
            (_, Degree::MinusInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    pub p: u64,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut out = Poly { p, coeffs };
        out.trim();
        out
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        let fp = Fp::new(p);
        Poly::new(p, coeffs.iter().map(|&c| fp.reduce_i64(c)).collect())
    }

    pub fn zero(p: u64) -> Self {
        Poly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Poly::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Poly::new(p, vec![c])
    }

    /// The polynomial `X`.
    pub fn x(p: u64) -> Self {
        Poly::new(p, vec![0, 1])
    }

    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly::new(p, v)
    }

    /// `X - a`.
    pub fn linear(p: u64, a: u64) -> Self {
        Poly::new(p, vec![sub_mod(0, a % p, p), 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::MinusInfinity
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn field(&self) -> Fp {
        Fp::new(self.p)
    }

    pub fn scale(&self, c: u64) -> Poly {
        Poly::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead(), self.p).unwrap())
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        Poly { p: self.p, coeffs: v }
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
    }

    pub fn derivative(&self) -> Poly {
        let p = self.p;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u64) % p, p))
            .collect();
        Poly::new(p, v)
    }

    /// `self(inner(X))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero(self.p);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(self.p, c);
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let p = self.p;
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(p), self.clone());
        }
        let inv = inv_mod(d.lead(), p).unwrap();
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        let mut q = vec![0u64; r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + dl - 1], inv, p);
            q[i] = c;
            if c != 0 {
                for (j, &dj) in d.coeffs.iter().enumerate() {
                    r[i + j] = sub_mod(r[i + j], mul_mod(c, dj, p), p);
                }
            }
        }
        r.truncate(dl - 1);
        (Poly::new(p, q), Poly::new(p, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(p), Poly::zero(p));
        let (mut t0, mut t1) = (Poly::zero(p), Poly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s = &s0 - &(&q * &s1);
            s0 = s1;
            s1 = s;
            let t = &t0 - &(&q * &t1);
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = inv_mod(r0.lead(), p).unwrap();
        (r0.scale(c), s0.scale(c), t0.scale(c))
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).xgcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.p);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate `self` at an element `z` of `F_p[X]/m` (Horner).
    pub fn eval_mod(&self, z: &Poly, m: &Poly) -> Poly {
        let mut acc = Poly::zero(self.p);
        for &c in self.coeffs.iter().rev() {
            acc = &acc.mul_mod(z, m) + &Poly::constant(self.p, c);
        }
        acc
    }

    /// Integer index of a polynomial of degree `< k` in base `p`; used to
    /// enumerate and sieve monic polynomials.
    pub fn index(&self) -> u128 {
        self.coeffs.iter().rev().fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    pub fn from_index(p: u64, mut idx: u128, len: usize) -> Poly {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push((idx % p as u128) as u64);
            idx /= p as u128;
        }
        Poly::new(p, v)
    }

    /// Coefficients padded to length `n` (for linear algebra).
    pub fn to_vec(&self, n: usize) -> Vec<u64> {
        let mut v = self.coeffs.clone();
        v.resize(n, 0);
        v
    }

    /// Readable form such as `X^6 + 40`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => format!("{c}"),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        parts.join(" + ")
    }

    /// Parse either a JSON coefficient array (`[40,0,0,1]`) or the
    /// readable form produced by [`Poly::pretty`].
    pub fn parse(p: u64, s: &str) -> Option<Poly> {
        let s = s.trim();
        if s.starts_with('[') {
            let vals: Vec<serde_json::Value> = serde_json::from_str(s).ok()?;
            let mut v = Vec::new();
            for x in vals {
                v.push(json_to_i128(&x)?);
            }
            let fp = p as i128;
            return Some(Poly::new(p, v.into_iter().map(|c| c.rem_euclid(fp) as u64).collect()));
        }
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let cleaned = cleaned.replace('-', "+-");
        let mut acc = Poly::zero(p);
        for term in cleaned.split('+').filter(|t| !t.is_empty()) {
            let (neg, term) = match term.strip_prefix('-') {
                Some(t) => (true, t),
                None => (false, term),
            };
            let (coef, mono) = match term.split_once('*') {
                Some((c, m)) => (c.parse::<u64>().ok()?, m),
                None if term.contains(['X', 'x']) => (1, term),
                None => (term.parse::<u64>().ok()?, ""),
            };
            let k = if mono.is_empty() {
                0
            } else {
                let rest = mono.trim_start_matches(['X', 'x']);
                if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')?.parse::<usize>().ok()?
                }
            };
            let c = if neg { sub_mod(0, coef % p, p) } else { coef % p };
            acc = &acc + &Poly::monomial(p, c, k);
        }
        Some(acc)
    }
}

fn json_to_i128(v: &serde_json::Value) -> Option<i128> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(|x| x as i128).or(n.as_u64().map(|x| x as i128)),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.p, self.pretty())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Order by degree, then coefficients from the top.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let p = self.p;
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(p, (0..n).map(|i| add_mod(self.coeff(i), o.coeff(i), p)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let p = self.p;
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(p, (0..n).map(|i| sub_mod(self.coeff(i), o.coeff(i), p)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let p = self.p;
        Poly::new(p, self.coeffs.iter().map(|&c| sub_mod(0, c, p)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let p = self.p;
        if self.is_zero() || o.is_zero() {
            return Poly::zero(p);
        }
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        let mut acc = vec![0u128; n];
        let p128 = p as u128;
        // Accumulate without reducing until the sum could overflow.
        let bound = u128::MAX / ((p128 - 1).max(1) * (p128 - 1).max(1)) - 1;
        let mut pending = 0u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                acc[i + j] += a as u128 * b as u128;
            }
            pending += 1;
            if pending >= bound {
                for c in acc.iter_mut() {
                    *c %= p128;
                }
                pending = 0;
            }
        }
        Poly::new(p, acc.into_iter().map(|c| (c % p128) as u64).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}
