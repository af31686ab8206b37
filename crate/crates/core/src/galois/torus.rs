//! The rank-one torus `G` of norm-one elements of `F_p(sqrt D)`, written in
//! the projective coordinate `u = U/V`: the class of `U + V sqrt(D)`.
//! Group law `u(P+Q) = (u(P) u(Q) + D) / (u(P) + u(Q))`, neutral `[1:0]`,
//! opposite `u -> -u`. `G(F_p)` is cyclic of order `p + 1`.

use serde::{Deserialize, Serialize};

use crate::arith::{add_mod, factorize, inv_mod, mul_mod, sub_mod};
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::galois::{FrobeniusMap, RepKind, RepParams, Representation};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusPoint {
    pub u: u64,
    pub v: u64,
}

impl TorusPoint {
    pub fn neutral() -> Self {
        TorusPoint { u: 1, v: 0 }
    }

    /// The affine point with coordinate `u`, i.e. `[u : 1]`.
    pub fn affine(u: u64) -> Self {
        TorusPoint { u, v: 1 }
    }

    pub fn is_neutral(&self) -> bool {
        self.v == 0
    }

    /// Scale to `[u : 1]` or `[1 : 0]`.
    pub fn normalize(self, p: u64) -> Self {
        if self.v == 0 {
            TorusPoint::neutral()
        } else {
            let iv = inv_mod(self.v, p).unwrap();
            TorusPoint { u: mul_mod(self.u, iv, p), v: 1 }
        }
    }

    pub fn check(&self, p: u64, d: u64) -> Result<()> {
        let n = sub_mod(mul_mod(self.u, self.u, p), mul_mod(d, mul_mod(self.v, self.v, p), p), p);
        if n == 0 {
            return Err(Error::InvalidPoint(format!("[{} : {}] has U^2 - D V^2 = 0", self.u, self.v)));
        }
        Ok(())
    }
}

pub fn torus_add(p: u64, d: u64, a: TorusPoint, b: TorusPoint) -> Result<TorusPoint> {
    a.check(p, d)?;
    b.check(p, d)?;
    let u = add_mod(mul_mod(a.u, b.u, p), mul_mod(d, mul_mod(a.v, b.v, p), p), p);
    let v = add_mod(mul_mod(a.u, b.v, p), mul_mod(a.v, b.u, p), p);
    Ok(TorusPoint { u, v }.normalize(p))
}

pub fn torus_neg(p: u64, a: TorusPoint) -> TorusPoint {
    TorusPoint { u: a.u, v: sub_mod(0, a.v, p) }.normalize(p)
}

pub fn torus_scalar_mul(p: u64, d: u64, k: i128, a: TorusPoint) -> Result<TorusPoint> {
    a.check(p, d)?;
    let mut base = if k < 0 { torus_neg(p, a) } else { a.normalize(p) };
    let mut e = k.unsigned_abs();
    let mut acc = TorusPoint::neutral();
    while e > 0 {
        if e & 1 == 1 {
            acc = torus_add(p, d, acc, base)?;
        }
        base = torus_add(p, d, base, base)?;
        e >>= 1;
    }
    Ok(acc)
}

/// Order of a point, using the factorisation of `p + 1`.
pub fn torus_order(p: u64, d: u64, a: TorusPoint) -> u64 {
    let mut n = p + 1;
    for (l, _) in factorize(p + 1) {
        while n.is_multiple_of(l) && torus_scalar_mul(p, d, (n / l) as i128, a).unwrap().is_neutral() {
            n /= l;
        }
    }
    n
}

/// Which multiple of the generator gave the Frobenius homography.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TorusConvention {
    /// `tau = u([-m] r)`
    MinusM,
    /// `tau = u([+m] r)`
    PlusM,
}

/// Numerator minus `u_r` times denominator of `u([d] P)` at `P = [X : 1]`:
/// `(X + sqrt D)^d = E(X) + O(X) sqrt D`, and `A = E - u_r O`.
pub fn torus_modulus(p: u64, d: usize, nonres: u64, u_r: u64) -> Poly {
    let mut even = vec![0u64; d + 1];
    let mut odd = vec![0u64; d + 1];
    let mut dpow = 1u64;
    for k in 0..=d {
        let c = binomial_mod(d as u64, k as u64, p);
        if k % 2 == 0 {
            even[d - k] = mul_mod(c, dpow, p);
        } else {
            odd[d - k] = mul_mod(c, dpow, p);
            dpow = mul_mod(dpow, nonres, p);
        }
    }
    &Poly::new(p, even) - &Poly::new(p, odd).scale(u_r % p)
}

fn binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    // Lucas' theorem keeps this exact for any n.
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        let mut c: u128 = 1;
        for i in 0..ki {
            c = c * (ni - i) as u128 / (i + 1) as u128;
        }
        acc = mul_mod(acc, (c % p as u128) as u64, p);
        n /= p;
        k /= p;
    }
    acc
}

/// Smallest non-square `D >= 2` and the first `u` (increasing) whose point
/// generates `G(F_p)`.
pub fn build_torus(p: u64, d: usize) -> Result<Representation> {
    check_params(p, d)?;
    let fp = Fp::new(p);
    let nonres = (2..p).find(|&c| !fp.is_square(c)).unwrap();
    let u_r = (0..p)
        .find(|&u| torus_order(p, nonres, TorusPoint::affine(u)) == p + 1)
        .ok_or_else(|| Error::NotFound("torus generator".into()))?;
    build_torus_with(p, d, nonres, u_r)
}

/// Torus presentation for a given non-square `D` and point `r = [u_r : 1]`.
/// `r` only needs to generate `G(F_p) / d G(F_p)`, i.e. `[(p+1)/l] r` is
/// not neutral for every prime `l | d`.
pub fn build_torus_with(p: u64, d: usize, nonres: u64, u_r: u64) -> Result<Representation> {
    check_params(p, d)?;
    let fp = Fp::new(p);
    if fp.is_square(nonres % p) {
        return Err(Error::InvalidInput(format!("{nonres} is a square modulo {p}")));
    }
    let r = TorusPoint::affine(u_r % p);
    for (l, _) in factorize(d as u64) {
        if torus_scalar_mul(p, nonres, ((p + 1) / l) as i128, r)?.is_neutral() {
            return Err(Error::InvalidInput(format!("u = {u_r} is a {l}-th multiple in the torus")));
        }
    }
    let m = (p + 1) / d as u64;
    let modulus = torus_modulus(p, d, nonres, u_r);
    let mut last_err = None;
    for convention in [TorusConvention::MinusM, TorusConvention::PlusM] {
        let k = match convention {
            TorusConvention::MinusM => -(m as i128),
            TorusConvention::PlusM => m as i128,
        };
        let t = torus_scalar_mul(p, nonres, k, r)?;
        if t.is_neutral() {
            return Err(Error::InvalidInput(format!("[{k}] r is neutral")));
        }
        let tau = t.u;
        if Poly::new(p, vec![tau, 1]).inv_mod(&modulus).is_none() {
            continue;
        }
        let rep = Representation {
            p,
            d,
            kind: RepKind::Torus,
            modulus: modulus.clone(),
            frobenius: FrobeniusMap::Homography { tau, d: nonres },
            params: RepParams::Torus { nonresidue: nonres, u_r: u_r % p, m, tau, convention },
        };
        match rep.verify() {
            Ok(()) => return Ok(rep),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or(Error::InconsistentFrobenius))
}

fn check_params(p: u64, d: usize) -> Result<()> {
    crate::ensure_prime(p)?;
    if p == 2 {
        return Err(Error::DegreeNotCompatible { p, d: d as u64, reason: "p must be odd".into() });
    }
    if d < 2 || !(p + 1).is_multiple_of(d as u64) {
        return Err(Error::DegreeNotCompatible { p, d: d as u64, reason: "d must divide p + 1 and be at least 2".into() });
    }
    Ok(())
}
