use std::collections::HashMap;

use serde_json::{json, Value};

use crate::arith::{add_mod, dlog_fp, mul_mod, pow_mod, primitive_root, sub_mod};
use crate::error::{Error, Result};
use crate::factor::{factor, monic_irreducibles};
use crate::galois::{basis_orbit, BasisPlace, FrobeniusMap, Orbit, Representation};
use crate::poly::Poly;

/// Discrete logarithms in `F_p^*` to a fixed primitive root.
#[derive(Clone, Debug)]
pub struct PrimeFieldLog {
    p: u64,
    g0: u64,
    table: Option<Vec<u32>>,
}

impl PrimeFieldLog {
    const TABLE_LIMIT: u64 = 1 << 22;

    pub fn new(p: u64) -> Self {
        let g0 = primitive_root(p);
        let table = (p <= Self::TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; p as usize];
            let mut cur = 1u64;
            for k in 0..p - 1 {
                t[cur as usize] = k as u32;
                cur = mul_mod(cur, g0, p);
            }
            t
        });
        PrimeFieldLog { p, g0, table }
    }

    pub fn base(&self) -> u64 {
        self.g0
    }

    /// `log_{g0}(c)` modulo `p - 1`; `c` must be non-zero.
    pub fn log(&self, c: u64) -> u64 {
        let c = c % self.p;
        assert!(c != 0, "logarithm of zero");
        match &self.table {
            Some(t) => t[c as usize] as u64,
            None => dlog_fp(self.g0, c, self.p).expect("primitive root"),
        }
    }
}

/// Orbit-reduced smoothness basis: one unknown per Frobenius orbit of
/// places of degree at most `kappa`, plus a constant column for `F_p^*`.
#[derive(Clone, Debug)]
pub struct FactorBase {
    pub p: u64,
    pub d: usize,
    pub kappa: usize,
    /// `p^d - 1`.
    pub group_order: u64,
    pub orbits: Vec<Orbit>,
    /// Orbit whose representative is `X + tau` (torus presentations only).
    pub tau_column: Option<usize>,
    pub constant: PrimeFieldLog,
    lookup: HashMap<Poly, (usize, usize)>,
}

/// Exponent vector of a smooth element over the factor base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothDecomposition {
    /// `(orbit index, exponent mod p^d - 1)`, sorted, without zero entries.
    pub columns: Vec<(usize, u64)>,
    /// Exponent of `g0`, modulo `p - 1`.
    pub const_exp: u64,
}

impl FactorBase {
    pub fn build(rep: &Representation, kappa: usize) -> Result<FactorBase> {
        let p = rep.p;
        let d = rep.d;
        if kappa == 0 || kappa >= d {
            return Err(Error::InvalidInput(format!("need 1 <= kappa < d, got kappa = {kappa}, d = {d}")));
        }
        let n = rep
            .group_order()
            .ok_or_else(|| Error::InvalidInput(format!("{p}^{d} - 1 does not fit in 64 bits")))?;
        let mut places: Vec<BasisPlace> = Vec::new();
        for k in 1..=kappa {
            places.extend(monic_irreducibles(p, k).into_iter().map(BasisPlace::Finite));
        }
        let tau_place = match rep.frobenius {
            FrobeniusMap::Homography { tau, .. } => {
                places.push(BasisPlace::Infinity);
                Some(BasisPlace::Finite(Poly::new(p, vec![tau, 1])))
            }
            _ => None,
        };
        let mut orbits = Vec::new();
        let mut seen: HashMap<BasisPlace, ()> = HashMap::new();
        let mut tau_column = None;
        // X + tau first, so that it is its orbit's representative.
        for q in tau_place.iter().chain(places.iter()) {
            if seen.contains_key(q) {
                continue;
            }
            let orbit = basis_orbit(rep, q)?;
            if Some(q) == tau_place.as_ref() {
                tau_column = Some(orbits.len());
            }
            for m in &orbit.members {
                if seen.insert(m.place.clone(), ()).is_some() {
                    return Err(Error::DegenerateOrbit(format!("orbits overlap at {:?}", m.place)));
                }
            }
            orbits.push(orbit);
        }
        if seen.len() != places.len() {
            return Err(Error::DegenerateOrbit("orbits leave the basis".into()));
        }
        let mut lookup = HashMap::new();
        for (i, o) in orbits.iter().enumerate() {
            for (j, m) in o.members.iter().enumerate() {
                if let BasisPlace::Finite(q) = &m.place {
                    lookup.insert(q.clone(), (i, j));
                }
            }
        }
        Ok(FactorBase {
            p,
            d,
            kappa,
            group_order: n,
            orbits,
            tau_column,
            constant: PrimeFieldLog::new(p),
            lookup,
        })
    }

    /// Number of unknowns: one per orbit and the constant column.
    pub fn columns(&self) -> usize {
        self.orbits.len() + 1
    }

    pub fn const_column(&self) -> usize {
        self.orbits.len()
    }

    /// Number of places before orbit reduction.
    pub fn unreduced_size(&self) -> usize {
        self.orbits.iter().map(Orbit::len).sum()
    }

    /// Orbit and member index of a monic irreducible.
    pub fn locate(&self, q: &Poly) -> Option<(usize, usize)> {
        self.lookup.get(q).copied()
    }

    /// `log m = a log rep + b log(X + tau) + c log g0` for the member at
    /// `(orbit, member)`; returns `(a, b, c)` with `a, b` modulo `p^d - 1`
    /// and `c` modulo `p - 1`.
    pub fn member_coefficients(&self, orbit: usize, member: usize) -> (u64, u64, u64) {
        let o = &self.orbits[orbit];
        let m = &o.members[member];
        let n = self.group_order;
        let a = pow_mod(self.p, m.shift as u128, n);
        let b = if self.tau_column.is_some() { o.tau_weight(self.p, m.shift, n) } else { 0 };
        (a, b, self.constant.log(m.scalar))
    }

    fn add_member(&self, acc: &mut Accumulator, q: &Poly, e: u64) -> bool {
        let Some((i, j)) = self.locate(q) else { return false };
        let n = self.group_order;
        let (a, b, c) = self.member_coefficients(i, j);
        acc.add(i, mul_mod(a, e, n));
        if let Some(t) = self.tau_column {
            acc.add(t, mul_mod(b, e, n));
        }
        acc.const_exp = add_mod(acc.const_exp, mul_mod(c, e % (self.p - 1), self.p - 1), self.p - 1);
        true
    }

    /// Exponents of the monic irreducible factors of `f`, folded through
    /// the orbits, together with the log of the leading unit.
    fn fold_poly(&self, acc: &mut Accumulator, f: &Poly, sign: bool) -> bool {
        let n = self.group_order;
        let fz = factor(f);
        if fz.max_degree() > self.kappa {
            return false;
        }
        let pm1 = self.p - 1;
        let c = self.constant.log(fz.unit);
        acc.const_exp = if sign { add_mod(acc.const_exp, c, pm1) } else { sub_mod(acc.const_exp, c, pm1) };
        for (q, e) in &fz.factors {
            let e = *e as u64 % n;
            let e = if sign { e } else { sub_mod(0, e, n) };
            if !self.add_member(acc, q, e) {
                return false;
            }
        }
        true
    }

    /// Factor `z` over the basis, or `None` if it is not smooth. For the
    /// torus the representative is first written as `N(x) / D(x)` with
    /// `deg N, deg D <= d/2`.
    pub fn smooth_factor(&self, rep: &Representation, z: &Poly) -> Option<SmoothDecomposition> {
        let z = z.rem(&rep.modulus);
        if z.is_zero() {
            return None;
        }
        let mut acc = Accumulator::new(self.group_order);
        let ok = if self.tau_column.is_some() {
            let (num, den) = rational_reconstruction(&rep.modulus, &z);
            self.fold_poly(&mut acc, &num, true) && self.fold_poly(&mut acc, &den, false)
        } else {
            self.fold_poly(&mut acc, &z, true)
        };
        ok.then(|| acc.finish())
    }

    /// Relations that hold for free: orbit closure for every orbit, the
    /// point at infinity having value 1, and `g0^(p-1) = 1`.
    pub fn free_relations(&self) -> Vec<super::Relation> {
        let n = self.group_order;
        let pm1 = self.p - 1;
        let mut out = Vec::new();
        for (i, o) in self.orbits.iter().enumerate() {
            let j = o.len() as u32;
            let mut acc = Accumulator::new(n);
            acc.add(i, sub_mod(pow_mod(self.p, j as u128, n), 1, n));
            if let Some(t) = self.tau_column {
                acc.add(t, o.tau_weight(self.p, j, n));
            }
            acc.const_exp = self.constant.log(o.closing_scalar);
            out.push(acc.finish().into_relation(0));
            for (k, m) in o.members.iter().enumerate() {
                if m.place == BasisPlace::Infinity {
                    let (a, b, c) = self.member_coefficients(i, k);
                    let mut acc = Accumulator::new(n);
                    acc.add(i, a);
                    acc.add(self.tau_column.unwrap(), b);
                    acc.const_exp = c;
                    out.push(acc.finish().into_relation(0));
                }
            }
        }
        out.push(super::Relation { e: 0, columns: Vec::new(), const_exp: pm1 });
        out
    }

    pub fn to_json(&self) -> Value {
        let orbits: Vec<Value> = self
            .orbits
            .iter()
            .enumerate()
            .map(|(i, o)| {
                json!({
                    "index": i,
                    "size": o.len(),
                    "degree": o.degree,
                    "representative": place_json(o.representative()),
                    "members": o.members.iter().map(|m| json!({
                        "place": place_json(&m.place),
                        "shift": m.shift,
                        "scalar": m.scalar,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "p": self.p,
            "d": self.d,
            "kappa": self.kappa,
            "group_order": self.group_order.to_string(),
            "constant_column": {"index": self.const_column(), "g0": self.constant.base()},
            "tau_column": self.tau_column,
            "places": self.unreduced_size(),
            "orbit_count": self.orbits.len(),
            "orbits": orbits,
        })
    }
}

fn place_json(pl: &BasisPlace) -> Value {
    match pl {
        BasisPlace::Finite(q) => json!(q),
        BasisPlace::Infinity => json!("infinity"),
    }
}

/// Half-extended Euclid on `(A, z)`, stopped at the first remainder of
/// degree below `d/2`: returns `(r, t)` with `r = t z mod A`.
pub fn rational_reconstruction(modulus: &Poly, z: &Poly) -> (Poly, Poly) {
    let p = modulus.p;
    let d = modulus.deg();
    let (mut r0, mut r1) = (modulus.clone(), z.rem(modulus));
    let (mut t0, mut t1) = (Poly::zero(p), Poly::one(p));
    while 2 * r1.deg() >= d {
        let (q, r) = r0.div_rem(&r1);
        let t = &t0 - &(&q * &t1);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    (r1, t1)
}

#[derive(Clone, Debug)]
struct Accumulator {
    n: u64,
    cols: Vec<(usize, u64)>,
    const_exp: u64,
}

impl Accumulator {
    fn new(n: u64) -> Self {
        Accumulator { n, cols: Vec::new(), const_exp: 0 }
    }

    fn add(&mut self, col: usize, e: u64) {
        self.cols.push((col, e % self.n));
    }

    fn finish(mut self) -> SmoothDecomposition {
        self.cols.sort();
        let mut merged: Vec<(usize, u64)> = Vec::new();
        for (c, e) in self.cols {
            match merged.last_mut() {
                Some((lc, le)) if *lc == c => *le = add_mod(*le, e, self.n),
                _ => merged.push((c, e)),
            }
        }
        merged.retain(|&(_, e)| e != 0);
        SmoothDecomposition { columns: merged, const_exp: self.const_exp }
    }
}

impl SmoothDecomposition {
    pub fn into_relation(self, e: u64) -> super::Relation {
        super::Relation { e, columns: self.columns, const_exp: self.const_exp }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::count_irreducible_upto;
    use crate::galois::{build_artin_schreier, build_kummer, build_torus};

    #[test]
    fn kummer_linear_orbits() {
        let rep = build_kummer(43, 6).unwrap();
        let fb = FactorBase::build(&rep, 1).unwrap();
        assert_eq!(fb.unreduced_size(), 43);
        let x = fb.locate(&Poly::x(43)).unwrap();
        assert_eq!(fb.orbits[x.0].len(), 1);
        assert!(fb.orbits.iter().all(|o| 6 % o.len() == 0));
        assert_eq!(fb.orbits.len(), 1 + 42 / 6);
    }

    #[test]
    fn artin_schreier_single_orbit() {
        let rep = build_artin_schreier(7, 1).unwrap();
        let fb = FactorBase::build(&rep, 1).unwrap();
        assert_eq!(fb.orbits.len(), 1);
        assert_eq!(fb.orbits[0].len(), 7);
    }

    #[test]
    fn full_basis_partition() {
        for rep in [build_kummer(7, 3).unwrap(), build_artin_schreier(3, 1).unwrap()] {
            let fb = FactorBase::build(&rep, rep.d - 1).unwrap();
            assert_eq!(fb.unreduced_size() as u128, count_irreducible_upto(rep.p, rep.d as u64 - 1));
        }
        let rep = build_torus(5, 3).unwrap();
        let fb = FactorBase::build(&rep, 2).unwrap();
        // Finite places plus the point at infinity.
        assert_eq!(fb.unreduced_size() as u128, count_irreducible_upto(5, 2) + 1);
        assert!(fb.orbits.iter().all(|o| 3 % o.len() == 0));
    }

    #[test]
    fn prime_field_logs() {
        let l = PrimeFieldLog::new(43);
        assert_eq!(l.base(), 3);
        for c in 1..43 {
            assert_eq!(pow_mod(3, l.log(c) as u128, 43), c);
        }
    }

    #[test]
    fn reconstruction_bounds() {
        let rep = build_torus(13, 7).unwrap();
        let ring = rep.ring();
        for i in [5u64, 999, 12345, 777777] {
            let z = crate::field::Field::element_at(&ring, i);
            let (num, den) = rational_reconstruction(&rep.modulus, &z);
            assert!(num.deg() <= 3 && den.deg() <= 3);
            assert_eq!(num.rem(&rep.modulus), den.mul_mod(&z, &rep.modulus));
        }
    }
}
