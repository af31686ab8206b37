//! Presentations of `F_{p^d}` as the residue field of an irreducible fiber
//! of an isogeny `I : E -> E/T` with `T` rational of order `d`. Frobenius
//! then moves the fiber point by a rational point `t*` of `T`.

use serde::Serialize;

use crate::elliptic::curve::{curve_search, Curve, CurvePoint, Point};
use crate::elliptic::velu::{velu_quotient, Isogeny};
use crate::error::{Error, Result};
use crate::factor::is_irreducible;
use crate::field::Field;
use crate::galois::{FrobeniusMap, RepKind, RepParams, Representation};
use crate::poly::Poly;
use crate::residue::ResidueRing;

/// Curve data carried by an elliptic residue presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticParams {
    pub curve: Curve,
    /// Generator of the kernel `T`.
    pub kernel_gen: CurvePoint,
    /// Rational point `a` of the codomain whose fiber is `A`.
    pub target: CurvePoint,
    /// `t*` with `Frobenius(b) = b + t*`.
    pub t_star: CurvePoint,
    /// `Y(x)`: the fiber point is `b = (x, Y(x))`.
    pub fiber_y: Poly,
}

impl EllipticParams {
    pub fn fiber_point(&self, ring: &ResidueRing) -> Point<Poly> {
        Point::Affine(ring.gen(), self.fiber_y.clone())
    }
}

/// A residue presentation together with its isogeny.
#[derive(Clone, Debug)]
pub struct EllipticResidueRep {
    pub rep: Representation,
    pub isogeny: Isogeny,
}

impl EllipticResidueRep {
    pub fn params(&self) -> &EllipticParams {
        match &self.rep.params {
            RepParams::EllipticResidue(ep) => ep,
            _ => unreachable!(),
        }
    }

    pub fn curve(&self) -> &Curve {
        &self.params().curve
    }

    pub fn ring(&self) -> ResidueRing {
        self.rep.ring()
    }

    pub fn fiber_point(&self) -> Point<Poly> {
        self.params().fiber_point(&self.ring())
    }

    /// Rebuild from a stored representation, recomputing the isogeny.
    pub fn from_rep(rep: Representation) -> Result<Self> {
        let ep = match &rep.params {
            RepParams::EllipticResidue(ep) => ep.clone(),
            _ => return Err(Error::InvalidInput("not an elliptic residue presentation".into())),
        };
        let isogeny = velu_quotient(&ep.curve, &ep.kernel_gen)?;
        let out = EllipticResidueRep { rep, isogeny };
        out.check()?;
        Ok(out)
    }

    /// Fiber point lies on `E`, maps to the target, and Frobenius is the
    /// translation by `t*` on both coordinates.
    pub fn check(&self) -> Result<()> {
        let ring = self.ring();
        let ep = self.params();
        let b = self.fiber_point();
        if !ep.curve.is_on(&ring, &b) {
            return Err(Error::InvalidPoint("fiber point is not on the curve".into()));
        }
        let img = self.isogeny.eval(&ring, &b);
        let target = embed(&ring, &ep.target);
        if img != target {
            return Err(Error::InvalidPoint("fiber point does not lie over the target".into()));
        }
        let moved = ep.curve.add(&ring, &b, &embed(&ring, &ep.t_star));
        if moved != ep.curve.frobenius(&ring, &b) {
            return Err(Error::FrobeniusMismatch("Frobenius is not translation by t*".into()));
        }
        self.rep.verify()
    }
}

/// A rational point viewed over a larger field.
pub fn embed<F: Field>(f: &F, pt: &CurvePoint) -> Point<F::Elem> {
    match pt {
        Point::Infinity => Point::Infinity,
        Point::Affine(x, y) => Point::Affine(f.from_u64(*x), f.from_u64(*y)),
    }
}

/// `x(b + t)` for the fiber point `b = (x, Y(x))` and a rational `t`.
pub fn translate_x(ring: &ResidueRing, fiber_y: &Poly, t: &CurvePoint) -> Result<Poly> {
    let x = ring.gen();
    let Point::Affine(xt, yt) = t else { return Ok(x) };
    let dx = ring.sub(&x, &ring.from_u64(*xt));
    let inv = ring
        .inv(&dx)
        .ok_or_else(|| Error::NonInvertible(format!("x - {xt} is not invertible")))?;
    let lambda = ring.mul(&ring.sub(fiber_y, &ring.from_u64(*yt)), &inv);
    Ok(ring.sub(&ring.sub(&ring.mul(&lambda, &lambda), &x), &ring.from_u64(*xt)))
}

/// Admissible group orders: squarefree multiples of `d` in the Hasse
/// interval, not congruent to 1 modulo `p`, in increasing order.
pub fn admissible_orders(p: u64, d: u64) -> Vec<u64> {
    let lo = (p as f64 + 1.0 - 2.0 * (p as f64).sqrt()).ceil().max(1.0) as u64;
    let hi = (p as f64 + 1.0 + 2.0 * (p as f64).sqrt()).floor() as u64;
    (lo..=hi)
        .filter(|n| n % d == 0)
        .filter(|&n| crate::arith::factorize(n).iter().all(|&(_, e)| e == 1))
        .filter(|&n| n % p != 1)
        .collect()
}

/// Elliptic residue presentation of `F_{p^d}` on a curve found by search.
pub fn build_elliptic_residue(p: u64, d: usize) -> Result<EllipticResidueRep> {
    crate::ensure_prime(p)?;
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::DegreeNotCompatible { p, d: d as u64, reason: "d must be odd and at least 3".into() });
    }
    let mut last = Error::NotFound(format!("no admissible group order for p = {p}, d = {d}"));
    for order in admissible_orders(p, d as u64) {
        match curve_search(p, order).and_then(|c| build_elliptic_residue_on(&c, d)) {
            Ok(r) => return Ok(r),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Elliptic residue presentation on a given curve with cyclic `E(F_p)`
/// of order divisible by `d`.
pub fn build_elliptic_residue_on(curve: &Curve, d: usize) -> Result<EllipticResidueRep> {
    let p = curve.p;
    let f = curve.fp();
    if !curve.order.is_multiple_of(d as u64) {
        return Err(Error::DegreeNotCompatible { p, d: d as u64, reason: "d must divide #E(F_p)".into() });
    }
    let pts = curve.rational_points();
    let gen = pts
        .iter()
        .find(|q| curve.point_order(q) == curve.order)
        .ok_or_else(|| Error::NotFound("E(F_p) is not cyclic".into()))?
        .clone();
    let kernel_gen = curve.mul(&f, (curve.order / d as u64) as i128, &gen);
    let iso = velu_quotient(curve, &kernel_gen)?;
    let codomain = &iso.codomain;
    for target in codomain.rational_points().into_iter().filter(|q| !q.is_infinity()) {
        let Point::Affine(xa, ya) = target else { continue };
        let modulus = (&iso.x_num - &iso.x_den.scale(xa)).monic();
        if modulus.deg() != d as isize || !is_irreducible(&modulus) {
            continue;
        }
        let ring = ResidueRing::new(modulus.clone());
        // y_b = y(a) / X'(x) with X' = (N' D - N D') / D^2.
        let n = iso.x_num.rem(&modulus);
        let dd = iso.x_den.rem(&modulus);
        let dn = iso.x_num.derivative().rem(&modulus);
        let ddd = iso.x_den.derivative().rem(&modulus);
        let wronsk = ring.sub(&ring.mul(&dn, &dd), &ring.mul(&n, &ddd));
        let winv = ring.inv(&wronsk).ok_or_else(|| Error::NonInvertible("isogeny derivative".into()))?;
        let fiber_y = ring.mul(&ring.mul(&ring.from_u64(ya), &ring.mul(&dd, &dd)), &winv);
        let xp = ring.frobenius(&ring.gen());
        let mut t_star = None;
        for t in &iso.kernel {
            if translate_x(&ring, &fiber_y, t)? == xp {
                t_star = Some(t.clone());
                break;
            }
        }
        let t_star = t_star.ok_or(Error::InconsistentFrobenius)?;
        let image = translate_x(&ring, &fiber_y, &t_star)?;
        let t_pair = match &t_star {
            Point::Affine(x, y) => (*x, *y),
            Point::Infinity => return Err(Error::InconsistentFrobenius),
        };
        let params = EllipticParams { curve: curve.clone(), kernel_gen: kernel_gen.clone(), target, t_star, fiber_y };
        let rep = Representation {
            p,
            d,
            kind: RepKind::EllipticResidue,
            modulus,
            frobenius: FrobeniusMap::CurveTranslation { t: t_pair, image },
            params: RepParams::EllipticResidue(Box::new(params)),
        };
        let out = EllipticResidueRep { rep, isogeny: iso };
        out.check()?;
        return Ok(out);
    }
    Err(Error::NotFound("no target point with an irreducible fiber".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_curve_degree_seven() {
        let c = Curve::from_long(11, [1, 0, 0, 2, 8]).unwrap();
        let r = build_elliptic_residue_on(&c, 7).unwrap();
        assert_eq!(r.rep.modulus.deg(), 7);
        assert!(r.params().t_star != Point::Infinity);
    }

    #[test]
    fn every_nonzero_target_gives_irreducible_fiber_at_eleven() {
        let c = Curve::from_long(11, [1, 0, 0, 2, 8]).unwrap();
        let gen = c.rational_points()[1].clone();
        let iso = velu_quotient(&c, &gen).unwrap();
        for a in iso.codomain.rational_points().into_iter().skip(1) {
            let Point::Affine(xa, _) = a else { unreachable!() };
            let m = (&iso.x_num - &iso.x_den.scale(xa)).monic();
            assert!(is_irreducible(&m));
        }
    }

    #[test]
    fn searched_builds() {
        for (p, d) in [(11u64, 7usize), (13, 5)] {
            let r = build_elliptic_residue(p, d).unwrap();
            assert_eq!(r.rep.d, d);
            r.check().unwrap();
        }
    }

    #[test]
    fn translation_product_is_modulus() {
        let r = build_elliptic_residue(11, 7).unwrap();
        let ring = r.ring();
        let ep = r.params();
        // Coefficients in L of prod_t (X - x(b + t)), lowest degree first.
        let mut coeffs = vec![ring.one()];
        for t in &r.isogeny.kernel {
            let xt = translate_x(&ring, &ep.fiber_y, t).unwrap();
            let mut next = vec![ring.zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] = ring.add(&next[k + 1], c);
                next[k] = ring.sub(&next[k], &ring.mul(&xt, c));
            }
            coeffs = next;
        }
        let expected: Vec<Poly> = (0..=7).map(|k| Poly::constant(11, r.rep.modulus.coeff(k))).collect();
        assert_eq!(coeffs, expected);
    }
}
