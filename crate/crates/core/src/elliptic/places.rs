//! Places of an elliptic curve over `F_p`, divisors of function-field
//! elements, and the action of rational translations on places.
//!
//! A finite place lies over a monic irreducible `q(x)`: two places when
//! `rhs` is a non-zero square modulo `q` (branches `y = s(x)` and
//! `y = -s(x)`), one inert place of degree `2 deg q` when it is a
//! non-square, one ramified place when `q | rhs`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::elliptic::curve::{Curve, CurvePoint, Point};
use crate::elliptic::funcfield::{eval_poly, FuncElem, FuncField};
use crate::factor::factor;
use crate::field::{sqrt_in, Field};
use crate::poly::Poly;
use crate::residue::ResidueRing;

/// `F[w] / (w^2 - r)` for a non-square `r` of `F`.
#[derive(Clone, Debug)]
pub struct QuadExt<F: Field> {
    pub base: F,
    pub r: F::Elem,
}

impl<F: Field> Field for QuadExt<F> {
    type Elem = (F::Elem, F::Elem);

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn zero(&self) -> Self::Elem {
        (self.base.zero(), self.base.zero())
    }

    fn one(&self) -> Self::Elem {
        (self.base.one(), self.base.zero())
    }

    fn from_u64(&self, c: u64) -> Self::Elem {
        (self.base.from_u64(c), self.base.zero())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.sub(&a.0, &b.0), self.base.sub(&a.1, &b.1))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        let c0 = f.add(&f.mul(&a.0, &b.0), &f.mul(&self.r, &f.mul(&a.1, &b.1)));
        let c1 = f.add(&f.mul(&a.0, &b.1), &f.mul(&a.1, &b.0));
        (c0, c1)
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let f = &self.base;
        let norm = f.sub(&f.mul(&a.0, &a.0), &f.mul(&self.r, &f.mul(&a.1, &a.1)));
        let ni = f.inv(&norm)?;
        Some((f.mul(&a.0, &ni), f.neg(&f.mul(&a.1, &ni))))
    }

    fn to_base(&self, a: &Self::Elem) -> Option<u64> {
        if self.base.is_zero(&a.1) {
            self.base.to_base(&a.0)
        } else {
            None
        }
    }
}

/// Minimal polynomial over `F_p` of an element of an extension.
pub fn minpoly<F: Field>(f: &F, a: &F::Elem) -> Poly {
    let p = f.characteristic();
    let mut conj = vec![a.clone()];
    loop {
        let next = f.frobenius(conj.last().unwrap());
        if next == *a {
            break;
        }
        conj.push(next);
    }
    // Coefficients of prod (X - c), lowest first.
    let mut coeffs = vec![f.one()];
    for c in &conj {
        let mut next = vec![f.zero(); coeffs.len() + 1];
        for (k, v) in coeffs.iter().enumerate() {
            next[k + 1] = f.add(&next[k + 1], v);
            next[k] = f.sub(&next[k], &f.mul(c, v));
        }
        coeffs = next;
    }
    Poly::new(p, coeffs.iter().map(|c| f.to_base(c).expect("Frobenius-stable coefficients")).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    /// The branch `y = s(x)` over `q`; `s` is reduced modulo `q`.
    Split { q: Poly, s: Poly },
    Inert { q: Poly },
    Ramified { q: Poly },
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Split { q, .. } | Place::Ramified { q } => q.deg() as usize,
            Place::Inert { q } => 2 * q.deg() as usize,
        }
    }

    pub fn below(&self) -> Option<&Poly> {
        match self {
            Place::Infinity => None,
            Place::Split { q, .. } | Place::Inert { q } | Place::Ramified { q } => Some(q),
        }
    }

    /// Residue degree over the `x`-line.
    fn inertia(&self) -> i64 {
        if matches!(self, Place::Inert { .. }) {
            2
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Place::Infinity => json!({"type": "infinity"}),
            Place::Split { q, s } => json!({"type": "split", "q": q, "s": s}),
            Place::Inert { q } => json!({"type": "inert", "q": q}),
            Place::Ramified { q } => json!({"type": "ramified", "q": q}),
        }
    }
}

/// The places above a monic irreducible `q`.
pub fn places_over(curve: &Curve, q: &Poly) -> Vec<Place> {
    let p = curve.p;
    let rhs = Poly::new(p, vec![curve.b, curve.a, 0, 1]);
    let r = rhs.rem(q);
    if r.is_zero() {
        return vec![Place::Ramified { q: q.clone() }];
    }
    let ring = ResidueRing::new(q.clone());
    match sqrt_in(&ring, &r, ring.order()) {
        Some(s) => {
            let t = ring.neg(&s);
            let mut v = vec![Place::Split { q: q.clone(), s }, Place::Split { q: q.clone(), s: t }];
            v.sort();
            v
        }
        None => vec![Place::Inert { q: q.clone() }],
    }
}

/// `v_q` of a non-zero polynomial.
fn val(f: &Poly, q: &Poly) -> i64 {
    let mut f = f.clone();
    let mut k = 0;
    while let Some(g) = f.div_exact(q) {
        f = g;
        k += 1;
    }
    k
}

/// `v_O` of `n0 + n1 y`, from pole orders `2` for `x` and `3` for `y`.
fn val_infinity(n0: &Poly, n1: &Poly) -> i64 {
    let a = if n0.is_zero() { i64::MIN } else { 2 * n0.deg() as i64 };
    let b = if n1.is_zero() { i64::MIN } else { 2 * n1.deg() as i64 + 3 };
    -a.max(b)
}

/// Divisor of a non-zero element, as `(place, valuation)` pairs in place
/// order, without zero entries.
pub fn divisor(k: &FuncField, f: &FuncElem) -> Vec<(Place, i64)> {
    assert!(!f.is_zero(), "divisor of zero");
    let curve = &k.curve;
    let norm = f.numerator_norm(k.rhs());
    let mut qs: Vec<Poly> = factor(&norm).factors.into_iter().map(|(q, _)| q).collect();
    qs.extend(factor(&f.den).factors.into_iter().map(|(q, _)| q));
    qs.sort();
    qs.dedup();
    let mut out: BTreeMap<Place, i64> = BTreeMap::new();
    for q in &qs {
        let (mut n0, mut n1) = (f.n0.clone(), f.n1.clone());
        let mut common = 0;
        while let (Some(a), Some(b)) = (n0.div_exact(q), n1.div_exact(q)) {
            n0 = a;
            n1 = b;
            common += 1;
        }
        let vn = val(&(&(&n0 * &n0) - &(&(&n1 * &n1) * k.rhs())), q);
        let vd = val(&f.den, q);
        for place in places_over(curve, q) {
            let v = match &place {
                Place::Split { s, .. } => {
                    // After removing common factors of q, at most one branch
                    // is a zero of n0 + n1 y.
                    let at = (&n0 + &(&n1 * s)).rem(q);
                    common - vd + if at.is_zero() { vn } else { 0 }
                }
                Place::Inert { .. } => common - vd + vn / 2,
                Place::Ramified { .. } => 2 * (common - vd) + vn,
                Place::Infinity => unreachable!(),
            };
            if v != 0 {
                out.insert(place, v);
            }
        }
    }
    let vinf = val_infinity(&f.n0, &f.n1) + 2 * f.den.deg() as i64;
    if vinf != 0 {
        out.insert(Place::Infinity, vinf);
    }
    out.into_iter().collect()
}

/// Consistency of a divisor with its element: degree zero, and the norm
/// to the `x`-line recomposes `norm(n0 + n1 y) / den^2` up to a constant.
pub fn check_divisor(k: &FuncField, f: &FuncElem, div: &[(Place, i64)]) -> bool {
    let p = k.curve.p;
    let degree: i64 = div.iter().map(|(pl, v)| pl.degree() as i64 * v).sum();
    if degree != 0 {
        return false;
    }
    let mut pos = Poly::one(p);
    let mut neg = Poly::one(p);
    for (pl, v) in div {
        let Some(q) = pl.below() else { continue };
        let e = pl.inertia() * v;
        if e > 0 {
            pos = &pos * &q.pow(e as u32);
        } else {
            neg = &neg * &q.pow((-e) as u32);
        }
    }
    let lhs = &f.numerator_norm(k.rhs()) * &neg;
    let rhs = &(&f.den * &f.den) * &pos;
    lhs.deg() == rhs.deg() && lhs.monic() == rhs.monic()
}

/// A point of `place` over a field containing its coordinates, and the
/// image of `place` under translation by the rational point `t`.
pub fn translate_place(curve: &Curve, place: &Place, t: &CurvePoint) -> Place {
    if t.is_infinity() {
        return place.clone();
    }
    let p = curve.p;
    match place {
        Place::Infinity => {
            let Point::Affine(x, y) = t else { unreachable!() };
            let q = Poly::linear(p, *x);
            let s = Poly::constant(p, *y);
            if *y == 0 {
                Place::Ramified { q }
            } else {
                Place::Split { q, s }
            }
        }
        Place::Split { q, s } => {
            let ring = ResidueRing::new(q.clone());
            let pt = Point::Affine(ring.gen(), s.clone());
            place_of_point(curve, &ring, &curve.add(&ring, &pt, &crate::elliptic::residue::embed(&ring, t)))
        }
        Place::Ramified { q } => {
            let ring = ResidueRing::new(q.clone());
            let pt = Point::Affine(ring.gen(), ring.zero());
            place_of_point(curve, &ring, &curve.add(&ring, &pt, &crate::elliptic::residue::embed(&ring, t)))
        }
        Place::Inert { q } => {
            let ring = ResidueRing::new(q.clone());
            let rhs = Poly::new(p, vec![curve.b, curve.a, 0, 1]).rem(q);
            let ext = QuadExt { base: ring.clone(), r: rhs };
            let pt = Point::Affine((ring.gen(), ring.zero()), (ring.zero(), ring.one()));
            place_of_point(curve, &ext, &curve.add(&ext, &pt, &crate::elliptic::residue::embed(&ext, t)))
        }
    }
}

/// The place through a point with coordinates in some extension field.
pub fn place_of_point<F: Field>(curve: &Curve, f: &F, pt: &Point<F::Elem>) -> Place {
    let Point::Affine(x, y) = pt else { return Place::Infinity };
    let q = minpoly(f, x);
    for place in places_over(curve, &q) {
        match &place {
            Place::Split { s, .. } => {
                if eval_poly(f, s, x) == *y {
                    return place;
                }
            }
            _ => return place,
        }
    }
    unreachable!("point lies on one of the places over its x-coordinate")
}

/// Orbit of a place under repeated translation by `t`, starting at `place`.
pub fn translation_orbit(curve: &Curve, place: &Place, t: &CurvePoint) -> Vec<Place> {
    let mut out = vec![place.clone()];
    loop {
        let next = translate_place(curve, out.last().unwrap(), t);
        if next == *place {
            return out;
        }
        out.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve() -> Curve {
        Curve::short(11, 2, 7).unwrap()
    }

    #[test]
    fn divisor_of_x_and_y() {
        let c = curve();
        let k = FuncField::new(&c);
        let dx = divisor(&k, &k.x());
        assert!(check_divisor(&k, &k.x(), &dx));
        assert_eq!(dx.iter().find(|(p, _)| *p == Place::Infinity).unwrap().1, -2);
        let dy = divisor(&k, &k.y());
        assert!(check_divisor(&k, &k.y(), &dy));
        assert_eq!(dy.iter().find(|(p, _)| *p == Place::Infinity).unwrap().1, -3);
        // Zeros of y are the 2-torsion places, all ramified.
        assert!(dy.iter().filter(|(p, _)| *p != Place::Infinity).all(|(p, v)| matches!(p, Place::Ramified { .. }) && *v == 1));
    }

    #[test]
    fn line_through_rational_points() {
        let c = curve();
        let k = FuncField::new(&c);
        let pts = c.rational_points();
        let (Point::Affine(x1, y1), Point::Affine(x2, y2)) = (&pts[1], &pts[3]) else { panic!() };
        let fp = c.fp();
        let slope = fp.div(&fp.sub(y2, y1), &fp.sub(x2, x1)).unwrap();
        // y - y1 - slope (x - x1) vanishes at both points and at the third.
        let line = k.sub(&k.sub(&k.y(), &k.from_u64(*y1)), &k.mul(&k.from_u64(slope), &k.sub(&k.x(), &k.from_u64(*x1))));
        let div = divisor(&k, &line);
        assert!(check_divisor(&k, &line, &div));
        let third = c.neg(&fp, &c.add(&fp, &pts[1], &pts[3]));
        for pt in [&pts[1], &pts[3], &third] {
            let pl = place_of_point(&c, &fp, pt);
            assert!(div.iter().any(|(q, v)| *q == pl && *v >= 1), "{pl:?}");
        }
    }

    #[test]
    fn translation_matches_points() {
        let c = curve();
        let fp = c.fp();
        let pts = c.rational_points();
        for a in &pts {
            for t in &pts {
                let pa = place_of_point(&c, &fp, a);
                let moved = translate_place(&c, &pa, t);
                assert_eq!(moved, place_of_point(&c, &fp, &c.add(&fp, a, t)));
            }
        }
        // Higher-degree places keep their degree and cycle back.
        let q = Poly::from_i64(11, &[1, 1, 1]);
        for pl in places_over(&c, &crate::factor::factor(&q).factors[0].0) {
            let orbit = translation_orbit(&c, &pl, &pts[1]);
            assert!(orbit.iter().all(|x| x.degree() == pl.degree()));
            assert_eq!(7 % orbit.len(), 0);
        }
    }
}
