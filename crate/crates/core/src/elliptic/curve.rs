use serde::{Deserialize, Serialize};

use crate::arith::{add_mod, mul_mod, sub_mod};
use crate::error::{Error, Result};
use crate::field::{Field, Fp};

/// A point in Weierstrass coordinates over some field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Point<E> {
    Infinity,
    Affine(E, E),
}

impl<E: Clone> Point<E> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&E> {
        match self {
            Point::Affine(x, _) => Some(x),
            Point::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&E> {
        match self {
            Point::Affine(_, y) => Some(y),
            Point::Infinity => None,
        }
    }
}

/// An `F_p`-rational point.
pub type CurvePoint = Point<u64>;

/// Elliptic curve over `F_p`, `p > 3`, kept in both the general
/// Weierstrass form `[a1, a2, a3, a4, a6]` it was given in and the short
/// form `y^2 = x^3 + a x + b` used for all arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curve {
    pub p: u64,
    pub long: [u64; 5],
    pub a: u64,
    pub b: u64,
    /// `#E(F_p)`.
    pub order: u64,
}

impl Curve {
    pub fn short(p: u64, a: u64, b: u64) -> Result<Curve> {
        Curve::from_long(p, [0, 0, 0, a % p, b % p])
    }

    pub fn from_long(p: u64, long: [u64; 5]) -> Result<Curve> {
        crate::ensure_prime(p)?;
        if p <= 3 {
            return Err(Error::InvalidInput("curves need p > 3".into()));
        }
        let long = long.map(|c| c % p);
        let [a1, a2, a3, a4, a6] = long;
        let f = Fp::new(p);
        let b2 = add_mod(mul_mod(a1, a1, p), mul_mod(4, a2, p), p);
        let b4 = add_mod(mul_mod(2, a4, p), mul_mod(a1, a3, p), p);
        let b6 = add_mod(mul_mod(a3, a3, p), mul_mod(4, a6, p), p);
        let c4 = sub_mod(mul_mod(b2, b2, p), mul_mod(24, b4, p), p);
        let c6 = sub_mod(
            mul_mod(36, mul_mod(b2, b4, p), p),
            add_mod(f.pow(&b2, 3), mul_mod(216, b6, p), p),
            p,
        );
        let (a, b) = if long == [0, 0, 0, a4, a6] {
            (a4, a6)
        } else {
            (sub_mod(0, mul_mod(27, c4, p), p), sub_mod(0, mul_mod(54, c6, p), p))
        };
        let disc = add_mod(mul_mod(4, f.pow(&a, 3), p), mul_mod(27, mul_mod(b, b, p), p), p);
        if disc == 0 {
            return Err(Error::InvalidInput(format!("singular curve {long:?} over F_{p}")));
        }
        let order = count_points_long(p, &long);
        Ok(Curve { p, long, a, b, order })
    }

    pub fn fp(&self) -> Fp {
        Fp::new(self.p)
    }

    /// Frobenius trace `p + 1 - #E(F_p)`.
    pub fn trace(&self) -> i64 {
        self.p as i64 + 1 - self.order as i64
    }

    /// Image of a point of the general model on the short model.
    pub fn long_to_short(&self, pt: &CurvePoint) -> CurvePoint {
        let p = self.p;
        let [a1, a2, a3, _, _] = self.long;
        if self.long == [0, 0, 0, self.a, self.b] {
            return pt.clone();
        }
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let b2 = add_mod(mul_mod(a1, a1, p), mul_mod(4, a2, p), p);
                let xs = add_mod(mul_mod(36, *x, p), mul_mod(3, b2, p), p);
                let t = add_mod(add_mod(mul_mod(2, *y, p), mul_mod(a1, *x, p), p), a3, p);
                Point::Affine(xs, mul_mod(108, t, p))
            }
        }
    }

    /// `x^3 + a x + b` over any field of characteristic `p`.
    pub fn rhs<F: Field>(&self, f: &F, x: &F::Elem) -> F::Elem {
        let x2 = f.mul(x, x);
        let x3 = f.mul(&x2, x);
        f.add(&f.add(&x3, &f.mul(&f.from_u64(self.a), x)), &f.from_u64(self.b))
    }

    pub fn is_on<F: Field>(&self, f: &F, pt: &Point<F::Elem>) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => f.mul(y, y) == self.rhs(f, x),
        }
    }

    pub fn neg<F: Field>(&self, f: &F, pt: &Point<F::Elem>) -> Point<F::Elem> {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), f.neg(y)),
        }
    }

    /// Chord-and-tangent addition. Over rings that are not fields a
    /// failed inversion panics; callers use this on fields only.
    pub fn add<F: Field>(&self, f: &F, a: &Point<F::Elem>, b: &Point<F::Elem>) -> Point<F::Elem> {
        self.try_add(f, a, b).expect("division by zero in the group law")
    }

    pub fn try_add<F: Field>(&self, f: &F, a: &Point<F::Elem>, b: &Point<F::Elem>) -> Option<Point<F::Elem>> {
        let (x1, y1, x2, y2) = match (a, b) {
            (Point::Infinity, _) => return Some(b.clone()),
            (_, Point::Infinity) => return Some(a.clone()),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if f.is_zero(&f.add(y1, y2)) {
                return Some(Point::Infinity);
            }
            let num = f.add(&f.mul(&f.from_u64(3), &f.mul(x1, x1)), &f.from_u64(self.a));
            f.div(&num, &f.add(y1, y1))?
        } else {
            f.div(&f.sub(y2, y1), &f.sub(x2, x1))?
        };
        let x3 = f.sub(&f.sub(&f.mul(&lambda, &lambda), x1), x2);
        let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
        Some(Point::Affine(x3, y3))
    }

    pub fn sub<F: Field>(&self, f: &F, a: &Point<F::Elem>, b: &Point<F::Elem>) -> Point<F::Elem> {
        self.add(f, a, &self.neg(f, b))
    }

    pub fn mul<F: Field>(&self, f: &F, k: i128, pt: &Point<F::Elem>) -> Point<F::Elem> {
        let mut base = if k < 0 { self.neg(f, pt) } else { pt.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Point::Infinity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(f, &acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.add(f, &base, &base);
            }
        }
        acc
    }

    /// Coordinate-wise Frobenius (the `p`-power endomorphism).
    pub fn frobenius<F: Field>(&self, f: &F, pt: &Point<F::Elem>) -> Point<F::Elem> {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(f.frobenius(x), f.frobenius(y)),
        }
    }

    /// All points of `E(F_p)` on the short model, ordered by `x` then `y`.
    pub fn rational_points(&self) -> Vec<CurvePoint> {
        let f = self.fp();
        let mut out = vec![Point::Infinity];
        for x in 0..self.p {
            let r = self.rhs(&f, &x);
            if let Some(y) = f.sqrt(r) {
                let mut ys = vec![y, sub_mod(0, y, self.p)];
                ys.sort();
                ys.dedup();
                out.extend(ys.into_iter().map(|y| Point::Affine(x, y)));
            }
        }
        out
    }

    /// Order of a rational point.
    pub fn point_order(&self, pt: &CurvePoint) -> u64 {
        let f = self.fp();
        let mut n = self.order;
        for (l, _) in crate::arith::factorize(self.order) {
            while n.is_multiple_of(l) && self.mul(&f, (n / l) as i128, pt).is_infinity() {
                n /= l;
            }
        }
        n
    }
}

/// `#E(F_p)` for a general Weierstrass model, by counting roots of
/// `y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6)` for each `x`.
pub fn count_points_long(p: u64, long: &[u64; 5]) -> u64 {
    let f = Fp::new(p);
    let [a1, a2, a3, a4, a6] = *long;
    let mut n = 1u64;
    for x in 0..p {
        let lin = add_mod(mul_mod(a1, x, p), a3, p);
        let cub = add_mod(
            add_mod(f.pow(&x, 3), mul_mod(a2, mul_mod(x, x, p), p), p),
            add_mod(mul_mod(a4, x, p), a6, p),
            p,
        );
        // Discriminant of the quadratic in y.
        let disc = add_mod(mul_mod(lin, lin, p), mul_mod(4, cub, p), p);
        n += if disc == 0 { 1 } else if f.is_square(disc) { 2 } else { 0 };
    }
    n
}

/// Brute-force count over all `(x, y)` pairs; the test oracle.
pub fn count_points_enumerate(p: u64, long: &[u64; 5]) -> u64 {
    let [a1, a2, a3, a4, a6] = *long;
    let f = Fp::new(p);
    let mut n = 1;
    for x in 0..p {
        for y in 0..p {
            let lhs = add_mod(mul_mod(y, y, p), mul_mod(add_mod(mul_mod(a1, x, p), a3, p), y, p), p);
            let rhs = add_mod(
                add_mod(f.pow(&x, 3), mul_mod(a2, mul_mod(x, x, p), p), p),
                add_mod(mul_mod(a4, x, p), a6, p),
                p,
            );
            if lhs == rhs {
                n += 1;
            }
        }
    }
    n
}

/// First short-model curve `(a, b)` in lexicographic order with exactly
/// `order` points and a trace not divisible by `p`.
pub fn curve_search(p: u64, order: u64) -> Result<Curve> {
    crate::ensure_prime(p)?;
    let bound = 2.0 * (p as f64).sqrt();
    if ((order as f64) - (p as f64 + 1.0)).abs() > bound {
        return Err(Error::NotFound(format!("{order} is outside the Hasse interval for p = {p}")));
    }
    for a in 0..p {
        for b in 0..p {
            let Ok(c) = Curve::short(p, a, b) else { continue };
            if c.order == order && c.trace().rem_euclid(p as i64) != 0 {
                return Ok(c);
            }
        }
    }
    Err(Error::NotFound(format!("no ordinary curve with {order} points over F_{p}")))
}
