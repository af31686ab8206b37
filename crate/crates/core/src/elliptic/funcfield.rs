//! The function field `F_p(x)[y] / (y^2 - x^3 - a x - b)` of a short
//! Weierstrass curve, with elements `(n0 + n1 y) / den`.

use crate::elliptic::curve::{Curve, Point};
use crate::field::Field;
use crate::poly::Poly;

#[derive(Clone, Debug)]
pub struct FuncField {
    pub curve: Curve,
    rhs: Poly,
}

/// `(n0 + n1 y) / den`, with `den` monic and no common factor of all three.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FuncElem {
    pub n0: Poly,
    pub n1: Poly,
    pub den: Poly,
}

impl FuncElem {
    pub fn is_zero(&self) -> bool {
        self.n0.is_zero() && self.n1.is_zero()
    }

    /// `(n0 + n1 y)(n0 - n1 y) = n0^2 - rhs n1^2`.
    pub fn numerator_norm(&self, rhs: &Poly) -> Poly {
        &(&self.n0 * &self.n0) - &(&(&self.n1 * &self.n1) * rhs)
    }

    /// Value at a point whose coordinates live in some field `f`; `None`
    /// when the denominator vanishes there.
    pub fn eval_at<F: Field>(&self, f: &F, x: &F::Elem, y: &F::Elem) -> Option<F::Elem> {
        let num = f.add(&eval_poly(f, &self.n0, x), &f.mul(&eval_poly(f, &self.n1, x), y));
        f.div(&num, &eval_poly(f, &self.den, x))
    }
}

/// `q(a)` for `q` over `F_p` and `a` in an extension.
pub fn eval_poly<F: Field>(f: &F, q: &Poly, a: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for &c in q.coeffs().iter().rev() {
        acc = f.add(&f.mul(&acc, a), &f.from_u64(c));
    }
    acc
}

impl FuncField {
    pub fn new(curve: &Curve) -> Self {
        let p = curve.p;
        FuncField { curve: curve.clone(), rhs: Poly::new(p, vec![curve.b, curve.a, 0, 1]) }
    }

    pub fn rhs(&self) -> &Poly {
        &self.rhs
    }

    fn p(&self) -> u64 {
        self.curve.p
    }

    pub fn make(&self, n0: Poly, n1: Poly, den: Poly) -> FuncElem {
        let p = self.p();
        assert!(!den.is_zero(), "zero denominator");
        if n0.is_zero() && n1.is_zero() {
            return FuncElem { n0, n1, den: Poly::one(p) };
        }
        let g = n0.gcd(&n1).gcd(&den);
        let (n0, n1, den) = if g.deg() > 0 {
            (n0.div_exact(&g).unwrap(), n1.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        } else {
            (n0, n1, den)
        };
        let c = crate::arith::inv_mod(den.lead(), p).unwrap();
        FuncElem { n0: n0.scale(c), n1: n1.scale(c), den: den.scale(c) }
    }

    pub fn x(&self) -> FuncElem {
        let p = self.p();
        self.make(Poly::x(p), Poly::zero(p), Poly::one(p))
    }

    pub fn y(&self) -> FuncElem {
        let p = self.p();
        self.make(Poly::zero(p), Poly::one(p), Poly::one(p))
    }

    /// The generic point `(x, y)`.
    pub fn generic_point(&self) -> Point<FuncElem> {
        Point::Affine(self.x(), self.y())
    }
}

impl Field for FuncField {
    type Elem = FuncElem;

    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn zero(&self) -> FuncElem {
        let p = self.p();
        FuncElem { n0: Poly::zero(p), n1: Poly::zero(p), den: Poly::one(p) }
    }

    fn one(&self) -> FuncElem {
        self.from_u64(1)
    }

    fn from_u64(&self, c: u64) -> FuncElem {
        let p = self.p();
        self.make(Poly::constant(p, c), Poly::zero(p), Poly::one(p))
    }

    fn add(&self, a: &FuncElem, b: &FuncElem) -> FuncElem {
        if a.den == b.den {
            return self.make(&a.n0 + &b.n0, &a.n1 + &b.n1, a.den.clone());
        }
        self.make(
            &(&a.n0 * &b.den) + &(&b.n0 * &a.den),
            &(&a.n1 * &b.den) + &(&b.n1 * &a.den),
            &a.den * &b.den,
        )
    }

    fn sub(&self, a: &FuncElem, b: &FuncElem) -> FuncElem {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &FuncElem) -> FuncElem {
        let p = self.p();
        FuncElem { n0: a.n0.scale(p - 1), n1: a.n1.scale(p - 1), den: a.den.clone() }
    }

    fn mul(&self, a: &FuncElem, b: &FuncElem) -> FuncElem {
        let n0 = &(&a.n0 * &b.n0) + &(&(&a.n1 * &b.n1) * &self.rhs);
        let n1 = &(&a.n0 * &b.n1) + &(&a.n1 * &b.n0);
        self.make(n0, n1, &a.den * &b.den)
    }

    fn inv(&self, a: &FuncElem) -> Option<FuncElem> {
        if a.is_zero() {
            return None;
        }
        let norm = a.numerator_norm(&self.rhs);
        let p = self.p();
        Some(self.make(&a.n0 * &a.den, (&a.n1 * &a.den).scale(p - 1), norm))
    }

    fn to_base(&self, a: &FuncElem) -> Option<u64> {
        (a.n1.is_zero() && a.n0.deg() <= 0 && a.den.is_one()).then(|| a.n0.coeff(0))
    }

    fn is_zero(&self, a: &FuncElem) -> bool {
        a.is_zero()
    }

    /// `y^p = y rhs^((p-1)/2)`.
    fn frobenius(&self, a: &FuncElem) -> FuncElem {
        let p = self.p();
        let xp = Poly::monomial(p, 1, p as usize);
        let ypow = self.rhs.pow(((p - 1) / 2) as u32);
        let n0 = a.n0.compose(&xp);
        let n1 = &a.n1.compose(&xp) * &ypow;
        self.make(n0, n1, a.den.compose(&xp))
    }
}
