//! Separable isogenies with an odd-order rational kernel, by Vélu's formulas.

use serde::Serialize;

use crate::arith::{add_mod, mul_mod, sub_mod};
use crate::elliptic::curve::{Curve, CurvePoint, Point};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isogeny {
    pub domain: Curve,
    pub codomain: Curve,
    /// All kernel points, `O` first, as multiples of the generator.
    pub kernel: Vec<CurvePoint>,
    /// `prod (X - x_Q)` over kernel points up to sign.
    pub kernel_poly: Poly,
    /// `X(x) = x_num / x_den` with `x_den = kernel_poly^2`.
    pub x_num: Poly,
    pub x_den: Poly,
}

impl Isogeny {
    pub fn degree(&self) -> usize {
        self.kernel.len()
    }

    /// Image of a point over any field containing `F_p`. The `y`-map is
    /// `y * X'(x)`, which keeps the invariant differential.
    pub fn eval<F: Field>(&self, f: &F, pt: &Point<F::Elem>) -> Point<F::Elem> {
        let Point::Affine(x, y) = pt else { return Point::Infinity };
        let ev = |q: &Poly, z: &F::Elem| -> F::Elem {
            q.coeffs().iter().rev().fold(f.zero(), |acc, &c| f.add(&f.mul(&acc, z), &f.from_u64(c)))
        };
        let den = ev(&self.x_den, x);
        let Some(iden) = f.inv(&den) else { return Point::Infinity };
        let num = ev(&self.x_num, x);
        let xx = f.mul(&num, &iden);
        let dnum = ev(&self.x_num.derivative(), x);
        let dden = ev(&self.x_den.derivative(), x);
        let deriv = f.mul(&f.sub(&f.mul(&dnum, &den), &f.mul(&num, &dden)), &f.mul(&iden, &iden));
        Point::Affine(xx, f.mul(y, &deriv))
    }
}

/// Quotient of `curve` by the cyclic subgroup generated by `gen`.
pub fn velu_quotient(curve: &Curve, gen: &CurvePoint) -> Result<Isogeny> {
    let p = curve.p;
    let f = curve.fp();
    if !curve.is_on(&f, gen) {
        return Err(Error::InvalidPoint(format!("{gen:?} is not on the curve")));
    }
    let ell = curve.point_order(gen);
    if ell.is_multiple_of(2) {
        return Err(Error::EvenDegree(ell));
    }
    let mut kernel = vec![Point::Infinity];
    let mut cur = gen.clone();
    while !cur.is_infinity() {
        kernel.push(cur.clone());
        cur = curve.add(&f, &cur, gen);
    }
    // Representatives of (T \ {O}) / +-: the multiples 1..=(ell-1)/2.
    let half: Vec<(u64, u64)> = kernel[1..=(ell as usize - 1) / 2]
        .iter()
        .map(|q| match q {
            Point::Affine(x, y) => (*x, *y),
            Point::Infinity => unreachable!(),
        })
        .collect();
    let mut sum_v = 0u64;
    let mut sum_w = 0u64;
    let mut terms = Vec::new();
    for &(xq, yq) in &half {
        let gx = add_mod(mul_mod(3, mul_mod(xq, xq, p), p), curve.a, p);
        let v = mul_mod(2, gx, p);
        let u = mul_mod(4, mul_mod(yq, yq, p), p);
        sum_v = add_mod(sum_v, v, p);
        sum_w = add_mod(sum_w, add_mod(u, mul_mod(xq, v, p), p), p);
        terms.push((xq, v, u));
    }
    let a2 = sub_mod(curve.a, mul_mod(5, sum_v, p), p);
    let b2 = sub_mod(curve.b, mul_mod(7, sum_w, p), p);
    let codomain = Curve::short(p, a2, b2)?;

    let lin = |xq: u64| Poly::linear(p, xq);
    let kernel_poly = half.iter().fold(Poly::one(p), |acc, &(xq, _)| &acc * &lin(xq));
    let x_den = &kernel_poly * &kernel_poly;
    let mut x_num = &Poly::x(p) * &x_den;
    for (i, &(xq, v, u)) in terms.iter().enumerate() {
        let others = terms
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Poly::one(p), |acc, (_, &(xo, _, _))| &acc * &lin(xo).pow(2));
        let local = &lin(xq).scale(v) + &Poly::constant(p, u);
        x_num = &x_num + &(&local * &others);
    }
    Ok(Isogeny { domain: curve.clone(), codomain, kernel, kernel_poly, x_num, x_den })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_points_go_to_infinity_and_law_is_preserved() {
        let c = Curve::from_long(11, [1, 0, 0, 2, 8]).unwrap();
        let f = c.fp();
        let pts = c.rational_points();
        let gen = pts.iter().find(|q| !q.is_infinity()).unwrap();
        let iso = velu_quotient(&c, gen).unwrap();
        assert_eq!(iso.degree(), 7);
        for k in &iso.kernel {
            assert!(iso.eval(&f, k).is_infinity());
        }
        assert_eq!(iso.codomain.order, c.order);
    }

    #[test]
    fn toy_degree_three() {
        // A curve over F_13 with a rational 3-torsion point.
        let (c, t) = (0..13u64)
            .flat_map(|a| (0..13u64).map(move |b| (a, b)))
            .filter_map(|(a, b)| Curve::short(13, a, b).ok())
            .filter(|c| c.order % 3 == 0)
            .find_map(|c| {
                let f = c.fp();
                let t = c.rational_points().into_iter().find(|q| !q.is_infinity() && c.mul(&f, 3, q).is_infinity())?;
                Some((c, t))
            })
            .unwrap();
        let f = c.fp();
        let iso = velu_quotient(&c, &t).unwrap();
        for pt in c.rational_points() {
            let img = iso.eval(&f, &pt);
            assert!(iso.codomain.is_on(&f, &img));
            assert_eq!(img, iso.eval(&f, &c.add(&f, &pt, &t)));
        }
    }

    #[test]
    fn even_kernel_rejected() {
        let c = (0..13u64)
            .flat_map(|a| (0..13u64).map(move |b| (a, b)))
            .filter_map(|(a, b)| Curve::short(13, a, b).ok())
            .find(|c| c.order % 2 == 0)
            .unwrap();
        let t = c.rational_points().into_iter().find(|q| matches!(q, Point::Affine(_, 0))).unwrap();
        assert!(matches!(velu_quotient(&c, &t), Err(Error::EvenDegree(2))));
    }
}
