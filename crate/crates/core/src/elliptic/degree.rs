//! Riemann-Roch spaces `L(nO)` and the degree filtration on an elliptic
//! residue field.
//!
//! An element `z` has degree `<= k` when `z = f(b)` for a function `f` on
//! `E` with at most `k` rational poles (counted with degree). Such an `f`
//! is `N / D` with `N, D` in `L((k+1)O - R)` for a rational point `R`
//! (`L(kO)` when `R = O`), so the test is a kernel computation.

use serde::Serialize;

use crate::elliptic::curve::{Curve, CurvePoint, Point};
use crate::elliptic::residue::EllipticParams;
use crate::field::Field;
use crate::linalg;
use crate::poly::Poly;
use crate::residue::ResidueRing;

/// Monomials `1, x, y, x^2, x y, ...` ordered by pole order at `O`
/// (`0, 2, 3, 4, 5, ...`); `x^i` has pole order `2i`, `x^i y` has `2i+3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub x_pow: usize,
    pub has_y: bool,
}

impl Monomial {
    pub fn pole_order(&self) -> usize {
        2 * self.x_pow + if self.has_y { 3 } else { 0 }
    }

    pub fn eval<F: Field>(&self, f: &F, x: &F::Elem, y: &F::Elem) -> F::Elem {
        let xp = f.pow(x, self.x_pow as u128);
        if self.has_y {
            f.mul(&xp, y)
        } else {
            xp
        }
    }
}

/// Basis of `L(nO)`: `n` monomials for `n >= 1`, just `1` for `n = 0`.
pub fn riemann_roch_basis(n: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial { x_pow: 0, has_y: false }];
    for ord in 2..=n {
        out.push(if ord % 2 == 0 {
            Monomial { x_pow: ord / 2, has_y: false }
        } else {
            Monomial { x_pow: (ord - 3) / 2, has_y: true }
        });
    }
    out
}

/// A function as coefficients over a monomial list.
pub fn eval_function<F: Field>(f: &F, basis: &[Monomial], coeffs: &[u64], pt: &Point<F::Elem>) -> Option<F::Elem> {
    let Point::Affine(x, y) = pt else { return None };
    let mut acc = f.zero();
    for (m, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = f.add(&acc, &f.mul(&f.from_u64(c), &m.eval(f, x, y)));
        }
    }
    Some(acc)
}

/// Basis (as coefficient vectors over `riemann_roch_basis(k+1)`) of
/// `L((k+1)O - R)`; for `R = O` this is `L(kO)`.
pub fn rr_minus_point(curve: &Curve, k: usize, r: &CurvePoint) -> (Vec<Monomial>, Vec<Vec<u64>>) {
    let p = curve.p;
    let f = curve.fp();
    let basis = riemann_roch_basis(k + 1);
    let n = basis.len();
    let vecs = match r {
        Point::Infinity => {
            let small = riemann_roch_basis(k).len();
            (0..small)
                .map(|i| {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v
                })
                .collect()
        }
        Point::Affine(x, y) => {
            let row: Vec<u64> = basis.iter().map(|m| m.eval(&f, x, y)).collect();
            linalg::kernel(&[row], n, p)
        }
    };
    (basis, vecs)
}

/// A witness `z = N(b) / D(b)` of degree at most `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interpolation {
    pub k: usize,
    pub point: CurvePoint,
    pub basis: Vec<Monomial>,
    pub numerator: Vec<u64>,
    pub denominator: Vec<u64>,
}

/// Find `N, D` in `L((k+1)O - R)` with `N(b) = z D(b)` and `D(b) != 0`.
pub fn interpolate(ep: &EllipticParams, modulus: &Poly, z: &Poly, k: usize) -> Option<Interpolation> {
    let ring = ResidueRing::new(modulus.clone());
    let d = ring.degree();
    let p = ring.p();
    let x = ring.gen();
    let y = ep.fiber_y.clone();
    let z = z.rem(modulus);
    for r in ep.curve.rational_points() {
        let (basis, vecs) = rr_minus_point(&ep.curve, k, &r);
        if vecs.is_empty() {
            continue;
        }
        let mono_vals: Vec<Poly> = basis.iter().map(|m| m.eval(&ring, &x, &y)).collect();
        let evals: Vec<Poly> = vecs
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&mono_vals)
                    .fold(ring.zero(), |acc, (&c, mv)| ring.add(&acc, &mv.scale(c)))
            })
            .collect();
        // Columns [ev(V) | -z ev(V)].
        let mut cols: Vec<Vec<u64>> = evals.iter().map(|e| e.to_vec(d)).collect();
        cols.extend(evals.iter().map(|e| ring.neg(&ring.mul(&z, e)).to_vec(d)));
        let rows: Vec<Vec<u64>> = (0..d).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let m = vecs.len();
        for kv in linalg::kernel(&rows, 2 * m, p) {
            let den_val = (0..m).fold(ring.zero(), |acc, j| ring.add(&acc, &evals[j].scale(kv[m + j])));
            if den_val.is_zero() {
                continue;
            }
            let combine = |part: &[u64]| -> Vec<u64> {
                let mut out = vec![0u64; basis.len()];
                for (c, v) in part.iter().zip(&vecs) {
                    for (o, &vi) in out.iter_mut().zip(v) {
                        *o = (*o + crate::arith::mul_mod(*c, vi, p)) % p;
                    }
                }
                out
            };
            return Some(Interpolation {
                k,
                point: r,
                basis: basis.clone(),
                numerator: combine(&kv[..m]),
                denominator: combine(&kv[m..]),
            });
        }
    }
    None
}

/// Smallest `k` for which [`interpolate`] succeeds.
pub fn function_degree(ep: &EllipticParams, modulus: &Poly, z: &Poly) -> usize {
    let z = z.rem(modulus);
    if z.deg() <= 0 {
        return 0;
    }
    (1..)
        .find(|&k| interpolate(ep, modulus, &z, k).is_some())
        .expect("every element has finite degree")
}
