//! The `P1 x P1` sieve: curves `y = f(x)` and `x = g(y)` meet in the roots
//! of `g(f(X)) - X`; an irreducible factor `h` of degree `d` gives
//! `F_{p^d} = F_p[X]/h` with `y = f(x)`.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factor::{factor, Factorization};
use crate::index_calculus::trial_rng;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JLSetup {
    pub p: u64,
    pub f: Poly,
    pub g: Poly,
    /// `g(f(X)) - X`.
    pub composed: Poly,
    /// Simple irreducible factor of `composed` of degree `d`.
    pub h: Poly,
}

impl JLSetup {
    pub fn d(&self) -> usize {
        self.h.deg() as usize
    }

    /// `y = f(x)` in `F_p[X]/h`.
    pub fn y_image(&self) -> Poly {
        self.f.rem(&self.h)
    }

    pub fn to_json(&self) -> Value {
        json!({"p": self.p, "f": self.f, "g": self.g, "h": self.h, "d": self.d()})
    }
}

fn random_poly<R: Rng>(p: u64, deg: usize, rng: &mut R) -> Poly {
    let mut c: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
    c.push(rng.gen_range(1..p));
    Poly::new(p, c)
}

/// Random `f, g` of degrees `df, dg` until `g(f(X)) - X` has a simple
/// irreducible factor of degree `d`.
pub fn jl_setup(p: u64, df: usize, dg: usize, d: usize, seed: u64, max_trials: u64) -> Result<JLSetup> {
    crate::ensure_prime(p)?;
    if df == 0 || dg == 0 || d == 0 || d > df * dg {
        return Err(Error::InvalidInput(format!("need 1 <= d <= df dg, got d = {d}, df = {df}, dg = {dg}")));
    }
    for t in 0..max_trials {
        let mut rng = trial_rng(seed, t);
        let f = random_poly(p, df, &mut rng);
        let g = random_poly(p, dg, &mut rng);
        let composed = &g.compose(&f) - &Poly::x(p);
        if composed.deg() != (df * dg) as isize {
            continue;
        }
        let fz = factor(&composed);
        if let Some((h, _)) = fz.factors.iter().find(|(q, e)| *e == 1 && q.deg() == d as isize) {
            return Ok(JLSetup { p, f, g, composed, h: h.clone() });
        }
    }
    Err(Error::Timeout { trials: max_trials, what: format!("no simple degree-{d} factor of g(f(X)) - X") })
}

/// A relation between the factorisations of `lambda(X, f(X))` and
/// `lambda(g(Y), Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation2D {
    /// Non-zero coefficients `(i, j, c)` of `c x^i y^j`, normalised so the
    /// last one is 1.
    pub lambda: Vec<(usize, usize, u64)>,
    pub side_a: Factorization,
    pub side_b: Factorization,
    /// `side_a(x) / side_b(f(x))` in `F_p^*`.
    pub ratio: u64,
}

impl Relation2D {
    /// Recompute both products from the factorisations in `F_p[X]/h` and
    /// check that their ratio is a non-zero constant equal to `ratio`.
    pub fn verify(&self, s: &JLSetup) -> bool {
        check_ratio(s, &self.side_a, &self.side_b) == Some(self.ratio)
    }

    pub fn to_json(&self) -> Value {
        let side = |fz: &Factorization| {
            json!({
                "unit": fz.unit,
                "factors": fz.factors.iter().map(|(q, e)| json!([q, e])).collect::<Vec<_>>(),
            })
        };
        json!({
            "lambda": self.lambda.iter().map(|&(i, j, c)| json!([i, j, c])).collect::<Vec<_>>(),
            "side_a": side(&self.side_a),
            "side_b": side(&self.side_b),
            "ratio": self.ratio,
        })
    }
}

fn check_ratio(s: &JLSetup, a: &Factorization, b: &Factorization) -> Option<u64> {
    let h = &s.h;
    let p = s.p;
    let y = s.y_image();
    let mut va = Poly::constant(p, a.unit).rem(h);
    for (q, e) in &a.factors {
        va = va.mul_mod(&q.rem(h).pow_mod(*e as u128, h), h);
    }
    let mut vb = Poly::constant(p, b.unit).rem(h);
    for (q, e) in &b.factors {
        vb = vb.mul_mod(&q.eval_mod(&y, h).pow_mod(*e as u128, h), h);
    }
    let ratio = va.mul_mod(&vb.inv_mod(h)?, h);
    (ratio.deg() == 0).then(|| ratio.coeff(0))
}

/// `(lambda(X, f(X)), lambda(g(Y), Y))`.
pub fn jl_sides(s: &JLSetup, lambda: &[(usize, usize, u64)]) -> (Poly, Poly) {
    let p = s.p;
    let mut a = Poly::zero(p);
    let mut b = Poly::zero(p);
    for &(i, j, c) in lambda {
        a = &a + &(&Poly::monomial(p, c, i) * &s.f.pow(j as u32));
        b = &b + &(&s.g.pow(i as u32) * &Poly::monomial(p, c, j));
    }
    (a, b)
}

/// The relation for one `lambda`, if both sides are `kappa`-smooth.
pub fn jl_relation(s: &JLSetup, lambda: &[(usize, usize, u64)], kappa: usize) -> Option<Relation2D> {
    let (a, b) = jl_sides(s, lambda);
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let fa = factor(&a);
    if fa.max_degree() > kappa {
        return None;
    }
    let fb = factor(&b);
    if fb.max_degree() > kappa {
        return None;
    }
    let ratio = check_ratio(s, &fa, &fb)?;
    Some(Relation2D { lambda: lambda.to_vec(), side_a: fa, side_b: fb, ratio })
}

fn random_lambda<R: Rng>(p: u64, ux: usize, uy: usize, rng: &mut R) -> Option<Vec<(usize, usize, u64)>> {
    let mut terms = Vec::new();
    for j in 0..=uy {
        for i in 0..=ux {
            let c = rng.gen_range(0..p);
            if c != 0 {
                terms.push((i, j, c));
            }
        }
    }
    // Constants give trivial relations.
    if terms.iter().all(|&(i, j, _)| i == 0 && j == 0) {
        return None;
    }
    let last = terms.last()?.2;
    let inv = crate::arith::inv_mod(last, p)?;
    Some(terms.into_iter().map(|(i, j, c)| (i, j, crate::arith::mul_mod(c, inv, p))).collect())
}

/// Random `lambda` of bidegree at most `(ux, uy)`; each trial draws from its
/// own RNG stream and the output is keyed by normalised `lambda`, so it does
/// not depend on `workers`.
#[allow(clippy::too_many_arguments)]
pub fn jl_sieve(
    s: &JLSetup,
    ux: usize,
    uy: usize,
    kappa: usize,
    budget: u64,
    seed: u64,
    workers: usize,
) -> Result<Vec<Relation2D>> {
    if ux == 0 && uy == 0 {
        return Err(Error::InvalidInput("ux and uy cannot both be 0".into()));
    }
    if kappa >= s.d() {
        return Err(Error::InvalidInput("kappa must be below the extension degree".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    let found: Vec<Relation2D> = pool.install(|| {
        (0..budget)
            .into_par_iter()
            .filter_map(|t| {
                let lambda = random_lambda(s.p, ux, uy, &mut trial_rng(seed, t))?;
                jl_relation(s, &lambda, kappa)
            })
            .collect()
    });
    let mut by_lambda = BTreeMap::new();
    for r in found {
        by_lambda.entry(r.lambda.clone()).or_insert(r);
    }
    Ok(by_lambda.into_values().collect())
}
