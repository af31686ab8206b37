//! The `E x E` sieve. With `1 - beta alpha = phi - 1`, the curves
//! `A = {(P, alpha(P) - a)}` and `B = {(beta(Q) + b, Q)}` meet in the fiber
//! of `phi - 1` above `b - beta(a)`; choosing `b - beta(a) = t*` makes the
//! fiber point `P_I` of the residue presentation one of the intersection
//! points. Functions on `E x E` in a class `(d1, d2, xi)` are found as the
//! functions of `L((d1+N)O) x L((d2+1)O)` vanishing on the graph of `-xi`.

use std::collections::{BTreeMap, HashSet};

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::elliptic::curve::{Curve, CurvePoint, Point};
use crate::elliptic::degree::{riemann_roch_basis, Monomial};
use crate::elliptic::funcfield::{FuncElem, FuncField};
use crate::elliptic::places::{check_divisor, divisor, translation_orbit, Place};
use crate::elliptic::residue::{build_elliptic_residue, embed, EllipticResidueRep};
use crate::elliptic::EndomorphismElement;
use crate::error::{Error, Result};
use crate::field::{sqrt_in, Field};
use crate::galois::point_to_json;
use crate::index_calculus::trial_rng;
use crate::linalg;
use crate::poly::Poly;
use crate::residue::ResidueRing;
use crate::sieve2d::NSClassEE;

#[derive(Clone, Debug)]
pub struct EESetup {
    pub residue: EllipticResidueRep,
    pub alpha: EndomorphismElement,
    pub beta: EndomorphismElement,
    pub a: CurvePoint,
    pub b: CurvePoint,
    /// Point of `I` on the first factor: the fiber point over `L`.
    pub p_i: Point<Poly>,
    /// `alpha(P_I) - a`.
    pub q_i: Point<Poly>,
    /// Frobenius on `P_I` is translation by `t_a`, on `Q_I` by `t_b`.
    pub t_a: CurvePoint,
    pub t_b: CurvePoint,
}

impl EESetup {
    pub fn curve(&self) -> &Curve {
        self.residue.curve()
    }

    pub fn ring(&self) -> ResidueRing {
        self.residue.ring()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.curve().p,
            "d": self.residue.rep.d,
            "curve": {"a": self.curve().a, "b": self.curve().b, "order": self.curve().order},
            "trace": self.curve().trace(),
            "alpha": [self.alpha.m, self.alpha.n],
            "beta": [self.beta.m, self.beta.n],
            "a": point_to_json(&self.a),
            "b": point_to_json(&self.b),
            "t_a": point_to_json(&self.t_a),
            "t_b": point_to_json(&self.t_b),
        })
    }

    /// `f(P)^p = f(P + t)` on both factors, for `count` random functions in
    /// `L(6 O)`.
    pub fn check_translation_invariance(&self, count: usize, seed: u64) -> bool {
        let ring = self.ring();
        let curve = self.curve();
        let basis = riemann_roch_basis(6);
        let p = curve.p;
        (0..count as u64).all(|t| {
            let mut rng = trial_rng(seed, t);
            let coeffs: Vec<u64> = basis.iter().map(|_| rng.gen_range(0..p)).collect();
            [(&self.p_i, &self.t_a), (&self.q_i, &self.t_b)].iter().all(|(pt, tr)| {
                let moved = curve.add(&ring, pt, &embed(&ring, tr));
                let f0 = eval_combination(&ring, &basis, &coeffs, pt);
                let f1 = eval_combination(&ring, &basis, &coeffs, &moved);
                match (f0, f1) {
                    (Some(a), Some(b)) => ring.frobenius(&a) == b,
                    _ => true,
                }
            })
        })
    }
}

fn eval_combination<F: Field>(f: &F, basis: &[Monomial], coeffs: &[u64], pt: &Point<F::Elem>) -> Option<F::Elem> {
    crate::elliptic::degree::eval_function(f, basis, coeffs, pt)
}

/// `alpha, beta` in `Z[phi]` with `beta alpha = 2 - phi`, `|m|, |n| <= bound`,
/// minimising the larger norm, then `norm(alpha)`, then `|m| + |n|`, then
/// preferring non-negative coordinates.
pub fn endomorphism_search(t: i64, p: i64, bound: i64) -> Result<(EndomorphismElement, EndomorphismElement)> {
    let target = EndomorphismElement::new(2, -1, t, p);
    let mut best: Option<((i64, i64, i64, bool, bool), EndomorphismElement, EndomorphismElement)> = None;
    for m in -bound..=bound {
        for n in -bound..=bound {
            let alpha = EndomorphismElement::new(m, n, t, p);
            if alpha.is_zero() {
                continue;
            }
            let Some(beta) = target.div_exact(&alpha) else { continue };
            let key = (alpha.norm().max(beta.norm()), alpha.norm(), m.abs() + n.abs(), m < 0, n < 0);
            if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                best = Some((key, alpha, beta));
            }
        }
    }
    best.map(|(_, a, b)| (a, b)).ok_or(Error::SearchFailed(bound))
}

pub fn ee_setup(p: u64, d: usize) -> Result<EESetup> {
    ee_setup_on(build_elliptic_residue(p, d)?)
}

/// `a` is the first rational point in scan order and `b = t* + beta(a)`.
pub fn ee_setup_on(residue: EllipticResidueRep) -> Result<EESetup> {
    let curve = residue.curve().clone();
    let p = curve.p as i64;
    let t = curve.trace();
    let (alpha, beta) = endomorphism_search(t, p, 50)?;
    let ring = residue.ring();
    let fp = curve.fp();
    let t_star = residue.params().t_star.clone();
    let a = curve.rational_points()[0].clone();
    let b = curve.add(&fp, &t_star, &curve.mul(&fp, beta.rational_scalar() as i128, &a));
    let p_i = residue.fiber_point();
    let q_i = curve.sub(&ring, &alpha.apply(&curve, &ring, &p_i), &embed(&ring, &a));
    let back = curve.add(&ring, &beta.apply(&curve, &ring, &q_i), &embed(&ring, &b));
    if back != p_i {
        return Err(Error::VerificationFailed("P_I does not lie on B".into()));
    }
    let t_b = curve.mul(&fp, alpha.rational_scalar() as i128, &t_star);
    Ok(EESetup { residue, alpha, beta, a, b, p_i, q_i, t_a: t_star, t_b })
}

/// Points `(P, -xi(P))` of the graph of `-xi` with `P` running over the
/// points of `E(L)` in the enumeration order of their `x`-coordinates,
/// skipping rational points, poles and conjugates of earlier points.
/// Returns the points with the size of their Galois orbits.
pub fn graph_points(setup: &EESetup, xi: &EndomorphismElement, count: usize) -> Vec<(Point<Poly>, Point<Poly>, usize)> {
    let ring = setup.ring();
    let curve = setup.curve();
    let p = ring.p();
    let neg_xi = xi.neg();
    let mut seen: HashSet<Poly> = HashSet::new();
    let mut out = Vec::new();
    let limit = (ring.order().min(u64::MAX as u128) as u64).saturating_sub(p);
    for i in 0..limit {
        if out.len() == count {
            break;
        }
        let x = ring.element_at(p + i);
        if seen.contains(&x) {
            continue;
        }
        let Some(y) = sqrt_in(&ring, &curve.rhs(&ring, &x), ring.order()) else { continue };
        let pt = Point::Affine(x.clone(), y);
        let image = neg_xi.apply(curve, &ring, &pt);
        let mut xs = vec![x.clone()];
        loop {
            let next = ring.frobenius(xs.last().unwrap());
            if next == x {
                break;
            }
            xs.push(next);
        }
        let size = xs.len();
        seen.extend(xs);
        if image.is_infinity() || y_is_zero(&pt) {
            continue;
        }
        out.push((pt, image, size));
    }
    out
}

fn y_is_zero(pt: &Point<Poly>) -> bool {
    matches!(pt, Point::Affine(_, y) if y.is_zero())
}

/// Functions `sum c_ij left_i(P1) right_j(P2)` vanishing on the graph of
/// `-xi`, with coefficients in `F_p`.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub p: u64,
    pub class: NSClassEE,
    pub left: Vec<Monomial>,
    pub right: Vec<Monomial>,
    /// Kernel basis; entry `i * right.len() + j` multiplies `left_i right_j`.
    pub kernel: Vec<Vec<u64>>,
    /// Zeros imposed (graph points counted with their conjugates).
    pub zeros_used: usize,
    pub holdout: Vec<(Point<Poly>, Point<Poly>)>,
}

impl LinearSystem {
    pub fn eval<F: Field>(&self, f: &F, coeffs: &[u64], p1: &Point<F::Elem>, p2: &Point<F::Elem>) -> Option<F::Elem> {
        let (Point::Affine(x1, y1), Point::Affine(x2, y2)) = (p1, p2) else { return None };
        let lv: Vec<F::Elem> = self.left.iter().map(|m| m.eval(f, x1, y1)).collect();
        let rv: Vec<F::Elem> = self.right.iter().map(|m| m.eval(f, x2, y2)).collect();
        let mut acc = f.zero();
        for (i, l) in lv.iter().enumerate() {
            for (j, r) in rv.iter().enumerate() {
                let c = coeffs[i * rv.len() + j];
                if c != 0 {
                    acc = f.add(&acc, &f.mul(&f.from_u64(c), &f.mul(l, r)));
                }
            }
        }
        Some(acc)
    }

    /// Every kernel function vanishes on the held-out graph points.
    pub fn holdout_vanishes(&self, setup: &EESetup) -> bool {
        let ring = setup.ring();
        self.kernel
            .iter()
            .all(|k| self.holdout.iter().all(|(a, b)| self.eval(&ring, k, a, b).is_some_and(|v| v.is_zero())))
    }
}

pub const HOLDOUT_POINTS: usize = 20;

pub fn linear_system_ee(setup: &EESetup, c: &NSClassEE) -> Result<LinearSystem> {
    if !c.is_effective() {
        return Err(Error::InvalidInput(format!("class ({}, {}, {:?}) is not effective", c.d1, c.d2, c.xi)));
    }
    let n = c.xi.norm();
    let bound = (c.d1 + n + (c.d2 + 1) * n) as usize;
    if c.xi.is_zero() {
        return Err(Error::InsufficientPoints { needed: bound + 1, found: 0 });
    }
    let left = riemann_roch_basis((c.d1 + n) as usize);
    let right = riemann_roch_basis((c.d2 + 1) as usize);
    let ring = setup.ring();
    let d = ring.degree();
    let p = ring.p();
    let ncols = left.len() * right.len();
    // Orbits of size d; enough to exceed the number of zeros a non-zero
    // restriction can have.
    let want = bound / d + 2 + HOLDOUT_POINTS;
    let pts = graph_points(setup, &c.xi, want);
    let mut zeros = 0;
    let mut used = 0;
    while used < pts.len() && zeros <= bound {
        zeros += pts[used].2;
        used += 1;
    }
    if zeros <= bound || pts.len() < used + HOLDOUT_POINTS {
        return Err(Error::InsufficientPoints { needed: bound + 1, found: zeros });
    }
    let mut sys = LinearSystem {
        p,
        class: *c,
        left,
        right,
        kernel: Vec::new(),
        zeros_used: zeros,
        holdout: pts[used..used + HOLDOUT_POINTS].iter().map(|(a, b, _)| (a.clone(), b.clone())).collect(),
    };
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(used * d);
    for (a, b, _) in &pts[..used] {
        let (Point::Affine(x1, y1), Point::Affine(x2, y2)) = (a, b) else { unreachable!() };
        let lv: Vec<Poly> = sys.left.iter().map(|m| m.eval(&ring, x1, y1)).collect();
        let rv: Vec<Poly> = sys.right.iter().map(|m| m.eval(&ring, x2, y2)).collect();
        let cols: Vec<Vec<u64>> = lv
            .iter()
            .flat_map(|l| rv.iter().map(move |r| (l, r)))
            .map(|(l, r)| ring.mul(l, r).to_vec(d))
            .collect();
        for k in 0..d {
            rows.push(cols.iter().map(|col| col[k]).collect());
        }
    }
    sys.kernel = linalg::kernel(&rows, ncols, p);
    Ok(sys)
}

/// A divisor entry with its orbit under the Frobenius translation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceEntry {
    pub place: Place,
    pub valuation: i64,
    pub orbit_rep: Place,
    /// `place` is `orbit_rep` translated `shift` times.
    pub shift: usize,
}

impl PlaceEntry {
    fn to_json(&self) -> Value {
        json!({
            "place": self.place.to_json(),
            "valuation": self.valuation,
            "orbit_rep": self.orbit_rep.to_json(),
            "shift": self.shift,
        })
    }
}

/// Both restrictions of one sieve function are smooth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EERelation {
    /// Combination of the kernel basis, last non-zero entry 1.
    pub combination: Vec<u64>,
    /// The function is `F(P1 - z1, P2 - z2)`.
    pub z1: CurvePoint,
    pub z2: CurvePoint,
    pub side_a: Vec<PlaceEntry>,
    pub side_b: Vec<PlaceEntry>,
    /// `F(P_I - z1, Q_I - z2)` in `L`.
    pub value: Poly,
}

impl EERelation {
    pub fn to_json(&self) -> Value {
        json!({
            "combination": self.combination,
            "z1": point_to_json(&self.z1),
            "z2": point_to_json(&self.z2),
            "side_a": self.side_a.iter().map(PlaceEntry::to_json).collect::<Vec<_>>(),
            "side_b": self.side_b.iter().map(PlaceEntry::to_json).collect::<Vec<_>>(),
            "value": self.value,
        })
    }
}

/// Restrictions of sieve functions to `A` and `B` as function-field
/// elements, with the monomials precomputed for every translate.
pub struct Restrictor<'a> {
    setup: &'a EESetup,
    sys: &'a LinearSystem,
    k: FuncField,
    translates: Vec<CurvePoint>,
    // [z] -> monomial values
    a_left: Vec<Vec<FuncElem>>,
    a_right: Vec<Vec<FuncElem>>,
    b_left: Vec<Vec<FuncElem>>,
    b_right: Vec<Vec<FuncElem>>,
}

impl<'a> Restrictor<'a> {
    pub fn new(setup: &'a EESetup, sys: &'a LinearSystem, max_translates: usize) -> Self {
        let curve = setup.curve();
        let k = FuncField::new(curve);
        let gen = k.generic_point();
        let translates: Vec<CurvePoint> = curve.rational_points().into_iter().take(max_translates.max(1)).collect();
        let on_a = curve.sub(&k, &setup.alpha.apply(curve, &k, &gen), &embed(&k, &setup.a));
        let on_b = curve.add(&k, &setup.beta.apply(curve, &k, &gen), &embed(&k, &setup.b));
        let values = |pt: &Point<FuncElem>, basis: &[Monomial]| -> Vec<Vec<FuncElem>> {
            translates
                .iter()
                .map(|z| {
                    let moved = curve.sub(&k, pt, &embed(&k, z));
                    let Point::Affine(x, y) = moved else { return Vec::new() };
                    basis.iter().map(|m| m.eval(&k, &x, &y)).collect()
                })
                .collect()
        };
        Restrictor {
            a_left: values(&gen, &sys.left),
            a_right: values(&on_a, &sys.right),
            b_left: values(&on_b, &sys.left),
            b_right: values(&gen, &sys.right),
            setup,
            sys,
            k,
            translates,
        }
    }

    pub fn field(&self) -> &FuncField {
        &self.k
    }

    pub fn translates(&self) -> &[CurvePoint] {
        &self.translates
    }

    fn combine(&self, coeffs: &[u64], left: &[FuncElem], right: &[FuncElem]) -> Option<FuncElem> {
        if left.is_empty() || right.is_empty() {
            return None;
        }
        let k = &self.k;
        let nr = right.len();
        let mut acc = k.zero();
        for (j, r) in right.iter().enumerate() {
            let mut inner = k.zero();
            for (i, l) in left.iter().enumerate() {
                let c = coeffs[i * nr + j];
                if c != 0 {
                    inner = k.add(&inner, &k.mul(&k.from_u64(c), l));
                }
            }
            if !inner.is_zero() {
                acc = k.add(&acc, &k.mul(&inner, r));
            }
        }
        Some(acc)
    }

    /// `(F|_A, F|_B)` for `F(P1, P2) = G(P1 - z1, P2 - z2)`, `G` given by
    /// `coeffs`; `z1`, `z2` index the translates.
    pub fn restrict(&self, coeffs: &[u64], z1: usize, z2: usize) -> Option<(FuncElem, FuncElem)> {
        let fa = self.combine(coeffs, &self.a_left[z1], &self.a_right[z2])?;
        let fb = self.combine(coeffs, &self.b_left[z1], &self.b_right[z2])?;
        Some((fa, fb))
    }

    /// Direct value `G(P_I - z1, Q_I - z2)` in `L`.
    pub fn direct_value(&self, coeffs: &[u64], z1: usize, z2: usize) -> Option<Poly> {
        let ring = self.setup.ring();
        let curve = self.setup.curve();
        let p1 = curve.sub(&ring, &self.setup.p_i, &embed(&ring, &self.translates[z1]));
        let p2 = curve.sub(&ring, &self.setup.q_i, &embed(&ring, &self.translates[z2]));
        self.sys.eval(&ring, coeffs, &p1, &p2)
    }
}

fn reduce_side(curve: &Curve, div: Vec<(Place, i64)>, t: &CurvePoint) -> Vec<PlaceEntry> {
    div.into_iter()
        .map(|(place, valuation)| {
            let orbit = translation_orbit(curve, &place, t);
            let rep = orbit.iter().min().unwrap().clone();
            let from_rep = translation_orbit(curve, &rep, t);
            let shift = from_rep.iter().position(|q| *q == place).unwrap();
            PlaceEntry { place, valuation, orbit_rep: rep, shift }
        })
        .collect()
}

/// Check one relation from scratch: recompute the restrictions, their
/// divisors and the value at the intersection point three ways.
pub fn verify_relation(r: &Restrictor<'_>, rel: &EERelation, kappa: usize) -> bool {
    let Some(z1) = r.translates.iter().position(|z| *z == rel.z1) else { return false };
    let Some(z2) = r.translates.iter().position(|z| *z == rel.z2) else { return false };
    let coeffs = combination_coeffs(r.sys, &rel.combination);
    let Some((fa, fb)) = r.restrict(&coeffs, z1, z2) else { return false };
    if fa.is_zero() || fb.is_zero() {
        return false;
    }
    let k = &r.k;
    let setup = r.setup;
    let ring = setup.ring();
    let da = divisor(k, &fa);
    let db = divisor(k, &fb);
    let same = |side: &[PlaceEntry], div: &[(Place, i64)]| {
        side.len() == div.len() && side.iter().zip(div).all(|(e, (pl, v))| e.place == *pl && e.valuation == *v)
    };
    if !same(&rel.side_a, &da) || !same(&rel.side_b, &db) {
        return false;
    }
    if !check_divisor(k, &fa, &da) || !check_divisor(k, &fb, &db) {
        return false;
    }
    if da.iter().chain(&db).any(|(pl, _)| pl.degree() > kappa) {
        return false;
    }
    let (Point::Affine(xa, ya), Point::Affine(xb, yb)) = (&setup.p_i, &setup.q_i) else { return false };
    let va = fa.eval_at(&ring, xa, ya);
    let vb = fb.eval_at(&ring, xb, yb);
    let direct = r.direct_value(&coeffs, z1, z2);
    matches!((va, vb, direct), (Some(a), Some(b), Some(c)) if a == b && b == c && c == rel.value && !c.is_zero())
}

fn combination_coeffs(sys: &LinearSystem, comb: &[u64]) -> Vec<u64> {
    let p = sys.p;
    let mut out = vec![0u64; sys.left.len() * sys.right.len()];
    for (c, k) in comb.iter().zip(&sys.kernel) {
        for (o, v) in out.iter_mut().zip(k) {
            *o = (*o + crate::arith::mul_mod(*c, *v, p)) % p;
        }
    }
    out
}

/// Output of [`ee_sieve`].
#[derive(Clone, Debug)]
pub struct EESieveOutput {
    pub system: LinearSystem,
    pub relations: Vec<EERelation>,
    pub trials: u64,
}

/// Random combinations of the linear system, translated by random rational
/// points, restricted to `A` and `B`; keeps those whose two divisors only
/// involve places of degree at most `kappa`. Trials are independent and
/// seeded by their index, so the output does not depend on `workers`.
pub fn ee_sieve(
    setup: &EESetup,
    class: &NSClassEE,
    kappa: usize,
    budget: u64,
    seed: u64,
    workers: usize,
) -> Result<EESieveOutput> {
    let sys = linear_system_ee(setup, class)?;
    if sys.kernel.is_empty() {
        return Err(Error::RankDeficient { missing: 1 });
    }
    if !sys.holdout_vanishes(setup) {
        return Err(Error::VerificationFailed("kernel does not vanish on held-out graph points".into()));
    }
    let restrictor = Restrictor::new(setup, &sys, 16);
    let curve = setup.curve();
    let p = sys.p;
    let ntrans = restrictor.translates.len();
    let run = |t: u64| -> Option<Result<EERelation>> {
        let mut rng = trial_rng(seed, t);
        let mut comb: Vec<u64> = sys.kernel.iter().map(|_| rng.gen_range(0..p)).collect();
        let last = comb.iter().rposition(|&c| c != 0)?;
        let inv = crate::arith::inv_mod(comb[last], p).unwrap();
        comb.iter_mut().for_each(|c| *c = crate::arith::mul_mod(*c, inv, p));
        let z1 = rng.gen_range(0..ntrans);
        let z2 = rng.gen_range(0..ntrans);
        let coeffs = combination_coeffs(&sys, &comb);
        let (fa, fb) = restrictor.restrict(&coeffs, z1, z2)?;
        if fa.is_zero() || fb.is_zero() {
            return None;
        }
        let k = &restrictor.k;
        let da = divisor(k, &fa);
        if da.iter().any(|(pl, _)| pl.degree() > kappa) {
            return None;
        }
        let db = divisor(k, &fb);
        if db.iter().any(|(pl, _)| pl.degree() > kappa) || (da.is_empty() && db.is_empty()) {
            return None;
        }
        let value = restrictor.direct_value(&coeffs, z1, z2)?;
        let rel = EERelation {
            combination: comb,
            z1: restrictor.translates[z1].clone(),
            z2: restrictor.translates[z2].clone(),
            side_a: reduce_side(curve, da, &setup.t_a),
            side_b: reduce_side(curve, db, &setup.t_b),
            value,
        };
        if verify_relation(&restrictor, &rel, kappa) {
            Some(Ok(rel))
        } else {
            Some(Err(Error::VerificationFailed(format!("relation from trial {t}"))))
        }
    };
    let chunk = 64u64;
    let mut found: BTreeMap<(Vec<u64>, CurvePoint, CurvePoint), EERelation> = BTreeMap::new();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().map_err(|e| Error::InvalidInput(e.to_string()))?;
    let mut start = 0u64;
    while start < budget {
        let end = (start + chunk * workers.max(1) as u64).min(budget);
        let batch: Vec<Option<Result<EERelation>>> = pool.install(|| (start..end).into_par_iter().map(run).collect());
        for r in batch.into_iter().flatten() {
            let r = r?;
            found.entry((r.combination.clone(), r.z1.clone(), r.z2.clone())).or_insert(r);
        }
        start = end;
    }
    let relations = found.into_values().collect();
    Ok(EESieveOutput { system: sys, relations, trials: budget })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> EESetup {
        ee_setup(11, 7).unwrap()
    }

    #[test]
    fn endomorphism_pair_at_eleven() {
        let s = setup();
        let t = s.curve().trace();
        assert_eq!((s.alpha.m, s.alpha.n), (1, 0));
        assert_eq!((s.beta.m, s.beta.n), (2, -1));
        let prod = s.beta.mul(&s.alpha);
        assert_eq!(prod, EndomorphismElement::new(2, -1, t, 11));
    }

    #[test]
    fn intersection_point_on_both_curves() {
        let s = setup();
        let ring = s.ring();
        let c = s.curve();
        assert!(c.is_on(&ring, &s.p_i) && c.is_on(&ring, &s.q_i));
        let q = c.sub(&ring, &s.alpha.apply(c, &ring, &s.p_i), &embed(&ring, &s.a));
        assert_eq!(q, s.q_i);
        let moved = c.add(&ring, &s.q_i, &embed(&ring, &s.t_b));
        assert_eq!(c.frobenius(&ring, &s.q_i), moved);
    }

    #[test]
    fn frobenius_translates_functions() {
        assert!(setup().check_translation_invariance(10, 3));
    }

    #[test]
    fn graph_points_are_distinct_orbits() {
        let s = setup();
        let xi = EndomorphismElement::new(1, 0, s.curve().trace(), 11);
        let pts = graph_points(&s, &xi, 6);
        assert_eq!(pts.len(), 6);
        for (a, b, n) in &pts {
            assert!(*n > 1 && 7 % *n == 0);
            assert_eq!(s.curve().neg(&s.ring(), a), *b);
        }
    }

    #[test]
    fn linear_system_dimension() {
        let s = setup();
        let t = s.curve().trace();
        for (d1, d2, m, n) in [(2, 1, 1, 0), (2, 2, 1, 0), (3, 2, 2, 0), (3, 2, -1, 0)] {
            let c = NSClassEE::new(d1, d2, EndomorphismElement::new(m, n, t, 11));
            let sys = linear_system_ee(&s, &c).unwrap();
            assert!(sys.kernel.len() as i64 >= c.expected_dimension(), "{c:?}");
            assert!(sys.holdout_vanishes(&s));
        }
    }

    #[test]
    fn zero_endomorphism_has_no_graph_points() {
        let s = setup();
        let c = NSClassEE::new(2, 2, EndomorphismElement::new(0, 0, s.curve().trace(), 11));
        assert!(matches!(linear_system_ee(&s, &c), Err(Error::InsufficientPoints { .. })));
    }

    #[test]
    fn sieve_relations_verify() {
        let s = setup();
        let c = NSClassEE::new(2, 2, EndomorphismElement::new(1, 0, s.curve().trace(), 11));
        let out = ee_sieve(&s, &c, 4, 150, 5, 2).unwrap();
        assert!(!out.relations.is_empty());
        let r = Restrictor::new(&s, &out.system, 16);
        for rel in &out.relations {
            assert!(verify_relation(&r, rel, 4));
            for e in rel.side_a.iter().chain(&rel.side_b) {
                assert!(e.orbit_rep <= e.place);
            }
        }
        let again = ee_sieve(&s, &c, 4, 150, 5, 1).unwrap();
        assert_eq!(out.relations, again.relations);
    }
}
