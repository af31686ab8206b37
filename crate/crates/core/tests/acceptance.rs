//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness; exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::Rng;

use invsmooth::arith::pow_mod;
use invsmooth::elliptic::{
    build_elliptic_residue, build_elliptic_residue_on, count_points_enumerate, translate_x, Curve, EndomorphismElement,
};
use invsmooth::factor::count_irreducible_upto;
use invsmooth::galois::{build_artin_schreier, build_kummer_with, build_torus_with, RepParams, Representation};
use invsmooth::index_calculus::{compute_log_table, individual_log, trial_rng, FactorBase, PipelineConfig};
use invsmooth::sieve2d::{
    ee_setup, ee_sieve, intersection_form_p1p1, jl_setup, jl_sieve, linear_system_ee, verify_relation, NSClassEE,
    NSClassP1P1, Restrictor,
};
use invsmooth::{is_irreducible, Field, Poly};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn kummer_43() -> Check {
    let rep = build_kummer_with(43, 6, 3).map_err(err)?;
    ensure(rep.modulus == Poly::from_i64(43, &[-3, 0, 0, 0, 0, 0, 1]), format!("A = {}", rep.modulus))?;
    let ring = rep.ring();
    let xp = ring.pow(&ring.gen(), 43);
    ensure(xp == Poly::new(43, vec![0, 37]), format!("x^43 = {xp}"))?;
    Ok("A = X^6 - 3, x^43 = 37x".into())
}

fn kummer_370801() -> Check {
    let p = 370801;
    let rep = build_kummer_with(p, 30, 17).map_err(err)?;
    let RepParams::Kummer { zeta, .. } = rep.params else { return Err("wrong params".into()) };
    ensure(zeta == 172960, format!("zeta = {zeta}"))?;
    ensure(pow_mod(17, 12360, p) == 172960, "17^12360")?;
    let ring = rep.ring();
    let xp = ring.pow(&ring.gen(), p as u128);
    ensure(xp == Poly::new(p, vec![0, 172960]), format!("x^p = {xp}"))?;
    Ok("zeta_30 = 172960 = 17^12360".into())
}

fn artin_schreier_7() -> Check {
    let rep = build_artin_schreier(7, 1).map_err(err)?;
    ensure(rep.modulus == Poly::from_i64(7, &[-1, -1, 0, 0, 0, 0, 0, 1]), format!("A = {}", rep.modulus))?;
    let ring = rep.ring();
    ensure(ring.pow(&ring.gen(), 7) == Poly::new(7, vec![1, 1]), "x^7 != x + 1")?;
    Ok("A = X^7 - X - 1, x^7 = x + 1".into())
}

fn torus_13() -> Check {
    let rep = build_torus_with(13, 7, 2, 8).map_err(err)?;
    let even = Poly::from_i64(13, &[0, 4, 0, 10, 0, 3, 0, 1]);
    let odd = Poly::from_i64(13, &[8, 0, 6, 0, 5, 0, 7]);
    let expected = &even - &odd.scale(8);
    ensure(rep.modulus == expected, format!("A = {} expected {}", rep.modulus, expected))?;
    let ring = rep.ring();
    let num = Poly::new(13, vec![2, 4]);
    let den = ring.inv(&Poly::new(13, vec![4, 1])).ok_or("x + 4 not invertible")?;
    ensure(ring.pow(&ring.gen(), 13) == ring.mul(&num, &den), "x^13 != (4x + 2)/(x + 4)")?;
    Ok("A matches coefficient for coefficient, x^13 = (4x+2)/(x+4)".into())
}

fn elliptic_11() -> Check {
    let long = [1, 0, 0, 2, 8];
    ensure(count_points_enumerate(11, &long) == 7, "#E != 7")?;
    let curve = Curve::from_long(11, long).map_err(err)?;
    ensure(curve.trace() == 5, format!("trace {}", curve.trace()))?;
    let mut notes = Vec::new();
    for r in [build_elliptic_residue(11, 7).map_err(err)?, build_elliptic_residue_on(&curve, 7).map_err(err)?] {
        ensure(r.rep.modulus.deg() == 7 && is_irreducible(&r.rep.modulus), "fiber polynomial")?;
        let ring = r.ring();
        let xp = ring.frobenius(&ring.gen());
        let hits: Vec<_> = r
            .isogeny
            .kernel
            .iter()
            .filter(|t| translate_x(&ring, &r.params().fiber_y, t).is_ok_and(|x| x == xp))
            .collect();
        ensure(r.isogeny.kernel.len() == 7 && hits.len() == 1, format!("{} kernel points match", hits.len()))?;
        let b = r.fiber_point();
        let moved = r.curve().add(&ring, &b, &invsmooth::elliptic::residue::embed(&ring, hits[0]));
        ensure(moved == r.curve().frobenius(&ring, &b), "Frobenius is not the translation")?;
        notes.push(format!("t* = {:?}", hits[0]));
    }
    Ok(format!("trace 5, #E = 7, {}", notes.join(", ")))
}

fn orbit_reduction() -> Check {
    let rep = build_kummer_with(43, 6, 3).map_err(err)?;
    let fb = FactorBase::build(&rep, 2).map_err(err)?;
    let total = count_irreducible_upto(43, 2) as usize;
    ensure(fb.unreduced_size() == total, "orbits do not partition the basis")?;
    ensure(fb.orbits.iter().all(|o| 6 % o.len() == 0), "orbit size does not divide 6")?;
    ensure(2 * fb.orbits.len() <= total, format!("{} orbits for {} places", fb.orbits.len(), total))?;
    ensure(fb.orbits.iter().any(|o| o.len() == 6), "no orbit of size 6")?;
    Ok(format!("{} places -> {} orbits, ratio {:.2}", total, fb.orbits.len(), total as f64 / fb.orbits.len() as f64))
}

fn end_to_end(rep: &Representation, kappa: usize) -> Result<String, String> {
    let start = Instant::now();
    let run = compute_log_table(rep, &PipelineConfig::new(kappa, 1)).map_err(err)?;
    let bad = run.table.verify(rep, &run.factor_base);
    ensure(bad.is_empty(), format!("{} entries fail", bad.len()))?;
    let ring = rep.ring();
    for t in 0..5u64 {
        let mut rng = trial_rng(77, t);
        let z = ring.random(&mut rng);
        let z = if z.is_zero() { ring.one() } else { z };
        let e = individual_log(rep, &run.factor_base, &run.table, &z, 100 + t, 1_000_000).map_err(err)?;
        ensure(ring.pow(&run.generator, e as u128) == z, format!("log of {z}"))?;
    }
    ensure(start.elapsed() < Duration::from_secs(60), "over 60 s")?;
    Ok(format!("{} columns in {:.2?}", run.factor_base.columns(), start.elapsed()))
}

fn dlog() -> Check {
    let k = end_to_end(&build_kummer_with(43, 6, 3).map_err(err)?, 2)?;
    let t = end_to_end(&build_torus_with(13, 7, 2, 8).map_err(err)?, 2)?;
    Ok(format!("43^6: {k}; 13^7: {t}"))
}

fn intersections() -> Check {
    let mut rng = trial_rng(8, 0);
    for _ in 0..100 {
        let (df, dg) = (rng.gen_range(1..50i64), rng.gen_range(1..50i64));
        let v = intersection_form_p1p1(NSClassP1P1 { dx: df, dy: 1 }, NSClassP1P1 { dx: 1, dy: dg });
        ensure(v == 1 + df * dg, format!("({df}, {dg}) gives {v}"))?;
    }
    let mut setups = 0;
    for (p, df, dg, d) in [(43u64, 3usize, 2usize, 6usize), (13, 2, 2, 4), (7, 3, 3, 5), (11, 2, 3, 5), (5, 4, 2, 7)] {
        for seed in 0..3 {
            let s = jl_setup(p, df, dg, d, seed, 100_000).map_err(err)?;
            ensure(s.composed.deg() == (df * dg) as isize, format!("deg g(f(X)) - X at p = {p}"))?;
            setups += 1;
        }
    }
    Ok(format!("100 forms, {setups} setups"))
}

fn effectivity() -> Check {
    let start = Instant::now();
    let setup = ee_setup(11, 7).map_err(err)?;
    let t = setup.curve().trace();
    let mut rng = trial_rng(9, 0);
    let mut classes = 0;
    while classes < 24 {
        let xi = EndomorphismElement::new(rng.gen_range(-4..=4), rng.gen_range(-1..=1), t, 11);
        let c = NSClassEE::new(rng.gen_range(1..=5), rng.gen_range(1..=5), xi);
        if xi.is_zero() || !c.is_effective() {
            continue;
        }
        let sys = linear_system_ee(&setup, &c).map_err(err)?;
        ensure(sys.kernel.len() as i64 >= c.expected_dimension(), format!("{c:?}: {}", sys.kernel.len()))?;
        ensure(sys.holdout.len() == 20 && sys.holdout_vanishes(&setup), format!("{c:?} holdout"))?;
        classes += 1;
    }
    ensure(start.elapsed() < Duration::from_secs(60), "over 60 s")?;
    Ok(format!("{classes} classes in {:.2?}", start.elapsed()))
}

fn soundness() -> Check {
    let s = jl_setup(43, 3, 2, 6, 1, 100_000).map_err(err)?;
    let jl = jl_sieve(&s, 1, 1, 2, 400, 3, 4).map_err(err)?;
    ensure(!jl.is_empty(), "no JL relations")?;
    ensure(jl.iter().all(|r| r.verify(&s) && r.ratio != 0), "JL relation fails")?;
    let setup = ee_setup(11, 7).map_err(err)?;
    let t = setup.curve().trace();
    let mut ee = 0;
    for (d1, d2, m) in [(2, 2, 1), (2, 1, 1), (2, 2, -1)] {
        let c = NSClassEE::new(d1, d2, EndomorphismElement::new(m, 0, t, 11));
        let out = ee_sieve(&setup, &c, 4, 150, 11, 4).map_err(err)?;
        let r = Restrictor::new(&setup, &out.system, 16);
        ensure(out.relations.iter().all(|rel| verify_relation(&r, rel, 4)), "EE relation fails")?;
        ee += out.relations.len();
    }
    ensure(ee > 0, "no EE relations")?;
    Ok(format!("{} JL and {ee} EE relations verified", jl.len()))
}

fn properties() -> Check {
    let reps = [
        build_kummer_with(43, 6, 3).map_err(err)?,
        build_artin_schreier(7, 1).map_err(err)?,
        build_torus_with(13, 7, 2, 8).map_err(err)?,
        build_elliptic_residue(11, 7).map_err(err)?.rep,
    ];
    for rep in &reps {
        let ring = rep.ring();
        for t in 0..100u64 {
            let mut rng = trial_rng(11, t);
            let a = ring.random(&mut rng);
            let b = ring.random(&mut rng);
            ensure(rep.apply_frobenius(&a, 1) == ring.pow(&a, rep.p as u128), format!("{:?} Frobenius at {a}", rep.kind))?;
            let (da, db) = (rep.degree(&a), rep.degree(&b));
            ensure(rep.degree(&rep.apply_frobenius(&a, 1)) == da, format!("{:?} degree moves at {a}", rep.kind))?;
            ensure(rep.degree(&ring.mul(&a, &b)) <= da + db, format!("{:?} degree of {a} * {b}", rep.kind))?;
        }
    }
    let r = build_elliptic_residue(11, 7).map_err(err)?;
    let ring = r.ring();
    let mut prod = vec![ring.one()];
    for t in &r.isogeny.kernel {
        let xt = translate_x(&ring, &r.params().fiber_y, t).map_err(err)?;
        let mut next = vec![ring.zero(); prod.len() + 1];
        for (k, c) in prod.iter().enumerate() {
            next[k + 1] = ring.add(&next[k + 1], c);
            next[k] = ring.sub(&next[k], &ring.mul(&xt, c));
        }
        prod = next;
    }
    let coeffs: Option<Vec<u64>> = prod.iter().map(|c| ring.to_base(c)).collect();
    ensure(coeffs.map(|c| Poly::new(11, c)) == Some(r.rep.modulus.clone()), "prod (X - x(b + t)) != A")?;
    Ok("4 kinds x 100 elements and pairs, fiber product = A".into())
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Check); 11] = [
        (1, "Kummer 43^6", Duration::from_secs(1), kummer_43),
        (2, "Kummer 370801^30", Duration::from_secs(1), kummer_370801),
        (3, "Artin-Schreier 7^7", Duration::from_secs(1), artin_schreier_7),
        (4, "torus 13^7", Duration::from_secs(1), torus_13),
        (5, "elliptic residue 11^7", Duration::from_secs(10), elliptic_11),
        (6, "orbit reduction", Duration::from_secs(60), orbit_reduction),
        (7, "end-to-end logs", Duration::from_secs(120), dlog),
        (8, "intersection arithmetic", Duration::from_secs(60), intersections),
        (9, "effective classes on E x E", Duration::from_secs(60), effectivity),
        (10, "sieve relation soundness", Duration::from_secs(300), soundness),
        (11, "property suites", Duration::from_secs(300), properties),
    ];
    let mut failed = 0;
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let res = res.and_then(|s| {
            if elapsed <= limit {
                Ok(s)
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match res {
            Ok(detail) => println!("PASS {n:>2} {name}: {detail} [{elapsed:.2?}]"),
            Err(e) => {
                failed += 1;
                println!("FAIL {n:>2} {name}: {e} [{elapsed:.2?}]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
