use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::galois::Representation;
use crate::index_calculus::FactorBase;
use crate::poly::Poly;

/// `g^e = prod rep_i^{columns_i} * g0^{const_exp}` in `L^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub e: u64,
    pub columns: Vec<(usize, u64)>,
    /// Exponent of `g0`; only its class modulo `p - 1` matters.
    pub const_exp: u64,
}

impl Relation {
    /// Evaluate both sides in `L`.
    pub fn verify(&self, rep: &Representation, fb: &FactorBase, g: &Poly) -> bool {
        let ring = rep.ring();
        let mut rhs = ring.from_u64(pow_mod(fb.constant.base(), self.const_exp as u128, fb.p));
        for &(c, e) in &self.columns {
            let v = fb.orbits[c].representative().value(&rep.modulus);
            rhs = ring.mul(&rhs, &ring.pow(&v, e as u128));
        }
        ring.pow(g, self.e as u128) == rhs
    }

    pub fn to_json(&self) -> Value {
        json!({
            "e": self.e.to_string(),
            "columns": self.columns.iter().map(|(c, e)| json!([c, e.to_string()])).collect::<Vec<_>>(),
            "const_exp": self.const_exp.to_string(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Relation> {
        let bad = || Error::InvalidInput(format!("malformed relation {v}"));
        let num = |x: &Value| -> Option<u64> { x.as_u64().or_else(|| x.as_str()?.parse().ok()) };
        let e = v.get("e").and_then(num).ok_or_else(bad)?;
        let const_exp = v.get("const_exp").and_then(num).ok_or_else(bad)?;
        let columns = v
            .get("columns")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|c| match c.as_array().map(|a| a.as_slice()) {
                Some([i, x]) => Some((i.as_u64()? as usize, num(x)?)),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        Ok(Relation { e, columns, const_exp })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectConfig {
    pub target: usize,
    pub max_trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl CollectConfig {
    pub fn new(target: usize, seed: u64) -> Self {
        CollectConfig { target, max_trials: 1_000_000, seed, workers: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct RelationBatch {
    pub relations: Vec<Relation>,
    pub trials: u64,
    pub timed_out: bool,
}

/// The RNG for trial `t`: one ChaCha stream per trial, so any split of the
/// trials across workers sees the same randomness.
pub fn trial_rng(seed: u64, t: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t);
    rng
}

/// A generator of `L^*`: the first `X + c`, then further elements in index
/// order, whose order is `p^d - 1`.
pub fn find_generator(rep: &Representation) -> Result<Poly> {
    let ring = rep.ring();
    let n = rep
        .group_order()
        .ok_or_else(|| Error::InvalidInput("p^d - 1 does not fit in 64 bits".into()))?;
    let primes: Vec<u64> = crate::arith::factorize(n).into_iter().map(|(l, _)| l).collect();
    let start = if rep.d > 1 { rep.p } else { 1 };
    for i in start.. {
        let z = ring.element_at(i);
        if z.is_zero() {
            continue;
        }
        if primes.iter().all(|&l| !ring.pow(&z, (n / l) as u128).is_one()) {
            return Ok(z);
        }
    }
    unreachable!("L^* is cyclic")
}

/// Random powers `g^e` that are smooth over `fb`, in trial order.
pub fn collect_relations(rep: &Representation, fb: &FactorBase, g: &Poly, cfg: &CollectConfig) -> Result<RelationBatch> {
    collect_from(rep, fb, g, cfg, 0)
}

/// As [`collect_relations`], starting at trial index `first_trial`.
pub fn collect_from(
    rep: &Representation,
    fb: &FactorBase,
    g: &Poly,
    cfg: &CollectConfig,
    first_trial: u64,
) -> Result<RelationBatch> {
    let ring = rep.ring();
    let n = fb.group_order;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    let chunk = 64 * cfg.workers.max(1) as u64;
    let mut out = Vec::new();
    let mut t = first_trial;
    let end = first_trial.saturating_add(cfg.max_trials);
    while out.len() < cfg.target && t < end {
        let hi = (t + chunk).min(end);
        let found: Vec<(u64, Relation)> = pool.install(|| {
            (t..hi)
                .into_par_iter()
                .filter_map(|trial| {
                    let e = trial_rng(cfg.seed, trial).gen_range(1..n);
                    let z = ring.pow(g, e as u128);
                    fb.smooth_factor(rep, &z).map(|s| (trial, s.into_relation(e)))
                })
                .collect()
        });
        for (trial, r) in found {
            if out.len() == cfg.target {
                t = trial;
                break;
            }
            out.push(r);
            t = trial + 1;
        }
        if out.len() < cfg.target {
            t = hi;
        }
    }
    Ok(RelationBatch { timed_out: out.len() < cfg.target, trials: t - first_trial, relations: out })
}

/// `e` with `g^e = target`, by randomising `target g^k` until smooth.
pub fn individual_log(
    rep: &Representation,
    fb: &FactorBase,
    table: &super::LogTable,
    target: &Poly,
    seed: u64,
    max_trials: u64,
) -> Result<u64> {
    let ring = rep.ring();
    let target = target.rem(&rep.modulus);
    if target.is_zero() {
        return Err(Error::InvalidInput("zero has no logarithm".into()));
    }
    let n = fb.group_order;
    for t in 0..max_trials {
        let k = if t == 0 { 0 } else { trial_rng(seed, t).gen_range(1..n) };
        let z = ring.mul(&target, &ring.pow(&table.base_g, k as u128));
        let Some(s) = fb.smooth_factor(rep, &z) else { continue };
        let mut log = mul_mod(s.const_exp, table.log_g0, n);
        for &(c, e) in &s.columns {
            log = (log + mul_mod(e, table.logs[c], n)) % n;
        }
        let log = (log + n - k) % n;
        if ring.pow(&table.base_g, log as u128) == target {
            return Ok(log);
        }
        return Err(Error::VerificationFailed(format!("log of {target}")));
    }
    Err(Error::Timeout { trials: max_trials, what: "individual logarithm".into() })
}
