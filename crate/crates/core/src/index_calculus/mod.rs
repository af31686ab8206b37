//! Index calculus over any presentation: an orbit-reduced factor base,
//! relations from smooth powers of a generator, linear algebra modulo the
//! prime powers of `p^d - 1`, and individual logarithms.
//!
//! Unknowns are the logs of one representative per Frobenius orbit and of
//! a primitive root `g0` of `F_p`; other orbit members are expressed
//! through the shift bookkeeping of [`crate::galois::Orbit`].

mod factor_base;
mod relations;

pub use factor_base::{rational_reconstruction, FactorBase, PrimeFieldLog, SmoothDecomposition};
pub use relations::{
    collect_from, collect_relations, find_generator, individual_log, trial_rng, CollectConfig, Relation,
    RelationBatch,
};

use std::collections::BTreeMap;

use rand::Rng;
use serde_json::{json, Value};

use crate::arith::{add_mod, crt, factorize, mul_mod};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::galois::Representation;
use crate::linalg::solve_mod_prime_power;
use crate::poly::Poly;

/// Logs of the orbit representatives and of `g0`, base `base_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogTable {
    pub base_g: Poly,
    /// `p^d - 1`.
    pub n: u64,
    /// Indexed like `FactorBase::orbits`.
    pub logs: Vec<u64>,
    pub g0: u64,
    pub log_g0: u64,
}

impl LogTable {
    /// Log of any member of the factor base, through its orbit.
    pub fn member_log(&self, fb: &FactorBase, orbit: usize, member: usize) -> u64 {
        let n = self.n;
        let (a, b, c) = fb.member_coefficients(orbit, member);
        let mut out = mul_mod(a, self.logs[orbit], n);
        if let Some(t) = fb.tau_column {
            out = add_mod(out, mul_mod(b, self.logs[t], n), n);
        }
        add_mod(out, mul_mod(c, self.log_g0, n), n)
    }

    /// `g^log(v) = v` for every representative and for `g0`.
    pub fn verify(&self, rep: &Representation, fb: &FactorBase) -> Vec<usize> {
        let ring = rep.ring();
        let mut bad: Vec<usize> = fb
            .orbits
            .iter()
            .enumerate()
            .filter(|(i, o)| ring.pow(&self.base_g, self.logs[*i] as u128) != o.representative().value(&rep.modulus))
            .map(|(i, _)| i)
            .collect();
        if ring.pow(&self.base_g, self.log_g0 as u128) != ring.from_u64(self.g0) {
            bad.push(fb.const_column());
        }
        bad
    }

    pub fn to_json(&self, fb: &FactorBase) -> Value {
        let mut logs = BTreeMap::new();
        for (o, l) in fb.orbits.iter().zip(&self.logs) {
            let key = match o.representative().poly() {
                Some(q) => q.pretty(),
                None => "infinity".to_string(),
            };
            logs.insert(key, Value::String(l.to_string()));
        }
        json!({
            "base_g": self.base_g,
            "N": self.n.to_string(),
            "g0": self.g0,
            "log_g0": self.log_g0.to_string(),
            "logs": logs,
        })
    }
}

/// Solve the relations together with the free relations of `fb` modulo
/// each prime power of `p^d - 1`, recombine by CRT and verify every log by
/// exponentiation.
pub fn solve_log_system(rep: &Representation, fb: &FactorBase, g: &Poly, relations: &[Relation]) -> Result<LogTable> {
    let (table, bad) = solve_unchecked(fb, g, relations, rep);
    if !bad.is_empty() {
        return Err(Error::RankDeficient { missing: bad.len() });
    }
    Ok(table)
}

/// The CRT-combined solution and the columns whose logs fail verification.
fn solve_unchecked(fb: &FactorBase, g: &Poly, relations: &[Relation], rep: &Representation) -> (LogTable, Vec<usize>) {
    let n = fb.group_order;
    let ncols = fb.columns();
    let all: Vec<Relation> = relations.iter().cloned().chain(fb.free_relations()).collect();
    let mut rows = Vec::with_capacity(all.len());
    let mut rhs = Vec::with_capacity(all.len());
    for r in &all {
        let mut row = vec![0u64; ncols];
        for &(c, e) in &r.columns {
            row[c] = add_mod(row[c], e, n);
        }
        row[fb.const_column()] = r.const_exp;
        rows.push(row);
        rhs.push(r.e);
    }
    let mut parts: Vec<Vec<(u64, u64)>> = vec![Vec::new(); ncols];
    for (l, e) in factorize(n) {
        let sol = solve_mod_prime_power(&rows, &rhs, l, e);
        let m = l.pow(e);
        for (c, v) in sol.values.into_iter().enumerate() {
            parts[c].push((v, m));
        }
    }
    let mut vals: Vec<u64> = parts.iter().map(|ps| crt(ps).0 % n).collect();
    let log_g0 = vals.pop().unwrap();
    let table = LogTable { base_g: g.clone(), n, logs: vals, g0: fb.constant.base(), log_g0 };
    let bad = table.verify(rep, fb);
    (table, bad)
}

/// Options for [`compute_log_table`].
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub kappa: usize,
    pub seed: u64,
    pub workers: usize,
    /// Relations collected beyond the number of unknowns.
    pub margin: usize,
    pub max_trials: u64,
    /// Further collection rounds after a rank-deficient solve.
    pub extra_rounds: usize,
}

impl PipelineConfig {
    pub fn new(kappa: usize, seed: u64) -> Self {
        PipelineConfig { kappa, seed, workers: 1, margin: 10, max_trials: 1_000_000, extra_rounds: 8 }
    }
}

/// Everything produced by a full run.
#[derive(Clone, Debug)]
pub struct LogComputation {
    pub factor_base: FactorBase,
    pub generator: Poly,
    pub relations: Vec<Relation>,
    pub table: LogTable,
    pub trials: u64,
}

/// Build the factor base, collect relations and solve. When some logs
/// stay undetermined, relations through the missing columns are added by
/// randomising `value * g^k` until smooth, together with further generic
/// relations.
pub fn compute_log_table(rep: &Representation, cfg: &PipelineConfig) -> Result<LogComputation> {
    let fb = FactorBase::build(rep, cfg.kappa)?;
    let g = find_generator(rep)?;
    let mut ccfg = CollectConfig {
        target: fb.columns() + cfg.margin,
        max_trials: cfg.max_trials,
        seed: cfg.seed,
        workers: cfg.workers,
    };
    let batch = collect_relations(rep, &fb, &g, &ccfg)?;
    let mut relations = batch.relations;
    let mut trials = batch.trials;
    if batch.timed_out {
        return Err(Error::Timeout { trials, what: format!("{} of {} relations", relations.len(), ccfg.target) });
    }
    for round in 0..=cfg.extra_rounds {
        let (table, bad) = solve_unchecked(&fb, &g, &relations, rep);
        if bad.is_empty() {
            return Ok(LogComputation { factor_base: fb, generator: g, relations, table, trials });
        }
        if round == cfg.extra_rounds {
            return Err(Error::RankDeficient { missing: bad.len() });
        }
        let targets: Vec<Poly> = bad
            .iter()
            .map(|&c| {
                if c == fb.const_column() {
                    Poly::constant(fb.p, fb.constant.base())
                } else {
                    fb.orbits[c].representative().value(&rep.modulus)
                }
            })
            .collect();
        let tseed = cfg.seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(round as u64 + 1));
        relations.extend(targeted_relations(rep, &fb, &g, &targets, 2, tseed, cfg.max_trials)?);
        ccfg.target = cfg.margin.max(fb.columns() / 4);
        let more = collect_from(rep, &fb, &g, &ccfg, trials)?;
        trials += more.trials;
        relations.extend(more.relations);
    }
    unreachable!()
}

/// For each target `v`, `count` relations `g^k = v^(-1) * (smooth part)`
/// obtained from smooth values of `v g^k`.
fn targeted_relations(
    rep: &Representation,
    fb: &FactorBase,
    g: &Poly,
    targets: &[Poly],
    count: usize,
    seed: u64,
    max_trials: u64,
) -> Result<Vec<Relation>> {
    let ring = rep.ring();
    let n = fb.group_order;
    let pm1 = fb.p - 1;
    let mut out = Vec::new();
    for (i, v) in targets.iter().enumerate() {
        let own = fb.smooth_factor(rep, v).ok_or_else(|| Error::InvalidInput(format!("{v} is not smooth")))?;
        let mut found = 0;
        let mut t = 0u64;
        while found < count {
            if t == max_trials {
                return Err(Error::Timeout { trials: t, what: format!("relations through {v}") });
            }
            let k = trial_rng(seed.wrapping_add(i as u64), t).gen_range(1..n);
            t += 1;
            let z = ring.mul(v, &ring.pow(g, k as u128));
            let Some(s) = fb.smooth_factor(rep, &z) else { continue };
            let mut cols = s.columns;
            for &(c, e) in &own.columns {
                cols.push((c, (n - e) % n));
            }
            let const_exp = (s.const_exp + pm1 - own.const_exp % pm1.max(1)) % pm1.max(1);
            let mut r = SmoothDecomposition { columns: merge(cols, n), const_exp }.into_relation(k);
            r.columns.retain(|&(_, e)| e != 0);
            out.push(r);
            found += 1;
        }
    }
    Ok(out)
}

fn merge(mut cols: Vec<(usize, u64)>, n: u64) -> Vec<(usize, u64)> {
    cols.sort();
    let mut out: Vec<(usize, u64)> = Vec::new();
    for (c, e) in cols {
        match out.last_mut() {
            Some((lc, le)) if *lc == c => *le = add_mod(*le, e, n),
            _ => out.push((c, e)),
        }
    }
    out
}
