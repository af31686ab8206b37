//! `invsmooth`: build field presentations, check them, list Frobenius
//! orbits, compute discrete logarithms and run the two-dimensional sieves.
//! Every command writes one JSON document `{manifest, result}`; failures
//! print `{code, message, context}` on stderr.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use invsmooth::elliptic::{build_elliptic_residue, EllipticResidueRep, EndomorphismElement};
use invsmooth::galois::{build_artin_schreier, build_kummer, build_kummer_with, build_torus, build_torus_with, RepKind, Representation};
use invsmooth::index_calculus::{compute_log_table, individual_log, trial_rng, FactorBase, PipelineConfig};
use invsmooth::sieve2d::{ee_setup, ee_sieve, jl_setup, jl_sieve, NSClassEE};
use invsmooth::{Error, Field};

#[derive(Parser, Debug)]
#[command(name = "invsmooth", version, about = "Galois-invariant smoothness bases over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Write the JSON output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Kummer,
    ArtinSchreier,
    Torus,
    Elliptic,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a presentation of `F_{p^d}`.
    Build {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        p: u64,
        /// Extension degree; Artin-Schreier fixes it to `p`.
        #[arg(long)]
        d: Option<usize>,
        /// Kummer: the element `r` in `X^d - r`.
        #[arg(long)]
        r: Option<u64>,
        /// Artin-Schreier: the constant in `X^p - X - a`.
        #[arg(long, default_value_t = 1)]
        a: u64,
        /// Torus: the non-residue `D`.
        #[arg(long)]
        nonresidue: Option<u64>,
        /// Torus: coordinate of the point of order `d`.
        #[arg(long)]
        u_r: Option<u64>,
    },
    /// Load a presentation and run its invariant checks.
    Check {
        rep: PathBuf,
        /// Random elements in the Frobenius and degree samples.
        #[arg(long, default_value_t = 24)]
        samples: u64,
    },
    /// Frobenius orbits of the smoothness basis up to degree `kappa`.
    Orbits {
        rep: PathBuf,
        #[arg(long)]
        kappa: usize,
    },
    /// Log table of the factor base plus individual logs of random targets.
    Dlog {
        rep: PathBuf,
        #[arg(long)]
        kappa: usize,
        #[arg(long, default_value_t = 5)]
        targets: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Sieve on `P1 x P1` with the curves `y = f(x)` and `x = g(y)`.
    JlSieve {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        df: usize,
        #[arg(long)]
        dg: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        kappa: usize,
        #[arg(long, default_value_t = 1)]
        ux: usize,
        #[arg(long, default_value_t = 1)]
        uy: usize,
        #[arg(long, default_value_t = 1000)]
        budget: u64,
    },
    /// Sieve on `E x E` in the class `(d1, d2, m + n phi)`.
    EeSieve {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        d1: i64,
        #[arg(long)]
        d2: i64,
        #[arg(long, allow_hyphen_values = true)]
        xi_m: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        xi_n: i64,
        #[arg(long)]
        kappa: usize,
        #[arg(long, default_value_t = 200)]
        budget: u64,
    },
}

/// A failure with its exit code.
struct Failure {
    exit: u8,
    code: String,
    message: String,
    context: Value,
}

impl Failure {
    fn config(message: impl Into<String>, context: Value) -> Self {
        Failure { exit: 2, code: "InvalidConfig".into(), message: message.into(), context }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match &e {
            Error::NotPrime(_)
            | Error::DegreeNotCompatible { .. }
            | Error::EvenDegree(_)
            | Error::InvalidInput(_)
            | Error::InvalidPoint(_)
            | Error::NotFound(_)
            | Error::SearchFailed(_)
            | Error::InsufficientPoints { .. } => 2,
            Error::Timeout { .. } | Error::RankDeficient { .. } => 3,
            Error::DegenerateOrbit(_)
            | Error::InconsistentFrobenius
            | Error::FrobeniusMismatch(_)
            | Error::NonInvertible(_)
            | Error::VerificationFailed(_) => 4,
        };
        Failure { exit, code: e.code().into(), message: e.to_string(), context: Value::Null }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let obj = json!({"code": f.code, "message": f.message, "context": f.context});
            eprintln!("{obj}");
            ExitCode::from(f.exit)
        }
    }
}

fn run(cli: &Cli) -> Outcome<()> {
    if cli.workers == 0 {
        return Err(Failure::config("--workers must be at least 1", json!({"workers": 0})));
    }
    let (config, result) = match &cli.command {
        Command::Build { kind, p, d, r, a, nonresidue, u_r } => {
            let rep = cmd_build(*kind, *p, *d, *r, *a, *nonresidue, *u_r)?;
            let config = json!({
                "command": "build", "kind": rep.kind.name(), "p": p, "d": rep.d,
                "r": r, "a": a, "nonresidue": nonresidue, "u_r": u_r,
            });
            (config, rep.to_json())
        }
        Command::Check { rep, samples } => {
            let config = json!({"command": "check", "rep": rep, "samples": samples, "seed": cli.seed});
            (config, cmd_check(&load_rep(rep)?, *samples, cli.seed)?)
        }
        Command::Orbits { rep, kappa } => {
            let config = json!({"command": "orbits", "rep": rep, "kappa": kappa});
            let rep = load_rep(rep)?;
            let fb = FactorBase::build(&rep, *kappa)?;
            (config, fb.to_json())
        }
        Command::Dlog { rep, kappa, targets, budget } => {
            let config = json!({
                "command": "dlog", "rep": rep, "kappa": kappa, "targets": targets,
                "budget": budget, "seed": cli.seed, "workers": cli.workers,
            });
            (config, cmd_dlog(&load_rep(rep)?, *kappa, *targets, *budget, cli.seed, cli.workers)?)
        }
        Command::JlSieve { p, df, dg, d, kappa, ux, uy, budget } => {
            let config = json!({
                "command": "jl-sieve", "p": p, "df": df, "dg": dg, "d": d, "kappa": kappa,
                "ux": ux, "uy": uy, "budget": budget, "seed": cli.seed, "workers": cli.workers,
            });
            let setup = jl_setup(*p, *df, *dg, *d, cli.seed, 100_000)?;
            let rels = jl_sieve(&setup, *ux, *uy, *kappa, *budget, cli.seed, cli.workers)?;
            if let Some(bad) = rels.iter().position(|r| !r.verify(&setup)) {
                return Err(Error::VerificationFailed(format!("relation {bad}")).into());
            }
            let result = json!({
                "setup": setup.to_json(),
                "trials": budget,
                "relations": rels.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            });
            (config, result)
        }
        Command::EeSieve { p, d, d1, d2, xi_m, xi_n, kappa, budget } => {
            let config = json!({
                "command": "ee-sieve", "p": p, "d": d, "d1": d1, "d2": d2, "xi": [xi_m, xi_n],
                "kappa": kappa, "budget": budget, "seed": cli.seed, "workers": cli.workers,
            });
            (config, cmd_ee(*p, *d, *d1, *d2, *xi_m, *xi_n, *kappa, *budget, cli.seed, cli.workers)?)
        }
    };
    let manifest = json!({
        "tool": "invsmooth",
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "timestamp": SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
    });
    let doc = json!({"manifest": manifest, "result": result});
    let text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    match &cli.out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display()), json!({"out": path}))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_build(
    kind: Kind,
    p: u64,
    d: Option<usize>,
    r: Option<u64>,
    a: u64,
    nonresidue: Option<u64>,
    u_r: Option<u64>,
) -> Outcome<Representation> {
    let need_d = || d.ok_or_else(|| Failure::config("--d is required for this kind", json!({"kind": format!("{kind:?}")})));
    let rep = match kind {
        Kind::Kummer => match r {
            Some(r) => build_kummer_with(p, need_d()?, r)?,
            None => build_kummer(p, need_d()?)?,
        },
        Kind::ArtinSchreier => {
            if d.is_some_and(|d| d as u64 != p) {
                return Err(Failure::config("Artin-Schreier extensions have degree p", json!({"p": p, "d": d})));
            }
            build_artin_schreier(p, a)?
        }
        Kind::Torus => match (nonresidue, u_r) {
            (Some(nr), Some(u)) => build_torus_with(p, need_d()?, nr, u)?,
            (None, None) => build_torus(p, need_d()?)?,
            _ => return Err(Failure::config("--nonresidue and --u-r go together", Value::Null)),
        },
        Kind::Elliptic => build_elliptic_residue(p, need_d()?)?.rep,
    };
    Ok(rep)
}

fn load_rep(path: &PathBuf) -> Outcome<Representation> {
    let ctx = json!({"path": path});
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display()), ctx.clone()))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::config(format!("not JSON: {e}"), ctx.clone()))?;
    let body = v.get("result").unwrap_or(&v);
    Representation::from_json(body).map_err(|e| Failure { context: ctx, ..Failure::from(e) })
}

/// Irreducibility and structural Frobenius, curve data for elliptic
/// presentations, then Frobenius and degree invariance on random elements.
fn cmd_check(rep: &Representation, samples: u64, seed: u64) -> Outcome<Value> {
    rep.verify()?;
    if rep.kind == RepKind::EllipticResidue {
        EllipticResidueRep::from_rep(rep.clone())?;
    }
    let ring = rep.ring();
    let mut degree_checked = 0;
    for t in 0..samples {
        let z = ring.random(&mut trial_rng(seed, t));
        if rep.apply_frobenius(&z, 1) != ring.frobenius(&z) {
            return Err(Error::FrobeniusMismatch(format!("structural map disagrees at {z}")).into());
        }
        // The curve degree needs linear algebra per call; a smaller sample suffices.
        if rep.kind != RepKind::EllipticResidue || t < 6 {
            let sz = rep.apply_frobenius(&z, 1);
            if rep.degree(&z) != rep.degree(&sz) {
                return Err(Error::VerificationFailed(format!("degree changes under Frobenius at {z}")).into());
            }
            degree_checked += 1;
        }
    }
    Ok(json!({
        "passed": true,
        "kind": rep.kind.name(),
        "checks": {
            "irreducible": true,
            "frobenius_of_x": true,
            "frobenius_sample": samples,
            "degree_invariance_sample": degree_checked,
        },
    }))
}

fn cmd_dlog(rep: &Representation, kappa: usize, targets: u64, budget: u64, seed: u64, workers: usize) -> Outcome<Value> {
    let mut cfg = PipelineConfig::new(kappa, seed);
    cfg.workers = workers;
    cfg.max_trials = budget;
    let run = compute_log_table(rep, &cfg)?;
    let bad = run.table.verify(rep, &run.factor_base);
    if !bad.is_empty() {
        return Err(Error::VerificationFailed(format!("{} table entries fail", bad.len())).into());
    }
    let ring = rep.ring();
    let mut logs = Vec::new();
    for t in 0..targets {
        let mut rng = trial_rng(seed ^ 0x5eed_f00d, t);
        let z = loop {
            let z = ring.random(&mut rng);
            if !z.is_zero() {
                break z;
            }
        };
        let e = individual_log(rep, &run.factor_base, &run.table, &z, seed.wrapping_add(t), budget)?;
        logs.push(json!({"target": z, "log": e.to_string()}));
    }
    Ok(json!({
        "factor_base": run.factor_base.to_json(),
        "relations": run.relations.len(),
        "trials": run.trials.to_string(),
        "table": run.table.to_json(&run.factor_base),
        "individual_logs": logs,
    }))
}

#[allow(clippy::too_many_arguments)]
fn cmd_ee(
    p: u64,
    d: usize,
    d1: i64,
    d2: i64,
    xi_m: i64,
    xi_n: i64,
    kappa: usize,
    budget: u64,
    seed: u64,
    workers: usize,
) -> Outcome<Value> {
    if kappa == 0 || kappa >= d {
        return Err(Failure::config("need 1 <= kappa < d", json!({"kappa": kappa, "d": d})));
    }
    let setup = ee_setup(p, d)?;
    let t = setup.curve().trace();
    let class = NSClassEE::new(d1, d2, EndomorphismElement::new(xi_m, xi_n, t, p as i64));
    let out = ee_sieve(&setup, &class, kappa, budget, seed, workers)?;
    Ok(json!({
        "setup": setup.to_json(),
        "class": {"d1": d1, "d2": d2, "xi": [xi_m, xi_n], "expected_dimension": class.expected_dimension()},
        "kernel_dimension": out.system.kernel.len(),
        "zeros_imposed": out.system.zeros_used,
        "trials": out.trials,
        "relations": out.relations.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    }))
}
