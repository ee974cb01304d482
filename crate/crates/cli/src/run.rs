use jacobi_spectral::charpoly::{charpoly_floquet, charpoly_jacobi, charpoly_jacobi_exact};
use jacobi_spectral::exec::map_slice;
use jacobi_spectral::inverse::{
    amb3_solve, brute_force_isospectral_search, eliminate_spurious, recover_floquet_angle,
    verify_amb_dirichlet, verify_counterexample, verify_floquet_uniqueness, verify_known_boundary,
    OracleConfig, Verdict,
};
use jacobi_spectral::spectra::{eigenvalues_floquet, eigenvalues_jacobi_with, kth_eigenvalue};
use jacobi_spectral::{JacobiMatrix, Operator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{Command, RunConfig, TheoremArg};
use crate::error::CliError;

/// Random diagonal entries are drawn uniformly from this interval.
pub const RANDOM_RANGE: (f64, f64) = (-3.0, 3.0);

/// One finished run: the canonical JSON document and, for verification
/// commands, the overall verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub document: Value,
    pub verdict: Option<Verdict>,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            Some(Verdict::Violated) => 1,
            _ => 0,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

fn random_potential(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| rng.gen_range(RANDOM_RANGE.0..=RANDOM_RANGE.1))
        .collect()
}

/// Runs one configuration. The result fields sit at the top level of the
/// document next to `command`, `config` and (when there is one) `verdict`.
pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    let (result, verdict) = match config.command {
        Command::Charpoly => (charpoly(config)?, None),
        Command::Spectrum => (spectrum(config)?, None),
        Command::FloquetSpectrum => (floquet_spectrum(config)?, None),
        Command::Verify => verify(config)?,
        Command::SolveAmb3 => solve_amb3(config)?,
        Command::OracleScan => oracle_scan(config)?,
        Command::Counterexample => {
            let report = verify_counterexample()?;
            let verdict = report.verdict;
            (to_value(&report), Some(verdict))
        }
    };
    let mut document = match result {
        Value::Object(map) => map,
        other => {
            let mut map = Map::new();
            map.insert("result".into(), other);
            map
        }
    };
    document.insert("command".into(), to_value(&config.command));
    document.insert("config".into(), to_value(config));
    if let Some(v) = verdict {
        document.insert("verdict".into(), to_value(&v));
    }
    Ok(Outcome {
        document: Value::Object(document),
        verdict,
    })
}

fn build(config: &RunConfig) -> Result<Operator, CliError> {
    Ok(config.matrix_spec()?.build()?)
}

fn charpoly(config: &RunConfig) -> Result<Value, CliError> {
    Ok(match build(config)? {
        Operator::Jacobi(m) if config.exact => {
            let p = charpoly_jacobi_exact(&m);
            json!({"family": "jacobi", "exact": true, "degree": m.n(),
                   "polynomial": p.to_string(), "coefficients": p})
        }
        Operator::Jacobi(m) => {
            let p = charpoly_jacobi(&m);
            json!({"family": "jacobi", "exact": false, "degree": m.n(),
                   "polynomial": p.to_string(), "coefficients": p})
        }
        Operator::Floquet(m) => {
            let p = charpoly_floquet(&m);
            json!({"family": "floquet", "exact": false, "degree": m.n(),
                   "polynomial": p.to_string(), "coefficients": p,
                   "trace_constant": m.trace_constant()})
        }
    })
}

fn spectrum(config: &RunConfig) -> Result<Value, CliError> {
    Ok(match build(config)? {
        Operator::Jacobi(m) => {
            let s = eigenvalues_jacobi_with(&m, config.tol, config.exec)?;
            json!({"family": "jacobi", "n": m.n(), "min_gap": s.min_gap(), "spectrum": s})
        }
        Operator::Floquet(m) => {
            let s = eigenvalues_floquet(&m, config.tol)?;
            json!({"family": "floquet", "n": m.n(), "theta": m.theta(),
                   "multiplicities": s.multiplicities(config.tol_match), "spectrum": s})
        }
    })
}

fn floquet_spectrum(config: &RunConfig) -> Result<Value, CliError> {
    if config.theta.is_none() {
        return Err(CliError::usage("floquet-spectrum needs --theta"));
    }
    let Operator::Floquet(m) = build(config)? else {
        unreachable!("theta selects the Floquet family")
    };
    let s = eigenvalues_floquet(&m, config.tol)?;
    let mut out = json!({"family": "floquet", "n": m.n(), "theta": m.theta(),
                         "multiplicities": s.multiplicities(config.tol_match)});
    if m.diagonal().iter().all(|&v| v == 0.0) {
        let rec = recover_floquet_angle(&s, m.n(), config.tol_match)?;
        out["angle_recovery"] = to_value(&rec);
    }
    out["spectrum"] = to_value(&s);
    Ok(out)
}

fn verify(config: &RunConfig) -> Result<(Value, Option<Verdict>), CliError> {
    let theorem = config
        .theorem
        .ok_or_else(|| CliError::usage("verify needs --theorem"))?;
    if config.b.is_some() && config.trials.is_some_and(|t| t > 1) {
        return Err(CliError::usage("--trials > 1 draws random potentials; drop --b"));
    }
    let trials = config.trials.unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let tol = config.tol_match;

    // instances are drawn sequentially so the seed fixes them regardless of
    // how the runs are scheduled
    let reports: Vec<Result<(Value, Verdict), CliError>> = match theorem {
        TheoremArg::Amb1 => {
            let instances = potentials(config, &mut rng, trials, 1)?;
            map_slice(config.exec, &instances, |b| {
                let r = verify_amb_dirichlet(b, tol)?;
                Ok((to_value(&r), r.verdict))
            })
        }
        TheoremArg::Nzbc => {
            let instances: Vec<(f64, Vec<f64>)> = match &config.b {
                Some(b) if b.len() >= 2 => vec![(b[0], b[1..].to_vec())],
                Some(_) => return Err(CliError::usage("nzbc needs at least two values in --b")),
                None => {
                    let n = config.dimension()?;
                    if n < 2 {
                        return Err(CliError::usage("nzbc needs --n >= 2"));
                    }
                    (0..trials)
                        .map(|_| {
                            let v = config
                                .boundary_value
                                .unwrap_or_else(|| rng.gen_range(RANDOM_RANGE.0..=RANDOM_RANGE.1));
                            (v, random_potential(&mut rng, n - 1))
                        })
                        .collect()
                }
            };
            map_slice(config.exec, &instances, |(v, rest)| {
                let r = verify_known_boundary(*v, rest, tol)?;
                Ok((to_value(&r), r.verdict))
            })
        }
        TheoremArg::Amb2 => {
            let bs = potentials(config, &mut rng, trials, 3)?;
            let instances: Vec<(Vec<f64>, f64, f64)> = bs
                .into_iter()
                .map(|b| {
                    let theta = config.theta.unwrap_or_else(|| rng.gen_range(0.0..1.0));
                    (b, theta, config.phi.unwrap_or(theta))
                })
                .collect();
            map_slice(config.exec, &instances, |(b, theta, phi)| {
                let r = verify_floquet_uniqueness(b, *theta, *phi, tol)?;
                Ok((to_value(&r), r.verdict))
            })
        }
        TheoremArg::Amb3 => {
            let n = config.dimension()?;
            if n < 2 {
                return Err(CliError::usage("amb3 needs --n >= 2"));
            }
            let ks: Vec<usize> = match config.k {
                Some(k) => vec![k],
                None => (1..n).collect(),
            };
            map_slice(config.exec, &ks, |&k| {
                let r = eliminate_spurious(n, k, tol)?;
                Ok((to_value(&r), r.verdict))
            })
        }
        TheoremArg::Counterexample => {
            let r = verify_counterexample()?;
            vec![Ok((to_value(&r), r.verdict))]
        }
    };
    let reports = reports.into_iter().collect::<Result<Vec<_>, _>>()?;
    let confirmed = reports.iter().filter(|(_, v)| v.is_confirmed()).count();
    let violated = reports.len() - confirmed;
    let verdict = Verdict::from_ok(violated == 0);
    let values: Vec<Value> = reports.into_iter().map(|(v, _)| v).collect();
    Ok((
        json!({"theorem": theorem, "runs": values.len(), "confirmed": confirmed,
               "violated": violated, "reports": values}),
        Some(verdict),
    ))
}

/// The potential from `--b`, or `trials` random ones of size `--n`.
fn potentials(
    config: &RunConfig,
    rng: &mut ChaCha8Rng,
    trials: usize,
    min_n: usize,
) -> Result<Vec<Vec<f64>>, CliError> {
    if let Some(b) = &config.b {
        return Ok(vec![b.clone()]);
    }
    let n = config.dimension()?;
    if n < min_n {
        return Err(CliError::usage(format!("this theorem needs --n >= {min_n}")));
    }
    Ok((0..trials).map(|_| random_potential(rng, n)).collect())
}

fn solve_amb3(config: &RunConfig) -> Result<(Value, Option<Verdict>), CliError> {
    let n = config.dimension()?;
    let k = config.require_k()?;
    let (lk, lk1) = match config.eigenvalues {
        Some(pair) => pair,
        None => {
            if k == 0 || k >= n {
                return Err(CliError::usage(format!("--k must lie in 1..{n}")));
            }
            let f = JacobiMatrix::free(n)?;
            (kth_eigenvalue(&f, k - 1, config.tol)?, kth_eigenvalue(&f, k, config.tol)?)
        }
    };
    let solution = amb3_solve(n, k, lk, lk1, config.tol_match)?;
    let verdict = solution.elimination.verdict;
    Ok((to_value(&solution), Some(verdict)))
}

fn oracle_scan(config: &RunConfig) -> Result<(Value, Option<Verdict>), CliError> {
    let mut oracle = OracleConfig::new(config.dimension()?);
    if let Some(grid) = config.grid {
        oracle.grid = grid;
    }
    oracle.match_tol = config.tol_match;
    oracle.exec = config.exec;
    let scan = brute_force_isospectral_search(&oracle)?;
    let verdict = Verdict::from_ok(scan.is_unique());
    Ok((to_value(&scan), Some(verdict)))
}
