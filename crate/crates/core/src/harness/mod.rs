//! Seeded verification of every inequality chain in the crate.
//!
//! A *case* samples random instances (numbers, matrices, weights, depths) and
//! turns each into one or more chains. [`run_case`] checks every link of every
//! chain and aggregates the slacks into a [`ChainReport`]. Each instance owns
//! an RNG stream derived from `(seed, case, index, attempt)`, so reports are
//! bitwise reproducible regardless of thread scheduling.

mod cases;
mod report;
mod sweep;

use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use cases::{find_case, registry, CaseSpec, Family, Sampler};
pub use report::{csv_string, fmt_f64, summary, sweep_csv_string, write_csv, write_repro};
pub use sweep::{depth_monotonicity, parse_grid, sweep, MonotonicityReport, SweepParam, SweepRow};

use crate::error::{Error, Result};
use crate::linalg::random::InstanceRng;
use crate::linalg::HermitianMatrix;
use crate::matrix_means::OperatorChain;
use crate::scalar::{ScalarChain, Weight, MAX_DEPTH};

/// Default relative tolerance for scalar chains.
pub const SCALAR_TOL: f64 = 1e-9;
/// Default relative tolerance for operator chains.
pub const OPERATOR_TOL: f64 = 1e-8;
/// Resampling budget per case, as a multiple of the requested instances.
pub const SKIP_FACTOR: usize = 100;
/// Default master seed.
pub const DEFAULT_SEED: u64 = 20_240_601;
/// Largest matrix dimension a configuration may request.
pub const MAX_DIM: usize = 64;
/// Counterexamples kept per report.
pub const MAX_COUNTEREXAMPLES: usize = 8;

/// Sampling parameters for one case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseConfig {
    pub case: String,
    pub instances: usize,
    /// Inclusive matrix dimension range; ignored by scalar cases.
    pub dim: (usize, usize),
    pub cond_max: f64,
    /// `ν` range on the branch `ν ≥ 0`, if the case samples it.
    pub nu_nonneg: Option<(f64, f64)>,
    /// `ν` range on the branch `ν ≤ −1`, if the case samples it.
    pub nu_neg: Option<(f64, f64)>,
    /// Inclusive refinement depth range.
    pub depth: (u32, u32),
    pub seed: u64,
    pub rel_tol: f64,
    /// Replaces the sampled `ν` (the draw still happens, so other parameters are unchanged).
    pub fixed_nu: Option<f64>,
    /// Replaces the sampled depth.
    pub fixed_depth: Option<u32>,
}

impl CaseConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(format!("case `{}`: {msg}", self.case)));
        if self.instances == 0 {
            return bad("instance count must be at least 1".into());
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return bad(format!("rel_tol must be positive, got {}", self.rel_tol));
        }
        let (lo, hi) = self.dim;
        if lo == 0 || lo > hi || hi > MAX_DIM {
            return bad(format!("dimension range [{lo}, {hi}] must satisfy 1 ≤ lo ≤ hi ≤ {MAX_DIM}"));
        }
        if !(self.cond_max >= 1.0 && self.cond_max.is_finite()) {
            return bad(format!("condition cap must be ≥ 1, got {}", self.cond_max));
        }
        if let Some((lo, hi)) = self.nu_nonneg {
            if !(0.0 <= lo && lo <= hi && hi.is_finite()) {
                return bad(format!("ν range [{lo}, {hi}] must satisfy 0 ≤ lo ≤ hi"));
            }
        }
        if let Some((lo, hi)) = self.nu_neg {
            if !(lo.is_finite() && lo <= hi && hi <= -1.0) {
                return bad(format!("ν range [{lo}, {hi}] must satisfy lo ≤ hi ≤ −1"));
            }
        }
        let (dlo, dhi) = self.depth;
        if dlo == 0 || dlo > dhi || dhi > MAX_DEPTH {
            return bad(format!("depth range [{dlo}, {dhi}] must satisfy 1 ≤ lo ≤ hi ≤ {MAX_DEPTH}"));
        }
        if let Some(nu) = self.fixed_nu {
            let w = Weight::new(nu).map_err(|e| Error::Config(format!("case `{}`: {e}", self.case)))?;
            let allowed = match w.domain() {
                crate::scalar::WeightDomain::NonNegative => self.nu_nonneg.is_some(),
                crate::scalar::WeightDomain::AtMostMinusOne => self.nu_neg.is_some(),
            };
            if !allowed {
                return bad(format!("ν = {nu} lies outside the weight domains this case samples"));
            }
        }
        if let Some(d) = self.fixed_depth {
            if d == 0 || d > MAX_DEPTH {
                return bad(format!("depth {d} must lie in 1..={MAX_DEPTH}"));
            }
        }
        Ok(())
    }
}

/// A chain produced by a case.
#[derive(Debug, Clone, PartialEq)]
pub enum Chain {
    Scalar(ScalarChain),
    Operator(OperatorChain),
}

impl Chain {
    pub fn labels(&self) -> &[&'static str] {
        match self {
            Chain::Scalar(c) => c.labels(),
            Chain::Operator(c) => c.labels(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels().len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels().is_empty()
    }
}

impl From<ScalarChain> for Chain {
    fn from(c: ScalarChain) -> Self {
        Chain::Scalar(c)
    }
}

impl From<OperatorChain> for Chain {
    fn from(c: OperatorChain) -> Self {
        Chain::Operator(c)
    }
}

/// Positions of the classical bound, its refinement and the target within one
/// chain of an instance. The refinement moves from `base` towards `target` as
/// the depth grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Refinement {
    pub chain: usize,
    pub base: usize,
    pub refined: usize,
    pub target: usize,
}

/// One sampled instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub chains: Vec<Chain>,
    pub refinement: Option<Refinement>,
    /// Everything needed to rebuild the instance (weights, depth, matrices).
    pub params: serde_json::Value,
}

/// Margin of one link `v_i ≤ v_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkSlack {
    pub from: &'static str,
    pub to: &'static str,
    /// `v_{i+1} − v_i` for numbers; smallest eigenvalue of `Y − X` for matrices.
    pub slack: f64,
    /// `max(1, |values|)` for numbers; `max(1, ‖X‖₂, ‖Y‖₂)` for matrices.
    pub scale: f64,
}

impl LinkSlack {
    pub fn normalized(&self) -> f64 {
        self.slack / self.scale
    }

    pub fn holds(&self, rel_tol: f64) -> bool {
        self.slack >= -rel_tol * self.scale
    }
}

/// Slack of every consecutive link.
pub fn check_chain(chain: &Chain, rel_tol: f64) -> Result<Vec<LinkSlack>> {
    if !(rel_tol > 0.0) {
        return Err(Error::Config(format!("rel_tol must be positive, got {rel_tol}")));
    }
    let labels = chain.labels();
    match chain {
        Chain::Scalar(c) => {
            let scale = c.scale();
            Ok(c.values()
                .windows(2)
                .zip(labels.windows(2))
                .map(|(v, l)| LinkSlack { from: l[0], to: l[1], slack: v[1] - v[0], scale })
                .collect())
        }
        Chain::Operator(c) => c
            .verify(rel_tol)?
            .into_iter()
            .zip(labels.windows(2))
            .map(|(v, l)| {
                Ok(LinkSlack { from: l[0], to: l[1], slack: v.witness_eigenvalue, scale: v.tolerance_used / rel_tol })
            })
            .collect(),
    }
}

/// Normalized distance between the ends of a chain: `(v_last − v_first)/scale`,
/// or `λ_max(M_last − M_first)/max(1, ‖M_first‖₂, ‖M_last‖₂)`.
pub fn end_to_end_gap(chain: &Chain) -> Result<f64> {
    match chain {
        Chain::Scalar(c) => Ok((c.last() - c.first()) / c.scale()),
        Chain::Operator(c) => {
            let m = c.matrices();
            let (first, last) = (&m[0], &m[m.len() - 1]);
            let top = last.sub(first)?.eigh()?.max();
            Ok(top / operator_scale(first, last)?)
        }
    }
}

pub(crate) fn operator_scale(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<f64> {
    Ok(1f64.max(x.spectral_norm()?).max(y.spectral_norm()?))
}

/// Quantiles of the normalized slack of one link across instances.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkQuantiles {
    pub link: String,
    pub count: usize,
    pub min: f64,
    pub q10: f64,
    pub median: f64,
    pub q90: f64,
    pub max: f64,
}

impl LinkQuantiles {
    fn from_samples(link: String, mut v: Vec<f64>) -> Self {
        v.sort_by(f64::total_cmp);
        let q = |p: f64| v[((p * (v.len() - 1) as f64).round() as usize).min(v.len() - 1)];
        Self { link, count: v.len(), min: v[0], q10: q(0.1), median: q(0.5), q90: q(0.9), max: v[v.len() - 1] }
    }
}

/// A failing instance, replayable from `(seed, case, index, attempt)` or from `params`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub attempt: usize,
    pub params: serde_json::Value,
    /// Normalized slacks of every link, chain by chain.
    pub slacks: Vec<Vec<f64>>,
    /// Set when the instance raised an error instead of producing chains.
    pub message: Option<String>,
}

/// Aggregate outcome of one case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub case: String,
    pub family: Family,
    pub instances: usize,
    /// Draws rejected by a hypothesis check and resampled.
    pub skipped: usize,
    pub failures: usize,
    /// Most negative normalized link slack seen.
    pub min_slack: f64,
    /// Largest normalized end-to-end gap.
    pub max_gap: f64,
    pub links: Vec<LinkQuantiles>,
    pub counterexamples: Vec<Counterexample>,
    pub seed: u64,
    pub rel_tol: f64,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// RNG stream of one attempt at one instance.
pub fn instance_rng(seed: u64, case: &str, index: usize, attempt: usize) -> InstanceRng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update((case.len() as u64).to_le_bytes());
    h.update(case.as_bytes());
    h.update((index as u64).to_le_bytes());
    h.update((attempt as u64).to_le_bytes());
    InstanceRng::from_seed(h.finalize().into())
}

/// A sampled instance together with the attempt that produced it.
#[derive(Debug, Clone)]
pub struct Drawn {
    pub instance: Instance,
    pub index: usize,
    pub attempt: usize,
    pub skipped: usize,
}

/// Failure of a single instance: either every attempt hit an unmet hypothesis
/// or sampling raised a genuine error.
enum DrawError {
    Exhausted,
    Failed { attempt: usize, skipped: usize, params: serde_json::Value, error: Error },
}

fn draw(spec: &CaseSpec, cfg: &CaseConfig, index: usize) -> std::result::Result<Drawn, DrawError> {
    let budget = SKIP_FACTOR * cfg.instances;
    let mut skipped = 0;
    for attempt in 0..=budget {
        let mut sampler = Sampler::new(instance_rng(cfg.seed, &cfg.case, index, attempt), cfg);
        match spec.sample(&mut sampler) {
            Ok(instance) => return Ok(Drawn { instance, index, attempt, skipped }),
            Err(Error::Hypothesis(_)) => skipped += 1,
            Err(error) => return Err(DrawError::Failed { attempt, skipped, params: sampler.into_params(), error }),
        }
    }
    Err(DrawError::Exhausted)
}

/// Rebuilds instance `index` of a configuration.
pub fn replay_instance(cfg: &CaseConfig, index: usize) -> Result<Drawn> {
    cfg.validate()?;
    let spec = find_case(&cfg.case)?;
    draw(spec, cfg, index).map_err(|e| match e {
        DrawError::Exhausted => Error::TooManySkips { case: cfg.case.clone(), limit: SKIP_FACTOR * cfg.instances },
        DrawError::Failed { error, .. } => error,
    })
}

struct Outcome {
    skipped: usize,
    failed: bool,
    /// `(link key, normalized slack)`
    links: Vec<(String, f64)>,
    gap: f64,
    counterexample: Option<Counterexample>,
}

fn link_key(chain: usize, chains: usize, s: &LinkSlack) -> String {
    if chains > 1 {
        format!("c{chain}:{}->{}", s.from, s.to)
    } else {
        format!("{}->{}", s.from, s.to)
    }
}

fn evaluate(d: &Drawn, rel_tol: f64) -> Result<Outcome> {
    let chains = &d.instance.chains;
    let mut links = Vec::new();
    let mut slacks = Vec::with_capacity(chains.len());
    let mut failed = false;
    let mut gap = f64::NEG_INFINITY;
    for (k, chain) in chains.iter().enumerate() {
        let checked = check_chain(chain, rel_tol)?;
        failed |= checked.iter().any(|s| !s.holds(rel_tol));
        slacks.push(checked.iter().map(LinkSlack::normalized).collect());
        links.extend(checked.iter().map(|s| (link_key(k, chains.len(), s), s.normalized())));
        gap = gap.max(end_to_end_gap(chain)?);
    }
    let counterexample = failed.then(|| Counterexample {
        index: d.index,
        attempt: d.attempt,
        params: d.instance.params.clone(),
        slacks,
        message: None,
    });
    Ok(Outcome { skipped: d.skipped, failed, links, gap, counterexample })
}

/// Runs one registered case.
pub fn run_case(name: &str, cfg: &CaseConfig) -> Result<ChainReport> {
    let spec = find_case(name)?;
    if cfg.case != name {
        return Err(Error::Config(format!("configuration is for `{}`, not `{name}`", cfg.case)));
    }
    cfg.validate()?;
    let limit = SKIP_FACTOR * cfg.instances;
    let outcomes: Vec<Result<Outcome>> = (0..cfg.instances)
        .into_par_iter()
        .map(|index| match draw(spec, cfg, index) {
            // An evaluation error on a sampled instance is a failure, not a skip.
            Ok(d) => Ok(evaluate(&d, cfg.rel_tol)
                .unwrap_or_else(|e| errored(d.index, d.attempt, d.skipped, d.instance.params.clone(), &e))),
            Err(DrawError::Exhausted) => Err(Error::TooManySkips { case: cfg.case.clone(), limit }),
            Err(DrawError::Failed { attempt, skipped, params, error }) => {
                Ok(errored(index, attempt, skipped, params, &error))
            }
        })
        .collect();

    let mut report = ChainReport {
        case: cfg.case.clone(),
        family: spec.family,
        instances: cfg.instances,
        skipped: 0,
        failures: 0,
        min_slack: f64::INFINITY,
        max_gap: f64::NEG_INFINITY,
        links: Vec::new(),
        counterexamples: Vec::new(),
        seed: cfg.seed,
        rel_tol: cfg.rel_tol,
    };
    let mut per_link: Vec<(String, Vec<f64>)> = Vec::new();
    for outcome in outcomes {
        let o = outcome?;
        report.skipped += o.skipped;
        report.failures += usize::from(o.failed);
        report.max_gap = report.max_gap.max(o.gap);
        for (key, slack) in o.links {
            report.min_slack = report.min_slack.min(slack);
            match per_link.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.push(slack),
                None => per_link.push((key, vec![slack])),
            }
        }
        if let Some(c) = o.counterexample {
            if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
                report.counterexamples.push(c);
            }
        }
    }
    if report.skipped > limit {
        return Err(Error::TooManySkips { case: cfg.case.clone(), limit });
    }
    report.links = per_link.into_iter().map(|(k, v)| LinkQuantiles::from_samples(k, v)).collect();
    Ok(report)
}

fn errored(index: usize, attempt: usize, skipped: usize, params: serde_json::Value, e: &Error) -> Outcome {
    Outcome {
        skipped,
        failed: true,
        links: Vec::new(),
        gap: f64::NEG_INFINITY,
        counterexample: Some(Counterexample {
            index,
            attempt,
            params,
            slacks: Vec::new(),
            message: Some(e.to_string()),
        }),
    }
}

/// Runs a case at its default configuration.
pub fn run_default(name: &str) -> Result<ChainReport> {
    run_case(name, &find_case(name)?.default_config())
}

/// Overrides applied to every case of a suite run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SuiteOverrides {
    /// Cases to run; empty means every registered case.
    pub cases: Vec<String>,
    pub instances: Option<usize>,
    pub seed: Option<u64>,
    /// Caps the upper end of every dimension range.
    pub dim_max: Option<usize>,
    pub rel_tol: Option<f64>,
}

impl SuiteOverrides {
    /// The configurations a suite run would use, in run order.
    pub fn configs(&self) -> Result<Vec<CaseConfig>> {
        let specs: Vec<&CaseSpec> = if self.cases.is_empty() {
            registry().iter().collect()
        } else {
            self.cases.iter().map(|c| find_case(c)).collect::<Result<_>>()?
        };
        specs
            .into_iter()
            .map(|spec| {
                let mut cfg = spec.default_config();
                if let Some(k) = self.instances {
                    cfg.instances = k;
                }
                if let Some(s) = self.seed {
                    cfg.seed = s;
                }
                if let Some(d) = self.dim_max {
                    cfg.dim.1 = cfg.dim.1.min(d);
                    cfg.dim.0 = cfg.dim.0.min(cfg.dim.1);
                }
                if let Some(t) = self.rel_tol {
                    cfg.rel_tol = t;
                }
                cfg.validate()?;
                Ok(cfg)
            })
            .collect()
    }
}

/// Runs every selected case; reports come back in registry (or request) order.
pub fn run_suite(overrides: &SuiteOverrides) -> Result<Vec<ChainReport>> {
    let configs = overrides.configs()?;
    configs.par_iter().map(|cfg| run_case(&cfg.case, cfg)).collect()
}
