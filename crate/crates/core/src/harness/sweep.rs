use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{check_chain, draw, end_to_end_gap, find_case, operator_scale, CaseConfig, Chain, DrawError, Instance};
use crate::error::{Error, Result};
use crate::linalg::HermitianMatrix;

/// The parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepParam {
    Nu,
    Depth,
    Cond,
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nu" => Ok(SweepParam::Nu),
            "N" | "depth" => Ok(SweepParam::Depth),
            "cond" => Ok(SweepParam::Cond),
            _ => Err(Error::Config(format!("unknown sweep parameter `{s}` (expected nu, N or cond)"))),
        }
    }
}

impl std::fmt::Display for SweepParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SweepParam::Nu => "nu",
            SweepParam::Depth => "N",
            SweepParam::Cond => "cond",
        })
    }
}

/// `lo:hi:step`, inclusive of `hi` up to rounding.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts[..] else {
        return Err(Error::Config(format!("grid `{s}` must look like lo:hi:step")));
    };
    let num =
        |t: &str| t.trim().parse::<f64>().map_err(|_| Error::Config(format!("grid `{s}`: `{t}` is not a number")));
    let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
    if !(lo.is_finite() && hi.is_finite() && step.is_finite() && step > 0.0) {
        return Err(Error::Config(format!("grid `{s}` needs finite bounds and a positive step")));
    }
    if hi < lo {
        return Err(Error::Config(format!("grid `{s}` is empty")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| lo + k as f64 * step).collect())
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub instances: usize,
    pub skipped: usize,
    pub failures: usize,
    /// Mean normalized end-to-end gap.
    pub mean_gap: f64,
    /// Mean normalized distance from the classical bound to its refinement,
    /// over instances that carry one.
    pub mean_gain: Option<f64>,
}

fn configure(base: &CaseConfig, param: SweepParam, value: f64) -> Result<CaseConfig> {
    let spec = find_case(&base.case)?;
    let mut cfg = base.clone();
    match param {
        SweepParam::Nu => {
            if !spec.samples_nu() {
                return Err(Error::Config(format!("case `{}` has no weight ν to sweep", base.case)));
            }
            cfg.fixed_nu = Some(value);
        }
        SweepParam::Depth => {
            if spec.depth.is_none() {
                return Err(Error::Config(format!("case `{}` has no refinement depth to sweep", base.case)));
            }
            if !(value >= 1.0 && value.fract() == 0.0) {
                return Err(Error::Config(format!("depth {value} must be a positive integer")));
            }
            cfg.fixed_depth = Some(value as u32);
        }
        SweepParam::Cond => cfg.cond_max = value,
    }
    cfg.validate()?;
    Ok(cfg)
}

fn sampled(cfg: &CaseConfig, index: usize) -> Result<(Instance, usize)> {
    let spec = find_case(&cfg.case)?;
    match draw(spec, cfg, index) {
        Ok(d) => Ok((d.instance, d.skipped)),
        Err(DrawError::Exhausted) => {
            Err(Error::TooManySkips { case: cfg.case.clone(), limit: super::SKIP_FACTOR * cfg.instances })
        }
        Err(DrawError::Failed { error, .. }) => Err(error),
    }
}

fn mean_trace(h: &HermitianMatrix) -> f64 {
    h.trace() / h.dim() as f64
}

/// Normalized `refined − base`; the average eigenvalue for matrices.
fn gain(inst: &Instance) -> Result<Option<f64>> {
    let Some(r) = inst.refinement else { return Ok(None) };
    Ok(Some(match &inst.chains[r.chain] {
        Chain::Scalar(c) => {
            let v = c.values();
            (v[r.refined] - v[r.base]) / 1f64.max(v[r.base].abs()).max(v[r.target].abs())
        }
        Chain::Operator(c) => {
            let m = c.matrices();
            mean_trace(&m[r.refined].sub(&m[r.base])?) / operator_scale(&m[r.base], &m[r.target])?
        }
    }))
}

/// Runs the case at every grid value of `param`. Other parameters are drawn
/// exactly as in an unswept run, so rows differ only in the swept value.
pub fn sweep(base: &CaseConfig, param: SweepParam, grid: &[f64]) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::Config("sweep grid is empty".into()));
    }
    grid.iter()
        .map(|&value| {
            let cfg = configure(base, param, value)?;
            let per: Vec<Result<(usize, bool, f64, Option<f64>)>> = (0..cfg.instances)
                .into_par_iter()
                .map(|index| {
                    let (inst, skipped) = sampled(&cfg, index)?;
                    let mut failed = false;
                    let mut gap = f64::NEG_INFINITY;
                    for c in &inst.chains {
                        failed |= check_chain(c, cfg.rel_tol)?.iter().any(|s| !s.holds(cfg.rel_tol));
                        gap = gap.max(end_to_end_gap(c)?);
                    }
                    Ok((skipped, failed, gap, gain(&inst)?))
                })
                .collect();
            let mut row =
                SweepRow { value, instances: cfg.instances, skipped: 0, failures: 0, mean_gap: 0.0, mean_gain: None };
            let (mut gains, mut gain_count) = (0.0, 0usize);
            for p in per {
                let (skipped, failed, gap, g) = p?;
                row.skipped += skipped;
                row.failures += usize::from(failed);
                row.mean_gap += gap;
                if let Some(g) = g {
                    gains += g;
                    gain_count += 1;
                }
            }
            row.mean_gap /= cfg.instances as f64;
            row.mean_gain = (gain_count > 0).then(|| gains / gain_count as f64);
            Ok(row)
        })
        .collect()
}

/// Per-instance monotonicity of the refined entry in the depth.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub case: String,
    /// Instances carrying a refinement.
    pub instances: usize,
    /// Consecutive-depth comparisons made.
    pub comparisons: usize,
    pub violations: usize,
    /// Smallest normalized increment `refined(N+1) − refined(N)` (least eigenvalue for matrices).
    pub worst_increment: f64,
    pub tolerance: f64,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn increment(prev: &Instance, next: &Instance) -> Result<Option<f64>> {
    let (Some(r), Some(s)) = (prev.refinement, next.refinement) else { return Ok(None) };
    if r != s {
        return Err(Error::Config("refinement layout changed with the depth".into()));
    }
    Ok(Some(match (&prev.chains[r.chain], &next.chains[r.chain]) {
        (Chain::Scalar(p), Chain::Scalar(q)) => {
            let (v, w) = (p.values(), q.values());
            (w[r.refined] - v[r.refined]) / 1f64.max(v[r.base].abs()).max(v[r.target].abs())
        }
        (Chain::Operator(p), Chain::Operator(q)) => {
            let (m, w) = (p.matrices(), q.matrices());
            w[r.refined].sub(&m[r.refined])?.eigh()?.min() / operator_scale(&m[r.base], &m[r.target])?
        }
        _ => return Err(Error::Config("chain kind changed with the depth".into())),
    }))
}

/// Redraws every instance at each depth in `depths` and checks that the
/// refined entry never decreases, up to `tol` times the scale of the base and
/// target entries.
pub fn depth_monotonicity(
    base: &CaseConfig,
    depths: std::ops::RangeInclusive<u32>,
    tol: f64,
) -> Result<MonotonicityReport> {
    let depths: Vec<u32> = depths.collect();
    if depths.len() < 2 {
        return Err(Error::Config("need at least two depths".into()));
    }
    let configs: Vec<CaseConfig> =
        depths.iter().map(|&d| configure(base, SweepParam::Depth, d as f64)).collect::<Result<_>>()?;
    let per: Vec<Result<Vec<f64>>> = (0..base.instances)
        .into_par_iter()
        .map(|index| {
            let chain: Vec<Instance> = configs.iter().map(|c| sampled(c, index).map(|x| x.0)).collect::<Result<_>>()?;
            let mut out = Vec::new();
            for w in chain.windows(2) {
                match increment(&w[0], &w[1])? {
                    Some(d) => out.push(d),
                    None => break,
                }
            }
            Ok(out)
        })
        .collect();
    let mut report = MonotonicityReport {
        case: base.case.clone(),
        instances: 0,
        comparisons: 0,
        violations: 0,
        worst_increment: f64::INFINITY,
        tolerance: tol,
    };
    for p in per {
        let incs = p?;
        if incs.is_empty() {
            continue;
        }
        report.instances += 1;
        report.comparisons += incs.len();
        report.violations += incs.iter().filter(|&&d| d < -tol).count();
        report.worst_increment = incs.iter().fold(report.worst_increment, |m, &d| m.min(d));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn young() -> CaseConfig {
        let mut cfg = find_case("young_reverse").unwrap().default_config();
        cfg.instances = 200;
        cfg
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("1:8:1").unwrap(), (1..=8).map(f64::from).collect::<Vec<_>>());
        assert_eq!(parse_grid("0:1:0.25").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_grid("0:0.3:0.1").unwrap().len(), 4);
        assert!(parse_grid("2:1:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("0:1").is_err());
        assert_eq!("N".parse::<SweepParam>().unwrap(), SweepParam::Depth);
        assert!("x".parse::<SweepParam>().is_err());
    }

    #[test]
    fn depth_sweep_gain_nondecreasing() {
        let rows = sweep(&young(), SweepParam::Depth, &parse_grid("1:8:1").unwrap()).unwrap();
        let gains: Vec<f64> = rows.iter().map(|r| r.mean_gain.unwrap()).collect();
        assert!(gains.windows(2).all(|w| w[0] <= w[1]), "{gains:?}");
        assert!(rows.iter().all(|r| r.failures == 0));
    }

    #[test]
    fn zero_weight_row_has_zero_gain() {
        let rows = sweep(&young(), SweepParam::Nu, &[0.0, 1.0]).unwrap();
        assert_eq!(rows[0].mean_gain, Some(0.0));
        assert_eq!(rows[0].mean_gap, 0.0);
        assert!(rows[1].mean_gain.unwrap() > 0.0);
    }

    #[test]
    fn cond_sweep_smoke() {
        let mut cfg = find_case("operator_reverse").unwrap().default_config();
        cfg.instances = 20;
        let rows = sweep(&cfg, SweepParam::Cond, &[1.0, 10.0, 100.0]).unwrap();
        assert!(rows.iter().all(|r| r.failures == 0));
    }

    #[test]
    fn sweep_rejects_unusable_parameters() {
        assert!(sweep(&young(), SweepParam::Depth, &[]).is_err());
        assert!(sweep(&young(), SweepParam::Depth, &[1.5]).is_err());
        assert!(sweep(&young(), SweepParam::Nu, &[-2.0]).is_err());
        let cfg = find_case("heinz_pq").unwrap().default_config();
        assert!(sweep(&cfg, SweepParam::Nu, &[1.0]).is_err());
    }

    #[test]
    fn refined_entry_monotone_in_depth() {
        let r = depth_monotonicity(&young(), 1..=8, 0.0).unwrap();
        assert_eq!(r.instances, 200);
        assert!(r.passed(), "{r:?}");
    }
}
