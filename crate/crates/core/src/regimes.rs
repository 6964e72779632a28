//! Parameter schedules realizing the A1, A2, A3 and vanishing regimes, and
//! scans of the distance estimators along them.
//!
//! | Regime | Construction at each `a₂` |
//! |--------|---------------------------|
//! | A1(ρ) | `m = 1`, `a₁ = round(ρa₂)` |
//! | A2(σ) | `a₁ = round(a₂^0.55)`, `m = round(σa₂/a₁)` |
//! | A3(x, y) | `a₁ = round(x√a₂)`, `m = round(y√a₂)` |
//! | Vanishing | `a₁`, `m` fixed |

use serde::Serialize;

use crate::distances::{clt_harness, kl_estimate, tv_estimate, CltMode, CltRegime, CltReport, Estimate, ShardPlan};
use crate::ensembles::EnsembleParams;
use crate::numerics::{integrate_to_infinity, normal_pdf};
use crate::{Error, Result};

/// Growth exponent of `a₁` in A2 schedules; any value in (1/2, 1) realizes A2.
pub const A2_EXPONENT: f64 = 0.55;
/// Relative tolerance on the defining proxies at each schedule point.
pub const PROXY_TOLERANCE: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "regime", rename_all = "lowercase")]
pub enum RegimeKind {
    A1 { rho: f64 },
    A2 { sigma: f64 },
    A3 { x: f64, y: f64 },
    Vanishing { a1: f64, m: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegimePoint {
    pub params: EnsembleParams,
    pub sigma_proxy: f64,
    pub x_proxy: f64,
    pub y_proxy: f64,
    pub gamma_proxy: f64,
}

impl RegimePoint {
    pub fn new(params: EnsembleParams) -> Result<Self> {
        let (a1, a2, m) = (params.a1(), params.a2()?, params.m() as f64);
        Ok(Self {
            params,
            sigma_proxy: a1 * m / a2,
            x_proxy: a1 / a2.sqrt(),
            y_proxy: m / a2.sqrt(),
            gamma_proxy: params.beta() * m / (2.0 * a1),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegimeSchedule {
    pub kind: RegimeKind,
    pub points: Vec<RegimePoint>,
}

fn schedule_error(index: usize, reason: impl Into<String>) -> Error {
    Error::Schedule { index, reason: reason.into() }
}

fn within(value: f64, target: f64) -> bool {
    (value - target).abs() <= PROXY_TOLERANCE * target.abs()
}

/// Builds `steps` points on a geometric `a₂` grid spanning `a2_range`.
pub fn make_schedule(kind: RegimeKind, beta: f64, steps: usize, a2_range: (f64, f64)) -> Result<RegimeSchedule> {
    let (low, high) = a2_range;
    if steps < 3 {
        return Err(Error::InvalidParams(format!("a schedule needs at least 3 steps, got {steps}")));
    }
    if !(low > 1e3) || !(high > low) || !high.is_finite() {
        return Err(Error::InvalidParams(format!("a2 range must satisfy 1e3 < low < high, got ({low}, {high})")));
    }
    match kind {
        RegimeKind::A1 { rho } if !(rho > 0.0 && rho < 1.0) => {
            return Err(Error::InvalidParams(format!("A1 needs ρ in (0, 1), got {rho}")))
        }
        RegimeKind::A2 { sigma } if !(sigma > 0.0) => {
            return Err(Error::InvalidParams(format!("A2 needs σ > 0, got {sigma}")))
        }
        RegimeKind::A3 { x, y } if !(x > 0.0 && y > 0.0) => {
            return Err(Error::InvalidParams(format!("A3 needs x, y > 0, got ({x}, {y})")))
        }
        _ => {}
    }

    let (ln_lo, ln_hi) = (low.ln(), high.ln());
    let mut points = Vec::with_capacity(steps);
    for index in 0..steps {
        let t = index as f64 / (steps - 1) as f64;
        let a2 = (ln_lo + t * (ln_hi - ln_lo)).exp().round();
        let (a1, m) = match kind {
            RegimeKind::A1 { rho } => ((rho * a2).round(), 1),
            RegimeKind::A2 { sigma } => {
                let a1 = a2.powf(A2_EXPONENT).round();
                (a1, (sigma * a2 / a1).round() as usize)
            }
            RegimeKind::A3 { x, y } => ((x * a2.sqrt()).round(), (y * a2.sqrt()).round() as usize),
            RegimeKind::Vanishing { a1, m } => (a1, m),
        };
        if m == 0 || a1 <= 0.0 {
            return Err(schedule_error(index, format!("a2 = {a2} gives m = {m}, a1 = {a1}")));
        }
        let params = EnsembleParams::jacobi(beta, m, a1, a2)
            .map_err(|e| schedule_error(index, format!("(m = {m}, a1 = {a1}, a2 = {a2}): {e}")))?;
        let point = RegimePoint::new(params)?;
        let ok = match kind {
            RegimeKind::A1 { rho } => within(a1 / a2, rho),
            RegimeKind::A2 { sigma } => within(point.sigma_proxy, sigma),
            RegimeKind::A3 { x, y } => within(point.x_proxy, x) && within(point.y_proxy, y),
            RegimeKind::Vanishing { .. } => true,
        };
        if !ok {
            return Err(schedule_error(
                index,
                format!(
                    "proxies off target at a2 = {a2}: σ = {}, x = {}, y = {}",
                    point.sigma_proxy, point.x_proxy, point.y_proxy
                ),
            ));
        }
        if let Some(prev) = points.last() {
            let prev: &RegimePoint = prev;
            if !(a2 > prev.params.a2()?) {
                return Err(schedule_error(index, "a2 grid is not strictly increasing after rounding"));
            }
        }
        points.push(point);
    }
    Ok(RegimeSchedule { kind, points })
}

/// What a scan evaluates at each point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMetric {
    Tv,
    Kl,
    Clt(CltMode),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanOutcome {
    Estimate(Estimate),
    Clt(CltReport),
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanEntry {
    pub index: usize,
    pub point: RegimePoint,
    pub outcome: ScanOutcome,
}

/// Stream offset reserved for schedule point `index`.
pub fn point_stream_offset(index: usize) -> u64 {
    (index as u64 + 1) << 32
}

/// Evaluates `metric` at every point in schedule order. A failing point is
/// recorded as [`ScanOutcome::Failed`] and the scan continues.
pub fn scan(schedule: &RegimeSchedule, metric: ScanMetric, n_samples: usize, plan: &ShardPlan) -> Vec<ScanEntry> {
    schedule
        .points
        .iter()
        .enumerate()
        .map(|(index, point)| {
            let plan = plan.with_stream_offset(plan.stream_offset + point_stream_offset(index));
            let p = &point.params;
            let result = match metric {
                ScanMetric::Tv => tv_estimate(p, n_samples, &plan).map(ScanOutcome::Estimate),
                ScanMetric::Kl => kl_estimate(p, n_samples, &plan).map(ScanOutcome::Estimate),
                ScanMetric::Clt(mode) => match schedule.kind {
                    RegimeKind::A2 { .. } => {
                        clt_harness(p, CltRegime::A2, mode, n_samples, &plan).map(ScanOutcome::Clt)
                    }
                    RegimeKind::A3 { .. } => {
                        clt_harness(p, CltRegime::A3, mode, n_samples, &plan).map(ScanOutcome::Clt)
                    }
                    _ => Err(Error::InvalidParams("CLT scans need an A2 or A3 schedule".into())),
                },
            };
            ScanEntry { index, point: *point, outcome: result.unwrap_or_else(|e| ScanOutcome::Failed(e.to_string())) }
        })
        .collect()
}

/// `E|√(1+σ) e^{−σZ²/2} − 1|` for standard normal `Z`, the A1 limit of the
/// total-variation distance.
pub fn a1_limit_tv_reference(sigma: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&sigma) {
        return Err(Error::Domain(format!("A1 limit needs σ in [0, 1), got {sigma}")));
    }
    if sigma == 0.0 {
        return Ok(0.0);
    }
    let amp = (1.0 + sigma).sqrt();
    let crossing = ((1.0 + sigma).ln() / sigma).sqrt();
    let f = |z: f64| (amp * (-0.5 * sigma * z * z).exp() - 1.0).abs() * normal_pdf(z);
    let inner = crate::numerics::integrate(f, 0.0, crossing, &[], 1e-15, 1e-12)?;
    let outer = integrate_to_infinity(f, crossing, 1e-15, 1e-12)?;
    Ok(2.0 * (inner.value + outer.value))
}
