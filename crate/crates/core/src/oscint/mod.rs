//! Numerical verification of decay rates for oscillatory integrals
//! `J(xi) = int e^{i(xi_1 x_1 + xi_2 x_2 + xi_3 phi(x))} eta(x) dx`.
//!
//! The quadrature engine treats the phase exactly on each panel up to a
//! controlled nonlinear residual, so frequencies up to `2^12` and beyond
//! are affordable.  On top of it sit log-log decay fits along rays
//! `xi = (lambda s_1, lambda s_2, lambda)`, a worst-case search over the
//! direction parameter `s`, one-dimensional van der Corput reference
//! integrals, dyadic rescaling audits, and the exact comparison of the
//! Newton distance against `1 + 1/(2 gamma)`.
//!
//! Everything here is deterministic: parallel maps collect in input
//! order and reductions run sequentially over that order.

pub mod amplitude;
pub mod quadrature;
pub mod rescale;

pub use amplitude::{plateau_window, AmplitudeKind, AmplitudeSpec, CollarSide};
pub use quadrature::{osc_integral, osc_integral_1d, OscResult, QuadOptions};
pub use rescale::{
    rescale_check, rescale_phase, RemainderTerm, RescaleCheck, RescaleSplit,
};

use crate::normalform::SingularityReport;
use crate::poly::{rat, Polynomial, Rational, UniPoly};
use num::{One, Zero};
use rayon::prelude::*;

/// Magnitudes below this are treated as numerically zero; if a whole
/// decay series sits under it, the integral decays faster than any
/// power in the observable window.
pub const DEGENERATE_MAGNITUDE: f64 = 1e-14;

/// Minimal number of frequencies for a trustworthy fit.
pub const MIN_GRID: usize = 6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OscError {
    #[error("invalid amplitude: {0}")]
    InvalidAmplitude(String),
    #[error("super-polynomial decay: every sampled magnitude is below 1e-14")]
    DegenerateFit,
    #[error("the frequency grid needs at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("the weight does not present the principal face as a compact edge")]
    PrincipalFaceNotEdge,
}

/// Result of one log-log decay fit along a ray of directions.
#[derive(Debug, Clone)]
pub struct DecayFit {
    /// The linear-term direction `s`; `(0, 0)` for one-dimensional
    /// reference integrals.
    pub direction: [f64; 2],
    pub lambdas: Vec<f64>,
    /// `|J(lambda s_1, lambda s_2, lambda)|` per grid point.
    pub magnitudes: Vec<f64>,
    /// Negated slope of `log |J|` against `log lambda`.
    pub gamma_hat: f64,
    pub r_squared: f64,
    pub gamma_predicted: Option<Rational>,
    pub tolerance: f64,
    /// `Some(true)` when a prediction exists and `gamma_hat` matches it
    /// within the tolerance.
    pub pass: Option<bool>,
    /// Whether any grid point ran out of panel budget.
    pub budget_exceeded: bool,
}

/// Dyadic grid `2^min_exp .. 2^max_exp` with `per_octave` extra
/// subdivisions (1 gives the plain powers of two).
pub fn dyadic_lambdas(min_exp: u32, max_exp: u32, per_octave: u32) -> Vec<f64> {
    let per = per_octave.max(1);
    let steps = (max_exp - min_exp) * per;
    (0..=steps)
        .map(|j| 2f64.powf(min_exp as f64 + j as f64 / per as f64))
        .collect()
}

/// Square grid of directions, row-major, `resolution^2` points over
/// `[-half, half]^2`.
pub fn default_s_grid(resolution: usize, half: f64) -> Vec<[f64; 2]> {
    let n = resolution.max(2);
    let mut grid = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let f = |k: usize| -half + 2.0 * half * k as f64 / (n - 1) as f64;
            grid.push([f(i), f(j)]);
        }
    }
    grid
}

fn fit_loglog(lambdas: &[f64], magnitudes: &[f64]) -> Option<(f64, f64)> {
    let points: Vec<(f64, f64)> = lambdas
        .iter()
        .zip(magnitudes)
        .filter(|(_, &m)| m > 1e-300)
        .map(|(&l, &m)| (l.ln(), m.ln()))
        .collect();
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    let ss_tot: f64 = points.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    let ss_res: f64 = points
        .iter()
        .map(|p| {
            let fitted = my + slope * (p.0 - mx);
            (p.1 - fitted) * (p.1 - fitted)
        })
        .sum();
    let r_squared = if ss_tot <= 1e-30 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Some((-slope, r_squared))
}

fn rational_to_f64_opt(r: &Option<Rational>) -> Option<f64> {
    r.as_ref().map(crate::poly::rational_to_f64)
}

/// Fits `|J(lambda s_1, lambda s_2, lambda)| ~ lambda^{-gamma}` on a
/// dyadic grid.  Errors with [`OscError::DegenerateFit`] when every
/// magnitude is below [`DEGENERATE_MAGNITUDE`].
pub fn decay_fit(
    phi: &Polynomial,
    amp: &AmplitudeSpec,
    s: [f64; 2],
    lambdas: &[f64],
    predicted: Option<Rational>,
    tolerance: f64,
    opts: &QuadOptions,
) -> Result<DecayFit, OscError> {
    if lambdas.len() < MIN_GRID {
        return Err(OscError::TooFewPoints { need: MIN_GRID, got: lambdas.len() });
    }
    let mut magnitudes = Vec::with_capacity(lambdas.len());
    let mut budget_exceeded = false;
    for &lambda in lambdas {
        let r = osc_integral(phi, amp, [lambda * s[0], lambda * s[1], lambda], opts);
        budget_exceeded = budget_exceeded || r.budget_exceeded;
        magnitudes.push(r.value.norm());
    }
    if magnitudes.iter().all(|&m| m < DEGENERATE_MAGNITUDE) {
        return Err(OscError::DegenerateFit);
    }
    let (gamma_hat, r_squared) =
        fit_loglog(lambdas, &magnitudes).ok_or(OscError::DegenerateFit)?;
    let pass = rational_to_f64_opt(&predicted)
        .map(|p| (gamma_hat - p).abs() <= tolerance);
    Ok(DecayFit {
        direction: s,
        lambdas: lambdas.to_vec(),
        magnitudes,
        gamma_hat,
        r_squared,
        gamma_predicted: predicted,
        tolerance,
        pass,
        budget_exceeded,
    })
}

/// Doubles the density of a dyadic grid by geometric midpoints.
fn densify(lambdas: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * lambdas.len());
    for w in lambdas.windows(2) {
        out.push(w[0]);
        out.push((w[0] * w[1]).sqrt());
    }
    if let Some(&last) = lambdas.last() {
        out.push(last);
    }
    out
}

/// Minimal fit-quality for a direction to count in the worst case.
pub const R2_THRESHOLD: f64 = 0.98;

/// Scans directions for the slowest decay.  Directions whose fit falls
/// below [`R2_THRESHOLD`] are retried once on a doubled frequency grid
/// and dropped if still unreliable; degenerate directions are skipped.
/// Returns `None` when every direction is degenerate.
pub fn worst_case_decay(
    phi: &Polynomial,
    amp: &AmplitudeSpec,
    s_grid: &[[f64; 2]],
    lambdas: &[f64],
    predicted: Option<Rational>,
    tolerance: f64,
    opts: &QuadOptions,
) -> Result<Option<([f64; 2], DecayFit)>, OscError> {
    if lambdas.len() < MIN_GRID {
        return Err(OscError::TooFewPoints { need: MIN_GRID, got: lambdas.len() });
    }
    let fits: Vec<Option<DecayFit>> = s_grid
        .par_iter()
        .map(|&s| {
            let first = decay_fit(phi, amp, s, lambdas, predicted.clone(), tolerance, opts);
            match first {
                Ok(fit) if fit.r_squared >= R2_THRESHOLD => Some(fit),
                Ok(_) => {
                    let dense = densify(lambdas);
                    match decay_fit(phi, amp, s, &dense, predicted.clone(), tolerance, opts)
                    {
                        Ok(fit) if fit.r_squared >= R2_THRESHOLD => Some(fit),
                        _ => None,
                    }
                }
                Err(_) => None,
            }
        })
        .collect();
    let mut best: Option<([f64; 2], DecayFit)> = None;
    for (s, fit) in s_grid.iter().zip(fits) {
        if let Some(fit) = fit {
            let better = match &best {
                None => true,
                Some((_, b)) => fit.gamma_hat < b.gamma_hat,
            };
            if better {
                best = Some((*s, fit));
            }
        }
    }
    Ok(best)
}

/// Van der Corput reference: fits `int e^{i lambda g(t)} chi(t) dt` for
/// a univariate phase with a single stationary point of order `k` in
/// the plateau of the window; the predicted rate is `1/k`.
pub fn vdc_check(
    g: &UniPoly,
    k: u32,
    lambdas: &[f64],
    tolerance: f64,
    opts: &QuadOptions,
) -> Result<DecayFit, OscError> {
    if lambdas.len() < MIN_GRID {
        return Err(OscError::TooFewPoints { need: MIN_GRID, got: lambdas.len() });
    }
    let mut magnitudes = Vec::with_capacity(lambdas.len());
    let mut budget_exceeded = false;
    for &lambda in lambdas {
        let r = osc_integral_1d(g, lambda, opts);
        budget_exceeded = budget_exceeded || r.budget_exceeded;
        magnitudes.push(r.value.norm());
    }
    if magnitudes.iter().all(|&m| m < DEGENERATE_MAGNITUDE) {
        return Err(OscError::DegenerateFit);
    }
    let (gamma_hat, r_squared) =
        fit_loglog(lambdas, &magnitudes).ok_or(OscError::DegenerateFit)?;
    let predicted = rat(1, k as i64);
    let pass = Some((gamma_hat - crate::poly::rational_to_f64(&predicted)).abs() <= tolerance);
    Ok(DecayFit {
        direction: [0.0, 0.0],
        lambdas: lambdas.to_vec(),
        magnitudes,
        gamma_hat,
        r_squared,
        gamma_predicted: Some(predicted),
        tolerance,
        pass,
        budget_exceeded,
    })
}

/// Exact verdict on the sufficient condition `d >= 1 + 1/(2 gamma)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaCondition {
    pub gamma: Rational,
    /// `d - 1 - 1/(2 gamma)`, exact.
    pub margin: Rational,
    pub holds: bool,
}

/// Compares the Newton distance of a classified phase against the
/// decay-rate threshold, in exact arithmetic.
pub fn gamma_condition_report(report: &SingularityReport, gamma: &Rational) -> GammaCondition {
    assert!(
        gamma > &Rational::zero(),
        "decay rates are positive; got {gamma}"
    );
    let bound = Rational::one() + Rational::one() / (&rat(2, 1) * gamma);
    let margin = &report.distance - &bound;
    let holds = margin >= Rational::zero();
    GammaCondition { gamma: gamma.clone(), margin, holds }
}
