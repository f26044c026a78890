//! Calibration pairs `(f, g)` and the numerical certificate that level
//! curves of `g` minimize weighted length for the density `|∇f|`.
//!
//! The hypotheses are checked on sampled interior points: `∇f · ∇g = 0`,
//! both gradients nonvanishing, and the declared density equal to `|∇f|`.
//! Under them, every curve in the domain joining `p1` to `p2` has weighted
//! length at least `|f(p2) - f(p1)|`, with equality along the level curve
//! of `g` through both points.

mod competitor;
mod report;
mod sampling;

pub use competitor::{derive_seed, generate_competitor, generate_competitors, CompetitorSpec};
pub use report::VerificationReport;
pub use sampling::{radical_inverse, sample_interior};

use rayon::prelude::*;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::geometry::{Domain, Point2};
use crate::quadrature::{weighted_length, DEFAULT_REL_TOL};

/// Gradients shorter than this count as vanishing.
pub const VANISHING_GRADIENT: f64 = 1e-12;

/// Competitors must start and end this close to the minimizer's endpoints.
pub const ENDPOINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct CalibrationPair {
    pub f: ScalarField,
    pub g: ScalarField,
    pub domain: Domain,
    /// Declared density; meant to equal `|∇f|`.
    pub rho: ScalarField,
}

impl CalibrationPair {
    pub fn new(f: ScalarField, g: ScalarField, domain: Domain, rho: ScalarField) -> Self {
        CalibrationPair { f, g, domain, rho }
    }

    /// Multiplies `f` and `rho` by `kappa`; `g` and the domain are unchanged.
    pub fn scaled(&self, kappa: f64) -> CalibrationPair {
        CalibrationPair {
            f: self.f.scaled(kappa),
            g: self.g.clone(),
            domain: self.domain.clone(),
            rho: self.rho.scaled(kappa),
        }
    }

    pub fn with_rho(&self, rho: ScalarField) -> CalibrationPair {
        CalibrationPair { rho, ..self.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub orth: f64,
    pub rho: f64,
    pub len: f64,
    /// Level-curve tolerance; `None` means `1e-8 * (1 + |g(start)|)`.
    pub level: Option<f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            orth: 1e-9,
            rho: 1e-8,
            len: 1e-6,
            level: None,
        }
    }
}

impl Tolerances {
    pub fn level_for(&self, g_start: f64) -> f64 {
        self.level.unwrap_or(1e-8 * (1.0 + g_start.abs()))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub entry_name: String,
    pub tolerances: Tolerances,
    pub n_samples: usize,
    pub seed: u64,
    /// Relative tolerance of the weighted-length quadrature.
    pub rel_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            entry_name: String::new(),
            tolerances: Tolerances::default(),
            n_samples: 500,
            seed: 42,
            rel_tol: DEFAULT_REL_TOL,
        }
    }
}

/// Max over samples of `|∇f · ∇g| / (|∇f| |∇g|)`.
pub fn check_orthogonality(pair: &CalibrationPair, n_samples: usize, seed: u64) -> Result<f64> {
    let pts = sample_interior(&pair.domain, n_samples, seed)?;
    let mut worst: f64 = 0.0;
    for p in pts {
        let gf = pair.f.grad(p)?;
        let gg = pair.g.grad(p)?;
        let (nf, ng) = (gf.norm(), gg.norm());
        if nf < VANISHING_GRADIENT || ng < VANISHING_GRADIENT {
            return Err(Error::VanishingGradient(p));
        }
        worst = worst.max(gf.dot(gg).abs() / (nf * ng));
    }
    Ok(worst)
}

/// Max over samples of `| |∇f| - rho | / rho`.
pub fn check_density(pair: &CalibrationPair, n_samples: usize, seed: u64) -> Result<f64> {
    let pts = sample_interior(&pair.domain, n_samples, seed)?;
    let mut worst: f64 = 0.0;
    for p in pts {
        let rho = pair.rho.value(p);
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::SingularDensity(p));
        }
        let nf = pair.f.grad(p)?.norm();
        worst = worst.max((nf - rho).abs() / rho);
    }
    Ok(worst)
}

/// `|f(p2) - f(p1)|`, the lower bound on weighted length for curves in the
/// domain joining `p1` and `p2`.
pub fn calibrated_bound(pair: &CalibrationPair, p1: Point2, p2: Point2) -> Result<f64> {
    Ok((pair.f.eval(p2)? - pair.f.eval(p1)?).abs())
}

/// Largest `|g - g(start)|` along `curve`, sampled at 257 parameter values
/// (or the vertices of a polyline).
pub fn level_residual(g: &ScalarField, curve: &Curve) -> Result<f64> {
    let g0 = g.eval(curve.start())?;
    let mut worst: f64 = 0.0;
    for p in curve.sample(257) {
        worst = worst.max((g.eval(p)? - g0).abs());
    }
    Ok(worst)
}

/// Checks the calibration hypotheses and the weighted-length inequality for
/// `minimizer` against `competitors`.
pub fn verify_minimizer(
    pair: &CalibrationPair,
    minimizer: &Curve,
    competitors: &[Curve],
    cfg: &VerifyConfig,
) -> Result<VerificationReport> {
    let (p1, p2) = (minimizer.start(), minimizer.end());
    for c in competitors {
        let gap = c.start().distance(p1).max(c.end().distance(p2));
        if gap > ENDPOINT_TOL {
            return Err(Error::EndpointMismatch(gap));
        }
    }

    let tol = cfg.tolerances;
    let g0 = pair.g.eval(p1)?;
    let level_tol = tol.level_for(g0);
    let drift = level_residual(&pair.g, minimizer)?;
    if drift > level_tol {
        return Err(Error::NotOnLevelCurve {
            residual: drift,
            tolerance: level_tol,
        });
    }

    let orth = check_orthogonality(pair, cfg.n_samples, cfg.seed)?;
    let dens = check_density(pair, cfg.n_samples, cfg.seed)?;
    let bound = calibrated_bound(pair, p1, p2)?;
    let minimizer_length = weighted_length(minimizer, &pair.rho, cfg.rel_tol)?;

    // Indexed collection keeps the margins in competitor order.
    let margins = competitors
        .par_iter()
        .map(|c| weighted_length(c, &pair.rho, cfg.rel_tol).map(|l| l - bound))
        .collect::<Result<Vec<f64>>>()?;

    let passed = orth <= tol.orth
        && dens <= tol.rho
        && (minimizer_length - bound).abs() <= tol.len * bound
        && margins.iter().all(|&m| m >= -tol.len * bound);

    Ok(VerificationReport {
        entry_name: cfg.entry_name.clone(),
        orthogonality_max_residual: orth,
        density_max_rel_error: dens,
        bound,
        minimizer_length,
        n_competitors: competitors.len(),
        competitor_margins: margins,
        passed,
        seed: cfg.seed,
        n_samples: cfg.n_samples,
    })
}
