//! Pairs from holomorphic functions: `f + i g = e^{iα} (p + i q)`.

use crate::calibration::{sample_interior, CalibrationPair, VANISHING_GRADIENT};
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::geometry::{Domain, Vec2};

/// Relative Cauchy–Riemann threshold, against `|∇p|`.
pub const CR_THRESHOLD: f64 = 1e-8;

const CR_SAMPLES: usize = 500;
const CR_SEED: u64 = 0;

/// Real and imaginary parts of a holomorphic function plus a rotation angle.
#[derive(Debug, Clone)]
pub struct HolomorphicSpec {
    pub p: ScalarField,
    pub q: ScalarField,
    pub alpha: f64,
}

impl HolomorphicSpec {
    pub fn new(p: ScalarField, q: ScalarField, alpha: f64) -> Self {
        HolomorphicSpec { p, q, alpha }
    }

    /// `z² = (x² - y²) + i 2xy`.
    pub fn z_squared(alpha: f64) -> Self {
        HolomorphicSpec::new(
            ScalarField::with_gradient(|p| p.x * p.x - p.y * p.y, |p| Vec2::new(2.0 * p.x, -2.0 * p.y)),
            ScalarField::with_gradient(|p| 2.0 * p.x * p.y, |p| Vec2::new(2.0 * p.y, 2.0 * p.x)),
            alpha,
        )
    }

    /// `ln(r/r0) + i (θ - θ0)` with `θ` in `(-π, π]`.
    pub fn log_polar(r0: f64, theta0: f64, alpha: f64) -> Self {
        let ln_r0 = r0.ln();
        HolomorphicSpec::new(
            ScalarField::with_gradient(
                move |p| 0.5 * (p.x * p.x + p.y * p.y).ln() - ln_r0,
                |p| {
                    let r2 = p.x * p.x + p.y * p.y;
                    Vec2::new(p.x / r2, p.y / r2)
                },
            ),
            ScalarField::with_gradient(
                move |p| p.y.atan2(p.x) - theta0,
                |p| {
                    let r2 = p.x * p.x + p.y * p.y;
                    Vec2::new(-p.y / r2, p.x / r2)
                },
            ),
            alpha,
        )
    }

    pub fn with_alpha(&self, alpha: f64) -> Self {
        HolomorphicSpec { alpha, ..self.clone() }
    }
}

/// `max(|p_x - q_y|, |p_y + q_x|) / |∇p|` at one point.
pub fn cauchy_riemann_residual(gp: Vec2, gq: Vec2) -> f64 {
    (gp.dx - gq.dy).abs().max((gp.dy + gq.dx).abs()) / gp.norm()
}

/// `f = cos α p - sin α q`, `g = sin α p + cos α q`, `rho = |∇p|`, after
/// checking the Cauchy–Riemann equations on sampled interior points.
pub fn build_harmonic_pair(spec: &HolomorphicSpec, domain: Domain) -> Result<CalibrationPair> {
    for pt in sample_interior(&domain, CR_SAMPLES, CR_SEED)? {
        let gp = spec.p.grad(pt)?;
        let gq = spec.q.grad(pt)?;
        if gp.norm() < VANISHING_GRADIENT {
            return Err(Error::VanishingGradient(pt));
        }
        let residual = cauchy_riemann_residual(gp, gq);
        if residual > CR_THRESHOLD {
            return Err(Error::CauchyRiemannViolated {
                at: pt,
                residual,
                threshold: CR_THRESHOLD,
            });
        }
    }

    let (sa, ca) = spec.alpha.sin_cos();
    let combine = |a: f64, b: f64| {
        let (p, q) = (spec.p.clone(), spec.q.clone());
        let (pv, qv) = (p.clone(), q.clone());
        let value = move |pt| a * pv.value(pt) + b * qv.value(pt);
        let gradient = move |pt| {
            let gp = p.grad(pt).unwrap_or(Vec2::new(f64::NAN, f64::NAN));
            let gq = q.grad(pt).unwrap_or(Vec2::new(f64::NAN, f64::NAN));
            gp * a + gq * b
        };
        ScalarField::with_gradient(value, gradient)
    };
    let f = combine(ca, -sa);
    let g = combine(sa, ca);
    let rho = spec.p.gradient_norm();
    Ok(CalibrationPair::new(f, g, domain, rho))
}
