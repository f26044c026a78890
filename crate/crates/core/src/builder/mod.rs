//! Recipes that produce calibration pairs: the power-density family, the
//! exact first-integral ODE for densities depending on `y` only, and
//! rotated holomorphic functions.

mod chebyshev;
mod harmonic;
mod symmetric;

pub use chebyshev::{ChebyshevTable, DEFAULT_NODES};
pub use harmonic::{build_harmonic_pair, cauchy_riemann_residual, HolomorphicSpec};
pub use symmetric::{build_symmetric_pair, detect_validity_strip, SpeedFn, SymmetricDensitySpec};

use crate::calibration::CalibrationPair;
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::geometry::{Domain, Vec2};

/// `t^(1-λ)/(1-λ)` for `λ != 1`, `ln t` for `λ = 1`; an antiderivative of
/// `t^(-λ)` on `t > 0`.
pub fn psi(lambda: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveArgument(t));
    }
    Ok(psi_unchecked(lambda, t))
}

fn psi_unchecked(lambda: f64, t: f64) -> f64 {
    if lambda == 1.0 {
        t.ln()
    } else {
        t.powf(1.0 - lambda) / (1.0 - lambda)
    }
}

/// `g = Ψ_p(x) + Ψ_q(y)`, `f = Ψ_{-p}(x) - Ψ_{-q}(y)`: level curves of `g`
/// minimize for the density `sqrt(x^(2p) + y^(2q))` in the open quadrant.
pub fn power_density_pair(p: f64, q: f64, domain: Domain) -> Result<CalibrationPair> {
    if !domain.inside_open_quadrant() {
        return Err(Error::DomainOutsideQuadrant);
    }
    let g = ScalarField::with_gradient(
        move |pt| psi_unchecked(p, pt.x) + psi_unchecked(q, pt.y),
        move |pt| Vec2::new(pt.x.powf(-p), pt.y.powf(-q)),
    );
    let f = ScalarField::with_gradient(
        move |pt| psi_unchecked(-p, pt.x) - psi_unchecked(-q, pt.y),
        move |pt| Vec2::new(pt.x.powf(p), -pt.y.powf(q)),
    );
    let rho = ScalarField::new(move |pt| pt.x.powf(p).hypot(pt.y.powf(q)));
    Ok(CalibrationPair::new(f, g, domain, rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calibration::{check_density, check_orthogonality};
    use crate::geometry::Point2;

    #[test]
    fn psi_values() {
        assert!((psi(1.0, std::f64::consts::E).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(psi(0.0, 5.0).unwrap(), 5.0);
        assert_eq!(psi(2.0, 4.0).unwrap(), -0.25);
        assert_eq!(psi(0.5, 0.0), Err(Error::NonPositiveArgument(0.0)));
        assert!(psi(0.5, -1.0).is_err());
    }

    #[test]
    fn psi_derivative_is_power() {
        for &lambda in &[-1.0, 0.0, 1.0 / 3.0, 1.0, 2.0, 2.5] {
            for &t in &[0.3, 1.0, 4.0] {
                let h = 1e-5 * t;
                let fd = (psi(lambda, t + h).unwrap() - psi(lambda, t - h).unwrap()) / (2.0 * h);
                let exact = t.powf(-lambda);
                assert!((fd - exact).abs() <= 1e-8 * exact, "λ={lambda} t={t}");
            }
        }
    }

    fn quadrant() -> Domain {
        Domain::rect(0.0, 3.0, 0.0, 3.0).unwrap()
    }

    #[test]
    fn one_third_is_the_astroid_family() {
        let pair = power_density_pair(1.0 / 3.0, 1.0 / 3.0, quadrant()).unwrap();
        let p = Point2::new(0.7, 1.9);
        let astroid_g = p.x.cbrt().powi(2) + p.y.cbrt().powi(2);
        assert!((pair.g.value(p) - 1.5 * astroid_g).abs() < 1e-14);
        assert!((pair.rho.value(p) - astroid_g.sqrt()).abs() < 1e-14);
        let astroid_f = 0.75 * (p.x.powf(4.0 / 3.0) - p.y.powf(4.0 / 3.0));
        assert!((pair.f.value(p) - astroid_f).abs() < 1e-14);
    }

    #[test]
    fn zero_powers_are_euclidean() {
        let pair = power_density_pair(0.0, 0.0, quadrant()).unwrap();
        let p = Point2::new(0.4, 2.2);
        assert!((pair.rho.value(p) - 2f64.sqrt()).abs() < 1e-15);
        assert!((pair.g.value(p) - 2.6).abs() < 1e-15);
        assert!((pair.f.value(p) + 1.8).abs() < 1e-15);
    }

    #[test]
    fn unit_powers_at_one_one() {
        let pair = power_density_pair(1.0, 1.0, quadrant()).unwrap();
        let p = Point2::new(1.0, 1.0);
        assert_eq!(pair.g.grad(p).unwrap(), Vec2::new(1.0, 1.0));
        assert_eq!(pair.f.grad(p).unwrap(), Vec2::new(1.0, -1.0));
        assert_eq!(pair.g.value(Point2::new(2.0, 3.0)), 2f64.ln() + 3f64.ln());
        assert_eq!(pair.f.value(Point2::new(2.0, 3.0)), (4.0 - 9.0) / 2.0);
        assert!((pair.rho.value(p) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn family_passes_hypothesis_checks() {
        for &(p, q) in &[(1.0, 2.0), (-0.5, 0.25), (1.0 / 3.0, 3.0), (-1.0, -1.0)] {
            let pair = power_density_pair(p, q, Domain::rect(0.0, 2.0, 0.0, 2.0).unwrap()).unwrap();
            assert!(check_orthogonality(&pair, 500, 5).unwrap() <= 1e-12, "({p}, {q})");
            assert!(check_density(&pair, 500, 5).unwrap() <= 1e-12, "({p}, {q})");
        }
    }

    #[test]
    fn quadrant_is_enforced() {
        let d = Domain::rect(-1.0, 1.0, 0.5, 1.0).unwrap();
        assert_eq!(power_density_pair(1.0, 1.0, d).unwrap_err(), Error::DomainOutsideQuadrant);
    }
}
