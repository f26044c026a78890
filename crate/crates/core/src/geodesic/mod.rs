//! Independent cross-checks on calibrated minimizers: follow level curves of
//! `g` numerically, shoot geodesics of the conformal metric `rho² |dx|²`, and
//! test the first integral of `y`-only densities.
//!
//! A unit-speed geodesic with tangent angle `θ` satisfies
//!
//! ```text
//! x' = cos θ,   y' = sin θ,   θ' = ∂y(ln rho) cos θ - ∂x(ln rho) sin θ
//! ```
//!
//! with `'` the Euclidean arc-length derivative.

mod shoot;
mod trace;

pub use shoot::{shoot_geodesic, tangent_angle_at, Shot, ShotStatus};
pub use trace::{trace_level, StopFn, TraceConfig};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::geometry::{Point2, Vec2};
use crate::quadrature::gl5_nodes;

/// Parameter panels used to place nodes on a parametric curve.
const PARAMETRIC_PANELS: usize = 64;

fn conserved(v: &dyn Fn(f64) -> f64, p: Point2, tangent: Vec2) -> Result<f64> {
    let vy = v(p.y);
    if !(vy.is_finite() && vy > 0.0) {
        return Err(Error::SingularDensity(p));
    }
    let speed = tangent.norm();
    if !(speed > 0.0) {
        return Err(Error::DegenerateCurve);
    }
    Ok(tangent.dx / speed / vy)
}

/// Max of `|(1/v(y)) dx/ds - c|` over Gauss nodes along `curve`. Zero along
/// a geodesic of the density `1/v(y)` with first-integral constant `c`.
pub fn first_integral_residual(v: impl Fn(f64) -> f64, curve: &Curve, c: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    match curve {
        Curve::Polyline(poly) => {
            for (a, b) in poly.segments() {
                let d = b - a;
                for s in gl5_nodes(0.0, 1.0) {
                    worst = worst.max((conserved(&v, a.lerp(b, s), d)? - c).abs());
                }
            }
        }
        Curve::Parametric(par) => {
            let (t0, t1) = (par.t0(), par.t1());
            let h = (t1 - t0) / PARAMETRIC_PANELS as f64;
            for k in 0..PARAMETRIC_PANELS {
                let a = t0 + h * k as f64;
                for t in gl5_nodes(a, a + h) {
                    worst = worst.max((conserved(&v, par.at(t), par.velocity(t))? - c).abs());
                }
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn vertical_line_has_zero_constant() {
        let seg = Curve::segment(Point2::new(0.3, -1.5), Point2::new(0.3, -0.2)).unwrap();
        assert_eq!(first_integral_residual(|y: f64| (-y).sqrt(), &seg, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn cycloid_conserves_the_first_integral() {
        let cycloid = Curve::parametric_with_velocity(
            |t| Point2::new(t - t.sin(), -(1.0 - t.cos())),
            |t| Vec2::new(1.0 - t.cos(), -t.sin()),
            0.1,
            PI - 0.1,
        )
        .unwrap();
        let r = first_integral_residual(|y: f64| (-y).sqrt(), &cycloid, FRAC_1_SQRT_2).unwrap();
        assert!(r <= 1e-12, "{r}");
    }

    #[test]
    fn horizontal_segment_is_not_a_geodesic() {
        let seg = Curve::segment(Point2::new(0.0, -1.0), Point2::new(1.0, -1.0)).unwrap();
        let r = first_integral_residual(|y: f64| (-y).sqrt(), &seg, FRAC_1_SQRT_2).unwrap();
        assert!((r - (1.0 - FRAC_1_SQRT_2)).abs() < 1e-15);
        assert!((r - 0.2928932188).abs() < 1e-10);
    }

    #[test]
    fn singular_speed_is_reported() {
        let seg = Curve::segment(Point2::new(0.0, -1.0), Point2::new(0.0, 1.0)).unwrap();
        assert!(matches!(
            first_integral_residual(|y: f64| (-y).sqrt(), &seg, 0.0),
            Err(Error::SingularDensity(_))
        ));
    }
}
