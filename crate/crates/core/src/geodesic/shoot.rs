//! Fourth-order Runge–Kutta shooting for conformal geodesics.

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::geometry::{Domain, Point2, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShotStatus {
    /// All requested steps were taken.
    Complete,
    /// The trajectory left the domain; the curve stops at the last inside point.
    DomainExit,
}

#[derive(Debug, Clone)]
pub struct Shot {
    pub curve: Curve,
    pub status: ShotStatus,
    pub steps: usize,
}

#[derive(Clone, Copy)]
struct State {
    x: f64,
    y: f64,
    theta: f64,
}

impl State {
    fn offset(self, k: State, h: f64) -> State {
        State {
            x: self.x + h * k.x,
            y: self.y + h * k.y,
            theta: self.theta + h * k.theta,
        }
    }
}

fn rhs(rho: &ScalarField, s: State) -> Result<State> {
    let p = Point2::new(s.x, s.y);
    let r = rho.value(p);
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::SingularDensity(p));
    }
    let gr = rho.grad(p)?;
    let (sin, cos) = s.theta.sin_cos();
    Ok(State {
        x: cos,
        y: sin,
        theta: (gr.dy * cos - gr.dx * sin) / r,
    })
}

/// Integrates the unit-speed geodesic equation of `rho² |dx|²` from `start`
/// at angle `theta0`, `n_steps` steps of Euclidean length `step`.
pub fn shoot_geodesic(
    rho: &ScalarField,
    start: Point2,
    theta0: f64,
    step: f64,
    n_steps: usize,
    domain: Option<&Domain>,
) -> Result<Shot> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidInput(format!("shooting step must be positive, got {step}")));
    }
    if n_steps == 0 {
        return Err(Error::InvalidInput("shooting needs at least one step".into()));
    }
    let r0 = rho.value(start);
    if !(r0.is_finite() && r0 > 0.0) {
        return Err(Error::SingularDensity(start));
    }
    let inside = |p: Point2| domain.is_none_or(|d| d.contains_interior(p));
    if !inside(start) {
        return Err(Error::InvalidInput(format!("shooting start {start} is outside the domain")));
    }

    let mut s = State {
        x: start.x,
        y: start.y,
        theta: theta0,
    };
    let mut pts = Vec::with_capacity(n_steps + 1);
    pts.push(start);
    let h = step;
    for k in 0..n_steps {
        let stage = |st: State| -> Result<Option<State>> {
            if !inside(Point2::new(st.x, st.y)) {
                return Ok(None);
            }
            rhs(rho, st).map(Some)
        };
        let Some(k1) = stage(s)? else { unreachable!("current point is inside") };
        let Some(k2) = stage(s.offset(k1, 0.5 * h))? else { return exit(pts, k) };
        let Some(k3) = stage(s.offset(k2, 0.5 * h))? else { return exit(pts, k) };
        let Some(k4) = stage(s.offset(k3, h))? else { return exit(pts, k) };
        let next = State {
            x: s.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            y: s.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
            theta: s.theta + h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta),
        };
        let p = Point2::new(next.x, next.y);
        if !inside(p) {
            return exit(pts, k);
        }
        pts.push(p);
        s = next;
    }
    Ok(Shot {
        curve: Curve::polyline(pts)?,
        status: ShotStatus::Complete,
        steps: n_steps,
    })
}

fn exit(pts: Vec<Point2>, steps: usize) -> Result<Shot> {
    if pts.len() < 2 {
        return Err(Error::InvalidInput("geodesic leaves the domain on its first step".into()));
    }
    Ok(Shot {
        curve: Curve::polyline(pts)?,
        status: ShotStatus::DomainExit,
        steps,
    })
}

/// Tangent angle at vertex `i` of a polyline from its neighbours (one-sided
/// at the ends).
pub fn tangent_angle_at(points: &[Point2], i: usize) -> Option<f64> {
    if points.len() < 2 || i >= points.len() {
        return None;
    }
    let lo = i.saturating_sub(1);
    let hi = (i + 1).min(points.len() - 1);
    let d: Vec2 = points[hi] - points[lo];
    (d.norm() > 0.0).then(|| d.angle())
}
