//! Predictor-corrector continuation of `{g = g(start)}`.

use std::fmt;
use std::sync::Arc;

use crate::calibration::VANISHING_GRADIENT;
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::geometry::{Domain, Point2};

pub type StopFn = Arc<dyn Fn(Point2) -> bool + Send + Sync>;

const NEWTON_ITERS: usize = 20;

#[derive(Clone)]
pub struct TraceConfig {
    /// Euclidean length of each predictor step.
    pub step: f64,
    pub max_steps: usize,
    /// Required `|g - g(start)|` at every output point.
    pub corrector_tol: f64,
    /// Tracing ends at the first point where this returns true; that point is
    /// kept.
    pub stop: Option<StopFn>,
    /// Tracing ends before the first point outside this domain.
    pub domain: Option<Domain>,
}

impl fmt::Debug for TraceConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TraceConfig")
            .field("step", &self.step)
            .field("max_steps", &self.max_steps)
            .field("corrector_tol", &self.corrector_tol)
            .field("stop", &self.stop.is_some())
            .field("domain", &self.domain)
            .finish()
    }
}

impl TraceConfig {
    pub fn new(step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidInput(format!("trace step must be positive, got {step}")));
        }
        Ok(TraceConfig {
            step,
            max_steps: 100_000,
            corrector_tol: 1e-12,
            stop: None,
            domain: None,
        })
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn with_corrector_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::InvalidInput(format!("corrector tolerance must be positive, got {tol}")));
        }
        self.corrector_tol = tol;
        Ok(self)
    }

    pub fn with_stop(mut self, stop: impl Fn(Point2) -> bool + Send + Sync + 'static) -> Self {
        self.stop = Some(Arc::new(stop));
        self
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = Some(domain);
        self
    }

    fn inside(&self, p: Point2) -> bool {
        self.domain.as_ref().is_none_or(|d| d.contains_interior(p))
    }
}

/// Newton iteration along `∇g` back onto `g = level`, halving the update
/// while it overshoots. `None` means it left the domain or failed to settle.
fn correct(g: &ScalarField, mut p: Point2, level: f64, cfg: &TraceConfig) -> Result<Option<Point2>> {
    if !cfg.inside(p) {
        return Ok(None);
    }
    let mut r = g.eval(p)? - level;
    for _ in 0..NEWTON_ITERS {
        if r.abs() <= cfg.corrector_tol {
            return Ok(Some(p));
        }
        let gr = g.grad(p)?;
        let n2 = gr.dot(gr);
        if n2.sqrt() < VANISHING_GRADIENT {
            return Err(Error::VanishingGradient(p));
        }
        let delta = gr * (-r / n2);
        let mut damping = 1.0;
        let mut next = None;
        for _ in 0..NEWTON_ITERS {
            let q = p + delta * damping;
            if q.is_finite() && cfg.inside(q) {
                if let Ok(v) = g.eval(q) {
                    let rq = v - level;
                    if rq.abs() < r.abs() {
                        next = Some((q, rq));
                        break;
                    }
                }
            }
            damping *= 0.5;
        }
        match next {
            Some((q, rq)) => {
                p = q;
                r = rq;
            }
            None => return Ok(None),
        }
    }
    Ok((r.abs() <= cfg.corrector_tol).then_some(p))
}

/// Polyline along the level curve of `g` through `start`, heading along
/// `direction_sign` times the counter-clockwise normal of `∇g`.
///
/// Ends at the stop predicate, on leaving `cfg.domain` (or failing to
/// correct inside it), or after `cfg.max_steps` steps. Exhausting the steps
/// is an error only when a stop predicate was given.
pub fn trace_level(g: &ScalarField, start: Point2, direction_sign: f64, cfg: &TraceConfig) -> Result<Curve> {
    let sign = if direction_sign < 0.0 { -1.0 } else { 1.0 };
    if !cfg.inside(start) {
        return Err(Error::InvalidInput(format!("trace start {start} is outside the domain")));
    }
    let level = g.eval(start)?;
    let mut pts = vec![start];
    let mut p = start;
    let mut prev_tangent = None;
    for _ in 0..cfg.max_steps {
        let gr = g.grad(p)?;
        let Some(n) = gr.normalized().filter(|_| gr.norm() >= VANISHING_GRADIENT) else {
            return Err(Error::VanishingGradient(p));
        };
        let mut tangent = n.perp() * sign;
        // Keep heading the same way if the normal flips between steps.
        if let Some(t) = prev_tangent {
            if tangent.dot(t) < 0.0 {
                tangent = -tangent;
            }
        }
        let predicted = p + tangent * cfg.step;
        let Some(q) = correct(g, predicted, level, cfg)? else {
            return Curve::polyline(pts);
        };
        if q == p {
            return Curve::polyline(pts);
        }
        pts.push(q);
        if cfg.stop.as_ref().is_some_and(|s| s(q)) {
            return Curve::polyline(pts);
        }
        prev_tangent = Some(tangent);
        p = q;
    }
    if cfg.stop.is_some() {
        return Err(Error::MaxStepsExceeded(cfg.max_steps));
    }
    Curve::polyline(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vec2;

    #[test]
    fn linear_level_set_is_horizontal() {
        let g = ScalarField::with_gradient(|p| p.y, |_| Vec2::new(0.0, 1.0));
        for dir in [1.0, -1.0] {
            let cfg = TraceConfig::new(0.1).unwrap().with_max_steps(10);
            let c = trace_level(&g, Point2::new(0.0, 0.0), dir, &cfg).unwrap();
            let pts = c.sample(0);
            assert_eq!(pts.len(), 11);
            assert!(pts.iter().all(|p| p.y == 0.0));
            assert!((pts[10].x + dir).abs() < 1e-12);
        }
    }

    #[test]
    fn traced_circle() {
        let g = ScalarField::with_gradient(
            |p| p.x - (1.0 - p.y * p.y).sqrt(),
            |p| Vec2::new(1.0, p.y / (1.0 - p.y * p.y).sqrt()),
        );
        let start = Point2::new(0.5, 3f64.sqrt() / 2.0);
        let cfg = TraceConfig::new(1e-2).unwrap().with_stop(|p| p.y < 0.2 || p.y > 0.95);
        for dir in [1.0, -1.0] {
            let c = trace_level(&g, start, dir, &cfg).unwrap();
            let pts = c.sample(0);
            assert!(pts.len() > 10);
            for p in &pts {
                assert!((p.x.hypot(p.y) - 1.0).abs() <= 1e-8, "{p}");
                assert!((g.value(*p) - g.value(start)).abs() <= cfg.corrector_tol);
            }
        }
    }

    #[test]
    fn stop_predicate_that_never_fires() {
        let g = ScalarField::new(|p| p.y);
        let cfg = TraceConfig::new(0.1).unwrap().with_max_steps(5).with_stop(|_| false);
        assert_eq!(
            trace_level(&g, Point2::new(0.0, 0.0), 1.0, &cfg).unwrap_err(),
            Error::MaxStepsExceeded(5)
        );
    }

    #[test]
    fn domain_exit_ends_the_trace() {
        let g = ScalarField::new(|p| p.y);
        let cfg = TraceConfig::new(0.1)
            .unwrap()
            .with_domain(Domain::rect(-1.0, 1.0, -1.0, 1.0).unwrap());
        let c = trace_level(&g, Point2::new(0.0, 0.0), 1.0, &cfg).unwrap();
        assert!(c.end().x > -1.0 && c.end().x < -0.85, "{}", c.end());
    }

    #[test]
    fn vanishing_gradient_is_an_error() {
        let g = ScalarField::new(|p| p.x * p.x + p.y * p.y);
        let cfg = TraceConfig::new(0.1).unwrap();
        assert!(matches!(
            trace_level(&g, Point2::new(0.0, 0.0), 1.0, &cfg),
            Err(Error::VanishingGradient(_))
        ));
    }
}
