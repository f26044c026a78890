//! Pairs for densities `1/v(y)` from the first integral of the geodesic
//! equation.
//!
//! With `w(y) = sqrt(1 - c² v(y)²)` the exact forms
//!
//! ```text
//! dg = dx + (c v / w) dy        df = -c dx + (w / v) dy
//! ```
//!
//! give `∇f · ∇g = 0`, `|∇g|² = 1/w²` and `|∇f| = 1/v`. Both `y`-parts are
//! integrated numerically from an anchor ordinate and cached.

use std::fmt;
use std::sync::Arc;

use super::chebyshev::{ChebyshevTable, DEFAULT_NODES};
use crate::calibration::CalibrationPair;
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::geometry::{Domain, Point2, Vec2};

pub type SpeedFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Scan spacing for the validity strip.
const SCAN_STEP: f64 = 1e-3;
/// Bisection resolution of the strip edges.
const EDGE_TOL: f64 = 1e-12;

#[derive(Clone)]
pub struct SymmetricDensitySpec {
    /// Speed factor `v(y) > 0`; the density is `1/v`.
    pub v: SpeedFn,
    /// First-integral constant.
    pub c: f64,
    /// Ordinate where both antiderivatives vanish.
    pub y_ref: f64,
    pub domain: Domain,
    /// Chebyshev nodes per table panel.
    pub nodes: usize,
    /// Interpolation tolerance of the cached antiderivatives.
    pub interp_tol: f64,
}

impl fmt::Debug for SymmetricDensitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymmetricDensitySpec")
            .field("c", &self.c)
            .field("y_ref", &self.y_ref)
            .field("domain", &self.domain)
            .field("nodes", &self.nodes)
            .field("interp_tol", &self.interp_tol)
            .finish()
    }
}

impl SymmetricDensitySpec {
    pub fn new(v: impl Fn(f64) -> f64 + Send + Sync + 'static, c: f64, y_ref: f64, domain: Domain) -> Self {
        SymmetricDensitySpec {
            v: Arc::new(v),
            c,
            y_ref,
            domain,
            nodes: DEFAULT_NODES,
            interp_tol: 1e-10,
        }
    }

    fn is_valid(&self, y: f64) -> bool {
        let v = (self.v)(y);
        v.is_finite() && v > 0.0 && 1.0 - self.c * self.c * v * v > 0.0
    }
}

fn bisect_edge(spec: &SymmetricDensitySpec, mut good: f64, mut bad: f64) -> f64 {
    while (bad - good).abs() > EDGE_TOL {
        let mid = 0.5 * (good + bad);
        if spec.is_valid(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

fn scan(spec: &SymmetricDensitySpec, limit: f64, dir: f64) -> f64 {
    let mut prev = spec.y_ref;
    let mut k = 1u64;
    loop {
        let y = spec.y_ref + dir * SCAN_STEP * k as f64;
        if dir * (y - limit) >= 0.0 {
            return if spec.is_valid(limit) { limit } else { bisect_edge(spec, prev, limit) };
        }
        if !spec.is_valid(y) {
            return bisect_edge(spec, prev, y);
        }
        prev = y;
        k += 1;
    }
}

/// The connected `y`-interval around `y_ref` (within the domain's box) where
/// `v > 0` and `1 - c² v² > 0`, edges located to `1e-12`.
pub fn detect_validity_strip(spec: &SymmetricDensitySpec) -> Result<(f64, f64)> {
    let v_ref = (spec.v)(spec.y_ref);
    if !(v_ref.is_finite() && v_ref > 0.0) {
        return Err(Error::SingularDensity(Point2::new(0.0, spec.y_ref)));
    }
    if !spec.is_valid(spec.y_ref) {
        return Err(Error::ValidityViolated(spec.y_ref));
    }
    let bbox = spec.domain.bbox();
    if !(bbox.ymin < spec.y_ref && spec.y_ref < bbox.ymax) {
        return Err(Error::InvalidInput(format!("y_ref = {} lies outside the domain", spec.y_ref)));
    }
    Ok((scan(spec, bbox.ymin, -1.0), scan(spec, bbox.ymax, 1.0)))
}

/// `g = x + G(y)`, `f = -c x + F(y)`, `rho = 1/v(y)` on the domain shrunk to
/// the validity strip. `G(y_ref) = F(y_ref) = 0`.
pub fn build_symmetric_pair(spec: &SymmetricDensitySpec) -> Result<CalibrationPair> {
    let (lo, hi) = detect_validity_strip(spec)?;
    let domain = spec.domain.restrict_y(lo, hi)?;
    let margin = domain.margin();
    let (tlo, thi) = (lo + margin, hi - margin);
    if !(tlo < spec.y_ref && spec.y_ref < thi) {
        return Err(Error::InvalidInput(format!(
            "y_ref = {} is within the standoff of the validity strip ({lo}, {hi})",
            spec.y_ref
        )));
    }

    let c = spec.c;
    let v = spec.v.clone();
    let integrand = |part: fn(f64, f64, f64) -> f64| {
        let v = v.clone();
        move |y: f64| {
            let vy = v(y);
            let wy = (1.0 - c * c * vy * vy).sqrt();
            if !(vy > 0.0 && vy.is_finite()) {
                return Err(Error::SingularDensity(Point2::new(0.0, y)));
            }
            if !(wy > 0.0) {
                return Err(Error::ValidityViolated(y));
            }
            Ok(part(c, vy, wy))
        }
    };
    let g_slope: fn(f64, f64, f64) -> f64 = |c, v, w| c * v / w;
    let f_slope: fn(f64, f64, f64) -> f64 = |_, v, w| w / v;

    let g_table = if c == 0.0 {
        None
    } else {
        Some(Arc::new(ChebyshevTable::build(
            integrand(g_slope),
            tlo,
            thi,
            spec.y_ref,
            spec.nodes,
            spec.interp_tol,
        )?))
    };
    let f_table = Arc::new(ChebyshevTable::build(
        integrand(f_slope),
        tlo,
        thi,
        spec.y_ref,
        spec.nodes,
        spec.interp_tol,
    )?);

    let (vg, vf, vr) = (spec.v.clone(), spec.v.clone(), spec.v.clone());
    let g = ScalarField::with_gradient(
        move |p| p.x + g_table.as_ref().map_or(0.0, |t| t.eval(p.y)),
        move |p| {
            let vy = vg(p.y);
            Vec2::new(1.0, c * vy / (1.0 - c * c * vy * vy).sqrt())
        },
    );
    let f = ScalarField::with_gradient(
        move |p| -c * p.x + f_table.eval(p.y),
        move |p| {
            let vy = vf(p.y);
            Vec2::new(-c, (1.0 - c * c * vy * vy).sqrt() / vy)
        },
    );
    let rho = ScalarField::new(move |p| 1.0 / vr(p.y));
    Ok(CalibrationPair::new(f, g, domain, rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calibration::{check_density, check_orthogonality, sample_interior};

    fn brachistochrone_spec() -> SymmetricDensitySpec {
        let domain = Domain::rect(-0.5, 4.0, -3.0, 0.5).unwrap();
        SymmetricDensitySpec::new(|y: f64| (-y).sqrt(), std::f64::consts::FRAC_1_SQRT_2, -1.0, domain)
    }

    #[test]
    fn strip_is_detected() {
        let (lo, hi) = detect_validity_strip(&brachistochrone_spec()).unwrap();
        assert!((lo + 2.0).abs() < 2e-12, "{lo}");
        assert!(hi.abs() < 2e-12, "{hi}");
    }

    #[test]
    fn bad_anchor_errors() {
        let mut spec = brachistochrone_spec();
        spec.y_ref = 0.25;
        assert!(matches!(build_symmetric_pair(&spec), Err(Error::SingularDensity(_))));
        spec.y_ref = -2.5;
        assert_eq!(build_symmetric_pair(&spec).unwrap_err(), Error::ValidityViolated(-2.5));
    }

    #[test]
    fn zero_constant_gives_vertical_geodesics() {
        let domain = Domain::rect(-1.0, 1.0, 0.5, 2.0).unwrap();
        let spec = SymmetricDensitySpec::new(|y: f64| y, 0.0, 1.0, domain);
        let pair = build_symmetric_pair(&spec).unwrap();
        for p in [Point2::new(0.3, 0.7), Point2::new(-0.9, 1.9)] {
            assert_eq!(pair.g.value(p), p.x);
        }
        // F(y) = ln(y) for v = y.
        let p = Point2::new(0.2, 1.5);
        assert!((pair.f.value(p) - 1.5f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn brachistochrone_matches_closed_form() {
        let pair = build_symmetric_pair(&brachistochrone_spec()).unwrap();
        // g from the cycloid level set, aligned at the anchor point t = pi/2.
        let closed = |p: Point2| {
            let u = 1.0 + p.y;
            p.x - u.acos() + (1.0 - u * u).sqrt()
        };
        let anchor = Point2::new(std::f64::consts::FRAC_PI_2 - 1.0, -1.0);
        assert!(closed(anchor).abs() < 1e-15);
        assert!((pair.g.value(anchor) - anchor.x).abs() < 1e-12);
        let shift = pair.g.value(anchor) - closed(anchor);
        for p in sample_interior(&pair.domain, 100, 11).unwrap() {
            let d = pair.g.value(p) - closed(p) - shift;
            assert!(d.abs() <= 1e-9, "at {p}: {d}");
        }
    }

    #[test]
    fn regularity_and_density_identities() {
        let pair = build_symmetric_pair(&brachistochrone_spec()).unwrap();
        let c2 = 0.5;
        for p in sample_interior(&pair.domain, 200, 3).unwrap() {
            let gg = pair.g.grad(p).unwrap();
            let expected = 1.0 / (1.0 + c2 * p.y);
            assert!((gg.dot(gg) - expected).abs() <= 1e-9 * expected);
        }
        assert!(check_density(&pair, 500, 1).unwrap() <= 1e-9);
        assert!(check_orthogonality(&pair, 500, 1).unwrap() <= 1e-9);
    }
}
