//! Named calibration examples, each with a reference minimizer on a level
//! curve of `g` and, where one exists, a closed-form weighted length.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

use crate::builder::{build_harmonic_pair, power_density_pair, HolomorphicSpec};
use crate::calibration::{
    generate_competitors, level_residual, verify_minimizer, CalibrationPair, CompetitorSpec, Tolerances,
    VerificationReport, VerifyConfig,
};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::geometry::{Domain, Point2, Vec2};
use crate::quadrature::{weighted_length, DEFAULT_REL_TOL};

/// Entry names in catalog order.
pub const ENTRY_NAMES: [&str; 9] = [
    "astroid",
    "power",
    "brachistochrone",
    "conic-eps-0",
    "conic-ellipse",
    "conic-parabola",
    "conic-hyperbola",
    "grim-reaper",
    "log-spiral",
];

/// Relative agreement required between the minimizer's weighted length and
/// the closed-form value.
pub const ORACLE_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub pair: CalibrationPair,
    pub minimizer: Curve,
    pub default_endpoints: (Point2, Point2),
    pub oracle_length: Option<f64>,
    pub notes: String,
}

impl CatalogEntry {
    fn new(name: &str, pair: CalibrationPair, minimizer: Curve, oracle_length: Option<f64>, notes: &str) -> Self {
        CatalogEntry {
            name: name.to_string(),
            default_endpoints: (minimizer.start(), minimizer.end()),
            pair,
            minimizer,
            oracle_length,
            notes: notes.to_string(),
        }
    }

    /// Endpoints match the minimizer, `g` is constant along it, and the
    /// oracle length (if any) is reproduced by quadrature.
    pub fn check_invariants(&self) -> Result<()> {
        let (p1, p2) = self.default_endpoints;
        let gap = p1.distance(self.minimizer.start()).max(p2.distance(self.minimizer.end()));
        if gap > 0.0 {
            return Err(Error::EndpointMismatch(gap));
        }
        let tolerance = Tolerances::default().level_for(self.pair.g.eval(p1)?);
        let residual = level_residual(&self.pair.g, &self.minimizer)?;
        if residual > tolerance {
            return Err(Error::NotOnLevelCurve { residual, tolerance });
        }
        if let Some(oracle) = self.oracle_length {
            let len = weighted_length(&self.minimizer, &self.pair.rho, DEFAULT_REL_TOL)?;
            if (len - oracle).abs() > ORACLE_REL_TOL * oracle {
                return Err(Error::InvalidInput(format!(
                    "{}: minimizer length {len} differs from closed form {oracle}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// Seeded competitors joining the default endpoints.
    pub fn competitors(&self, count: usize, seed: u64) -> Result<Vec<Curve>> {
        let (p1, p2) = self.default_endpoints;
        generate_competitors(p1, p2, &self.pair.domain, seed, count, CompetitorSpec::default())
    }

    /// Full certificate against `n_competitors` seeded competitors.
    pub fn verify(&self, n_competitors: usize, seed: u64, tolerances: Tolerances) -> Result<VerificationReport> {
        let competitors = self.competitors(n_competitors, seed)?;
        let cfg = VerifyConfig {
            entry_name: self.name.clone(),
            tolerances,
            seed,
            ..VerifyConfig::default()
        };
        verify_minimizer(&self.pair, &self.minimizer, &competitors, &cfg)
    }
}

/// All nine entries with default parameters.
pub fn catalog_entries() -> Vec<CatalogEntry> {
    ENTRY_NAMES
        .iter()
        .map(|n| entry_by_name(n).expect("catalog entries are well-formed"))
        .collect()
}

/// Exact, case-sensitive lookup.
pub fn entry_by_name(name: &str) -> Result<CatalogEntry> {
    match name {
        "astroid" => Ok(astroid()),
        "power" => power(1.0, 2.0),
        "brachistochrone" => Ok(brachistochrone()),
        "conic-eps-0" => hyperbolic_quarter_circle(0.0, 1.0),
        "conic-ellipse" => conic_ellipse(0.5),
        "conic-parabola" => Ok(conic_parabola()),
        "conic-hyperbola" => conic_hyperbola(2.0),
        "grim-reaper" => Ok(grim_reaper()),
        "log-spiral" => log_spiral(1.0, 0.0, FRAC_PI_4),
        _ => Err(Error::UnknownEntry {
            name: name.to_string(),
            valid: ENTRY_NAMES.iter().map(|s| s.to_string()).collect(),
        }),
    }
}

fn rect(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Domain {
    Domain::rect(xmin, xmax, ymin, ymax).expect("literal box")
}

/// Astroid `x^(2/3) + y^(2/3) = 1` for the density `sqrt(x^(2/3) + y^(2/3))`.
pub fn astroid() -> CatalogEntry {
    let f = ScalarField::with_gradient(
        |p| 0.75 * (p.x.powf(4.0 / 3.0) - p.y.powf(4.0 / 3.0)),
        |p| Vec2::new(p.x.cbrt(), -p.y.cbrt()),
    );
    let g = ScalarField::with_gradient(
        |p| p.x.cbrt().powi(2) + p.y.cbrt().powi(2),
        |p| Vec2::new(2.0 / (3.0 * p.x.cbrt()), 2.0 / (3.0 * p.y.cbrt())),
    );
    let rho = ScalarField::new(|p| (p.x.cbrt().powi(2) + p.y.cbrt().powi(2)).sqrt());
    let pair = CalibrationPair::new(f, g, rect(0.0, 1.5, 0.0, 1.5), rho);
    let arc = Curve::parametric_with_velocity(
        |t| Point2::new(t.cos().powi(3), t.sin().powi(3)),
        |t| {
            let (s, c) = t.sin_cos();
            Vec2::new(-3.0 * c * c * s, 3.0 * s * s * c)
        },
        PI / 6.0,
        PI / 3.0,
    )
    .expect("astroid arc");
    // rho = 1 on the astroid, whose arc length is (3/2) sin² t.
    CatalogEntry::new("astroid", pair, arc, Some(0.75), "astroid in the open quadrant")
}

/// Power densities `sqrt(x^(2p) + y^(2q))`; the minimizer is the level curve
/// of `g` through `(e, 1)` parametrized by `y` in `[1, 2]`.
pub fn power(p: f64, q: f64) -> Result<CatalogEntry> {
    let pair = power_density_pair(p, q, rect(0.0, 4.0, 0.0, 3.0))?;
    let psi = |lambda: f64, t: f64| if lambda == 1.0 { t.ln() } else { t.powf(1.0 - lambda) / (1.0 - lambda) };
    let level = psi(p, std::f64::consts::E) + psi(q, 1.0);
    // x(y) solves psi_p(x) = level - psi_q(y).
    let x_of = move |y: f64| {
        let target = level - psi(q, y);
        if p == 1.0 {
            target.exp()
        } else {
            ((1.0 - p) * target).powf(1.0 / (1.0 - p))
        }
    };
    let dx_of = move |y: f64| {
        let x = x_of(y);
        -(y.powf(-q)) * x.powf(p)
    };
    let curve = Curve::parametric_with_velocity(
        move |y| Point2::new(x_of(y), y),
        move |y| Vec2::new(dx_of(y), 1.0),
        1.0,
        2.0,
    )?;
    for pt in curve.sample(65) {
        if !pair.domain.contains_interior(pt) {
            return Err(Error::CannotFitInDomain(0));
        }
    }
    Ok(CatalogEntry::new(
        "power",
        pair,
        curve,
        None,
        "power density family; level curve of g = psi_p(x) + psi_q(y)",
    ))
}

/// Cycloid `(t - sin t, -(1 - cos t))` for the density `1/sqrt(-y)` on the
/// strip `-2 < y < 0`.
pub fn brachistochrone() -> CatalogEntry {
    // u = 1 + y, and 1 - u² = -y (2 + y).
    let g = ScalarField::with_gradient(
        |p| p.x - (1.0 + p.y).acos() + (-p.y * (2.0 + p.y)).sqrt(),
        |p| Vec2::new(1.0, (-p.y / (2.0 + p.y)).sqrt()),
    );
    let f = ScalarField::with_gradient(
        |p| FRAC_1_SQRT_2 * (-p.x + (1.0 + p.y).asin() - (-p.y * (2.0 + p.y)).sqrt()),
        |p| Vec2::new(-FRAC_1_SQRT_2, FRAC_1_SQRT_2 * ((2.0 + p.y) / -p.y).sqrt()),
    );
    let rho = ScalarField::new(|p| 1.0 / (-p.y).sqrt());
    let pair = CalibrationPair::new(f, g, rect(-0.5, 4.0, -2.0, 0.0), rho);
    let cycloid = Curve::parametric_with_velocity(
        |t| Point2::new(t - t.sin(), -(1.0 - t.cos())),
        |t| Vec2::new(1.0 - t.cos(), -t.sin()),
        0.1,
        PI - 0.1,
    )
    .expect("cycloid arc");
    CatalogEntry::new(
        "brachistochrone",
        pair,
        cycloid,
        None,
        "half cycloid below the x-axis, first-integral constant c = 1/sqrt(2)",
    )
}

/// Quarter circle of radius `r` centred at `(x0, 0)` for the hyperbolic
/// density `1/y`, between polar angles `π/6` and `π/3`.
pub fn hyperbolic_quarter_circle(x0: f64, r: f64) -> Result<CatalogEntry> {
    if !(r > 0.0) {
        return Err(Error::NonPositiveArgument(r));
    }
    let s_of = move |y: f64| (1.0 - (y / r).powi(2)).sqrt();
    let g = ScalarField::with_gradient(
        move |p| p.x - x0 - (r * r - p.y * p.y).sqrt(),
        move |p| Vec2::new(1.0, p.y / (r * r - p.y * p.y).sqrt()),
    );
    let f = ScalarField::with_gradient(
        move |p| {
            let s = s_of(p.y);
            -p.x / r + s - s.atanh()
        },
        move |p| Vec2::new(-1.0 / r, s_of(p.y) / p.y),
    );
    let rho = ScalarField::new(|p| 1.0 / p.y);
    let pair = CalibrationPair::new(f, g, Domain::rect(x0 - r, x0 + 2.0 * r, 0.0, r)?, rho);
    let arc = Curve::parametric_with_velocity(
        move |t| Point2::new(x0 + r * t.cos(), r * t.sin()),
        move |t| Vec2::new(-r * t.sin(), r * t.cos()),
        PI / 6.0,
        PI / 3.0,
    )?;
    let (a, b) = (arc.start(), arc.end());
    let oracle = (1.0 + (a.distance(b).powi(2)) / (2.0 * a.y * b.y)).acosh();
    Ok(CatalogEntry::new(
        "conic-eps-0",
        pair,
        arc,
        Some(oracle),
        "eccentricity 0: circle orthogonal to the x-axis in the hyperbolic half-plane",
    ))
}

/// Shared shape of the `ε != 1` conic pairs: with `k = 1 - ε²` and
/// `S = sqrt(1 - k y²)`, `g = k x - S` and `f = -x + S - H(S)` where `H' = 1/(1 - S²)`.
fn conic_pair(eps: f64, domain: Domain) -> CalibrationPair {
    let k = 1.0 - eps * eps;
    let s_of = move |y: f64| (1.0 - k * y * y).sqrt();
    // atanh for S < 1 (ellipse), acoth for S > 1 (hyperbola).
    let h = move |s: f64| if s < 1.0 { s.atanh() } else { 0.5 * ((s + 1.0) / (s - 1.0)).ln() };
    let g = ScalarField::with_gradient(
        move |p| k * p.x - s_of(p.y),
        move |p| Vec2::new(k, k * p.y / s_of(p.y)),
    );
    let f = ScalarField::with_gradient(
        move |p| {
            let s = s_of(p.y);
            -p.x + s - h(s)
        },
        move |p| Vec2::new(-1.0, s_of(p.y) / p.y),
    );
    let rho = ScalarField::new(move |p| (eps * eps + 1.0 / (p.y * p.y)).sqrt());
    CalibrationPair::new(f, g, domain, rho)
}

fn conic_arc(eps: f64, y0: f64, y1: f64) -> Result<Curve> {
    let k = 1.0 - eps * eps;
    let s_of = move |y: f64| (1.0 - k * y * y).sqrt();
    Curve::parametric_with_velocity(
        move |y| Point2::new(s_of(y) / k, y),
        move |y| Vec2::new(-y / s_of(y), 1.0),
        y0,
        y1,
    )
}

/// Ellipse arc for `0 < ε < 1` on the strip `0 < y < 1/sqrt(1 - ε²)`.
pub fn conic_ellipse(eps: f64) -> Result<CatalogEntry> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidInput(format!("ellipse needs 0 < eps < 1, got {eps}")));
    }
    let k = 1.0 - eps * eps;
    let ymax = 1.0 / k.sqrt();
    let domain = Domain::rect(-1.0, 1.0 / k + 1.0, 0.0, ymax)?;
    let arc = conic_arc(eps, 0.3, (0.9 * ymax).min(1.0))?;
    Ok(CatalogEntry::new(
        "conic-ellipse",
        conic_pair(eps, domain),
        arc,
        None,
        "ellipse (1-e²)² x² + (1-e²) y² = 1; focus form 1 - e x = sqrt(x² + y²) shifted by e/(1-e²)",
    ))
}

/// Parabola `x = -y²/2` for the density `sqrt(1 + 1/y²)`.
pub fn conic_parabola() -> CatalogEntry {
    let g = ScalarField::with_gradient(|p| p.x + 0.5 * p.y * p.y, |p| Vec2::new(1.0, p.y));
    let f = ScalarField::with_gradient(|p| -p.x + p.y.ln(), |p| Vec2::new(-1.0, 1.0 / p.y));
    let rho = ScalarField::new(|p| (1.0 + 1.0 / (p.y * p.y)).sqrt());
    let pair = CalibrationPair::new(f, g, rect(-3.0, 2.0, 0.0, 3.0), rho);
    let arc = Curve::parametric_with_velocity(|y| Point2::new(-0.5 * y * y, y), |y| Vec2::new(-y, 1.0), 0.5, 2.0)
        .expect("parabola arc");
    CatalogEntry::new(
        "conic-parabola",
        pair,
        arc,
        None,
        "eccentricity 1; focus form 2x + y² = 1 shifted left by 1/2",
    )
}

/// Hyperbola branch for `ε > 1` in the upper half-plane.
pub fn conic_hyperbola(eps: f64) -> Result<CatalogEntry> {
    if !(eps > 1.0) {
        return Err(Error::InvalidInput(format!("hyperbola needs eps > 1, got {eps}")));
    }
    let domain = Domain::rect(-3.0, 2.0, 0.0, 3.0)?;
    let arc = conic_arc(eps, 0.5, 2.0)?;
    Ok(CatalogEntry::new(
        "conic-hyperbola",
        conic_pair(eps, domain),
        arc,
        None,
        "hyperbola branch (1-e²)² x² + (1-e²) y² = 1 with x < 0",
    ))
}

/// Right half of the grim reaper `y = -ln cos x` for the density `e^y`.
pub fn grim_reaper() -> CatalogEntry {
    let g = ScalarField::with_gradient(
        |p| p.x - (-p.y).exp().acos(),
        |p| Vec2::new(1.0, -1.0 / (2.0 * p.y).exp_m1().sqrt()),
    );
    let f = ScalarField::with_gradient(
        |p| p.x + (2.0 * p.y).exp_m1().sqrt() - (-p.y).exp().acos(),
        |p| Vec2::new(1.0, (2.0 * p.y).exp_m1().sqrt()),
    );
    let rho = ScalarField::new(|p| p.y.exp());
    let pair = CalibrationPair::new(f, g, rect(0.0, PI / 2.0, 0.0, 1.5), rho);
    let (x0, x1) = (0.1, FRAC_PI_4);
    let arc = Curve::parametric_with_velocity(
        |x: f64| Point2::new(x, -x.cos().ln()),
        |x: f64| Vec2::new(1.0, x.tan()),
        x0,
        x1,
    )
    .expect("grim reaper arc");
    // e^y ds = sec² x dx.
    CatalogEntry::new(
        "grim-reaper",
        pair,
        arc,
        Some(x1.tan() - x0.tan()),
        "translating soliton of curve-shortening flow",
    )
}

/// Logarithmic spiral `r = r0 exp(-cot α (θ - θ0))` for the density `1/r`,
/// as the zero set of the rotated `ln(z)`; `θ` spans `θ0 ± 1`.
pub fn log_spiral(r0: f64, theta0: f64, alpha: f64) -> Result<CatalogEntry> {
    if !(r0 > 0.0) {
        return Err(Error::NonPositiveArgument(r0));
    }
    if !(alpha > 0.0 && alpha < PI) {
        return Err(Error::InvalidInput(format!("spiral angle must lie in (0, π), got {alpha}")));
    }
    if !(theta0.abs() + 1.0 < PI) {
        return Err(Error::InvalidInput(format!("θ0 = {theta0} puts the arc across the branch cut")));
    }
    let (r_min, r_max) = (0.2, 5.0);
    // Annulus with the negative x-axis removed so that θ stays single-valued.
    let domain = Domain::rect(-r_max, r_max, -r_max, r_max)?.with_clearance(move |p| {
        let r = p.x.hypot(p.y);
        let cut = if p.x < 0.0 { p.y.abs() } else { r };
        (r - r_min).min(r_max - r).min(cut)
    });
    let pair = build_harmonic_pair(&HolomorphicSpec::log_polar(r0, theta0, alpha), domain)?;
    let lambda = -1.0 / alpha.tan();
    let arc = Curve::parametric_with_velocity(
        move |t: f64| {
            let r = r0 * (lambda * (t - theta0)).exp();
            Point2::new(r * t.cos(), r * t.sin())
        },
        move |t: f64| {
            let r = r0 * (lambda * (t - theta0)).exp();
            let (s, c) = t.sin_cos();
            Vec2::new(r * (lambda * c - s), r * (lambda * s + c))
        },
        theta0 - 1.0,
        theta0 + 1.0,
    )?;
    for pt in [arc.start(), arc.end()] {
        if !pair.domain.contains_interior(pt) {
            return Err(Error::CannotFitInDomain(0));
        }
    }
    // ds / r = dθ / sin α.
    Ok(CatalogEntry::new(
        "log-spiral",
        pair,
        arc,
        Some(2.0 / alpha.sin()),
        "zero set of sin α ln(r/r0) + cos α (θ - θ0), domain 0.2 < r < 5 minus the negative x-axis",
    ))
}
