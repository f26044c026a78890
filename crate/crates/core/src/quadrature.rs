//! Adaptive 5-point Gauss–Legendre quadrature and weighted line integrals.

use std::collections::BinaryHeap;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::geometry::Point2;

/// Default relative tolerance for weighted lengths.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Bisection depth after which a panel is declared unconverged.
pub const MAX_DEPTH: usize = 60;

const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// The five Gauss–Legendre nodes mapped onto `[a, b]`.
pub fn gl5_nodes(a: f64, b: f64) -> [f64; 5] {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    GL5_NODES.map(|x| mid + half * x)
}

/// One 5-point Gauss–Legendre panel; also returns `∫|f|` for the noise floor.
fn gl5<F>(f: &F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    let mut abs = 0.0;
    for (x, w) in gl5_nodes(a, b).into_iter().zip(GL5_WEIGHTS) {
        let v = f(x)?;
        sum += w * v;
        abs += w * v.abs();
    }
    Ok((half * sum, half * abs))
}

struct Panel {
    a: f64,
    b: f64,
    depth: usize,
    value: f64,
    abs: f64,
    err: f64,
}

impl Panel {
    /// Two-half estimate on `[a, b]`, with `coarse` the one-panel value.
    fn new<F>(f: &F, a: f64, b: f64, coarse: f64, depth: usize) -> Result<Panel>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let m = 0.5 * (a + b);
        let (l, la) = gl5(f, a, m)?;
        let (r, ra) = gl5(f, m, b)?;
        Ok(Panel {
            a,
            b,
            depth,
            value: l + r,
            abs: la + ra,
            err: (l + r - coarse).abs(),
        })
    }
}

/// Error target for an adaptive run.
#[derive(Debug, Clone, Copy)]
pub enum Tolerance {
    Relative(f64),
    Absolute(f64),
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err).is_eq()
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Globally adaptive integration over consecutive intervals
/// `[breaks[i], breaks[i+1]]`. The worst panel is bisected until the summed
/// error estimate meets the tolerance; panels never straddle a breakpoint.
pub fn integrate_breaks<F>(f: F, breaks: &[f64], tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if breaks.len() < 2 {
        return Ok(0.0);
    }
    let mut heap = BinaryHeap::with_capacity(2 * breaks.len());
    for w in breaks.windows(2) {
        if w[0] != w[1] {
            let (coarse, _) = gl5(&f, w[0], w[1])?;
            heap.push(Panel::new(&f, w[0], w[1], coarse, 0)?);
        }
    }
    let sums = |heap: &BinaryHeap<Panel>| {
        heap.iter()
            .fold((0.0, 0.0, 0.0), |(v, e, a), p| (v + p.value, e + p.err, a + p.abs))
    };
    let (mut value, mut err, mut abs) = sums(&heap);
    loop {
        let target = |value: f64, abs: f64| {
            let t = match tol {
                Tolerance::Relative(r) => r * value.abs(),
                Tolerance::Absolute(a) => a,
            };
            t.max(64.0 * f64::EPSILON * abs)
        };
        if err <= target(value, abs) {
            // Running sums drift; confirm with exact ones.
            (value, err, abs) = sums(&heap);
            if err <= target(value, abs) {
                return Ok(value);
            }
        }
        let Some(p) = heap.pop() else {
            return Ok(value);
        };
        if p.depth >= MAX_DEPTH {
            return Err(Error::NoConvergence(MAX_DEPTH));
        }
        let m = 0.5 * (p.a + p.b);
        let (left, _) = gl5(&f, p.a, m)?;
        let (right, _) = gl5(&f, m, p.b)?;
        let l = Panel::new(&f, p.a, m, left, p.depth + 1)?;
        let r = Panel::new(&f, m, p.b, right, p.depth + 1)?;
        value += l.value + r.value - p.value;
        err += l.err + r.err - p.err;
        abs += l.abs + r.abs - p.abs;
        heap.push(l);
        heap.push(r);
    }
}

/// `∫_a^b f` to relative tolerance `rel_tol`, starting from `panels` equal
/// panels.
pub fn integrate<F>(f: F, a: f64, b: f64, rel_tol: f64, panels: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let panels = panels.max(1);
    let mut breaks: Vec<f64> = (0..panels).map(|i| a + (b - a) * i as f64 / panels as f64).collect();
    breaks.push(b);
    integrate_breaks(f, &breaks, Tolerance::Relative(rel_tol))
}

/// `∫_a^b f` to an absolute tolerance.
pub fn integrate_abs<F>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    integrate_breaks(f, &[a, b], Tolerance::Absolute(abs_tol))
}

fn density_at(rho: &ScalarField, p: Point2) -> Result<f64> {
    let r = rho.value(p);
    if r.is_finite() && r > 0.0 {
        Ok(r)
    } else {
        Err(Error::SingularDensity(p))
    }
}

fn check_rel_tol(rel_tol: f64) -> Result<()> {
    if rel_tol > 0.0 && rel_tol <= 1e-2 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("rel_tol must lie in (0, 1e-2], got {rel_tol}")))
    }
}

/// Weighted length `∫ rho ds` along `curve`, converged to `rel_tol`.
///
/// Parametric curves are integrated in their parameter with
/// `rho(x(t)) |x'(t)|`; polylines segment by segment, each segment straight.
pub fn weighted_length(curve: &Curve, rho: &ScalarField, rel_tol: f64) -> Result<f64> {
    check_rel_tol(rel_tol)?;
    match curve {
        Curve::Parametric(c) => integrate(
            |t| Ok(density_at(rho, c.at(t))? * c.velocity(t).norm()),
            c.t0(),
            c.t1(),
            rel_tol,
            32,
        ),
        Curve::Polyline(poly) => {
            let pts = poly.points();
            let breaks: Vec<f64> = (0..pts.len()).map(|i| i as f64).collect();
            let last = pts.len() - 2;
            integrate_breaks(
                |u| {
                    // u in [i, i+1] runs along segment i; the right end of a
                    // panel can land on the next integer.
                    let i = (u.floor() as usize).min(last);
                    let (a, b) = (pts[i], pts[i + 1]);
                    Ok(density_at(rho, a.lerp(b, u - i as f64))? * a.distance(b))
                },
                &breaks,
                Tolerance::Relative(rel_tol),
            )
        }
    }
}

/// `f(end) - f(start)`: the line integral of `df` along any curve.
pub fn exact_increment(f: &ScalarField, curve: &Curve) -> Result<f64> {
    Ok(f.eval(curve.end())? - f.eval(curve.start())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_exact_to_degree_nine() {
        for k in 0..=9 {
            let v = integrate(|x: f64| Ok(x.powi(k)), 0.0, 1.0, 1e-12, 1).unwrap();
            assert!((v - 1.0 / (k as f64 + 1.0)).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn smooth_integrand() {
        let v = integrate(|x: f64| Ok(x.exp()), 0.0, 2.0, 1e-12, 4).unwrap();
        assert!((v - (2f64.exp() - 1.0)).abs() < 1e-11);
    }

    #[test]
    fn endpoint_singularity_converges() {
        let v = integrate(|x: f64| Ok(1.0 / x.sqrt()), 0.0, 1.0, 1e-9, 1).unwrap();
        assert!((v - 2.0).abs() < 2e-8, "{v}");
    }

    #[test]
    fn unit_density_segment() {
        let c = Curve::segment(Point2::new(0.0, 1.0), Point2::new(1.0, 1.0)).unwrap();
        let rho = ScalarField::new(|p| 1.0 / p.y);
        assert!((weighted_length(&c, &rho, 1e-9).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grim_reaper_arc() {
        let c = Curve::parametric(|x| Point2::new(x, -x.cos().ln()), 0.0, PI / 4.0).unwrap();
        let rho = ScalarField::new(|p| p.y.exp());
        let v = weighted_length(&c, &rho, 1e-9).unwrap();
        assert!((v - 1.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn astroid_arc() {
        let c = Curve::parametric(
            |t| Point2::new(t.cos().powi(3), t.sin().powi(3)),
            PI / 6.0,
            PI / 3.0,
        )
        .unwrap();
        let rho = ScalarField::new(|p| (p.x.cbrt().powi(2) + p.y.cbrt().powi(2)).sqrt());
        let v = weighted_length(&c, &rho, 1e-9).unwrap();
        assert!((v - 0.75).abs() < 1e-8, "{v}");
    }

    #[test]
    fn singular_density_is_reported() {
        let c = Curve::segment(Point2::new(0.0, -1.0), Point2::new(0.0, 1.0)).unwrap();
        let rho = ScalarField::new(|p| p.y);
        assert!(matches!(weighted_length(&c, &rho, 1e-9), Err(Error::SingularDensity(_))));
    }

    #[test]
    fn rel_tol_range_is_enforced() {
        let c = Curve::segment(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)).unwrap();
        let rho = ScalarField::constant(1.0);
        assert!(weighted_length(&c, &rho, 0.0).is_err());
        assert!(weighted_length(&c, &rho, 0.1).is_err());
    }

    #[test]
    fn increments() {
        let f = ScalarField::new(|p| -p.x + p.y.ln());
        let seg = Curve::segment(Point2::new(0.0, 1.0), Point2::new(1.0, 1.0)).unwrap();
        assert_eq!(exact_increment(&f, &seg).unwrap(), -1.0);

        let loop_ = Curve::polyline(vec![
            Point2::new(1.0, 1.0),
            Point2::new(2.0, 1.0),
            Point2::new(1.0, 2.0),
            Point2::new(1.0, 1.0),
        ])
        .unwrap();
        assert_eq!(exact_increment(&f, &loop_).unwrap(), 0.0);

        let astroid_f = ScalarField::new(|p| 0.75 * (p.x.powf(4.0 / 3.0) - p.y.powf(4.0 / 3.0)));
        let arc = Curve::parametric(
            |t| Point2::new(t.cos().powi(3), t.sin().powi(3)),
            PI / 6.0,
            PI / 3.0,
        )
        .unwrap()
        .reversed();
        // f(t) = (3/4) cos 2t, from t = pi/3 down to pi/6.
        let inc = exact_increment(&astroid_f, &arc).unwrap();
        assert!((inc - 0.75).abs() < 1e-14, "{inc}");
    }
}
