//! Parametric curves and polylines, arc-length resampling and the CSV
//! polyline format.

use std::fmt;
use std::io::{BufRead, Write};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numfmt::format_sig;
use crate::geometry::{Point2, Vec2};

pub type MapFn = Arc<dyn Fn(f64) -> Point2 + Send + Sync>;
pub type DerivFn = Arc<dyn Fn(f64) -> Vec2 + Send + Sync>;

/// Relative parameter step for central-difference tangents.
const TANGENT_REL_STEP: f64 = 1e-6;

/// A C¹ map `t -> (x(t), y(t))` on `[t0, t1]`.
#[derive(Clone)]
pub struct Parametric {
    map: MapFn,
    deriv: Option<DerivFn>,
    t0: f64,
    t1: f64,
}

impl fmt::Debug for Parametric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Parametric")
            .field("t0", &self.t0)
            .field("t1", &self.t1)
            .field("analytic_derivative", &self.deriv.is_some())
            .finish()
    }
}

impl Parametric {
    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn at(&self, t: f64) -> Point2 {
        (self.map)(t)
    }

    /// Velocity `(x'(t), y'(t))`; central differences with step
    /// `(t1 - t0) * 1e-6` unless an analytic derivative was supplied. The
    /// stencil is clamped to `[t0, t1]`.
    pub fn velocity(&self, t: f64) -> Vec2 {
        if let Some(d) = &self.deriv {
            return d(t);
        }
        let h = (self.t1 - self.t0) * TANGENT_REL_STEP;
        let lo = (t - h).max(self.t0);
        let hi = (t + h).min(self.t1);
        (self.at(hi) - self.at(lo)) * (1.0 / (hi - lo))
    }
}

/// Ordered vertices, at least two, no two consecutive ones identical.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    points: Vec<Point2>,
}

impl Polyline {
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "polyline needs at least 2 points, got {}",
                points.len()
            )));
        }
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::NonFiniteValue(*p));
        }
        if let Some(i) = points.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!(
                "polyline vertices {i} and {} coincide",
                i + 1
            )));
        }
        Ok(Polyline { points })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point2> {
        self.points
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn euclidean_length(&self) -> f64 {
        self.segments().map(|(a, b)| a.distance(b)).sum()
    }
}

#[derive(Debug, Clone)]
pub enum Curve {
    Parametric(Parametric),
    Polyline(Polyline),
}

impl Curve {
    /// Parametric curve with tangents from central differences.
    pub fn parametric(map: impl Fn(f64) -> Point2 + Send + Sync + 'static, t0: f64, t1: f64) -> Result<Self> {
        Self::build_parametric(Arc::new(map), None, t0, t1)
    }

    /// Parametric curve with an analytic velocity.
    pub fn parametric_with_velocity(
        map: impl Fn(f64) -> Point2 + Send + Sync + 'static,
        velocity: impl Fn(f64) -> Vec2 + Send + Sync + 'static,
        t0: f64,
        t1: f64,
    ) -> Result<Self> {
        Self::build_parametric(Arc::new(map), Some(Arc::new(velocity)), t0, t1)
    }

    fn build_parametric(map: MapFn, deriv: Option<DerivFn>, t0: f64, t1: f64) -> Result<Self> {
        if !(t0.is_finite() && t1.is_finite() && t0 < t1) {
            return Err(Error::InvalidInput(format!("parameter interval [{t0}, {t1}] is empty")));
        }
        for p in [map(t0), map(t1), map(0.5 * (t0 + t1))] {
            if !p.is_finite() {
                return Err(Error::NonFiniteValue(p));
            }
        }
        Ok(Curve::Parametric(Parametric { map, deriv, t0, t1 }))
    }

    pub fn polyline(points: Vec<Point2>) -> Result<Self> {
        Polyline::new(points).map(Curve::Polyline)
    }

    pub fn segment(a: Point2, b: Point2) -> Result<Self> {
        Self::polyline(vec![a, b])
    }

    pub fn start(&self) -> Point2 {
        match self {
            Curve::Parametric(c) => c.at(c.t0),
            Curve::Polyline(p) => p.points[0],
        }
    }

    pub fn end(&self) -> Point2 {
        match self {
            Curve::Parametric(c) => c.at(c.t1),
            Curve::Polyline(p) => *p.points.last().expect("polyline is nonempty"),
        }
    }

    pub fn as_polyline(&self) -> Option<&Polyline> {
        match self {
            Curve::Polyline(p) => Some(p),
            Curve::Parametric(_) => None,
        }
    }

    /// `n` points at uniform parameter spacing (vertices for a polyline).
    pub fn sample(&self, n: usize) -> Vec<Point2> {
        match self {
            Curve::Parametric(c) => {
                let n = n.max(2);
                (0..n)
                    .map(|i| c.at(c.t0 + (c.t1 - c.t0) * i as f64 / (n - 1) as f64))
                    .collect()
            }
            Curve::Polyline(p) => p.points.clone(),
        }
    }

    /// Reverses orientation.
    pub fn reversed(&self) -> Curve {
        match self {
            Curve::Parametric(c) => {
                let map = c.map.clone();
                let (t0, t1) = (c.t0, c.t1);
                Curve::Parametric(Parametric {
                    map: Arc::new(move |t| map(t0 + t1 - t)),
                    deriv: c.deriv.clone().map(|d| -> DerivFn { Arc::new(move |t| -d(t0 + t1 - t)) }),
                    t0,
                    t1,
                })
            }
            Curve::Polyline(p) => {
                let mut pts = p.points.clone();
                pts.reverse();
                Curve::Polyline(Polyline { points: pts })
            }
        }
    }
}

/// Cumulative-length table used for arc-length inversion.
struct ArcTable {
    params: Vec<f64>,
    points: Vec<Point2>,
    cumulative: Vec<f64>,
}

impl ArcTable {
    fn new(curve: &Curve) -> ArcTable {
        const FINE: usize = 20_000;
        let (params, points): (Vec<f64>, Vec<Point2>) = match curve {
            Curve::Parametric(c) => (0..=FINE)
                .map(|i| {
                    let t = c.t0 + (c.t1 - c.t0) * i as f64 / FINE as f64;
                    (t, c.at(t))
                })
                .unzip(),
            Curve::Polyline(p) => p.points.iter().enumerate().map(|(i, q)| (i as f64, *q)).unzip(),
        };
        let mut cumulative = Vec::with_capacity(points.len());
        let mut acc = 0.0;
        cumulative.push(0.0);
        for w in points.windows(2) {
            acc += w[0].distance(w[1]);
            cumulative.push(acc);
        }
        ArcTable { params, points, cumulative }
    }

    fn total(&self) -> f64 {
        *self.cumulative.last().unwrap_or(&0.0)
    }

    /// Index `i` with `cumulative[i] <= s <= cumulative[i + 1]` and the
    /// fraction of the way through that interval.
    fn locate(&self, s: f64) -> (usize, f64) {
        let i = self.cumulative.partition_point(|&c| c <= s).saturating_sub(1);
        let i = i.min(self.cumulative.len() - 2);
        let span = self.cumulative[i + 1] - self.cumulative[i];
        let frac = if span > 0.0 { (s - self.cumulative[i]) / span } else { 0.0 };
        (i, frac.clamp(0.0, 1.0))
    }
}

/// `n` points approximately equally spaced in Euclidean arc length, sharing
/// the input's endpoints.
pub fn resample_arclength(curve: &Curve, n: usize) -> Result<Curve> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("resample needs n >= 2, got {n}")));
    }
    let table = ArcTable::new(curve);
    let total = table.total();
    if !(total > 0.0) {
        return Err(Error::DegenerateCurve);
    }
    let mut out = Vec::with_capacity(n);
    out.push(curve.start());
    for k in 1..n - 1 {
        let (i, frac) = table.locate(total * k as f64 / (n - 1) as f64);
        let p = match curve {
            Curve::Parametric(c) => c.at(table.params[i] + frac * (table.params[i + 1] - table.params[i])),
            Curve::Polyline(_) => table.points[i].lerp(table.points[i + 1], frac),
        };
        out.push(p);
    }
    out.push(curve.end());
    Curve::polyline(out)
}

/// Distance from `p` to the segment `a -> b`.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Distance from `p` to the polyline through `pts`.
pub fn point_polyline_distance(p: Point2, pts: &[Point2]) -> f64 {
    match pts {
        [] => f64::INFINITY,
        [q] => p.distance(*q),
        _ => pts
            .windows(2)
            .map(|w| point_segment_distance(p, w[0], w[1]))
            .fold(f64::INFINITY, f64::min),
    }
}

/// Largest distance from a vertex of `a` to the polyline `b`.
pub fn directed_hausdorff(a: &[Point2], b: &[Point2]) -> f64 {
    a.iter()
        .map(|&p| point_polyline_distance(p, b))
        .fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between two polylines, measured from vertices.
pub fn hausdorff(a: &[Point2], b: &[Point2]) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

/// Writes the `x,y` CSV polyline format, 17 significant digits per value.
pub fn write_polyline_csv<W: Write>(points: &[Point2], mut w: W) -> Result<()> {
    writeln!(w, "x,y")?;
    for p in points {
        writeln!(w, "{},{}", format_sig(p.x, 17), format_sig(p.y, 17))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_polyline_csv<R: BufRead>(r: R) -> Result<Polyline> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("empty CSV".into()))??;
    if header.trim() != "x,y" {
        return Err(Error::InvalidInput(format!("expected CSV header `x,y`, got `{}`", header.trim())));
    }
    let mut points = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parse = |s: Option<&str>| -> Result<f64> {
            s.map(str::trim)
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| Error::InvalidInput(format!("bad CSV row {}: `{line}`", lineno + 2)))
        };
        let mut cols = line.split(',');
        let x = parse(cols.next())?;
        let y = parse(cols.next())?;
        if cols.next().is_some() {
            return Err(Error::InvalidInput(format!("bad CSV row {}: `{line}`", lineno + 2)));
        }
        points.push(Point2::new(x, y));
    }
    Polyline::new(points)
}
