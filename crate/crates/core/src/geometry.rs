//! Planar points, vectors and open domains.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(self, other: Point2) -> f64 {
        (other - self).norm()
    }

    /// Point on the segment `self -> other` at parameter `t` in `[0, 1]`.
    pub fn lerp(self, other: Point2, t: f64) -> Point2 {
        Point2::new(self.x + t * (other.x - self.x), self.y + t * (other.y - self.y))
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub dx: f64,
    pub dy: f64,
}

impl Vec2 {
    pub const fn new(dx: f64, dy: f64) -> Self {
        Vec2 { dx, dy }
    }

    pub fn norm(self) -> f64 {
        self.dx.hypot(self.dy)
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.dx * other.dx + self.dy * other.dy
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.dy, self.dx)
    }

    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }

    pub fn is_finite(self) -> bool {
        self.dx.is_finite() && self.dy.is_finite()
    }

    pub fn angle(self) -> f64 {
        self.dy.atan2(self.dx)
    }

    pub fn from_angle(theta: f64) -> Vec2 {
        Vec2::new(theta.cos(), theta.sin())
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.dx + o.dx, self.dy + o.dy)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.dx - o.dx, self.dy - o.dy)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.dx, -self.dy)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.dx * s, self.dy * s)
    }
}

impl Add<Vec2> for Point2 {
    type Output = Point2;
    fn add(self, v: Vec2) -> Point2 {
        Point2::new(self.x + v.dx, self.y + v.dy)
    }
}

impl Sub<Vec2> for Point2 {
    type Output = Point2;
    fn sub(self, v: Vec2) -> Point2 {
        Point2::new(self.x - v.dx, self.y - v.dy)
    }
}

impl Sub for Point2 {
    type Output = Vec2;
    fn sub(self, o: Point2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

/// Closed axis-aligned box `[xmin, xmax] x [ymin, ymax]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl BBox {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        let finite = [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite());
        if !finite || xmin >= xmax || ymin >= ymax {
            return Err(Error::InvalidInput(format!(
                "bounding box [{xmin}, {xmax}] x [{ymin}, {ymax}] is empty or unbounded"
            )));
        }
        Ok(BBox { xmin, xmax, ymin, ymax })
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn diagonal(&self) -> f64 {
        self.width().hypot(self.height())
    }

    /// Signed distance to the box boundary, positive inside.
    pub fn clearance(&self, p: Point2) -> f64 {
        (p.x - self.xmin)
            .min(self.xmax - p.x)
            .min(p.y - self.ymin)
            .min(self.ymax - p.y)
    }

    /// Maps `(u, v)` in the unit square onto the box.
    pub fn map_unit(&self, u: f64, v: f64) -> Point2 {
        Point2::new(self.xmin + u * self.width(), self.ymin + v * self.height())
    }
}

pub type ClearanceFn = Arc<dyn Fn(Point2) -> f64 + Send + Sync>;

/// An open planar region: the interior of a bounding box, optionally cut
/// down further by a clearance function.
///
/// A clearance function returns a lower bound on the Euclidean distance to
/// the region's boundary, positive inside and non-positive outside. The
/// segment test relies on it being a genuine distance bound.
#[derive(Clone)]
pub struct Domain {
    bbox: BBox,
    clearance: Option<ClearanceFn>,
    margin: f64,
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Domain")
            .field("bbox", &self.bbox)
            .field("clearance", &self.clearance.as_ref().map(|_| "<fn>"))
            .field("margin", &self.margin)
            .finish()
    }
}

impl Domain {
    /// Open rectangle with the default standoff `1e-6 * diagonal`.
    pub fn rect(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        let bbox = BBox::new(xmin, xmax, ymin, ymax)?;
        Ok(Domain {
            margin: 1e-6 * bbox.diagonal(),
            bbox,
            clearance: None,
        })
    }

    pub fn with_margin(mut self, margin: f64) -> Result<Self> {
        if !(margin > 0.0 && margin.is_finite()) {
            return Err(Error::InvalidInput(format!("margin must be positive, got {margin}")));
        }
        self.margin = margin;
        Ok(self)
    }

    pub fn with_clearance(mut self, clearance: impl Fn(Point2) -> f64 + Send + Sync + 'static) -> Self {
        self.clearance = Some(Arc::new(clearance));
        self
    }

    pub fn bbox(&self) -> BBox {
        self.bbox
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn clearance(&self, p: Point2) -> f64 {
        if !p.is_finite() {
            return f64::NEG_INFINITY;
        }
        let b = self.bbox.clearance(p);
        match &self.clearance {
            Some(c) => b.min(c(p)),
            None => b,
        }
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.clearance(p) > 0.0
    }

    /// Inside with at least `margin` standoff from the boundary.
    pub fn contains_interior(&self, p: Point2) -> bool {
        self.clearance(p) >= self.margin
    }

    /// Whether the whole segment `a -> b` keeps `margin` standoff, checked by
    /// stepping along it by the local clearance.
    pub fn segment_inside(&self, a: Point2, b: Point2) -> bool {
        let len = a.distance(b);
        if !self.contains_interior(a) || !self.contains_interior(b) {
            return false;
        }
        if len == 0.0 {
            return true;
        }
        let mut s = 0.0;
        while s < len {
            let c = self.clearance(a.lerp(b, s / len));
            if c < self.margin {
                return false;
            }
            // Anything within c - margin of a margin-clear point is still clear.
            s += (c - self.margin).max(self.margin);
        }
        true
    }

    /// Same region intersected with the horizontal strip `ylo < y < yhi`.
    pub fn restrict_y(&self, ylo: f64, yhi: f64) -> Result<Domain> {
        let bbox = BBox::new(
            self.bbox.xmin,
            self.bbox.xmax,
            ylo.max(self.bbox.ymin),
            yhi.min(self.bbox.ymax),
        )?;
        Ok(Domain {
            bbox,
            clearance: self.clearance.clone(),
            margin: self.margin,
        })
    }

    /// Whether every point of the domain lies in `x > 0, y > 0`.
    pub fn inside_open_quadrant(&self) -> bool {
        self.bbox.xmin >= 0.0 && self.bbox.ymin >= 0.0
    }
}
