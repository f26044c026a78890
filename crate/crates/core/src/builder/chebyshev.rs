//! Piecewise Chebyshev tables for antiderivatives of one-variable functions.

use crate::error::{Error, Result};
use crate::quadrature::integrate_abs;

/// Nodes per panel.
pub const DEFAULT_NODES: usize = 129;

const MAX_SPLIT_DEPTH: usize = 48;

/// Antiderivative `H(y) = ∫_{anchor}^{y} h` on `[lo, hi]`, stored as
/// Chebyshev (second kind) values on adaptively split panels and evaluated by
/// barycentric interpolation.
#[derive(Debug, Clone)]
pub struct ChebyshevTable {
    breaks: Vec<f64>,
    values: Vec<Vec<f64>>,
    nodes: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

/// Second-kind Chebyshev points on `[a, b]`, ascending.
fn cheb_points(a: f64, b: f64, n: usize) -> Vec<f64> {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let mut pts: Vec<f64> = (0..n)
        .map(|j| mid - half * (std::f64::consts::PI * j as f64 / (n - 1) as f64).cos())
        .collect();
    pts[0] = a;
    pts[n - 1] = b;
    pts
}

fn bary_weights(n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| {
            let w = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == n - 1 {
                0.5 * w
            } else {
                w
            }
        })
        .collect()
}

fn barycentric(x: f64, nodes: &[f64], values: &[f64], weights: &[f64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for ((&xj, &fj), &wj) in nodes.iter().zip(values).zip(weights) {
        let d = x - xj;
        if d == 0.0 {
            return fj;
        }
        let t = wj / d;
        num += t * fj;
        den += t;
    }
    num / den
}

struct Builder<'a, H> {
    h: &'a H,
    n: usize,
    tol: f64,
    weights: Vec<f64>,
    quad_tol: f64,
}

impl<H> Builder<'_, H>
where
    H: Fn(f64) -> Result<f64>,
{
    fn integral(&self, a: f64, b: f64) -> Result<f64> {
        integrate_abs(self.h, a, b, self.quad_tol)
    }

    /// Fills the panels covering `[a, b]` given `H(a) = start`; returns `H(b)`.
    fn panel(&self, a: f64, b: f64, start: f64, depth: usize, out: &mut ChebyshevTable) -> Result<f64> {
        let nodes = cheb_points(a, b, self.n);
        let mut values = Vec::with_capacity(self.n);
        values.push(start);
        for w in nodes.windows(2) {
            let prev = *values.last().expect("nonempty");
            values.push(prev + self.integral(w[0], w[1])?);
        }
        let mut worst: f64 = 0.0;
        for (j, w) in nodes.windows(2).enumerate() {
            let m = 0.5 * (w[0] + w[1]);
            let direct = values[j] + self.integral(w[0], m)?;
            let interp = barycentric(m, &nodes, &values, &self.weights);
            worst = worst.max((interp - direct).abs() / direct.abs().max(1.0));
        }
        if worst <= self.tol {
            if out.breaks.is_empty() {
                out.breaks.push(a);
            }
            out.breaks.push(b);
            let end = values[self.n - 1];
            out.nodes.push(nodes);
            out.values.push(values);
            return Ok(end);
        }
        if depth >= MAX_SPLIT_DEPTH {
            return Err(Error::NoConvergence(MAX_SPLIT_DEPTH));
        }
        let m = 0.5 * (a + b);
        let mid = self.panel(a, m, start, depth + 1, out)?;
        self.panel(m, b, mid, depth + 1, out)
    }
}

impl ChebyshevTable {
    /// Tabulates `∫_{anchor}^{y} h` for `y` in `[lo, hi]`, refining panels until
    /// the interpolant matches direct quadrature at node midpoints to `tol`
    /// (relative to `max(1, |H|)`).
    pub fn build<H>(h: H, lo: f64, hi: f64, anchor: f64, nodes: usize, tol: f64) -> Result<ChebyshevTable>
    where
        H: Fn(f64) -> Result<f64>,
    {
        if !(lo < hi) || !(lo..=hi).contains(&anchor) || nodes < 3 {
            return Err(Error::InvalidInput(format!(
                "bad table request [{lo}, {hi}] anchor {anchor} nodes {nodes}"
            )));
        }
        let builder = Builder {
            h: &h,
            n: nodes,
            tol,
            weights: bary_weights(nodes),
            quad_tol: 1e-3 * tol,
        };
        let mut table = ChebyshevTable {
            breaks: Vec::new(),
            values: Vec::new(),
            nodes: Vec::new(),
            weights: builder.weights.clone(),
        };
        let offset = -builder.integral(lo, anchor)?;
        builder.panel(lo, hi, offset, 0, &mut table)?;
        Ok(table)
    }

    pub fn range(&self) -> (f64, f64) {
        (self.breaks[0], *self.breaks.last().expect("nonempty"))
    }

    pub fn panel_count(&self) -> usize {
        self.values.len()
    }

    /// Interpolated value; NaN outside the tabulated range.
    pub fn eval(&self, y: f64) -> f64 {
        let (lo, hi) = self.range();
        if !(lo..=hi).contains(&y) {
            return f64::NAN;
        }
        let i = self.breaks.partition_point(|&b| b <= y).saturating_sub(1);
        let i = i.min(self.values.len() - 1);
        barycentric(y, &self.nodes[i], &self.values[i], &self.weights)
    }
}
