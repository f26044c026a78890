//! Scalar fields on the plane with analytic or finite-difference gradients.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{Point2, Vec2};

pub type ValueFn = Arc<dyn Fn(Point2) -> f64 + Send + Sync>;
pub type GradientFn = Arc<dyn Fn(Point2) -> Vec2 + Send + Sync>;

/// Default relative step for central differences.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Real function on a planar domain. Cloning is cheap; the closures are shared.
#[derive(Clone)]
pub struct ScalarField {
    value: ValueFn,
    gradient: Option<GradientFn>,
    fd_step: f64,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("analytic_gradient", &self.gradient.is_some())
            .field("fd_step", &self.fd_step)
            .finish()
    }
}

impl ScalarField {
    /// Field without an analytic gradient; `grad` falls back to central differences.
    pub fn new(value: impl Fn(Point2) -> f64 + Send + Sync + 'static) -> Self {
        ScalarField {
            value: Arc::new(value),
            gradient: None,
            fd_step: DEFAULT_FD_STEP,
        }
    }

    pub fn with_gradient(
        value: impl Fn(Point2) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(Point2) -> Vec2 + Send + Sync + 'static,
    ) -> Self {
        ScalarField {
            value: Arc::new(value),
            gradient: Some(Arc::new(gradient)),
            fd_step: DEFAULT_FD_STEP,
        }
    }

    pub fn constant(c: f64) -> Self {
        ScalarField::with_gradient(move |_| c, |_| Vec2::default())
    }

    pub fn with_fd_step(mut self, fd_step: f64) -> Result<Self> {
        if !(fd_step > 0.0 && fd_step.is_finite()) {
            return Err(Error::InvalidInput(format!("fd_step must be positive, got {fd_step}")));
        }
        self.fd_step = fd_step;
        Ok(self)
    }

    /// Drops the analytic gradient so that `grad` uses finite differences.
    pub fn without_gradient(mut self) -> Self {
        self.gradient = None;
        self
    }

    pub fn has_analytic_gradient(&self) -> bool {
        self.gradient.is_some()
    }

    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    pub fn value(&self, p: Point2) -> f64 {
        (self.value)(p)
    }

    /// Value with a finiteness check.
    pub fn eval(&self, p: Point2) -> Result<f64> {
        let v = self.value(p);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteValue(p))
        }
    }

    /// Analytic gradient when present, otherwise central differences.
    pub fn grad(&self, p: Point2) -> Result<Vec2> {
        match &self.gradient {
            Some(g) => {
                let v = g(p);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::NonFiniteValue(p))
                }
            }
            None => self.fd_grad(p),
        }
    }

    /// Central differences with step `fd_step * max(1, |coordinate|)` per axis.
    pub fn fd_grad(&self, p: Point2) -> Result<Vec2> {
        let hx = self.fd_step * p.x.abs().max(1.0);
        let hy = self.fd_step * p.y.abs().max(1.0);
        let xp = self.eval(Point2::new(p.x + hx, p.y))?;
        let xm = self.eval(Point2::new(p.x - hx, p.y))?;
        let yp = self.eval(Point2::new(p.x, p.y + hy))?;
        let ym = self.eval(Point2::new(p.x, p.y - hy))?;
        Ok(Vec2::new((xp - xm) / (2.0 * hx), (yp - ym) / (2.0 * hy)))
    }

    /// `kappa * self`, keeping the analytic gradient when present.
    pub fn scaled(&self, kappa: f64) -> ScalarField {
        let value = self.value.clone();
        ScalarField {
            value: Arc::new(move |p| kappa * value(p)),
            gradient: self.gradient.clone().map(|g| -> GradientFn { Arc::new(move |p| g(p) * kappa) }),
            fd_step: self.fd_step,
        }
    }

    /// Pointwise Euclidean norm of this field's gradient, as a field.
    pub fn gradient_norm(&self) -> ScalarField {
        let me = self.clone();
        ScalarField::new(move |p| me.grad(p).map(Vec2::norm).unwrap_or(f64::NAN))
    }
}

/// Free-function form of [`ScalarField::grad`].
pub fn grad(field: &ScalarField, p: Point2) -> Result<Vec2> {
    field.grad(p)
}
