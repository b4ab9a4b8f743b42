//! One-parameter families of metrics and finite-difference derivatives of
//! the normalized scalar curvature along them.

use std::sync::Arc;

use thiserror::Error;

use super::normalized_scalar_of;
use crate::model::SpaceModel;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("curve leaves the positive cone at t = {t}")]
    StepTooLarge { t: f64 },
    #[error("derivative order must be 1, 2 or 3, got {0}")]
    InvalidOrder(u8),
    #[error("step h = {0} must be finite and positive")]
    InvalidStep(f64),
    #[error("curve produces {got} coordinates but the space has {expected} summands")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Parametrization {
    /// `base + t·direction`.
    Affine { base: Vec<f64>, direction: Vec<f64> },
    /// The SU(4) flag curve `(X, X, Y, Y, Z, Z)` with `t = Y`,
    /// `X = 3/2 − Y/2` and `Z = 1/(XY)`.
    F4Saddle,
}

#[derive(Debug, Clone)]
pub struct CurveSpec {
    pub space: Arc<SpaceModel>,
    pub parametrization: Parametrization,
}

impl CurveSpec {
    pub fn affine(space: &Arc<SpaceModel>, base: Vec<f64>, direction: Vec<f64>) -> Self {
        Self {
            space: Arc::clone(space),
            parametrization: Parametrization::Affine { base, direction },
        }
    }

    /// Coordinates at `t`, without positivity checks.
    pub fn coords_at(&self, t: f64) -> Vec<f64> {
        match &self.parametrization {
            Parametrization::Affine { base, direction } => {
                base.iter().zip(direction).map(|(b, d)| b + t * d).collect()
            }
            Parametrization::F4Saddle => {
                let y = t;
                let x = 1.5 - 0.5 * y;
                let z = 1.0 / (x * y);
                vec![x, x, y, y, z, z]
            }
        }
    }

    /// Coordinates at `t`, which must all be finite and positive.
    pub fn point(&self, t: f64) -> Result<Vec<f64>, CurveError> {
        let x = self.coords_at(t);
        if x.len() != self.space.r() {
            return Err(CurveError::LengthMismatch {
                expected: self.space.r(),
                got: x.len(),
            });
        }
        if x.iter().all(|v| v.is_finite() && *v > 0.0) {
            Ok(x)
        } else {
            Err(CurveError::StepTooLarge { t })
        }
    }

    pub fn scn_at(&self, t: f64) -> Result<f64, CurveError> {
        Ok(normalized_scalar_of(&self.space, &self.point(t)?))
    }
}

/// Central-difference estimate of the `order`-th derivative of
/// `t ↦ Sc_N(curve(t))` at `t0`, improved by one Richardson step.
pub fn scn_derivative_along_curve(
    curve: &CurveSpec,
    t0: f64,
    order: u8,
    h: f64,
) -> Result<f64, CurveError> {
    if !(h.is_finite() && h > 0.0) {
        return Err(CurveError::InvalidStep(h));
    }
    if !(1..=3).contains(&order) {
        return Err(CurveError::InvalidOrder(order));
    }
    for k in -3..=3 {
        curve.point(t0 + f64::from(k) * h)?;
    }
    let f = |t: f64| curve.scn_at(t);
    let estimate = |h: f64| -> Result<f64, CurveError> {
        Ok(match order {
            1 => (f(t0 + h)? - f(t0 - h)?) / (2.0 * h),
            2 => (f(t0 + h)? - 2.0 * f(t0)? + f(t0 - h)?) / (h * h),
            _ => {
                (f(t0 + 2.0 * h)? - 2.0 * f(t0 + h)? + 2.0 * f(t0 - h)? - f(t0 - 2.0 * h)?)
                    / (2.0 * h * h * h)
            }
        })
    };
    let coarse = estimate(h)?;
    let fine = estimate(h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}
