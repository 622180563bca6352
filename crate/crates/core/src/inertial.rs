//! Inertial boosts: Lorentz and Galilean, on `(t, q)` and on `(t, q, p, e)`.

use serde::Serialize;

use crate::constants::{Constants, FrameVector};
use crate::error::{Error, Result};
use crate::mat::Mat;

/// Lorentz factor `(1 − v²/c²)^{-1/2}`, rejecting rates at or beyond the bound.
pub(crate) fn lorentz_factor(v: f64, c: f64) -> Result<f64> {
    if !v.is_finite() {
        return Err(Error::NonFinite("velocity"));
    }
    if v.abs() >= c * (1.0 - 1e-15) {
        return Err(Error::SuperluminalRate { v, c });
    }
    let beta = v / c;
    Ok(1.0 / ((1.0 - beta) * (1.0 + beta)).sqrt())
}

/// `Λ(v) = γ [[1, v/c²], [v, 1]]` acting on `(dt, dq)`.
pub fn lorentz2(v: f64, constants: &Constants) -> Result<Mat> {
    let g = lorentz_factor(v, constants.c)?;
    let c2 = constants.c * constants.c;
    Ok(Mat::rows([[g, g * v / c2], [g * v, g]]))
}

/// Relativistic addition `(ṽ + v) / (1 + ṽv/c²)`; `vt` is applied after `v`.
pub fn velocity_add(v: f64, vt: f64, constants: &Constants) -> Result<f64> {
    lorentz_factor(v, constants.c)?;
    lorentz_factor(vt, constants.c)?;
    let c2 = constants.c * constants.c;
    Ok((vt + v) / (1.0 + vt * v / c2))
}

/// Galilean boost `[[1, 0], [v, 1]]`.
pub fn newton_boost2(v: f64) -> Mat {
    Mat::rows([[1.0, 0.0], [v, 1.0]])
}

/// `Λ(v)` acting on both `(dt, dq)` and `(dp, de)`.
pub fn gamma4(v: f64, constants: &Constants) -> Result<Mat> {
    let l = lorentz2(v, constants)?;
    let mut m = Mat::zeros(4);
    for i in 0..2 {
        for j in 0..2 {
            m.set(i, j, l.get(i, j));
            m.set(i + 2, j + 2, l.get(i, j));
        }
    }
    Ok(m)
}

/// Galilean boost on the full frame: `dq̃ = dq + v dt`, `dẽ = de + v dp`.
pub fn newton_boost4(v: f64) -> Mat {
    Mat::rows([
        [1.0, 0.0, 0.0, 0.0],
        [v, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, v, 1.0],
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineElementValues {
    /// `−dt² + dq²/c²`
    pub ds2: f64,
    /// `dp² − de²/c²`
    pub dmu2: f64,
}

pub fn line_elements(frame: &FrameVector, constants: &Constants) -> LineElementValues {
    let c2 = constants.c * constants.c;
    LineElementValues {
        ds2: -frame.dt * frame.dt + frame.dq * frame.dq / c2,
        dmu2: frame.dp * frame.dp - frame.de * frame.de / c2,
    }
}
