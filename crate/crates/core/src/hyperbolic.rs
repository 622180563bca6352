//! Rapidity coordinates `(β, γ, ϑ)` on SU(1,1):
//! `Ξ = cosh ω · I + (sinh ω / ω)(βK + γN + ϑM)` with `ω² = β² + γ² − ϑ²`.

use serde::Serialize;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::hamilton::RateParams;
use crate::mat::Mat;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct HyperbolicParams {
    pub beta: f64,
    pub gamma: f64,
    pub vartheta: f64,
}

impl HyperbolicParams {
    pub fn new(beta: f64, gamma: f64, vartheta: f64) -> Self {
        HyperbolicParams {
            beta,
            gamma,
            vartheta,
        }
    }

    pub fn omega_squared(&self) -> f64 {
        self.beta * self.beta + self.gamma * self.gamma - self.vartheta * self.vartheta
    }

    /// `ω ≥ 0`, or `ImaginaryOmega` on the oscillatory branch.
    pub fn omega(&self) -> Result<f64> {
        if !(self.beta.is_finite() && self.gamma.is_finite() && self.vartheta.is_finite()) {
            return Err(Error::NonFinite("hyperbolic parameters"));
        }
        let w2 = self.omega_squared();
        if w2 < 0.0 {
            return Err(Error::ImaginaryOmega(w2));
        }
        Ok(w2.sqrt())
    }
}

const SERIES_CUTOFF: f64 = 1e-4;

/// `sinh ω / ω`, with a Taylor series near zero.
pub fn sinhc(w: f64) -> f64 {
    if w.abs() < SERIES_CUTOFF {
        let w2 = w * w;
        1.0 + w2 / 6.0 + w2 * w2 / 120.0
    } else {
        w.sinh() / w
    }
}

/// `tanh ω / ω`, with a Taylor series near zero.
pub fn tanhc(w: f64) -> f64 {
    if w.abs() < SERIES_CUTOFF {
        let w2 = w * w;
        1.0 - w2 / 3.0 + 2.0 * w2 * w2 / 15.0
    } else {
        w.tanh() / w
    }
}

pub fn hyperbolic_xi(hp: &HyperbolicParams, constants: &Constants) -> Result<Mat> {
    let w = hp.omega()?;
    let (ch, s) = (w.cosh(), sinhc(w));
    let (b, c) = (constants.b, constants.c);
    let HyperbolicParams {
        beta,
        gamma,
        vartheta,
    } = *hp;
    Ok(Mat::rows([
        [ch, beta * s / c, gamma * s / b, -vartheta * s / (b * c)],
        [c * beta * s, ch, c * vartheta * s / b, -gamma * s / b],
        [b * gamma * s, -b * vartheta * s / c, ch, beta * s / c],
        [b * c * vartheta * s, -b * gamma * s, c * beta * s, ch],
    ]))
}

/// `v = cβ tanh ω / ω`, `f = bγ tanh ω / ω`, `r = bcϑ tanh ω / ω`.
pub fn rates_from_hyperbolic(hp: &HyperbolicParams, constants: &Constants) -> Result<RateParams> {
    let t = tanhc(hp.omega()?);
    let (b, c) = (constants.b, constants.c);
    Ok(RateParams::new(
        c * hp.beta * t,
        b * hp.gamma * t,
        b * c * hp.vartheta * t,
    ))
}
