//! The Hamilton group of noninertial Newtonian frame changes `Φ(v, f, r)`.

use serde::Serialize;

use crate::algebra::{Generator, Relation};
use crate::error::{Error, Result};
use crate::mat::Mat;

/// Relative rates of position `v`, momentum `f` and energy `r`, plus the
/// U(1) angle parameter `a`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct RateParams {
    pub v: f64,
    pub f: f64,
    pub r: f64,
    pub a: f64,
}

impl RateParams {
    pub fn new(v: f64, f: f64, r: f64) -> Self {
        RateParams { v, f, r, a: 0.0 }
    }

    pub fn with_a(v: f64, f: f64, r: f64, a: f64) -> Self {
        RateParams { v, f, r, a }
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.f.is_finite() && self.r.is_finite() && self.a.is_finite()
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.v, self.f, self.r, self.a]
    }

    pub(crate) fn check_classical(&self) -> Result<()> {
        if !self.is_finite() {
            return Err(Error::NonFinite("rate parameters"));
        }
        if self.a != 0.0 {
            return Err(Error::NonzeroU1Param(self.a));
        }
        Ok(())
    }
}

/// `Φ(v, f, r)`: lower-triangular with `dq̃ = dq + v dt`, `dp̃ = dp + f dt`,
/// `dẽ = de + r dt − f dq + v dp`.
pub fn hamilton_element(rates: &RateParams) -> Result<Mat> {
    rates.check_classical()?;
    let RateParams { v, f, r, .. } = *rates;
    Ok(Mat::rows([
        [1.0, 0.0, 0.0, 0.0],
        [v, 1.0, 0.0, 0.0],
        [f, 0.0, 1.0, 0.0],
        [r, -f, v, 1.0],
    ]))
}

/// Parameters of `Φ(second)·Φ(first)`: `first` is applied, then `second`.
pub fn hamilton_compose(first: &RateParams, second: &RateParams) -> Result<RateParams> {
    first.check_classical()?;
    second.check_classical()?;
    let (a, b) = (first, second);
    Ok(RateParams::new(
        b.v + a.v,
        b.f + a.f,
        b.r + a.r + b.v * a.f - b.f * a.v,
    ))
}

pub fn hamilton_inverse(rates: &RateParams) -> Result<RateParams> {
    rates.check_classical()?;
    Ok(RateParams::new(-rates.v, -rates.f, -rates.r))
}

/// Generators `G = ∂Φ/∂v`, `F = ∂Φ/∂f`, `R = ∂Φ/∂r` at the identity.
pub fn hamilton_generators() -> Vec<Generator> {
    vec![
        ("G", Mat::unit(4, 1, 0) + Mat::unit(4, 3, 2)),
        ("F", Mat::unit(4, 2, 0) - Mat::unit(4, 3, 1)),
        ("R", Mat::unit(4, 3, 0)),
    ]
}

/// Reference bracket table for `{G, F, R}`.
pub fn hamilton_reference_table() -> Vec<Relation> {
    vec![
        Relation::new("G", "F", &[("R", 2.0)]),
        Relation::new("R", "F", &[]),
        Relation::new("R", "G", &[]),
    ]
}
