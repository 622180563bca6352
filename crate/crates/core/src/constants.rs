//! Physical scales, frame increments and the tolerance policy.

use serde::Serialize;

use crate::error::{Error, Result};

/// The three independent dimensional constants `(c, b, ħ)`, the
/// dimensionless coupling `α_G`, and the derived natural scales.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub c: f64,
    pub b: f64,
    pub hbar: f64,
    pub alpha_g: f64,
    pub lambda_t: f64,
    pub lambda_q: f64,
    pub lambda_p: f64,
    pub lambda_e: f64,
}

impl Constants {
    pub fn new(c: f64, b: f64, hbar: f64) -> Result<Self> {
        Self::with_alpha(c, b, hbar, 1.0)
    }

    pub fn with_alpha(c: f64, b: f64, hbar: f64, alpha_g: f64) -> Result<Self> {
        for (name, x) in [("c", c), ("b", b), ("hbar", hbar), ("alpha_G", alpha_g)] {
            if !(x.is_finite() && x > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be finite and positive, got {x}"
                )));
            }
        }
        Ok(Constants {
            c,
            b,
            hbar,
            alpha_g,
            lambda_t: (hbar / (b * c)).sqrt(),
            lambda_q: (hbar * c / b).sqrt(),
            lambda_p: (hbar * b / c).sqrt(),
            lambda_e: (hbar * b * c).sqrt(),
        })
    }

    /// Natural units `c = b = ħ = 1`.
    pub fn natural() -> Self {
        Self::new(1.0, 1.0, 1.0).expect("unit constants are valid")
    }

    /// Newton's constant implied by `b`: `G = α_G c⁴ / b`.
    pub fn gravitational_constant(&self) -> f64 {
        self.alpha_g * self.c.powi(4) / self.b
    }

    /// Scales `(λ_t, λ_q, λ_p, λ_e)` in frame order.
    pub fn frame_scales(&self) -> [f64; 4] {
        [self.lambda_t, self.lambda_q, self.lambda_p, self.lambda_e]
    }

    /// True when `c = b = 1`, i.e. matrices need no rescaling.
    pub fn is_dimensionless(&self) -> bool {
        self.c == 1.0 && self.b == 1.0
    }

    /// Rescales a dimensionless 4×4 frame matrix to physical units.
    ///
    /// A transformation `X̌` on `ž = D z` (with `D = diag(1/λ)`) acts on
    /// physical frames as `D⁻¹ X̌ D`.
    pub fn to_physical(&self, dimensionless: &crate::Mat) -> crate::Mat {
        dimensionless.diag_similarity(&self.frame_scales())
    }

    /// Inverse of [`Constants::to_physical`].
    pub fn to_dimensionless(&self, physical: &crate::Mat) -> crate::Mat {
        let inv = self.frame_scales().map(|s| 1.0 / s);
        physical.diag_similarity(&inv)
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::natural()
    }
}

/// A cotangent frame increment `(dt, dq, dp, de)` plus the Heisenberg
/// central increment `dι` (zero outside the inhomogeneous groups).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct FrameVector {
    pub dt: f64,
    pub dq: f64,
    pub dp: f64,
    pub de: f64,
    pub diota: f64,
}

impl FrameVector {
    pub fn new(dt: f64, dq: f64, dp: f64, de: f64) -> Self {
        FrameVector {
            dt,
            dq,
            dp,
            de,
            diota: 0.0,
        }
    }

    pub fn from_array(z: [f64; 4]) -> Self {
        Self::new(z[0], z[1], z[2], z[3])
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.dt, self.dq, self.dp, self.de]
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|x| x.is_finite()) && self.diota.is_finite()
    }

    /// Applies a 4×4 matrix to the `(dt, dq, dp, de)` part; `dι` is carried over.
    pub fn transform(&self, m: &crate::Mat) -> Result<FrameVector> {
        let z = m.apply(&self.as_array())?;
        Ok(FrameVector {
            diota: self.diota,
            ..FrameVector::new(z[0], z[1], z[2], z[3])
        })
    }
}

/// Comparison thresholds used across the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) {
            return Err(Error::InvalidArgument("tolerances must be positive".into()));
        }
        Ok(Tolerance { abs_tol, rel_tol })
    }

    /// `|a − b| ≤ abs_tol + rel_tol · max(|a|, |b|)`.
    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.abs_tol + self.rel_tol * a.abs().max(b.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
        }
    }
}

/// Divides each frame component by its natural scale; `dι` by `ħ`.
pub fn nondimensionalize(frame: &FrameVector, constants: &Constants) -> FrameVector {
    let [lt, lq, lp, le] = constants.frame_scales();
    FrameVector {
        dt: frame.dt / lt,
        dq: frame.dq / lq,
        dp: frame.dp / lp,
        de: frame.de / le,
        diota: frame.diota / constants.hbar,
    }
}

/// Inverse of [`nondimensionalize`].
pub fn dimensionalize(frame: &FrameVector, constants: &Constants) -> FrameVector {
    let [lt, lq, lp, le] = constants.frame_scales();
    FrameVector {
        dt: frame.dt * lt,
        dq: frame.dq * lq,
        dp: frame.dp * lp,
        de: frame.de * le,
        diota: frame.diota * constants.hbar,
    }
}
