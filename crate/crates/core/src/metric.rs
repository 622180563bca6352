//! Invariant bilinear forms on the cotangent frame and congruence residuals.

use serde::Serialize;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::mat::Mat;

/// The metrics preserved (or not) by the frame groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MetricKind {
    /// `ζ`, the form `−de∧dt + dp∧dq`.
    Symplectic,
    /// `−dt² + dq²/c² + dp²/b² − de²/(b²c²)`.
    BornGreen,
    /// Degenerate Newtonian metric `−dt²`.
    Classical,
    /// `−dt² + dq²/c²` on the 2×2 `(t, q)` plane.
    Lorentz2,
}

impl MetricKind {
    pub const ALL: [MetricKind; 4] = [
        MetricKind::Symplectic,
        MetricKind::BornGreen,
        MetricKind::Classical,
        MetricKind::Lorentz2,
    ];

    pub fn dim(&self) -> usize {
        match self {
            MetricKind::Lorentz2 => 2,
            _ => 4,
        }
    }

    pub fn matrix(&self, constants: &Constants) -> Mat {
        let (c2, b2) = (constants.c * constants.c, constants.b * constants.b);
        match self {
            MetricKind::Symplectic => zeta(),
            MetricKind::BornGreen => Mat::diag(&[-1.0, 1.0 / c2, 1.0 / b2, -1.0 / (b2 * c2)]),
            MetricKind::Classical => Mat::diag(&[-1.0, 0.0, 0.0, 0.0]),
            MetricKind::Lorentz2 => Mat::diag(&[-1.0, 1.0 / c2]),
        }
    }
}

/// The symplectic form `ζ` in the `(t, q, p, e)` basis.
pub fn zeta() -> Mat {
    Mat::rows([
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ])
}

/// Dimensionless Born-Green metric `diag(−1, 1, 1, −1)`.
pub fn eta() -> Mat {
    Mat::diag(&[-1.0, 1.0, 1.0, -1.0])
}

/// Max-norm of `ᵗg·m·g − m`.
pub fn congruence_residual(m: &Mat, g: &Mat) -> Result<f64> {
    let pulled = g.transpose().checked_mul(m)?.checked_mul(g)?;
    Ok(pulled.max_abs_diff(m))
}

/// Max-norm of `ᵗg·M·g − M` for the metric `M` of the given kind.
pub fn congruence(metric: MetricKind, g: &Mat, constants: &Constants) -> Result<f64> {
    if g.dim() != metric.dim() {
        return Err(Error::DimensionMismatch {
            left: metric.dim(),
            right: g.dim(),
        });
    }
    congruence_residual(&metric.matrix(constants), g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_squares_to_minus_identity() {
        let z = zeta();
        assert_eq!(z * z, -Mat::identity(4));
        assert_eq!(z.transpose(), -z);
    }

    #[test]
    fn identity_preserves_everything() {
        let k = Constants::natural();
        for m in MetricKind::ALL {
            let g = Mat::identity(m.dim());
            assert_eq!(congruence(m, &g, &k).unwrap(), 0.0);
        }
    }

    #[test]
    fn dimension_checked() {
        let k = Constants::natural();
        assert!(matches!(
            congruence(MetricKind::Lorentz2, &Mat::identity(4), &k),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn scaling_breaks_symplectic() {
        let k = Constants::natural();
        let g = Mat::diag(&[2.0, 1.0, 1.0, 1.0]);
        assert!(congruence(MetricKind::Symplectic, &g, &k).unwrap() > 0.5);
    }
}
