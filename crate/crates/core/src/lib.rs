//! Matrix realizations of the frame groups of reciprocal relativity:
//! inertial boosts, the Hamilton group, U(1,1), the Heisenberg and
//! quaplectic groups, their algebras, Casimirs and discrete symmetries.

pub mod algebra;
pub mod casimir;
pub mod constants;
pub mod discrete;
pub mod dynamics;
pub mod error;
pub mod format;
pub mod hamilton;
pub mod hyperbolic;
pub mod inertial;
pub mod mat;
pub mod metric;
pub mod quaplectic;
pub mod reciprocal;
pub mod verify;

pub use constants::{Constants, FrameVector, Tolerance};
pub use error::{Error, Result};
pub use format::fmt_g17;
pub use hamilton::RateParams;
pub use mat::Mat;
pub use metric::MetricKind;
