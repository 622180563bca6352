//! Hamiltonian flows, the rates `(v, f, r)` they induce on frames, and the
//! position-time and momentum-time Legendre transforms.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamilton::{hamilton_element, RateParams};
use crate::mat::Mat;

type EnergyFn = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;
type GradFn = Arc<dyn Fn(f64, f64, f64) -> [f64; 3] + Send + Sync>;

/// An energy function `H(p, q, t)` together with its gradient
/// `(∂H/∂p, ∂H/∂q, ∂H/∂t)`.
#[derive(Clone)]
pub struct Hamiltonian {
    name: String,
    energy: EnergyFn,
    grad: GradFn,
}

impl fmt::Debug for Hamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hamiltonian")
            .field("name", &self.name)
            .finish()
    }
}

const GRADIENT_SAMPLES: [f64; 4] = [-1.1, 0.0, 0.45, 1.7];

impl Hamiltonian {
    /// Registers `energy` and `grad`, checking the gradient against central
    /// differences of the energy on a small grid of `(p, q, t)` points.
    pub fn new<E, G>(name: impl Into<String>, energy: E, grad: G) -> Result<Self>
    where
        E: Fn(f64, f64, f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64, f64, f64) -> [f64; 3] + Send + Sync + 'static,
    {
        let h = Hamiltonian {
            name: name.into(),
            energy: Arc::new(energy),
            grad: Arc::new(grad),
        };
        for &p in &GRADIENT_SAMPLES {
            for &q in &GRADIENT_SAMPLES {
                for &t in &GRADIENT_SAMPLES {
                    h.check_gradient_at(p, q, t)?;
                }
            }
        }
        Ok(h)
    }

    fn check_gradient_at(&self, p: f64, q: f64, t: f64) -> Result<()> {
        let g = self.grad(p, q, t);
        let e = |dp: f64, dq: f64, dt: f64| self.energy(p + dp, q + dq, t + dt);
        let d = 1e-5;
        let fd = [
            (e(d, 0.0, 0.0) - e(-d, 0.0, 0.0)) / (2.0 * d),
            (e(0.0, d, 0.0) - e(0.0, -d, 0.0)) / (2.0 * d),
            (e(0.0, 0.0, d) - e(0.0, 0.0, -d)) / (2.0 * d),
        ];
        let deviation = g
            .iter()
            .zip(fd)
            .map(|(a, b)| (a - b).abs() / (1.0 + a.abs()))
            .fold(0.0, f64::max);
        if !(deviation <= 1e-6) {
            return Err(Error::InconsistentGradient { p, q, t, deviation });
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn energy(&self, p: f64, q: f64, t: f64) -> f64 {
        (self.energy)(p, q, t)
    }

    pub fn grad(&self, p: f64, q: f64, t: f64) -> [f64; 3] {
        (self.grad)(p, q, t)
    }

    /// `∂²H/∂p²` by central differences of the gradient.
    pub fn hessian_pp(&self, p: f64, q: f64, t: f64) -> f64 {
        let d = 1e-5 * (1.0 + p.abs());
        (self.grad(p + d, q, t)[0] - self.grad(p - d, q, t)[0]) / (2.0 * d)
    }

    /// `∂²H/∂q²` by central differences of the gradient.
    pub fn hessian_qq(&self, p: f64, q: f64, t: f64) -> f64 {
        let d = 1e-5 * (1.0 + q.abs());
        (self.grad(p, q + d, t)[1] - self.grad(p, q - d, t)[1]) / (2.0 * d)
    }

    /// `H = p²/2`.
    pub fn free() -> Self {
        Self::builtin("free", |p, _, _| 0.5 * p * p, |p, _, _| [p, 0.0, 0.0])
    }

    /// `H = (p² + q²)/2`.
    pub fn oscillator() -> Self {
        Self::builtin(
            "oscillator",
            |p, q, _| 0.5 * (p * p + q * q),
            |p, q, _| [p, q, 0.0],
        )
    }

    /// `H = p²/2 + q·t`, a particle under a force growing linearly in time.
    pub fn driven() -> Self {
        Self::builtin("driven", |p, q, t| 0.5 * p * p + q * t, |p, q, t| [p, t, q])
    }

    /// `H = q·p`, degenerate in both Legendre directions.
    pub fn dilation() -> Self {
        Self::builtin("dilation", |p, q, _| q * p, |p, q, _| [q, p, 0.0])
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "free" => Ok(Self::free()),
            "oscillator" => Ok(Self::oscillator()),
            "driven" => Ok(Self::driven()),
            "dilation" => Ok(Self::dilation()),
            other => Err(Error::InvalidArgument(format!(
                "unknown Hamiltonian {other:?}"
            ))),
        }
    }

    fn builtin<E, G>(name: &str, energy: E, grad: G) -> Self
    where
        E: Fn(f64, f64, f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64, f64, f64) -> [f64; 3] + Send + Sync + 'static,
    {
        Self::new(name, energy, grad).expect("built-in gradient is consistent")
    }
}

/// One sample of a trajectory with the frame rates read off Hamilton's
/// equations: `v = ∂H/∂p`, `f = −∂H/∂q`, `r = ∂H/∂t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub q: f64,
    pub p: f64,
    pub e: f64,
    pub v: f64,
    pub f: f64,
    pub r: f64,
}

impl Sample {
    pub fn rates(&self) -> RateParams {
        RateParams::new(self.v, self.f, self.r)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub hamiltonian: String,
    pub dt_step: f64,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    /// Builds a trajectory from an arbitrary path `(t, q, p)` sampled at a
    /// uniform step, with rates taken from the Hamiltonian at each point.
    pub fn from_path(h: &Hamiltonian, points: &[(f64, f64, f64)]) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidArgument(
                "path needs at least 3 points".into(),
            ));
        }
        let dt_step = points[1].0 - points[0].0;
        let samples = points.iter().map(|&(t, q, p)| sample(h, t, q, p)).collect();
        Ok(Trajectory {
            hamiltonian: h.name().to_string(),
            dt_step,
            samples,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectories are never empty")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,q,p,e,v,f,r\n");
        for s in &self.samples {
            let row = [s.t, s.q, s.p, s.e, s.v, s.f, s.r]
                .iter()
                .map(|x| crate::fmt_g17(*x))
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&row);
            out.push('\n');
        }
        out
    }
}

fn sample(h: &Hamiltonian, t: f64, q: f64, p: f64) -> Sample {
    let [hp, hq, ht] = h.grad(p, q, t);
    Sample {
        t,
        q,
        p,
        e: h.energy(p, q, t),
        v: hp,
        f: 0.0 - hq,
        r: ht,
    }
}

/// Classic fixed-step RK4 for `q̇ = ∂H/∂p`, `ṗ = −∂H/∂q`.
///
/// The step is adjusted to `t_end / n` with `n = round(t_end / dt_step)` so
/// the final sample lands exactly on `t_end`.
pub fn integrate_hamilton(
    h: &Hamiltonian,
    q0: f64,
    p0: f64,
    t_end: f64,
    dt_step: f64,
) -> Result<Trajectory> {
    for (name, x) in [("q0", q0), ("p0", p0), ("t_end", t_end), ("dt", dt_step)] {
        if !x.is_finite() {
            return Err(Error::InvalidArgument(format!("{name} must be finite")));
        }
    }
    if !(t_end > 0.0 && dt_step > 0.0) {
        return Err(Error::InvalidArgument(
            "t_end and dt must be positive".into(),
        ));
    }
    let n = ((t_end / dt_step).round() as usize).max(1);
    let step = t_end / n as f64;
    let rhs = |t: f64, q: f64, p: f64| {
        let [hp, hq, _] = h.grad(p, q, t);
        (hp, -hq)
    };

    let mut samples = Vec::with_capacity(n + 1);
    let (mut q, mut p) = (q0, p0);
    samples.push(sample(h, 0.0, q, p));
    for k in 0..n {
        let t = k as f64 * step;
        let (k1q, k1p) = rhs(t, q, p);
        let (k2q, k2p) = rhs(t + 0.5 * step, q + 0.5 * step * k1q, p + 0.5 * step * k1p);
        let (k3q, k3p) = rhs(t + 0.5 * step, q + 0.5 * step * k2q, p + 0.5 * step * k2p);
        let (k4q, k4p) = rhs(t + step, q + step * k3q, p + step * k3p);
        q += step / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        p += step / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        let t_next = if k + 1 == n {
            t_end
        } else {
            (k + 1) as f64 * step
        };
        let s = sample(h, t_next, q, p);
        if ![s.q, s.p, s.e, s.v, s.f, s.r].iter().all(|x| x.is_finite()) {
            return Err(Error::StepTooLarge(t_next));
        }
        samples.push(s);
    }
    Ok(Trajectory {
        hamiltonian: h.name().to_string(),
        dt_step: step,
        samples,
    })
}

/// `Φ(v, f, r)` at the given sample.
pub fn frame_along_trajectory(traj: &Trajectory, index: usize) -> Result<Mat> {
    let s = traj.samples.get(index).ok_or(Error::IndexOutOfRange {
        index,
        len: traj.len(),
    })?;
    hamilton_element(&s.rates())
}

const MAX_ITER: usize = 100;
const HESSIAN_FLOOR: f64 = 1e-8;

/// Solves `g(x) = 0` for a scalar `x` with Newton steps from `x0`, falling
/// back to bracketing and bisection when a step fails to reduce `|g|`.
fn solve_scalar(
    g: impl Fn(f64) -> f64,
    dg: impl Fn(f64) -> f64,
    x0: f64,
    which: &'static str,
) -> Result<f64> {
    let tol = |x: f64| 1e-13 * (1.0 + x.abs());
    let d0 = dg(x0);
    if !(d0.abs() >= HESSIAN_FLOOR) {
        return Err(Error::SingularHessian {
            which,
            value: d0.abs(),
        });
    }
    let mut x = x0;
    let mut r = g(x);
    for _ in 0..MAX_ITER {
        if r.abs() <= tol(x) {
            return finish(x, &dg, which);
        }
        let d = dg(x);
        if d.abs() < HESSIAN_FLOOR {
            break;
        }
        let xn = x - r / d;
        let rn = g(xn);
        if !(xn.is_finite() && rn.abs() < r.abs()) {
            break;
        }
        x = xn;
        r = rn;
    }
    if r.abs() <= tol(x) {
        return finish(x, &dg, which);
    }

    // Bisection fallback on an expanding bracket around the last iterate.
    let mut width = 1.0 + x.abs();
    let bracket = (0..60).find_map(|_| {
        let (lo, hi) = (x - width, x + width);
        width *= 2.0;
        (g(lo).signum() != g(hi).signum()).then_some((lo, hi))
    });
    let (mut lo, mut hi) = bracket.ok_or(Error::NoConvergence(MAX_ITER))?;
    let glo = g(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm.abs() <= tol(mid) || hi - lo <= f64::EPSILON * mid.abs() {
            return finish(mid, &dg, which);
        }
        if gm.signum() == glo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence(MAX_ITER))
}

fn finish(x: f64, dg: &impl Fn(f64) -> f64, which: &'static str) -> Result<f64> {
    let d = dg(x);
    if !(d.abs() >= HESSIAN_FLOOR) {
        return Err(Error::SingularHessian {
            which,
            value: d.abs(),
        });
    }
    Ok(x)
}

/// Momentum solving `v = ∂H/∂p` at fixed `(q, t)`.
pub fn momentum_for_velocity(h: &Hamiltonian, q: f64, v: f64, t: f64) -> Result<f64> {
    solve_scalar(
        |p| h.grad(p, q, t)[0] - v,
        |p| h.hessian_pp(p, q, t),
        v,
        "d2H/dp2",
    )
}

/// Position solving `f = −∂H/∂q` at fixed `(p, t)`.
pub fn position_for_force(h: &Hamiltonian, p: f64, f: f64, t: f64) -> Result<f64> {
    solve_scalar(
        |q| -h.grad(p, q, t)[1] - f,
        |q| -h.hessian_qq(p, q, t),
        -f,
        "d2H/dq2",
    )
}

/// Position-time Lagrangian `L(q, v, t) = p·v − H(p, q, t)` with `v = ∂H/∂p`.
pub fn legendre_position(h: &Hamiltonian, q: f64, v: f64, t: f64) -> Result<f64> {
    let p = momentum_for_velocity(h, q, v, t)?;
    Ok(p * v - h.energy(p, q, t))
}

/// Momentum-time Lagrangian `L(p, f, t) = −(H(p, q, t) + q·f)` with `f = −∂H/∂q`.
pub fn legendre_momentum(h: &Hamiltonian, p: f64, f: f64, t: f64) -> Result<f64> {
    let q = position_for_force(h, p, f, t)?;
    Ok(-(h.energy(p, q, t) + q * f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LagrangianForm {
    Position,
    Momentum,
}

/// Largest `|∂L/∂x − d/dt ∂L/∂ẋ|` over the interior samples, where `x` is
/// `q` (position form, `ẋ = v`) or `p` (momentum form, `ẋ = f`).
///
/// Partial derivatives are central differences of the Legendre-transformed
/// Lagrangian; the time derivative is a central difference across samples.
pub fn euler_lagrange_residual(
    h: &Hamiltonian,
    traj: &Trajectory,
    which: LagrangianForm,
) -> Result<f64> {
    if traj.len() < 3 {
        return Err(Error::InvalidArgument(
            "trajectory needs at least 3 samples".into(),
        ));
    }
    let lag = |x: f64, xdot: f64, t: f64| match which {
        LagrangianForm::Position => legendre_position(h, x, xdot, t),
        LagrangianForm::Momentum => legendre_momentum(h, x, xdot, t),
    };
    let coords = |s: &Sample| match which {
        LagrangianForm::Position => (s.q, s.v),
        LagrangianForm::Momentum => (s.p, s.f),
    };
    let d_dx = |x: f64, xdot: f64, t: f64| -> Result<(f64, f64)> {
        let hx = 1e-4 * (1.0 + x.abs());
        let hv = 1e-4 * (1.0 + xdot.abs());
        let lx = (lag(x + hx, xdot, t)? - lag(x - hx, xdot, t)?) / (2.0 * hx);
        let lv = (lag(x, xdot + hv, t)? - lag(x, xdot - hv, t)?) / (2.0 * hv);
        Ok((lx, lv))
    };
    let mut momenta = Vec::with_capacity(traj.len());
    let mut forces = Vec::with_capacity(traj.len());
    for s in &traj.samples {
        let (x, xdot) = coords(s);
        let (lx, lv) = d_dx(x, xdot, s.t)?;
        forces.push(lx);
        momenta.push(lv);
    }
    let mut worst: f64 = 0.0;
    for k in 1..traj.len() - 1 {
        let dt = traj.samples[k + 1].t - traj.samples[k - 1].t;
        let dlv = (momenta[k + 1] - momenta[k - 1]) / dt;
        worst = worst.max((forces[k] - dlv).abs());
    }
    Ok(worst)
}
