//! Seeded property suite covering every group, law and table in the crate.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{jacobi_residual, structure_table};
use crate::casimir::casimir_c2;
use crate::constants::Constants;
use crate::discrete::{discrete_automorphism, discrete_table, DiscreteElement, DiscreteLabel};
use crate::dynamics::{
    euler_lagrange_residual, frame_along_trajectory, integrate_hamilton, legendre_momentum,
    Hamiltonian, LagrangianForm,
};
use crate::error::{Error, Result};
use crate::hamilton::{hamilton_compose, hamilton_element, hamilton_generators, RateParams};
use crate::hyperbolic::{hyperbolic_xi, rates_from_hyperbolic, HyperbolicParams};
use crate::metric::{congruence, MetricKind};
use crate::quaplectic::{
    conjugate_heisenberg, dilation, heisenberg_compose, heisenberg_element, heisenberg_from_matrix,
    heisenberg_generators, quaplectic_compose, quaplectic_element, quaplectic_generators,
    symplectic_form, HeisenbergElement, QuaplecticElement,
};
use crate::reciprocal::{
    extract_su11, extract_u11, limit_b, limit_bc, rate_add, su11_generators, u11_compose,
    w_squared, xi_su11, xi_u11,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub cases: usize,
    pub properties: Vec<PropertyResult>,
    pub pass: bool,
}

struct Tally {
    name: &'static str,
    tolerance: f64,
    cases: usize,
    failures: usize,
    worst: f64,
    note: Option<String>,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Tally {
            name,
            tolerance,
            cases: 0,
            failures: 0,
            worst: 0.0,
            note: None,
        }
    }

    /// Records one case; a `NaN` residual or an error counts as a failure.
    fn record(&mut self, residual: Result<f64>) {
        self.cases += 1;
        match residual {
            Ok(r) if r <= self.tolerance => self.worst = self.worst.max(r),
            Ok(r) => {
                self.failures += 1;
                self.worst = if r.is_nan() {
                    f64::NAN
                } else {
                    self.worst.max(r)
                };
            }
            Err(e) => {
                self.failures += 1;
                self.note.get_or_insert_with(|| e.to_string());
            }
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            max_residual: self.worst,
            tolerance: self.tolerance,
            pass: self.failures == 0 && self.cases > 0,
            note: self.note,
        }
    }
}

/// Dimensionless rates with `w² ≤ 0.9` and `|r| ≤ 1`.
pub fn sample_rates(rng: &mut impl Rng) -> RateParams {
    loop {
        let r = RateParams::new(
            rng.gen_range(-0.9..0.9),
            rng.gen_range(-0.9..0.9),
            rng.gen_range(-1.0..1.0),
        );
        if w_squared(&r, &Constants::natural()) <= 0.9 {
            return r;
        }
    }
}

fn sample_int(rng: &mut impl Rng, lo: i32, hi: i32) -> f64 {
    f64::from(rng.gen_range(lo..=hi))
}

fn rel_diff(a: &RateParams, b: &RateParams) -> f64 {
    a.as_array()
        .iter()
        .zip(b.as_array())
        .map(|(x, y)| (x - y).abs() / (1.0 + y.abs()))
        .fold(0.0, f64::max)
}

fn check(cond: bool) -> f64 {
    if cond {
        0.0
    } else {
        f64::INFINITY
    }
}

pub fn run_verify(seed: u64, cases: usize) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = Constants::natural();
    let mut props = Vec::new();

    let mut t = Tally::new("u11_isometry", 1e-12);
    for _ in 0..cases {
        let mut r = sample_rates(&mut rng);
        r.a = rng.gen_range(-2.0..2.0);
        t.record(xi_u11(&r, &unit).and_then(|m| {
            Ok(
                congruence(MetricKind::Symplectic, &m, &unit)?.max(congruence(
                    MetricKind::BornGreen,
                    &m,
                    &unit,
                )?),
            )
        }));
    }
    props.push(t.finish());

    let mut t = Tally::new("dimensional_isometry", 1e-12);
    for _ in 0..cases {
        let k = Constants::new(rng.gen_range(0.5..3.0), rng.gen_range(0.5..3.0), 1.0)
            .expect("positive constants");
        let s = sample_rates(&mut rng);
        let r = RateParams::new(s.v * k.c, s.f * k.b, s.r * k.b * k.c);
        t.record(xi_su11(&r, &k).and_then(|m| {
            let scale = m.max_abs().powi(2).max(1.0);
            Ok(congruence(MetricKind::Symplectic, &m, &k)?.max(congruence(
                MetricKind::BornGreen,
                &m,
                &k,
            )?) / scale)
        }));
    }
    props.push(t.finish());

    let mut t = Tally::new("saturation_fixed_point", 1e-14);
    let one = RateParams::new(1.0, 1.0, 1.0);
    t.record(rate_add(&one, &one, &unit).map(|o| rel_diff(&o, &one)));
    props.push(t.finish());

    let mut t = Tally::new("rate_addition_matches_product", 1e-9);
    for _ in 0..cases {
        let (a, b) = (sample_rates(&mut rng), sample_rates(&mut rng));
        t.record((|| {
            let prod = xi_su11(&b, &unit)? * xi_su11(&a, &unit)?;
            let law = rate_add(&a, &b, &unit)?;
            let sign = prod.get(0, 0).signum();
            let got = extract_su11(&prod.scale(sign), &unit)?;
            Ok(rel_diff(&got, &law))
        })());
    }
    props.push(t.finish());

    let mut t = Tally::new("u11_composition_matches_product", 1e-9);
    for _ in 0..cases {
        let (mut a, mut b) = (sample_rates(&mut rng), sample_rates(&mut rng));
        a.a = rng.gen_range(-0.7..0.7);
        b.a = rng.gen_range(-0.7..0.7);
        t.record((|| {
            let prod = xi_u11(&b, &unit)? * xi_u11(&a, &unit)?;
            let law = u11_compose(&a, &b, &unit)?;
            let trace: f64 = (0..4).map(|i| prod.get(i, i)).sum();
            let sign = trace.signum();
            Ok(rel_diff(&extract_u11(&prod.scale(sign), &unit)?, &law))
        })());
    }
    props.push(t.finish());

    let mut t = Tally::new("hamilton_group_exact", 0.0);
    for _ in 0..cases {
        let mut draw = || {
            RateParams::new(
                sample_int(&mut rng, -100, 100),
                sample_int(&mut rng, -100, 100),
                sample_int(&mut rng, -100, 100),
            )
        };
        let (a, b) = (draw(), draw());
        t.record((|| {
            let prod = hamilton_element(&b)? * hamilton_element(&a)?;
            Ok(prod.max_abs_diff(&hamilton_element(&hamilton_compose(&a, &b)?)?))
        })());
    }
    props.push(t.finish());

    let mut t = Tally::new("contraction_b", 1e-6);
    let mut t2 = Tally::new("contraction_bc", 1e-5);
    for _ in 0..cases.min(100) {
        let r = RateParams::new(
            rng.gen_range(-0.99..0.99),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        t.record((|| {
            let k = Constants::new(1.0, 1e6, 1.0)?;
            Ok(xi_su11(&r, &k)?.max_abs_diff(&limit_b(&r, &k)?))
        })());
        t2.record((|| {
            let k = Constants::new(1e6, 1e6, 1.0)?;
            Ok(xi_su11(&r, &k)?.max_abs_diff(&limit_bc(&r)?))
        })());
    }
    props.push(t.finish());
    props.push(t2.finish());

    let mut t = Tally::new("algebra_tables_exact", 0.0);
    let sets = [
        hamilton_generators(),
        su11_generators(),
        heisenberg_generators(),
        quaplectic_generators(),
    ];
    for gens in &sets {
        t.record((|| {
            let table = structure_table(gens)?;
            Ok(
                check(table.exact && table.closed && table.is_integer())
                    .max(jacobi_residual(gens)?),
            )
        })());
    }
    props.push(t.finish());

    let mut t = Tally::new("casimir_commutes", 1e-12);
    match casimir_c2() {
        Ok(rep) => {
            t.record(Ok(rep.max_residual));
            t.note = Some(format!("C2 = {}", rep.expression));
        }
        Err(e) => t.record(Err(e)),
    }
    props.push(t.finish());

    let mut t = Tally::new("heisenberg_cocycle_exact", 0.0);
    let mut td = Tally::new("dilation_action", 1e-12);
    let mut tc = Tally::new("conjugation_closure", 1e-12);
    let mut tq = Tally::new("quaplectic_law", 1e-10);
    for _ in 0..cases {
        let mut heis = || {
            let z = [0; 4].map(|_: i32| sample_int(&mut rng, -50, 50));
            HeisenbergElement::new(z, sample_int(&mut rng, -50, 50) / 2.0)
        };
        let (a, b) = (heis(), heis());
        t.record((|| {
            let prod = heisenberg_element(&b) * heisenberg_element(&a);
            Ok(prod.max_abs_diff(&heisenberg_element(&heisenberg_compose(&a, &b)?)))
        })());

        let eps = rng.gen_range(-1.0..1.0);
        td.record((|| {
            let conj = dilation(eps) * heisenberg_element(&a) * dilation(-eps);
            let out = heisenberg_from_matrix(&conj)?;
            let s = f64::exp(eps);
            let want = HeisenbergElement::new(a.z.map(|x| x * s), a.iota * s * s);
            let mut worst = (out.iota - want.iota).abs() / (1.0 + want.iota.abs());
            for i in 0..4 {
                worst = worst.max((out.z[i] - want.z[i]).abs() / (1.0 + want.z[i].abs()));
            }
            Ok(worst)
        })());

        let mut r = sample_rates(&mut rng);
        r.a = rng.gen_range(-2.0..2.0);
        let zt = [0; 4].map(|_: i32| rng.gen_range(-2.0..2.0));
        let it = rng.gen_range(-2.0..2.0);
        tc.record((|| {
            let xi = xi_u11(&r, &unit)?;
            let theta = QuaplecticElement::new(xi, zt, it);
            let out = conjugate_heisenberg(&theta, &b)?;
            let mut want = [0.0; 4];
            for (i, w) in want.iter_mut().enumerate() {
                *w = (0..4).map(|j| xi.get(i, j) * b.z[j]).sum();
            }
            let iota = b.iota + symplectic_form(&zt, &b.z);
            let scale = 1.0
                + want
                    .iter()
                    .chain([&iota])
                    .fold(0.0f64, |m, x| m.max(x.abs()));
            let mut worst = (out.iota - iota).abs();
            for i in 0..4 {
                worst = worst.max((out.z[i] - want[i]).abs());
            }
            Ok(worst / scale)
        })());

        let s = sample_rates(&mut rng);
        tq.record((|| {
            let e1 = QuaplecticElement::new(xi_u11(&r, &unit)?, zt, it);
            let e2 =
                QuaplecticElement::new(xi_u11(&s, &unit)?, b.z.map(|x| x / 25.0), b.iota / 25.0);
            let prod = quaplectic_element(&e2)? * quaplectic_element(&e1)?;
            let law = quaplectic_element(&quaplectic_compose(&e1, &e2)?)?;
            Ok(prod.max_abs_diff(&law) / prod.max_abs().max(1.0))
        })());
    }
    props.push(t.finish());
    props.push(td.finish());
    props.push(tc.finish());
    props.push(tq.finish());

    let mut t = Tally::new("discrete_group_abelian_and_isometric", 0.0);
    for ext in [false, true] {
        let table = discrete_table(ext);
        t.record(Ok(check(
            table.abelian && table.signed_permutations && table.metrics_preserved,
        )));
        let note = format!(
            "{}order {} (listed as {})",
            if ext { "; extended " } else { "" },
            table.order,
            table.expected_order
        );
        t.note = Some(t.note.take().unwrap_or_default() + &note);
    }
    props.push(t.finish());

    let mut t = Tally::new("discrete_conjugation_stays_in_group", 0.0);
    let labels = DiscreteLabel::all();
    for _ in 0..cases {
        let s = DiscreteElement::from_label(labels[rng.gen_range(0..labels.len())]);
        let mut r = sample_rates(&mut rng);
        r.a = rng.gen_range(-2.0..2.0);
        t.record(discrete_automorphism(&s, &r, &unit).map(|_| 0.0));
    }
    props.push(t.finish());

    let mut t = Tally::new("hyperbolic_equivalence", 1e-12);
    let mut done = 0;
    while done < cases.min(500) {
        let hp = HyperbolicParams::new(
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        );
        let w2 = hp.omega_squared();
        if !(w2 > 0.0 && w2 < 9.0) {
            continue;
        }
        done += 1;
        t.record((|| {
            let direct = hyperbolic_xi(&hp, &unit)?;
            let rates = rates_from_hyperbolic(&hp, &unit)?;
            let via = xi_su11(&rates, &unit)?;
            let th = hp.omega()?.tanh();
            let scale = direct.max_abs().max(1.0);
            Ok((direct.max_abs_diff(&via) / scale).max((w_squared(&rates, &unit) - th * th).abs()))
        })());
    }
    props.push(t.finish());

    props.extend(dynamics_properties());

    let pass = props.iter().all(|p| p.pass);
    VerifyReport {
        seed,
        cases,
        properties: props,
        pass,
    }
}

fn dynamics_properties() -> Vec<PropertyResult> {
    let h = Hamiltonian::oscillator();
    let unit = Constants::natural();
    let mut ret = Tally::new("oscillator_period_return", 1e-8);
    let mut frames = Tally::new("trajectory_frames_symplectic", 1e-12);
    let mut el = Tally::new("euler_lagrange_residuals", 1e-5);
    match integrate_hamilton(&h, 1.0, 0.0, 2.0 * PI, 1e-3) {
        Ok(tr) => {
            let end = tr.last();
            ret.record(Ok((end.q - 1.0).abs().max(end.p.abs())));
            for i in 0..tr.len() {
                frames.record(
                    frame_along_trajectory(&tr, i)
                        .and_then(|m| congruence(MetricKind::Symplectic, &m, &unit)),
                );
            }
            for form in [LagrangianForm::Position, LagrangianForm::Momentum] {
                el.record(euler_lagrange_residual(&h, &tr, form));
            }
        }
        Err(e) => ret.record(Err(e)),
    }
    let mut singular = Tally::new("free_particle_momentum_form_singular", 0.0);
    singular.record(
        match legendre_momentum(&Hamiltonian::free(), 1.0, 0.0, 0.0) {
            Err(Error::SingularHessian { .. }) => Ok(0.0),
            Err(e) => Err(e),
            Ok(_) => Ok(f64::INFINITY),
        },
    );
    vec![
        ret.finish(),
        frames.finish(),
        el.finish(),
        singular.finish(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let rep = run_verify(7, 20);
        for p in &rep.properties {
            assert!(p.pass, "{p:?}");
        }
        assert!(rep.pass);
    }

    #[test]
    fn deterministic_in_seed() {
        assert_eq!(run_verify(3, 5), run_verify(3, 5));
    }
}
