use proptest::prelude::*;
use reciproca::discrete::{discrete_automorphism, discrete_invariance_check, DiscreteLabel};
use reciproca::hamilton::hamilton_compose;
use reciproca::inertial::{lorentz2, velocity_add};
use reciproca::quaplectic::{
    quaplectic_compose, quaplectic_element, quaplectic_inverse, translation_casimir,
    QuaplecticElement,
};
use reciproca::reciprocal::{extract_su11, rate_add, w_squared, xi_su11, xi_u11};
use reciproca::{Constants, FrameVector, Mat, RateParams};

fn rates() -> impl Strategy<Value = RateParams> {
    (-0.6..0.6f64, -0.6..0.6f64, -0.6..0.6f64).prop_map(|(v, f, r)| RateParams::new(v, f, r))
}

proptest! {
    #[test]
    fn boost_inverse_is_negated_rates(r in rates()) {
        let unit = Constants::natural();
        let back = RateParams::new(-r.v, -r.f, -r.r);
        let prod = xi_su11(&back, &unit).unwrap() * xi_su11(&r, &unit).unwrap();
        prop_assert!(prod.max_abs_diff(&Mat::identity(4)) < 1e-12);
    }

    #[test]
    fn extraction_recovers_rates(r in rates()) {
        let unit = Constants::natural();
        let got = extract_su11(&xi_su11(&r, &unit).unwrap(), &unit).unwrap();
        for (a, b) in [(got.v, r.v), (got.f, r.f), (got.r, r.r)] {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rate_law_reduces_to_velocity_addition(v in -0.99..0.99f64, vt in -0.99..0.99f64) {
        let unit = Constants::natural();
        let law = rate_add(&RateParams::new(v, 0.0, 0.0), &RateParams::new(vt, 0.0, 0.0), &unit).unwrap();
        prop_assert!((law.v - velocity_add(v, vt, &unit).unwrap()).abs() < 1e-12);
        prop_assert_eq!(law.f, 0.0);
        prop_assert_eq!(law.r, 0.0);
        let boost = xi_su11(&RateParams::new(v, 0.0, 0.0), &unit).unwrap();
        let l = lorentz2(v, &unit).unwrap();
        prop_assert!((boost.get(0, 0) - l.get(0, 0)).abs() < 1e-14);
        prop_assert!((boost.get(1, 0) - l.get(1, 0)).abs() < 1e-14);
    }

    #[test]
    fn rate_law_contracts_to_hamilton_law(a in rates(), b in rates()) {
        let big = Constants::new(1e7, 1e7, 1.0).unwrap();
        let law = rate_add(&a, &b, &big).unwrap();
        let limit = hamilton_compose(&a, &b).unwrap();
        for (x, y) in [(law.v, limit.v), (law.f, limit.f), (law.r, limit.r)] {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn quaplectic_inverse_composes_to_identity(
        r in rates(),
        a in -1.0..1.0f64,
        z in prop::array::uniform4(-3.0..3.0f64),
        iota in -3.0..3.0f64,
    ) {
        let unit = Constants::natural();
        let xi = xi_u11(&RateParams::with_a(r.v, r.f, r.r, a), &unit).unwrap();
        let e = QuaplecticElement::new(xi, z, iota);
        let inv = quaplectic_inverse(&e).unwrap();
        let one = quaplectic_compose(&e, &inv).unwrap();
        let m = quaplectic_element(&one).unwrap();
        prop_assert!(m.max_abs_diff(&Mat::identity(6)) < 1e-10);
    }

    #[test]
    fn discrete_conjugation_preserves_bound(r in rates(), a in -1.0..1.0f64, k in 0usize..16) {
        let unit = Constants::natural();
        let s = reciproca::discrete::DiscreteElement::from_label(DiscreteLabel::all()[k]);
        let x = RateParams::with_a(r.v, r.f, r.r, a);
        let y = discrete_automorphism(&s, &x, &unit).unwrap();
        prop_assert!((w_squared(&y, &unit) - w_squared(&x, &unit)).abs() < 1e-12);
    }

    #[test]
    fn born_green_interval_is_boost_invariant(r in rates(), d in prop::array::uniform4(-2.0..2.0f64)) {
        let unit = Constants::natural();
        let frame = FrameVector::from_array(d);
        let moved = frame.transform(&xi_su11(&r, &unit).unwrap()).unwrap();
        let (x, y) = (translation_casimir(&frame), translation_casimir(&moved));
        prop_assert!((x - y).abs() < 1e-11 * (1.0 + x.abs()));
    }
}

#[test]
fn every_discrete_element_is_an_isometry() {
    for label in DiscreteLabel::all() {
        let rep =
            discrete_invariance_check(&reciproca::discrete::DiscreteElement::from_label(label));
        assert!(rep.pass, "{label}");
        assert_eq!(rep.symplectic_residual, 0.0);
        assert_eq!(rep.born_green_residual, 0.0);
    }
}
