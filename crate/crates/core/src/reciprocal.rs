//! The U(1,1) frame group: SU(1,1) boosts `Ξ(v, f, r)`, the central U(1)
//! factor `Ξ°(a)`, their composition laws, contractions and Lie algebra.

use serde::Serialize;

use crate::algebra::{diff_table, structure_table, Generator, Relation, StructureTable, TableDiff};
use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::hamilton::{hamilton_element, RateParams};
use crate::inertial::lorentz_factor;
use crate::mat::Mat;

/// `w² = (v/c)² + (f/b)² − (r/(bc))²`.
pub fn w_squared(rates: &RateParams, constants: &Constants) -> f64 {
    let (v, f, r) = dimensionless(rates, constants);
    v * v + f * f - r * r
}

/// `(v/c, f/b, r/(bc))`.
fn dimensionless(rates: &RateParams, k: &Constants) -> (f64, f64, f64) {
    (rates.v / k.c, rates.f / k.b, rates.r / (k.b * k.c))
}

fn check_finite(rates: &RateParams) -> Result<()> {
    if rates.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite("rate parameters"))
    }
}

/// Rates together with their `w²`, validated to lie inside the bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoostParams {
    pub rates: RateParams,
    pub w2: f64,
}

impl BoostParams {
    pub fn new(rates: RateParams, constants: &Constants) -> Result<Self> {
        check_finite(&rates)?;
        let w2 = w_squared(&rates, constants);
        if w2 >= 1.0 {
            return Err(Error::RateBoundExceeded { w2 });
        }
        Ok(BoostParams { rates, w2 })
    }

    /// `(1 − w²)^{-1/2}`.
    pub fn gamma(&self) -> f64 {
        1.0 / (1.0 - self.w2).sqrt()
    }
}

/// The SU(1,1) boost `Ξ(v, f, r)`.
pub fn xi_su11(rates: &RateParams, constants: &Constants) -> Result<Mat> {
    check_finite(rates)?;
    if rates.a != 0.0 {
        return Err(Error::NonzeroU1Param(rates.a));
    }
    let g = BoostParams::new(*rates, constants)?.gamma();
    let (c2, b2) = (constants.c * constants.c, constants.b * constants.b);
    let RateParams { v, f, r, .. } = *rates;
    Ok(Mat::rows([
        [1.0, v / c2, f / b2, -r / (b2 * c2)],
        [v, 1.0, r / b2, -f / b2],
        [f, -r / c2, 1.0, v / c2],
        [r, -f, v, 1.0],
    ])
    .scale(g))
}

/// The U(1) rotation `Ξ°(a)` with `tan θ = a/(bc)`.
pub fn xi_u1(a: f64, constants: &Constants) -> Result<Mat> {
    if !a.is_finite() {
        return Err(Error::NonFinite("U(1) parameter"));
    }
    let (c2, b2) = (constants.c * constants.c, constants.b * constants.b);
    let t = a / (constants.b * constants.c);
    let cos = 1.0 / (1.0 + t * t).sqrt();
    Ok(Mat::rows([
        [1.0, 0.0, 0.0, -a / (b2 * c2)],
        [0.0, 1.0, -a / b2, 0.0],
        [0.0, a / c2, 1.0, 0.0],
        [a, 0.0, 0.0, 1.0],
    ])
    .scale(cos))
}

/// `Ξ(v, f, r, a) = Ξ°(a)·Ξ(v, f, r)`.
pub fn xi_u11(rates: &RateParams, constants: &Constants) -> Result<Mat> {
    let boost = xi_su11(&RateParams::new(rates.v, rates.f, rates.r), constants)?;
    if rates.a == 0.0 {
        return Ok(boost);
    }
    Ok(xi_u1(rates.a, constants)? * boost)
}

/// Denominator `1 + ṽv/c² + f̃f/b² − r̃r/(b²c²)` of the rate addition law.
pub fn composition_denominator(first: &RateParams, second: &RateParams, k: &Constants) -> f64 {
    let (v, f, r) = dimensionless(first, k);
    let (vt, ft, rt) = dimensionless(second, k);
    1.0 + vt * v + ft * f - rt * r
}

fn check_addable(rates: &RateParams, k: &Constants) -> Result<()> {
    check_finite(rates)?;
    if rates.a != 0.0 {
        return Err(Error::NonzeroU1Param(rates.a));
    }
    let w2 = w_squared(rates, k);
    // The bound itself is admitted so that the saturation point composes.
    if w2 > 1.0 {
        return Err(Error::RateBoundExceeded { w2 });
    }
    Ok(())
}

/// Rates of `Ξ(second)·Ξ(first)`.
///
/// With `D` the [`composition_denominator`], the law is (dimensionless)
/// `v'' = (ṽ + v + r̃f − f̃r)/D`, `f'' = (f̃ + f + ṽr − r̃v)/D`,
/// `r'' = (r̃ + r + ṽf − f̃v)/D`. The matrix identity
/// `Ξ(second)·Ξ(first) = sign(D)·Ξ(result)` holds; for `D < 0` the product
/// leaves the `(v, f, r)` chart by a factor `−I`.
pub fn rate_add(
    first: &RateParams,
    second: &RateParams,
    constants: &Constants,
) -> Result<RateParams> {
    check_addable(first, constants)?;
    check_addable(second, constants)?;
    let (v, f, r) = dimensionless(first, constants);
    let (vt, ft, rt) = dimensionless(second, constants);
    let d = 1.0 + vt * v + ft * f - rt * r;
    if d.abs() < 1e-12 {
        return Err(Error::DegenerateDenominator(d));
    }
    let v2 = (vt + v + rt * f - ft * r) / d;
    let f2 = (ft + f + vt * r - rt * v) / d;
    let r2 = (rt + r + vt * f - ft * v) / d;
    let (b, c) = (constants.b, constants.c);
    Ok(RateParams::new(v2 * c, f2 * b, r2 * b * c))
}

/// `Υ(v, f, r)`, the `b → ∞` contraction of `Ξ(v, f, r)`.
pub fn limit_b(rates: &RateParams, constants: &Constants) -> Result<Mat> {
    check_finite(rates)?;
    let g = lorentz_factor(rates.v, constants.c)?;
    let c2 = constants.c * constants.c;
    let RateParams { v, f, r, .. } = *rates;
    Ok(Mat::rows([
        [1.0, v / c2, 0.0, 0.0],
        [v, 1.0, 0.0, 0.0],
        [f, -r / c2, 1.0, v / c2],
        [r, -f, v, 1.0],
    ])
    .scale(g))
}

/// Rates of `Υ(second)·Υ(first)`:
/// `v'' = (ṽ + v)/D`, `f'' = (f̃ + f + (ṽr − r̃v)/c²)/D`, `r'' = (r̃ + r + ṽf − f̃v)/D`
/// with `D = 1 + ṽv/c²`.
pub fn upsilon_compose(
    first: &RateParams,
    second: &RateParams,
    constants: &Constants,
) -> Result<RateParams> {
    for x in [first, second] {
        check_finite(x)?;
        lorentz_factor(x.v, constants.c)?;
    }
    let c2 = constants.c * constants.c;
    let (a, t) = (first, second);
    let d = 1.0 + t.v * a.v / c2;
    Ok(RateParams::new(
        (t.v + a.v) / d,
        (t.f + a.f + (t.v * a.r - t.r * a.v) / c2) / d,
        (t.r + a.r + t.v * a.f - t.f * a.v) / d,
    ))
}

/// `b, c → ∞` contraction of `Ξ(v, f, r)`: the Hamilton element `Φ(v, f, r)`.
pub fn limit_bc(rates: &RateParams) -> Result<Mat> {
    hamilton_element(rates)
}

/// Rates of `Ξ(second)·Ξ(first)` including the U(1) parameter, which adds
/// as `tan(θ̃ + θ)`.
pub fn u11_compose(
    first: &RateParams,
    second: &RateParams,
    constants: &Constants,
) -> Result<RateParams> {
    let strip = |x: &RateParams| RateParams::new(x.v, x.f, x.r);
    let mut out = rate_add(&strip(first), &strip(second), constants)?;
    let bc = constants.b * constants.c;
    let (a, at) = (first.a / bc, second.a / bc);
    let d = 1.0 - at * a;
    if d < 1e-12 {
        return Err(Error::DegenerateDenominator(d));
    }
    out.a = (at + a) / d * bc;
    Ok(out)
}

/// Reads `(v, f, r)` from column 0 of a matrix, normalized by its `(0,0)`
/// entry, without checking that the matrix is a boost.
pub fn column0_rates(m: &Mat) -> Result<RateParams> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: 4,
            right: m.dim(),
        });
    }
    let m00 = m.get(0, 0);
    if m00 == 0.0 || !m.is_finite() {
        return Err(Error::NotInGroup(f64::INFINITY));
    }
    Ok(RateParams::new(
        m.get(1, 0) / m00,
        m.get(2, 0) / m00,
        m.get(3, 0) / m00,
    ))
}

fn rebuild_residual(m: &Mat, rates: &RateParams, constants: &Constants) -> Result<()> {
    let rebuilt = xi_u11(rates, constants).map_err(|_| Error::NotInGroup(f64::INFINITY))?;
    let res = rebuilt.max_abs_diff(m);
    if res > 1e-9 * m.max_abs().max(1.0) {
        return Err(Error::NotInGroup(res));
    }
    Ok(())
}

/// Inverts [`xi_su11`]: extracts `(v, f, r)` from column 0 and confirms the
/// matrix is reproduced.
pub fn extract_su11(m: &Mat, constants: &Constants) -> Result<RateParams> {
    let rates = column0_rates(m)?;
    rebuild_residual(m, &rates, constants)?;
    Ok(rates)
}

/// Dimensionless basis `{I, K, N, M, U, UK, UN, UM}`, mutually orthogonal
/// under the Frobenius product with squared norm 4.
fn u11_basis() -> [Mat; 8] {
    let [k, n, m, u] = su11_unit_generators();
    [Mat::identity(4), k, n, m, u, u * k, u * n, u * m]
}

fn su11_unit_generators() -> [Mat; 4] {
    [
        Mat::rows([
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
        ]),
        Mat::rows([
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
        ]),
        Mat::rows([
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]),
        Mat::rows([
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]),
    ]
}

/// Inverts [`xi_u11`] by projecting onto the U(1,1) basis; fails with
/// `NotInGroup` if the matrix is not reproduced.
pub fn extract_u11(m: &Mat, constants: &Constants) -> Result<RateParams> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: 4,
            right: m.dim(),
        });
    }
    let x = constants.to_dimensionless(m);
    let coeff: Vec<f64> = u11_basis().iter().map(|b| b.dot(&x) / 4.0).collect();
    if !(coeff[0] > 0.0) {
        return Err(Error::NotInGroup(f64::INFINITY));
    }
    let (b, c) = (constants.b, constants.c);
    let rates = RateParams::with_a(
        coeff[1] / coeff[0] * c,
        coeff[2] / coeff[0] * b,
        coeff[3] / coeff[0] * b * c,
        coeff[4] / coeff[0] * b * c,
    );
    rebuild_residual(m, &rates, constants)?;
    Ok(rates)
}

/// Generators `{K, N, M, U}` in the dimensionless convention.
pub fn su11_generators() -> Vec<Generator> {
    let [k, n, m, u] = su11_unit_generators();
    vec![("K", k), ("N", n), ("M", m), ("U", u)]
}

/// Generators `∂Ξ/∂v, ∂Ξ/∂f, ∂Ξ/∂r, ∂Ξ°/∂a` at the identity, in physical units.
pub fn su11_generators_with(constants: &Constants) -> Vec<Generator> {
    let (b, c) = (constants.b, constants.c);
    let scales = [c, b, b * c, b * c];
    su11_generators()
        .into_iter()
        .zip(scales)
        .map(|((name, g), s)| (name, constants.to_physical(&g).scale(1.0 / s)))
        .collect()
}

/// Reference bracket table for `{K, N, M, U}`.
pub fn su11_reference_table() -> Vec<Relation> {
    vec![
        Relation::new("K", "N", &[("M", 2.0)]),
        Relation::new("M", "N", &[("K", 2.0)]),
        Relation::new("M", "K", &[("N", -2.0)]),
        Relation::new("U", "N", &[]),
        Relation::new("U", "K", &[]),
        Relation::new("U", "M", &[]),
    ]
}

/// Contracted generators: `G = lim_{c→∞} K`, `F = lim_{b→∞} N`,
/// `R = lim_{b,c→∞} M`, and `Mhat = lim_{b→∞} M`, which keeps a `1/c²` entry.
pub fn contracted_generators(constants: &Constants) -> Vec<Generator> {
    let c2 = constants.c * constants.c;
    vec![
        ("G", Mat::unit(4, 1, 0) + Mat::unit(4, 3, 2)),
        ("F", Mat::unit(4, 2, 0) - Mat::unit(4, 3, 1)),
        ("R", Mat::unit(4, 3, 0)),
        (
            "Mhat",
            Mat::unit(4, 3, 0) - Mat::unit(4, 2, 1).scale(1.0 / c2),
        ),
    ]
}

/// Brackets of the contracted algebras recomputed from their matrices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractionReport {
    /// `{K, F, Mhat}` at finite `c`, `b → ∞`.
    pub b_limit: StructureTable,
    pub b_limit_diff: TableDiff,
    /// `{G, F, R}`, `b, c → ∞`.
    pub bc_limit: StructureTable,
    pub bc_limit_diff: TableDiff,
}

pub fn contraction_report(constants: &Constants) -> Result<ContractionReport> {
    let gens = contracted_generators(constants);
    let k = su11_generators_with(constants)[0].1;
    let b_set = vec![("K", k), gens[1], gens[3]];
    let bc_set = vec![gens[0], gens[1], gens[2]];
    let b_limit = structure_table(&b_set)?;
    let bc_limit = structure_table(&bc_set)?;
    let b_printed = vec![
        Relation::new("K", "F", &[("Mhat", 2.0)]),
        Relation::new("Mhat", "F", &[]),
        Relation::new("Mhat", "K", &[("N", -2.0)]),
    ];
    Ok(ContractionReport {
        b_limit_diff: diff_table(&b_limit, &b_printed)?,
        bc_limit_diff: diff_table(&bc_limit, &crate::hamilton::hamilton_reference_table())?,
        b_limit,
        bc_limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{jacobi_residual, DiffStatus};
    use crate::inertial::{gamma4, lorentz2};
    use crate::metric::{congruence, MetricKind};
    use proptest::prelude::*;

    fn unit() -> Constants {
        Constants::natural()
    }

    fn r3(v: f64, f: f64, r: f64) -> RateParams {
        RateParams::new(v, f, r)
    }

    #[test]
    fn zero_parameters_give_identity() {
        let k = unit();
        assert_eq!(
            xi_su11(&RateParams::default(), &k).unwrap(),
            Mat::identity(4)
        );
        assert_eq!(xi_u1(0.0, &k).unwrap(), Mat::identity(4));
        assert_eq!(
            xi_u11(&RateParams::default(), &k).unwrap(),
            Mat::identity(4)
        );
        assert_eq!(
            limit_b(&RateParams::default(), &k).unwrap(),
            Mat::identity(4)
        );
        assert_eq!(limit_bc(&RateParams::default()).unwrap(), Mat::identity(4));
    }

    #[test]
    fn pure_velocity_is_lorentz() {
        let k = Constants::new(2.0, 3.0, 1.0).unwrap();
        let xi = xi_su11(&r3(0.6, 0.0, 0.0), &k).unwrap();
        assert!(xi.max_abs_diff(&gamma4(0.6, &k).unwrap()) < 1e-15);
        let l = lorentz2(0.6, &k).unwrap();
        let ups = limit_b(&r3(0.6, 0.0, 0.0), &k).unwrap();
        assert!(ups.block(2).max_abs_diff(&l) < 1e-15);
    }

    #[test]
    fn pure_force_block() {
        let k = unit();
        let f: f64 = 0.5;
        let g = 1.0 / (1.0 - f * f).sqrt();
        let xi = xi_su11(&r3(0.0, f, 0.0), &k).unwrap();
        let want = Mat::rows([
            [1.0, 0.0, f, 0.0],
            [0.0, 1.0, 0.0, -f],
            [f, 0.0, 1.0, 0.0],
            [0.0, -f, 0.0, 1.0],
        ])
        .scale(g);
        assert!(xi.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn born_green_isometry() {
        let k = unit();
        let xi = xi_su11(&r3(0.3, 0.4, 0.2), &k).unwrap();
        assert!(congruence(MetricKind::BornGreen, &xi, &k).unwrap() < 1e-15);
        let u = xi_u11(&RateParams::with_a(0.1, 0.2, 0.1, 0.5), &k).unwrap();
        assert!(congruence(MetricKind::BornGreen, &u, &k).unwrap() < 1e-15);
        assert!(congruence(MetricKind::Symplectic, &xi_u1(1.3, &k).unwrap(), &k).unwrap() < 1e-15);
    }

    #[test]
    fn dimensional_isometry() {
        let k = Constants::new(3.0, 2.0, 5.0).unwrap();
        let rates = RateParams::with_a(1.1, 0.7, 2.0, 0.9);
        let xi = xi_u11(&rates, &k).unwrap();
        assert!(congruence(MetricKind::BornGreen, &xi, &k).unwrap() < 1e-12);
        assert!(congruence(MetricKind::Symplectic, &xi, &k).unwrap() < 1e-12);
        let scaled = k.to_physical(
            &xi_u11(
                &RateParams::with_a(1.1 / 3.0, 0.7 / 2.0, 2.0 / 6.0, 0.9 / 6.0),
                &unit(),
            )
            .unwrap(),
        );
        assert!(scaled.max_abs_diff(&xi) < 1e-14);
    }

    #[test]
    fn u1_commutes() {
        let k = unit();
        let a = xi_u1(0.7, &k).unwrap();
        let x = xi_su11(&r3(0.2, 0.1, 0.05), &k).unwrap();
        assert!((a * x).max_abs_diff(&(x * a)) < 1e-15);
    }

    #[test]
    fn u1_frame_action() {
        let k = Constants::new(2.0, 3.0, 1.0).unwrap();
        let a = 1.7;
        let theta = (a / (k.b * k.c)).atan();
        let (c, s) = (theta.cos(), theta.sin());
        let m = xi_u1(a, &k).unwrap();
        let out = m.apply(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        let (bc, cb, bb) = (k.b * k.c, k.c / k.b, k.b / k.c);
        let want = [
            c * 1.0 - s / bc * 4.0,
            c * 2.0 - cb * s * 3.0,
            c * 3.0 + bb * s * 2.0,
            c * 4.0 + bc * s * 1.0,
        ];
        for (x, y) in out.iter().zip(want) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn bound_enforced() {
        let k = unit();
        assert!(matches!(
            xi_su11(&r3(0.8, 0.7, 0.0), &k),
            Err(Error::RateBoundExceeded { .. })
        ));
        assert!(matches!(
            xi_su11(&RateParams::with_a(0.1, 0.0, 0.0, 0.2), &k),
            Err(Error::NonzeroU1Param(_))
        ));
        assert!(rate_add(&r3(1.0, 1.0, 0.5), &r3(0.0, 0.0, 0.0), &k).is_err());
    }

    #[test]
    fn saturation_point_is_fixed() {
        let k = unit();
        let s = r3(1.0, 1.0, 1.0);
        assert_eq!(rate_add(&s, &s, &k).unwrap(), s);
        let k = Constants::new(3.0, 5.0, 1.0).unwrap();
        let s = r3(3.0, 5.0, 15.0);
        let out = rate_add(&s, &s, &k).unwrap();
        assert!((out.v - 3.0).abs() < 1e-14 && (out.f - 5.0).abs() < 1e-14);
        assert!((out.r - 15.0).abs() < 1e-13);
    }

    #[test]
    fn identity_is_neutral() {
        let k = unit();
        let x = r3(0.3, 0.4, 0.2);
        assert_eq!(rate_add(&x, &RateParams::default(), &k).unwrap(), x);
        assert_eq!(rate_add(&RateParams::default(), &x, &k).unwrap(), x);
    }

    #[test]
    fn addition_matches_matrix_product_example() {
        let k = unit();
        let (a, b) = (r3(0.3, 0.4, 0.2), r3(0.1, -0.2, 0.05));
        let prod = xi_su11(&b, &k).unwrap() * xi_su11(&a, &k).unwrap();
        let out = rate_add(&a, &b, &k).unwrap();
        let col = column0_rates(&prod).unwrap();
        for (x, y) in out.as_array().iter().zip(col.as_array()) {
            assert!((x - y).abs() < 1e-15);
        }
        assert!(xi_su11(&out, &k).unwrap().max_abs_diff(&prod) < 1e-15);
    }

    #[test]
    fn negative_denominator_flips_sign() {
        let k = unit();
        let (a, b) = (r3(0.5, 0.5, 0.9), r3(-0.5, -0.5, 0.9));
        assert!(composition_denominator(&a, &b, &k) < 0.0);
        let prod = xi_su11(&b, &k).unwrap() * xi_su11(&a, &k).unwrap();
        let out = xi_su11(&rate_add(&a, &b, &k).unwrap(), &k).unwrap();
        assert!((prod + out).max_abs() < 1e-14);
    }

    #[test]
    fn upsilon_law_matches_matrices() {
        let k = Constants::new(2.0, 1.0, 1.0).unwrap();
        let (a, b) = (r3(0.7, 1.3, -0.4), r3(-1.1, 0.6, 2.2));
        let prod = limit_b(&b, &k).unwrap() * limit_b(&a, &k).unwrap();
        let out = limit_b(&upsilon_compose(&a, &b, &k).unwrap(), &k).unwrap();
        assert!(prod.max_abs_diff(&out) < 1e-14);
    }

    #[test]
    fn numeric_contractions() {
        let x = r3(0.3, 0.4, 0.2);
        let kb = Constants::new(1.0, 1e6, 1.0).unwrap();
        let d = xi_su11(&x, &kb)
            .unwrap()
            .max_abs_diff(&limit_b(&x, &kb).unwrap());
        assert!(d < 1e-6);
        let kbc = Constants::new(1e6, 1e6, 1.0).unwrap();
        let d = xi_su11(&x, &kbc)
            .unwrap()
            .max_abs_diff(&limit_bc(&x).unwrap());
        assert!(d < 1e-5);
        assert_eq!(
            limit_bc(&r3(1.0, 2.0, 3.0)).unwrap(),
            hamilton_element(&r3(1.0, 2.0, 3.0)).unwrap()
        );
    }

    #[test]
    fn invariant_subspaces_of_contractions() {
        let k = unit();
        let ups = limit_b(&r3(0.3, 0.4, 0.2), &k).unwrap();
        for (i, j) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            assert_eq!(ups.get(i, j), 0.0);
        }
        let xi = xi_su11(&r3(0.3, 0.4, 0.2), &k).unwrap();
        assert!(xi.flatten().iter().all(|&x| x != 0.0));
        let phi = limit_bc(&r3(0.3, 0.4, 0.2)).unwrap();
        assert_eq!(phi.row(0), vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn su11_table() {
        let t = structure_table(&su11_generators()).unwrap();
        assert!(t.exact);
        assert_eq!(t.expansion("K", "N").unwrap(), "2M");
        assert_eq!(t.expansion("U", "K").unwrap(), "0");
        let d = diff_table(&t, &su11_reference_table()).unwrap();
        assert_eq!((d.mismatches, d.unprinted), (0, 0));
        assert_eq!(jacobi_residual(&su11_generators()).unwrap(), 0.0);
    }

    #[test]
    fn dimensional_generators_are_derivatives() {
        let k = Constants::new(3.0, 2.0, 1.0).unwrap();
        let h = 1e-6;
        let gens = su11_generators_with(&k);
        let bumps = [
            RateParams::new(h, 0.0, 0.0),
            RateParams::new(0.0, h, 0.0),
            RateParams::new(0.0, 0.0, h),
            RateParams::with_a(0.0, 0.0, 0.0, h),
        ];
        for ((_, g), bump) in gens.iter().zip(bumps) {
            let neg = RateParams::with_a(-bump.v, -bump.f, -bump.r, -bump.a);
            let fd = (xi_u11(&bump, &k).unwrap() - xi_u11(&neg, &k).unwrap()).scale(0.5 / h);
            assert!(fd.max_abs_diff(g) < 1e-9);
        }
        // K in physical units carries 1/c² above the diagonal.
        assert!((gens[0].1.get(0, 1) - 1.0 / 9.0).abs() < 1e-15);
        let t = structure_table(&gens).unwrap();
        assert!(t.closed);
        assert!((t.coefficient("K", "N", "M").unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn contraction_brackets() {
        let rep = contraction_report(&unit()).unwrap();
        assert_eq!(rep.bc_limit.expansion("G", "F").unwrap(), "2R");
        assert_eq!(rep.bc_limit_diff.mismatches, 0);
        assert_eq!(rep.b_limit.expansion("K", "F").unwrap(), "2Mhat");
        assert_eq!(rep.b_limit.expansion("Mhat", "F").unwrap(), "0");
        assert_eq!(rep.b_limit.expansion("Mhat", "K").unwrap(), "-2F");
        let bad: Vec<_> = rep
            .b_limit_diff
            .entries
            .iter()
            .filter(|e| e.status == DiffStatus::Mismatch)
            .map(|e| e.pair.as_str())
            .collect();
        assert_eq!(bad, vec!["[Mhat,K]"]);
    }

    #[test]
    fn contraction_brackets_dimensional() {
        let rep = contraction_report(&Constants::new(3.0, 1.0, 1.0).unwrap()).unwrap();
        assert!((rep.b_limit.coefficient("K", "F", "Mhat").unwrap() - 2.0).abs() < 1e-12);
        // [Mhat, K] = −2F/c²
        assert!((rep.b_limit.coefficient("Mhat", "K", "F").unwrap() + 2.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn extraction_round_trips() {
        let k = Constants::new(2.0, 3.0, 1.5).unwrap();
        let rates = RateParams::with_a(0.4, -1.1, 2.3, 4.0);
        let m = xi_u11(&rates, &k).unwrap();
        let back = extract_u11(&m, &k).unwrap();
        for (x, y) in back.as_array().iter().zip(rates.as_array()) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(matches!(
            extract_u11(&Mat::diag(&[2.0, 1.0, 1.0, 1.0]), &k),
            Err(Error::NotInGroup(_))
        ));
        assert!(extract_su11(&m, &k).is_err());
    }

    #[test]
    fn u11_composition() {
        let k = unit();
        let (a, b) = (
            RateParams::with_a(0.2, 0.1, 0.3, 0.4),
            RateParams::with_a(-0.3, 0.2, 0.1, -0.9),
        );
        let prod = xi_u11(&b, &k).unwrap() * xi_u11(&a, &k).unwrap();
        let out = xi_u11(&u11_compose(&a, &b, &k).unwrap(), &k).unwrap();
        assert!(prod.max_abs_diff(&out) < 1e-14);
    }

    fn valid_rates() -> impl Strategy<Value = RateParams> {
        (-1f64..1.0, -1f64..1.0, -1f64..1.0, -3f64..3.0)
            .prop_filter("inside bound", |(v, f, r, _)| v * v + f * f - r * r < 0.98)
            .prop_map(|(v, f, r, a)| RateParams::with_a(v, f, r, a))
    }

    proptest! {
        #[test]
        fn isometries(x in valid_rates()) {
            let k = unit();
            let m = xi_u11(&x, &k).unwrap();
            prop_assert!(congruence(MetricKind::Symplectic, &m, &k).unwrap() < 1e-12);
            prop_assert!(congruence(MetricKind::BornGreen, &m, &k).unwrap() < 1e-12);
        }

        #[test]
        fn closure(a in valid_rates(), b in valid_rates()) {
            let k = unit();
            let (a, b) = (RateParams::new(a.v, a.f, a.r), RateParams::new(b.v, b.f, b.r));
            let d = composition_denominator(&a, &b, &k);
            prop_assume!(d.abs() > 1e-3);
            let out = rate_add(&a, &b, &k).unwrap();
            prop_assert!(w_squared(&out, &k) < 1.0);
            let prod = xi_su11(&b, &k).unwrap() * xi_su11(&a, &k).unwrap();
            let m = xi_su11(&out, &k).unwrap().scale(d.signum());
            prop_assert!(m.max_abs_diff(&prod) <= 1e-10 * prod.max_abs());
        }

        #[test]
        fn u1_is_central(x in valid_rates(), a in -5f64..5.0) {
            let k = unit();
            let u = xi_u1(a, &k).unwrap();
            let m = xi_su11(&RateParams::new(x.v, x.f, x.r), &k).unwrap();
            prop_assert!((u * m).max_abs_diff(&(m * u)) < 1e-12);
        }
    }
}
