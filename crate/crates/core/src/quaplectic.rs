//! Translations, the Heisenberg group H(2), its automorphisms and the
//! quaplectic group `U(1,1) ⋉ H(2)`.
//!
//! Everything here is dimensionless: `z = (ť, q̌, p̌, ě)` and the homogeneous
//! blocks come from [`crate::reciprocal`] evaluated with natural constants.

use serde::Serialize;

use crate::algebra::{algebra_report, AlgebraReport, Generator, Relation};
use crate::discrete::DiscreteLabel;
use crate::error::{Error, Result};
use crate::hamilton::RateParams;
use crate::mat::Mat;
use crate::metric::{congruence_residual, zeta};
use crate::reciprocal::su11_generators;

/// A 4-vector `(ť, q̌, p̌, ě)`.
pub type Vec4 = [f64; 4];

const TRANSLATION_NAMES: [&str; 4] = ["T", "Q", "P", "E"];

fn check_vec(z: &Vec4, what: &'static str) -> Result<()> {
    if z.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

fn add(a: &Vec4, b: &Vec4) -> Vec4 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn apply4(m: &Mat, z: &Vec4) -> Vec4 {
    let mut out = [0.0; 4];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..4).map(|j| m.get(i, j) * z[j]).sum();
    }
    out
}

/// `ᵗz·ζ = (−ě, p̌, −q̌, ť)`.
pub fn zeta_row(z: &Vec4) -> Vec4 {
    [-z[3], z[2], -z[1], z[0]]
}

/// The symplectic pairing `ᵗa·ζ·b`.
pub fn symplectic_form(a: &Vec4, b: &Vec4) -> f64 {
    let row = zeta_row(a);
    row[0] * b[0] + row[1] * b[1] + row[2] * b[2] + row[3] * b[3]
}

// ---------------------------------------------------------------------------
// Translations and the inhomogeneous group

/// `T(z)`: the 5×5 identity with `z` in the last column.
pub fn translation_element(z: &Vec4) -> Mat {
    let mut m = Mat::identity(5);
    for (i, zi) in z.iter().enumerate() {
        m.set(i, 4, *zi);
    }
    m
}

/// Basis `{T, Q, P, E}` of the abelian translation algebra.
pub fn translation_generators() -> Vec<Generator> {
    TRANSLATION_NAMES
        .iter()
        .enumerate()
        .map(|(i, &n)| (n, Mat::unit(5, i, 4)))
        .collect()
}

/// `dT(z) = Σ zᵢ Zᵢ`.
pub fn translation_algebra_element(z: &Vec4) -> Mat {
    translation_element(z) - Mat::identity(5)
}

/// `−dt² + dq² + dp² − de²`.
pub fn translation_casimir(frame: &crate::constants::FrameVector) -> f64 {
    let z = frame.as_array();
    -z[0] * z[0] + z[1] * z[1] + z[2] * z[2] - z[3] * z[3]
}

/// Element `Γ(K, z)` of `U(1,1) ⋉ T(4)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InhomElement {
    pub k: Mat,
    pub z: Vec4,
}

impl InhomElement {
    pub fn new(k: Mat, z: Vec4) -> Self {
        InhomElement { k, z }
    }

    fn check(&self) -> Result<Mat> {
        if self.k.dim() != 4 {
            return Err(Error::DimensionMismatch {
                left: 4,
                right: self.k.dim(),
            });
        }
        check_vec(&self.z, "translation")?;
        self.k.inverse(1e-12)
    }
}

/// `Γ(K, z) = [[K, K·z], [0, 1]]`.
pub fn inhom_element(e: &InhomElement) -> Result<Mat> {
    e.check()?;
    let mut m = e.k.embed(5, true);
    for (i, x) in apply4(&e.k, &e.z).iter().enumerate() {
        m.set(i, 4, *x);
    }
    Ok(m)
}

/// Parameters of `Γ(second)·Γ(first)`: `(K̃K, z + K⁻¹z̃)`.
pub fn inhom_compose(first: &InhomElement, second: &InhomElement) -> Result<InhomElement> {
    let kinv = first.check()?;
    second.check()?;
    Ok(InhomElement::new(
        second.k * first.k,
        add(&first.z, &apply4(&kinv, &second.z)),
    ))
}

/// `Γ(K, z)⁻¹ = Γ(K⁻¹, −K·z)`.
pub fn inhom_inverse(e: &InhomElement) -> Result<InhomElement> {
    let kinv = e.check()?;
    let kz = apply4(&e.k, &e.z);
    Ok(InhomElement::new(kinv, kz.map(|x| -x)))
}

/// `Γ(K,0)·dT(z)·Γ(K,0)⁻¹`, read back as a translation vector.
pub fn inhom_adjoint(k: &Mat, z: &Vec4) -> Result<Vec4> {
    let g = inhom_element(&InhomElement::new(*k, [0.0; 4]))?;
    let conj = g * translation_algebra_element(z) * g.inverse(1e-12)?;
    let out = [
        conj.get(0, 4),
        conj.get(1, 4),
        conj.get(2, 4),
        conj.get(3, 4),
    ];
    let residual = conj.max_abs_diff(&translation_algebra_element(&out));
    if residual > 1e-12 * conj.max_abs().max(1.0) {
        return Err(Error::NotInGroup(residual));
    }
    Ok(out)
}

/// `{K, N, M, U}` embedded 5×5 followed by `{T, Q, P, E}`.
pub fn inhom_generators() -> Vec<Generator> {
    su11_generators()
        .into_iter()
        .map(|(n, g)| (n, g.embed(5, false)))
        .chain(translation_generators())
        .collect()
}

fn su11_translation_reference() -> Vec<Relation> {
    vec![
        Relation::new("K", "N", &[("M", 2.0)]),
        Relation::new("M", "N", &[("K", 2.0)]),
        Relation::new("M", "K", &[("N", -2.0)]),
        Relation::new("K", "T", &[("Q", 1.0)]),
        Relation::new("K", "Q", &[("T", 1.0)]),
        Relation::new("K", "P", &[("E", 1.0)]),
        Relation::new("K", "E", &[("P", 1.0)]),
        Relation::new("N", "T", &[("P", 1.0)]),
        Relation::new("N", "Q", &[("E", -1.0)]),
        Relation::new("N", "P", &[("T", 1.0)]),
        Relation::new("U", "E", &[("Q", -1.0)]),
        Relation::new("M", "T", &[("E", 1.0)]),
        Relation::new("M", "Q", &[("P", -1.0)]),
        Relation::new("M", "P", &[("Q", 1.0)]),
        Relation::new("M", "E", &[("T", -1.0)]),
        Relation::new("U", "T", &[("E", -1.0)]),
        Relation::new("U", "Q", &[("P", -1.0)]),
        Relation::new("U", "P", &[("Q", 1.0)]),
        Relation::new("U", "E", &[("T", 1.0)]),
    ]
}

/// Reference table for `U(1,1) ⋉ T(4)`, row by row as usually tabulated.
pub fn inhom_reference_table() -> Vec<Relation> {
    su11_translation_reference()
}

pub fn inhom_algebra_table() -> Result<AlgebraReport> {
    algebra_report(&inhom_generators(), &inhom_reference_table())
}

// ---------------------------------------------------------------------------
// Heisenberg group

/// Element `H(z, ι)` of H(2).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct HeisenbergElement {
    pub z: Vec4,
    pub iota: f64,
}

impl HeisenbergElement {
    pub fn new(z: Vec4, iota: f64) -> Self {
        HeisenbergElement { z, iota }
    }

    fn check(&self) -> Result<()> {
        check_vec(&self.z, "Heisenberg coordinates")?;
        if !self.iota.is_finite() {
            return Err(Error::NonFinite("Heisenberg coordinates"));
        }
        Ok(())
    }
}

/// `[[I₄, 0, z], [ᵗz·ζ, 1, 2ι], [0, 0, 1]]`.
pub fn heisenberg_element(h: &HeisenbergElement) -> Mat {
    let mut m = Mat::identity(6);
    let row = zeta_row(&h.z);
    for i in 0..4 {
        m.set(i, 5, h.z[i]);
        m.set(4, i, row[i]);
    }
    m.set(4, 5, 2.0 * h.iota);
    m
}

/// Parameters of `H(second)·H(first)`: `(z̃ + z, ι̃ + ι + ½ ᵗz̃ζz)`.
pub fn heisenberg_compose(
    first: &HeisenbergElement,
    second: &HeisenbergElement,
) -> Result<HeisenbergElement> {
    first.check()?;
    second.check()?;
    Ok(HeisenbergElement::new(
        add(&second.z, &first.z),
        second.iota + first.iota + 0.5 * symplectic_form(&second.z, &first.z),
    ))
}

pub fn heisenberg_inverse(h: &HeisenbergElement) -> Result<HeisenbergElement> {
    h.check()?;
    Ok(HeisenbergElement::new(h.z.map(|x| -x), -h.iota))
}

/// Reads `(z, ι)` back from a 6×6 matrix, failing with `NotInGroup` when the
/// block pattern is off by more than `1e-12` relative to the entries.
pub fn heisenberg_from_matrix(m: &Mat) -> Result<HeisenbergElement> {
    if m.dim() != 6 {
        return Err(Error::DimensionMismatch {
            left: 6,
            right: m.dim(),
        });
    }
    let z = [m.get(0, 5), m.get(1, 5), m.get(2, 5), m.get(3, 5)];
    let h = HeisenbergElement::new(z, m.get(4, 5) / 2.0);
    let residual = m.max_abs_diff(&heisenberg_element(&h));
    if !(residual <= 1e-12 * m.max_abs().max(1.0)) {
        return Err(Error::NotInGroup(residual));
    }
    Ok(h)
}

/// Generators `{T, Q, P, E, I}`: the translation column paired with
/// `−ᵗ(ζ·dz)` in the ι row, and `I = 2e₄₅`.
pub fn heisenberg_generators() -> Vec<Generator> {
    let e = |i, j| Mat::unit(6, i, j);
    vec![
        ("T", e(0, 5) - e(4, 3)),
        ("Q", e(1, 5) + e(4, 2)),
        ("P", e(2, 5) - e(4, 1)),
        ("E", e(3, 5) + e(4, 0)),
        ("I", e(4, 5).scale(2.0)),
    ]
}

/// `dH(z) = Σ zᵢ Zᵢ` over `{T, Q, P, E}`.
pub fn heisenberg_algebra_element(z: &Vec4) -> Mat {
    heisenberg_generators()
        .iter()
        .zip(z)
        .fold(Mat::zeros(6), |acc, ((_, g), &zi)| acc + g.scale(zi))
}

/// Reference table for H(2) with the sign of `[T,E]` as first written.
pub fn heisenberg_reference_table() -> Vec<Relation> {
    vec![
        Relation::new("P", "Q", &[("I", -1.0)]),
        Relation::new("T", "E", &[("I", 1.0)]),
    ]
}

pub fn heisenberg_algebra_table() -> Result<AlgebraReport> {
    algebra_report(&heisenberg_generators(), &heisenberg_reference_table())
}

// ---------------------------------------------------------------------------
// Automorphisms

/// `A(ε) = diag(I₄, e^ε, e^{−ε})`.
pub fn dilation(epsilon: f64) -> Mat {
    Mat::diag(&[1.0, 1.0, 1.0, 1.0, epsilon.exp(), (-epsilon).exp()])
}

/// Max-norm of `ᵗK·ζ·K − ζ`.
pub fn symplectic_residual(k: &Mat) -> Result<f64> {
    congruence_residual(&zeta(), k)
}

/// `ᵗK·ζ·K = ζ` within `1e-12` relative to `‖K‖²`.
pub fn symplectic_check(k: &Mat) -> bool {
    match symplectic_residual(k) {
        Ok(r) => r <= 1e-12 * k.max_abs().powi(2).max(1.0),
        Err(_) => false,
    }
}

// ---------------------------------------------------------------------------
// Quaplectic group

/// `ς·A(ε)·Ξ̂·H(z, ι)`; `epsilon = 0` and the identity label give the
/// non-extended group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuaplecticElement {
    pub xi: Mat,
    pub z: Vec4,
    pub iota: f64,
    pub epsilon: f64,
    pub varsigma: DiscreteLabel,
}

impl QuaplecticElement {
    pub fn new(xi: Mat, z: Vec4, iota: f64) -> Self {
        QuaplecticElement {
            xi,
            z,
            iota,
            epsilon: 0.0,
            varsigma: DiscreteLabel::identity(),
        }
    }

    pub fn extended(xi: Mat, z: Vec4, iota: f64, epsilon: f64, varsigma: DiscreteLabel) -> Self {
        QuaplecticElement {
            xi,
            z,
            iota,
            epsilon,
            varsigma,
        }
    }

    pub fn is_extended(&self) -> bool {
        self.epsilon != 0.0 || self.varsigma != DiscreteLabel::identity()
    }

    pub fn heisenberg(&self) -> HeisenbergElement {
        HeisenbergElement::new(self.z, self.iota)
    }

    fn check(&self) -> Result<()> {
        if self.xi.dim() != 4 {
            return Err(Error::DimensionMismatch {
                left: 4,
                right: self.xi.dim(),
            });
        }
        if !self.xi.is_finite() || !self.epsilon.is_finite() {
            return Err(Error::NonFinite("quaplectic element"));
        }
        self.heisenberg().check()?;
        if !symplectic_check(&self.xi) {
            return Err(Error::NotSymplectic(symplectic_residual(&self.xi)?));
        }
        Ok(())
    }
}

pub fn quaplectic_element(e: &QuaplecticElement) -> Result<Mat> {
    e.check()?;
    let theta = e.xi.embed(6, true) * heisenberg_element(&e.heisenberg());
    if !e.is_extended() {
        return Ok(theta);
    }
    Ok(e.varsigma.matrix6() * dilation(e.epsilon) * theta)
}

/// Parameters of `Θ(second)·Θ(first)` for non-extended elements:
/// `(Ξ̃Ξ, z + Ξ⁻¹z̃, ι̃ + ι + ½ ᵗ(Ξ⁻¹z̃)ζz)`.
pub fn quaplectic_compose(
    first: &QuaplecticElement,
    second: &QuaplecticElement,
) -> Result<QuaplecticElement> {
    first.check()?;
    second.check()?;
    if first.is_extended() || second.is_extended() {
        return Err(Error::InvalidArgument(
            "composition law is defined for non-extended elements; multiply matrices instead"
                .into(),
        ));
    }
    let w = apply4(&first.xi.inverse(1e-12)?, &second.z);
    Ok(QuaplecticElement::new(
        second.xi * first.xi,
        add(&first.z, &w),
        second.iota + first.iota + 0.5 * symplectic_form(&w, &first.z),
    ))
}

pub fn quaplectic_inverse(e: &QuaplecticElement) -> Result<QuaplecticElement> {
    e.check()?;
    if e.is_extended() {
        return Err(Error::InvalidArgument(
            "inverse law is defined for non-extended elements".into(),
        ));
    }
    let xz = apply4(&e.xi, &e.z);
    Ok(QuaplecticElement::new(
        e.xi.inverse(1e-12)?,
        xz.map(|x| -x),
        -e.iota,
    ))
}

/// Splits a 6×6 matrix into a non-extended `Θ(Ξ, z, ι)`, checking every
/// block of the pattern.
pub fn quaplectic_from_matrix(m: &Mat) -> Result<QuaplecticElement> {
    if m.dim() != 6 {
        return Err(Error::DimensionMismatch {
            left: 6,
            right: m.dim(),
        });
    }
    let xi = m.block(4);
    let xz = [m.get(0, 5), m.get(1, 5), m.get(2, 5), m.get(3, 5)];
    let z = apply4(&xi.inverse(1e-12)?, &xz);
    let e = QuaplecticElement::new(xi, z, m.get(4, 5) / 2.0);
    if !symplectic_check(&xi) {
        return Err(Error::NotSymplectic(symplectic_residual(&xi)?));
    }
    let residual = m.max_abs_diff(&quaplectic_element(&e)?);
    if !(residual <= 1e-12 * m.max_abs().max(1.0)) {
        return Err(Error::NotInGroup(residual));
    }
    Ok(e)
}

/// `Θ(Ξ, 0, 0)·dH(z)·Θ(Ξ, 0, 0)⁻¹`, read back as a translation vector.
pub fn quaplectic_adjoint(xi: &Mat, z: &Vec4) -> Result<Vec4> {
    let g = quaplectic_element(&QuaplecticElement::new(*xi, [0.0; 4], 0.0))?;
    let conj = g * heisenberg_algebra_element(z) * g.inverse(1e-12)?;
    let out = [
        conj.get(0, 5),
        conj.get(1, 5),
        conj.get(2, 5),
        conj.get(3, 5),
    ];
    let residual = conj.max_abs_diff(&heisenberg_algebra_element(&out));
    if residual > 1e-12 * conj.max_abs().max(1.0) {
        return Err(Error::NotInGroup(residual));
    }
    Ok(out)
}

/// `Θ·H(z, ι)·Θ⁻¹` for a quaplectic element `Θ`, read back as an H(2)
/// element. For `Θ = Θ(Ξ, z̃, ι̃)` the result is `H(Ξz, ι + ᵗz̃ζz)`.
pub fn conjugate_heisenberg(
    theta: &QuaplecticElement,
    h: &HeisenbergElement,
) -> Result<HeisenbergElement> {
    let g = quaplectic_element(theta)?;
    let conj = g * heisenberg_element(h) * g.inverse(1e-12)?;
    heisenberg_from_matrix(&conj)
}

/// `{K, N, M, U}` embedded 6×6 followed by `{T, Q, P, E, I}`.
pub fn quaplectic_generators() -> Vec<Generator> {
    su11_generators()
        .into_iter()
        .map(|(n, g)| (n, g.embed(6, false)))
        .chain(heisenberg_generators())
        .collect()
}

/// Reference table for the quaplectic algebra, row by row as usually
/// tabulated.
pub fn quaplectic_reference_table() -> Vec<Relation> {
    let mut rows = su11_translation_reference();
    rows.push(Relation::new("P", "Q", &[("I", -1.0)]));
    rows.push(Relation::new("E", "T", &[("I", 1.0)]));
    rows
}

pub fn quaplectic_algebra_table() -> Result<AlgebraReport> {
    algebra_report(&quaplectic_generators(), &quaplectic_reference_table())
}

// ---------------------------------------------------------------------------
// Hamilton law as a one-dimensional Heisenberg law

/// A composition law on rate triples, `first` then `second`.
pub type RateLaw<'a> = &'a dyn Fn(&RateParams, &RateParams) -> Result<RateParams>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckItem {
    pub name: &'static str,
    pub pass: bool,
    pub worst: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CocycleReport {
    pub checks: Vec<CheckItem>,
    pub pass: bool,
}

/// `ι''` of `H₁(second)·H₁(first)` in the 4×4 realization of H(1) on
/// `z = (v, f)` with `ι = r/2`.
fn h1_energy(first: &RateParams, second: &RateParams) -> f64 {
    let h1 = |p: &RateParams| {
        Mat::rows([
            [1.0, 0.0, 0.0, p.v],
            [0.0, 1.0, 0.0, p.f],
            [-p.f, p.v, 1.0, p.r],
            [0.0, 0.0, 0.0, 1.0],
        ])
    };
    (h1(second) * h1(first)).get(2, 3)
}

fn sample_rates() -> Vec<RateParams> {
    let mut out = Vec::new();
    for v in -2..=2 {
        for f in -2..=2 {
            for r in [-3, 0, 5] {
                out.push(RateParams::new(v as f64, f as f64, r as f64));
            }
        }
    }
    out
}

/// Checks that `law` has the form `(ṽ+v, f̃+f, r̃+r+B)` with `B` bilinear,
/// antisymmetric, nondegenerate and equal to the H(1) cocycle.
pub fn contraction_check_with(law: RateLaw) -> Result<CocycleReport> {
    let samples = sample_rates();
    let b = |first: &RateParams, second: &RateParams| -> Result<f64> {
        Ok(law(first, second)?.r - second.r - first.r)
    };
    let mut additive: f64 = 0.0;
    let mut r_free: f64 = 0.0;
    let mut bilinear: f64 = 0.0;
    let mut antisym: f64 = 0.0;
    let mut h1: f64 = 0.0;
    let mut vanishes: f64 = 0.0;
    for x in &samples {
        for y in &samples {
            let out = law(x, y)?;
            additive = additive
                .max((out.v - y.v - x.v).abs())
                .max((out.f - y.f - x.f).abs());
            let bxy = b(x, y)?;
            let flat = |p: &RateParams| RateParams::new(p.v, p.f, 0.0);
            r_free = r_free.max((bxy - b(&flat(x), &flat(y))?).abs());
            antisym = antisym.max((bxy + b(y, x)?).abs());
            let sum = RateParams::new(x.v + 1.0, x.f - 2.0, x.r);
            let unit = RateParams::new(1.0, -2.0, 0.0);
            bilinear = bilinear.max((b(&sum, y)? - bxy - b(&unit, y)?).abs());
            let scaled = RateParams::new(3.0 * x.v, 3.0 * x.f, x.r);
            bilinear = bilinear.max((b(&scaled, y)? - 3.0 * bxy).abs());
            h1 = h1.max((out.r - h1_energy(x, y)).abs());
            if (x.f == 0.0 && y.f == 0.0) || (x.v == 0.0 && y.v == 0.0) {
                vanishes = vanishes.max(bxy.abs());
            }
        }
    }
    let ev = RateParams::new(1.0, 0.0, 0.0);
    let ef = RateParams::new(0.0, 1.0, 0.0);
    let det = b(&ev, &ev)? * b(&ef, &ef)? - b(&ev, &ef)? * b(&ef, &ev)?;
    let item = |name, worst: f64| CheckItem {
        name,
        pass: worst == 0.0,
        worst,
    };
    let checks = vec![
        item("additive_rates", additive),
        item("cocycle_independent_of_r", r_free),
        item("cocycle_bilinear", bilinear),
        item("cocycle_antisymmetric", antisym),
        CheckItem {
            name: "cocycle_nondegenerate",
            pass: det != 0.0,
            worst: det,
        },
        item("matches_h1_product", h1),
        item("vanishes_on_commuting_pairs", vanishes),
    ];
    let pass = checks.iter().all(|c| c.pass);
    Ok(CocycleReport { checks, pass })
}

/// [`contraction_check_with`] applied to the Hamilton composition law.
pub fn contraction_check_h1() -> Result<CocycleReport> {
    contraction_check_with(&crate::hamilton::hamilton_compose)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DiffStatus;
    use crate::constants::{Constants, FrameVector};
    use crate::metric::eta;
    use crate::reciprocal::xi_u11;
    use proptest::prelude::*;

    fn max_abs_vec(a: &Vec4, b: &Vec4) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    fn xi(v: f64, f: f64, r: f64, a: f64) -> Mat {
        xi_u11(&RateParams::with_a(v, f, r, a), &Constants::natural()).unwrap()
    }

    #[test]
    fn zeta_row_matches_matrix() {
        let z = [1.0, 2.0, 3.0, 4.0];
        let zm = zeta();
        let row: Vec<f64> = (0..4)
            .map(|j| (0..4).map(|i| z[i] * zm.get(i, j)).sum())
            .collect();
        assert_eq!(row, zeta_row(&z).to_vec());
    }

    #[test]
    fn translations_commute_and_add() {
        assert_eq!(translation_element(&[0.0; 4]), Mat::identity(5));
        let (a, b) = ([1.0, -2.0, 3.0, 0.5], [0.25, 4.0, -1.0, 2.0]);
        let ab = translation_element(&a) * translation_element(&b);
        assert_eq!(ab, translation_element(&b) * translation_element(&a));
        assert_eq!(ab, translation_element(&add(&a, &b)));
    }

    #[test]
    fn translation_generators_are_derivatives() {
        for (i, (_, g)) in translation_generators().iter().enumerate() {
            let mut z = [0.0; 4];
            z[i] = 1.0;
            assert_eq!(translation_element(&z) - Mat::identity(5), *g);
        }
    }

    #[test]
    fn translation_casimir_values() {
        assert_eq!(
            translation_casimir(&FrameVector::new(1.0, 0.0, 0.0, 0.0)),
            -1.0
        );
        let m = xi(0.2, 0.3, 0.1, 0.0);
        let f = FrameVector::new(0.3, -1.2, 0.7, 2.0);
        let g = f.transform(&m).unwrap();
        assert!((translation_casimir(&f) - translation_casimir(&g)).abs() < 1e-12);
        let z = f.as_array();
        let direct: f64 = (0..4).map(|i| z[i] * eta().get(i, i) * z[i]).sum();
        assert_eq!(translation_casimir(&f), direct);
    }

    #[test]
    fn inhom_identity_and_singular() {
        let id = InhomElement::new(Mat::identity(4), [0.0; 4]);
        assert_eq!(inhom_element(&id).unwrap(), Mat::identity(5));
        let bad = InhomElement::new(Mat::diag(&[1.0, 0.0, 1.0, 1.0]), [0.0; 4]);
        assert!(matches!(
            inhom_element(&bad),
            Err(Error::SingularMatrix { .. })
        ));
    }

    #[test]
    fn inhom_group_law_and_inverse() {
        let a = InhomElement::new(xi(0.2, -0.3, 0.1, 0.4), [1.0, 2.0, -0.5, 0.3]);
        let b = InhomElement::new(xi(-0.1, 0.5, 0.2, -0.2), [0.7, -1.0, 0.2, 1.5]);
        let prod = inhom_element(&b).unwrap() * inhom_element(&a).unwrap();
        let law = inhom_element(&inhom_compose(&a, &b).unwrap()).unwrap();
        assert!(prod.max_abs_diff(&law) < 1e-12);
        let inv = inhom_element(&inhom_inverse(&a).unwrap()).unwrap();
        assert!((inv * inhom_element(&a).unwrap()).max_abs_diff(&Mat::identity(5)) < 1e-12);
    }

    #[test]
    fn inhom_adjoint_is_frame_transform() {
        let k = xi(0.2, 0.3, 0.1, 0.3);
        let z = [0.5, -1.0, 2.0, 0.25];
        let out = inhom_adjoint(&k, &z).unwrap();
        assert!(max_abs_vec(&out, &apply4(&k, &z)) < 1e-12);
    }

    #[test]
    fn inhom_table() {
        let rep = inhom_algebra_table().unwrap();
        let t = &rep.table;
        assert!(t.exact && t.closed);
        assert_eq!(rep.jacobi_residual, 0.0);
        assert_eq!(t.expansion("K", "T").unwrap(), "Q");
        assert_eq!(t.expansion("T", "Q").unwrap(), "0");
        assert_eq!(t.expansion("N", "E").unwrap(), "-Q");
        assert_eq!(t.expansion("U", "T").unwrap(), "E");
        let bad: Vec<_> = rep
            .diff
            .entries
            .iter()
            .filter(|e| e.status == DiffStatus::Mismatch)
            .map(|e| e.pair.clone())
            .collect();
        assert_eq!(bad.len(), 5, "{bad:?}");
        assert!(bad.iter().all(|p| p.starts_with("[U,")));
        assert_eq!(rep.diff.unprinted, 1);
    }

    #[test]
    fn heisenberg_matrix_layout() {
        let m = heisenberg_element(&HeisenbergElement::new([1.0, 2.0, 3.0, 4.0], 0.5));
        assert_eq!(m.row(4), vec![-4.0, 3.0, -2.0, 1.0, 1.0, 1.0]);
        assert_eq!(
            heisenberg_element(&HeisenbergElement::default()),
            Mat::identity(6)
        );
    }

    #[test]
    fn heisenberg_cocycle_example() {
        let a = HeisenbergElement::new([0.0, 0.0, 0.0, 1.0], 0.0);
        let b = HeisenbergElement::new([1.0, 0.0, 0.0, 0.0], 0.0);
        let prod = heisenberg_element(&b) * heisenberg_element(&a);
        assert_eq!(heisenberg_from_matrix(&prod).unwrap().iota, 0.5);
        assert_eq!(heisenberg_compose(&a, &b).unwrap().iota, 0.5);
        assert_ne!(prod, heisenberg_element(&a) * heisenberg_element(&b));
    }

    #[test]
    fn heisenberg_table() {
        let rep = heisenberg_algebra_table().unwrap();
        let t = &rep.table;
        assert!(t.exact);
        assert_eq!(t.expansion("P", "Q").unwrap(), "-I");
        assert_eq!(t.expansion("Q", "P").unwrap(), "I");
        assert_eq!(t.expansion("E", "T").unwrap(), "I");
        for x in ["T", "Q", "P", "E"] {
            assert_eq!(t.expansion("I", x).unwrap(), "0");
        }
        assert_eq!(rep.diff.matches, 1);
        assert_eq!(rep.diff.mismatches, 1);
    }

    #[test]
    fn heisenberg_generators_span_translations() {
        let z = [1.0, -2.0, 0.5, 3.0];
        let dh = heisenberg_algebra_element(&z);
        assert_eq!(dh.column(5)[..4], z);
        let row: Vec<f64> = zeta_row(&z).iter().map(|x| -x).collect();
        assert_eq!(dh.row(4)[..4], row[..]);
    }

    #[test]
    fn dilations() {
        assert_eq!(dilation(0.0), Mat::identity(6));
        let (a, b) = (0.3, -1.1);
        assert!((dilation(a) * dilation(b)).max_abs_diff(&dilation(a + b)) < 1e-15);
        let h = HeisenbergElement::new([1.0, -0.5, 2.0, 0.25], 0.75);
        let conj = dilation(0.5) * heisenberg_element(&h) * dilation(-0.5);
        let out = heisenberg_from_matrix(&conj).unwrap();
        let s = 0.5f64.exp();
        assert!(max_abs_vec(&out.z, &h.z.map(|x| x * s)) < 1e-15);
        assert!((out.iota - 0.75 * 1f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn symplectic_examples() {
        assert!(symplectic_check(&Mat::identity(4)));
        assert!(symplectic_check(&xi(0.2, 0.1, 0.05, 0.3)));
        assert!(!symplectic_check(&Mat::diag(&[2.0, 1.0, 1.0, 1.0])));
    }

    #[test]
    fn quaplectic_identity_and_errors() {
        let e = QuaplecticElement::new(Mat::identity(4), [0.0; 4], 0.0);
        assert_eq!(quaplectic_element(&e).unwrap(), Mat::identity(6));
        let bad = QuaplecticElement::new(Mat::diag(&[2.0, 1.0, 1.0, 1.0]), [0.0; 4], 0.0);
        assert!(matches!(
            quaplectic_element(&bad),
            Err(Error::NotSymplectic(_))
        ));
    }

    #[test]
    fn extended_reduces_to_plain() {
        let x = xi(0.1, 0.2, -0.3, 0.5);
        let z = [1.0, 2.0, 3.0, 4.0];
        let plain = quaplectic_element(&QuaplecticElement::new(x, z, 0.5)).unwrap();
        let ext = QuaplecticElement::extended(x, z, 0.5, 0.0, DiscreteLabel::identity());
        assert_eq!(quaplectic_element(&ext).unwrap(), plain);
    }

    #[test]
    fn extended_layout() {
        let x = xi(0.1, 0.2, -0.3, 0.5);
        let z = [1.0, 2.0, 3.0, 4.0];
        let eps: f64 = 0.4;
        let e = QuaplecticElement::extended(x, z, 0.5, eps, DiscreteLabel::identity());
        let m = quaplectic_element(&e).unwrap();
        let row = zeta_row(&z);
        for j in 0..4 {
            assert!((m.get(4, j) - eps.exp() * row[j]).abs() < 1e-14);
        }
        assert!((m.get(4, 5) - 2.0 * eps.exp() * 0.5).abs() < 1e-14);
        assert!((m.get(5, 5) - (-eps).exp()).abs() < 1e-15);
    }

    #[test]
    fn quaplectic_adjoint_is_frame_transform() {
        let x = xi(0.3, -0.2, 0.4, -0.7);
        let z = [0.5, -1.0, 2.0, 0.25];
        let out = quaplectic_adjoint(&x, &z).unwrap();
        assert!(max_abs_vec(&out, &apply4(&x, &z)) < 1e-12);
    }

    #[test]
    fn quaplectic_table() {
        let rep = quaplectic_algebra_table().unwrap();
        let t = &rep.table;
        assert!(t.exact && t.closed && t.is_integer());
        assert_eq!(rep.jacobi_residual, 0.0);
        assert_eq!(t.expansion("K", "N").unwrap(), "2M");
        assert_eq!(t.expansion("P", "Q").unwrap(), "-I");
        assert_eq!(t.expansion("M", "T").unwrap(), "E");
        assert_eq!(t.expansion("T", "E").unwrap(), "-I");
        assert_eq!(rep.diff.mismatches, 5);
        assert_eq!(rep.diff.unprinted, 1);
    }

    #[test]
    fn hamilton_law_is_h1() {
        let rep = contraction_check_h1().unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn symmetric_cocycle_rejected() {
        let mutated = |a: &RateParams, b: &RateParams| {
            Ok(RateParams::new(
                b.v + a.v,
                b.f + a.f,
                b.r + a.r + b.v * a.f + b.f * a.v,
            ))
        };
        let rep = contraction_check_with(&mutated).unwrap();
        assert!(!rep.pass);
        let failed: Vec<_> = rep
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name)
            .collect();
        assert!(failed.contains(&"cocycle_antisymmetric"));
        assert!(failed.contains(&"matches_h1_product"));
    }

    fn int4() -> impl Strategy<Value = Vec4> {
        prop::array::uniform4(-20i32..20).prop_map(|a| a.map(f64::from))
    }

    fn heis() -> impl Strategy<Value = HeisenbergElement> {
        (int4(), -40i32..40).prop_map(|(z, i)| HeisenbergElement::new(z, f64::from(i) / 2.0))
    }

    fn quap() -> impl Strategy<Value = QuaplecticElement> {
        (
            -0.5f64..0.5,
            -0.5f64..0.5,
            -0.5f64..0.5,
            -2f64..2.0,
            prop::array::uniform4(-3f64..3.0),
            -3f64..3.0,
        )
            .prop_map(|(v, f, r, a, z, i)| QuaplecticElement::new(xi(v, f, r, a), z, i))
    }

    proptest! {
        #[test]
        fn heisenberg_law_exact(a in heis(), b in heis()) {
            let prod = heisenberg_element(&b) * heisenberg_element(&a);
            prop_assert_eq!(prod, heisenberg_element(&heisenberg_compose(&a, &b).unwrap()));
            let inv = heisenberg_inverse(&a).unwrap();
            prop_assert_eq!(heisenberg_compose(&a, &inv).unwrap(), HeisenbergElement::default());
        }

        #[test]
        fn quaplectic_law(a in quap(), b in quap()) {
            let prod = quaplectic_element(&b).unwrap() * quaplectic_element(&a).unwrap();
            let split = quaplectic_from_matrix(&prod).unwrap();
            let law = quaplectic_compose(&a, &b).unwrap();
            prop_assert!(quaplectic_element(&law).unwrap().max_abs_diff(&prod) < 1e-11);
            prop_assert!(max_abs_vec(&split.z, &law.z) < 1e-11);
            let inv = quaplectic_element(&quaplectic_inverse(&a).unwrap()).unwrap();
            let one = inv * quaplectic_element(&a).unwrap();
            prop_assert!(one.max_abs_diff(&Mat::identity(6)) < 1e-11);
        }

        #[test]
        fn conjugation_closes(t in quap(), h in heis()) {
            let out = conjugate_heisenberg(&t, &h).unwrap();
            let z = apply4(&t.xi, &h.z);
            let scale = 1.0 + z.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            prop_assert!(max_abs_vec(&out.z, &z) < 1e-12 * scale);
            let iota = h.iota + symplectic_form(&t.z, &h.z);
            prop_assert!((out.iota - iota).abs() < 1e-12 * (1.0 + iota.abs()) * scale);
        }

        #[test]
        fn non_symplectic_conjugation_leaves_group(d in 1.5f64..3.0, h in heis()) {
            prop_assume!(h.z[0] != 0.0 || h.z[3] != 0.0);
            let k = Mat::diag(&[d, 1.0, 1.0, 1.0]).embed(6, true);
            let conj = k * heisenberg_element(&h) * k.inverse(1e-12).unwrap();
            let hit = heisenberg_from_matrix(&conj);
            prop_assert!(hit.is_err());
        }
    }
}
