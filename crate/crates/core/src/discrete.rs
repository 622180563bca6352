//! The finite abelian group generated by the parity, time-reversal and
//! Born-reciprocity reflections of a phase-space frame.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::constants::{Constants, FrameVector};
use crate::error::{Error, Result};
use crate::hamilton::RateParams;
use crate::mat::Mat;
use crate::metric::{congruence_residual, eta, zeta};
use crate::reciprocal::{extract_u11, xi_u11};

/// The `{ς₀, ς_P, ς_T, ς_C}` factor of a label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reflection {
    Identity,
    P,
    T,
    C,
}

/// The `{ς₀, ς_Q, ς_E, ς_R}` factor of a label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reciprocity {
    Identity,
    Q,
    E,
    R,
}

/// `ς_{αβ} = ς_α·ς_β`, optionally with the sign of the 6×6 extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiscreteLabel {
    pub alpha: Reflection,
    pub beta: Reciprocity,
    /// `None` for the 4×4 group, `Some(true)` for `ς⁻`.
    pub negative: Option<bool>,
}

impl DiscreteLabel {
    pub const fn new(alpha: Reflection, beta: Reciprocity) -> Self {
        DiscreteLabel {
            alpha,
            beta,
            negative: None,
        }
    }

    pub const fn identity() -> Self {
        Self::new(Reflection::Identity, Reciprocity::Identity)
    }

    pub fn with_sign(self, negative: bool) -> Self {
        DiscreteLabel {
            negative: Some(negative),
            ..self
        }
    }

    /// All sixteen 4×4 labels in display order.
    pub fn all() -> Vec<DiscreteLabel> {
        use Reciprocity as B;
        use Reflection as A;
        let mut out = vec![Self::identity()];
        for a in [A::P, A::T, A::C] {
            out.push(Self::new(a, B::Identity));
        }
        for b in [B::Q, B::E, B::R] {
            out.push(Self::new(A::Identity, b));
        }
        for a in [A::P, A::T, A::C] {
            for b in [B::Q, B::E, B::R] {
                out.push(Self::new(a, b));
            }
        }
        out
    }

    /// All thirty-two signed labels, `+` before `−`.
    pub fn all_extended() -> Vec<DiscreteLabel> {
        [false, true]
            .iter()
            .flat_map(|&s| Self::all().into_iter().map(move |l| l.with_sign(s)))
            .collect()
    }

    pub fn matrix4(&self) -> Mat {
        alpha_matrix(self.alpha) * beta_matrix(self.beta)
    }

    /// `diag(ς, ±1, ±1)`.
    pub fn matrix6(&self) -> Mat {
        let s = if self.negative == Some(true) {
            -1.0
        } else {
            1.0
        };
        let mut m = self.matrix4().embed(6, true);
        m.set(4, 4, s);
        m.set(5, 5, s);
        m
    }

    pub fn is_extended(&self) -> bool {
        self.negative.is_some()
    }
}

fn alpha_matrix(a: Reflection) -> Mat {
    match a {
        Reflection::Identity => Mat::identity(4),
        Reflection::P => Mat::diag(&[1.0, -1.0, -1.0, 1.0]),
        Reflection::T => Mat::diag(&[-1.0, 1.0, 1.0, -1.0]),
        Reflection::C => Mat::identity(4).scale(-1.0),
    }
}

fn beta_matrix(b: Reciprocity) -> Mat {
    match b {
        Reciprocity::Identity => Mat::identity(4),
        Reciprocity::Q => Mat::rows([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]),
        Reciprocity::E => Mat::rows([
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
        ]),
        Reciprocity::R => zeta(),
    }
}

impl fmt::Display for DiscreteLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.alpha {
            Reflection::Identity => "",
            Reflection::P => "P",
            Reflection::T => "T",
            Reflection::C => "C",
        };
        let b = match self.beta {
            Reciprocity::Identity => "",
            Reciprocity::Q => "Q",
            Reciprocity::E => "E",
            Reciprocity::R => "R",
        };
        let body = if a.is_empty() && b.is_empty() {
            "0"
        } else {
            ""
        };
        write!(f, "{body}{a}{b}")?;
        match self.negative {
            Some(true) => write!(f, "-"),
            Some(false) => write!(f, "+"),
            None => Ok(()),
        }
    }
}

impl FromStr for DiscreteLabel {
    type Err = Error;

    /// Accepts `0`, `P`, `TQ`, `CR`, ... with an optional `+`/`-` suffix;
    /// the prefixes `ς`, `s_` and `varsigma_` are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownLabel(s.to_string());
        let mut body = s.trim();
        for prefix in ["varsigma_", "ς_", "ς", "s_"] {
            if let Some(rest) = body.strip_prefix(prefix) {
                body = rest;
                break;
            }
        }
        let (body, negative) = match body.chars().last() {
            Some('+') => (&body[..body.len() - 1], Some(false)),
            Some('-') => (&body[..body.len() - 1], Some(true)),
            _ => (body, None),
        };
        let body = body.trim_matches(|c| c == '{' || c == '}');
        if body == "0" || body == "I" {
            return Ok(DiscreteLabel {
                negative,
                ..Self::identity()
            });
        }
        let mut chars = body.chars();
        let mut alpha = Reflection::Identity;
        let mut beta = Reciprocity::Identity;
        let first = chars.next().ok_or_else(unknown)?;
        let second = chars.next();
        if chars.next().is_some() {
            return Err(unknown());
        }
        let parse_beta = |c| match c {
            'Q' => Some(Reciprocity::Q),
            'E' => Some(Reciprocity::E),
            'R' => Some(Reciprocity::R),
            _ => None,
        };
        match first {
            'P' => alpha = Reflection::P,
            'T' => alpha = Reflection::T,
            'C' => alpha = Reflection::C,
            c => beta = parse_beta(c).ok_or_else(unknown)?,
        }
        if let Some(c) = second {
            if beta != Reciprocity::Identity {
                return Err(unknown());
            }
            beta = parse_beta(c).ok_or_else(unknown)?;
        }
        Ok(DiscreteLabel {
            alpha,
            beta,
            negative,
        })
    }
}

impl Serialize for DiscreteLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A labelled signed-permutation matrix, 4×4 or (signed labels) 6×6.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscreteElement {
    pub label: DiscreteLabel,
    pub matrix: Mat,
}

impl DiscreteElement {
    pub fn from_label(label: DiscreteLabel) -> Self {
        let matrix = if label.is_extended() {
            label.matrix6()
        } else {
            label.matrix4()
        };
        DiscreteElement { label, matrix }
    }

    /// Frame action `dz ↦ ᵗς·dz`.
    pub fn act(&self, frame: &FrameVector) -> Result<FrameVector> {
        frame.transform(&self.label.matrix4().transpose())
    }
}

pub fn discrete_element(label: &str) -> Result<DiscreteElement> {
    Ok(DiscreteElement::from_label(label.parse()?))
}

/// Exactly one `±1` per row and column, zeros elsewhere.
pub fn is_signed_permutation(m: &Mat) -> bool {
    let n = m.dim();
    let ok_line = |vals: Vec<f64>| {
        vals.iter().all(|&x| x == 0.0 || x == 1.0 || x == -1.0)
            && vals.iter().filter(|&&x| x != 0.0).count() == 1
    };
    (0..n).all(|i| ok_line(m.row(i)) && ok_line(m.column(i)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
    /// Label of the actual product.
    pub actual: String,
}

/// Closure of the reflection generators under matrix product.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteTable {
    pub extended: bool,
    pub generators: Vec<String>,
    pub elements: Vec<DiscreteElement>,
    pub order: usize,
    pub expected_order: usize,
    /// `cayley[i][j]` is the index of `elements[i]·elements[j]`.
    pub cayley: Vec<Vec<usize>>,
    pub abelian: bool,
    pub signed_permutations: bool,
    pub relations: Vec<RelationCheck>,
    pub metrics_preserved: bool,
}

impl DiscreteTable {
    pub fn relations_hold(&self) -> bool {
        self.relations.iter().all(|r| r.holds)
    }

    pub fn pass(&self) -> bool {
        self.order == self.expected_order
            && self.abelian
            && self.signed_permutations
            && self.relations_hold()
            && self.metrics_preserved
    }

    /// Human-readable Cayley grid.
    pub fn grid(&self) -> String {
        let names: Vec<String> = self.elements.iter().map(|e| e.label.to_string()).collect();
        let w = names.iter().map(String::len).max().unwrap_or(1) + 1;
        let mut out = format!("{:>w$}|", "·");
        for n in &names {
            out.push_str(&format!("{n:>w$}"));
        }
        out.push('\n');
        out.push_str(&"-".repeat(w + 1 + w * names.len()));
        out.push('\n');
        for (i, row) in self.cayley.iter().enumerate() {
            out.push_str(&format!("{:>w$}|", names[i]));
            for &k in row {
                out.push_str(&format!("{:>w$}", names[k]));
            }
            out.push('\n');
        }
        out
    }
}

/// Product relations as usually listed for the group.
const PRINTED_RELATIONS: [(&str, &str, &str); 12] = [
    ("P", "P", "0"),
    ("T", "T", "0"),
    ("C", "C", "0"),
    ("P", "T", "C"),
    ("C", "P", "T"),
    ("T", "C", "P"),
    ("R", "R", "C"),
    ("Q", "Q", "P"),
    ("E", "E", "T"),
    ("Q", "E", "R"),
    ("R", "Q", "E"),
    ("E", "R", "Q"),
];

fn label_of(m: &Mat, extended: bool) -> Option<DiscreteLabel> {
    let pool = if extended {
        DiscreteLabel::all_extended()
    } else {
        DiscreteLabel::all()
    };
    pool.into_iter().find(|l| {
        let candidate = if extended { l.matrix6() } else { l.matrix4() };
        candidate == *m
    })
}

pub fn discrete_table(extended: bool) -> DiscreteTable {
    let lift = |l: DiscreteLabel| {
        if extended {
            l.with_sign(false).matrix6()
        } else {
            l.matrix4()
        }
    };
    let mut generators: Vec<(String, Mat)> = ["P", "T", "Q", "E"]
        .iter()
        .map(|s| (s.to_string(), lift(s.parse().expect("static label"))))
        .collect();
    if extended {
        let flip = DiscreteLabel::identity().with_sign(true);
        generators.push((flip.to_string(), flip.matrix6()));
    }

    let one = Mat::identity(if extended { 6 } else { 4 });
    let mut found = vec![one];
    let mut frontier = vec![one];
    while let Some(m) = frontier.pop() {
        for (_, g) in &generators {
            let p = m * *g;
            if !found.contains(&p) {
                found.push(p);
                frontier.push(p);
            }
        }
    }

    let order_key = |m: &Mat| {
        let pool = if extended {
            DiscreteLabel::all_extended()
        } else {
            DiscreteLabel::all()
        };
        label_of(m, extended)
            .and_then(|l| pool.iter().position(|x| *x == l))
            .unwrap_or(usize::MAX)
    };
    found.sort_by_key(order_key);
    let elements: Vec<DiscreteElement> = found
        .iter()
        .map(|m| DiscreteElement {
            label: label_of(m, extended).expect("closure stays inside the labelled set"),
            matrix: *m,
        })
        .collect();

    let index = |m: &Mat| found.iter().position(|x| x == m);
    let cayley: Vec<Vec<usize>> = found
        .iter()
        .map(|a| {
            found
                .iter()
                .map(|b| index(&(*a * *b)).expect("closed under products"))
                .collect()
        })
        .collect();
    let abelian = (0..found.len()).all(|i| (0..found.len()).all(|j| cayley[i][j] == cayley[j][i]));
    let signed_permutations = found.iter().all(is_signed_permutation);

    let relations = PRINTED_RELATIONS
        .iter()
        .map(|&(a, b, c)| {
            let m = |s: &str| lift(s.parse().expect("static label"));
            let prod = m(a) * m(b);
            RelationCheck {
                relation: format!("{a}·{b} = {c}"),
                holds: prod == m(c),
                actual: label_of(&prod, extended)
                    .map(|l| l.to_string())
                    .unwrap_or_else(|| "?".into()),
            }
        })
        .collect();

    let metrics_preserved = found.iter().all(|m| {
        let k = m.block(4);
        congruence_residual(&zeta(), &k) == Ok(0.0) && congruence_residual(&eta(), &k) == Ok(0.0)
    });

    DiscreteTable {
        extended,
        generators: generators.into_iter().map(|(n, _)| n).collect(),
        order: elements.len(),
        expected_order: if extended { 26 } else { 13 },
        elements,
        cayley,
        abelian,
        signed_permutations,
        relations,
        metrics_preserved,
    }
}

/// Parameters of `ς·Ξ(v, f, r, a)·ς⁻¹`.
///
/// The conjugation is done on the dimensionless matrix, since `ς` mixes
/// axes of different units; the result is converted back with `constants`.
pub fn discrete_automorphism(
    s: &DiscreteElement,
    rates: &RateParams,
    constants: &Constants,
) -> Result<RateParams> {
    let (b, c) = (constants.b, constants.c);
    let scaled = RateParams::with_a(
        rates.v / c,
        rates.f / b,
        rates.r / (b * c),
        rates.a / (b * c),
    );
    let unit = Constants::natural();
    let xi = xi_u11(&scaled, &unit)?;
    let sm = s.label.matrix4();
    let conj = sm * xi * sm.transpose();
    let out = extract_u11(&conj, &unit)?;
    Ok(RateParams::with_a(
        out.v * c,
        out.f * b,
        out.r * b * c,
        out.a * b * c,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub label: DiscreteLabel,
    pub symplectic_residual: f64,
    pub born_green_residual: f64,
    pub pass: bool,
}

pub fn discrete_invariance_check(s: &DiscreteElement) -> InvarianceReport {
    let k = s.label.matrix4();
    let symplectic_residual = congruence_residual(&zeta(), &k).unwrap_or(f64::INFINITY);
    let born_green_residual = congruence_residual(&eta(), &k).unwrap_or(f64::INFINITY);
    InvarianceReport {
        label: s.label,
        symplectic_residual,
        born_green_residual,
        pass: symplectic_residual == 0.0 && born_green_residual == 0.0,
    }
}
