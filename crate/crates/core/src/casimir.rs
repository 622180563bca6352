//! Quadratic Casimir of the quaplectic algebra, certified in the universal
//! enveloping algebra.
//!
//! In the defining 6×6 matrices every product of two Heisenberg generators
//! and `I·U` vanish, so matrix evaluation cannot tell a Casimir from zero.
//! Commutation is therefore checked symbolically: elements are polynomials
//! in PBW normal order and `[X, C]` is expanded with the structure constants.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{structure_table, Generator, StructureTable};
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::quaplectic::quaplectic_generators;

/// A polynomial in the generators; each key is a nondecreasing index word.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Poly(BTreeMap<Vec<usize>, f64>);

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_coefficient(&self) -> f64 {
        self.0.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &f64)> {
        self.0.iter()
    }

    fn push(&mut self, word: Vec<usize>, c: f64) {
        if c == 0.0 {
            return;
        }
        let slot = self.0.entry(word.clone()).or_insert(0.0);
        *slot += c;
        if *slot == 0.0 {
            self.0.remove(&word);
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, s: f64) {
        for (w, c) in &other.0 {
            self.push(w.clone(), c * s);
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (w, &c) in &self.0 {
            let word: String = w
                .iter()
                .map(|&i| names[i].as_str())
                .collect::<Vec<_>>()
                .join("·");
            let word = if word.is_empty() {
                "1".to_string()
            } else {
                word
            };
            if out.is_empty() {
                if c < 0.0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0.0 { " - " } else { " + " });
            }
            if c.abs() != 1.0 {
                out.push_str(&format!("{}·", c.abs()));
            }
            out.push_str(&word);
        }
        out
    }
}

/// The universal enveloping algebra of a closed matrix Lie algebra.
#[derive(Debug, Clone)]
pub struct Enveloping {
    names: Vec<String>,
    /// `structure[a][b][k]`: coefficient of `Xₖ` in `[Xₐ, X_b]`.
    structure: Vec<Vec<Vec<f64>>>,
}

impl Enveloping {
    pub fn new(table: &StructureTable) -> Result<Self> {
        if !table.closed {
            return Err(Error::InvalidArgument(
                "algebra does not close in its basis".into(),
            ));
        }
        let n = table.names.len();
        let mut structure = vec![vec![vec![0.0; n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    structure[a][b] = table
                        .coefficients(&table.names[a], &table.names[b])
                        .expect("names come from the table");
                }
            }
        }
        Ok(Enveloping {
            names: table.names.clone(),
            structure,
        })
    }

    pub fn from_generators(generators: &[Generator]) -> Result<Self> {
        Self::new(&structure_table(generators)?)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn generator(&self, i: usize) -> Poly {
        let mut p = Poly::default();
        p.push(vec![i], 1.0);
        p
    }

    /// `c · X_{w₀} X_{w₁} …` rewritten in normal order.
    fn normal_order(&self, word: Vec<usize>, c: f64, out: &mut Poly) {
        let Some(i) = (0..word.len().saturating_sub(1)).find(|&i| word[i] > word[i + 1]) else {
            out.push(word, c);
            return;
        };
        let (a, b) = (word[i], word[i + 1]);
        let mut swapped = word.clone();
        swapped.swap(i, i + 1);
        self.normal_order(swapped, c, out);
        // X_a X_b = X_b X_a + [X_a, X_b]
        for (k, &s) in self.structure[a][b].iter().enumerate() {
            if s != 0.0 {
                let mut w = word[..i].to_vec();
                w.push(k);
                w.extend_from_slice(&word[i + 2..]);
                self.normal_order(w, c * s, out);
            }
        }
    }

    pub fn mul(&self, x: &Poly, y: &Poly) -> Poly {
        let mut out = Poly::default();
        for (wx, cx) in &x.0 {
            for (wy, cy) in &y.0 {
                let mut w = wx.clone();
                w.extend_from_slice(wy);
                self.normal_order(w, cx * cy, &mut out);
            }
        }
        out
    }

    pub fn commutator(&self, x: &Poly, y: &Poly) -> Poly {
        let mut out = self.mul(x, y);
        out.add_scaled(&self.mul(y, x), -1.0);
        out
    }
}

/// Coefficients of `½(s_T T² + s_Q Q² + s_P P² + s_E E²) + κ·I·U`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CasimirCoefficients {
    pub s_t: f64,
    pub s_q: f64,
    pub s_p: f64,
    pub s_e: f64,
    pub kappa: f64,
}

impl CasimirCoefficients {
    /// The template as usually written: `½(−T² − Q² + P² − E²) − I·U`.
    pub const PRINTED: CasimirCoefficients = CasimirCoefficients {
        s_t: -1.0,
        s_q: -1.0,
        s_p: 1.0,
        s_e: -1.0,
        kappa: -1.0,
    };

    fn as_array(&self) -> [f64; 5] {
        [self.s_t, self.s_q, self.s_p, self.s_e, self.kappa]
    }

    fn from_array(a: [f64; 5]) -> Self {
        CasimirCoefficients {
            s_t: a[0],
            s_q: a[1],
            s_p: a[2],
            s_e: a[3],
            kappa: a[4],
        }
    }

    pub fn flips_from(&self, other: &CasimirCoefficients) -> Vec<&'static str> {
        const NAMES: [&str; 5] = ["s_T", "s_Q", "s_P", "s_E", "kappa"];
        self.as_array()
            .iter()
            .zip(other.as_array())
            .zip(NAMES)
            .filter(|((a, b), _)| **a != *b)
            .map(|(_, n)| n)
            .collect()
    }

    pub fn render(&self) -> String {
        let sgn = |x: f64| if x < 0.0 { "-" } else { "+" };
        format!(
            "1/2({}T² {} Q² {} P² {} E²) {} I·U",
            if self.s_t < 0.0 { "-" } else { "" },
            sgn(self.s_q),
            sgn(self.s_p),
            sgn(self.s_e),
            sgn(self.kappa),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutatorResidual {
    pub generator: String,
    pub residual: f64,
    pub expansion: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CasimirReport {
    pub printed: CasimirCoefficients,
    pub printed_commutes: bool,
    /// Residuals of the printed combination against each generator.
    pub printed_residuals: Vec<CommutatorResidual>,
    pub certified: CasimirCoefficients,
    pub expression: String,
    /// Coefficients that differ from the printed ones.
    pub deviations: Vec<&'static str>,
    /// Every sign assignment of the template that commutes.
    pub commuting: Vec<CasimirCoefficients>,
    pub residuals: Vec<CommutatorResidual>,
    pub max_residual: f64,
    /// `I` commutes with every generator.
    pub c1_central: bool,
    /// The certified combination evaluated on the defining 6×6 matrices.
    pub matrix_value: Mat,
}

fn template(env: &Enveloping, k: &CasimirCoefficients) -> Result<Poly> {
    let idx = |n: &str| {
        env.index(n)
            .ok_or_else(|| Error::InvalidArgument(format!("missing generator {n}")))
    };
    let mut c = Poly::default();
    for (name, s) in [("T", k.s_t), ("Q", k.s_q), ("P", k.s_p), ("E", k.s_e)] {
        let g = env.generator(idx(name)?);
        c.add_scaled(&env.mul(&g, &g), 0.5 * s);
    }
    let iu = env.mul(&env.generator(idx("I")?), &env.generator(idx("U")?));
    c.add_scaled(&iu, k.kappa);
    Ok(c)
}

fn residuals(env: &Enveloping, c: &Poly) -> Vec<CommutatorResidual> {
    (0..env.names().len())
        .map(|i| {
            let r = env.commutator(&env.generator(i), c);
            CommutatorResidual {
                generator: env.names()[i].clone(),
                residual: r.max_coefficient(),
                expansion: r.render(env.names()),
            }
        })
        .collect()
}

fn matrix_value(k: &CasimirCoefficients) -> Mat {
    let gens = quaplectic_generators();
    let g = |n: &str| {
        gens.iter()
            .find(|(m, _)| *m == n)
            .map(|(_, x)| *x)
            .expect("generator")
    };
    let sq = |n: &str| g(n) * g(n);
    (sq("T").scale(k.s_t) + sq("Q").scale(k.s_q) + sq("P").scale(k.s_p) + sq("E").scale(k.s_e))
        .scale(0.5)
        + (g("I") * g("U")).scale(k.kappa)
}

/// Searches the sign assignments of the quadratic template, starting from
/// the printed one, for combinations commuting with all nine generators.
pub fn casimir_c2() -> Result<CasimirReport> {
    let env = Enveloping::from_generators(&quaplectic_generators())?;
    let printed = CasimirCoefficients::PRINTED;
    let printed_residuals = residuals(&env, &template(&env, &printed)?);
    let printed_commutes = printed_residuals.iter().all(|r| r.residual == 0.0);

    let mut candidates: Vec<CasimirCoefficients> = (0..32u32)
        .map(|mask| {
            let mut a = printed.as_array();
            for (bit, x) in a.iter_mut().enumerate() {
                if mask >> bit & 1 == 1 {
                    *x = -*x;
                }
            }
            CasimirCoefficients::from_array(a)
        })
        .collect();
    candidates.sort_by_key(|c| c.flips_from(&printed).len());

    let mut commuting = Vec::new();
    for cand in candidates {
        let res = residuals(&env, &template(&env, &cand)?);
        if res.iter().all(|r| r.residual < 1e-12) {
            commuting.push(cand);
        }
    }
    let certified = *commuting.first().ok_or(Error::NoCommutingCombination)?;
    let residuals = residuals(&env, &template(&env, &certified)?);
    let max_residual = residuals.iter().map(|r| r.residual).fold(0.0, f64::max);
    let i = env.generator(env.index("I").expect("I present"));
    let c1_central =
        (0..env.names().len()).all(|k| env.commutator(&env.generator(k), &i).is_zero());

    Ok(CasimirReport {
        printed,
        printed_commutes,
        printed_residuals,
        expression: certified.render(),
        deviations: certified.flips_from(&printed),
        certified,
        commuting,
        residuals,
        max_residual,
        c1_central,
        matrix_value: matrix_value(&certified),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::jacobi_residual;
    use crate::quaplectic::{heisenberg_generators, inhom_generators};

    #[test]
    fn normal_ordering_uses_brackets() {
        let env = Enveloping::from_generators(&heisenberg_generators()).unwrap();
        let (q, p) = (env.index("Q").unwrap(), env.index("P").unwrap());
        // P·Q = Q·P + [P,Q] = Q·P − I
        let pq = env.mul(&env.generator(p), &env.generator(q));
        assert_eq!(pq.render(env.names()), "Q·P - I");
        let c = env.commutator(&env.generator(q), &env.generator(p));
        assert_eq!(c.render(env.names()), "I");
    }

    #[test]
    fn associativity_in_enveloping_algebra() {
        let env = Enveloping::from_generators(&quaplectic_generators()).unwrap();
        let n = env.names().len();
        for a in 0..n {
            for b in 0..n {
                for c in [0, 3, 5, 7] {
                    let (x, y, z) = (env.generator(a), env.generator(b), env.generator(c));
                    let left = env.mul(&env.mul(&x, &y), &z);
                    let right = env.mul(&x, &env.mul(&y, &z));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn certified_combination() {
        let rep = casimir_c2().unwrap();
        assert!(!rep.printed_commutes);
        assert_eq!(rep.max_residual, 0.0);
        assert_eq!(rep.certified.as_array(), [-1.0, 1.0, 1.0, -1.0, 1.0]);
        assert_eq!(rep.deviations, vec!["s_Q", "kappa"]);
        assert_eq!(rep.commuting.len(), 2);
        assert_eq!(rep.commuting[1].as_array(), [1.0, -1.0, -1.0, 1.0, -1.0]);
        assert!(rep.c1_central);
        assert_eq!(rep.matrix_value, Mat::zeros(6));
        for g in ["T", "K", "I"] {
            assert!(rep
                .residuals
                .iter()
                .any(|r| r.generator == g && r.residual == 0.0));
        }
    }

    #[test]
    fn translation_casimir_commutes_in_inhom_algebra() {
        let gens = inhom_generators();
        assert_eq!(jacobi_residual(&gens).unwrap(), 0.0);
        let env = Enveloping::from_generators(&gens).unwrap();
        let mut c = Poly::default();
        for (n, s) in [("T", -1.0), ("Q", 1.0), ("P", 1.0), ("E", -1.0)] {
            let g = env.generator(env.index(n).unwrap());
            c.add_scaled(&env.mul(&g, &g), s);
        }
        for k in 0..env.names().len() {
            assert!(
                env.commutator(&env.generator(k), &c).is_zero(),
                "{}",
                env.names()[k]
            );
        }
    }
}
