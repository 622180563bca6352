//! Structure constants of matrix Lie algebras, Jacobi checks and diffs
//! against hand-written bracket tables.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat::{bracket, Mat};

/// A named generator matrix.
pub type Generator = (&'static str, Mat);

/// Expansion of `[X_i, X_j]` in the generator basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub coefficients: Vec<f64>,
    pub expansion: String,
    pub residual: f64,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureTable {
    pub names: Vec<String>,
    /// One entry per ordered pair `i < j`.
    pub entries: Vec<BracketEntry>,
    /// All generators had integer entries and every closed bracket was
    /// reproduced bit-exactly by its (half-)integer coefficients.
    pub exact: bool,
    pub closed: bool,
    pub max_residual: f64,
}

impl StructureTable {
    fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Coefficients of `[a, b]`, using antisymmetry for `a` after `b`.
    pub fn coefficients(&self, a: &str, b: &str) -> Option<Vec<f64>> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        if i == j {
            return Some(vec![0.0; self.names.len()]);
        }
        let (lo, hi, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
        let e = self
            .entries
            .iter()
            .find(|e| e.left == self.names[lo] && e.right == self.names[hi])?;
        Some(e.coefficients.iter().map(|c| sign * c + 0.0).collect())
    }

    /// Coefficient of generator `c` in `[a, b]`.
    pub fn coefficient(&self, a: &str, b: &str, c: &str) -> Option<f64> {
        let k = self.index(c)?;
        self.coefficients(a, b).map(|v| v[k])
    }

    /// Human-readable right-hand side of `[a, b]`.
    pub fn expansion(&self, a: &str, b: &str) -> Option<String> {
        self.coefficients(a, b)
            .map(|c| format_expansion(&self.names, &c))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &BracketEntry> {
        self.entries
            .iter()
            .filter(|e| e.coefficients.iter().any(|&c| c != 0.0) || !e.closed)
    }

    /// Every coefficient is an exact integer.
    pub fn is_integer(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.coefficients.iter().all(|c| c.fract() == 0.0))
    }
}

/// Renders `Σ cₖ Xₖ` as e.g. `2M`, `-I`, `Q - E` or `0`.
pub fn format_expansion<S: AsRef<str>>(names: &[S], coefficients: &[f64]) -> String {
    let mut out = String::new();
    for (name, &c) in names.iter().zip(coefficients) {
        if c == 0.0 {
            continue;
        }
        let mag = c.abs();
        let body = if mag == 1.0 {
            name.as_ref().to_string()
        } else {
            format!("{}{}", fmt_coeff(mag), name.as_ref())
        };
        if out.is_empty() {
            if c < 0.0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0.0 { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn fmt_coeff(x: f64) -> String {
    if x.fract() == 0.0 && x < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

/// Expands every bracket `[Xᵢ, Xⱼ]`, `i < j`, in the span of the generators.
///
/// Integer generator sets are handled exactly: least-squares coefficients are
/// snapped to the nearest half-integer and accepted only if they reproduce
/// the bracket bit-for-bit. Otherwise the least-squares solution is kept and
/// its residual decides whether the bracket closes in the span.
pub fn structure_table(generators: &[Generator]) -> Result<StructureTable> {
    let n = generators.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty generator set".into()));
    }
    let dim = generators[0].1.dim();
    for (_, g) in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: g.dim(),
            });
        }
    }
    let mats: Vec<Mat> = generators.iter().map(|(_, m)| *m).collect();
    let gram: Vec<Vec<f64>> = mats
        .iter()
        .map(|a| mats.iter().map(|b| a.dot(b)).collect())
        .collect();
    check_rank(&gram)?;

    let integer_inputs = mats.iter().all(Mat::is_integer);
    let names: Vec<String> = generators.iter().map(|(n, _)| n.to_string()).collect();
    let mut entries = Vec::with_capacity(n * (n - 1) / 2);
    let mut exact = integer_inputs;
    for i in 0..n {
        for j in (i + 1)..n {
            let b = bracket(&mats[i], &mats[j])?;
            let rhs: Vec<f64> = mats.iter().map(|m| m.dot(&b)).collect();
            let ls = solve(&gram, &rhs)?;
            let scale = b.max_abs().max(1.0);

            let mut coefficients = ls.clone();
            let mut residual = span_residual(&mats, &ls, &b);
            if integer_inputs {
                let snapped: Vec<f64> = ls.iter().map(|c| (c * 2.0).round() / 2.0 + 0.0).collect();
                let r = span_residual(&mats, &snapped, &b);
                if r == 0.0 {
                    coefficients = snapped;
                    residual = 0.0;
                } else {
                    exact = false;
                }
            }
            let closed = residual <= 1e-10 * scale;
            entries.push(BracketEntry {
                left: names[i].clone(),
                right: names[j].clone(),
                expansion: format_expansion(&names, &coefficients),
                coefficients,
                residual,
                closed,
            });
        }
    }
    let closed = entries.iter().all(|e| e.closed);
    let max_residual = entries.iter().map(|e| e.residual).fold(0.0, f64::max);
    Ok(StructureTable {
        names,
        entries,
        exact: exact && closed,
        closed,
        max_residual,
    })
}

fn span_residual(mats: &[Mat], coeffs: &[f64], target: &Mat) -> f64 {
    let mut acc = Mat::zeros(target.dim());
    for (m, &c) in mats.iter().zip(coeffs) {
        if c != 0.0 {
            acc = acc + m.scale(c);
        }
    }
    acc.max_abs_diff(target)
}

fn check_rank(gram: &[Vec<f64>]) -> Result<()> {
    let max_diag = (0..gram.len()).map(|i| gram[i][i]).fold(0.0, f64::max);
    if max_diag == 0.0 {
        return Err(Error::RankDeficient);
    }
    let mut a: Vec<Vec<f64>> = gram.to_vec();
    let n = a.len();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| a[x][k].abs().total_cmp(&a[y][k].abs()))
            .unwrap_or(k);
        if a[p][k].abs() <= 1e-10 * max_diag {
            return Err(Error::RankDeficient);
        }
        a.swap(k, p);
        for r in (k + 1)..n {
            let f = a[r][k] / a[k][k];
            for c in k..n {
                a[r][c] -= f * a[k][c];
            }
        }
    }
    Ok(())
}

/// Gaussian elimination with partial pivoting for a small dense system.
pub(crate) fn solve(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| m[x][k].abs().total_cmp(&m[y][k].abs()))
            .unwrap_or(k);
        if m[p][k] == 0.0 {
            return Err(Error::RankDeficient);
        }
        m.swap(k, p);
        for r in (k + 1)..n {
            let f = m[r][k] / m[k][k];
            if f != 0.0 {
                for c in k..=n {
                    m[r][c] -= f * m[k][c];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = ((k + 1)..n).map(|c| m[k][c] * x[c]).sum();
        x[k] = (m[k][n] - s) / m[k][k];
    }
    Ok(x)
}

/// Largest entry of `[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]]` over all basis triples.
pub fn jacobi_residual(generators: &[Generator]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (_, x) in generators {
        for (_, y) in generators {
            for (_, z) in generators {
                let s = bracket(x, &bracket(y, z)?)?
                    + bracket(y, &bracket(z, x)?)?
                    + bracket(z, &bracket(x, y)?)?;
                worst = worst.max(s.max_abs());
            }
        }
    }
    Ok(worst)
}

/// A bracket relation `[left, right] = Σ coeff·name` as written in a
/// reference table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Relation {
    pub left: &'static str,
    pub right: &'static str,
    pub terms: Vec<(&'static str, f64)>,
}

impl Relation {
    pub fn new(left: &'static str, right: &'static str, terms: &[(&'static str, f64)]) -> Self {
        Relation {
            left,
            right,
            terms: terms.to_vec(),
        }
    }

    pub fn render(&self) -> String {
        let names: Vec<&str> = self.terms.iter().map(|t| t.0).collect();
        let coeffs: Vec<f64> = self.terms.iter().map(|t| t.1).collect();
        format!(
            "[{},{}] = {}",
            self.left,
            self.right,
            format_expansion(&names, &coeffs)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffStatus {
    Match,
    Mismatch,
    /// A nonzero computed bracket that the reference table omits.
    Unprinted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffEntry {
    pub pair: String,
    pub printed: Option<String>,
    pub computed: String,
    pub status: DiffStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableDiff {
    pub entries: Vec<DiffEntry>,
    pub matches: usize,
    pub mismatches: usize,
    pub unprinted: usize,
}

/// Compares a computed table with a reference list of relations.
pub fn diff_table(table: &StructureTable, printed: &[Relation]) -> Result<TableDiff> {
    let mut entries = Vec::new();
    for rel in printed {
        let computed = table.coefficients(rel.left, rel.right).ok_or_else(|| {
            Error::InvalidArgument(format!("unknown generator in [{},{}]", rel.left, rel.right))
        })?;
        // A printed term outside the basis can never match.
        let mut expected = vec![0.0; table.names.len()];
        let mut in_basis = true;
        for (name, c) in &rel.terms {
            match table.names.iter().position(|n| n == name) {
                Some(k) => expected[k] += c,
                None => in_basis = false,
            }
        }
        let ok = in_basis
            && computed
                .iter()
                .zip(&expected)
                .all(|(a, b)| (a - b).abs() <= 1e-12 * (1.0 + b.abs()));
        entries.push(DiffEntry {
            pair: format!("[{},{}]", rel.left, rel.right),
            printed: Some(rel.render()),
            computed: format!(
                "[{},{}] = {}",
                rel.left,
                rel.right,
                format_expansion(&table.names, &computed)
            ),
            status: if ok {
                DiffStatus::Match
            } else {
                DiffStatus::Mismatch
            },
        });
    }
    for e in table.nonzero() {
        let covered = printed.iter().any(|r| {
            (r.left == e.left && r.right == e.right) || (r.left == e.right && r.right == e.left)
        });
        if !covered {
            entries.push(DiffEntry {
                pair: format!("[{},{}]", e.left, e.right),
                printed: None,
                computed: format!("[{},{}] = {}", e.left, e.right, e.expansion),
                status: DiffStatus::Unprinted,
            });
        }
    }
    let count = |s| entries.iter().filter(|e| e.status == s).count();
    Ok(TableDiff {
        matches: count(DiffStatus::Match),
        mismatches: count(DiffStatus::Mismatch),
        unprinted: count(DiffStatus::Unprinted),
        entries,
    })
}

/// A recomputed structure table, its Jacobi residual and the diff against a
/// reference table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraReport {
    pub table: StructureTable,
    pub jacobi_residual: f64,
    pub diff: TableDiff,
}

pub fn algebra_report(generators: &[Generator], reference: &[Relation]) -> Result<AlgebraReport> {
    let table = structure_table(generators)?;
    Ok(AlgebraReport {
        jacobi_residual: jacobi_residual(generators)?,
        diff: diff_table(&table, reference)?,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> Vec<Generator> {
        // h, e, f with [h,e]=2e, [h,f]=-2f, [e,f]=h
        vec![
            ("h", Mat::diag(&[1.0, -1.0])),
            ("e", Mat::unit(2, 0, 1)),
            ("f", Mat::unit(2, 1, 0)),
        ]
    }

    #[test]
    fn sl2_table_is_exact() {
        let t = structure_table(&sl2()).unwrap();
        assert!(t.exact && t.closed);
        assert_eq!(t.expansion("h", "e").unwrap(), "2e");
        assert_eq!(t.expansion("f", "h").unwrap(), "2f");
        assert_eq!(t.expansion("e", "f").unwrap(), "h");
        assert_eq!(t.coefficient("f", "e", "h"), Some(-1.0));
    }

    #[test]
    fn rank_deficiency_detected() {
        let a = Mat::unit(2, 0, 1);
        let g = vec![("a", a), ("b", a.scale(2.0))];
        assert_eq!(structure_table(&g), Err(Error::RankDeficient));
    }

    #[test]
    fn open_span_reported() {
        let g = vec![("e", Mat::unit(2, 0, 1)), ("f", Mat::unit(2, 1, 0))];
        let t = structure_table(&g).unwrap();
        assert!(!t.closed);
        assert!(t.entries[0].residual > 0.5);
    }

    #[test]
    fn non_integer_inputs_use_least_squares() {
        let g: Vec<Generator> = sl2().into_iter().map(|(n, m)| (n, m.scale(0.3))).collect();
        let t = structure_table(&g).unwrap();
        assert!(!t.exact && t.closed);
        assert!((t.coefficient("h", "e", "e").unwrap() - 0.6).abs() < 1e-12);
    }

    #[test]
    fn jacobi_holds_for_sl2() {
        assert_eq!(jacobi_residual(&sl2()).unwrap(), 0.0);
    }

    #[test]
    fn formatting() {
        let names = ["Q", "E", "I"];
        assert_eq!(format_expansion(&names, &[1.0, -1.0, 0.0]), "Q - E");
        assert_eq!(format_expansion(&names, &[0.0, 0.0, -1.0]), "-I");
        assert_eq!(format_expansion(&names, &[0.0, 0.0, 0.0]), "0");
        assert_eq!(format_expansion(&names, &[0.5, 0.0, 0.0]), "0.5Q");
    }

    #[test]
    fn diff_flags_wrong_sign_and_omissions() {
        let t = structure_table(&sl2()).unwrap();
        let printed = vec![
            Relation::new("h", "e", &[("e", 2.0)]),
            Relation::new("h", "f", &[("f", 2.0)]),
        ];
        let d = diff_table(&t, &printed).unwrap();
        assert_eq!((d.matches, d.mismatches, d.unprinted), (1, 1, 1));
    }
}
