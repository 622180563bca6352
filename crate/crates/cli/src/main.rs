mod record;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reciproca::algebra::AlgebraReport;
use reciproca::casimir::casimir_c2;
use reciproca::discrete::discrete_table;
use reciproca::dynamics::{integrate_hamilton, Hamiltonian};
use reciproca::hamilton::{
    hamilton_compose, hamilton_element, hamilton_generators, hamilton_reference_table,
};
use reciproca::inertial::{gamma4, velocity_add};
use reciproca::metric::{congruence, MetricKind};
use reciproca::quaplectic::{
    heisenberg_algebra_table, inhom_algebra_table, quaplectic_algebra_table,
};
use reciproca::reciprocal::{
    composition_denominator, limit_b, rate_add, su11_generators, su11_reference_table, u11_compose,
    upsilon_compose, w_squared, xi_su11, xi_u11,
};
use reciproca::verify::run_verify;
use reciproca::{algebra, Constants, Error, FrameVector, Mat, RateParams};
use serde_json::{json, Value};

use record::{number, render_flat, render_json, to_value, OutputRecord, Status};

#[derive(Parser, Debug)]
#[command(
    name = "reciproca",
    version,
    about = "Frame groups of reciprocal relativity: transforms, laws, tables and checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply a group element to a frame increment (dt, dq, dp, de).
    Transform(TransformArgs),
    /// Compose two elements of a group and check against the matrix product.
    Compose(ComposeArgs),
    /// Rate addition law for SU(1,1) boosts.
    AddRates(AddRatesArgs),
    /// Structure table of a Lie algebra, diffed against the reference table.
    Algebra {
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Certify the quadratic Casimir of the quaplectic algebra.
    Casimir,
    /// Cayley table of the discrete reflection group.
    Discrete {
        /// Include the sign flip on the 6×6 extension.
        #[arg(long)]
        extended: bool,
    },
    /// Integrate Hamilton's equations with RK4 and report the frame rates.
    Trajectory(TrajectoryArgs),
    /// Run the seeded property suite.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Group {
    Lorentz,
    Hamilton,
    Su11,
    U11,
    Upsilon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Hamilton,
    Su11,
    Inhom,
    Quaplectic,
    Heisenberg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HamiltonianName {
    Free,
    Oscillator,
    Driven,
    Dilation,
}

#[derive(Args, Debug, Clone, Copy)]
struct Units {
    #[arg(long, default_value_t = 1.0, value_parser = finite)]
    c: f64,
    #[arg(long, default_value_t = 1.0, value_parser = finite)]
    b: f64,
    #[arg(long, default_value_t = 1.0, value_parser = finite)]
    hbar: f64,
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[arg(long, value_enum)]
    group: Group,
    #[arg(long, default_value_t = 0.0, value_parser = finite, allow_hyphen_values = true)]
    v: f64,
    #[arg(long, default_value_t = 0.0, value_parser = finite, allow_hyphen_values = true)]
    f: f64,
    #[arg(long, default_value_t = 0.0, value_parser = finite, allow_hyphen_values = true)]
    r: f64,
    #[arg(long, default_value_t = 0.0, value_parser = finite, allow_hyphen_values = true)]
    a: f64,
    /// Frame increment `dt,dq,dp,de`.
    #[arg(long, value_parser = frame4, allow_hyphen_values = true)]
    frame: [f64; 4],
    #[command(flatten)]
    units: Units,
}

#[derive(Args, Debug)]
struct ComposeArgs {
    #[arg(long, value_enum)]
    group: Group,
    /// `v,f,r[,a]` of the element applied first.
    #[arg(long, value_parser = rates, allow_hyphen_values = true)]
    first: RateParams,
    /// `v,f,r[,a]` of the element applied second.
    #[arg(long, value_parser = rates, allow_hyphen_values = true)]
    second: RateParams,
    #[command(flatten)]
    units: Units,
}

#[derive(Args, Debug)]
struct AddRatesArgs {
    #[arg(long, value_parser = rates, allow_hyphen_values = true)]
    first: RateParams,
    #[arg(long, value_parser = rates, allow_hyphen_values = true)]
    second: RateParams,
    #[command(flatten)]
    units: Units,
}

#[derive(Args, Debug)]
struct TrajectoryArgs {
    #[arg(long, value_enum)]
    hamiltonian: HamiltonianName,
    #[arg(long, default_value_t = 1.0, value_parser = finite, allow_hyphen_values = true)]
    q0: f64,
    #[arg(long, default_value_t = 0.0, value_parser = finite, allow_hyphen_values = true)]
    p0: f64,
    #[arg(long, value_parser = finite)]
    t_end: f64,
    #[arg(long, default_value_t = 1e-3, value_parser = finite)]
    dt: f64,
}

fn finite(s: &str) -> Result<f64, String> {
    let x: f64 = s
        .trim()
        .parse()
        .map_err(|e| format!("{s:?} is not a number: {e}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

fn list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(finite).collect()
}

fn frame4(s: &str) -> Result<[f64; 4], String> {
    let v = list(s)?;
    v.try_into()
        .map_err(|v: Vec<f64>| format!("expected 4 comma-separated values, got {}", v.len()))
}

fn rates(s: &str) -> Result<RateParams, String> {
    match list(s)?.as_slice() {
        [v, f, r] => Ok(RateParams::new(*v, *f, *r)),
        [v, f, r, a] => Ok(RateParams::with_a(*v, *f, *r, *a)),
        other => Err(format!(
            "expected v,f,r or v,f,r,a, got {} values",
            other.len()
        )),
    }
}

impl Units {
    fn constants(&self) -> Result<Constants, Error> {
        Constants::new(self.c, self.b, self.hbar)
    }

    fn echo(&self) -> Value {
        json!({"c": self.c, "b": self.b, "hbar": self.hbar})
    }
}

fn group_name(g: Group) -> &'static str {
    match g {
        Group::Lorentz => "lorentz",
        Group::Hamilton => "hamilton",
        Group::Su11 => "su11",
        Group::U11 => "u11",
        Group::Upsilon => "upsilon",
    }
}

fn rates_value(r: &RateParams) -> Value {
    json!({"v": number(r.v), "f": number(r.f), "r": number(r.r), "a": number(r.a)})
}

fn element(group: Group, r: &RateParams, k: &Constants) -> Result<Mat, Error> {
    match group {
        Group::Lorentz => gamma4(r.v, k),
        Group::Hamilton => hamilton_element(r),
        Group::Su11 => xi_su11(r, k),
        Group::U11 => xi_u11(r, k),
        Group::Upsilon => limit_b(r, k),
    }
}

fn transform(args: &TransformArgs) -> Result<OutputRecord, Error> {
    let k = args.units.constants()?;
    let r = RateParams::with_a(args.v, args.f, args.r, args.a);
    let inputs = json!({
        "group": group_name(args.group),
        "rates": rates_value(&r),
        "frame": args.frame.to_vec(),
        "units": args.units.echo(),
    });
    let m = element(args.group, &r, &k)?;
    let out = FrameVector::from_array(args.frame).transform(&m)?;
    let mut rec = OutputRecord::new("transform", inputs)
        .outputs(json!({"frame": out.as_array().to_vec(), "matrix": to_value(m)}))
        .residual("symplectic", congruence(MetricKind::Symplectic, &m, &k)?);
    if matches!(args.group, Group::Su11 | Group::U11) {
        rec = rec.residual("born_green", congruence(MetricKind::BornGreen, &m, &k)?);
    }
    Ok(rec)
}

fn compose(args: &ComposeArgs) -> Result<OutputRecord, Error> {
    let k = args.units.constants()?;
    let (a, b) = (&args.first, &args.second);
    let inputs = json!({
        "group": group_name(args.group),
        "first": rates_value(a),
        "second": rates_value(b),
        "units": args.units.echo(),
    });
    let out = match args.group {
        Group::Lorentz => RateParams::new(velocity_add(a.v, b.v, &k)?, 0.0, 0.0),
        Group::Hamilton => hamilton_compose(a, b)?,
        Group::Su11 => rate_add(a, b, &k)?,
        Group::U11 => u11_compose(a, b, &k)?,
        Group::Upsilon => upsilon_compose(a, b, &k)?,
    };
    let mut rec =
        OutputRecord::new("compose", inputs).outputs(json!({"composed": rates_value(&out)}));
    // At the saturation bound the elements have no matrix; only the law is reported.
    let product = element(args.group, b, &k).and_then(|mb| Ok(mb * element(args.group, a, &k)?));
    match (product, element(args.group, &out, &k)) {
        (Ok(p), Ok(m)) => {
            let sign = if p.get(0, 0) < 0.0 { -1.0 } else { 1.0 };
            rec = rec.residual("matrix_product", p.scale(sign).max_abs_diff(&m));
        }
        (Err(e), _) | (_, Err(e)) => {
            rec.outputs["matrix_check"] = Value::String(format!("skipped: {e}"));
        }
    }
    Ok(rec)
}

fn add_rates(args: &AddRatesArgs) -> Result<OutputRecord, Error> {
    let k = args.units.constants()?;
    let (a, b) = (&args.first, &args.second);
    let inputs =
        json!({"first": rates_value(a), "second": rates_value(b), "units": args.units.echo()});
    let out = rate_add(a, b, &k)?;
    Ok(OutputRecord::new("add-rates", inputs).outputs(json!({
        "rates": rates_value(&out),
        "denominator": number(composition_denominator(a, b, &k)),
        "w2": number(w_squared(&out, &k)),
    })))
}

fn algebra_cmd(which: Which) -> Result<(OutputRecord, AlgebraReport), Error> {
    let (name, report) = match which {
        Which::Hamilton => (
            "hamilton",
            plain_report(hamilton_generators(), hamilton_reference_table())?,
        ),
        Which::Su11 => (
            "su11",
            plain_report(su11_generators(), su11_reference_table())?,
        ),
        Which::Inhom => ("inhom", inhom_algebra_table()?),
        Which::Quaplectic => ("quaplectic", quaplectic_algebra_table()?),
        Which::Heisenberg => ("heisenberg", heisenberg_algebra_table()?),
    };
    let t = &report.table;
    let status = if t.closed { Status::Pass } else { Status::Fail };
    let rec = OutputRecord::new("algebra", json!({"which": name}))
        .outputs(&report)
        .residual("span", t.max_residual)
        .residual("jacobi", report.jacobi_residual)
        .status(status);
    Ok((rec, report))
}

fn plain_report(
    gens: Vec<algebra::Generator>,
    printed: Vec<algebra::Relation>,
) -> Result<AlgebraReport, Error> {
    algebra::algebra_report(&gens, &printed)
}

fn algebra_text(r: &AlgebraReport) -> String {
    let mut out = String::new();
    let t = &r.table;
    let w = t
        .entries
        .iter()
        .map(|e| e.left.len() + e.right.len())
        .max()
        .unwrap_or(2)
        + 3;
    out.push_str(&format!("basis: {}\n", t.names.join(", ")));
    out.push_str(&format!(
        "exact: {}  closed: {}  jacobi: {}\n\n",
        t.exact, t.closed, r.jacobi_residual
    ));
    for e in t.nonzero() {
        let pair = format!("[{},{}]", e.left, e.right);
        out.push_str(&format!("{pair:<w$} = {}\n", e.expansion));
    }
    out.push_str(&format!(
        "\nreference diff: {} match, {} mismatch, {} unlisted\n",
        r.diff.matches, r.diff.mismatches, r.diff.unprinted
    ));
    for e in r
        .diff
        .entries
        .iter()
        .filter(|e| e.status != algebra::DiffStatus::Match)
    {
        let listed = e.printed.as_deref().unwrap_or("(not listed)");
        out.push_str(&format!(
            "  {:<w$} listed {listed:<8} computed {}\n",
            e.pair, e.computed
        ));
    }
    out
}

fn run(cli: &Cli) -> Result<(OutputRecord, Option<String>), Error> {
    let format = cli.format;
    let text = format == Some(Format::Text);
    match &cli.command {
        Command::Transform(a) => Ok((transform(a)?, None)),
        Command::Compose(a) => Ok((compose(a)?, None)),
        Command::AddRates(a) => Ok((add_rates(a)?, None)),
        Command::Algebra { which } => {
            let (rec, rep) = algebra_cmd(*which)?;
            Ok((rec, text.then(|| algebra_text(&rep))))
        }
        Command::Casimir => {
            let rep = casimir_c2()?;
            let status = if rep.max_residual < 1e-12 {
                Status::Pass
            } else {
                Status::Fail
            };
            let txt = format!(
                "listed:    {} (commutes: {})\ncertified: {}\nchanged:   {}\nall commuting sign choices: {}\nmax |[X, C2]|: {}\n",
                rep.printed.render(),
                rep.printed_commutes,
                rep.expression,
                rep.deviations.join(", "),
                rep.commuting.iter().map(|c| c.render()).collect::<Vec<_>>().join("; "),
                rep.max_residual,
            );
            let rec = OutputRecord::new("casimir", json!({}))
                .residual("max_commutator", rep.max_residual)
                .outputs(&rep)
                .status(status);
            Ok((rec, text.then_some(txt)))
        }
        Command::Discrete { extended } => {
            let t = discrete_table(*extended);
            let status = if t.pass() { Status::Pass } else { Status::Fail };
            let mut txt = format!(
                "order {} (listed {})  abelian {}  metrics preserved {}\n\n",
                t.order, t.expected_order, t.abelian, t.metrics_preserved
            );
            txt.push_str(&t.grid());
            txt.push('\n');
            for r in &t.relations {
                txt.push_str(&format!(
                    "{:<12} {}  (product is {})\n",
                    r.relation,
                    if r.holds { "holds" } else { "FAILS" },
                    r.actual
                ));
            }
            let rec = OutputRecord::new("discrete", json!({"extended": extended}))
                .outputs(&t)
                .status(status);
            Ok((rec, text.then_some(txt)))
        }
        Command::Trajectory(a) => {
            let name = format!("{:?}", a.hamiltonian).to_lowercase();
            let h = Hamiltonian::by_name(&name)?;
            let tr = integrate_hamilton(&h, a.q0, a.p0, a.t_end, a.dt)?;
            let inputs =
                json!({"hamiltonian": name, "q0": a.q0, "p0": a.p0, "t_end": a.t_end, "dt": a.dt});
            let e0 = tr.samples[0].e;
            let drift = tr
                .samples
                .iter()
                .map(|s| (s.e - e0).abs())
                .fold(0.0, f64::max);
            let csv =
                (format != Some(Format::Json) && format != Some(Format::Text)).then(|| tr.to_csv());
            let rec = OutputRecord::new("trajectory", inputs)
                .outputs(&tr)
                .residual("energy_drift", drift);
            Ok((rec, csv))
        }
        Command::Verify { seed, cases } => {
            let seed = seed_override(*seed);
            let rep = run_verify(seed, *cases);
            let status = if rep.pass { Status::Pass } else { Status::Fail };
            let mut txt = String::new();
            for p in &rep.properties {
                txt.push_str(&format!(
                    "{} {:<40} cases {:>5}  worst {:<24} tol {}\n",
                    if p.pass { "PASS" } else { "FAIL" },
                    p.name,
                    p.cases,
                    reciproca::fmt_g17(p.max_residual),
                    p.tolerance
                ));
            }
            let mut rec =
                OutputRecord::new("verify", json!({"seed": seed, "cases": cases})).status(status);
            for p in &rep.properties {
                rec = rec.residual(p.name, p.max_residual);
            }
            Ok((rec.outputs(&rep), text.then_some(txt)))
        }
    }
}

/// `RECIPROCA_SEED` takes precedence over `--seed`.
fn seed_override(flag: u64) -> u64 {
    match std::env::var("RECIPROCA_SEED") {
        Ok(s) => s.trim().parse().unwrap_or_else(|_| {
            eprintln!("error: RECIPROCA_SEED={s:?} is not an unsigned integer");
            std::process::exit(2);
        }),
        Err(_) => flag,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Transform(_) => "transform",
        Command::Compose(_) => "compose",
        Command::AddRates(_) => "add-rates",
        Command::Algebra { .. } => "algebra",
        Command::Casimir => "casimir",
        Command::Discrete { .. } => "discrete",
        Command::Trajectory(_) => "trajectory",
        Command::Verify { .. } => "verify",
    }
}

/// Runs a parsed command line and renders its output.
fn execute(cli: &Cli) -> (OutputRecord, String) {
    let text = cli.format == Some(Format::Text);
    let (rec, rendered) = match run(cli) {
        Ok(x) => x,
        Err(e) => {
            let rec = OutputRecord::new(command_name(&cli.command), Value::Null)
                .outputs(json!({"error": e.to_string(), "kind": e.kind()}))
                .status(Status::Error);
            (rec, None)
        }
    };
    let body = match rendered {
        Some(s) => s,
        None if text => render_flat(&rec.to_value()),
        None => render_json(&rec.to_value()),
    };
    (rec, body)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (rec, body) = execute(&cli);
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(body.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match rec.status {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail | Status::Error => ExitCode::from(1),
    }
}
