//! Command-line front end.
//!
//! Exit codes: 0 when every verdict holds and every root is found, 1 when
//! something fails, 2 when something is inconclusive, 3 on usage or I/O
//! errors.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::func::Func;
use crate::geometry::{chain_explorer, close_to_convex_check, gegenbauer_cosine_scans, gegenbauer_mean, zero_free_closed_disc};
use crate::numeric::{fmt17, parse_rational};
use crate::quadrature::{mustar_curve, solve_mu0, solve_mustar, RootResult, RootStatus, MU_EPSILON};
use crate::report::{render_csv, render_svg, Json, Obj, Series};
use crate::series::TriangularScheme;
use crate::special::{coeff_table, even_sine_mu_bound, vietoris_regime, Params};
use crate::subordination::{
    check_halfplane, check_hypergeometric_stability, check_matrix_stability, check_stability,
    check_starlike_ratio, hypergeometric_family,
};
use crate::trig::{conj2_boundary_sum, positivity_scan, GridSpec, ScanReport, SumKind};
use crate::verdict::{BoundaryGrid, Status, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "cesaro", version, about = "Generalized Cesàro means: coefficients, positivity and subordination checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct BcArgs {
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Args, Debug, Clone)]
pub struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct DiscArgs {
    #[arg(long, default_value_t = 64)]
    pub radii: usize,
    #[arg(long, default_value_t = 1024)]
    pub angles: usize,
}

impl DiscArgs {
    fn grid(&self) -> Result<BoundaryGrid> {
        if self.radii == 0 || self.angles == 0 {
            return Err(Error::Parameter("grid dimensions must be positive".into()));
        }
        Ok(BoundaryGrid::geometric(self.radii, self.angles))
    }

    fn json(&self) -> Obj {
        Obj::new()
            .set("radii", self.radii)
            .set("angles", self.angles)
            .set("max_radius", 1.0 - 1e-6)
    }
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    /// Cells on (0, pi).
    #[arg(long, default_value_t = 4096)]
    pub points: usize,
    /// Maximum bisection depth per cell.
    #[arg(long, default_value_t = 12)]
    pub depth: usize,
}

impl ScanArgs {
    fn grid(&self) -> GridSpec {
        GridSpec {
            points: self.points,
            refinement: self.depth,
            ..GridSpec::default()
        }
    }

    fn json(&self) -> Obj {
        Obj::new()
            .set("lo", 0.0)
            .set("hi", PI)
            .set("points", self.points)
            .set("depth", self.depth)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    All,
    Cosine,
    OddSine,
    EvenSine,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Cesaro,
    Identity,
    Random,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FunctionArg {
    /// `z / (1 - z)^{2 - 2 lambda}`
    Extremal,
    /// `z`
    Identity,
    /// `-log(1 - z)`
    Neglog,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficient table B_k, c_k, d_k.
    Coeffs {
        #[command(flatten)]
        bc: BcArgs,
        #[arg(long, default_value = "0.5", allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Exact rational arithmetic; b, c and mu are read as exact decimals.
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Certified positivity of the cosine and sine sums for orders 0..=n.
    ScanPositivity {
        #[command(flatten)]
        bc: BcArgs,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, value_enum, default_value_t = KindArg::All)]
        kind: KindArg,
        /// Scan order n only.
        #[arg(long)]
        single: bool,
        #[command(flatten)]
        scan: ScanArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Critical exponent of the cosine integral.
    SolveMu0 {
        #[command(flatten)]
        bc: BcArgs,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Critical exponent of the sine integral at one rho.
    SolveMustar {
        #[arg(long, default_value_t = 1.0)]
        rho: f64,
        #[command(flatten)]
        bc: BcArgs,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// mu*(rho) on the grid rho = i/(points-1), i = 1..points-1.
    MustarCurve {
        #[command(flatten)]
        bc: BcArgs,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// (1-z)^mu H_n(f_mu) subordinate to (1-z)^mu.
    CheckStability {
        #[command(flatten)]
        bc: BcArgs,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SchemeArg::Cesaro)]
        scheme: SchemeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        disc: DiscArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Starlike ratio, or the hypergeometric form when --rho and --mu are set.
    CheckRatio {
        #[command(flatten)]
        bc: BcArgs,
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long, value_enum, default_value_t = FunctionArg::Extremal)]
        function: FunctionArg,
        #[command(flatten)]
        disc: DiscArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Half-plane form and boundary sine sum.
    CheckConjecture2 {
        #[command(flatten)]
        bc: BcArgs,
        #[arg(long, default_value_t = 0.5)]
        rho: f64,
        #[arg(long, default_value_t = 0.5)]
        mu: f64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Samples of the boundary sum on (0, 2 pi).
        #[arg(long, default_value_t = 4096)]
        boundary_points: usize,
        #[command(flatten)]
        disc: DiscArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Zero-freeness and cosine positivity of Gegenbauer means.
    Gegenbauer {
        #[command(flatten)]
        bc: BcArgs,
        #[arg(long, default_value_t = 0.25)]
        lambda: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [-1.0, -0.5, 0.0, 0.5, 1.0], allow_hyphen_values = true)]
        x: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[command(flatten)]
        scan: ScanArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Close-to-convexity of the scaled normalized mean.
    Ctc {
        #[arg(long, default_value_t = 2.0)]
        b: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FunctionArg::Neglog)]
        function: FunctionArg,
        #[command(flatten)]
        disc: DiscArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Boundary curves of s_n^{(b-1+k, c)}(f) for n = 1..=n and of f.
    Chain {
        #[command(flatten)]
        bc: BcArgs,
        #[arg(long, default_value_t = 0)]
        shift: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Samples per curve.
        #[arg(long, default_value_t = 512)]
        points: usize,
        #[arg(long, value_enum, default_value_t = FunctionArg::Neglog)]
        function: FunctionArg,
        #[command(flatten)]
        out: OutArgs,
    },
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Rendered report plus the exit code it implies.
struct Rendered {
    code: i32,
    text: String,
}

fn worst(codes: impl IntoIterator<Item = i32>) -> i32 {
    // FAILS dominates INCONCLUSIVE
    codes.into_iter().fold(EXIT_OK, |acc, c| match (acc, c) {
        (EXIT_FAILS, _) | (_, EXIT_FAILS) => EXIT_FAILS,
        (a, b) => a.max(b),
    })
}

fn verdict_json(v: &Verdict) -> Json {
    Obj::new()
        .set("status", v.status.label())
        .set("margin", v.margin)
        .set("budget", v.budget)
        .set("witness", v.witness.map(complex_json))
        .set("samples", v.samples)
        .set("note", v.note.clone())
        .build()
}

fn complex_json(z: Complex64) -> Json {
    Obj::new().set("re", z.re).set("im", z.im).build()
}

fn scan_json(s: &ScanReport) -> Obj {
    Obj::new()
        .set("status", s.verdict.status.label())
        .set("certified", s.certified)
        .set("min_value", s.min_value)
        .set("argmin", s.argmin)
        .set("lipschitz_bound", s.lipschitz_bound)
        .set("step", s.step)
        .set("budget", s.verdict.budget)
        .set("evaluations", s.evaluations)
        .set("note", s.verdict.note.clone())
}

fn root_code(r: &RootResult) -> i32 {
    match r.status {
        RootStatus::Found => EXIT_OK,
        RootStatus::NoSignChange if r.critical_exponent().is_some() => EXIT_OK,
        _ => EXIT_INCONCLUSIVE,
    }
}

fn root_json(r: &RootResult, tol: f64) -> Obj {
    Obj::new()
        .set("kind", r.kind.label())
        .set("status", r.status.label())
        .set("root", if r.root.is_nan() { None } else { Some(r.root) })
        .set("critical_exponent", r.critical_exponent())
        .set("bracket", vec![r.bracket.0, r.bracket.1])
        .set("residual", if r.residual.is_nan() { None } else { Some(r.residual) })
        .set("tolerance", tol)
        .set("evaluations", r.evaluations)
        .set("sign_changes", Json::Arr(r.sign_changes.iter().map(|&(a, b)| vec![a, b].into()).collect()))
        .set("endpoint_values", vec![r.endpoint_values.0, r.endpoint_values.1])
        .set("epsilon", MU_EPSILON)
}

fn report(command: &str, config: Obj, results: impl Into<Json>) -> String {
    Obj::new()
        .set("command", command)
        .set("version", env!("CARGO_PKG_VERSION"))
        .set("config", config)
        .set("results", results)
        .build()
        .render()
}

fn no_svg(format: Format, command: &str) -> Result<()> {
    if format == Format::Svg {
        return Err(Error::Parameter(format!("{command} has no SVG output")));
    }
    Ok(())
}

fn f17(x: f64) -> String {
    fmt17(x)
}

fn opt17(x: Option<f64>) -> String {
    x.map(fmt17).unwrap_or_default()
}

fn function(arg: FunctionArg, lambda: f64) -> Func {
    match arg {
        FunctionArg::Extremal => Func::z_pow(2.0 - 2.0 * lambda),
        FunctionArg::Identity => Func::Z,
        FunctionArg::Neglog => Func::NegLog,
    }
}

fn function_label(arg: FunctionArg) -> &'static str {
    match arg {
        FunctionArg::Extremal => "extremal",
        FunctionArg::Identity => "identity",
        FunctionArg::Neglog => "neglog",
    }
}

fn exact(s: &str, name: &str) -> Result<BigRational> {
    parse_rational(s).ok_or_else(|| Error::Parameter(format!("cannot parse {name} = {s:?}")))
}

fn run_coeffs(bc: &BcArgs, mu: &str, n: usize, exact_path: bool, format: Format) -> Result<Rendered> {
    no_svg(format, "coeffs")?;
    let cells: Vec<(String, Vec<String>, Vec<String>, Vec<String>)>;
    let config = Obj::new()
        .set("b", bc.b)
        .set("c", bc.c)
        .set("mu", mu)
        .set("n", n)
        .set("exact", exact_path);
    if exact_path {
        let b = exact(&bc.b.to_string(), "b")?;
        let c = exact(&bc.c.to_string(), "c")?;
        let m = exact(mu, "mu")?;
        let t = coeff_table(n, b, c, m)?;
        let s = |v: &Vec<BigRational>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        cells = vec![("exact".into(), s(&t.big_b), s(&t.c_seq), s(&t.d_seq))];
    } else {
        let m: f64 = mu
            .parse()
            .map_err(|_| Error::Parameter(format!("cannot parse mu = {mu:?}")))?;
        let t = crate::special::coeff_table_f64(n, bc.b, bc.c, m)?;
        let s = |v: &Vec<f64>| v.iter().map(|&x| f17(x)).collect::<Vec<_>>();
        cells = vec![("float".into(), s(&t.big_b), s(&t.c_seq), s(&t.d_seq))];
    }
    let (_, bb, cs, ds) = &cells[0];
    let text = match format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = (0..cs.len())
                .map(|k| {
                    vec![
                        k.to_string(),
                        bb.get(k).cloned().unwrap_or_default(),
                        cs[k].clone(),
                        ds.get(k).cloned().unwrap_or_default(),
                    ]
                })
                .collect();
            render_csv(&["k", "big_b", "c_k", "d_k"], &rows)?
        }
        _ => {
            let arr = |v: &Vec<String>| -> Json {
                if exact_path {
                    Json::Arr(v.iter().map(|s| Json::Str(s.clone())).collect())
                } else {
                    Json::Arr(v.iter().map(|s| Json::Num(s.parse().unwrap_or(f64::NAN))).collect())
                }
            };
            report(
                "coeffs",
                config,
                Obj::new().set("big_b", arr(bb)).set("c", arr(cs)).set("d", arr(ds)),
            )
        }
    };
    Ok(Rendered { code: EXIT_OK, text })
}

fn run_scan(
    bc: &BcArgs,
    mu: f64,
    n: usize,
    kind: KindArg,
    single: bool,
    scan: &ScanArgs,
    format: Format,
) -> Result<Rendered> {
    no_svg(format, "scan-positivity")?;
    let grid = scan.grid();
    grid.validate()?;
    let kinds: Vec<KindArg> = match kind {
        KindArg::All => vec![KindArg::Cosine, KindArg::OddSine, KindArg::EvenSine],
        k => vec![k],
    };
    let bound = even_sine_mu_bound(bc.b, bc.c);
    let exploratory = !vietoris_regime(bc.b, bc.c) || bc.b < bc.c;
    let orders: Vec<usize> = if single { vec![n] } else { (0..=n).collect() };
    let mut records = Vec::new();
    for &m in &orders {
        let t = crate::special::coeff_table_f64(m, bc.b, bc.c, mu)?;
        for &k in &kinds {
            let (label, sum, upper) = match k {
                KindArg::Cosine => ("cosine", SumKind::Cosine, 2 * m + 1),
                KindArg::OddSine => ("odd-sine", SumKind::Sine, 2 * m + 1),
                KindArg::EvenSine => ("even-sine", SumKind::Sine, 2 * m),
                KindArg::All => unreachable!(),
            };
            // the even sum of order 0 is empty
            if upper == 0 {
                continue;
            }
            let r = positivity_scan(&t, sum, upper, &grid)?;
            records.push((m, label, r));
        }
    }
    let code = worst(records.iter().map(|(_, _, r)| r.verdict.status.code()));
    let text = match format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|(m, label, r)| {
                    vec![
                        m.to_string(),
                        label.to_string(),
                        r.verdict.status.label().into(),
                        r.certified.to_string(),
                        f17(r.min_value),
                        f17(r.argmin),
                        f17(r.lipschitz_bound),
                        f17(r.verdict.budget),
                        r.evaluations.to_string(),
                    ]
                })
                .collect();
            render_csv(
                &["n", "kind", "status", "certified", "min_value", "argmin", "lipschitz_bound", "budget", "evaluations"],
                &rows,
            )?
        }
        _ => {
            let config = Obj::new()
                .set("b", bc.b)
                .set("c", bc.c)
                .set("mu", mu)
                .set("n", n)
                .set("single", single)
                .set("grid", scan.json())
                .set("even_sine_mu_bound", bound.clamped)
                .set("exploratory", exploratory);
            let results: Vec<Json> = records
                .iter()
                .map(|(m, label, r)| Obj::new().set("n", *m).set("kind", *label).build_with(scan_json(r)))
                .collect();
            report("scan-positivity", config, results)
        }
    };
    Ok(Rendered { code, text })
}

trait BuildWith {
    fn build_with(self, rest: Obj) -> Json;
}

impl BuildWith for Obj {
    fn build_with(self, rest: Obj) -> Json {
        let (Json::Obj(mut a), Json::Obj(b)) = (self.build(), rest.build()) else {
            unreachable!()
        };
        a.extend(b);
        Json::Obj(a)
    }
}

fn roots_csv(rows: &[(Option<f64>, &RootResult)]) -> Result<String> {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|(rho, r)| {
            vec![
                opt17(*rho),
                opt17(r.critical_exponent()),
                if r.residual.is_nan() { String::new() } else { f17(r.residual) },
                r.evaluations.to_string(),
                r.status.label().into(),
            ]
        })
        .collect();
    render_csv(&["rho", "mustar", "residual", "evaluations", "status"], &rows)
}

fn run_solve(kind: &str, rho: Option<f64>, bc: &BcArgs, tol: f64, format: Format) -> Result<Rendered> {
    no_svg(format, kind)?;
    let r = match rho {
        None => solve_mu0(bc.b, bc.c, tol)?,
        Some(rho) => solve_mustar(rho, bc.b, bc.c, tol)?,
    };
    let text = match format {
        Format::Csv => roots_csv(&[(rho, &r)])?,
        _ => {
            let mut config = Obj::new().set("b", bc.b).set("c", bc.c);
            if let Some(rho) = rho {
                config = config.set("rho", rho);
            }
            config = config.set("tol", tol).set("prescan_points", 64usize).set("monotone_probes", 8usize);
            report(kind, config, root_json(&r, tol))
        }
    };
    Ok(Rendered { code: root_code(&r), text })
}

/// `rho = i / (points - 1)` for `i = 1..points-1`.
pub fn curve_grid(points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::Parameter("mustar-curve needs at least 2 points".into()));
    }
    Ok((1..points).map(|i| i as f64 / (points - 1) as f64).collect())
}

fn run_curve(bc: &BcArgs, points: usize, tol: f64, format: Format) -> Result<Rendered> {
    let grid = curve_grid(points)?;
    let curve = mustar_curve(bc.b, bc.c, &grid, tol)?;
    let code = worst(curve.iter().map(|p| root_code(&p.result)));
    let text = match format {
        Format::Csv => roots_csv(&curve.iter().map(|p| (Some(p.rho), &p.result)).collect::<Vec<_>>())?,
        Format::Svg => {
            let series = Series {
                label: format!("b = {}, c = {}", bc.b, bc.c),
                points: curve.iter().map(|p| p.mustar().map(|m| (p.rho, m))).collect(),
            };
            render_svg(
                &format!("mu*(rho) for b = {}, c = {}", bc.b, bc.c),
                "rho",
                "mu*",
                &[series],
            )
        }
        Format::Json => {
            let config = Obj::new()
                .set("b", bc.b)
                .set("c", bc.c)
                .set("points", points)
                .set("tol", tol);
            let rows: Vec<Json> = curve
                .iter()
                .map(|p| Obj::new().set("rho", p.rho).build_with(root_json(&p.result, tol)))
                .collect();
            report("mustar-curve", config, rows)
        }
    };
    Ok(Rendered { code, text })
}

fn verdict_csv(rows: &[(String, &Verdict)]) -> Result<String> {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|(label, v)| {
            vec![
                label.clone(),
                v.status.label().into(),
                f17(v.margin),
                f17(v.budget),
                v.witness.map(|w| f17(w.re)).unwrap_or_default(),
                v.witness.map(|w| f17(w.im)).unwrap_or_default(),
                v.samples.to_string(),
                v.note.clone().unwrap_or_default(),
            ]
        })
        .collect();
    render_csv(
        &["case", "status", "margin", "budget", "witness_re", "witness_im", "samples", "note"],
        &rows,
    )
}

fn emit_verdicts(command: &str, config: Obj, rows: Vec<(String, Verdict)>, format: Format) -> Result<Rendered> {
    no_svg(format, command)?;
    let code = worst(rows.iter().map(|(_, v)| v.status.code()));
    let text = match format {
        Format::Csv => verdict_csv(&rows.iter().map(|(l, v)| (l.clone(), v)).collect::<Vec<_>>())?,
        _ => {
            let results: Vec<Json> = rows
                .iter()
                .map(|(l, v)| {
                    let Json::Obj(mut fields) = verdict_json(v) else { unreachable!() };
                    fields.insert(0, ("case".into(), Json::Str(l.clone())));
                    Json::Obj(fields)
                })
                .collect();
            report(command, config, results)
        }
    };
    Ok(Rendered { code, text })
}

/// Random scheme with first column in `(0, 1]`.
pub fn random_scheme(n: usize, seed: u64) -> Result<TriangularScheme<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x: Vec<f64> = (0..n).map(|_| 1.0 - rng.gen::<f64>()).collect();
    TriangularScheme::from_first_column(&x, 1e-12)
}

fn run_stability(
    bc: &BcArgs,
    mu: f64,
    n: usize,
    scheme: SchemeArg,
    seed: u64,
    disc: &DiscArgs,
    format: Format,
) -> Result<Rendered> {
    let grid = disc.grid()?;
    let (label, v) = match scheme {
        SchemeArg::Cesaro => ("cesaro", check_stability(&Params::new(bc.b, bc.c, mu, n)?, &grid)?),
        SchemeArg::Identity => ("identity", check_matrix_stability(&TriangularScheme::identity(n), mu, &grid)?),
        SchemeArg::Random => ("random", check_matrix_stability(&random_scheme(n, seed)?, mu, &grid)?),
    };
    let config = Obj::new()
        .set("b", bc.b)
        .set("c", bc.c)
        .set("mu", mu)
        .set("n", n)
        .set("scheme", label)
        .set("seed", seed as i64)
        .set("grid", disc.json());
    emit_verdicts("check-stability", config, vec![(label.to_string(), v)], format)
}

#[allow(clippy::too_many_arguments)]
fn run_ratio(
    bc: &BcArgs,
    lambda: f64,
    n: usize,
    rho: Option<f64>,
    mu: Option<f64>,
    fun: FunctionArg,
    disc: &DiscArgs,
    format: Format,
) -> Result<Rendered> {
    let grid = disc.grid()?;
    let mut config = Obj::new()
        .set("b", bc.b)
        .set("c", bc.c)
        .set("n", n)
        .set("grid", disc.json());
    let rows = match (rho, mu) {
        (Some(rho), Some(mu)) => {
            config = config.set("rho", rho).set("mu", mu).set("family", "dilations of (1-z)^-mu");
            hypergeometric_family(mu)
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    Ok((
                        format!("family[{i}]"),
                        check_hypergeometric_stability(rho, mu, n, bc.b, bc.c, f, &grid)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?
        }
        (None, None) => {
            config = config.set("lambda", lambda).set("function", function_label(fun));
            let f = function(fun, lambda);
            vec![(
                function_label(fun).to_string(),
                check_starlike_ratio(&f, lambda, n, bc.b, bc.c, &grid)?,
            )]
        }
        _ => return Err(Error::Parameter("--rho and --mu go together".into())),
    };
    emit_verdicts("check-ratio", config, rows, format)
}

#[allow(clippy::too_many_arguments)]
fn run_conjecture2(
    bc: &BcArgs,
    rho: f64,
    mu: f64,
    n: usize,
    boundary_points: usize,
    disc: &DiscArgs,
    format: Format,
) -> Result<Rendered> {
    let grid = disc.grid()?;
    let p = Params::new(bc.b, bc.c, mu, n)?.with_rho(rho)?;
    let half = check_halfplane(&p, &grid)?;
    // the boundary sum must stay negative on (0, 2 pi)
    let t = crate::special::coeff_table_f64(n, bc.b, bc.c, mu)?;
    let m = boundary_points.max(1);
    let (mut worst_s, mut at) = (f64::NEG_INFINITY, f64::NAN);
    for i in 0..m {
        let phi = 2.0 * PI * (i as f64 + 0.5) / m as f64;
        let s = conj2_boundary_sum(&t, rho, phi);
        if s > worst_s {
            worst_s = s;
            at = phi;
        }
    }
    let budget = crate::verdict::degree_budget(n);
    let boundary = if worst_s > 10.0 * budget {
        Verdict {
            status: Status::Fails,
            margin: -worst_s,
            witness: Some(Complex64::from_polar(1.0, at)),
            samples: m,
            budget,
            note: Some("boundary sum positive".into()),
        }
    } else if worst_s > budget {
        Verdict {
            status: Status::Inconclusive,
            margin: -worst_s,
            witness: None,
            samples: m,
            budget,
            note: Some("boundary sum within ten budgets of zero".into()),
        }
    } else {
        Verdict::holds(-worst_s, m, budget)
    };
    let config = Obj::new()
        .set("b", bc.b)
        .set("c", bc.c)
        .set("rho", rho)
        .set("mu", mu)
        .set("n", n)
        .set("boundary_points", m)
        .set("grid", disc.json());
    emit_verdicts(
        "check-conjecture2",
        config,
        vec![("halfplane".into(), half), ("boundary-sum".into(), boundary)],
        format,
    )
}

fn run_gegenbauer(bc: &BcArgs, lambda: f64, xs: &[f64], n: usize, scan: &ScanArgs, format: Format) -> Result<Rendered> {
    no_svg(format, "gegenbauer")?;
    if xs.is_empty() {
        return Err(Error::Parameter("empty --x list".into()));
    }
    if !(lambda > 0.0) || xs.iter().any(|x| !(-1.0..=1.0).contains(x)) {
        return Err(Error::Parameter("need lambda > 0 and x in [-1, 1]".into()));
    }
    let grid = scan.grid();
    grid.validate()?;
    let scans = gegenbauer_cosine_scans(lambda, xs, n, bc.b, bc.c, &grid)?;
    let zero_free: Vec<Verdict> = xs
        .iter()
        .map(|&x| Ok(zero_free_closed_disc(&gegenbauer_mean(lambda, x, n, bc.b, bc.c)?.to_complex())))
        .collect::<Result<_>>()?;
    let code = worst(
        scans
            .iter()
            .map(|(_, s)| s.verdict.status.code())
            .chain(zero_free.iter().map(|v| v.status.code())),
    );
    let exploratory = !(lambda > 0.0 && lambda <= 0.25);
    let text = match format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = scans
                .iter()
                .zip(&zero_free)
                .map(|((x, s), z)| {
                    vec![
                        f17(*x),
                        z.status.label().into(),
                        f17(z.margin),
                        s.verdict.status.label().into(),
                        s.certified.to_string(),
                        f17(s.min_value),
                        f17(s.argmin),
                    ]
                })
                .collect();
            render_csv(
                &["x", "zero_free", "min_modulus", "positivity", "certified", "min_value", "argmin"],
                &rows,
            )?
        }
        _ => {
            let config = Obj::new()
                .set("b", bc.b)
                .set("c", bc.c)
                .set("lambda", lambda)
                .set("x", xs.to_vec())
                .set("n", n)
                .set("grid", scan.json())
                .set("exploratory", exploratory);
            let rows: Vec<Json> = scans
                .iter()
                .zip(&zero_free)
                .map(|((x, s), z)| {
                    Obj::new()
                        .set("x", *x)
                        .set("zero_free", verdict_json(z))
                        .set("positivity", scan_json(s))
                        .build()
                })
                .collect();
            report("gegenbauer", config, rows)
        }
    };
    Ok(Rendered { code, text })
}

#[allow(clippy::too_many_arguments)]
fn run_ctc(b: f64, c: f64, lambda: f64, n: usize, fun: FunctionArg, disc: &DiscArgs, format: Format) -> Result<Rendered> {
    let grid = disc.grid()?;
    let r = close_to_convex_check(&function(fun, lambda), lambda, n, b, c, &grid)?;
    let config = Obj::new()
        .set("b", b)
        .set("c", c)
        .set("lambda", lambda)
        .set("n", n)
        .set("function", function_label(fun))
        .set("grid", disc.json())
        .set("min_derivative_modulus", r.min_derivative_modulus);
    emit_verdicts(
        "ctc",
        config,
        vec![("ratio".into(), r.verdict), ("close-to-convex".into(), r.close_to_convex)],
        format,
    )
}

fn run_chain(bc: &BcArgs, shift: usize, n: usize, points: usize, fun: FunctionArg, format: Format) -> Result<Rendered> {
    let f = function(fun, 0.5);
    let bundle = chain_explorer(&f, bc.b, bc.c, shift, n, points)?;
    let label = |c: &crate::geometry::Curve| c.n.map_or("f".to_string(), |n| format!("n={n}"));
    let text = match format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = bundle
                .curves
                .iter()
                .flat_map(|c| {
                    c.points.iter().enumerate().map(move |(i, z)| {
                        vec![
                            c.n.map(|n| n.to_string()).unwrap_or_else(|| "f".into()),
                            i.to_string(),
                            f17(z.re),
                            f17(z.im),
                        ]
                    })
                })
                .collect();
            render_csv(&["curve", "index", "re", "im"], &rows)?
        }
        Format::Svg => {
            let series: Vec<Series> = bundle
                .curves
                .iter()
                .map(|c| Series {
                    label: label(c),
                    points: c.points.iter().map(|z| Some((z.re, z.im))).collect(),
                })
                .collect();
            render_svg(
                &format!("boundary images, b = {}, c = {}, shift = {}", bc.b, bc.c, shift),
                "Re",
                "Im",
                &series,
            )
        }
        Format::Json => {
            let config = Obj::new()
                .set("b", bc.b)
                .set("c", bc.c)
                .set("shift", shift)
                .set("n", n)
                .set("points", points)
                .set("function", function_label(fun))
                .set("function_radius", crate::geometry::FUNCTION_RADIUS);
            let pairs: Vec<Json> = bundle
                .curves
                .windows(2)
                .zip(&bundle.containment)
                .map(|(w, s)| {
                    Obj::new()
                        .set("inner", label(&w[0]))
                        .set("outer", label(&w[1]))
                        .set("score", *s)
                        .build()
                })
                .collect();
            let curves: Vec<Json> = bundle
                .curves
                .iter()
                .map(|c| {
                    Obj::new()
                        .set("curve", label(c))
                        .set("re", c.points.iter().map(|z| z.re).collect::<Vec<_>>())
                        .set("im", c.points.iter().map(|z| z.im).collect::<Vec<_>>())
                        .build()
                })
                .collect();
            report("chain", config, Obj::new().set("containment", pairs).set("curves", curves))
        }
    };
    Ok(Rendered { code: EXIT_OK, text })
}

fn dispatch(cmd: &Command) -> Result<(Rendered, Option<PathBuf>)> {
    let (r, out) = match cmd {
        Command::Coeffs { bc, mu, n, exact, out } => (run_coeffs(bc, mu, *n, *exact, out.format)?, out),
        Command::ScanPositivity {
            bc,
            mu,
            n,
            kind,
            single,
            scan,
            out,
        } => (run_scan(bc, *mu, *n, *kind, *single, scan, out.format)?, out),
        Command::SolveMu0 { bc, tol, out } => (run_solve("solve-mu0", None, bc, *tol, out.format)?, out),
        Command::SolveMustar { rho, bc, tol, out } => {
            (run_solve("solve-mustar", Some(*rho), bc, *tol, out.format)?, out)
        }
        Command::MustarCurve { bc, points, tol, out } => (run_curve(bc, *points, *tol, out.format)?, out),
        Command::CheckStability {
            bc,
            mu,
            n,
            scheme,
            seed,
            disc,
            out,
        } => (run_stability(bc, *mu, *n, *scheme, *seed, disc, out.format)?, out),
        Command::CheckRatio {
            bc,
            lambda,
            n,
            rho,
            mu,
            function,
            disc,
            out,
        } => (run_ratio(bc, *lambda, *n, *rho, *mu, *function, disc, out.format)?, out),
        Command::CheckConjecture2 {
            bc,
            rho,
            mu,
            n,
            boundary_points,
            disc,
            out,
        } => (run_conjecture2(bc, *rho, *mu, *n, *boundary_points, disc, out.format)?, out),
        Command::Gegenbauer { bc, lambda, x, n, scan, out } => {
            (run_gegenbauer(bc, *lambda, x, *n, scan, out.format)?, out)
        }
        Command::Ctc {
            b,
            c,
            lambda,
            n,
            function,
            disc,
            out,
        } => (run_ctc(*b, *c, *lambda, *n, *function, disc, out.format)?, out),
        Command::Chain {
            bc,
            shift,
            n,
            points,
            function,
            out,
        } => (run_chain(bc, *shift, *n, *points, *function, out.format)?, out),
    };
    Ok((r, out.out.clone()))
}

/// Parse and run without touching stdout; the report goes to `stdout`
/// unless `--out` names a file.
pub fn execute<I, S>(args: I) -> Execution
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Execution {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Execution {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(&cli.command) {
        Err(e) => Execution {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
        Ok((r, None)) => Execution {
            code: r.code,
            stdout: r.text,
            stderr: String::new(),
        },
        Ok((r, Some(path))) => match std::fs::write(&path, r.text.as_bytes()) {
            Ok(()) => Execution {
                code: r.code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Execution {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: {}: {e}\n", path.display()),
            },
        },
    }
}

/// Same as [`execute`] inside a dedicated pool of `threads` workers.
pub fn execute_with_threads<I, S>(args: I, threads: usize) -> Execution
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| execute(args)),
        Err(e) => Execution {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: thread pool: {e}\n"),
        },
    }
}

/// Run, print, and return the exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let e = execute(args);
    print!("{}", e.stdout);
    eprint!("{}", e.stderr);
    e.code
}
