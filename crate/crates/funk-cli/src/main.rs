//! Command-line front end. Subcommands: eval, field, distance, verify,
//! zermelo. Exit codes: 0 success, 1 verification failure, 2 usage or
//! domain error. All numeric output carries 17 significant digits so JSON
//! and CSV round-trip doubles exactly and runs are byte-identical for a
//! fixed config and seed.

use clap::{Args, Parser, Subcommand};
use funk_finsler::curvature::{curvature_report, s_curvature};
use funk_finsler::distance::{funk_distance, integrate_f_along_segment};
use funk_finsler::metric::{bh_density, eval_f, metric_eval};
use funk_finsler::verify::{run_verification, VerificationReport};
use funk_finsler::zermelo::to_zermelo;
use funk_finsler::{DiscChart, Point2, Tangent2, TangentSample};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "funk", version, about = "Funk-Finsler metric engine on constant-curvature discs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate all metric, curvature, and navigation data at one sample
    Eval(EvalArgs),
    /// Emit a CSV field of one quantity over a polar grid of samples
    Field(FieldArgs),
    /// Closed-form distance between two points, with a quadrature check
    Distance(DistanceArgs),
    /// Run the full verification suite and emit a JSON report
    Verify(VerifyArgs),
    /// Zermelo navigation data (sea metric, wind, c) at one point
    Zermelo(ZermeloArgs),
}

#[derive(Args)]
struct ChartArgs {
    /// Curvature sign: -1, 0, or 1
    #[arg(long, allow_hyphen_values = true)]
    eps: i32,
    /// Disc radius (r <= 1 required when eps != 0)
    #[arg(long, default_value_t = 1.0)]
    r: f64,
}

impl ChartArgs {
    fn chart(&self) -> Result<DiscChart, CliError> {
        DiscChart::new(self.eps, self.r).map_err(CliError::domain)
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    chart: ChartArgs,
    /// Base point as "x1,x2"
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    x: [f64; 2],
    /// Direction as "xi1,xi2"
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    xi: [f64; 2],
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct FieldArgs {
    #[command(flatten)]
    chart: ChartArgs,
    /// Quantity: F, S, K, s_gap, k_gap, or bh_density
    #[arg(long)]
    quantity: String,
    /// Radial and angular resolution of the base-point grid (nx x nx points)
    #[arg(long)]
    nx: usize,
    /// Number of directions per base point
    #[arg(long, default_value_t = 8)]
    ntheta: usize,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct DistanceArgs {
    #[command(flatten)]
    chart: ChartArgs,
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    x: [f64; 2],
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    y: [f64; 2],
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    chart: ChartArgs,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct ZermeloArgs {
    #[command(flatten)]
    chart: ChartArgs,
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    x: [f64; 2],
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected \"a,b\", got {s:?}"));
    }
    let a: f64 = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let b: f64 = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    Ok([a, b])
}

struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    fn domain(e: funk_finsler::FunkError) -> Self {
        CliError {
            code: 2,
            msg: e.to_string(),
        }
    }
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: 2,
            msg: msg.into(),
        }
    }
}

// -- serialization helpers (17 significant digits, deterministic) -----------

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn jvec(v: &[f64]) -> String {
    let inner: Vec<String> = v.iter().map(|x| num(*x)).collect();
    format!("[{}]", inner.join(","))
}

fn jmat(m: &funk_finsler::mat::Mat2) -> String {
    format!("[{},{}]", jvec(&m.0[0]), jvec(&m.0[1]))
}

fn jstr(s: &str) -> String {
    // the strings emitted here never contain characters needing escapes
    format!("\"{s}\"")
}

fn write_output(out: &Option<std::path::PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| CliError::usage(format!("stdout: {e}")))
        }
    }
}

fn thread_cap() -> usize {
    if let Ok(v) = std::env::var("FUNKFINSLER_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

// -- subcommands ------------------------------------------------------------

fn cmd_eval(a: &EvalArgs) -> Result<(String, u8), CliError> {
    let chart = a.chart.chart()?;
    let s = TangentSample::new(Point2::from(a.x), Tangent2::from(a.xi));
    let me = metric_eval(&chart, &s).map_err(CliError::domain)?;
    let cr = curvature_report(&chart, &s).map_err(CliError::domain)?;
    let z = to_zermelo(&chart, s.base).map_err(CliError::domain)?;
    let fields = [
        ("eps".to_string(), chart.eps().to_string()),
        ("r".to_string(), num(chart.r())),
        ("x".to_string(), jvec(&a.x)),
        ("xi".to_string(), jvec(&a.xi)),
        ("F".to_string(), num(me.f)),
        ("alpha".to_string(), num(me.alpha)),
        ("beta".to_string(), num(me.beta)),
        ("beta_norm_sq".to_string(), num(me.beta_norm_sq)),
        ("a".to_string(), jmat(&me.a)),
        ("a_inv".to_string(), jmat(&me.a_inv)),
        ("b".to_string(), jvec(&me.b)),
        ("g".to_string(), jmat(&me.g)),
        ("G".to_string(), jvec(&cr.spray)),
        ("S".to_string(), num(cr.s)),
        ("R".to_string(), jmat(&cr.r)),
        ("ric".to_string(), num(cr.ric)),
        ("K".to_string(), num(cr.k)),
        ("phi".to_string(), num(cr.phi)),
        ("psi".to_string(), num(cr.psi)),
        ("tau".to_string(), jvec(&cr.tau)),
        ("s_gap".to_string(), num(cr.s_gap)),
        ("k_gap".to_string(), num(cr.k_gap)),
        ("bh_density".to_string(), num(bh_density(&chart, s.base).map_err(CliError::domain)?)),
        ("h".to_string(), jmat(&z.h)),
        ("W".to_string(), jvec(&z.w)),
        ("c".to_string(), num(z.c)),
    ];
    Ok((json_object(&fields), 0))
}

fn json_object(fields: &[(String, String)]) -> String {
    let inner: Vec<String> = fields
        .iter()
        .map(|(k, v)| format!("{}:{}", jstr(k), v))
        .collect();
    format!("{{{}}}\n", inner.join(","))
}

fn cmd_field(a: &FieldArgs) -> Result<(String, u8), CliError> {
    let chart = a.chart.chart()?;
    if a.nx == 0 || a.ntheta == 0 {
        return Err(CliError::usage("empty grid: nx and ntheta must be positive"));
    }
    enum Q {
        F,
        S,
        K,
        SGap,
        KGap,
        BhDensity,
    }
    let q = match a.quantity.as_str() {
        "F" => Q::F,
        "S" => Q::S,
        "K" => Q::K,
        "s_gap" => Q::SGap,
        "k_gap" => Q::KGap,
        "bh_density" => Q::BhDensity,
        other => {
            return Err(CliError::usage(format!(
                "unknown quantity {other:?}: expected F, S, K, s_gap, k_gap, or bh_density"
            )))
        }
    };
    let mut csv = String::from("x1,x2,xi1,xi2,value\n");
    // row-major over the polar base grid, direction-minor
    for i in 0..a.nx {
        let rad = 0.95 * chart.r() * (i as f64 + 0.5) / a.nx as f64;
        for j in 0..a.nx {
            let ang = 2.0 * std::f64::consts::PI * j as f64 / a.nx as f64;
            let x = Point2::new(rad * ang.cos(), rad * ang.sin());
            for k in 0..a.ntheta {
                let th = 2.0 * std::f64::consts::PI * k as f64 / a.ntheta as f64;
                let xi = Tangent2::new(th.cos(), th.sin());
                let s = TangentSample::new(x, xi);
                let v = match q {
                    Q::F => eval_f(&chart, &s).map_err(CliError::domain)?,
                    Q::S => s_curvature(&chart, &s).map_err(CliError::domain)?,
                    Q::K => funk_finsler::curvature::flag_curvature(&chart, &s)
                        .map_err(CliError::domain)?,
                    Q::SGap => {
                        funk_finsler::curvature::bound_gaps(&chart, &s)
                            .map_err(CliError::domain)?
                            .s_gap
                    }
                    Q::KGap => {
                        funk_finsler::curvature::bound_gaps(&chart, &s)
                            .map_err(CliError::domain)?
                            .k_gap
                    }
                    Q::BhDensity => bh_density(&chart, x).map_err(CliError::domain)?,
                };
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    num(x.x1),
                    num(x.x2),
                    num(xi.xi1),
                    num(xi.xi2),
                    num(v)
                ));
            }
        }
    }
    Ok((csv, 0))
}

fn cmd_distance(a: &DistanceArgs) -> Result<(String, u8), CliError> {
    let chart = a.chart.chart()?;
    let x = Point2::from(a.x);
    let y = Point2::from(a.y);
    let d_xy = funk_distance(&chart, x, y).map_err(CliError::domain)?;
    let d_yx = funk_distance(&chart, y, x).map_err(CliError::domain)?;
    let quad = integrate_f_along_segment(&chart, x, y, 512).map_err(CliError::domain)?;
    let boundary = if a.x == a.y {
        a.x
    } else {
        let dir = Tangent2::new(y.x1 - x.x1, y.x2 - x.x2);
        let b = chart
            .ray_boundary_intersection(x, dir)
            .map_err(CliError::domain)?;
        [b.x1, b.x2]
    };
    let fields = [
        ("eps".to_string(), chart.eps().to_string()),
        ("r".to_string(), num(chart.r())),
        ("x".to_string(), jvec(&a.x)),
        ("y".to_string(), jvec(&a.y)),
        ("d_xy".to_string(), num(d_xy)),
        ("d_yx".to_string(), num(d_yx)),
        ("boundary_point_xy".to_string(), jvec(&boundary)),
        ("quadrature_check".to_string(), num((d_xy - quad).abs())),
    ];
    Ok((json_object(&fields), 0))
}

fn report_json(report: &VerificationReport) -> String {
    let checks: Vec<String> = report
        .checks
        .iter()
        .map(|c| {
            format!(
                "{{\"name\":{},\"samples\":{},\"max_violation\":{},\"tolerance\":{},\"pass\":{}}}",
                jstr(&c.name),
                c.samples,
                num(c.max_violation),
                num(c.tolerance),
                c.pass
            )
        })
        .collect();
    let notes: Vec<String> = report.notes.iter().map(|n| jstr(n)).collect();
    format!(
        "{{\"eps\":{},\"r\":{},\"seed\":{},\"rng\":{},\"version\":{},\"pass\":{},\"notes\":[{}],\"checks\":[{}]}}\n",
        report.eps,
        num(report.r),
        report.seed,
        jstr(report.rng),
        jstr(report.version),
        report.pass,
        notes.join(","),
        checks.join(",")
    )
}

fn cmd_verify(a: &VerifyArgs) -> Result<(String, u8), CliError> {
    let chart = a.chart.chart()?;
    let report = run_verification(&chart, a.seed, thread_cap());
    let code = if report.pass { 0 } else { 1 };
    Ok((report_json(&report), code))
}

fn cmd_zermelo(a: &ZermeloArgs) -> Result<(String, u8), CliError> {
    let chart = a.chart.chart()?;
    let z = to_zermelo(&chart, Point2::from(a.x)).map_err(CliError::domain)?;
    let fields = [
        ("eps".to_string(), chart.eps().to_string()),
        ("r".to_string(), num(chart.r())),
        ("x".to_string(), jvec(&a.x)),
        ("h".to_string(), jmat(&z.h)),
        ("W".to_string(), jvec(&z.w)),
        ("c".to_string(), num(z.c)),
    ];
    Ok((json_object(&fields), 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out_path, result) = match &cli.cmd {
        Cmd::Eval(a) => (a.out.clone(), cmd_eval(a)),
        Cmd::Field(a) => (a.out.clone(), cmd_field(a)),
        Cmd::Distance(a) => (a.out.clone(), cmd_distance(a)),
        Cmd::Verify(a) => (a.out.clone(), cmd_verify(a)),
        Cmd::Zermelo(a) => (a.out.clone(), cmd_zermelo(a)),
    };
    match result {
        Ok((content, code)) => {
            if let Err(e) = write_output(&out_path, &content) {
                eprintln!("error: {}", e.msg);
                return ExitCode::from(e.code);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
