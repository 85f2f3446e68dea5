//! Command-line front end: argument parsing, dispatch to `mahler-core`, and
//! JSON / CSV rendering. [`run_cli`] does everything except touching the
//! process streams, so it can be tested directly.

use clap::{Args, Parser, Subcommand, ValueEnum};
use mahler_core::lattice::{hnf, lawton_vector, q_value, shnf};
use mahler_core::laurent::{coefficient_bounds, parse_poly};
use mahler_core::measure_multi::{
    jensen_2d, lawton_estimate, measure_of_family_member, qmc_estimate, LawtonSchedule, MeasureConfig,
};
use mahler_core::spectrum::{
    embed_in_linear_form, lehmer_element, linear_form_f_n, max_element, mb_generators, sample_measure_set_ranks,
};
use mahler_core::{Error, IntMatrix, LaurentPoly};
use serde_json::{json, Value};
use std::fmt::Write as _;

/// Result of one invocation: exit status and the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "mahler",
    version,
    about = "Mahler measures of Laurent polynomials and their monomial substitutions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Measure of F, or of F_A with --matrix.
    Measure {
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Estimator; `auto` picks by the number of variables of F_A.
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[command(flatten)]
        measure: MeasureArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Hermite normal form H = U·A with transform.
    Hnf {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Saturated Hermite normal form with A = V·H.
    Shnf {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Smallest sup-norm of a nonzero integer vector orthogonal to r.
    Q {
        /// Comma-separated integers.
        #[arg(long, conflicts_with_all = ["n", "len"])]
        vector: Option<String>,
        /// Use the vector (1, n, n^2, ...) instead.
        #[arg(long, requires = "len")]
        n: Option<u64>,
        #[arg(long, requires = "n")]
        len: Option<usize>,
        /// Largest sup-norm shell to search.
        #[arg(long, default_value_t = 64)]
        bound: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Measures of F_H over saturated Hermite forms of bounded height.
    Spectrum {
        #[command(flatten)]
        sample: SampleArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Smallest positive and largest sampled measure.
    Lehmer {
        #[command(flatten)]
        sample: SampleArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Lawton specialization trace as (n, estimate) rows.
    Converge {
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        measure: MeasureArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Lower and upper bounds for the measure from the coefficients.
    Bounds {
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Write (z1 - 1)·F as a substitution of the linear form with 2n terms.
    Embed {
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Signed partitions of b <= bound with their linear forms.
    Mbgen {
        #[arg(long)]
        bound: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
struct PolyArgs {
    /// Polynomial text, e.g. `1 + z1 - 2*z2^-1`.
    #[arg(long, required_unless_present_any = ["poly_file", "linear_form"])]
    poly: Option<String>,
    /// File with polynomial text or its JSON form.
    #[arg(long, conflicts_with = "poly")]
    poly_file: Option<String>,
    /// Use the linear form z1 - z2 + z3 - ... with 2n terms.
    #[arg(long, conflicts_with_all = ["poly", "poly_file"])]
    linear_form: Option<usize>,
    /// Number of variables; inferred from the text when omitted.
    #[arg(short = 'k')]
    k: Option<usize>,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    /// Integer matrix as JSON, e.g. `[[1,2],[0,3]]`.
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long, conflicts_with = "matrix")]
    matrix_file: Option<String>,
}

#[derive(Args, Debug)]
struct MeasureArgs {
    /// Lawton specialization parameters, e.g. `5,9,13`.
    #[arg(long)]
    schedule: Option<String>,
    /// Largest specialized degree attempted.
    #[arg(long)]
    degree_cap: Option<u64>,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance for merging sampled values.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    poly: PolyArgs,
    #[arg(long)]
    height: u64,
    #[arg(long, default_value_t = 0)]
    min_rank: usize,
    /// Largest rank sampled; all ranks by default.
    #[arg(long)]
    max_rank: Option<usize>,
    #[command(flatten)]
    measure: MeasureArgs,
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output here instead of standard output.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Lawton,
    Jensen,
    Qmc,
}

/// Failures, split by exit status.
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::VariableOutOfRange { .. }
            | Error::DimensionMismatch { .. }
            | Error::InvalidArgument(_)
            | Error::Json(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs one command line (`argv[0]` is the program name). Exit status 0 on
/// success, 1 on domain errors, 2 on usage errors.
pub fn run_cli<I, T>(argv: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CliOutcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let (out, rendered) = match execute(&cli.command) {
        Ok(r) => r,
        Err(Failure::Usage(m)) => return failure(2, m),
        Err(Failure::Domain(m)) => return failure(1, m),
    };
    match out {
        Some(path) => match std::fs::write(&path, &rendered) {
            Ok(()) => CliOutcome {
                code: 0,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => failure(1, format!("cannot write {path}: {e}")),
        },
        None => CliOutcome {
            code: 0,
            stdout: rendered,
            stderr: String::new(),
        },
    }
}

fn failure(code: i32, message: String) -> CliOutcome {
    CliOutcome {
        code,
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
    }
}

fn execute(cmd: &Command) -> CliResult<(Option<String>, String)> {
    let (out, body) = match cmd {
        Command::Measure {
            poly,
            matrix,
            method,
            measure,
            out,
        } => {
            let f = read_poly(poly)?;
            let cfg = measure_config(measure)?;
            let a = match read_matrix(matrix)? {
                Some(a) => a,
                None => IntMatrix::identity(f.k()),
            };
            let r = match method {
                MethodArg::Auto => measure_of_family_member(&f, &a, &cfg)?,
                m => {
                    if a.cols() != f.k() {
                        return Err(Error::DimensionMismatch {
                            context: "substitution matrix columns",
                            expected: f.k(),
                            found: a.cols(),
                        }
                        .into());
                    }
                    let h = shnf(&a).h;
                    let g = f.substitute(&h)?;
                    if g.is_zero() {
                        return Err(Error::VanishingSubstitution.into());
                    }
                    let mut r = match m {
                        MethodArg::Lawton => lawton_estimate(&g, &cfg)?,
                        MethodArg::Jensen => jensen_2d(&g, &cfg)?,
                        _ => qmc_estimate(&g, &cfg)?,
                    };
                    r.detail.h = Some(h);
                    r
                }
            };
            json_only(out, "measure")?;
            let body = json!({
                "command": "measure",
                "polynomial": f.to_string(),
                "matrix": a,
                "method": method_name(*method),
                "config": cfg,
                "result": r,
            });
            (out, pretty(&body))
        }
        Command::Hnf { matrix, out } => {
            json_only(out, "hnf")?;
            let a = read_matrix(matrix)?.ok_or_else(|| usage("hnf needs --matrix or --matrix-file"))?;
            let r = hnf(&a);
            (
                out,
                pretty(&json!({ "command": "hnf", "config": { "matrix": a }, "result": r })),
            )
        }
        Command::Shnf { matrix, out } => {
            json_only(out, "shnf")?;
            let a = read_matrix(matrix)?.ok_or_else(|| usage("shnf needs --matrix or --matrix-file"))?;
            let r = shnf(&a);
            (
                out,
                pretty(&json!({ "command": "shnf", "config": { "matrix": a }, "result": r })),
            )
        }
        Command::Q {
            vector,
            n,
            len,
            bound,
            out,
        } => {
            json_only(out, "q")?;
            let r: Vec<_> = match (vector, n, len) {
                (Some(v), _, _) => {
                    let m = IntMatrix::from_json_str(&format!("[[{v}]]"))
                        .map_err(|_| usage("--vector must be comma-separated integers"))?;
                    m.row(0).to_vec()
                }
                (None, Some(n), Some(len)) => lawton_vector(*n, *len)?,
                _ => return Err(usage("q needs --vector or both --n and --len")),
            };
            let q = q_value(&r, *bound)?;
            let shown: Vec<String> = r.iter().map(ToString::to_string).collect();
            let body = json!({
                "command": "q",
                "config": { "vector": shown, "bound": bound },
                "result": { "q": q },
            });
            (out, pretty(&body))
        }
        Command::Spectrum { sample, out } | Command::Lehmer { sample, out } => {
            let lehmer = matches!(cmd, Command::Lehmer { .. });
            let f = read_poly(&sample.poly)?;
            let cfg = measure_config(&sample.measure)?;
            let hi = sample.max_rank.unwrap_or(f.k());
            let s = sample_measure_set_ranks(&f, sample.height, sample.min_rank..=hi, &cfg)?;
            if lehmer {
                json_only(out, "lehmer")?;
                let body = json!({
                    "command": "lehmer",
                    "polynomial": f.to_string(),
                    "config": { "height": s.height, "ranks": s.ranks, "measure": cfg },
                    "result": {
                        "lehmer_element": lehmer_element(&s),
                        "max_element": max_element(&s)?,
                        "entries": s.entries.len(),
                        "distinct_values": s.distinct_values.len(),
                        "failures": s.failures.len(),
                    },
                });
                (out, pretty(&body))
            } else {
                let text = match out.format {
                    Format::Json => pretty(&json!({ "command": "spectrum", "config": cfg, "result": s })),
                    Format::Csv => {
                        let mut t = config_comment(&json!({
                            "polynomial": f.to_string(), "height": s.height, "ranks": s.ranks, "measure": cfg,
                        }));
                        t.push_str("h,value,error_bound,method\n");
                        for e in &s.entries {
                            let method = serde_json::to_value(e.result.method).unwrap_or(Value::Null);
                            let _ = writeln!(
                                t,
                                "\"{}\",{},{},{}",
                                e.h,
                                e.result.value,
                                e.result.error_bound,
                                method.as_str().unwrap_or("")
                            );
                        }
                        t
                    }
                };
                (out, text)
            }
        }
        Command::Converge { poly, measure, out } => {
            let f = read_poly(poly)?;
            let cfg = measure_config(measure)?;
            let r = lawton_estimate(&f, &cfg)?;
            let text = match out.format {
                Format::Json => {
                    let body = json!({
                        "command": "converge",
                        "polynomial": f.to_string(),
                        "config": cfg,
                        "result": r,
                    });
                    pretty(&body)
                }
                Format::Csv => {
                    let mut t = config_comment(&json!({ "polynomial": f.to_string(), "measure": cfg }));
                    t.push_str("n,estimate\n");
                    for p in &r.detail.trace {
                        let _ = writeln!(t, "{},{}", p.n, p.estimate);
                    }
                    t
                }
            };
            (out, text)
        }
        Command::Bounds { poly, out } => {
            json_only(out, "bounds")?;
            let f = read_poly(poly)?;
            let (lo, hi) = coefficient_bounds(&f)?;
            let body = json!({
                "command": "bounds",
                "polynomial": f.to_string(),
                "config": {},
                "result": { "lower": lo, "upper": hi },
            });
            (out, pretty(&body))
        }
        Command::Embed { poly, out } => {
            json_only(out, "embed")?;
            let f = read_poly(poly)?;
            let e = embed_in_linear_form(&f)?;
            let body = json!({
                "command": "embed",
                "polynomial": f.to_string(),
                "config": {},
                "result": { "n": e.n, "a": e.a, "g": e.g.to_string() },
            });
            (out, pretty(&body))
        }
        Command::Mbgen { bound, out } => {
            json_only(out, "mbgen")?;
            let gens = mb_generators(*bound)?;
            let list: Vec<Value> = gens
                .iter()
                .map(|(p, form)| json!({ "parts": p.parts, "b": p.total(), "form": form.to_string() }))
                .collect();
            let body = json!({
                "command": "mbgen",
                "config": { "bound": bound },
                "result": { "count": list.len(), "generators": list },
            });
            (out, pretty(&body))
        }
    };
    Ok((out.out.clone(), body))
}

fn usage(m: &str) -> Failure {
    Failure::Usage(m.to_string())
}

fn json_only(out: &OutArgs, command: &str) -> CliResult<()> {
    if out.format == Format::Csv {
        return Err(Failure::Usage(format!(
            "{command} output is JSON only; CSV is offered for spectrum and converge"
        )));
    }
    Ok(())
}

fn method_name(m: MethodArg) -> &'static str {
    match m {
        MethodArg::Auto => "auto",
        MethodArg::Lawton => "lawton",
        MethodArg::Jensen => "jensen",
        MethodArg::Qmc => "qmc",
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn config_comment(v: &Value) -> String {
    format!("# config: {v}\n")
}

fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))
}

fn read_poly(args: &PolyArgs) -> CliResult<LaurentPoly> {
    let f = if let Some(n) = args.linear_form {
        linear_form_f_n(n)?
    } else {
        let text = match (&args.poly, &args.poly_file) {
            (Some(t), _) => t.clone(),
            (None, Some(p)) => read_file(p)?,
            (None, None) => return Err(usage("a polynomial is required (--poly or --poly-file)")),
        };
        let trimmed = text.trim();
        if trimmed.starts_with('{') {
            LaurentPoly::from_json_str(trimmed)?
        } else {
            match args.k {
                Some(k) => parse_poly(trimmed, k)?,
                None => trimmed.parse()?,
            }
        }
    };
    match args.k {
        Some(k) if k > f.k() => Ok(f.extend_vars(k)?),
        Some(k) if k < f.k() => Err(Error::VariableOutOfRange { index: f.k(), k }.into()),
        _ => Ok(f),
    }
}

fn read_matrix(args: &MatrixArgs) -> CliResult<Option<IntMatrix>> {
    let text = match (&args.matrix, &args.matrix_file) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => read_file(p)?,
        (None, None) => return Ok(None),
    };
    Ok(Some(IntMatrix::from_json_str(text.trim())?))
}

fn measure_config(args: &MeasureArgs) -> CliResult<MeasureConfig> {
    let mut cfg = MeasureConfig::default();
    if args.schedule.is_some() || args.degree_cap.is_some() {
        let n_values = match &args.schedule {
            Some(s) => s
                .split(',')
                .map(|p| p.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| usage("--schedule must be comma-separated positive integers"))?,
            None => cfg.schedule.n_values.clone(),
        };
        cfg.schedule = LawtonSchedule::new(n_values, args.degree_cap.unwrap_or(cfg.schedule.degree_cap))?;
    }
    if let Some(n) = args.nodes {
        cfg.nodes = n;
    }
    if let Some(s) = args.samples {
        cfg.samples = s;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(t) = args.tol {
        cfg.tolerance = t;
    }
    cfg.validate()?;
    Ok(cfg)
}
