//! The `rmt` command line.
//!
//! Exit codes: 0 success, 1 precondition violation (structured report on
//! stderr), 2 verification failure, 64 unparseable arguments.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{parse_rational, Poly, Rational};
use crate::characters::{character, character_table};
use crate::ensemble::{Ensemble, Mode, Value};
use crate::error::{Error, Result};
use crate::fluctuations::{connected_correlator, genus_coefficient, xk_cumulant, xk_joint_central_moment};
use crate::moments::{charpoly_moment, charpoly_power_moment, schur_moment, trace_joint_moment};
use crate::mops::{genfun_sides, mop_eval, verify_dual_cauchy};
use crate::montecarlo::SamplerConfig;
use crate::partitions::Partition;
use crate::symfun::{schur_eval, schur_eval_bialternant};
use crate::verify::{mc_charpoly_check, mc_trace_check, run_suite, McSettings, Suite};
use crate::wick::{wick_connected, wick_trace_moment, Convention};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "rmt",
    version,
    about = "Exact moments of GUE, LUE and JUE random matrices",
    long_about = "Exact moments of GUE, LUE and JUE random matrices.\n\n\
        Partitions are comma-separated parts (\"4,2,1\"); rationals are p or p/q.\n\
        RMT_MAX_WEIGHT overrides the partition-weight bound."
)]
struct Cli {
    /// Output format; Laurent-valued commands default to json, the rest to text.
    #[arg(long, global = true, value_enum)]
    output: Option<Output>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct EnsembleArgs {
    /// gue, lue or jue
    #[arg(long, default_value = "gue")]
    ensemble: String,
    /// LUE parameter
    #[arg(long, value_parser = rational)]
    gamma: Option<Rational>,
    /// JUE parameter of the x^γ₁ factor
    #[arg(long, value_parser = rational)]
    gamma1: Option<Rational>,
    /// JUE parameter of the (1-x)^γ₂ factor
    #[arg(long, value_parser = rational)]
    gamma2: Option<Rational>,
}

impl EnsembleArgs {
    fn build(&self) -> Result<Ensemble> {
        Ensemble::from_name(&self.ensemble, self.gamma.clone(), self.gamma1.clone(), self.gamma2.clone())
    }
}

#[derive(Args, Debug, Clone)]
struct ModeArgs {
    /// Polynomial in N (default unless --n is given)
    #[arg(long, conflicts_with = "n")]
    symbolic: bool,
    /// Evaluate at this matrix size
    #[arg(long)]
    n: Option<u32>,
}

impl ModeArgs {
    fn mode(&self) -> Mode {
        match self.n {
            Some(n) => Mode::Fixed(n),
            None => Mode::Symbolic,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// E[∏ Tr M^{μ_j}]
    TraceMoment {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[arg(long, value_parser = partition)]
        mu: Partition,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// E[S_λ(M)]
    SchurMoment {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[arg(long, value_parser = partition)]
        lambda: Partition,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// E[∏_j det(t_j - M)] at distinct points, or E[det(t - M)^p] with --power
    Charpoly {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[arg(long)]
        n: u32,
        /// Distinct evaluation points
        #[arg(long, value_delimiter = ',', value_parser = rational, required_unless_present = "power")]
        points: Option<Vec<Rational>>,
        /// Coefficients of E[det(t - M)^p] in t
        #[arg(long, conflicts_with = "points")]
        power: Option<u32>,
    },
    /// Multivariate orthogonal polynomial Φ_λ at a point
    MopEval {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[arg(long, value_parser = partition)]
        lambda: Partition,
        #[arg(long, value_delimiter = ',', value_parser = rational)]
        points: Vec<Rational>,
    },
    /// Schur polynomial S_λ at a point
    SchurEval {
        #[arg(long, value_parser = partition)]
        lambda: Partition,
        #[arg(long, value_delimiter = ',', value_parser = rational)]
        points: Vec<Rational>,
        /// Use the ratio of alternants instead of Jacobi-Trudi
        #[arg(long)]
        bialternant: bool,
    },
    /// Character table of S_n, or a single value with --lambda and --mu
    CharTable {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = partition, requires = "mu")]
        lambda: Option<Partition>,
        #[arg(long, value_parser = partition, requires = "lambda")]
        mu: Option<Partition>,
    },
    /// E[∏ X_{k_i}] for the rescaled GUE
    XkMoment {
        /// Chebyshev degrees, comma separated
        #[arg(long, value_delimiter = ',')]
        ks: Vec<usize>,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// n-th cumulant of X_k
    Cumulant {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        order: usize,
    },
    /// Connected rescaled correlator of traces, or a genus coefficient
    Connected {
        #[arg(long, value_parser = partition)]
        mu: Partition,
        /// Print a_g instead of the correlator
        #[arg(long)]
        genus: Option<usize>,
    },
    /// Independent brute-force oracles
    Oracle {
        #[command(subcommand)]
        oracle: OracleCommand,
    },
    /// Numeric identity checks
    Check {
        #[command(subcommand)]
        check: CheckCommand,
    },
    /// Run a verification suite: paper-tables, wick, mc or all
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// GUE trace moments by summing over Wick pairings
    Wick {
        #[arg(long, value_parser = partition)]
        mu: Partition,
        #[arg(long, default_value = "unrescaled", value_parser = convention)]
        convention: Convention,
        /// Only gluings connecting all traces (rescaled)
        #[arg(long)]
        connected: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// ∏(t_i - x_j) against its expansion in orthogonal polynomials
    DualCauchy {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[arg(long, value_delimiter = ',', value_parser = rational)]
        t: Vec<Rational>,
        #[arg(long, value_delimiter = ',', value_parser = rational)]
        x: Vec<Rational>,
    },
    /// Truncated Gaussian generating function in the Schur basis
    Genfun {
        #[arg(long, default_value_t = 2)]
        vars: usize,
        #[arg(long, default_value_t = 6)]
        degree: usize,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name (alternative to --suite)
    #[arg(value_parser = suite, conflicts_with = "suite")]
    name: Option<Suite>,
    #[arg(long, value_parser = suite)]
    suite: Option<Suite>,
    /// Skip Monte Carlo inside `all`
    #[arg(long)]
    skip_mc: bool,
    #[command(flatten)]
    ensemble: EnsembleArgs,
    /// Matrix size for a single Monte Carlo check
    #[arg(long)]
    n: Option<usize>,
    /// Trace moment for a single Monte Carlo check
    #[arg(long, value_parser = partition)]
    mu: Option<Partition>,
    /// Characteristic polynomial points for a single Monte Carlo check
    #[arg(long, value_delimiter = ',', value_parser = rational, conflicts_with = "mu")]
    points: Option<Vec<Rational>>,
    #[arg(long, default_value_t = McSettings::default().samples)]
    samples: usize,
    #[arg(long, default_value_t = McSettings::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = McSettings::default().workers)]
    workers: usize,
}

fn partition(s: &str) -> std::result::Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

fn rational(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn convention(s: &str) -> std::result::Result<Convention, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a subcommand produced: text for humans and a JSON document.
struct Rendered {
    text: String,
    json: serde_json::Value,
    laurent_default: bool,
    exit: i32,
}

impl Rendered {
    fn new(text: impl Into<String>, json: serde_json::Value) -> Self {
        Rendered {
            text: text.into(),
            json,
            laurent_default: false,
            exit: EXIT_OK,
        }
    }

    fn value(v: &Value) -> Self {
        let mut r = Rendered::new(v.to_string(), v.to_json());
        r.laurent_default = matches!(v, Value::Laurent(_));
        r
    }

    fn of<T: Serialize>(text: impl Into<String>, data: &T) -> Self {
        Rendered::new(text, serde_json::to_value(data).expect("serializable output"))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let rendered = e.render().to_string();
            if informational {
                let _ = write!(out, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(err, "{rendered}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command) {
        Ok(r) => {
            let json = match cli.output {
                Some(Output::Json) => true,
                Some(Output::Text) => false,
                None => r.laurent_default,
            };
            let body = if json {
                serde_json::to_string_pretty(&r.json).expect("json")
            } else {
                r.text
            };
            let _ = writeln!(out, "{body}");
            r.exit
        }
        Err(e) => {
            let report = json!({ "error": e.kind(), "message": e.to_string() });
            let _ = writeln!(err, "{}", serde_json::to_string_pretty(&report).expect("json"));
            match e {
                Error::Parse(_) => EXIT_USAGE,
                _ => EXIT_PRECONDITION,
            }
        }
    }
}

fn t_poly(coeffs: &[Rational]) -> String {
    Poly::from_coeffs(coeffs.to_vec()).to_string().replace('N', "t")
}

fn dispatch(command: Command) -> Result<Rendered> {
    match command {
        Command::TraceMoment { ensemble, mu, mode } => {
            let r = trace_joint_moment(&ensemble.build()?, &mu, mode.mode())?;
            Ok(Rendered::of(r.value.to_string(), &r))
        }
        Command::SchurMoment { ensemble, lambda, mode } => {
            let r = schur_moment(&ensemble.build()?, &lambda, mode.mode())?;
            Ok(Rendered::of(r.value.to_string(), &r))
        }
        Command::Charpoly { ensemble, n, points, power } => {
            let e = ensemble.build()?;
            if let Some(p) = power {
                let coeffs = charpoly_power_moment(&e, n, p)?;
                let json: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                return Ok(Rendered::new(
                    t_poly(&coeffs),
                    json!({ "ensemble": e, "n": n, "power": p, "coeffs": json }),
                ));
            }
            let t = points.unwrap_or_default();
            let v = charpoly_moment(&e, n, &t)?;
            let shown: Vec<String> = t.iter().map(|x| x.to_string()).collect();
            Ok(Rendered::new(
                v.to_string(),
                json!({ "ensemble": e, "n": n, "points": shown, "value": v.to_string() }),
            ))
        }
        Command::MopEval { ensemble, lambda, points } => {
            let v = mop_eval(&ensemble.build()?, &lambda, &points)?;
            Ok(Rendered::new(v.to_string(), json!(v.to_string())))
        }
        Command::SchurEval { lambda, points, bialternant } => {
            let v = if bialternant {
                schur_eval_bialternant(&lambda, &points)?
            } else {
                schur_eval(&lambda, &points)
            };
            Ok(Rendered::new(v.to_string(), json!(v.to_string())))
        }
        Command::CharTable { n, lambda, mu } => {
            if let (Some(l), Some(m)) = (lambda, mu) {
                let v = character(&l, &m)?;
                return Ok(Rendered::new(v.to_string(), json!(v)));
            }
            let n = n.ok_or_else(|| Error::InvalidParameter("give --n, or --lambda and --mu".into()))?;
            let t = character_table(n)?;
            let mut text = String::new();
            let header: Vec<String> = t.partitions.iter().map(|p| p.to_string()).collect();
            text.push_str(&format!("λ \\ μ\t{}\n", header.join("\t")));
            for (lam, row) in t.partitions.iter().zip(&t.values) {
                let row: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                text.push_str(&format!("{lam}\t{}\n", row.join("\t")));
            }
            Ok(Rendered::of(text.trim_end(), t.as_ref()))
        }
        Command::XkMoment { ks, mode } => {
            Ok(Rendered::value(&xk_joint_central_moment(&ks, mode.mode())?))
        }
        Command::Cumulant { k, order } => Ok(Rendered::value(&Value::Laurent(xk_cumulant(k, order)?))),
        Command::Connected { mu, genus } => {
            if let Some(g) = genus {
                let a = genus_coefficient(&mu, g)?;
                return Ok(Rendered::new(a.to_string(), json!(a.to_string())));
            }
            let c = connected_correlator(&mu)?;
            Ok(Rendered::value(&Value::Laurent(c.value)))
        }
        Command::Oracle {
            oracle: OracleCommand::Wick { mu, convention, connected },
        } => {
            if connected {
                return Ok(Rendered::value(&Value::Laurent(wick_connected(&mu)?)));
            }
            Ok(Rendered::value(&wick_trace_moment(&mu, convention)?))
        }
        Command::Check { check } => run_check(check),
        Command::Verify(args) => run_verify(args),
    }
}

fn run_check(check: CheckCommand) -> Result<Rendered> {
    let (name, lhs, rhs, pass) = match check {
        CheckCommand::DualCauchy { ensemble, t, x } => {
            let (l, r) = verify_dual_cauchy(&ensemble.build()?, &t, &x)?;
            ("dual-cauchy", l.to_string(), r.to_string(), l == r)
        }
        CheckCommand::Genfun { vars, degree } => {
            let (l, r) = genfun_sides(vars, degree)?;
            let pass = l == r;
            (
                "genfun",
                format!("{} terms", l.terms().count()),
                format!("{} terms", r.terms().count()),
                pass,
            )
        }
    };
    let mut r = Rendered::new(
        format!("{name}: {}\n  lhs = {lhs}\n  rhs = {rhs}", if pass { "ok" } else { "FAILED" }),
        json!({ "check": name, "lhs": lhs, "rhs": rhs, "pass": pass }),
    );
    if !pass {
        r.exit = EXIT_VERIFY_FAILED;
    }
    Ok(r)
}

fn run_verify(args: VerifyArgs) -> Result<Rendered> {
    let suite = args.name.or(args.suite).unwrap_or(Suite::All);
    let settings = McSettings {
        samples: args.samples,
        seed: args.seed,
        workers: args.workers,
    };
    if suite == Suite::Mc && (args.mu.is_some() || args.points.is_some()) {
        let n = args
            .n
            .ok_or_else(|| Error::InvalidParameter("a single Monte Carlo check needs --n".into()))?;
        let config = SamplerConfig::new(args.ensemble.build()?, n, settings.samples, settings.seed)
            .with_workers(settings.workers);
        let check = match (&args.mu, &args.points) {
            (Some(mu), _) => mc_trace_check(&config, mu)?,
            (None, Some(t)) => mc_charpoly_check(&config, t)?,
            _ => unreachable!(),
        };
        let mut r = Rendered::of(
            format!(
                "{}: {} ± {:.4e} vs {} (z = {:.2}) {}",
                check.label,
                check.estimate,
                check.se,
                check.target,
                check.z,
                if check.pass { "ok" } else { "FAILED" }
            ),
            &check,
        );
        r.laurent_default = true;
        if !check.pass {
            r.exit = EXIT_VERIFY_FAILED;
        }
        return Ok(r);
    }
    let report = run_suite(suite, args.skip_mc, settings)?;
    let mut text = String::new();
    for c in &report.criteria {
        text.push_str(&format!(
            "[{}] {:>2}. {} ({} checks)\n",
            if c.passed() { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            c.checks.len()
        ));
        for f in c.checks.iter().filter(|x| !x.pass) {
            text.push_str(&format!("       {}: {} != {}\n", f.name, f.lhs, f.rhs));
        }
    }
    let failed = report.failures().len();
    text.push_str(&format!("{} identities checked, {failed} failed", report.checked()));
    let json = json!({
        "suite": report.suite,
        "checked": report.checked(),
        "failed": failed,
        "criteria": report.criteria,
    });
    let mut r = Rendered::new(text, json);
    if !report.passed() {
        r.exit = EXIT_VERIFY_FAILED;
    }
    Ok(r)
}
