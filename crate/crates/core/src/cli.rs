//! Command-line front end: argument parsing, dispatch and output formatting.
//!
//! Exit codes: 0 on success, 1 on a domain error (the error name is printed
//! on standard error), 2 on configuration or usage errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::certificate::{verify_certificate, Certificate};
use crate::config::{Job, JobConfig};
use crate::eisenstein::{constant_term, dominating_series, looijenga_count, rank1_sum_bound, SpectralParameter, TitsPolicy};
use crate::lattice::{is_real_root, norm, positive_roots_up_to_height, WeightVector};
use crate::property::{admissible_word, check_property};
use crate::rational::{format_rational, parse_rational};
use crate::real::{PrecisionContext, Real};
use crate::special::{c_infinity, xi_ratio};
use crate::weyl::{enumerate, tits_reduce, WeylElement};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "kmes", version, about = "Kac-Moody root systems, Weyl group series and Eisenstein constant terms")]
pub struct Cli {
    /// JSON job configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Working decimal precision; overrides precision_digits from the config.
    #[arg(long, global = true)]
    pub digits: Option<u32>,
    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a configuration and report matrix, spectral parameter and point data.
    Validate {
        /// Configuration file (alternative to --config).
        path: Option<PathBuf>,
    },
    /// List positive roots up to a height as CSV.
    Roots {
        #[arg(long)]
        max_height: u64,
    },
    /// Enumerate the Weyl group by length as JSON.
    Weyl {
        #[arg(long)]
        max_length: Option<usize>,
        #[arg(long)]
        count_only: bool,
    },
    /// Decomposition checks and admissible words.
    #[command(subcommand)]
    Property(PropertyCommand),
    /// Truncated constant term as a shell table (CSV).
    ConstantTerm(SeriesArgs),
    /// Truncated dominating series as a shell table (CSV).
    Dominating {
        #[arg(long = "M")]
        m: Option<String>,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// Count orbit points above a height cutoff (JSON).
    Looijenga {
        #[arg(long = "N")]
        n: Option<String>,
        #[arg(long, default_value_t = 1000)]
        cap_length: usize,
    },
    /// Rank-one sum bound (JSON).
    Rank1 {
        #[arg(long)]
        s: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        x: String,
    },
    /// xi(s)/xi(s+1) as a decimal string.
    ZetaRatio {
        #[arg(long)]
        s: String,
    },
    /// Gamma_R(s)/Gamma_R(s+1) as a decimal string.
    CInfinity {
        #[arg(long)]
        s: String,
    },
    /// Re-verify a JSON certificate produced by `property check`.
    VerifyCertificate { path: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum PropertyCommand {
    /// Check every element up to a length; prints a JSON certificate.
    Check {
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Find an admissible word for the element given by a reduced word.
    Admissible {
        /// Comma-separated 1-based letters, e.g. 1,2,1.
        #[arg(long, value_delimiter = ',')]
        word: Vec<usize>,
    },
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long)]
    pub max_length: Option<usize>,
    /// Evaluate even if the point is not in the interior of the Tits cone.
    #[arg(long)]
    pub force: bool,
}

/// Parses `args` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::Config(format!("cannot build thread pool: {e}"))),
        },
        None => execute(&cli),
    };
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            if matches!(e, Error::Config(_)) {
                2
            } else {
                1
            }
        }
    }
}

fn load_job(cli: &Cli, path: Option<&PathBuf>) -> Result<Job> {
    let path = path
        .or(cli.config.as_ref())
        .ok_or_else(|| Error::Config("this command needs a configuration (--config <file>)".into()))?;
    let mut job = Job::from_config(&JobConfig::from_path(path)?)?;
    if let Some(d) = cli.digits {
        job.precision = PrecisionContext::new(d)?;
    }
    Ok(job)
}

fn context(cli: &Cli) -> Result<PrecisionContext> {
    match cli.digits {
        Some(d) => PrecisionContext::new(d),
        None => match &cli.config {
            Some(_) => Ok(load_job(cli, None)?.precision),
            None => Ok(PrecisionContext::default()),
        },
    }
}

fn arg_rational(text: &str, name: &str) -> Result<BigRational> {
    parse_rational(text).map_err(|e| Error::Config(format!("--{name}: {e}")))
}

fn required<T: Clone>(value: &Option<T>, what: &str) -> Result<T> {
    value.clone().ok_or_else(|| Error::Config(format!("missing {what}")))
}

fn max_length(flag: Option<usize>, job: &Job) -> Result<usize> {
    flag.or(job.max_length).ok_or_else(|| Error::Config("missing max_length (flag or config)".into()))
}

fn tits(job: &Job, force: bool) -> TitsPolicy {
    TitsPolicy { cap: job.tits_cap, force }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Validate { path } => validate(&load_job(cli, path.as_ref())?),
        Command::Roots { max_height } => {
            let job = load_job(cli, None)?;
            let cm = &job.cartan;
            let r = cm.rank();
            let mut out = String::new();
            let header: Vec<String> = (1..=r).map(|i| format!("m{i}")).collect();
            out.push_str(&format!("{},height,kind,norm\n", header.join(",")));
            for root in positive_roots_up_to_height(cm, *max_height) {
                let coords: Vec<String> = root.coords().iter().map(|c| c.to_string()).collect();
                let kind = if is_real_root(cm, &root) { "real" } else { "imaginary" };
                out.push_str(&format!("{},{},{kind},{}\n", coords.join(","), root.height(), norm(cm, &root)));
            }
            Ok(out)
        }
        Command::Weyl { max_length: flag, count_only } => {
            let job = load_job(cli, None)?;
            let l = max_length(*flag, &job)?;
            let shells: Vec<_> = enumerate(&job.cartan, l).collect();
            let counts: Vec<usize> = shells.iter().map(|s| s.elements.len()).collect();
            let mut report = json!({ "rank": job.cartan.rank(), "max_length": l, "counts": counts });
            if !count_only {
                report["shells"] = shells
                    .iter()
                    .map(|s| {
                        json!({
                            "length": s.length,
                            "words": s.elements.iter().map(WeylElement::word_one_based).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
            }
            Ok(pretty(&report))
        }
        Command::Property(PropertyCommand::Check { max_length: flag }) => {
            let job = load_job(cli, None)?;
            let l = max_length(*flag, &job)?;
            let report = check_property(&job.cartan, l);
            Ok(pretty(&Certificate::from_report(&job.cartan, &report).to_json()))
        }
        Command::Property(PropertyCommand::Admissible { word }) => {
            let job = load_job(cli, None)?;
            let letters = crate::weyl::word_from_one_based(word)?;
            let w = WeylElement::from_word(&job.cartan, &letters)?;
            let adm = admissible_word(&job.cartan, &w)?;
            let one_based: Vec<usize> = adm.word().iter().map(|s| s + 1).collect();
            Ok(pretty(&json!({ "word": word, "admissible_word": one_based })))
        }
        Command::ConstantTerm(args) => {
            let job = load_job(cli, None)?;
            let lambda = SpectralParameter::new(required(&job.lambda, "lambda")?);
            let x = required(&job.point, "point")?;
            let l = max_length(args.max_length, &job)?;
            Ok(constant_term(&job.cartan, &lambda, &x, l, &job.precision, tits(&job, args.force))?.to_csv())
        }
        Command::Dominating { m, series } => {
            let job = load_job(cli, None)?;
            let lambda = SpectralParameter::new(required(&job.lambda, "lambda")?);
            let x = required(&job.point, "point")?;
            let m = match m {
                Some(text) => arg_rational(text, "M")?,
                None => required(&job.m, "M (flag or config)")?,
            };
            let l = max_length(series.max_length, &job)?;
            Ok(dominating_series(&job.cartan, &lambda, &x, &m, l, &job.precision, tits(&job, series.force))?.to_csv())
        }
        Command::Looijenga { n, cap_length } => {
            let job = load_job(cli, None)?;
            let mu = job.mu.clone().unwrap_or_else(|| WeightVector::rho(job.cartan.rank()));
            let x = required(&job.point, "point")?;
            let n = match n {
                Some(text) => arg_rational(text, "N")?,
                None => required(&job.n, "N (flag or config)")?,
            };
            let c = looijenga_count(&job.cartan, &mu, &x, &n, *cap_length)?;
            Ok(pretty(&json!({
                "N": format_rational(&n),
                "count": c.count,
                "max_length_reached": c.max_length_reached,
                "exhausted": c.exhausted,
            })))
        }
        Command::Rank1 { s, a, x } => {
            let ctx = context(cli)?;
            let bound = rank1_sum_bound(&arg_rational(s, "s")?, &arg_rational(a, "a")?, &arg_rational(x, "x")?, &ctx)?;
            let mut report = bound.to_json(ctx.digits() as usize);
            report["s"] = Value::from(s.as_str());
            report["a"] = Value::from(a.as_str());
            report["x"] = Value::from(x.as_str());
            Ok(pretty(&report))
        }
        Command::ZetaRatio { s } => {
            let ctx = context(cli)?;
            let v = xi_ratio(&Real::from_rational(&arg_rational(s, "s")?, ctx.bits()), &ctx)?;
            Ok(format!("{}\n", v.to_plain(ctx.digits() as usize)))
        }
        Command::CInfinity { s } => {
            let ctx = context(cli)?;
            let v = c_infinity(&Real::from_rational(&arg_rational(s, "s")?, ctx.bits()), &ctx)?;
            Ok(format!("{}\n", v.to_plain(ctx.digits() as usize)))
        }
        Command::VerifyCertificate { path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            let report = verify_certificate(&Certificate::from_json_str(&text)?)?;
            if report.valid {
                Ok(pretty(&serde_json::to_value(&report).expect("json")))
            } else {
                Err(Error::DomainError(format!("certificate rejected: {}", report.problems.join("; "))))
            }
        }
    }
}

fn validate(job: &Job) -> Result<String> {
    let cm = &job.cartan;
    let all: Vec<usize> = (0..cm.rank()).collect();
    let mut report = json!({
        "rank": cm.rank(),
        "cartan": cm.entries(),
        "symmetrizer": cm.symmetrizer(),
        "determinant": cm.determinant().to_string(),
        "symmetric": cm.is_symmetric(),
        "finite_type": cm.is_finite_type(&all),
        "precision_digits": job.precision.digits(),
    });
    if let Some(lambda) = &job.lambda {
        let sp = SpectralParameter::new(lambda.clone());
        report["lambda"] = json!({
            "coroot_pairings": lambda.pairings().iter().map(format_rational).collect::<Vec<_>>(),
            "godement": sp.is_godement(),
            "dual_chamber": sp.in_dual_chamber(),
        });
    }
    if let Some(x) = &job.point {
        let t = tits_reduce(cm, x, job.tits_cap);
        report["point"] = json!({
            "alpha_values": x.values().iter().map(format_rational).collect::<Vec<_>>(),
            "tits_class": t.class,
            "reduced_point": t.point.values().iter().map(format_rational).collect::<Vec<_>>(),
            "reduction_word": t.word.iter().map(|s| s + 1).collect::<Vec<_>>(),
        });
    }
    Ok(pretty(&report))
}
