mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::Context;
use bihom_core::conditions::{check_all, HilbertTable};
use bihom_core::implicitize::{describe_failure, implicitize_checked, verify};
use bihom_core::{BiDegree, DetBackend, Error, Parametrization, PipelineConfig, Route, XPoly};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use report::{ConditionsView, HilbertView, Report, ResultView, Status};

#[derive(Parser, Debug)]
#[command(
    name = "bihom",
    version,
    about = "Implicit equations of bidegree (m,n) tensor-product surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide the base-point conditions B1-B6.
    Check(Common),
    /// Build M, take its determinant and verify it.
    Implicitize(Common),
    /// Check a given polynomial against the parametrization.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Polynomial in x0..x3; defaults to the input file's "polynomial".
        #[arg(long, env = "BIHOM_POLYNOMIAL")]
        polynomial: Option<String>,
    },
    /// Table of dim(R/I) over a rectangle of bidegrees.
    Hilbert {
        #[command(flatten)]
        common: Common,
        /// Lower corner `k,l`.
        #[arg(long, env = "BIHOM_FROM", default_value = "0,0", value_parser = parse_bidegree)]
        from: BiDegree,
        /// Upper corner `k,l`; defaults to (3m-1, 3n-1).
        #[arg(long, env = "BIHOM_TO", value_parser = parse_bidegree)]
        to: Option<BiDegree>,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// JSON job file: {"m", "n", "a": [4 strings], "seed"?, "assert_one_to_one"?}.
    #[arg(long, env = "BIHOM_INPUT")]
    input: PathBuf,
    /// Emit the JSON report instead of text.
    #[arg(long, env = "BIHOM_JSON")]
    json: bool,
    #[arg(long, env = "BIHOM_SEED")]
    seed: Option<u64>,
    /// cofactor, interp, both or auto.
    #[arg(long, env = "BIHOM_DET_BACKEND", default_value = "auto", value_parser = DetBackend::from_str)]
    det_backend: DetBackend,
    /// Saturation search bound; defaults to 2*max(m,n)+2.
    #[arg(long, env = "BIHOM_SAT_BOUND")]
    sat_bound: Option<usize>,
    #[arg(long, env = "BIHOM_WINDOW", default_value_t = 3)]
    window: usize,
    #[arg(long, env = "BIHOM_SAMPLES", default_value_t = 100)]
    samples: usize,
    /// Emit the polynomial even if verification fails.
    #[arg(long, env = "BIHOM_FORCE")]
    force: bool,
    #[arg(long, env = "BIHOM_OUTPUT")]
    output: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct JobFile {
    m: u32,
    n: u32,
    a: Vec<String>,
    seed: Option<u64>,
    assert_one_to_one: Option<bool>,
    polynomial: Option<String>,
}

fn parse_bidegree(s: &str) -> Result<BiDegree, String> {
    let (a, b) = s
        .trim_matches(|c| c == '(' || c == ')')
        .split_once(',')
        .ok_or_else(|| format!("expected `k,l`, got `{s}`"))?;
    let k = a.trim().parse().map_err(|e| format!("{e}"))?;
    let l = b.trim().parse().map_err(|e| format!("{e}"))?;
    Ok(BiDegree::new(k, l))
}

/// Failure before any mathematics ran: exit code 2.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

fn load(path: &Path) -> Result<(JobFile, Parametrization), InputError> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let job: JobFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let a: [&str; 4] = match job.a.as_slice() {
        [a0, a1, a2, a3] => [a0, a1, a2, a3],
        other => {
            return Err(
                anyhow::anyhow!("expected 4 polynomials in \"a\", got {}", other.len()).into(),
            )
        }
    };
    let phi = Parametrization::parse(job.m, job.n, &a).map_err(|e| anyhow::anyhow!("{e}"))?;
    Ok((job, phi))
}

fn config(common: &Common, job: &JobFile) -> PipelineConfig {
    PipelineConfig {
        seed: common.seed.or(job.seed).unwrap_or(0),
        backend: common.det_backend,
        sat_bound: common.sat_bound,
        window: common.window,
        samples: common.samples,
        force: common.force,
        assert_one_to_one: job.assert_one_to_one.unwrap_or(true),
        ..PipelineConfig::default()
    }
}

fn run(command: &Command) -> Result<(Report, &Common), InputError> {
    let common = match command {
        Command::Check(c) | Command::Implicitize(c) => c,
        Command::Verify { common, .. } | Command::Hilbert { common, .. } => common,
    };
    let (job, phi) = load(&common.input)?;
    let cfg = config(common, &job);
    let mut report = Report::new(command_name(command), &phi, &cfg);

    if let Command::Hilbert { from, to, .. } = command {
        let to = to.unwrap_or(BiDegree::new(3 * phi.m() - 1, 3 * phi.n() - 1));
        let start = Instant::now();
        let table = HilbertTable::rectangle(&phi.ideal(), *from, to);
        report.timing("hilbert", start);
        report.hilbert = Some(HilbertView::new(*from, to, &table));
        report.status = Status::Ok;
        return Ok((report, common));
    }

    let start = Instant::now();
    let conditions = check_all(&phi, &cfg.conditions());
    report.timing("conditions", start);
    report.conditions = Some(ConditionsView::new(&conditions));
    let refused = conditions.route == Route::Refused;
    if refused {
        report.fail(
            Status::ConditionFailure,
            conditions.into_error().map(|e| e.to_string()),
        );
    }

    match command {
        Command::Check(_) => {}
        Command::Implicitize(_) if !refused => {
            let start = Instant::now();
            match implicitize_checked(&phi, &conditions, &cfg) {
                Ok(result) => {
                    report.timing("implicitize", start);
                    let failed = !result.verification.passed;
                    report.result =
                        Some(ResultView::new(&result).map_err(|e| anyhow::anyhow!("{e}"))?);
                    if failed {
                        report.fail(
                            Status::VerificationFailure,
                            Some("verification failed (forced output)".into()),
                        );
                    }
                }
                Err(e @ Error::VerificationFailed(_)) => {
                    report.fail(Status::VerificationFailure, Some(e.to_string()))
                }
                Err(e) => report.fail(Status::ConditionFailure, Some(e.to_string())),
            }
        }
        Command::Implicitize(_) => {}
        Command::Verify { polynomial, .. } => {
            let text = polynomial
                .clone()
                .or(job.polynomial.clone())
                .ok_or_else(|| {
                    anyhow::anyhow!(
                        "no polynomial given (--polynomial or \"polynomial\" in the input)"
                    )
                })?;
            let poly = XPoly::parse(&text).map_err(|e| anyhow::anyhow!("polynomial: {e}"))?;
            let k = conditions
                .summary
                .as_ref()
                .filter(|s| s.finite)
                .map_or(0, |s| s.k);
            let start = Instant::now();
            let v = verify(
                &poly,
                &phi,
                k,
                cfg.samples,
                cfg.seed,
                false,
                cfg.assert_one_to_one,
            );
            report.timing("verify", start);
            // Verify judges the polynomial, not the conditions.
            report.status = if v.passed {
                Status::Ok
            } else {
                Status::VerificationFailure
            };
            report.error = (!v.passed).then(|| describe_failure(&v));
            report.verification = Some(v);
        }
        Command::Hilbert { .. } => unreachable!(),
    }
    Ok((report, common))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check(_) => "check",
        Command::Implicitize(_) => "implicitize",
        Command::Verify { .. } => "verify",
        Command::Hilbert { .. } => "hilbert",
    }
}

fn emit(text: &str, output: Option<&Path>) -> anyhow::Result<()> {
    match output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((report, common)) => {
            let text = if common.json {
                let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                s.push('\n');
                s
            } else {
                report.render_text()
            };
            if let Err(e) = emit(&text, common.output.as_deref()) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(report.status.exit_code())
        }
        Err(InputError(e)) => {
            eprintln!("input error: {e:#}");
            ExitCode::from(2)
        }
    }
}
