//! Command-line front end: build and dump the factorization matrices, run the
//! identity verification suites, and compute named functions through their
//! expansions next to an independent oracle value.
//!
//! Rationals serialize as strings ("-6", "3/5") in both JSON and CSV so that
//! golden files stay bit-exact. Verification reports follow the schema
//! `{"suite", "horizon", "checks": [{"name", "params", "exact", "pass",
//! "max_dev", "first_failure"}]}` with checks sorted by name then parameters.

mod suites;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use sumfact::arith::{ArithmeticFunction, Builtin};
use sumfact::oracle;
use sumfact::rat::rat_to_string;
use sumfact::report::SuiteReport;
use sumfact::type1;
use sumfact::type2::{self, WPoint};

#[derive(Parser)]
#[command(
    name = "sumfact",
    about = "Exact verification of partition-matrix factorizations for coprime and Anderson-Apostol sums",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    /// Inversion coefficients mu_{n,k}
    Mu,
    /// mu^(-1)_{n,k} = [gcd(n+1,k) = 1]
    MuInv,
    /// Factorization matrix t_{n,k}
    T,
    /// t^(-1)_{n,k}
    TInv,
    /// Lambert-series triangle s_{n,k}
    Snk,
    /// w-polynomial inverse matrix u^(-1)(f, w) (requires --f)
    UInv,
    /// Ordinary matrix u(f, w0) (requires --f and --w)
    U,
    /// Simplified matrix uhat(f, w0) (requires --f and --w)
    Uhat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Type1,
    Type2,
    Dft,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ComputeTarget {
    Mertens,
    Totient,
    Ramanujan,
    Sigma,
    Menon,
}

#[derive(Subcommand)]
enum Command {
    /// Build a factorization matrix and write it as JSON or CSV
    Matrix {
        #[arg(value_enum)]
        kind: MatrixKind,
        /// Matrix dimension
        #[arg(long)]
        n: usize,
        /// Arithmetic function for u / u-inv / uhat: builtin name or file path
        #[arg(long)]
        f: Option<String>,
        /// Evaluation point for w, a rational like 2 or 3/5 (not 0, 1, -1)
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and emit a JSON report (exit 1 on failure)
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Horizon for the suite's identity grids
        #[arg(long, default_value_t = 24)]
        n: u64,
        /// f: builtin name or file path
        #[arg(long, default_value = "id")]
        f: String,
        /// g: builtin name or file path
        #[arg(long, default_value = "mobius")]
        g: String,
        /// w evaluation point for type2 checks
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        w: String,
        /// Override the complex-path tolerances
        #[arg(long)]
        tol: Option<f64>,
        /// Seed for the randomized suite members
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a named function via its expansion, next to the oracle value
    Compute {
        #[arg(value_enum)]
        target: ComputeTarget,
        /// Argument x (mertens, ramanujan)
        #[arg(long)]
        x: Option<u64>,
        /// Argument m (ramanujan)
        #[arg(long)]
        m: Option<u64>,
        /// Argument n (totient, sigma, menon)
        #[arg(long)]
        n: Option<u64>,
        /// Exponent alpha (sigma)
        #[arg(long, default_value_t = 0)]
        a: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// An f/g spec resolved to a builtin or a custom table file. Resolution and
/// validation happen before any computation starts.
enum FunctionSpec {
    Builtin(Builtin),
    File(ArithmeticFunction),
}

impl FunctionSpec {
    fn parse(spec: &str) -> Result<Self> {
        let builtin = match spec {
            "unit" | "one" | "1" => Some(Builtin::Unit),
            "epsilon" | "eps" => Some(Builtin::Epsilon),
            "id" => Some(Builtin::IdPow(1)),
            "mobius" | "mu" => Some(Builtin::Mobius),
            "totient" | "phi" => Some(Builtin::Totient),
            "sigma" => Some(Builtin::Sigma(1)),
            "liouville" => Some(Builtin::Liouville),
            _ => {
                if let Some(a) = spec.strip_prefix("id_") {
                    Some(Builtin::IdPow(a.parse().context("bad exponent in id_<a>")?))
                } else if let Some(a) = spec.strip_prefix("sigma_") {
                    Some(Builtin::Sigma(
                        a.parse().context("bad exponent in sigma_<a>")?,
                    ))
                } else {
                    None
                }
            }
        };
        if let Some(b) = builtin {
            return Ok(FunctionSpec::Builtin(b));
        }
        let path = PathBuf::from(spec);
        if !path.exists() {
            bail!(
                "`{spec}` is neither a builtin (unit, epsilon, id, id_<a>, mobius, \
                 totient, sigma_<a>, liouville) nor a readable file"
            );
        }
        let text = fs::read_to_string(&path)
            .with_context(|| format!("reading function table {}", path.display()))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "custom".into());
        Ok(FunctionSpec::File(ArithmeticFunction::from_json(
            name, &text,
        )?))
    }

    /// Materializes at the requested horizon; file-backed tables must already
    /// cover it.
    fn at(&self, horizon: u64) -> Result<ArithmeticFunction> {
        match self {
            FunctionSpec::Builtin(b) => Ok(ArithmeticFunction::builtin(*b, horizon)),
            FunctionSpec::File(f) => {
                if f.horizon() < horizon {
                    bail!(
                        "function table `{}` covers only {} values but the run needs {}",
                        f.name(),
                        f.horizon(),
                        horizon
                    );
                }
                Ok(f.clone())
            }
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_matrix(
    kind: MatrixKind,
    n: usize,
    f: Option<String>,
    w: Option<String>,
    format: Format,
    out: Option<PathBuf>,
) -> Result<()> {
    if n < 1 {
        bail!("--n must be at least 1");
    }
    let need_f = matches!(kind, MatrixKind::UInv | MatrixKind::U | MatrixKind::Uhat);
    let need_w = matches!(kind, MatrixKind::U | MatrixKind::Uhat);
    let func = match (&f, need_f) {
        (Some(spec), true) => Some(FunctionSpec::parse(spec)?.at(n as u64)?),
        (None, true) => bail!("this matrix kind requires --f"),
        (Some(_), false) => bail!("--f is only meaningful for u-inv, u and uhat"),
        (None, false) => None,
    };
    let wpoint = match (&w, need_w) {
        (Some(lit), true) => Some(WPoint::parse(lit)?),
        (None, true) => bail!("this matrix kind requires --w (a rational not in {{0, 1, -1}})"),
        (Some(_), false) => bail!("--w is only meaningful for u and uhat"),
        (None, false) => None,
    };

    if kind == MatrixKind::UInv {
        let m = type2::u_inverse_matrix(func.as_ref().unwrap(), n)?;
        let text = match format {
            Format::Json => serde_json::to_string_pretty(&m.to_file())? + "\n",
            Format::Csv => bail!("csv output is not defined for polynomial matrices; use json"),
        };
        return emit(&out, &text);
    }

    let m = match kind {
        MatrixKind::Mu => type1::mu_matrix(n),
        MatrixKind::MuInv => type1::mu_inverse_matrix(n),
        MatrixKind::T => type1::t_matrix(n),
        MatrixKind::TInv => type1::t_inverse_matrix(n),
        MatrixKind::Snk => type1::lambert_snk(n),
        MatrixKind::U => type2::u_matrix_at(func.as_ref().unwrap(), n, wpoint.as_ref().unwrap())?,
        MatrixKind::Uhat => {
            type2::uhat_matrix(func.as_ref().unwrap(), n, wpoint.as_ref().unwrap())?
        }
        MatrixKind::UInv => unreachable!(),
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&m.to_file())? + "\n",
        Format::Csv => m.to_csv(),
    };
    emit(&out, &text)
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    suite: Suite,
    n: u64,
    f: String,
    g: String,
    w: String,
    tol: Option<f64>,
    seed: u64,
    out: Option<PathBuf>,
) -> Result<bool> {
    if n < 1 {
        bail!("--n must be at least 1");
    }
    let f = FunctionSpec::parse(&f)?.at(n + 1)?;
    let g = FunctionSpec::parse(&g)?.at(n + 1)?;
    let w = WPoint::parse(&w)?;
    let cfg = suites::SuiteConfig {
        horizon: n,
        f,
        g,
        w,
        seed,
        tol,
    };

    let report = match suite {
        Suite::Type1 => suites::suite_type1(&cfg)?,
        Suite::Type2 => suites::suite_type2(&cfg)?,
        Suite::Dft => suites::suite_dft(&cfg)?,
        Suite::All => {
            let mut all = SuiteReport::new("all", n);
            for sub in [
                suites::suite_type1(&cfg)?,
                suites::suite_type2(&cfg)?,
                suites::suite_dft(&cfg)?,
            ] {
                for mut check in sub.checks {
                    check.name = format!("{}/{}", sub.suite, check.name);
                    all.push(check);
                }
            }
            all.sort();
            all
        }
    };

    let pass = report.pass();
    let text = serde_json::to_string_pretty(&report)? + "\n";
    emit(&out, &text)?;
    if !pass {
        let failing = report.first_failure().expect("failure exists");
        eprintln!(
            "verification failed: {} {:?}{}",
            failing.name,
            failing.params,
            failing
                .first_failure
                .as_ref()
                .map(|d| format!(" at {} (lhs {}, rhs {})", d.location, d.lhs, d.rhs))
                .unwrap_or_default()
        );
    }
    Ok(pass)
}

fn run_compute(
    target: ComputeTarget,
    x: Option<u64>,
    m: Option<u64>,
    n: Option<u64>,
    a: u32,
    out: Option<PathBuf>,
) -> Result<()> {
    let need =
        |v: Option<u64>, flag: &str| v.ok_or_else(|| anyhow!("this target requires --{flag}"));
    let line = match target {
        ComputeTarget::Mertens => {
            let x = need(x, "x")?;
            let expansion = sumfact::dft::mertens_dft(x)?.exact;
            let oracle = oracle::brute_mertens(x)?;
            format!("{}, {}", rat_to_string(&expansion), oracle)
        }
        ComputeTarget::Totient => {
            let n = need(n, "n")?;
            let expansion = sumfact::dft::totient_dft(n)?.exact;
            let oracle = oracle::brute_totient(n)?;
            format!("{}, {}", rat_to_string(&expansion), oracle)
        }
        ComputeTarget::Ramanujan => {
            let x = need(x, "x")?;
            let m = need(m, "m")?;
            let expansion = type2::ramanujan_partition_formula(x, m);
            let id = ArithmeticFunction::builtin(Builtin::IdPow(1), x.max(1));
            let mu = ArithmeticFunction::builtin(Builtin::Mobius, x.max(1));
            let oracle = oracle::brute_type2(&id, &mu, m, x)?;
            format!("{}, {}", rat_to_string(&expansion), rat_to_string(&oracle))
        }
        ComputeTarget::Sigma => {
            let n = need(n, "n")?;
            let expansion = type1::sigma_alpha_expansion(a, n)?;
            let oracle = oracle::brute_sigma(n, a)?;
            format!("{}, {}", rat_to_string(&expansion), oracle)
        }
        ComputeTarget::Menon => {
            let n = need(n, "n")?;
            let report = type1::menon_check(n);
            if !report.pass() {
                bail!("menon identity failed at n = {n}: {report:?}");
            }
            let expansion = report.expansion.expect("menon carries an expansion");
            format!(
                "{}, {}",
                rat_to_string(&expansion),
                rat_to_string(&report.rhs)
            )
        }
    };
    emit(&out, &format!("{line}\n"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Matrix {
            kind,
            n,
            f,
            w,
            format,
            out,
        } => run_matrix(kind, n, f, w, format, out).map(|()| true),
        Command::Verify {
            suite,
            n,
            f,
            g,
            w,
            tol,
            seed,
            out,
        } => run_verify(suite, n, f, g, w, tol, seed, out),
        Command::Compute {
            target,
            x,
            m,
            n,
            a,
            out,
        } => run_compute(target, x, m, n, a, out).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
