use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use hallkoorn::ct_engine::case_params;
use hallkoorn::hall_littlewood::hl_poly;
use hallkoorn::koornwinder::{build_basis, symplectic_params};
use hallkoorn::lr_hall::{hall_polynomial, lr_coefficient};
use hallkoorn::padic::{evaluate_at_prime, lemma33, theorem_rhs_mu0};
use hallkoorn::partitions::{HalfWeight, Partition, SignedWeight};
use hallkoorn::verify::{
    integral_lhs, verify_genvan, verify_littlewood, verify_orthogonality, verify_schur, verify_theorem, Identity,
    IntegralOptions, LittlewoodOptions, OrthogonalityOptions, ReportSet, VerifyOptions,
};
use hallkoorn::Scalar;

/// Exact Hall-Littlewood / Koornwinder computations and identity checks.
#[derive(Parser)]
#[command(name = "hallkoorn", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single object.
    #[command(subcommand)]
    Compute(Compute),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum Compute {
    /// Hall-Littlewood polynomial P_λ(x_1..x_n; t).
    Hl {
        #[arg(long)]
        lambda: SignedWeight,
        #[arg(long)]
        n: Option<usize>,
        /// `0`, `1`, `s` or `s^k`.
        #[arg(long, default_value = "s^2")]
        t: String,
    },
    /// Koornwinder polynomial K_μ for a case density (`sp` for t = a = b = c = d = 0).
    Koornwinder {
        #[arg(long)]
        case: String,
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Littlewood-Richardson coefficient c^λ_{μν}.
    Lr {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long, value_parser = parse_partition)]
        nu: Partition,
    },
    /// Hall polynomial g^λ_{μν}(q), ascending degree.
    Hall {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long, value_parser = parse_partition)]
        nu: Partition,
        /// Also print g(p).
        #[arg(long)]
        prime: Option<i64>,
    },
    /// Closed-form measure of a case, exact and at a prime.
    Measure {
        #[arg(long)]
        case: u8,
        #[arg(long, allow_hyphen_values = true)]
        lambda: HalfWeight,
        /// Rank (default: half the length of λ).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        prime: u64,
    },
    /// Normalized torus integral of a case, with the closed form at μ = 0.
    Integral {
        #[arg(long)]
        case: u8,
        #[arg(long, allow_hyphen_values = true)]
        lambda: HalfWeight,
        #[arg(long, value_parser = parse_partition, default_value = "")]
        mu: Partition,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 12)]
        series_order: i64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Thm34,
    Thm35,
    Thm36,
    Thm37,
    Genvan,
    Littlewood,
    Schur,
    Orthogonality,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    suite: Suite,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 6)]
    max_weight: u32,
    /// Largest |μ| in the vanishing-equivalence grid.
    #[arg(long, default_value_t = 3)]
    max_mu: u32,
    /// Largest |μ| of the informational μ ≠ 0 rows (0 disables them).
    #[arg(long, default_value_t = 2)]
    mu_weight: u32,
    /// Variables of the summation identity.
    #[arg(long, default_value_t = 3)]
    vars: usize,
    /// Total x-degree of the summation identity.
    #[arg(long, default_value_t = 6)]
    degree: u32,
    /// x-degree of the kernel check.
    #[arg(long, default_value_t = 4)]
    kernel_degree: u32,
    /// Series-oracle depth in s (0 disables the oracle).
    #[arg(long, default_value_t = 12)]
    series_order: i64,
    /// Largest rank of the orthogonality suite.
    #[arg(long, default_value_t = 2)]
    orth_n: usize,
    /// Largest weight of the orthogonality suite.
    #[arg(long, default_value_t = 4)]
    orth_weight: u32,
    /// Write the reports as JSON lines.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: hallkoorn::Error| e.to_string())
}

fn parse_t(s: &str) -> Result<Scalar> {
    let s = s.trim();
    match s {
        "0" => return Ok(Scalar::from_int(0)),
        "1" => return Ok(Scalar::from_int(1)),
        "s" => return Ok(Scalar::s_pow(1)),
        _ => {}
    }
    if let Some(k) = s.strip_prefix("s^") {
        return Ok(Scalar::s_pow(k.parse().with_context(|| format!("bad exponent in {s:?}"))?));
    }
    bail!("t must be 0, 1, s or s^k, got {s:?}")
}

fn rank(n: Option<usize>, len: usize) -> usize {
    n.unwrap_or(len.div_ceil(2).max(1))
}

fn compute(c: Compute) -> Result<()> {
    match c {
        Compute::Hl { lambda, n, t } => {
            let n = n.unwrap_or(lambda.len());
            let p = hl_poly(&lambda, n, &parse_t(&t)?)?;
            println!("{p}");
        }
        Compute::Koornwinder { case, mu, n } => {
            let n = n.unwrap_or(mu.len().max(1));
            let params = match case.as_str() {
                "sp" | "0" => symplectic_params(),
                c => {
                    let k: u8 = c.parse().context("case must be 1, 2, 4 or sp")?;
                    case_params(k).with_context(|| format!("no Koornwinder family for case {k}"))?
                }
            };
            let basis = build_basis(n, params, mu.size())?;
            let k = basis.get(&mu).context("μ outside the basis")?;
            println!("{k}");
            println!("norm: {}", basis.norm(&mu).expect("norm of a built polynomial"));
        }
        Compute::Lr { lambda, mu, nu } => println!("{}", lr_coefficient(&lambda, &mu, &nu)),
        Compute::Hall { lambda, mu, nu, prime } => {
            let g = hall_polynomial(&lambda, &mu, &nu)?;
            println!("{g}");
            if let Some(p) = prime {
                println!("at q = {p}: {}", g.eval(p));
            }
        }
        Compute::Measure { case, lambda, n, prime } => {
            let n = rank(n, lambda.len());
            let v = lemma33(case, &lambda, n)?;
            let at = evaluate_at_prime(&v, case, prime)?;
            println!("{v}");
            println!("at p = {prime}: {at} ≈ {:.12}", at.to_f64());
        }
        Compute::Integral { case, lambda, mu, n, series_order } => {
            let n = rank(n, lambda.len());
            let opts = IntegralOptions {
                series_order: (series_order > 0).then_some(series_order),
                basis_weight: 0,
            };
            let v = integral_lhs(case, &lambda, &mu, n, &opts)?;
            println!("lhs: {}", v.value);
            println!("dual path agrees: {}", v.dual == v.value);
            if let Some(ok) = v.oracle {
                println!("series oracle (order {series_order}) agrees: {ok}");
            }
            if mu.is_empty() {
                println!("closed form: {}", theorem_rhs_mu0(case, &lambda, n)?);
            }
        }
    }
    Ok(())
}

fn run_suite(suite: Suite, a: &VerifyArgs) -> Result<ReportSet> {
    let opts = VerifyOptions {
        n: a.n,
        max_weight: a.max_weight,
        series_order: (a.series_order > 0).then_some(a.series_order),
        mu_weight: a.mu_weight,
    };
    let lw = LittlewoodOptions {
        vars: a.vars,
        degree: a.degree,
        kernel_degree: a.kernel_degree,
        series_order: a.series_order.max(1),
        ..LittlewoodOptions::default()
    };
    let orth = OrthogonalityOptions {
        max_n: a.orth_n,
        max_weight: a.orth_weight,
        series_order: a.series_order.max(1),
    };
    Ok(match suite {
        Suite::Thm34 => verify_theorem(Identity::Thm34, &opts)?,
        Suite::Thm35 => verify_theorem(Identity::Thm35, &opts)?,
        Suite::Thm36 => verify_theorem(Identity::Thm36, &opts)?,
        Suite::Thm37 => verify_theorem(Identity::Thm37, &opts)?,
        Suite::Genvan => verify_genvan(&opts, a.max_mu)?,
        Suite::Littlewood => verify_littlewood(&lw)?,
        Suite::Schur => verify_schur(&opts)?,
        Suite::Orthogonality => verify_orthogonality(&orth)?,
        Suite::All => {
            let mut all = ReportSet::default();
            for s in [
                Suite::Thm34,
                Suite::Thm35,
                Suite::Thm36,
                Suite::Thm37,
                Suite::Genvan,
                Suite::Littlewood,
                Suite::Schur,
                Suite::Orthogonality,
            ] {
                all.extend(run_suite(s, a)?);
            }
            all
        }
    })
}

fn verify(a: VerifyArgs) -> Result<bool> {
    let set = run_suite(a.suite, &a)?;
    if let Some(path) = &a.json {
        let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut w = BufWriter::new(f);
        set.write_jsonl(&mut w)?;
        w.flush()?;
    }
    print!("{}", set.summary());
    Ok(!set.any_mismatch())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let res = match cli.command {
        Command::Compute(c) => compute(c).map(|_| true),
        Command::Verify(a) => verify(a),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
