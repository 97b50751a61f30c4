//! `membrane`: shuffle enumeration, identity verification, iterated
//! integrals and completed zeta values from the command line.
//!
//! Exit codes: 0 success/pass, 1 property failure, 2 usage, 3 domain,
//! 4 accuracy.

mod spec_file;

use clap::{Args, Parser, Subcommand};
use membrane::checks;
use membrane::error::Error;
use membrane::json::permutation_set_json;
use membrane::perm::{restricted_shuffles, shuffles, Permutation};
use membrane::quad::{eval_iterated_numeric, Method, QuadratureConfig};
use membrane::zeta::{
    membrane_identity_rhs, word_encoded_zeta, NumberFieldSpec, TruncationPolicy, WordFactor,
    ZetaOutcome, ZetaRequest,
};
use serde_json::json;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "membrane", version, about)]
struct Cli {
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for all randomized evaluation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Override the default tolerance of the selected command.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the (restricted) shuffle set of two permutation blocks.
    Shuffle(ShuffleArgs),
    /// Run a named identity suite; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Evaluate an iterated integral from a JSON integrand file.
    Integrate(IntegrateArgs),
    /// Completed and multiple completed (Dedekind) zeta values.
    Zeta(ZetaArgs),
}

#[derive(Args)]
struct ShuffleArgs {
    /// Size of the first block.
    m: usize,
    /// Size of the second block.
    n: usize,
    /// Explicit permutation of the first block, e.g. `[2,1]`.
    #[arg(long)]
    sigma: Option<String>,
    /// Explicit permutation of the second block.
    #[arg(long)]
    tau: Option<String>,
    /// Restricted shuffle with the given cut positions.
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    restricted: Option<Vec<usize>>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: hopf, shuffle-relation, lemma21, thm15, group-like,
    /// interchange, homotopy, cocycle.
    suite: String,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    #[arg(long, default_value_t = 2)]
    alphabet: u8,
    /// Gauss points per axis for the numeric suites.
    #[arg(long, default_value_t = 10)]
    points: usize,
}

#[derive(Args)]
struct IntegrateArgs {
    /// Integrand description file (see the README for the schema).
    spec: std::path::PathBuf,
    /// x-ordering permutation, e.g. `[1,2]`.
    #[arg(long)]
    sx: Option<String>,
    /// y-ordering permutation.
    #[arg(long)]
    sy: Option<String>,
    #[arg(long, value_parser = ["gauss", "mc"], default_value = "gauss")]
    method: String,
    #[arg(long, default_value_t = 16)]
    points: usize,
    #[arg(long, default_value_t = 200_000)]
    samples: usize,
    /// Also print the exact rational oracle value and the difference.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct ZetaArgs {
    /// Q, Qi, or Q:sqrtD (D a supported radicand, e.g. Q:sqrt5, Q:sqrt-3).
    #[arg(long)]
    field: String,
    /// Exponent; repeat for multiple completed values.
    #[arg(long = "s", required = true)]
    exponents: Vec<f64>,
    /// t-ordering permutation for the membrane transform.
    #[arg(long)]
    sigma1: Option<String>,
    /// x-ordering permutation for the membrane transform.
    #[arg(long)]
    sigma2: Option<String>,
    /// Lattice radius override (points with norm form <= radius^2).
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    tmin: Option<f64>,
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long, value_parser = ["gauss", "mc"], default_value = "gauss")]
    method: String,
    #[arg(long, default_value_t = 12)]
    points: usize,
    /// Force the membrane transform (real quadratic fields use it anyway).
    #[arg(long)]
    membrane: bool,
    /// Also compute the independent oracle for the same request.
    #[arg(long)]
    oracle: bool,
    /// Experimental word-encoded evaluator: comma list of `theta`/`dz`.
    #[arg(long)]
    word_encoding: Option<String>,
    /// Include wall-clock runtime in the JSON output (breaks byte-for-byte
    /// reproducibility across runs).
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidInput(_) => ExitCode::from(2),
                Error::Domain(_) | Error::Unsupported(_) | Error::Eval(_) => ExitCode::from(3),
                Error::Accuracy(_) => ExitCode::from(4),
            }
        }
    }
}

fn parse_perm(arg: &Option<String>, n: usize, what: &str) -> Result<Permutation, Error> {
    match arg {
        None => Ok(Permutation::identity(n)),
        Some(s) => {
            let p: Permutation = s.parse()?;
            if p.len() != n {
                return Err(Error::invalid(format!(
                    "{what} has {} entries, expected {n}",
                    p.len()
                )));
            }
            Ok(p)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Shuffle(args) => cmd_shuffle(cli, args),
        Command::Verify(args) => cmd_verify(cli, args),
        Command::Integrate(args) => cmd_integrate(cli, args),
        Command::Zeta(args) => cmd_zeta(cli, args),
    }
}

fn cmd_shuffle(cli: &Cli, args: &ShuffleArgs) -> Result<ExitCode, Error> {
    let sigma = parse_perm(&args.sigma, args.m, "--sigma")?;
    let tau = parse_perm(&args.tau, args.n, "--tau")?;
    let set = match &args.restricted {
        None => shuffles(&sigma, &tau),
        Some(ij) => restricted_shuffles(&sigma, &tau, ij[0], ij[1])?,
    };
    if cli.json {
        let payload = json!({
            "m": args.m,
            "n": args.n,
            "sigma": sigma.images(),
            "tau": tau.images(),
            "restricted": args.restricted,
            "count": set.len(),
            "shuffles": permutation_set_json(&set),
        });
        println!("{payload}");
    } else {
        for p in &set {
            println!("{p}");
        }
        println!("count: {}", set.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<ExitCode, Error> {
    let report = match args.suite.as_str() {
        "hopf" => checks::verify_hopf(args.alphabet, args.max_degree),
        "shuffle-relation" => {
            checks::verify_shuffle_relation(cli.seed, 20, args.max_degree.clamp(2, 4))
        }
        "lemma21" => {
            let mut r = checks::verify_lemma21(args.alphabet, args.max_degree.min(3));
            let r2 = checks::verify_lemma22(args.alphabet, args.max_degree.min(3));
            r.pass = r.pass && r2.pass;
            r.outcomes.extend(r2.outcomes);
            r
        }
        "thm15" => checks::verify_thm15(args.alphabet, args.max_degree.min(3)),
        "group-like" => checks::verify_group_like(args.alphabet, args.max_degree.min(4)),
        "interchange" => checks::verify_interchange(args.alphabet, args.max_degree.min(2)),
        "homotopy" => checks::verify_homotopy(cli.tolerance.unwrap_or(1e-6), args.points),
        "cocycle" => checks::verify_cocycle(
            args.max_degree.min(2),
            cli.tolerance.unwrap_or(1e-5),
            args.points,
        ),
        other => return Err(Error::invalid(format!("unknown suite {other:?}"))),
    };
    for outcome in &report.outcomes {
        println!("{}", serde_json::to_string(outcome).expect("serializable"));
    }
    if cli.json {
        println!("{}", serde_json::to_string(&report).expect("serializable"));
    } else {
        println!(
            "suite {}: {} ({} checks, worst deviation {:.3e})",
            report.suite,
            if report.pass { "PASS" } else { "FAIL" },
            report.outcomes.len(),
            report.worst_deviation()
        );
    }
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_integrate(cli: &Cli, args: &IntegrateArgs) -> Result<ExitCode, Error> {
    let parsed = spec_file::load(&args.spec)?;
    let n = parsed.forms.len();
    let sx = parse_perm(&args.sx, n, "--sx")?;
    let sy = parse_perm(&args.sy, n, "--sy")?;
    let cfg = QuadratureConfig {
        method: if args.method == "mc" {
            Method::MonteCarlo
        } else {
            Method::GaussCell
        },
        points: args.points,
        samples: args.samples,
        seed: cli.seed,
        abs_tol: cli.tolerance.unwrap_or(1e-9),
    };
    cfg.validate()?;
    // an explicit mc request always samples, even on polynomial data
    let value = if cfg.method == Method::MonteCarlo {
        membrane::quad::IntegralValue::Approx(eval_iterated_numeric(
            &parsed.forms,
            &sx,
            &sy,
            &parsed.rect,
            &cfg,
        )?)
    } else {
        membrane::quad::eval_iterated(&parsed.forms, &sx, &sy, &parsed.rect, &cfg)?
    };
    let oracle = if args.oracle {
        Some(membrane::quad::poly_oracle(
            &parsed.forms,
            &sx,
            &sy,
            &parsed.rect,
        )?)
    } else {
        None
    };
    let exact = match &value {
        membrane::quad::IntegralValue::Exact(r) => Some(format!("{}/{}", r.numer(), r.denom())),
        membrane::quad::IntegralValue::Approx(_) => None,
    };
    if cli.json {
        let payload = json!({
            "value": value.as_f64(),
            "exact": exact,
            "est_error": value.est_error(),
            "method": args.method,
            "seed": cli.seed,
            "oracle": oracle.as_ref().map(|r| format!("{}/{}", r.numer(), r.denom())),
            "oracle_diff": oracle.as_ref().map(|r| {
                (value.as_f64() - membrane::rational_to_f64(r)).abs()
            }),
        });
        println!("{payload}");
    } else {
        match exact {
            Some(e) => println!("{e}"),
            None => println!("{} (est error {:.3e})", value.as_f64(), value.est_error()),
        }
        if let Some(r) = oracle {
            let diff = (value.as_f64() - membrane::rational_to_f64(&r)).abs();
            println!("oracle: {}/{} (diff {diff:.3e})", r.numer(), r.denom());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_word(s: &str) -> Result<Vec<WordFactor>, Error> {
    s.split(',')
        .map(|tok| match tok.trim() {
            "theta" => Ok(WordFactor::Theta),
            "dz" => Ok(WordFactor::Plain),
            other => Err(Error::invalid(format!(
                "word factors are `theta` or `dz`, got {other:?}"
            ))),
        })
        .collect()
}

fn cmd_zeta(cli: &Cli, args: &ZetaArgs) -> Result<ExitCode, Error> {
    let start = Instant::now();
    let field = NumberFieldSpec::parse(&args.field)?;
    let d = args.exponents.len();
    let is_membrane = matches!(field, NumberFieldSpec::RealQuadratic { .. }) || args.membrane;
    if args.membrane && !matches!(field, NumberFieldSpec::RealQuadratic { .. }) {
        return Err(Error::invalid(
            "--membrane applies to real quadratic fields only",
        ));
    }
    let mut policy = if is_membrane {
        TruncationPolicy::default_membrane()
    } else {
        TruncationPolicy::default_path()
    };
    if args.tmin.is_some() || args.tmax.is_some() {
        policy = TruncationPolicy::new(
            args.tmin.unwrap_or(policy.t_min),
            args.tmax.unwrap_or(policy.t_max),
        )?;
    }
    if let Some(r) = args.radius {
        policy = policy.with_radius(r)?;
    }
    let cfg = QuadratureConfig {
        method: if args.method == "mc" {
            Method::MonteCarlo
        } else {
            Method::GaussCell
        },
        points: args.points,
        samples: 200_000,
        seed: cli.seed,
        abs_tol: cli.tolerance.unwrap_or(1e-8),
    };
    cfg.validate()?;
    let sigma1 = parse_perm(&args.sigma1, d, "--sigma1")?;
    let sigma2 = parse_perm(&args.sigma2, d, "--sigma2")?;

    if let Some(word) = &args.word_encoding {
        let factors = parse_word(word)?;
        let out = word_encoded_zeta(&field, &factors, &policy, &cfg)?;
        return emit_zeta(
            cli,
            args,
            &field,
            &out,
            "word-encoding (experimental)",
            None,
            start,
        );
    }

    let mut request = ZetaRequest::new(field.clone(), args.exponents.clone())?;
    request.sigma1 = sigma1;
    request.sigma2 = sigma2;
    request.truncation = policy;
    request.quadrature = cfg;
    let outcome = request.evaluate()?;
    let oracle = if args.oracle {
        let independent = request.evaluate_oracle()?;
        let mut refs = vec![(
            if request.uses_membrane() {
                "unfolding"
            } else {
                "nested-quadrature"
            },
            independent.value,
        )];
        if request.uses_membrane() && d == 1 {
            refs.push((
                "dirichlet",
                membrane_identity_rhs(&field, args.exponents[0])?,
            ));
        }
        Some(refs)
    } else {
        None
    };
    let normalization = if matches!(field, NumberFieldSpec::ImagQuadratic { .. }) {
        "s"
    } else {
        "s/2"
    };
    emit_zeta(cli, args, &field, &outcome, normalization, oracle, start)
}

fn emit_zeta(
    cli: &Cli,
    args: &ZetaArgs,
    field: &NumberFieldSpec,
    out: &ZetaOutcome,
    normalization: &str,
    oracle: Option<Vec<(&str, f64)>>,
    start: Instant,
) -> Result<ExitCode, Error> {
    if let Some(tol) = cli.tolerance {
        if out.est_error > tol {
            return Err(Error::accuracy(format!(
                "estimated error {:.3e} exceeds the requested tolerance {tol:.3e} \
                 (tail bounds: {:?})",
                out.est_error,
                out.tail_bounds
                    .iter()
                    .map(|t| format!("{}: {:.3e}", t.source, t.bound))
                    .collect::<Vec<_>>()
            )));
        }
    }
    if cli.json {
        let mut payload = json!({
            "value": out.value,
            "est_error": out.est_error,
            "tail_bounds": out.tail_bounds.iter().map(|t| json!({
                "source": t.source,
                "bound": t.bound,
            })).collect::<Vec<_>>(),
            "normalization": normalization,
            "field": field.to_string(),
            "exponents": args.exponents,
            "permutations": {
                "sigma1": args.sigma1.clone().unwrap_or_else(|| "id".into()),
                "sigma2": args.sigma2.clone().unwrap_or_else(|| "id".into()),
            },
            "seed": cli.seed,
        });
        if let Some(refs) = &oracle {
            payload["oracle"] = json!(refs
                .iter()
                .map(|(name, v)| json!({"name": name, "value": v}))
                .collect::<Vec<_>>());
        }
        if args.timings {
            payload["runtime_ms"] = json!(start.elapsed().as_millis() as u64);
        }
        println!("{payload}");
    } else {
        println!("{} (est error {:.3e})", out.value, out.est_error);
        for t in &out.tail_bounds {
            println!("  tail {}: {:.3e}", t.source, t.bound);
        }
        if let Some(refs) = &oracle {
            for (name, v) in refs {
                println!("  oracle {name}: {v} (diff {:.3e})", (out.value - v).abs());
            }
        }
        if args.timings {
            println!("  runtime: {} ms", start.elapsed().as_millis());
        }
    }
    Ok(ExitCode::SUCCESS)
}
