use std::fmt::Display;
use std::io::{self, Write};
use std::process::ExitCode;

use awlab_core::{
    alpha_n, askey_wilson_P, beta_n, lambda_n, mu_n, nonsymmetric_E, random_params_list,
    Error, Fault, ParamSet, Scalar, SuiteConfig, Verifier,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const DEFAULT_NMAX: u32 = 8;

#[derive(Parser, Debug)]
#[command(name = "awlab", version, about = "Exact Askey-Wilson polynomials and Hecke operator identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print P_n or E_n at a parameter point.
    Gen(GenArgs),
    /// Tabulate lambda_n, mu_n, alpha_n or beta_n.
    Table(TableArgs),
    /// Run the identity suite.
    Verify(VerifyArgs),
    /// Draw certified parameter points.
    RandomParams(RandomArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    P,
    E,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Quantity {
    Lambda,
    Mu,
    Alpha,
    Beta,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(value_enum, ignore_case = true)]
    kind: Kind,
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
    /// Parameters as q=..,a=..,b=..,c=..,d=.. with rational p/q values.
    #[arg(long)]
    params: String,
    /// Certification horizon; defaults to max(8, |n|).
    #[arg(long)]
    nmax: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(value_enum)]
    quantity: Quantity,
    #[arg(long, default_value_t = DEFAULT_NMAX)]
    nmax: u32,
    #[arg(long)]
    params: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "random", conflicts_with = "random")]
    params: Option<String>,
    /// Draw the parameter points from the seed.
    #[arg(long)]
    random: bool,
    /// Number of random parameter points.
    #[arg(long, default_value_t = 1, requires = "random")]
    points: usize,
    #[arg(long, default_value_t = DEFAULT_NMAX)]
    nmax: u32,
    /// Random Laurent polynomials per operator relation.
    #[arg(long, default_value_t = 25)]
    trials: usize,
    /// Overridden by AWLAB_SEED when set.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random inputs are supported in -window..=window.
    #[arg(long, default_value_t = 6)]
    window: i64,
    #[arg(long)]
    json: bool,
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

#[derive(Args, Debug)]
struct RandomArgs {
    /// Overridden by AWLAB_SEED when set.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of points to draw.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_NMAX)]
    nmax: u32,
    #[arg(long)]
    json: bool,
}

/// A failed command: exit code 2 for bad input, 1 for a failing identity.
enum Failure {
    Input(String),
    Identity,
}

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn seed_override(flag: u64) -> Result<u64, Failure> {
    match std::env::var("AWLAB_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("AWLAB_SEED is not an unsigned integer: {s:?}"))),
        Err(_) => Ok(flag),
    }
}

fn emit(out: &mut impl Write, line: impl Display) -> Result<(), Failure> {
    writeln!(out, "{line}").map_err(Failure::from)
}

fn cmd_gen(args: &GenArgs) -> CmdResult {
    let horizon = args
        .nmax
        .unwrap_or_else(|| DEFAULT_NMAX.max(args.n.unsigned_abs() as u32));
    let p = ParamSet::parse_assignments(&args.params, horizon)?;
    let poly = match args.kind {
        Kind::P => {
            let n = u32::try_from(args.n).map_err(|_| Error::OutOfRange {
                what: "symmetric polynomial degree",
                n: args.n,
            })?;
            askey_wilson_P(n, &p)?
        }
        Kind::E => nonsymmetric_E(args.n, &p)?,
    };
    let kind = match args.kind {
        Kind::P => "P",
        Kind::E => "E",
    };
    let mut out = io::stdout().lock();
    if args.json {
        let Value::Object(poly_json) = serde_json::to_value(&poly)? else {
            unreachable!("polynomials serialize as objects")
        };
        let mut obj = serde_json::Map::new();
        obj.insert("kind".into(), json!(kind));
        obj.insert("n".into(), json!(args.n));
        obj.insert("params".into(), serde_json::to_value(&p)?);
        obj.extend(poly_json);
        emit(&mut out, Value::Object(obj))
    } else {
        emit(&mut out, format_args!("{kind}_{} = {poly}", args.n))
    }
}

fn table_rows(q: Quantity, nmax: u32, p: &ParamSet) -> Vec<(i64, Scalar)> {
    let n = i64::from(nmax);
    match q {
        Quantity::Lambda => (0..=n).map(|k| (k, lambda_n(k, p))).collect(),
        Quantity::Mu => (-n..=n).map(|k| (k, mu_n(k, p))).collect(),
        Quantity::Alpha => (0..=nmax).map(|k| (i64::from(k), alpha_n(k, p))).collect(),
        Quantity::Beta => (-n..=n).map(|k| (k, beta_n(k, p))).collect(),
    }
}

fn cmd_table(args: &TableArgs) -> CmdResult {
    let p = ParamSet::parse_assignments(&args.params, args.nmax)?;
    let rows = table_rows(args.quantity, args.nmax, &p);
    let name = format!("{:?}", args.quantity).to_lowercase();
    let mut out = io::stdout().lock();
    if args.json {
        let rows: Vec<Value> = rows
            .iter()
            .map(|(n, v)| json!({ "n": n, "value": v }))
            .collect();
        emit(&mut out, json!({ "quantity": name, "params": p, "rows": rows }))
    } else {
        let width = rows.iter().map(|(n, _)| n.to_string().len()).max().unwrap_or(1);
        emit(&mut out, format_args!("{:>width$}  {name}", "n"))?;
        for (n, v) in rows {
            emit(&mut out, format_args!("{n:>width$}  {v}"))?;
        }
        Ok(())
    }
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let seed = seed_override(args.seed)?;
    let fault = args.inject_fault.as_deref().map(str::parse::<Fault>).transpose()?;
    let points = match &args.params {
        Some(s) => vec![ParamSet::parse_assignments(s, args.nmax)?],
        None => random_params_list(seed, args.points, args.nmax)?,
    };
    let config = SuiteConfig {
        trials: args.trials,
        seed,
        window: args.window,
        fault,
    };
    let mut out = io::stdout().lock();
    let mut all_passed = true;
    for p in &points {
        let result = Verifier::new(p, config.clone()).run();
        for s in &result.skipped {
            eprintln!("skipped {}: {}", s.identity, s.reason);
        }
        for r in &result.reports {
            if args.json {
                emit(&mut out, serde_json::to_string(r)?)?;
            } else {
                emit(&mut out, r)?;
            }
        }
        if !args.json {
            let failed = result.failures().count();
            emit(
                &mut out,
                format_args!("{p}: {} checks, {failed} failed", result.reports.len()),
            )?;
        }
        all_passed &= result.all_passed();
    }
    if all_passed {
        Ok(())
    } else {
        Err(Failure::Identity)
    }
}

fn cmd_random_params(args: &RandomArgs) -> CmdResult {
    let seed = seed_override(args.seed)?;
    let points = random_params_list(seed, args.trials, args.nmax)?;
    let mut out = io::stdout().lock();
    for p in points {
        if args.json {
            emit(&mut out, serde_json::to_string(&p)?)?;
        } else {
            emit(&mut out, p)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
        Command::RandomParams(a) => cmd_random_params(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

