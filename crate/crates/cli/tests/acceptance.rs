use std::ops::RangeInclusive;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use awlab_core::verify::ids;
use awlab_core::{
    askey_wilson_P, random_params_list, Fault, LaurentPoly, ParamSet, SuiteConfig, SuiteResult,
    Verifier,
};

const SEED: u64 = 20240611;
const POINTS: usize = 5;
const NMAX: u32 = 8;
const TRIALS: usize = 25;
const PI0: &str = "q=1/2,a=1/3,b=1/5,c=1/7,d=1/11";

struct Fixture {
    points: Vec<ParamSet>,
    suites: Vec<SuiteResult>,
}

impl Fixture {
    fn new() -> Self {
        let mut points = vec![ParamSet::parse_assignments(PI0, NMAX).unwrap()];
        points.extend(random_params_list(SEED, POINTS, NMAX).unwrap());
        let suites = points
            .iter()
            .map(|p| Verifier::new(p, config(None)).run())
            .collect();
        Fixture { points, suites }
    }

    /// Every point has a passing report for `id` at each index in `range`.
    fn covered(&self, id: &str, range: RangeInclusive<i64>) -> Result<(), String> {
        for (p, suite) in self.points.iter().zip(&self.suites) {
            for n in range.clone() {
                let hit = suite
                    .reports
                    .iter()
                    .find(|r| r.identity == id && r.n == Some(n))
                    .ok_or_else(|| format!("{id} n={n} missing at {p}"))?;
                if !hit.passed {
                    return Err(format!("{hit} at {p}"));
                }
            }
        }
        Ok(())
    }

    /// Every point has a passing index-free report for `id`.
    fn covered_once(&self, id: &str) -> Result<(), String> {
        for (p, suite) in self.points.iter().zip(&self.suites) {
            let hit = suite
                .reports
                .iter()
                .find(|r| r.identity == id)
                .ok_or_else(|| format!("{id} missing at {p}"))?;
            if !hit.passed {
                return Err(format!("{hit} at {p}"));
            }
        }
        Ok(())
    }
}

fn config(fault: Option<Fault>) -> SuiteConfig {
    SuiteConfig {
        trials: TRIALS,
        seed: SEED,
        window: 6,
        fault,
    }
}

fn awlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_awlab"))
        .args(args)
        .env_remove("AWLAB_SEED")
        .output()
        .expect("binary runs")
}

fn criterion_1(fx: &Fixture) -> Result<(), String> {
    fx.covered(ids::ORACLE_EQUIVALENCE, 0..=8)
}

fn criterion_2(fx: &Fixture) -> Result<(), String> {
    fx.covered(ids::Q_DIFFERENCE, 0..=8)?;
    fx.covered(ids::E_EIGEN, -6..=6)
}

fn criterion_3(fx: &Fixture) -> Result<(), String> {
    fx.covered(ids::RECURRENCE, 2..=7)?;
    fx.covered(ids::LADDER_RAISING, 2..=7)?;
    fx.covered(ids::LADDER_LOWERING, 2..=7)
}

fn criterion_4(fx: &Fixture) -> Result<(), String> {
    fx.covered(ids::HECKE_RAISING, 0..=7)?;
    fx.covered(ids::HECKE_RAISING_LEADING, 0..=7)?;
    fx.covered(ids::HECKE_LOWERING, 2..=8)
}

fn criterion_5(fx: &Fixture) -> Result<(), String> {
    for id in [
        ids::HECKE_QUADRATIC,
        ids::R_SUM,
        ids::HECKE_INVERSE,
        ids::COMMUTATION,
        ids::SYMMETRY_CRITERION,
        ids::FACTORIZATION,
        ids::DPRIME_SYMMETRIC,
    ] {
        fx.covered_once(id)?;
    }
    Ok(())
}

fn criterion_6(fx: &Fixture) -> Result<(), String> {
    fx.covered(ids::SYMMETRIZATION, 1..=7)?;
    fx.covered(ids::SYMMETRIZATION, -7..=-1)?;
    fx.covered(ids::PROJECTION, 0..=7)?;
    fx.covered(ids::INTERTWINER, -3..=3)
}

fn criterion_7(fx: &Fixture) -> Result<(), String> {
    fx.covered(ids::ALPHA_BETA, 1..=8)?;
    fx.covered_once(ids::D_DPRIME_RELATION)
}

fn criterion_8(fx: &Fixture) -> Result<(), String> {
    for fault in Fault::ALL {
        let deps = fault.dependents();
        for p in &fx.points {
            let res = Verifier::new(p, config(Some(fault))).run();
            for r in &res.reports {
                let dependent = deps.contains(&r.identity);
                if !dependent && !r.passed {
                    return Err(format!("{fault}: independent check failed: {r}"));
                }
                if !r.passed && r.residual.as_ref().map_or(true, LaurentPoly::is_zero) {
                    return Err(format!("{fault}: failure without witness: {r}"));
                }
            }
            for id in deps {
                if !res.reports.iter().any(|r| r.identity == *id && !r.passed) {
                    return Err(format!("{fault}: {id} still passes at {p}"));
                }
            }
        }
        let out = awlab(&["verify", "--params", PI0, "--trials", "3", "--inject-fault", &fault.to_string()]);
        if out.status.code() != Some(1) {
            return Err(format!("{fault}: exit status {:?}, expected 1", out.status.code()));
        }
    }
    Ok(())
}

fn criterion_9() -> Result<(), String> {
    let args = ["verify", "--random", "--seed", "42", "--trials", "5", "--nmax", "8", "--json"];
    let first = awlab(&args);
    let second = awlab(&args);
    if first.status.code() != Some(0) {
        return Err(format!("random verify exited with {:?}", first.status.code()));
    }
    if first.stdout.is_empty() || first.stdout != second.stdout {
        return Err("outputs differ between runs".into());
    }
    let start = Instant::now();
    let full = awlab(&["verify", "--params", PI0]);
    let took = start.elapsed();
    if full.status.code() != Some(0) {
        return Err(format!("default suite exited with {:?}", full.status.code()));
    }
    if took > Duration::from_secs(60) {
        return Err(format!("default suite took {took:?}"));
    }
    Ok(())
}

/// Exit codes and output shapes of the command line.
fn cli_contract() -> Result<(), String> {
    let bad = awlab(&["verify", "--params", "q=1,a=1/3,b=1/5,c=1/7,d=1/11"]);
    let msg = String::from_utf8_lossy(&bad.stderr);
    if bad.status.code() != Some(2) || !msg.contains("GenericityError(G1)") {
        return Err(format!("q = 1: status {:?}, stderr {msg}", bad.status.code()));
    }
    let decimal = awlab(&["gen", "P", "--n", "1", "--params", "q=0.5,a=1/3,b=1/5,c=1/7,d=1/11"]);
    if decimal.status.code() != Some(2) {
        return Err("decimal literal accepted".into());
    }

    let gen = awlab(&["gen", "P", "--n", "3", "--params", PI0, "--json"]);
    let value: serde_json::Value = serde_json::from_slice(&gen.stdout).map_err(|e| e.to_string())?;
    if value["coeffs"]["3"] != "1" || value["coeffs"]["-3"] != "1" {
        return Err(format!("gen P 3: {value}"));
    }
    let parsed = LaurentPoly::from_terms(
        value["coeffs"]
            .as_object()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.parse().unwrap(), v.as_str().unwrap().parse().unwrap())),
    );
    let p = ParamSet::parse_assignments(PI0, NMAX).unwrap();
    if parsed != askey_wilson_P(3, &p).unwrap() {
        return Err("gen output does not round-trip".into());
    }
    let e0 = awlab(&["gen", "E", "--n", "0", "--params", PI0, "--json"]);
    let e0: serde_json::Value = serde_json::from_slice(&e0.stdout).map_err(|e| e.to_string())?;
    if e0["coeffs"] != serde_json::json!({"0": "1"}) {
        return Err(format!("gen E 0: {e0}"));
    }

    let table = awlab(&["table", "lambda", "--nmax", "2", "--params", PI0, "--json"]);
    let table: serde_json::Value = serde_json::from_slice(&table.stdout).map_err(|e| e.to_string())?;
    if table["rows"][0]["value"] != "0" || table["rows"][1]["value"] != "1154/1155" {
        return Err(format!("table lambda: {table}"));
    }

    let a = awlab(&["random-params", "--seed", "42", "--trials", "3"]);
    let b = awlab(&["random-params", "--seed", "42", "--trials", "3"]);
    let lines = String::from_utf8_lossy(&a.stdout).lines().count();
    if a.status.code() != Some(0) || a.stdout != b.stdout || lines != 3 {
        return Err("random-params is not deterministic".into());
    }
    Ok(())
}

fn main() {
    let start = Instant::now();
    let fx = Fixture::new();
    let results: Vec<(&str, Result<(), String>)> = vec![
        ("1 oracle equivalence", criterion_1(&fx)),
        ("2 eigenvalue suite", criterion_2(&fx)),
        ("3 classical ladder operators", criterion_3(&fx)),
        ("4 Hecke ladder operators", criterion_4(&fx)),
        ("5 Hecke relation suite", criterion_5(&fx)),
        ("6 proportionality suite", criterion_6(&fx)),
        ("7 closing identities", criterion_7(&fx)),
        ("8 negative controls", criterion_8(&fx)),
        ("9 determinism and runtime", criterion_9()),
        ("cli exit codes and output", cli_contract()),
    ];
    let mut failed = 0;
    for (name, result) in &results {
        match result {
            Ok(()) => println!("criterion {name}: PASS"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    println!(
        "acceptance: {} of {} passed at {} parameter points in {:.1?}",
        results.len() - failed,
        results.len(),
        fx.points.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
