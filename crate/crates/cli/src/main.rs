//! Command-line driver: single tests, range scans, seed inspection, and the
//! acceptance self-test, with line-delimited JSON output on demand.
//!
//! Exit codes: 0 prime, 1 composite, 2 not applicable, 3 oracle
//! disagreement under `--verify`, 4 usage error.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use lucasian::oracle::{exact_seeds, is_prime_oracle};
use lucasian::{
    compute_bioctic_seeds, compute_octic_seeds, decide, SeedKind, Sign, SpecialForm, Status,
    Verdict, Witness,
};

#[derive(Parser)]
#[command(
    name = "lucasian",
    version,
    about = "Primality of h*2^n +/- 1 via generalized Lucasian sequences with fixed seeds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a single candidate h*2^n +/- 1.
    Test {
        /// Odd multiplier h.
        #[arg(long)]
        h: String,
        /// Exponent n.
        #[arg(long)]
        n: u64,
        /// Sign of the trailing term: + or -.
        #[arg(long, allow_hyphen_values = true)]
        sign: String,
        /// Cross-check the verdict against the Miller-Rabin oracle.
        #[arg(long)]
        verify: bool,
        /// Emit one JSON record instead of aligned text.
        #[arg(long)]
        json: bool,
        /// Also print seeds and the final sequence state.
        #[arg(long)]
        verbose: bool,
    },
    /// Scan n over a range for a fixed h and sign.
    Scan {
        #[arg(long)]
        h: String,
        #[arg(long = "n-min")]
        n_min: u64,
        #[arg(long = "n-max")]
        n_max: u64,
        #[arg(long, allow_hyphen_values = true)]
        sign: String,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
        /// Worker threads (0 = all cores). Output stays in ascending n.
        #[arg(long, default_value_t = 0)]
        parallel: usize,
    },
    /// Print a seed tuple, either mod M or as exact rationals.
    Seeds {
        #[arg(long)]
        h: String,
        /// Which family: octic or bioctic.
        #[arg(long)]
        kind: String,
        /// Exact rationals instead of residues (h <= 25).
        #[arg(long)]
        exact: bool,
        /// Exponent of the modulus (required without --exact).
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run the full acceptance suite and report per-criterion results.
    Selftest,
}

/// One output line per candidate; the JSON schema is stable and
/// round-trips.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ResultRecord {
    expression: String,
    digits: usize,
    case: Option<String>,
    verdict: String,
    witness: Option<String>,
    steps: u64,
    elapsed_ms: u64,
    seed_fingerprint: Option<String>,
}

fn seed_fingerprint(kind: SeedKind, components: &[BigUint]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(match kind {
        SeedKind::Octic => b"octic:".as_slice(),
        SeedKind::Bioctic => b"bioctic:".as_slice(),
    });
    for c in components {
        hasher.update(c.to_string().as_bytes());
        hasher.update(b",");
    }
    let digest = hasher.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn make_record(form: &SpecialForm, verdict: &Verdict) -> ResultRecord {
    let (verdict_str, witness) = match &verdict.status {
        Status::Prime => ("prime".to_string(), None),
        Status::Composite(Witness::Factor(g)) => ("composite".to_string(), Some(g.to_string())),
        Status::Composite(Witness::FailedCongruence) => {
            ("composite".to_string(), Some("failed-congruence".to_string()))
        }
        Status::NotApplicable(reason) => ("not-applicable".to_string(), Some(reason.to_string())),
    };
    let kind = match verdict.case.map(|t| t.case) {
        Some(lucasian::Case::IV) => SeedKind::Bioctic,
        _ => SeedKind::Octic,
    };
    ResultRecord {
        expression: form.to_string(),
        digits: form.value().to_string().len(),
        case: verdict.case.map(|t| t.case.to_string()),
        verdict: verdict_str,
        witness,
        steps: verdict.diagnostics.steps,
        elapsed_ms: verdict.diagnostics.elapsed.as_millis() as u64,
        seed_fingerprint: verdict
            .diagnostics
            .seeds
            .as_ref()
            .map(|s| seed_fingerprint(kind, s)),
    }
}

fn print_record(record: &ResultRecord, json: bool) {
    if json {
        println!("{}", serde_json::to_string(record).expect("serializable record"));
    } else {
        println!(
            "{:<22} {:<14} case={:<4} witness={:<20} steps={:<7} ms={:<7} seed={}",
            record.expression,
            record.verdict,
            record.case.as_deref().unwrap_or("-"),
            record.witness.as_deref().unwrap_or("-"),
            record.steps,
            record.elapsed_ms,
            record.seed_fingerprint.as_deref().unwrap_or("-"),
        );
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(4)
}

fn parse_odd_h(s: &str) -> Result<BigUint, String> {
    let h: BigUint = s
        .trim()
        .parse()
        .map_err(|e| format!("h must be a positive integer: {e}"))?;
    if h.is_zero() {
        return Err("h must be positive".into());
    }
    if (&h % 2u32).is_zero() {
        return Err("h must be odd".into());
    }
    Ok(h)
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s.trim() {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        other => Err(format!("sign must be + or -, got {other:?}")),
    }
}

fn exit_for_status(status: &Status) -> ExitCode {
    match status {
        Status::Prime => ExitCode::SUCCESS,
        Status::Composite(_) => ExitCode::from(1),
        Status::NotApplicable(_) => ExitCode::from(2),
    }
}

/// Returns false on a verified disagreement (exit 3).
fn verify_against_oracle(form: &SpecialForm, verdict: &Verdict) -> bool {
    let claim = match verdict.status {
        Status::Prime => true,
        Status::Composite(_) => false,
        Status::NotApplicable(_) => return true, // nothing to compare
    };
    let oracle = is_prime_oracle(form.value());
    if oracle != claim {
        eprintln!(
            "ORACLE DISAGREEMENT on {}: lucasian says {}, oracle says {}",
            form,
            if claim { "prime" } else { "composite" },
            if oracle { "prime" } else { "composite" },
        );
        return false;
    }
    true
}

fn cmd_test(h: &str, n: u64, sign: &str, verify: bool, json: bool, verbose: bool) -> ExitCode {
    let h = match parse_odd_h(h) {
        Ok(h) => h,
        Err(e) => return usage_error(&e),
    };
    let sign = match parse_sign(sign) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let form = match SpecialForm::new(h, n, sign) {
        Ok(f) => f,
        Err(e) => return usage_error(&e.to_string()),
    };
    let verdict = decide(&form);
    let record = make_record(&form, &verdict);
    print_record(&record, json);
    if verbose {
        if let Some(seeds) = &verdict.diagnostics.seeds {
            eprintln!("seeds: {seeds:?}");
        }
        if let Some(state) = &verdict.diagnostics.final_state {
            eprintln!("final state after {} steps: {state:?}", verdict.diagnostics.steps);
        }
    }
    if verify && !verify_against_oracle(&form, &verdict) {
        return ExitCode::from(3);
    }
    exit_for_status(&verdict.status)
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    h: &str,
    n_min: u64,
    n_max: u64,
    sign: &str,
    verify: bool,
    json: bool,
    parallel: usize,
) -> ExitCode {
    use rayon::prelude::*;
    let h = match parse_odd_h(h) {
        Ok(h) => h,
        Err(e) => return usage_error(&e),
    };
    let sign = match parse_sign(sign) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(parallel).build() {
        Ok(p) => p,
        Err(e) => return usage_error(&format!("cannot build worker pool: {e}")),
    };
    // Validate the whole range before spawning anything.
    let forms: Vec<SpecialForm> = {
        let mut v = Vec::new();
        for n in n_min..=n_max {
            match SpecialForm::new(h.clone(), n, sign) {
                Ok(f) => v.push(f),
                Err(e) => return usage_error(&format!("n = {n}: {e}")),
            }
        }
        v
    };
    // Stream in chunks: workers inside a chunk finish in any order, but
    // each chunk is printed whole and in ascending n.
    let mut all_agree = true;
    for chunk in forms.chunks(32) {
        let results: Vec<(ResultRecord, bool)> = pool.install(|| {
            chunk
                .par_iter()
                .map(|form| {
                    let verdict = decide(form);
                    let agrees = !verify || verify_against_oracle(form, &verdict);
                    (make_record(form, &verdict), agrees)
                })
                .collect()
        });
        for (record, agrees) in &results {
            print_record(record, json);
            all_agree &= agrees;
        }
    }
    if !all_agree {
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}

fn cmd_seeds(
    h: &str,
    kind: &str,
    exact: bool,
    n: Option<u64>,
    sign: Option<&str>,
    json: bool,
) -> ExitCode {
    let h = match parse_odd_h(h) {
        Ok(h) => h,
        Err(e) => return usage_error(&e),
    };
    let kind = match kind {
        "octic" => SeedKind::Octic,
        "bioctic" => SeedKind::Bioctic,
        other => return usage_error(&format!("kind must be octic or bioctic, got {other:?}")),
    };
    let labels: &[&str] = match kind {
        SeedKind::Octic => &["T0", "N0"],
        SeedKind::Bioctic => &["X0", "Y0", "Z0", "W0"],
    };

    if exact {
        let h_small = match num_traits::ToPrimitive::to_u64(&h) {
            Some(v) if v <= lucasian::oracle::MAX_EXACT_H => v,
            _ => {
                return usage_error(&format!(
                    "exact seeds are only computed for h <= {}",
                    lucasian::oracle::MAX_EXACT_H
                ))
            }
        };
        let seeds = match exact_seeds(h_small, kind) {
            Ok(s) => s,
            Err(e) => return usage_error(&e.to_string()),
        };
        let comps = seeds.components();
        if json {
            let obj: Vec<serde_json::Value> = labels
                .iter()
                .zip(&comps)
                .map(|(l, c)| serde_json::json!({ "name": l, "value": c.to_string() }))
                .collect();
            println!(
                "{}",
                serde_json::json!({ "h": h_small.to_string(), "kind": kind_name(kind), "exact": true, "seeds": obj })
            );
        } else {
            for (l, c) in labels.iter().zip(&comps) {
                println!("{l} = {c}");
            }
        }
        return ExitCode::SUCCESS;
    }

    let (n, sign) = match (n, sign) {
        (Some(n), Some(s)) => match parse_sign(s) {
            Ok(sign) => (n, sign),
            Err(e) => return usage_error(&e),
        },
        _ => return usage_error("provide --n and --sign, or --exact"),
    };
    let form = match SpecialForm::new(h.clone(), n, sign) {
        Ok(f) => f,
        Err(e) => return usage_error(&e.to_string()),
    };
    let seeds = match kind {
        SeedKind::Octic => compute_octic_seeds(&form, &h),
        SeedKind::Bioctic => compute_bioctic_seeds(&form, &h),
    };
    let seeds = match seeds {
        Ok(s) => s,
        Err(lucasian::Error::NotInvertible(g)) => {
            eprintln!("seed computation found a factor of {}: {}", form, g);
            return ExitCode::from(1);
        }
        Err(e) => return usage_error(&e.to_string()),
    };
    let comps = seeds.components();
    if json {
        let obj: Vec<serde_json::Value> = labels
            .iter()
            .zip(&comps)
            .map(|(l, c)| serde_json::json!({ "name": l, "value": c.to_string() }))
            .collect();
        println!(
            "{}",
            serde_json::json!({
                "h": h.to_string(),
                "kind": kind_name(kind),
                "exact": false,
                "modulus": form.to_string(),
                "seeds": obj,
                "fingerprint": seed_fingerprint(kind, &comps),
            })
        );
    } else {
        for (l, c) in labels.iter().zip(&comps) {
            println!("{l} = {c} (mod {})", form.value());
        }
        println!("fingerprint = {}", seed_fingerprint(kind, &comps));
    }
    ExitCode::SUCCESS
}

fn kind_name(kind: SeedKind) -> &'static str {
    match kind {
        SeedKind::Octic => "octic",
        SeedKind::Bioctic => "bioctic",
    }
}

fn cmd_selftest() -> ExitCode {
    let reports = lucasian::selftest::run_all();
    let mut all = true;
    for r in &reports {
        println!("{r}");
        all &= r.passed;
    }
    if all {
        println!("selftest: all {} criteria passed", reports.len());
        ExitCode::SUCCESS
    } else {
        eprintln!("selftest: FAILURES present");
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap would exit 2; keep 4 for every usage problem.
            let _ = e.print();
            return ExitCode::from(4);
        }
    };
    match cli.command {
        Command::Test {
            h,
            n,
            sign,
            verify,
            json,
            verbose,
        } => cmd_test(&h, n, &sign, verify, json, verbose),
        Command::Scan {
            h,
            n_min,
            n_max,
            sign,
            verify,
            json,
            parallel,
        } => cmd_scan(&h, n_min, n_max, &sign, verify, json, parallel),
        Command::Seeds {
            h,
            kind,
            exact,
            n,
            sign,
            json,
        } => cmd_seeds(&h, &kind, exact, n, sign.as_deref(), json),
        Command::Selftest => cmd_selftest(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_json_round_trips() {
        let record = ResultRecord {
            expression: "3*2^11-1".into(),
            digits: 4,
            case: Some("III".into()),
            verdict: "prime".into(),
            witness: None,
            steps: 8,
            elapsed_ms: 0,
            seed_fingerprint: Some("ab12cd34ef567890".into()),
        };
        let text = serde_json::to_string(&record).unwrap();
        let back: ResultRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, record);
    }

    #[test]
    fn record_from_verdict_has_expected_fields() {
        let form = SpecialForm::from_u64(3, 11, Sign::Minus).unwrap();
        let record = make_record(&form, &decide(&form));
        assert_eq!(record.expression, "3*2^11-1");
        assert_eq!(record.digits, 4);
        assert_eq!(record.case.as_deref(), Some("III"));
        assert_eq!(record.verdict, "prime");
        assert_eq!(record.witness, None);
        assert_eq!(record.steps, 8);
        assert!(record.seed_fingerprint.is_some());
    }

    #[test]
    fn h_and_sign_parsing() {
        assert!(parse_odd_h("2").is_err());
        assert!(parse_odd_h("0").is_err());
        assert!(parse_odd_h("abc").is_err());
        assert_eq!(parse_odd_h("15").unwrap(), BigUint::from(15u32));
        assert_eq!(parse_sign("+").unwrap(), Sign::Plus);
        assert_eq!(parse_sign("-").unwrap(), Sign::Minus);
        assert!(parse_sign("x").is_err());
    }
}
