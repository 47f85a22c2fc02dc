//! The acceptance checks behind `lucasian selftest` and the `acceptance`
//! integration test: exhaustive oracle agreement over a desk-scale window,
//! the necessity congruences, seed and recurrence cross-checks against the
//! exact oracle, the brute-forced `Q` filter, residue-symbol diagnostics,
//! fixed spot checks, and the performance budget of the special-form path.

use std::fmt;
use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cyclotomic::{CycOrder, GaloisElement};
use crate::decision::{build_q_filter, decide, Case, CaseTag, Status};
use crate::modnum::{Sign, SpecialForm};
use crate::oracle::{exact_seeds, is_prime_oracle, residue_symbol_diag};
use crate::seeds::{compute_bioctic_seeds, compute_octic_seeds, SeedKind};
use crate::sequences::{iterate, BiocticState, OcticState};

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} ({}): {}: {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

/// The exhaustive desk-scale window: both signs, `7 <= n <= 32`, odd
/// `0 < h < min(2^(n-6), 512)` with `17` not dividing `h`.
fn window_candidates() -> Vec<(u64, u64, Sign)> {
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        for n in 7u64..=32 {
            let h_cap = if n - 6 >= 10 { 512 } else { 1u64 << (n - 6) };
            for h in (1..h_cap.min(512)).step_by(2) {
                if h % 17 == 0 {
                    continue;
                }
                out.push((h, n, sign));
            }
        }
    }
    out
}

struct SweepRow {
    h: u64,
    n: u64,
    sign: Sign,
    oracle_prime: bool,
    decide_prime: Option<bool>, // None when the verdict was NotApplicable
    case: Option<Case>,
}

fn sweep() -> &'static [SweepRow] {
    static SWEEP: OnceLock<Vec<SweepRow>> = OnceLock::new();
    SWEEP.get_or_init(|| {
        window_candidates()
            .into_par_iter()
            .map(|(h, n, sign)| {
                let form = SpecialForm::from_u64(h, n, sign).expect("odd h in window");
                let verdict = decide(&form);
                let decide_prime = match verdict.status {
                    Status::Prime => Some(true),
                    Status::Composite(_) => Some(false),
                    Status::NotApplicable(_) => None,
                };
                SweepRow {
                    h,
                    n,
                    sign,
                    oracle_prime: is_prime_oracle(form.value()),
                    decide_prime,
                    case: verdict.case.map(|t| t.case),
                }
            })
            .collect()
    })
}

fn report(id: u8, name: &'static str, passed: bool, detail: String) -> CriterionReport {
    CriterionReport {
        id,
        name,
        passed,
        detail,
    }
}

/// Criterion 1: `decide` agrees with the deterministic oracle on every
/// candidate of the window, with no undecided verdicts, within the runtime
/// budget (five minutes; the sweep is parallel).
pub fn criterion_1_oracle_agreement() -> CriterionReport {
    let start = Instant::now();
    let rows = sweep();
    let elapsed = start.elapsed();
    let disagreements: Vec<String> = rows
        .iter()
        .filter(|r| r.decide_prime != Some(r.oracle_prime))
        .map(|r| format!("{}*2^{}{}1", r.h, r.n, r.sign.symbol()))
        .collect();
    let primes = rows.iter().filter(|r| r.oracle_prime).count();
    let in_time = elapsed.as_secs() < 300;
    let passed = disagreements.is_empty() && in_time;
    let detail = if passed {
        format!(
            "{} candidates, {} primes, 0 disagreements in {:.1?}",
            rows.len(),
            primes,
            elapsed
        )
    } else {
        format!(
            "{} disagreements (first: {:?}), elapsed {:.1?}",
            disagreements.len(),
            disagreements.first(),
            elapsed
        )
    };
    report(1, "exhaustive oracle agreement", passed, detail)
}

/// Criterion 2: for every prime in the window the final state equals the
/// case target exactly.
pub fn criterion_2_necessity_congruences() -> CriterionReport {
    let failures: Vec<String> = sweep()
        .par_iter()
        .filter(|r| r.oracle_prime)
        .filter_map(|r| {
            let form = SpecialForm::from_u64(r.h, r.n, r.sign).unwrap();
            let Some(tag) = CaseTag::for_form(&form) else {
                return Some(format!("{form}: prime but unclassifiable"));
            };
            let seeds = match tag.case {
                Case::IV => compute_bioctic_seeds(&form, form.h()),
                _ => compute_octic_seeds(&form, form.h()),
            };
            let seeds = match seeds {
                Ok(s) => s,
                Err(e) => return Some(format!("{form}: seeding failed: {e}")),
            };
            let state = iterate(&seeds, tag.case.steps(form.n()));
            (state.components() != tag.case.target_state(&form)).then(|| form.to_string())
        })
        .collect();
    let checked = sweep().iter().filter(|r| r.oracle_prime).count();
    report(
        2,
        "necessity congruences at the case targets",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{checked} primes hit their targets exactly")
        } else {
            format!("{} primes missed the target (first: {:?})", failures.len(), failures.first())
        },
    )
}

/// Criterion 3: for each odd `h <= 25` except 17, the exact rational seeds
/// reduced mod `M` equal the mod-`M` seeds for at least 20 in-window moduli,
/// for both families.
pub fn criterion_3_seed_consistency() -> CriterionReport {
    let hs: Vec<u64> = (1..=25).step_by(2).filter(|&h| h != 17).collect();
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for &h in &hs {
        let exact_octic = exact_seeds(h, SeedKind::Octic).expect("h <= 25");
        let exact_bioctic = exact_seeds(h, SeedKind::Bioctic).expect("h <= 25");
        let n0 = 64 - h.leading_zeros() as u64 + 6;
        let mut moduli = 0;
        let mut n = n0.max(7);
        while moduli < 20 {
            for sign in [Sign::Plus, Sign::Minus] {
                let form = SpecialForm::from_u64(h, n, sign).unwrap();
                debug_assert!(form.window_valid());
                if (form.value() % 17u32).is_zero() {
                    continue;
                }
                let got_octic = compute_octic_seeds(&form, form.h()).unwrap().components();
                let got_bioctic = compute_bioctic_seeds(&form, form.h()).unwrap().components();
                let want_octic = exact_octic.reduce_mod(&form).unwrap();
                let want_bioctic = exact_bioctic.reduce_mod(&form).unwrap();
                if got_octic != want_octic || got_bioctic != want_bioctic {
                    failures.push(form.to_string());
                }
                moduli += 1;
                checked += 1;
            }
            n += 1;
        }
    }
    report(
        3,
        "mod-M seeds match the exact rational seeds",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} (h, M) combinations, both families, exact equality", checked)
        } else {
            format!("first mismatch at {:?}", failures.first())
        },
    )
}

/// Criterion 4: `k` recurrence steps equal the direct trace/symmetric
/// function computation of `alpha^(h*2^k) + conj` for `k <= 8` on at least
/// 20 `(M, h)` pairs.
#[allow(clippy::needless_range_loop)]
pub fn criterion_4_recurrence_vs_definition() -> CriterionReport {
    // 24 pairs; a couple may drop out when 17 divides M, leaving >= 20.
    let pairs: Vec<(u64, u64, Sign)> = {
        let mut v = Vec::new();
        let mut h = 1u64;
        for n in 11..=34 {
            let sign = if n % 2 == 0 { Sign::Plus } else { Sign::Minus };
            v.push((h, n, sign));
            h = if h >= 25 { 1 } else { h + 2 };
        }
        v
    };
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for (h, n, sign) in pairs {
        let form = SpecialForm::from_u64(h, n, sign).unwrap();
        if (form.value() % 17u32).is_zero() {
            continue;
        }
        let h_big = BigUint::from(h);

        // Octic family against Tr/Nm of alpha_1 powers.
        let alpha = crate::seeds::alpha1(&form).unwrap();
        let mut power = alpha.pow(&h_big);
        let seeds = compute_octic_seeds(&form, &h_big).unwrap();
        for k in 0..=8u64 {
            let eta = power.add(&power.conj());
            let s3 = eta.galois(GaloisElement::new(CycOrder::Zeta8, 3));
            let direct = vec![
                eta.add(&s3).rational_part().unwrap().value().clone(),
                eta.mul(&s3).rational_part().unwrap().value().clone(),
            ];
            if iterate(&seeds, k).components() != direct {
                failures.push(format!("octic {form} k={k}"));
            }
            power = power.mul(&power);
            checked += 1;
        }

        // Bioctic family against the symmetric functions of the orbit.
        let alpha = crate::seeds::alpha2(&form).unwrap();
        let mut power = alpha.pow(&h_big);
        let seeds = compute_bioctic_seeds(&form, &h_big).unwrap();
        for k in 0..=8u64 {
            let eta = power.add(&power.conj());
            let orbit = [
                eta.clone(),
                eta.galois(GaloisElement::new(CycOrder::Zeta16, 3)),
                eta.galois(GaloisElement::new(CycOrder::Zeta16, 5)),
                eta.galois(GaloisElement::new(CycOrder::Zeta16, 7)),
            ];
            let mut e1 = crate::cyclotomic::CycResidue::constant(&form, CycOrder::Zeta16, 0);
            let mut e2 = e1.clone();
            let mut e3 = e1.clone();
            for i in 0..4 {
                e1 = e1.add(&orbit[i]);
                for j in (i + 1)..4 {
                    let pair = orbit[i].mul(&orbit[j]);
                    e2 = e2.add(&pair);
                    for l in (j + 1)..4 {
                        e3 = e3.add(&pair.mul(&orbit[l]));
                    }
                }
            }
            let e4 = orbit[0].mul(&orbit[1]).mul(&orbit[2]).mul(&orbit[3]);
            let direct = vec![
                e1.rational_part().unwrap().value().clone(),
                e2.rational_part().unwrap().value().clone(),
                e3.rational_part().unwrap().value().clone(),
                e4.rational_part().unwrap().value().clone(),
            ];
            if iterate(&seeds, k).components() != direct {
                failures.push(format!("bioctic {form} k={k}"));
            }
            power = power.mul(&power);
            checked += 1;
        }
    }
    report(
        4,
        "recurrence equals the trace/symmetric-function definition",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{checked} (M, h, k) states, both families, exact equality")
        } else {
            format!("first mismatch: {:?}", failures.first())
        },
    )
}

/// Criterion 5: for `7 <= n <= 20` the filter equals the brute-force
/// solution set of `x^4 = 1 (mod 2^(n-3))` minus `{1}`, which has exactly 7
/// elements.
pub fn criterion_5_q_filter_brute_force() -> CriterionReport {
    let mut failures = Vec::new();
    for n in 7u64..=20 {
        let modulus = 1u64 << (n - 3);
        let brute: Vec<BigUint> = (2..modulus)
            .filter(|&x| {
                let sq = (x * x) % modulus;
                (sq * sq) % modulus == 1
            })
            .map(BigUint::from)
            .collect();
        let filter = build_q_filter(n);
        if filter.values() != brute.as_slice() || brute.len() != 7 {
            failures.push(n);
        }
    }
    report(
        5,
        "Q filter equals the brute-forced root set",
        failures.is_empty(),
        if failures.is_empty() {
            "n = 7..=20, exact set equality, 7 elements each".to_string()
        } else {
            format!("mismatch at n = {failures:?}")
        },
    )
}

/// Criterion 6: for every prime of the window the residue-symbol power
/// matches the pattern its case predicts (octic for all cases, bioctic
/// additionally for case IV).
pub fn criterion_6_residue_symbol() -> CriterionReport {
    let failures: Vec<String> = sweep()
        .par_iter()
        .filter(|r| r.oracle_prime)
        .filter_map(|r| {
            let form = SpecialForm::from_u64(r.h, r.n, r.sign).unwrap();
            if let Err(e) = residue_symbol_diag(&form, SeedKind::Octic) {
                return Some(format!("{form}: {e}"));
            }
            if r.case == Some(Case::IV) {
                if let Err(e) = residue_symbol_diag(&form, SeedKind::Bioctic) {
                    return Some(format!("{form}: {e}"));
                }
            }
            None
        })
        .collect();
    let primes = sweep().iter().filter(|r| r.oracle_prime).count();
    report(
        6,
        "residue-symbol patterns match the case classification",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{primes} primes, no pattern mismatches")
        } else {
            format!("{} mismatches (first: {:?})", failures.len(), failures.first())
        },
    )
}

/// Criterion 7: the fixed spot checks.
pub fn criterion_7_spot_checks() -> CriterionReport {
    let mut failures = Vec::new();
    let spot = |h: u64, n: u64, sign: Sign| decide(&SpecialForm::from_u64(h, n, sign).unwrap());

    let v = spot(1, 7, Sign::Minus);
    if !(matches!(v.status, Status::Prime) && v.case.map(|t| t.case) == Some(Case::II)) {
        failures.push("1*2^7-1");
    }
    let v = spot(1, 17, Sign::Minus);
    if !(matches!(v.status, Status::Prime) && v.case.map(|t| t.case) == Some(Case::IV)) {
        failures.push("1*2^17-1");
    }
    let v = spot(3, 11, Sign::Minus);
    if !(matches!(v.status, Status::Prime) && v.case.map(|t| t.case) == Some(Case::III)) {
        failures.push("3*2^11-1");
    }
    let v = spot(5, 14, Sign::Minus);
    if !(matches!(v.status, Status::Prime) && v.case.map(|t| t.case) == Some(Case::I)) {
        failures.push("5*2^14-1");
    }
    let v = spot(1, 7, Sign::Plus);
    match v.status {
        Status::Composite(crate::decision::Witness::Factor(ref g))
            if g.to_u64() == Some(3) => {}
        _ => failures.push("1*2^7+1"),
    }
    let v = spot(3, 12, Sign::Minus);
    if !(matches!(
        v.status,
        Status::Composite(crate::decision::Witness::FailedCongruence)
    ) && v.case.map(|t| t.case) == Some(Case::I))
    {
        failures.push("3*2^12-1");
    }

    report(
        7,
        "known-candidate spot checks",
        failures.is_empty(),
        if failures.is_empty() {
            "6 fixed candidates verified".to_string()
        } else {
            format!("failed: {failures:?}")
        },
    )
}

/// Criterion 8: a single decide finishes within 1 s for `3*2^1000 - 1` and
/// within 60 s for `3*2^10000 - 1`.
pub fn criterion_8_performance() -> CriterionReport {
    let run = |n: u64| {
        let form = SpecialForm::from_u64(3, n, Sign::Minus).unwrap();
        let start = Instant::now();
        let verdict = decide(&form);
        let elapsed = start.elapsed();
        let decided = !matches!(verdict.status, Status::NotApplicable(_));
        (elapsed, decided)
    };
    let (t1, d1) = run(1_000);
    let (t2, d2) = run(10_000);
    let passed = d1 && d2 && t1.as_secs_f64() < 1.0 && t2.as_secs_f64() < 60.0;
    report(
        8,
        "performance of the special-form path",
        passed,
        format!("n=1000 in {t1:.2?} (budget 1 s), n=10000 in {t2:.2?} (budget 60 s)"),
    )
}

/// Criterion 9: the trivial fixed points hold for every modulus tested:
/// one octic step fixes `(4, 4)` and one bioctic step fixes
/// `(8, 24, 32, 16)`.
pub fn criterion_9_fixed_points() -> CriterionReport {
    let failures: Vec<String> = sweep()
        .par_iter()
        .filter_map(|r| {
            let form = SpecialForm::from_u64(r.h, r.n, r.sign).unwrap();
            let o = OcticState::new(form.residue_i64(4), form.residue_i64(4));
            let os = o.step();
            if os.t != o.t || os.n != o.n {
                return Some(form.to_string());
            }
            let b = BiocticState::new(
                form.residue_i64(8),
                form.residue_i64(24),
                form.residue_i64(32),
                form.residue_i64(16),
            );
            let bs = b.step();
            if bs.x != b.x || bs.y != b.y || bs.z != b.z || bs.w != b.w {
                return Some(form.to_string());
            }
            None
        })
        .collect();
    report(
        9,
        "trivial fixed points",
        failures.is_empty(),
        if failures.is_empty() {
            format!("held for all {} moduli of the window", sweep().len())
        } else {
            format!("failed at {:?}", failures.first())
        },
    )
}

/// Runs the full acceptance suite in order.
pub fn run_all() -> Vec<CriterionReport> {
    vec![
        criterion_1_oracle_agreement(),
        criterion_2_necessity_congruences(),
        criterion_3_seed_consistency(),
        criterion_4_recurrence_vs_definition(),
        criterion_5_q_filter_brute_force(),
        criterion_6_residue_symbol(),
        criterion_7_spot_checks(),
        criterion_8_performance(),
        criterion_9_fixed_points(),
    ]
}
