//! The decision procedure: window validation, mod-17 case classification,
//! the `Q_i` divisibility prefilter, sequence iteration, and the final
//! verdict.
//!
//! For an odd `k` write `k* = (-1)^((k-1)/2) * k`; then `M = h*2^n + 1`
//! gives `M* = M` and `M = h*2^n - 1` gives `M* = -M`, so both signs are
//! classified at once by `M* mod 17`:
//!
//! | `M* mod 17`            | case | sequence | target after the run        |
//! |------------------------|------|----------|-----------------------------|
//! | `+-4`                  | I    | `(T,N)`, `n-3` steps | `(-4, 4)`       |
//! | `+-2, +-8`             | II   | `(T,N)`, `n-3` steps | `(0, 0)`        |
//! | `+-3, +-5, +-6, +-7`   | III  | `(T,N)`, `n-3` steps | `(0, -2)`       |
//! | `-1`                   | IV   | `(X,Y,Z,W)`, `n-4` steps | `(-8, 24, -32, 16)` |
//!
//! `M* = 1 (mod 17)` cannot occur when `17` does not divide `h`, and
//! `M* = 0 (mod 17)` means `17 | M`, which inside the window makes `M`
//! composite with witness 17.
//!
//! The `Q_i` are the seven solutions of `x^4 = 1 (mod 2^(n-3))` in
//! `(1, 2^(n-3))`. If none of them divides `M`, every prime divisor of `M`
//! exceeds `2^(n-3)`, and the window bound `h < 2^(n-6)` then forces any
//! such divisor past `sqrt(M)`; that is what upgrades the sequence
//! congruences from necessary to sufficient.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::modnum::{Sign, SpecialForm};
use crate::seeds::{compute_bioctic_seeds, compute_octic_seeds};
use crate::sequences::iterate;
use crate::Error;

/// `M* mod 17`, computed from `(h, n, sign)` without touching `M` itself.
pub fn m_star_mod17(form: &SpecialForm) -> u8 {
    // ord(2) = 8 mod 17
    const POW2_MOD17: [u64; 8] = [1, 2, 4, 8, 16, 15, 13, 9];
    let h17 = (form.h() % 17u32).to_u64().expect("residue below 17");
    let t = (h17 * POW2_MOD17[(form.n() % 8) as usize]) % 17;
    let m_star = match form.sign() {
        Sign::Plus => (t + 1) % 17,  // M* = h*2^n + 1
        Sign::Minus => (18 - t) % 17, // M* = -(h*2^n) + 1
    };
    m_star as u8
}

/// Which of the four congruence patterns applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    I,
    II,
    III,
    IV,
}

impl Case {
    /// canonical residues of the target state mod `M` (`-4` means `M-4`).
    pub fn target_state(self, form: &SpecialForm) -> Vec<BigUint> {
        let c = |v: i64| form.residue_i64(v).value().clone();
        match self {
            Case::I => vec![c(-4), c(4)],
            Case::II => vec![c(0), c(0)],
            Case::III => vec![c(0), c(-2)],
            Case::IV => vec![c(-8), c(24), c(-32), c(16)],
        }
    }

    /// Steps to iterate: `n-3` for the octic cases, `n-4` for case IV.
    pub fn steps(self, n: u64) -> u64 {
        match self {
            Case::IV => n - 4,
            _ => n - 3,
        }
    }
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
            Case::IV => "IV",
        };
        write!(f, "{s}")
    }
}

/// A case together with the residue `M* mod 17` that witnessed it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseTag {
    pub case: Case,
    pub m_star: u8,
}

impl CaseTag {
    /// Classifies a residue of `M*` mod 17. Returns `None` for 0 (meaning
    /// `17 | M`) and for 1 (impossible when `17` does not divide `h`).
    pub fn classify(m_star: u8) -> Option<CaseTag> {
        let case = match m_star {
            4 | 13 => Case::I,
            2 | 8 | 9 | 15 => Case::II,
            3 | 5 | 6 | 7 | 10 | 11 | 12 | 14 => Case::III,
            16 => Case::IV,
            _ => return None,
        };
        Some(CaseTag { case, m_star })
    }

    pub fn for_form(form: &SpecialForm) -> Option<CaseTag> {
        Self::classify(m_star_mod17(form))
    }
}

/// The seven nontrivial fourth roots of unity mod `2^(n-3)`, used as a
/// divisibility prefilter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFilter {
    n: u64,
    modulus_pow: BigUint,
    q: Vec<BigUint>,
}

/// Builds the filter for a given exponent `n >= 7`: with
/// `s = 5^(2^(n-7)) mod 2^(n-3)`, the solution set of `x^4 = 1` is
/// `{ +-s^j : j = 0..3 }`, and dropping `x = 1` leaves exactly seven values.
pub fn build_q_filter(n: u64) -> QFilter {
    assert!(n >= 7, "the filter needs n >= 7, got {n}");
    let modulus_pow = BigUint::one() << (n - 3);
    let mask = &modulus_pow - 1u32;
    let mut s = BigUint::from(5u32);
    for _ in 0..(n - 7) {
        s = (&s * &s) & &mask;
    }
    let mut set = BTreeSet::new();
    let mut p = BigUint::one();
    for j in 0..4 {
        if j > 0 {
            p = (&p * &s) & &mask;
        }
        if !p.is_one() {
            set.insert(p.clone());
        }
        let neg = &modulus_pow - &p;
        if !neg.is_one() {
            set.insert(neg);
        }
    }
    let q: Vec<BigUint> = set.into_iter().collect();
    assert_eq!(q.len(), 7, "expected exactly 7 filter values for n = {n}");
    QFilter { n, modulus_pow, q }
}

impl QFilter {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `2^(n-3)`.
    pub fn modulus_pow(&self) -> &BigUint {
        &self.modulus_pow
    }

    /// The seven values, ascending.
    pub fn values(&self) -> &[BigUint] {
        &self.q
    }

    /// Returns the first `Q_i` dividing `m`, if any. A hit is a factor
    /// witness, since every `Q_i` is below `2^(n-3) < M` for in-window `M`.
    pub fn find_divisor(&self, m: &BigUint) -> Option<&BigUint> {
        self.q.iter().find(|qi| *qi < m && (m % *qi).is_zero())
    }
}

/// Why the test does not apply to a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotApplicableReason {
    /// `n < 7`.
    ExponentTooSmall,
    /// `h >= 2^(n-6)`.
    MultiplierTooLarge,
    /// `17 | h`.
    MultiplierDivisibleBy17,
}

impl std::fmt::Display for NotApplicableReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            NotApplicableReason::ExponentTooSmall => "n must be at least 7",
            NotApplicableReason::MultiplierTooLarge => "h must be below 2^(n-6)",
            NotApplicableReason::MultiplierDivisibleBy17 => "h must not be divisible by 17",
        };
        write!(f, "{s}")
    }
}

/// Evidence attached to a composite verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A verified nontrivial factor of `M`.
    Factor(BigUint),
    /// The final state missed the case target; the state itself is in the
    /// diagnostics.
    FailedCongruence,
}

/// Outcome of [`decide`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Prime,
    Composite(Witness),
    NotApplicable(NotApplicableReason),
}

/// Run details carried with every verdict.
#[derive(Debug, Clone)]
pub struct Diagnostics {
    /// Recurrence steps performed (0 when the run short-circuited).
    pub steps: u64,
    /// Seed tuple, when one was computed.
    pub seeds: Option<Vec<BigUint>>,
    /// Final sequence state, when the iteration ran.
    pub final_state: Option<Vec<BigUint>>,
    pub elapsed: Duration,
}

/// The result of deciding a candidate.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub status: Status,
    pub case: Option<CaseTag>,
    pub diagnostics: Diagnostics,
}

fn factor_witness(form: &SpecialForm, g: BigUint) -> Witness {
    debug_assert!(g > BigUint::one() && &g < form.value());
    debug_assert!((form.value() % &g).is_zero());
    Witness::Factor(g)
}

/// Decides the primality of `M = h*2^n +/- 1`.
///
/// In order: the window is validated; `17 | M` is rejected as composite;
/// the `Q_i` filter is applied; the candidate is classified by `M* mod 17`;
/// the matching sequence is seeded and iterated (`n-3` steps for cases
/// I-III, `n-4` for case IV); and the final state is compared against the
/// case target. Inside the window the outcome is always `Prime` or
/// `Composite`, never a failure to decide.
pub fn decide(form: &SpecialForm) -> Verdict {
    let start = Instant::now();
    let nodata = |status: Status, case: Option<CaseTag>, start: Instant| Verdict {
        status,
        case,
        diagnostics: Diagnostics {
            steps: 0,
            seeds: None,
            final_state: None,
            elapsed: start.elapsed(),
        },
    };

    // 1. Window.
    if form.n() < 7 {
        return nodata(
            Status::NotApplicable(NotApplicableReason::ExponentTooSmall),
            None,
            start,
        );
    }
    if form.h() >= &(BigUint::one() << (form.n() - 6)) {
        return nodata(
            Status::NotApplicable(NotApplicableReason::MultiplierTooLarge),
            None,
            start,
        );
    }
    if (form.h() % 17u32).is_zero() {
        return nodata(
            Status::NotApplicable(NotApplicableReason::MultiplierDivisibleBy17),
            None,
            start,
        );
    }

    // 2. M* = 0 mod 17 means 17 | M; in-window M exceeds 17.
    let m_star = m_star_mod17(form);
    if m_star == 0 {
        let w = factor_witness(form, BigUint::from(17u32));
        return nodata(Status::Composite(w), None, start);
    }

    // 3. Q filter.
    let filter = build_q_filter(form.n());
    if let Some(qi) = filter.find_divisor(form.value()) {
        let w = factor_witness(form, qi.clone());
        return nodata(Status::Composite(w), None, start);
    }

    // 4. Case classification. m* = 1 would need 17 | h, excluded above.
    let tag = CaseTag::classify(m_star)
        .expect("m* in {0,1} is impossible after the window and mod-17 checks");

    // 5. Seed and iterate the matching family.
    let seeds = match tag.case {
        Case::IV => compute_bioctic_seeds(form, form.h()),
        _ => compute_octic_seeds(form, form.h()),
    };
    let seeds = match seeds {
        Ok(s) => s,
        // 6. An inversion obstruction during seeding is a factor of M.
        Err(Error::NotInvertible(g)) => {
            assert!(
                g > BigUint::one() && &g < form.value(),
                "inversion failed with trivial gcd {g}"
            );
            let w = factor_witness(form, g);
            return nodata(Status::Composite(w), Some(tag), start);
        }
        Err(e) => panic!("internal error while seeding {form}: {e}"),
    };
    let seed_components = seeds.components();
    let steps = tag.case.steps(form.n());
    let final_state = iterate(&seeds, steps);

    // 7. Compare against the case target.
    let reached = final_state.components();
    let target = tag.case.target_state(form);
    let status = if reached == target {
        Status::Prime
    } else {
        Status::Composite(Witness::FailedCongruence)
    };
    Verdict {
        status,
        case: Some(tag),
        diagnostics: Diagnostics {
            steps,
            seeds: Some(seed_components),
            final_state: Some(reached),
            elapsed: start.elapsed(),
        },
    }
}
