//! Deterministic primality testing for `M = h*2^n +/- 1` (`h` odd, not
//! divisible by 17) by a generalized Lucasian test: a pair or quadruple of
//! integer sequences with *fixed seeds depending only on `h`*, iterated
//! `n-3` (or `n-4`) times mod `M`, decides primality after a short mod-17
//! case classification and a divisibility prefilter.
//!
//! The machinery lives in the eighth and sixteenth cyclotomic rings taken
//! mod `M`: the seeds are traces, norms and symmetric functions of powers of
//! the fixed units built from `pi_1 = 1 + 2*zeta_8^3` and
//! `pi_2 = 1 - zeta_16 + zeta_16^5` (both of norm 17), and the case split is
//! governed by octic and bioctic power residue symbols.
//!
//! ```
//! use lucasian::{decide, SpecialForm, Sign, Status};
//!
//! let m = SpecialForm::from_u64(1, 7, Sign::Minus).unwrap(); // 127
//! assert!(matches!(decide(&m).status, Status::Prime));
//! ```
//!
//! Every verdict can be cross-checked against the independent oracles in
//! [`oracle`], and [`selftest`] bundles the full acceptance checks that the
//! `lucasian` CLI exposes as `lucasian selftest`.

use std::fmt;

use num_bigint::BigUint;

pub mod cyclotomic;
pub mod decision;
pub mod modnum;
pub mod oracle;
pub mod seeds;
pub mod selftest;
pub mod sequences;

pub use decision::{
    build_q_filter, decide, m_star_mod17, Case, CaseTag, Diagnostics, NotApplicableReason,
    QFilter, Status, Verdict, Witness,
};
pub use modnum::{Residue, Sign, SpecialForm};
pub use seeds::{compute_bioctic_seeds, compute_octic_seeds, SeedKind, SeedSet, SeedValues};
pub use sequences::{iterate, BiocticState, OcticState, SequenceState};

/// Errors surfaced by the library.
///
/// `NotInvertible` doubles as a factor report: whenever the carried gcd `g`
/// satisfies `1 < g < M`, `g` is a nontrivial factor of `M` and the decision
/// procedure converts it into a composite verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `h` must be odd.
    EvenMultiplier,
    /// `h` must be positive.
    ZeroMultiplier,
    /// `M` must be at least 3.
    ValueTooSmall,
    /// gcd with the modulus obstructs an inversion; carries the gcd.
    NotInvertible(BigUint),
    /// A quantity that must be rational had a nonzero coefficient on a
    /// proper power of the root of unity.
    NotRational,
    /// Exact seed computation is capped at a small `h`.
    ExactSeedsRange { max: u64 },
    /// The mod-17 classification does not apply (`M*` is 0 or 1 mod 17).
    OutsideWindow,
    /// A residue-symbol power did not reduce to any root of unity.
    UnknownSymbolPattern,
    /// The residue-symbol pattern contradicts the case classification.
    SymbolCaseMismatch { case: Case, index: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EvenMultiplier => write!(f, "h must be odd"),
            Error::ZeroMultiplier => write!(f, "h must be positive"),
            Error::ValueTooSmall => write!(f, "modulus must be at least 3"),
            Error::NotInvertible(g) => write!(f, "not invertible: gcd {g} with modulus"),
            Error::NotRational => write!(f, "expected a rational residue"),
            Error::ExactSeedsRange { max } => {
                write!(f, "exact seeds are only computed for h <= {max}")
            }
            Error::OutsideWindow => write!(f, "mod-17 case classification does not apply"),
            Error::UnknownSymbolPattern => {
                write!(f, "residue-symbol power is not a root of unity")
            }
            Error::SymbolCaseMismatch { case, index } => write!(
                f,
                "residue-symbol index {index} contradicts case {case:?}"
            ),
        }
    }
}

impl std::error::Error for Error {}

#[cfg(doctest)]
mod book_doctests;
