//! Independent ground truth used to validate the Lucasian pipeline.
//!
//! Everything here is deliberately kept apart from the production
//! arithmetic: primality checks go through `num-bigint`'s own `modpow` and
//! `%` rather than the special-form reduction, and [`exact_seeds`]
//! re-implements the cyclotomic arithmetic over exact rationals. A bug in
//! the main path cannot hide in its own oracle.

mod exact;

pub use exact::{exact_seeds, rational_mod, ExactSeeds, MAX_EXACT_H};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cyclotomic::{CycOrder, CycResidue};
use crate::decision::{Case, CaseTag};
use crate::modnum::SpecialForm;
use crate::seeds::SeedKind;
use crate::Error;

/// Strong-probable-prime bases that decide primality for every
/// `x < 3_317_044_064_679_887_385_961_981` (about `3.3 * 10^24`).
const DETERMINISTIC_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Extra bases appended above the deterministic bound: together with the 13
/// above this makes 40 fixed witnesses, i.e. an error bound of `4^-40` per
/// candidate for the strong-probable-prime composite case.
const EXTRA_BASES: [u64; 27] = [
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139,
    149, 151, 157, 163, 167, 173,
];

fn deterministic_bound() -> BigUint {
    BigUint::parse_bytes(b"3317044064679887385961981", 10).expect("literal")
}

fn is_strong_probable_prime(x: &BigUint, base: u64) -> bool {
    let one = BigUint::one();
    let x_minus_1 = x - &one;
    let s = x_minus_1.trailing_zeros().expect("x odd and > 2");
    let d = &x_minus_1 >> s;
    let mut y = BigUint::from(base).modpow(&d, x);
    if y.is_one() || y == x_minus_1 {
        return true;
    }
    for _ in 1..s {
        y = y.modpow(&BigUint::from(2u32), x);
        if y == x_minus_1 {
            return true;
        }
        if y.is_one() {
            return false;
        }
    }
    false
}

/// Deterministic primality for `x` below `3.3 * 10^24` (fixed Miller-Rabin
/// witness sets); above that, a strong probable-prime test with 40 fixed
/// bases.
pub fn is_prime_oracle(x: &BigUint) -> bool {
    if *x < BigUint::from(2u32) {
        return false;
    }
    for &p in DETERMINISTIC_BASES.iter().chain(&EXTRA_BASES) {
        let p = BigUint::from(p);
        if *x == p {
            return true;
        }
        if (x % &p).is_zero() {
            return false;
        }
    }
    let extended = *x >= deterministic_bound();
    for &base in &DETERMINISTIC_BASES {
        if !is_strong_probable_prime(x, base) {
            return false;
        }
    }
    if extended {
        for &base in &EXTRA_BASES {
            if !is_strong_probable_prime(x, base) {
                return false;
            }
        }
    }
    true
}

/// The classical test for `M_p = 2^p - 1`, `p` an odd prime: with `u_0 = 4`
/// and `u_k = u_{k-1}^2 - 2`, `M_p` is prime iff `u_{p-2} = 0 (mod M_p)`.
pub fn lucas_lehmer(p: u64) -> bool {
    assert!(p >= 3 && p % 2 == 1, "p must be an odd prime, got {p}");
    debug_assert!((3..p).step_by(2).all(|d| d * d > p || !p.is_multiple_of(d)));
    let m = (BigUint::one() << p) - 1u32;
    let mut u = BigUint::from(4u32);
    for _ in 0..(p - 2) {
        u = (&u * &u + (&m - 2u32)) % &m;
    }
    u.is_zero()
}

/// For a *prime* `M`, reduces `alpha_1^(h*2^(n-3))` (octic) or
/// `alpha_2^(h*2^(n-4))` (bioctic) mod `M`, which must land on an `m`-th
/// root of unity, the value of the corresponding power residue symbol, up
/// to conjugation. Returns the root index `i` (the power is `zeta_m^i`) and
/// checks it against the pattern the case classification predicts:
///
/// * case I: octic power is `-1` (index 4);
/// * case II: `+-zeta_8^2` (index 2 or 6);
/// * case III: `+-zeta_8^(+-1)` (odd index);
/// * case IV: octic power is `+1` (index 0), bioctic power is `-1`
///   (index 8).
///
/// All patterns are closed under conjugation, so both signs of `M` check
/// against the same sets. The caller is responsible for `M` actually being
/// prime (the congruences are only forced then).
pub fn residue_symbol_diag(form: &SpecialForm, kind: SeedKind) -> Result<u32, Error> {
    let tag = CaseTag::for_form(form).ok_or(Error::OutsideWindow)?;
    if form.n() < 7 {
        return Err(Error::OutsideWindow);
    }
    let (alpha, order, shift) = match kind {
        SeedKind::Octic => (crate::seeds::alpha1(form)?, CycOrder::Zeta8, form.n() - 3),
        SeedKind::Bioctic => (crate::seeds::alpha2(form)?, CycOrder::Zeta16, form.n() - 4),
    };
    let exponent: BigUint = form.h() << shift;
    let power = alpha.pow(&exponent);
    let index = root_of_unity_index(&power, form, order).ok_or(Error::UnknownSymbolPattern)?;
    let consistent = match (kind, tag.case) {
        (SeedKind::Octic, Case::I) => index == 4,
        (SeedKind::Octic, Case::II) => index == 2 || index == 6,
        (SeedKind::Octic, Case::III) => index % 2 == 1,
        (SeedKind::Octic, Case::IV) => index == 0,
        (SeedKind::Bioctic, Case::IV) => index == 8,
        // The proof predicts nothing for the bioctic symbol outside case IV.
        (SeedKind::Bioctic, _) => true,
    };
    if consistent {
        Ok(index)
    } else {
        Err(Error::SymbolCaseMismatch {
            case: tag.case,
            index,
        })
    }
}

fn root_of_unity_index(a: &CycResidue<'_>, form: &SpecialForm, order: CycOrder) -> Option<u32> {
    (0..order.m()).find(|&i| *a == CycResidue::zeta_power(form, order, i))
}
