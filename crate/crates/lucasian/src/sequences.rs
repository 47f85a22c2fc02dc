//! The integer recurrences iterated mod `M`.
//!
//! Both families track symmetric functions of conjugate values that each
//! evolve by `A -> A^2 - 2`. One step of the pair `(T, N)` is
//!
//! ```text
//! T' = T^2 - 2N - 4
//! N' = N^2 - 2T^2 + 4N + 4
//! ```
//!
//! and one step of the quadruple `(X, Y, Z, W)` is
//!
//! ```text
//! X' = X^2 - 2Y - 8
//! Y' = Y^2 - 2XZ + 2W - 6X^2 + 12Y + 24
//! Z' = Z^2 - 2WY - 4Y^2 + 8XZ - 8W + 12X^2 - 24Y - 32
//! W' = W^2 - 2Z^2 + 4WY + 4Y^2 - 8XZ + 8W - 8X^2 + 16Y + 16
//! ```
//!
//! Each update reads the complete old state before writing, so the two (or
//! four) components advance simultaneously.

use crate::modnum::Residue;
use crate::seeds::{SeedSet, SeedValues};

/// State of the `(T, N)` pair after `k` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OcticState<'a> {
    pub t: Residue<'a>,
    pub n: Residue<'a>,
    pub k: u64,
}

impl<'a> OcticState<'a> {
    pub fn new(t: Residue<'a>, n: Residue<'a>) -> OcticState<'a> {
        OcticState { t, n, k: 0 }
    }

    pub fn step(&self) -> OcticState<'a> {
        let t2 = self.t.mul(&self.t);
        let t = t2.sub(&self.n.scale(2)).sub_u64(4);
        let n = self
            .n
            .mul(&self.n)
            .sub(&t2.scale(2))
            .add(&self.n.scale(4))
            .add_u64(4);
        OcticState {
            t,
            n,
            k: self.k + 1,
        }
    }

    pub fn components(&self) -> Vec<num_bigint::BigUint> {
        vec![self.t.value().clone(), self.n.value().clone()]
    }
}

/// State of the `(X, Y, Z, W)` quadruple after `k` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiocticState<'a> {
    pub x: Residue<'a>,
    pub y: Residue<'a>,
    pub z: Residue<'a>,
    pub w: Residue<'a>,
    pub k: u64,
}

impl<'a> BiocticState<'a> {
    pub fn new(
        x: Residue<'a>,
        y: Residue<'a>,
        z: Residue<'a>,
        w: Residue<'a>,
    ) -> BiocticState<'a> {
        BiocticState { x, y, z, w, k: 0 }
    }

    pub fn step(&self) -> BiocticState<'a> {
        let x2 = self.x.mul(&self.x);
        let y2 = self.y.mul(&self.y);
        let z2 = self.z.mul(&self.z);
        let w2 = self.w.mul(&self.w);
        let xz = self.x.mul(&self.z);
        let wy = self.w.mul(&self.y);

        let x = x2.sub(&self.y.scale(2)).sub_u64(8);
        let y = y2
            .sub(&xz.scale(2))
            .add(&self.w.scale(2))
            .sub(&x2.scale(6))
            .add(&self.y.scale(12))
            .add_u64(24);
        let z = z2
            .sub(&wy.scale(2))
            .sub(&y2.scale(4))
            .add(&xz.scale(8))
            .sub(&self.w.scale(8))
            .add(&x2.scale(12))
            .sub(&self.y.scale(24))
            .sub_u64(32);
        let w = w2
            .sub(&z2.scale(2))
            .add(&wy.scale(4))
            .add(&y2.scale(4))
            .sub(&xz.scale(8))
            .add(&self.w.scale(8))
            .sub(&x2.scale(8))
            .add(&self.y.scale(16))
            .add_u64(16);
        BiocticState {
            x,
            y,
            z,
            w,
            k: self.k + 1,
        }
    }

    pub fn components(&self) -> Vec<num_bigint::BigUint> {
        vec![
            self.x.value().clone(),
            self.y.value().clone(),
            self.z.value().clone(),
            self.w.value().clone(),
        ]
    }
}

/// Either family's state, as produced by [`iterate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceState<'a> {
    Octic(OcticState<'a>),
    Bioctic(BiocticState<'a>),
}

impl SequenceState<'_> {
    pub fn components(&self) -> Vec<num_bigint::BigUint> {
        match self {
            SequenceState::Octic(s) => s.components(),
            SequenceState::Bioctic(s) => s.components(),
        }
    }

    pub fn k(&self) -> u64 {
        match self {
            SequenceState::Octic(s) => s.k,
            SequenceState::Bioctic(s) => s.k,
        }
    }
}

/// Applies exactly `steps` recurrence steps from the seeds. The decision
/// procedure uses `steps = n - 3` for the octic family and `steps = n - 4`
/// for the bioctic one.
pub fn iterate<'a>(seeds: &SeedSet<'a>, steps: u64) -> SequenceState<'a> {
    match &seeds.values {
        SeedValues::Octic { t0, n0 } => {
            let mut s = OcticState::new(t0.clone(), n0.clone());
            for _ in 0..steps {
                s = s.step();
            }
            SequenceState::Octic(s)
        }
        SeedValues::Bioctic { x0, y0, z0, w0 } => {
            let mut s = BiocticState::new(x0.clone(), y0.clone(), z0.clone(), w0.clone());
            for _ in 0..steps {
                s = s.step();
            }
            SequenceState::Bioctic(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modnum::{Sign, SpecialForm};
    use crate::seeds::{compute_bioctic_seeds, compute_octic_seeds};
    use num_bigint::BigUint;
    use num_traits::{One, ToPrimitive};

    fn st<'a>(form: &'a SpecialForm, t: i64, n: i64) -> OcticState<'a> {
        OcticState::new(form.residue_i64(t), form.residue_i64(n))
    }

    fn bst<'a>(form: &'a SpecialForm, v: [i64; 4]) -> BiocticState<'a> {
        BiocticState::new(
            form.residue_i64(v[0]),
            form.residue_i64(v[1]),
            form.residue_i64(v[2]),
            form.residue_i64(v[3]),
        )
    }

    #[test]
    fn octic_small_orbits() {
        let m = SpecialForm::from_u64(3, 11, Sign::Minus).unwrap();
        // (0,0) -> (-4,4) -> (4,4) -> (4,4): the conjugate pair walks
        // (-2,-2) -> (2,2) under A -> A^2 - 2 and then stays.
        assert_eq!(st(&m, 0, 0).step(), { let mut s = st(&m, -4, 4); s.k = 1; s });
        assert_eq!(st(&m, -4, 4).step(), { let mut s = st(&m, 4, 4); s.k = 1; s });
        assert_eq!(st(&m, 4, 4).step(), { let mut s = st(&m, 4, 4); s.k = 1; s });
    }

    #[test]
    fn bioctic_small_orbits() {
        let m = SpecialForm::from_u64(3, 11, Sign::Minus).unwrap();
        let got = bst(&m, [-8, 24, -32, 16]).step();
        let mut want = bst(&m, [8, 24, 32, 16]);
        want.k = 1;
        assert_eq!(got, want);
        let fixed = bst(&m, [8, 24, 32, 16]).step();
        assert_eq!(fixed.components(), bst(&m, [8, 24, 32, 16]).components());
    }

    #[test]
    fn iterate_zero_steps_returns_seeds() {
        let m = SpecialForm::from_u64(3, 11, Sign::Minus).unwrap();
        let seeds = compute_octic_seeds(&m, &BigUint::one()).unwrap();
        let state = iterate(&seeds, 0);
        assert_eq!(state.components(), seeds.components());
        assert_eq!(state.k(), 0);
    }

    #[test]
    fn mersenne_127_reaches_case_ii_target() {
        // h=1, n=7: four steps land on (0, 0), the target forced for a
        // prime with M* = -8 mod 17.
        let m = SpecialForm::from_u64(1, 7, Sign::Minus).unwrap();
        let seeds = compute_octic_seeds(&m, &BigUint::one()).unwrap();
        match iterate(&seeds, 4) {
            SequenceState::Octic(s) => {
                assert!(s.t.is_zero());
                assert!(s.n.is_zero());
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn mersenne_131071_reaches_case_iv_target() {
        let m = SpecialForm::from_u64(1, 17, Sign::Minus).unwrap();
        let seeds = compute_bioctic_seeds(&m, &BigUint::one()).unwrap();
        match iterate(&seeds, 13) {
            SequenceState::Bioctic(s) => {
                assert_eq!(s.x.value().to_u64(), Some(131071 - 8));
                assert_eq!(s.y.value().to_u64(), Some(24));
                assert_eq!(s.z.value().to_u64(), Some(131071 - 32));
                assert_eq!(s.w.value().to_u64(), Some(16));
            }
            _ => unreachable!(),
        }
    }
}
