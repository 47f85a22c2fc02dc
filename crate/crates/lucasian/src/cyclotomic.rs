//! Arithmetic in `(Z/M)[zeta_8]` and `(Z/M)[zeta_16]` with the Galois
//! action, conjugation, norms, and group-ring exponents.
//!
//! Elements are dense coefficient vectors over the power basis
//! `1, zeta, ..., zeta^(d-1)` with `d = 4` or `8`; the defining relation is
//! the negacyclic one, `zeta^d = -1`, so products wrap around with a sign
//! flip. Inverses are computed as the product of the nontrivial conjugates
//! divided by the norm: on a composite modulus any obstruction shows up as a
//! gcd with `M`, which is exactly the factor witness the caller wants.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::modnum::{Residue, SpecialForm};
use crate::Error;

/// Which cyclotomic ring an element lives in: `m = 8` or `m = 16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycOrder {
    Zeta8,
    Zeta16,
}

impl CycOrder {
    /// The root-of-unity order `m`.
    pub fn m(self) -> u32 {
        match self {
            CycOrder::Zeta8 => 8,
            CycOrder::Zeta16 => 16,
        }
    }

    /// Degree of the ring over the base: `phi(m) = m/2`.
    pub fn degree(self) -> usize {
        (self.m() / 2) as usize
    }

    /// Canonical labels of the Galois group `(Z/m)^*`.
    pub fn unit_labels(self) -> &'static [i8] {
        match self {
            CycOrder::Zeta8 => &[1, 3, -3, -1],
            CycOrder::Zeta16 => &[1, 3, 5, 7, -7, -5, -3, -1],
        }
    }
}

/// The automorphism `sigma_c : zeta -> zeta^c`, with `c` odd, stored as the
/// canonical representative in `{+-1, +-3}` (`m = 8`) or
/// `{+-1, +-3, +-5, +-7}` (`m = 16`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaloisElement {
    order: CycOrder,
    c: i8,
}

impl GaloisElement {
    pub fn new(order: CycOrder, c: i64) -> GaloisElement {
        let m = order.m() as i64;
        assert!(c % 2 != 0, "sigma_c requires odd c, got {c}");
        let mut r = c.rem_euclid(m);
        if r > m / 2 {
            r -= m;
        }
        GaloisElement { order, c: r as i8 }
    }

    pub fn order(self) -> CycOrder {
        self.order
    }

    /// The canonical label `c`.
    pub fn label(self) -> i8 {
        self.c
    }

    pub fn is_identity(self) -> bool {
        self.c == 1
    }

    /// Complex conjugation `sigma_{-1}`.
    pub fn conjugation(order: CycOrder) -> GaloisElement {
        GaloisElement::new(order, -1)
    }

    /// Group law: `sigma_c . sigma_d = sigma_{cd mod m}`.
    pub fn compose(self, other: GaloisElement) -> GaloisElement {
        assert_eq!(self.order, other.order, "composing across different rings");
        GaloisElement::new(self.order, self.c as i64 * other.c as i64)
    }
}

/// An element of `(Z/M)[zeta_m]` as a coefficient vector of length `m/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycResidue<'a> {
    order: CycOrder,
    coeffs: Vec<Residue<'a>>,
}

impl<'a> CycResidue<'a> {
    /// Builds an element from exactly `m/2` coefficients; coefficient `i`
    /// multiplies `zeta^i`.
    pub fn from_coeffs(order: CycOrder, coeffs: Vec<Residue<'a>>) -> CycResidue<'a> {
        assert_eq!(
            coeffs.len(),
            order.degree(),
            "need {} coefficients for zeta_{}",
            order.degree(),
            order.m()
        );
        CycResidue { order, coeffs }
    }

    /// The constant `v`.
    pub fn constant(form: &'a SpecialForm, order: CycOrder, v: i64) -> CycResidue<'a> {
        let mut coeffs = vec![form.zero(); order.degree()];
        coeffs[0] = form.residue_i64(v);
        CycResidue { order, coeffs }
    }

    pub fn one(form: &'a SpecialForm, order: CycOrder) -> CycResidue<'a> {
        Self::constant(form, order, 1)
    }

    /// `zeta^i`, for any `i` (reduced negacyclically).
    pub fn zeta_power(form: &'a SpecialForm, order: CycOrder, i: u32) -> CycResidue<'a> {
        let d = order.degree() as u32;
        let e = i % order.m();
        let mut coeffs = vec![form.zero(); order.degree()];
        if e < d {
            coeffs[e as usize] = form.one();
        } else {
            coeffs[(e - d) as usize] = form.residue_i64(-1);
        }
        CycResidue { order, coeffs }
    }

    pub fn order(&self) -> CycOrder {
        self.order
    }

    pub fn coeffs(&self) -> &[Residue<'a>] {
        &self.coeffs
    }

    fn form(&self) -> &'a SpecialForm {
        self.coeffs[0].form()
    }

    fn check_compatible(&self, other: &CycResidue<'a>) {
        assert_eq!(self.order, other.order, "mixing zeta_8 and zeta_16 elements");
    }

    pub fn add(&self, rhs: &CycResidue<'a>) -> CycResidue<'a> {
        self.check_compatible(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        CycResidue {
            order: self.order,
            coeffs,
        }
    }

    pub fn sub(&self, rhs: &CycResidue<'a>) -> CycResidue<'a> {
        self.check_compatible(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect();
        CycResidue {
            order: self.order,
            coeffs,
        }
    }

    /// Negacyclic product: schoolbook convolution where coefficients past
    /// degree `d-1` re-enter negated.
    pub fn mul(&self, rhs: &CycResidue<'a>) -> CycResidue<'a> {
        self.check_compatible(rhs);
        let d = self.order.degree();
        let form = self.form();
        let mut pos = vec![BigUint::zero(); d];
        let mut neg = vec![BigUint::zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a.value() * b.value();
                if i + j < d {
                    pos[i + j] += p;
                } else {
                    neg[i + j - d] += p;
                }
            }
        }
        let coeffs = pos
            .into_iter()
            .zip(neg)
            .map(|(p, n)| form.residue(&p).sub(&form.residue(&n)))
            .collect();
        CycResidue {
            order: self.order,
            coeffs,
        }
    }

    /// Applies `sigma_c`: the basis monomial `zeta^i` maps to
    /// `zeta^(i*c mod m)` with the negacyclic sign.
    pub fn galois(&self, s: GaloisElement) -> CycResidue<'a> {
        assert_eq!(self.order, s.order(), "automorphism from a different ring");
        let m = self.order.m() as i64;
        let d = self.order.degree();
        let form = self.form();
        let mut coeffs = vec![form.zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = (i as i64 * s.label() as i64).rem_euclid(m) as usize;
            if e < d {
                coeffs[e] = coeffs[e].add(a);
            } else {
                coeffs[e - d] = coeffs[e - d].sub(a);
            }
        }
        CycResidue {
            order: self.order,
            coeffs,
        }
    }

    /// Complex conjugation, `sigma_{-1}`.
    pub fn conj(&self) -> CycResidue<'a> {
        self.galois(GaloisElement::conjugation(self.order))
    }

    /// Square-and-multiply power; `a^0 = 1`.
    pub fn pow(&self, e: &BigUint) -> CycResidue<'a> {
        let mut result = CycResidue::one(self.form(), self.order);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result);
            if e.bit(i) {
                result = result.mul(self);
            }
        }
        result
    }

    /// The full conjugate product `prod_{sigma in G} sigma(a)` as a rational
    /// residue.
    pub fn norm(&self) -> Result<Residue<'a>, Error> {
        let mut p = CycResidue::one(self.form(), self.order);
        for &c in self.order.unit_labels() {
            p = p.mul(&self.galois(GaloisElement::new(self.order, c as i64)));
        }
        p.rational_part()
    }

    /// Inverse via `a^(-1) = (prod_{sigma != 1} sigma(a)) / norm(a)`.
    ///
    /// On a composite modulus a non-invertible norm carries a gcd with `M`;
    /// when that gcd is a proper divisor it is a factor witness.
    pub fn inv(&self) -> Result<CycResidue<'a>, Error> {
        let mut p = CycResidue::one(self.form(), self.order);
        for &c in self.order.unit_labels() {
            if c == 1 {
                continue;
            }
            p = p.mul(&self.galois(GaloisElement::new(self.order, c as i64)));
        }
        let norm = p.mul(self).rational_part()?;
        let norm_inv = norm.inv()?;
        let coeffs = p.coeffs.iter().map(|a| a.mul(&norm_inv)).collect();
        Ok(CycResidue {
            order: self.order,
            coeffs,
        })
    }

    /// The action of a formal sum of automorphisms followed by an integer
    /// power: `(prod_i sigma_i(a)^(w_i))^e`.
    ///
    /// Negative weights require `a` to be invertible.
    pub fn pow_group_ring(
        &self,
        tau: &[(GaloisElement, i64)],
        e: &BigUint,
    ) -> Result<CycResidue<'a>, Error> {
        let mut acc = CycResidue::one(self.form(), self.order);
        for &(s, w) in tau {
            let mut t = self.galois(s).pow(&BigUint::from(w.unsigned_abs()));
            if w < 0 {
                t = t.inv()?;
            }
            acc = acc.mul(&t);
        }
        Ok(acc.pow(e))
    }

    /// Extracts the constant coefficient, requiring every other coefficient
    /// to vanish mod `M`. A nonzero higher coefficient signals either an
    /// implementation bug or a modulus interfering with a denominator, and
    /// is never ignored.
    pub fn rational_part(&self) -> Result<Residue<'a>, Error> {
        if self.coeffs[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotRational);
        }
        Ok(self.coeffs[0].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modnum::Sign;
    use num_traits::{One, ToPrimitive};

    fn form6143() -> SpecialForm {
        SpecialForm::from_u64(3, 11, Sign::Minus).unwrap()
    }

    fn pi1(form: &SpecialForm) -> CycResidue<'_> {
        // 1 + 2*zeta_8^3
        CycResidue::from_coeffs(
            CycOrder::Zeta8,
            vec![
                form.one(),
                form.zero(),
                form.zero(),
                form.residue_i64(2),
            ],
        )
    }

    fn pi2(form: &SpecialForm) -> CycResidue<'_> {
        // 1 - zeta_16 + zeta_16^5
        let mut coeffs = vec![form.zero(); 8];
        coeffs[0] = form.one();
        coeffs[1] = form.residue_i64(-1);
        coeffs[5] = form.one();
        CycResidue::from_coeffs(CycOrder::Zeta16, coeffs)
    }

    #[test]
    fn multiplicative_identity() {
        let m = form6143();
        let a = pi1(&m);
        assert_eq!(a.mul(&CycResidue::one(&m, CycOrder::Zeta8)), a);
    }

    #[test]
    fn zeta_cubed_times_zeta_is_minus_one() {
        let m = form6143();
        let z1 = CycResidue::zeta_power(&m, CycOrder::Zeta8, 1);
        let z3 = CycResidue::zeta_power(&m, CycOrder::Zeta8, 3);
        let got = z1.mul(&z3);
        assert_eq!(got, CycResidue::constant(&m, CycOrder::Zeta8, -1));
    }

    #[test]
    fn norms_of_pi1_and_pi2_are_17() {
        for f in [
            SpecialForm::from_u64(3, 11, Sign::Minus).unwrap(),
            SpecialForm::from_u64(1, 17, Sign::Minus).unwrap(),
            SpecialForm::from_u64(5, 14, Sign::Minus).unwrap(),
        ] {
            assert_eq!(pi1(&f).norm().unwrap().value().to_u64(), Some(17));
            assert_eq!(pi2(&f).norm().unwrap().value().to_u64(), Some(17));
        }
    }

    #[test]
    fn identity_automorphism_is_identity() {
        let m = form6143();
        let a = pi2(&m);
        assert_eq!(a.galois(GaloisElement::new(CycOrder::Zeta16, 1)), a);
    }

    #[test]
    fn conjugation_of_pi1() {
        // zeta_8^(-3) = -zeta_8, so conj(1 + 2 zeta^3) = 1 - 2 zeta.
        let m = form6143();
        let got = pi1(&m).conj();
        let want = CycResidue::from_coeffs(
            CycOrder::Zeta8,
            vec![m.one(), m.residue_i64(-2), m.zero(), m.zero()],
        );
        assert_eq!(got, want);
    }

    #[test]
    fn sigma3_squares_to_identity_on_zeta8() {
        let m = form6143();
        let s3 = GaloisElement::new(CycOrder::Zeta8, 3);
        assert!(s3.compose(s3).is_identity());
        let a = pi1(&m);
        assert_eq!(a.galois(s3).galois(s3), a);
    }

    #[test]
    fn inverse_round_trips() {
        let m = form6143();
        let a = pi1(&m);
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv), CycResidue::one(&m, CycOrder::Zeta8));
        let one = CycResidue::one(&m, CycOrder::Zeta8);
        assert_eq!(one.inv().unwrap(), one);
    }

    #[test]
    fn inverse_reports_factor_17() {
        // M = 2^12 + 1 = 4097 = 17 * 241: the norm of pi1 is 17, so the
        // inversion must surface the factor.
        let m = SpecialForm::from_u64(1, 12, Sign::Plus).unwrap();
        match pi1(&m).inv() {
            Err(Error::NotInvertible(g)) => assert_eq!(g.to_u64(), Some(17)),
            other => panic!("expected NotInvertible(17), got {other:?}"),
        }
    }

    #[test]
    fn group_ring_identities() {
        let m = form6143();
        let a = pi1(&m);
        let id = GaloisElement::new(CycOrder::Zeta8, 1);
        assert_eq!(
            a.pow_group_ring(&[(id, 1)], &BigUint::from(1u32)).unwrap(),
            a
        );
        assert_eq!(
            a.pow_group_ring(&[(id, 1)], &BigUint::from(0u32)).unwrap(),
            CycResidue::one(&m, CycOrder::Zeta8)
        );
    }

    #[test]
    fn unit_from_pi_over_conj_has_norm_one() {
        let m = form6143();
        let a = pi1(&m);
        let unit = a.mul(&a.conj().inv().unwrap());
        let tau = [
            (GaloisElement::new(CycOrder::Zeta8, 1), 1),
            (GaloisElement::new(CycOrder::Zeta8, 3), 3),
        ];
        let alpha = unit.pow_group_ring(&tau, &BigUint::from(1u32)).unwrap();
        assert!(alpha.norm().unwrap().value().is_one());
    }

    #[test]
    fn rational_part_detects_nonrational() {
        let m = form6143();
        assert_eq!(
            CycResidue::constant(&m, CycOrder::Zeta8, 5)
                .rational_part()
                .unwrap()
                .value()
                .to_u64(),
            Some(5)
        );
        let mut coeffs = vec![m.zero(); 4];
        coeffs[0] = m.one();
        coeffs[1] = m.one();
        let a = CycResidue::from_coeffs(CycOrder::Zeta8, coeffs);
        assert_eq!(a.rational_part(), Err(Error::NotRational));
    }

    /// Multiply as plain integer polynomials, fold `x^d = -1` over signed
    /// integers, and reduce mod `M` only at the end.
    fn schoolbook_oracle<'a>(a: &CycResidue<'a>, b: &CycResidue<'a>) -> CycResidue<'a> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        let d = a.order().degree();
        let form = a.coeffs()[0].form();
        let mut wide = vec![BigInt::from(0); 2 * d];
        for i in 0..d {
            for j in 0..d {
                wide[i + j] += BigInt::from(a.coeffs()[i].value().clone())
                    * BigInt::from(b.coeffs()[j].value().clone());
            }
        }
        let m = BigInt::from(form.value().clone());
        let coeffs = (0..d)
            .map(|k| {
                let v = (&wide[k] - &wide[k + d]).mod_floor(&m);
                form.residue(&v.to_biguint().unwrap())
            })
            .collect();
        CycResidue::from_coeffs(a.order(), coeffs)
    }

    #[test]
    fn mul_matches_schoolbook_oracle() {
        use rand::{Rng, SeedableRng};
        let m = form6143();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for order in [CycOrder::Zeta8, CycOrder::Zeta16] {
            for _ in 0..1000 {
                let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                    let coeffs = (0..order.degree())
                        .map(|_| m.residue(&BigUint::from(rng.gen::<u64>())))
                        .collect();
                    CycResidue::from_coeffs(order, coeffs)
                };
                let a = mk(&mut rng);
                let b = mk(&mut rng);
                assert_eq!(a.mul(&b), schoolbook_oracle(&a, &b));
            }
        }
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::modnum::Sign;
    use proptest::prelude::*;

    fn arb_order() -> impl Strategy<Value = CycOrder> {
        prop_oneof![Just(CycOrder::Zeta8), Just(CycOrder::Zeta16)]
    }

    proptest! {
        #[test]
        fn galois_is_ring_homomorphism(
            order in arb_order(),
            raw in prop::collection::vec(any::<u64>(), 16),
            c in (0i64..8).prop_map(|k| 2 * k + 1),
        ) {
            let form = SpecialForm::from_u64(3, 11, Sign::Minus).unwrap();
            let d = order.degree();
            let mk = |vals: &[u64]| {
                CycResidue::from_coeffs(
                    order,
                    vals.iter().take(d).map(|v| form.residue(&BigUint::from(*v))).collect(),
                )
            };
            let a = mk(&raw[..8]);
            let b = mk(&raw[8..]);
            let s = GaloisElement::new(order, c);
            prop_assert_eq!(a.mul(&b).galois(s), a.galois(s).mul(&b.galois(s)));
            prop_assert_eq!(a.add(&b).galois(s), a.galois(s).add(&b.galois(s)));
        }

        #[test]
        fn full_orbit_sum_and_product_are_rational(
            order in arb_order(),
            raw in prop::collection::vec(any::<u64>(), 8),
        ) {
            let form = SpecialForm::from_u64(3, 11, Sign::Minus).unwrap();
            let d = order.degree();
            let a = CycResidue::from_coeffs(
                order,
                raw.iter().take(d).map(|v| form.residue(&BigUint::from(*v))).collect(),
            );
            let mut sum = CycResidue::constant(&form, order, 0);
            let mut prod = CycResidue::one(&form, order);
            for &c in order.unit_labels() {
                let img = a.galois(GaloisElement::new(order, c as i64));
                sum = sum.add(&img);
                prod = prod.mul(&img);
            }
            prop_assert!(sum.rational_part().is_ok());
            prop_assert!(prod.rational_part().is_ok());
        }

        #[test]
        fn composition_table_is_group_law(
            order in arb_order(),
            cd in (0i64..8, 0i64..8),
        ) {
            let c = 2 * cd.0 + 1;
            let d = 2 * cd.1 + 1;
            let form = SpecialForm::from_u64(1, 7, Sign::Minus).unwrap();
            let a = CycResidue::zeta_power(&form, order, 1);
            let sc = GaloisElement::new(order, c);
            let sd = GaloisElement::new(order, d);
            prop_assert_eq!(a.galois(sd).galois(sc), a.galois(sc.compose(sd)));
        }
    }
}
