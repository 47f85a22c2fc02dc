//! Exact-rational computation of the seed tuples, for cross-checking the
//! mod-`M` path. The cyclotomic arithmetic is re-implemented here over
//! `BigRational` coefficient vectors on purpose; sharing the production ring
//! code would defeat the cross-check.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::modnum::SpecialForm;
use crate::seeds::SeedKind;
use crate::Error;

/// Exact seeds are computed only for small exponents; the coefficient sizes
/// grow with a power of 17 per unit of `h`.
pub const MAX_EXACT_H: u64 = 25;

/// Dense exact element of `Q(zeta_m)` over the power basis, `zeta^d = -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ExactCyc {
    m: u32,
    coeffs: Vec<BigRational>,
}

impl ExactCyc {
    fn zero(m: u32) -> ExactCyc {
        ExactCyc {
            m,
            coeffs: vec![BigRational::zero(); (m / 2) as usize],
        }
    }

    fn one(m: u32) -> ExactCyc {
        let mut e = ExactCyc::zero(m);
        e.coeffs[0] = BigRational::one();
        e
    }

    fn from_ints(m: u32, vals: &[i64]) -> ExactCyc {
        let coeffs = vals
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        ExactCyc { m, coeffs }
    }

    fn d(&self) -> usize {
        (self.m / 2) as usize
    }

    fn add(&self, rhs: &ExactCyc) -> ExactCyc {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        ExactCyc { m: self.m, coeffs }
    }

    fn mul(&self, rhs: &ExactCyc) -> ExactCyc {
        let d = self.d();
        let mut coeffs = vec![BigRational::zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                if i + j < d {
                    coeffs[i + j] += p;
                } else {
                    coeffs[i + j - d] -= p;
                }
            }
        }
        ExactCyc { m: self.m, coeffs }
    }

    fn galois(&self, c: i64) -> ExactCyc {
        let m = self.m as i64;
        let d = self.d();
        let mut coeffs = vec![BigRational::zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = (i as i64 * c).rem_euclid(m) as usize;
            if e < d {
                coeffs[e] += a;
            } else {
                coeffs[e - d] -= a;
            }
        }
        ExactCyc { m: self.m, coeffs }
    }

    fn conj(&self) -> ExactCyc {
        self.galois(-1)
    }

    fn pow(&self, e: u64) -> ExactCyc {
        let mut result = ExactCyc::one(self.m);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    fn inv(&self) -> ExactCyc {
        let mut p = ExactCyc::one(self.m);
        for c in (3..self.m as i64).step_by(2) {
            p = p.mul(&self.galois(c));
        }
        let norm = p.mul(self);
        let nval = norm.rational().expect("full conjugate product is rational");
        assert!(!nval.is_zero(), "exact inverse of a zero-norm element");
        let coeffs = p.coeffs.iter().map(|a| a / &nval).collect();
        ExactCyc { m: self.m, coeffs }
    }

    fn group_ring_pow(&self, tau: &[(i64, u64)]) -> ExactCyc {
        let mut acc = ExactCyc::one(self.m);
        for &(c, w) in tau {
            acc = acc.mul(&self.galois(c).pow(w));
        }
        acc
    }

    fn rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(self.coeffs[0].clone())
    }
}

/// An exact seed tuple in `Q`; implementation invariant: every denominator
/// is a power of 17.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactSeeds {
    Octic {
        t0: BigRational,
        n0: BigRational,
    },
    Bioctic {
        x0: BigRational,
        y0: BigRational,
        z0: BigRational,
        w0: BigRational,
    },
}

impl ExactSeeds {
    pub fn components(&self) -> Vec<BigRational> {
        match self {
            ExactSeeds::Octic { t0, n0 } => vec![t0.clone(), n0.clone()],
            ExactSeeds::Bioctic { x0, y0, z0, w0 } => {
                vec![x0.clone(), y0.clone(), z0.clone(), w0.clone()]
            }
        }
    }

    /// The tuple reduced mod `M` (denominators are inverted mod `M`).
    pub fn reduce_mod(&self, form: &SpecialForm) -> Result<Vec<BigUint>, Error> {
        self.components()
            .iter()
            .map(|r| rational_mod(r, form.value()))
            .collect()
    }
}

fn denominator_is_17_power(r: &BigRational) -> bool {
    let seventeen = BigInt::from(17u32);
    let mut q = r.denom().clone();
    while (&q % &seventeen).is_zero() {
        q /= &seventeen;
    }
    q.is_one()
}

/// Computes the exact rational seed tuple for an exponent `h <= 25`.
///
/// Asserts what the construction promises: every Galois-orbit quantity is
/// exactly rational and every denominator is a power of 17.
#[allow(clippy::needless_range_loop)] // i < j < k index loops mirror the sums
pub fn exact_seeds(h: u64, kind: SeedKind) -> Result<ExactSeeds, Error> {
    if h == 0 || h > MAX_EXACT_H {
        return Err(Error::ExactSeedsRange { max: MAX_EXACT_H });
    }
    let rational = |e: &ExactCyc| -> BigRational {
        let r = e.rational().expect("Galois-invariant value must be rational");
        assert!(denominator_is_17_power(&r), "denominator must be a 17 power");
        r
    };
    match kind {
        SeedKind::Octic => {
            let pi = ExactCyc::from_ints(8, &[1, 0, 0, 2]);
            let base = pi.mul(&pi.conj().inv());
            let alpha = base.group_ring_pow(&[(1, 1), (3, 3)]);
            let ah = alpha.pow(h);
            let eta = ah.add(&ah.conj());
            assert_eq!(eta.conj(), eta, "eta must be conjugation-invariant");
            let s3 = eta.galois(3);
            let t0 = rational(&eta.add(&s3));
            let n0 = rational(&eta.mul(&s3));
            Ok(ExactSeeds::Octic { t0, n0 })
        }
        SeedKind::Bioctic => {
            let pi = ExactCyc::from_ints(16, &[1, -1, 0, 0, 0, 1, 0, 0]);
            let base = pi.mul(&pi.conj().inv());
            let alpha = base.group_ring_pow(&[(1, 1), (-5, 3), (-3, 5), (7, 7)]);
            let ah = alpha.pow(h);
            let eta = ah.add(&ah.conj());
            assert_eq!(eta.conj(), eta, "eta must be conjugation-invariant");
            let orbit = [eta.clone(), eta.galois(3), eta.galois(5), eta.galois(7)];
            let mut e1 = ExactCyc::zero(16);
            let mut e2 = ExactCyc::zero(16);
            let mut e3 = ExactCyc::zero(16);
            for i in 0..4 {
                e1 = e1.add(&orbit[i]);
                for j in (i + 1)..4 {
                    let pair = orbit[i].mul(&orbit[j]);
                    e2 = e2.add(&pair);
                    for k in (j + 1)..4 {
                        e3 = e3.add(&pair.mul(&orbit[k]));
                    }
                }
            }
            let e4 = orbit[0].mul(&orbit[1]).mul(&orbit[2]).mul(&orbit[3]);
            Ok(ExactSeeds::Bioctic {
                x0: rational(&e1),
                y0: rational(&e2),
                z0: rational(&e3),
                w0: rational(&e4),
            })
        }
    }
}

/// Reduces `p/q` mod `m` as `p * q^(-1)`, handling negative numerators.
pub fn rational_mod(r: &BigRational, m: &BigUint) -> Result<BigUint, Error> {
    let m_int = BigInt::from(m.clone());
    let p = r.numer().mod_floor(&m_int);
    let q = r.denom().mod_floor(&m_int);
    let eg = q.extended_gcd(&m_int);
    if !eg.gcd.is_one() {
        return Err(Error::NotInvertible(
            eg.gcd.to_biguint().expect("non-negative gcd"),
        ));
    }
    let inv = eg.x.mod_floor(&m_int);
    Ok((p * inv % &m_int)
        .mod_floor(&m_int)
        .to_biguint()
        .expect("canonical residue"))
}
