//! Residue arithmetic modulo `M = h*2^n +/- 1` with a reduction path that
//! exploits the special form instead of long division.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::Error;

/// Sign of the trailing term in `h*2^n +/- 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `'+'` or `'-'`, as used in candidate expressions.
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A candidate `M = h*2^n +/- 1` with `h` odd, together with precomputed
/// data for fast reduction mod `M`.
///
/// The test itself applies only inside the window reported by
/// [`SpecialForm::window_valid`]; the form can still be constructed outside
/// it so that callers can fall back to a generic oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialForm {
    h: BigUint,
    n: u64,
    sign: Sign,
    value: BigUint,
    low_mask: BigUint, // 2^n - 1
    h_is_one: bool,
}

impl SpecialForm {
    /// Builds the form and caches `M`. Rejects even or zero `h` and values
    /// below 3.
    pub fn new(h: BigUint, n: u64, sign: Sign) -> Result<Self, Error> {
        if h.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        if (&h % 2u32).is_zero() {
            return Err(Error::EvenMultiplier);
        }
        let shifted = &h << n;
        let value = match sign {
            Sign::Plus => &shifted + 1u32,
            Sign::Minus => &shifted - 1u32,
        };
        if value < BigUint::from(3u32) {
            return Err(Error::ValueTooSmall);
        }
        let h_is_one = h.is_one();
        Ok(SpecialForm {
            h,
            n,
            sign,
            value,
            low_mask: (BigUint::one() << n) - 1u32,
            h_is_one,
        })
    }

    /// Convenience constructor for small `h`.
    pub fn from_u64(h: u64, n: u64, sign: Sign) -> Result<Self, Error> {
        Self::new(BigUint::from(h), n, sign)
    }

    pub fn h(&self) -> &BigUint {
        &self.h
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// The cached value of `M` itself.
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// Whether the form lies in the window where the Lucasian test applies:
    /// `n >= 7`, `0 < h < 2^(n-6)` and `h` not divisible by 17.
    pub fn window_valid(&self) -> bool {
        self.n >= 7
            && self.h < (BigUint::one() << (self.n - 6))
            && !(&self.h % 17u32).is_zero()
    }

    /// Reduces an arbitrary non-negative integer mod `M`, bit-identical to
    /// the schoolbook remainder.
    ///
    /// Splits `x = a*2^n + b` and `a = q*h + t`; since `h*2^n = -sign (mod M)`
    /// this gives `x = t*2^n + b - sign*q (mod M)` with `t*2^n + b <= M`,
    /// so each pass shrinks `x` by roughly a factor of `M` and no long
    /// division by `M` is ever performed.
    pub fn reduce(&self, x: &BigUint) -> BigUint {
        let mut x = x.clone();
        loop {
            if x < self.value {
                return x;
            }
            if x == self.value {
                return BigUint::zero();
            }
            // After the two checks above, x > M forces a >= h, hence q >= 1
            // and every pass makes strict progress.
            let a: BigUint = &x >> self.n;
            let b = &x & &self.low_mask;
            let (q, t) = if self.h_is_one {
                (a, BigUint::zero())
            } else {
                a.div_rem(&self.h)
            };
            let folded = (t << self.n) + b;
            match self.sign {
                Sign::Minus => x = folded + q,
                Sign::Plus => {
                    if q <= folded {
                        x = folded - q;
                    } else {
                        // x = -(q - folded) (mod M); q - folded < x, so the
                        // recursion bottoms out.
                        let e = self.reduce(&(q - folded));
                        x = if e.is_zero() {
                            BigUint::zero()
                        } else {
                            &self.value - e
                        };
                    }
                }
            }
        }
    }

    /// Wraps an integer as a residue mod `M`.
    pub fn residue(&self, x: &BigUint) -> Residue<'_> {
        Residue {
            value: self.reduce(x),
            form: self,
        }
    }

    /// Residue of a small signed constant (`-4` becomes `M - 4`, and so on).
    pub fn residue_i64(&self, v: i64) -> Residue<'_> {
        let mag = self.reduce(&BigUint::from(v.unsigned_abs()));
        let value = if v < 0 && !mag.is_zero() {
            &self.value - mag
        } else {
            mag
        };
        Residue { value, form: self }
    }

    pub fn zero(&self) -> Residue<'_> {
        Residue {
            value: BigUint::zero(),
            form: self,
        }
    }

    pub fn one(&self) -> Residue<'_> {
        self.residue(&BigUint::one())
    }

    fn same_parameters(&self, other: &SpecialForm) -> bool {
        self.n == other.n && self.sign == other.sign && self.h == other.h
    }
}

impl fmt::Display for SpecialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}{}1", self.h, self.n, self.sign.symbol())
    }
}

/// An element of `Z/M`, always kept in `[0, M)`.
///
/// Mixing residues of different moduli is a programming error and panics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue<'a> {
    value: BigUint,
    form: &'a SpecialForm,
}

impl<'a> Residue<'a> {
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn form(&self) -> &'a SpecialForm {
        self.form
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check_form(&self, other: &Residue<'a>) {
        assert!(
            self.form.same_parameters(other.form),
            "modulus mismatch: {} vs {}",
            self.form,
            other.form
        );
    }

    pub fn add(&self, rhs: &Residue<'a>) -> Residue<'a> {
        self.check_form(rhs);
        let mut v = &self.value + &rhs.value;
        if v >= *self.form.value() {
            v -= self.form.value();
        }
        Residue {
            value: v,
            form: self.form,
        }
    }

    pub fn sub(&self, rhs: &Residue<'a>) -> Residue<'a> {
        self.check_form(rhs);
        let value = if self.value >= rhs.value {
            &self.value - &rhs.value
        } else {
            self.form.value() - &rhs.value + &self.value
        };
        Residue {
            value,
            form: self.form,
        }
    }

    pub fn mul(&self, rhs: &Residue<'a>) -> Residue<'a> {
        self.check_form(rhs);
        Residue {
            value: self.form.reduce(&(&self.value * &rhs.value)),
            form: self.form,
        }
    }

    /// Multiplies by a small scalar.
    pub fn scale(&self, k: u64) -> Residue<'a> {
        Residue {
            value: self.form.reduce(&(&self.value * k)),
            form: self.form,
        }
    }

    pub fn add_u64(&self, k: u64) -> Residue<'a> {
        self.add(&self.form.residue(&BigUint::from(k)))
    }

    pub fn sub_u64(&self, k: u64) -> Residue<'a> {
        self.sub(&self.form.residue(&BigUint::from(k)))
    }

    pub fn neg(&self) -> Residue<'a> {
        if self.value.is_zero() {
            self.clone()
        } else {
            Residue {
                value: self.form.value() - &self.value,
                form: self.form,
            }
        }
    }

    /// Square-and-multiply exponentiation; `a^0 = 1`.
    pub fn pow(&self, e: &BigUint) -> Residue<'a> {
        let mut result = self.form.one();
        for i in (0..e.bits()).rev() {
            result = result.mul(&result);
            if e.bit(i) {
                result = result.mul(self);
            }
        }
        result
    }

    /// Modular inverse by extended gcd.
    ///
    /// A nontrivial gcd is reported through [`Error::NotInvertible`]; when
    /// `1 < gcd < M` the carried value is a factor of `M`.
    pub fn inv(&self) -> Result<Residue<'a>, Error> {
        use num_bigint::BigInt;
        let a = BigInt::from(self.value.clone());
        let m = BigInt::from(self.form.value().clone());
        let eg = a.extended_gcd(&m);
        if !eg.gcd.is_one() {
            let g = eg.gcd.to_biguint().expect("gcd of non-negative inputs");
            return Err(Error::NotInvertible(g));
        }
        let inv = eg.x.mod_floor(&m).to_biguint().expect("canonical residue");
        Ok(Residue {
            value: inv,
            form: self.form,
        })
    }
}

impl fmt::Display for Residue<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
