//! Coefficient fields.
//!
//! Everything above `poly` is written against [`Field`]. The engine itself
//! runs over [`Rational`]; [`Zp`] exists for modular cross-checks of the
//! Groebner machinery.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// An exact coefficient field.
///
/// The reference-taking methods exist because the Groebner inner loops would
/// otherwise clone big integers on every multiply.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn mul_ref(&self, other: &Self) -> Self;

    fn add_ref(&self, other: &Self) -> Self;

    fn sub_ref(&self, other: &Self) -> Self;

    fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.inv())
    }

    /// Used by the text printer to emit `- c*m` instead of `+ -c*m`.
    fn is_negative(&self) -> bool {
        false
    }

    /// The scalar that a polynomial with leading coefficient `lead` and
    /// coefficients `all` is divided by to reach its normalized associate.
    /// Over a general field this makes the polynomial monic.
    fn normalizer<'a>(lead: &'a Self, _all: &mut dyn Iterator<Item = &'a Self>) -> Self {
        lead.clone()
    }

    /// Parse a decimal integer literal.
    fn from_bigint(n: &BigInt) -> Self;
}

impl Field for Rational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    /// Rational content with the sign of the leading coefficient, so that the
    /// normalized polynomial has coprime integer coefficients and a positive
    /// leading coefficient.
    fn normalizer<'a>(lead: &'a Self, all: &mut dyn Iterator<Item = &'a Self>) -> Self {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in all {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Self::one();
        }
        let content = BigRational::new(num_gcd, den_lcm);
        if Signed::is_negative(lead) {
            -content
        } else {
            content
        }
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

/// Integers modulo a prime `P` (which must fit in 32 bits so products fit
/// in a `u64`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Zp<const P: u64>(u64);

impl<const P: u64> Zp<P> {
    pub fn new(v: i64) -> Self {
        Zp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Zp(acc)
    }
}

impl<const P: u64> Display for Zp<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Zp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Zp((self.0 + o.0) % P)
    }
}

impl<const P: u64> Sub for Zp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Zp((self.0 + P - o.0) % P)
    }
}

impl<const P: u64> Mul for Zp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Zp(self.0 * o.0 % P)
    }
}

impl<const P: u64> Neg for Zp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Zp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Zp<P> {
    fn one() -> Self {
        Zp(1 % P)
    }
}

impl<const P: u64> Field for Zp<P> {
    fn from_i64(n: i64) -> Self {
        Zp::new(n)
    }

    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        *self * *other
    }

    fn add_ref(&self, other: &Self) -> Self {
        *self + *other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        *self - *other
    }

    fn from_bigint(n: &BigInt) -> Self {
        let m = n.mod_floor(&BigInt::from(P));
        Zp(m.try_into().expect("reduced residue fits in u64"))
    }
}
