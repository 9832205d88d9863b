//! Scalar traits shared by the exact algebra.
//!
//! Everything in this crate is exact: coefficients live in a [`Ring`] with
//! partial exact division (`BigInt`, `i64`, `BigRational`), and linear algebra
//! runs over a [`Field`] (`BigRational` or the prime field [`Fp`]).

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative ring with a partial exact division.
pub trait Ring:
    Clone + Eq + Debug + Display + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    /// Returns `q` with `q * rhs == self`, or `None` if no such element exists.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    /// Sign used when printing; rings without an order report `false`.
    fn is_negative(&self) -> bool;
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Ring for BigInt {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Ring for i64 {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if *rhs == 0 || self % rhs != 0 {
            return None;
        }
        self.checked_div(*rhs)
    }

    fn is_negative(&self) -> bool {
        *self < 0
    }
}

impl Ring for BigRational {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

/// Element of the prime field `F_P`, stored as its least non-negative residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Ring for Fp<P> {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| *self * r)
    }

    fn is_negative(&self) -> bool {
        false
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        // Fermat; P is assumed prime.
        (self.0 != 0).then(|| self.pow(P - 2))
    }
}

/// Converts an integer matrix entry into any ring.
pub fn from_i64<R: Ring>(v: i64) -> R {
    let mut acc = R::zero();
    let one = R::one();
    let mut base = if v < 0 { -one } else { one };
    let mut m = v.unsigned_abs();
    // double-and-add keeps this usable for large entries
    while m > 0 {
        if m & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        m >>= 1;
    }
    acc
}
