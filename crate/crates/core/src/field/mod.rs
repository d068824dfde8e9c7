//! Exact scalar fields.
//!
//! Every field is a small context value (`Rationals`, `PrimeField`, ...) and
//! its elements are plain data. Operations go through the context so that
//! runtime parameters such as the characteristic or an extension modulus do
//! not have to be stored inside every element.

mod algext;
mod prime;
mod ratfunc;
mod rational;

use std::fmt;

pub use algext::AlgExt;
pub use prime::PrimeField;
pub use ratfunc::{RatFunc, RatFuncElem};
pub use rational::{parse_rational, Rationals};

use num_rational::BigRational;

/// A commutative field with canonical element representatives.
///
/// Equality of elements is structural; implementations keep every element in
/// reduced form so that `==` is mathematical equality.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. `None` for zero, and for zero divisors when the
    /// context is a quotient ring whose modulus turned out to be reducible.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Zero for characteristic zero.
    fn characteristic(&self) -> u64;
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn scale_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(a, &self.from_i64(n))
    }

    /// Image of a rational number; `None` if the denominator vanishes in
    /// this characteristic.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        self.div(&num, &den)
    }

    fn from_bigint(&self, n: &num_bigint::BigInt) -> Self::Elem {
        use num_traits::ToPrimitive;
        if let Some(small) = n.to_i64() {
            return self.from_i64(small);
        }
        // Horner in base 2^32 keeps every intermediate inside i64.
        let (sign, digits) = n.to_u32_digits();
        let radix = self.from_i64(1i64 << 32);
        let mut acc = self.zero();
        for d in digits.iter().rev() {
            acc = self.add(&self.mul(&acc, &radix), &self.from_i64(*d as i64));
        }
        if sign == num_bigint::Sign::Minus {
            self.neg(&acc)
        } else {
            acc
        }
    }
}

/// Fields with an exact square-root oracle.
pub trait SqrtField: Field {
    /// Some square root of `a` if `a` is a square, with a documented
    /// representative choice per implementation.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_square(&self, a: &Self::Elem) -> bool {
        self.sqrt(a).is_some()
    }
}

/// Fields that are finite-dimensional Q-vector spaces (Q and towers over it).
pub trait RationalVectorSpace: Field {
    fn dimension(&self) -> usize;
    fn to_coords(&self, a: &Self::Elem) -> Vec<BigRational>;
    fn from_coords(&self, coords: &[BigRational]) -> Self::Elem;
}
