//! Coefficient rings for truncated power series.
//!
//! A ring is a small context value (it carries the modulus for `Z/m`) and
//! series store bare elements. Exact integers are generic over any
//! `num-traits` signed integer type, so the same series code runs over
//! `BigInt`, `i128` or `i64`.

use std::fmt::{self, Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, NumAssign, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Operations a coefficient ring provides to the series engine.
///
/// `Acc` is a wide accumulator used by the convolution kernels: sums of
/// products are collected in it and reduced once per output coefficient.
pub trait CoeffRing: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;
    type Acc;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Multiplicative inverse, if `a` is a unit.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Canonical signed representative, used for reports.
    fn to_bigint(&self, a: &Self::Elem) -> BigInt;
    /// 0 for exact integers, `m` for `Z/m`.
    fn modulus(&self) -> u64;

    fn acc_zero(&self) -> Self::Acc;
    fn acc_add_mul(&self, acc: &mut Self::Acc, a: &Self::Elem, b: &Self::Elem);
    fn acc_sub_mul(&self, acc: &mut Self::Acc, a: &Self::Elem, b: &Self::Elem);
    fn acc_add(&self, acc: &mut Self::Acc, a: &Self::Elem);
    fn acc_finish(&self, acc: Self::Acc) -> Self::Elem;
}

/// Bound collecting what the exact-integer ring needs from its scalar.
pub trait IntScalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Integer
    + NumAssign
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
{
    fn to_big(&self) -> BigInt;
}

impl IntScalar for BigInt {
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

impl IntScalar for i128 {
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl IntScalar for i64 {
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

/// The integers, represented by the scalar type `T`.
///
/// Fixed-width scalars wrap silently on overflow in release builds; use
/// `BigInt` whenever the coefficient size is not known to be bounded.
pub struct Integers<T>(std::marker::PhantomData<T>);

impl<T> Integers<T> {
    pub const fn new() -> Self {
        Integers(std::marker::PhantomData)
    }
}

impl<T> Default for Integers<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for Integers<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for Integers<T> {}

impl<T> PartialEq for Integers<T> {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl<T> Debug for Integers<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z<{}>", std::any::type_name::<T>())
    }
}

impl<T: IntScalar> CoeffRing for Integers<T> {
    type Elem = T;
    type Acc = T;

    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn from_i64(&self, v: i64) -> T {
        T::from_i64(v).expect("scalar type cannot hold i64 value")
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }
    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }
    fn neg(&self, a: &T) -> T {
        -a.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &T) -> Option<T> {
        if a.is_one() || (-a.clone()).is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn to_bigint(&self, a: &T) -> BigInt {
        a.to_big()
    }
    fn modulus(&self) -> u64 {
        0
    }

    fn acc_zero(&self) -> T {
        T::zero()
    }
    fn acc_add_mul(&self, acc: &mut T, a: &T, b: &T) {
        *acc += a.clone() * b.clone();
    }
    fn acc_sub_mul(&self, acc: &mut T, a: &T, b: &T) {
        *acc -= a.clone() * b.clone();
    }
    fn acc_add(&self, acc: &mut T, a: &T) {
        *acc += a.clone();
    }
    fn acc_finish(&self, acc: T) -> T {
        acc
    }
}

/// Largest modulus accepted by [`Zmod`]; residues and their products fit
/// comfortably in machine words below it.
pub const MAX_MODULUS: u64 = 1 << 31;

/// The residue ring `Z/m` with word-sized residues in `[0, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zmod {
    m: u64,
}

impl Zmod {
    pub fn new(m: u64) -> Result<Self> {
        if !(2..MAX_MODULUS).contains(&m) {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Zmod { m })
    }

    /// Canonical residue of an arbitrary-precision integer.
    pub fn reduce_big(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.m));
        r.to_u64().expect("residue fits in u64")
    }

    pub fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.m as i128) as u64
    }
}

impl CoeffRing for Zmod {
    type Elem = u64;
    type Acc = u128;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.m as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.m - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.m
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        let g = (*a as i64).extended_gcd(&(self.m as i64));
        if g.gcd == 1 {
            Some(self.from_i64(g.x))
        } else {
            None
        }
    }
    fn to_bigint(&self, a: &u64) -> BigInt {
        BigInt::from(*a)
    }
    fn modulus(&self) -> u64 {
        self.m
    }

    // Subtraction adds the additive inverse so the accumulator never goes
    // negative; each term is below 2^62 so u128 cannot overflow in practice.
    fn acc_zero(&self) -> u128 {
        0
    }
    fn acc_add_mul(&self, acc: &mut u128, a: &u64, b: &u64) {
        *acc += (*a as u128) * (*b as u128);
    }
    fn acc_sub_mul(&self, acc: &mut u128, a: &u64, b: &u64) {
        *acc += (self.neg(a) as u128) * (*b as u128);
    }
    fn acc_add(&self, acc: &mut u128, a: &u64) {
        *acc += *a as u128;
    }
    fn acc_finish(&self, acc: u128) -> u64 {
        (acc % self.m as u128) as u64
    }
}

/// Runtime description of a coefficient ring: `0` means exact integers,
/// `m >= 2` means `Z/m`. `1` is rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingSpec {
    pub modulus: u64,
}

impl RingSpec {
    pub const INTEGERS: RingSpec = RingSpec { modulus: 0 };

    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 1 || modulus >= MAX_MODULUS {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(RingSpec { modulus })
    }

    pub fn is_exact(&self) -> bool {
        self.modulus == 0
    }
}
