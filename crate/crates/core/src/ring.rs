//! Coefficient rings.
//!
//! Two rings are supported: the integers and the two-element field. Public
//! vectors and matrices always carry [`BigInt`] entries (reduced to `0`/`1`
//! over `Z2`); the elimination engine works generically over [`Coefficient`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Z2")]
    Mod2,
}

impl Ring {
    /// Canonical representative of `x` in this ring.
    pub fn reduce(self, x: BigInt) -> BigInt {
        match self {
            Ring::Integers => x,
            Ring::Mod2 => x.mod_floor(&BigInt::from(2)),
        }
    }

    pub fn reduce_vec(self, v: Vec<BigInt>) -> Vec<BigInt> {
        match self {
            Ring::Integers => v,
            Ring::Mod2 => v.into_iter().map(|x| self.reduce(x)).collect(),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("Z"),
            Ring::Mod2 => f.write_str("Z2"),
        }
    }
}

impl FromStr for Ring {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" | "z" | "Integers" | "integers" | "int" => Ok(Ring::Integers),
            "Z2" | "z2" | "Mod2" | "mod2" | "F2" | "GF2" => Ok(Ring::Mod2),
            other => Err(format!("unknown ring {other:?} (expected Z or Z2)")),
        }
    }
}

/// Arithmetic needed by the elimination engine: a Euclidean domain whose
/// elements can be compared by size for pivot selection.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    const RING: Ring;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Compares Euclidean sizes (absolute values over the integers).
    fn size_cmp(&self, other: &Self) -> Ordering;

    /// Quotient `q` such that `self - q * divisor` is strictly smaller than
    /// `divisor`.
    fn quotient(&self, divisor: &Self) -> Self;

    /// Exact division; `divisor` must divide `self`.
    fn exact_div(&self, divisor: &Self) -> Self;

    fn divides(&self, other: &Self) -> bool;

    /// `(g, s, t)` with `g = s*a + t*b` and `g` in canonical (non-negative) form.
    fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self);

    /// True when the element is a non-canonical associate (negative integer).
    fn needs_sign_flip(&self) -> bool;

    fn from_bigint(x: &BigInt) -> Self;
    fn to_bigint(&self) -> BigInt;
}

impl Coefficient for BigInt {
    const RING: Ring = Ring::Integers;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn size_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn quotient(&self, divisor: &Self) -> Self {
        // truncating division leaves |r| < |divisor|
        self / divisor
    }
    fn exact_div(&self, divisor: &Self) -> Self {
        self / divisor
    }
    fn divides(&self, other: &Self) -> bool {
        if Zero::is_zero(self) {
            return Zero::is_zero(other);
        }
        Zero::is_zero(&(other % self))
    }
    fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let e = a.extended_gcd(b);
        if e.gcd.is_negative() {
            (-e.gcd, -e.x, -e.y)
        } else {
            (e.gcd, e.x, e.y)
        }
    }
    fn needs_sign_flip(&self) -> bool {
        self.is_negative()
    }
    fn from_bigint(x: &BigInt) -> Self {
        x.clone()
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Element of the two-element field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Z2(pub bool);

impl Coefficient for Z2 {
    const RING: Ring = Ring::Mod2;

    fn zero() -> Self {
        Z2(false)
    }
    fn one() -> Self {
        Z2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn is_unit(&self) -> bool {
        self.0
    }
    fn add(&self, other: &Self) -> Self {
        Z2(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Z2(self.0 & other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn size_cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
    fn quotient(&self, divisor: &Self) -> Self {
        assert!(divisor.0, "division by zero in Z2");
        *self
    }
    fn exact_div(&self, divisor: &Self) -> Self {
        self.quotient(divisor)
    }
    fn divides(&self, other: &Self) -> bool {
        self.0 || !other.0
    }
    fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        if a.0 {
            (Z2(true), Z2(true), Z2(false))
        } else if b.0 {
            (Z2(true), Z2(false), Z2(true))
        } else {
            (Z2(false), Z2(true), Z2(false))
        }
    }
    fn needs_sign_flip(&self) -> bool {
        false
    }
    fn from_bigint(x: &BigInt) -> Self {
        Z2(x.is_odd())
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0 as u8)
    }
}
