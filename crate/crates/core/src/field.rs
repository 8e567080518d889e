//! Prime fields GF(p) with canonical representatives `0..p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// The field GF(p) for a prime `p < 2^16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    modulus: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus >= 1 << 16 || !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        Ok(Self {
            modulus: modulus as u32,
        })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn zero(self) -> FieldElement {
        FieldElement {
            value: 0,
            field: self,
        }
    }

    pub fn one(self) -> FieldElement {
        FieldElement {
            value: 1,
            field: self,
        }
    }

    /// Element with the given representative, reduced mod p.
    pub fn element(self, value: i64) -> FieldElement {
        FieldElement {
            value: self.reduce(value),
            field: self,
        }
    }

    #[inline]
    pub fn reduce(self, value: i64) -> u32 {
        value.rem_euclid(self.modulus as i64) as u32
    }

    #[inline]
    pub(crate) fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub(crate) fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub(crate) fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.modulus as u64) as u32
    }

    /// Inverse by Fermat: a^(p-2).
    pub(crate) fn inv(self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut base = a as u64;
        let mut exp = self.modulus - 2;
        let m = self.modulus as u64;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Ok(acc as u32)
    }

    /// All elements in increasing order of representative.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.modulus).map(move |value| FieldElement { value, field: self })
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.modulus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    field: PrimeField,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Self> {
        Ok(Self {
            value: self.field.inv(self.value)?,
            field: self.field,
        })
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for FieldElement {
            type Output = FieldElement;

            #[inline]
            fn $method(self, rhs: FieldElement) -> FieldElement {
                debug_assert_eq!(self.field, rhs.field, "mixed-field arithmetic");
                FieldElement {
                    value: self.field.$method(self.value, rhs.value),
                    field: self.field,
                }
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        FieldElement {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}
