use std::fmt;

use serde::{Deserialize, Serialize};

use super::{is_prime, Field, FieldError};

/// A residue modulo the field's prime, always stored reduced.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct Fp(pub u32);

impl Fp {
    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p == 2 || p == 3 {
            return Err(FieldError::SmallCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(FieldError::CompositeModulus(p));
        }
        if p >= 1 << 16 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        Ok(Self { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn elem(&self, n: i64) -> Fp {
        Fp(n.rem_euclid(self.p as i64) as u32)
    }

    /// Symmetric lift to `(-p/2, p/2]`, handy for printing.
    pub fn signed(&self, a: Fp) -> i64 {
        let v = a.0 as i64;
        if v > self.p as i64 / 2 {
            v - self.p as i64
        } else {
            v
        }
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn degree(&self) -> u32 {
        1
    }

    fn order(&self) -> u128 {
        self.p as u128
    }

    fn zero(&self) -> Fp {
        Fp(0)
    }

    fn one(&self) -> Fp {
        Fp(1)
    }

    fn from_i64(&self, n: i64) -> Fp {
        self.elem(n)
    }

    #[inline]
    fn add(&self, a: Fp, b: Fp) -> Fp {
        let s = a.0 + b.0;
        Fp(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    fn sub(&self, a: Fp, b: Fp) -> Fp {
        Fp(if a.0 >= b.0 {
            a.0 - b.0
        } else {
            a.0 + self.p - b.0
        })
    }

    #[inline]
    fn neg(&self, a: Fp) -> Fp {
        Fp(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    fn mul(&self, a: Fp, b: Fp) -> Fp {
        Fp(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    fn inv(&self, a: Fp) -> Result<Fp, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(self.elem(t0))
    }

    fn element(&self, index: u64) -> Fp {
        Fp(index as u32)
    }

    fn index_of(&self, a: Fp) -> u64 {
        a.0 as u64
    }
}
