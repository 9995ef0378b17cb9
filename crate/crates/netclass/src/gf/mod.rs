//! Prime fields and a small tower of extensions over them.
//!
//! [`PrimeField`] is the ground field `F_p`. A [`FieldCtx`] additionally holds
//! one monic irreducible polynomial for each requested extension degree, and
//! [`ExtField`] is a borrowed view of a single level that implements [`Field`].

mod ext;
mod prime;

pub use ext::{ExtField, FieldCtx, Fq, SUPPORTED_LEVELS};
pub use prime::{Fp, PrimeField};

use std::fmt::Debug;
use std::hash::Hash;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    CompositeModulus(u64),
    #[error("characteristic {0} is excluded; p must be at least 5")]
    SmallCharacteristic(u64),
    #[error("modulus {0} is too large; p must be below 65536")]
    ModulusTooLarge(u64),
    #[error("extension degree {0} is not supported (choose from 1, 2, 3, 4, 6)")]
    UnsupportedLevel(u32),
    #[error("level {0} is not present in this field context")]
    MissingLevel(u32),
    #[error("cannot embed level {from} into level {to}")]
    BadEmbedding { from: u32, to: u32 },
    #[error("no irreducible polynomial of degree {0} was found")]
    IrreducibleSearchFailed(u32),
    #[error("division by zero")]
    DivisionByZero,
}

/// A finite field with cheap copyable elements.
///
/// Elements carry no reference to their field, so every operation goes
/// through the field value.
pub trait Field: Clone + Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + Debug + Send + Sync;

    fn characteristic(&self) -> u32;
    /// Degree over the prime field.
    fn degree(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Result<Self::Elem, FieldError>;
    /// The element with the given index in `0..order()`; index 0 is zero and
    /// index 1 is one.
    fn element(&self, index: u64) -> Self::Elem;
    fn index_of(&self, a: Self::Elem) -> u64;

    fn order(&self) -> u128 {
        (self.characteristic() as u128).pow(self.degree())
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn div(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn pow(&self, a: Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn square(&self, a: Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn is_square(&self, a: Self::Elem) -> bool {
        self.is_zero(a) || self.pow(a, (self.order() - 1) / 2) == self.one()
    }

    fn frobenius(&self, a: Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic() as u128)
    }

    /// All elements in index order.
    fn elements(&self) -> Vec<Self::Elem> {
        (0..self.order() as u64).map(|i| self.element(i)).collect()
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
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

/// Shorthand for `FieldCtx::new`.
pub fn make_field(p: u64, levels: &[u32]) -> Result<FieldCtx, FieldError> {
    FieldCtx::new(p, levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }
}
