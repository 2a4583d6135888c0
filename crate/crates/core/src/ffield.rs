//! Arithmetic in prime fields `F_p`.
//!
//! The quadratic-form material only makes sense in odd characteristic, so
//! [`PrimeField::new`] rejects `p = 2`. Plain matrix counting is the one
//! place where characteristic two is still useful (rank strata of ordinary
//! matrices do not care), and [`PrimeField::new_any`] admits it.

use std::fmt;

use thiserror::Error;

/// Largest characteristic accepted anywhere in the crate.
pub const MAX_PRIME: u32 = 251;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("characteristic {0} is not supported here (need an odd prime between 3 and {MAX_PRIME})")]
    UnsupportedCharacteristic(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

/// A residue in `[0, p)`. The modulus lives in the owning [`PrimeField`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fp(u32);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u32) -> bool {
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

/// Odd primes up to [`MAX_PRIME`], ascending.
pub fn odd_primes() -> impl Iterator<Item = u32> {
    (3..=MAX_PRIME).step_by(2).filter(|&n| is_prime(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Odd prime fields only, `3 <= p <= 251`.
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p == 2 || p > MAX_PRIME {
            return Err(FieldError::UnsupportedCharacteristic(p));
        }
        Ok(PrimeField { p })
    }

    /// Like [`PrimeField::new`] but also admits `p = 2`. Only the plain
    /// matrix oracles use this.
    pub fn new_any(p: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(FieldError::UnsupportedCharacteristic(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary integer into the field.
    #[inline]
    pub fn elem(&self, x: i64) -> Fp {
        Fp(x.rem_euclid(self.p as i64) as u32)
    }

    /// Wraps a value already known to lie in `[0, p)`.
    #[inline]
    pub fn from_residue(&self, x: u32) -> Fp {
        debug_assert!(x < self.p);
        Fp(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fp> {
        (0..self.p).map(Fp)
    }

    #[inline]
    pub fn add(&self, a: Fp, b: Fp) -> Fp {
        let s = a.0 + b.0;
        Fp(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, a: Fp, b: Fp) -> Fp {
        Fp(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    pub fn neg(&self, a: Fp) -> Fp {
        Fp(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: Fp, b: Fp) -> Fp {
        Fp(a.0 * b.0 % self.p)
    }

    pub fn pow(&self, a: Fp, mut e: u64) -> Fp {
        let mut base = a;
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fp) -> Result<Fp, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        // Fermat: a^(p-2)
        Ok(self.pow(a, (self.p - 2) as u64))
    }

    /// Euler's criterion; zero counts as a square.
    pub fn is_square(&self, a: Fp) -> bool {
        if a.is_zero() || self.p == 2 {
            return true;
        }
        self.pow(a, ((self.p - 1) / 2) as u64) == Fp::ONE
    }

    /// Exhaustive version of [`PrimeField::is_square`], used as a cross-check.
    pub fn is_square_by_scan(&self, a: Fp) -> bool {
        self.elements().any(|x| self.mul(x, x) == a)
    }

    /// Quadratic character: 0 on zero, 1 on nonzero squares, -1 otherwise.
    pub fn legendre(&self, a: Fp) -> i32 {
        if a.is_zero() {
            0
        } else if self.is_square(a) {
            1
        } else {
            -1
        }
    }

    /// Table of inverses indexed by residue; entry 0 is unused and set to 0.
    pub fn inverse_table(&self) -> Vec<u32> {
        let mut t = vec![0u32; self.p as usize];
        for a in 1..self.p {
            t[a as usize] = self.pow(Fp(a), (self.p - 2) as u64).0;
        }
        t
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_inverse(f: &PrimeField, a: Fp) -> Option<Fp> {
        f.elements().find(|&x| f.mul(a, x) == Fp::ONE)
    }

    #[test]
    fn inverse_examples() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(f3.inv(f3.elem(2)).unwrap().value(), 2);
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.inv(f5.elem(1)).unwrap().value(), 1);
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.inv(f7.elem(3)).unwrap().value(), 5);
        assert_eq!(brute_inverse(&f7, f7.elem(3)).unwrap().value(), 5);
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = PrimeField::new(11).unwrap();
        assert_eq!(f.inv(Fp::ZERO), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn square_examples() {
        let f3 = PrimeField::new(3).unwrap();
        assert!(f3.is_square(f3.elem(1)));
        assert!(!f3.is_square(f3.elem(2)));
        let f5 = PrimeField::new(5).unwrap();
        assert!(f5.is_square(f5.elem(4)));
        assert!(f5.is_square(Fp::ZERO));
    }

    #[test]
    fn construction_rules() {
        assert_eq!(PrimeField::new(2), Err(FieldError::UnsupportedCharacteristic(2)));
        assert_eq!(PrimeField::new(9), Err(FieldError::NotPrime(9)));
        assert_eq!(PrimeField::new(257), Err(FieldError::UnsupportedCharacteristic(257)));
        assert!(PrimeField::new_any(2).is_ok());
        assert!(PrimeField::new(251).is_ok());
        assert_eq!(odd_primes().next(), Some(3));
        assert_eq!(odd_primes().last(), Some(251));
    }

    #[test]
    fn field_invariants_small_primes() {
        for p in odd_primes().take_while(|&p| p <= 31) {
            let f = PrimeField::new(p).unwrap();
            let mut nonzero_squares = 0;
            for a in f.elements() {
                assert_eq!(f.is_square(a), f.is_square_by_scan(a), "p={p} a={a}");
                if !a.is_zero() {
                    let ia = f.inv(a).unwrap();
                    assert_eq!(f.inv(ia).unwrap(), a);
                    assert_eq!(Some(ia), brute_inverse(&f, a));
                    if f.is_square(a) {
                        nonzero_squares += 1;
                    }
                }
            }
            assert_eq!(nonzero_squares, (p - 1) / 2);
        }
    }

    #[test]
    fn inverse_table_matches() {
        let f = PrimeField::new(13).unwrap();
        let t = f.inverse_table();
        for a in 1..13u32 {
            assert_eq!(t[a as usize], f.inv(f.elem(a as i64)).unwrap().value());
        }
    }
}
