//! The prime field 𝔽_q.
//!
//! Residues are stored as `u32` values in `0..q`; with `q < 2^15` every
//! product of two residues fits in a `u32`.

use crate::error::{Error, Result};

/// Largest supported modulus (exclusive).
pub const MAX_MODULUS: u32 = 1 << 15;

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldParams {
    q: u32,
}

impl FieldParams {
    /// Accepts any prime `5 <= q < 2^15`.
    pub fn new(q: u32) -> Result<Self> {
        if q >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(q));
        }
        if q < 5 || !is_prime(q as u64) {
            return Err(Error::InvalidModulus(q));
        }
        Ok(Self { q })
    }

    /// Like [`FieldParams::new`] but additionally requires `q ≡ 1 (mod 4)`,
    /// which every character computation in this crate assumes.
    pub fn for_characters(q: u32) -> Result<Self> {
        let p = Self::new(q)?;
        if q % 4 != 1 {
            return Err(Error::ModulusNotOneModFour(q));
        }
        Ok(p)
    }

    #[inline]
    pub fn q(self) -> u32 {
        self.q
    }

    /// `q mod 4`.
    pub fn validated_residue(self) -> u32 {
        self.q % 4
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.q
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.q;
        base %= self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.q), "inverse of zero");
        self.pow(a, (self.q - 2) as u64)
    }

    /// Reduces an arbitrary signed integer into `0..q`.
    pub fn reduce_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.q as i64) as u32
    }

    /// Legendre symbol of a residue: 0, +1 or −1.
    pub fn legendre(self, a: u32) -> i8 {
        let a = a % self.q;
        if a == 0 {
            return 0;
        }
        if self.pow(a, ((self.q - 1) / 2) as u64) == 1 {
            1
        } else {
            -1
        }
    }
}

/// Deterministic trial-division primality test; inputs here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(FieldParams::new(5).is_ok());
        assert!(FieldParams::new(7).is_ok());
        assert_eq!(FieldParams::new(9), Err(Error::InvalidModulus(9)));
        assert_eq!(FieldParams::new(3), Err(Error::InvalidModulus(3)));
        assert_eq!(
            FieldParams::for_characters(7),
            Err(Error::ModulusNotOneModFour(7))
        );
        assert_eq!(FieldParams::for_characters(13).unwrap().validated_residue(), 1);
        assert!(matches!(
            FieldParams::new(40000),
            Err(Error::ModulusTooLarge(_))
        ));
    }

    #[test]
    fn arithmetic_mod_13() {
        let f = FieldParams::new(13).unwrap();
        for a in 1..13 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
        assert_eq!(f.sub(2, 5), 10);
        assert_eq!(f.reduce_i64(-1), 12);
    }

    #[test]
    fn legendre_mod_5() {
        let f = FieldParams::new(5).unwrap();
        let got: Vec<i8> = (0..5).map(|a| f.legendre(a)).collect();
        assert_eq!(got, vec![0, 1, -1, -1, 1]);
    }
}
