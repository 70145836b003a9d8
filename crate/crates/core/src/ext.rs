//! Extension fields 𝔽_{q^r} = 𝔽_q[x]/(m(x)).

use crate::enumerate::{count_monic, enumerate_monic};
use crate::error::{Error, Result};
use crate::field::FieldParams;
use crate::poly::FqPoly;

/// 𝔽_{q^r}, with `m` the first monic irreducible of degree `r` in enumeration
/// order. Elements are coefficient vectors of length exactly `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    field: FieldParams,
    r: usize,
    modulus: FqPoly,
}

impl ExtField {
    pub fn new(field: FieldParams, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::NonPositiveDegree);
        }
        let modulus = enumerate_monic(field, r)
            .find(|f| f.is_irreducible().unwrap_or(false))
            .expect("an irreducible of every degree exists");
        Ok(Self { field, r, modulus })
    }

    /// Uses a caller-supplied modulus, which must be monic irreducible.
    pub fn with_modulus(modulus: FqPoly) -> Result<Self> {
        if !modulus.is_monic() {
            return Err(Error::NotMonic);
        }
        if !modulus.is_irreducible()? {
            return Err(Error::NotIrreducible);
        }
        Ok(Self {
            field: modulus.field(),
            r: modulus.deg(),
            modulus,
        })
    }

    pub fn base(&self) -> FieldParams {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn modulus(&self) -> &FqPoly {
        &self.modulus
    }

    /// `q^r`.
    pub fn order(&self) -> u64 {
        count_monic(self.field.q(), self.r)
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.r]
    }

    pub fn one(&self) -> Vec<u32> {
        self.embed(1)
    }

    /// Image of a base-field residue.
    pub fn embed(&self, c: u32) -> Vec<u32> {
        let mut v = self.zero();
        v[0] = c % self.field.q();
        v
    }

    /// Element with base-q code `idx` (component 0 least significant).
    pub fn element(&self, mut idx: u64) -> Vec<u32> {
        let q = self.field.q() as u64;
        (0..self.r)
            .map(|_| {
                let c = (idx % q) as u32;
                idx /= q;
                c
            })
            .collect()
    }

    pub fn index_of(&self, x: &[u32]) -> u64 {
        let q = self.field.q() as u64;
        x.iter().rev().fold(0, |acc, &c| acc * q + c as u64)
    }

    pub fn is_reduced(&self, x: &[u32]) -> bool {
        x.len() == self.r && x.iter().all(|&c| c < self.field.q())
    }

    fn check(&self, x: &[u32]) -> Result<()> {
        if self.is_reduced(x) {
            Ok(())
        } else {
            Err(Error::UnreducedElement)
        }
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let q = f.q() as u64;
        let r = self.r;
        let mut acc = vec![0u64; 2 * r - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += x as u64 * y as u64;
            }
        }
        let mut t: Vec<u32> = acc.into_iter().map(|v| (v % q) as u32).collect();
        let m = self.modulus.coeffs();
        for i in (r..t.len()).rev() {
            let c = t[i];
            if c == 0 {
                continue;
            }
            t[i] = 0;
            for (j, &mj) in m[..r].iter().enumerate() {
                let k = i - r + j;
                t[k] = f.sub(t[k], f.mul(c, mj));
            }
        }
        t.truncate(r);
        t
    }

    pub fn pow(&self, a: &[u32], mut e: u128) -> Vec<u32> {
        let mut base = a.to_vec();
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

    /// Quadratic character by Euler's criterion.
    pub fn quadratic_character(&self, x: &[u32]) -> Result<i8> {
        self.check(x)?;
        if x.iter().all(|&c| c == 0) {
            return Ok(0);
        }
        let e = (self.order() as u128 - 1) / 2;
        let y = self.pow(x, e);
        if y == self.one() {
            Ok(1)
        } else {
            debug_assert_eq!(y, self.embed(self.field.q() - 1));
            Ok(-1)
        }
    }

    /// Quadratic character of every element, indexed by [`ExtField::index_of`].
    /// Built by squaring each element once.
    pub fn character_table(&self) -> Vec<i8> {
        let n = self.order();
        let mut table = vec![-1i8; n as usize];
        table[0] = 0;
        for i in 1..n {
            let x = self.element(i);
            let s = self.mul(&x, &x);
            table[self.index_of(&s) as usize] = 1;
        }
        table
    }

    /// Horner evaluation of a base-field polynomial at an element.
    pub fn eval(&self, f: &FqPoly, x: &[u32]) -> Vec<u32> {
        let mut acc = self.zero();
        for &c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc[0] = self.field.add(acc[0], c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldParams {
        FieldParams::new(5).unwrap()
    }

    #[test]
    fn modulus_choice() {
        let e = ExtField::new(f5(), 2).unwrap();
        // x² + 2 is the first irreducible quadratic: 3 is not a square mod 5
        assert_eq!(e.modulus().render(), "2,0,1");
        assert_eq!(e.order(), 25);
        assert_eq!(ExtField::new(f5(), 1).unwrap().modulus().render(), "0,1");
    }

    #[test]
    fn character_examples() {
        let e = ExtField::new(f5(), 2).unwrap();
        assert_eq!(e.quadratic_character(&e.zero()).unwrap(), 0);
        assert_eq!(e.quadratic_character(&e.one()).unwrap(), 1);
        // every element of 𝔽_5 is a square in 𝔽_25
        assert_eq!(e.quadratic_character(&e.embed(2)).unwrap(), 1);
        assert_eq!(e.quadratic_character(&[7, 0]), Err(Error::UnreducedElement));
        assert_eq!(e.quadratic_character(&[1]), Err(Error::UnreducedElement));
    }

    #[test]
    fn table_matches_euler() {
        for r in 1..=3 {
            let e = ExtField::new(f5(), r).unwrap();
            let t = e.character_table();
            for i in 0..e.order() {
                let x = e.element(i);
                assert_eq!(t[i as usize], e.quadratic_character(&x).unwrap());
            }
            let plus = t.iter().filter(|&&v| v == 1).count() as u64;
            assert_eq!(plus, (e.order() - 1) / 2);
        }
    }

    #[test]
    fn character_is_multiplicative() {
        let e = ExtField::new(FieldParams::new(13).unwrap(), 2).unwrap();
        for i in (0..169).step_by(7) {
            for j in (0..169).step_by(5) {
                let (x, y) = (e.element(i), e.element(j));
                let lhs = e.quadratic_character(&x).unwrap() * e.quadratic_character(&y).unwrap();
                assert_eq!(lhs, e.quadratic_character(&e.mul(&x, &y)).unwrap());
            }
        }
    }
}
