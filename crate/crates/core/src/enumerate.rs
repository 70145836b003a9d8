//! Enumeration of monic polynomials and counts of irreducibles.
//!
//! Monic polynomials of degree `d` are indexed by `0..q^d`: the base-q digits
//! of the index, least significant first, are the coefficients `c_0..c_{d-1}`.
//! Index order is therefore lexicographic in `(c_{d-1}, .., c_0)`.

use std::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::FieldParams;
use crate::poly::FqPoly;

/// `q^d` as `u64`, panicking on overflow (desk-scale sizes only).
pub fn count_monic(q: u32, d: usize) -> u64 {
    (q as u64)
        .checked_pow(d as u32)
        .expect("q^d overflows u64")
}

/// The monic polynomial of degree `d` with the given enumeration index.
pub fn monic_from_index(field: FieldParams, d: usize, mut idx: u64) -> FqPoly {
    let q = field.q() as u64;
    let mut c = Vec::with_capacity(d + 1);
    for _ in 0..d {
        c.push((idx % q) as u32);
        idx /= q;
    }
    c.push(1);
    FqPoly::new(field, c)
}

/// Inverse of [`monic_from_index`]. The polynomial must be monic.
pub fn monic_index(f: &FqPoly) -> u64 {
    debug_assert!(f.is_monic());
    let q = f.q() as u64;
    let d = f.deg();
    f.coeffs()[..d]
        .iter()
        .rev()
        .fold(0u64, |acc, &c| acc * q + c as u64)
}

/// Advances a digit vector as an odometer; returns the position of the
/// highest digit that changed, or `None` on wrap-around past the end.
#[inline]
pub fn odometer_step(digits: &mut [u32], q: u32) -> Option<usize> {
    for (j, c) in digits.iter_mut().enumerate() {
        *c += 1;
        if *c < q {
            return Some(j);
        }
        *c = 0;
    }
    None
}

/// Iterator over the monic polynomials of one degree in an index range.
#[derive(Debug, Clone)]
pub struct MonicRange {
    field: FieldParams,
    d: usize,
    next: u64,
    end: u64,
    digits: Vec<u32>,
}

impl MonicRange {
    pub fn new(field: FieldParams, d: usize, range: Range<u64>) -> Self {
        let total = count_monic(field.q(), d);
        let end = range.end.min(total);
        let start = range.start.min(end);
        let digits = monic_from_index(field, d, start).coeffs()[..d].to_vec();
        Self {
            field,
            d,
            next: start,
            end,
            digits,
        }
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// Index of the next item to be produced.
    pub fn position(&self) -> u64 {
        self.next
    }
}

impl Iterator for MonicRange {
    type Item = FqPoly;

    fn next(&mut self) -> Option<FqPoly> {
        if self.next >= self.end {
            return None;
        }
        let mut c = self.digits.clone();
        c.push(1);
        let f = FqPoly::new(self.field, c);
        self.next += 1;
        odometer_step(&mut self.digits, self.field.q());
        Some(f)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for MonicRange {}

/// All `q^d` monic polynomials of degree `d`, in index order.
pub fn enumerate_monic(field: FieldParams, d: usize) -> MonicRange {
    MonicRange::new(field, d, 0..count_monic(field.q(), d))
}

/// All monic polynomials of degree `<= n`, by degree then index.
pub fn enumerate_monic_upto(field: FieldParams, n: usize) -> impl Iterator<Item = FqPoly> {
    (0..=n).flat_map(move |d| enumerate_monic(field, d))
}

/// Every polynomial of degree `< n` (zero and non-monic included), indexed by
/// the base-q code of its coefficients. These are the residues mod any
/// polynomial of degree `n`.
pub fn enumerate_residues(field: FieldParams, n: usize) -> impl Iterator<Item = FqPoly> {
    let q = field.q();
    let mut digits = vec![0u32; n];
    (0..count_monic(q, n)).map(move |_| {
        let f = FqPoly::new(field, digits.clone());
        odometer_step(&mut digits, q);
        f
    })
}

/// Splits `0..total` into `parts` contiguous ranges of near-equal length.
pub fn split_range(total: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = parts.max(1) as u64;
    (0..parts)
        .map(|i| (total * i / parts)..(total * (i + 1) / parts))
        .collect()
}

/// Möbius function of a small positive integer.
pub fn mobius(n: u64) -> i8 {
    let mut m = n;
    let mut r = 1i8;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if m > 1 {
        r = -r;
    }
    r
}

/// Number of monic irreducibles of degree `d`: `(1/d) Σ_{e|d} μ(e) q^{d/e}`.
pub fn count_irreducibles(q: u32, d: i64) -> Result<BigUint> {
    if d <= 0 {
        return Err(Error::NonPositiveDegree);
    }
    let d = d as u64;
    let mut acc = BigInt::zero();
    for e in 1..=d {
        if d.is_multiple_of(e) {
            let mu = mobius(e);
            if mu != 0 {
                let t = num_traits::pow(BigInt::from(q), (d / e) as usize);
                acc += t * mu as i64;
            }
        }
    }
    let (quot, rem) = num_integer::Integer::div_rem(&acc, &BigInt::from(d));
    debug_assert!(rem.is_zero());
    Ok(quot.to_biguint().expect("count is nonnegative"))
}

/// `π_q(d)` as `f64` (exact while below 2^53).
pub fn count_irreducibles_f64(q: u32, d: usize) -> f64 {
    count_irreducibles(q, d as i64)
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .unwrap_or(0.0)
}

/// `π_q(d)` as `u64`; panics on overflow.
pub fn count_irreducibles_u64(q: u32, d: usize) -> u64 {
    count_irreducibles(q, d as i64)
        .ok()
        .and_then(|c| c.to_u64())
        .expect("irreducible count overflows u64")
}

/// Monic irreducibles of degree `d`, in enumeration order.
pub fn irreducibles_of_degree(field: FieldParams, d: usize) -> Vec<FqPoly> {
    enumerate_monic(field, d)
        .filter(|f| f.is_irreducible().unwrap_or(false))
        .collect()
}

/// Gauss's identity `Σ_{d|n} d·π_q(d) = q^n`, used by tests.
pub fn necklace_sum(q: u32, n: u64) -> BigUint {
    let mut acc = BigUint::zero();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            acc += count_irreducibles(q, d as i64).unwrap() * d;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldParams {
        FieldParams::new(5).unwrap()
    }

    #[test]
    fn small_enumerations() {
        let v: Vec<_> = enumerate_monic(f5(), 0).collect();
        assert_eq!(v, vec![FqPoly::one(f5())]);
        let v: Vec<String> = enumerate_monic(f5(), 1).map(|f| f.render()).collect();
        assert_eq!(v, vec!["0,1", "1,1", "2,1", "3,1", "4,1"]);
        assert_eq!(enumerate_monic(f5(), 3).count(), 125);
    }

    #[test]
    fn index_round_trip_and_order() {
        let all: Vec<_> = enumerate_monic(f5(), 3).collect();
        for (i, f) in all.iter().enumerate() {
            assert_eq!(monic_index(f), i as u64);
            assert_eq!(&monic_from_index(f5(), 3, i as u64), f);
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn ranges_partition_the_stream() {
        let whole: Vec<_> = enumerate_monic(f5(), 3).collect();
        for parts in [1, 3, 7, 16] {
            let joined: Vec<_> = split_range(125, parts)
                .into_iter()
                .flat_map(|r| MonicRange::new(f5(), 3, r))
                .collect();
            assert_eq!(joined, whole);
        }
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(count_irreducibles(5, 1).unwrap(), BigUint::from(5u32));
        assert_eq!(count_irreducibles(5, 2).unwrap(), BigUint::from(10u32));
        assert_eq!(count_irreducibles(5, 3).unwrap(), BigUint::from(40u32));
        assert_eq!(count_irreducibles(5, 0), Err(Error::NonPositiveDegree));
        assert_eq!(count_irreducibles(5, -2), Err(Error::NonPositiveDegree));
        assert_eq!(irreducibles_of_degree(f5(), 2).len(), 10);
        assert_eq!(irreducibles_of_degree(f5(), 3).len(), 40);
    }

    #[test]
    fn necklace_identity() {
        for q in [5u32, 13] {
            for n in 1..=12u64 {
                assert_eq!(
                    necklace_sum(q, n),
                    num_traits::pow(BigUint::from(q), n as usize)
                );
            }
        }
    }
}
