//! Exact elements `(a + b√q)/q^e` of ℚ(√q).

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `(a + b√q)/q^e`, normalized so that `q` does not divide both `a` and `b`
/// while `e > 0`. The representation is then unique, so `==` is value
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadValue {
    q: u32,
    a: BigInt,
    b: BigInt,
    e: u32,
}

impl QuadValue {
    pub fn new(q: u32, a: impl Into<BigInt>, b: impl Into<BigInt>, e: u32) -> Self {
        let mut v = Self {
            q,
            a: a.into(),
            b: b.into(),
            e,
        };
        v.normalize();
        v
    }

    pub fn zero(q: u32) -> Self {
        Self::new(q, 0, 0, 0)
    }

    pub fn one(q: u32) -> Self {
        Self::new(q, 1, 0, 0)
    }

    /// `√q`.
    pub fn sqrt_q(q: u32) -> Self {
        Self::new(q, 0, 1, 0)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.e = 0;
            return;
        }
        let q = BigInt::from(self.q);
        while self.e > 0 {
            let (qa, ra) = self.a.div_rem(&q);
            if !ra.is_zero() {
                break;
            }
            let (qb, rb) = self.b.div_rem(&q);
            if !rb.is_zero() {
                break;
            }
            self.a = qa;
            self.b = qb;
            self.e -= 1;
        }
    }

    /// Rewrites both numerators over `q^e` for `e >= self.e`.
    fn lifted(&self, e: u32) -> (BigInt, BigInt) {
        let s = num_traits::pow(BigInt::from(self.q), (e - self.e) as usize);
        (&self.a * &s, &self.b * &s)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.q);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Nearest `f64`. When `a` and `b√q` have opposite signs the value is
    /// computed as `(a² − q b²) / ((a − b√q) q^e)`, which avoids cancellation.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let sq = (self.q as f64).sqrt();
        let den = num_traits::pow(BigInt::from(self.q), self.e as usize);
        let ra = BigRational::new(self.a.clone(), den.clone());
        let rb = BigRational::new(self.b.clone(), den.clone());
        let same_sign = self.a.is_zero()
            || self.b.is_zero()
            || self.a.is_positive() == self.b.is_positive();
        if same_sign {
            return ra.to_f64().unwrap_or(f64::NAN) + rb.to_f64().unwrap_or(f64::NAN) * sq;
        }
        let norm = &self.a * &self.a - BigInt::from(self.q) * &self.b * &self.b;
        let conj = ra.to_f64().unwrap_or(f64::NAN) - rb.to_f64().unwrap_or(f64::NAN) * sq;
        let n = BigRational::new(norm, den.clone() * den);
        n.to_f64().unwrap_or(f64::NAN) / conj
    }

    /// The rational number `a/q^e`, `b/q^e` parts.
    pub fn parts(&self) -> (BigRational, BigRational) {
        let den = num_traits::pow(BigInt::from(self.q), self.e as usize);
        (
            BigRational::new(self.a.clone(), den.clone()),
            BigRational::new(self.b.clone(), den),
        )
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.e == 0
    }
}

impl Add for &QuadValue {
    type Output = QuadValue;

    fn add(self, rhs: &QuadValue) -> QuadValue {
        assert_eq!(self.q, rhs.q, "QuadValue over different q");
        let e = self.e.max(rhs.e);
        let (a1, b1) = self.lifted(e);
        let (a2, b2) = rhs.lifted(e);
        QuadValue::new(self.q, a1 + a2, b1 + b2, e)
    }
}

impl Add for QuadValue {
    type Output = QuadValue;

    fn add(self, rhs: QuadValue) -> QuadValue {
        &self + &rhs
    }
}

impl Mul for &QuadValue {
    type Output = QuadValue;

    fn mul(self, rhs: &QuadValue) -> QuadValue {
        assert_eq!(self.q, rhs.q, "QuadValue over different q");
        let q = BigInt::from(self.q);
        let a = &self.a * &rhs.a + q * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadValue::new(self.q, a, b, self.e + rhs.e)
    }
}

impl Mul for QuadValue {
    type Output = QuadValue;

    fn mul(self, rhs: QuadValue) -> QuadValue {
        &self * &rhs
    }
}

impl fmt::Display for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}·√{})/{}^{}", self.a, self.b, self.q, self.q, self.e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalization() {
        let v = QuadValue::new(5, 25, 50, 3);
        assert_eq!((v.a().clone(), v.b().clone(), v.e()), (1.into(), 2.into(), 1));
        let w = QuadValue::new(5, 25, 3, 3);
        assert_eq!(w.e(), 3);
        assert_eq!(QuadValue::new(5, 0, 0, 7), QuadValue::zero(5));
        // integers never lose their e=0 form
        assert_eq!(QuadValue::new(5, 10, 0, 0).e(), 0);
    }

    #[test]
    fn sqrt_q_squared() {
        let s = QuadValue::sqrt_q(13);
        assert_eq!(&s * &s, QuadValue::new(13, 13, 0, 0));
        assert_eq!(s.pow(4), QuadValue::new(13, 169, 0, 0));
    }

    #[test]
    fn float_conversion_with_cancellation() {
        // 1 + c/√q with the two parts nearly cancelling: a = 9, b = -4, q = 5
        // 9 − 4√5 ≈ 0.05572809
        let v = QuadValue::new(5, 9, -4, 0);
        let want = 9.0 - 4.0 * 5f64.sqrt();
        assert!((v.to_f64() - want).abs() < 1e-15);
        // 161² − 5·72² = 1, so 161 − 72√5 = 1/(161 + 72√5)
        let v = QuadValue::new(5, 161, -72, 0);
        let want = 1.0 / (161.0 + 72.0 * 5f64.sqrt());
        assert!((v.to_f64() / want - 1.0).abs() < 1e-14);
    }

    fn arb(q: u32) -> impl Strategy<Value = QuadValue> {
        (-1000i64..1000, -1000i64..1000, 0u32..4).prop_map(move |(a, b, e)| QuadValue::new(q, a, b, e))
    }

    proptest! {
        #[test]
        fn ring_laws(x in arb(5), y in arb(5), z in arb(5)) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
        }

        #[test]
        fn float_is_a_ring_map(x in arb(13), y in arb(13)) {
            let p = (&x * &y).to_f64();
            let want = x.to_f64() * y.to_f64();
            let scale = 1.0 + x.to_f64().abs() * y.to_f64().abs();
            prop_assert!((p - want).abs() <= 1e-12 * scale);
        }
    }
}
