//! Software floating point at a fixed working precision.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigUint;

/// Working precision in bits (about 77 significant decimal digits).
pub const PRECISION: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

#[derive(Clone)]
pub struct Real(BigFloat);

impl Real {
    pub fn zero() -> Self {
        Self(BigFloat::from_u8(0, PRECISION))
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Self(BigFloat::from_i64(v, PRECISION))
    }

    pub fn from_f64(v: f64) -> Self {
        Self(BigFloat::from_f64(v, PRECISION))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    pub fn from_biguint(v: &BigUint) -> Self {
        let base = Self::from_f64(18446744073709551616.0);
        v.to_u64_digits()
            .iter()
            .rev()
            .fold(Self::zero(), |acc, &w| acc * &base + Self(BigFloat::from_u64(w, PRECISION)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn ln(&self) -> Self {
        CONSTS.with(|c| Self(self.0.ln(PRECISION, RM, &mut c.borrow_mut())))
    }

    pub fn exp(&self) -> Self {
        CONSTS.with(|c| Self(self.0.exp(PRECISION, RM, &mut c.borrow_mut())))
    }

    pub fn sqrt(&self) -> Self {
        Self(self.0.sqrt(PRECISION, RM))
    }

    pub fn recip(&self) -> Self {
        Self(self.0.reciprocal(PRECISION, RM))
    }

    pub fn powi(&self, n: i32) -> Self {
        let p = Self(self.0.powi(n.unsigned_abs() as usize, PRECISION, RM));
        if n < 0 {
            p.recip()
        } else {
            p
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `|a − b| / max(|a|, |b|)`, and 0 when both vanish.
    pub fn rel_diff(a: &Self, b: &Self) -> f64 {
        let scale = a.abs().max(b.abs());
        if scale.is_zero() {
            0.0
        } else {
            ((a - b).abs() / scale).to_f64()
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf() {
            return if self.0.is_inf_pos() { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        let Some((words, _, sign, exp, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let n = words.len();
        if n == 0 || self.0.is_zero() {
            return 0.0;
        }
        // value = 0.m × 2^exp with the mantissa words little-endian
        let hi = words[n - 1] as f64;
        let lo = if n > 1 { words[n - 2] as f64 } else { 0.0 };
        let m = (hi + lo / 18446744073709551616.0) / 18446744073709551616.0;
        let e = exp;
        let v = if e > 1000 {
            f64::INFINITY
        } else if e < -1100 {
            0.0
        } else {
            m * 2f64.powi(e)
        };
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }
}

impl Default for Real {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Real {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                Real(self.0.$m(&rhs.0, PRECISION, RM))
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
        impl $atr<&Real> for Real {
            fn $am(&mut self, rhs: &Real) {
                *self = (&*self).$m(rhs);
            }
        }
        impl $atr<Real> for Real {
            fn $am(&mut self, rhs: Real) {
                *self = (&*self).$m(&rhs);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);

impl Div<&Real> for &Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        Real(self.0.div(&rhs.0, PRECISION, RM))
    }
}
impl Div<Real> for Real {
    type Output = Real;
    fn div(self, rhs: Real) -> Real {
        &self / &rhs
    }
}
impl Div<&Real> for Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        &self / rhs
    }
}
impl Div<Real> for &Real {
    type Output = Real;
    fn div(self, rhs: Real) -> Real {
        self / &rhs
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.neg())
    }
}
impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.clone().neg())
    }
}

impl std::iter::Sum for Real {
    fn sum<I: Iterator<Item = Real>>(iter: I) -> Real {
        iter.fold(Real::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn to_f64_round_trip() {
        for v in [1.0, 0.75, -3.5, 1e-30, 123456.789, -2.0f64.powi(-1000), 1e300] {
            assert_eq!(Real::from_f64(v).to_f64(), v);
        }
        assert_eq!(Real::zero().to_f64(), 0.0);
    }

    #[test]
    fn elementary_functions() {
        let two = Real::from_i64(2);
        assert!((two.ln().to_f64() - std::f64::consts::LN_2).abs() < 1e-16);
        assert!(Real::rel_diff(&two.ln().exp(), &two) < 1e-70);
        assert!(Real::rel_diff(&(two.sqrt() * two.sqrt()), &two) < 1e-70);
        assert_eq!(Real::from_i64(5).powi(-2), Real::ratio(1, 25));
        let third = Real::ratio(1, 3);
        assert!(Real::rel_diff(&(&third * Real::from_i64(3)), &Real::one()) < 1e-75);
    }

    #[test]
    fn biguint_conversion() {
        let v = BigUint::from(5u32).pow(60);
        let r = Real::from_biguint(&v);
        assert!(Real::rel_diff(&r, &Real::from_i64(5).powi(60)) < 1e-75);
    }
}
