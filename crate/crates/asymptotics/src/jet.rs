//! Truncated Taylor series `t₀ + t₁h + … + t_m h^m` about a fixed center.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    c: Vec<Real>,
}

impl Jet {
    /// Panics on an empty coefficient list.
    pub fn new(c: Vec<Real>) -> Self {
        assert!(!c.is_empty(), "a jet needs at least its constant term");
        Self { c }
    }

    pub fn constant(x: Real, order: usize) -> Self {
        let mut c = vec![Real::zero(); order + 1];
        c[0] = x;
        Self { c }
    }

    /// The identity function `center + h`.
    pub fn variable(center: Real, order: usize) -> Self {
        let mut j = Self::constant(center, order);
        if order > 0 {
            j.c[1] = Real::one();
        }
        j
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Real {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn value(&self) -> &Real {
        &self.c[0]
    }

    /// `f^{(i)}(center)`.
    pub fn derivative(&self, i: usize) -> Real {
        let fact = (1..=i as i64).fold(Real::one(), |a, k| a * Real::from_i64(k));
        self.coeff(i) * fact
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self { c: self.c[..=order.min(self.order())].to_vec() }
    }

    pub fn scale(&self, s: &Real) -> Self {
        Self { c: self.c.iter().map(|x| x * s).collect() }
    }

    pub fn add_scalar(&self, s: &Real) -> Self {
        let mut j = self.clone();
        j.c[0] += s;
        j
    }

    /// Largest coefficient magnitude.
    pub fn norm(&self) -> Real {
        self.c.iter().fold(Real::zero(), |m, x| m.max(x.abs()))
    }

    pub fn recip(&self) -> Result<Self> {
        Jet::constant(Real::one(), self.order()).div(self)
    }

    pub fn div(&self, rhs: &Jet) -> Result<Self> {
        let m = self.order().min(rhs.order());
        let b0 = &rhs.c[0];
        if b0.is_zero() {
            return Err(Error::JetDivisionByZero);
        }
        let mut h: Vec<Real> = Vec::with_capacity(m + 1);
        for n in 0..=m {
            let mut s = self.c[n].clone();
            for k in 1..=n {
                s -= &rhs.c[k] * &h[n - k];
            }
            h.push(s / b0);
        }
        Ok(Self { c: h })
    }

    pub fn ln(&self) -> Result<Self> {
        let f0 = &self.c[0];
        if !f0.is_positive() {
            return Err(Error::JetLogDomain);
        }
        let m = self.order();
        let mut g = vec![f0.ln()];
        for n in 1..=m {
            let mut s = &self.c[n] * Real::from_i64(n as i64);
            for (k, gk) in g.iter().enumerate().skip(1) {
                s -= Real::from_i64(k as i64) * gk * &self.c[n - k];
            }
            g.push(s / Real::from_i64(n as i64) / f0);
        }
        Ok(Self { c: g })
    }

    pub fn exp(&self) -> Self {
        let m = self.order();
        let mut e = vec![self.c[0].exp()];
        for n in 1..=m {
            let mut s = Real::zero();
            for k in 1..=n {
                s += Real::from_i64(k as i64) * &self.c[k] * &e[n - k];
            }
            e.push(s / Real::from_i64(n as i64));
        }
        Self { c: e }
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        let mut base = if n < 0 { self.recip()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Jet::constant(Real::one(), self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }
}

impl Add<&Jet> for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        let m = self.order().min(rhs.order());
        Jet { c: (0..=m).map(|i| &self.c[i] + &rhs.c[i]).collect() }
    }
}

impl Sub<&Jet> for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        let m = self.order().min(rhs.order());
        Jet { c: (0..=m).map(|i| &self.c[i] - &rhs.c[i]).collect() }
    }
}

impl Mul<&Jet> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let m = self.order().min(rhs.order());
        let c = (0..=m)
            .map(|n| (0..=n).map(|k| &self.c[k] * &rhs.c[n - k]).sum())
            .collect();
        Jet { c }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { c: self.c.iter().map(|x| -x).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: &Jet) -> Jet {
                (&self).$m(rhs)
            }
        }
        impl $tr<Jet> for &Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                self.$m(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -&self
    }
}
