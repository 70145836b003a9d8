//! Degree-aggregated sums and products over monic irreducibles.
//!
//! Every quantity here has the shape `Σ_P t(|P|, d(P))` or
//! `Π_P f(|P|, d(P))`, so the prime sum collapses to `Σ_d π_q(d)·t(q^d, d)`
//! with `π_q(d)` exact. Products go through `exp(Σ_d π_q(d)·log f)`.

use ffmoments_core::enumerate::count_irreducibles;
use ffmoments_core::FieldParams;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::real::Real;

/// Relative change allowed between truncation at `N` and `N + 2`.
pub const CERTIFICATE_TOL: f64 = 1e-12;

/// All monic irreducibles of one degree.
#[derive(Debug, Clone)]
pub struct Prime {
    pub d: usize,
    /// `|P| = q^d`
    pub norm: Real,
    /// `π_q(d)`
    pub count: Real,
    /// `log |P|`
    pub log_norm: Real,
}

/// A truncated value with its convergence certificate.
#[derive(Debug, Clone)]
pub struct Certified<T> {
    pub value: T,
    /// Truncation degree `N` the value was computed at.
    pub degree: usize,
    /// Relative change when going from `N` to `N + 2`.
    pub change: f64,
}

impl<T> Certified<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Certified<U> {
        Certified { value: f(self.value), degree: self.degree, change: self.change }
    }
}

/// `⌈40 / log₂ q⌉`, so that `q^{−N} ≈ 2^{−40}`.
pub fn default_degree(q: u32) -> usize {
    (40.0 / (q as f64).log2()).ceil() as usize
}

#[derive(Debug, Clone)]
pub struct Euler {
    q: u32,
    start: usize,
    fixed: bool,
    primes: Vec<Prime>,
}

impl Euler {
    /// Starts at the default degree and raises `N` until the certificate
    /// holds. Gives up at eight times the default, or earlier once `q^{−N}`
    /// would sink below `2^{−200}` and the factors start rounding to 1.
    pub fn new(q: u32) -> Result<Self> {
        let start = default_degree(q);
        let resolvable = (200.0 / (q as f64).log2()).floor() as usize;
        Self::build(q, start, false, (8 * start).min(resolvable).max(start + 2))
    }

    /// Truncates at exactly `n`; an unmet certificate is an error.
    pub fn with_max_degree(q: u32, n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::DegreeTooSmall(n));
        }
        Self::build(q, n, true, n + 2)
    }

    /// Auto mode with an explicit degree cap, for slowly converging sums
    /// such as `Σ z^d` near `|z| = 1`. Products whose factors round to 1
    /// at high degree should stay on [`Euler::new`].
    pub fn with_degree_cap(q: u32, cap: usize) -> Result<Self> {
        let start = default_degree(q);
        Self::build(q, start, false, cap.max(start + 2))
    }

    fn build(q: u32, start: usize, fixed: bool, cap: usize) -> Result<Self> {
        FieldParams::new(q)?;
        let qr = Real::from_i64(q as i64);
        let lq = qr.ln();
        let primes = (1..=cap)
            .map(|d| {
                Ok(Prime {
                    d,
                    norm: qr.powi(d as i32),
                    count: Real::from_biguint(&count_irreducibles(q, d as i64)?),
                    log_norm: &lq * Real::from_i64(d as i64),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { q, start, fixed, primes })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn start_degree(&self) -> usize {
        self.start
    }

    /// `Σ_d π_q(d)·term(d)`.
    pub fn sum(&self, what: &str, term: impl FnMut(&Prime) -> Result<Jet>) -> Result<Certified<Jet>> {
        self.run(what, term, |s| s.clone())
    }

    /// `exp(Σ_d π_q(d)·log factor(d))`.
    pub fn product(&self, what: &str, mut factor: impl FnMut(&Prime) -> Result<Jet>) -> Result<Certified<Jet>> {
        self.run(what, |p| factor(p)?.ln(), |s| s.exp())
    }

    pub fn sum_real(&self, what: &str, mut term: impl FnMut(&Prime) -> Result<Real>) -> Result<Certified<Real>> {
        let c = self.sum(what, |p| Ok(Jet::constant(term(p)?, 0)))?;
        Ok(c.map(|j| j.value().clone()))
    }

    pub fn product_real(&self, what: &str, mut factor: impl FnMut(&Prime) -> Result<Real>) -> Result<Certified<Real>> {
        let c = self.product(what, |p| Ok(Jet::constant(factor(p)?, 0)))?;
        Ok(c.map(|j| j.value().clone()))
    }

    fn run(
        &self,
        what: &str,
        mut term: impl FnMut(&Prime) -> Result<Jet>,
        finish: impl Fn(&Jet) -> Jet,
    ) -> Result<Certified<Jet>> {
        // partial[i] = sum over degrees 1..=i+1
        let mut partial: Vec<Jet> = Vec::new();
        let mut n = self.start;
        loop {
            while partial.len() < n + 2 {
                let p = &self.primes[partial.len()];
                let t = term(p)?;
                let t = t.scale(&p.count);
                let next = match partial.last() {
                    Some(s) => s + &t,
                    None => t,
                };
                partial.push(next);
            }
            let at_n = finish(&partial[n - 1]);
            let at_n2 = finish(&partial[n + 1]);
            let scale = at_n2.norm();
            let diff = (&at_n2 - &at_n).norm();
            let change = if diff.is_zero() { 0.0 } else { (diff / scale).to_f64() };
            if change <= CERTIFICATE_TOL {
                return Ok(Certified { value: at_n, degree: n, change });
            }
            if self.fixed || n + 2 >= self.primes.len() {
                return Err(Error::NotConverged { what: what.to_string(), degree: n, change });
            }
            n += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_truncation() {
        assert_eq!(default_degree(5), 18);
        assert_eq!(default_degree(13), 11);
    }

    #[test]
    fn zeta_two_inverse() {
        for q in [5u32, 13] {
            let e = Euler::new(q).unwrap();
            let v = e
                .product_real("1-|P|^-2", |p| Ok(Real::one() - p.norm.powi(-2)))
                .unwrap();
            let want = Real::one() - Real::ratio(1, q as i64);
            assert!(Real::rel_diff(&v.value, &want) < 1e-12, "q = {q}");
            assert!(v.change <= CERTIFICATE_TOL);
        }
    }

    #[test]
    fn harmonic_product_diverges() {
        let e = Euler::new(5).unwrap();
        let r = e.product_real("(1-1/|P|)^-1", |p| Ok((Real::one() - p.norm.recip()).recip()));
        assert!(matches!(r, Err(Error::NotConverged { .. })), "{r:?}");
    }

    #[test]
    fn fixed_degree_is_respected() {
        let e = Euler::with_max_degree(5, 30).unwrap();
        let v = e.sum_real("Σ 2d/(|P|²−1)", |p| {
            Ok(Real::from_i64(2 * p.d as i64) / (p.norm.powi(2) - Real::one()))
        });
        let v = v.unwrap();
        assert_eq!(v.degree, 30);
        assert!(Real::rel_diff(&v.value, &Real::ratio(1, 2)) < 1e-18);
        assert!(matches!(Euler::with_max_degree(5, 3), Err(Error::DegreeTooSmall(3))));
        // too short a truncation for a cubic weight
        let e = Euler::with_max_degree(5, 6).unwrap();
        assert!(e.sum_real("d³", |p| Ok(Real::from_i64((p.d * p.d * p.d) as i64) / &p.norm)).is_err());
    }
}
