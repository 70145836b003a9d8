//! The generating identities behind the secondary terms, checked as power
//! series in `w`:
//!
//! `Σ_f d_k(f) G(V,χ_f) |f|^{−1/2} w^{d(f)} / Π_{P|f}(1 − |P|^{−2}z^{−d(P)})
//!   = 𝓛(w,χ_V)^k · Π_P 𝓜_P(V;z,w)`
//!
//! for `k = 2` and `k = 3`. Both sides are truncated at `w^order`; the left
//! is a literal sum over monic `f`, the right multiplies the closed local
//! factors over every prime of degree `≤ order`.

use ffmoments_core::characters::{divisor_fn, gauss_sum_prime_power, jacobi_symbol, residue_symbol, ClosedGauss};
use ffmoments_core::enumerate::{enumerate_monic, enumerate_monic_upto};
use ffmoments_core::factor::{binomial, Factorization, IrreducibleCache};
use ffmoments_core::poly::FqPoly;
use ffmoments_core::verify::SuiteReport;
use ffmoments_core::FieldParams;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct GenidReport {
    pub v: FqPoly,
    pub k: u32,
    pub order: usize,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    /// `max_n |lhs_n − rhs_n|`
    pub max_deviation: f64,
}

/// Everything that does not depend on `V`: the monic `f` with their
/// factorizations, and the primes, up to degree `order`.
#[derive(Debug, Clone)]
pub struct GenidContext {
    field: FieldParams,
    order: usize,
    z: f64,
    fs: Vec<(FqPoly, Factorization)>,
    primes: Vec<FqPoly>,
}

fn mul_series(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().min(b.len());
    (0..n).map(|i| (0..=i).map(|j| a[j] * b[i - j]).sum()).collect()
}

impl GenidContext {
    pub fn new(field: FieldParams, order: usize, z: f64) -> Result<Self> {
        let q = field.q() as f64;
        if z.is_nan() || z.abs() <= q.powi(-2) {
            return Err(Error::InvalidPoint(format!("z = {z} must satisfy |z| > 1/q^2")));
        }
        let cache = IrreducibleCache::new(field, order.max(1));
        let fs = enumerate_monic_upto(field, order)
            .map(|f| Ok((f.clone(), cache.factor(&f)?)))
            .collect::<Result<Vec<_>>>()?;
        let primes = cache.iter().cloned().collect();
        Ok(Self { field, order, z, fs, primes })
    }

    fn norm(&self, p: &FqPoly) -> f64 {
        (self.field.q() as f64).powi(p.deg() as i32)
    }

    /// `1 − 1/(|P|² z^{d(P)})`
    fn damp(&self, p: &FqPoly) -> f64 {
        1.0 - 1.0 / (self.norm(p).powi(2) * self.z.powi(p.deg() as i32))
    }

    pub fn lhs(&self, v: &FqPoly, k: u32) -> Result<Vec<f64>> {
        let mut c = vec![0.0; self.order + 1];
        for (f, fac) in &self.fs {
            let g = ClosedGauss::new(f, fac)?.eval(v)?.value.re;
            if g == 0.0 {
                continue;
            }
            let n = f.deg();
            let weight: f64 = fac.factors.iter().map(|(p, _)| self.damp(p)).product();
            let size = (self.field.q() as f64).powf(n as f64 / 2.0);
            c[n] += divisor_fn(k, fac) as f64 * g / size / weight;
        }
        Ok(c)
    }

    /// `𝓛(w,χ_V) = Σ_f χ_V(f) w^{d(f)}`.
    fn l_series(&self, v: &FqPoly) -> Result<Vec<f64>> {
        let mut c = vec![0.0; self.order + 1];
        c[0] = 1.0;
        for (n, cn) in c.iter_mut().enumerate().skip(1) {
            if v.deg() == 0 {
                *cn = (self.field.q() as f64).powi(n as i32);
                continue;
            }
            for f in enumerate_monic(self.field, n) {
                *cn += jacobi_symbol(v, &f)? as f64;
            }
        }
        Ok(c)
    }

    /// The local factor at `P` as a series in `w`.
    fn local(&self, v: &FqPoly, k: u32, p: &FqPoly) -> Result<Vec<f64>> {
        let d = p.deg();
        let damp = self.damp(p);
        let mut s = vec![0.0; self.order + 1];
        s[0] = 1.0;
        let mut put = |power: usize, c: f64| {
            if power * d <= self.order {
                s[power * d] += c;
            }
        };
        let chi = residue_symbol(v, p)? as f64;
        if chi == 0.0 {
            let norm = self.norm(p);
            for b in 1..=self.order / d {
                let dk = binomial(b as u64 + k as u64 - 1, k as u64 - 1) as f64;
                let g = gauss_sum_prime_power(v, p, b as u32)?;
                put(b, dk * g / norm.powf(b as f64 / 2.0) / damp);
            }
            return Ok(s);
        }
        // 1/(|P|² z^d − 1) = (1 − damp)/damp
        let lead = (1.0 - damp) / damp;
        match k {
            2 => {
                put(1, 2.0 * chi * lead);
                put(2, 1.0 - 4.0 / damp);
                put(3, 2.0 * chi / damp);
            }
            3 => {
                put(1, 3.0 * chi * lead);
                put(2, 3.0 - 9.0 / damp);
                put(3, -chi + 9.0 * chi / damp);
                put(4, -3.0 / damp);
            }
            _ => unreachable!("checked by the caller"),
        }
        Ok(s)
    }

    pub fn rhs(&self, v: &FqPoly, k: u32) -> Result<Vec<f64>> {
        let l = self.l_series(v)?;
        let mut acc = vec![0.0; self.order + 1];
        acc[0] = 1.0;
        for _ in 0..k {
            acc = mul_series(&acc, &l);
        }
        for p in &self.primes {
            if p.deg() <= self.order {
                acc = mul_series(&acc, &self.local(v, k, p)?);
            }
        }
        Ok(acc)
    }

    pub fn verify(&self, v: &FqPoly, k: u32) -> Result<GenidReport> {
        if !(2..=3).contains(&k) {
            return Err(Error::InvalidPoint(format!("k = {k}: only k = 2, 3 have a closed local factor")));
        }
        let lhs = self.lhs(v, k)?;
        let rhs = self.rhs(v, k)?;
        let max_deviation = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        Ok(GenidReport { v: v.clone(), k, order: self.order, lhs, rhs, max_deviation })
    }
}

pub fn verify_generating_identity(v: &FqPoly, k: u32, order: usize, z: f64) -> Result<GenidReport> {
    GenidContext::new(v.field(), order, z)?.verify(v, k)
}

/// Every monic `V` of degree `≤ max_deg_v`, `k ∈ {2, 3}`.
pub fn genid_suite(field: FieldParams, max_deg_v: usize, order: usize, z: f64, tol: f64) -> Result<SuiteReport> {
    let ctx = GenidContext::new(field, order, z)?;
    let mut rep = SuiteReport::new("genid");
    for v in enumerate_monic_upto(field, max_deg_v) {
        for k in [2, 3] {
            let r = ctx.verify(&v, k)?;
            let dev = r.max_deviation;
            rep.record(dev < tol, dev, || format!("V = {}, k = {k}: deviation {dev:e}", v.render()));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_term_is_one() {
        let field = FieldParams::new(5).unwrap();
        let r = verify_generating_identity(&FqPoly::one(field), 2, 2, 0.5).unwrap();
        assert_eq!(r.lhs[0], 1.0);
        assert_eq!(r.rhs[0], 1.0);
    }

    #[test]
    fn series_product() {
        assert_eq!(mul_series(&[1.0, 1.0, 0.0], &[1.0, -1.0, 0.0]), vec![1.0, 0.0, -1.0]);
    }
}
