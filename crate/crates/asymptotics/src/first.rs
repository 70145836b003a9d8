//! First-moment main term with `P(s) = Π_P (1 − 1/((|P|+1)|P|^s))`.

use crate::constants::int;
use crate::error::{Error, Result};
use crate::euler::Euler;
use crate::jet::Jet;
use crate::real::Real;

#[derive(Debug, Clone)]
pub struct FirstMomentConstants {
    pub q: u32,
    /// `P(1)`
    pub p_one: Real,
    /// `P′/P(1)` as the prime sum `Σ d log q/((|P|+1)|P| − 1)`.
    pub log_derivative: Real,
    /// `P′/P(1)` from a jet of `P(s)` at `s = 1`.
    pub log_derivative_jet: Real,
    pub worst_change: f64,
}

impl FirstMomentConstants {
    pub fn compute(e: &Euler) -> Result<Self> {
        let s = Jet::variable(Real::one(), 1);
        let prod = e.product("P(s)", |p| {
            // |P|^{−s} = exp(−s log|P|)
            let pw = s.scale(&-&p.log_norm).exp();
            Ok((-pw.scale(&(&p.norm + Real::one()).recip())).add_scalar(&Real::one()))
        })?;
        let closed = e.sum_real("P'/P(1)", |p| {
            Ok(&p.log_norm / ((&p.norm + Real::one()) * &p.norm - Real::one()))
        })?;
        let jet = &prod.value;
        Ok(Self {
            q: e.q(),
            p_one: jet.value().clone(),
            log_derivative: closed.value,
            log_derivative_jet: jet.coeff(1) / jet.value(),
            worst_change: prod.change.max(closed.change),
        })
    }

    /// `P(1)/(2ζ(2))·q^{2g+1}·[(2g+1) + 1 + (4/log q)·P′/P(1)]`
    pub fn prediction(&self, g: usize) -> Result<Real> {
        if g == 0 {
            return Err(Error::GenusTooSmall);
        }
        let q = int(self.q as i64);
        let zeta2 = &q / (&q - Real::one());
        let x = int(2 * g as i64 + 1);
        let bracket = &x + Real::one() + int(4) / q.ln() * &self.log_derivative;
        Ok(&self.p_one / (int(2) * zeta2) * q.powi(2 * g as i32 + 1) * bracket)
    }
}

pub fn first_moment_prediction(q: u32, g: usize) -> Result<Real> {
    FirstMomentConstants::compute(&Euler::new(q)?)?.prediction(g)
}
