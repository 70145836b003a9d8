//! The second-moment polynomials `P₁`, `P₂`, `P = P₁ + P₂` and the
//! conjectured `R`, all in the variable `x = 2g + 1`.

use std::fmt;

use crate::constants::{f_factor, g_term, h_term, int, Constants};
use crate::error::Result;
use crate::euler::Euler;
use crate::jet::Jet;
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyKind {
    P1,
    P2,
    P,
    R,
    QLeading,
}

impl fmt::Display for PolyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolyKind::P1 => "P1",
            PolyKind::P2 => "P2",
            PolyKind::P => "P",
            PolyKind::R => "R",
            PolyKind::QLeading => "Q-leading",
        })
    }
}

/// `Σ coeffs[i]·x^i`.
#[derive(Debug, Clone)]
pub struct PredictionPolynomial {
    pub kind: PolyKind,
    pub coeffs: Vec<Real>,
}

impl PredictionPolynomial {
    pub fn new(kind: PolyKind, coeffs: Vec<Real>) -> Self {
        Self { kind, coeffs }
    }

    pub fn coeff(&self, i: usize) -> Real {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Index of the highest nonzero coefficient (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn eval(&self, x: &Real) -> Real {
        self.coeffs.iter().rev().fold(Real::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.eval(&Real::from_f64(x)).to_f64()
    }

    pub fn add(&self, other: &Self, kind: PolyKind) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(kind, (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    /// Largest coefficientwise relative difference.
    pub fn max_rel_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|i| Real::rel_diff(&self.coeff(i), &other.coeff(i)))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone)]
pub struct SecondMomentPolys {
    pub p1: PredictionPolynomial,
    pub p2: PredictionPolynomial,
    pub p: PredictionPolynomial,
}

pub fn p_polynomials(c: &Constants) -> SecondMomentPolys {
    let q = int(c.q as i64);
    let iq = q.recip();
    let lo = Real::one() - &iq;
    let hi = Real::one() + &iq;
    let b0 = &c.b_value;
    let [b1, b2, b3] = [&c.b_derivs[0].jet, &c.b_derivs[1].jet, &c.b_derivs[2].jet];
    let r = |n, d| Real::ratio(n, d);

    let x3 = b0 * &lo / int(24);
    let x2 = b0 * &hi / int(4) - b1 * &lo * &iq / int(4);
    let x1 = r(11, 24) * b0 * &lo + r(3, 2) * b1 * &lo * &iq - int(2) * b1 * &iq + b2 * &lo * iq.powi(2) / int(2);
    let x0 = b0 * &hi / int(4) - b1 * &lo * &iq / int(4) + int(2) * b1 * iq.powi(2) + int(2) * b2 * iq.powi(3)
        - b3 * &lo * iq.powi(3) / int(3);
    let p1 = PredictionPolynomial::new(PolyKind::P1, vec![x0, x1, x2, x3]);

    let z2 = c.zeta2();
    let f0 = &c.f_value;
    let [f1, f2, f3] = [&c.f_derivs[0].jet, &c.f_derivs[1].jet, &c.f_derivs[2].jet];
    let [a0, a1, a2] = [&c.alpha[0].jet, &c.alpha[1].jet, &c.alpha[2].jet];
    let lin = -(&z2 * (f1 + f2) / int(2));
    let bracket = int(2) * f1 + int(4) * f2 + f3 + a0 * (f1 + f2) / int(2) + a1 * (f0 + f1) / int(2) + a2 * f0 / int(2);
    let p2 = PredictionPolynomial::new(PolyKind::P2, vec![-(&z2 * bracket), lin]);
    let p = p1.add(&p2, PolyKind::P);
    SecondMomentPolys { p1, p2, p }
}

/// `P₂` straight from the residue at `z = 1`: the integrand
/// `𝓕(z)(1+z)/(1−z)³·(x − 6z/(1−z²) − 2z²/(1−z²) − α(z))` times `(z−1)⁴` is
/// `𝓕(z)·[(1−z²)x − 8z − 4z² − (1−z²)r(z)]` with `r = −g − 4h` regular, and
/// `P₂(x) = (ζ(2)/2)·[(z−1)³] of that`.
pub fn p2_residue(e: &Euler) -> Result<PredictionPolynomial> {
    let z = Jet::variable(Real::one(), 3);
    let f = e.product("F(z)", |p| f_factor(p, &z))?.value;
    let r = e
        .sum("-g(z)-4h(z)", |p| Ok(-(&g_term(p, &z)? + &h_term(p, &z)?.scale(&int(4)))))?
        .value;
    let one_minus_z2 = (&z * &z).scale(&int(-1)).add_scalar(&Real::one());
    let x_part = &f * &one_minus_z2;
    let rest = poly(&z, &[0, -8, -4]) - &one_minus_z2 * &r;
    let c_part = &f * &rest;
    let q = int(e.q() as i64);
    let half_z2 = &q / (&q - Real::one()) / int(2);
    Ok(PredictionPolynomial::new(
        PolyKind::P2,
        vec![c_part.coeff(3) * &half_z2, x_part.coeff(3) * &half_z2],
    ))
}

fn poly(x: &Jet, c: &[i64]) -> Jet {
    crate::constants::poly_jet(x, &c.iter().map(|&v| int(v)).collect::<Vec<_>>())
}

/// The conjectured cubic from `A(1/2; z₁, z₂)` and its partials (jet route).
pub fn r_conjecture_poly(c: &Constants) -> PredictionPolynomial {
    let l = int(c.q as i64).ln();
    let a0 = &c.a00;
    let ap = &c.a_partials;
    let s = &ap.a1.jet + &ap.a2.jet;
    let a12 = &ap.a12.jet;
    let t = &ap.a222.jet - int(3) * &ap.a122.jet - int(3) * &ap.a112.jet + &ap.a111.jet;
    let l2 = l.powi(2);
    let l3 = l.powi(3);
    let den = int(24) * &l3;
    let x3 = a0 / int(24);
    let x2 = (int(6) * a0 * &l3 + int(3) * &l2 * &s) / &den;
    let x1 = (int(11) * a0 * &l3 + int(12) * &l2 * &s + int(12) * &l * a12) / &den;
    let x0 = (int(6) * a0 * &l3 + int(11) * &l2 * &s + int(24) * &l * a12 - int(2) * t) / &den;
    PredictionPolynomial::new(PolyKind::R, vec![x0, x1, x2, x3])
}

/// `q^{2g+1}/ζ(2)·P(2g+1)`.
pub fn second_moment_prediction(c: &Constants, g: usize) -> Real {
    let q = int(c.q as i64);
    let x = int(2 * g as i64 + 1);
    q.powi(2 * g as i32 + 1) / c.zeta2() * p_polynomials(c).p.eval(&x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_basics() {
        let p = PredictionPolynomial::new(PolyKind::P, vec![int(1), int(0), int(2), int(0)]);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.eval_f64(3.0), 19.0);
        let s = p.add(&PredictionPolynomial::new(PolyKind::P, vec![int(-1)]), PolyKind::P);
        assert_eq!(s.coeff(0), Real::zero());
        assert_eq!(p.max_rel_diff(&p), 0.0);
    }
}
