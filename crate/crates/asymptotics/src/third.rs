//! Third-moment constants: `𝓑₃(1/q)`, `𝓗(1, 1/q)`, `A₃`, the residue main
//! term and the leading coefficients of `Q₁` and `Q₂`.

use crate::constants::{int, poly_jet};
use crate::error::{Error, Result};
use crate::euler::{Euler, Prime};
use crate::jet::Jet;
use crate::real::Real;

/// `1 − (6x − (15−6|P|)x² + (20−8|P|)x³ − (15−3|P|)x⁴ + 6x⁵ − x⁶)/(|P|+1)`, `x = u^d`.
pub fn b3_factor(p: &Prime, u: &Jet) -> Result<Jet> {
    let x = u.powi(p.d as i64)?;
    let n = &p.norm;
    let c = [
        int(0),
        int(6),
        int(6) * n - int(15),
        int(20) - int(8) * n,
        int(3) * n - int(15),
        int(6),
        int(-1),
    ];
    let num = poly_jet(&x, &c);
    Ok((-num.scale(&(n + Real::one()).recip())).add_scalar(&Real::one()))
}

/// `𝓗_P(z, 1/q)` in its expanded single-variable form.
pub fn h_factor_at_inverse_q(p: &Prime, z: &Jet) -> Result<Jet> {
    let zz = z.powi(p.d as i64)?;
    let ip = p.norm.recip();
    let i = |k: i32| ip.powi(k);
    // coefficients of Z^0..Z^9
    let c = [
        int(1) + int(3) * i(1) + int(3) * i(3),
        -(int(5) * i(2)),
        -(int(4) * i(2) + int(6) * i(3) + int(8) * i(5)),
        int(14) * i(4) + int(6) * i(6),
        int(6) * i(4) + int(6) * i(7),
        -(int(12) * i(6) + int(8) * i(8)),
        -(int(4) * i(6)) + int(6) * i(7),
        int(2) * i(8) + int(3) * i(10),
        i(8) - int(3) * i(9) - i(11),
        i(10),
    ];
    let poly = poly_jet(&zz, &c);
    let inner = &poly - &zz.recip()?.scale(&i(2));
    Ok(inner.scale(&(Real::one() - &ip).powi(3)))
}

/// The bivariate `𝓗_P(z, w)`.
pub fn h_factor_bivariate(p: &Prime, z: &Real, w: &Real) -> Real {
    let d = p.d as i32;
    let n = &p.norm;
    let m = |a: i32, b: i32| z.powi(a * d) * w.powi(b * d);
    let one = Real::one();
    let pre = (&one - w.powi(d)).powi(3) * (&one - n * m(1, 2)).powi(3) * (&one + m(1, 1)).powi(3);
    let inner = &one + int(3) * w.powi(d) + int(3) * n * m(1, 2) + int(3) * w.powi(2 * d) / n
        - int(3) * m(1, 1)
        - (n.powi(2) * z.powi(d)).recip()
        - int(6) * m(1, 2)
        + n * m(1, 3)
        - int(3) * m(1, 4)
        - n * m(2, 3)
        + int(3) * n * m(2, 4)
        + n * m(2, 6)
        - n.powi(2) * m(3, 6);
    pre * inner
}

/// `1 − (12|P|⁵ − 23|P|⁴ + 23|P|³ − 15|P|² + 6|P| − 1)/(|P|⁶(|P|+1))`
pub fn a3_factor(p: &Prime) -> Real {
    let n = &p.norm;
    let num = crate::constants::poly_real(n, &[-1, 6, -15, 23, -23, 12].map(int));
    Real::one() - num / (n.powi(6) * (n + Real::one()))
}

#[derive(Debug, Clone)]
pub struct ThirdMomentConstants {
    pub q: u32,
    /// `𝓑₃(1/q)`
    pub b3: Real,
    /// `𝓗(1, 1/q)`
    pub h: Real,
    /// `A₃(1/2; 0, 0, 0)`
    pub a3: Real,
    pub worst_change: f64,
}

impl ThirdMomentConstants {
    pub fn zeta2(&self) -> Real {
        let q = int(self.q as i64);
        &q / (&q - Real::one())
    }

    /// `𝓗(1, 1/q)·ζ(2)⁴`
    pub fn h_zeta4(&self) -> Real {
        &self.h * self.zeta2().powi(4)
    }

    /// `[x⁶]Q₁ = 729/(2¹¹·6!)·𝓑₃(1/q)`
    pub fn q1_leading(&self) -> Real {
        Real::ratio(729, 2048 * 720) * &self.b3
    }

    /// `[x⁶]Q₂ = −217/(2¹¹·6!)·𝓗(1, 1/q)ζ(2)⁴`
    pub fn q2_leading(&self) -> Real {
        Real::ratio(-217, 2048 * 720) * self.h_zeta4()
    }
}

pub fn third_moment_constants(e: &Euler) -> Result<ThirdMomentConstants> {
    let q = int(e.q() as i64);
    let u = Jet::constant(q.recip(), 0);
    let one = Jet::constant(Real::one(), 0);
    let b3 = e.product("B3(1/q)", |p| b3_factor(p, &u))?;
    let h = e.product("H(1,1/q)", |p| h_factor_at_inverse_q(p, &one))?;
    let a3 = e.product_real("A3", |p| Ok(a3_factor(p)))?;
    Ok(ThirdMomentConstants {
        q: e.q(),
        worst_change: b3.change.max(h.change).max(a3.change),
        b3: b3.value.value().clone(),
        h: h.value.value().clone(),
        a3: a3.value,
    })
}

/// `729/(2¹¹·6!) − 217/(2¹¹·6!) = 1/2880`, checked in integers.
pub fn leading_coefficient_identity() -> bool {
    let den: i64 = 2048 * 720;
    (729 - 217) * 2880 == den
}

/// `M_{3g} + M_{3g−1}`: minus the residues at `u = 1/q` of
/// `𝓑₃(u)/((1−qu)⁷(qu)^N u)` for `N = ⌊3g/2⌋` and `⌊(3g−1)/2⌋`, times
/// `q^{2g+1}/ζ(2)`. `order` is the jet order used for `𝓑₃` (at least 6).
pub fn main_term_k3(e: &Euler, g: usize, order: usize) -> Result<Real> {
    if g == 0 {
        return Err(Error::GenusTooSmall);
    }
    let order = order.max(6);
    let q = int(e.q() as i64);
    // u = (1 + t)/q, so 1 − qu = −t and du/u = dt/(1 + t)
    let t = Jet::variable(Real::one(), order);
    let u = t.scale(&q.recip());
    let b3 = e.product("B3(u)", |p| b3_factor(p, &u))?.value;
    let mut total = Real::zero();
    for n in [3 * g / 2, (3 * g - 1) / 2] {
        let w = &b3 * &t.powi(-(n as i64) - 1)?;
        // the integrand is −w(t)/t⁷, so −Res = [t⁶]w
        total += w.coeff(6);
    }
    Ok(q.powi(2 * g as i32 + 1) / (&q / (&q - Real::one())) * total)
}

/// Main term plus the leading-order secondary term `q^{2g+1}/ζ(2)·[x⁶]Q₂·x⁶`.
pub fn third_moment_prediction(e: &Euler, c: &ThirdMomentConstants, g: usize) -> Result<Real> {
    let main = main_term_k3(e, g, 7)?;
    let q = int(c.q as i64);
    let x = int(2 * g as i64 + 1);
    let secondary = q.powi(2 * g as i32 + 1) / c.zeta2() * c.q2_leading() * x.powi(6);
    Ok(main + secondary)
}
