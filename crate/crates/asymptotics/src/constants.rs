//! The second-moment constants: `𝓑` at `1/q` with three derivatives, `𝓕`
//! and the regular part of `α` at `z = 1`, `A(0,0)` with its partials, and
//! the closed-form sums `b₁..b₉`.
//!
//! Each derivative is produced twice: once by pushing jets through the Euler
//! product and once from the closed `b`-sums. The two must agree.

use crate::error::Result;
use crate::euler::{Certified, Euler, Prime};
use crate::jet::Jet;
use crate::real::Real;

/// Horner evaluation of `Σ c_i x^i`.
pub(crate) fn poly_jet(x: &Jet, c: &[Real]) -> Jet {
    let m = x.order();
    c.iter()
        .rev()
        .fold(Jet::constant(Real::zero(), m), |acc, ci| (&acc * x).add_scalar(ci))
}

pub(crate) fn poly_real(x: &Real, c: &[Real]) -> Real {
    c.iter().rev().fold(Real::zero(), |acc, ci| acc * x + ci)
}

pub(crate) fn int(v: i64) -> Real {
    Real::from_i64(v)
}

/// `Σ_i c_i P^i` for integer coefficients.
fn pp(p: &Real, c: &[i64]) -> Real {
    poly_real(p, &c.iter().map(|&v| int(v)).collect::<Vec<_>>())
}

/// `1 + u^d(u^d − 3)/((|P|+1)(1 + u^d))`
pub fn b_factor(p: &Prime, u: &Jet) -> Result<Jet> {
    let x = u.powi(p.d as i64)?;
    let num = &x * &x.add_scalar(&int(-3));
    let den = x.add_scalar(&Real::one()).scale(&(&p.norm + Real::one()));
    Ok(num.div(&den)?.add_scalar(&Real::one()))
}

/// `(1 − 1/|P|)²(1 + 2/|P| + 1/|P|³ − (z^d + z^{−d})/|P|²)`
pub fn f_factor(p: &Prime, z: &Jet) -> Result<Jet> {
    let zd = z.powi(p.d as i64)?;
    let s = &zd + &zd.recip()?;
    let ip = p.norm.recip();
    let c = int(1) + int(2) * &ip + ip.powi(3);
    let w = (Real::one() - &ip).powi(2);
    Ok((-s.scale(&ip.powi(2))).add_scalar(&c).scale(&w))
}

/// `z^d + 2|P|²z^d + |P|³z^d − |P| − |P|z^{2d}`
fn alpha_denominator(p: &Prime, zd: &Jet) -> Jet {
    let pn = &p.norm;
    let lin = int(1) + int(2) * pn.powi(2) + pn.powi(3);
    poly_jet(zd, &[-pn, lin, -pn])
}

/// The per-degree term of `g(z)`.
pub fn g_term(p: &Prime, z: &Jet) -> Result<Jet> {
    let zd = z.powi(p.d as i64)?;
    let pn = &p.norm;
    let lin = int(6) - int(4) * pn + int(6) * pn.powi(2);
    let num = poly_jet(&zd, &[int(-2) * pn, lin, int(-2) * pn]);
    let den = alpha_denominator(p, &zd).scale(&(pn - Real::one()));
    Ok(num.div(&den)?.scale(&int(p.d as i64)))
}

/// The per-degree term of `h(z)`.
pub fn h_term(p: &Prime, z: &Jet) -> Result<Jet> {
    let zd = z.powi(p.d as i64)?;
    let num = (&zd * &zd).scale(&(&p.norm * int(p.d as i64)));
    num.div(&alpha_denominator(p, &zd))
}

/// The per-degree term of `α(z)` as a single displayed fraction.
pub fn alpha_term(p: &Prime, z: &Jet) -> Result<Jet> {
    let zd = z.powi(p.d as i64)?;
    let pn = &p.norm;
    let num = poly_jet(
        &zd,
        &[
            pn.powi(2),
            pp(pn, &[0, -3, 1, -3]),
            pp(pn, &[2, -1, 4, -1, 1]),
            pp(pn, &[0, -2, 1]),
        ],
    );
    // (|P| − 1)(z^d − |P|)(|P| − z^d − 2|P|²z^d − |P|³z^d + |P|z^{2d})
    let den = &zd.add_scalar(&-pn) * &(-alpha_denominator(p, &zd));
    let den = den.scale(&(pn - Real::one()));
    Ok(num.div(&den)?.scale(&int(2 * p.d as i64)))
}

/// The factor of `A(1/2; z₁, z₂)` along `z₁ = a·s`, `z₂ = b·s`.
pub fn a_factor(p: &Prime, a: i64, b: i64, order: usize) -> Jet {
    let s = Jet::variable(Real::zero(), order);
    let lp = &p.log_norm;
    // |P|^{−c − k s}
    let pw = |c: Real, k: i64| s.scale(&(-(lp * int(k)))).add_scalar(&-(c * lp)).exp();
    let one = Real::one();
    let half = Real::ratio(1, 2);
    let mut v = Jet::constant(one.clone(), order);
    for k in [2 * a, a + b, 2 * b] {
        v = &v * &(-pw(one.clone(), k)).add_scalar(&one);
    }
    let x1 = pw(half.clone(), a);
    let x2 = pw(half.clone(), b);
    let minus = (&(-&x1).add_scalar(&one) * &(-&x2).add_scalar(&one)).recip().expect("|P|^{-1/2} < 1");
    let plus = (&x1.add_scalar(&one) * &x2.add_scalar(&one)).recip().expect("positive");
    let ip = p.norm.recip();
    let mid = (&minus + &plus).scale(&half).add_scalar(&ip);
    (&v * &mid).scale(&(one + ip).recip())
}

/// A derivative computed along two independent routes.
#[derive(Debug, Clone)]
pub struct Dual {
    /// Jets pushed through the Euler product (or prime sum).
    pub jet: Real,
    /// Closed form in terms of the `b`-sums.
    pub closed: Real,
}

impl Dual {
    pub fn rel_diff(&self) -> f64 {
        Real::rel_diff(&self.jet, &self.closed)
    }

    /// `|jet − closed| / (|scale| + |closed|)`; for quantities that vanish.
    pub fn diff_against(&self, scale: &Real) -> f64 {
        let s = scale.abs() + self.closed.abs();
        ((&self.jet - &self.closed).abs() / s).to_f64()
    }
}

#[derive(Debug, Clone)]
pub struct APartials {
    pub a1: Dual,
    pub a2: Dual,
    pub a12: Dual,
    pub a111: Dual,
    pub a112: Dual,
    pub a122: Dual,
    pub a222: Dual,
}

impl APartials {
    pub fn all(&self) -> [(&'static str, &Dual); 7] {
        [
            ("A1", &self.a1),
            ("A2", &self.a2),
            ("A12", &self.a12),
            ("A111", &self.a111),
            ("A112", &self.a112),
            ("A122", &self.a122),
            ("A222", &self.a222),
        ]
    }
}

/// A sum or product with a known closed value.
#[derive(Debug, Clone)]
pub struct Sanity {
    pub name: &'static str,
    pub computed: Real,
    pub expected: Real,
}

impl Sanity {
    pub fn rel_diff(&self) -> f64 {
        Real::rel_diff(&self.computed, &self.expected)
    }
}

#[derive(Debug, Clone)]
pub struct Constants {
    pub q: u32,
    /// `b[i] = b_{i+1}`
    pub b: [Real; 9],
    /// `𝓑(1/q)`
    pub b_value: Real,
    /// `𝓑′, 𝓑″, 𝓑‴` at `1/q`.
    pub b_derivs: [Dual; 3],
    /// `𝓕(1)`
    pub f_value: Real,
    /// `𝓕′, 𝓕″, 𝓕‴` at `1`.
    pub f_derivs: [Dual; 3],
    /// `α(1), α′(1), α″(1)` in the normalization of the `P₂` formula:
    /// minus the value and derivatives of the regular part `−g − 4h`.
    pub alpha: [Dual; 3],
    /// `A(0,0)` from its own Euler product.
    pub a00: Real,
    pub a_partials: APartials,
    pub sanity: Vec<Sanity>,
    /// Truncation degree and relative N→N+2 change of the worst quantity.
    pub worst_degree: usize,
    pub worst_change: f64,
}

struct Tracker {
    degree: usize,
    change: f64,
}

impl Tracker {
    fn take<T>(&mut self, c: Certified<T>) -> T {
        if c.change >= self.change {
            self.change = c.change;
            self.degree = c.degree;
        }
        self.degree = self.degree.max(c.degree);
        c.value
    }
}

pub fn b_constants(q: u32) -> Result<Constants> {
    Constants::compute(&Euler::new(q)?)
}

impl Constants {
    pub fn compute(e: &Euler) -> Result<Self> {
        let q = e.q();
        let qr = int(q as i64);
        let mut t = Tracker { degree: 0, change: 0.0 };
        let b = closed_b_sums(e, &mut t)?;
        let [b1, b2, b3, b4, b5, b6, b7, b8, b9] = b.clone();

        // 𝓑 at u = 1/q
        let u = Jet::variable(qr.recip(), 3);
        let bj = t.take(e.product("B(u)", |p| b_factor(p, &u))?);
        let b0 = bj.value().clone();
        let b_closed = [
            -(&qr * &b0 * &b1),
            qr.powi(2) * &b0 * (&b1 * &b1 + &b1 + &b2),
            -(qr.powi(3) * &b0 * (b1.powi(3) + int(3) * &b1 * &b2 + &b4 + int(3) * b1.powi(2) + int(3) * &b2 + int(2) * &b1)),
        ];
        let b_derivs = dual3(&bj, b_closed);

        // 𝓕 at z = 1
        let z = Jet::variable(Real::one(), 3);
        let fj = t.take(e.product("F(z)", |p| f_factor(p, &z))?);
        let f0 = fj.value().clone();
        let f_derivs = dual3(&fj, [Real::zero(), &f0 * &b3, int(-3) * &f0 * &b3]);

        // regular part of α at z = 1
        let z2 = Jet::variable(Real::one(), 2);
        let r = t.take(e.sum("-g(z)-4h(z)", |p| {
            let g = g_term(p, &z2)?;
            let h = h_term(p, &z2)?;
            Ok(-(&g + &h.scale(&int(4))))
        })?);
        let c = &b1 + int(2) / (&qr - Real::one());
        let alpha = [
            Dual { jet: -r.derivative(0), closed: int(2) * &c },
            Dual { jet: -r.derivative(1), closed: b5.clone() },
            Dual { jet: -r.derivative(2), closed: &b6 - &b5 },
        ];

        // A(1/2; z₁, z₂) along four directions
        let a00 = t.take(e.product_real("A(0,0)", |p| Ok(a_factor(p, 0, 0, 0).value().clone()))?);
        let mut dirs = Vec::new();
        for (a, bb) in [(1, 0), (0, 1), (1, 1), (1, -1)] {
            dirs.push(t.take(e.product("A(1/2;z1,z2)", |p| Ok(a_factor(p, a, bb, 3)))?));
        }
        let (d10, d01, d11, d1m) = (&dirs[0], &dirs[1], &dirs[2], &dirs[3]);
        let a11 = d10.derivative(2);
        let a22 = d01.derivative(2);
        let a111 = d10.derivative(3);
        let a222 = d01.derivative(3);
        let a12 = (d11.derivative(2) - &a11 - &a22) / int(2);
        let (p3, m3) = (d11.derivative(3), d1m.derivative(3));
        let a122 = (&p3 + &m3 - int(2) * &a111) / int(6);
        let a112 = (&p3 - &m3 - int(2) * &a222) / int(6);

        let lq = qr.ln();
        let q1 = &qr - Real::one();
        let s4 = int(4) / q1.powi(2) + int(4) / &q1;
        let a0c = &b0 * (Real::one() - qr.recip());
        let mixed = &b2 - &b3 - &s4;
        let cl1 = &a0c * &c * &lq;
        let cl12 = &a0c * (&c * &c + &mixed) * lq.powi(2);
        let cl111 = &a0c * (c.powi(3) + int(3) * &c * &b7 + &b8) * lq.powi(3);
        let cl122 = &a0c * (c.powi(3) + int(2) * &c * &mixed + &c * &b7 + &b9) * lq.powi(3);
        let a_partials = APartials {
            a1: Dual { jet: d10.derivative(1), closed: cl1.clone() },
            a2: Dual { jet: d01.derivative(1), closed: cl1 },
            a12: Dual { jet: a12, closed: cl12 },
            a111: Dual { jet: a111, closed: cl111.clone() },
            a112: Dual { jet: a112, closed: cl122.clone() },
            a122: Dual { jet: a122, closed: cl122 },
            a222: Dual { jet: a222, closed: cl111 },
        };

        let mut sanity = vec![
            Sanity {
                name: "prod (1-|P|^-2) = 1-1/q",
                computed: t.take(e.product_real("1-|P|^-2", |p| Ok(Real::one() - p.norm.powi(-2)))?),
                expected: Real::one() - qr.recip(),
            },
            Sanity { name: "B(1/q)(1-1/q) = A(0,0)", computed: a0c.clone(), expected: a00.clone() },
            Sanity { name: "F(1) zeta(2) = A(0,0)", computed: &f0 * &qr / &q1, expected: a00.clone() },
        ];
        sanity.push(Sanity {
            name: "sum 2d/(|P|^2-1) = 2/(q-1)",
            computed: t.take(e.sum_real("2d/(P^2-1)", |p| Ok(int(2 * p.d as i64) / (p.norm.powi(2) - Real::one())))?),
            expected: int(2) / &q1,
        });
        sanity.push(Sanity {
            name: "sum 4d^2|P|^2/(|P|^2-1)^2 = 4/(q-1)^2+4/(q-1)",
            computed: t.take(e.sum_real("4d^2P^2/(P^2-1)^2", |p| {
                let d = int(p.d as i64);
                Ok(int(4) * &d * &d * p.norm.powi(2) / (p.norm.powi(2) - Real::one()).powi(2))
            })?),
            expected: s4.clone(),
        });
        sanity.push(Sanity {
            name: "sum 8d^3|P|^2(|P|^2+1)/(3(|P|^2-1)^3) = 8q(q+1)/(3(q-1)^3)",
            computed: t.take(e.sum_real("8d^3 sum", |p| {
                let d = int(p.d as i64);
                let p2 = p.norm.powi(2);
                Ok(int(8) * d.powi(3) * &p2 * (&p2 + Real::one()) / (int(3) * (&p2 - Real::one()).powi(3)))
            })?),
            expected: int(8) * &qr * (&qr + Real::one()) / (int(3) * q1.powi(3)),
        });

        Ok(Self {
            q,
            b,
            b_value: b0,
            b_derivs,
            f_value: f0,
            f_derivs,
            alpha,
            a00,
            a_partials,
            sanity,
            worst_degree: t.degree,
            worst_change: t.change,
        })
    }

    /// `ζ(2) = q/(q − 1)`.
    pub fn zeta2(&self) -> Real {
        let q = int(self.q as i64);
        &q / (&q - Real::one())
    }
}

fn dual3(j: &Jet, closed: [Real; 3]) -> [Dual; 3] {
    let [c1, c2, c3] = closed;
    [
        Dual { jet: j.derivative(1), closed: c1 },
        Dual { jet: j.derivative(2), closed: c2 },
        Dual { jet: j.derivative(3), closed: c3 },
    ]
}

fn closed_b_sums(e: &Euler, t: &mut Tracker) -> Result<[Real; 9]> {
    // D(P) = P³ + 2P² − 2P + 1
    let dp = |p: &Real| pp(p, &[1, -2, 2, 1]);
    let dd = |p: &Prime, k: i32| int(p.d as i64).powi(k);
    let one = Real::one();
    let b1 = t.take(e.sum_real("b1", |p| {
        let n = &p.norm;
        Ok(dd(p, 1) * pp(n, &[-1, -2, 3]) / ((n + &one) * dp(n)))
    })?);
    let b2 = -t.take(e.sum_real("b2", |p| {
        let n = &p.norm;
        Ok(dd(p, 2) * n * pp(n, &[3, -5, -2, -14, -1, 3]) / ((n + &one).powi(2) * dp(n).powi(2)))
    })?);
    let b3 = -t.take(e.sum_real("b3", |p| {
        let n = &p.norm;
        Ok(dd(p, 2) * n * pp(n, &[2, -4, 4, 2]) / dp(n).powi(2))
    })?);
    let b4 = t.take(e.sum_real("b4", |p| {
        let n = &p.norm;
        let num = pp(n, &[-3, 6, -3, 91, -41, -29, -57, -55, -8, 3]);
        Ok(dd(p, 3) * n * num / ((n + &one).powi(3) * dp(n).powi(3)))
    })?);
    let b5 = t.take(e.sum_real("b5", |p| Ok(int(4) * dd(p, 2) * &p.norm / dp(&p.norm)))?);
    let b6 = t.take(e.sum_real("b6", |p| {
        let n = &p.norm;
        Ok(int(4) * dd(p, 3) * n * pp(n, &[-1, 0, 1, 1]) / dp(n).powi(2))
    })?);
    let b7 = -t.take(e.sum_real("b7", |p| {
        let n = &p.norm;
        Ok(dd(p, 2) * n * pp(n, &[5, -21, 32, -16, -5, 9]) / ((n - &one).powi(2) * dp(n).powi(2)))
    })?);
    let b8 = t.take(e.sum_real("b8", |p| {
        let n = &p.norm;
        let num = pp(n, &[9, -46, 81, -35, -43, 29, 35, -29, -2, 17]);
        Ok(dd(p, 3) * n * num / pp(n, &[-1, 3, -4, 1, 1]).powi(3))
    })?);
    let qr = int(e.q() as i64);
    let tail = int(8) * &qr * (&qr + &one) / (int(3) * (&qr - &one).powi(3));
    let b9 = int(2) * (&b8 / int(6) - &b6 / int(2) + &b4 / int(3) + tail);
    Ok([b1, b2, b3, b4, b5, b6, b7, b8, b9])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_helpers() {
        let x = Jet::variable(int(2), 2);
        // 1 + 3x + x² at 2 → 11, derivative 7, second 2
        let p = poly_jet(&x, &[int(1), int(3), int(1)]);
        assert_eq!(p.derivative(0), int(11));
        assert_eq!(p.derivative(1), int(7));
        assert_eq!(p.derivative(2), int(2));
        assert_eq!(pp(&int(2), &[1, -2, 2, 1]), int(13));
    }

    #[test]
    fn alpha_pieces_recombine() {
        // α = 2z/(1−z) − g − 4h termwise, since Σ 2d/(|P|/z^d − 1) = 2z/(1−z)
        let z = Jet::variable(Real::from_f64(0.4), 1);
        let p = &Prime {
            d: 2,
            norm: int(25),
            count: int(10),
            log_norm: int(25).ln(),
        };
        let a = alpha_term(p, &z).unwrap();
        let zd = z.powi(2).unwrap();
        let geo = zd.scale(&int(4)).div(&(-&zd).add_scalar(&int(25))).unwrap();
        let rest = &geo - &(&g_term(p, &z).unwrap() + &h_term(p, &z).unwrap().scale(&int(4)));
        assert!(Real::rel_diff(&a.coeff(0), &rest.coeff(0)) < 1e-60);
        assert!(Real::rel_diff(&a.coeff(1), &rest.coeff(1)) < 1e-60);
    }
}
