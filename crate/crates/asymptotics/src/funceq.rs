//! Reflection identities for `𝓕` and `α`, and the specializations of the
//! bivariate local factors at `w = 1/q`.

use ffmoments_core::verify::SuiteReport;

use crate::constants::{alpha_term, f_factor, g_term, h_term, int, poly_jet};
use crate::error::{Error, Result};
use crate::euler::{Euler, Prime};
use crate::jet::Jet;
use crate::real::Real;
use crate::third::{h_factor_at_inverse_q, h_factor_bivariate};

pub const DEFAULT_POINTS: [f64; 8] = [0.3, 0.4, 0.5, 0.55, 0.6, 0.7, 0.8, 0.9];

/// The bivariate `𝓕_P(z, w)` with `z` fixed and `w` a jet.
pub fn f_factor_bivariate(p: &Prime, z: &Real, w: &Jet) -> Result<Jet> {
    let n = &p.norm;
    let n2 = n.powi(2);
    let zd = z.powi(p.d as i32);
    let zd2 = zd.powi(2);
    let ww = w.powi(p.d as i64)?;
    let num = poly_jet(
        &ww,
        &[
            Real::one(),
            int(-2) * &n2 * &zd + int(2) * &n2 * &zd2,
            int(-2) * n * &zd + (int(3) * &n2 - int(2) * n.powi(3)) * &zd2,
            Real::zero(),
            &n2 * &zd2 - n.powi(3) * zd.powi(3),
        ],
    );
    let den = (&ww * &ww).scale(&-(n * &zd)).add_scalar(&Real::one()).scale(&(&n2 * &zd));
    let inner = (-num.div(&den)?).add_scalar(&Real::one());
    let lead = (-&ww).add_scalar(&Real::one());
    Ok(&(&lead * &lead) * &inner)
}

struct Eval<'a> {
    /// for products
    e: &'a Euler,
    /// for the prime sums, which converge only like `|z|^d`
    s: Euler,
}

impl Eval<'_> {
    fn scalar_sum(&self, what: &str, z: &Real, term: fn(&Prime, &Jet) -> Result<Jet>) -> Result<Real> {
        let zj = Jet::constant(z.clone(), 0);
        Ok(self.s.sum(what, |p| term(p, &zj))?.value.value().clone())
    }

    fn g(&self, z: &Real) -> Result<Real> {
        self.scalar_sum("g(z)", z, g_term)
    }

    fn h(&self, z: &Real) -> Result<Real> {
        self.scalar_sum("h(z)", z, h_term)
    }

    /// `α` by its displayed prime sum; converges for `|z| < 1`.
    fn alpha_sum(&self, z: &Real) -> Result<Real> {
        self.scalar_sum("alpha(z)", z, alpha_term)
    }

    /// `α = 2z/(1−z) − g − 4h`, valid wherever `g` and `h` converge.
    fn alpha_continued(&self, z: &Real) -> Result<Real> {
        let geo = int(2) * z / (Real::one() - z);
        Ok(geo - self.g(z)? - int(4) * self.h(z)?)
    }

    /// `(𝓕(z), 𝓕′(z))`.
    fn f_jet(&self, z: &Real) -> Result<(Real, Real)> {
        let zj = Jet::variable(z.clone(), 1);
        let j = self.e.product("F(z)", |p| f_factor(p, &zj))?.value;
        Ok((j.value().clone(), j.coeff(1)))
    }

    /// `(1/q)·∂_w log 𝓕(z, w)` at `w = 1/q`.
    fn alpha_from_definition(&self, z: &Real) -> Result<Real> {
        let q = int(self.e.q() as i64);
        let w = Jet::variable(q.recip(), 1);
        // F′/F per factor rather than a log: the factors sit within |P|^{-1} of 1
        let s = self.s.sum_real("dlog F(z,w)", |p| {
            let f = f_factor_bivariate(p, z, &w)?;
            Ok(f.coeff(1) / f.value())
        })?;
        Ok(s.value / q)
    }
}

fn scaled(a: &Real, b: &Real) -> f64 {
    ((a - b).abs() / (Real::one() + a.abs())).to_f64()
}

/// Runs every identity at each sample point; tolerance `tol` on
/// `|lhs − rhs|/(1 + |lhs|)` (relative for `𝓕`).
pub fn functional_eq_suite(e: &Euler, points: &[f64], tol: f64) -> Result<SuiteReport> {
    let q = e.q() as f64;
    let zmax = points.iter().fold(0.0f64, |m, z| m.max(z.abs()));
    let cap = if zmax < 1.0 { ((1e-16f64).ln() / zmax.ln()).ceil() as usize + 20 } else { 0 };
    let ev = Eval { e, s: Euler::with_degree_cap(e.q(), cap.min(2000))? };
    let mut rep = SuiteReport::new("funceq");
    for &zf in points {
        if !(zf.abs() > 1.0 / q && zf.abs() < 1.0) || (1.0 - zf).abs() < 1e-6 {
            return Err(Error::InvalidPoint(format!("z = {zf} must satisfy 1/q < |z| < 1")));
        }
        let z = Real::from_f64(zf);
        let iz = z.recip();

        let (fz, dfz) = ev.f_jet(&z)?;
        let (fiz, _) = ev.f_jet(&iz)?;
        let dev = Real::rel_diff(&fz, &fiz);
        rep.record(dev < tol, dev, || format!("F(z) != F(1/z) at z = {zf}: {dev:e}"));

        let (gz, giz) = (ev.g(&z)?, ev.g(&iz)?);
        let dev = scaled(&gz, &giz);
        rep.record(dev < tol, dev, || format!("g(z) != g(1/z) at z = {zf}: {dev:e}"));

        let zf_over_f = &z * &dfz / &fz;
        let dev = scaled(&ev.h(&iz)?, &(ev.h(&z)? + &zf_over_f));
        rep.record(dev < tol, dev, || format!("h reflection at z = {zf}: {dev:e}"));

        let a_z = ev.alpha_sum(&z)?;
        let lhs = ev.alpha_continued(&iz)?;
        let rhs = &a_z - int(2) * (Real::one() + &z) / (Real::one() - &z) - int(4) * &zf_over_f;
        let dev = scaled(&lhs, &rhs);
        rep.record(dev < tol, dev, || format!("alpha reflection at z = {zf}: {dev:e}"));

        let dev = scaled(&a_z, &ev.alpha_continued(&z)?);
        rep.record(dev < tol, dev, || format!("alpha sum vs 2z/(1-z)-g-4h at z = {zf}: {dev:e}"));

        let dev = scaled(&a_z, &ev.alpha_from_definition(&z)?);
        rep.record(dev < tol, dev, || format!("alpha sum vs dlog F(z,w) at z = {zf}: {dev:e}"));

        factor_checks(e, &z, tol, &mut rep)?;
    }
    Ok(rep)
}

/// `𝓕_P(z, 1/q)` and `𝓗_P(z, 1/q)` from the bivariate factors against the
/// single-variable displays, degree by degree for `d ≤ 6`, at `z` and `1/z`.
fn factor_checks(e: &Euler, z: &Real, tol: f64, rep: &mut SuiteReport) -> Result<()> {
    let q = int(e.q() as i64);
    let w = Jet::constant(q.recip(), 0);
    for zz in [z.clone(), z.recip()] {
        let zj = Jet::constant(zz.clone(), 0);
        for d in 1..=6 {
            let p = Prime { d, norm: q.powi(d as i32), count: Real::one(), log_norm: &q.ln() * int(d as i64) };
            let a = f_factor_bivariate(&p, &zz, &w)?.value().clone();
            let b = f_factor(&p, &zj)?.value().clone();
            let dev = Real::rel_diff(&a, &b);
            rep.record(dev < tol, dev, || format!("F_P(z,1/q) vs F_P(z), d = {d}: {dev:e}"));
            let a = h_factor_bivariate(&p, &zz, &q.recip());
            let b = h_factor_at_inverse_q(&p, &zj)?.value().clone();
            let dev = Real::rel_diff(&a, &b);
            rep.record(dev < tol, dev, || format!("H_P(z,1/q) vs expanded H_P, d = {d}: {dev:e}"));
        }
    }
    Ok(())
}
