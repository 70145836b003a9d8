//! Predicted moments and the constants tables behind them.

use serde::Serialize;

use ffmoments_asymptotics::constants::Constants;
use ffmoments_asymptotics::first::FirstMomentConstants;
use ffmoments_asymptotics::polys::{p2_residue, p_polynomials, r_conjecture_poly, PredictionPolynomial};
use ffmoments_asymptotics::third::{leading_coefficient_identity, third_moment_constants, third_moment_prediction, ThirdMomentConstants};
use ffmoments_asymptotics::{Euler, Real};
use ffmoments_core::verify::SuiteReport;

use crate::error::{Error, Result};

pub fn euler(q: u32, max_degree: Option<usize>) -> Result<Euler> {
    Ok(match max_degree {
        Some(n) => Euler::with_max_degree(q, n)?,
        None => Euler::new(q)?,
    })
}

/// Lazily computed constants for one `q`.
pub struct Predictor {
    euler: Euler,
    first: Option<FirstMomentConstants>,
    second: Option<Constants>,
    third: Option<ThirdMomentConstants>,
}

impl Predictor {
    pub fn new(q: u32, max_degree: Option<usize>) -> Result<Self> {
        Ok(Self { euler: euler(q, max_degree)?, first: None, second: None, third: None })
    }

    pub fn q(&self) -> u32 {
        self.euler.q()
    }

    pub fn euler(&self) -> &Euler {
        &self.euler
    }

    pub fn first(&mut self) -> Result<&FirstMomentConstants> {
        if self.first.is_none() {
            self.first = Some(FirstMomentConstants::compute(&self.euler)?);
        }
        Ok(self.first.as_ref().unwrap())
    }

    pub fn second(&mut self) -> Result<&Constants> {
        if self.second.is_none() {
            self.second = Some(Constants::compute(&self.euler)?);
        }
        Ok(self.second.as_ref().unwrap())
    }

    pub fn third(&mut self) -> Result<&ThirdMomentConstants> {
        if self.third.is_none() {
            self.third = Some(third_moment_constants(&self.euler)?);
        }
        Ok(self.third.as_ref().unwrap())
    }

    /// k = 1: the first-moment main term; k = 2: `q^{2g+1}/ζ(2)·P(2g+1)`;
    /// k = 3: residue main term plus the leading secondary term.
    pub fn prediction(&mut self, g: usize, k: u32) -> Result<f64> {
        if g == 0 {
            return Err(Error::Usage("g must be >= 1".into()));
        }
        let v = match k {
            1 => self.first()?.prediction(g)?,
            2 => ffmoments_asymptotics::polys::second_moment_prediction(self.second()?, g),
            3 => {
                self.third()?;
                third_moment_prediction(&self.euler, self.third.as_ref().unwrap(), g)?
            }
            _ => return Err(Error::Usage(format!("k must be 1, 2 or 3, got {k}"))),
        };
        Ok(v.to_f64())
    }

    /// `q^{2g+1}/ζ(2)·(A₃/2880)·(2g+1)⁶`
    pub fn third_leading_only(&mut self, g: usize) -> Result<f64> {
        let t = self.third()?;
        let q = Real::from_i64(t.q as i64);
        let x = Real::from_i64(2 * g as i64 + 1);
        let v = q.powi(2 * g as i32 + 1) / t.zeta2() * &t.a3 / Real::from_i64(2880) * x.powi(6);
        Ok(v.to_f64())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

/// One row of a constants table. Checked rows carry the value from an
/// independent route and a tolerance on the deviation between them.
#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub section: &'static str,
    pub name: String,
    pub value: f64,
    pub reference: Option<f64>,
    pub deviation: Option<f64>,
    pub tolerance: Option<f64>,
    pub status: Status,
}

#[derive(Default)]
pub struct Table {
    pub entries: Vec<Entry>,
}

impl Table {
    fn info(&mut self, section: &'static str, name: impl Into<String>, value: &Real) {
        self.entries.push(Entry {
            section,
            name: name.into(),
            value: value.to_f64(),
            reference: None,
            deviation: None,
            tolerance: None,
            status: Status::Info,
        });
    }

    fn check(&mut self, section: &'static str, name: impl Into<String>, value: f64, reference: Option<f64>, deviation: f64, tol: f64) {
        self.entries.push(Entry {
            section,
            name: name.into(),
            value,
            reference,
            deviation: Some(deviation),
            tolerance: Some(tol),
            status: if deviation <= tol { Status::Pass } else { Status::Fail },
        });
    }

    fn compare(&mut self, section: &'static str, name: impl Into<String>, a: &Real, b: &Real, tol: f64) {
        self.check(section, name, a.to_f64(), Some(b.to_f64()), Real::rel_diff(a, b), tol);
    }

    fn poly(&mut self, p: &PredictionPolynomial) {
        for (i, c) in p.coeffs.iter().enumerate() {
            self.info("polynomials", format!("[x^{i}]{}", p.kind), c);
        }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn checks(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status != Status::Info)
    }

    /// The checked rows as a suite report.
    pub fn to_suite(&self, name: &str) -> SuiteReport {
        let mut rep = SuiteReport::new(name);
        for e in self.checks() {
            let dev = e.deviation.unwrap_or(0.0);
            rep.record(e.status == Status::Pass, dev, || format!("{}: {dev:e} > {:e}", e.name, e.tolerance.unwrap_or(0.0)));
        }
        rep
    }
}

/// Truncation certificates are stable to 1e-12 by construction, or the
/// constants would not have been produced at all.
const CERT: f64 = 1e-12;

pub fn second_moment_table(c: &Constants, e: &Euler) -> Result<Table> {
    let mut t = Table::default();
    t.check("certificate", format!("worst N -> N+2 change (N = {})", c.worst_degree), c.worst_change, None, c.worst_change, CERT);
    for (i, b) in c.b.iter().enumerate() {
        t.info("b-sums", format!("b{}", i + 1), b);
    }
    t.info("B", "B(1/q)", &c.b_value);
    for (name, d) in ["B'(1/q)", "B''(1/q)", "B'''(1/q)"].iter().zip(&c.b_derivs) {
        t.compare("B", *name, &d.jet, &d.closed, 1e-9);
    }
    t.info("F", "F(1)", &c.f_value);
    let f1 = &c.f_derivs[0];
    t.check("F", "F'(1) = 0", f1.jet.to_f64(), Some(0.0), f1.diff_against(&c.f_value), 1e-10);
    for (name, d) in ["F''(1)", "F'''(1)"].iter().zip(&c.f_derivs[1..]) {
        t.compare("F", *name, &d.jet, &d.closed, 1e-9);
    }
    for (name, d) in ["alpha(1)", "alpha'(1)", "alpha''(1)"].iter().zip(&c.alpha) {
        t.compare("alpha", *name, &d.jet, &d.closed, 1e-9);
    }
    t.info("A", "A(0,0)", &c.a00);
    for (name, d) in c.a_partials.all() {
        t.compare("A", name, &d.jet, &d.closed, 1e-9);
    }
    for s in &c.sanity {
        let tol = if s.name.starts_with("prod") { 1e-12 } else { 1e-10 };
        t.compare("identities", s.name, &s.computed, &s.expected, tol);
    }
    let polys = p_polynomials(c);
    let r = r_conjecture_poly(c);
    t.poly(&polys.p1);
    t.poly(&polys.p2);
    t.poly(&polys.p);
    t.poly(&r);
    let dev = polys.p.max_rel_diff(&r);
    t.check("polynomials", "P = R coefficientwise", dev, None, dev, 1e-8);
    t.compare("polynomials", "[x^3]P = A(0,0)/24", &polys.p.coeff(3), &(&c.a00 / Real::from_i64(24)), 1e-10);
    let res = p2_residue(e)?;
    let dev = polys.p2.max_rel_diff(&res);
    t.check("polynomials", "P2 display = residue at z = 1", dev, None, dev, 1e-9);
    Ok(t)
}

pub fn third_moment_table(c: &ThirdMomentConstants) -> Table {
    let mut t = Table::default();
    t.check("certificate", "worst N -> N+2 change", c.worst_change, None, c.worst_change, CERT);
    t.info("constants", "A3", &c.a3);
    t.compare("constants", "B3(1/q) = A3", &c.b3, &c.a3, 1e-10);
    t.compare("constants", "H(1,1/q) zeta(2)^4 = A3", &c.h_zeta4(), &c.a3, 1e-10);
    t.info("leading", "[x^6]Q1", &c.q1_leading());
    t.info("leading", "[x^6]Q2", &c.q2_leading());
    t.compare("leading", "[x^6]Q = A3/2880", &(c.q1_leading() + c.q2_leading()), &(&c.a3 / Real::from_i64(2880)), 1e-10);
    let ok = leading_coefficient_identity();
    t.check("leading", "729/(2^11 6!) - 217/(2^11 6!) = 1/2880", 1.0 / 2880.0, None, if ok { 0.0 } else { 1.0 }, 0.0);
    t
}

pub fn first_moment_table(c: &FirstMomentConstants) -> Table {
    let mut t = Table::default();
    t.check("certificate", "worst N -> N+2 change", c.worst_change, None, c.worst_change, CERT);
    t.info("constants", "P(1)", &c.p_one);
    t.compare("constants", "P'/P(1) prime sum vs jet", &c.log_derivative, &c.log_derivative_jet, 1e-9);
    t
}

pub fn table(p: &mut Predictor, k: u32) -> Result<Table> {
    match k {
        1 => Ok(first_moment_table(p.first()?)),
        2 => {
            p.second()?;
            second_moment_table(p.second.as_ref().unwrap(), &p.euler)
        }
        3 => Ok(third_moment_table(p.third()?)),
        _ => Err(Error::Usage(format!("k must be 1, 2 or 3, got {k}"))),
    }
}

/// The checks of the second-moment table as one suite.
pub fn euler_suite(q: u32, max_degree: Option<usize>) -> Result<SuiteReport> {
    let mut p = Predictor::new(q, max_degree)?;
    let mut rep = table(&mut p, 2)?.to_suite("euler");
    let t3 = table(&mut p, 3)?.to_suite("euler");
    let t1 = table(&mut p, 1)?.to_suite("euler");
    for r in [t3, t1] {
        rep.checked += r.checked;
        rep.failures += r.failures;
        rep.max_deviation = rep.max_deviation.max(r.max_deviation);
        if rep.detail.is_empty() {
            rep.detail = r.detail;
        }
    }
    Ok(rep)
}
