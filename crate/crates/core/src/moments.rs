//! Exact moments `Σ_{D∈H_{2g+1}} L(1/2, χ_D)^k` by exhaustive enumeration.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::characters::jacobi_coeffs;
use crate::enumerate::{count_monic, enumerate_monic_upto, split_range, MonicRange};
use crate::error::{Error, Result};
use crate::field::FieldParams;
use crate::lfunc::{l_value_half, AfeContext, CharsumContext, LPolynomial};
use crate::pointcount::{is_squarefree_coeffs, TraceEngine};
use crate::poly::FqPoly;
use crate::quad::QuadValue;

/// Default refusal threshold for [`estimate_ops`].
pub const DEFAULT_BUDGET: f64 = 1e11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    PointCount,
    CharSum,
    Afe,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::PointCount, Method::CharSum, Method::Afe];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::PointCount => "pointcount",
            Method::CharSum => "charsum",
            Method::Afe => "afe",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Parse(s.to_string(), "expected pointcount, charsum or afe".into()))
    }
}

#[derive(Debug, Clone)]
pub struct MomentOptions {
    /// Number of contiguous index ranges; results do not depend on it.
    pub partitions: usize,
    /// Refuse when the operation estimate exceeds this (`None`: no limit).
    pub budget: Option<f64>,
}

impl Default for MomentOptions {
    fn default() -> Self {
        Self {
            partitions: rayon::current_num_threads().max(1) * 4,
            budget: Some(DEFAULT_BUDGET),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentResult {
    pub q: u32,
    pub g: usize,
    pub k: u32,
    pub ensemble_count: u64,
    pub value_exact: QuadValue,
    pub value_float: f64,
    pub method: Method,
    pub partition_count: usize,
    pub runtime_ms: u64,
}

/// `|H_n| = q^n − q^{n−1}` for `n >= 2`, `q` for `n = 1`.
pub fn h_count(q: u32, n: usize) -> u64 {
    match n {
        0 => 1,
        1 => q as u64,
        _ => count_monic(q, n) - count_monic(q, n - 1),
    }
}

/// Square-free monic polynomials of degree `d` whose enumeration index lies
/// in `range`, in index order.
pub fn enumerate_h_range(field: FieldParams, d: usize, range: Range<u64>) -> impl Iterator<Item = FqPoly> {
    MonicRange::new(field, d, range).filter(|f| is_squarefree_coeffs(f.field(), f.coeffs()))
}

/// `H_d` in enumeration order.
pub fn enumerate_h(field: FieldParams, d: usize) -> impl Iterator<Item = FqPoly> {
    enumerate_h_range(field, d, 0..count_monic(field.q(), d))
}

/// Rough count of field operations for one moment computation.
pub fn estimate_ops(q: u32, g: usize, k: u32, method: Method) -> f64 {
    let qf = q as f64;
    let ensemble = qf.powi(2 * g as i32 + 1);
    let per_d = match method {
        Method::PointCount => (1..=g).map(|r| qf.powi(r as i32)).sum::<f64>().max(1.0),
        Method::CharSum => 1.25 * qf.powi(2 * g as i32 + 2),
        Method::Afe => 1.25 * qf.powi((k as usize * g) as i32),
    };
    ensemble * per_d
}

/// Exact power sums `Σ (A + B√q)^k` for `k = 1..=3`, kept as `(a_k, b_k)`.
#[derive(Debug, Clone, Default)]
struct PowerSums {
    count: u64,
    big: [(BigInt, BigInt); 3],
    small: [(i128, i128); 3],
    pending: u32,
}

impl PowerSums {
    const FLUSH: u32 = 1024;

    /// Adds `(A + B√q)`, `(A + B√q)²`, `(A + B√q)³`.
    fn push(&mut self, q: i128, a: i128, b: i128) {
        let a2 = a * a + q * b * b;
        let b2 = 2 * a * b;
        let a3 = a * a2 + q * b * b2;
        let b3 = a * b2 + b * a2;
        self.add_small([(a, b), (a2, b2), (a3, b3)]);
    }

    fn add_small(&mut self, v: [(i128, i128); 3]) {
        for (s, x) in self.small.iter_mut().zip(v) {
            s.0 += x.0;
            s.1 += x.1;
        }
        self.count += 1;
        self.pending += 1;
        if self.pending >= Self::FLUSH {
            self.flush();
        }
    }

    fn add_big(&mut self, k: usize, a: BigInt, b: BigInt) {
        self.big[k].0 += a;
        self.big[k].1 += b;
    }

    fn flush(&mut self) {
        for (b, s) in self.big.iter_mut().zip(self.small.iter_mut()) {
            b.0 += BigInt::from(s.0);
            b.1 += BigInt::from(s.1);
            *s = (0, 0);
        }
        self.pending = 0;
    }

    fn merge(mut self, mut other: Self) -> Self {
        self.flush();
        other.flush();
        for (x, y) in self.big.iter_mut().zip(other.big) {
            x.0 += y.0;
            x.1 += y.1;
        }
        self.count += other.count;
        self
    }
}

/// `q^g · L(1/2)` as `A + B√q`, from integer coefficients.
fn central_parts(q: i128, c: &[i64]) -> (i128, i128) {
    let g = c.len() / 2;
    let mut a = 0i128;
    let mut b = 0i128;
    for (n, &cn) in c.iter().enumerate() {
        if n % 2 == 0 {
            a += cn as i128 * q.pow((g - n / 2) as u32);
        } else {
            b += cn as i128 * q.pow((g - n / 2 - 1) as u32);
        }
    }
    (a, b)
}

/// Newton's identities in machine integers, completed by the functional
/// equation.
fn coeffs_from_traces(q: i64, g: usize, a: &[i64], out: &mut Vec<i64>) -> Result<()> {
    out.clear();
    out.push(1);
    for n in 1..=g {
        let s: i64 = (1..=n).map(|r| a[r - 1] * out[n - r]).sum();
        if s % n as i64 != 0 {
            return Err(Error::NonIntegralCoefficient(n));
        }
        out.push(s / n as i64);
    }
    for m in g + 1..=2 * g {
        let n = 2 * g - m;
        out.push(out[n] * q.pow((g - n) as u32));
    }
    Ok(())
}

fn lpoly_small(l: &LPolynomial) -> Vec<i64> {
    l.coeffs()
        .iter()
        .map(|c| i64::try_from(c).expect("L-coefficient fits i64"))
        .collect()
}

enum Engine {
    PointCount(TraceEngine),
    CharSum(CharsumContext),
    Afe(Vec<AfeContext>),
}

fn partition_sums(
    engine: &Engine,
    field: FieldParams,
    g: usize,
    ks: &[u32],
    range: Range<u64>,
) -> Result<PowerSums> {
    let q = field.q() as i128;
    let n = 2 * g + 1;
    let mut sums = PowerSums::default();
    match engine {
        Engine::PointCount(te) => {
            let mut buf = vec![0u32; n + 1];
            buf[n] = 1;
            let mut c = Vec::with_capacity(n);
            let mut err = None;
            te.scan(range, |digits, traces| {
                if err.is_some() {
                    return;
                }
                buf[..n].copy_from_slice(digits);
                if !is_squarefree_coeffs(field, &buf) {
                    return;
                }
                if let Err(e) = coeffs_from_traces(q as i64, g, traces, &mut c) {
                    err = Some(e);
                    return;
                }
                let (a, b) = central_parts(q, &c);
                sums.push(q, a, b);
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        Engine::CharSum(ctx) => {
            for d in enumerate_h_range(field, n, range) {
                let c = lpoly_small(&ctx.l_poly(&d)?);
                let (a, b) = central_parts(q, &c);
                sums.push(q, a, b);
            }
        }
        Engine::Afe(ctxs) => {
            for d in enumerate_h_range(field, n, range) {
                for (ctx, &k) in ctxs.iter().zip(ks) {
                    // lift to the common denominator q^{kg}
                    let v = ctx.value(&d)?;
                    let lift = num_traits::pow(BigInt::from(field.q()), k as usize * g - v.e() as usize);
                    sums.add_big(k as usize - 1, v.a() * &lift, v.b() * &lift);
                }
                sums.count += 1;
            }
        }
    }
    sums.flush();
    Ok(sums)
}

/// All requested moments `k ∈ ks` in a single pass over `H_{2g+1}`.
pub fn moments(q: u32, g: usize, ks: &[u32], method: Method, opts: &MomentOptions) -> Result<Vec<MomentResult>> {
    let start = Instant::now();
    let field = FieldParams::for_characters(q)?;
    if g == 0 {
        return Err(Error::GenusTooSmall);
    }
    if let Some(&k) = ks.iter().find(|&&k| !(1..=3).contains(&k)) {
        return Err(Error::UnsupportedMomentOrder(k));
    }
    if let Some(budget) = opts.budget {
        let kmax = ks.iter().copied().max().unwrap_or(1);
        let estimated = estimate_ops(q, g, kmax, method);
        if estimated > budget {
            return Err(Error::BudgetExceeded { estimated, budget });
        }
    }
    let n = 2 * g + 1;
    let engine = match method {
        Method::PointCount => Engine::PointCount(TraceEngine::new(field, n, g)?),
        Method::CharSum => Engine::CharSum(CharsumContext::new(field, g)?),
        Method::Afe => Engine::Afe(
            ks.iter()
                .map(|&k| AfeContext::new(field, g, k))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let parts = opts.partitions.max(1);
    let ranges = split_range(count_monic(q, n), parts);
    let partials = ranges
        .into_par_iter()
        .map(|r| partition_sums(&engine, field, g, ks, r))
        .collect::<Result<Vec<_>>>()?;
    let total = partials
        .into_iter()
        .fold(PowerSums::default(), PowerSums::merge);
    let runtime_ms = start.elapsed().as_millis() as u64;
    Ok(ks
        .iter()
        .map(|&k| {
            let (a, b) = &total.big[k as usize - 1];
            let v = QuadValue::new(q, a.clone(), b.clone(), k * g as u32);
            MomentResult {
                q,
                g,
                k,
                ensemble_count: total.count,
                value_float: v.to_f64(),
                value_exact: v,
                method,
                partition_count: parts,
                runtime_ms,
            }
        })
        .collect())
}

pub fn moment_with(q: u32, g: usize, k: u32, method: Method, opts: &MomentOptions) -> Result<MomentResult> {
    Ok(moments(q, g, &[k], method, opts)?.remove(0))
}

pub fn moment(q: u32, g: usize, k: u32, method: Method) -> Result<MomentResult> {
    moment_with(q, g, k, method, &MomentOptions::default())
}

/// Central value of one `D`, by the charsum route; for spot checks.
pub fn central_value(d: &FqPoly) -> Result<QuadValue> {
    Ok(l_value_half(&crate::lfunc::l_coeffs_charsum(d)?))
}

/// Both sides of
/// `Σ_{D∈H_{2g+1}} χ_f(D) = Σ_{C|f^∞} Σ_{h∈M_{2g+1−2d(C)}} χ_f(h) − q Σ_{C|f^∞} Σ_{h∈M_{2g−1−2d(C)}} χ_f(h)`
/// with `χ_f(h) = (f/h)`.
pub fn charsum_over_h(f: &FqPoly, g: usize) -> Result<(BigInt, BigInt)> {
    let field = FieldParams::for_characters(f.q())?;
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let chi = |h: &FqPoly| -> i64 {
        if h.is_constant() {
            1
        } else {
            jacobi_coeffs(field, f.coeffs(), h.coeffs()) as i64
        }
    };
    let n = 2 * g + 1;
    let lhs: i64 = enumerate_h(field, n).map(|d| chi(&d)).sum();

    // monic sums Σ_{h∈M_m} χ_f(h) for every m that can occur
    let m_sum = |m: i64| -> i64 {
        if m < 0 {
            0
        } else {
            crate::enumerate::enumerate_monic(field, m as usize)
                .map(|h| chi(&h))
                .sum()
        }
    };
    let sums: Vec<i64> = (0..=n as i64).map(m_sum).collect();
    let at = |m: i64| if m < 0 { 0 } else { sums[m as usize] };
    let q = field.q() as i64;
    let mut rhs = 0i64;
    for c in enumerate_monic_upto(field, g) {
        if !divides_power_of(&c, f)? {
            continue;
        }
        let dc = c.deg() as i64;
        rhs += at(n as i64 - 2 * dc) - q * at(n as i64 - 2 - 2 * dc);
    }
    Ok((BigInt::from(lhs), BigInt::from(rhs)))
}

/// Whether every prime factor of `c` divides `f`.
fn divides_power_of(c: &FqPoly, f: &FqPoly) -> Result<bool> {
    let mut c = c.clone();
    while !c.is_constant() {
        let d = c.gcd(f)?;
        if d.is_constant() {
            return Ok(false);
        }
        c = c.div_exact(&d)?;
    }
    Ok(true)
}

impl PowerSums {
    #[cfg(test)]
    fn value(&self, q: u32, k: usize, e: u32) -> QuadValue {
        let mut s = self.clone();
        s.flush();
        QuadValue::new(q, s.big[k - 1].0.clone(), s.big[k - 1].1.clone(), e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunc::l_coeffs_charsum;

    fn opts(parts: usize) -> MomentOptions {
        MomentOptions {
            partitions: parts,
            budget: Some(DEFAULT_BUDGET),
        }
    }

    #[test]
    fn h_counts() {
        for q in [5u32, 13] {
            let field = FieldParams::new(q).unwrap();
            assert_eq!(enumerate_h(field, 1).count() as u64, q as u64);
            for n in 2..=4 {
                assert_eq!(enumerate_h(field, n).count() as u64, h_count(q, n));
            }
        }
        assert_eq!(h_count(5, 3), 100);
        assert_eq!(h_count(5, 5), 2500);
    }

    #[test]
    fn power_sums_track_quad_values() {
        let mut s = PowerSums::default();
        let mut want = [QuadValue::zero(5), QuadValue::zero(5), QuadValue::zero(5)];
        for (a, b) in [(3i128, -1i128), (10, 4), (-7, 2)] {
            s.push(5, a, b);
            let v = QuadValue::new(5, a, b, 0);
            for (k, w) in want.iter_mut().enumerate() {
                *w = &*w + &v.pow(k as u32 + 1);
            }
        }
        for k in 1..=3 {
            assert_eq!(s.value(5, k, 0), want[k - 1]);
        }
    }

    #[test]
    fn genus_one_methods_agree() {
        let field = FieldParams::new(5).unwrap();
        let mut direct = [QuadValue::zero(5), QuadValue::zero(5), QuadValue::zero(5)];
        for d in enumerate_h(field, 3) {
            let v = l_value_half(&l_coeffs_charsum(&d).unwrap());
            for (k, w) in direct.iter_mut().enumerate() {
                *w = &*w + &v.pow(k as u32 + 1);
            }
        }
        for m in Method::ALL {
            let r = moments(5, 1, &[1, 2, 3], m, &opts(3)).unwrap();
            for (k, res) in r.iter().enumerate() {
                assert_eq!(res.value_exact, direct[k], "{m} k={}", k + 1);
                assert_eq!(res.ensemble_count, 100);
                let f = res.value_exact.to_f64();
                assert!((res.value_float - f).abs() <= 1e-12 * f.abs());
            }
        }
    }

    #[test]
    fn partition_invariance() {
        let base = moment_with(5, 2, 2, Method::PointCount, &opts(1)).unwrap();
        for p in [4, 16] {
            let r = moment_with(5, 2, 2, Method::PointCount, &opts(p)).unwrap();
            assert_eq!(r.value_exact, base.value_exact);
        }
    }

    #[test]
    fn guards() {
        assert_eq!(moment(7, 1, 1, Method::PointCount).unwrap_err(), Error::ModulusNotOneModFour(7));
        assert_eq!(moment(5, 0, 1, Method::PointCount).unwrap_err(), Error::GenusTooSmall);
        assert_eq!(moment(5, 1, 4, Method::Afe).unwrap_err(), Error::UnsupportedMomentOrder(4));
        let tight = MomentOptions {
            partitions: 1,
            budget: Some(1e3),
        };
        assert!(matches!(
            moment_with(5, 2, 2, Method::CharSum, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
        assert_eq!("afe".parse::<Method>().unwrap(), Method::Afe);
        assert!("fast".parse::<Method>().is_err());
    }

    #[test]
    fn firstpoint_identity() {
        let field = FieldParams::new(5).unwrap();
        let one = FqPoly::one(field);
        let (l, r) = charsum_over_h(&one, 1).unwrap();
        assert_eq!(l, BigInt::from(h_count(5, 3)));
        assert_eq!(l, r);
        for f in enumerate_monic_upto(field, 2) {
            let (l, r) = charsum_over_h(&f, 1).unwrap();
            assert_eq!(l, r, "f = {f}");
        }
        let p2 = FqPoly::parse(field, "x^2+2").unwrap().mul(&FqPoly::parse(field, "x^2+2").unwrap());
        let (l, r) = charsum_over_h(&p2, 1).unwrap();
        assert_eq!(l, r);
    }
}
