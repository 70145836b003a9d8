//! Exhaustive identity checks on small boxes, shared by the CLI and tests.

use rand::seq::{IteratorRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::characters::{jacobi_coeffs, ClosedGauss, GaussContext};
use crate::enumerate::{count_monic, enumerate_monic, enumerate_monic_upto, enumerate_residues};
use crate::error::Result;
use crate::factor::IrreducibleCache;
use crate::field::FieldParams;
use crate::lfunc::{check_rh_roots, l_value_half, AfeContext, CharsumContext, PointCountContext};
use crate::moments::{charsum_over_h, enumerate_h, h_count};
use crate::poly::FqPoly;

/// Outcome of one suite: how many cases ran, how many failed, and the worst
/// deviation seen (0 for exact suites).
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: String,
    pub checked: u64,
    pub failures: u64,
    pub max_deviation: f64,
    pub detail: String,
}

impl SuiteReport {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            checked: 0,
            failures: 0,
            max_deviation: 0.0,
            detail: String::new(),
        }
    }

    pub fn record(&mut self, ok: bool, deviation: f64, what: impl FnOnce() -> String) {
        self.checked += 1;
        if deviation.is_nan() {
            self.max_deviation = f64::NAN;
        } else if deviation > self.max_deviation {
            self.max_deviation = deviation;
        }
        if !ok {
            self.failures += 1;
            if self.detail.is_empty() {
                self.detail = what();
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

/// `|H_n| = q^n(1 − 1/q)` for `2 <= n <= max_n`, and `|H_1| = q`.
pub fn ensemble_count_suite(field: FieldParams, max_n: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("ensemble-counts");
    for n in 1..=max_n {
        let got = enumerate_h(field, n).count() as u64;
        let want = h_count(field.q(), n);
        rep.record(got == want, 0.0, || format!("|H_{n}| = {got}, want {want}"));
    }
    rep
}

/// Closed-form against brute-force Gauss sums for every monic `f` with
/// `1 <= deg f <= max_f` and every nonzero `V` with `deg V <= max_v`.
/// Deviation is `|closed − brute| / (1 + |brute|)`; imaginary parts of the
/// brute-force sums are checked against the same tolerance.
pub fn gauss_suite(field: FieldParams, max_f: usize, max_v: usize, tol: f64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("gauss");
    let cache = IrreducibleCache::new(field, max_f);
    let vs: Vec<FqPoly> = enumerate_residues(field, max_v + 1).skip(1).collect();
    let mut worst_im: f64 = 0.0;
    for f in enumerate_monic_upto(field, max_f).filter(|f| f.deg() >= 1) {
        let brute = GaussContext::new(&f)?;
        let closed = ClosedGauss::new(&f, &cache.factor(&f)?)?;
        for v in &vs {
            let b = brute.gauss_sum(v)?.value;
            let c = closed.eval(v)?.value;
            let dev = (c - b).norm() / (1.0 + b.norm());
            let im = b.im.abs() / (1.0 + b.re.abs());
            worst_im = worst_im.max(im);
            rep.record(dev <= tol && im <= tol, dev.max(im), || {
                format!("f = {f}, V = {v}: closed {c}, brute {b}")
            });
        }
    }
    rep.detail = if rep.detail.is_empty() {
        format!("max imaginary part {worst_im:.3e}")
    } else {
        rep.detail
    };
    Ok(rep)
}

/// `Σ_{h∈M_m} (h/f)` against its dual sum over Gauss sums, for all monic
/// `f` with `1 <= deg f <= max_f` and `0 <= m <= max_m`.
pub fn poisson_suite(field: FieldParams, max_f: usize, max_m: usize, tol: f64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("poisson");
    let q = field.q() as f64;
    for f in enumerate_monic_upto(field, max_f).filter(|f| f.deg() >= 1) {
        let ctx = GaussContext::new(&f)?;
        let n = f.deg() as i64;
        let norm = q.powi(n as i32);
        let g_sum = |lo: i64, hi: i64| -> Result<f64> {
            let mut s = 0.0;
            for d in lo.max(0)..=hi {
                for v in enumerate_monic(field, d as usize) {
                    s += ctx.gauss_sum(&v)?.value.re;
                }
            }
            Ok(s)
        };
        for m in 0..=max_m as i64 {
            let lhs: i64 = enumerate_monic(field, m as usize)
                .map(|h| chi_f(field, &f, &h))
                .sum();
            let scale = q.powi(m as i32) / norm;
            let rhs = if n % 2 == 0 {
                let g0 = ctx.gauss_sum(&FqPoly::zero(field))?.value.re;
                scale * (g0 + (q - 1.0) * g_sum(0, n - m - 2)? - g_sum(n - m - 1, n - m - 1)?)
            } else {
                scale * q.sqrt() * g_sum(n - m - 1, n - m - 1)?
            };
            let dev = (lhs as f64 - rhs).abs() / (1.0 + (lhs as f64).abs());
            rep.record(dev <= tol, dev, || format!("f = {f}, m = {m}: {lhs} vs {rhs}"));
        }
    }
    Ok(rep)
}

/// `(h/f)` for monic `h`, with the empty symbol `(h/1) = 1`.
fn chi_f(field: FieldParams, f: &FqPoly, h: &FqPoly) -> i64 {
    if f.is_constant() {
        1
    } else {
        jacobi_coeffs(field, h.coeffs(), f.coeffs()) as i64
    }
}

/// Both sides of the square-free character-sum identity, exactly, for every
/// monic `f` with `deg f <= max_f` and each genus in `genera`.
pub fn firstpoint_suite(field: FieldParams, max_f: usize, genera: &[usize]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("firstpoint");
    for &g in genera {
        for f in enumerate_monic_upto(field, max_f) {
            let (l, r) = charsum_over_h(&f, g)?;
            rep.record(l == r, 0.0, || format!("f = {f}, g = {g}: {l} vs {r}"));
        }
    }
    Ok(rep)
}

/// Which square-free `D` an L-function suite visits.
#[derive(Debug, Clone)]
pub enum Sample {
    All(usize),
    /// `count` distinct elements of `H_n` drawn with a fixed seed.
    Random { n: usize, count: usize, seed: u64 },
}

impl Sample {
    fn degree(&self) -> usize {
        match *self {
            Sample::All(n) | Sample::Random { n, .. } => n,
        }
    }

    fn draw(&self, field: FieldParams) -> Vec<FqPoly> {
        match *self {
            Sample::All(n) => enumerate_h(field, n).collect(),
            Sample::Random { n, count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut idx = (0..count_monic(field.q(), n)).choose_multiple(&mut rng, 4 * count + 16);
                idx.shuffle(&mut rng);
                let mut out: Vec<FqPoly> = idx
                    .into_iter()
                    .map(|i| crate::enumerate::monic_from_index(field, n, i))
                    .filter(|d| d.is_squarefree().unwrap_or(false))
                    .collect();
                out.truncate(count);
                out.sort();
                out
            }
        }
    }
}

/// Charsum and point-count L-polynomials agree exactly and satisfy the
/// functional equation.
pub fn artin_suite(field: FieldParams, samples: &[Sample]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("artin");
    for s in samples {
        let g = (s.degree() - 1) / 2;
        let cs = CharsumContext::new(field, g)?;
        let pc = PointCountContext::new(field, g)?;
        for d in s.draw(field) {
            let a = cs.l_poly(&d)?;
            let b = pc.l_poly(&d)?;
            rep.record(a == b && a.satisfies_symmetry(), 0.0, || {
                format!("D = {d}: {:?} vs {:?}", a.coeffs(), b.coeffs())
            });
        }
    }
    Ok(rep)
}

/// `afe_value(D, k) = L(1/2, χ_D)^k` exactly.
pub fn fe_suite(field: FieldParams, degrees: &[usize], ks: &[u32]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("fe");
    for &n in degrees {
        let g = (n - 1) / 2;
        let cs = CharsumContext::new(field, g)?;
        let afe = ks
            .iter()
            .map(|&k| AfeContext::new(field, g, k))
            .collect::<Result<Vec<_>>>()?;
        for d in enumerate_h(field, n) {
            let v = l_value_half(&cs.l_poly(&d)?);
            for (ctx, &k) in afe.iter().zip(ks) {
                let lhs = ctx.value(&d)?;
                let rhs = v.pow(k);
                rep.record(lhs == rhs, 0.0, || format!("D = {d}, k = {k}: {lhs} vs {rhs}"));
            }
        }
    }
    Ok(rep)
}

/// Largest distance of the inverse roots from the circle `|α| = √q`.
pub fn rh_suite(field: FieldParams, samples: &[Sample], tol: f64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("rh");
    for s in samples {
        let g = (s.degree() - 1) / 2;
        let pc = PointCountContext::new(field, g)?;
        for d in s.draw(field) {
            let dev = check_rh_roots(&pc.l_poly(&d)?)?;
            rep.record(dev < tol, dev, || format!("D = {d}: deviation {dev:e}"));
        }
    }
    Ok(rep)
}

/// `Σ_{f₁f₂=f} 1 = d_2(f)` by brute force over pairs.
pub fn divisor_suite(field: FieldParams, max_deg: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("divisor");
    let cache = IrreducibleCache::new(field, max_deg);
    let polys: Vec<FqPoly> = enumerate_monic_upto(field, max_deg).collect();
    let mut counts = std::collections::HashMap::<FqPoly, u64>::new();
    for a in &polys {
        for b in polys.iter().filter(|b| a.deg() + b.deg() <= max_deg) {
            *counts.entry(a.mul(b)).or_default() += 1;
        }
    }
    for f in &polys {
        let want = crate::characters::divisor_fn(2, &cache.factor(f)?);
        let got = counts.get(f).copied().unwrap_or(0);
        rep.record(got == want, 0.0, || format!("f = {f}: {got} vs {want}"));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldParams {
        FieldParams::new(5).unwrap()
    }

    #[test]
    fn small_boxes_pass() {
        assert!(ensemble_count_suite(f5(), 4).passed());
        assert!(gauss_suite(f5(), 2, 2, 1e-6).unwrap().passed());
        let p = poisson_suite(f5(), 3, 4, 1e-6).unwrap();
        assert!(p.passed(), "{p:?}");
        assert!(firstpoint_suite(f5(), 2, &[1]).unwrap().passed());
        assert!(artin_suite(f5(), &[Sample::All(3)]).unwrap().passed());
        assert!(fe_suite(f5(), &[3], &[2, 3]).unwrap().passed());
        assert!(divisor_suite(f5(), 3).unwrap().passed());
    }

    #[test]
    fn random_samples_are_square_free_and_reproducible() {
        let s = Sample::Random {
            n: 7,
            count: 20,
            seed: 3,
        };
        let a = s.draw(f5());
        assert_eq!(a.len(), 20);
        assert!(a.iter().all(|d| d.is_squarefree().unwrap() && d.deg() == 7));
        assert_eq!(a, s.draw(f5()));
        let r = rh_suite(f5(), &[s], 1e-8).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn failures_are_reported() {
        let mut r = SuiteReport::new("x");
        r.record(true, 0.1, String::new);
        r.record(false, 0.5, || "bad".into());
        assert!(!r.passed());
        assert_eq!(r.failures, 1);
        assert_eq!(r.max_deviation, 0.5);
        assert_eq!(r.detail, "bad");
    }
}
