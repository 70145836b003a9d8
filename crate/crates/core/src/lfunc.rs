//! L-polynomials `𝓛(u, χ_D)` for square-free monic `D` of odd degree,
//! central values in ℚ(√q) and the exact functional equation for their powers.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::characters::jacobi_coeffs;
use crate::error::{Error, Result};
use crate::ext::ExtField;
use crate::factor::MonicTable;
use crate::field::FieldParams;
use crate::poly::FqPoly;
use crate::quad::QuadValue;

/// Integer coefficients `c_0..c_{2g}` of `𝓛(u, χ_D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPolynomial {
    q: u32,
    g: usize,
    coeffs: Vec<BigInt>,
}

impl LPolynomial {
    /// Wraps `2g+1` coefficients; `c_0` must be 1.
    pub fn new(q: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len().is_multiple_of(2) {
            return Err(Error::LPolynomialCheck(format!(
                "expected an odd number of coefficients, got {}",
                coeffs.len()
            )));
        }
        if !coeffs[0].is_one() {
            return Err(Error::LPolynomialCheck(format!("c_0 = {} != 1", coeffs[0])));
        }
        Ok(Self {
            q,
            g: coeffs.len() / 2,
            coeffs,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// `c_{2g−n} = q^{g−n} c_n` for all `n <= g`.
    pub fn satisfies_symmetry(&self) -> bool {
        let q = BigInt::from(self.q);
        (0..=self.g).all(|n| {
            self.coeffs[2 * self.g - n] == &self.coeffs[n] * num_traits::pow(q.clone(), self.g - n)
        })
    }

    /// Horner evaluation in double precision.
    pub fn eval_f64(&self, u: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * u + c.to_f64().unwrap_or(f64::NAN))
    }
}

/// Genus of `D ∈ H_{2g+1}`, or the reason `D` is not in the ensemble.
pub fn genus_of(d: &FqPoly) -> Result<usize> {
    if !d.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = d.deg();
    if n.is_multiple_of(2) {
        return Err(Error::EvenDegree(n));
    }
    if !d.is_squarefree()? {
        return Err(Error::NotSquarefree);
    }
    Ok((n - 1) / 2)
}

/// Shared state for evaluating `χ_D` on every monic polynomial of bounded
/// degree: a factor table, so that only irreducibles need a Jacobi symbol.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    table: MonicTable,
}

impl CharacterTable {
    pub fn new(field: FieldParams, max_degree: usize) -> Result<Self> {
        let field = FieldParams::for_characters(field.q())?;
        Ok(Self {
            table: MonicTable::new(field, max_degree),
        })
    }

    pub fn monic_table(&self) -> &MonicTable {
        &self.table
    }

    pub fn max_degree(&self) -> usize {
        self.table.max_degree()
    }

    /// `χ_D(f)` for every table entry, in global index order.
    pub fn chi_values(&self, d: &FqPoly) -> Vec<i8> {
        let field = self.table.field();
        let mut buf = [0u32; 64];
        self.table.completely_multiplicative(|gi| {
            let n = self.table.coeffs_into(gi, &mut buf);
            jacobi_coeffs(field, d.coeffs(), &buf[..n])
        })
    }

    /// `Σ_{f∈M_n} values[f]` for each degree `n` of the table.
    pub fn degree_sums(&self, values: &[i8]) -> Vec<i64> {
        (0..=self.max_degree())
            .map(|n| {
                let lo = self.table.offset(n);
                let hi = self.table.offset(n + 1);
                values[lo..hi].iter().map(|&v| v as i64).sum()
            })
            .collect()
    }
}

/// Charsum route for a fixed genus: `c_n = Σ_{f∈M_n} χ_D(f)`.
#[derive(Debug, Clone)]
pub struct CharsumContext {
    g: usize,
    chars: CharacterTable,
}

impl CharsumContext {
    pub fn new(field: FieldParams, g: usize) -> Result<Self> {
        Ok(Self {
            g,
            chars: CharacterTable::new(field, 2 * g + 2)?,
        })
    }

    pub fn l_poly(&self, d: &FqPoly) -> Result<LPolynomial> {
        let g = genus_of(d)?;
        if g != self.g {
            return Err(Error::LPolynomialCheck(format!(
                "context built for genus {}, D has genus {g}",
                self.g
            )));
        }
        let chi = self.chars.chi_values(d);
        let sums = self.chars.degree_sums(&chi);
        for n in [2 * g + 1, 2 * g + 2] {
            if sums[n] != 0 {
                return Err(Error::LPolynomialCheck(format!(
                    "character sum over M_{n} is {}, expected 0",
                    sums[n]
                )));
            }
        }
        LPolynomial::new(
            d.q(),
            sums[..=2 * g].iter().map(|&c| BigInt::from(c)).collect(),
        )
    }
}

/// `𝓛(u, χ_D)` by summing `χ_D` over monic polynomials of degree `<= 2g`.
pub fn l_coeffs_charsum(d: &FqPoly) -> Result<LPolynomial> {
    let g = genus_of(d)?;
    CharsumContext::new(d.field(), g)?.l_poly(d)
}

/// Point-count route: `a_r = Σ_{x∈𝔽_{q^r}} χ(D(x))` for `r <= g`, then
/// Newton's identities and the functional equation.
#[derive(Debug, Clone)]
pub struct PointCountContext {
    field: FieldParams,
    g: usize,
    exts: Vec<(ExtField, Vec<i8>)>,
}

impl PointCountContext {
    pub fn new(field: FieldParams, g: usize) -> Result<Self> {
        let field = FieldParams::for_characters(field.q())?;
        let exts = (1..=g)
            .map(|r| {
                let e = ExtField::new(field, r)?;
                let t = e.character_table();
                Ok((e, t))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { field, g, exts })
    }

    /// `a_1..a_g`.
    pub fn traces(&self, d: &FqPoly) -> Vec<i64> {
        self.exts
            .iter()
            .map(|(e, table)| {
                (0..e.order())
                    .map(|i| {
                        let y = e.eval(d, &e.element(i));
                        table[e.index_of(&y) as usize] as i64
                    })
                    .sum()
            })
            .collect()
    }

    pub fn l_poly(&self, d: &FqPoly) -> Result<LPolynomial> {
        let g = genus_of(d)?;
        if g != self.g {
            return Err(Error::LPolynomialCheck(format!(
                "context built for genus {}, D has genus {g}",
                self.g
            )));
        }
        from_traces(self.field.q(), g, &self.traces(d))
    }
}

/// Rebuilds `c_0..c_{2g}` from `a_1..a_g` via `n c_n = Σ_{r=1}^n a_r c_{n−r}`
/// and `c_{2g−n} = q^{g−n} c_n`.
pub fn from_traces(q: u32, g: usize, a: &[i64]) -> Result<LPolynomial> {
    assert!(a.len() >= g);
    let mut c: Vec<BigInt> = Vec::with_capacity(2 * g + 1);
    c.push(BigInt::one());
    for n in 1..=g {
        let s: BigInt = (1..=n).map(|r| BigInt::from(a[r - 1]) * &c[n - r]).sum();
        let (quo, rem) = s.div_rem(&BigInt::from(n));
        if !rem.is_zero() {
            return Err(Error::NonIntegralCoefficient(n));
        }
        c.push(quo);
    }
    let qb = BigInt::from(q);
    for m in g + 1..=2 * g {
        let n = 2 * g - m;
        c.push(&c[n] * num_traits::pow(qb.clone(), g - n));
    }
    LPolynomial::new(q, c)
}

pub fn l_coeffs_pointcount(d: &FqPoly) -> Result<LPolynomial> {
    let g = genus_of(d)?;
    PointCountContext::new(d.field(), g)?.l_poly(d)
}

/// `𝓛(q^{−1/2}, χ_D)` exactly.
pub fn l_value_half(l: &LPolynomial) -> QuadValue {
    let g = l.g;
    let q = BigInt::from(l.q);
    let mut a = BigInt::zero();
    let mut b = BigInt::zero();
    for (n, c) in l.coeffs.iter().enumerate() {
        if n % 2 == 0 {
            a += c * num_traits::pow(q.clone(), (2 * g - n) / 2);
        } else {
            b += c * num_traits::pow(q.clone(), (2 * g - n - 1) / 2);
        }
    }
    QuadValue::new(l.q, a, b, g as u32)
}

/// Largest `| |u|√q − 1 |` over the roots of `𝓛(u)`. Repeated roots are
/// removed first (exact square-free part over ℚ), then the remaining simple
/// roots of `𝓛(v/√q)` are found by Aberth iteration.
pub fn check_rh_roots(l: &LPolynomial) -> Result<f64> {
    if l.g == 0 {
        return Err(Error::GenusTooSmall);
    }
    let p: Vec<BigRational> = l
        .coeffs
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let sf = squarefree_part(&p);
    if sf.len() <= 1 {
        return Ok(0.0);
    }
    let sq = (l.q as f64).sqrt();
    let coeffs: Vec<Complex64> = sf
        .iter()
        .enumerate()
        .map(|(n, c)| Complex64::new(c.to_f64().unwrap_or(f64::NAN) / sq.powi(n as i32), 0.0))
        .collect();
    let roots = aberth(&coeffs)?;
    Ok(roots
        .iter()
        .map(|z| (z.norm() - 1.0).abs())
        .fold(0.0, f64::max))
}

type RatPoly = Vec<BigRational>;

fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn rat_divmod(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut quo = vec![BigRational::zero(); r.len() - db];
    let lead = &b[db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        quo[shift] = c;
        r.pop();
        trim(&mut r);
    }
    (quo, r)
}

fn squarefree_part(p: &RatPoly) -> RatPoly {
    let dp: RatPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, c)| c * BigRational::from_integer(BigInt::from(n)))
        .collect();
    let mut a = p.clone();
    let mut b = dp;
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = rat_divmod(&a, &b);
        a = b;
        b = r;
    }
    // a = gcd(p, p') up to a scalar
    rat_divmod(p, &a).0
}

/// Simultaneous root finding for a polynomial with simple roots
/// (coefficients constant term first).
fn aberth(c: &[Complex64]) -> Result<Vec<Complex64>> {
    const MAX_ITER: usize = 2000;
    let m = c.len() - 1;
    let lead = c[m];
    let c: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    if m == 1 {
        return Ok(vec![-c[0]]);
    }
    let radius = c[0].norm().powf(1.0 / m as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / m as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ITER {
        let mut worst: f64 = 0.0;
        for i in 0..m {
            let (pv, dv) = horner_with_derivative(&c, z[i]);
            if pv == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = pv / dv;
            let s: Complex64 = (0..m).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= step;
            worst = worst.max(step.norm() / (1.0 + z[i].norm()));
        }
        if worst < 1e-15 {
            return Ok(z);
        }
    }
    Err(Error::RootFinder(MAX_ITER))
}

fn horner_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Exact functional equation for `L(1/2, χ_D)^k`:
/// `Σ_{f∈M_{≤kg}} χ_D(f)d_k(f)|f|^{−1/2} + Σ_{f∈M_{≤kg−1}} χ_D(f)d_k(f)|f|^{−1/2}`.
#[derive(Debug, Clone)]
pub struct AfeContext {
    g: usize,
    k: u32,
    chars: CharacterTable,
    dk: Vec<u64>,
}

impl AfeContext {
    pub fn new(field: FieldParams, g: usize, k: u32) -> Result<Self> {
        if !(1..=3).contains(&k) {
            return Err(Error::UnsupportedMomentOrder(k));
        }
        let chars = CharacterTable::new(field, k as usize * g)?;
        let dk = chars.monic_table().divisor_counts(k);
        Ok(Self { g, k, chars, dk })
    }

    pub fn value(&self, d: &FqPoly) -> Result<QuadValue> {
        let g = genus_of(d)?;
        if g != self.g {
            return Err(Error::LPolynomialCheck(format!(
                "context built for genus {}, D has genus {g}",
                self.g
            )));
        }
        let chi = self.chars.chi_values(d);
        let t = self.chars.monic_table();
        let top = self.k as usize * g;
        let q = self.chars.monic_table().field().q();
        let qb = BigInt::from(q);
        let mut a = BigInt::zero();
        let mut b = BigInt::zero();
        for n in 0..=top {
            let s: i64 = (t.offset(n)..t.offset(n + 1))
                .map(|gi| chi[gi] as i64 * self.dk[gi] as i64)
                .sum();
            // f of degree kg appears in the first sum only
            let mult = if n < top { 2 } else { 1 };
            let s = BigInt::from(s * mult);
            if n % 2 == 0 {
                a += s * num_traits::pow(qb.clone(), top - n / 2);
            } else {
                b += s * num_traits::pow(qb.clone(), top - n / 2 - 1);
            }
        }
        Ok(QuadValue::new(q, a, b, top as u32))
    }
}

pub fn afe_value(d: &FqPoly, k: u32) -> Result<QuadValue> {
    let g = genus_of(d)?;
    AfeContext::new(d.field(), g, k)?.value(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_monic;

    fn f5() -> FieldParams {
        FieldParams::new(5).unwrap()
    }

    fn h(field: FieldParams, n: usize) -> Vec<FqPoly> {
        enumerate_monic(field, n)
            .filter(|d| d.is_squarefree().unwrap())
            .collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn degree_one_is_trivial() {
        let d = FqPoly::parse(f5(), "x+2").unwrap();
        let l = l_coeffs_charsum(&d).unwrap();
        assert_eq!(l.coeffs(), &ints(&[1])[..]);
        assert_eq!(l_coeffs_pointcount(&d).unwrap(), l);
        assert!(l_value_half(&l).is_one());
        assert!(afe_value(&d, 1).unwrap().is_one());
        assert_eq!(check_rh_roots(&l), Err(Error::GenusTooSmall));
    }

    #[test]
    fn rejects_bad_d() {
        let sq = FqPoly::parse(f5(), "x^3").unwrap();
        assert_eq!(l_coeffs_charsum(&sq), Err(Error::NotSquarefree));
        let even = FqPoly::parse(f5(), "x^2+2").unwrap();
        assert_eq!(l_coeffs_pointcount(&even), Err(Error::EvenDegree(2)));
        let f7 = FieldParams::new(7).unwrap();
        let d = FqPoly::parse(f7, "x^3+x").unwrap();
        assert_eq!(l_coeffs_charsum(&d), Err(Error::ModulusNotOneModFour(7)));
    }

    #[test]
    fn genus_one_hand_example() {
        // D = x³ + x: values at 0..4 are 0, 2, 0, 0, 3 → legendre 0, −1, 0, 0, −1
        let d = FqPoly::parse(f5(), "x^3+x").unwrap();
        let l = l_coeffs_pointcount(&d).unwrap();
        assert_eq!(l.coeffs(), &ints(&[1, -2, 5])[..]);
        assert_eq!(l_coeffs_charsum(&d).unwrap(), l);
        // 𝓛(5^{-1/2}) = 1 − 2/√5 + 1
        assert_eq!(l_value_half(&l), QuadValue::new(5, 10, -2, 1));
    }

    #[test]
    fn c1_is_a_sum_of_legendre_symbols() {
        let field = f5();
        for d in h(field, 3) {
            let l = l_coeffs_charsum(&d).unwrap();
            let direct: i64 = (0..5)
                .map(|a| field.legendre(d.eval(field.neg(a))) as i64)
                .sum();
            assert_eq!(l.coeffs()[1], BigInt::from(direct));
        }
    }

    #[test]
    fn methods_agree_on_small_ensembles() {
        for n in [3, 5] {
            let g = (n - 1) / 2;
            let cs = CharsumContext::new(f5(), g).unwrap();
            let pc = PointCountContext::new(f5(), g).unwrap();
            for d in h(f5(), n).iter().step_by(if n == 5 { 11 } else { 1 }) {
                let a = cs.l_poly(d).unwrap();
                assert_eq!(a, pc.l_poly(d).unwrap(), "D = {d}");
                assert!(a.satisfies_symmetry());
            }
        }
    }

    #[test]
    fn newton_detects_nonintegral() {
        assert_eq!(from_traces(5, 2, &[1, 0]), Err(Error::NonIntegralCoefficient(2)));
    }

    #[test]
    fn central_value_matches_horner() {
        let cs = CharsumContext::new(f5(), 2).unwrap();
        for d in h(f5(), 5).iter().step_by(37) {
            let l = cs.l_poly(d).unwrap();
            let exact = l_value_half(&l).to_f64();
            let float = l.eval_f64(1.0 / 5f64.sqrt());
            assert!((exact - float).abs() <= 1e-12 * (1.0 + float.abs()));
        }
        let l = LPolynomial::new(5, ints(&[1, 3, 5])).unwrap();
        assert_eq!(l_value_half(&l), QuadValue::new(5, 10, 3, 1));
    }

    #[test]
    fn rh_roots() {
        let l = LPolynomial::new(5, ints(&[1, 0, 5])).unwrap();
        assert!(check_rh_roots(&l).unwrap() < 1e-14);
        // repeated root pair: (1 + 5u²)²
        let l = LPolynomial::new(5, ints(&[1, 0, 10, 0, 25])).unwrap();
        assert!(check_rh_roots(&l).unwrap() < 1e-14);
        for d in h(f5(), 3) {
            let l = l_coeffs_charsum(&d).unwrap();
            assert!(check_rh_roots(&l).unwrap() < 1e-8);
        }
        let pc = PointCountContext::new(f5(), 3).unwrap();
        let d = FqPoly::parse(f5(), "x^7+x+1").unwrap();
        let l = pc.l_poly(&d).unwrap();
        assert!(check_rh_roots(&l).unwrap() < 1e-8);
        let mut bad = l.clone().into_coeffs();
        bad[1] += 7;
        let bad = LPolynomial::new(5, bad).unwrap();
        assert!(check_rh_roots(&bad).unwrap() > 1e-3);
    }

    #[test]
    fn afe_is_a_power_of_the_central_value() {
        let cs = CharsumContext::new(f5(), 1).unwrap();
        let afe2 = AfeContext::new(f5(), 1, 2).unwrap();
        let afe3 = AfeContext::new(f5(), 1, 3).unwrap();
        let afe1 = AfeContext::new(f5(), 1, 1).unwrap();
        for d in h(f5(), 3) {
            let v = l_value_half(&cs.l_poly(&d).unwrap());
            assert_eq!(afe1.value(&d).unwrap(), v);
            assert_eq!(afe2.value(&d).unwrap(), v.pow(2));
            assert_eq!(afe3.value(&d).unwrap(), v.pow(3));
        }
        assert_eq!(
            AfeContext::new(f5(), 1, 4).unwrap_err(),
            Error::UnsupportedMomentOrder(4)
        );
    }
}
