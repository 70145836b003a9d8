//! Quadratic residue and Jacobi symbols over 𝔽_q[x], the additive character
//! `e(·)` on 𝔽_q((1/x)), generalized Gauss sums and divisor functions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::enumerate::enumerate_residues;
use crate::error::{Error, Result};
use crate::factor::{binomial, Factorization};
use crate::field::FieldParams;
use crate::poly::FqPoly;

/// A value in `{-1, 0, 1}`.
pub type Symbol = i8;

/// `(A/P)` for a monic irreducible `P`, by Euler's criterion
/// `A^{(|P|-1)/2} mod P`.
pub fn residue_symbol(a: &FqPoly, p: &FqPoly) -> Result<Symbol> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if !p.is_irreducible()? {
        return Err(Error::NotIrreducible);
    }
    let r = a.rem(p)?;
    if r.is_zero() {
        return Ok(0);
    }
    let norm = (p.q() as u128).pow(p.deg() as u32);
    let t = r.pow_mod((norm - 1) / 2, p)?;
    debug_assert!(t.is_constant());
    Ok(if t.coeff(0) == 1 { 1 } else { -1 })
}

fn require_one_mod_four(field: FieldParams) -> Result<()> {
    if field.q() % 4 != 1 {
        return Err(Error::ModulusNotOneModFour(field.q()));
    }
    Ok(())
}

/// Jacobi symbol `(A/B)` for monic nonconstant `B`, by reciprocity.
///
/// Each round reduces `A` mod `B`, pulls out the leading coefficient `c` of
/// the remainder using `(c/B) = legendre(c)^{deg B}`, and swaps the two monic
/// arguments. With `q ≡ 1 (mod 4)` the reciprocity sign is always `+1`.
pub fn jacobi_symbol(a: &FqPoly, b: &FqPoly) -> Result<Symbol> {
    let field = b.field();
    require_one_mod_four(field)?;
    if b.is_zero() || b.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if !b.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut a = a.rem(b)?;
    let mut b = b.clone();
    let mut sign: i8 = 1;
    loop {
        if a.is_zero() {
            return Ok(0);
        }
        let c = a.leading();
        if c != 1 {
            let l = field.legendre(c);
            if b.deg() % 2 == 1 {
                sign *= l;
            }
            a = a.scale(field.inv(c));
        }
        if a.is_constant() {
            return Ok(sign);
        }
        let r = b.rem(&a)?;
        b = a;
        a = r;
    }
}

/// Allocation-free Jacobi symbol on raw coefficient slices (constant term
/// first, no trailing zeros in `b`, `b` monic of degree `1..64`). Same
/// algorithm as [`jacobi_symbol`]; the caller guarantees `q ≡ 1 (mod 4)`.
pub fn jacobi_coeffs(field: FieldParams, a: &[u32], b: &[u32]) -> Symbol {
    const N: usize = 64;
    debug_assert!(b.len() >= 2 && b.len() <= N && b[b.len() - 1] == 1);
    let mut x = [0u32; N];
    let mut y = [0u32; N];
    let mut la = a.len().min(N);
    x[..la].copy_from_slice(&a[..la]);
    let mut lb = b.len();
    y[..lb].copy_from_slice(b);
    let (mut pa, mut pb) = (&mut x, &mut y);
    let mut sign: i8 = 1;
    loop {
        // pa <- pa mod pb, pb monic
        while la >= lb {
            let c = pa[la - 1];
            if c != 0 {
                let off = la - lb;
                for j in 0..lb {
                    pa[off + j] = field.sub(pa[off + j], field.mul(c, pb[j]));
                }
            }
            la -= 1;
        }
        while la > 0 && pa[la - 1] == 0 {
            la -= 1;
        }
        if la == 0 {
            return 0;
        }
        let c = pa[la - 1];
        if c != 1 {
            if (lb - 1) % 2 == 1 {
                sign *= field.legendre(c);
            }
            let inv = field.inv(c);
            for v in pa[..la].iter_mut() {
                *v = field.mul(*v, inv);
            }
        }
        if la == 1 {
            return sign;
        }
        std::mem::swap(&mut pa, &mut pb);
        std::mem::swap(&mut la, &mut lb);
    }
}

/// `χ_D(f) = (D/f)`, with `χ_D(1) = 1`.
pub fn chi(d: &FqPoly, f: &FqPoly) -> Result<Symbol> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.is_constant() {
        require_one_mod_four(f.field())?;
        return Ok(1);
    }
    jacobi_symbol(d, f)
}

/// The Jacobi symbol from a factorization of `B` (reference oracle).
pub fn jacobi_by_factorization(a: &FqPoly, fac: &Factorization) -> Result<Symbol> {
    let mut acc = 1i8;
    for (p, e) in &fac.factors {
        let s = residue_symbol(a, p)?;
        if e % 2 == 1 {
            acc *= s;
        } else {
            acc *= s * s;
        }
    }
    Ok(acc)
}

/// Coefficient of `1/x` in the Laurent expansion of `a/f` at infinity.
///
/// With `t = a mod f` (degree `< n`) and `f` monic of degree `n`,
/// `t/f = t_{n-1}/x + O(1/x²)`, so the coefficient is `t_{n-1}`.
pub fn laurent_top(a: &FqPoly, f: &FqPoly) -> Result<u32> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(a.rem(f)?.coeff(n - 1))
}

/// `e(a/f) = exp(2πi·t_{n-1}/q)`.
pub fn hayes_e(a: &FqPoly, f: &FqPoly) -> Result<Complex64> {
    let t = laurent_top(a, f)?;
    Ok(root_of_unity(f.q(), t))
}

fn root_of_unity(q: u32, k: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / q as f64)
}

/// A generalized Gauss sum `G(V, χ_f)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussSum {
    pub value: Complex64,
    pub modulus: FqPoly,
    pub v: FqPoly,
}

impl GaussSum {
    /// Imaginary part small relative to the real part.
    pub fn is_real(&self, tol: f64) -> bool {
        self.value.im.abs() <= tol * (1.0 + self.value.re.abs())
    }
}

/// Brute-force Gauss sums for one modulus `f`.
///
/// Residues `u mod f` are indexed by their base-q code. `χ_f(u)` is tabulated
/// once. For each `V` the map `u ↦ [1/x](uV/f)` is a linear form
/// `Σ u_i ℓ_i` with `ℓ_i = [x^{n-1}](x^i V mod f)`, so the sum reduces to
/// integer counts per phase.
#[derive(Debug, Clone)]
pub struct GaussContext {
    f: FqPoly,
    n: usize,
    chi: Vec<i8>,
    roots: Vec<Complex64>,
}

impl GaussContext {
    pub fn new(f: &FqPoly) -> Result<Self> {
        let n = match f.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let field = f.field();
        require_one_mod_four(field)?;
        let q = field.q();
        let chi = enumerate_residues(field, n)
            .map(|u| jacobi_symbol(&u, f))
            .collect::<Result<Vec<_>>>()?;
        let roots = (0..q).map(|k| root_of_unity(q, k)).collect();
        Ok(Self {
            f: f.clone(),
            n,
            chi,
            roots,
        })
    }

    pub fn modulus(&self) -> &FqPoly {
        &self.f
    }

    /// `χ_f(u)` for `u` of degree `< deg f`, by base-q code.
    pub fn chi_table(&self) -> &[i8] {
        &self.chi
    }

    /// Signed counts `S_k = Σ_{u: [1/x](uV/f) = k} χ_f(u)` for `k in 0..q`.
    pub fn phase_counts(&self, v: &FqPoly) -> Result<Vec<i64>> {
        let field = self.f.field();
        let q = field.q();
        let mut w = v.rem(&self.f)?;
        let x = FqPoly::x(field);
        let mut ell = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            ell.push(w.coeff(self.n - 1));
            w = w.mul(&x).rem(&self.f)?;
        }
        let mut phase: Vec<u32> = vec![0];
        for &l in &ell {
            let len = phase.len();
            let mut next = Vec::with_capacity(len * q as usize);
            for c in 0..q {
                let shift = field.mul(c, l);
                next.extend(phase[..len].iter().map(|&p| field.add(p, shift)));
            }
            phase = next;
        }
        let mut counts = vec![0i64; q as usize];
        for (p, &c) in phase.iter().zip(&self.chi) {
            counts[*p as usize] += c as i64;
        }
        Ok(counts)
    }

    pub fn gauss_sum(&self, v: &FqPoly) -> Result<GaussSum> {
        let counts = self.phase_counts(v)?;
        let value = counts
            .iter()
            .zip(&self.roots)
            .map(|(&c, r)| r * c as f64)
            .sum();
        Ok(GaussSum {
            value,
            modulus: self.f.clone(),
            v: v.clone(),
        })
    }
}

/// `G(V, χ_f) = Σ_{u mod f} χ_f(u) e(uV/f)` by direct summation.
pub fn gauss_sum_bruteforce(v: &FqPoly, f: &FqPoly) -> Result<GaussSum> {
    GaussContext::new(f)?.gauss_sum(v)
}

/// Exponent of `p` in `v`; `None` for `v = 0`.
fn valuation(v: &FqPoly, p: &FqPoly) -> Result<Option<(u32, FqPoly)>> {
    if v.is_zero() {
        return Ok(None);
    }
    let mut rest = v.clone();
    let mut a = 0;
    loop {
        let (quot, rem) = rest.divmod(p)?;
        if !rem.is_zero() {
            return Ok(Some((a, rest)));
        }
        rest = quot;
        a += 1;
    }
}

/// `G(V, χ_{P^i})` as a real number, from the prime-power case analysis.
/// `V = 0` is treated as divisible by every power of `P`.
pub fn gauss_sum_prime_power(v: &FqPoly, p: &FqPoly, i: u32) -> Result<f64> {
    let norm = (p.q() as f64).powi(p.deg() as i32);
    let odd = i % 2 == 1;
    let val = valuation(v, p)?;
    let alpha = val.as_ref().map(|(a, _)| *a).unwrap_or(u32::MAX);
    if i <= alpha {
        return Ok(if odd {
            0.0
        } else {
            norm.powi(i as i32) - norm.powi(i as i32 - 1)
        });
    }
    if i == alpha + 1 {
        let (_, v1) = val.expect("finite valuation");
        return Ok(if odd {
            residue_symbol(&v1, p)? as f64 * norm.powi(i as i32 - 1) * norm.sqrt()
        } else {
            -norm.powi(i as i32 - 1)
        });
    }
    Ok(0.0)
}

/// Closed-form Gauss sums for one modulus with a validated factorization.
#[derive(Debug, Clone)]
pub struct ClosedGauss {
    f: FqPoly,
    fac: Factorization,
}

impl ClosedGauss {
    pub fn new(f: &FqPoly, fac: &Factorization) -> Result<Self> {
        require_one_mod_four(f.field())?;
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        fac.check(f)?;
        Ok(Self {
            f: f.clone(),
            fac: fac.clone(),
        })
    }

    pub fn eval(&self, v: &FqPoly) -> Result<GaussSum> {
        let mut acc = 1.0;
        for (p, i) in &self.fac.factors {
            acc *= gauss_sum_prime_power(v, p, *i)?;
            if acc == 0.0 {
                break;
            }
        }
        Ok(GaussSum {
            value: Complex64::new(acc, 0.0),
            modulus: self.f.clone(),
            v: v.clone(),
        })
    }
}

/// Closed-form `G(V, χ_f)` as a product over the prime powers of `f`.
pub fn gauss_sum_closed(v: &FqPoly, f: &FqPoly, fac: &Factorization) -> Result<GaussSum> {
    ClosedGauss::new(f, fac)?.eval(v)
}

/// `d_k(f) = Π_{P^e || f} C(e+k-1, k-1)`.
pub fn divisor_fn(k: u32, fac: &Factorization) -> u64 {
    assert!(k >= 1, "divisor function needs k >= 1");
    fac.factors
        .iter()
        .map(|&(_, e)| binomial(e as u64 + k as u64 - 1, k as u64 - 1))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_monic, enumerate_monic_upto};
    use crate::factor::IrreducibleCache;

    fn f5() -> FieldParams {
        FieldParams::new(5).unwrap()
    }

    fn p(s: &str) -> FqPoly {
        FqPoly::parse(f5(), s).unwrap()
    }

    #[test]
    fn residue_symbol_examples() {
        let x = p("x");
        assert_eq!(residue_symbol(&x, &x).unwrap(), 0);
        assert_eq!(residue_symbol(&p("4"), &x).unwrap(), 1);
        assert_eq!(residue_symbol(&p("2"), &x).unwrap(), -1);
        assert_eq!(residue_symbol(&p("2"), &p("x^2-4")), Err(Error::NotIrreducible));
    }

    #[test]
    fn jacobi_errors() {
        let f7 = FieldParams::new(7).unwrap();
        let x7 = FqPoly::x(f7);
        assert_eq!(
            jacobi_symbol(&x7, &x7.add(&FqPoly::one(f7))),
            Err(Error::ModulusNotOneModFour(7))
        );
        assert_eq!(jacobi_symbol(&p("x"), &p("3")), Err(Error::ConstantPolynomial));
        assert_eq!(jacobi_symbol(&p("x"), &p("2*x+1")), Err(Error::NotMonic));
    }

    #[test]
    fn jacobi_matches_factorization_oracle() {
        let cache = IrreducibleCache::new(f5(), 3);
        let all_a: Vec<FqPoly> = enumerate_residues(f5(), 4).collect();
        for b in enumerate_monic_upto(f5(), 3).filter(|b| b.deg() >= 1) {
            let fac = cache.factor(&b).unwrap();
            for a in &all_a {
                assert_eq!(
                    jacobi_symbol(a, &b).unwrap(),
                    jacobi_by_factorization(a, &fac).unwrap(),
                    "({a:?} / {b:?})"
                );
            }
        }
    }

    #[test]
    fn raw_jacobi_agrees() {
        let polys: Vec<_> = enumerate_monic_upto(f5(), 4).collect();
        for b in polys.iter().filter(|b| b.deg() >= 1) {
            for a in polys.iter().step_by(7).chain([FqPoly::zero(f5()), p("3*x^2+2")].iter()) {
                assert_eq!(
                    jacobi_coeffs(f5(), a.coeffs(), b.coeffs()),
                    jacobi_symbol(a, b).unwrap()
                );
            }
        }
    }

    #[test]
    fn constant_squares_are_residues() {
        for b in enumerate_monic_upto(f5(), 3).filter(|b| b.deg() >= 1) {
            assert_eq!(jacobi_symbol(&p("4"), &b).unwrap(), 1);
        }
    }

    #[test]
    fn reciprocity_exhaustive() {
        for q in [5u32, 13] {
            let field = FieldParams::new(q).unwrap();
            let polys: Vec<_> = enumerate_monic_upto(field, if q == 5 { 3 } else { 2 })
                .filter(|f| f.deg() >= 1)
                .collect();
            for a in &polys {
                for b in &polys {
                    if a.gcd(b).unwrap().is_constant() {
                        assert_eq!(jacobi_symbol(a, b).unwrap(), jacobi_symbol(b, a).unwrap());
                    } else {
                        assert_eq!(jacobi_symbol(a, b).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn chi_is_completely_multiplicative() {
        let ds = [p("x^3+x+1"), p("x^2+2"), p("x^5+3*x+2"), p("x")];
        let fs: Vec<_> = enumerate_monic_upto(f5(), 3).collect();
        for d in &ds {
            assert_eq!(chi(d, &FqPoly::one(f5())).unwrap(), 1);
            for f1 in &fs {
                let c1 = chi(d, f1).unwrap();
                assert_eq!(c1 == 0, !d.gcd(f1).unwrap().is_constant());
                for f2 in fs.iter().step_by(3) {
                    assert_eq!(chi(d, &f1.mul(f2)).unwrap(), c1 * chi(d, f2).unwrap());
                }
            }
        }
    }

    #[test]
    fn hayes_examples() {
        let x = p("x");
        let e = hayes_e(&p("2"), &x).unwrap();
        let want = Complex64::from_polar(1.0, 4.0 * PI / 5.0);
        assert!((e - want).norm() < 1e-15);
        assert!((hayes_e(&p("x^2+3"), &p("x^2+1")).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(hayes_e(&x, &p("1")), Err(Error::ConstantPolynomial));
        for f in enumerate_monic(f5(), 2) {
            for a in enumerate_monic_upto(f5(), 2) {
                assert!((hayes_e(&a, &f).unwrap().norm() - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn gauss_sum_at_zero() {
        // φ(P²) for a square modulus, 0 for a prime one
        let pp = p("x+1");
        let g = gauss_sum_bruteforce(&FqPoly::zero(f5()), &pp.mul(&pp)).unwrap();
        assert!((g.value.re - 20.0).abs() < 1e-9 && g.is_real(1e-9));
        let g = gauss_sum_bruteforce(&FqPoly::zero(f5()), &p("x^2+2")).unwrap();
        assert!(g.value.norm() < 1e-9);
    }

    #[test]
    fn prime_power_cases() {
        let pp = p("x+2");
        let v1 = p("x+1");
        // i = α+1 even: −|P|^α
        let v = v1.mul(&pp);
        assert_eq!(gauss_sum_prime_power(&v, &pp, 2).unwrap(), -5.0);
        // i >= α+2: 0
        assert_eq!(gauss_sum_prime_power(&v1, &pp, 2).unwrap(), 0.0);
        assert_eq!(gauss_sum_prime_power(&v, &pp, 3).unwrap(), 0.0);
    }

    #[test]
    fn closed_form_matches_brute_force_small() {
        let cache = IrreducibleCache::new(f5(), 2);
        let vs: Vec<_> = enumerate_monic_upto(f5(), 3).collect();
        for f in enumerate_monic_upto(f5(), 3).filter(|f| f.deg() >= 1) {
            let ctx = GaussContext::new(&f).unwrap();
            let fac = cache.factor(&f).unwrap();
            for v in vs.iter().chain([FqPoly::zero(f5()), p("3*x+2")].iter()) {
                let b = ctx.gauss_sum(v).unwrap();
                let c = gauss_sum_closed(v, &f, &fac).unwrap();
                assert!(b.is_real(1e-9));
                assert!((b.value - c.value).norm() <= 1e-9 * (1.0 + c.value.norm()), "{v:?} {f:?}");
            }
        }
    }

    #[test]
    fn closed_form_rejects_bad_factorization() {
        let f = p("x^2+1");
        let bad = Factorization {
            factors: vec![(p("x+2"), 2)],
        };
        assert_eq!(
            gauss_sum_closed(&p("1"), &f, &bad),
            Err(Error::InconsistentFactorization)
        );
    }

    #[test]
    fn divisor_function_examples() {
        let pp = p("x+1");
        let one = Factorization { factors: vec![] };
        assert_eq!(divisor_fn(2, &one), 1);
        let sq = Factorization {
            factors: vec![(pp.clone(), 2)],
        };
        assert_eq!(divisor_fn(2, &sq), 3);
        let single = Factorization {
            factors: vec![(pp, 1)],
        };
        assert_eq!(divisor_fn(3, &single), 3);
    }
}
