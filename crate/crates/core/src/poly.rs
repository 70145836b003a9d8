//! Dense univariate polynomials over 𝔽_q.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldParams;

/// A polynomial over 𝔽_q, coefficients constant term first.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    field: FieldParams,
    coeffs: Vec<u32>,
}

impl FqPoly {
    /// Builds a polynomial from arbitrary residues (reduced mod q, trailing
    /// zeros stripped).
    pub fn new(field: FieldParams, coeffs: impl Into<Vec<u32>>) -> Self {
        let q = field.q();
        let mut coeffs: Vec<u32> = coeffs.into();
        for c in coeffs.iter_mut() {
            *c %= q;
        }
        let mut p = Self { field, coeffs };
        p.trim();
        p
    }

    pub fn from_i64(field: FieldParams, coeffs: &[i64]) -> Self {
        let c: Vec<u32> = coeffs.iter().map(|&v| field.reduce_i64(v)).collect();
        Self::new(field, c)
    }

    pub fn zero(field: FieldParams) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldParams) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: FieldParams, c: u32) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: FieldParams) -> Self {
        Self::monomial(field, 1, 1)
    }

    /// `c·x^n`.
    pub fn monomial(field: FieldParams, n: usize, c: u32) -> Self {
        let mut v = vec![0; n + 1];
        v[n] = c;
        Self::new(field, v)
    }

    #[inline]
    pub fn field(&self) -> FieldParams {
        self.field
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q()
    }

    #[inline]
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    #[inline]
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = 0`; convenient for norms.
    #[inline]
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            Err(Error::FieldMismatch(self.q(), other.q()))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field, other.field);
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v: Vec<u32> = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Self::new(f, v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field, other.field);
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v: Vec<u32> = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Self::new(f, v)
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Self {
            field: f,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect::<Vec<_>>())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field, other.field);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let q = self.q() as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += a as u64 * b as u64;
            }
        }
        Self::new(
            self.field,
            acc.into_iter().map(|v| (v % q) as u32).collect::<Vec<_>>(),
        )
    }

    /// Scales to leading coefficient 1. Zero stays zero.
    pub fn to_monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()))
    }

    /// Euclidean division: `self = quot·divisor + rem`, `deg rem < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_field(divisor)?;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = self.field;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero(f), self.clone()));
        }
        let inv_lead = f.inv(divisor.leading());
        let mut quot = vec![0u32; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = f.mul(rem[i], inv_lead);
            if c == 0 {
                continue;
            }
            quot[i - db] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let k = i - db + j;
                rem[k] = f.sub(rem[k], f.mul(c, b));
            }
        }
        rem.truncate(db);
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    /// Remainder modulo a nonzero polynomial.
    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        self.check_field(divisor)?;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() <= db {
            return Ok(self.clone());
        }
        let f = self.field;
        let mut rem = self.coeffs.clone();
        let inv_lead = f.inv(divisor.leading());
        for i in (db..rem.len()).rev() {
            let c = f.mul(rem[i], inv_lead);
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let k = i - db + j;
                rem[k] = f.sub(rem[k], f.mul(c, b));
            }
        }
        rem.truncate(db);
        Ok(Self::new(f, rem))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (quot, rem) = self.divmod(divisor)?;
        if !rem.is_zero() {
            return Err(Error::InconsistentFactorization);
        }
        Ok(quot)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.to_monic())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let f = self.field;
        if self.coeffs.len() <= 1 {
            return Self::zero(f);
        }
        let v: Vec<u32> = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| f.mul(c, ((i as u64 + 1) % f.q() as u64) as u32))
            .collect();
        Self::new(f, v)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u128, modulus: &Self) -> Result<Self> {
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one(self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Horner evaluation at a point of 𝔽_q.
    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Square-free test: `gcd(f, f') = 1`. A zero derivative means `f` is a
    /// p-th power, hence not square-free unless constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(true);
        }
        let d = self.derivative();
        if d.is_zero() {
            return Ok(false);
        }
        Ok(self.gcd(&d)?.is_constant())
    }

    /// Distinct-degree irreducibility test: `f` of degree `n` is irreducible
    /// iff `gcd(x^{q^k} − x, f) = 1` for every `1 <= k <= n/2`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let x = Self::x(self.field);
        let mut h = x.rem(self)?;
        for _ in 1..=n / 2 {
            h = h.pow_mod(self.q() as u128, self)?;
            if !h.sub(&x).gcd(self)?.is_constant() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Parses either the canonical comma form (`"1,2,0,1"`) or a human form
    /// such as `"x^3+2*x+1"`.
    pub fn parse(field: FieldParams, s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::Parse(s.into(), "empty input".into()));
        }
        if t.contains('x') {
            parse_human(field, t).map_err(|e| Error::Parse(s.into(), e))
        } else {
            let mut v = Vec::new();
            for part in t.split(',') {
                let c: i64 = part
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(s.into(), format!("{e}")))?;
                v.push(c);
            }
            Ok(Self::from_i64(field, &v))
        }
    }

    /// Canonical comma form; the zero polynomial renders as `"0"`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Human-readable form, highest degree first.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}*x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}*x^{i}"),
            };
            terms.push(t);
        }
        terms.join("+")
    }
}

fn parse_human(field: FieldParams, s: &str) -> std::result::Result<FqPoly, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms: Vec<(i64, String)> = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    for ch in compact.chars() {
        if ch == '+' || ch == '-' {
            if !cur.is_empty() {
                terms.push((sign, std::mem::take(&mut cur)));
                sign = 1;
            }
            if ch == '-' {
                sign = -sign;
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        terms.push((sign, cur));
    } else {
        return Err("dangling sign".into());
    }
    let mut coeffs: Vec<i64> = Vec::new();
    for (sign, term) in terms {
        let (c, e) = match term.find('x') {
            None => (term.parse::<i64>().map_err(|e| e.to_string())?, 0usize),
            Some(pos) => {
                let head = term[..pos].trim_end_matches('*');
                let c = if head.is_empty() {
                    1
                } else {
                    head.parse::<i64>().map_err(|e| e.to_string())?
                };
                let tail = &term[pos + 1..];
                let e = if tail.is_empty() {
                    1
                } else if let Some(exp) = tail.strip_prefix('^') {
                    exp.parse::<usize>().map_err(|e| e.to_string())?
                } else {
                    return Err(format!("unexpected {tail:?} after x"));
                };
                (c, e)
            }
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] += sign * c;
    }
    Ok(FqPoly::from_i64(field, &coeffs))
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqPoly[q={}]({})", self.q(), self.pretty())
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Orders by degree, then by coefficients from the top down. Within a fixed
/// degree this matches the enumeration order of
/// [`crate::enumerate::monic_from_index`].
impl Ord for FqPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for FqPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldParams {
        FieldParams::new(5).unwrap()
    }

    fn p(c: &[i64]) -> FqPoly {
        FqPoly::from_i64(f5(), c)
    }

    #[test]
    fn divmod_examples() {
        // (x²+1) / x = x rem 1
        let (qu, r) = p(&[1, 0, 1]).divmod(&p(&[0, 1])).unwrap();
        assert_eq!((qu, r), (p(&[0, 1]), p(&[1])));
        // unit divisor
        let f = p(&[3, 1, 4, 1]);
        assert_eq!(f.divmod(&p(&[1])).unwrap(), (f.clone(), FqPoly::zero(f5())));
        // (x³+2x+1) / (x²+3) = x rem (4x+1): x·(x²+3) = x³+3x, remainder −x+1 = 4x+1
        let (qu, r) = p(&[1, 2, 0, 1]).divmod(&p(&[3, 0, 1])).unwrap();
        assert_eq!(qu, p(&[0, 1]));
        assert_eq!(r, p(&[1, 4]));
        assert_eq!(
            p(&[1, 2]).divmod(&FqPoly::zero(f5())),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn gcd_examples() {
        let f = p(&[2, 0, 3]);
        assert_eq!(f.gcd(&FqPoly::zero(f5())).unwrap(), f.to_monic());
        // gcd(x²−1, x−1) = x−1 = x+4
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[4, 1]));
        assert_eq!(p(&[1, 2, 0, 1]).gcd(&p(&[3, 0, 1])).unwrap(), p(&[1]));
        assert_eq!(
            FqPoly::zero(f5()).gcd(&FqPoly::zero(f5())),
            Err(Error::GcdOfZeros)
        );
    }

    #[test]
    fn squarefree_examples() {
        assert!(!p(&[0, 0, 1]).is_squarefree().unwrap());
        // x³+x = x(x+2)(x+3) over 𝔽₅
        assert!(p(&[0, 1, 0, 1]).is_squarefree().unwrap());
        assert_eq!(FqPoly::zero(f5()).is_squarefree(), Err(Error::ZeroPolynomial));
        // x^5 + 1 = (x+1)^5 has zero derivative in characteristic 5
        let frob = p(&[1, 0, 0, 0, 0, 1]);
        assert!(frob.derivative().is_zero());
        assert!(!frob.is_squarefree().unwrap());
    }

    #[test]
    fn irreducible_examples() {
        assert!(p(&[3, 1]).is_irreducible().unwrap());
        // 2 is not a square mod 5, so x² − 2 is irreducible
        assert!(p(&[-2, 0, 1]).is_irreducible().unwrap());
        // x² − 4 = (x−2)(x+2)
        assert!(!p(&[-4, 0, 1]).is_irreducible().unwrap());
        assert_eq!(p(&[3]).is_irreducible(), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn parse_and_render() {
        let f = f5();
        let a = FqPoly::parse(f, "1,2,0,1").unwrap();
        assert_eq!(a, p(&[1, 2, 0, 1]));
        assert_eq!(FqPoly::parse(f, "x^3+2*x+1").unwrap(), a);
        assert_eq!(FqPoly::parse(f, "x^3 + 2x + 1").unwrap(), a);
        assert_eq!(FqPoly::parse(f, "x^2-1").unwrap(), p(&[4, 0, 1]));
        assert_eq!(FqPoly::parse(f, "-x+3").unwrap(), p(&[3, 4]));
        assert_eq!(FqPoly::parse(f, "0").unwrap(), FqPoly::zero(f));
        assert_eq!(a.render(), "1,2,0,1");
        assert_eq!(a.pretty(), "x^3+2*x+1");
        assert!(FqPoly::parse(f, "1,a").is_err());
        assert!(FqPoly::parse(f, "x^").is_err());
    }

    #[test]
    fn pow_mod_matches_repeated_product() {
        let m = p(&[2, 1, 0, 1]);
        let b = p(&[1, 3, 4]);
        let mut acc = FqPoly::one(f5());
        for e in 0..20u128 {
            assert_eq!(b.pow_mod(e, &m).unwrap(), acc.rem(&m).unwrap());
            acc = acc.mul(&b).rem(&m).unwrap();
        }
    }
}
