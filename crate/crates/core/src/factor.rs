//! Factorization by trial division, and a sieve over all monic polynomials of
//! bounded degree for fast multiplicative functions.

use crate::enumerate::{count_monic, enumerate_monic, monic_from_index, monic_index};
use crate::error::{Error, Result};
use crate::field::FieldParams;
use crate::poly::FqPoly;

/// A factorization into monic irreducibles with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(FqPoly, u32)>,
}

impl Factorization {
    /// Product of the factors (the empty product is `1`).
    pub fn product(&self, field: FieldParams) -> FqPoly {
        let mut acc = FqPoly::one(field);
        for (p, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(p);
            }
        }
        acc
    }

    /// Errors unless the factors are irreducible and multiply back to `f`.
    pub fn check(&self, f: &FqPoly) -> Result<()> {
        for (p, e) in &self.factors {
            if *e == 0 || !p.is_monic() || !p.is_irreducible()? {
                return Err(Error::InconsistentFactorization);
            }
        }
        if self.product(f.field()) != f.to_monic() {
            return Err(Error::InconsistentFactorization);
        }
        Ok(())
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Monic irreducibles grouped by degree, used for trial division.
#[derive(Debug, Clone)]
pub struct IrreducibleCache {
    field: FieldParams,
    by_degree: Vec<Vec<FqPoly>>,
}

impl IrreducibleCache {
    pub fn new(field: FieldParams, max_degree: usize) -> Self {
        let mut by_degree = vec![Vec::new()];
        for d in 1..=max_degree {
            by_degree.push(
                enumerate_monic(field, d)
                    .filter(|f| f.is_irreducible().unwrap_or(false))
                    .collect(),
            );
        }
        Self { field, by_degree }
    }

    pub fn field(&self) -> FieldParams {
        self.field
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn of_degree(&self, d: usize) -> &[FqPoly] {
        self.by_degree.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = &FqPoly> {
        self.by_degree.iter().flatten()
    }

    /// Factors a monic polynomial by trial division. The cofactor left after
    /// dividing out all primes of degree `<= deg/2` is irreducible.
    pub fn factor(&self, f: &FqPoly) -> Result<Factorization> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let mut rest = f.clone();
        let mut factors = Vec::new();
        let mut d = 1;
        while 2 * d <= rest.deg() {
            if d > self.max_degree() {
                return Err(Error::TableTooSmall {
                    needed: d,
                    max: self.max_degree(),
                });
            }
            for p in &self.by_degree[d] {
                let mut e = 0;
                loop {
                    let (quot, rem) = rest.divmod(p)?;
                    if !rem.is_zero() {
                        break;
                    }
                    rest = quot;
                    e += 1;
                }
                if e > 0 {
                    factors.push((p.clone(), e));
                }
            }
            d += 1;
        }
        if rest.deg() > 0 {
            factors.push((rest, 1));
        }
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Factorization { factors })
    }
}

/// Sieve over every monic polynomial of degree `<= n`.
///
/// Global index: `offset(deg f) + monic_index(f)` with `offset(d) = Σ_{j<d} q^j`,
/// so `1` has index 0. Each entry stores its smallest prime factor `P`
/// (ordered by degree then index), the exponent `e` of `P`, and the index of
/// the cofactor `f / P^e`.
#[derive(Debug, Clone)]
pub struct MonicTable {
    field: FieldParams,
    max_degree: usize,
    offsets: Vec<usize>,
    spf: Vec<u32>,
    exp: Vec<u8>,
    rest: Vec<u32>,
    primes: Vec<u32>,
}

const UNSET: u32 = u32::MAX;

impl MonicTable {
    pub fn new(field: FieldParams, max_degree: usize) -> Self {
        let q = field.q() as usize;
        let mut offsets = Vec::with_capacity(max_degree + 2);
        let mut acc = 0usize;
        for d in 0..=max_degree + 1 {
            offsets.push(acc);
            acc += count_monic(q as u32, d) as usize;
        }
        let total = offsets[max_degree + 1];
        assert!(total < UNSET as usize, "monic table too large");
        let mut spf = vec![UNSET; total];
        let mut exp = vec![0u8; total];
        let mut rest = vec![0u32; total];
        let mut primes = Vec::new();
        spf[0] = 0;

        let mut pd = [0u32; 64];
        let mut md = [0u32; 64];
        let mut prod = [0u64; 128];
        for d in 1..=max_degree {
            for local in 0..count_monic(q as u32, d) as usize {
                let gi = offsets[d] + local;
                if spf[gi] != UNSET {
                    continue;
                }
                // a new irreducible
                spf[gi] = gi as u32;
                exp[gi] = 1;
                rest[gi] = 0;
                primes.push(gi as u32);
                digits(local, q, d, &mut pd);
                pd[d] = 1;
                for e in 1..=max_degree - d {
                    for mloc in 0..count_monic(q as u32, e) as usize {
                        let mi = offsets[e] + mloc;
                        digits(mloc, q, e, &mut md);
                        md[e] = 1;
                        prod[..=d + e].fill(0);
                        for i in 0..=d {
                            if pd[i] == 0 {
                                continue;
                            }
                            for j in 0..=e {
                                prod[i + j] += pd[i] as u64 * md[j] as u64;
                            }
                        }
                        let mut idx = 0usize;
                        for k in (0..d + e).rev() {
                            idx = idx * q + (prod[k] % q as u64) as usize;
                        }
                        let pi = offsets[d + e] + idx;
                        if spf[pi] != UNSET {
                            continue;
                        }
                        spf[pi] = gi as u32;
                        if spf[mi] == gi as u32 {
                            exp[pi] = exp[mi] + 1;
                            rest[pi] = rest[mi];
                        } else {
                            exp[pi] = 1;
                            rest[pi] = mi as u32;
                        }
                    }
                }
            }
        }
        Self {
            field,
            max_degree,
            offsets,
            spf,
            exp,
            rest,
            primes,
        }
    }

    pub fn field(&self) -> FieldParams {
        self.field
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Number of entries (all monic polynomials of degree `<= max_degree`).
    pub fn len(&self) -> usize {
        self.spf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spf.is_empty()
    }

    pub fn offset(&self, d: usize) -> usize {
        self.offsets[d]
    }

    /// Degree of the polynomial at a global index.
    pub fn degree_of(&self, gi: usize) -> usize {
        self.offsets.partition_point(|&o| o <= gi) - 1
    }

    pub fn index(&self, f: &FqPoly) -> Result<usize> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        if f.deg() > self.max_degree {
            return Err(Error::TableTooSmall {
                needed: f.deg(),
                max: self.max_degree,
            });
        }
        Ok(self.offsets[f.deg()] + monic_index(f) as usize)
    }

    pub fn poly(&self, gi: usize) -> FqPoly {
        let d = self.degree_of(gi);
        monic_from_index(self.field, d, (gi - self.offsets[d]) as u64)
    }

    /// Writes the coefficients (constant term first, leading 1 included) of
    /// the entry `gi` into `out` and returns their count.
    #[inline]
    pub fn coeffs_into(&self, gi: usize, out: &mut [u32]) -> usize {
        let d = self.degree_of(gi);
        digits(gi - self.offsets[d], self.field.q() as usize, d, out);
        out[d] = 1;
        d + 1
    }

    /// Global indices of all irreducibles, in increasing order.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_prime(&self, gi: usize) -> bool {
        gi != 0 && self.spf[gi] as usize == gi
    }

    /// Smallest prime factor, its exponent and the cofactor index.
    #[inline]
    pub fn split(&self, gi: usize) -> (usize, u8, usize) {
        (self.spf[gi] as usize, self.exp[gi], self.rest[gi] as usize)
    }

    /// `(prime index, exponent)` pairs of the factorization.
    pub fn factor_indices(&self, mut gi: usize) -> Vec<(usize, u8)> {
        let mut v = Vec::new();
        while gi != 0 {
            let (p, e, r) = self.split(gi);
            v.push((p, e));
            gi = r;
        }
        v
    }

    pub fn factor(&self, f: &FqPoly) -> Result<Factorization> {
        let gi = self.index(f)?;
        Ok(Factorization {
            factors: self
                .factor_indices(gi)
                .into_iter()
                .map(|(p, e)| (self.poly(p), e as u32))
                .collect(),
        })
    }

    /// `d_k` of every entry, in index order.
    pub fn divisor_counts(&self, k: u32) -> Vec<u64> {
        let mut out = vec![1u64; self.len()];
        for gi in 1..self.len() {
            let (_, e, r) = self.split(gi);
            out[gi] = binomial(e as u64 + k as u64 - 1, k as u64 - 1) * out[r];
        }
        out
    }

    /// Extends prime values of a completely multiplicative function to every
    /// entry; `prime_value(gi)` is called once per irreducible.
    pub fn completely_multiplicative<F: FnMut(usize) -> i8>(&self, mut prime_value: F) -> Vec<i8> {
        let mut out = vec![0i8; self.len()];
        out[0] = 1;
        for gi in 1..self.len() {
            let (p, e, r) = self.split(gi);
            if p == gi {
                out[gi] = prime_value(gi);
            } else {
                let vp = out[p];
                let pe = if e % 2 == 0 { vp * vp } else { vp };
                out[gi] = pe * out[r];
            }
        }
        out
    }
}

fn digits(mut idx: usize, q: usize, d: usize, out: &mut [u32]) {
    for c in out.iter_mut().take(d) {
        *c = (idx % q) as u32;
        idx /= q;
    }
}

/// Binomial coefficient for small arguments.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
