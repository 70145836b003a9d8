//! Incremental point counting over every monic `D` of a fixed degree.
//!
//! `D` walks the monic polynomials in index order. When the odometer bumps
//! digit `j` (lower digits wrap from `q−1` to `0`), every coefficient
//! `c_0..c_j` changes by `+1 mod q`, so `D(x)` changes by `Σ_{i≤j} x^i`. For
//! each `r <= g` the values `D(x)`, `x ∈ 𝔽_{q^r}`, are kept as packed lanes of
//! `w` bits and updated with one SWAR add-mod-q per point.

use std::ops::Range;

use crate::enumerate::{count_monic, monic_from_index, odometer_step};
use crate::error::{Error, Result};
use crate::ext::ExtField;
use crate::field::FieldParams;

/// Packed tables larger than `2^DIRECT_BITS` are replaced by a base-q lookup.
const DIRECT_BITS: u32 = 24;

#[derive(Debug, Clone)]
struct Layer {
    r: usize,
    size: usize,
    w: u32,
    q: u64,
    m_lanes: u64,
    high: u64,
    direct: bool,
    table: Vec<i8>,
    /// `pw[j * size + x] = Σ_{i≤j} x^i`, packed.
    pw: Vec<u64>,
    ext: ExtField,
}

impl Layer {
    fn new(field: FieldParams, r: usize, n: usize, direct_bits: u32) -> Result<Self> {
        let q = field.q() as u64;
        let mut w = 1u32;
        while (1u64 << (w - 1)) < 2 * q - 1 {
            w += 1;
        }
        if w as usize * r > 64 {
            return Err(Error::TableTooSmall {
                needed: w as usize * r,
                max: 64,
            });
        }
        let mut m_lanes = 0u64;
        let mut high = 0u64;
        for i in 0..r as u32 {
            m_lanes |= ((1u64 << (w - 1)) - q) << (i * w);
            high |= 1u64 << (i * w + w - 1);
        }
        let ext = ExtField::new(field, r)?;
        let size = ext.order() as usize;
        let chars = ext.character_table();
        let direct = w * r as u32 <= direct_bits;
        let table = if direct {
            let mut t = vec![0i8; 1usize << (w * r as u32)];
            for (i, &c) in chars.iter().enumerate() {
                t[pack(&ext.element(i as u64), w) as usize] = c;
            }
            t
        } else {
            chars
        };
        let mut pw = vec![0u64; n * size];
        for x in 0..size {
            let xe = ext.element(x as u64);
            let mut p = ext.one();
            let mut acc = ext.zero();
            for j in 0..n {
                acc = ext.add(&acc, &p);
                pw[j * size + x] = pack(&acc, w);
                p = ext.mul(&p, &xe);
            }
        }
        Ok(Self {
            r,
            size,
            w,
            q,
            m_lanes,
            high,
            direct,
            table,
            pw,
            ext,
        })
    }

    #[inline(always)]
    fn add_mod(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        let hb = (s + self.m_lanes) & self.high;
        s - (hb >> (self.w - 1)) * self.q
    }

    #[inline(always)]
    fn chi(&self, v: u64) -> i8 {
        if self.direct {
            self.table[v as usize]
        } else {
            let mask = (1u64 << self.w) - 1;
            let q = self.q;
            let mut code = 0u64;
            for i in (0..self.r).rev() {
                code = code * q + ((v >> (i as u32 * self.w)) & mask);
            }
            self.table[code as usize]
        }
    }
}

fn pack(x: &[u32], w: u32) -> u64 {
    x.iter()
        .enumerate()
        .fold(0u64, |acc, (i, &c)| acc | (c as u64) << (i as u32 * w))
}

/// Computes `a_r = Σ_{x∈𝔽_{q^r}} χ(D(x))`, `r = 1..=g`, for every monic `D`
/// of degree `n` in an index range.
#[derive(Debug, Clone)]
pub struct TraceEngine {
    field: FieldParams,
    n: usize,
    layers: Vec<Layer>,
}

impl TraceEngine {
    pub fn new(field: FieldParams, n: usize, g: usize) -> Result<Self> {
        Self::with_direct_bits(field, n, g, DIRECT_BITS)
    }

    fn with_direct_bits(field: FieldParams, n: usize, g: usize, direct_bits: u32) -> Result<Self> {
        let field = FieldParams::for_characters(field.q())?;
        if n == 0 {
            return Err(Error::NonPositiveDegree);
        }
        let layers = (1..=g)
            .map(|r| Layer::new(field, r, n, direct_bits))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { field, n, layers })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn genus(&self) -> usize {
        self.layers.len()
    }

    /// Calls `visit(coeffs, traces)` for each `D` in `range` (clamped to
    /// `0..q^n`); `coeffs` are `c_0..c_{n−1}` without the leading 1.
    pub fn scan<F: FnMut(&[u32], &[i64])>(&self, range: Range<u64>, mut visit: F) {
        let total = count_monic(self.field.q(), self.n);
        let end = range.end.min(total);
        let mut idx = range.start.min(end);
        if idx >= end {
            return;
        }
        let d = monic_from_index(self.field, self.n, idx);
        let mut digits = d.coeffs()[..self.n].to_vec();
        let mut vals: Vec<Vec<u64>> = self
            .layers
            .iter()
            .map(|l| {
                (0..l.size)
                    .map(|x| pack(&l.ext.eval(&d, &l.ext.element(x as u64)), l.w))
                    .collect()
            })
            .collect();
        let mut traces: Vec<i64> = self
            .layers
            .iter()
            .zip(&vals)
            .map(|(l, v)| v.iter().map(|&y| l.chi(y) as i64).sum())
            .collect();
        let q = self.field.q();
        loop {
            visit(&digits, &traces);
            idx += 1;
            if idx >= end {
                break;
            }
            let j = odometer_step(&mut digits, q).expect("index below q^n");
            for ((l, v), t) in self.layers.iter().zip(vals.iter_mut()).zip(traces.iter_mut()) {
                let pw = &l.pw[j * l.size..(j + 1) * l.size];
                let mut s: i32 = 0;
                for (y, &p) in v.iter_mut().zip(pw) {
                    *y = l.add_mod(*y, p);
                    s += l.chi(*y) as i32;
                }
                *t = s as i64;
            }
        }
    }
}

/// Square-free test on a monic coefficient slice (constant term first,
/// leading 1 included), without allocation.
pub fn is_squarefree_coeffs(field: FieldParams, f: &[u32]) -> bool {
    const N: usize = 64;
    let n = f.len() - 1;
    if n == 0 {
        return true;
    }
    let mut a = [0u32; N];
    let mut b = [0u32; N];
    a[..=n].copy_from_slice(f);
    let mut la = n + 1;
    let mut lb = 0;
    for i in 1..=n {
        b[i - 1] = field.mul(f[i], (i as u64 % field.q() as u64) as u32);
        if b[i - 1] != 0 {
            lb = i;
        }
    }
    if lb == 0 {
        return false;
    }
    let (mut pa, mut pb) = (&mut a, &mut b);
    // Euclid; loop invariant: pb nonzero with exact length lb
    loop {
        let inv = field.inv(pb[lb - 1]);
        while la >= lb {
            let c = field.mul(pa[la - 1], inv);
            if c != 0 {
                let off = la - lb;
                for j in 0..lb {
                    pa[off + j] = field.sub(pa[off + j], field.mul(c, pb[j]));
                }
            }
            la -= 1;
            while la > 0 && pa[la - 1] == 0 {
                la -= 1;
            }
        }
        if la == 0 {
            return lb == 1;
        }
        std::mem::swap(&mut pa, &mut pb);
        std::mem::swap(&mut la, &mut lb);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_monic;
    use crate::lfunc::PointCountContext;
    use crate::poly::FqPoly;

    #[test]
    fn squarefree_fast_path() {
        for q in [5u32, 13] {
            let field = FieldParams::new(q).unwrap();
            for n in 0..=4 {
                for f in enumerate_monic(field, n) {
                    assert_eq!(is_squarefree_coeffs(field, f.coeffs()), f.is_squarefree().unwrap());
                }
            }
        }
    }

    #[test]
    fn incremental_traces_match_direct_evaluation() {
        let field = FieldParams::new(5).unwrap();
        let engine = TraceEngine::new(field, 5, 2).unwrap();
        let direct = PointCountContext::new(field, 2).unwrap();
        let mut seen = 0;
        engine.scan(1000..1700, |c, a| {
            let mut v = c.to_vec();
            v.push(1);
            let d = FqPoly::new(field, v);
            assert_eq!(a, &direct.traces(&d)[..], "D = {d}");
            seen += 1;
        });
        assert_eq!(seen, 700);
    }

    #[test]
    fn base_q_lookup_path() {
        let field = FieldParams::new(13).unwrap();
        let packed = TraceEngine::new(field, 5, 2).unwrap();
        let coded = TraceEngine::with_direct_bits(field, 5, 2, 0).unwrap();
        assert!(packed.layers.iter().all(|l| l.direct));
        assert!(coded.layers.iter().all(|l| !l.direct));
        let mut a = Vec::new();
        let mut b = Vec::new();
        packed.scan(90_000..91_000, |_, t| a.push(t.to_vec()));
        coded.scan(90_000..91_000, |_, t| b.push(t.to_vec()));
        assert_eq!(a, b);
    }
}
