//! Cached moment runs with their predictions attached.

use ffmoments_core::moments::{moments, Method, MomentOptions};

use crate::cache::Cache;
use crate::error::Result;
use crate::predict::Predictor;
use crate::record::ExperimentRecord;

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub method: Method,
    pub moment: MomentOptions,
    /// Refuse to compute; only serve cached records.
    pub cached_only: bool,
}

pub enum Outcome {
    Cached(ExperimentRecord),
    Computed(ExperimentRecord),
    Missing,
}

impl Outcome {
    pub fn record(&self) -> Option<&ExperimentRecord> {
        match self {
            Outcome::Cached(r) | Outcome::Computed(r) => Some(r),
            Outcome::Missing => None,
        }
    }
}

/// Serves `(q, g, k)` for every `k` in `ks` from the cache, computing the
/// missing ones in a single pass over the ensemble.
pub fn obtain(cache: &Cache, p: &mut Predictor, g: usize, ks: &[u32], opts: &RunOptions) -> Result<Vec<Outcome>> {
    let q = p.q();
    let mut out = Vec::with_capacity(ks.len());
    let mut todo = Vec::new();
    for &k in ks {
        match cache.load(q, g, k, opts.method)? {
            Some(r) => out.push(Outcome::Cached(r)),
            None => {
                todo.push(k);
                out.push(Outcome::Missing);
            }
        }
    }
    if todo.is_empty() || opts.cached_only {
        return Ok(out);
    }
    let results = moments(q, g, &todo, opts.method, &opts.moment)?;
    for m in results {
        let rec = ExperimentRecord::new(&m, p.prediction(g, m.k)?);
        cache.store(&rec)?;
        let slot = ks.iter().position(|&k| k == m.k).expect("requested k");
        out[slot] = Outcome::Computed(rec);
    }
    Ok(out)
}
