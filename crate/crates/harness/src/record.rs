//! The persisted form of one moment run.

use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use ffmoments_core::moments::{Method, MomentResult};
use ffmoments_core::quad::QuadValue;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// `(a + b√q)/q^e` with the integers as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub a: String,
    pub b: String,
    pub e: u32,
}

impl ExactValue {
    pub fn from_quad(v: &QuadValue) -> Self {
        Self { a: v.a().to_string(), b: v.b().to_string(), e: v.e() }
    }

    pub fn to_quad(&self, q: u32) -> Result<QuadValue> {
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|e| Error::BadRecord { path: String::new(), why: format!("{s:?}: {e}") })
        };
        Ok(QuadValue::new(q, parse(&self.a)?, parse(&self.b)?, self.e))
    }
}

/// Everything that legitimately differs between two runs of the same
/// experiment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Seconds since the Unix epoch.
    pub created_unix: u64,
    pub code_version: String,
    pub partitions: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub schema_version: u32,
    pub q: u32,
    pub g: usize,
    pub k: u32,
    pub method: String,
    pub count: u64,
    pub exact: ExactValue,
    pub float: f64,
    pub prediction: f64,
    pub deviation: f64,
    pub runtime_ms: u64,
    pub meta: Provenance,
}

/// `|moment − prediction| / q^{2g+1}`
pub fn deviation(q: u32, g: usize, moment: f64, prediction: f64) -> f64 {
    (moment - prediction).abs() / (q as f64).powi(2 * g as i32 + 1)
}

impl ExperimentRecord {
    pub fn new(m: &MomentResult, prediction: f64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            q: m.q,
            g: m.g,
            k: m.k,
            method: m.method.as_str().to_string(),
            count: m.ensemble_count,
            exact: ExactValue::from_quad(&m.value_exact),
            float: m.value_float,
            prediction,
            deviation: deviation(m.q, m.g, m.value_float, prediction),
            runtime_ms: m.runtime_ms,
            meta: Provenance {
                created_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
                code_version: env!("CARGO_PKG_VERSION").to_string(),
                partitions: m.partition_count,
            },
        }
    }

    pub fn method(&self) -> Result<Method> {
        Ok(self.method.parse()?)
    }

    pub fn exact_value(&self) -> Result<QuadValue> {
        self.exact.to_quad(self.q)
    }
}
