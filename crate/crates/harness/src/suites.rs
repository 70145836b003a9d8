//! The verification boxes run by `verify`.

use clap::ValueEnum;

use ffmoments_asymptotics::funceq::{functional_eq_suite, DEFAULT_POINTS};
use ffmoments_asymptotics::genid::genid_suite;
use ffmoments_core::verify::{self, Sample, SuiteReport};
use ffmoments_core::FieldParams;

use crate::error::Result;
use crate::predict::{self, euler_suite};

/// Fixed seed for the sampled `D`, so reports are reproducible.
pub const SAMPLE_SEED: u64 = 0x5eed_f1e1d;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Gauss,
    Poisson,
    Fe,
    Firstpoint,
    Artin,
    Rh,
    Genid,
    Funceq,
    Euler,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Gauss,
        Suite::Poisson,
        Suite::Fe,
        Suite::Firstpoint,
        Suite::Artin,
        Suite::Rh,
        Suite::Genid,
        Suite::Funceq,
        Suite::Euler,
    ];
}

pub fn run(suite: Suite, q: u32, max_degree: Option<usize>) -> Result<SuiteReport> {
    let field = FieldParams::for_characters(q)?;
    Ok(match suite {
        Suite::Gauss => verify::gauss_suite(field, 4, 4, 1e-6)?,
        Suite::Poisson => verify::poisson_suite(field, 4, 4, 1e-6)?,
        Suite::Fe => verify::fe_suite(field, &[3, 5], &[2, 3])?,
        Suite::Firstpoint => verify::firstpoint_suite(field, 3, &[1, 2])?,
        Suite::Artin => verify::artin_suite(
            field,
            &[Sample::All(3), Sample::All(5), Sample::Random { n: 7, count: 1000, seed: SAMPLE_SEED }],
        )?,
        Suite::Rh => verify::rh_suite(field, &[Sample::Random { n: 7, count: 200, seed: SAMPLE_SEED }], 1e-8)?,
        Suite::Genid => genid_suite(field, 3, 4, 0.5, 1e-6)?,
        Suite::Funceq => functional_eq_suite(&predict::euler(q, max_degree)?, &DEFAULT_POINTS, 1e-9)?,
        Suite::Euler => euler_suite(q, max_degree)?,
    })
}
