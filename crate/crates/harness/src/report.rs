//! Comparison tables over a `(q, g, k)` grid.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::record::ExperimentRecord;

pub const COLUMNS: [&str; 10] = ["q", "g", "k", "method", "count", "moment_float", "prediction", "deviation", "ratio", "ratio_leading"];

/// `ratio = moment/prediction`. For `k = 3`, `ratio_leading` is the moment
/// over the leading-term-only prediction `q^{2g+1}/ζ(2)·(A₃/2880)·(2g+1)⁶`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub q: u32,
    pub g: usize,
    pub k: u32,
    pub method: String,
    pub count: u64,
    pub moment_float: f64,
    pub prediction: f64,
    pub deviation: f64,
    pub ratio: f64,
    pub ratio_leading: Option<f64>,
}

impl Row {
    pub fn new(r: &ExperimentRecord, leading_only: Option<f64>) -> Self {
        Self {
            q: r.q,
            g: r.g,
            k: r.k,
            method: r.method.clone(),
            count: r.count,
            moment_float: r.float,
            prediction: r.prediction,
            deviation: r.deviation,
            ratio: r.float / r.prediction,
            ratio_leading: leading_only.map(|l| r.float / l),
        }
    }
}

/// Header always, then one line per row.
pub fn write_csv(rows: &[Row], w: impl Write) -> Result<()> {
    let mut wr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    wr.write_record(COLUMNS)?;
    for r in rows {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}

pub fn write_json(rows: &[Row], mut w: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, rows)?;
    writeln!(w)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), COLUMNS.join(",") + "\n");
    }

    #[test]
    fn rows_follow_the_header() {
        let row = Row {
            q: 5,
            g: 1,
            k: 3,
            method: "pointcount".into(),
            count: 100,
            moment_float: 1376.0,
            prediction: 1200.0,
            deviation: 1.408,
            ratio: 1376.0 / 1200.0,
            ratio_leading: None,
        };
        let mut buf = Vec::new();
        write_csv(&[row], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let line = text.lines().nth(1).unwrap();
        assert_eq!(line.split(',').count(), COLUMNS.len());
        assert!(line.starts_with("5,1,3,pointcount,100,1376.0,1200.0,"));
        assert!(line.ends_with(','));
    }
}
