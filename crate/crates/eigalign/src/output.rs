//! CSV and JSON encodings of sweep results.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use crate::config::Format;
use crate::error::Result;
use crate::sweep::{SweepResult, SweepRow};

/// Column names, in order.
pub const CSV_HEADER: [&str; 9] = [
    "n",
    "raw_noise",
    "scaled_noise",
    "replicates",
    "estimate",
    "ci_low",
    "ci_high",
    "mean_runtime_ms",
    "seed",
];

// 17 significant digits: parsing gives back the same double.
fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes the rows as CSV with the fixed header.
pub fn write_csv<W: Write>(result: &SweepResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &result.rows {
        w.write_record([
            r.n.to_string(),
            float(r.raw_noise),
            float(r.scaled_noise),
            r.replicates.to_string(),
            float(r.estimate),
            float(r.ci_low),
            float(r.ci_high),
            float(r.mean_runtime_ms),
            r.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Parses CSV written by [`write_csv`].
pub fn read_csv<R: Read>(input: R) -> Result<SweepResult> {
    let mut rd = csv::Reader::from_reader(input);
    let rows = rd
        .deserialize::<SweepRow>()
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(SweepResult { rows })
}

/// Writes the rows as a pretty-printed JSON array.
pub fn write_json<W: Write>(result: &SweepResult, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, result)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

/// Writes `result` in `format` to `path`, or to standard output.
pub fn emit(result: &SweepResult, format: Format, path: Option<&Path>) -> Result<()> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Csv => write_csv(result, sink),
        Format::Json => write_json(result, sink),
    }
}

/// CSV rendering as a string.
pub fn to_csv_string(result: &SweepResult) -> String {
    let mut buf = Vec::new();
    write_csv(result, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("CSV is ASCII")
}
