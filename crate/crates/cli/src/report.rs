use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use binomid_core::{Status, Verdict};
use serde::Serialize;

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unsupported: usize,
}

impl Summary {
    pub fn of(verdicts: &[Verdict]) -> Self {
        let mut s = Summary::default();
        for v in verdicts {
            match v.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Unsupported => s.unsupported += 1,
            }
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.fail == 0 && self.unsupported == 0
    }
}

#[derive(Serialize)]
pub struct Report<'a, C: Serialize> {
    pub version: &'static str,
    pub config: &'a C,
    pub verdicts: &'a [Verdict],
    pub summary: Summary,
}

impl<'a, C: Serialize> Report<'a, C> {
    pub fn new(config: &'a C, verdicts: &'a [Verdict]) -> Self {
        Report { version: env!("CARGO_PKG_VERSION"), config, verdicts, summary: Summary::of(verdicts) }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

const CSV_HEADER: [&str; 12] = [
    "family",
    "params",
    "engine",
    "lhs",
    "rhs",
    "status",
    "abs_err",
    "rel_err",
    "elapsed_ms",
    "standard_error",
    "z_score",
    "note",
];

pub fn write_csv(path: &Path, verdicts: &[Verdict]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    w.write_record(CSV_HEADER)?;
    let opt = |s: &Option<String>| s.clone().unwrap_or_default();
    for v in verdicts {
        w.write_record([
            v.family.clone(),
            v.params.to_string(),
            v.engine.to_string(),
            v.lhs.clone(),
            v.rhs.clone(),
            v.status.to_string(),
            opt(&v.abs_err),
            opt(&v.rel_err),
            v.elapsed_ms.to_string(),
            opt(&v.standard_error),
            opt(&v.z_score),
            opt(&v.note),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut f = std::fs::File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    f.write_all(text.as_bytes())?;
    Ok(())
}
