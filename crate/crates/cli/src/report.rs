use std::io::{self, Write};

use regulab_core::report::CheckRecord;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub records: Vec<CheckRecord>,
    pub pass: bool,
    pub seconds: f64,
    pub version: String,
}

impl Report {
    pub fn new(command: String, params: Map<String, Value>, records: Vec<CheckRecord>, seconds: f64) -> Self {
        let pass = records.iter().all(|r| r.pass);
        Report {
            command,
            params,
            records,
            pass,
            seconds,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.records.iter().find(|r| !r.pass)
    }

    pub fn write_json(&self, out: &mut impl Write) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)
    }

    pub fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.records {
            w.serialize(r)?;
        }
        w.flush()
    }

    pub fn write_table(&self, out: &mut impl Write) -> io::Result<()> {
        let width = self.records.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
        writeln!(
            out,
            "{:<width$}  {:>22}  {:>22}  {:>10}  {:>8}  result",
            "name", "lhs", "rhs", "residual", "tol"
        )?;
        let first_bad = self.first_failure().map(|r| r as *const CheckRecord);
        for r in &self.records {
            let mark = match (r.pass, Some(r as *const CheckRecord) == first_bad) {
                (true, _) => "ok",
                (false, true) => "FAIL <- first failure",
                (false, false) => "FAIL",
            };
            writeln!(
                out,
                "{:<width$}  {:>22.15e}  {:>22.15e}  {:>10.2e}  {:>8.1e}  {mark}",
                r.name, r.lhs, r.rhs, r.residual, r.tol
            )?;
        }
        let n_bad = self.records.iter().filter(|r| !r.pass).count();
        writeln!(
            out,
            "{} records, {} failed, {:.3}s",
            self.records.len(),
            n_bad,
            self.seconds
        )
    }
}
