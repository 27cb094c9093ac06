//! Self-describing output: every JSON document and CSV file starts with
//! the tool version, the design parameters and the coupling tier.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use designwalk::design::IncidenceStructure;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize)]
pub struct DesignMeta {
    pub source: String,
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub t: u32,
    pub lambda: u64,
}

impl DesignMeta {
    pub fn new(source: &str, inc: &IncidenceStructure) -> Self {
        let p = inc.params();
        DesignMeta {
            source: source.to_string(),
            v: p.v,
            b: inc.num_blocks() as u64,
            r: p.r,
            k: p.k,
            t: p.t,
            lambda: p.lambda,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub design: Option<DesignMeta>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_tier: Option<String>,
}

impl Meta {
    pub fn new(command: &str) -> Self {
        Meta {
            tool: "designwalk".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            design: None,
            gamma_tier: None,
        }
    }

    pub fn with_design(mut self, source: &str, inc: &IncidenceStructure) -> Self {
        self.design = Some(DesignMeta::new(source, inc));
        self
    }

    pub fn with_gamma_tier(mut self, tier: &str) -> Self {
        self.gamma_tier = Some(tier.into());
        self
    }

    /// `# key: value` lines for the head of a CSV file.
    pub fn csv_comment(&self) -> String {
        let mut out = format!("# tool: {} {}\n# command: {}\n", self.tool, self.version, self.command);
        if let Some(d) = &self.design {
            out.push_str(&format!(
                "# design: {} (v={} b={} r={} k={} t={} lambda={})\n",
                d.source, d.v, d.b, d.r, d.k, d.t, d.lambda
            ));
        }
        if let Some(g) = &self.gamma_tier {
            out.push_str(&format!("# gamma tier: {g}\n"));
        }
        out
    }
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    meta: &'a Meta,
    result: &'a T,
}

/// Stdout, or the `--out` file.
pub fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_json<T: Serialize>(out: Option<&Path>, meta: &Meta, result: &T) -> Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, &Document { meta, result })?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Writes the metadata comment block followed by serialized rows.
pub fn write_csv<T: Serialize>(out: Option<&Path>, meta: &Meta, header: &[&str], rows: &[T]) -> Result<()> {
    let mut w = sink(out)?;
    w.write_all(meta.csv_comment().as_bytes())?;
    let mut csv = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    csv.write_record(header)?;
    for row in rows {
        csv.serialize(row)?;
    }
    csv.flush()?;
    Ok(())
}
