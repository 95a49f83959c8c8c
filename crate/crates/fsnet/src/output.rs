//! Self-describing CSV and JSON artifacts.
//!
//! Every CSV starts with a `# config=<json>` line followed by the header row.
//! Every JSON document has the resolved config under its first key.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

pub struct Artifacts {
    dir: PathBuf,
    config: serde_json::Value,
    written: Vec<PathBuf>,
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    config: &'a serde_json::Value,
    #[serde(flatten)]
    body: &'a T,
}

impl Artifacts {
    pub fn create(dir: &Path, config: &impl Serialize) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("cannot create output directory {}", dir.display()))?;
        Ok(Self { dir: dir.to_owned(), config: serde_json::to_value(config)?, written: Vec::new() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    fn open(&mut self, name: &str) -> Result<BufWriter<File>> {
        let path = self.dir.join(name);
        let file = File::create(&path).with_context(|| format!("cannot write {}", path.display()))?;
        self.written.push(path);
        Ok(BufWriter::new(file))
    }

    /// Writes `rows` under `header`. Rows serialize as plain records; `None`
    /// becomes an empty field.
    pub fn csv<R: Serialize>(&mut self, name: &str, header: &[&str], rows: impl IntoIterator<Item = R>) -> Result<()> {
        let mut out = self.open(name)?;
        writeln!(out, "# config={}", serde_json::to_string(&self.config)?)?;
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        w.write_record(header)?;
        for row in rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn json<T: Serialize>(&mut self, name: &str, body: &T) -> Result<()> {
        let mut out = self.open(name)?;
        serde_json::to_writer_pretty(&mut out, &Document { config: &self.config, body })?;
        writeln!(out)?;
        out.flush()?;
        Ok(())
    }
}
