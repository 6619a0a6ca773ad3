use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

/// Writes artifacts into one directory, each embedding the run configuration.
pub struct OutDir {
    dir: PathBuf,
    config: Value,
}

impl OutDir {
    pub fn create(dir: &Path, config: &impl Serialize) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            config: serde_json::to_value(config)?,
        })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    /// `{"config": ..., <fields of body>}` as pretty JSON.
    pub fn json(&self, name: &str, body: &impl Serialize) -> Result<PathBuf> {
        let mut doc = serde_json::Map::new();
        doc.insert("config".into(), self.config.clone());
        match serde_json::to_value(body)? {
            Value::Object(fields) => doc.extend(fields),
            other => {
                doc.insert("result".into(), other);
            }
        }
        let mut bytes = serde_json::to_vec_pretty(&Value::Object(doc))?;
        bytes.push(b'\n');
        self.write(name, &bytes)
    }

    /// CSV with a leading `# config: {...}` comment line.
    pub fn csv<R: Serialize>(&self, name: &str, rows: impl IntoIterator<Item = R>) -> Result<PathBuf> {
        let mut bytes = format!("# config: {}\n", serde_json::to_string(&self.config)?).into_bytes();
        {
            let mut w = csv::Writer::from_writer(&mut bytes);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        self.write(name, &bytes)
    }

    /// CSV from raw string records, the first being the header.
    pub fn csv_records(&self, name: &str, records: Vec<Vec<String>>) -> Result<PathBuf> {
        let mut bytes = format!("# config: {}\n", serde_json::to_string(&self.config)?).into_bytes();
        {
            let mut w = csv::Writer::from_writer(&mut bytes);
            for r in records {
                w.write_record(r)?;
            }
            w.flush()?;
        }
        self.write(name, &bytes)
    }

    /// Atomic replace: the bytes go to a temporary file in the same
    /// directory, which is then renamed over `name`.
    pub fn write(&self, name: &str, bytes: &[u8]) -> Result<PathBuf> {
        let path = self.path(name);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)
            .with_context(|| format!("creating temporary file in {}", self.dir.display()))?;
        tmp.write_all(bytes)?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path)
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }
}
