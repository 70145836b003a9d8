//! On-disk records under `{root}/q{q}/g{g}/k{k}-{method}.json`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use ffmoments_core::moments::Method;

use crate::error::{Error, Result};
use crate::record::{ExperimentRecord, SCHEMA_VERSION};

pub const CACHE_ENV: &str = "FFMOMENTS_CACHE";

#[derive(Debug, Clone)]
pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    /// `--cache-dir`, else `$FFMOMENTS_CACHE`, else `./cache`.
    pub fn resolve(flag: Option<&Path>) -> Self {
        match flag {
            Some(p) => Self::new(p),
            None => Self::new(std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| "cache".into())),
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, q: u32, g: usize, k: u32, method: Method) -> PathBuf {
        self.root.join(format!("q{q}")).join(format!("g{g}")).join(format!("k{k}-{method}.json"))
    }

    /// `None` when absent or written under another schema version.
    pub fn load(&self, q: u32, g: usize, k: u32, method: Method) -> Result<Option<ExperimentRecord>> {
        let path = self.path(q, g, k, method);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let rec: ExperimentRecord = serde_json::from_str(&text)
            .map_err(|e| Error::BadRecord { path: path.display().to_string(), why: e.to_string() })?;
        if rec.schema_version != SCHEMA_VERSION {
            return Ok(None);
        }
        if (rec.q, rec.g, rec.k, rec.method.as_str()) != (q, g, k, method.as_str()) {
            return Err(Error::BadRecord { path: path.display().to_string(), why: "parameters do not match the path".into() });
        }
        Ok(Some(rec))
    }

    /// Write to a temporary file in the target directory, then rename.
    pub fn store(&self, rec: &ExperimentRecord) -> Result<PathBuf> {
        let path = self.path(rec.q, rec.g, rec.k, rec.method()?);
        let dir = path.parent().expect("cache paths have a parent");
        fs::create_dir_all(dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        serde_json::to_writer_pretty(&mut tmp, rec)?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(path)
    }
}
