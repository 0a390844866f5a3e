//! File output confined to one directory, and the field CSV format.

use std::fmt::Write as _;
use std::fs;
use std::path::{Component, Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use signkernel::fmt::sig;

/// Output directory; every write lands under it.
#[derive(Debug, Clone)]
pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn create(root: impl Into<PathBuf>) -> Result<Self> {
        let root = root.into();
        fs::create_dir_all(&root).with_context(|| format!("creating {}", root.display()))?;
        Ok(Self { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Writes `contents` to `name`, a relative path without `..`.
    pub fn write(&self, name: &str, contents: &str) -> Result<PathBuf> {
        let rel = Path::new(name);
        if rel.components().any(|c| !matches!(c, Component::Normal(_))) {
            bail!("output name '{name}' must be a plain relative path");
        }
        let path = self.root.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
        }
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }
}

/// CSV `x,v1..vd` with `x` at the cell centers of a uniform grid.
pub fn field_csv<R: AsRef<[f64]>>(rows: &[R]) -> String {
    let d = rows.first().map_or(0, |r| r.as_ref().len());
    let mut out = String::from("x");
    for k in 1..=d {
        let _ = write!(out, ",v{k}");
    }
    out.push('\n');
    let n = rows.len();
    for (i, row) in rows.iter().enumerate() {
        out.push_str(&sig((i as f64 + 0.5) / n as f64));
        for &v in row.as_ref() {
            out.push(',');
            out.push_str(&sig(v));
        }
        out.push('\n');
    }
    out
}

/// Reads a field CSV (header `x,v1..vd`), returning the value columns.
pub fn read_field_csv(path: &Path) -> Result<Vec<Vec<f64>>> {
    let mut reader =
        csv::Reader::from_path(path).with_context(|| format!("opening {}", path.display()))?;
    let header = reader.headers()?.clone();
    ensure!(
        header.len() >= 2 && &header[0] == "x",
        "{}: expected header x,v1..vd",
        path.display()
    );
    let mut rows = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.with_context(|| format!("{}: row {}", path.display(), k + 2))?;
        let row = record
            .iter()
            .skip(1)
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .with_context(|| format!("{}: row {}", path.display(), k + 2))?;
        rows.push(row);
    }
    ensure!(!rows.is_empty(), "{}: no samples", path.display());
    Ok(rows)
}
