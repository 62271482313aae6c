//! Whole-buffer output: stdout, or a file written via a temporary sibling
//! and renamed into place, so failures never leave partial files.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};

pub struct Output {
    path: Option<PathBuf>,
}

impl Output {
    /// `out` relative paths are resolved against `out_dir`; with only
    /// `out_dir`, the file is named `default_name`.
    pub fn new(out: Option<String>, out_dir: Option<String>, default_name: &str) -> Self {
        let path = match (out, out_dir) {
            (Some(o), Some(d)) if !PathBuf::from(&o).is_absolute() => {
                Some(PathBuf::from(d).join(o))
            }
            (Some(o), _) => Some(PathBuf::from(o)),
            (None, Some(d)) => Some(PathBuf::from(d).join(default_name)),
            (None, None) => None,
        };
        Output { path }
    }

    pub fn write(&self, bytes: &[u8]) -> Result<()> {
        let Some(path) = &self.path else {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            return Ok(out.flush()?);
        };
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        let tmp = path.with_file_name(format!(
            ".{}.tmp{}",
            path.file_name()
                .map_or("out".into(), |n| n.to_string_lossy()),
            std::process::id()
        ));
        std::fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
        std::fs::rename(&tmp, path)
            .with_context(|| format!("moving output to {}", path.display()))?;
        Ok(())
    }
}
