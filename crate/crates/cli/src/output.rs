use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use crate::UsageError;

/// Output stem: the `--out` value without a `.json`/`.csv` suffix, or
/// `./out/<default_name>`.
pub fn stem(out: Option<&Path>, default_name: &str) -> PathBuf {
    match out {
        Some(p) => match p.extension().and_then(|e| e.to_str()) {
            Some("json" | "csv") => p.with_extension(""),
            _ => p.to_path_buf(),
        },
        None => Path::new("out").join(default_name),
    }
}

/// Write `contents` to `<stem><suffix>`, creating parent directories.
pub fn write(stem: &Path, suffix: &str, contents: &str) -> Result<PathBuf> {
    let mut name = stem.as_os_str().to_os_string();
    name.push(suffix);
    let path = PathBuf::from(name);
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

pub fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Locate `<name>_A.txt` in `dir` or in `dir/<name>`.
pub fn dataset_dir(dir: Option<&Path>, name: &str) -> Result<PathBuf> {
    let dir = dir.ok_or_else(|| {
        UsageError("no dataset directory: pass --dataset or set POOLQ_DATA".into())
    })?;
    let marker = format!("{name}_A.txt");
    for candidate in [dir.to_path_buf(), dir.join(name)] {
        if candidate.join(&marker).is_file() {
            return Ok(candidate);
        }
    }
    Err(UsageError(format!(
        "{} does not contain dataset {name} ({marker} not found)",
        dir.display()
    ))
    .into())
}

/// Parse `start:step:end`.
pub fn grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || {
        UsageError(format!(
            "bad threshold grid {spec:?}, expected start:step:end"
        ))
    };
    if parts.len() != 3 {
        return Err(bad().into());
    }
    let nums = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| bad())?;
    if nums[0] < 0.0 || nums[2] > 1.0 {
        return Err(UsageError(format!("threshold grid {spec:?} leaves [0, 1]")).into());
    }
    poolq_core::tau_grid(nums[0], nums[1], nums[2]).map_err(|e| UsageError(e.to_string()).into())
}
