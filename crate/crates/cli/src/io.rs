use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use qamgolay::constructions::ConstructionSpec;
use qamgolay::io::{parse_pair_documents, PairDocument};
use serde::Serialize;
use serde_json::Value;

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Writes to `path`, or to stdout when no path is given.
pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Pretty JSON with object keys in sorted order and a trailing newline.
pub fn sorted_json<T: Serialize>(value: &T) -> Result<String> {
    // serde_json's map is ordered by key unless preserve_order is enabled
    let value = serde_json::to_value(value)?;
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    Ok(text)
}

pub fn read_pairs(path: &Path) -> Result<Vec<PairDocument>> {
    let text = read_text(path)?;
    parse_pair_documents(&text).with_context(|| format!("malformed pair file {}", path.display()))
}

/// Reads one spec or a list of specs.
pub fn read_specs(path: &Path) -> Result<Vec<ConstructionSpec>> {
    let text = read_text(path)?;
    let context = || format!("malformed spec file {}", path.display());
    let value: Value = serde_json::from_str(&text).with_context(context)?;
    let items = match value {
        Value::Array(items) => items,
        other => vec![other],
    };
    items
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            serde_json::from_value(v)
                .with_context(|| format!("spec {i}"))
                .with_context(context)
        })
        .collect()
}
