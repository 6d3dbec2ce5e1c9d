//! Merging a JSON config file into the argument list.
//!
//! The file holds an object keyed by long flag names, e.g.
//! `{"A": 1.0, "N-list": [8, 16, 32], "seed": 7}`. Keys already present on
//! the command line are skipped, so flags win over the file.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use serde_json::Value;

use crate::CliError;

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(rest.into());
        }
    }
    None
}

fn given(args: &[OsString], key: &str) -> bool {
    let flag = format!("--{key}");
    let prefix = format!("--{key}=");
    args.iter().any(|a| {
        let s = a.to_string_lossy();
        s == flag.as_str() || s.starts_with(&prefix)
    })
}

fn scalar(key: &str, v: &Value) -> Result<String, CliError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        _ => Err(CliError::Usage(format!("config key {key:?} must be a scalar or a list of scalars"))),
    }
}

/// Appends flags from the config file that the command line does not set.
pub fn merge_config(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(Path::new(&path))
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.to_string_lossy())))?;
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config is not valid JSON: {e}")))?;
    let Value::Object(map) = doc else {
        return Err(CliError::Usage("config must be a JSON object".into()));
    };
    let mut out = args;
    let mut extra = Vec::new();
    for (key, v) in &map {
        if key == "config" {
            return Err(CliError::Usage("config files cannot nest".into()));
        }
        if given(&out, key) {
            continue;
        }
        let value = match v {
            Value::Array(items) => items.iter().map(|i| scalar(key, i)).collect::<Result<Vec<_>, _>>()?.join(","),
            other => scalar(key, other)?,
        };
        extra.push(OsString::from(format!("--{key}={value}")));
    }
    out.extend(extra);
    Ok(out)
}
