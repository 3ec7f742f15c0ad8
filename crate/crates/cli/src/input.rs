use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use pathramsey_core::graph::io::{read_edge_list, to_edge_list_string};
use pathramsey_core::Graph;

pub fn read_graph(path: &Path) -> Result<Graph> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    read_edge_list(BufReader::new(file)).with_context(|| format!("{}", path.display()))
}

/// Parses JSON into `T`; errors name the offending field path.
pub fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        if field == "." {
            anyhow!("{origin}: {inner}")
        } else {
            anyhow!("{origin}: field `{field}`: {inner}")
        }
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_json(&text, &path.display().to_string())
}

/// Command arguments from the optional `--config` JSON object, with every
/// flag given on the command line taking precedence.
pub fn merge_args<A: Serialize + DeserializeOwned>(flags: &A, config: Option<&Path>) -> Result<A> {
    let Some(path) = config else {
        return Ok(serde_json::from_value(serde_json::to_value(flags)?)?);
    };
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut merged: Map<String, Value> = parse_json(&text, &path.display().to_string())?;
    if let Value::Object(given) = serde_json::to_value(flags)? {
        for (k, v) in given {
            if !(v.is_null() || v == Value::Bool(false) || v.as_array().is_some_and(Vec::is_empty)) {
                merged.insert(k, v);
            }
        }
    }
    parse_json(&Value::Object(merged).to_string(), &path.display().to_string())
}

pub fn require<T: Clone>(value: &Option<T>, name: &str) -> Result<T> {
    value.clone().ok_or_else(|| anyhow!("missing `{name}` (flag or config field)"))
}

pub fn emit_text(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn emit_json(out: Option<&PathBuf>, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit_text(out, &text)
}

pub fn emit_graph(out: Option<&PathBuf>, g: &Graph) -> Result<()> {
    emit_text(out, &to_edge_list_string(g))
}
