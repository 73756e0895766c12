//! Structured text results documents: `[section]` headers with
//! `key = value` lines, diff-able in version control.
//!
//! Timing keys are prefixed `time_` so reproducibility checks can strip
//! the only run-dependent values and compare everything else exactly.

use std::fs;
use std::path::Path;

use crate::error::CliError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Section {
    pub name: String,
    pub entries: Vec<(String, String)>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Section { name: name.into(), entries: Vec::new() }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResultsDoc {
    pub sections: Vec<Section>,
}

/// Keys every per-method section must carry before the document is
/// considered well-formed.
const METHOD_KEYS: &[&str] = &["accuracy", "k", "iterations", "converged", "time_fit_seconds"];

impl ResultsDoc {
    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.section("run").is_none() {
            return Err(CliError::config("results document missing [run] section"));
        }
        for section in &self.sections {
            if let Some(method) = section.name.strip_prefix("method.") {
                for key in METHOD_KEYS {
                    if section.get(key).is_none() {
                        return Err(CliError::config(format!(
                            "results section for method '{method}' missing key '{key}'"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for section in &self.sections {
            out.push('[');
            out.push_str(&section.name);
            out.push_str("]\n");
            for (key, value) in &section.entries {
                out.push_str(key);
                out.push_str(" = ");
                out.push_str(value);
                out.push('\n');
            }
            out.push('\n');
        }
        out
    }

    /// Validates the schema, then writes.
    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        self.validate()?;
        fs::write(path, self.to_text())?;
        Ok(())
    }

    /// The document with every `time_*` key removed — everything that is
    /// required to be bit-identical across reruns with the same seeds.
    pub fn numeric_view(&self) -> ResultsDoc {
        let sections = self
            .sections
            .iter()
            .map(|s| Section {
                name: s.name.clone(),
                entries: s
                    .entries
                    .iter()
                    .filter(|(k, _)| !k.starts_with("time_"))
                    .cloned()
                    .collect(),
            })
            .collect();
        ResultsDoc { sections }
    }
}
