//! Flat key-value run configuration with `[section]` headers.
//!
//! ```text
//! # global keys
//! methods = pca,r1pca
//! k = 8
//!
//! [method.r1pca]
//! max_iters = 120
//! tol = 1e-6
//! ```
//!
//! Every entry keeps its line number so validation errors point at the
//! offending line (exit code 2).

use std::fs;
use std::path::Path;

use crate::error::CliError;

#[derive(Debug, Clone)]
pub struct Entry {
    pub section: String,
    pub key: String,
    pub value: String,
    pub line: usize,
}

#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    pub entries: Vec<Entry>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut section = String::new();
        let mut entries = Vec::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw_line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if let Some(name) = trimmed.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| CliError::config_at(line, "unterminated section header"))?
                    .trim();
                if name.is_empty() {
                    return Err(CliError::config_at(line, "empty section name"));
                }
                section = name.to_string();
                continue;
            }
            let (key, value) = trimmed
                .split_once('=')
                .ok_or_else(|| CliError::config_at(line, "expected 'key = value'"))?;
            let key = key.trim();
            if key.is_empty() {
                return Err(CliError::config_at(line, "empty key"));
            }
            entries.push(Entry {
                section: section.clone(),
                key: key.to_string(),
                value: value.trim().to_string(),
                line,
            });
        }
        Ok(RawConfig { entries })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.section == section && e.key == key)
    }

    /// Typed lookup; parse failures become config errors at the entry's
    /// line.
    pub fn get_parsed<T: std::str::FromStr>(
        &self,
        section: &str,
        key: &str,
    ) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        match self.get(section, key) {
            None => Ok(None),
            Some(entry) => entry.value.parse::<T>().map(Some).map_err(|e| {
                CliError::config_at(entry.line, format!("invalid value for '{key}': {e}"))
            }),
        }
    }

    /// Rejects keys the harness does not understand, pointing at the
    /// first offender.
    pub fn reject_unknown(
        &self,
        known_global: &[&str],
        known_sections: &[&str],
        known_section_keys: &[&str],
    ) -> Result<(), CliError> {
        for entry in &self.entries {
            if entry.section.is_empty() {
                if !known_global.contains(&entry.key.as_str()) {
                    return Err(CliError::config_at(
                        entry.line,
                        format!("unknown key '{}'", entry.key),
                    ));
                }
            } else if !known_sections.contains(&entry.section.as_str()) {
                return Err(CliError::config_at(
                    entry.line,
                    format!("unknown section '{}'", entry.section),
                ));
            } else if !known_section_keys.contains(&entry.key.as_str()) {
                return Err(CliError::config_at(
                    entry.line,
                    format!("unknown key '{}' in section '{}'", entry.key, entry.section),
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections_and_comments() {
        let cfg = RawConfig::parse("# top\nk = 5\n\n[method.pca]\nseed = 7\n").unwrap();
        assert_eq!(cfg.get("", "k").unwrap().value, "5");
        assert_eq!(cfg.get("method.pca", "seed").unwrap().line, 5);
        assert_eq!(cfg.get_parsed::<u64>("method.pca", "seed").unwrap(), Some(7));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = RawConfig::parse("k = 5\nnot a pair\n").unwrap_err();
        match err {
            CliError::Config { line: Some(2), .. } => {}
            other => panic!("expected line-2 config error, got {other}"),
        }

        let cfg = RawConfig::parse("k = five\n").unwrap();
        let err = cfg.get_parsed::<usize>("", "k").unwrap_err();
        match err {
            CliError::Config { line: Some(1), .. } => {}
            other => panic!("expected line-1 config error, got {other}"),
        }
    }

    #[test]
    fn unknown_keys_rejected() {
        let cfg = RawConfig::parse("k = 5\nbogus = 1\n").unwrap();
        let err = cfg.reject_unknown(&["k"], &[], &[]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
