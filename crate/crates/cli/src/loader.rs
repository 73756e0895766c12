//! Directory loaders for PGM face corpora.
//!
//! Two layouts are supported:
//! - `subdirs`: one directory per subject (`s1/`, `s2/`, ...), images
//!   inside; the subject label is the trailing number of the directory
//!   name (or its sorted position when there is none).
//! - `flat`: all images in one directory named `<subject>_<index>.<ext>`.
//!
//! Entries are ordered by (subject, image index) using natural numeric
//! ordering so `10.pgm` sorts after `2.pgm`.

use std::cmp::Ordering;
use std::fs;
use std::path::{Path, PathBuf};

use robust_subspace::ImageDataset;

use crate::error::CliError;
use crate::pgm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Subdirs,
    Flat,
}

impl std::str::FromStr for Layout {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "subdirs" => Ok(Layout::Subdirs),
            "flat" => Ok(Layout::Flat),
            other => Err(format!("unknown layout '{other}' (expected 'subdirs' or 'flat')")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LayoutConfig {
    pub root: PathBuf,
    pub layout: Layout,
    pub extension: String,
    /// When set, every subject must contribute exactly this many images.
    pub per_subject: Option<usize>,
}

impl LayoutConfig {
    pub fn new(root: impl Into<PathBuf>, layout: Layout) -> Self {
        LayoutConfig { root: root.into(), layout, extension: "pgm".to_string(), per_subject: None }
    }
}

/// Splits a name into (alphabetic prefix, numeric value) for natural
/// ordering; names without a trailing number get value `None`.
fn split_natural(name: &str) -> (&str, Option<u64>) {
    let stem = name.split('.').next().unwrap_or(name);
    let digits_at = stem.rfind(|c: char| !c.is_ascii_digit()).map(|i| i + 1).unwrap_or(0);
    let (prefix, digits) = stem.split_at(digits_at);
    (prefix, digits.parse().ok())
}

fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (pa, na) = split_natural(a);
    let (pb, nb) = split_natural(b);
    pa.cmp(pb).then(na.cmp(&nb)).then(a.cmp(b))
}

fn file_name(path: &Path) -> String {
    path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn list_dir(path: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut entries: Vec<PathBuf> = fs::read_dir(path)
        .map_err(|e| CliError::Dataset(format!("cannot read {}: {e}", path.display())))?
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Dataset(format!("cannot read {}: {e}", path.display())))?
        .into_iter()
        .map(|e| e.path())
        .collect();
    entries.sort_by(|a, b| natural_cmp(&file_name(a), &file_name(b)));
    Ok(entries)
}

fn image_files(dir: &Path, extension: &str) -> Result<Vec<PathBuf>, CliError> {
    Ok(list_dir(dir)?
        .into_iter()
        .filter(|p| {
            p.is_file()
                && p.extension().map(|e| e.to_string_lossy().eq_ignore_ascii_case(extension))
                    == Some(true)
        })
        .collect())
}

/// Loads every image under `config.root` per the configured layout,
/// ordered by (subject, image index).
pub fn load_pgm_directory(config: &LayoutConfig) -> Result<ImageDataset, CliError> {
    let mut entries: Vec<(usize, PathBuf)> = Vec::new();
    match config.layout {
        Layout::Subdirs => {
            let subject_dirs: Vec<PathBuf> =
                list_dir(&config.root)?.into_iter().filter(|p| p.is_dir()).collect();
            for (pos, dir) in subject_dirs.iter().enumerate() {
                let name = file_name(dir);
                let label = split_natural(&name).1.map(|n| n as usize).unwrap_or(pos + 1);
                for file in image_files(dir, &config.extension)? {
                    entries.push((label, file));
                }
            }
        }
        Layout::Flat => {
            for file in image_files(&config.root, &config.extension)? {
                let name = file_name(&file);
                let stem = name.split('.').next().unwrap_or(&name);
                let label: usize = stem
                    .split('_')
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| {
                        CliError::Dataset(format!(
                            "flat layout expects '<subject>_<index>.{}', got '{name}'",
                            config.extension
                        ))
                    })?;
                entries.push((label, file));
            }
            entries.sort_by(|a, b| {
                a.0.cmp(&b.0).then_with(|| natural_cmp(&file_name(&a.1), &file_name(&b.1)))
            });
        }
    }

    if entries.is_empty() {
        return Err(CliError::Dataset(format!(
            "no .{} images found under {}",
            config.extension,
            config.root.display()
        )));
    }

    let mut images = Vec::with_capacity(entries.len());
    let mut labels = Vec::with_capacity(entries.len());
    let mut dims: Option<(usize, usize)> = None;
    for (label, path) in &entries {
        let img = pgm::read_pgm(path)?;
        match dims {
            None => dims = Some((img.rows(), img.cols())),
            Some((r, c)) if (img.rows(), img.cols()) != (r, c) => {
                return Err(CliError::Dataset(format!(
                    "inconsistent image dimensions: {} is {}x{}, expected {r}x{c}",
                    path.display(),
                    img.rows(),
                    img.cols()
                )));
            }
            _ => {}
        }
        images.push(img);
        labels.push(*label);
    }

    if let Some(expect) = config.per_subject {
        let mut counts: Vec<(usize, usize)> = Vec::new();
        for &label in &labels {
            match counts.iter_mut().find(|(l, _)| *l == label) {
                Some((_, c)) => *c += 1,
                None => counts.push((label, 1)),
            }
        }
        for (label, count) in counts {
            if count != expect {
                return Err(CliError::Dataset(format!(
                    "subject {label} has {count} images, expected {expect}"
                )));
            }
        }
    }

    ImageDataset::new(images, labels).map_err(|e| CliError::Dataset(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use robust_subspace::Matrix;

    fn write_tree(root: &Path, subjects: usize, per: usize) {
        for s in 1..=subjects {
            let dir = root.join(format!("s{s}"));
            fs::create_dir(&dir).unwrap();
            for i in 1..=per {
                let m = Matrix::new(2, 2, vec![s as f64, i as f64, 0.0, 255.0]).unwrap();
                pgm::write_pgm(&dir.join(format!("{i}.pgm")), &m).unwrap();
            }
        }
    }

    #[test]
    fn subdirs_layout_orders_by_subject_then_index() {
        let tmp = tempfile::tempdir().unwrap();
        write_tree(tmp.path(), 2, 3);
        let ds = load_pgm_directory(&LayoutConfig::new(tmp.path(), Layout::Subdirs)).unwrap();
        assert_eq!(ds.n_images(), 6);
        assert_eq!(ds.labels(), &[1, 1, 1, 2, 2, 2]);
        assert_eq!(ds.image(0).get(0, 0), 1.0);
        assert_eq!(ds.image(3).get(0, 0), 2.0);
    }

    #[test]
    fn natural_ordering_handles_double_digits() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path().join("s1");
        fs::create_dir(&dir).unwrap();
        for i in [1usize, 2, 10, 11] {
            let m = Matrix::new(1, 1, vec![i as f64]).unwrap();
            pgm::write_pgm(&dir.join(format!("{i}.pgm")), &m).unwrap();
        }
        // s10 must come after s2 as well
        let dir2 = tmp.path().join("s10");
        fs::create_dir(&dir2).unwrap();
        pgm::write_pgm(&dir2.join("1.pgm"), &Matrix::new(1, 1, vec![99.0]).unwrap()).unwrap();
        let ds = load_pgm_directory(&LayoutConfig::new(tmp.path(), Layout::Subdirs)).unwrap();
        let values: Vec<f64> = (0..4).map(|i| ds.image(i).get(0, 0)).collect();
        assert_eq!(values, vec![1.0, 2.0, 10.0, 11.0]);
        assert_eq!(ds.labels(), &[1, 1, 1, 1, 10]);
    }

    #[test]
    fn flat_layout_parses_subject_from_filename() {
        let tmp = tempfile::tempdir().unwrap();
        for (s, i) in [(1usize, 1usize), (1, 2), (2, 1)] {
            let m = Matrix::new(1, 2, vec![s as f64, i as f64]).unwrap();
            pgm::write_pgm(&tmp.path().join(format!("{s}_{i}.pgm")), &m).unwrap();
        }
        let ds = load_pgm_directory(&LayoutConfig::new(tmp.path(), Layout::Flat)).unwrap();
        assert_eq!(ds.labels(), &[1, 1, 2]);
    }

    #[test]
    fn rejects_empty_and_inconsistent() {
        let tmp = tempfile::tempdir().unwrap();
        assert!(load_pgm_directory(&LayoutConfig::new(tmp.path(), Layout::Subdirs)).is_err());

        let dir = tmp.path().join("s1");
        fs::create_dir(&dir).unwrap();
        pgm::write_pgm(&dir.join("1.pgm"), &Matrix::new(1, 1, vec![0.0]).unwrap()).unwrap();
        pgm::write_pgm(&dir.join("2.pgm"), &Matrix::new(2, 1, vec![0.0, 1.0]).unwrap()).unwrap();
        assert!(load_pgm_directory(&LayoutConfig::new(tmp.path(), Layout::Subdirs)).is_err());
    }

    #[test]
    fn per_subject_count_enforced() {
        let tmp = tempfile::tempdir().unwrap();
        write_tree(tmp.path(), 2, 3);
        let mut cfg = LayoutConfig::new(tmp.path(), Layout::Subdirs);
        cfg.per_subject = Some(3);
        assert!(load_pgm_directory(&cfg).is_ok());
        cfg.per_subject = Some(4);
        assert!(load_pgm_directory(&cfg).is_err());
    }

    #[test]
    fn deterministic_reload() {
        let tmp = tempfile::tempdir().unwrap();
        write_tree(tmp.path(), 3, 2);
        let cfg = LayoutConfig::new(tmp.path(), Layout::Subdirs);
        let a = load_pgm_directory(&cfg).unwrap();
        let b = load_pgm_directory(&cfg).unwrap();
        assert_eq!(a.labels(), b.labels());
        for i in 0..a.n_images() {
            assert_eq!(a.image(i), b.image(i));
        }
    }
}
