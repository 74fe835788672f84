//! Corpus discovery and manifest parsing.
//!
//! A corpus is either a directory scanned for images paired by the
//! `name.gt.<ext>` convention, or an explicit manifest file with one
//! `original_path[,annotated_path]` line per entry (UTF-8, `#` comments).

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

const IMAGE_EXTENSIONS: [&str; 3] = ["jpg", "jpeg", "png"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub original: PathBuf,
    pub annotated: Option<PathBuf>,
}

#[derive(Debug, Clone, Default)]
pub struct CorpusManifest {
    pub entries: Vec<ManifestEntry>,
}

impl CorpusManifest {
    /// Loads a corpus from a directory (discovery by naming convention) or
    /// from a manifest file.
    pub fn load(path: &Path, gt_dir: Option<&Path>) -> Result<Self> {
        if path.is_dir() {
            Self::discover(path, gt_dir)
        } else if path.is_file() {
            Self::from_file(path)
        } else {
            bail!(
                "{} is neither a directory nor a manifest file",
                path.display()
            );
        }
    }

    /// Scans a directory for images; for each original `name.<ext>` the
    /// annotated file is `name.gt.<ext>` in the same directory (or in
    /// `gt_dir` when given). Entries come back sorted by path.
    pub fn discover(dir: &Path, gt_dir: Option<&Path>) -> Result<Self> {
        let mut originals = Vec::new();
        for item in fs::read_dir(dir).with_context(|| format!("cannot read {}", dir.display()))? {
            let path = item?.path();
            if !path.is_file() || !has_image_extension(&path) || is_annotation_name(&path) {
                continue;
            }
            originals.push(path);
        }
        originals.sort();

        let entries = originals
            .into_iter()
            .map(|original| {
                let candidate = annotated_name_for(&original, gt_dir);
                let annotated = candidate.is_file().then_some(candidate);
                ManifestEntry {
                    original,
                    annotated,
                }
            })
            .collect();
        let manifest = Self { entries };
        manifest.reject_duplicates()?;
        Ok(manifest)
    }

    /// Parses a manifest file: one `original[,annotated]` pair per line,
    /// `#` starts a comment, blank lines are skipped. Relative paths are
    /// resolved against the manifest's directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read manifest {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        let resolve = |raw: &str| -> PathBuf {
            let p = PathBuf::from(raw);
            if p.is_absolute() {
                p
            } else {
                base.join(p)
            }
        };

        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.splitn(2, ',').map(str::trim);
            let original = fields.next().filter(|s| !s.is_empty());
            let Some(original) = original else {
                bail!("{}:{}: empty original path", path.display(), lineno + 1);
            };
            let annotated = fields.next().filter(|s| !s.is_empty());
            entries.push(ManifestEntry {
                original: resolve(original),
                annotated: annotated.map(resolve),
            });
        }
        let manifest = Self { entries };
        manifest.reject_duplicates()?;
        manifest.require_existing_paths()?;
        Ok(manifest)
    }

    /// Originals that have no annotated counterpart.
    pub fn unpaired(&self) -> Vec<&Path> {
        self.entries
            .iter()
            .filter(|e| e.annotated.is_none())
            .map(|e| e.original.as_path())
            .collect()
    }

    fn reject_duplicates(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for entry in &self.entries {
            if !seen.insert(&entry.original) {
                bail!("duplicate corpus entry {}", entry.original.display());
            }
        }
        Ok(())
    }

    fn require_existing_paths(&self) -> Result<()> {
        for entry in &self.entries {
            if !entry.original.is_file() {
                bail!("{} does not exist", entry.original.display());
            }
            if let Some(annotated) = &entry.annotated {
                if !annotated.is_file() {
                    bail!("{} does not exist", annotated.display());
                }
            }
        }
        Ok(())
    }
}

fn has_image_extension(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| IMAGE_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
}

/// True for files following the `name.gt.<ext>` annotation convention.
fn is_annotation_name(path: &Path) -> bool {
    path.file_stem()
        .and_then(|s| s.to_str())
        .is_some_and(|s| s.to_ascii_lowercase().ends_with(".gt"))
}

fn annotated_name_for(original: &Path, gt_dir: Option<&Path>) -> PathBuf {
    let stem = original
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or_default();
    let ext = original
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or_default();
    let name = format!("{stem}.gt.{ext}");
    match gt_dir {
        Some(dir) => dir.join(name),
        None => original.with_file_name(name),
    }
}
