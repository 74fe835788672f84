//! The four batch subcommands: classify, extract-gt, evaluate, segment.
//!
//! File-level work runs in parallel; results are reported in input order
//! and a command succeeds only if every requested file succeeded.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;

use toonskin::{
    classify_image, compare_classifiers_with, extract_ground_truth, takayama_segment,
    validate_pair, AnnotatedPair, CannyParams, ClassifierId, CorpusEntry, DatasetReport,
    TakayamaVariant,
};

use crate::imageio::{decode_raster, write_mask_png};
use crate::manifest::CorpusManifest;

/// Report serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// Outcome of a per-file batch: how many inputs failed.
#[derive(Debug, Default)]
pub struct BatchOutcome {
    pub failures: usize,
}

impl BatchOutcome {
    pub fn success(&self) -> bool {
        self.failures == 0
    }
}

fn ensure_out_dir(out_dir: &Path) -> Result<()> {
    fs::create_dir_all(out_dir)
        .with_context(|| format!("cannot create output directory {}", out_dir.display()))
}

fn output_path(out_dir: &Path, input: &Path, tag: &str) -> PathBuf {
    let stem = input.file_stem().and_then(|s| s.to_str()).unwrap_or("mask");
    out_dir.join(format!("{stem}.{tag}.mask.png"))
}

/// Runs `work` over every input in parallel, then reports results in input
/// order: one `wrote <path>` line per success, errors to stderr.
fn run_batch<F>(inputs: &[PathBuf], work: F) -> BatchOutcome
where
    F: Fn(&Path) -> Result<Vec<PathBuf>> + Sync,
{
    let results: Vec<Result<Vec<PathBuf>>> = inputs.par_iter().map(|input| work(input)).collect();
    let mut outcome = BatchOutcome::default();
    for (input, result) in inputs.iter().zip(results) {
        match result {
            Ok(written) => {
                for path in written {
                    println!("wrote {}", path.display());
                }
            }
            Err(err) => {
                eprintln!("error: {}: {err:#}", input.display());
                outcome.failures += 1;
            }
        }
    }
    outcome
}

/// `classify`: run pixel rules over images and render one mask file per
/// input and classifier, named `<stem>.<classifier>.mask.png`.
pub fn cmd_classify(
    inputs: &[PathBuf],
    ids: &[ClassifierId],
    out_dir: &Path,
) -> Result<BatchOutcome> {
    ensure_out_dir(out_dir)?;
    Ok(run_batch(inputs, |input| {
        let img = decode_raster(input)?;
        let mut written = Vec::new();
        for &id in ids {
            let mask = classify_image(&img, id);
            let path = output_path(out_dir, input, id.name());
            write_mask_png(&mask, &path)?;
            written.push(path);
        }
        Ok(written)
    }))
}

/// `extract-gt`: recover ground-truth masks from annotated images, named
/// `<stem>.gt.mask.png`.
pub fn cmd_extract_gt(inputs: &[PathBuf], out_dir: &Path) -> Result<BatchOutcome> {
    ensure_out_dir(out_dir)?;
    Ok(run_batch(inputs, |input| {
        let img = decode_raster(input)?;
        let mask = extract_ground_truth(&img);
        let path = output_path(out_dir, input, "gt");
        write_mask_png(&mask, &path)?;
        Ok(vec![path])
    }))
}

/// `segment`: run the full takayama region pipeline, output named
/// `<stem>.segment.mask.png`.
pub fn cmd_segment(
    inputs: &[PathBuf],
    params: &CannyParams,
    skin_fraction: f32,
    out_dir: &Path,
) -> Result<BatchOutcome> {
    ensure_out_dir(out_dir)?;
    Ok(run_batch(inputs, |input| {
        let img = decode_raster(input)?;
        let mask = takayama_segment(&img, params, skin_fraction)?;
        let path = output_path(out_dir, input, "segment");
        write_mask_png(&mask, &path)?;
        Ok(vec![path])
    }))
}

/// Everything `evaluate` needs beyond the corpus path.
pub struct EvaluateOpts {
    pub ids: Vec<ClassifierId>,
    pub report_path: Option<PathBuf>,
    pub format: ReportFormat,
    pub gt_dir: Option<PathBuf>,
    pub pair_tolerance: u8,
    /// Use the edge/flood-fill pipeline for the takayama row instead of
    /// the plain pixel rule.
    pub takayama_pipeline: bool,
    pub canny: CannyParams,
    pub skin_fraction: f32,
}

/// `evaluate`: benchmark classifiers over an annotated corpus, print a
/// comparison table, and optionally write a CSV/JSON report.
pub fn cmd_evaluate(corpus_path: &Path, opts: &EvaluateOpts) -> Result<DatasetReport> {
    let manifest = CorpusManifest::load(corpus_path, opts.gt_dir.as_deref())?;
    if manifest.entries.is_empty() {
        bail!("no corpus entries found in {}", corpus_path.display());
    }
    let unpaired = manifest.unpaired();
    if !unpaired.is_empty() {
        let listing: Vec<String> = unpaired.iter().map(|p| p.display().to_string()).collect();
        bail!(
            "{} file(s) have no annotated counterpart:\n  {}",
            listing.len(),
            listing.join("\n  ")
        );
    }

    let corpus: Vec<CorpusEntry> = manifest
        .entries
        .par_iter()
        .map(|entry| {
            let annotated_path = entry.annotated.as_deref().expect("pairing checked above");
            let original = decode_raster(&entry.original)?;
            let annotated = decode_raster(annotated_path)?;
            let name = entry.original.display().to_string();
            let pair =
                AnnotatedPair::new(original, annotated).map_err(|e| anyhow!("{name}: {e}"))?;
            let validation = validate_pair(&pair, opts.pair_tolerance);
            if !validation.is_valid() {
                bail!(
                    "{name}: {} non-marker pixel(s) deviate from the original by more than {} \
                     per channel; annotation spill or wrong pairing",
                    validation.deviating_pixels,
                    opts.pair_tolerance
                );
            }
            Ok(CorpusEntry { name, pair })
        })
        .collect::<Result<_>>()?;

    let variant = if opts.takayama_pipeline {
        TakayamaVariant::Pipeline {
            params: opts.canny,
            skin_fraction: opts.skin_fraction,
        }
    } else {
        TakayamaVariant::PixelRule
    };
    let report = compare_classifiers_with(&corpus, &opts.ids, variant)?;

    print!("{}", report.summary_table());
    if let Some(path) = &opts.report_path {
        let body = match opts.format {
            ReportFormat::Csv => report.to_csv(),
            ReportFormat::Json => report.to_json(),
        };
        fs::write(path, body).with_context(|| format!("cannot write {}", path.display()))?;
        println!("report written to {}", path.display());
    }
    Ok(report)
}
