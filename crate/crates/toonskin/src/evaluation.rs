//! Pixel-level confusion counting and cross-classifier benchmarking.
//!
//! The benchmark metric definitions are:
//!
//! * `tp_rate` = skin pixels detected / total ground-truth skin pixels
//! * `fp_rate` = non-skin pixels detected / total pixels (note: the
//!   denominator includes skin pixels, which understates the conventional
//!   false-positive rate)
//!
//! Reports also carry `fp_rate_conventional` = fp / (fp + tn), the usual
//! definition over non-skin pixels only, so the two readings are never
//! confused. Counts are summed exactly in integers over the whole corpus
//! and divided once at the end.

use rayon::prelude::*;
use serde::Serialize;

use crate::classifiers::{classify_image, ClassifierId};
use crate::error::{Error, Result};
use crate::ground_truth::{extract_ground_truth, AnnotatedPair};
use crate::segmentation::{takayama_segment, CannyParams};
use crate::types::BinaryMask;

/// Pixel-level confusion tallies for one prediction/ground-truth pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct EvalCounts {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
    pub gt_skin: u64,
    pub total: u64,
}

impl EvalCounts {
    /// The two identities every tally must satisfy.
    pub fn identities_hold(&self) -> bool {
        self.tp + self.fn_ == self.gt_skin && self.tp + self.fp + self.fn_ + self.tn == self.total
    }

    fn accumulate(&mut self, other: &EvalCounts) {
        self.tp += other.tp;
        self.fp += other.fp;
        self.fn_ += other.fn_;
        self.tn += other.tn;
        self.gt_skin += other.gt_skin;
        self.total += other.total;
    }
}

/// Counts TP/FP/FN/TN between a predicted mask and ground truth.
///
/// tp: pred=1 and gt=1; fp: pred=1 and gt=0; fn: pred=0 and gt=1;
/// tn: pred=0 and gt=0.
pub fn evaluate_image(pred: &BinaryMask, gt: &BinaryMask) -> Result<EvalCounts> {
    if !pred.same_dimensions(gt) {
        return Err(Error::DimensionMismatch {
            left_width: pred.width(),
            left_height: pred.height(),
            right_width: gt.width(),
            right_height: gt.height(),
        });
    }
    let mut counts = EvalCounts {
        total: pred.pixel_count(),
        ..EvalCounts::default()
    };
    for (&p, &g) in pred.flags().iter().zip(gt.flags()) {
        match (p, g) {
            (1, 1) => counts.tp += 1,
            (1, 0) => counts.fp += 1,
            (0, 1) => counts.fn_ += 1,
            _ => counts.tn += 1,
        }
    }
    counts.gt_skin = counts.tp + counts.fn_;
    debug_assert!(counts.identities_hold());
    Ok(counts)
}

/// Corpus-level aggregation: exact integer sums, division deferred to the
/// end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aggregate {
    /// Summed counts over every image.
    pub counts: EvalCounts,
    /// Sum tp / sum gt_skin; NaN when the corpus has no skin pixels.
    pub tp_rate: f64,
    /// Sum fp / sum total pixels.
    pub fp_rate: f64,
    /// False when `tp_rate` is the NaN sentinel (no ground-truth skin).
    pub tp_rate_defined: bool,
}

/// Sums per-image tallies and derives the two corpus rates.
pub fn aggregate(counts: &[EvalCounts]) -> Result<Aggregate> {
    if counts.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut summed = EvalCounts::default();
    for c in counts {
        summed.accumulate(c);
    }
    let tp_rate_defined = summed.gt_skin > 0;
    let tp_rate = if tp_rate_defined {
        summed.tp as f64 / summed.gt_skin as f64
    } else {
        f64::NAN
    };
    let fp_rate = summed.fp as f64 / summed.total as f64;
    Ok(Aggregate {
        counts: summed,
        tp_rate,
        fp_rate,
        tp_rate_defined,
    })
}

/// One named image pair of a benchmark corpus.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub pair: AnnotatedPair,
}

/// How the takayama row of a comparison is computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TakayamaVariant {
    /// The HSV pixel rule applied pixel-by-pixel (the default).
    PixelRule,
    /// The full edge/flood-fill region pipeline.
    Pipeline {
        params: CannyParams,
        skin_fraction: f32,
    },
}

/// One classifier's row of a [`DatasetReport`].
#[derive(Debug, Clone, Serialize)]
pub struct ClassifierRow {
    pub id: ClassifierId,
    pub tp_count: u64,
    pub tp_rate: f64,
    pub fp_count: u64,
    pub fp_rate: f64,
    /// fp / (fp + tn): the conventional false-positive rate over non-skin
    /// pixels, not the benchmark definition above.
    pub fp_rate_conventional: f64,
    pub tp_rate_defined: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Per-image, per-classifier tallies kept for the JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct ImageBreakdown {
    pub name: String,
    pub gt_skin: u64,
    pub total: u64,
    pub results: Vec<ImageResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ImageResult {
    pub id: ClassifierId,
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

/// Cross-classifier benchmark results over one corpus.
#[derive(Debug, Clone, Serialize)]
pub struct DatasetReport {
    pub gt_skin_total: u64,
    pub pixel_total: u64,
    pub classifiers: Vec<ClassifierRow>,
    pub images: Vec<ImageBreakdown>,
}

/// Classifiers without a published reference row get this note attached.
const NO_REFERENCE_NOTE: &str = "no published reference value";

/// Runs every requested classifier over the corpus and aggregates.
///
/// The takayama row uses the pixel rule; see [`compare_classifiers_with`]
/// for the region-pipeline variant.
pub fn compare_classifiers(corpus: &[CorpusEntry], ids: &[ClassifierId]) -> Result<DatasetReport> {
    compare_classifiers_with(corpus, ids, TakayamaVariant::PixelRule)
}

/// [`compare_classifiers`] with an explicit choice for the takayama row.
///
/// Report rows come back in the order `ids` requests. Errors carry the name
/// of the offending corpus entry.
pub fn compare_classifiers_with(
    corpus: &[CorpusEntry],
    ids: &[ClassifierId],
    takayama: TakayamaVariant,
) -> Result<DatasetReport> {
    if corpus.is_empty() {
        return Err(Error::EmptyDataset);
    }

    // Per-image work is independent; results are collected back in corpus
    // order so aggregation is schedule-invariant.
    let per_image: Vec<ImageBreakdown> = corpus
        .par_iter()
        .map(|entry| evaluate_entry(entry, ids, takayama))
        .collect::<Result<_>>()?;

    let mut classifiers = Vec::with_capacity(ids.len());
    for (i, &id) in ids.iter().enumerate() {
        let counts: Vec<EvalCounts> = per_image
            .iter()
            .map(|img| {
                let r = &img.results[i];
                EvalCounts {
                    tp: r.tp,
                    fp: r.fp,
                    fn_: r.fn_,
                    tn: r.tn,
                    gt_skin: img.gt_skin,
                    total: img.total,
                }
            })
            .collect();
        let agg = aggregate(&counts)?;
        let non_skin = agg.counts.fp + agg.counts.tn;
        let fp_rate_conventional = if non_skin > 0 {
            agg.counts.fp as f64 / non_skin as f64
        } else {
            f64::NAN
        };
        classifiers.push(ClassifierRow {
            id,
            tp_count: agg.counts.tp,
            tp_rate: agg.tp_rate,
            fp_count: agg.counts.fp,
            fp_rate: agg.fp_rate,
            fp_rate_conventional,
            tp_rate_defined: agg.tp_rate_defined,
            note: (id == ClassifierId::Swift).then(|| NO_REFERENCE_NOTE.to_string()),
        });
    }

    let gt_skin_total = per_image.iter().map(|img| img.gt_skin).sum();
    let pixel_total = per_image.iter().map(|img| img.total).sum();
    Ok(DatasetReport {
        gt_skin_total,
        pixel_total,
        classifiers,
        images: per_image,
    })
}

fn evaluate_entry(
    entry: &CorpusEntry,
    ids: &[ClassifierId],
    takayama: TakayamaVariant,
) -> Result<ImageBreakdown> {
    let wrap = |e: Error| Error::in_entry(&entry.name, e);
    let gt = extract_ground_truth(entry.pair.annotated());
    let mut results = Vec::with_capacity(ids.len());
    for &id in ids {
        let pred = match (id, takayama) {
            (
                ClassifierId::Takayama,
                TakayamaVariant::Pipeline {
                    params,
                    skin_fraction,
                },
            ) => takayama_segment(entry.pair.original(), &params, skin_fraction).map_err(wrap)?,
            _ => classify_image(entry.pair.original(), id),
        };
        let counts = evaluate_image(&pred, &gt).map_err(wrap)?;
        results.push(ImageResult {
            id,
            tp: counts.tp,
            fp: counts.fp,
            fn_: counts.fn_,
            tn: counts.tn,
        });
    }
    Ok(ImageBreakdown {
        name: entry.name.clone(),
        gt_skin: gt.count_ones(),
        total: gt.pixel_count(),
        results,
    })
}

/// Formats a rate with four significant digits as a plain decimal.
fn format_rate(rate: f64) -> String {
    if !rate.is_finite() {
        return "NaN".to_string();
    }
    if rate == 0.0 {
        return "0.0000".to_string();
    }
    let exponent = rate.abs().log10().floor() as i32;
    let decimals = (3 - exponent).max(0) as usize;
    format!("{rate:.decimals$}")
}

fn format_percent(rate: f64) -> String {
    if rate.is_nan() {
        "n/a".to_string()
    } else {
        format!("{:.2}%", rate * 100.0)
    }
}

impl DatasetReport {
    /// CSV serialization: one row per classifier, stable column set
    /// `id,tp_count,tp_rate,fp_count,fp_rate,fp_rate_conventional`.
    ///
    /// Deterministic: the same corpus and flags produce byte-identical
    /// output regardless of scheduling.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,tp_count,tp_rate,fp_count,fp_rate,fp_rate_conventional\n");
        for row in &self.classifiers {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.id,
                row.tp_count,
                format_rate(row.tp_rate),
                row.fp_count,
                format_rate(row.fp_rate),
                format_rate(row.fp_rate_conventional),
            ));
        }
        out
    }

    /// Pretty-printed JSON with corpus totals and the per-image breakdown.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable comparison table with two-decimal percentages.
    pub fn summary_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<10} {:>14} {:>9} {:>15} {:>9}\n",
            "Method", "True Positive", "TP %", "False Positive", "FP %"
        ));
        let mut noted = false;
        for row in &self.classifiers {
            let marker = if row.note.is_some() {
                noted = true;
                "*"
            } else {
                ""
            };
            out.push_str(&format!(
                "{:<10} {:>14} {:>9} {:>15} {:>9}\n",
                format!("{}{}", row.id, marker),
                row.tp_count,
                format_percent(row.tp_rate),
                row.fp_count,
                format_percent(row.fp_rate),
            ));
        }
        out.push_str(&format!(
            "{:<10} {:>14} {:>9} {:>15} {:>9}\n",
            "corpus",
            format!("{} skin", self.gt_skin_total),
            "",
            format!("{} px", self.pixel_total),
            ""
        ));
        if noted {
            out.push_str(&format!("* {NO_REFERENCE_NOTE}\n"));
        }
        out
    }
}
