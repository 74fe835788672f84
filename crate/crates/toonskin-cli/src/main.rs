use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};

use toonskin::{
    list_classifiers, CannyParams, ClassifierId, DEFAULT_PAIR_TOLERANCE, DEFAULT_SKIN_FRACTION,
};
use toonskin_cli::commands::{
    cmd_classify, cmd_evaluate, cmd_extract_gt, cmd_segment, EvaluateOpts, ReportFormat,
};

/// Skin-color detection toolkit for animation imagery: pixel-rule
/// classifiers, annotated ground-truth extraction, corpus benchmarking,
/// and edge-based region segmentation.
#[derive(Parser)]
#[command(name = "toonskin", version)]
struct Cli {
    /// Maximum number of parallel jobs (default: one per CPU).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

/// Classifier selection shared by `classify` and `evaluate`.
#[derive(Args)]
struct Selection {
    /// Run a single classifier by name.
    #[arg(long, value_name = "ID", conflicts_with = "classifiers")]
    classifier: Option<String>,

    /// Comma-separated classifier names, or `all`.
    #[arg(long, value_name = "IDS")]
    classifiers: Option<String>,
}

impl Selection {
    fn resolve(&self, default_all: bool) -> Result<Vec<ClassifierId>> {
        if let Some(one) = &self.classifier {
            return Ok(vec![one.parse()?]);
        }
        match self.classifiers.as_deref() {
            Some("all") => Ok(list_classifiers().to_vec()),
            Some(list) => list
                .split(',')
                .map(|name| name.trim().parse::<ClassifierId>().map_err(Into::into))
                .collect(),
            None if default_all => Ok(list_classifiers().to_vec()),
            None => bail!("select classifiers with --classifier <ID> or --classifiers all"),
        }
    }
}

#[derive(Args)]
struct SegmentParams {
    /// Gaussian smoothing sigma for edge detection.
    #[arg(long, default_value_t = 1.4)]
    sigma: f32,

    /// Low hysteresis threshold, as a fraction of the maximum gradient.
    #[arg(long, default_value_t = 0.10)]
    low: f32,

    /// High hysteresis threshold, as a fraction of the maximum gradient.
    #[arg(long, default_value_t = 0.30)]
    high: f32,

    /// Fraction of a region's pixels that must pass the HSV rule for the
    /// whole region to count as skin (strictly-greater comparison).
    #[arg(long, default_value_t = DEFAULT_SKIN_FRACTION)]
    skin_fraction: f32,
}

impl SegmentParams {
    fn canny(&self) -> Result<CannyParams> {
        Ok(CannyParams::new(self.sigma, self.low, self.high)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run per-pixel skin rules over images and render mask files
    /// (black = skin, white = non-skin).
    Classify {
        #[command(flatten)]
        selection: Selection,

        /// Output directory for rendered masks.
        #[arg(long, default_value = ".")]
        out: PathBuf,

        /// Images to classify (JPEG or PNG).
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },

    /// Recover ground-truth masks from manually annotated images.
    ExtractGt {
        /// Output directory for rendered masks.
        #[arg(long, default_value = ".")]
        out: PathBuf,

        /// Annotated images (skin painted (0,255,0) or (255,255,0)).
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },

    /// Benchmark classifiers against annotated ground truth and print a
    /// comparison table.
    Evaluate {
        /// Corpus directory (paired by the `name.gt.<ext>` convention) or
        /// manifest file (`original[,annotated]` per line, `#` comments).
        corpus: PathBuf,

        #[command(flatten)]
        selection: Selection,

        /// Write a report file here.
        #[arg(long)]
        report: Option<PathBuf>,

        /// Report format.
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        format: ReportFormat,

        /// Directory holding the `name.gt.<ext>` annotations when they do
        /// not sit beside the originals.
        #[arg(long)]
        gt_dir: Option<PathBuf>,

        /// Per-channel tolerance when validating annotated pairs.
        #[arg(long, default_value_t = DEFAULT_PAIR_TOLERANCE)]
        pair_tolerance: u8,

        /// Evaluate takayama with the full edge/flood-fill pipeline
        /// instead of the plain pixel rule.
        #[arg(long)]
        takayama_pipeline: bool,

        #[command(flatten)]
        params: SegmentParams,
    },

    /// Segment images with the takayama edge/flood-fill pipeline.
    Segment {
        #[command(flatten)]
        params: SegmentParams,

        /// Output directory for rendered masks.
        #[arg(long, default_value = ".")]
        out: PathBuf,

        /// Images to segment (at least 3x3).
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs.map(|n| n as usize);
    let outcome = match jobs {
        Some(n) => {
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool,
                Err(err) => {
                    eprintln!("error: cannot build thread pool: {err}");
                    return ExitCode::FAILURE;
                }
            };
            pool.install(|| run(cli.command))
        }
        None => run(cli.command),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Classify {
            selection,
            out,
            inputs,
        } => {
            let ids = selection.resolve(false)?;
            Ok(cmd_classify(&inputs, &ids, &out)?.success())
        }
        Command::ExtractGt { out, inputs } => Ok(cmd_extract_gt(&inputs, &out)?.success()),
        Command::Evaluate {
            corpus,
            selection,
            report,
            format,
            gt_dir,
            pair_tolerance,
            takayama_pipeline,
            params,
        } => {
            let opts = EvaluateOpts {
                ids: selection.resolve(true)?,
                report_path: report,
                format,
                gt_dir,
                pair_tolerance,
                takayama_pipeline,
                canny: params.canny()?,
                skin_fraction: params.skin_fraction,
            };
            cmd_evaluate(&corpus, &opts)?;
            Ok(true)
        }
        Command::Segment {
            params,
            out,
            inputs,
        } => {
            let canny = params.canny()?;
            Ok(cmd_segment(&inputs, &canny, params.skin_fraction, &out)?.success())
        }
    }
}
