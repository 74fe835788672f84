//! Rule-based skin-color detection for animation and cartoon imagery.
//!
//! The crate bundles eight per-pixel skin classifiers behind one interface:
//! five published baselines (kovac, swift, saleh, osman, and the HSV-based
//! takayama rule) and three RGB-range methods (`method1`..`method3`) whose
//! skin sets nest into one another. Around the classifiers it provides:
//!
//! * [`ground_truth`]: recovering binary skin masks from hand-annotated
//!   images painted with the (0,255,0) / (255,255,0) markers;
//! * [`evaluation`]: pixel-level TP/FP counting, exact integer
//!   aggregation, and CSV/JSON comparison reports;
//! * [`segmentation`]: the takayama region pipeline with Canny edge
//!   extraction, flood-fill labeling, and per-region skin decisions.
//!
//! ```
//! use toonskin::{classify_image, ClassifierId, RasterImage, Rgb8Pixel};
//!
//! let img = RasterImage::filled(2, 2, Rgb8Pixel::new(180, 140, 100)).unwrap();
//! let mask = classify_image(&img, ClassifierId::Method1);
//! assert_eq!(mask.count_ones(), 4);
//! ```

pub mod classifiers;
pub mod colorspace;
mod error;
pub mod evaluation;
pub mod ground_truth;
pub mod segmentation;
pub mod types;

pub use classifiers::{classify_image, list_classifiers, ClassifierId};
pub use colorspace::rgb_to_hsv;
pub use error::{Error, Result};
pub use evaluation::{
    aggregate, compare_classifiers, compare_classifiers_with, evaluate_image, CorpusEntry,
    DatasetReport, EvalCounts, TakayamaVariant,
};
pub use ground_truth::{
    extract_ground_truth, is_annotation_marker, validate_pair, AnnotatedPair,
    DEFAULT_PAIR_TOLERANCE,
};
pub use segmentation::{
    canny_edges, flood_fill_regions, takayama_segment, to_grayscale, CannyParams, GrayImage,
    RegionLabels, DEFAULT_SKIN_FRACTION,
};
pub use types::{BinaryMask, HsvPixel, RasterImage, Rgb8Pixel};
