//! Ground-truth recovery from manually annotated images.
//!
//! Annotators paint skin with (0, 255, 0) or (255, 255, 0); the marker rule
//! accepts a small range around each paint color so re-encoded files still
//! extract cleanly.

use crate::error::{Error, Result};
use crate::types::{BinaryMask, RasterImage, Rgb8Pixel};

/// Default per-channel tolerance for [`validate_pair`]. JPEG re-encoding
/// after painting perturbs untouched pixels slightly.
pub const DEFAULT_PAIR_TOLERANCE: u8 = 2;

/// An original image together with its hand-annotated counterpart.
///
/// Construction enforces that both images share dimensions.
#[derive(Debug, Clone)]
pub struct AnnotatedPair {
    original: RasterImage,
    annotated: RasterImage,
}

impl AnnotatedPair {
    pub fn new(original: RasterImage, annotated: RasterImage) -> Result<Self> {
        if original.dimensions() != annotated.dimensions() {
            return Err(Error::DimensionMismatch {
                left_width: original.width(),
                left_height: original.height(),
                right_width: annotated.width(),
                right_height: annotated.height(),
            });
        }
        Ok(Self {
            original,
            annotated,
        })
    }

    pub fn original(&self) -> &RasterImage {
        &self.original
    }

    pub fn annotated(&self) -> &RasterImage {
        &self.annotated
    }
}

/// True iff the pixel is one of the annotation paint colors:
/// (R<120 and G>200 and B<100) or (R>200 and G>200 and B<100).
pub fn is_annotation_marker(p: Rgb8Pixel) -> bool {
    let (r, g, b) = (i32::from(p.r), i32::from(p.g), i32::from(p.b));
    (r < 120 && g > 200 && b < 100) || (r > 200 && g > 200 && b < 100)
}

/// Recovers the binary skin mask from an annotated image: flag 1 exactly
/// where [`is_annotation_marker`] holds.
pub fn extract_ground_truth(annotated: &RasterImage) -> BinaryMask {
    let flags = annotated
        .pixels()
        .iter()
        .map(|&p| u8::from(is_annotation_marker(p)))
        .collect();
    BinaryMask::from_flags(annotated.width(), annotated.height(), flags)
        .expect("image dimensions are valid for a mask")
}

/// Outcome of checking an annotated pair for annotation spill or wrong
/// pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairValidation {
    /// Non-marker pixels in the annotated image whose channels differ from
    /// the original by more than the tolerance.
    pub deviating_pixels: u64,
}

impl PairValidation {
    pub fn is_valid(&self) -> bool {
        self.deviating_pixels == 0
    }
}

/// Counts non-marker pixels of the annotated image that deviate from the
/// original by more than `tolerance` per channel.
///
/// Marker pixels are expected to differ (they were painted); any other
/// deviation indicates annotation spill or a mispaired file. Dimension
/// equality is already guaranteed by [`AnnotatedPair`].
pub fn validate_pair(pair: &AnnotatedPair, tolerance: u8) -> PairValidation {
    let tol = i32::from(tolerance);
    let deviating_pixels = pair
        .original
        .pixels()
        .iter()
        .zip(pair.annotated.pixels())
        .filter(|&(&orig, &ann)| {
            !is_annotation_marker(ann)
                && ((i32::from(orig.r) - i32::from(ann.r)).abs() > tol
                    || (i32::from(orig.g) - i32::from(ann.g)).abs() > tol
                    || (i32::from(orig.b) - i32::from(ann.b)).abs() > tol)
        })
        .count() as u64;
    PairValidation { deviating_pixels }
}
