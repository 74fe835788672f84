//! Edge-based region pipeline used by the Takayama-style segmenter:
//! Canny edge extraction, flood-fill region labeling, and a region-level
//! skin decision driven by the HSV pixel rule.

use crate::classifiers;
use crate::error::{Error, Result};
use crate::types::{BinaryMask, RasterImage};

/// Minimum image side for edge detection.
const MIN_EDGE_SIZE: u32 = 3;

/// A width x height grid of intensities in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    intensities: Vec<f32>,
}

impl GrayImage {
    /// Builds a grayscale image, validating the intensity range.
    pub fn new(width: u32, height: u32, intensities: Vec<f32>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidDimensions { width, height });
        }
        let expected = width as usize * height as usize;
        if intensities.len() != expected {
            return Err(Error::BufferSizeMismatch {
                width,
                height,
                expected,
                actual: intensities.len(),
            });
        }
        if intensities.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidParameter(
                "grayscale intensities must lie in [0, 1]".to_string(),
            ));
        }
        Ok(Self {
            width,
            height,
            intensities,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn intensities(&self) -> &[f32] {
        &self.intensities
    }

    pub fn get(&self, x: u32, y: u32) -> f32 {
        self.intensities[y as usize * self.width as usize + x as usize]
    }
}

/// Canny edge-detector parameters.
///
/// Thresholds are fractions of the image's maximum gradient magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CannyParams {
    pub sigma: f32,
    pub low: f32,
    pub high: f32,
}

impl CannyParams {
    /// Validated constructor: `sigma > 0` and `0 < low <= high <= 1`.
    pub fn new(sigma: f32, low: f32, high: f32) -> Result<Self> {
        if sigma.is_nan() || sigma <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        if !(low > 0.0 && low <= high && high <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "thresholds must satisfy 0 < low <= high <= 1, got low={low} high={high}"
            )));
        }
        Ok(Self { sigma, low, high })
    }
}

impl Default for CannyParams {
    fn default() -> Self {
        Self {
            sigma: 1.4,
            low: 0.10,
            high: 0.30,
        }
    }
}

/// Default majority-vote threshold for judging a region skin.
pub const DEFAULT_SKIN_FRACTION: f32 = 0.5;

/// Per-pixel region labels: 0 marks edge pixels, labels >= 1 are 4-connected
/// regions numbered in raster-scan order of first encounter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionLabels {
    width: u32,
    height: u32,
    labels: Vec<u32>,
    region_count: u32,
}

impl RegionLabels {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, x: u32, y: u32) -> u32 {
        self.labels[y as usize * self.width as usize + x as usize]
    }

    /// Number of distinct regions (the largest label).
    pub fn region_count(&self) -> u32 {
        self.region_count
    }
}

/// Converts to intensity with the BT.601 luma weights
/// `(0.299 R + 0.587 G + 0.114 B) / 255`.
pub fn to_grayscale(img: &RasterImage) -> GrayImage {
    let intensities = img
        .pixels()
        .iter()
        .map(|p| {
            let luma = 0.299 * f32::from(p.r) + 0.587 * f32::from(p.g) + 0.114 * f32::from(p.b);
            (luma / 255.0).clamp(0.0, 1.0)
        })
        .collect();
    GrayImage {
        width: img.width(),
        height: img.height(),
        intensities,
    }
}

/// Canny edge extraction: Gaussian smoothing, 3x3 Sobel gradients,
/// non-maximum suppression over four quantized directions, and
/// double-threshold hysteresis. Thresholds are taken as fractions of the
/// maximum gradient magnitude, so the detector adapts to image contrast.
///
/// Output flags are 1 on edge pixels. Deterministic for fixed inputs.
pub fn canny_edges(gray: &GrayImage, params: &CannyParams) -> Result<BinaryMask> {
    CannyParams::new(params.sigma, params.low, params.high)?;
    let (w, h) = (gray.width, gray.height);
    if w < MIN_EDGE_SIZE || h < MIN_EDGE_SIZE {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            min: MIN_EDGE_SIZE,
        });
    }

    let blurred = gaussian_blur(gray, params.sigma);
    let (gx, gy) = sobel_gradients(&blurred, w, h);

    let len = w as usize * h as usize;
    let mut magnitude = vec![0.0f32; len];
    let mut max_magnitude = 0.0f32;
    for i in 0..len {
        let m = gx[i].hypot(gy[i]);
        magnitude[i] = m;
        if m > max_magnitude {
            max_magnitude = m;
        }
    }
    // Constant image: zero gradient everywhere, no edges.
    if max_magnitude == 0.0 {
        return BinaryMask::new(w, h);
    }

    let thinned = non_maximum_suppression(&magnitude, &gx, &gy, w, h);
    let low_threshold = params.low * max_magnitude;
    let high_threshold = params.high * max_magnitude;
    Ok(hysteresis(&thinned, w, h, low_threshold, high_threshold))
}

/// Separable Gaussian blur with kernel radius `ceil(3 sigma)` and
/// edge-value replication at the borders.
fn gaussian_blur(gray: &GrayImage, sigma: f32) -> Vec<f32> {
    let radius = (3.0 * sigma).ceil() as i64;
    let mut kernel = Vec::with_capacity((2 * radius + 1) as usize);
    let denom = 2.0 * f64::from(sigma) * f64::from(sigma);
    for i in -radius..=radius {
        kernel.push((-((i * i) as f64) / denom).exp());
    }
    let sum: f64 = kernel.iter().sum();
    let kernel: Vec<f32> = kernel.iter().map(|k| (k / sum) as f32).collect();

    let (w, h) = (gray.width as i64, gray.height as i64);
    let src = &gray.intensities;

    // Horizontal pass
    let mut tmp = vec![0.0f32; src.len()];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0f32;
            for (k, weight) in kernel.iter().enumerate() {
                let sx = (x + k as i64 - radius).clamp(0, w - 1);
                acc += weight * src[(y * w + sx) as usize];
            }
            tmp[(y * w + x) as usize] = acc;
        }
    }
    // Vertical pass
    let mut out = vec![0.0f32; src.len()];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0f32;
            for (k, weight) in kernel.iter().enumerate() {
                let sy = (y + k as i64 - radius).clamp(0, h - 1);
                acc += weight * tmp[(sy * w + x) as usize];
            }
            out[(y * w + x) as usize] = acc;
        }
    }
    out
}

/// 3x3 Sobel gradients with edge-value replication.
fn sobel_gradients(blurred: &[f32], w: u32, h: u32) -> (Vec<f32>, Vec<f32>) {
    let (wi, hi) = (w as i64, h as i64);
    let at = |x: i64, y: i64| -> f32 {
        let cx = x.clamp(0, wi - 1);
        let cy = y.clamp(0, hi - 1);
        blurred[(cy * wi + cx) as usize]
    };
    let mut gx = vec![0.0f32; blurred.len()];
    let mut gy = vec![0.0f32; blurred.len()];
    for y in 0..hi {
        for x in 0..wi {
            let tl = at(x - 1, y - 1);
            let tc = at(x, y - 1);
            let tr = at(x + 1, y - 1);
            let ml = at(x - 1, y);
            let mr = at(x + 1, y);
            let bl = at(x - 1, y + 1);
            let bc = at(x, y + 1);
            let br = at(x + 1, y + 1);
            let i = (y * wi + x) as usize;
            gx[i] = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
            gy[i] = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
        }
    }
    (gx, gy)
}

fn non_maximum_suppression(magnitude: &[f32], gx: &[f32], gy: &[f32], w: u32, h: u32) -> Vec<f32> {
    let (wi, hi) = (w as usize, h as usize);
    let mut out = vec![0.0f32; magnitude.len()];
    for y in 1..hi - 1 {
        for x in 1..wi - 1 {
            let i = y * wi + x;
            let m = magnitude[i];
            if m == 0.0 {
                continue;
            }
            let mut angle = gy[i].atan2(gx[i]).to_degrees();
            if angle < 0.0 {
                angle += 180.0;
            }
            // Two neighbors along the quantized gradient direction, ordered
            // so `a` comes first in raster order; ties break toward the
            // earlier pixel, keeping edges one pixel thin.
            let (a, b) = if !(22.5..157.5).contains(&angle) {
                (i - 1, i + 1)
            } else if angle < 67.5 {
                (i - wi - 1, i + wi + 1)
            } else if angle < 112.5 {
                (i - wi, i + wi)
            } else {
                (i - wi + 1, i + wi - 1)
            };
            if m > magnitude[a] && m >= magnitude[b] {
                out[i] = m;
            }
        }
    }
    out
}

/// Double-threshold hysteresis: breadth-first growth from strong pixels
/// through 8-connected neighbors at or above the low threshold.
fn hysteresis(thinned: &[f32], w: u32, h: u32, low: f32, high: f32) -> BinaryMask {
    let (wi, hi) = (w as usize, h as usize);
    let mut mask = BinaryMask::new(w, h).expect("validated dimensions");
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let interior = |x: usize, y: usize| x >= 1 && x < wi - 1 && y >= 1 && y < hi - 1;
    for y in 1..hi - 1 {
        for x in 1..wi - 1 {
            if thinned[y * wi + x] < high || mask.get(x as u32, y as u32) {
                continue;
            }
            mask.set(x as u32, y as u32, true);
            stack.push((x, y));
            while let Some((cx, cy)) = stack.pop() {
                for dy in -1i64..=1 {
                    for dx in -1i64..=1 {
                        if dx == 0 && dy == 0 {
                            continue;
                        }
                        let nx = (cx as i64 + dx) as usize;
                        let ny = (cy as i64 + dy) as usize;
                        if !interior(nx, ny)
                            || thinned[ny * wi + nx] < low
                            || mask.get(nx as u32, ny as u32)
                        {
                            continue;
                        }
                        mask.set(nx as u32, ny as u32, true);
                        stack.push((nx, ny));
                    }
                }
            }
        }
    }
    mask
}

/// Partitions non-edge pixels into maximal 4-connected regions.
///
/// Regions are labeled 1..K in raster-scan order of first encounter; edge
/// pixels keep label 0.
pub fn flood_fill_regions(edges: &BinaryMask) -> RegionLabels {
    let (w, h) = (edges.width() as usize, edges.height() as usize);
    let flags = edges.flags();
    let mut labels = vec![0u32; flags.len()];
    let mut next_label = 0u32;
    let mut queue: Vec<usize> = Vec::new();

    for start in 0..flags.len() {
        if flags[start] == 1 || labels[start] != 0 {
            continue;
        }
        next_label += 1;
        labels[start] = next_label;
        queue.push(start);
        while let Some(i) = queue.pop() {
            let (x, y) = (i % w, i / w);
            let mut visit = |j: usize| {
                if flags[j] == 0 && labels[j] == 0 {
                    labels[j] = next_label;
                    queue.push(j);
                }
            };
            if x > 0 {
                visit(i - 1);
            }
            if x + 1 < w {
                visit(i + 1);
            }
            if y > 0 {
                visit(i - w);
            }
            if y + 1 < h {
                visit(i + w);
            }
        }
    }

    RegionLabels {
        width: edges.width(),
        height: edges.height(),
        labels,
        region_count: next_label,
    }
}

/// Full Takayama-style segmentation: Canny edges, flood-fill labeling, then
/// a region is marked skin iff the fraction of its pixels passing the HSV
/// pixel rule strictly exceeds `skin_fraction`.
///
/// Edge pixels are never skin in the output.
pub fn takayama_segment(
    img: &RasterImage,
    params: &CannyParams,
    skin_fraction: f32,
) -> Result<BinaryMask> {
    if !(0.0..=1.0).contains(&skin_fraction) {
        return Err(Error::InvalidParameter(format!(
            "skin fraction must lie in [0, 1], got {skin_fraction}"
        )));
    }

    let edges = canny_edges(&to_grayscale(img), params)?;
    let regions = flood_fill_regions(&edges);

    let region_count = regions.region_count() as usize;
    let mut totals = vec![0u64; region_count + 1];
    let mut passing = vec![0u64; region_count + 1];
    for (label, pixel) in regions.labels().iter().zip(img.pixels()) {
        let label = *label as usize;
        if label == 0 {
            continue;
        }
        totals[label] += 1;
        passing[label] += u64::from(classifiers::takayama(*pixel));
    }

    let skin_region: Vec<bool> = totals
        .iter()
        .zip(&passing)
        .map(|(&total, &pass)| total > 0 && (pass as f64 / total as f64) > f64::from(skin_fraction))
        .collect();

    let flags = regions
        .labels()
        .iter()
        .map(|&label| u8::from(label != 0 && skin_region[label as usize]))
        .collect();
    BinaryMask::from_flags(img.width(), img.height(), flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Rgb8Pixel;

    fn px(r: u8, g: u8, b: u8) -> Rgb8Pixel {
        Rgb8Pixel::new(r, g, b)
    }

    #[test]
    fn grayscale_extremes() {
        let white = to_grayscale(&RasterImage::filled(2, 2, px(255, 255, 255)).unwrap());
        assert!(white.intensities().iter().all(|&v| (v - 1.0).abs() < 1e-6));
        let black = to_grayscale(&RasterImage::filled(2, 2, px(0, 0, 0)).unwrap());
        assert!(black.intensities().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn grayscale_luma_weights() {
        let red = to_grayscale(&RasterImage::filled(1, 1, px(255, 0, 0)).unwrap());
        assert!((red.get(0, 0) - 0.299).abs() < 1e-6);
        let green = to_grayscale(&RasterImage::filled(1, 1, px(0, 255, 0)).unwrap());
        assert!((green.get(0, 0) - 0.587).abs() < 1e-6);
        let blue = to_grayscale(&RasterImage::filled(1, 1, px(0, 0, 255)).unwrap());
        assert!((blue.get(0, 0) - 0.114).abs() < 1e-6);
    }

    #[test]
    fn gray_image_range_validated() {
        assert!(GrayImage::new(2, 1, vec![0.0, 1.5]).is_err());
        assert!(GrayImage::new(2, 1, vec![0.0, 1.0]).is_ok());
    }

    #[test]
    fn constant_image_has_no_edges() {
        let gray = GrayImage::new(16, 16, vec![0.42; 256]).unwrap();
        let edges = canny_edges(&gray, &CannyParams::default()).unwrap();
        assert_eq!(edges.count_ones(), 0);
    }

    #[test]
    fn vertical_step_produces_a_line_near_the_step() {
        let (w, h) = (24u32, 16u32);
        let step = w / 2; // first bright column
        let gray = GrayImage::new(
            w,
            h,
            (0..w * h)
                .map(|i| if i % w >= step { 1.0 } else { 0.0 })
                .collect(),
        )
        .unwrap();
        let edges = canny_edges(&gray, &CannyParams::default()).unwrap();
        assert!(edges.count_ones() > 0);
        for y in 0..h {
            for x in 0..w {
                if edges.get(x, y) {
                    let dx = (f64::from(x) - f64::from(step)).abs();
                    assert!(dx <= 1.0, "edge pixel at x={x}, step at {step}");
                }
            }
        }
    }

    #[test]
    fn edge_detection_is_deterministic() {
        let gray = GrayImage::new(
            20,
            20,
            (0..400)
                .map(|i| ((i * 7919) % 256) as f32 / 255.0)
                .collect(),
        )
        .unwrap();
        let first = canny_edges(&gray, &CannyParams::default()).unwrap();
        let second = canny_edges(&gray, &CannyParams::default()).unwrap();
        assert_eq!(first, second);
        assert!(first.count_ones() > 0);
    }

    #[test]
    fn too_small_image_rejected() {
        let gray = GrayImage::new(2, 2, vec![0.0; 4]).unwrap();
        assert!(matches!(
            canny_edges(&gray, &CannyParams::default()),
            Err(Error::ImageTooSmall { .. })
        ));
    }

    #[test]
    fn bad_params_rejected() {
        assert!(CannyParams::new(0.0, 0.1, 0.3).is_err());
        assert!(CannyParams::new(1.4, 0.0, 0.3).is_err());
        assert!(CannyParams::new(1.4, 0.4, 0.3).is_err());
        assert!(CannyParams::new(1.4, 0.1, 1.2).is_err());
    }

    #[test]
    fn no_edges_yields_single_region() {
        let edges = BinaryMask::new(5, 4).unwrap();
        let regions = flood_fill_regions(&edges);
        assert_eq!(regions.region_count(), 1);
        assert!(regions.labels().iter().all(|&l| l == 1));
    }

    #[test]
    fn full_row_edge_splits_two_regions() {
        let edges = BinaryMask::from_fn(6, 5, |_, y| y == 2).unwrap();
        let regions = flood_fill_regions(&edges);
        assert_eq!(regions.region_count(), 2);
        assert_eq!(regions.label(3, 0), 1);
        assert_eq!(regions.label(3, 2), 0);
        assert_eq!(regions.label(3, 4), 2);
    }

    #[test]
    fn all_edges_yields_zero_regions() {
        let edges = BinaryMask::from_flags(3, 3, vec![1; 9]).unwrap();
        let regions = flood_fill_regions(&edges);
        assert_eq!(regions.region_count(), 0);
        assert!(regions.labels().iter().all(|&l| l == 0));
    }

    #[test]
    fn labels_follow_raster_scan_order() {
        // Vertical edge column splits left and right; left is encountered first.
        let edges = BinaryMask::from_fn(5, 3, |x, _| x == 2).unwrap();
        let regions = flood_fill_regions(&edges);
        assert_eq!(regions.label(0, 0), 1);
        assert_eq!(regions.label(4, 0), 2);
    }

    #[test]
    fn uniform_skin_image_segments_entirely() {
        // hue ~27 degrees, value 1: passes the HSV rule everywhere
        let img = RasterImage::filled(12, 12, px(255, 170, 100)).unwrap();
        let mask = takayama_segment(&img, &CannyParams::default(), DEFAULT_SKIN_FRACTION).unwrap();
        assert_eq!(mask.count_ones(), 144);
    }

    #[test]
    fn uniform_blue_image_segments_nothing() {
        let img = RasterImage::filled(12, 12, px(0, 0, 255)).unwrap();
        let mask = takayama_segment(&img, &CannyParams::default(), DEFAULT_SKIN_FRACTION).unwrap();
        assert_eq!(mask.count_ones(), 0);
    }

    #[test]
    fn skin_fraction_boundaries_are_strict() {
        let img = RasterImage::filled(8, 8, px(255, 170, 100)).unwrap();
        // Every pixel passes, fraction = 1.0: strictly-greater comparison
        // means even 1.0 never exceeds a threshold of 1.0.
        let all = takayama_segment(&img, &CannyParams::default(), 1.0).unwrap();
        assert_eq!(all.count_ones(), 0);
        let any = takayama_segment(&img, &CannyParams::default(), 0.0).unwrap();
        assert_eq!(any.count_ones(), 64);
    }

    #[test]
    fn skin_fraction_out_of_range_rejected() {
        let img = RasterImage::filled(8, 8, px(0, 0, 255)).unwrap();
        assert!(takayama_segment(&img, &CannyParams::default(), 1.5).is_err());
        assert!(takayama_segment(&img, &CannyParams::default(), -0.1).is_err());
    }
}
