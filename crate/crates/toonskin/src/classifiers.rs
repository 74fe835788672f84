//! Per-pixel skin rules and whole-image application.
//!
//! Eight rules sit behind one uniform interface: five published baselines
//! (kovac, swift, saleh, osman, takayama) and three RGB-range methods
//! (method1, method2, method3) that differ only in how strictly R must
//! exceed G and G must exceed B. All rules are pure, deterministic, total
//! functions of one pixel; every inequality is implemented exactly as
//! published, strict where written strict. Ratio rules use integer
//! cross-multiplication so results are bit-exact on every platform.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::colorspace::rgb_to_hsv;
use crate::error::Error;
use crate::types::{BinaryMask, RasterImage, Rgb8Pixel};

/// Identifier for one of the eight skin classifiers.
///
/// Parses from and formats to the lowercase names `kovac`, `swift`, `saleh`,
/// `osman`, `takayama`, `method1`, `method2`, `method3` (a stable CLI
/// contract).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassifierId {
    Kovac,
    Swift,
    Saleh,
    Osman,
    Takayama,
    Method1,
    Method2,
    Method3,
}

impl ClassifierId {
    /// All classifiers in registry order.
    pub const ALL: [ClassifierId; 8] = [
        ClassifierId::Kovac,
        ClassifierId::Swift,
        ClassifierId::Saleh,
        ClassifierId::Osman,
        ClassifierId::Takayama,
        ClassifierId::Method1,
        ClassifierId::Method2,
        ClassifierId::Method3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassifierId::Kovac => "kovac",
            ClassifierId::Swift => "swift",
            ClassifierId::Saleh => "saleh",
            ClassifierId::Osman => "osman",
            ClassifierId::Takayama => "takayama",
            ClassifierId::Method1 => "method1",
            ClassifierId::Method2 => "method2",
            ClassifierId::Method3 => "method3",
        }
    }

    /// Applies this classifier's per-pixel rule.
    ///
    /// For `Takayama` this is the HSV pixel rule only; the full
    /// edge/flood-fill pipeline lives in [`crate::segmentation`].
    pub fn classify(self, p: Rgb8Pixel) -> bool {
        match self {
            ClassifierId::Kovac => kovac(p),
            ClassifierId::Swift => swift(p),
            ClassifierId::Saleh => saleh(p),
            ClassifierId::Osman => osman(p),
            ClassifierId::Takayama => takayama(p),
            ClassifierId::Method1 => method1(p),
            ClassifierId::Method2 => method2(p),
            ClassifierId::Method3 => method3(p),
        }
    }
}

impl fmt::Display for ClassifierId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassifierId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ClassifierId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownClassifier(s.to_string()))
    }
}

/// All eight classifier ids in registry order.
pub fn list_classifiers() -> [ClassifierId; 8] {
    ClassifierId::ALL
}

fn channels(p: Rgb8Pixel) -> (i32, i32, i32) {
    (i32::from(p.r), i32::from(p.g), i32::from(p.b))
}

/// Kovac rule: skin iff R>95, G>40, B>20, max-min>15, |R-G|>15, R>G, R>B.
pub fn kovac(p: Rgb8Pixel) -> bool {
    let (r, g, b) = channels(p);
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    r > 95 && g > 40 && b > 20 && max - min > 15 && (r - g).abs() > 15 && r > g && r > b
}

/// Swift rule: skin unless B>R, G<B, G>R, B<R/4, or B>200.
///
/// `B < R/4` is evaluated as `4B < R` to stay in integer arithmetic.
pub fn swift(p: Rgb8Pixel) -> bool {
    let (r, g, b) = channels(p);
    let excluded = b > r || g < b || g > r || 4 * b < r || b > 200;
    !excluded
}

/// Saleh rule: skin iff 20 < R-G < 80.
pub fn saleh(p: Rgb8Pixel) -> bool {
    let (r, g, _) = channels(p);
    r - g > 20 && r - g < 80
}

/// Osman ratio rule: skin iff 0 <= (R-G)/(R+G) <= 0.5 and B/(R+G) <= 0.5.
///
/// Cross-multiplied to integers: R >= G, 2(R-G) <= R+G, 2B <= R+G. Black
/// (R+G = 0) is non-skin, which sidesteps the undefined ratios.
pub fn osman(p: Rgb8Pixel) -> bool {
    let (r, g, b) = channels(p);
    let sum = r + g;
    sum > 0 && r >= g && 2 * (r - g) <= sum && 2 * b <= sum
}

/// Takayama pixel rule: skin iff hue in [0, 40] degrees and value > 0.75.
pub fn takayama(p: Rgb8Pixel) -> bool {
    let hsv = rgb_to_hsv(p);
    (0.0..=40.0).contains(&hsv.h) && hsv.v > 0.75
}

fn in_rgb_ranges(r: i32, g: i32, b: i32) -> bool {
    120 < r && r < 255 && 90 < g && g < 250 && 70 < b && b < 218
}

/// Method-I: range conditions plus R > G+10 and G > B+10.
pub fn method1(p: Rgb8Pixel) -> bool {
    let (r, g, b) = channels(p);
    in_rgb_ranges(r, g, b) && r > g + 10 && g > b + 10
}

/// Method-II: range conditions plus R > G+10 and G > B.
pub fn method2(p: Rgb8Pixel) -> bool {
    let (r, g, b) = channels(p);
    in_rgb_ranges(r, g, b) && r > g + 10 && g > b
}

/// Method-III: range conditions plus R > G and G > B.
pub fn method3(p: Rgb8Pixel) -> bool {
    let (r, g, b) = channels(p);
    in_rgb_ranges(r, g, b) && r > g && g > b
}

/// Applies one classifier's pixel rule to every pixel of an image.
///
/// The output mask has the image's dimensions; the flag at `(x, y)` is the
/// rule applied to the pixel at `(x, y)`.
pub fn classify_image(img: &RasterImage, id: ClassifierId) -> BinaryMask {
    let flags = img
        .pixels()
        .iter()
        .map(|&p| u8::from(id.classify(p)))
        .collect();
    BinaryMask::from_flags(img.width(), img.height(), flags)
        .expect("image dimensions are valid for a mask")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn px(r: u8, g: u8, b: u8) -> Rgb8Pixel {
        Rgb8Pixel::new(r, g, b)
    }

    #[test]
    fn kovac_examples() {
        assert!(kovac(px(151, 101, 50)));
        assert!(!kovac(px(95, 101, 50))); // R > 95 fails at the boundary
        assert!(!kovac(px(200, 190, 20))); // |R-G| = 10
    }

    #[test]
    fn swift_examples() {
        assert!(swift(px(200, 150, 100))); // 4*100 >= 200, nothing fires
        assert!(!swift(px(100, 150, 120))); // G > R
        assert!(!swift(px(210, 205, 201))); // B > 200
    }

    #[test]
    fn saleh_examples() {
        assert!(saleh(px(150, 120, 200))); // B unconstrained
        assert!(!saleh(px(150, 130, 0))); // R-G = 20, strict
        assert!(!saleh(px(200, 100, 0))); // R-G = 100
    }

    #[test]
    fn osman_examples() {
        assert!(osman(px(150, 100, 120))); // 0.2 and 0.48
        assert!(!osman(px(100, 150, 50))); // negative ratio
        assert!(!osman(px(0, 0, 0))); // degenerate denominator
    }

    #[test]
    fn takayama_examples() {
        assert!(takayama(px(255, 170, 0))); // hue exactly 40, inclusive
        assert!(!takayama(px(100, 60, 20))); // value too low
        assert!(!takayama(px(0, 255, 0))); // hue 120
    }

    #[test]
    fn method1_examples() {
        assert!(method1(px(180, 140, 100)));
        assert!(!method1(px(255, 140, 100))); // R < 255 strict
        assert!(!method1(px(180, 140, 135))); // G > B+10 fails
    }

    #[test]
    fn method2_examples() {
        assert!(method2(px(180, 140, 135))); // G > B holds
        assert!(!method2(px(180, 175, 100))); // R > G+10 fails
        assert!(method2(px(180, 140, 100)));
    }

    #[test]
    fn method3_examples() {
        assert!(method3(px(180, 175, 100)));
        assert!(method3(px(180, 140, 135)));
        assert!(!method3(px(180, 180, 100))); // R > G strict
    }

    #[test]
    fn classify_image_single_pixel() {
        let img = RasterImage::filled(1, 1, px(151, 101, 50)).unwrap();
        let mask = classify_image(&img, ClassifierId::Kovac);
        assert_eq!(mask.flags(), &[1]);
    }

    #[test]
    fn classify_image_row() {
        let img = RasterImage::new(
            3,
            1,
            vec![px(180, 140, 100), px(255, 140, 100), px(0, 0, 0)],
        )
        .unwrap();
        let mask = classify_image(&img, ClassifierId::Method1);
        assert_eq!(mask.flags(), &[1, 0, 0]);
    }

    #[test]
    fn registry_order_and_roundtrip() {
        let ids = list_classifiers();
        assert_eq!(ids.len(), 8);
        let names: Vec<&str> = ids.iter().map(|id| id.name()).collect();
        assert_eq!(
            names,
            ["kovac", "swift", "saleh", "osman", "takayama", "method1", "method2", "method3"]
        );
        for id in ids {
            assert_eq!(id.name().parse::<ClassifierId>().unwrap(), id);
        }
        assert!("mystery".parse::<ClassifierId>().is_err());
    }

    proptest! {
        #[test]
        fn methods_nest(r in any::<u8>(), g in any::<u8>(), b in any::<u8>()) {
            let p = px(r, g, b);
            if method1(p) {
                prop_assert!(method2(p));
            }
            if method2(p) {
                prop_assert!(method3(p));
            }
        }

        #[test]
        fn kovac_abs_conjunct_collapses_to_r_gt_g_plus_15(
            r in any::<u8>(),
            g in any::<u8>(),
            b in any::<u8>(),
        ) {
            // Inside the R > G half-plane, |R-G| > 15 is the same as R > G+15.
            let p = px(r, g, b);
            let (ri, gi, bi) = (i32::from(r), i32::from(g), i32::from(b));
            let max = ri.max(gi).max(bi);
            let min = ri.min(gi).min(bi);
            let simplified = ri > 95
                && gi > 40
                && bi > 20
                && max - min > 15
                && ri > gi + 15
                && ri > bi;
            prop_assert_eq!(kovac(p), simplified);
        }

        #[test]
        fn image_application_commutes_with_pixel_rule(
            pixels in proptest::collection::vec(any::<(u8, u8, u8)>(), 1..64),
            which in 0usize..8,
        ) {
            let id = ClassifierId::ALL[which];
            let w = pixels.len() as u32;
            let img = RasterImage::new(w, 1, pixels.iter().map(|&t| Rgb8Pixel::from(t)).collect()).unwrap();
            let mask = classify_image(&img, id);
            prop_assert_eq!(mask.dimensions(), img.dimensions());
            for x in 0..w {
                prop_assert_eq!(mask.get(x, 0), id.classify(img.get(x, 0)));
            }
        }
    }
}
