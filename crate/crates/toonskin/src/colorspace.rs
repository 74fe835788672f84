//! RGB to HSV conversion.
//!
//! Uses the hexcone convention: hue in degrees in `[0, 360)`, saturation and
//! value as fractions in `[0, 1]`. Achromatic pixels (zero chroma) get hue 0
//! and saturation 0.

use crate::types::{HsvPixel, Rgb8Pixel};

/// Converts one 8-bit RGB sample to HSV.
///
/// Hue is computed as `60 * diff / chroma` with the multiplication done
/// first, so boundary hues that are exact rationals (e.g. 40 degrees for
/// (255, 170, 0)) come out exact in double precision.
pub fn rgb_to_hsv(p: Rgb8Pixel) -> HsvPixel {
    let r = f64::from(p.r);
    let g = f64::from(p.g);
    let b = f64::from(p.b);
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let chroma = max - min;

    let v = max / 255.0;
    let s = if max == 0.0 { 0.0 } else { chroma / max };
    let h = if chroma == 0.0 {
        0.0
    } else if max == r {
        let h = (60.0 * (g - b)) / chroma;
        if h < 0.0 {
            h + 360.0
        } else {
            h
        }
    } else if max == g {
        (60.0 * (b - r)) / chroma + 120.0
    } else {
        (60.0 * (r - g)) / chroma + 240.0
    };

    HsvPixel { h, s, v }
}
