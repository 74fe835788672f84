//! File decode/encode for raster images and rendered masks.
//!
//! Masks render to 8-bit grayscale PNG with the convention black = skin (0)
//! and white = non-skin (255). PNG is used even for JPEG inputs so the
//! binary mask survives losslessly.

use std::path::Path;

use anyhow::{bail, Context, Result};
use image::{DynamicImage, GrayImage, ImageReader};

use toonskin::{BinaryMask, RasterImage, Rgb8Pixel};

/// Decodes a JPEG or PNG file into a 3-channel raster image. Any alpha
/// channel is discarded.
pub fn decode_raster(path: &Path) -> Result<RasterImage> {
    let decoded = ImageReader::open(path)
        .with_context(|| format!("cannot open {}", path.display()))?
        .decode()
        .with_context(|| format!("cannot decode {}", path.display()))?;
    let rgb = decoded.to_rgb8();
    let (width, height) = rgb.dimensions();
    let pixels = rgb
        .pixels()
        .map(|p| Rgb8Pixel::new(p.0[0], p.0[1], p.0[2]))
        .collect();
    RasterImage::new(width, height, pixels)
        .with_context(|| format!("{} decodes to an unusable image", path.display()))
}

fn mask_to_gray(mask: &BinaryMask) -> GrayImage {
    let data = mask
        .flags()
        .iter()
        .map(|&f| if f == 1 { 0u8 } else { 255u8 })
        .collect();
    GrayImage::from_raw(mask.width(), mask.height(), data).expect("mask buffer matches dimensions")
}

/// Writes a mask as grayscale PNG, black = skin.
pub fn write_mask_png(mask: &BinaryMask, path: &Path) -> Result<()> {
    mask_to_gray(mask)
        .save(path)
        .with_context(|| format!("cannot write {}", path.display()))
}

/// Reads a rendered mask back; inverse of [`write_mask_png`].
///
/// Strict: the file must be 8-bit grayscale and every pixel exactly 0 or
/// 255, so the round trip reproduces the in-memory flags bit for bit.
pub fn read_mask_png(path: &Path) -> Result<BinaryMask> {
    let decoded = ImageReader::open(path)
        .with_context(|| format!("cannot open {}", path.display()))?
        .decode()
        .with_context(|| format!("cannot decode {}", path.display()))?;
    let DynamicImage::ImageLuma8(gray) = decoded else {
        bail!("{} is not an 8-bit grayscale mask", path.display());
    };
    let (width, height) = gray.dimensions();
    let mut flags = Vec::with_capacity(width as usize * height as usize);
    for &value in gray.as_raw() {
        match value {
            0 => flags.push(1u8),
            255 => flags.push(0u8),
            other => bail!(
                "{} is not a binary mask: pixel value {other} is neither 0 nor 255",
                path.display()
            ),
        }
    }
    BinaryMask::from_flags(width, height, flags)
        .with_context(|| format!("{} has unusable dimensions", path.display()))
}
