//! Shared value types: pixels, images, and binary masks.
//!
//! All types are immutable values after construction and safe to share
//! across threads.

use crate::error::{Error, Result};

/// One 8-bit-per-channel color sample. Every classifier rule consumes these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rgb8Pixel {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Rgb8Pixel {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Self { r, g, b }
    }
}

impl From<(u8, u8, u8)> for Rgb8Pixel {
    fn from((r, g, b): (u8, u8, u8)) -> Self {
        Self { r, g, b }
    }
}

/// Hue/saturation/value representation of a color.
///
/// `h` is in degrees in `[0, 360)`, `s` and `v` are fractions in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsvPixel {
    pub h: f64,
    pub s: f64,
    pub v: f64,
}

/// A width x height grid of [`Rgb8Pixel`] in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: u32,
    height: u32,
    pixels: Vec<Rgb8Pixel>,
}

impl RasterImage {
    /// Builds an image from a row-major pixel buffer.
    ///
    /// Fails if either dimension is zero or the buffer length is not
    /// `width * height`.
    pub fn new(width: u32, height: u32, pixels: Vec<Rgb8Pixel>) -> Result<Self> {
        check_dimensions(width, height)?;
        let expected = width as usize * height as usize;
        if pixels.len() != expected {
            return Err(Error::BufferSizeMismatch {
                width,
                height,
                expected,
                actual: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Builds an image by evaluating `f` at every `(x, y)`.
    pub fn from_fn(
        width: u32,
        height: u32,
        mut f: impl FnMut(u32, u32) -> Rgb8Pixel,
    ) -> Result<Self> {
        check_dimensions(width, height)?;
        let mut pixels = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Builds a uniform image of one color.
    pub fn filled(width: u32, height: u32, color: Rgb8Pixel) -> Result<Self> {
        check_dimensions(width, height)?;
        Ok(Self {
            width,
            height,
            pixels: vec![color; width as usize * height as usize],
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dimensions(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    /// Row-major pixel buffer.
    pub fn pixels(&self) -> &[Rgb8Pixel] {
        &self.pixels
    }

    /// Pixel at `(x, y)`. Panics if out of bounds.
    pub fn get(&self, x: u32, y: u32) -> Rgb8Pixel {
        assert!(
            x < self.width && y < self.height,
            "pixel ({x}, {y}) out of bounds"
        );
        self.pixels[y as usize * self.width as usize + x as usize]
    }
}

/// A width x height grid of skin/non-skin flags in row-major order.
///
/// Every flag is exactly 0 (non-skin) or 1 (skin). This is the universal
/// classifier output and the ground-truth representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: u32,
    height: u32,
    flags: Vec<u8>,
}

impl BinaryMask {
    /// An all-zero mask of the given size.
    pub fn new(width: u32, height: u32) -> Result<Self> {
        check_dimensions(width, height)?;
        Ok(Self {
            width,
            height,
            flags: vec![0; width as usize * height as usize],
        })
    }

    /// Builds a mask from a row-major flag buffer of 0s and 1s.
    pub fn from_flags(width: u32, height: u32, flags: Vec<u8>) -> Result<Self> {
        check_dimensions(width, height)?;
        let expected = width as usize * height as usize;
        if flags.len() != expected {
            return Err(Error::BufferSizeMismatch {
                width,
                height,
                expected,
                actual: flags.len(),
            });
        }
        if let Some(index) = flags.iter().position(|&f| f > 1) {
            return Err(Error::InvalidFlag {
                index,
                value: flags[index],
            });
        }
        Ok(Self {
            width,
            height,
            flags,
        })
    }

    /// Builds a mask by evaluating a predicate at every `(x, y)`.
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> bool) -> Result<Self> {
        check_dimensions(width, height)?;
        let mut flags = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                flags.push(u8::from(f(x, y)));
            }
        }
        Ok(Self {
            width,
            height,
            flags,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dimensions(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    /// Total number of flags (`width * height`).
    pub fn pixel_count(&self) -> u64 {
        u64::from(self.width) * u64::from(self.height)
    }

    /// Row-major flag buffer; every value is 0 or 1.
    pub fn flags(&self) -> &[u8] {
        &self.flags
    }

    /// Flag at `(x, y)` as a bool. Panics if out of bounds.
    pub fn get(&self, x: u32, y: u32) -> bool {
        assert!(
            x < self.width && y < self.height,
            "flag ({x}, {y}) out of bounds"
        );
        self.flags[y as usize * self.width as usize + x as usize] == 1
    }

    /// Sets the flag at `(x, y)`. Panics if out of bounds.
    pub fn set(&mut self, x: u32, y: u32, skin: bool) {
        assert!(
            x < self.width && y < self.height,
            "flag ({x}, {y}) out of bounds"
        );
        self.flags[y as usize * self.width as usize + x as usize] = u8::from(skin);
    }

    /// Number of flags set to 1.
    pub fn count_ones(&self) -> u64 {
        self.flags.iter().map(|&f| u64::from(f)).sum()
    }

    /// True when `other` has the same width and height.
    pub fn same_dimensions(&self, other: &BinaryMask) -> bool {
        self.width == other.width && self.height == other.height
    }
}

fn check_dimensions(width: u32, height: u32) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidDimensions { width, height });
    }
    Ok(())
}
