use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An image or mask was requested with a zero width or height.
    #[error("invalid dimensions {width}x{height}: both sides must be at least 1")]
    InvalidDimensions { width: u32, height: u32 },

    /// A pixel or flag buffer does not match the stated dimensions.
    #[error("buffer holds {actual} values but {width}x{height} needs {expected}")]
    BufferSizeMismatch {
        width: u32,
        height: u32,
        expected: usize,
        actual: usize,
    },

    /// A mask flag was neither 0 nor 1.
    #[error("mask flag at index {index} is {value}; flags must be 0 or 1")]
    InvalidFlag { index: usize, value: u8 },

    /// Two grids that must share dimensions do not.
    #[error("dimension mismatch: {left_width}x{left_height} vs {right_width}x{right_height}")]
    DimensionMismatch {
        left_width: u32,
        left_height: u32,
        right_width: u32,
        right_height: u32,
    },

    /// A classifier name did not parse.
    #[error("unknown classifier `{0}`")]
    UnknownClassifier(String),

    /// Edge detection needs a minimum image size.
    #[error("image is {width}x{height}; edge detection needs at least {min}x{min}")]
    ImageTooSmall { width: u32, height: u32, min: u32 },

    /// A numeric parameter was outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Aggregation was asked to run over zero images.
    #[error("empty dataset: nothing to aggregate")]
    EmptyDataset,

    /// An error tied to a named corpus entry.
    #[error("{name}: {source}")]
    Entry {
        name: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps an error with the corpus entry (usually a file name) it came from.
    pub fn in_entry(name: impl Into<String>, source: Error) -> Self {
        Error::Entry {
            name: name.into(),
            source: Box::new(source),
        }
    }
}
