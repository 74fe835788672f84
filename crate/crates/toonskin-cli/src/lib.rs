//! Library surface of the `toonskin` command-line tool, split out so the
//! integration tests can drive the commands directly.

pub mod commands;
pub mod imageio;
pub mod manifest;
