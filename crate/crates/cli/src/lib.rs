//! Support library for the `paulitree` command-line tool: file formats
//! (matrices, decompositions, circuits), structure autodetection, and the
//! benchmark driver. The binary in `main.rs` is a thin clap layer over
//! these modules; they are exposed as a library so integration tests can
//! drive the same code paths directly.

pub mod bench;
pub mod circuit_io;
pub mod decomp_io;
pub mod error;
pub mod matrix_io;
pub mod structure;

pub use error::{CliError, Result};
