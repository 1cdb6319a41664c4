//! File formats and reference scenarios behind the `hedonic` binary.

pub mod format;
pub mod scenarios;
pub mod trace;

pub use format::{FormatError, InstanceFile, FORMAT_VERSION};
pub use trace::TraceFile;
