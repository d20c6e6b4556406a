//! File formats and the `symreal` command-line tool built on `symreal-core`.

pub mod cli;
pub mod format;

pub use cli::{run, Check, OutputFormat, RunConfig, RunOutcome, SubcommandKind};
pub use format::{load_poisson, parse_series_document, FormatError, SeriesDocument};
