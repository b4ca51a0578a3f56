//! File formats, output writers, the delay profiler and the command-line
//! front end for `suptree-core`.

pub mod cli;
pub mod format;
pub mod output;
pub mod profile;

pub use cli::run;
pub use format::{parse_network, parse_raw, serialize_network, ParseError};
