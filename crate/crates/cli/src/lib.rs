//! Command-line front end for `twisted-su`: argument parsing, dispatch and
//! the output formats.

pub mod args;
pub mod output;
pub mod run;

pub use args::{parse_complex, parse_ratio, CliConfig, Command, Format};
pub use output::{parse_matrix, serialize_matrix, serialize_report, ParsedMatrix};
pub use run::{main_with, run, CliError, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_NUMERICAL, EXIT_PASS};
