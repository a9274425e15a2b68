//! Command-line front end: polynomial parsing, reports and the verification
//! suites behind `puiseux verify-paper`.

pub mod commands;
pub mod parse;
pub mod report;
pub mod suite;

pub use commands::{run, Outcome};
pub use parse::{parse_int_poly, parse_monalg, parse_poly, Mode, ParseError, Parsed};
pub use report::{emit_report, Check, Format, Report, Status};
pub use suite::{verify_suite, Selection, SuiteConfig};
