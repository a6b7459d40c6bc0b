//! Library side of the `abcover` command-line tool: cover documents,
//! command execution and the built-in example registry. `main.rs` only
//! parses arguments and prints an [`Outcome`].

pub mod commands;
pub mod document;
pub mod registry;

pub use commands::{report_text, run_command, Command, Flags, JsonReport, Outcome};
pub use document::{parse_input, print_document, BranchEntry, CoverDocument, ParseError};
pub use registry::{example_document, lookup, ExampleEntry, Expected, RegistryError, REGISTRY};
