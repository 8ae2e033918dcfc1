//! Session-file front end for the `weiljets` kernel.
//!
//! A session binds named algebras, jets, A-points, group laws and maps, then
//! runs a list of operations on them. Reports are rendered as canonical JSON
//! (sorted keys, rationals as `"p/q"` strings) or as plain text.

pub mod error;
pub mod execute;
pub mod render;
pub mod session;

pub use error::CliError;
pub use execute::{execute, Options, Report};
pub use render::{render, Format};
pub use session::{parse_session, Session};

/// Parses, executes and renders a session in one step.
pub fn run_session(text: &str, options: Options, format: Format) -> Result<(String, Report), CliError> {
    let session = parse_session(text)?;
    let report = execute(&session, options);
    Ok((render(&report, format), report))
}
