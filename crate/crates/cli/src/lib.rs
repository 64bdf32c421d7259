//! Command line and HTTP front end for the counting-board engine.

pub mod analyze;
pub mod api;
pub mod compute;
pub mod convert;

/// `ABAX_COLOR=1` turns on ANSI colors in board pictures.
pub fn color_from_env() -> bool {
    std::env::var("ABAX_COLOR").map(|v| v == "1").unwrap_or(false)
}
