//! Text notations: Roman numerals and semicolon positional numbers.

mod positional;
mod roman;

pub use positional::{format_positional, parse_positional, ParsedPositional, Style};
pub use roman::{board_roman_reading, format_roman, parse_roman, RomanStyle, ROMAN_MAX};
