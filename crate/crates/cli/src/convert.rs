use abax_core::codecs::{format_positional, format_roman, parse_positional, parse_roman, RomanStyle, Style};
use abax_core::exactnum::{to_positional, PositionalNumber};
use abax_core::{Error, Rational, Result, Rounding};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Notation {
    /// Ordinary decimal notation such as `-12.5`.
    Decimal,
    Roman,
    RomanExtended,
    Base10,
    Base12,
    Base60,
}

impl Notation {
    fn base(self) -> Option<u32> {
        match self {
            Notation::Base10 => Some(10),
            Notation::Base12 => Some(12),
            Notation::Base60 => Some(60),
            _ => None,
        }
    }
}

pub const DEFAULT_DIGITS: usize = 20;

pub fn parse_value(notation: Notation, text: &str) -> Result<Rational> {
    match notation {
        Notation::Decimal => {
            if text.contains([',', ';', 'e', 'E']) {
                return Err(Error::Parse(format!("{text:?} is not plain decimal notation")));
            }
            parse_positional(text, 10)?.number.to_rational()
        }
        Notation::Roman => Ok(Rational::from_integer(parse_roman(text, RomanStyle::Classic)?.into())),
        Notation::RomanExtended => Ok(Rational::from_integer(parse_roman(text, RomanStyle::Extended)?.into())),
        n => parse_positional(text, n.base().expect("positional notation"))?.number.to_rational(),
    }
}

/// Plain decimal text for a base-10 positional number.
fn decimal_text(p: &PositionalNumber) -> String {
    let plain = format_positional(p, Style::Plain);
    plain.replace(',', "").replace(';', ".")
}

pub fn format_value(notation: Notation, x: &Rational, digits: usize) -> Result<String> {
    let roman = |style| {
        if !x.is_integer() {
            return Err(Error::Invalid(format!("{x} is not a whole number")));
        }
        let n = x.to_integer().to_u64().ok_or_else(|| Error::Invalid(format!("{x} has no Roman numeral")))?;
        format_roman(n, style)
    };
    match notation {
        Notation::Decimal => Ok(decimal_text(&to_positional(x, 10, digits, Rounding::Nearest))),
        Notation::Roman => roman(RomanStyle::Classic),
        Notation::RomanExtended => roman(RomanStyle::Extended),
        n => {
            let b = n.base().expect("positional notation");
            Ok(format_positional(&to_positional(x, b, digits, Rounding::Nearest), Style::Plain))
        }
    }
}

/// Convert `text` between notations. Converting to the same notation echoes
/// the input after checking that it parses.
pub fn run_convert(from: Notation, to: Notation, text: &str, digits: Option<usize>) -> Result<String> {
    let x = parse_value(from, text)?;
    if from == to {
        return Ok(text.trim().to_string());
    }
    format_value(to, &x, digits.unwrap_or(DEFAULT_DIGITS))
}
