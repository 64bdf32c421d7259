use crate::error::{Error, Result};
use crate::exactnum::PositionalNumber;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    /// `1;24,51,10`
    #[default]
    Plain,
    /// `0;1,24,51,10e1`
    Exponent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedPositional {
    pub number: PositionalNumber,
    /// The text carried an `e` suffix.
    pub style: Style,
}

fn groups(part: &str, base: u32) -> Result<Vec<u32>> {
    if part.is_empty() {
        return Ok(Vec::new());
    }
    let pieces: Vec<&str> = if part.contains(',') {
        part.split(',').collect()
    } else if base == 10 {
        return part
            .chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad digit {c:?}"))))
            .collect();
    } else {
        vec![part]
    };
    pieces
        .into_iter()
        .map(|g| {
            if g.is_empty() || !g.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("malformed digit group {g:?}")));
            }
            let d: u64 = g.parse().map_err(|_| Error::Parse(format!("digit group {g:?} too long")))?;
            if d >= base as u64 {
                return Err(Error::DigitOutOfRange { digit: d, base });
            }
            Ok(d as u32)
        })
        .collect()
}

/// Parse `[-]int;frac[e±N]`. Digits are comma-separated decimal integers; in
/// base 10 the commas may be left out.
pub fn parse_positional(text: &str, base: u32) -> Result<ParsedPositional> {
    let t = text.trim();
    let (negative, rest) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let (mantissa, exp, style) = match rest.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = rest[i + 1..].parse().map_err(|_| Error::Parse(format!("bad exponent in {text:?}")))?;
            (&rest[..i], e, Style::Exponent)
        }
        None => (rest, 0, Style::Plain),
    };
    let sep = if base == 10 && !mantissa.contains(';') { '.' } else { ';' };
    let mut parts = mantissa.split(sep);
    let int_part = parts.next().unwrap_or("");
    let frac_part = parts.next();
    if parts.next().is_some() {
        return Err(Error::Parse(format!("more than one radix point in {text:?}")));
    }
    if frac_part == Some("") || (int_part.is_empty() && frac_part.is_none()) {
        return Err(Error::Parse(format!("missing digits in {text:?}")));
    }
    let int_digits = groups(int_part, base)?;
    let frac_digits = groups(frac_part.unwrap_or(""), base)?;
    let shift = int_digits.len() as i64 + exp;
    let mut digits = int_digits;
    digits.extend(frac_digits);
    let number = PositionalNumber { base, negative, digits, shift }.canonical();
    Ok(ParsedPositional { number, style })
}

fn join(ds: &[u32]) -> String {
    ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

/// Format a positional number, leaving out trailing zero digits.
pub fn format_positional(p: &PositionalNumber, style: Style) -> String {
    let p = p.clone().canonical();
    if p.is_zero() {
        return "0".into();
    }
    let sign = if p.negative { "-" } else { "" };
    match style {
        Style::Exponent => format!("{sign}0;{}e{}", join(&p.digits), p.shift),
        Style::Plain => {
            let n = p.digits.len() as i64;
            let (int, frac): (Vec<u32>, Vec<u32>) = if p.shift >= n {
                let mut i = p.digits.clone();
                i.extend(std::iter::repeat_n(0, (p.shift - n) as usize));
                (i, Vec::new())
            } else if p.shift > 0 {
                (p.digits[..p.shift as usize].to_vec(), p.digits[p.shift as usize..].to_vec())
            } else {
                let mut f = vec![0; (-p.shift) as usize];
                f.extend(&p.digits);
                (vec![0], f)
            };
            if frac.is_empty() {
                format!("{sign}{}", join(&int))
            } else {
                format!("{sign}{};{}", join(&int), join(&frac))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::from_positional;
    use num_bigint::BigInt;
    use num_rational::Ratio;

    fn val(t: &str, b: u32) -> Ratio<BigInt> {
        from_positional(&parse_positional(t, b).unwrap().number).unwrap()
    }

    fn q(n: i64, d: i64) -> Ratio<BigInt> {
        Ratio::new(n.into(), d.into())
    }

    #[test]
    fn duodecimal_examples() {
        assert_eq!(val("1;1,7,10", 12), q(1728 + 144 + 7 * 12 + 10, 1728));
        assert_eq!(val(";1,6", 12), q(1, 8));
        assert_eq!(val("0", 12), q(0, 1));
    }

    #[test]
    fn decimal_forms() {
        assert_eq!(val("0;84e0", 10), q(84, 100));
        assert_eq!(val("1946", 10), q(1946, 1));
        assert_eq!(val("1,9,4,6", 10), q(1946, 1));
        assert_eq!(val("-0.5", 10), q(-1, 2));
        assert_eq!(val("0;5e2", 10), q(50, 1));
    }

    #[test]
    fn formatting() {
        let p = parse_positional("1;24,51,10", 60).unwrap().number;
        assert_eq!(format_positional(&p, Style::Plain), "1;24,51,10");
        assert_eq!(format_positional(&p, Style::Exponent), "0;1,24,51,10e1");
        let p = parse_positional("0;7812e0", 10).unwrap().number;
        assert_eq!(format_positional(&p, Style::Exponent), "0;7,8,1,2e0");
        let p = parse_positional("1,0", 60).unwrap().number;
        assert_eq!(format_positional(&p, Style::Plain), "1,0");
        let p = parse_positional("0;0,30", 60).unwrap().number;
        assert_eq!(format_positional(&p, Style::Plain), "0;0,30");
        assert_eq!(format_positional(&PositionalNumber::zero(10), Style::Exponent), "0");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_positional("1;60", 60), Err(Error::DigitOutOfRange { .. })));
        assert!(parse_positional("1;2;3", 60).is_err());
        assert!(parse_positional("1;", 60).is_err());
        assert!(parse_positional("1,,2", 60).is_err());
        assert!(parse_positional("", 10).is_err());
        assert!(parse_positional("x", 10).is_err());
        assert!(parse_positional("1e", 10).is_err());
    }
}
