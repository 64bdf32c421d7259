use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::board::{BoardState, ZoneSel};
use crate::error::{Error, GridId, Result};
use crate::exactnum::pow_base;
use crate::Rational;

pub const ROMAN_MAX: u64 = 3_999_999;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RomanStyle {
    #[default]
    Classic,
    /// Also allows two equal symbols before a larger one, as in IIV and IIX.
    Extended,
}

fn symbol_value(c: char) -> Option<u64> {
    Some(match c {
        'I' => 1,
        'V' => 5,
        'X' => 10,
        'L' => 50,
        'C' => 100,
        'D' => 500,
        'M' => 1000,
        _ => return None,
    })
}

/// Digit forms over (one, five, ten) symbols, for each digit value.
fn forms(style: RomanStyle) -> Vec<(u64, &'static str)> {
    let mut v = vec![
        (1, "o"),
        (2, "oo"),
        (3, "ooo"),
        (4, "of"),
        (5, "f"),
        (6, "fo"),
        (7, "foo"),
        (8, "fooo"),
        (9, "ot"),
    ];
    if style == RomanStyle::Extended {
        v.extend([(3, "oof"), (8, "oot")]);
    }
    v
}

fn spell(form: &str, one: char, five: char, ten: char) -> String {
    form.chars()
        .map(|c| match c {
            'o' => one,
            'f' => five,
            _ => ten,
        })
        .collect()
}

const PLACES: [(u64, char, char, char); 3] = [(100, 'C', 'D', 'M'), (10, 'X', 'L', 'C'), (1, 'I', 'V', 'X')];

/// Parse a Roman numeral. Thousands are any number of M; each lower decimal
/// place is one of the standard digit forms (plus IIV/IIX-type forms in the
/// extended style). `(|)` reads as M.
pub fn parse_roman(text: &str, style: RomanStyle) -> Result<u64> {
    let t = text.trim().replace("(|)", "M");
    if t.is_empty() {
        return Err(Error::Parse("empty Roman numeral".into()));
    }
    let syms: Vec<u64> = t
        .chars()
        .map(|c| symbol_value(c).ok_or_else(|| Error::Parse(format!("{c:?} is not a Roman symbol"))))
        .collect::<Result<_>>()?;
    let max_run = match style {
        RomanStyle::Classic => 1,
        RomanStyle::Extended => 2,
    };
    for i in 1..syms.len() {
        if syms[i] > syms[i - 1] {
            let run = syms[..i].iter().rev().take_while(|s| **s == syms[i - 1]).count();
            if run > max_run {
                return Err(Error::Parse(format!("{run} equal symbols before a larger one in {text:?}")));
            }
        }
    }
    let chars: Vec<char> = t.chars().collect();
    let mut pos = chars.iter().take_while(|c| **c == 'M').count();
    let mut value = pos as u64 * 1000;
    let table = forms(style);
    for (place, one, five, ten) in PLACES {
        let rest: String = chars[pos..].iter().collect();
        let best = table
            .iter()
            .map(|(d, f)| (*d, spell(f, one, five, ten)))
            .filter(|(_, s)| rest.starts_with(s.as_str()))
            .max_by_key(|(_, s)| s.len());
        if let Some((d, s)) = best {
            value += d * place;
            pos += s.chars().count();
        }
    }
    if pos != chars.len() || value == 0 {
        return Err(Error::Parse(format!("malformed Roman numeral {text:?}")));
    }
    Ok(value)
}

/// Write `n` in Roman numerals. Values of 4000 and up repeat M.
pub fn format_roman(n: u64, style: RomanStyle) -> Result<String> {
    if n == 0 || n > ROMAN_MAX {
        return Err(Error::Invalid(format!("{n} is outside 1..={ROMAN_MAX}")));
    }
    let mut out = "M".repeat((n / 1000) as usize);
    for (place, one, five, ten) in PLACES {
        let d = (n / place) % 10;
        if d == 0 {
            continue;
        }
        // Shortest form; between equally short ones the extended style takes
        // the subtractive one, which is how the board lays the digit out.
        let form = forms(style)
            .into_iter()
            .filter(|(v, _)| *v == d)
            .min_by_key(|(_, f)| (f.len(), *f == "ooo"))
            .map(|(_, f)| f)
            .expect("every digit has a form");
        out.push_str(&spell(form, one, five, ten));
    }
    Ok(out)
}

fn symbol_for(v: u64) -> Option<char> {
    "IVXLCDM".chars().find(|c| symbol_value(*c) == Some(v))
}

/// Read the committed pebbles of a decimal board as Roman symbols, each
/// subtractive pebble written just before the nearest additive pebble above it.
pub fn board_roman_reading(b: &BoardState) -> Result<String> {
    if b.base() != 10 {
        return Err(Error::Invalid("Roman readings need a decimal board".into()));
    }
    let scale = pow_base::<BigInt>(10, b.shift());
    let mut rungs: Vec<(u64, i64)> = Vec::new();
    for at in b.rungs_bottom_up(GridId::Lower).into_iter().rev() {
        let n = b.counts(at).net(ZoneSel::Committed);
        if n == 0 {
            continue;
        }
        let v: Rational = b.rung_value(at) * &scale;
        if !v.is_integer() || v < Rational::one() {
            return Err(Error::Invalid("pebble below the units line".into()));
        }
        let v = v.to_integer().to_u64().filter(|v| symbol_for(*v).is_some());
        let v = v.ok_or_else(|| Error::Invalid("pebble has no Roman symbol".into()))?;
        rungs.push((v, n));
    }
    if rungs.is_empty() {
        return Err(Error::Invalid("zero has no Roman numeral".into()));
    }
    let mut out = String::new();
    let mut i = 0;
    while i < rungs.len() {
        let (v, n) = rungs[i];
        if n < 0 {
            return Err(Error::Invalid("subtractive pebble with nothing above it".into()));
        }
        let mut j = i + 1;
        let mut prefix = String::new();
        while j < rungs.len() && rungs[j].1 < 0 {
            let (sv, sn) = rungs[j];
            prefix.push_str(&symbol_for(sv).unwrap().to_string().repeat(sn.unsigned_abs() as usize));
            j += 1;
        }
        let sym = symbol_for(v).unwrap().to_string();
        out.push_str(&sym.repeat(n as usize - 1));
        out.push_str(&prefix);
        out.push_str(&sym);
        i = j;
    }
    if b.value(ZoneSel::Committed).is_zero() {
        return Err(Error::Invalid("zero has no Roman numeral".into()));
    }
    Ok(out)
}
