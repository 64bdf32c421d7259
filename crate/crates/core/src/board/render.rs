use std::fmt::Write;

use super::{BoardState, RungKind, Side, Zone};
use crate::error::{GridId, RungAddr};

const RED: &str = "\x1b[31m";
const GREEN: &str = "\x1b[32m";
const DIM: &str = "\x1b[2m";
const RESET: &str = "\x1b[0m";

fn pebbles(n: u64, color: Option<&str>) -> String {
    let s = "o".repeat(n as usize);
    match color {
        Some(c) if n > 0 => format!("{c}{s}{RESET}"),
        _ => s,
    }
}

fn pad(s: &str, visible: usize, width: usize, fill: char, left: bool) -> String {
    let extra: String = std::iter::repeat_n(fill, width.saturating_sub(visible)).collect();
    if left {
        format!("{extra}{s}")
    } else {
        format!("{s}{extra}")
    }
}

/// Plain-text picture of the board, upper grid first. Subtractive pebbles sit
/// left of the median `|`, additive ones right of it; staged pebbles are the
/// ones nearest the median.
pub fn render(b: &BoardState, color: bool) -> String {
    let width = 8usize;
    let mut out = String::new();
    for grid in [GridId::Upper, GridId::Lower] {
        let g = b.grid(grid);
        let _ = writeln!(out, "{}", if grid == GridId::Upper { "shift" } else { "fraction" });
        for digit in 0..g.len() {
            for rung in (0..b.config.rungs_per_digit()).rev() {
                let at = RungAddr { grid, digit, rung };
                let c = b.counts(at);
                let kind = b.config.ladder[rung].kind;
                let fill = match kind {
                    RungKind::Solid => '-',
                    RungKind::Dashed => '.',
                    RungKind::Space => ' ',
                };
                let (stc, cmc) = if color { (Some(GREEN), Some(RED)) } else { (None, None) };
                let cs = pebbles(c.get(Zone::Committed, Side::Subtractive), cmc);
                let ss = pebbles(c.get(Zone::Staged, Side::Subtractive), stc);
                let sa = pebbles(c.get(Zone::Staged, Side::Additive), stc);
                let ca = pebbles(c.get(Zone::Committed, Side::Additive), cmc);
                let left = format!(
                    "{}{fill}{}",
                    pad(&cs, c.cs as usize, width, fill, true),
                    pad(&ss, c.ss as usize, width, fill, true)
                );
                let right = format!(
                    "{}{fill}{}",
                    pad(&sa, c.sa as usize, width, fill, false),
                    pad(&ca, c.ca as usize, width, fill, false)
                );
                let mark = if grid == GridId::Lower && digit == 1 && rung == 0 { 'X' } else { ' ' };
                let value = b.rung_value(at);
                let label = if color { format!("{DIM}{value}{RESET}") } else { value.to_string() };
                let _ = writeln!(out, "{mark} {left}|{right} {label}");
            }
        }
    }
    out
}
