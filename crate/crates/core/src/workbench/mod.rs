//! Operations carried out on one board or on three boards side by side
//! (left, middle, right), each producing a replayable trace.

mod arith;
mod divide;
mod heron;
mod multiply;
pub mod trace;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use arith::{add, double, halve, subtract};
pub use divide::{divide, divide_scripted, DivideOutcome};
pub use heron::{heron_sqrt, HeronOutcome, HeronState};
pub use multiply::{multiply, multiply_with_layout, MultiplyStep, Strategy};
pub use trace::{Action, BoardId, Trace, TraceEvent, TraceHeader};

use crate::board::{apply_moves, commit_moves, stage_moves, BaseConfig, BoardState, Layout, Move, Side, Zone, ZoneSel};
use crate::error::{Error, GridId, Result, RungAddr};
use crate::exactnum::{magnitude, pow_base, to_positional, PositionalNumber, Rounding};
use crate::Rational;
use trace::Recorder;

/// A number as the board holds it: a fraction and a shift, meaning
/// `fraction * base^shift`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scaled {
    #[serde(with = "trace::ratio_str")]
    pub fraction: Rational,
    pub shift: i64,
}

impl Scaled {
    pub fn new(fraction: Rational, shift: i64) -> Self {
        Scaled { fraction, shift }
    }

    pub fn zero() -> Self {
        Scaled { fraction: Rational::zero(), shift: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.fraction.is_zero()
    }

    /// Normalized form of an exact value: fraction in `[1/base, 1)`.
    pub fn from_value(x: &Rational, base: u32) -> Self {
        if x.is_zero() {
            return Scaled::zero();
        }
        let s = magnitude(x, base);
        Scaled { fraction: x * pow_base::<BigInt>(base, -s), shift: s }
    }

    pub fn value(&self, base: u32) -> Rational {
        &self.fraction * pow_base::<BigInt>(base, self.shift)
    }

    pub fn normalized(&self, base: u32) -> Self {
        let f = Scaled::from_value(&self.fraction, base);
        if f.is_zero() {
            return f;
        }
        Scaled { fraction: f.fraction, shift: f.shift + self.shift }
    }

    pub fn from_positional(p: &PositionalNumber) -> Result<Self> {
        let v: Rational = p.to_rational()?;
        Ok(Scaled::from_value(&v, p.base))
    }

    pub fn to_positional(&self, base: u32, digits: usize, rounding: Rounding) -> PositionalNumber {
        to_positional(&self.value(base), base, digits, rounding)
    }
}

/// Three working boards sharing one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Workbench {
    pub config: BaseConfig,
    pub left: BoardState,
    pub middle: BoardState,
    pub right: BoardState,
}

impl Workbench {
    pub fn new(config: BaseConfig) -> Self {
        let b = BoardState::working(config.clone());
        Workbench { config, left: b.clone(), middle: b.clone(), right: b }
    }
}

/// Put `x` on an empty board's committed zone. The operand must already fit
/// the configuration's fraction digits.
pub fn load(board: &BoardState, x: &Scaled) -> Result<BoardState> {
    let x = x.normalized(board.base());
    let digits = board.config.fraction_digits;
    if !(&x.fraction * pow_base::<BigInt>(board.base(), digits as i64)).is_integer() {
        return Err(Error::Capacity(format!("operand needs more than {digits} digits")));
    }
    let mut b = board.clone();
    let ms = stage_moves(&b, &x.fraction, x.shift)?;
    crate::board::apply_moves(&mut b, &ms)?;
    let ms = commit_moves(&b)?;
    crate::board::apply_moves(&mut b, &ms)?;
    Ok(b)
}

/// [`load`], then lay the fraction out in the given way.
pub fn load_with(board: &BoardState, x: &Scaled, layout: Layout) -> Result<BoardState> {
    let mut b = load(board, x)?;
    if layout == Layout::Minimal {
        return Ok(b);
    }
    let (fraction, _) = b.read_value(ZoneSel::Committed);
    let units = b.lower_units(&fraction)?;
    let counts = b.layout_counts(GridId::Lower, &units, layout)?;
    let mut moves = Vec::new();
    for (at, n) in b.rungs_bottom_up(GridId::Lower).into_iter().zip(counts) {
        let old = b.counts(at).net(ZoneSel::Committed);
        if old != 0 {
            moves.push(Move::remove(at, Zone::Committed, old));
        }
        if n != 0 {
            moves.push(Move::place(at, Zone::Committed, n));
        }
    }
    apply_moves(&mut b, &moves)?;
    Ok(b)
}

/// Committed fraction and shift of a board.
pub fn read_scaled(b: &BoardState) -> Scaled {
    let (fraction, shift) = b.read_value(ZoneSel::Committed);
    let shift = if fraction.is_zero() { 0 } else { shift };
    Scaled { fraction, shift }
}

/// Moves that shift every lower-grid pebble `by` digits toward the bottom
/// (negative moves them up), with the matching change of shift.
pub(crate) fn shift_digits_moves(b: &BoardState, by: i64) -> Result<Vec<Move>> {
    let mut removes = Vec::new();
    let mut places = Vec::new();
    let n = b.lower.len() as i64;
    for at in b.rungs_bottom_up(GridId::Lower) {
        let c = *b.counts(at);
        for zone in [Zone::Staged, Zone::Committed] {
            for side in [Side::Additive, Side::Subtractive] {
                let k = c.get(zone, side);
                if k == 0 {
                    continue;
                }
                let to = at.digit as i64 + by;
                if to < 0 || to >= n {
                    return Err(Error::Capacity(format!("shifting by {by} digits drops pebbles at {at}")));
                }
                removes.push(Move::Remove { at, zone, side, count: k });
                let dest = RungAddr { digit: to as usize, ..at };
                places.push(Move::Place { at: dest, zone, side, count: k });
            }
        }
    }
    removes.extend(places);
    let (_, shift) = b.read_value(ZoneSel::Both);
    removes.push(Move::SetShiftPebble { shift: shift + by });
    Ok(removes)
}

/// Bring a board's committed value to a fraction in `[1/base, 1)`, or to a
/// bare zero with shift 0.
pub(crate) fn renormalize(rec: &mut Recorder, id: BoardId) -> Result<()> {
    let b = rec.board(id);
    let (f, s) = b.read_value(ZoneSel::Committed);
    let moves = if f.is_zero() {
        if s == 0 {
            return Ok(());
        }
        vec![Move::SetShiftPebble { shift: 0 }]
    } else {
        let m = magnitude(&f, b.base());
        if m == 0 {
            return Ok(());
        }
        shift_digits_moves(b, m)?
    };
    let b = rec.board(id);
    let mut moves = moves;
    let mut after = b.clone();
    crate::board::apply_moves(&mut after, &moves)?;
    moves.extend(crate::board::normalize_moves(&after)?);
    rec.record(id, Action::Renormalize, ZoneSel::Committed, moves)
}

/// Replace a board's committed fraction by `fraction`, laid out canonically.
pub(crate) fn rewrite_moves(b: &BoardState, fraction: &Rational) -> Result<Vec<Move>> {
    let mut moves = Vec::new();
    for at in b.rungs_bottom_up(GridId::Lower) {
        let c = b.counts(at);
        for side in [Side::Additive, Side::Subtractive] {
            let k = c.get(Zone::Committed, side);
            if k > 0 {
                moves.push(Move::Remove { at, zone: Zone::Committed, side, count: k });
            }
        }
    }
    let units = b.lower_units(fraction)?;
    let counts = b.canonical_counts(GridId::Lower, &units)?;
    for (at, n) in b.rungs_bottom_up(GridId::Lower).into_iter().zip(counts) {
        if n != 0 {
            moves.push(Move::place(at, Zone::Committed, n));
        }
    }
    Ok(moves)
}

/// Round a board's committed value to `digits` significant digits.
pub(crate) fn round_board(rec: &mut Recorder, id: BoardId, digits: usize, rounding: Rounding) -> Result<()> {
    let b = rec.board(id);
    let (f, _) = b.read_value(ZoneSel::Committed);
    let p = to_positional(&f, b.base(), digits, rounding);
    let r: Rational = p.to_rational()?;
    if r == f {
        return Ok(());
    }
    let moves = rewrite_moves(b, &r)?;
    rec.record(id, Action::Round, ZoneSel::Committed, moves)?;
    renormalize(rec, id)
}

pub(crate) fn sign(x: &Rational) -> i64 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_normalizes() {
        let s = Scaled::from_value(&Rational::from_integer(1946.into()), 10);
        assert_eq!(s.shift, 4);
        assert_eq!(s.fraction, Rational::new(1946.into(), 10000.into()));
        let t = Scaled::from_value(&Rational::new(1.into(), 60.into()), 60);
        assert_eq!((t.fraction, t.shift), (Rational::new(1.into(), 60.into()), 0));
    }

    #[test]
    fn load_rejects_long_operands() {
        let b = BoardState::new(BaseConfig::decimal());
        let x = Scaled::from_value(&Rational::new(1.into(), 3.into()), 10);
        assert!(matches!(load(&b, &x), Err(Error::Capacity(_))));
    }
}
