use serde::{Deserialize, Serialize};

use super::{BoardState, Counts, Side, Zone, ZoneSel};
use crate::error::{Error, GridId, Result, RungAddr};
use num_bigint::BigInt;

/// A primitive pebble move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Move {
    Place { at: RungAddr, zone: Zone, side: Side, count: u64 },
    Remove { at: RungAddr, zone: Zone, side: Side, count: u64 },
    /// Trade `factor * count` pebbles for `count` pebbles on the rung above.
    Promote { at: RungAddr, zone: Zone, side: Side, count: u64 },
    /// Trade `count` pebbles for `factor * count` pebbles on the rung below.
    Demote { at: RungAddr, zone: Zone, side: Side, count: u64 },
    /// Drop `count` pebbles from each side of a rung.
    CancelPair { at: RungAddr, zone: Zone, count: u64 },
    /// Swap sides of every pebble in the selected zones of a grid.
    Reflect { grid: GridId, zone: ZoneSel },
    /// Move every staged pebble of a grid out to the committed zone.
    CommitOutward { grid: GridId },
    /// Clear the upper grid and lay out `shift` canonically on its committed zone.
    SetShiftPebble { shift: i64 },
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::Place { .. } => "place",
            Move::Remove { .. } => "remove",
            Move::Promote { .. } => "promote",
            Move::Demote { .. } => "demote",
            Move::CancelPair { .. } => "cancel-pair",
            Move::Reflect { .. } => "reflect",
            Move::CommitOutward { .. } => "commit-outward",
            Move::SetShiftPebble { .. } => "set-shift-pebble",
        }
    }

    pub fn place(at: RungAddr, zone: Zone, n: i64) -> Move {
        Move::Place { at, zone, side: Side::of(n), count: n.unsigned_abs() }
    }

    pub fn remove(at: RungAddr, zone: Zone, n: i64) -> Move {
        Move::Remove { at, zone, side: Side::of(n), count: n.unsigned_abs() }
    }
}

pub(crate) fn rung_above(b: &BoardState, at: RungAddr) -> Option<RungAddr> {
    if at.rung + 1 < b.config.rungs_per_digit() {
        Some(RungAddr { rung: at.rung + 1, ..at })
    } else if at.digit > 0 {
        Some(RungAddr { digit: at.digit - 1, rung: 0, ..at })
    } else {
        None
    }
}

pub(crate) fn rung_below(b: &BoardState, at: RungAddr) -> Option<RungAddr> {
    if at.rung > 0 {
        Some(RungAddr { rung: at.rung - 1, ..at })
    } else if at.digit + 1 < b.grid(at.grid).len() {
        Some(RungAddr { digit: at.digit + 1, rung: b.config.rungs_per_digit() - 1, ..at })
    } else {
        None
    }
}

fn take(c: &mut Counts, zone: Zone, side: Side, n: u64, at: RungAddr, what: &str) -> Result<()> {
    let slot = c.get_mut(zone, side);
    if *slot < n {
        return Err(Error::illegal(at, format!("{what} needs {n} pebbles but only {} are there", *slot)));
    }
    *slot -= n;
    Ok(())
}

fn nonzero(count: u64, at: RungAddr) -> Result<()> {
    if count == 0 {
        Err(Error::illegal(at, "count must be positive"))
    } else {
        Ok(())
    }
}

/// Apply one move in place. The board is untouched if the move is illegal.
pub fn apply_move(b: &mut BoardState, m: &Move) -> Result<()> {
    match *m {
        Move::Place { at, zone, side, count } => {
            b.check_addr(at)?;
            nonzero(count, at)?;
            *b.counts_mut(at).get_mut(zone, side) += count;
        }
        Move::Remove { at, zone, side, count } => {
            b.check_addr(at)?;
            nonzero(count, at)?;
            take(b.counts_mut(at), zone, side, count, at, "remove")?;
        }
        Move::Promote { at, zone, side, count } => {
            b.check_addr(at)?;
            nonzero(count, at)?;
            let up = rung_above(b, at).ok_or_else(|| Error::illegal(at, "no rung above"))?;
            let f = b.config.ladder[at.rung].factor as u64;
            take(b.counts_mut(at), zone, side, count * f, at, "promote")?;
            *b.counts_mut(up).get_mut(zone, side) += count;
        }
        Move::Demote { at, zone, side, count } => {
            b.check_addr(at)?;
            nonzero(count, at)?;
            let down = rung_below(b, at).ok_or_else(|| Error::illegal(at, "no rung below"))?;
            let f = b.config.ladder[down.rung].factor as u64;
            take(b.counts_mut(at), zone, side, count, at, "demote")?;
            *b.counts_mut(down).get_mut(zone, side) += count * f;
        }
        Move::CancelPair { at, zone, count } => {
            b.check_addr(at)?;
            nonzero(count, at)?;
            let c = b.counts_mut(at);
            if c.get(zone, Side::Additive) < count || c.get(zone, Side::Subtractive) < count {
                return Err(Error::illegal(at, format!("cancel-pair needs {count} pebbles on each side")));
            }
            *c.get_mut(zone, Side::Additive) -= count;
            *c.get_mut(zone, Side::Subtractive) -= count;
        }
        Move::Reflect { grid, zone } => {
            for c in b.grid_mut(grid).digits.iter_mut().flatten() {
                for &z in zone.zones() {
                    let a = c.get(z, Side::Additive);
                    let s = c.get(z, Side::Subtractive);
                    *c.get_mut(z, Side::Additive) = s;
                    *c.get_mut(z, Side::Subtractive) = a;
                }
            }
        }
        Move::CommitOutward { grid } => {
            for c in b.grid_mut(grid).digits.iter_mut().flatten() {
                c.ca += c.sa;
                c.cs += c.ss;
                c.sa = 0;
                c.ss = 0;
            }
        }
        Move::SetShiftPebble { shift } => {
            let counts = b.canonical_counts(GridId::Upper, &BigInt::from(shift))?;
            let rungs = b.rungs_bottom_up(GridId::Upper);
            for a in &rungs {
                *b.counts_mut(*a) = Counts::default();
            }
            for (a, n) in rungs.iter().zip(counts) {
                if n != 0 {
                    *b.counts_mut(*a).get_mut(Zone::Committed, Side::of(n)) = n.unsigned_abs();
                }
            }
        }
    }
    Ok(())
}

/// Apply moves in order, failing on the first illegal one. On failure the
/// board is left unchanged.
pub fn apply_moves(b: &mut BoardState, moves: &[Move]) -> Result<()> {
    let mut work = b.clone();
    for m in moves {
        apply_move(&mut work, m)?;
    }
    *b = work;
    Ok(())
}
