use num_bigint::BigInt;
use num_traits::Zero;

use super::moves::{apply_move, rung_above};
use super::{BoardState, Move, Side, Zone, ZoneSel};
use crate::error::{Error, GridId, Result};
use crate::exactnum::pow_base;
use crate::Rational;

fn sel(zone: Zone) -> ZoneSel {
    match zone {
        Zone::Staged => ZoneSel::Staged,
        Zone::Committed => ZoneSel::Committed,
    }
}

/// Moves that bring one zone of one grid to canonical form, working from the
/// bottom rung up: cancel opposite pairs, promote full groups, and where a
/// rung holds too many pebbles of one sign, trade them for one pebble above
/// and the complement on the other side.
pub fn normalize_zone_moves(b: &BoardState, grid: GridId, zone: Zone) -> Result<Vec<Move>> {
    let mut work = b.clone();
    let units = work.grid_units(grid, sel(zone));
    let target = work.canonical_counts(grid, &units)?;
    let rungs = work.rungs_bottom_up(grid);
    let mut out = Vec::new();
    let mut push = |work: &mut BoardState, m: Move| -> Result<()> {
        apply_move(work, &m)?;
        out.push(m);
        Ok(())
    };
    for (i, &at) in rungs.iter().enumerate() {
        let c = *work.counts(at);
        let net = c.get(zone, Side::Additive) as i64 - c.get(zone, Side::Subtractive) as i64;
        let diff = net - target[i];
        if diff != 0 {
            let f = work.config.ladder[at.rung].factor as i64;
            let up = rung_above(&work, at).ok_or_else(|| Error::Capacity("top rung overflow".into()))?;
            debug_assert_eq!(diff % f, 0);
            let k = diff / f;
            let side = Side::of(k);
            let have = work.counts(at).get(zone, side) as i64;
            let promote = (have / f).min(k.abs());
            if promote > 0 {
                push(&mut work, Move::Promote { at, zone, side, count: promote as u64 })?;
            }
            let rest = k.abs() - promote;
            if rest > 0 {
                push(&mut work, Move::Place { at: up, zone, side, count: rest as u64 })?;
                push(&mut work, Move::Place { at, zone, side: side.other(), count: (rest * f) as u64 })?;
            }
        }
        let c = *work.counts(at);
        let pair = c.get(zone, Side::Additive).min(c.get(zone, Side::Subtractive));
        if pair > 0 {
            push(&mut work, Move::CancelPair { at, zone, count: pair })?;
        }
    }
    Ok(out)
}

/// Moves that make every zone of both grids canonical.
pub fn normalize_moves(b: &BoardState) -> Result<Vec<Move>> {
    let mut work = b.clone();
    let mut out = Vec::new();
    for grid in [GridId::Lower, GridId::Upper] {
        for zone in [Zone::Staged, Zone::Committed] {
            let ms = normalize_zone_moves(&work, grid, zone)?;
            for m in &ms {
                apply_move(&mut work, m)?;
            }
            out.extend(ms);
        }
    }
    Ok(out)
}

pub fn normalize(b: &BoardState) -> Result<BoardState> {
    let mut w = b.clone();
    for m in normalize_moves(b)? {
        apply_move(&mut w, &m)?;
    }
    Ok(w)
}

/// Merge the staged zone into the committed zone and tidy the result.
pub fn commit_moves(b: &BoardState) -> Result<Vec<Move>> {
    let mut work = b.clone();
    let mut out = vec![Move::CommitOutward { grid: GridId::Lower }, Move::CommitOutward { grid: GridId::Upper }];
    for m in &out {
        apply_move(&mut work, m)?;
    }
    for grid in [GridId::Lower, GridId::Upper] {
        let ms = normalize_zone_moves(&work, grid, Zone::Committed)?;
        for m in &ms {
            apply_move(&mut work, m)?;
        }
        out.extend(ms);
    }
    Ok(out)
}

pub fn commit(b: &BoardState) -> Result<BoardState> {
    let mut w = b.clone();
    for m in commit_moves(b)? {
        apply_move(&mut w, &m)?;
    }
    Ok(w)
}

/// Moves laying `fraction * base^shift` out canonically on the staged zone.
///
/// On a board holding nothing, the shift is staged on the upper grid too.
/// Otherwise the operand is aligned to the board's shift, and digits that
/// would fall below the last fraction digit are an error.
pub fn stage_moves(b: &BoardState, fraction: &Rational, shift: i64) -> Result<Vec<Move>> {
    if !b.zone_is_empty(GridId::Lower, Zone::Staged) || !b.zone_is_empty(GridId::Upper, Zone::Staged) {
        return Err(Error::illegal(None, "staged zone is not empty"));
    }
    let mut out = Vec::new();
    let aligned = if b.is_empty() {
        if shift != 0 {
            let counts = b.canonical_counts(GridId::Upper, &BigInt::from(shift))?;
            for (at, n) in b.rungs_bottom_up(GridId::Upper).into_iter().zip(counts) {
                if n != 0 {
                    out.push(Move::place(at, Zone::Staged, n));
                }
            }
        }
        fraction.clone()
    } else {
        fraction * pow_base::<BigInt>(b.base(), shift - b.shift())
    };
    if aligned.is_zero() {
        return Ok(out);
    }
    let units = b.lower_units(&aligned)?;
    let counts = b.canonical_counts(GridId::Lower, &units)?;
    for (at, n) in b.rungs_bottom_up(GridId::Lower).into_iter().zip(counts) {
        if n != 0 {
            out.push(Move::place(at, Zone::Staged, n));
        }
    }
    Ok(out)
}

pub fn stage(b: &BoardState, fraction: &Rational, shift: i64) -> Result<BoardState> {
    let mut w = b.clone();
    for m in stage_moves(b, fraction, shift)? {
        apply_move(&mut w, &m)?;
    }
    Ok(w)
}
