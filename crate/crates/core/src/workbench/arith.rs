use super::trace::Recorder;
use super::{renormalize, shift_digits_moves, Action, BoardId, Scaled, Trace};
use crate::board::{apply_moves, normalize_zone_moves, stage_moves, BoardState, Move, Side, Zone, ZoneSel};
use crate::board::commit_moves;
use crate::error::{Error, GridId, Result};

/// Add `x` to the committed value of `board`.
pub fn add(board: &BoardState, x: &Scaled) -> Result<(BoardState, Trace)> {
    combine(board, x, false, "add")
}

/// Subtract `x`: the operand is staged, reflected to the other side, then committed.
pub fn subtract(board: &BoardState, x: &Scaled) -> Result<(BoardState, Trace)> {
    combine(board, x, true, "subtract")
}

fn combine(board: &BoardState, x: &Scaled, negate: bool, op: &str) -> Result<(BoardState, Trace)> {
    let id = BoardId::Board;
    let mut rec = Recorder::new(op, vec![(id, board.clone())]);
    accumulate(&mut rec, id, x, negate)?;
    let out = rec.board(id).clone();
    Ok((out, rec.finish()))
}

/// Stage, audit and commit `x` (or `-x`) onto board `id`, then renormalize.
pub(crate) fn accumulate(rec: &mut Recorder, id: BoardId, x: &Scaled, negate: bool) -> Result<()> {
    let base = rec.board(id).base();
    let x = x.normalized(base);
    let b = rec.board(id);
    if b.is_zero_value() && !b.is_empty() && !x.is_zero() {
        rec.record(id, Action::Clear, ZoneSel::Committed, vec![Move::SetShiftPebble { shift: 0 }])?;
    }
    let b = rec.board(id);
    if !x.is_zero() && !b.is_empty() && x.shift > b.shift() {
        let by = x.shift - b.shift();
        let moves = shift_digits_moves(b, by)?;
        rec.record(id, Action::Align, ZoneSel::Committed, moves)?;
    }
    let moves = stage_moves(rec.board(id), &x.fraction, x.shift)?;
    rec.record(id, Action::Stage, ZoneSel::Staged, moves)?;
    if negate && !x.is_zero() {
        rec.record(id, Action::Reflect, ZoneSel::Staged, vec![Move::Reflect { grid: GridId::Lower, zone: ZoneSel::Staged }])?;
    }
    rec.record(id, Action::Audit, ZoneSel::Staged, Vec::new())?;
    let moves = commit_moves(rec.board(id))?;
    rec.record(id, Action::Commit, ZoneSel::Committed, moves)?;
    renormalize(rec, id)
}

fn cancel_all(work: &mut BoardState, moves: &mut Vec<Move>) -> Result<()> {
    for at in work.rungs_bottom_up(GridId::Lower) {
        let c = work.counts(at);
        let pair = c.ca.min(c.cs);
        if pair > 0 {
            let m = Move::CancelPair { at, zone: Zone::Committed, count: pair };
            apply_moves(work, std::slice::from_ref(&m))?;
            moves.push(m);
        }
    }
    Ok(())
}

/// Moves that halve the committed lower grid: from the top down, every rung
/// with an odd count sends one pebble to the rung below; then half of every
/// rung is removed and the result tidied.
pub(crate) fn halve_moves(b: &BoardState) -> Result<Vec<Move>> {
    let mut work = b.clone();
    let mut moves = Vec::new();
    cancel_all(&mut work, &mut moves)?;
    let rungs = work.rungs_bottom_up(GridId::Lower);
    for (i, &at) in rungs.iter().enumerate().rev() {
        let net = work.counts(at).net(ZoneSel::Committed);
        if net % 2 == 0 {
            continue;
        }
        if i == 0 {
            return Err(Error::Capacity("halving needs a digit below the last one".into()));
        }
        let below = rungs[i - 1];
        let side = Side::of(net);
        let mut step = vec![Move::Demote { at, zone: Zone::Committed, side, count: 1 }];
        let mut probe = work.clone();
        apply_moves(&mut probe, &step)?;
        let c = probe.counts(below);
        let pair = c.ca.min(c.cs);
        if pair > 0 {
            step.push(Move::CancelPair { at: below, zone: Zone::Committed, count: pair });
        }
        apply_moves(&mut work, &step)?;
        moves.extend(step);
    }
    for &at in rungs.iter().rev() {
        let net = work.counts(at).net(ZoneSel::Committed);
        if net != 0 {
            let m = Move::remove(at, Zone::Committed, net / 2);
            apply_moves(&mut work, std::slice::from_ref(&m))?;
            moves.push(m);
        }
    }
    moves.extend(normalize_zone_moves(&work, GridId::Lower, Zone::Committed)?);
    Ok(moves)
}

/// Moves that double the committed lower grid by laying a copy of every pebble.
pub(crate) fn double_moves(b: &BoardState) -> Result<Vec<Move>> {
    let mut work = b.clone();
    let mut moves = Vec::new();
    for at in work.rungs_bottom_up(GridId::Lower) {
        let c = *work.counts(at);
        for side in [Side::Additive, Side::Subtractive] {
            let k = c.get(Zone::Committed, side);
            if k > 0 {
                moves.push(Move::Place { at, zone: Zone::Committed, side, count: k });
            }
        }
    }
    apply_moves(&mut work, &moves)?;
    moves.extend(normalize_zone_moves(&work, GridId::Lower, Zone::Committed)?);
    Ok(moves)
}

pub fn halve(board: &BoardState) -> Result<(BoardState, Trace)> {
    let id = BoardId::Board;
    let mut rec = Recorder::new("halve", vec![(id, board.clone())]);
    let moves = halve_moves(board)?;
    rec.record(id, Action::Halve, ZoneSel::Committed, moves)?;
    renormalize(&mut rec, id)?;
    Ok((rec.board(id).clone(), rec.finish()))
}

pub fn double(board: &BoardState) -> Result<(BoardState, Trace)> {
    let id = BoardId::Board;
    let mut rec = Recorder::new("double", vec![(id, board.clone())]);
    let moves = double_moves(board)?;
    rec.record(id, Action::Double, ZoneSel::Committed, moves)?;
    renormalize(&mut rec, id)?;
    Ok((rec.board(id).clone(), rec.finish()))
}
