use serde::{Deserialize, Serialize};

use super::arith::{double_moves, halve_moves};
use super::trace::Recorder;
use super::{load, load_with, read_scaled, renormalize, round_board, Action, BoardId, Scaled, Trace, Workbench};
use crate::board::{apply_moves, commit_moves, BaseConfig, BoardState, Layout, Move, Zone, ZoneSel};
use crate::error::{Error, GridId, Result, RungAddr};
use crate::exactnum::Rounding;
use crate::Rational;

/// One step of a scripted multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultiplyStep {
    /// Partial products for every pebble on the highest occupied line.
    Line,
    /// Double the multiplier and halve the multiplicand.
    DoubleHalve,
    /// Break the highest non-line pebbles into the rung below.
    Demote,
}

/// How to get rid of multiplier pebbles that are not on a line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Demote, except that a lone pebble on a rung worth half the next one
    /// is doubled away.
    DemoteFirst,
    /// Double and halve whenever that leaves fewer off-line pebbles.
    DoubleHalveFirst,
    Scripted(Vec<MultiplyStep>),
}

fn middle_pebbles(b: &BoardState) -> Vec<(RungAddr, i64)> {
    b.rungs_bottom_up(GridId::Lower)
        .into_iter()
        .rev()
        .map(|a| (a, b.counts(a).net(ZoneSel::Committed)))
        .filter(|(_, n)| *n != 0)
        .collect()
}

fn off_line(b: &BoardState) -> u64 {
    middle_pebbles(b).iter().filter(|(a, _)| a.rung != 0).map(|(_, n)| n.unsigned_abs()).sum()
}

/// Multiply `a` (multiplicand, left board) by `b` (multiplier, middle board),
/// accumulating on the right board. The product is rounded to `digits`
/// significant digits.
pub fn multiply(config: &BaseConfig, a: &Scaled, b: &Scaled, strategy: &Strategy, digits: usize) -> Result<(Scaled, Trace)> {
    multiply_with_layout(config, a, b, strategy, digits, Layout::Minimal)
}

/// [`multiply`] with the multiplier entered in the given layout.
pub fn multiply_with_layout(
    config: &BaseConfig,
    a: &Scaled,
    b: &Scaled,
    strategy: &Strategy,
    digits: usize,
    layout: Layout,
) -> Result<(Scaled, Trace)> {
    if digits == 0 || digits > config.fraction_digits {
        return Err(Error::Budget { budget: digits, max: config.fraction_digits });
    }
    let w = Workbench::new(config.clone());
    let left = load(&w.left, a)?;
    let middle = load_with(&w.middle, b, layout)?;
    let mut rec = Recorder::new("multiply", vec![(BoardId::Left, left), (BoardId::Middle, middle), (BoardId::Right, w.right)]);
    let shift = rec.board(BoardId::Left).shift() + rec.board(BoardId::Middle).shift();
    rec.record(BoardId::Right, Action::Setup, ZoneSel::Both, vec![Move::SetShiftPebble { shift }])?;

    let mut script = match strategy {
        Strategy::Scripted(s) => Some(s.iter().copied()),
        _ => None,
    };
    loop {
        let mid = rec.board(BoardId::Middle);
        let pebbles = middle_pebbles(mid);
        if pebbles.is_empty() {
            break;
        }
        let has_line = pebbles.iter().any(|(a, _)| a.rung == 0);
        let step = match &mut script {
            Some(it) => it.next().ok_or_else(|| Error::Script("multiplication script ran out".into()))?,
            None if has_line => MultiplyStep::Line,
            None => choose(&rec, strategy, &pebbles),
        };
        match step {
            MultiplyStep::Line => line_step(&mut rec, &pebbles)?,
            MultiplyStep::DoubleHalve => {
                if has_line {
                    return Err(Error::Script("double-halve while line pebbles remain".into()));
                }
                double_halve(&mut rec)?;
            }
            MultiplyStep::Demote => demote_step(&mut rec, &pebbles)?,
        }
    }
    if let Some(mut it) = script {
        if it.next().is_some() {
            return Err(Error::Script("multiplication script has unused steps".into()));
        }
    }
    renormalize(&mut rec, BoardId::Right)?;
    round_board(&mut rec, BoardId::Right, digits, Rounding::Nearest)?;
    let out = read_scaled(rec.board(BoardId::Right));
    Ok((out, rec.finish()))
}

fn choose(rec: &Recorder, strategy: &Strategy, pebbles: &[(RungAddr, i64)]) -> MultiplyStep {
    let mid = rec.board(BoardId::Middle);
    let left = rec.board(BoardId::Left);
    let halvable = halve_moves(left).is_ok();
    match strategy {
        Strategy::DemoteFirst => {
            let lone = pebbles.len() == 1 && pebbles[0].1.abs() == 1;
            let (at, _) = pebbles[0];
            let half_step = mid.config.ladder[at.rung].factor == 2;
            if lone && half_step && halvable {
                MultiplyStep::DoubleHalve
            } else {
                MultiplyStep::Demote
            }
        }
        _ => {
            let better = double_moves(mid).ok().map(|ms| {
                let mut probe = mid.clone();
                apply_moves(&mut probe, &ms).is_ok() && off_line(&probe) < off_line(mid)
            });
            if halvable && better == Some(true) {
                MultiplyStep::DoubleHalve
            } else {
                MultiplyStep::Demote
            }
        }
    }
}

fn line_step(rec: &mut Recorder, pebbles: &[(RungAddr, i64)]) -> Result<()> {
    let (at, n) = *pebbles
        .iter()
        .find(|(a, _)| a.rung == 0)
        .ok_or_else(|| Error::Script("no line pebble on the multiplier".into()))?;
    let pebble_value = rec.board(BoardId::Middle).rung_value(at);
    let sign = n.signum();
    for _ in 0..n.abs() {
        rec.record(BoardId::Middle, Action::PartialProduct { pebble: pebble_value.clone() * Rational::from_integer(sign.into()) }, ZoneSel::Committed, vec![Move::remove(at, Zone::Committed, sign)])?;
        let moves = partial_product(rec, at.digit as i64 - 1, sign)?;
        rec.record(BoardId::Right, Action::Stage, ZoneSel::Staged, moves)?;
    }
    let moves = commit_moves(rec.board(BoardId::Right))?;
    rec.record(BoardId::Right, Action::Commit, ZoneSel::Committed, moves)
}

/// Copy of the multiplicand moved `by` digits down, on the right board's staged zone.
fn partial_product(rec: &Recorder, by: i64, sign: i64) -> Result<Vec<Move>> {
    let left = rec.board(BoardId::Left);
    let right = rec.board(BoardId::Right);
    let mut moves = Vec::new();
    for at in left.rungs_bottom_up(GridId::Lower) {
        let n = left.counts(at).net(ZoneSel::Committed);
        if n == 0 {
            continue;
        }
        let to = at.digit as i64 + by;
        if to < 0 || to >= right.lower.len() as i64 {
            return Err(Error::Capacity("partial product runs off the board".into()));
        }
        moves.push(Move::place(RungAddr { digit: to as usize, ..at }, Zone::Staged, n * sign));
    }
    Ok(moves)
}

fn double_halve(rec: &mut Recorder) -> Result<()> {
    let moves = double_moves(rec.board(BoardId::Middle))?;
    rec.record(BoardId::Middle, Action::Double, ZoneSel::Committed, moves)?;
    let moves = halve_moves(rec.board(BoardId::Left))?;
    rec.record(BoardId::Left, Action::Halve, ZoneSel::Committed, moves)
}

fn demote_step(rec: &mut Recorder, pebbles: &[(RungAddr, i64)]) -> Result<()> {
    let (at, n) = *pebbles
        .iter()
        .find(|(a, _)| a.rung != 0)
        .ok_or_else(|| Error::Script("nothing to demote".into()))?;
    let side = crate::board::Side::of(n);
    let mut moves = vec![Move::Demote { at, zone: Zone::Committed, side, count: n.unsigned_abs() }];
    let below = RungAddr { rung: at.rung - 1, ..at };
    let mut probe = rec.board(BoardId::Middle).clone();
    apply_moves(&mut probe, &moves)?;
    let c = probe.counts(below);
    let pair = c.ca.min(c.cs);
    if pair > 0 {
        moves.push(Move::CancelPair { at: below, zone: Zone::Committed, count: pair });
    }
    rec.record(BoardId::Middle, Action::Demote, ZoneSel::Committed, moves)
}
