use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::arith::{accumulate, halve_moves};
use super::trace::{ratio_str, Recorder};
use super::{divide, load, read_scaled, renormalize, round_board, Action, BoardId, Scaled, Trace};
use crate::board::{BaseConfig, BoardState, ZoneSel};
use crate::error::{Error, Result};
use crate::exactnum::{magnitude, pow_base, to_positional, Rounding};
use crate::Rational;

/// Exact value of one iteration: `a` is the running mean, `b` the input
/// divided by `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeronState {
    pub iteration: usize,
    #[serde(with = "ratio_str")]
    pub a: Rational,
    #[serde(with = "ratio_str")]
    pub b: Rational,
}

#[derive(Debug, Clone)]
pub struct HeronOutcome {
    /// Exact mean of the last iteration, truncated to the digit budget.
    pub root: Scaled,
    /// The same, as worked on the boards at the configuration's precision.
    pub board_root: Scaled,
    pub iterations: usize,
    pub states: Vec<HeronState>,
    /// One trace per board operation, in order.
    pub traces: Vec<Trace>,
}

fn ulp(x: &Rational, base: u32, digits: usize) -> Rational {
    pow_base::<BigInt>(base, magnitude(x, base) - digits as i64)
}

fn truncate(x: &Rational, base: u32, digits: usize) -> Result<Scaled> {
    let p = to_positional(x, base, digits, Rounding::Truncate);
    Ok(Scaled::from_value(&p.to_rational()?, base))
}

/// Square root by repeated averaging, starting from 1. Iteration stops once
/// the mean and the quotient differ by less than one unit in the last of
/// `budget` digits.
pub fn heron_sqrt(config: &BaseConfig, x: &Scaled, budget: usize) -> Result<HeronOutcome> {
    let base = config.base;
    if budget == 0 || budget > config.fraction_digits {
        return Err(Error::Budget { budget, max: config.fraction_digits });
    }
    let x0 = x.value(base);
    if x0.is_negative() {
        return Err(Error::Invalid("square root of a negative number".into()));
    }
    if x0.is_zero() {
        return Ok(HeronOutcome { root: Scaled::zero(), board_root: Scaled::zero(), iterations: 0, states: Vec::new(), traces: Vec::new() });
    }
    let two = Rational::from_integer(2.into());
    let mut states = vec![HeronState { iteration: 0, a: Rational::one(), b: x0.clone() }];
    let mut traces = Vec::new();
    let fd = config.fraction_digits;
    let mut a_board = Scaled::from_value(&Rational::one(), base);
    let mut b_board = x.normalized(base);
    loop {
        let last = states.last().unwrap();
        if (&last.a - &last.b).abs() < ulp(&last.a, base, budget) {
            break;
        }
        if states.len() > 64 {
            return Err(Error::Capacity("no convergence".into()));
        }
        let a = (&last.a + &last.b) / &two;
        let b = &x0 / &a;
        states.push(HeronState { iteration: states.len(), a, b });

        // Board: a <- (a + b) / 2 at working precision, then rounded to the
        // configuration's digits so it can serve as a divisor.
        let start = load(&BoardState::working(config.clone()), &a_board)?;
        let mut rec = Recorder::new("heron-mean", vec![(BoardId::Board, start)]);
        accumulate(&mut rec, BoardId::Board, &b_board, false)?;
        let moves = halve_moves(rec.board(BoardId::Board))?;
        rec.record(BoardId::Board, Action::Halve, ZoneSel::Committed, moves)?;
        renormalize(&mut rec, BoardId::Board)?;
        round_board(&mut rec, BoardId::Board, fd, Rounding::Nearest)?;
        a_board = read_scaled(rec.board(BoardId::Board));
        traces.push(rec.finish());

        let out = divide(config, x, &a_board, fd)?;
        b_board = out.quotient;
        traces.push(out.trace);
    }
    let last = states.last().unwrap();
    Ok(HeronOutcome {
        root: truncate(&last.a, base, budget)?,
        board_root: truncate(&a_board.value(base), base, budget)?,
        iterations: states.len() - 1,
        states,
        traces,
    })
}
