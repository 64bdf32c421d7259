use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::trace::Recorder;
use super::{load, read_scaled, renormalize, rewrite_moves, sign, Action, BoardId, Scaled, Trace, Workbench};
use crate::board::{commit_moves, BaseConfig, Move, Zone, ZoneSel};
use crate::error::{Error, GridId, Result, RungAddr};
use crate::exactnum::{pow_base, to_positional, Rounding};
use crate::Rational;

#[derive(Debug, Clone)]
pub struct DivideOutcome {
    pub quotient: Scaled,
    pub trace: Trace,
    /// `(position, count)` for each step: `count` pebbles of the negative
    /// quotient laid on the line worth `base^-position`.
    pub increments: Vec<(i64, i64)>,
}

/// Divide `dividend` by `divisor` to `budget` significant digits.
///
/// The quotient grows as a negative number on the middle board: at each
/// digit position the nearest whole multiple of the shifted divisor is taken
/// off the dividend on the right board. One digit past the budget is
/// computed, and the final rounding looks at the sign of what is left.
pub fn divide(config: &BaseConfig, dividend: &Scaled, divisor: &Scaled, budget: usize) -> Result<DivideOutcome> {
    run(config, dividend, divisor, budget, None)
}

/// Like [`divide`], but the negative-quotient increments are given rather
/// than chosen.
pub fn divide_scripted(
    config: &BaseConfig,
    dividend: &Scaled,
    divisor: &Scaled,
    budget: usize,
    increments: &[(i64, i64)],
) -> Result<DivideOutcome> {
    run(config, dividend, divisor, budget, Some(increments))
}

fn nearest(x: &Rational) -> BigInt {
    let a = x.abs();
    let f = a.floor();
    let r = if (&a - &f) * Rational::from_integer(2.into()) >= Rational::one() { f + Rational::one() } else { f };
    let r = r.to_integer();
    if x.is_negative() {
        -r
    } else {
        r
    }
}

fn run(config: &BaseConfig, dividend: &Scaled, divisor: &Scaled, budget: usize, script: Option<&[(i64, i64)]>) -> Result<DivideOutcome> {
    if budget == 0 || budget > config.fraction_digits {
        return Err(Error::Budget { budget, max: config.fraction_digits });
    }
    if divisor.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let base = config.base;
    let w = Workbench::new(config.clone());
    let left = load(&w.left, divisor)?;
    let right = load(&w.right, dividend)?;
    let mut rec = Recorder::new("divide", vec![(BoardId::Left, left), (BoardId::Middle, w.middle), (BoardId::Right, right)]);
    let mut increments = Vec::new();
    if dividend.is_zero() {
        return Ok(DivideOutcome { quotient: Scaled::zero(), trace: rec.finish(), increments });
    }
    let (d, dshift) = rec.board(BoardId::Left).read_value(ZoneSel::Committed);
    let (r0, nshift) = rec.board(BoardId::Right).read_value(ZoneSel::Committed);
    rec.record(BoardId::Middle, Action::Setup, ZoneSel::Both, vec![Move::SetShiftPebble { shift: nshift - dshift }])?;

    // The quotient's leading digit sits at position 0 or 1, but a ratio of a
    // half or more already rounds to a pebble on the units line.
    let lead = if r0.abs() >= d.abs() { 0 } else { 1 };
    let p0 = if r0.abs() * Rational::from_integer(2.into()) >= d.abs() { 0 } else { 1 };
    let last = lead + budget as i64;
    let mut steps: Vec<(i64, i64)> = Vec::new();
    match script {
        Some(s) => steps.extend(s.iter().copied()),
        None => {
            let mut r = r0.clone();
            for p in p0..=last {
                let c = nearest(&(&r / (&d * pow_base::<BigInt>(base, -p))));
                if !c.is_zero() {
                    r -= Rational::from_integer(c.clone()) * &d * pow_base::<BigInt>(base, -p);
                    let c = c.to_i64().expect("quotient digit fits");
                    steps.push((p, -c));
                }
            }
        }
    }
    for (p, neg) in steps {
        increment(&mut rec, p, neg)?;
        increments.push((p, neg));
    }
    rec.record(BoardId::Middle, Action::Reflect, ZoneSel::Committed, vec![Move::Reflect { grid: GridId::Lower, zone: ZoneSel::Committed }])?;

    // Round the computed digits, breaking an exact half by the remainder's sign.
    let (q, _) = rec.board(BoardId::Middle).read_value(ZoneSel::Committed);
    let (rem, _) = rec.board(BoardId::Right).read_value(ZoneSel::Committed);
    let truncated: Rational = to_positional(&q, base, budget, Rounding::Truncate).to_rational()?;
    let ulp = if truncated.is_zero() { Rational::zero() } else {
        let s = crate::exactnum::magnitude(&q, base);
        pow_base::<BigInt>(base, s - budget as i64)
    };
    let half = &ulp / Rational::from_integer(2.into());
    let rounded = if !ulp.is_zero() && (q.abs() - truncated.abs()) == half {
        let toward = sign(&rem) * sign(&d) * sign(&q) < 0;
        if toward {
            truncated
        } else {
            let away = truncated.abs() + &ulp;
            if q.is_negative() { -away } else { away }
        }
    } else {
        to_positional(&q, base, budget, Rounding::Nearest).to_rational()?
    };
    if rounded != q {
        let moves = rewrite_moves(rec.board(BoardId::Middle), &rounded)?;
        rec.record(BoardId::Middle, Action::Round, ZoneSel::Committed, moves)?;
    }
    renormalize(&mut rec, BoardId::Middle)?;
    let quotient = read_scaled(rec.board(BoardId::Middle));
    Ok(DivideOutcome { quotient, trace: rec.finish(), increments })
}

/// Lay `neg` pebbles of the negative quotient on the line for `base^-p`,
/// and add `neg` shifted copies of the divisor to the dividend.
fn increment(rec: &mut Recorder, p: i64, neg: i64) -> Result<()> {
    if neg == 0 {
        return Ok(());
    }
    let mid = rec.board(BoardId::Middle);
    if p < -1 || p + 1 >= mid.lower.len() as i64 {
        return Err(Error::Capacity(format!("quotient position {p} is off the board")));
    }
    let line = RungAddr { grid: GridId::Lower, digit: (p + 1) as usize, rung: 0 };
    rec.record(BoardId::Middle, Action::QuotientIncrement { position: p, count: neg }, ZoneSel::Staged, vec![Move::place(line, Zone::Staged, neg)])?;

    let left = rec.board(BoardId::Left);
    let right = rec.board(BoardId::Right);
    let mut moves = Vec::new();
    for at in left.rungs_bottom_up(GridId::Lower) {
        let n = left.counts(at).net(ZoneSel::Committed);
        if n == 0 {
            continue;
        }
        let to = at.digit as i64 + p;
        if to < 0 || to >= right.lower.len() as i64 {
            return Err(Error::Capacity("divisor copy runs off the board".into()));
        }
        moves.push(Move::place(RungAddr { digit: to as usize, ..at }, Zone::Staged, n * neg));
    }
    rec.record(BoardId::Right, Action::Stage, ZoneSel::Staged, moves)?;
    let moves = commit_moves(rec.board(BoardId::Right))?;
    rec.record(BoardId::Right, Action::Commit, ZoneSel::Committed, moves)?;
    let moves = commit_moves(rec.board(BoardId::Middle))?;
    rec.record(BoardId::Middle, Action::Commit, ZoneSel::Committed, moves)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(n: i64, d: i64) -> Scaled {
        Scaled::from_value(&Rational::new(n.into(), d.into()), 10)
    }

    #[test]
    fn simple_quotients() {
        let c = BaseConfig::decimal();
        let out = divide(&c, &dec(1, 1), &dec(4, 1), 10).unwrap();
        assert_eq!(out.quotient.value(10), Rational::new(1.into(), 4.into()));
        out.trace.replay().unwrap();
        let out = divide(&c, &dec(-2, 1), &dec(3, 1), 3).unwrap();
        assert_eq!(out.quotient.value(10), Rational::new((-667).into(), 1000.into()));
    }

    #[test]
    fn zero_divisor_and_bad_budget() {
        let c = BaseConfig::decimal();
        assert_eq!(divide(&c, &dec(1, 1), &Scaled::zero(), 3).unwrap_err(), Error::DivisionByZero);
        assert!(matches!(divide(&c, &dec(1, 1), &dec(3, 1), 0), Err(Error::Budget { .. })));
        assert!(matches!(divide(&c, &dec(1, 1), &dec(3, 1), 11), Err(Error::Budget { .. })));
    }
}
