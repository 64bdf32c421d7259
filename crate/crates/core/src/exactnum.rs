//! Exact rationals, positional digit strings and the balanced (signed) rung
//! expansion used by the board.
//!
//! Everything here is generic over the integer type so the same code runs on
//! `BigInt` for the board and on machine integers in the analysis tables.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer types the exact layer can run on.
pub trait ExactInt: Clone + Integer + Signed + FromPrimitive + ToPrimitive + Debug + Display {}
impl<T> ExactInt for T where T: Clone + Integer + Signed + FromPrimitive + ToPrimitive + Debug + Display {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rounding {
    /// Round half away from zero.
    #[default]
    Nearest,
    Truncate,
}

pub(crate) fn int<T: ExactInt>(v: u32) -> T {
    T::from_u32(v).expect("small integer fits")
}

/// `base^exp` for a possibly negative exponent.
pub fn pow_base<T: ExactInt>(base: u32, exp: i64) -> Ratio<T> {
    let b: T = int(base);
    let p = num_traits::pow(b, exp.unsigned_abs() as usize);
    if exp >= 0 {
        Ratio::from_integer(p)
    } else {
        Ratio::new(T::one(), p)
    }
}

/// The exponent `s` with `base^(s-1) <= |x| < base^s`. Zero maps to 0.
pub fn magnitude<T: ExactInt>(x: &Ratio<T>, base: u32) -> i64 {
    if x.is_zero() {
        return 0;
    }
    let a = x.abs();
    // Bracket with base^lo <= a < base^hi by doubling, then bisect.
    let (mut lo, mut hi) = if a >= Ratio::one() {
        let mut hi = 1i64;
        while a >= pow_base(base, hi) {
            hi *= 2;
        }
        (hi / 2, hi)
    } else {
        let mut lo = -1i64;
        while a < pow_base(base, lo) {
            lo *= 2;
        }
        (lo, lo / 2)
    };
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if a < pow_base(base, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// A signed number written as `0.d1 d2 ... dk` in `base`, times `base^shift`.
///
/// Canonical form has a nonzero leading digit and no trailing zeros; zero is
/// the empty digit list with shift 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionalNumber {
    pub base: u32,
    pub negative: bool,
    pub digits: Vec<u32>,
    pub shift: i64,
}

impl PositionalNumber {
    pub fn zero(base: u32) -> Self {
        PositionalNumber { base, negative: false, digits: Vec::new(), shift: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|d| *d == 0)
    }

    /// Strip leading and trailing zeros, moving the shift to match.
    pub fn canonical(mut self) -> Self {
        let lead = self.digits.iter().take_while(|d| **d == 0).count();
        if lead == self.digits.len() {
            return PositionalNumber::zero(self.base);
        }
        self.digits.drain(..lead);
        self.shift -= lead as i64;
        while self.digits.last() == Some(&0) {
            self.digits.pop();
        }
        self
    }

    pub fn to_rational<T: ExactInt>(&self) -> Result<Ratio<T>> {
        from_positional(self)
    }
}

/// Write `x` with at most `max_digits` significant digits.
pub fn to_positional<T: ExactInt>(
    x: &Ratio<T>,
    base: u32,
    max_digits: usize,
    rounding: Rounding,
) -> PositionalNumber {
    if x.is_zero() || max_digits == 0 {
        return PositionalNumber::zero(base);
    }
    let negative = x.is_negative();
    let a = x.abs();
    let mut shift = magnitude(&a, base);
    let scaled = a * pow_base::<T>(base, max_digits as i64 - shift);
    let mut q = scaled.floor().to_integer();
    if rounding == Rounding::Nearest {
        let rem = scaled - Ratio::from_integer(q.clone());
        if rem * int::<T>(2) >= Ratio::one() {
            q = q + T::one();
        }
    }
    let full: T = pow_base::<T>(base, max_digits as i64).to_integer();
    if q == full {
        q = pow_base::<T>(base, max_digits as i64 - 1).to_integer();
        shift += 1;
    }
    let b: T = int(base);
    let mut digits = vec![0u32; max_digits];
    for slot in digits.iter_mut().rev() {
        let (nq, r) = q.div_rem(&b);
        *slot = r.to_u32().expect("digit fits");
        q = nq;
    }
    PositionalNumber { base, negative, digits, shift }.canonical()
}

/// Exact value of a positional number.
pub fn from_positional<T: ExactInt>(p: &PositionalNumber) -> Result<Ratio<T>> {
    let mut acc: T = T::zero();
    let b: T = int(p.base);
    for &d in &p.digits {
        if d >= p.base {
            return Err(Error::DigitOutOfRange { digit: d as u64, base: p.base });
        }
        acc = acc * b.clone() + int::<T>(d);
    }
    let v = Ratio::from_integer(acc) * pow_base::<T>(p.base, p.shift - p.digits.len() as i64);
    Ok(if p.negative { -v } else { v })
}

/// Rung-by-rung recoding from the bottom: a rung holding more than half its
/// factor gives the complement to the rung above. This is how an operand is
/// entered digit by digit; [`balanced_expand`] may use fewer pebbles.
pub fn digitwise_expand<T: ExactInt>(value: &T, factors: &[u32]) -> Result<Vec<T>> {
    if factors.iter().any(|f| *f < 2) {
        return Err(Error::Config("rung factor below 2".into()));
    }
    if value.is_negative() {
        let pos = digitwise_expand(&-value.clone(), factors)?;
        return Ok(pos.into_iter().map(|c| -c).collect());
    }
    let mut out = Vec::with_capacity(factors.len());
    let mut cur = value.clone();
    for (r, &f) in factors.iter().enumerate() {
        if r + 1 == factors.len() {
            if cur > int::<T>(f / 2) {
                return Err(Error::Capacity(format!("{value} does not fit on {} rungs", factors.len())));
            }
            out.push(cur.clone());
            break;
        }
        let (q, m) = cur.div_rem(&int::<T>(f));
        if m.clone() + m.clone() > int::<T>(f) {
            out.push(m - int::<T>(f));
            cur = q + T::one();
        } else {
            out.push(m);
            cur = q;
        }
    }
    if factors.is_empty() && !value.is_zero() {
        return Err(Error::Capacity("no rungs".into()));
    }
    Ok(out)
}

/// Signed pebble counts, bottom rung first, for `value` measured in units of
/// the bottom rung. `factors[r]` is how many pebbles on rung `r` make one on
/// rung `r + 1`; the last entry only bounds the top rung.
///
/// The result has the fewest pebbles possible. Among equally small
/// expansions it keeps every rung to at most half its factor (exactly half
/// stays positive), which is the same pattern a person gets by carrying
/// greedily from the bottom.
pub fn balanced_expand<T: ExactInt>(value: &T, factors: &[u32]) -> Result<Vec<T>> {
    if factors.is_empty() {
        return if value.is_zero() {
            Ok(Vec::new())
        } else {
            Err(Error::Capacity("no rungs".into()))
        };
    }
    if factors.iter().any(|f| *f < 2) {
        return Err(Error::Config("rung factor below 2".into()));
    }
    if value.is_negative() {
        let pos = balanced_expand(&-value.clone(), factors)?;
        return Ok(pos.into_iter().map(|c| -c).collect());
    }
    let n = factors.len();
    // base[r] = floor(value / unit(r)); each rung's carried amount is base[r] or base[r] + 1.
    let mut base = Vec::with_capacity(n);
    let mut cur = value.clone();
    for &f in factors {
        base.push(cur.clone());
        cur = cur.div_floor(&int::<T>(f));
    }
    const INF: u64 = u64::MAX / 4;
    let top = n - 1;
    let top_bound = (factors[top] / 2) as u64;
    // best[r][k]: fewest pebbles on rungs r.. when base[r] + k arrives at rung r.
    let mut best = vec![[INF; 2]; n];
    let mut choice = vec![[false; 2]; n];
    for k in 0..2 {
        let amt = base[top].clone() + int::<T>(k as u32);
        if let Some(a) = amt.to_u64() {
            if a <= top_bound {
                best[top][k] = a;
            }
        }
    }
    for r in (0..top).rev() {
        let f = factors[r];
        for k in 0..2usize {
            let amt = base[r].clone() + int::<T>(k as u32);
            let (q, m) = amt.div_rem(&int::<T>(f));
            let m = m.to_u32().expect("remainder fits");
            let qk = q - base[r + 1].clone();
            let qk = qk.to_usize().expect("carry index");
            let keep = if qk < 2 { best[r + 1][qk].saturating_add(m as u64) } else { INF };
            let up = if m > 0 && qk + 1 < 2 {
                best[r + 1][qk + 1].saturating_add((f - m) as u64)
            } else {
                INF
            };
            let greedy_up = 2 * m > f;
            let take_up = if greedy_up { up <= keep } else { up < keep };
            best[r][k] = keep.min(up);
            choice[r][k] = take_up && up < INF;
        }
    }
    if best[0][0] >= INF {
        return Err(Error::Capacity(format!("{value} does not fit on {n} rungs")));
    }
    let mut out = Vec::with_capacity(n);
    let mut k = 0usize;
    for r in 0..n {
        let amt = base[r].clone() + int::<T>(k as u32);
        if r == top {
            out.push(amt);
            break;
        }
        let f = int::<T>(factors[r]);
        let (q, m) = amt.div_rem(&f);
        let qk = (q - base[r + 1].clone()).to_usize().expect("carry index");
        if choice[r][k] {
            out.push(m - f);
            k = qk + 1;
        } else {
            out.push(m);
            k = qk;
        }
    }
    Ok(out)
}

/// Total pebbles in an expansion.
pub fn pebble_total<T: ExactInt>(counts: &[T]) -> u64 {
    counts.iter().map(|c| c.abs().to_u64().unwrap_or(u64::MAX)).sum()
}

/// Value of each rung in units of the bottom rung.
pub fn rung_units<T: ExactInt>(factors: &[u32]) -> Vec<T> {
    let mut out = Vec::with_capacity(factors.len());
    let mut v = T::one();
    for &f in factors {
        out.push(v.clone());
        v = v * int::<T>(f);
    }
    out
}
