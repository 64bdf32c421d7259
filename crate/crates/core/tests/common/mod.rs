//! Oracles computed without the engine: plain integer searches and
//! enumerations.
#![allow(dead_code)]

use std::collections::VecDeque;

use abax_core::{BaseConfig, BigInt, Rational, Scaled};

/// Values of every rung of `digits` digits, bottom up, starting at 1.
pub fn rung_values(config: &BaseConfig, digits: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let mut unit = 1i64;
    for _ in 0..digits {
        let mut v = unit;
        for r in &config.ladder {
            out.push(v);
            v *= r.factor as i64;
        }
        unit *= config.base as i64;
    }
    out
}

/// Fewest signed pebbles summing to each value in `0..limit`, by
/// breadth-first search over partial sums in `-bound..=bound`.
pub fn bfs_min_pebbles(values: &[i64], limit: usize, bound: i64) -> Vec<u32> {
    let size = (2 * bound + 1) as usize;
    let mut dist = vec![u32::MAX; size];
    let idx = |v: i64| (v + bound) as usize;
    dist[idx(0)] = 0;
    let mut q = VecDeque::from([0i64]);
    while let Some(v) = q.pop_front() {
        let d = dist[idx(v)];
        for &c in values {
            for w in [v + c, v - c] {
                if w.abs() <= bound && dist[idx(w)] == u32::MAX {
                    dist[idx(w)] = d + 1;
                    q.push_back(w);
                }
            }
        }
    }
    (0..limit as i64).map(|v| dist[idx(v)]).collect()
}

/// Fewest additive pebbles for each value in `0..limit`, by coin-change DP.
pub fn unsigned_min_pebbles(values: &[i64], limit: usize) -> Vec<u32> {
    let mut best = vec![u32::MAX; limit];
    best[0] = 0;
    for v in 1..limit {
        for &c in values {
            let c = c as usize;
            if c <= v && best[v - c] != u32::MAX {
                best[v] = best[v].min(best[v - c] + 1);
            }
        }
    }
    best
}

/// Count numbers of 1..=max_digits digits with nonzero first and last digit,
/// and how many of those have a zero inside.
pub fn enumerate_embedded_zeros(base: u32, max_digits: u32) -> (u64, u64) {
    let (mut with, mut all) = (0u64, 0u64);
    for n in 1..=max_digits {
        let count = (base as u64).pow(n);
        for v in 0..count {
            let mut digits = Vec::new();
            let mut x = v;
            for _ in 0..n {
                digits.push(x % base as u64);
                x /= base as u64;
            }
            if digits[0] == 0 || digits[n as usize - 1] == 0 {
                continue;
            }
            all += 1;
            if digits[1..digits.len().saturating_sub(1).max(1)].contains(&0) {
                with += 1;
            }
        }
    }
    (with, all)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn scaled(x: &Rational, base: u32) -> Scaled {
    Scaled::from_value(x, base)
}

/// `x` rounded to `digits` significant base-`base` digits, ties away from zero,
/// using only integer arithmetic.
pub fn round_sig(x: &Rational, base: u32, digits: usize) -> Rational {
    use num_traits::{Signed, Zero};
    if x.is_zero() {
        return x.clone();
    }
    let b = Rational::from_integer(BigInt::from(base));
    let a = x.abs();
    let mut p = Rational::from_integer(BigInt::from(1));
    while p <= a {
        p = &p * &b;
    }
    while &p / &b > a {
        p = &p / &b;
    }
    let scale = num_traits::pow(b.clone(), digits) / p;
    let t = &a * &scale;
    let two = Rational::from_integer(BigInt::from(2));
    let fl = t.floor();
    let r = if (&t - &fl) * &two >= Rational::from_integer(BigInt::from(1)) { fl + Rational::from_integer(BigInt::from(1)) } else { fl };
    let r = r / scale;
    if x.is_negative() {
        -r
    } else {
        r
    }
}

use abax_core::board::apply_move;
use abax_core::{BoardState, GridId, Move, RungAddr, Side, Zone};
use rand::Rng;

pub fn configs() -> Vec<BaseConfig> {
    vec![
        BaseConfig::decimal(),
        BaseConfig::duodecimal(),
        BaseConfig::new(12, abax_core::Variant::Alternate).unwrap(),
        BaseConfig::sexagesimal(),
    ]
}

/// A board with a few random pebbles on both grids, zones and sides, kept
/// well inside capacity.
pub fn random_pile<R: Rng>(rng: &mut R, config: &BaseConfig) -> BoardState {
    let mut b = BoardState::new(config.clone());
    let n = rng.gen_range(0..12);
    for _ in 0..n {
        let grid = if rng.gen_bool(0.8) { GridId::Lower } else { GridId::Upper };
        let digits = b.grid(grid).len();
        let digit = rng.gen_range(2.min(digits - 1)..digits);
        let rung = rng.gen_range(0..config.ladder.len());
        let at = RungAddr { grid, digit, rung };
        let zone = if rng.gen_bool(0.5) { Zone::Staged } else { Zone::Committed };
        let side = if rng.gen_bool(0.5) { Side::Additive } else { Side::Subtractive };
        let count = rng.gen_range(1..=4);
        apply_move(&mut b, &Move::Place { at, zone, side, count }).unwrap();
    }
    b
}

/// A random move that never changes the board's value when it is legal.
pub fn random_preserving_move<R: Rng>(rng: &mut R, b: &BoardState) -> Move {
    let grid = if rng.gen_bool(0.8) { GridId::Lower } else { GridId::Upper };
    let digit = rng.gen_range(0..b.grid(grid).len());
    let rung = rng.gen_range(0..b.config.ladder.len());
    let at = RungAddr { grid, digit, rung };
    let zone = if rng.gen_bool(0.5) { Zone::Staged } else { Zone::Committed };
    let side = if rng.gen_bool(0.5) { Side::Additive } else { Side::Subtractive };
    match rng.gen_range(0..4) {
        0 => Move::Promote { at, zone, side, count: 1 },
        1 => Move::Demote { at, zone, side, count: 1 },
        2 => Move::CancelPair { at, zone, count: 1 },
        _ => Move::CommitOutward { grid },
    }
}

/// The printed efficiency table, k = 0..=31.
pub const PUBLISHED_PLAIN: [u128; 32] = [
    0, 1, 2, 3, 8, 18, 28, 38, 48, 98, 198, 298, 398, 498, 998, 1998, 2998, 3998, 4998, 9998, 19998, 29998, 39998, 49998,
    99998, 199998, 299998, 399998, 499998, 999998, 1999998, 2999998,
];
pub const PUBLISHED_SIGNED: [u128; 32] = [
    0, 1, 2, 12, 22, 72, 172, 272, 772, 1772, 2772, 7772, 17772, 27772, 77772, 177772, 277772, 777772, 1777772, 2777772,
    7777772, 17777772, 27777772, 77777772, 177777772, 277777772, 777777772, 1777777772, 2777777772, 7777777772,
    17777777772, 27777777772,
];

/// Negative-quotient increments `(position, count)` of the printed
/// 0.84 / 0.93 division.
pub const DIVISION_TABLE: [(i64, i64); 11] =
    [(0, -1), (1, 1), (3, -3), (4, -2), (5, -3), (6, 4), (7, 2), (8, -1), (9, 4), (10, -4), (11, -5)];

/// Largest n with every count 1..=n at most `k` pebbles, from a table of
/// minimal counts.
pub fn brute_max_count(min: &[u32], k: u32) -> u128 {
    (1..min.len()).find(|&n| min[n] > k).expect("table long enough") as u128 - 1
}
