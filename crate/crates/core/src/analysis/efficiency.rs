use serde::Serialize;

use crate::error::{Error, Result};

/// Fewest pebbles that lay out signed digit value `e` on one decimal digit
/// (a line and the five-space above it).
fn digit_cost(e: i64, signed: bool) -> Option<u32> {
    if !signed {
        return match e {
            0..=4 => Some(e as u32),
            5..=9 => Some(1 + (e - 5) as u32),
            _ => None,
        };
    }
    (-1i64..=1).map(|s| (s.unsigned_abs() + (e - 5 * s).unsigned_abs()) as u32).min()
}

/// Minimal pebble count for `n` on a decimal board. With `signed`, pebbles
/// may also sit on the subtractive side.
pub fn min_pebbles(n: u128, signed: bool) -> u32 {
    let digits: Vec<i64> = n.to_string().bytes().rev().map(|b| (b - b'0') as i64).collect();
    if !signed {
        return digits.iter().map(|d| digit_cost(*d, false).unwrap()).sum();
    }
    // best[c]: cost so far when a carry of c leaves the current digit.
    let mut best = [0u32, u32::MAX];
    for &d in &digits {
        let mut next = [u32::MAX; 2];
        for (c_in, &base) in best.iter().enumerate() {
            if base == u32::MAX {
                continue;
            }
            for c_out in 0..2 {
                let e = d + c_in as i64 - 10 * c_out as i64;
                if let Some(w) = digit_cost(e, true) {
                    next[c_out] = next[c_out].min(base + w);
                }
            }
        }
        best = next;
    }
    best[0].min(best[1].saturating_add(1))
}

const MAX_DIGITS: usize = 36;

struct Search {
    k: u32,
    signed: bool,
    memo: std::collections::HashMap<(u32, u32, usize), u32>,
}

impl Search {
    fn clip(&self, v: u32) -> u32 {
        v.min(self.k + 1)
    }

    /// Digits go most significant first. The state holds the best cost of
    /// the digits above for each carry the current digit may send up.
    fn step(&self, f: (u32, u32), d: i64) -> (u32, u32) {
        let mut out = [u32::MAX; 2];
        let carries: &[usize] = if self.signed { &[0, 1] } else { &[0] };
        for &c_low in carries {
            for &c_up in carries {
                let prev = if c_up == 0 { f.0 } else { f.1 };
                if prev == u32::MAX {
                    continue;
                }
                let e = d + c_low as i64 - 10 * c_up as i64;
                if let Some(w) = digit_cost(e, self.signed) {
                    out[c_low] = out[c_low].min(self.clip(prev + w));
                }
            }
        }
        (out[0], out[1])
    }

    /// Largest final cost reachable with `m` more digits.
    fn max_cost(&mut self, f: (u32, u32), m: usize) -> u32 {
        if m == 0 {
            return f.0;
        }
        if let Some(v) = self.memo.get(&(f.0, f.1, m)) {
            return *v;
        }
        let mut best = 0;
        for d in 0..10 {
            let g = self.step(f, d);
            best = best.max(self.max_cost(g, m - 1));
            if best > self.k {
                break;
            }
        }
        self.memo.insert((f.0, f.1, m), best);
        best
    }
}

/// Largest n such that every count 1..=n fits in `k` pebbles.
pub fn max_sequential_count(k: u32, signed: bool) -> Result<u128> {
    if k > 64 {
        return Err(Error::Invalid("pebble count above 64".into()));
    }
    let mut s = Search { k, signed, memo: Default::default() };
    // One extra pebble on the line above the top digit absorbs a final carry.
    let mut f = (0, if signed { 1 } else { u32::MAX });
    if s.max_cost(f, MAX_DIGITS) <= k {
        return Err(Error::Capacity("answer exceeds the search width".into()));
    }
    let mut n: u128 = 0;
    for m in (0..MAX_DIGITS).rev() {
        for d in 0..10 {
            let g = s.step(f, d);
            if s.max_cost(g, m) > k {
                n = n * 10 + d as u128;
                f = g;
                break;
            }
        }
    }
    Ok(n - 1)
}

/// The printed efficiency table, continued by its own digit pattern.
pub fn published_sequential_count(k: u32, signed: bool) -> u128 {
    let pattern = |lead: u32, fill: char, reps: usize| -> u128 {
        let s = format!("{lead}{}", fill.to_string().repeat(reps));
        s.parse().unwrap()
    };
    if signed {
        if k < 3 {
            return k as u128;
        }
        let m = k - 3;
        let lead = [1, 2, 7][(m % 3) as usize];
        10 * pattern(lead, '7', (m / 3) as usize) + 2
    } else {
        if k < 4 {
            return k as u128;
        }
        let m = k - 4;
        10 * pattern(m % 5, '9', (m / 5) as usize) + 8
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EfficiencyRow {
    pub k: u32,
    pub max_count_plain: u128,
    pub max_count_signed: u128,
    pub published_plain: u128,
    pub published_signed: u128,
}

pub fn efficiency_table(max_k: u32) -> Result<Vec<EfficiencyRow>> {
    (0..=max_k)
        .map(|k| {
            Ok(EfficiencyRow {
                k,
                max_count_plain: max_sequential_count(k, false)?,
                max_count_signed: max_sequential_count(k, true)?,
                published_plain: published_sequential_count(k, false),
                published_signed: published_sequential_count(k, true),
            })
        })
        .collect()
}
