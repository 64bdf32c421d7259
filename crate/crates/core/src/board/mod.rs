//! Board state, pebble moves and normalization.

mod config;
mod moves;
mod normalize;
mod render;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use config::{BaseConfig, Rung, RungKind, Variant};
pub use moves::{apply_move, apply_moves, Move};
pub use normalize::{commit, commit_moves, normalize, normalize_moves, normalize_zone_moves, stage, stage_moves};
pub use render::render;

use crate::error::{Error, GridId, Result, RungAddr};
use crate::exactnum::{balanced_expand, digitwise_expand, pow_base};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Zone {
    /// Next to the median.
    Staged,
    /// Away from the median.
    Committed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// Right of the median.
    Additive,
    /// Left of the median.
    Subtractive,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Additive => Side::Subtractive,
            Side::Subtractive => Side::Additive,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Side::Additive => 1,
            Side::Subtractive => -1,
        }
    }

    pub fn of(n: i64) -> Side {
        if n < 0 {
            Side::Subtractive
        } else {
            Side::Additive
        }
    }
}

/// How a value is laid out when entered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layout {
    /// Fewest pebbles; the form normalization produces.
    #[default]
    Minimal,
    /// Each rung recoded in turn from the bottom, as when entering digits one at a time.
    Digitwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZoneSel {
    Staged,
    Committed,
    #[default]
    Both,
}

impl ZoneSel {
    pub fn includes(self, z: Zone) -> bool {
        matches!(
            (self, z),
            (ZoneSel::Both, _) | (ZoneSel::Staged, Zone::Staged) | (ZoneSel::Committed, Zone::Committed)
        )
    }

    pub fn zones(self) -> &'static [Zone] {
        match self {
            ZoneSel::Staged => &[Zone::Staged],
            ZoneSel::Committed => &[Zone::Committed],
            ZoneSel::Both => &[Zone::Staged, Zone::Committed],
        }
    }
}

/// Pebbles on one rung: staged/committed by additive/subtractive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Counts {
    pub sa: u64,
    pub ss: u64,
    pub ca: u64,
    pub cs: u64,
}

impl Counts {
    pub fn get(&self, zone: Zone, side: Side) -> u64 {
        match (zone, side) {
            (Zone::Staged, Side::Additive) => self.sa,
            (Zone::Staged, Side::Subtractive) => self.ss,
            (Zone::Committed, Side::Additive) => self.ca,
            (Zone::Committed, Side::Subtractive) => self.cs,
        }
    }

    pub fn get_mut(&mut self, zone: Zone, side: Side) -> &mut u64 {
        match (zone, side) {
            (Zone::Staged, Side::Additive) => &mut self.sa,
            (Zone::Staged, Side::Subtractive) => &mut self.ss,
            (Zone::Committed, Side::Additive) => &mut self.ca,
            (Zone::Committed, Side::Subtractive) => &mut self.cs,
        }
    }

    pub fn net(&self, sel: ZoneSel) -> i64 {
        sel.zones()
            .iter()
            .map(|&z| self.get(z, Side::Additive) as i64 - self.get(z, Side::Subtractive) as i64)
            .sum()
    }

    pub fn total(&self) -> u64 {
        self.sa + self.ss + self.ca + self.cs
    }
}

/// One grid of digits. Digit `i` has place value `base^(top_exponent - i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub top_exponent: i64,
    pub digits: Vec<Vec<Counts>>,
}

impl Grid {
    fn new(top_exponent: i64, digits: usize, rungs: usize) -> Self {
        Grid { top_exponent, digits: vec![vec![Counts::default(); rungs]; digits] }
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.iter().flatten().all(|c| c.total() == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "BoardSnapshot", try_from = "BoardSnapshot")]
pub struct BoardState {
    pub config: BaseConfig,
    /// Fraction grid: carry digit, the unit line digit, then fraction digits.
    pub lower: Grid,
    /// Shift (exponent) grid: carry digit, then digits down to the units.
    pub upper: Grid,
}

/// Wire form of a board.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoardSnapshot {
    pub base: u32,
    #[serde(default)]
    pub variant: Variant,
    /// Top digit first; each digit lists rungs from the line upward.
    pub lower: Vec<Vec<Counts>>,
    pub upper: Vec<Vec<Counts>>,
}

impl From<BoardState> for BoardSnapshot {
    fn from(b: BoardState) -> Self {
        BoardSnapshot { base: b.config.base, variant: b.config.variant, lower: b.lower.digits, upper: b.upper.digits }
    }
}

impl TryFrom<BoardSnapshot> for BoardState {
    type Error = Error;
    fn try_from(s: BoardSnapshot) -> Result<Self> {
        let config = BaseConfig::new(s.base, s.variant)?;
        let r = config.rungs_per_digit();
        if s.lower.len() < 2 || s.upper.len() < 2 {
            return Err(Error::Config("each grid needs a carry digit and at least one more".into()));
        }
        if s.lower.iter().chain(s.upper.iter()).any(|d| d.len() != r) {
            return Err(Error::Config(format!("every digit needs {r} rungs")));
        }
        let top = s.upper.len() as i64 - 1;
        Ok(BoardState {
            config,
            lower: Grid { top_exponent: 1, digits: s.lower },
            upper: Grid { top_exponent: top, digits: s.upper },
        })
    }
}

impl BoardState {
    /// Board with the standard capacity of the configuration.
    pub fn new(config: BaseConfig) -> Self {
        let fd = config.fraction_digits;
        Self::with_fraction_digits(config, fd)
    }

    /// Board whose lower grid holds `fraction_digits` digits below the unit line.
    pub fn with_fraction_digits(config: BaseConfig, fraction_digits: usize) -> Self {
        let r = config.rungs_per_digit();
        let ed = config.exponent_digits;
        BoardState {
            lower: Grid::new(1, fraction_digits + 2, r),
            upper: Grid::new(ed as i64, ed + 1, r),
            config,
        }
    }

    /// Board sized for workbench use.
    pub fn working(config: BaseConfig) -> Self {
        let w = config.working_digits();
        Self::with_fraction_digits(config, w)
    }

    pub fn base(&self) -> u32 {
        self.config.base
    }

    pub fn fraction_digits(&self) -> usize {
        self.lower.len() - 2
    }

    pub fn grid(&self, g: GridId) -> &Grid {
        match g {
            GridId::Lower => &self.lower,
            GridId::Upper => &self.upper,
        }
    }

    pub fn grid_mut(&mut self, g: GridId) -> &mut Grid {
        match g {
            GridId::Lower => &mut self.lower,
            GridId::Upper => &mut self.upper,
        }
    }

    pub fn check_addr(&self, at: RungAddr) -> Result<()> {
        let g = self.grid(at.grid);
        if at.digit >= g.len() || at.rung >= self.config.rungs_per_digit() {
            return Err(Error::illegal(at, "no such rung"));
        }
        Ok(())
    }

    pub fn counts(&self, at: RungAddr) -> &Counts {
        &self.grid(at.grid).digits[at.digit][at.rung]
    }

    pub fn counts_mut(&mut self, at: RungAddr) -> &mut Counts {
        &mut self.grid_mut(at.grid).digits[at.digit][at.rung]
    }

    /// Place value of a rung.
    pub fn rung_value(&self, at: RungAddr) -> Rational {
        let g = self.grid(at.grid);
        let m = self.config.rung_multiples()[at.rung];
        pow_base::<BigInt>(self.base(), g.top_exponent - at.digit as i64) * Rational::from_integer(m.into())
    }

    /// Rungs of a grid from the bottom up.
    pub fn rungs_bottom_up(&self, g: GridId) -> Vec<RungAddr> {
        let n = self.grid(g).len();
        let r = self.config.rungs_per_digit();
        (0..n)
            .rev()
            .flat_map(|digit| (0..r).map(move |rung| RungAddr { grid: g, digit, rung }))
            .collect()
    }

    /// Factor from each bottom-up rung to the next.
    pub fn factors_bottom_up(&self, g: GridId) -> Vec<u32> {
        let n = self.grid(g).len();
        let f: Vec<u32> = self.config.ladder.iter().map(|r| r.factor).collect();
        f.repeat(n)
    }

    /// Grid value in units of its bottom rung.
    pub fn grid_units(&self, g: GridId, sel: ZoneSel) -> BigInt {
        let units = crate::exactnum::rung_units::<BigInt>(&self.factors_bottom_up(g));
        self.rungs_bottom_up(g)
            .iter()
            .zip(units)
            .map(|(a, u)| u * BigInt::from(self.counts(*a).net(sel)))
            .sum()
    }

    /// Value of the bottom rung of a grid.
    pub fn unit_value(&self, g: GridId) -> Rational {
        let grid = self.grid(g);
        pow_base::<BigInt>(self.base(), grid.top_exponent - (grid.len() as i64 - 1))
    }

    pub fn grid_value(&self, g: GridId, sel: ZoneSel) -> Rational {
        Rational::from_integer(self.grid_units(g, sel)) * self.unit_value(g)
    }

    /// Current shift: the upper grid over both zones.
    pub fn shift(&self) -> i64 {
        self.grid_units(GridId::Upper, ZoneSel::Both).to_i64().expect("shift fits")
    }

    /// Fraction and shift read from the selected zones.
    pub fn read_value(&self, sel: ZoneSel) -> (Rational, i64) {
        let f = self.grid_value(GridId::Lower, sel);
        let s = self.grid_units(GridId::Upper, sel).to_i64().expect("shift fits");
        (f, s)
    }

    /// Numeric value of the selected zones, scaled by the board's shift.
    pub fn value(&self, sel: ZoneSel) -> Rational {
        self.grid_value(GridId::Lower, sel) * pow_base::<BigInt>(self.base(), self.shift())
    }

    pub fn zone_is_empty(&self, g: GridId, zone: Zone) -> bool {
        self.grid(g).digits.iter().flatten().all(|c| c.get(zone, Side::Additive) == 0 && c.get(zone, Side::Subtractive) == 0)
    }

    pub fn pebble_count(&self) -> u64 {
        self.lower.digits.iter().chain(self.upper.digits.iter()).flatten().map(|c| c.total()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty() && self.upper.is_empty()
    }

    /// Canonical signed counts for `units` (bottom-rung units) on grid `g`, bottom-up.
    pub fn canonical_counts(&self, g: GridId, units: &BigInt) -> Result<Vec<i64>> {
        self.layout_counts(g, units, Layout::Minimal)
    }

    pub fn layout_counts(&self, g: GridId, units: &BigInt, layout: Layout) -> Result<Vec<i64>> {
        let factors = self.factors_bottom_up(g);
        let e = match layout {
            Layout::Minimal => balanced_expand(units, &factors),
            Layout::Digitwise => digitwise_expand(units, &factors),
        };
        let e = e.map_err(|e| match e {
            Error::Capacity(_) => Error::Capacity(format!("value does not fit on the {g:?} grid").to_lowercase()),
            other => other,
        })?;
        Ok(e.iter().map(|c| c.to_i64().expect("count fits")).collect())
    }

    /// Express a fraction in bottom-rung units of the lower grid, if it lands on the grid exactly.
    pub fn lower_units(&self, fraction: &Rational) -> Result<BigInt> {
        let u = fraction / self.unit_value(GridId::Lower);
        if !u.is_integer() {
            return Err(Error::Capacity(format!(
                "{fraction} needs more than {} fraction digits",
                self.fraction_digits()
            )));
        }
        Ok(u.to_integer())
    }

    /// Is every rung single-sided and within its canonical bound in `zone`?
    pub fn is_canonical(&self, zone: Zone) -> bool {
        for g in [GridId::Lower, GridId::Upper] {
            let units = self.grid_units(g, match zone {
                Zone::Staged => ZoneSel::Staged,
                Zone::Committed => ZoneSel::Committed,
            });
            let Ok(target) = self.canonical_counts(g, &units) else { return false };
            for (a, t) in self.rungs_bottom_up(g).iter().zip(target) {
                let c = self.counts(*a);
                let (p, m) = (c.get(zone, Side::Additive) as i64, c.get(zone, Side::Subtractive) as i64);
                if p - m != t || (p > 0 && m > 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Signed committed counts of the lower grid, bottom-up, with their place values.
    pub fn committed_pattern(&self) -> Vec<(Rational, i64)> {
        self.rungs_bottom_up(GridId::Lower)
            .into_iter()
            .map(|a| (self.rung_value(a), self.counts(a).net(ZoneSel::Committed)))
            .filter(|(_, n)| *n != 0)
            .collect()
    }

    pub fn is_zero_value(&self) -> bool {
        self.grid_units(GridId::Lower, ZoneSel::Both).is_zero()
    }
}
