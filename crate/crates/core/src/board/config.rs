use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RungKind {
    Solid,
    Space,
    Dashed,
}

/// One rung of a digit's ladder and how many of its pebbles make one pebble
/// on the rung above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rung {
    pub kind: RungKind,
    pub factor: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    #[default]
    Preferred,
    Alternate,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "preferred" => Ok(Variant::Preferred),
            "alternate" => Ok(Variant::Alternate),
            other => Err(Error::Config(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseConfig {
    pub base: u32,
    pub variant: Variant,
    /// Bottom rung (the digit's line) first.
    pub ladder: Vec<Rung>,
    pub fraction_digits: usize,
    pub exponent_digits: usize,
}

fn ladder(spec: &[(RungKind, u32)]) -> Vec<Rung> {
    spec.iter().map(|&(kind, factor)| Rung { kind, factor }).collect()
}

impl BaseConfig {
    pub fn new(base: u32, variant: Variant) -> Result<Self> {
        use RungKind::*;
        let (rungs, fd, ed) = match (base, variant) {
            (10, Variant::Preferred) => (ladder(&[(Solid, 5), (Space, 2)]), 10, 4),
            (60, Variant::Preferred) => {
                (ladder(&[(Solid, 5), (Space, 2), (Dashed, 3), (Space, 2)]), 5, 2)
            }
            (12, Variant::Preferred) => (ladder(&[(Solid, 3), (Space, 2), (Dashed, 2)]), 5, 2),
            (12, Variant::Alternate) => (ladder(&[(Solid, 6), (Space, 2)]), 5, 2),
            (b, v) => {
                return Err(Error::Config(format!("no board for base {b} ({v:?})")));
            }
        };
        Ok(BaseConfig { base, variant, ladder: rungs, fraction_digits: fd, exponent_digits: ed })
    }

    pub fn decimal() -> Self {
        Self::new(10, Variant::Preferred).unwrap()
    }

    pub fn duodecimal() -> Self {
        Self::new(12, Variant::Preferred).unwrap()
    }

    pub fn sexagesimal() -> Self {
        Self::new(60, Variant::Preferred).unwrap()
    }

    pub fn rungs_per_digit(&self) -> usize {
        self.ladder.len()
    }

    /// Value of each rung in units of the digit's line.
    pub fn rung_multiples(&self) -> Vec<u32> {
        let mut v = 1;
        self.ladder
            .iter()
            .map(|r| {
                let out = v;
                v *= r.factor;
                out
            })
            .collect()
    }

    /// Largest pebble count a canonical rung of this kind may carry.
    pub fn canonical_bound(&self, rung: usize) -> u32 {
        self.ladder[rung].factor / 2
    }

    /// Working fraction digits used on workbench boards.
    pub fn working_digits(&self) -> usize {
        2 * self.fraction_digits + 4
    }
}
