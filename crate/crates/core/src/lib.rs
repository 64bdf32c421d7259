//! A simulated Salamis-style counting board: exact signed-pebble arithmetic
//! in bases 10, 12 and 60, with replayable move traces.

pub mod analysis;
pub mod board;
pub mod codecs;
pub mod error;
pub mod exactnum;
pub mod workbench;

pub use num_bigint::BigInt;

/// Exact rational used on the board.
pub type Rational = num_rational::Ratio<BigInt>;

pub use board::{BaseConfig, BoardState, Layout, Move, RungKind, Side, Variant, Zone, ZoneSel};
pub use error::{Error, GridId, Result, RungAddr};
pub use exactnum::{PositionalNumber, Rounding};
pub use workbench::{Scaled, Trace, Workbench};
