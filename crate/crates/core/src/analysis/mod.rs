//! Counting claims about the board: pebble efficiency, operation counts of
//! the table method, the embedded-zero probability and trace move counts.

mod cost;
mod efficiency;
mod zeros;

pub use cost::{quarter_square_product, quarter_square_table, table_method_cost, trace_cost, OpCount, TraceCost};
pub use efficiency::{efficiency_table, max_sequential_count, min_pebbles, published_sequential_count, EfficiencyRow};
pub use zeros::embedded_zero_probability;
