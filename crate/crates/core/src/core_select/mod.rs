//! Comparison-counted primitives shared by the selection algorithms.

mod heapify;
mod item;
pub(crate) mod linear;
mod meter;
mod weighted;

pub use heapify::{heapify, is_heap};
pub use item::{Item, SumItem, WeightedItem};
pub use linear::{linear_select, select_in_place};
pub use meter::{Meter, MeterSnapshot};
pub use weighted::weighted_select;

pub(crate) use linear::select_nth;
