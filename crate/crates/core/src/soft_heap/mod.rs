//! Soft heaps: priority queues that may raise the keys of a bounded fraction
//! of their entries.

mod heap;
mod median;

pub use heap::{Entry, Extracted, SoftHeap};
pub use median::{approximate_median, select_rank_via_soft_heap, select_rank_with_rounds};
