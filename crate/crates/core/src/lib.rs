//! Soft heaps and comparison-optimal selection.
//!
//! This crate selects the `k` smallest items from structures that are already
//! partially ordered:
//!
//! * heap-ordered trees (binary, `d`-ary and arbitrary degree) in
//!   [`heap_select`],
//! * collections of sorted rows in [`matrix_select`],
//! * the pairwise sums `X + Y` of two unsorted sets in [`xy_select`].
//!
//! All of them are driven by the [`SoftHeap`](soft_heap::SoftHeap), an
//! approximate priority queue that may raise ("corrupt") the keys of a bounded
//! fraction of its entries in exchange for constant amortized cost.
//!
//! Every algorithm takes a [`Meter`] and charges each key comparison to it, so
//! the comparison complexity of a run can be measured exactly.

pub mod core_select;
pub mod error;
pub mod heap_select;
pub mod matrix_select;
pub mod soft_heap;
pub mod xy_select;

pub use core_select::{
    heapify, linear_select, select_in_place, weighted_select, Item, Meter, MeterSnapshot,
    SumItem, WeightedItem,
};
pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/primitives.md")]
    mod primitives {}
    #[doc = include_str!("../../../book/src/soft_heaps.md")]
    mod soft_heaps {}
    #[doc = include_str!("../../../book/src/heap_selection.md")]
    mod heap_selection {}
    #[doc = include_str!("../../../book/src/matrix_selection.md")]
    mod matrix_selection {}
    #[doc = include_str!("../../../book/src/xy_selection.md")]
    mod xy_selection {}
    #[doc = include_str!("../../../book/src/measuring.md")]
    mod measuring {}
}
