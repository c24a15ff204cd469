//! Selecting the `k` smallest items of a heap-ordered tree.

mod bound;
mod select;
mod source;

pub use bound::degree_sum_bound;
pub use select::{
    naive_heap_select, soft_select, soft_select_dary, soft_select_heapify, soft_select_heapify_with,
    soft_select_with, SelectionOutput, TraceStep,
};
pub use source::{ArrayHeap, HeapSource, Tree};
