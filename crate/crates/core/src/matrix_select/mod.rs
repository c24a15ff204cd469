//! Selecting the `k` smallest items of a matrix whose rows are sorted.
//!
//! Every algorithm returns a vector `K` of per-row counts: the `k` smallest
//! items are exactly the first `K[i]` items of each row `i`.

mod rows;
mod select12;
mod select3;
mod select4;

pub use rows::{matrix_id, Matrix, MatrixView, SortedRows};
pub(crate) use rows::Lens;
pub(crate) use select12::select1;
pub use select12::{mat_select1, mat_select2, mat_select2_rounds};
pub use select3::{mat_select3, mat_select3_rounds};
pub use select4::{mat_select4, mat_select4_report, verify_selection, Select4Report};

/// What one reduction round of [`mat_select2`] or [`mat_select3`] did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundStat {
    /// Items still to be selected when the round started.
    pub k_before: usize,
    /// Items certified and removed by the round.
    pub removed: usize,
    /// Rows that took part in the round.
    pub rows: usize,
}

/// Total number of entries, or `None` if some row is unbounded.
fn total_len<A: SortedRows + ?Sized>(a: &A) -> Option<usize> {
    (0..a.num_rows()).try_fold(0usize, |acc, i| a.row_len(i).map(|n| acc + n))
}

fn check_rank<A: SortedRows + ?Sized>(a: &A, k: usize) -> crate::Result<()> {
    match total_len(a) {
        Some(total) if k == 0 || k > total => Err(crate::Error::RankOutOfRange { k, len: total }),
        None if k == 0 => Err(crate::Error::RankOutOfRange { k, len: 0 }),
        _ => Ok(()),
    }
}
