//! Selecting the `k` smallest pairwise sums `x + y` with `x` from `X` and `y`
//! from `Y`, where neither set is sorted.

mod partition;
mod select;

use std::ops::Add;

pub use partition::YPartition;
pub use select::{xy_select1, xy_select2, xy_select2_rounds, xy_select2_with, XyRound};

use crate::{Error, Item, Result, SumItem};

/// A pair of sets `X`, `Y`, stored with the larger one first.
///
/// The algorithms treat the larger set as the rows of an implicit `m × n`
/// matrix of sums. Swapping is internal: every [`SumItem`] they return has
/// `x` from the caller's `X` and `y` from the caller's `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XYInstance<K = i64> {
    rows: Vec<Item<K>>,
    cols: Vec<Item<K>>,
    swapped: bool,
}

impl<K: Ord + Copy + Add<Output = K>> XYInstance<K> {
    pub fn new(x: Vec<Item<K>>, y: Vec<Item<K>>) -> Result<Self> {
        if x.is_empty() || y.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(if x.len() >= y.len() {
            XYInstance { rows: x, cols: y, swapped: false }
        } else {
            XYInstance { rows: y, cols: x, swapped: true }
        })
    }

    /// Builds an instance from bare keys; ids are the positions in each list.
    pub fn from_keys(x: Vec<K>, y: Vec<K>) -> Result<Self> {
        let tag = |v: Vec<K>| v.into_iter().enumerate().map(|(i, k)| Item::new(k, i as u64)).collect();
        Self::new(tag(x), tag(y))
    }

    /// Size of the larger set.
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// Size of the smaller set.
    pub fn n(&self) -> usize {
        self.cols.len()
    }

    /// The larger set.
    pub fn rows(&self) -> &[Item<K>] {
        &self.rows
    }

    /// The smaller set.
    pub fn cols(&self) -> &[Item<K>] {
        &self.cols
    }

    /// Whether the caller's `Y` was the larger set.
    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// The sum of a row item and a column item, oriented as the caller's
    /// `(x, y)`.
    pub fn sum(&self, row: Item<K>, col: Item<K>) -> SumItem<K> {
        if self.swapped {
            SumItem::new(col, row)
        } else {
            SumItem::new(row, col)
        }
    }

    fn check_rank(&self, k: usize) -> Result<()> {
        let total = self.m().saturating_mul(self.n());
        if k == 0 || k > total {
            return Err(Error::RankOutOfRange { k, len: total });
        }
        Ok(())
    }
}
