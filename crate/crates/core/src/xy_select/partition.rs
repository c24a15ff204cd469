use std::fmt::Write;

use crate::core_select::select_nth;
use crate::{Item, Meter};

/// A working copy of `Y`, progressively partitioned into blocks by rank.
///
/// `Y` is padded on the right to length `N`, the next power of two, with
/// virtual `+∞` entries. After `i` refinements a rank `r` is *pinned*, i.e.
/// position `r` (1-based) holds the item of rank `r`, exactly when `r` has at
/// most `i` one bits. Between two consecutive pinned ranks `r1 < r2` the
/// positions `r1+1 ..= r2` hold the items of ranks `r1+1 ..= r2` in some
/// order.
///
/// Each refinement splits every block of size `2^l` into blocks of sizes
/// `1, 1, 2, 4, …, 2^(l-1)` by repeated exact selection, in `O(n)`
/// comparisons.
///
/// ```
/// use softselect::xy_select::YPartition;
/// use softselect::{Item, Meter};
///
/// let y = (0..32).rev().map(|k| Item::new(k, k as u64)).collect();
/// let mut p = YPartition::new(y);
/// p.refine(&Meter::new());
/// assert_eq!(p.describe(), "Y[1],Y[2],Y[3:4],Y[5:8],Y[9:16],Y[17:32]");
/// ```
#[derive(Clone, Debug)]
pub struct YPartition<K> {
    y: Vec<Item<K>>,
    padded: usize,
    round: u32,
}

impl<K: Ord> YPartition<K> {
    pub fn new(y: Vec<Item<K>>) -> Self {
        let padded = y.len().next_power_of_two();
        YPartition { y, padded, round: 0 }
    }

    /// Number of real items.
    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    /// `N`, the length including padding.
    pub fn padded_len(&self) -> usize {
        self.padded
    }

    /// Refinements done so far.
    pub fn round(&self) -> u32 {
        self.round
    }

    /// The working copy, in its current order.
    pub fn as_slice(&self) -> &[Item<K>] {
        &self.y
    }

    pub fn into_vec(self) -> Vec<Item<K>> {
        self.y
    }

    /// Whether rank `r` (1-based) currently holds its exact item. Rank 0 is
    /// the empty prefix and always counts as pinned.
    pub fn is_pinned(&self, r: usize) -> bool {
        r <= self.padded && r.count_ones() <= self.round
    }

    /// The item at pinned rank `r`, or `None` if `r` is padding.
    ///
    /// # Panics
    ///
    /// If `r` is zero or not pinned.
    pub fn pinned(&self, r: usize) -> Option<&Item<K>> {
        assert!(r > 0 && self.is_pinned(r), "rank {r} is not pinned after {} rounds", self.round);
        self.y.get(r - 1)
    }

    /// The pinned rank following `r`.
    fn next_boundary(&self, r: usize) -> usize {
        if r.count_ones() < self.round {
            r + 1
        } else {
            r + (1 << r.trailing_zeros())
        }
    }

    /// The blocks as 1-based inclusive rank ranges, over the padded length.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        if self.round == 0 {
            return vec![(1, self.padded)];
        }
        let mut out = Vec::new();
        let mut r = 0;
        while r < self.padded {
            let next = self.next_boundary(r);
            out.push((r + 1, next));
            r = next;
        }
        out
    }

    /// The blocks written as `Y[a]` or `Y[a:b]`, comma separated.
    pub fn describe(&self) -> String {
        let mut s = String::new();
        for (i, (a, b)) in self.blocks().into_iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            if a == b {
                write!(s, "Y[{a}]").unwrap();
            } else {
                write!(s, "Y[{a}:{b}]").unwrap();
            }
        }
        s
    }

    /// Splits every block of size `2^l` into blocks `1, 1, 2, …, 2^(l-1)`.
    pub fn refine(&mut self, meter: &Meter) {
        if self.round == 0 {
            // The padded range (0, N] is the lower half of a block (0, 2N].
            self.split(0, 2 * self.padded, meter);
        } else {
            let mut r = 0;
            while r < self.padded.min(self.y.len()) {
                let next = self.next_boundary(r);
                if next - r > 1 {
                    self.split(r, next, meter);
                }
                r = next;
            }
        }
        self.round += 1;
    }

    /// Pins ranks `lo + 2^j` inside the block `(lo, hi]`, largest first.
    /// Rank `hi` itself is already in place.
    fn split(&mut self, lo: usize, hi: usize, meter: &Meter) {
        let mut end = (hi - 1).min(self.y.len());
        let mut t = (hi - lo) / 2;
        while t >= 1 {
            if lo + t <= end {
                select_nth(&mut self.y[lo..end], t - 1, meter);
                end = lo + t - 1;
            }
            t /= 2;
        }
    }
}
