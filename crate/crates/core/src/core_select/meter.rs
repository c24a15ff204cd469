use std::cell::Cell;
use std::cmp::Ordering;
use std::ops::Sub;

/// Per-run counters.
///
/// Every algorithm in this crate routes its key comparisons through a `Meter`
/// passed by the caller. Soft heaps additionally record their insertions,
/// extractions and corruptions here.
#[derive(Debug, Default)]
pub struct Meter {
    comparisons: Cell<u64>,
    inserts: Cell<u64>,
    extract_mins: Cell<u64>,
    corruptions: Cell<u64>,
}

/// A copy of the counters of a [`Meter`] at one instant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct MeterSnapshot {
    pub comparisons: u64,
    pub inserts: u64,
    pub extract_mins: u64,
    pub corruptions: u64,
}

impl Sub for MeterSnapshot {
    type Output = MeterSnapshot;

    fn sub(self, rhs: Self) -> Self {
        MeterSnapshot {
            comparisons: self.comparisons - rhs.comparisons,
            inserts: self.inserts - rhs.inserts,
            extract_mins: self.extract_mins - rhs.extract_mins,
            corruptions: self.corruptions - rhs.corruptions,
        }
    }
}

fn bump(c: &Cell<u64>, by: u64) {
    c.set(c.get() + by);
}

impl Meter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Compares two values and counts one comparison.
    #[inline]
    pub fn cmp<T: Ord + ?Sized>(&self, a: &T, b: &T) -> Ordering {
        bump(&self.comparisons, 1);
        a.cmp(b)
    }

    /// `a < b`, counting one comparison.
    #[inline]
    pub fn lt<T: Ord + ?Sized>(&self, a: &T, b: &T) -> bool {
        bump(&self.comparisons, 1);
        a < b
    }

    pub fn comparisons(&self) -> u64 {
        self.comparisons.get()
    }

    pub fn inserts(&self) -> u64 {
        self.inserts.get()
    }

    pub fn extract_mins(&self) -> u64 {
        self.extract_mins.get()
    }

    pub fn corruptions(&self) -> u64 {
        self.corruptions.get()
    }

    pub fn snapshot(&self) -> MeterSnapshot {
        MeterSnapshot {
            comparisons: self.comparisons(),
            inserts: self.inserts(),
            extract_mins: self.extract_mins(),
            corruptions: self.corruptions(),
        }
    }

    pub fn reset(&self) {
        self.comparisons.set(0);
        self.inserts.set(0);
        self.extract_mins.set(0);
        self.corruptions.set(0);
    }

    pub(crate) fn record_insert(&self) {
        bump(&self.inserts, 1);
    }

    pub(crate) fn record_extract(&self) {
        bump(&self.extract_mins, 1);
    }

    pub(crate) fn record_corruptions(&self, n: u64) {
        bump(&self.corruptions, n);
    }
}
