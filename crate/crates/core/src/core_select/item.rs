use std::fmt;
use std::ops::Add;

/// A key with an identity tag.
///
/// Items compare by `(key, id)`, so distinct ids make every item distinct and
/// the set of `k` smallest items of any collection unique.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item<K = i64> {
    pub key: K,
    pub id: u64,
}

impl<K> Item<K> {
    pub const fn new(key: K, id: u64) -> Self {
        Item { key, id }
    }
}

impl<K: fmt::Display> fmt::Display for Item<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.key, self.id)
    }
}

/// The sum of one item of `X` and one item of `Y`.
///
/// Ordered by `(key, x, y)`. `x` always comes from `X` and `y` from `Y` as the
/// caller passed them, even when an algorithm swaps the sets internally.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SumItem<K = i64> {
    pub key: K,
    pub x: Item<K>,
    pub y: Item<K>,
}

impl<K: Add<Output = K> + Clone> SumItem<K> {
    pub fn new(x: Item<K>, y: Item<K>) -> Self {
        SumItem {
            key: x.key.clone() + y.key.clone(),
            x,
            y,
        }
    }

    /// The pair of ids `(x.id, y.id)`.
    pub fn ids(&self) -> (u64, u64) {
        (self.x.id, self.y.id)
    }
}

/// An item together with a positive multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightedItem<T> {
    pub item: T,
    pub weight: u64,
}

impl<T> WeightedItem<T> {
    pub const fn new(item: T, weight: u64) -> Self {
        WeightedItem { item, weight }
    }
}
