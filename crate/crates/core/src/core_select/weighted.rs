use super::linear::{insertion_sort, select_nth};
use super::{Meter, WeightedItem};
use crate::{Error, Result};

/// Returns the shortest prefix, in item order, of `items` whose weights add
/// up to at least `target`. The prefix is returned in arbitrary order.
///
/// Repeatedly splits the live range at its median, so the comparison count is
/// linear in `items.len()`.
///
/// ```
/// use softselect::{weighted_select, Meter, WeightedItem};
///
/// let items = vec![
///     WeightedItem::new(10, 4),
///     WeightedItem::new(30, 8),
///     WeightedItem::new(20, 2),
/// ];
/// let mut prefix = weighted_select(items, 5, &Meter::new()).unwrap();
/// prefix.sort_by_key(|w| w.item);
/// assert_eq!(prefix.iter().map(|w| w.item).collect::<Vec<_>>(), [10, 20]);
/// ```
pub fn weighted_select<T: Ord>(
    items: Vec<WeightedItem<T>>,
    target: u64,
    meter: &Meter,
) -> Result<Vec<WeightedItem<T>>> {
    if items.iter().any(|w| w.weight == 0) {
        return Err(Error::ZeroWeight);
    }
    let total: u64 = items.iter().map(|w| w.weight).sum();
    if target > total {
        return Err(Error::WeightOutOfRange { target, total });
    }
    let mut keyed: Vec<ByItem<T>> = items.into_iter().map(ByItem).collect();
    let len = prefix_len(&mut keyed, target, meter);
    keyed.truncate(len);
    Ok(keyed.into_iter().map(|b| b.0).collect())
}

/// Orders weighted items by their item alone.
struct ByItem<T>(WeightedItem<T>);

impl<T: Ord> PartialEq for ByItem<T> {
    fn eq(&self, other: &Self) -> bool {
        self.0.item == other.0.item
    }
}

impl<T: Ord> Eq for ByItem<T> {}

impl<T: Ord> PartialOrd for ByItem<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord> Ord for ByItem<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.item.cmp(&other.0.item)
    }
}

/// Rearranges `items` so that its first `ℓ` entries are the `ℓ` smallest with
/// minimal `ℓ` reaching `need`, and returns `ℓ`.
fn prefix_len<T: Ord>(items: &mut [ByItem<T>], mut need: u64, meter: &Meter) -> usize {
    if need == 0 {
        return 0;
    }
    let (mut lo, mut hi) = (0, items.len());
    loop {
        let n = hi - lo;
        if n <= 5 {
            let s = &mut items[lo..hi];
            insertion_sort(s, meter);
            for (i, w) in s.iter().enumerate() {
                if w.0.weight >= need {
                    return lo + i + 1;
                }
                need -= w.0.weight;
            }
            unreachable!("target exceeds the remaining weight");
        }
        let mid = n / 2;
        select_nth(&mut items[lo..hi], mid, meter);
        let low: u64 = items[lo..lo + mid].iter().map(|w| w.0.weight).sum();
        if low >= need {
            hi = lo + mid;
        } else {
            need -= low;
            lo += mid;
        }
    }
}
