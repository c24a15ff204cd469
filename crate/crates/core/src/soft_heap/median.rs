use super::SoftHeap;
use crate::core_select::linear::insertion_sort;
use crate::{Error, Meter, Result};

/// Returns an item whose rank lies between `(1 - ε)n/2` and `(1 + ε)n/2`.
///
/// Inserts every item into a soft heap, performs `⌈(1 - ε)n/2⌉` extractions
/// and returns the largest extracted item.
pub fn approximate_median<T: Ord + Clone>(items: &[T], eps: f64, meter: &Meter) -> Result<T> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::InvalidEpsilon(eps, 0.5));
    }
    if items.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut heap = SoftHeap::new(eps, meter)?;
    for x in items {
        heap.insert(x.clone());
    }
    let extracts = (((1.0 - eps) * items.len() as f64) / 2.0).ceil().max(1.0) as usize;
    let mut newly = Vec::new();
    let mut best = heap.extract_min_into(&mut newly).expect("non-empty").item;
    for _ in 1..extracts {
        newly.clear();
        let e = heap.extract_min_into(&mut newly).expect("enough items");
        if meter.lt(&best, &e.item) {
            best = e.item;
        }
    }
    Ok(best)
}

/// Returns the `k`-th smallest of `items`, using soft-heap approximate medians
/// as pivots.
pub fn select_rank_via_soft_heap<T: Ord + Clone>(items: &[T], k: usize, meter: &Meter) -> Result<T> {
    select_rank_with_rounds(items, k, meter).map(|(x, _)| x)
}

/// Like [`select_rank_via_soft_heap`], also returning the number of candidates
/// alive at the start of each round.
pub fn select_rank_with_rounds<T: Ord + Clone>(
    items: &[T],
    k: usize,
    meter: &Meter,
) -> Result<(T, Vec<usize>)> {
    if k == 0 || k > items.len() {
        return Err(Error::RankOutOfRange { k, len: items.len() });
    }
    let mut rounds = Vec::new();
    let mut live = items.to_vec();
    let mut k = k;
    loop {
        rounds.push(live.len());
        if live.len() <= 8 {
            insertion_sort(&mut live, meter);
            return Ok((live.swap_remove(k - 1), rounds));
        }
        let pivot = approximate_median(&live, 0.25, meter)?;
        let (mut below, mut above) = (Vec::new(), Vec::new());
        for x in live {
            match meter.cmp(&x, &pivot) {
                std::cmp::Ordering::Less => below.push(x),
                std::cmp::Ordering::Greater => above.push(x),
                std::cmp::Ordering::Equal => {}
            }
        }
        let rank = below.len() + 1;
        match k.cmp(&rank) {
            std::cmp::Ordering::Equal => return Ok((pivot, rounds)),
            std::cmp::Ordering::Less => live = below,
            std::cmp::Ordering::Greater => {
                live = above;
                k -= rank;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_median() {
        assert_eq!(approximate_median(&[42], 0.25, &Meter::new()), Ok(42));
        assert_eq!(approximate_median::<i32>(&[], 0.25, &Meter::new()), Err(Error::EmptyInput));
        assert!(approximate_median(&[1], 0.5, &Meter::new()).is_err());
    }

    #[test]
    fn median_rank_window() {
        let items: Vec<u32> = (0..1000).map(|i| (i * 613) % 1000).collect();
        let m = approximate_median(&items, 0.25, &Meter::new()).unwrap();
        let rank = m + 1;
        assert!((375..=625).contains(&rank), "rank {rank}");
    }

    #[test]
    fn selects_exact_ranks() {
        let items: Vec<u32> = (0..1000).map(|i| (i * 613) % 1000).collect();
        for k in [1, 500, 1000] {
            assert_eq!(select_rank_via_soft_heap(&items, k, &Meter::new()), Ok(k as u32 - 1));
        }
        assert!(select_rank_via_soft_heap(&items, 0, &Meter::new()).is_err());
    }
}
