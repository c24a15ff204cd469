use super::Meter;
use crate::{Error, Result};

/// Below this length a range is finished by insertion sort.
const SMALL: usize = 10;

/// Rearranges `v` so that `v[k - 1]` is its `k`-th smallest element, every
/// element before it is smaller and every element after it is larger.
///
/// Deterministic median-of-medians with groups of five, so the number of
/// comparisons is linear in `v.len()` in the worst case.
pub fn select_in_place<T: Ord>(v: &mut [T], k: usize, meter: &Meter) -> Result<()> {
    if k == 0 || k > v.len() {
        return Err(Error::RankOutOfRange { k, len: v.len() });
    }
    select_nth(v, k - 1, meter);
    Ok(())
}

/// Returns the `k`-th smallest of `items` and the `k - 1` items below it.
///
/// ```
/// use softselect::{linear_select, Item, Meter};
///
/// let items: Vec<Item> = [3, 1, 4, 1, 5, 9, 2, 6]
///     .iter()
///     .enumerate()
///     .map(|(id, &key)| Item::new(key, id as u64))
///     .collect();
/// let meter = Meter::new();
/// let (kth, smaller) = linear_select(&items, 4, &meter).unwrap();
/// assert_eq!(kth, Item::new(3, 0));
/// assert_eq!(smaller.len(), 3);
/// ```
pub fn linear_select<T: Ord + Clone>(items: &[T], k: usize, meter: &Meter) -> Result<(T, Vec<T>)> {
    let mut v = items.to_vec();
    select_in_place(&mut v, k, meter)?;
    let kth = v[k - 1].clone();
    v.truncate(k - 1);
    Ok((kth, v))
}

/// Places the element of 0-based rank `nth` at index `nth`, smaller ones before
/// it and larger ones after it. `nth < v.len()` is the caller's obligation.
pub(crate) fn select_nth<T: Ord>(v: &mut [T], nth: usize, meter: &Meter) {
    debug_assert!(nth < v.len());
    let (mut lo, mut hi) = (0, v.len());
    loop {
        let s = &mut v[lo..hi];
        let n = s.len();
        if n <= SMALL {
            insertion_sort(s, meter);
            return;
        }
        let groups = n / 5;
        for g in 0..groups {
            let m = median5(s, 5 * g, meter);
            s.swap(g, m);
        }
        let mid = groups / 2;
        select_nth(&mut s[..groups], mid, meter);
        let p = partition(s, mid, meter);
        let target = nth - lo;
        match target.cmp(&p) {
            std::cmp::Ordering::Equal => return,
            std::cmp::Ordering::Less => hi = lo + p,
            std::cmp::Ordering::Greater => lo += p + 1,
        }
    }
}

/// Partitions around `s[pivot]` and returns the pivot's final index.
/// Exactly `s.len() - 1` comparisons.
fn partition<T: Ord>(s: &mut [T], pivot: usize, meter: &Meter) -> usize {
    let last = s.len() - 1;
    s.swap(pivot, last);
    let mut i = 0;
    for j in 0..last {
        if meter.lt(&s[j], &s[last]) {
            s.swap(i, j);
            i += 1;
        }
    }
    s.swap(i, last);
    i
}

/// Index of the median of `s[at..at + 5]`, using six comparisons.
fn median5<T: Ord>(s: &[T], at: usize, meter: &Meter) -> usize {
    let lt = |i: usize, j: usize| meter.lt(&s[i], &s[j]);
    let (mut a, mut b, mut c, mut d, e) = (at, at + 1, at + 2, at + 3, at + 4);
    if lt(b, a) {
        std::mem::swap(&mut a, &mut b);
    }
    if lt(d, c) {
        std::mem::swap(&mut c, &mut d);
    }
    // The smaller of the two pair minima is below three others: not the median.
    if lt(c, a) {
        std::mem::swap(&mut a, &mut c);
        std::mem::swap(&mut b, &mut d);
    }
    a = e;
    if lt(b, a) {
        std::mem::swap(&mut a, &mut b);
    }
    if lt(c, a) {
        std::mem::swap(&mut a, &mut c);
        std::mem::swap(&mut b, &mut d);
    }
    if lt(b, c) {
        b
    } else {
        c
    }
}

pub(crate) fn insertion_sort<T: Ord>(s: &mut [T], meter: &Meter) {
    for i in 1..s.len() {
        let mut j = i;
        while j > 0 && meter.lt(&s[j], &s[j - 1]) {
            s.swap(j, j - 1);
            j -= 1;
        }
    }
}
