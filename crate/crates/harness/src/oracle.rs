//! Ground truth by exhaustive enumeration and sorting.

use std::ops::Add;

use softselect::heap_select::HeapSource;
use softselect::matrix_select::SortedRows;
use softselect::{Error, Item, SumItem};

/// Largest `|X| * |Y|` that [`xy`] will enumerate.
pub const MAX_SUMS: usize = 10_000_000;

/// The `k` smallest of `items`, ascending.
pub fn smallest<T: Ord + Clone>(items: &[T], k: usize) -> Vec<T> {
    let mut v = items.to_vec();
    v.sort_unstable();
    v.truncate(k);
    v
}

/// Every item of a heap source, in no particular order.
pub fn heap_items<S: HeapSource>(src: &S) -> Vec<S::Item> {
    let mut out = Vec::new();
    let mut stack: Vec<S::Node> = src.root().into_iter().collect();
    while let Some(v) = stack.pop() {
        out.push(src.item(v));
        src.children(v, &mut stack);
    }
    out
}

/// The `k` smallest items of a heap source, ascending.
pub fn heap<S: HeapSource>(src: &S, k: usize) -> Vec<S::Item> {
    smallest(&heap_items(src), k)
}

/// How many of the `k` smallest entries each row holds.
pub fn matrix<A: SortedRows + ?Sized>(a: &A, k: usize) -> Vec<usize> {
    let mut all = Vec::new();
    for row in 0..a.num_rows() {
        let mut col = 1;
        while let Some(x) = a.entry(row, col) {
            all.push((x, row));
            col += 1;
        }
    }
    let mut counts = vec![0; a.num_rows()];
    for (_, row) in smallest(&all, k) {
        counts[row] += 1;
    }
    counts
}

/// The `k` smallest pairwise sums, ascending. Refuses instances with more
/// than [`MAX_SUMS`] sums.
pub fn xy<K: Ord + Copy + Add<Output = K>>(x: &[Item<K>], y: &[Item<K>], k: usize) -> Result<Vec<SumItem<K>>, Error> {
    let total = x.len().saturating_mul(y.len());
    if total > MAX_SUMS {
        return Err(Error::TooLarge(format!("{} x {} sums", x.len(), y.len())));
    }
    let mut sums = Vec::with_capacity(total);
    for &a in x {
        for &b in y {
            sums.push(SumItem::new(a, b));
        }
    }
    Ok(smallest(&sums, k))
}
