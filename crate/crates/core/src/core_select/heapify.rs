use super::Meter;

/// Arranges `v` into an implicit binary min-heap: with 1-based positions,
/// position `p` holds an element no larger than positions `2p` and `2p + 1`.
///
/// Bottom-up construction using at most `2 * v.len()` comparisons.
pub fn heapify<T: Ord>(v: &mut [T], meter: &Meter) {
    let n = v.len();
    for start in (0..n / 2).rev() {
        let mut p = start;
        loop {
            let l = 2 * p + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let c = if r < n && meter.lt(&v[r], &v[l]) { r } else { l };
            if meter.lt(&v[c], &v[p]) {
                v.swap(c, p);
                p = c;
            } else {
                break;
            }
        }
    }
}

/// Whether `v` is in implicit binary min-heap order.
pub fn is_heap<T: Ord>(v: &[T]) -> bool {
    (1..v.len()).all(|i| v[(i - 1) / 2] <= v[i])
}
