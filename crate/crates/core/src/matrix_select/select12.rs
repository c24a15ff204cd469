use std::cmp::Ordering;

use super::{check_rank, Lens, RoundStat, SortedRows};
use crate::core_select::select_nth;
use crate::soft_heap::SoftHeap;
use crate::{Error, Meter, Result};

/// A matrix entry filed under its item.
#[derive(Clone, Debug)]
struct Cell<T> {
    item: T,
    row: u32,
    col: u32,
}

impl<T: Ord> PartialEq for Cell<T> {
    fn eq(&self, other: &Self) -> bool {
        self.item == other.item
    }
}

impl<T: Ord> Eq for Cell<T> {}

impl<T: Ord> PartialOrd for Cell<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord> Ord for Cell<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.item.cmp(&other.item)
    }
}

/// Selects the `k` smallest entries in `O(m + k)` comparisons.
///
/// The first entry of every row goes into a soft heap of error `1/4`. Each of
/// `k - 1` rounds extracts a minimum and inserts the successor of the
/// extracted entry, if it was not corrupt, and of every entry that just
/// became corrupt. The `k` smallest entries are then selected from everything
/// that was inserted.
///
/// ```
/// use softselect::matrix_select::{mat_select1, Matrix};
/// use softselect::Meter;
///
/// let a = Matrix::new(vec![vec![1, 4, 7], vec![2, 5, 8], vec![3, 6, 9]]).unwrap();
/// assert_eq!(mat_select1(&a, 4, &Meter::new()).unwrap(), [2, 1, 1]);
/// ```
pub fn mat_select1<A: SortedRows + ?Sized>(a: &A, k: usize, meter: &Meter) -> Result<Vec<usize>> {
    check_rank(a, k)?;
    select1(a, k, meter)
}

/// [`mat_select1`] without the up-front rank check.
pub(crate) fn select1<A: SortedRows + ?Sized>(a: &A, k: usize, meter: &Meter) -> Result<Vec<usize>> {
    let m = a.num_rows();
    let mut counts = vec![0; m];
    if k == 0 {
        return Ok(counts);
    }
    let mut q = SoftHeap::new(0.25, meter)?;
    let mut s = Vec::with_capacity(m + 2 * k);
    for row in 0..m {
        if let Some(item) = a.entry(row, 1) {
            let c = Cell { item, row: row as u32, col: 1 };
            s.push(c.clone());
            q.insert(c);
        }
    }
    let mut newly = Vec::new();
    for _ in 1..k {
        newly.clear();
        let Some(e) = q.extract_min_into(&mut newly) else { break };
        if !e.corrupt {
            newly.push(e.item);
        }
        for c in newly.drain(..) {
            let col = c.col + 1;
            if let Some(item) = a.entry(c.row as usize, col as usize) {
                let next = Cell { item, row: c.row, col };
                s.push(next.clone());
                q.insert(next);
            }
        }
    }
    if s.len() < k {
        return Err(Error::NotEnoughItems { k });
    }
    select_nth(&mut s, k - 1, meter);
    for c in &s[..k] {
        counts[c.row as usize] += 1;
    }
    Ok(counts)
}

/// Selects the `k` smallest entries in `O(m log(k/m))` comparisons for
/// `k >= 2m`.
///
/// While `k > 2m`, rows are cut into blocks of `b = ⌊k/2m⌋` entries and the
/// `m` smallest block ends are selected with [`mat_select1`]. Their blocks
/// lie entirely inside the answer, so they are removed and `k` drops by
/// `bm >= k/4`. The rest is finished by [`mat_select1`].
pub fn mat_select2<A: SortedRows + ?Sized>(a: &A, k: usize, meter: &Meter) -> Result<Vec<usize>> {
    mat_select2_rounds(a, k, meter).map(|(counts, _)| counts)
}

/// [`mat_select2`], also reporting each reduction round.
pub fn mat_select2_rounds<A: SortedRows + ?Sized>(
    a: &A,
    k: usize,
    meter: &Meter,
) -> Result<(Vec<usize>, Vec<RoundStat>)> {
    check_rank(a, k)?;
    let m = a.num_rows();
    let mut lens = Lens {
        base: a,
        rows: (0..m).collect(),
        stride: 1,
        disp: vec![0; m],
        cap: vec![usize::MAX; m],
    };
    let mut counts = vec![0; m];
    let mut rounds = Vec::new();
    let mut k = k;
    while k > 2 * m {
        let b = k / (2 * m);
        lens.stride = b;
        let blocks = select1(&lens, m, meter)?;
        for (i, &kb) in blocks.iter().enumerate() {
            counts[i] += b * kb;
            lens.disp[i] += b * kb;
        }
        rounds.push(RoundStat { k_before: k, removed: b * m, rows: m });
        k -= b * m;
    }
    lens.stride = 1;
    for (i, c) in select1(&lens, k, meter)?.into_iter().enumerate() {
        counts[i] += c;
    }
    Ok((counts, rounds))
}
