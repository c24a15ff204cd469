use super::select12::select1;
use super::{Lens, RoundStat, SortedRows};
use crate::{Error, Meter, Result};

/// Selects the `k` smallest entries among the first `lens[i]` entries of each
/// row `i`, in `O(m + Σ log lens[i])` comparisons.
///
/// A round only looks at the long rows, those with at least `⌊k/2m⌋`
/// entries left. They hold at least half of the answer, so a round of
/// [`mat_select2`](super::mat_select2) on them with `⌈k/2⌉` in place of `k`
/// removes at least `k/8` items. Rows are kept in buckets by the ceiling of
/// the base-2 logarithm of their remaining length, so the long rows are found
/// without scanning the short ones.
pub fn mat_select3<A: SortedRows + ?Sized>(
    a: &A,
    lens: &[usize],
    k: usize,
    meter: &Meter,
) -> Result<Vec<usize>> {
    mat_select3_rounds(a, lens, k, meter).map(|(counts, _)| counts)
}

/// [`mat_select3`], also reporting each reduction round.
pub fn mat_select3_rounds<A: SortedRows + ?Sized>(
    a: &A,
    lens: &[usize],
    k: usize,
    meter: &Meter,
) -> Result<(Vec<usize>, Vec<RoundStat>)> {
    let m = a.num_rows();
    if lens.len() != m {
        return Err(Error::RowMismatch { expected: m, got: lens.len() });
    }
    for (row, &n) in lens.iter().enumerate() {
        if n == 0 {
            return Err(Error::EmptyRow { row });
        }
        if a.row_len(row).is_some_and(|len| n > len) {
            return Err(Error::CountExceedsRow { row, count: n });
        }
    }
    let total: usize = lens.iter().sum();
    if k == 0 || k > total {
        return Err(Error::RankOutOfRange { k, len: total });
    }
    run(a, lens, k, meter)
}

pub(crate) fn run<A: SortedRows + ?Sized>(
    a: &A,
    lens: &[usize],
    mut k: usize,
    meter: &Meter,
) -> Result<(Vec<usize>, Vec<RoundStat>)> {
    let m = lens.len();
    let mut rem = lens.to_vec();
    let mut counts = vec![0; m];
    let mut buckets = Buckets::new(&rem);
    let mut rounds = Vec::new();
    while k > 2 * m {
        let threshold = k / (2 * m);
        let long = buckets.at_least(threshold, &rem);
        let m_long = long.len();
        let k_half = k.div_ceil(2);
        let b = (k_half / (2 * m_long)).max(1);
        let lens_view = Lens {
            base: a,
            disp: long.iter().map(|&i| counts[i]).collect(),
            cap: long.iter().map(|&i| rem[i] / b).collect(),
            rows: long,
            stride: b,
        };
        let blocks = select1(&lens_view, m_long, meter)?;
        for (r, &kb) in blocks.iter().enumerate() {
            if kb > 0 {
                let i = lens_view.rows[r];
                counts[i] += b * kb;
                let old = rem[i];
                rem[i] -= b * kb;
                buckets.refile(i, old, rem[i]);
            }
        }
        rounds.push(RoundStat { k_before: k, removed: b * m_long, rows: m_long });
        k -= b * m_long;
    }
    if k > 0 {
        let live: Vec<usize> = (0..m).filter(|&i| rem[i] > 0).collect();
        let view = Lens {
            base: a,
            disp: live.iter().map(|&i| counts[i]).collect(),
            cap: live.iter().map(|&i| rem[i]).collect(),
            rows: live,
            stride: 1,
        };
        for (r, c) in select1(&view, k, meter)?.into_iter().enumerate() {
            counts[view.rows[r]] += c;
        }
    }
    Ok((counts, rounds))
}

/// Rows grouped by `⌈log2 remaining⌉`; rows with nothing left are dropped.
struct Buckets {
    slots: Vec<Vec<usize>>,
    pos: Vec<usize>,
}

fn bucket_of(n: usize) -> usize {
    n.next_power_of_two().trailing_zeros() as usize
}

impl Buckets {
    fn new(rem: &[usize]) -> Self {
        let top = rem.iter().map(|&n| bucket_of(n)).max().unwrap_or(0);
        let mut b = Buckets { slots: vec![Vec::new(); top + 1], pos: vec![0; rem.len()] };
        for (i, &n) in rem.iter().enumerate() {
            b.push(i, n);
        }
        b
    }

    fn push(&mut self, row: usize, n: usize) {
        if n > 0 {
            let s = &mut self.slots[bucket_of(n)];
            self.pos[row] = s.len();
            s.push(row);
        }
    }

    fn refile(&mut self, row: usize, old: usize, new: usize) {
        let (from, to) = (bucket_of(old), bucket_of(new));
        if new > 0 && from == to {
            return;
        }
        let s = &mut self.slots[from];
        let p = self.pos[row];
        s.swap_remove(p);
        if let Some(&moved) = s.get(p) {
            self.pos[moved] = p;
        }
        self.push(row, new);
    }

    /// Rows with at least `t >= 1` entries left. Only the bucket that
    /// straddles `t` holds rows that must be checked individually.
    fn at_least(&self, t: usize, rem: &[usize]) -> Vec<usize> {
        let low = bucket_of(t);
        let mut out = Vec::new();
        for j in (low..self.slots.len()).rev() {
            if j == low {
                out.extend(self.slots[j].iter().copied().filter(|&i| rem[i] >= t));
            } else {
                out.extend_from_slice(&self.slots[j]);
            }
        }
        out
    }
}
