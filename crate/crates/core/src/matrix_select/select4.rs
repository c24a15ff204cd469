use super::select12::select1;
use super::{check_rank, select3, SortedRows};
use crate::{Error, Meter, Result};

/// How [`mat_select4`] reached its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Select4Report {
    /// The number of block ends selected in the accepted attempt.
    pub ell: usize,
    /// Attempts made, including the accepted one.
    pub attempts: usize,
}

/// Selects the `k` smallest entries in `O(m + Σ log(k_i + 1))` comparisons,
/// where `k_i` is the answer's count in row `i`.
///
/// Rows are cut into blocks of sizes 1, 2, 4, …, so block ends sit at
/// columns `2^j - 1`. For `ℓ = m, 2m, 4m, …` the `ℓ` smallest block ends are
/// selected; if row `i` contributed `ℓ_i` of them, its answer lies within its
/// first `2^(ℓ_i + 1) - 1` entries, and [`mat_select3`](super::mat_select3)
/// finishes on those prefixes. A guess of `ℓ` that was too small shows up
/// either as prefixes too short to hold `k` entries or as a result that
/// fails [`verify_selection`].
pub fn mat_select4<A: SortedRows + ?Sized>(a: &A, k: usize, meter: &Meter) -> Result<Vec<usize>> {
    mat_select4_report(a, k, meter).map(|(counts, _)| counts)
}

/// [`mat_select4`], also reporting the accepted `ℓ`.
pub fn mat_select4_report<A: SortedRows + ?Sized>(
    a: &A,
    k: usize,
    meter: &Meter,
) -> Result<(Vec<usize>, Select4Report)> {
    check_rank(a, k)?;
    let m = a.num_rows();
    let live: Vec<usize> = (0..m).filter(|&i| a.row_len(i) != Some(0)).collect();
    let ends = BlockEnds { base: a, rows: &live };
    let total_ends = (0..live.len()).try_fold(0usize, |acc, r| ends.row_len(r).map(|n| acc + n));
    let mut ell = live.len();
    let mut attempts = 0;
    loop {
        attempts += 1;
        let want = total_ends.map_or(ell, |t| ell.min(t));
        let picked = select1(&ends, want, meter)?;
        let prefix: Vec<usize> = live
            .iter()
            .zip(&picked)
            .map(|(&i, &l)| {
                let n = if l + 1 >= usize::BITS as usize { usize::MAX } else { (1usize << (l + 1)) - 1 };
                a.row_len(i).map_or(n, |len| n.min(len))
            })
            .collect();
        if prefix.iter().sum::<usize>() >= k {
            let sub = super::Lens {
                base: a,
                rows: live.clone(),
                stride: 1,
                disp: vec![0; live.len()],
                cap: prefix.clone(),
            };
            let (sub_counts, _) = select3::run(&sub, &prefix, k, meter)?;
            let mut counts = vec![0; m];
            for (&i, c) in live.iter().zip(sub_counts) {
                counts[i] = c;
            }
            if verify_selection(a, &counts, meter)? {
                return Ok((counts, Select4Report { ell, attempts }));
            }
        }
        if total_ends.is_some_and(|t| want >= t) {
            // Every prefix already was the whole row, so the answer was exact.
            unreachable!("selection over whole rows failed verification");
        }
        ell *= 2;
    }
}

/// Checks in `O(m)` comparisons whether the first `counts[i]` entries of every
/// row are the `Σ counts[i]` smallest entries of the matrix.
///
/// Computes the largest selected entry `M` and checks that the first
/// unselected entry of every row exceeds it.
pub fn verify_selection<A: SortedRows + ?Sized>(a: &A, counts: &[usize], meter: &Meter) -> Result<bool> {
    let m = a.num_rows();
    if counts.len() != m {
        return Err(Error::RowMismatch { expected: m, got: counts.len() });
    }
    for (row, &c) in counts.iter().enumerate() {
        if a.row_len(row).is_some_and(|len| c > len) {
            return Err(Error::CountExceedsRow { row, count: c });
        }
    }
    let mut max = None;
    for (row, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let x = a.entry(row, c).expect("count within row");
        max = match max {
            Some(cur) if !meter.lt(&cur, &x) => Some(cur),
            _ => Some(x),
        };
    }
    let Some(max) = max else { return Ok(true) };
    for (row, &c) in counts.iter().enumerate() {
        if let Some(next) = a.entry(row, c + 1) {
            if !meter.lt(&max, &next) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Block ends of the live rows: logical column `j` is column `2^j - 1`.
struct BlockEnds<'a, A: ?Sized> {
    base: &'a A,
    rows: &'a [usize],
}

impl<A: SortedRows + ?Sized> SortedRows for BlockEnds<'_, A> {
    type Item = A::Item;

    fn num_rows(&self) -> usize {
        self.rows.len()
    }

    fn entry(&self, row: usize, col: usize) -> Option<A::Item> {
        if col == 0 || col >= usize::BITS as usize {
            return None;
        }
        self.base.entry(self.rows[row], (1usize << col) - 1)
    }

    fn row_len(&self, row: usize) -> Option<usize> {
        self.base
            .row_len(self.rows[row])
            .map(|n| (usize::BITS - (n + 1).leading_zeros() - 1) as usize)
    }
}
