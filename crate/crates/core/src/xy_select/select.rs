use std::ops::Add;

use super::{XYInstance, YPartition};
use crate::core_select::heapify;
use crate::heap_select::{soft_select_dary, soft_select_heapify, HeapSource};
use crate::matrix_select::{select1, SortedRows};
use crate::{weighted_select, Item, Meter, Result, SumItem, WeightedItem};

/// Selects the `k` smallest sums in `O(m + n + k)` comparisons.
///
/// Both sets are heapified. The sums then form a heap of degree four rooted
/// at `x1 + y1`: node `xi + y1` has children `x2i + y1`, `x2i+1 + y1`,
/// `xi + y2` and `xi + y3`, and node `xi + yj` with `j > 1` has children
/// `xi + y2j` and `xi + y2j+1`. Soft selection with error `1/8` runs on
/// that heap.
///
/// ```
/// use softselect::xy_select::{xy_select1, XYInstance};
/// use softselect::Meter;
///
/// let inst = XYInstance::from_keys(vec![1, 2], vec![10, 20]).unwrap();
/// let mut sums: Vec<i64> = xy_select1(&inst, 3, &Meter::new())
///     .unwrap()
///     .iter()
///     .map(|s| s.key)
///     .collect();
/// sums.sort();
/// assert_eq!(sums, [11, 12, 21]);
/// ```
pub fn xy_select1<K: Ord + Copy + Add<Output = K>>(
    inst: &XYInstance<K>,
    k: usize,
    meter: &Meter,
) -> Result<Vec<SumItem<K>>> {
    inst.check_rank(k)?;
    let mut x = inst.rows().to_vec();
    let mut y = inst.cols().to_vec();
    heapify(&mut x, meter);
    heapify(&mut y, meter);
    let src = SumHeap { inst, x: &x, y: &y };
    Ok(soft_select_dary(&src, k, 4, meter)?.items)
}

/// The degree-four heap of sums over heapified `x` and `y` (0-based).
struct SumHeap<'a, K> {
    inst: &'a XYInstance<K>,
    x: &'a [Item<K>],
    y: &'a [Item<K>],
}

impl<K: Ord + Copy + Add<Output = K>> HeapSource for SumHeap<'_, K> {
    type Node = (u32, u32);
    type Item = SumItem<K>;

    fn root(&self) -> Option<(u32, u32)> {
        Some((0, 0))
    }

    fn children(&self, (i, j): (u32, u32), out: &mut Vec<(u32, u32)>) {
        let (m, n) = (self.x.len() as u64, self.y.len() as u64);
        let (i64_, j64) = (u64::from(i), u64::from(j));
        if j == 0 {
            for c in [2 * i64_ + 1, 2 * i64_ + 2] {
                if c < m {
                    out.push((c as u32, 0));
                }
            }
        }
        for c in [2 * j64 + 1, 2 * j64 + 2] {
            if c < n {
                out.push((i, c as u32));
            }
        }
    }

    fn item(&self, (i, j): (u32, u32)) -> SumItem<K> {
        self.inst.sum(self.x[i as usize], self.y[j as usize])
    }
}

/// What one round of [`xy_select2`] did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XyRound {
    /// Sums still to be selected when the round started.
    pub k_before: usize,
    /// `⌊k/3m⌋`.
    pub b: usize,
    /// The largest power of two not above `b`; the first two blocks of
    /// every row have this size.
    pub block: usize,
    /// Block ends that were selected.
    pub representatives: usize,
    /// Total size of the blocks that were output.
    pub mass: usize,
    /// Items of `Y` removed from each row after the round.
    pub displacements: Vec<usize>,
}

/// Selects the `k` smallest sums in `O(m log(k/m))` comparisons when
/// `6m <= k`, where `m >= n`. Smaller `k` is passed to [`xy_select1`].
///
/// Each round sets `b' = 2^⌊log2 ⌊k/3m⌋⌋`, cuts what is left of every row
/// into blocks of sizes `b', b', 2b', 4b', …` and selects the `2m` smallest
/// block ends. A weighted selection then finds the fewest of those blocks,
/// in order of their ends, whose sizes add up to at least `k/6`; their items
/// are all among the `k` smallest and are output. `Y` is never sorted: every
/// block end read in a round is at a rank pinned by the
/// [`YPartition`] refinement made at the start of that round.
///
/// Once fewer than `6m` sums remain, every block of the partition is
/// heapified and chained to the next, which turns the rest of each row into
/// a heap, and the rows are hung under a common root for a final
/// heapifying soft selection.
///
/// ```
/// use softselect::xy_select::{xy_select2, XYInstance};
/// use softselect::Meter;
///
/// let inst = XYInstance::from_keys((0..20).collect(), (0..20).map(|v| v * 100).collect()).unwrap();
/// let sums = xy_select2(&inst, 150, &Meter::new()).unwrap();
/// assert_eq!(sums.len(), 150);
/// assert!(sums.iter().all(|s| s.key < 800));
/// ```
pub fn xy_select2<K: Ord + Copy + Add<Output = K>>(
    inst: &XYInstance<K>,
    k: usize,
    meter: &Meter,
) -> Result<Vec<SumItem<K>>> {
    xy_select2_with(inst, k, meter, |_, _, _| {})
}

/// [`xy_select2`], also reporting each round.
pub fn xy_select2_rounds<K: Ord + Copy + Add<Output = K>>(
    inst: &XYInstance<K>,
    k: usize,
    meter: &Meter,
) -> Result<(Vec<SumItem<K>>, Vec<XyRound>)> {
    let mut rounds = Vec::new();
    let out = xy_select2_with(inst, k, meter, |r, _, _| rounds.push(r.clone()))?;
    Ok((out, rounds))
}

/// [`xy_select2`] with a hook called after every round with the round's
/// summary, the partition of `Y` as the round left it and the sums the
/// round output.
pub fn xy_select2_with<K, F>(inst: &XYInstance<K>, k: usize, meter: &Meter, mut on_round: F) -> Result<Vec<SumItem<K>>>
where
    K: Ord + Copy + Add<Output = K>,
    F: FnMut(&XyRound, &YPartition<K>, &[SumItem<K>]),
{
    inst.check_rank(k)?;
    let m = inst.m();
    if k < 6 * m {
        return xy_select1(inst, k, meter);
    }
    let n = inst.n();
    let mut part = YPartition::new(inst.cols().to_vec());
    let mut disp = vec![0usize; m];
    let mut out = Vec::with_capacity(k);
    let mut k = k;
    while k >= 6 * m {
        part.refine(meter);
        let b = k / (3 * m);
        let block = 1 << b.ilog2();
        let reps = Representatives { inst, part: &part, disp: &disp, block };
        let available: usize = (0..m).map(|i| reps.row_len(i).unwrap_or(0)).sum();
        let want = (2 * m).min(available);
        let per_row = select1(&reps, want, meter)?;
        let mut weighted = Vec::with_capacity(want);
        for (i, &c) in per_row.iter().enumerate() {
            for col in 1..=c {
                let item = reps.entry(i, col).expect("selected block end exists");
                weighted.push(WeightedItem::new((item, i), block_size(block, col) as u64));
            }
        }
        let target = k.div_ceil(6) as u64;
        let prefix = weighted_select(weighted, target, meter)?;
        let mut taken = vec![0usize; m];
        for w in &prefix {
            taken[w.item.1] += 1;
        }
        let start = out.len();
        let mut mass = 0;
        for (i, &t) in taken.iter().enumerate() {
            if t == 0 {
                continue;
            }
            let removed = block << (t - 1);
            let row = inst.rows()[i];
            out.extend(part.as_slice()[disp[i]..disp[i] + removed].iter().map(|&y| inst.sum(row, y)));
            disp[i] += removed;
            mass += removed;
        }
        let round = XyRound {
            k_before: k,
            b,
            block,
            representatives: want,
            mass,
            displacements: disp.clone(),
        };
        on_round(&round, &part, &out[start..]);
        k -= mass;
    }
    if k > 0 {
        let (y, bounds) = heapify_blocks(part, meter);
        let tail = Tail { inst, y: &y, bounds: &bounds, disp: &disp, n };
        let rest = soft_select_heapify(&tail, k + 1, meter)?;
        out.extend(rest.items.into_iter().flatten());
    }
    Ok(out)
}

/// Size of the block ending at logical column `col` (1-based).
fn block_size(block: usize, col: usize) -> usize {
    if col <= 1 {
        block
    } else {
        block << (col - 2)
    }
}

/// Row `i`, column `c` is the sum `X[i] + Y[d_i + 2^(c-1) b']`.
struct Representatives<'a, K> {
    inst: &'a XYInstance<K>,
    part: &'a YPartition<K>,
    disp: &'a [usize],
    block: usize,
}

impl<K: Ord + Copy + Add<Output = K>> Representatives<'_, K> {
    fn rank(&self, row: usize, col: usize) -> Option<usize> {
        let step = 1usize.checked_shl(u32::try_from(col - 1).ok()?)?.checked_mul(self.block)?;
        self.disp[row].checked_add(step)
    }
}

impl<K: Ord + Copy + Add<Output = K>> SortedRows for Representatives<'_, K> {
    type Item = SumItem<K>;

    fn num_rows(&self) -> usize {
        self.inst.m()
    }

    fn entry(&self, row: usize, col: usize) -> Option<SumItem<K>> {
        if col == 0 {
            return None;
        }
        let r = self.rank(row, col)?;
        if r > self.part.len() {
            return None;
        }
        let y = *self.part.pinned(r).expect("rank within Y");
        Some(self.inst.sum(self.inst.rows()[row], y))
    }

    fn row_len(&self, row: usize) -> Option<usize> {
        let left = self.part.len().saturating_sub(self.disp[row]);
        Some(if left < self.block { 0 } else { (left / self.block).ilog2() as usize + 1 })
    }
}

/// Heapifies every block of the partition in place. Returns the items and,
/// for each position, the 0-based bounds `[start, end)` of its block.
fn heapify_blocks<K: Ord>(part: YPartition<K>, meter: &Meter) -> (Vec<Item<K>>, Vec<(u32, u32)>) {
    let n = part.len();
    let blocks = part.blocks();
    let mut y = part.into_vec();
    let mut bounds = vec![(0, 0); n];
    for (a, b) in blocks {
        let (s, e) = (a - 1, b.min(n));
        if s >= e {
            break;
        }
        heapify(&mut y[s..e], meter);
        bounds[s..e].fill((s as u32, e as u32));
    }
    (y, bounds)
}

/// Rows `X[i] + Y[d_i+1 ..]` as heaps, hung under a virtual root that sorts
/// below everything.
///
/// Within a block, position `p` has its binary-heap children; a block's first
/// position also has the first position of the next block as a child.
struct Tail<'a, K> {
    inst: &'a XYInstance<K>,
    y: &'a [Item<K>],
    bounds: &'a [(u32, u32)],
    disp: &'a [usize],
    n: usize,
}

impl<K: Ord + Copy + Add<Output = K>> HeapSource for Tail<'_, K> {
    type Node = Option<(u32, u32)>;
    type Item = Option<SumItem<K>>;

    fn root(&self) -> Option<Self::Node> {
        Some(None)
    }

    fn children(&self, node: Self::Node, out: &mut Vec<Self::Node>) {
        let Some((i, p)) = node else {
            for (i, &d) in self.disp.iter().enumerate() {
                if d < self.n {
                    out.push(Some((i as u32, d as u32)));
                }
            }
            return;
        };
        let p = p as usize;
        let (s, e) = self.bounds[p];
        let (s, e) = (s as usize, e as usize);
        for c in [s + 2 * (p - s) + 1, s + 2 * (p - s) + 2] {
            if c < e {
                out.push(Some((i, c as u32)));
            }
        }
        if p == s && e < self.n {
            out.push(Some((i, e as u32)));
        }
    }

    fn item(&self, node: Self::Node) -> Option<SumItem<K>> {
        node.map(|(i, p)| self.inst.sum(self.inst.rows()[i as usize], self.y[p as usize]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_heap_is_heap_ordered() {
        for (m, n) in [(1, 1), (7, 3), (12, 12), (30, 5)] {
            let xs = (0..m).map(|i| (i * 7919) % 13).collect();
            let ys = (0..n).map(|j| (j * 104_729) % 11).collect();
            let inst = XYInstance::<i64>::from_keys(xs, ys).unwrap();
            let meter = Meter::new();
            let mut x = inst.rows().to_vec();
            let mut y = inst.cols().to_vec();
            heapify(&mut x, &meter);
            heapify(&mut y, &meter);
            let src = SumHeap { inst: &inst, x: &x, y: &y };
            let mut seen = 0;
            let mut stack = vec![src.root().unwrap()];
            let mut kids = Vec::new();
            while let Some(v) = stack.pop() {
                seen += 1;
                kids.clear();
                src.children(v, &mut kids);
                assert!(kids.len() <= 4);
                for &c in &kids {
                    assert!(src.item(c) >= src.item(v));
                }
                stack.extend(&kids);
            }
            // Every pair is reached exactly once.
            assert_eq!(seen, m * n);
        }
    }
}
