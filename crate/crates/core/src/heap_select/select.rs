use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::HeapSource;
use crate::core_select::{heapify, select_nth};
use crate::soft_heap::SoftHeap;
use crate::{Error, Meter, Result};

/// The `k` smallest items of a source plus the soft-heap statistics of the run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectionOutput<T> {
    /// The `k` smallest items, in no particular order.
    pub items: Vec<T>,
    /// Insertions into the soft heap.
    pub candidate_count: u64,
    /// Items that became corrupt during the run.
    pub corrupt_count: u64,
    /// Nodes whose children were inserted (or heapified, for the
    /// heapifying variant).
    pub expanded: u64,
}

/// One loop iteration of a soft selection, recorded for inspection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep<N> {
    pub extracted: N,
    pub corrupt: bool,
    pub newly_corrupt: Vec<N>,
}

/// A source node filed under its item.
#[derive(Clone, Copy, Debug)]
struct Candidate<I, N> {
    item: I,
    node: N,
}

impl<I: Ord, N> PartialEq for Candidate<I, N> {
    fn eq(&self, other: &Self) -> bool {
        self.item == other.item
    }
}

impl<I: Ord, N> Eq for Candidate<I, N> {}

impl<I: Ord, N> PartialOrd for Candidate<I, N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<I: Ord, N> Ord for Candidate<I, N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.item.cmp(&other.item)
    }
}

/// Returns the `k` smallest items in increasing order using an exact binary
/// heap. `O(k log k)` comparisons.
pub fn naive_heap_select<S: HeapSource>(src: &S, k: usize, meter: &Meter) -> Result<Vec<S::Item>> {
    struct Rev<'m, I, N>(Candidate<I, N>, &'m Meter);
    impl<I: Ord, N> PartialEq for Rev<'_, I, N> {
        fn eq(&self, other: &Self) -> bool {
            self.0 == other.0
        }
    }
    impl<I: Ord, N> Eq for Rev<'_, I, N> {}
    impl<I: Ord, N> PartialOrd for Rev<'_, I, N> {
        fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
            Some(self.cmp(other))
        }
    }
    impl<I: Ord, N> Ord for Rev<'_, I, N> {
        fn cmp(&self, other: &Self) -> Ordering {
            self.1.cmp(&other.0, &self.0)
        }
    }

    let mut out = Vec::with_capacity(k);
    let mut heap = BinaryHeap::new();
    let mut kids = Vec::new();
    if let Some(r) = src.root() {
        heap.push(Rev(Candidate { item: src.item(r), node: r }, meter));
    }
    while out.len() < k {
        let Some(Rev(c, _)) = heap.pop() else {
            return Err(Error::NotEnoughItems { k });
        };
        kids.clear();
        src.children(c.node, &mut kids);
        for &n in &kids {
            heap.push(Rev(Candidate { item: src.item(n), node: n }, meter));
        }
        out.push(c.item);
    }
    Ok(out)
}

/// Selects the `k` smallest items of a binary heap-ordered source with a soft
/// heap of error `1/4`. Fewer than `8k` insertions.
///
/// ```
/// use softselect::heap_select::{soft_select, ArrayHeap};
/// use softselect::Meter;
///
/// let heap = ArrayHeap::heapified((1..=15).rev().collect(), 2).unwrap();
/// let mut out = soft_select(&heap, 4, &Meter::new()).unwrap();
/// out.items.sort();
/// assert_eq!(out.items, [1, 2, 3, 4]);
/// assert!(out.candidate_count < 8 * 4);
/// ```
pub fn soft_select<S: HeapSource>(src: &S, k: usize, meter: &Meter) -> Result<SelectionOutput<S::Item>> {
    run_direct(src, k, 0.25, 2, meter, None)
}

/// Selects the `k` smallest items of a source of degree at most `d`, with a
/// soft heap of error `1/(2d)`. Fewer than `3k` corruptions and `4dk`
/// insertions.
pub fn soft_select_dary<S: HeapSource>(
    src: &S,
    k: usize,
    d: usize,
    meter: &Meter,
) -> Result<SelectionOutput<S::Item>> {
    if d < 2 {
        return Err(Error::InvalidArity { d, min: 2 });
    }
    run_direct(src, k, 1.0 / (2 * d) as f64, d, meter, None)
}

/// [`soft_select`] with a caller-chosen error parameter and optional trace.
/// Accepts sources of any degree; the insertion bound then depends on `eps`
/// and the degree.
pub fn soft_select_with<S: HeapSource>(
    src: &S,
    k: usize,
    eps: f64,
    meter: &Meter,
    trace: Option<&mut Vec<TraceStep<S::Node>>>,
) -> Result<SelectionOutput<S::Item>> {
    run_direct(src, k, eps, usize::MAX, meter, trace)
}

/// Selects the `k` smallest items of a source with arbitrary degrees.
///
/// The children of a node are heapified into a binary heap the first time
/// the node is expanded, which gives every node at most three children in an
/// implicit ternary tree: the root of its own children's heap, and its two
/// children inside the heap of its siblings. Uses error `1/9`, so fewer than
/// `3k` nodes are expanded.
pub fn soft_select_heapify<S: HeapSource>(
    src: &S,
    k: usize,
    meter: &Meter,
) -> Result<SelectionOutput<S::Item>> {
    soft_select_heapify_with(src, k, 1.0 / 9.0, meter)
}

/// [`soft_select_heapify`] with a caller-chosen error parameter.
pub fn soft_select_heapify_with<S: HeapSource>(
    src: &S,
    k: usize,
    eps: f64,
    meter: &Meter,
) -> Result<SelectionOutput<S::Item>> {
    if k == 0 {
        return Err(Error::RankOutOfRange { k, len: 0 });
    }
    let root = src.root().ok_or(Error::NotEnoughItems { k })?;
    // Node of the implicit ternary tree: position `pos` of heapified block `block`.
    type TNode = (u32, u32);
    let mut blocks: Vec<Vec<Candidate<S::Item, S::Node>>> =
        vec![vec![Candidate { item: src.item(root), node: root }]];
    let mut q = SoftHeap::new(eps, meter)?;
    let mut s = vec![blocks[0][0].item.clone()];
    q.insert(Candidate { item: blocks[0][0].item.clone(), node: (0u32, 0u32) as TNode });
    let mut newly = Vec::new();
    let mut kids = Vec::new();
    let mut expanded = 0u64;
    for _ in 1..k {
        newly.clear();
        let Some(e) = q.extract_min_into(&mut newly) else { break };
        if !e.corrupt {
            newly.push(e.item);
        }
        for c in newly.drain(..) {
            expanded += 1;
            let (b, p) = (c.node.0 as usize, c.node.1 as usize);
            let mut ins = |cand: Candidate<S::Item, TNode>, s: &mut Vec<S::Item>| {
                s.push(cand.item.clone());
                q.insert(cand);
            };
            for child in [2 * p + 1, 2 * p + 2] {
                if let Some(x) = blocks[b].get(child) {
                    ins(Candidate { item: x.item.clone(), node: (b as u32, child as u32) }, &mut s);
                }
            }
            kids.clear();
            src.children(blocks[b][p].node, &mut kids);
            if !kids.is_empty() {
                let mut block: Vec<_> =
                    kids.iter().map(|&n| Candidate { item: src.item(n), node: n }).collect();
                heapify(&mut block, meter);
                let id = blocks.len() as u32;
                ins(Candidate { item: block[0].item.clone(), node: (id, 0) }, &mut s);
                blocks.push(block);
            }
        }
    }
    finish(s, k, &q, expanded, meter)
}

fn run_direct<S: HeapSource>(
    src: &S,
    k: usize,
    eps: f64,
    max_degree: usize,
    meter: &Meter,
    mut trace: Option<&mut Vec<TraceStep<S::Node>>>,
) -> Result<SelectionOutput<S::Item>> {
    if k == 0 {
        return Err(Error::RankOutOfRange { k, len: 0 });
    }
    let root = src.root().ok_or(Error::NotEnoughItems { k })?;
    let mut q = SoftHeap::new(eps, meter)?;
    let mut s = vec![src.item(root)];
    q.insert(Candidate { item: s[0].clone(), node: root });
    let mut newly = Vec::new();
    let mut kids = Vec::new();
    let mut expanded = 0u64;
    for _ in 1..k {
        newly.clear();
        let Some(e) = q.extract_min_into(&mut newly) else { break };
        if let Some(t) = trace.as_deref_mut() {
            t.push(TraceStep {
                extracted: e.item.node,
                corrupt: e.corrupt,
                newly_corrupt: newly.iter().map(|c| c.node).collect(),
            });
        }
        if !e.corrupt {
            newly.push(e.item);
        }
        for c in newly.drain(..) {
            expanded += 1;
            kids.clear();
            src.children(c.node, &mut kids);
            if kids.len() > max_degree {
                return Err(Error::DegreeTooLarge { degree: kids.len(), limit: max_degree });
            }
            for &n in &kids {
                let item = src.item(n);
                s.push(item.clone());
                q.insert(Candidate { item, node: n });
            }
        }
    }
    finish(s, k, &q, expanded, meter)
}

fn finish<T: Ord + Clone, C: Ord + Clone>(
    mut s: Vec<T>,
    k: usize,
    q: &SoftHeap<'_, C>,
    expanded: u64,
    meter: &Meter,
) -> Result<SelectionOutput<T>> {
    if s.len() < k {
        return Err(Error::NotEnoughItems { k });
    }
    select_nth(&mut s, k - 1, meter);
    s.truncate(k);
    Ok(SelectionOutput {
        items: s,
        candidate_count: q.insertions(),
        corrupt_count: q.total_corruptions(),
        expanded,
    })
}
