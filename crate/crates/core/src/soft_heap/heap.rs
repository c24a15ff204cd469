use crate::{Error, Meter, Result};

const NIL: u32 = u32::MAX;

/// An entry as seen from outside the heap: its own value and the key the heap
/// currently files it under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry<T> {
    pub item: T,
    pub current_key: T,
    pub corrupt: bool,
}

/// The result of [`SoftHeap::extract_min`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extracted<T> {
    pub item: T,
    /// The key under which `item` was filed. Equal to `item` unless corrupt.
    pub current_key: T,
    pub corrupt: bool,
    /// Items that were uncorrupted before this call and are corrupted after it.
    pub newly_corrupt: Vec<T>,
}

#[derive(Debug)]
struct Node<T> {
    /// `None` only while a freshly linked node waits for its first fill.
    key: Option<T>,
    rank: u32,
    left: u32,
    right: u32,
    head: u32,
    tail: u32,
    /// The head of the pool is the item whose value equals `key`.
    clean: bool,
}

#[derive(Debug)]
struct PoolCell<T> {
    item: Option<T>,
    next: u32,
}

/// A soft heap with error parameter `ε`.
///
/// Items live in car-pools: each node of a forest of binary trees carries a
/// list of items that share one current key. Moving a pool up a tree raises
/// the current key of its items, which is how items become corrupt. Nodes of
/// rank above a threshold `t` pull two pools per refill instead of one, which
/// keeps the number of corrupt items in the heap at most `ε` times the number
/// of insertions.
///
/// Insertions are buffered and merged into the forest at the end of the next
/// extraction, so inserting never corrupts anything. Every comparison is
/// charged to the [`Meter`] given at construction.
///
/// ```
/// use softselect::soft_heap::SoftHeap;
/// use softselect::Meter;
///
/// let meter = Meter::new();
/// let mut heap = SoftHeap::new(0.25, &meter).unwrap();
/// for x in [5, 3, 8] {
///     heap.insert(x);
/// }
/// let e = heap.extract_min().unwrap();
/// assert_eq!(e.item, 3);
/// assert!(!e.corrupt);
/// ```
#[derive(Debug)]
pub struct SoftHeap<'m, T> {
    eps: f64,
    threshold: u32,
    meter: &'m Meter,
    nodes: Vec<Node<T>>,
    free_nodes: Vec<u32>,
    cells: Vec<PoolCell<T>>,
    free_cells: Vec<u32>,
    /// At most one root per rank.
    roots: Vec<u32>,
    /// `sufmin[r]` is the root of minimum key among ranks `r..`.
    sufmin: Vec<u32>,
    pending: Vec<T>,
    len: usize,
    inserted: u64,
    extracted: u64,
    corrupt_now: usize,
    corrupted_total: u64,
}

impl<'m, T: Ord + Clone> SoftHeap<'m, T> {
    /// Creates an empty soft heap. `eps` must lie strictly between 0 and 1.
    pub fn new(eps: f64, meter: &'m Meter) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidEpsilon(eps, 1.0));
        }
        let threshold = (3.0 / eps).log2().ceil() as u32;
        Ok(SoftHeap {
            eps,
            threshold,
            meter,
            nodes: Vec::new(),
            free_nodes: Vec::new(),
            cells: Vec::new(),
            free_cells: Vec::new(),
            roots: Vec::new(),
            sufmin: Vec::new(),
            pending: Vec::new(),
            len: 0,
            inserted: 0,
            extracted: 0,
            corrupt_now: 0,
            corrupted_total: 0,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.eps
    }

    /// Rank above which refills are doubled.
    pub fn threshold(&self) -> u32 {
        self.threshold
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of insertions over the heap's lifetime.
    pub fn insertions(&self) -> u64 {
        self.inserted
    }

    pub fn extractions(&self) -> u64 {
        self.extracted
    }

    /// Corrupt items currently in the heap.
    pub fn corrupt_count(&self) -> usize {
        self.corrupt_now
    }

    /// Items that ever became corrupt, including those already extracted.
    pub fn total_corruptions(&self) -> u64 {
        self.corrupted_total
    }

    pub fn insert(&mut self, item: T) {
        self.pending.push(item);
        self.len += 1;
        self.inserted += 1;
        self.meter.record_insert();
    }

    /// Removes an item of minimum current key.
    pub fn extract_min(&mut self) -> Result<Extracted<T>> {
        let mut newly_corrupt = Vec::new();
        let e = self.extract_min_into(&mut newly_corrupt).ok_or(Error::EmptyHeap)?;
        Ok(Extracted {
            item: e.item,
            current_key: e.current_key,
            corrupt: e.corrupt,
            newly_corrupt,
        })
    }

    /// Like [`extract_min`](Self::extract_min), but appends the newly corrupt
    /// items to `newly_corrupt` and returns `None` on an empty heap.
    pub fn extract_min_into(&mut self, newly_corrupt: &mut Vec<T>) -> Option<Entry<T>> {
        if self.len == 0 {
            return None;
        }
        let mut from_pending = None;
        for i in 0..self.pending.len() {
            match from_pending {
                Some(j) if !self.meter.lt(&self.pending[i], &self.pending[j]) => {}
                _ => from_pending = Some(i),
            }
        }
        let root = self.sufmin.first().copied().unwrap_or(NIL);
        if let (Some(p), true) = (from_pending, root != NIL) {
            if !self.meter.lt(&self.pending[p], self.key(root)) {
                from_pending = None;
            }
        }
        let before = newly_corrupt.len();
        let entry = match from_pending {
            Some(p) => {
                let item = self.pending.swap_remove(p);
                Entry { current_key: item.clone(), item, corrupt: false }
            }
            None => self.pop_root(root, newly_corrupt),
        };
        self.consolidate(newly_corrupt);
        let fresh = (newly_corrupt.len() - before) as u64;
        self.corrupted_total += fresh;
        self.meter.record_corruptions(fresh);
        self.meter.record_extract();
        self.extracted += 1;
        self.len -= 1;
        if entry.corrupt {
            self.corrupt_now -= 1;
        }
        Some(entry)
    }

    /// Every entry currently stored, with its current key. Intended for
    /// checking invariants in tests.
    pub fn entries(&self) -> Vec<Entry<T>> {
        let mut out: Vec<Entry<T>> = self
            .pending
            .iter()
            .map(|x| Entry { item: x.clone(), current_key: x.clone(), corrupt: false })
            .collect();
        let mut stack: Vec<u32> = self.roots.iter().copied().filter(|&r| r != NIL).collect();
        while let Some(x) = stack.pop() {
            let node = &self.nodes[x as usize];
            let key = node.key.as_ref().expect("stored nodes have keys");
            let mut c = node.head;
            while c != NIL {
                let item = self.cells[c as usize].item.clone().expect("live cell");
                out.push(Entry { corrupt: &item != key, item, current_key: key.clone() });
                c = self.cells[c as usize].next;
            }
            stack.extend([node.left, node.right].into_iter().filter(|&y| y != NIL));
        }
        out
    }

    fn key(&self, x: u32) -> &T {
        self.nodes[x as usize].key.as_ref().expect("stored nodes have keys")
    }

    fn pop_root(&mut self, x: u32, newly_corrupt: &mut Vec<T>) -> Entry<T> {
        let xi = x as usize;
        let c = self.nodes[xi].head;
        let cell = &mut self.cells[c as usize];
        let item = cell.item.take().expect("live cell");
        self.nodes[xi].head = cell.next;
        self.free_cells.push(c);
        let corrupt = !self.nodes[xi].clean;
        self.nodes[xi].clean = false;
        let current_key = self.key(x).clone();
        if self.nodes[xi].head == NIL {
            self.nodes[xi].tail = NIL;
            let rank = self.nodes[xi].rank as usize;
            if self.nodes[xi].left == NIL {
                self.roots[rank] = NIL;
                self.free_node(x);
                while self.roots.last() == Some(&NIL) {
                    self.roots.pop();
                }
            } else {
                self.defill(x, newly_corrupt);
            }
            self.update_sufmin(rank);
        }
        Entry { item, current_key, corrupt }
    }

    fn consolidate(&mut self, newly_corrupt: &mut Vec<T>) {
        if self.pending.is_empty() {
            return;
        }
        let mut top = 0;
        let pending = std::mem::take(&mut self.pending);
        for item in pending {
            let cell = self.new_cell(item.clone());
            let mut x = self.new_node(Some(item), 0, NIL, NIL);
            let n = &mut self.nodes[x as usize];
            n.head = cell;
            n.tail = cell;
            n.clean = true;
            let mut r = 0;
            while r < self.roots.len() && self.roots[r] != NIL {
                let y = std::mem::replace(&mut self.roots[r], NIL);
                x = self.new_node(None, r as u32 + 1, y, x);
                self.defill(x, newly_corrupt);
                r += 1;
            }
            if r == self.roots.len() {
                self.roots.push(x);
            } else {
                self.roots[r] = x;
            }
            top = top.max(r);
        }
        self.update_sufmin(top);
    }

    fn defill(&mut self, x: u32, newly_corrupt: &mut Vec<T>) {
        self.fill(x, newly_corrupt);
        let n = &self.nodes[x as usize];
        if n.rank > self.threshold && n.rank % 2 == 1 && n.left != NIL {
            self.fill(x, newly_corrupt);
        }
    }

    /// Moves the pool of the smaller child of `x` into `x`, then refills that
    /// child in turn unless it was a leaf.
    fn fill(&mut self, x: u32, newly_corrupt: &mut Vec<T>) {
        let xi = x as usize;
        let (l, r) = (self.nodes[xi].left, self.nodes[xi].right);
        let l = if r != NIL && self.meter.lt(self.key(r), self.key(l)) {
            self.nodes[xi].left = r;
            self.nodes[xi].right = l;
            r
        } else {
            l
        };
        let li = l as usize;
        if self.nodes[xi].clean {
            newly_corrupt.push(self.key(x).clone());
            self.corrupt_now += 1;
        }
        let child_key = self.nodes[li].key.take();
        let (ch, ct, cclean) = (self.nodes[li].head, self.nodes[li].tail, self.nodes[li].clean);
        if ch != NIL {
            let xh = self.nodes[xi].head;
            self.cells[ct as usize].next = xh;
            if xh == NIL {
                self.nodes[xi].tail = ct;
            }
            self.nodes[xi].head = ch;
        }
        let xn = &mut self.nodes[xi];
        xn.key = child_key;
        xn.clean = cclean;
        let cn = &mut self.nodes[li];
        cn.head = NIL;
        cn.tail = NIL;
        cn.clean = false;
        if cn.left == NIL {
            let xn = &mut self.nodes[xi];
            xn.left = xn.right;
            xn.right = NIL;
            self.free_node(l);
        } else {
            self.defill(l, newly_corrupt);
        }
    }

    fn update_sufmin(&mut self, from: usize) {
        let top = self.roots.len();
        self.sufmin.resize(top, NIL);
        if top == 0 {
            return;
        }
        for i in (0..=from.min(top - 1)).rev() {
            let next = if i + 1 < top { self.sufmin[i + 1] } else { NIL };
            let here = self.roots[i];
            self.sufmin[i] = match (here, next) {
                (NIL, n) => n,
                (h, NIL) => h,
                (h, n) => {
                    if self.meter.lt(self.key(n), self.key(h)) {
                        n
                    } else {
                        h
                    }
                }
            };
        }
    }

    fn new_node(&mut self, key: Option<T>, rank: u32, left: u32, right: u32) -> u32 {
        let node = Node { key, rank, left, right, head: NIL, tail: NIL, clean: false };
        match self.free_nodes.pop() {
            Some(i) => {
                self.nodes[i as usize] = node;
                i
            }
            None => {
                self.nodes.push(node);
                (self.nodes.len() - 1) as u32
            }
        }
    }

    fn free_node(&mut self, x: u32) {
        self.nodes[x as usize].key = None;
        self.free_nodes.push(x);
    }

    fn new_cell(&mut self, item: T) -> u32 {
        let cell = PoolCell { item: Some(item), next: NIL };
        match self.free_cells.pop() {
            Some(i) => {
                self.cells[i as usize] = cell;
                i
            }
            None => {
                self.cells.push(cell);
                (self.cells.len() - 1) as u32
            }
        }
    }
}
