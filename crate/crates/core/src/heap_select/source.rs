use crate::{Error, Result};

/// A read-only heap-ordered tree.
///
/// Every child's item must be at least its parent's. `children` must report
/// the same nodes each time it is called for a node.
pub trait HeapSource {
    type Node: Copy;
    type Item: Ord + Clone;

    /// The root, or `None` for an empty source.
    fn root(&self) -> Option<Self::Node>;

    /// Appends the children of `node` to `out`.
    fn children(&self, node: Self::Node, out: &mut Vec<Self::Node>);

    fn item(&self, node: Self::Node) -> Self::Item;
}

impl<S: HeapSource + ?Sized> HeapSource for &S {
    type Node = S::Node;
    type Item = S::Item;

    fn root(&self) -> Option<Self::Node> {
        (**self).root()
    }

    fn children(&self, node: Self::Node, out: &mut Vec<Self::Node>) {
        (**self).children(node, out)
    }

    fn item(&self, node: Self::Node) -> Self::Item {
        (**self).item(node)
    }
}

/// An implicit `d`-ary heap stored in an array: the children of index `i` are
/// `d*i + 1 ..= d*i + d` (0-based). With `d = 1` the array is a sorted chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrayHeap<T> {
    items: Vec<T>,
    d: usize,
}

impl<T: Ord + Clone> ArrayHeap<T> {
    /// Wraps an array that is already in `d`-ary heap order.
    pub fn new(items: Vec<T>, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArity { d, min: 1 });
        }
        if let Some(i) = (1..items.len()).find(|&i| items[(i - 1) / d] > items[i]) {
            return Err(Error::HeapOrder { node: i });
        }
        Ok(ArrayHeap { items, d })
    }

    /// Rearranges arbitrary items into `d`-ary heap order. Setup work, not
    /// metered.
    pub fn heapified(mut items: Vec<T>, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArity { d, min: 1 });
        }
        let n = items.len();
        if n > 1 {
            for start in (0..=(n - 2) / d).rev() {
                let mut p = start;
                loop {
                    let first = d * p + 1;
                    if first >= n {
                        break;
                    }
                    let last = (first + d).min(n);
                    let c = (first..last).min_by(|&a, &b| items[a].cmp(&items[b])).unwrap();
                    if items[c] < items[p] {
                        items.swap(c, p);
                        p = c;
                    } else {
                        break;
                    }
                }
            }
        }
        Ok(ArrayHeap { items, d })
    }

    pub fn arity(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.items
    }
}

impl<T: Ord + Clone> HeapSource for ArrayHeap<T> {
    type Node = usize;
    type Item = T;

    fn root(&self) -> Option<usize> {
        (!self.items.is_empty()).then_some(0)
    }

    fn children(&self, node: usize, out: &mut Vec<usize>) {
        let first = self.d * node + 1;
        out.extend(first..(first + self.d).min(self.items.len()));
    }

    fn item(&self, node: usize) -> T {
        self.items[node].clone()
    }
}

/// An explicit tree with arbitrary degrees, rooted at node 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree<T> {
    items: Vec<T>,
    children: Vec<Vec<usize>>,
}

impl<T: Ord + Clone> Tree<T> {
    /// Builds a tree from per-node child lists. Every node other than 0 must
    /// have exactly one parent, be reachable from 0, and respect heap order.
    pub fn new(items: Vec<T>, children: Vec<Vec<usize>>) -> Result<Self> {
        let n = items.len();
        if children.len() != n {
            return Err(Error::RowMismatch { expected: n, got: children.len() });
        }
        let mut parent = vec![usize::MAX; n];
        for (p, cs) in children.iter().enumerate() {
            for &c in cs {
                if c >= n || c == 0 || parent[c] != usize::MAX {
                    return Err(Error::HeapOrder { node: c });
                }
                parent[c] = p;
                if items[c] < items[p] {
                    return Err(Error::HeapOrder { node: c });
                }
            }
        }
        // Every node must reach the root; a parent cycle would never get there.
        let mut seen = vec![false; n];
        let mut stack = if n > 0 { vec![0] } else { vec![] };
        while let Some(x) = stack.pop() {
            seen[x] = true;
            stack.extend(&children[x]);
        }
        if let Some(bad) = seen.iter().position(|s| !s) {
            return Err(Error::HeapOrder { node: bad });
        }
        Ok(Tree { items, children })
    }

    /// Builds a tree from a parent array; `parents[0]` must be `None`.
    pub fn from_parents(items: Vec<T>, parents: &[Option<usize>]) -> Result<Self> {
        let mut children = vec![Vec::new(); items.len()];
        for (c, p) in parents.iter().enumerate() {
            match (c, p) {
                (0, None) => {}
                (c, Some(p)) if *p < items.len() && c > 0 => children[*p].push(c),
                _ => return Err(Error::HeapOrder { node: c }),
            }
        }
        Tree::new(items, children)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.children[node].len()
    }

    pub fn items(&self) -> &[T] {
        &self.items
    }

    pub fn child_lists(&self) -> &[Vec<usize>] {
        &self.children
    }
}

impl<T: Ord + Clone> HeapSource for Tree<T> {
    type Node = usize;
    type Item = T;

    fn root(&self) -> Option<usize> {
        (!self.items.is_empty()).then_some(0)
    }

    fn children(&self, node: usize, out: &mut Vec<usize>) {
        out.extend_from_slice(&self.children[node]);
    }

    fn item(&self, node: usize) -> T {
        self.items[node].clone()
    }
}
