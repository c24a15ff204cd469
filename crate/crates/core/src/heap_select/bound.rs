use super::HeapSource;
use crate::{Error, Result};

/// Recursion steps allowed before the enumeration gives up.
const STEP_LIMIT: u64 = 20_000_000;

/// The largest total degree of a `k`-node subtree containing the root.
///
/// Exhaustive: every root-containing subtree of size `k` is enumerated once,
/// so this is only usable on small instances.
pub fn degree_sum_bound<S: HeapSource>(src: &S, k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::RankOutOfRange { k, len: 0 });
    }
    let root = src.root().ok_or(Error::NotEnoughItems { k })?;
    let mut search = Search { src, steps: 0, kids: Vec::new() };
    match search.best(vec![root], k, 0)? {
        Some(d) => Ok(d),
        None => Err(Error::NotEnoughItems { k }),
    }
}

struct Search<'a, S: HeapSource> {
    src: &'a S,
    steps: u64,
    kids: Vec<S::Node>,
}

impl<S: HeapSource> Search<'_, S> {
    /// Best degree sum after choosing `left` more nodes, where `frontier`
    /// holds the nodes still allowed to join.
    fn best(&mut self, mut frontier: Vec<S::Node>, left: usize, acc: u64) -> Result<Option<u64>> {
        if left == 0 {
            return Ok(Some(acc));
        }
        self.steps += 1;
        if self.steps > STEP_LIMIT {
            return Err(Error::TooLarge(format!("more than {STEP_LIMIT} subtrees")));
        }
        let Some(v) = frontier.pop() else { return Ok(None) };
        let skip = self.best(frontier.clone(), left, acc)?;
        self.kids.clear();
        self.src.children(v, &mut self.kids);
        let deg = self.kids.len() as u64;
        frontier.extend_from_slice(&self.kids);
        let take = self.best(frontier, left - 1, acc + deg)?;
        Ok(skip.max(take))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heap_select::{ArrayHeap, Tree};

    #[test]
    fn dary_trees() {
        for d in 2..=4usize {
            let h = ArrayHeap::new((0..400).collect::<Vec<i32>>(), d).unwrap();
            for k in 1..=6 {
                assert_eq!(degree_sum_bound(&h, k).unwrap(), (d * k) as u64);
            }
        }
    }

    #[test]
    fn small_tree_and_errors() {
        let t = Tree::new(vec![0, 1, 2], vec![vec![1, 2], vec![], vec![]]).unwrap();
        assert_eq!(degree_sum_bound(&t, 1), Ok(2));
        assert_eq!(degree_sum_bound(&t, 3), Ok(2));
        assert_eq!(degree_sum_bound(&t, 4), Err(Error::NotEnoughItems { k: 4 }));
    }
}
