//! Seeded instance generators. Every generator is a pure function of its
//! arguments.

use ordered_float::OrderedFloat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use softselect::heap_select::{ArrayHeap, Tree};
use softselect::matrix_select::Matrix;
use softselect::Item;

use crate::config::RowLaw;

/// Generated keys lie in `0..KEY_RANGE`.
pub const KEY_RANGE: i64 = 1 << 40;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` uniform keys tagged with ids `0..n`.
pub fn random_items(rng: &mut ChaCha8Rng, n: usize) -> Vec<Item> {
    (0..n).map(|i| Item::new(rng.random_range(0..KEY_RANGE), i as u64)).collect()
}

/// A `d`-ary array heap of `n` random items.
pub fn heap(seed: u64, n: usize, d: usize) -> ArrayHeap<Item> {
    let items = random_items(&mut rng(seed), n);
    ArrayHeap::heapified(items, d).expect("arity checked by the caller")
}

/// A random recursive tree on `n` nodes with degrees at most `max_degree`.
/// Each node hangs under a uniformly chosen earlier node that still has room,
/// with a key above its parent's.
pub fn tree(seed: u64, n: usize, max_degree: usize) -> Tree<Item> {
    let mut r = rng(seed);
    let mut keys = Vec::with_capacity(n);
    let mut children = vec![Vec::new(); n];
    let mut open = Vec::new();
    if n > 0 {
        keys.push(r.random_range(0..KEY_RANGE));
        open.push(0);
    }
    for c in 1..n {
        let slot = r.random_range(0..open.len());
        let p = open[slot];
        children[p].push(c);
        if children[p].len() == max_degree {
            open.swap_remove(slot);
        }
        keys.push(keys[p] + r.random_range(0..KEY_RANGE >> 20));
        open.push(c);
    }
    let items = keys.into_iter().enumerate().map(|(i, k)| Item::new(k, i as u64)).collect();
    Tree::new(items, children).expect("heap ordered by construction")
}

/// Row lengths of an `m`-row matrix under `law`. `k_max` is the largest rank
/// that will be asked for.
pub fn row_lengths(law: RowLaw, m: usize, n: usize, k_max: usize) -> Vec<usize> {
    match law {
        RowLaw::Equal => vec![n; m],
        RowLaw::Geometric => {
            let period = n.max(1).ilog2() as usize + 1;
            (0..m).map(|i| (n >> (i % period)).max(1)).collect()
        }
        RowLaw::AdversarialOnerow => {
            let mut lens = vec![n; m];
            lens[0] = n.max(k_max);
            lens
        }
    }
}

/// A matrix of sorted random rows. Items get ids from their (row, column).
pub fn matrix(seed: u64, law: RowLaw, m: usize, n: usize, k_max: usize) -> Matrix<Item> {
    let mut r = rng(seed);
    let half = KEY_RANGE / 2;
    let rows = row_lengths(law, m, n, k_max)
        .into_iter()
        .enumerate()
        .map(|(i, len)| {
            let range = match law {
                RowLaw::AdversarialOnerow if i == 0 => 0..half,
                RowLaw::AdversarialOnerow => half..KEY_RANGE,
                _ => 0..KEY_RANGE,
            };
            let mut row: Vec<i64> = (0..len).map(|_| r.random_range(range.clone())).collect();
            row.sort_unstable();
            row
        })
        .collect();
    Matrix::from_keys(rows).expect("rows sorted by construction")
}

/// Sets `X` of size `m` and `Y` of size `n` with integer keys.
pub fn xy(seed: u64, m: usize, n: usize) -> (Vec<Item>, Vec<Item>) {
    let mut r = rng(seed);
    let x = random_items(&mut r, m);
    let y = random_items(&mut r, n);
    (x, y)
}

pub type FloatItem = Item<OrderedFloat<f64>>;

/// [`xy`] with keys uniform in `[0, 1)`.
pub fn xy_float(seed: u64, m: usize, n: usize) -> (Vec<FloatItem>, Vec<FloatItem>) {
    let mut r = rng(seed);
    let mut draw = |len: usize| -> Vec<_> {
        (0..len).map(|i| Item::new(OrderedFloat(r.random::<f64>()), i as u64)).collect()
    };
    let x = draw(m);
    let y = draw(n);
    (x, y)
}
