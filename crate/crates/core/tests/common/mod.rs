#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use softselect::heap_select::Tree;
use softselect::matrix_select::{matrix_id, Matrix};
use softselect::{Item, SumItem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` items with keys in `0..range` and ids `0..n`.
pub fn random_items(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<Item> {
    (0..n).map(|i| Item::new(rng.random_range(0..range), i as u64)).collect()
}

/// The `k` smallest items, sorted. Reference for every selection routine.
pub fn smallest<T: Ord + Clone>(items: &[T], k: usize) -> Vec<T> {
    let mut v = items.to_vec();
    v.sort();
    v.truncate(k);
    v
}

pub fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

/// A random heap-ordered tree with degrees at most `max_degree`: node `c`
/// hangs below a random earlier node with room, and keys increase with the
/// node index.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize, max_degree: usize) -> Tree<Item> {
    let mut keys: Vec<i64> = (0..n).map(|_| rng.random_range(0..(4 * n as i64).max(1))).collect();
    keys.sort();
    let mut open = vec![0usize];
    let mut degree = vec![0usize; n];
    let mut parents = vec![None; n];
    for (c, parent) in parents.iter_mut().enumerate().skip(1) {
        let slot = rng.random_range(0..open.len());
        let p = open[slot];
        *parent = Some(p);
        degree[p] += 1;
        if degree[p] == max_degree {
            open.swap_remove(slot);
        }
        open.push(c);
    }
    let items = keys.into_iter().enumerate().map(|(i, k)| Item::new(k, i as u64)).collect();
    Tree::from_parents(items, &parents).unwrap()
}

/// Rows of random lengths in `1..=max_len` with keys in `0..range`, sorted,
/// ids from [`matrix_id`].
pub fn random_matrix(rng: &mut ChaCha8Rng, m: usize, max_len: usize, range: i64) -> Matrix<Item> {
    let rows = (0..m)
        .map(|i| {
            let len = rng.random_range(1..=max_len);
            let mut keys: Vec<i64> = (0..len).map(|_| rng.random_range(0..range)).collect();
            keys.sort();
            keys.into_iter()
                .enumerate()
                .map(|(j, k)| Item::new(k, matrix_id(i, j)))
                .collect()
        })
        .collect();
    Matrix::new(rows).unwrap()
}

/// Per-row counts of the `k` smallest entries, by sorting everything.
pub fn matrix_counts(a: &Matrix<Item>, k: usize) -> Vec<usize> {
    let mut all: Vec<(Item, usize)> = a
        .rows()
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.iter().map(move |&x| (x, i)))
        .collect();
    all.sort();
    let mut counts = vec![0; a.rows().len()];
    for &(_, i) in &all[..k] {
        counts[i] += 1;
    }
    counts
}

/// The `k` smallest of all `|X|·|Y|` sums, sorted.
pub fn smallest_sums(x: &[Item], y: &[Item], k: usize) -> Vec<SumItem> {
    let all: Vec<SumItem> = x.iter().flat_map(|&a| y.iter().map(move |&b| SumItem::new(a, b))).collect();
    smallest(&all, k)
}

pub fn shuffled<T>(rng: &mut ChaCha8Rng, mut v: Vec<T>) -> Vec<T> {
    v.shuffle(rng);
    v
}
