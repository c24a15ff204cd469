mod common;

use std::collections::{BTreeMap, BinaryHeap, HashSet};
use std::cmp::Reverse;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use softselect::soft_heap::{approximate_median, select_rank_via_soft_heap, select_rank_with_rounds, SoftHeap};
use softselect::{Item, Meter};

/// Runs `ops` random operations, checking the full contract against a shadow
/// copy of the contents after every step.
fn check_contract(eps: f64, ops: usize, insert_bias: f64, seed: u64) {
    let mut r = rng(seed);
    let meter = Meter::new();
    let mut heap = SoftHeap::new(eps, &meter).unwrap();
    let mut live: BTreeMap<u64, Item> = BTreeMap::new();
    let mut corrupt: HashSet<u64> = HashSet::new();
    let mut ever_corrupt: HashSet<u64> = HashSet::new();
    let mut last_key: BTreeMap<u64, Item> = BTreeMap::new();
    let mut next_id = 0;
    for _ in 0..ops {
        if live.is_empty() || r.random_bool(insert_bias) {
            let item = Item::new(r.random_range(0..1000), next_id);
            next_id += 1;
            heap.insert(item);
            live.insert(item.id, item);
        } else {
            let before = heap.entries();
            let floor = before.iter().map(|e| e.current_key).min().unwrap();
            let out = heap.extract_min().unwrap();
            assert_eq!(out.current_key, floor, "not a minimum at the start of the call");
            assert!(live.remove(&out.item.id).is_some());
            assert_eq!(out.corrupt, corrupt.contains(&out.item.id));
            for c in &out.newly_corrupt {
                assert!(ever_corrupt.insert(c.id), "{c} reported corrupt twice");
                corrupt.insert(c.id);
            }
            corrupt.remove(&out.item.id);
        }
        let entries = heap.entries();
        assert_eq!(entries.len(), live.len());
        let mut now_corrupt = 0;
        for e in &entries {
            assert_eq!(live.get(&e.item.id), Some(&e.item));
            assert!(e.current_key >= e.item);
            assert_eq!(e.corrupt, e.current_key != e.item);
            assert_eq!(e.corrupt, corrupt.contains(&e.item.id), "corruption of {} went unreported", e.item);
            if let Some(prev) = last_key.insert(e.item.id, e.current_key) {
                assert!(e.current_key >= prev, "current key of {} decreased", e.item);
            }
            now_corrupt += e.corrupt as usize;
        }
        assert_eq!(now_corrupt, heap.corrupt_count());
        assert!(now_corrupt as f64 <= eps * heap.insertions() as f64);
    }
}

#[test]
fn contract_holds_under_random_operations() {
    for (i, eps) in [0.25, 1.0 / 6.0, 1.0 / 16.0, 0.5, 0.9].into_iter().enumerate() {
        for (j, bias) in [0.5, 0.6, 0.8].into_iter().enumerate() {
            check_contract(eps, 4_000, bias, (10 * i + j) as u64);
        }
    }
}

#[test]
fn inserts_never_corrupt() {
    let meter = Meter::new();
    let mut heap = SoftHeap::new(0.5, &meter).unwrap();
    let mut r = rng(3);
    for item in random_items(&mut r, 5_000, 100) {
        heap.insert(item);
    }
    assert_eq!(heap.corrupt_count(), 0);
    assert_eq!(meter.corruptions(), 0);
}

#[test]
fn tiny_error_behaves_exactly() {
    let mut r = rng(4);
    let items = random_items(&mut r, 2_000, 50);
    let meter = Meter::new();
    // eps·I < 1 for the whole run.
    let mut heap = SoftHeap::new(1.0 / 4_001.0, &meter).unwrap();
    let mut exact = BinaryHeap::new();
    for (i, &x) in items.iter().enumerate() {
        heap.insert(x);
        exact.push(Reverse(x));
        if i % 3 == 2 {
            let got = heap.extract_min().unwrap();
            assert!(!got.corrupt);
            assert_eq!(got.item, exact.pop().unwrap().0);
        }
    }
    while let Some(Reverse(want)) = exact.pop() {
        assert_eq!(heap.extract_min().unwrap().item, want);
    }
    assert!(heap.is_empty());
}

#[test]
fn rejects_bad_error_and_empty_extract() {
    let meter = Meter::new();
    for eps in [0.0, 1.0, -0.5, f64::NAN] {
        assert!(SoftHeap::<i32>::new(eps, &meter).is_err());
    }
    let mut heap = SoftHeap::<i32>::new(0.25, &meter).unwrap();
    assert!(heap.extract_min().is_err());
    for x in [1, 2, 3] {
        heap.insert(x);
    }
    let got = heap.extract_min().unwrap();
    assert_eq!((got.item, got.newly_corrupt.len()), (1, 0));
}

#[test]
fn operation_cost_is_flat_in_size() {
    let mut per_item = Vec::new();
    for n in [1_000, 10_000, 100_000] {
        let mut r = rng(n as u64);
        let items = random_items(&mut r, n, 1 << 40);
        let meter = Meter::new();
        let mut heap = SoftHeap::new(0.25, &meter).unwrap();
        for &x in &items {
            heap.insert(x);
        }
        while heap.extract_min().is_ok() {}
        per_item.push(meter.comparisons() as f64 / n as f64);
    }
    assert!(per_item[2] < 1.3 * per_item[0], "{per_item:?}");
}

/// Rank (1-based) of `x` in `items`.
fn rank_of(items: &[Item], x: Item) -> usize {
    items.iter().filter(|&&y| y <= x).count()
}

#[test]
fn approximate_median_window() {
    let mut r = rng(8);
    for _ in 0..100 {
        let items = random_items(&mut r, 100, 1_000);
        let med = approximate_median(&items, 0.25, &Meter::new()).unwrap();
        let rank = rank_of(&items, med);
        assert!((37..=63).contains(&rank), "rank {rank}");
    }
    let one = [Item::new(5, 0)];
    assert_eq!(approximate_median(&one, 0.25, &Meter::new()).unwrap(), one[0]);
    assert!(approximate_median(&[] as &[Item], 0.25, &Meter::new()).is_err());
    assert!(approximate_median(&one, 0.5, &Meter::new()).is_err());
}

#[test]
fn rank_selection_matches_sort() {
    let mut r = rng(9);
    let items = random_items(&mut r, 1_000, 500);
    let s = smallest(&items, items.len());
    for k in [1, 500, 1_000] {
        assert_eq!(select_rank_via_soft_heap(&items, k, &Meter::new()).unwrap(), s[k - 1]);
    }
    let (_, rounds) = select_rank_with_rounds(&items, 1, &Meter::new()).unwrap();
    assert!(rounds[1] <= 3 * rounds[0] / 4 + 2, "{rounds:?}");
    assert!(select_rank_via_soft_heap(&items, 0, &Meter::new()).is_err());
}

proptest! {
    #[test]
    fn rank_selection_any_k(keys in prop::collection::vec(0i64..40, 1..300), pick in any::<prop::sample::Index>()) {
        let items: Vec<Item> = keys.iter().enumerate().map(|(i, &k)| Item::new(k, i as u64)).collect();
        let k = pick.index(items.len()) + 1;
        prop_assert_eq!(select_rank_via_soft_heap(&items, k, &Meter::new()).unwrap(), smallest(&items, k)[k - 1]);
    }

    #[test]
    fn extraction_returns_everything_once(keys in prop::collection::vec(0i64..20, 0..300), eps in 0.01f64..0.99) {
        let meter = Meter::new();
        let mut heap = SoftHeap::new(eps, &meter).unwrap();
        let items: Vec<Item> = keys.iter().enumerate().map(|(i, &k)| Item::new(k, i as u64)).collect();
        for &x in &items {
            heap.insert(x);
        }
        let mut out = Vec::new();
        while let Ok(e) = heap.extract_min() {
            out.push(e.item);
        }
        prop_assert_eq!(sorted(out), sorted(items));
    }
}
