mod common;

use common::*;
use proptest::prelude::*;
use softselect::core_select::is_heap;
use softselect::{heapify, linear_select, select_in_place, weighted_select, Item, Meter, WeightedItem};

proptest! {
    #[test]
    fn linear_select_matches_sort(keys in prop::collection::vec(-50i64..50, 1..400), pick in any::<prop::sample::Index>()) {
        let items: Vec<Item> = keys.iter().enumerate().map(|(i, &k)| Item::new(k, i as u64)).collect();
        let k = pick.index(items.len()) + 1;
        let (kth, smaller) = linear_select(&items, k, &Meter::new()).unwrap();
        let want = smallest(&items, k);
        prop_assert_eq!(kth, want[k - 1]);
        prop_assert_eq!(sorted(smaller), &want[..k - 1]);
    }

    #[test]
    fn select_in_place_partitions(keys in prop::collection::vec(0i64..1000, 1..300), pick in any::<prop::sample::Index>()) {
        let mut v = keys.clone();
        let k = pick.index(v.len()) + 1;
        select_in_place(&mut v, k, &Meter::new()).unwrap();
        let mut s = keys;
        s.sort();
        prop_assert_eq!(v[k - 1], s[k - 1]);
        prop_assert!(v[..k - 1].iter().all(|x| *x <= v[k - 1]));
        prop_assert!(v[k..].iter().all(|x| *x >= v[k - 1]));
    }

    #[test]
    fn weighted_select_is_minimal_prefix(
        pairs in prop::collection::vec((0i64..100, 1u64..20), 1..200),
        frac in 0.0f64..=1.0,
    ) {
        let items: Vec<WeightedItem<Item>> = pairs
            .iter()
            .enumerate()
            .map(|(i, &(k, w))| WeightedItem::new(Item::new(k, i as u64), w))
            .collect();
        let total: u64 = items.iter().map(|w| w.weight).sum();
        let target = (frac * total as f64) as u64;
        let got = sorted(weighted_select(items.clone(), target, &Meter::new()).unwrap().into_iter().map(|w| w.item).collect());
        let mut by_key = items;
        by_key.sort_by_key(|w| w.item);
        let (mut acc, mut len) = (0, 0);
        while acc < target {
            acc += by_key[len].weight;
            len += 1;
        }
        let want: Vec<Item> = by_key[..len].iter().map(|w| w.item).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn heapify_orders_and_permutes(keys in prop::collection::vec(any::<i32>(), 0..500)) {
        let mut v = keys.clone();
        let meter = Meter::new();
        heapify(&mut v, &meter);
        prop_assert!(is_heap(&v));
        prop_assert!(meter.comparisons() <= 2 * v.len() as u64);
        prop_assert_eq!(sorted(v), sorted(keys));
    }
}

#[test]
fn weighted_select_examples() {
    let items = vec![WeightedItem::new(10, 4), WeightedItem::new(20, 2), WeightedItem::new(30, 8)];
    let pick = |w| sorted(weighted_select(items.clone(), w, &Meter::new()).unwrap().into_iter().map(|x| x.item).collect::<Vec<_>>());
    assert_eq!(pick(5), [10, 20]);
    assert_eq!(pick(0), Vec::<i32>::new());
    assert_eq!(pick(14), [10, 20, 30]);
    assert!(weighted_select(items, 15, &Meter::new()).is_err());
}

#[test]
fn heapify_examples() {
    let meter = Meter::new();
    let mut empty: Vec<i32> = vec![];
    heapify(&mut empty, &meter);
    assert!(empty.is_empty());
    let mut up = vec![1, 2, 3, 4, 5];
    heapify(&mut up, &meter);
    assert_eq!(up, [1, 2, 3, 4, 5]);
    let mut small = vec![3, 1, 2];
    heapify(&mut small, &meter);
    assert_eq!(small[0], 1);
    assert!(is_heap(&small));
}

#[test]
fn linear_select_is_linear() {
    let mut r = rng(11);
    let mut slopes = Vec::new();
    for n in [100, 1_000, 10_000] {
        let items = random_items(&mut r, n, 1 << 40);
        let mut worst = 0.0f64;
        for k in [1, n / 4, n / 2, n] {
            let meter = Meter::new();
            linear_select(&items, k, &meter).unwrap();
            worst = worst.max(meter.comparisons() as f64 / n as f64);
        }
        slopes.push(worst);
    }
    // A single constant covers every size.
    assert!(slopes.iter().all(|&s| s < 12.0), "{slopes:?}");
}
