mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use softselect::matrix_select::*;
use softselect::{Item, Meter};

fn all_algorithms(a: &Matrix<Item>, k: usize) -> [Vec<usize>; 4] {
    let m = Meter::new();
    let lens: Vec<usize> = a.rows().iter().map(Vec::len).collect();
    [
        mat_select1(a, k, &m).unwrap(),
        mat_select2(a, k, &m).unwrap(),
        mat_select3(a, &lens, k, &m).unwrap(),
        mat_select4(a, k, &m).unwrap(),
    ]
}

#[test]
fn small_example() {
    let a = Matrix::from_keys(vec![vec![1, 4, 7], vec![2, 5, 8], vec![3, 6, 9]]).unwrap();
    for counts in all_algorithms(&a, 4) {
        assert_eq!(counts, [2, 1, 1]);
    }
    let one = Matrix::from_keys(vec![(0..40).collect()]).unwrap();
    for counts in all_algorithms(&one, 23) {
        assert_eq!(counts, [23]);
    }
    let singles = Matrix::from_keys((0..10).map(|i| vec![i]).collect()).unwrap();
    assert_eq!(all_algorithms(&singles, 10)[2], [1; 10]);
}

#[test]
fn rank_errors() {
    let a = Matrix::from_keys(vec![vec![1, 2], vec![3]]).unwrap();
    let m = Meter::new();
    assert!(mat_select1(&a, 4, &m).is_err());
    assert!(mat_select2(&a, 0, &m).is_err());
    assert!(mat_select4(&a, 4, &m).is_err());
    assert!(mat_select3(&a, &[2, 0], 1, &m).is_err());
    assert!(mat_select3(&a, &[2, 2], 1, &m).is_err());
    assert!(mat_select3(&a, &[1, 1], 3, &m).is_err());
    assert!(mat_select3(&a, &[1], 1, &m).is_err());
}

#[test]
fn random_matrices_agree_with_sorting() {
    let mut r = rng(21);
    for _ in 0..60 {
        let m = r.random_range(1..40);
        let a = random_matrix(&mut r, m, 200, 5_000);
        let total: usize = a.rows().iter().map(Vec::len).sum();
        for k in [1, total / 7 + 1, total / 2 + 1, total] {
            let want = matrix_counts(&a, k);
            for (alg, got) in all_algorithms(&a, k).into_iter().enumerate() {
                assert_eq!(got, want, "algorithm {} m={m} k={k}", alg + 1);
            }
        }
    }
}

#[test]
fn select1_is_linear() {
    let mut r = rng(22);
    let a = random_matrix(&mut r, 100, 200, 1 << 30);
    let meter = Meter::new();
    assert_eq!(mat_select1(&a, 5_000, &meter).unwrap(), matrix_counts(&a, 5_000));
    assert!(meter.comparisons() < 40 * (100 + 5_000));
}

#[test]
fn select2_rounds() {
    let mut r = rng(23);
    let rows: Vec<Vec<i64>> = (0..64)
        .map(|_| {
            let mut v: Vec<i64> = (0..4096).map(|_| r.random_range(0..1 << 30)).collect();
            v.sort();
            v
        })
        .collect();
    let a = Matrix::from_keys(rows).unwrap();
    let k = 1 << 14;
    let (counts, rounds) = mat_select2_rounds(&a, k, &Meter::new()).unwrap();
    assert_eq!(counts, matrix_counts(&a, k));
    let limit = ((k as f64 / 128.0).ln() / (4.0f64 / 3.0).ln()).ceil() as usize + 1;
    assert!(rounds.len() <= limit);
    for round in rounds {
        assert!(4 * round.removed >= round.k_before);
    }
}

#[test]
fn select2_matches_select1_below_2m() {
    let mut r = rng(24);
    let a = random_matrix(&mut r, 30, 50, 1_000);
    let m = Meter::new();
    for k in 1..=60 {
        assert_eq!(mat_select2(&a, k, &m).unwrap(), mat_select1(&a, k, &m).unwrap());
    }
}

#[test]
fn select2_cost_grows_by_rounds() {
    let mut r = rng(25);
    let a = random_matrix(&mut r, 64, 4096, 1 << 30);
    let cost = |k| {
        let meter = Meter::new();
        mat_select2(&a, k, &meter).unwrap();
        meter.comparisons() as f64
    };
    for k in [256, 1024, 4096] {
        // Quadrupling k adds a bounded number of O(m) rounds.
        assert!(cost(4 * k) - cost(k) <= 40.0 * 64.0 * 3.0, "k={k}");
    }
}

#[test]
fn select3_shrinks_every_round() {
    let mut r = rng(26);
    for _ in 0..20 {
        let m = r.random_range(1..60);
        let a = random_matrix(&mut r, m, 1 << 10, 1 << 20);
        let lens: Vec<usize> = a.rows().iter().map(Vec::len).collect();
        let k = lens.iter().sum::<usize>() / 2 + 1;
        let (counts, rounds) = mat_select3_rounds(&a, &lens, k, &Meter::new()).unwrap();
        assert_eq!(counts, matrix_counts(&a, k));
        for round in rounds {
            assert!(8 * (round.k_before - round.removed) <= 7 * round.k_before, "{round:?}");
        }
    }
}

#[test]
fn select3_respects_prefix_lengths() {
    let a = Matrix::from_keys(vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8]]).unwrap();
    // Only the first entry of row 0 counts.
    assert_eq!(mat_select3(&a, &[1, 4], 3, &Meter::new()).unwrap(), [1, 2]);
}

#[test]
fn select4_accepts_a_small_ell() {
    let mut r = rng(27);
    for _ in 0..20 {
        let a = random_matrix(&mut r, 32, 300, 1 << 20);
        let total: usize = a.rows().iter().map(Vec::len).sum();
        let k = 2048.min(total);
        let (counts, report) = mat_select4_report(&a, k, &Meter::new()).unwrap();
        assert_eq!(counts, matrix_counts(&a, k));
        let big_l: usize = counts.iter().map(|&c| (c + 1).ilog2() as usize).sum();
        assert!(report.ell < 2 * (32 + big_l), "{report:?}");
    }
}

#[test]
fn select4_is_output_sensitive() {
    // Every answer sits in row 0.
    let k = 1 << 12;
    let mut rows = vec![(0..k as i64).collect::<Vec<_>>()];
    rows.extend((1..256).map(|i| (0..64).map(|j| 1_000_000 + 64 * j + i).collect()));
    let a = Matrix::from_keys(rows).unwrap();
    let meter = Meter::new();
    let counts = mat_select4(&a, k, &meter).unwrap();
    assert_eq!(counts[0], k);
    assert!(meter.comparisons() < 150 * (256 + 12));
}

#[test]
fn verify_selection_examples() {
    let a = Matrix::from_keys(vec![vec![1, 3, 5, 7], vec![2, 4, 6, 8]]).unwrap();
    let m = Meter::new();
    assert!(verify_selection(&a, &[2, 2], &m).unwrap());
    assert!(!verify_selection(&a, &[3, 1], &m).unwrap());
    assert!(verify_selection(&a, &[4, 4], &m).unwrap());
    assert!(verify_selection(&a, &[0, 0], &m).unwrap());
    assert!(verify_selection(&a, &[5, 0], &m).is_err());
    assert!(verify_selection(&a, &[1], &m).is_err());
}

#[test]
fn verify_selection_is_sound_and_complete() {
    let mut r = rng(28);
    for _ in 0..200 {
        let m = r.random_range(1..=64);
        let a = random_matrix(&mut r, m, 256, 1 << 12);
        let total: usize = a.rows().iter().map(Vec::len).sum();
        let k = r.random_range(1..=total);
        let good = matrix_counts(&a, k);
        assert!(verify_selection(&a, &good, &Meter::new()).unwrap());
        // Move one unit between two rows.
        let from = r.random_range(0..m);
        let to = r.random_range(0..m);
        if from != to && good[from] > 0 && good[to] < a.rows()[to].len() {
            let mut bad = good.clone();
            bad[from] -= 1;
            bad[to] += 1;
            assert!(!verify_selection(&a, &bad, &Meter::new()).unwrap());
        }
    }
}

#[test]
fn views_read_strided_entries() {
    let a = Matrix::from_keys(vec![(0..20).collect(), (100..110).collect()]).unwrap();
    let v = MatrixView::with(&a, 3, vec![1, 0]).unwrap();
    assert_eq!(v.entry(0, 2).map(|x| x.key), Some(6));
    assert_eq!(v.entry(1, 3).map(|x| x.key), Some(108));
    assert_eq!(v.entry(1, 4), None);
    let counts = mat_select2(&v, 5, &Meter::new()).unwrap();
    assert_eq!(counts, [5, 0]);
}

#[test]
fn parse_text_format() {
    let a: Matrix<Item> = "3\n1 2 3\n-4 10\n7\n".parse().unwrap();
    assert_eq!(a.rows().len(), 3);
    assert_eq!(a.rows()[1][0], Item::new(-4, matrix_id(1, 0)));
    assert!("1\n3 2\n".parse::<Matrix<Item>>().is_err());
    assert!("x\n".parse::<Matrix<Item>>().is_err());
    assert!("1\n1 2\n3\n".parse::<Matrix<Item>>().is_err());
    assert!("1\n1 a\n".parse::<Matrix<Item>>().is_err());
}

proptest! {
    #[test]
    fn algorithms_agree(rows in prop::collection::vec(prop::collection::vec(0i64..50, 1..30), 1..12), pick in any::<prop::sample::Index>()) {
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|mut r| { r.sort(); r }).collect();
        let a = Matrix::from_keys(rows).unwrap();
        let total: usize = a.rows().iter().map(Vec::len).sum();
        let k = pick.index(total) + 1;
        let want = matrix_counts(&a, k);
        for got in all_algorithms(&a, k) {
            prop_assert_eq!(&got, &want);
        }
        prop_assert!(verify_selection(&a, &want, &Meter::new()).unwrap());
    }
}
