//! Executes a configuration: one metered run per (trial, k), optionally
//! checked against the oracle.

use std::fmt::{Display, Write as _};
use std::io::Write;
use std::ops::Add;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;
use softselect::heap_select::{
    naive_heap_select, soft_select, soft_select_dary, soft_select_heapify, soft_select_heapify_with,
    soft_select_with, ArrayHeap, HeapSource, Tree,
};
use softselect::matrix_select::{mat_select1, mat_select2, mat_select3, mat_select4, Matrix, SortedRows};
use softselect::xy_select::{xy_select1, xy_select2, XYInstance};
use softselect::{Item, Meter};

use crate::bounds::{catalan_bits, fuss_catalan_bits, info_bound};
use crate::config::{Algo, ExperimentConfig, Family};
use crate::error::{usage, HarnessError};
use crate::generate::FloatItem;
use crate::{generate, oracle};

/// One CSV row. Fields that do not apply to the family are left empty.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub family: Family,
    pub algo: &'static str,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub k: usize,
    pub eps: Option<f64>,
    pub seed: u64,
    pub comparisons: u64,
    pub inserts: u64,
    pub extract_mins: u64,
    pub corruptions: u64,
    pub info_bound_bits: Option<f64>,
    pub verified: bool,
    pub runtime_ns: u64,
}

/// Writes records as CSV with a header row.
pub fn write_csv<W: Write>(records: &[RunRecord], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Runs `config` and collects its records.
pub fn run(config: &ExperimentConfig) -> Result<Vec<RunRecord>, HarnessError> {
    let mut out = Vec::new();
    run_with(config, |r| {
        out.push(r.clone());
        Ok(())
    })?;
    Ok(out)
}

/// Runs `config`, handing each record to `sink` as soon as it is produced.
/// Trials run in order; trial `t` uses seed `config.seed + t`.
pub fn run_with<F>(config: &ExperimentConfig, mut sink: F) -> Result<(), HarnessError>
where
    F: FnMut(&RunRecord) -> Result<(), HarnessError>,
{
    config.validate()?;
    let file_matrix = match &config.matrix_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let a: Matrix<Item> = text.parse()?;
            let total: usize = a.rows().iter().map(Vec::len).sum();
            if let Some(&k) = config.ks.iter().find(|&&k| k > total) {
                return Err(usage(format!("k = {k} exceeds the {total} matrix entries")));
            }
            Some(a)
        }
        None => None,
    };
    let k_max = *config.ks.iter().max().unwrap();
    for t in 0..config.trials {
        let seed = config.seed.wrapping_add(t as u64);
        let inst = match config.family {
            Family::Heap => Instance::Heap(generate::heap(seed, config.n, 2)),
            Family::Dary => Instance::Heap(generate::heap(seed, config.n, config.d)),
            Family::Tree => Instance::Tree(generate::tree(seed, config.n, config.d)),
            Family::Matrix => Instance::Matrix(match &file_matrix {
                Some(a) => a.clone(),
                None => generate::matrix(seed, config.row_law, config.m, config.n, k_max),
            }),
            Family::Xy if config.float_keys => {
                let (x, y) = generate::xy_float(seed, config.m, config.n);
                Instance::XyFloat(x, y)
            }
            Family::Xy => {
                let (x, y) = generate::xy(seed, config.m, config.n);
                Instance::Xy(x, y)
            }
        };
        for &k in &config.ks {
            let record = run_one(config, &inst, seed, t, k)?;
            sink(&record)?;
        }
    }
    Ok(())
}

enum Instance {
    Heap(ArrayHeap<Item>),
    Tree(Tree<Item>),
    Matrix(Matrix<Item>),
    Xy(Vec<Item>, Vec<Item>),
    XyFloat(Vec<FloatItem>, Vec<FloatItem>),
}

/// An algorithm's output reduced to something comparable with the oracle.
#[derive(Debug, PartialEq)]
enum Answer {
    Ids(Vec<u64>),
    Counts(Vec<usize>),
    Pairs(Vec<(u64, u64)>),
}

impl Answer {
    fn ids<K>(items: &[Item<K>]) -> Self {
        let mut v: Vec<u64> = items.iter().map(|i| i.id).collect();
        v.sort_unstable();
        Answer::Ids(v)
    }

    fn damage(&mut self) {
        match self {
            Answer::Ids(v) => v[0] ^= 1 << 62,
            Answer::Counts(v) => v[0] += 1,
            Answer::Pairs(v) => v[0].0 ^= 1 << 62,
        }
    }

    fn diff(&self, expected: &Answer) -> String {
        match (self, expected) {
            (Answer::Counts(a), Answer::Counts(b)) => {
                let row = (0..a.len()).find(|&i| a[i] != b[i]).unwrap_or(0);
                format!("row {row} contributes {} items, expected {}", a[row], b[row])
            }
            (Answer::Ids(a), Answer::Ids(b)) => {
                let bad = a.iter().find(|x| b.binary_search(x).is_err());
                format!("{} items returned, {} expected; first stray id {bad:?}", a.len(), b.len())
            }
            (Answer::Pairs(a), Answer::Pairs(b)) => {
                let bad = a.iter().find(|x| b.binary_search(x).is_err());
                format!("{} sums returned, {} expected; first stray pair {bad:?}", a.len(), b.len())
            }
            _ => "output of the wrong shape".into(),
        }
    }
}

fn run_one(
    config: &ExperimentConfig,
    inst: &Instance,
    seed: u64,
    trial: usize,
    k: usize,
) -> Result<RunRecord, HarnessError> {
    let meter = Meter::new();
    let algo = config.algo;
    let (mut m, mut n, mut d, mut info) = (None, Some(config.n), None, None);
    let start = Instant::now();
    let mut answer = match inst {
        Instance::Heap(h) => {
            d = Some(h.arity());
            info = Some(match config.family {
                Family::Heap => catalan_bits(k),
                _ => fuss_catalan_bits(h.arity(), k),
            });
            Answer::ids(&heap_algo(h, algo, config.eps, h.arity(), k, &meter)?)
        }
        Instance::Tree(tr) => {
            d = Some(config.d);
            Answer::ids(&heap_algo(tr, algo, config.eps, config.d, k, &meter)?)
        }
        Instance::Matrix(a) => {
            m = Some(a.num_rows());
            n = Some(a.rows().iter().map(Vec::len).max().unwrap_or(0));
            info = Some(info_bound(a.num_rows(), k));
            Answer::Counts(matrix_algo(a, algo, k, &meter)?)
        }
        Instance::Xy(x, y) => {
            (m, n) = (Some(x.len()), Some(y.len()));
            xy_algo(x, y, algo, k, &meter)?
        }
        Instance::XyFloat(x, y) => {
            (m, n) = (Some(x.len()), Some(y.len()));
            xy_algo(x, y, algo, k, &meter)?
        }
    };
    let runtime_ns = start.elapsed().as_nanos() as u64;
    if config.inject_fault {
        answer.damage();
    }
    if config.verify {
        let expected = match inst {
            Instance::Heap(h) => Answer::ids(&oracle::heap(h, k)),
            Instance::Tree(tr) => Answer::ids(&oracle::heap(tr, k)),
            Instance::Matrix(a) => Answer::Counts(oracle::matrix(a, k)),
            Instance::Xy(x, y) => pairs(&oracle::xy(x, y, k)?),
            Instance::XyFloat(x, y) => pairs(&oracle::xy(x, y, k)?),
        };
        if answer != expected {
            let dump = dump_instance(config, inst, seed, k)?;
            return Err(HarnessError::Verification { trial, seed, detail: answer.diff(&expected), dump });
        }
    }
    Ok(RunRecord {
        family: config.family,
        algo: algo.name(),
        m,
        n,
        d,
        k,
        eps: eps_of(config, d),
        seed,
        comparisons: meter.comparisons(),
        inserts: meter.inserts(),
        extract_mins: meter.extract_mins(),
        corruptions: meter.corruptions(),
        info_bound_bits: info,
        verified: config.verify,
        runtime_ns,
    })
}

/// The error parameter of the soft heap that drives the algorithm.
fn eps_of(config: &ExperimentConfig, d: Option<usize>) -> Option<f64> {
    match config.algo {
        Algo::Naive => None,
        Algo::SoftSelect => Some(config.eps.unwrap_or(0.25)),
        Algo::SoftSelectDary => Some(config.eps.unwrap_or(1.0 / (2 * d.unwrap_or(2)) as f64)),
        Algo::SoftSelectHeapify => Some(config.eps.unwrap_or(1.0 / 9.0)),
        Algo::XySelect1 => Some(0.125),
        Algo::MatSelect1 | Algo::MatSelect2 | Algo::MatSelect3 | Algo::MatSelect4 | Algo::XySelect2 => Some(0.25),
    }
}

fn heap_algo<S: HeapSource>(
    src: &S,
    algo: Algo,
    eps: Option<f64>,
    d: usize,
    k: usize,
    meter: &Meter,
) -> Result<Vec<S::Item>, HarnessError> {
    let out = match (algo, eps) {
        (Algo::Naive, _) => return Ok(naive_heap_select(src, k, meter)?),
        (Algo::SoftSelect | Algo::SoftSelectDary, Some(e)) => soft_select_with(src, k, e, meter, None)?,
        (Algo::SoftSelect, None) => soft_select(src, k, meter)?,
        (Algo::SoftSelectDary, None) => soft_select_dary(src, k, d, meter)?,
        (Algo::SoftSelectHeapify, Some(e)) => soft_select_heapify_with(src, k, e, meter)?,
        (Algo::SoftSelectHeapify, None) => soft_select_heapify(src, k, meter)?,
        _ => unreachable!("validated against the family"),
    };
    Ok(out.items)
}

fn matrix_algo(a: &Matrix<Item>, algo: Algo, k: usize, meter: &Meter) -> Result<Vec<usize>, HarnessError> {
    Ok(match algo {
        Algo::MatSelect1 => mat_select1(a, k, meter)?,
        Algo::MatSelect2 => mat_select2(a, k, meter)?,
        Algo::MatSelect3 => {
            let lens: Vec<usize> = a.rows().iter().map(Vec::len).collect();
            mat_select3(a, &lens, k, meter)?
        }
        Algo::MatSelect4 => mat_select4(a, k, meter)?,
        _ => unreachable!("validated against the family"),
    })
}

fn xy_algo<K: Ord + Copy + Add<Output = K>>(
    x: &[Item<K>],
    y: &[Item<K>],
    algo: Algo,
    k: usize,
    meter: &Meter,
) -> Result<Answer, HarnessError> {
    let inst = XYInstance::new(x.to_vec(), y.to_vec())?;
    let sums = match algo {
        Algo::XySelect1 => xy_select1(&inst, k, meter)?,
        Algo::XySelect2 => xy_select2(&inst, k, meter)?,
        _ => unreachable!("validated against the family"),
    };
    Ok(pairs(&sums))
}

fn pairs<K>(sums: &[softselect::SumItem<K>]) -> Answer {
    let mut v: Vec<(u64, u64)> = sums.iter().map(|s| (s.x.id, s.y.id)).collect();
    v.sort_unstable();
    Answer::Pairs(v)
}

/// Writes a failing instance to `config.dump_dir` and returns its path.
/// Matrices are written in the matrix file format so they can be replayed
/// with `--matrix-file`.
fn dump_instance(config: &ExperimentConfig, inst: &Instance, seed: u64, k: usize) -> Result<PathBuf, HarnessError> {
    fn line<K: Display>(items: &[Item<K>]) -> String {
        let keys: Vec<String> = items.iter().map(|i| i.key.to_string()).collect();
        keys.join(" ")
    }
    let mut s = String::new();
    match inst {
        Instance::Heap(h) => {
            writeln!(s, "# {}-ary heap, k = {k}; one `key id` per array slot", h.arity()).unwrap();
            for i in h.as_slice() {
                writeln!(s, "{} {}", i.key, i.id).unwrap();
            }
        }
        Instance::Tree(tr) => {
            writeln!(s, "# tree, k = {k}; one `parent key id` per node, root has parent -").unwrap();
            let mut parent = vec![None; tr.len()];
            for (p, cs) in tr.child_lists().iter().enumerate() {
                for &c in cs {
                    parent[c] = Some(p);
                }
            }
            for (i, item) in tr.items().iter().enumerate() {
                let p = parent[i].map_or("-".to_string(), |p| p.to_string());
                writeln!(s, "{p} {} {}", item.key, item.id).unwrap();
            }
        }
        Instance::Matrix(a) => {
            writeln!(s, "{}", a.num_rows()).unwrap();
            for row in a.rows() {
                writeln!(s, "{}", line(row)).unwrap();
            }
        }
        Instance::Xy(x, y) => writeln!(s, "# X + Y, k = {k}\n{}\n{}", line(x), line(y)).unwrap(),
        Instance::XyFloat(x, y) => writeln!(s, "# X + Y, k = {k}\n{}\n{}", line(x), line(y)).unwrap(),
    }
    let name = format!("softselect-{}-{}-seed{seed}-k{k}.txt", config.family, config.algo);
    let path = config.dump_dir.join(name);
    std::fs::create_dir_all(&config.dump_dir)?;
    std::fs::write(&path, s)?;
    Ok(path)
}
