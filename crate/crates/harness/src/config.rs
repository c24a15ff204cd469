use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{usage, HarnessError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Heap,
    Dary,
    Tree,
    Matrix,
    Xy,
}

impl Family {
    pub fn algos(self) -> &'static [Algo] {
        use Algo::*;
        match self {
            Family::Heap => &[SoftSelect, SoftSelectHeapify, Naive],
            Family::Dary => &[SoftSelectDary, SoftSelectHeapify, Naive],
            Family::Tree => &[SoftSelectHeapify, Naive],
            Family::Matrix => &[MatSelect4, MatSelect3, MatSelect2, MatSelect1],
            Family::Xy => &[XySelect2, XySelect1],
        }
    }

    /// The algorithm run when `--algo` is not given.
    pub fn default_algo(self) -> Algo {
        self.algos()[0]
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Heap => "heap",
            Family::Dary => "dary",
            Family::Tree => "tree",
            Family::Matrix => "matrix",
            Family::Xy => "xy",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algo {
    Naive,
    SoftSelect,
    SoftSelectDary,
    SoftSelectHeapify,
    MatSelect1,
    MatSelect2,
    MatSelect3,
    MatSelect4,
    XySelect1,
    XySelect2,
}

const ALGO_NAMES: [(Algo, &str); 10] = [
    (Algo::Naive, "naive"),
    (Algo::SoftSelect, "soft_select"),
    (Algo::SoftSelectDary, "soft_select_dary"),
    (Algo::SoftSelectHeapify, "soft_select_heapify"),
    (Algo::MatSelect1, "mat_select1"),
    (Algo::MatSelect2, "mat_select2"),
    (Algo::MatSelect3, "mat_select3"),
    (Algo::MatSelect4, "mat_select4"),
    (Algo::XySelect1, "xy_select1"),
    (Algo::XySelect2, "xy_select2"),
];

impl Algo {
    pub fn name(self) -> &'static str {
        ALGO_NAMES.iter().find(|(a, _)| *a == self).unwrap().1
    }

    /// Whether the soft heap error of this algorithm can be overridden.
    pub fn takes_eps(self) -> bool {
        matches!(self, Algo::SoftSelect | Algo::SoftSelectDary | Algo::SoftSelectHeapify)
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ALGO_NAMES
            .iter()
            .find(|(_, n)| *n == s)
            .map(|(a, _)| *a)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// How row lengths of generated matrices are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum RowLaw {
    /// Every row has `n` entries.
    Equal,
    /// Row `i` has `n >> (i mod (log2 n + 1))` entries, at least one.
    Geometric,
    /// Row 0 holds every small key and is long enough for any `k`; the other
    /// rows have `n` entries, all larger than row 0's.
    AdversarialOnerow,
}

/// `lo:hi:factor`, the ranks `lo, lo*factor, ...` up to `hi`.
pub fn parse_k_sweep(s: &str) -> Result<Vec<usize>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, factor] = parts[..] else {
        return Err(format!("expected lo:hi:factor, got `{s}`"));
    };
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    let (lo, hi, factor) = (num(lo)?, num(hi)?, num(factor)?);
    if lo == 0 || hi < lo || factor < 2 {
        return Err(format!("need 1 <= lo <= hi and factor >= 2, got `{s}`"));
    }
    let mut ks = vec![lo];
    while let Some(next) = ks.last().unwrap().checked_mul(factor).filter(|&k| k <= hi) {
        ks.push(next);
    }
    Ok(ks)
}

/// Everything that determines the rows of one harness run.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub family: Family,
    pub algo: Algo,
    /// Heap families: node count. Matrix: base row length. X+Y: `|Y|`.
    pub n: usize,
    /// Matrix: row count. X+Y: `|X|`. Unused otherwise.
    pub m: usize,
    /// `dary`: arity. `tree`: maximum degree. Unused otherwise.
    pub d: usize,
    pub ks: Vec<usize>,
    pub row_law: RowLaw,
    /// Overrides the soft heap error of the algorithm.
    pub eps: Option<f64>,
    pub seed: u64,
    pub trials: usize,
    pub verify: bool,
    /// Read the matrix from this file instead of generating one.
    pub matrix_file: Option<PathBuf>,
    /// X+Y only: draw keys as floats.
    pub float_keys: bool,
    /// Deliberately damage every output, to exercise the failure path.
    pub inject_fault: bool,
    /// Where failing instances are written.
    pub dump_dir: PathBuf,
}

impl ExperimentConfig {
    /// A single-rank, single-trial configuration with the family's defaults.
    pub fn new(family: Family, k: usize) -> Self {
        let (n, m, d) = match family {
            Family::Heap => (1 << 16, 0, 2),
            Family::Dary => (1 << 16, 0, 4),
            Family::Tree => (1 << 14, 0, 6),
            Family::Matrix => (256, 16, 0),
            Family::Xy => (64, 64, 0),
        };
        ExperimentConfig {
            family,
            algo: family.default_algo(),
            n,
            m,
            d,
            ks: vec![k],
            row_law: RowLaw::Equal,
            eps: None,
            seed: 0,
            trials: 1,
            verify: false,
            matrix_file: None,
            float_keys: false,
            inject_fault: false,
            dump_dir: std::env::temp_dir(),
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if !self.family.algos().contains(&self.algo) {
            let names: Vec<&str> = self.family.algos().iter().map(|a| a.name()).collect();
            return Err(usage(format!(
                "algorithm {} does not apply to {}; choose one of {}",
                self.algo,
                self.family,
                names.join(", ")
            )));
        }
        if self.ks.is_empty() || self.ks.contains(&0) {
            return Err(usage("k must be at least 1"));
        }
        if self.trials == 0 {
            return Err(usage("trials must be at least 1"));
        }
        if let Some(eps) = self.eps {
            if !self.algo.takes_eps() {
                return Err(usage(format!("{} has no tunable error parameter", self.algo)));
            }
            if !(eps > 0.0 && eps < 1.0) {
                return Err(usage(format!("eps must lie in (0, 1), got {eps}")));
            }
        }
        let k_max = *self.ks.iter().max().unwrap();
        match self.family {
            Family::Heap | Family::Dary | Family::Tree => {
                if self.family == Family::Dary && self.d < 2 {
                    return Err(usage("d must be at least 2"));
                }
                if self.family == Family::Tree && self.d < 1 {
                    return Err(usage("the maximum degree must be at least 1"));
                }
                if k_max > self.n {
                    return Err(usage(format!("k = {k_max} exceeds n = {}", self.n)));
                }
            }
            Family::Matrix => {
                if self.matrix_file.is_none() {
                    if self.m == 0 || self.n == 0 {
                        return Err(usage("m and n must be at least 1"));
                    }
                    let total = crate::generate::row_lengths(self.row_law, self.m, self.n, k_max)
                        .iter()
                        .sum::<usize>();
                    if k_max > total {
                        return Err(usage(format!("k = {k_max} exceeds the {total} matrix entries")));
                    }
                }
            }
            Family::Xy => {
                if self.m == 0 || self.n == 0 {
                    return Err(usage("m and n must be at least 1"));
                }
                if self.m.checked_mul(self.n).map_or(true, |mn| k_max > mn) {
                    return Err(usage(format!("k = {k_max} exceeds m*n = {}", self.m * self.n)));
                }
            }
        }
        Ok(())
    }
}
