//! Command-line front end. Exit status 0 on success, 1 on a usage error, 2
//! when a run fails verification.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use softselect::soft_heap::SoftHeap;
use softselect::{Item, Meter};

use crate::config::{parse_k_sweep, Algo, ExperimentConfig, Family, RowLaw};
use crate::error::{usage, HarnessError};
use crate::run::run_with;
use crate::{contract, generate};

#[derive(Debug, Parser)]
#[command(name = "softselect", version, about = "Metered selection runs with oracle checks and CSV output")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Select from random binary heaps.
    Heap(HeapArgs),
    /// Select from random d-ary heaps.
    Dary(DaryArgs),
    /// Select from random trees of bounded degree.
    Tree(TreeArgs),
    /// Select from row-sorted matrices.
    Matrix(MatrixArgs),
    /// Select from pairwise sums X + Y.
    Xy(XyArgs),
    /// Exercise a soft heap and report its corruption statistics.
    DemoSoftheap(DemoArgs),
}

#[derive(Clone, Debug)]
struct KSweep(Vec<usize>);

fn k_sweep(s: &str) -> Result<KSweep, String> {
    parse_k_sweep(s).map(KSweep)
}

#[derive(Debug, Args)]
struct Common {
    /// Algorithm; defaults to the family's optimal one.
    #[arg(long)]
    algo: Option<Algo>,
    /// Number of items to select.
    #[arg(long, required_unless_present = "k_sweep", conflicts_with = "k_sweep")]
    k: Option<usize>,
    /// Ranks lo, lo*factor, ... up to hi.
    #[arg(long, value_name = "LO:HI:FACTOR", value_parser = k_sweep)]
    k_sweep: Option<KSweep>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Check every output against a sorting oracle.
    #[arg(long)]
    verify: bool,
    /// Write CSV here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Debug, Args)]
struct HeapArgs {
    #[command(flatten)]
    common: Common,
    /// Number of nodes.
    #[arg(long)]
    n: Option<usize>,
    /// Override the soft heap error parameter.
    #[arg(long)]
    eps: Option<f64>,
}

#[derive(Debug, Args)]
struct DaryArgs {
    #[command(flatten)]
    heap: HeapArgs,
    /// Arity.
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Debug, Args)]
struct TreeArgs {
    #[command(flatten)]
    heap: HeapArgs,
    /// Maximum number of children per node.
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Debug, Args)]
struct MatrixArgs {
    #[command(flatten)]
    common: Common,
    /// Number of rows.
    #[arg(long, conflicts_with = "matrix_file")]
    m: Option<usize>,
    /// Base row length.
    #[arg(long, conflicts_with = "matrix_file")]
    n: Option<usize>,
    #[arg(long, value_enum, conflicts_with = "matrix_file")]
    row_law: Option<RowLaw>,
    /// Read the matrix from a file: the row count on the first line, then one
    /// line of ascending keys per row.
    #[arg(long, value_name = "PATH")]
    matrix_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct XyArgs {
    #[command(flatten)]
    common: Common,
    /// Size of X.
    #[arg(long)]
    m: Option<usize>,
    /// Size of Y.
    #[arg(long)]
    n: Option<usize>,
    /// Draw keys as floats in [0, 1).
    #[arg(long)]
    float_keys: bool,
}

#[derive(Debug, Args)]
struct DemoArgs {
    /// Items to insert and then extract.
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0.25)]
    eps: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Parses `args` (program name first), runs the command and returns the exit
/// status.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let result = match cli.command {
        Command::DemoSoftheap(a) => demo(&a, out),
        cmd => config_of(cmd).and_then(|(config, path)| emit(&config, path, out)),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn config_of(cmd: Command) -> Result<(ExperimentConfig, Option<PathBuf>), HarnessError> {
    let (family, common, n, eps) = match &cmd {
        Command::Heap(a) => (Family::Heap, &a.common, a.n, a.eps),
        Command::Dary(a) => (Family::Dary, &a.heap.common, a.heap.n, a.heap.eps),
        Command::Tree(a) => (Family::Tree, &a.heap.common, a.heap.n, a.heap.eps),
        Command::Matrix(a) => (Family::Matrix, &a.common, a.n, None),
        Command::Xy(a) => (Family::Xy, &a.common, a.n, None),
        Command::DemoSoftheap(_) => unreachable!("handled by the caller"),
    };
    let ks = match (&common.k_sweep, common.k) {
        (Some(KSweep(ks)), _) => ks.clone(),
        (None, Some(k)) => vec![k],
        (None, None) => return Err(usage("one of --k and --k-sweep is required")),
    };
    let mut c = ExperimentConfig::new(family, ks[0]);
    c.ks = ks;
    c.algo = common.algo.unwrap_or(family.default_algo());
    c.seed = common.seed;
    c.trials = common.trials;
    c.verify = common.verify;
    c.inject_fault = common.inject_fault;
    c.eps = eps;
    if let Some(n) = n {
        c.n = n;
    }
    if let Some(dir) = common.out.as_ref().and_then(|p| p.parent()) {
        if !dir.as_os_str().is_empty() {
            c.dump_dir = dir.to_path_buf();
        }
    }
    match &cmd {
        Command::Dary(a) => c.d = a.d.unwrap_or(c.d),
        Command::Tree(a) => c.d = a.d.unwrap_or(c.d),
        Command::Matrix(a) => {
            c.m = a.m.unwrap_or(c.m);
            c.row_law = a.row_law.unwrap_or(c.row_law);
            c.matrix_file = a.matrix_file.clone();
        }
        Command::Xy(a) => {
            c.m = a.m.unwrap_or(c.m);
            c.float_keys = a.float_keys;
        }
        _ => {}
    }
    Ok((c, common.out.clone()))
}

fn emit(config: &ExperimentConfig, path: Option<PathBuf>, out: &mut dyn Write) -> Result<(), HarnessError> {
    config.validate()?;
    let sink: Box<dyn Write + '_> = match path {
        Some(p) => Box::new(File::create(&p).map_err(|e| usage(format!("cannot create {}: {e}", p.display())))?),
        None => Box::new(out),
    };
    let mut w = csv::Writer::from_writer(sink);
    let result = run_with(config, |r| Ok(w.serialize(r)?));
    w.flush()?;
    result
}

fn demo(a: &DemoArgs, out: &mut dyn Write) -> Result<(), HarnessError> {
    let meter = Meter::new();
    let mut heap = SoftHeap::new(a.eps, &meter).map_err(|e| usage(e.to_string()))?;
    let mut r = generate::rng(a.seed);
    let items: Vec<Item> = generate::random_items(&mut r, a.n);
    let mut max_corrupt = 0;
    for &x in &items {
        heap.insert(x);
    }
    let mut corrupt_out = 0;
    let mut newly = Vec::new();
    let mut prev = None;
    let mut inversions = 0;
    while let Some(e) = heap.extract_min_into(&mut newly) {
        max_corrupt = max_corrupt.max(heap.corrupt_count() + e.corrupt as usize);
        corrupt_out += e.corrupt as usize;
        if prev.is_some_and(|p| e.item < p) {
            inversions += 1;
        }
        prev = Some(e.item);
    }
    let snapshot = meter.snapshot();
    let ops = 10_000;
    let check = contract::check(a.eps, ops, 0.6, a.seed ^ r.random::<u64>());
    let io = |e: io::Error| HarnessError::Io(e);
    writeln!(out, "soft heap, eps = {}, threshold rank {}", a.eps, heap.threshold()).map_err(io)?;
    writeln!(out, "inserted {} items, extracted {}", snapshot.inserts, snapshot.extract_mins).map_err(io)?;
    let per = |c: u64| c as f64 / a.n.max(1) as f64;
    writeln!(out, "comparisons: {} ({:.2} per item)", snapshot.comparisons, per(snapshot.comparisons)).map_err(io)?;
    writeln!(
        out,
        "corrupt at once: at most {max_corrupt}, allowed {:.0}; extracted corrupt: {corrupt_out}",
        a.eps * a.n as f64
    )
    .map_err(io)?;
    writeln!(out, "extraction order inversions: {inversions}").map_err(io)?;
    match check {
        Ok(rep) => {
            writeln!(
                out,
                "contract held over {ops} random operations (peak corrupt fraction {:.4})",
                rep.max_ratio
            )
            .map_err(io)?;
            Ok(())
        }
        Err(msg) => Err(HarnessError::Verification {
            trial: 0,
            seed: a.seed,
            detail: format!("soft heap contract violated: {msg}"),
            dump: PathBuf::from("-"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (u8, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("softselect").chain(args.iter().copied());
        let code = run_cli(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn every_subcommand_runs() {
        let cases: [&[&str]; 6] = [
            &["heap", "--n", "500", "--k", "50", "--verify"],
            &["dary", "--n", "500", "--d", "3", "--k-sweep", "8:64:2", "--verify"],
            &["tree", "--n", "500", "--d", "5", "--k", "40", "--verify", "--trials", "3"],
            &["matrix", "--m", "8", "--n", "32", "--row-law", "geometric", "--k", "60", "--algo", "mat_select3", "--verify"],
            &["xy", "--m", "20", "--n", "10", "--k", "70", "--float-keys", "--verify"],
            &["heap", "--n", "500", "--k", "50", "--algo", "naive"],
        ];
        let rows = [1, 4, 3, 1, 1, 1];
        for (args, rows) in cases.iter().zip(rows) {
            let (code, out, err) = call(args);
            assert_eq!(code, 0, "{args:?}: {err}");
            assert_eq!(out.lines().count(), rows + 1, "{args:?}");
        }
    }

    #[test]
    fn usage_errors_exit_1() {
        for args in [
            &["heap"][..],
            &["heap", "--k", "5", "--k-sweep", "1:4:2"],
            &["heap", "--k", "5", "--m", "3"],
            &["heap", "--k", "5", "--algo", "mat_select1"],
            &["heap", "--k", "5", "--algo", "bogus"],
            &["heap", "--k", "5", "--n", "4"],
            &["matrix", "--k", "5", "--d", "3"],
            &["matrix", "--k", "5", "--eps", "0.2"],
            &["matrix", "--k", "5", "--m", "2", "--matrix-file", "x.txt"],
            &["matrix", "--k", "5", "--matrix-file", "/nonexistent/softselect.txt"],
            &["xy", "--k", "5", "--row-law", "equal"],
            &["dary", "--k", "5", "--d", "1"],
            &["demo-softheap", "--eps", "2"],
            &["frobnicate"],
        ] {
            let (code, _, err) = call(args);
            assert_eq!(code, 1, "{args:?}");
            assert!(!err.is_empty());
        }
    }

    #[test]
    fn help_and_version_exit_0() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("demo-softheap"));
        assert_eq!(call(&["--version"]).0, 0);
        let (_, out, _) = call(&["matrix", "--help"]);
        assert!(out.contains("--row-law"));
        assert!(!out.contains("inject-fault"));
    }

    #[test]
    fn verification_failure_exits_2_with_a_dump() {
        let dir = std::env::temp_dir().join(format!("softselect-cli-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let out = dir.join("rows.csv");
        let (code, _, err) = call(&[
            "matrix", "--m", "4", "--n", "16", "--k", "10", "--verify", "--inject-fault", "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(code, 2);
        assert!(err.contains("instance written to"));
        let dump = std::fs::read_dir(&dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .find(|p| p.extension().is_some_and(|e| e == "txt"))
            .unwrap();
        // The dump replays through --matrix-file.
        let (code, out, _) = call(&["matrix", "--matrix-file", dump.to_str().unwrap(), "--k", "10", "--verify"]);
        assert_eq!(code, 0);
        assert!(out.lines().nth(1).unwrap().starts_with("matrix,mat_select4,4,16,,10,0.25,0,"));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn out_file_matches_stdout() {
        let path = std::env::temp_dir().join(format!("softselect-cli-out-{}.csv", std::process::id()));
        let args = ["xy", "--m", "16", "--n", "16", "--k-sweep", "4:64:4", "--seed", "3"];
        let (_, stdout, _) = call(&args);
        let mut with_out = args.to_vec();
        with_out.extend(["--out", path.to_str().unwrap()]);
        assert_eq!(call(&with_out).0, 0);
        let strip = |s: &str| -> Vec<String> {
            s.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect()
        };
        assert_eq!(strip(&std::fs::read_to_string(&path).unwrap()), strip(&stdout));
        std::fs::remove_file(path).unwrap();
    }

    #[test]
    fn demo_reports() {
        let (code, out, err) = call(&["demo-softheap", "--n", "2000", "--eps", "0.125"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("inserted 2000 items, extracted 2000"));
        assert!(out.contains("contract held"));
    }
}
