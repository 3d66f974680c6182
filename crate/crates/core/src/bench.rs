//! Timing the engine on covered instances of growing size.

use std::fmt::Write as _;
use std::time::Instant;

use crate::engine::{solve_with, SolveError, SolveOptions};
use crate::gen::{generate, GenMode};

/// Coordinate bound for benchmark instances.
pub const BENCH_BOUND: i64 = 1 << 30;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    /// Median wall time of the solve, verification excluded.
    pub seconds: f64,
    pub case_path: String,
    pub attempts: u32,
}

/// Median of `runs` timed solves of one covered instance per size. The
/// instance for size `n` is generated from `seed ^ n`. Each size gets one
/// untimed solve, then every round times all sizes in turn.
pub fn run_bench(sizes: &[usize], seed: u64, runs: usize) -> Result<Vec<BenchRecord>, SolveError> {
    let opts = SolveOptions { verify: false, ..SolveOptions::from_env() };
    let mut cases = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let inst = generate(n, GenMode::Covered, seed ^ n as u64, BENCH_BOUND);
        let report = solve_with(&inst, &opts)?;
        cases.push((inst, report, Vec::with_capacity(runs.max(1))));
    }
    for _ in 0..runs.max(1) {
        for (inst, _, times) in &mut cases {
            let start = Instant::now();
            solve_with(inst, &opts)?;
            times.push(start.elapsed().as_secs_f64());
        }
    }
    let out = sizes
        .iter()
        .zip(cases)
        .map(|(&n, (_, report, mut times))| {
            times.sort_by(f64::total_cmp);
            BenchRecord { n, seconds: times[times.len() / 2], case_path: report.path, attempts: report.attempts }
        })
        .collect();
    Ok(out)
}

pub fn bench_csv(records: &[BenchRecord]) -> String {
    let mut s = String::from("n,seconds,case_path\n");
    for r in records {
        let _ = writeln!(s, "{},{:.6},{}", r.n, r.seconds, r.case_path);
    }
    s
}
