//! Runs every applicable solver on one instance and emits CSV with the
//! fixed header `algorithm,states_explored,elapsed_ms,optimum`.
//!
//! A solver is applicable when its size guard accepts the instance. The run
//! fails unless all optima agree.

use std::time::Duration;

use netcache_core::solvers::{solve, Algorithm, Selector, SolveError, SolveResult, SolverConfig};
use netcache_core::{Instance, Rational};

use crate::commands::Output;
use crate::error::CliError;

pub const CSV_HEADER: [&str; 4] = ["algorithm", "states_explored", "elapsed_ms", "optimum"];

pub trait BenchSolver {
    fn name(&self) -> String;
    fn run(&self, instance: &Instance) -> Result<SolveResult, SolveError>;
}

pub struct CoreSolver {
    pub algorithm: Algorithm,
    pub config: SolverConfig,
}

impl BenchSolver for CoreSolver {
    fn name(&self) -> String {
        self.algorithm.name().to_string()
    }

    fn run(&self, instance: &Instance) -> Result<SolveResult, SolveError> {
        solve(instance, Selector::Use(self.algorithm), &self.config)
    }
}

/// All four solvers with the given DP state budget.
pub fn core_solvers(config: SolverConfig) -> Vec<Box<dyn BenchSolver>> {
    Algorithm::ALL
        .into_iter()
        .map(|algorithm| Box::new(CoreSolver { algorithm, config }) as Box<dyn BenchSolver>)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub algorithm: String,
    pub states_explored: u64,
    /// Fastest of the repetitions.
    pub elapsed: Duration,
    pub optimum: Rational,
}

pub fn run_bench(
    instance: &Instance,
    solvers: &[Box<dyn BenchSolver>],
    repetitions: usize,
) -> Result<Vec<BenchRow>, CliError> {
    let mut rows: Vec<BenchRow> = Vec::new();
    for solver in solvers {
        let mut row: Option<BenchRow> = None;
        for _ in 0..repetitions.max(1) {
            let r = match solver.run(instance) {
                Ok(r) => r,
                Err(SolveError::TooLarge { .. } | SolveError::NotHomogeneous) => break,
                Err(e) => return Err(e.into()),
            };
            match &mut row {
                Some(prev) => prev.elapsed = prev.elapsed.min(r.stats.elapsed),
                None => {
                    row = Some(BenchRow {
                        algorithm: solver.name(),
                        states_explored: r.stats.states_explored,
                        elapsed: r.stats.elapsed,
                        optimum: r.optimum,
                    })
                }
            }
        }
        rows.extend(row);
    }
    if let Some(first) = rows.first() {
        if let Some(other) = rows.iter().find(|r| r.optimum != first.optimum) {
            return Err(CliError::Disagreement(format!(
                "{} found {} but {} found {}",
                first.algorithm, first.optimum, other.algorithm, other.optimum
            )));
        }
    }
    Ok(rows)
}

pub fn write_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.algorithm.clone(),
            r.states_explored.to_string(),
            format!("{:.3}", r.elapsed.as_secs_f64() * 1e3),
            r.optimum.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 fields")
}

pub fn cmd_bench(instance: &Instance, repetitions: usize, config: SolverConfig) -> Result<Output, CliError> {
    let rows = run_bench(instance, &core_solvers(config), repetitions)?;
    if rows.is_empty() {
        return Err(SolveError::NoFeasibleAlgorithm { budget: config.max_states }.into());
    }
    Ok(Output { stdout: write_csv(&rows), stderr: String::new(), code: 0 })
}
