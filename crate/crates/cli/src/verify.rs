//! Randomized cross-checking: every solver against brute force, every
//! reduction against its source-problem oracle.
//!
//! Trial `i` of a run with seed `s` uses seed `s + i` (wrapping), and the
//! trial kind is a function of that seed alone, so a failing trial reruns
//! on its own with `--seed <trial seed> --trials 1` and the same caps.

use std::fmt::Write as _;

use netcache_core::generate::{
    random_bin_packing, random_e3_formula, random_instance, random_knapsack, random_max_kvc, random_monotone_formula,
    rng, InstanceCaps,
};
use netcache_core::model::{cache_hit_rate, is_feasible, Allocation, Instance, Rational};
use netcache_core::reductions::*;
use netcache_core::solvers::{
    auto_solve, brute_force, decide, solve, Algorithm, Selector, SolveError, SolveResult, SolverConfig,
};
use num_bigint::BigInt;
use rand::Rng;

use crate::error::CliError;

/// Upper limits for the random caching instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyCaps {
    pub caches: usize,
    pub users: usize,
    pub contents: usize,
    pub size: u64,
    pub capacity: u64,
}

impl Default for VerifyCaps {
    fn default() -> Self {
        VerifyCaps { caches: 3, users: 4, contents: 5, size: 3, capacity: 4 }
    }
}

impl VerifyCaps {
    /// Every solver is checked against brute force, so `C·S` must stay
    /// within its guard.
    pub fn check(&self) -> Result<(), CliError> {
        let limit = SolverConfig::default().brute_force_limit;
        if [self.caches, self.users, self.contents].contains(&0) || self.size == 0 || self.capacity == 0 {
            return Err(CliError::Usage("verify caps must be positive".into()));
        }
        if self.caches.saturating_mul(self.contents) > limit {
            return Err(CliError::Usage(format!(
                "--max-c × --max-s = {} exceeds the brute-force limit {limit}",
                self.caches * self.contents
            )));
        }
        Ok(())
    }

    fn flags(&self) -> String {
        format!(
            "--max-c {} --max-u {} --max-s {} --max-size {} --max-cap {}",
            self.caches, self.users, self.contents, self.size, self.capacity
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trial {
    pub index: u64,
    pub seed: u64,
    pub generator: &'static str,
    pub summary: String,
    /// `(solver or check, answer)` in run order.
    pub answers: Vec<(String, String)>,
    pub oracle: String,
    /// Why the trial failed, if it did.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub seed: u64,
    pub caps: VerifyCaps,
    pub trials: Vec<Trial>,
}

impl VerifyReport {
    pub fn failed(&self) -> usize {
        self.trials.iter().filter(|t| t.failure.is_some()).count()
    }

    pub fn passed(&self) -> usize {
        self.trials.len() - self.failed()
    }

    /// Deterministic text: no timings.
    pub fn render(&self) -> String {
        let c = &self.caps;
        let mut out = format!(
            "verify seed={} trials={} caps C<={} U<={} S<={} size<={} cap<={}\n",
            self.seed,
            self.trials.len(),
            c.caches,
            c.users,
            c.contents,
            c.size,
            c.capacity
        );
        for t in &self.trials {
            let answers: Vec<String> = t.answers.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = write!(
                out,
                "trial {} seed={} {} {}: {} oracle={} ",
                t.index,
                t.seed,
                t.generator,
                t.summary,
                answers.join(" "),
                t.oracle
            );
            match &t.failure {
                None => out.push_str("PASS\n"),
                Some(why) => {
                    let _ = writeln!(
                        out,
                        "FAIL ({why}; reproduce: netcache verify --seed {} --trials 1 {})",
                        t.seed,
                        c.flags()
                    );
                }
            }
        }
        let _ = writeln!(out, "{} trials: {} passed, {} failed", self.trials.len(), self.passed(), self.failed());
        out
    }
}

pub fn run_verify(seed: u64, trials: u64, caps: VerifyCaps) -> Result<VerifyReport, CliError> {
    caps.check()?;
    let trials = (0..trials).map(|i| run_trial(i, seed.wrapping_add(i), &caps)).collect();
    Ok(VerifyReport { seed, caps, trials })
}

fn unbounded() -> SolverConfig {
    SolverConfig { max_states: u64::MAX, ..SolverConfig::default() }
}

/// Collects answers and the first failure of one trial.
struct Check {
    answers: Vec<(String, String)>,
    failure: Option<String>,
}

impl Check {
    fn new() -> Check {
        Check { answers: Vec::new(), failure: None }
    }

    fn answer(&mut self, name: &str, value: impl ToString) {
        self.answers.push((name.to_string(), value.to_string()));
    }

    fn require(&mut self, ok: bool, why: impl FnOnce() -> String) {
        if !ok && self.failure.is_none() {
            self.failure = Some(why());
        }
    }

    fn error(&mut self, name: &str, e: impl std::fmt::Display) {
        self.answer(name, "error");
        self.require(false, || format!("{name}: {e}"));
    }

    fn witness(&mut self, name: &str, instance: &Instance, z: &Allocation, at_least: &Rational, exact: bool) {
        let ok = match (is_feasible(instance, z), cache_hit_rate(instance, z)) {
            (Ok(true), Ok(v)) => {
                if exact {
                    &v == at_least
                } else {
                    &v >= at_least
                }
            }
            _ => false,
        };
        self.require(ok, || format!("{name}: witness does not reach {at_least}"));
    }

    fn finish(self, index: u64, seed: u64, generator: &'static str, summary: String, oracle: String) -> Trial {
        Trial { index, seed, generator, summary, answers: self.answers, oracle, failure: self.failure }
    }
}

fn run_trial(index: u64, seed: u64, caps: &VerifyCaps) -> Trial {
    let mut r = rng(seed);
    match seed % 8 {
        0..=2 => solver_trial(index, seed, caps, &mut r),
        3 => {
            let vars = r.random_range(3..=5);
            let clauses = r.random_range(2..=5);
            let phi = random_monotone_formula(&mut r, vars, clauses);
            formula_trial(index, seed, "nae", &phi, nae_oracle(&phi), from_monotone_nae3sat(&phi), |a| {
                phi.nae_satisfied_by(a)
            })
        }
        4 => {
            let vars = r.random_range(2..=4);
            let phi = random_e3_formula(&mut r, vars);
            formula_trial(index, seed, "planar-sat", &phi, sat_oracle(&phi), from_planar_3sat_e3(&phi), |a| {
                phi.satisfied_by(a)
            })
        }
        5 => bin_packing_trial(index, seed, &mut r),
        6 => knapsack_trial(index, seed, &mut r),
        _ => kvc_trial(index, seed, &mut r),
    }
}

fn solver_trial(index: u64, seed: u64, caps: &VerifyCaps, r: &mut impl Rng) -> Trial {
    let unit_sizes = seed / 8 % 2 == 1;
    let inst = random_instance(
        r,
        &InstanceCaps {
            caches: caps.caches,
            users: caps.users,
            contents: caps.contents,
            size: caps.size,
            capacity: caps.capacity,
            unit_sizes,
        },
    );
    let summary = format!("C={} U={} S={}", inst.num_caches(), inst.num_users(), inst.num_contents());
    let generator = if unit_sizes { "unit-instance" } else { "instance" };
    let mut check = Check::new();
    let brute = match brute_force(&inst, &SolverConfig::default()) {
        Ok(b) => b,
        Err(e) => {
            check.error("brute", e);
            return check.finish(index, seed, generator, summary, "-".into());
        }
    };
    let oracle = brute.optimum.clone();
    check.witness("brute", &inst, &brute.witness, &oracle, true);
    let runs: Vec<(&str, Result<SolveResult, SolveError>)> = vec![
        ("capdp", solve(&inst, Selector::Use(Algorithm::CapacityDp), &SolverConfig::default())),
        ("typedp", solve(&inst, Selector::Use(Algorithm::TypeDp), &SolverConfig::default())),
        ("homnc-u", solve(&inst, Selector::Use(Algorithm::HomncByUsers), &SolverConfig::default())),
        ("auto", auto_solve(&inst, SolverConfig::default().max_states)),
    ];
    for (name, result) in runs {
        match result {
            Ok(res) => {
                check.answer(name, &res.optimum);
                check.require(res.optimum == oracle, || format!("{name} optimum {} != {oracle}", res.optimum));
                check.witness(name, &inst, &res.witness, &oracle, true);
            }
            Err(SolveError::TooLarge { .. } | SolveError::NotHomogeneous) => check.answer(name, "skip"),
            Err(e) => check.error(name, e),
        }
    }
    match decide(&inst, &oracle, Selector::Auto, &SolverConfig::default()) {
        Ok((yes, z)) => {
            check.answer("decide@opt", if yes { "yes" } else { "no" });
            check.require(yes, || "decide at the optimum said no".into());
            if let Some(z) = z {
                check.witness("decide@opt", &inst, &z, &oracle, false);
            }
        }
        Err(e) => check.error("decide@opt", e),
    }
    check.finish(index, seed, generator, summary, oracle.to_string())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Decides the reduced instance at its threshold and compares with the
/// oracle; a yes witness must map back to a source certificate.
fn decision_trial<B: BackMap>(
    check: &mut Check,
    out: &ReductionOutput<B>,
    oracle: bool,
    certificate: impl FnOnce(&B::Witness) -> bool,
) {
    match decide(&out.instance, &out.threshold, Selector::Auto, &unbounded()) {
        Ok((yes, z)) => {
            check.answer("decide", yes_no(yes));
            check.require(yes == oracle, || format!("decide {} but oracle {}", yes_no(yes), yes_no(oracle)));
            if let Some(z) = z {
                check.witness("decide", &out.instance, &z, &out.threshold, false);
                let ok = certificate(&out.translate(&z));
                check.require(ok, || "back-mapped certificate rejected".into());
            }
        }
        Err(e) => check.error("decide", e),
    }
}

fn formula_trial<B: BackMap<Witness = Vec<bool>>>(
    index: u64,
    seed: u64,
    generator: &'static str,
    phi: &CnfFormula,
    oracle: Result<bool, ReductionError>,
    out: Result<ReductionOutput<B>, ReductionError>,
    certificate: impl FnOnce(&[bool]) -> bool,
) -> Trial {
    let summary = format!("vars={} clauses={}", phi.num_vars(), phi.clauses().len());
    let mut check = Check::new();
    match (oracle, out) {
        (Ok(oracle), Ok(out)) => {
            decision_trial(&mut check, &out, oracle, |a| certificate(a));
            check.finish(index, seed, generator, summary, yes_no(oracle).into())
        }
        (Err(e), _) | (_, Err(e)) => {
            check.error("reduce", e);
            check.finish(index, seed, generator, summary, "-".into())
        }
    }
}

fn bin_packing_trial(index: u64, seed: u64, r: &mut impl Rng) -> Trial {
    let inst = random_bin_packing(r, 6, 8);
    let split = r.random_bool(0.5);
    let summary = format!("items={} bins={} B={} split={split}", inst.sizes.len(), inst.bins, inst.capacity);
    let mut check = Check::new();
    match (binpack_oracle(&inst), from_unary_bin_packing(&inst, split)) {
        (Ok(oracle), Ok(out)) => {
            decision_trial(&mut check, &out, oracle, |bins| inst.is_packing(bins));
            check.finish(index, seed, "bin-packing", summary, yes_no(oracle).into())
        }
        (Err(e), _) | (_, Err(e)) => {
            check.error("reduce", e);
            check.finish(index, seed, "bin-packing", summary, "-".into())
        }
    }
}

fn knapsack_trial(index: u64, seed: u64, r: &mut impl Rng) -> Trial {
    let wide = r.random_bool(0.2);
    let inst = random_knapsack(r, 8, 20, 50, wide);
    let split = r.random_bool(0.5);
    let summary = format!("items={} wide={wide} split={split}", inst.items.len());
    let mut check = Check::new();
    let (best, out) = match (knapsack_oracle(&inst), from_knapsack(&inst, split)) {
        (Ok(best), Ok(out)) => (best, out),
        (Err(e), _) | (_, Err(e)) => {
            check.error("reduce", e);
            return check.finish(index, seed, "knapsack", summary, "-".into());
        }
    };
    match auto_solve(&out.instance, SolverConfig::default().max_states) {
        Ok(res) => {
            let scaled = res.optimum.clone() * Rational::from_integer(BigInt::from(inst.total_value()));
            check.answer("optimum*value", &scaled);
            check.require(scaled == Rational::from(best.clone()), || format!("optimum·Σv {scaled} != {best}"));
            check.witness("auto", &out.instance, &res.witness, &res.optimum, true);
        }
        Err(e) => check.error("auto", e),
    }
    let reaches = best >= inst.target;
    decision_trial(&mut check, &out, reaches, |chosen| inst.value_of(chosen).is_some_and(|v| v >= inst.target));
    check.finish(index, seed, "knapsack", summary, best.to_string())
}

fn kvc_trial(index: u64, seed: u64, r: &mut impl Rng) -> Trial {
    let n = r.random_range(1..=5);
    let inst = random_max_kvc(r, n, 3);
    let summary = format!("n={} m={} k={} t={}", n, inst.edges().len(), inst.k, inst.t);
    let mut check = Check::new();
    let (best, out) = match (max_kvc_oracle(&inst), from_max_k_vertex_cover(&inst)) {
        (Ok(best), Ok(out)) => (best, out),
        (Err(e), _) | (_, Err(e)) => {
            check.error("reduce", e);
            return check.finish(index, seed, "kvc", summary, "-".into());
        }
    };
    match auto_solve(&out.instance, u64::MAX) {
        Ok(res) => {
            let expected = Rational::new((out.instance.num_users() + best) as u64, 2);
            check.answer("optimum", &res.optimum);
            check.require(res.optimum == expected, || format!("optimum {} != {expected}", res.optimum));
            let covered = inst.covered_edges(&out.translate(&res.witness));
            check.require(covered == Some(best), || format!("central cache covers {covered:?} edges, not {best}"));
        }
        Err(e) => check.error("auto", e),
    }
    decision_trial(&mut check, &out, best >= inst.t, |chosen| inst.covered_edges(chosen).is_some_and(|c| c >= inst.t));
    check.finish(index, seed, "kvc", summary, best.to_string())
}
