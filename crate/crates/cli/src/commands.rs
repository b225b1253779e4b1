use std::fmt::Write as _;
use std::path::Path;

use netcache_core::generate::GeneratorSpec;
use netcache_core::model::{classify, parameter_profile, Rational, DEFAULT_UNARY_BUDGET};
use netcache_core::reductions::{
    from_knapsack, from_max_k_vertex_cover, from_monotone_nae3sat, from_planar_3sat_e3, from_unary_bin_packing,
    interreduce, Case,
};
use netcache_core::solvers::{algorithm_bounds, decide, solve, Selector, SolverConfig};
use num_bigint::BigUint;

use crate::error::CliError;
use crate::format::{parse_instance, serialize_allocation, serialize_instance, InstanceFile};
use crate::source::{parse_bin_packing, parse_cnf, parse_graph, parse_knapsack};

/// What a subcommand prints and the status it exits with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    /// Diagnostics for stderr: solver, state count, timing.
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Output {
        Output { stdout, stderr: String::new(), code: 0 }
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Reads an instance file, or generates one from a `gen:` spec.
pub fn load(input: &str) -> Result<InstanceFile, CliError> {
    if input.starts_with("gen:") {
        let spec: GeneratorSpec = input.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
        return Ok(InstanceFile { instance: spec.generate(), threshold: None, allocation: None });
    }
    parse_instance(&read(Path::new(input))?, input)
}

/// The decision threshold for `solve`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ell {
    Value(Rational),
    /// The threshold stored in the instance file.
    FromFile,
}

impl std::str::FromStr for Ell {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "file" {
            return Ok(Ell::FromFile);
        }
        s.parse().map(Ell::Value).map_err(|e| format!("bad threshold `{s}`: {e}"))
    }
}

pub fn config(budget: u64) -> SolverConfig {
    SolverConfig { max_states: budget, ..SolverConfig::default() }
}

pub fn cmd_solve(
    file: &InstanceFile,
    selector: Selector,
    ell: Option<&Ell>,
    witness: bool,
    budget: u64,
) -> Result<Output, CliError> {
    let cfg = config(budget);
    let instance = &file.instance;
    let Some(ell) = ell else {
        let r = solve(instance, selector, &cfg)?;
        let mut stdout = format!("{}\n", r.optimum);
        if witness {
            stdout.push('\n');
            stdout.push_str(&serialize_allocation(&r.witness));
        }
        let stderr = format!(
            "algorithm={} states={} elapsed={:.3?}\n",
            r.stats.algorithm, r.stats.states_explored, r.stats.elapsed
        );
        return Ok(Output { stdout, stderr, code: 0 });
    };
    let threshold = match ell {
        Ell::Value(v) => v.clone(),
        Ell::FromFile => file
            .threshold
            .clone()
            .ok_or_else(|| CliError::Usage("`--ell file` needs a threshold in the instance file".into()))?,
    };
    let (yes, z) = decide(instance, &threshold, selector, &cfg)?;
    let mut stdout = String::from(if yes { "YES\n" } else { "NO\n" });
    if let (true, Some(z)) = (witness, z) {
        stdout.push('\n');
        stdout.push_str(&serialize_allocation(&z));
    }
    Ok(Output { stdout, stderr: String::new(), code: if yes { 0 } else { 1 } })
}

pub fn cmd_analyze(file: &InstanceFile, budget: u64) -> Output {
    let instance = &file.instance;
    let p = parameter_profile(instance);
    let bounds = algorithm_bounds(instance);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "C={} U={} S={} K={} Δ={} λ={}",
        p.caches, p.users, p.contents, p.max_capacity, p.max_degree, p.max_support
    );
    let _ = writeln!(out, "total_size={} homogeneous={} vc_upper={}", p.total_size, p.homogeneous, p.vc_upper);
    let _ = writeln!(out, "variant={}", classify(instance, &BigUint::from(DEFAULT_UNARY_BUDGET)));
    let _ = writeln!(out, "bound brute={}", bounds.brute);
    let _ = writeln!(out, "bound capdp={}", bounds.capdp);
    let _ = writeln!(out, "bound typedp={}", bounds.typedp);
    match bounds.homnc {
        Some(b) => writeln!(out, "bound homnc-u={b}"),
        None => writeln!(out, "bound homnc-u=n/a"),
    }
    .expect("writing to a String");
    match bounds.choose(budget) {
        Some((a, _)) => writeln!(out, "auto={a}"),
        None => writeln!(out, "auto=none (budget {budget})"),
    }
    .expect("writing to a String");
    Output::ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SourceKind {
    /// Monotone NAE-3SAT, each variable in at most 3 clauses (CNF file).
    Nae,
    /// Planar 3-SAT, each variable in exactly 3 clauses (CNF file).
    PlanarSat,
    /// Unary bin packing.
    BinPacking,
    Knapsack,
    /// Maximum k-vertex cover (graph file).
    Kvc,
}

pub fn cmd_reduce(kind: SourceKind, text: &str, origin: &str, split_users: bool) -> Result<Output, CliError> {
    if split_users && !matches!(kind, SourceKind::BinPacking | SourceKind::Knapsack) {
        return Err(CliError::Usage("--split-users applies to bin-packing and knapsack only".into()));
    }
    let (instance, threshold) = match kind {
        SourceKind::Nae => {
            let out = from_monotone_nae3sat(&parse_cnf(text, origin)?)?;
            (out.instance, out.threshold)
        }
        SourceKind::PlanarSat => {
            let out = from_planar_3sat_e3(&parse_cnf(text, origin)?)?;
            (out.instance, out.threshold)
        }
        SourceKind::BinPacking => {
            let out = from_unary_bin_packing(&parse_bin_packing(text, origin)?, split_users)?;
            (out.instance, out.threshold)
        }
        SourceKind::Knapsack => {
            let out = from_knapsack(&parse_knapsack(text, origin)?, split_users)?;
            (out.instance, out.threshold)
        }
        SourceKind::Kvc => {
            let out = from_max_k_vertex_cover(&parse_graph(text, origin)?)?;
            (out.instance, out.threshold)
        }
    };
    Ok(Output::ok(serialize_instance(&instance, Some(&threshold))))
}

/// Applies an interreduction case; a stored threshold carries over since
/// the optimum is unchanged.
pub fn cmd_transform(file: &InstanceFile, case: u8) -> Result<Output, CliError> {
    let out = interreduce(&file.instance, Case::try_from(case)?)?;
    Ok(Output::ok(serialize_instance(&out, file.threshold.as_ref())))
}
