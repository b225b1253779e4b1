//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All comparisons are exact rational equalities.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use netcache_core::generate::{
    random_bin_packing, random_e3_formula, random_instance, random_knapsack, random_max_kvc, rng, GeneratorSpec,
    InstanceCaps,
};
use netcache_core::model::{cache_hit_rate, is_feasible, parameter_profile, ratio};
use netcache_core::reductions::*;
use netcache_core::solvers::*;
use netcache_core::{Allocation, Instance, Rational};
use num_bigint::{BigInt, BigUint};
use rand::Rng;

/// Witness and certificate checks collected across criteria 1–10.
#[derive(Default)]
struct Integrity {
    witnesses: usize,
    certificates: usize,
    problems: Vec<String>,
}

impl Integrity {
    fn witness(&mut self, label: &str, instance: &Instance, r: &SolveResult) {
        self.witnesses += 1;
        match (is_feasible(instance, &r.witness), cache_hit_rate(instance, &r.witness)) {
            (Ok(true), Ok(ch)) if ch == r.optimum => {}
            (feasible, ch) => self
                .problems
                .push(format!("{label}: witness feasible={feasible:?} value={ch:?} reported {}", r.optimum)),
        }
    }

    /// A yes-side decision witness must reach the threshold.
    fn decision(&mut self, label: &str, instance: &Instance, threshold: &Rational, z: &Allocation) {
        self.witnesses += 1;
        match (is_feasible(instance, z), cache_hit_rate(instance, z)) {
            (Ok(true), Ok(ch)) if &ch >= threshold => {}
            (feasible, ch) => {
                self.problems.push(format!("{label}: decision witness feasible={feasible:?} value={ch:?}"))
            }
        }
    }

    fn certificate(&mut self, label: &str, ok: bool) {
        self.certificates += 1;
        if !ok {
            self.problems.push(format!("{label}: back-mapped certificate rejected"));
        }
    }
}

type Outcome = Result<String, String>;
type Criterion = fn(&mut Integrity) -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:.2?}, limit {limit:?}"))
}

fn default_cfg() -> SolverConfig {
    SolverConfig::default()
}

fn unbounded() -> SolverConfig {
    SolverConfig { brute_force_limit: 64, max_states: u64::MAX }
}

fn solve_err(e: SolveError) -> String {
    e.to_string()
}

fn red_err(e: ReductionError) -> String {
    e.to_string()
}

fn c1_capacity_dp(acc: &mut Integrity) -> Outcome {
    let start = Instant::now();
    let caps = InstanceCaps { caches: 3, users: 4, contents: 5, size: 3, capacity: 4, unit_sizes: false };
    let n = 500;
    for seed in 0..n {
        let inst = random_instance(&mut rng(1_000 + seed), &caps);
        let brute = brute_force(&inst, &default_cfg()).map_err(solve_err)?;
        let dp = capacity_vector_dp(&inst, &default_cfg()).map_err(solve_err)?;
        acc.witness("c1/brute", &inst, &brute);
        acc.witness("c1/capdp", &inst, &dp);
        ensure(dp.optimum == brute.optimum, || {
            format!("seed {seed}: capdp {} != brute {}", dp.optimum, brute.optimum)
        })?;
    }
    within(start.elapsed(), Duration::from_secs(60), "500 instances")?;
    Ok(format!("{n} instances, exact agreement"))
}

fn c2_type_dp(acc: &mut Integrity) -> Outcome {
    let start = Instant::now();
    let caps = InstanceCaps { caches: 6, users: 3, contents: 4, size: 2, capacity: 2, unit_sizes: false };
    let n = 200;
    for seed in 0..n {
        let inst = random_instance(&mut rng(2_000 + seed), &caps);
        let brute = brute_force(&inst, &default_cfg()).map_err(solve_err)?;
        let dp = cache_type_dp(&inst, &default_cfg()).map_err(solve_err)?;
        acc.witness("c2/typedp", &inst, &dp);
        ensure(dp.optimum == brute.optimum, || {
            format!("seed {seed}: typedp {} != brute {}", dp.optimum, brute.optimum)
        })?;
    }
    within(start.elapsed(), Duration::from_secs(60), "200 instances")?;
    Ok(format!("{n} instances, exact agreement"))
}

fn c3_preprocessing(acc: &mut Integrity) -> Outcome {
    // Few users make repeated neighborhoods common.
    let caps = InstanceCaps { caches: 5, users: 2, contents: 4, size: 3, capacity: 4, unit_sizes: false };
    let n = 300;
    let mut shrunk = (0, 0);
    for seed in 0..n {
        let inst = random_instance(&mut rng(3_000 + seed), &caps);
        let before = brute_force(&inst, &default_cfg()).map_err(solve_err)?;
        let d = dedup_same_neighborhood_caches(&inst);
        let after = brute_force(&d.instance, &default_cfg()).map_err(solve_err)?;
        ensure(after.optimum == before.optimum, || {
            format!("dedup seed {seed}: {} != {}", after.optimum, before.optimum)
        })?;
        ensure(dedup_same_neighborhood_caches(&d.instance).instance == d.instance, || {
            format!("dedup seed {seed}: not idempotent")
        })?;
        let lifted = SolveResult { witness: d.lift(&after.witness), ..after.clone() };
        acc.witness("c3/dedup lift", &inst, &lifted);
        shrunk.0 += usize::from(d.instance.num_caches() < inst.num_caches());

        let unit = random_instance(&mut rng(3_500 + seed), &InstanceCaps { unit_sizes: true, ..caps });
        let before = brute_force(&unit, &default_cfg()).map_err(solve_err)?;
        let a = amalgamate_caches_homnc(&unit).map_err(solve_err)?;
        let after = brute_force(&a.instance, &default_cfg()).map_err(solve_err)?;
        ensure(after.optimum == before.optimum, || {
            format!("amalgamate seed {seed}: {} != {}", after.optimum, before.optimum)
        })?;
        let again = amalgamate_caches_homnc(&a.instance).map_err(solve_err)?;
        ensure(again.instance == a.instance, || format!("amalgamate seed {seed}: not idempotent"))?;
        let lifted = SolveResult { witness: a.lift(&after.witness), ..after };
        acc.witness("c3/amalgamate lift", &unit, &lifted);
        shrunk.1 += usize::from(a.instance.num_caches() < unit.num_caches());
    }
    Ok(format!("{n} instances each; dedup shrank {}, amalgamation shrank {}", shrunk.0, shrunk.1))
}

/// Every monotone formula over `vars` variables with at most `max_clauses`
/// clauses of 2 or 3 variables, each variable in at most 3 clauses. Clause
/// lists are enumerated as non-decreasing sequences, so each multiset
/// appears once.
fn monotone_formulas(vars: usize, max_clauses: usize) -> Vec<CnfFormula> {
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..1 << vars {
        if (2..=3).contains(&mask.count_ones()) {
            candidates.push((0..vars).filter(|&v| mask >> v & 1 == 1).collect());
        }
    }
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        candidates: &[Vec<usize>],
        vars: usize,
        max: usize,
        from: usize,
        stack: &mut Vec<usize>,
        occ: &mut Vec<usize>,
        out: &mut Vec<CnfFormula>,
    ) {
        let clauses = stack.iter().map(|&i| candidates[i].iter().map(|&v| Literal::pos(v)).collect()).collect();
        out.push(CnfFormula::new(vars, clauses).expect("indices in range"));
        if stack.len() == max {
            return;
        }
        for i in from..candidates.len() {
            if candidates[i].iter().all(|&v| occ[v] < 3) {
                candidates[i].iter().for_each(|&v| occ[v] += 1);
                stack.push(i);
                rec(candidates, vars, max, i, stack, occ, out);
                stack.pop();
                candidates[i].iter().for_each(|&v| occ[v] -= 1);
            }
        }
    }
    rec(&candidates, vars, max_clauses, 0, &mut stack, &mut vec![0; vars], &mut out);
    out
}

fn c4_nae(acc: &mut Integrity) -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    let mut yes = 0;
    for vars in 1..=4 {
        for phi in monotone_formulas(vars, 4) {
            let out = from_monotone_nae3sat(&phi).map_err(red_err)?;
            let oracle = nae_oracle(&phi).map_err(red_err)?;
            let (answer, z) =
                decide(&out.instance, &out.threshold, Selector::Auto, &default_cfg()).map_err(solve_err)?;
            ensure(answer == oracle, || format!("{:?}: oracle {oracle}, decide {answer}", phi.clauses()))?;
            if let Some(z) = z {
                acc.decision("c4", &out.instance, &out.threshold, &z);
                acc.certificate("c4", phi.nae_satisfied_by(&out.translate(&z)));
                yes += 1;
            }
            count += 1;
        }
    }
    let triangle = CnfFormula::from_dimacs(3, &[&[1, 2], &[2, 3], &[1, 3]]).map_err(red_err)?;
    let out = from_monotone_nae3sat(&triangle).map_err(red_err)?;
    let r = brute_force(&out.instance, &default_cfg()).map_err(solve_err)?;
    acc.witness("c4/triangle", &out.instance, &r);
    ensure(out.threshold == ratio(3, 1), || format!("triangle threshold {}", out.threshold))?;
    ensure(r.optimum == ratio(5, 2), || format!("triangle optimum {}", r.optimum))?;
    within(start.elapsed(), Duration::from_secs(30), "enumeration")?;
    Ok(format!("{count} formulas ({yes} NAE-satisfiable), triangle optimum 5/2 against l=3"))
}

fn c5_knapsack(acc: &mut Integrity) -> Outcome {
    let n = 200;
    let mut wide_count = 0;
    for seed in 0..n {
        let mut r = rng(5_000 + seed);
        let wide = seed % 5 == 0;
        let split = seed % 2 == 1;
        let inst = random_knapsack(&mut r, 10, 20, 50, wide);
        let out = from_knapsack(&inst, split).map_err(red_err)?;
        let oracle = knapsack_oracle(&inst).map_err(red_err)?;
        let total = Rational::from_integer(BigInt::from(inst.total_value()));
        let auto = auto_solve(&out.instance, DEFAULT_MAX_STATES).map_err(solve_err)?;
        acc.witness("c5/auto", &out.instance, &auto);
        ensure(auto.optimum.clone() * total.clone() == Rational::from(oracle.clone()), || {
            format!("seed {seed}: optimum·Σv = {} but oracle {oracle}", auto.optimum.clone() * total.clone())
        })?;
        if wide {
            // One cache: reachable capacity vectors stay sparse even though
            // W + 1 is about 2^43.
            let dp = capacity_vector_dp(&out.instance, &unbounded()).map_err(solve_err)?;
            acc.witness("c5/capdp-wide", &out.instance, &dp);
            ensure(dp.optimum == auto.optimum, || {
                format!("seed {seed}: wide capdp {} != {}", dp.optimum, auto.optimum)
            })?;
            ensure(dp.stats.states_explored <= 1 << inst.items.len(), || {
                format!("seed {seed}: {} states", dp.stats.states_explored)
            })?;
            wide_count += 1;
        }
        let (yes, z) = decide(&out.instance, &out.threshold, Selector::Auto, &default_cfg()).map_err(solve_err)?;
        ensure(yes == (oracle >= inst.target), || {
            format!("seed {seed}: decide {yes}, oracle {oracle} vs t {}", inst.target)
        })?;
        if let Some(z) = z {
            acc.decision("c5", &out.instance, &out.threshold, &z);
            let chosen: Vec<usize> = out.translate(&z).into_iter().collect::<BTreeSet<_>>().into_iter().collect();
            acc.certificate("c5", inst.value_of(&chosen).is_some_and(|v| v >= inst.target));
        }
    }
    let fixture = KnapsackInstance::from_u64(10, &[(6, 30), (3, 14), (4, 16), (2, 9)], 46).map_err(red_err)?;
    let out = from_knapsack(&fixture, false).map_err(red_err)?;
    let r = auto_solve(&out.instance, DEFAULT_MAX_STATES).map_err(solve_err)?;
    acc.witness("c5/fixture", &out.instance, &r);
    ensure(r.optimum == ratio(46, 69), || format!("fixture optimum {}", r.optimum))?;
    Ok(format!("{n} instances ({wide_count} with 40-bit weights), fixture 46/69"))
}

fn c6_bin_packing(acc: &mut Integrity) -> Outcome {
    let n = 200;
    let mut yes_count = 0;
    for seed in 0..n {
        let inst = random_bin_packing(&mut rng(6_000 + seed), 8, 10);
        for split in [false, true] {
            let out = from_unary_bin_packing(&inst, split).map_err(red_err)?;
            let oracle = binpack_oracle(&inst).map_err(red_err)?;
            let (yes, z) = decide(&out.instance, &out.threshold, Selector::Auto, &unbounded()).map_err(solve_err)?;
            ensure(yes == oracle, || format!("seed {seed} split={split}: decide {yes}, oracle {oracle}"))?;
            if let Some(z) = z {
                acc.decision("c6", &out.instance, &out.threshold, &z);
                acc.certificate("c6", inst.is_packing(&out.translate(&z)));
                yes_count += 1;
            }
        }
    }
    let yes_fixture = BinPackingInstance::new(vec![4, 3, 3, 2, 2, 2], 2, 8).map_err(red_err)?;
    let out = from_unary_bin_packing(&yes_fixture, false).map_err(red_err)?;
    let r = auto_solve(&out.instance, u64::MAX).map_err(solve_err)?;
    acc.witness("c6/yes", &out.instance, &r);
    ensure(r.optimum == Rational::one(), || format!("yes fixture optimum {}", r.optimum))?;
    acc.certificate("c6/yes", yes_fixture.is_packing(&out.translate(&r.witness)));

    let no_fixture = BinPackingInstance::new(vec![5, 4, 3, 3], 2, 7).map_err(red_err)?;
    let out = from_unary_bin_packing(&no_fixture, false).map_err(red_err)?;
    let r = auto_solve(&out.instance, u64::MAX).map_err(solve_err)?;
    acc.witness("c6/no", &out.instance, &r);
    ensure(r.optimum == ratio(3, 4), || format!("no fixture optimum {}", r.optimum))?;
    ensure(!binpack_oracle(&no_fixture).map_err(red_err)?, || "no fixture packs".into())?;
    Ok(format!("{n} instances x 2 settings ({yes_count} yes), fixtures 1 and 3/4"))
}

/// Checks the once-subdivided star: a central cache adjacent to every user,
/// each user with exactly one private cache of its own.
fn is_subdivided_star(instance: &Instance) -> bool {
    let Some(centre) = instance.cache_index(CENTRAL_CACHE) else { return false };
    let users = instance.num_users();
    instance.cache_neighbors(centre).len() == users
        && (0..instance.num_caches()).filter(|&c| c != centre).all(|c| instance.cache_neighbors(c).len() == 1)
        && (0..users).all(|u| instance.user_neighbors(u).len() == 2)
        && instance.num_caches() == users + 1
}

fn c7_max_kvc(acc: &mut Integrity) -> Outcome {
    let graphs = 100;
    let mut runs = 0;
    for seed in 0..graphs {
        let mut r = rng(7_000 + seed);
        let n = r.random_range(1..=6);
        let base = random_max_kvc(&mut r, n, 1);
        for k in 1..=3.min(n) {
            let inst = MaxKVcInstance::new(n, base.edges(), k, base.t).map_err(red_err)?;
            let out = from_max_k_vertex_cover(&inst).map_err(red_err)?;
            let p = parameter_profile(&out.instance);
            ensure(is_subdivided_star(&out.instance), || format!("seed {seed} k={k}: not a subdivided star"))?;
            ensure(p.max_capacity == BigUint::from(k), || format!("seed {seed} k={k}: K = {}", p.max_capacity))?;
            ensure(p.max_support == if inst.edges().is_empty() { 0 } else { 2 }, || {
                format!("seed {seed} k={k}: lambda = {}", p.max_support)
            })?;
            let oracle = max_kvc_oracle(&inst).map_err(red_err)?;
            let expected = Rational::new((out.instance.num_users() + oracle) as u64, 2);
            let res = auto_solve(&out.instance, u64::MAX).map_err(solve_err)?;
            acc.witness("c7", &out.instance, &res);
            ensure(res.optimum == expected, || format!("seed {seed} k={k}: optimum {} != {expected}", res.optimum))?;
            acc.certificate("c7", inst.covered_edges(&out.translate(&res.witness)) == Some(oracle));
            runs += 1;
        }
    }
    let k3 = MaxKVcInstance::new(3, &[(0, 1), (1, 2), (0, 2)], 1, 2).map_err(red_err)?;
    let out = from_max_k_vertex_cover(&k3).map_err(red_err)?;
    let r = auto_solve(&out.instance, u64::MAX).map_err(solve_err)?;
    ensure(r.optimum == ratio(5, 2), || format!("K3 optimum {}", r.optimum))?;
    Ok(format!("{graphs} graphs, {runs} (graph, k) pairs, K3 k=1 gives 5/2"))
}

/// Renames variables by `perm` and flips the polarity of variables in
/// `flip`; satisfiability is unchanged.
fn scramble(phi: &CnfFormula, perm: &[usize], flip: u32) -> CnfFormula {
    let clauses = phi
        .clauses()
        .iter()
        .map(|c| {
            c.iter().map(|l| Literal { var: perm[l.var], positive: l.positive ^ (flip >> l.var & 1 == 1) }).collect()
        })
        .collect();
    CnfFormula::new(phi.num_vars(), clauses).expect("same variable count")
}

fn c8_planar_sat(acc: &mut Integrity) -> Outcome {
    // x2 is forced true, x4 forced false, and (¬x2 ∨ x4) breaks.
    let core =
        CnfFormula::from_dimacs(4, &[&[1, 2], &[-1, 2], &[-2, 4], &[3, -4], &[-3, -4], &[1, 3]]).map_err(red_err)?;
    let mut formulas = Vec::new();
    for seed in 0..100u64 {
        let mut r = rng(8_000 + seed);
        if seed % 10 == 0 {
            let mut perm: Vec<usize> = (0..4).collect();
            rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut r);
            formulas.push(scramble(&core, &perm, r.random_range(0..16)));
        } else {
            let vars = r.random_range(2..=5);
            formulas.push(random_e3_formula(&mut r, vars));
        }
    }
    let start = Instant::now();
    let (mut sat, mut unsat) = (0, 0);
    for (i, phi) in formulas.iter().enumerate() {
        let out = from_planar_3sat_e3(phi).map_err(red_err)?;
        let p = parameter_profile(&out.instance);
        ensure(p.max_capacity == BigUint::from(1u32), || format!("formula {i}: K = {}", p.max_capacity))?;
        ensure(p.max_support <= 3, || format!("formula {i}: lambda = {}", p.max_support))?;
        ensure(p.max_degree <= 5, || format!("formula {i}: Delta = {}", p.max_degree))?;
        let oracle = sat_oracle(phi).map_err(red_err)?;
        let (yes, z) = decide(&out.instance, &out.threshold, Selector::Auto, &unbounded()).map_err(solve_err)?;
        ensure(yes == oracle, || format!("formula {i} {:?}: decide {yes}, oracle {oracle}", phi.clauses()))?;
        if let Some(z) = z {
            acc.decision("c8", &out.instance, &out.threshold, &z);
            acc.certificate("c8", phi.satisfied_by(&out.translate(&z)));
            sat += 1;
        } else {
            unsat += 1;
        }
    }
    Ok(format!("{} formulas ({sat} satisfiable, {unsat} not) in {:.2?}", formulas.len(), start.elapsed()))
}

fn c9_interreduce(acc: &mut Integrity) -> Outcome {
    // Small enough that even the split instances of Cases 3 and 4 stay
    // within brute-force reach.
    let caps = InstanceCaps { caches: 3, users: 4, contents: 3, size: 1, capacity: 2, unit_sizes: true };
    let n = 200;
    let mut edgeless = 0;
    for case_no in 1..=5u8 {
        let case = Case::try_from(case_no).map_err(red_err)?;
        for seed in 0..n {
            let inst = random_instance(&mut rng(9_000 + 1_000 * case_no as u64 + seed), &caps);
            let out = interreduce(&inst, case).map_err(red_err)?;
            let before = brute_force(&inst, &unbounded()).map_err(solve_err)?;
            let after = brute_force(&out, &unbounded()).map_err(solve_err)?;
            acc.witness("c9", &out, &after);
            ensure(before.optimum == after.optimum, || {
                format!("case {case_no} seed {seed}: {} != {}", after.optimum, before.optimum)
            })?;
            let p = parameter_profile(&out);
            let bound_ok = match case {
                Case::MergeCaches => out.num_caches() <= 1 << inst.num_users(),
                Case::MergeUsers => out.num_users() <= 1 << inst.num_caches(),
                Case::UnitCapacities => p.max_capacity <= BigUint::from(1u32),
                Case::SingleRequests => p.max_support <= 1,
                Case::OutsideCover => {
                    let vc = parameter_profile(&inst).vc_upper;
                    let (xc, xu) = netcache_core::model::vertex_cover_flags(&inst);
                    let xc = xc.iter().filter(|&&x| x).count();
                    let xu = xu.iter().filter(|&&x| x).count();
                    let size = out.num_caches() + out.num_users();
                    // With no edges X is empty and the combined bound is 1,
                    // yet one cache and one user cannot merge further.
                    if vc == 0 {
                        edgeless += 1;
                        size <= 2
                    } else {
                        size <= vc + (1 << xc) + (1 << xu) && size <= (1 << vc) + vc
                    }
                }
            };
            ensure(bound_ok, || {
                format!(
                    "case {case_no} seed {seed}: parameter bound violated (C={} U={} -> C={} U={}, vc_upper={})",
                    inst.num_caches(),
                    inst.num_users(),
                    out.num_caches(),
                    out.num_users(),
                    parameter_profile(&inst).vc_upper
                )
            })?;
        }
    }
    Ok(format!(
        "5 cases x {n} instances, optimum and bounds preserved ({edgeless} edgeless Case 5 inputs held to C+U <= 2)"
    ))
}

fn c10_speedup(acc: &mut Integrity) -> Outcome {
    let spec: GeneratorSpec = "gen:C=2,U=40,S=120,cap=60,homogeneous,seed=10".parse().map_err(|e| format!("{e}"))?;
    let inst = spec.generate();
    ensure(inst.cache_neighbors(0) != inst.cache_neighbors(1), || "cache neighborhoods coincide".into())?;
    let bounds = algorithm_bounds(&inst);
    ensure(!bounds.brute.within(u64::MAX), || format!("brute-force bound {} is not huge", bounds.brute))?;
    let start = Instant::now();
    let dp = capacity_vector_dp(&inst, &default_cfg()).map_err(solve_err)?;
    let elapsed = start.elapsed();
    acc.witness("c10/capdp", &inst, &dp);
    within(elapsed, Duration::from_secs(10), "capacity_vector_dp")?;
    ensure(dp.stats.states_explored <= 61 * 61, || format!("{} states", dp.stats.states_explored))?;
    let auto = auto_solve(&inst, DEFAULT_MAX_STATES).map_err(solve_err)?;
    acc.witness("c10/auto", &inst, &auto);
    ensure(auto.stats.algorithm == Algorithm::CapacityDp, || format!("auto chose {}", auto.stats.algorithm))?;
    ensure(auto.optimum == dp.optimum, || "auto and capdp disagree".into())?;
    Ok(format!(
        "brute bound {}, capdp {} states in {elapsed:.2?}, auto chose {}",
        bounds.brute, dp.stats.states_explored, auto.stats.algorithm
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("capacity DP equals brute force", c1_capacity_dp),
        ("type DP equals brute force", c2_type_dp),
        ("preprocessing preserves the optimum", c3_preprocessing),
        ("NAE reduction soundness", c4_nae),
        ("knapsack value correspondence", c5_knapsack),
        ("bin-packing reduction soundness", c6_bin_packing),
        ("max k-vertex-cover correspondence", c7_max_kvc),
        ("planar 3-SAT-E3 reduction soundness", c8_planar_sat),
        ("interreduction preservation", c9_interreduce),
        ("parameterized speedup", c10_speedup),
    ];
    let mut integrity = Integrity::default();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&mut integrity);
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if integrity.problems.is_empty() {
        println!(
            "PASS 11 witness integrity: {} witnesses, {} certificates verified",
            integrity.witnesses, integrity.certificates
        );
    } else {
        failed += 1;
        println!("FAIL 11 witness integrity: {} problems, first: {}", integrity.problems.len(), integrity.problems[0]);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
