//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any fails.
//!
//! Brute-force oracles here work from independence tables only and share no
//! code with the library's union and covering routines.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use matroid_secretary::harness::{estimate_lemmas, exact_lemma3, run_trial, run_trials, InstanceSpec};
use matroid_secretary::matroid::bits::members;
use matroid_secretary::rng;
use matroid_secretary::secretary::{
    bin_probabilities, epsilon, plan_phases, sample_phase_sizes, Algorithm, Constants, Instance, Mode,
    PlanOutcome, RunOptions,
};
use matroid_secretary::union::{covering_number, flats_cover_bound, nash_williams_value};
use matroid_secretary::verify::{builtin_small, default_suite};
use matroid_secretary::{GroundSet, Matroid, UnionOracle};
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

// ---------------------------------------------------------------------------
// brute-force tables

/// `indep[mask]` for every subset of a small ground set.
struct Table {
    n: usize,
    indep: Vec<bool>,
}

impl Table {
    fn of(m: &Matroid) -> Self {
        let n = m.len();
        let indep = (0..1u64 << n)
            .map(|mask| m.is_independent(&members(mask)).unwrap())
            .collect();
        Self { n, indep }
    }

    /// Sets splitting into an independent set of `self` and a member of `other`.
    fn join(&self, other: &[bool]) -> Vec<bool> {
        (0..1usize << self.n)
            .map(|mask| {
                let mut a = mask;
                loop {
                    if self.indep[a] && other[mask ^ a] {
                        return true;
                    }
                    if a == 0 {
                        return false;
                    }
                    a = (a - 1) & mask;
                }
            })
            .collect()
    }

    /// Tables of the 1-, 2-, ..., `k`-fold unions.
    fn folds(&self, k: usize) -> Vec<Vec<bool>> {
        let mut out = vec![self.indep.clone()];
        while out.len() < k {
            let next = self.join(out.last().unwrap());
            out.push(next);
        }
        out
    }
}

fn submasks(mask: usize) -> impl Iterator<Item = usize> {
    let mut a = Some(mask);
    std::iter::from_fn(move || {
        let cur = a?;
        a = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

fn table_rank(indep: &[bool], mask: usize) -> usize {
    submasks(mask)
        .filter(|&a| indep[a])
        .map(|a| a.count_ones() as usize)
        .max()
        .unwrap()
}

/// Maximum-weight member of `indep` inside `mask`, by exhaustive search.
fn table_opt(indep: &[bool], weights: &[f64], mask: usize) -> usize {
    let w = |a: usize| members(a as u64).iter().map(|&e| weights[e]).sum::<f64>();
    submasks(mask)
        .filter(|&a| indep[a])
        .max_by(|&a, &b| w(a).partial_cmp(&w(b)).unwrap())
        .unwrap()
}

/// Matroid axioms checked directly on the table.
fn table_axioms(t: &Table) -> bool {
    if !t.indep[0] {
        return false;
    }
    let full = 1usize << t.n;
    for a in 0..full {
        if !t.indep[a] {
            continue;
        }
        if submasks(a).any(|s| !t.indep[s]) {
            return false;
        }
        for b in 0..full {
            if t.indep[b] && b.count_ones() > a.count_ones() {
                let extends = members((b & !a) as u64)
                    .iter()
                    .any(|&e| t.indep[a | 1 << e]);
                if !extends {
                    return false;
                }
            }
        }
    }
    true
}

fn is_forest(vertices: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); vertices];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut comp = vec![usize::MAX; vertices];
    let mut components = 0;
    for s in 0..vertices {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = components;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = components;
                    stack.push(v);
                }
            }
        }
        components += 1;
    }
    // A graph is a forest iff |E| = |V| − #components, counting self-loops and multi-edges.
    edges.iter().all(|&(u, v)| u != v) && edges.len() + components == vertices
}

/// Distinct powers of two in a seeded random order: subset sums never tie.
fn power_weights(n: usize, seed: u64) -> GroundSet {
    let perm = rng::permutation(n, &mut rng::stream(seed, 0));
    GroundSet::new(perm.iter().map(|&j| (j as f64).exp2()).collect()).unwrap()
}

fn random_matroid(seed: u64, i: usize) -> Matroid {
    let spec = match i % 4 {
        0 => r#"{"kind": "random_graph", "vertices": 5, "p_edge": 0.9}"#.to_string(),
        1 => format!(r#"{{"kind": "random_linear", "prime": 2, "rows": 4, "n": {}}}"#, 9 + i % 4),
        2 => format!(r#"{{"kind": "random_linear", "prime": 3, "rows": 3, "n": {}}}"#, 9 + i % 4),
        _ => r#"{"kind": "partition", "sizes": [4, 3, 3, 2], "caps": [1, 2, 1, 1]}"#.to_string(),
    };
    let spec: InstanceSpec = serde_json::from_str(&format!(r#"{{"matroid": {spec}, "seed": {}}}"#, seed + i as u64)).unwrap();
    let (_, m) = spec.build().unwrap();
    Arc::try_unwrap(m).unwrap()
}

// ---------------------------------------------------------------------------
// criteria

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let report = default_suite(2024, 120).unwrap();
    let suite_bad: Vec<String> = report
        .failures()
        .map(|c| format!("{} on {}", c.check, c.subject))
        .collect();

    // Independent check: covering numbers and union ranks from convolved tables.
    let mut mismatches = 0;
    let mut exhaustive = 0u64;
    for (_, m) in builtin_small(2024).unwrap() {
        let m = Arc::new(m);
        let t = Table::of(&m);
        let folds = t.folds(t.n.max(3));
        let unions: Vec<UnionOracle> = (1..=3).map(|k| UnionOracle::copies(m.clone(), k).unwrap()).collect();
        for mask in 1..1usize << t.n {
            let set = members(mask as u64);
            let brute = folds.iter().position(|f| f[mask]).unwrap() + 1;
            let phi = covering_number(&m, &set).unwrap().value;
            let nw = nash_williams_value(&m, &set).unwrap().value;
            let fl = flats_cover_bound(&m, &set).unwrap().value;
            mismatches += usize::from(!(phi == brute && nw == brute && fl == brute));
            for (k, u) in unions.iter().enumerate() {
                mismatches += usize::from(u.rank(&set).unwrap() != table_rank(&folds[k], mask));
            }
            exhaustive += 1;
        }
    }
    let mut sampled = 0;
    let mut rng = rng::stream(2024, 9);
    for i in 0..8 {
        let m = Arc::new(random_matroid(77, i));
        let t = Table::of(&m);
        let folds = t.folds(t.n);
        for _ in 0..15 {
            let mask = rand::Rng::gen_range(&mut rng, 1..1usize << t.n);
            let set = members(mask as u64);
            let brute = folds.iter().position(|f| f[mask]).unwrap() + 1;
            let phi = covering_number(&m, &set).unwrap().value;
            let nw = nash_williams_value(&m, &set).unwrap().value;
            let fl = flats_cover_bound(&m, &set).unwrap().value;
            mismatches += usize::from(!(phi == brute && nw == brute && fl == brute));
            sampled += 1;
        }
    }
    let suite_sampled: u64 = report
        .checks
        .iter()
        .filter(|c| c.check == "covering_three_way_sampled")
        .map(|c| c.cases)
        .sum();
    let secs = start.elapsed().as_secs_f64();
    outcome(
        suite_bad.is_empty() && mismatches == 0 && sampled >= 100 && suite_sampled >= 100 && secs < 300.0,
        format!(
            "suite failures {suite_bad:?}; brute mismatches {mismatches} over {exhaustive} exhaustive sets (n <= 8) \
             and {sampled} + {suite_sampled} sampled sets (9 <= n <= 12); {secs:.1}s < 300s"
        ),
    )
}

fn axioms_and_improves() -> Outcome {
    let mut axiom_bad = Vec::new();
    let mut mismatches = 0;
    let mut cases = 0u64;
    let mut kinds = std::collections::BTreeSet::new();
    for (i, (name, m)) in builtin_small(31).unwrap().into_iter().enumerate() {
        kinds.insert(m.kind_name());
        let m = Arc::new(m);
        let t = Table::of(&m);
        let report = m.check_axioms().unwrap();
        if !report.passed() || !table_axioms(&t) {
            axiom_bad.push(name.clone());
        }
        let ground = power_weights(t.n, i as u64);
        let folds = t.folds(3);
        for (k, table) in folds.iter().enumerate() {
            let u = UnionOracle::copies(m.clone(), k + 1).unwrap();
            for mask in 0..1usize << t.n {
                let set = members(mask as u64);
                for e in (0..t.n).filter(|e| mask >> e & 1 == 0) {
                    let with = mask | 1 << e;
                    let in_opt = table_opt(table, ground.weights(), with) >> e & 1 == 1;
                    let fast = if k == 0 {
                        m.improves(&ground, &set, e).unwrap()
                    } else {
                        u.improves(&ground, &set, e).unwrap()
                    };
                    mismatches += usize::from(fast != in_opt);
                    cases += 1;
                }
            }
        }
    }
    outcome(
        axiom_bad.is_empty() && mismatches == 0 && kinds.len() == 5,
        format!(
            "kinds {kinds:?}; axiom failures {axiom_bad:?}; improvement-test mismatches {mismatches} \
             over {cases} (set, element, fold) cases"
        ),
    )
}

fn feasibility() -> Outcome {
    let constants = Constants::Experimental(0.25);
    let opts = RunOptions {
        constants,
        trace: true,
        ..RunOptions::default()
    };
    let cells: [(&str, &[usize], u64); 8] = [
        (r#"{"kind": "uniform", "n": 3000, "cap": 1}"#, &[64, 256], 120),
        (r#"{"kind": "uniform", "n": 2000, "cap": 3}"#, &[40], 120),
        (r#"{"kind": "partition", "sizes": [20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20], "caps": [2, 1, 3, 1, 2, 1, 1, 2, 1, 1, 2, 1, 3, 1, 2, 1, 1, 2, 1, 1]}"#, &[12], 150),
        (r#"{"kind": "complete_graph", "vertices": 30}"#, &[4], 150),
        (r#"{"kind": "random_graph", "vertices": 50, "p_edge": 0.3}"#, &[6], 150),
        (r#"{"kind": "random_linear", "prime": 5, "rows": 10, "n": 400}"#, &[8], 150),
        (r#"{"kind": "random_linear", "prime": 2, "rows": 12, "n": 400}"#, &[6], 150),
        (r#"{"kind": "random_linear", "prime": 3, "rows": 8, "n": 300}"#, &[5], 100),
    ];
    let mut runs = 0;
    let mut phased_runs = 0;
    let mut violations = Vec::new();
    let mut plans = 0;
    let mut kinds = std::collections::BTreeSet::new();
    for (j, (matroid, ks, trials)) in cells.iter().enumerate() {
        let spec: InstanceSpec =
            serde_json::from_str(&format!(r#"{{"matroid": {matroid}, "seed": {j}}}"#)).unwrap();
        let (ground, m) = spec.build().unwrap();
        kinds.insert(m.kind_name());
        for &k in *ks {
            let inst = Instance::new(ground.clone(), m.clone(), k).unwrap();
            match plan_phases(inst.n(), k, constants, None).unwrap() {
                PlanOutcome::Plan(p) => {
                    plans += 1;
                    let sum: f64 = p
                        .capacities
                        .iter()
                        .map(|&r| (1.0 + epsilon(p.c, p.log_size, r as f64)) * r as f64)
                        .sum();
                    let caps: usize = p.acceptance_caps.iter().sum();
                    if !(sum < k as f64 && p.feasibility_sum < k as f64 && caps < k) {
                        violations.push(format!("plan sum {sum} >= k = {k} on {}", m.kind_name()));
                    }
                }
                PlanOutcome::Fallback(why) => violations.push(format!("no plan for k = {k}: {why}")),
            }
            let union = UnionOracle::copies(m.clone(), k).unwrap();
            let results: Vec<_> = (0..*trials)
                .into_par_iter()
                .map(|t| run_trial(&inst, &[Algorithm::Phased], 5, t, &opts).map(|mut r| r.remove(0)))
                .collect();
            for r in results {
                runs += 1;
                match r {
                    Ok(rec) => {
                        phased_runs += usize::from(rec.mode == Mode::Phased);
                        let independent = union.is_independent(&rec.accepted).unwrap().is_independent();
                        if rec.covering_number > k || !independent {
                            violations.push(format!(
                                "phi = {} > k = {k} on {}",
                                rec.covering_number,
                                m.kind_name()
                            ));
                        }
                    }
                    Err(e) => violations.push(e.to_string()),
                }
            }
        }
    }
    outcome(
        violations.is_empty() && phased_runs >= 1000 && kinds.len() == 4,
        format!(
            "{runs} runs ({phased_runs} phased) over {kinds:?}, {plans} plans; violations {}{}",
            violations.len(),
            violations.first().map(|v| format!(" (first: {v})")).unwrap_or_default()
        ),
    )
}

fn phase_distribution() -> Outcome {
    let mut bad_sum = Vec::new();
    for l in 1..=20usize {
        let probs = bin_probabilities(l);
        // Exact: bin 0 holds one L-bit integer, bin b >= 1 holds 2^(b-1) of them.
        let exact = probs
            .iter()
            .enumerate()
            .all(|(b, &p)| p * (l as f64).exp2() == if b == 0 { 1.0 } else { ((b - 1) as f64).exp2() });
        if probs.iter().sum::<f64>() != 1.0 || !exact {
            bad_sum.push(l);
        }
    }
    let (n, l) = (100_000usize, 5usize);
    let probs = bin_probabilities(l);
    let mut worst = 0.0f64;
    let mut total_ok = true;
    for rep in 0..5 {
        let z = sample_phase_sizes(l, n, &mut rng::stream(88, rep));
        total_ok &= z.iter().sum::<usize>() == n;
        for (b, &p) in probs.iter().enumerate() {
            let sd = (n as f64 * p * (1.0 - p)).sqrt();
            worst = worst.max((z[b] as f64 - n as f64 * p).abs() / sd);
        }
    }
    outcome(
        bad_sum.is_empty() && total_ok && worst <= 5.0,
        format!("sum = 1 exactly for L = 1..=20 (failures {bad_sum:?}); n = 1e5, L = 5, 5 draws: worst |z| = {worst:.2} <= 5"),
    )
}

fn known_covering_numbers() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for (v, expected) in [(4usize, 2usize), (5, 3), (6, 3)] {
        let m = Arc::new(Matroid::complete_graph(v));
        let Matroid::Graphic(g) = &*m else { unreachable!() };
        let all: Vec<usize> = (0..m.len()).collect();
        let cover = covering_number(&m, &all).unwrap();
        let valid = cover.certificate.validate(&cover.union).is_ok() && cover.certificate.covered() == all;
        let forests = cover
            .certificate
            .parts()
            .iter()
            .all(|p| is_forest(v, &p.iter().map(|&e| g.edges()[e]).collect::<Vec<_>>()));
        // Lower bound: a forest has at most v - 1 edges; the forests above give the upper bound.
        let counting = m.len().div_ceil(v - 1);
        let parts = cover.certificate.parts().iter().filter(|p| !p.is_empty()).count();
        let nw = nash_williams_value(&m, &all).unwrap();
        let ok = cover.value == expected
            && valid
            && forests
            && counting == expected
            && parts == expected
            && nw.value == expected
            && nw.subset.len().div_ceil(nw.rank) == expected;
        pass &= ok;
        lines.push(format!("K{v}: phi = {} (witness {} edges / rank {})", cover.value, nw.subset.len(), nw.rank));
    }
    outcome(pass, lines.join("; "))
}

fn dynkin() -> Outcome {
    let start = Instant::now();
    let inst = Instance::new(power_weights(100, 3), Arc::new(Matroid::uniform(100, 1).unwrap()), 1).unwrap();
    let out = run_trials(&inst, &[Algorithm::Dynkin], 20_000, 12, &RunOptions::default()).unwrap();
    let rate = out.aggregates[0].best_rate;
    let target = 1.0 / std::f64::consts::E;
    let secs = start.elapsed().as_secs_f64();
    outcome(
        (rate - target).abs() <= 0.02 && secs < 60.0,
        format!("n = 100, 2e4 trials: best-pick rate {rate:.4} vs 1/e = {target:.4} (±0.02); {secs:.1}s < 60s"),
    )
}

fn symmetry() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    let integer = |n: usize, seed: u64| {
        let perm = rng::permutation(n, &mut rng::stream(seed, 0));
        GroundSet::new(perm.iter().map(|&j| (3 * j + 1) as f64).collect()).unwrap()
    };
    let exact_cells: Vec<(&str, Instance, Vec<(f64, usize)>)> = vec![
        (
            "uniform(12,1)",
            Instance::new(integer(12, 1), Arc::new(Matroid::uniform(12, 1).unwrap()), 4).unwrap(),
            vec![(0.5, 1), (0.5, 3), (0.25, 2), (0.125, 4)],
        ),
        (
            "uniform(10,2)",
            Instance::new(integer(10, 2), Arc::new(Matroid::uniform(10, 2).unwrap()), 2).unwrap(),
            vec![(0.5, 1), (0.25, 2)],
        ),
        (
            "K4",
            Instance::new(integer(6, 3), Arc::new(Matroid::complete_graph(4)), 2).unwrap(),
            vec![(0.5, 1), (0.5, 2), (0.25, 1), (0.125, 2)],
        ),
        (
            "K5",
            Instance::new(integer(10, 4), Arc::new(Matroid::complete_graph(5)), 2).unwrap(),
            vec![(0.5, 1), (0.25, 2)],
        ),
    ];
    let mut exact_count = 0;
    for (name, inst, grid) in &exact_cells {
        for &(p, r) in grid {
            let e = exact_lemma3(inst, p, r).unwrap();
            pass &= e.equal();
            exact_count += 1;
            if !e.equal() {
                lines.push(format!("{name} p = {p} r = {r}: {} != {}", e.numerator_wt, e.numerator_ws));
            }
        }
    }
    lines.push(format!("{exact_count} exact cells (n <= 12) equal"));
    let inst = Instance::new(integer(200, 5), Arc::new(Matroid::uniform(200, 1).unwrap()), 20).unwrap();
    let est = estimate_lemmas(&inst, 0.5, 15, 100_000, 41, 0.5).unwrap();
    let diff = (est.mean_wt.mean - est.mean_ws.mean).abs();
    let se = est.combined_se();
    pass &= diff <= 3.0 * se;
    lines.push(format!(
        "Monte Carlo n = 200, 1e5 samples: |{:.4} - {:.4}| = {diff:.4} <= 3 x {se:.4}",
        est.mean_wt.mean, est.mean_ws.mean
    ));
    outcome(pass, lines.join("; "))
}

fn tails() -> Outcome {
    // Proof-scale constant C = 10: p = 1/2 >= ε(k) needs k >= 400·log2(n).
    let (n, k, c, p, trials) = (1usize << 20, 1usize << 14, 10.0, 0.5, 500);
    let pk = p * k as f64;
    let r = ((1.0 + epsilon(c, n, pk)) * pk).ceil() as usize;
    let ground = GroundSet::new(
        rng::permutation(n, &mut rng::stream(6, 0))
            .iter()
            .map(|&j| (j + 1) as f64)
            .collect(),
    )
    .unwrap();
    let inst = Instance::new(ground, Arc::new(Matroid::uniform(n, 1).unwrap()), k).unwrap();
    let est = estimate_lemmas(&inst, p, r, trials, 19, c).unwrap();
    let pass = est.tail_t.ci_hi <= 0.01 && est.tail_splus.ci_hi <= 0.01;
    outcome(
        pass,
        format!(
            "1-uniform n = {n}, k = {k}, C = {c}, p = {p}, r = {r}, {trials} trials: \
             T* tail {}/{trials} (CI hi {:.4}, max phi {} vs {:.0}), S+ tail {}/{trials} (CI hi {:.4}, max phi {} vs {:.0}); bound 0.01",
            est.tail_t.hits,
            est.tail_t.ci_hi,
            est.phi_t_max,
            est.tail_t.threshold,
            est.tail_splus.hits,
            est.tail_splus.ci_hi,
            est.phi_splus_max,
            est.tail_splus.threshold
        ),
    )
}

fn competitive_trend() -> Outcome {
    let start = Instant::now();
    let n = 50_000;
    let spec: InstanceSpec =
        serde_json::from_str(r#"{"matroid": {"kind": "uniform", "n": 50000, "cap": 1}, "seed": 1}"#).unwrap();
    let (ground, m) = spec.build().unwrap();
    let opts = RunOptions {
        constants: Constants::Experimental(0.25),
        ..RunOptions::default()
    };
    let mut cells = Vec::new();
    for k in [64usize, 256, 1024, 4096] {
        let inst = Instance::new(ground.clone(), m.clone(), k).unwrap();
        let out = run_trials(&inst, &[Algorithm::Phased, Algorithm::Threshold], 200, 1, &opts).unwrap();
        let (ph, th) = (&out.aggregates[0], &out.aggregates[1]);
        cells.push((k, ph.mean_ratio, ph.se, th.mean_ratio, ph.mode.clone()));
    }
    let mut pass = cells.iter().all(|c| c.4 == "phased");
    let mut notes = Vec::new();
    for w in cells.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let slack = 2.0 * a.2.hypot(b.2);
        let shrink = (1.0 - a.1) / (1.0 - b.1);
        pass &= b.1 >= a.1 - slack && shrink >= 1.5;
        notes.push(format!("k {}->{}: regret x{shrink:.2}", a.0, b.0));
    }
    let secs = start.elapsed().as_secs_f64();
    pass &= secs < 900.0;
    let ratios: Vec<String> = cells
        .iter()
        .map(|c| format!("k={} {:.4}±{:.4} (threshold {:.4})", c.0, c.1, c.2, c.3))
        .collect();
    outcome(
        pass,
        format!(
            "n = {n}, C = 0.25, 200 trials: {}; {} (>= 1.5); {secs:.1}s < 900s",
            ratios.join(", "),
            notes.join(", ")
        ),
    )
}

fn matsec(args: &[&str], out: &Path, jobs: usize) -> bool {
    Command::new(env!("CARGO_BIN_EXE_matsec"))
        .args(args)
        .arg("--out")
        .arg(out)
        .arg("--jobs")
        .arg(jobs.to_string())
        .env_remove("MATSEC_SEED")
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

fn reproducibility() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let runs: [(&str, Vec<&str>, &[&str]); 4] = [
        (
            "simulate-graphic",
            vec![
                "simulate",
                "--spec",
                r#"{"matroid": {"kind": "random_graph", "vertices": 14, "p_edge": 0.5}, "seed": 4}"#,
                "--k",
                "2,3,200",
                "--constants",
                "experimental:0.3",
                "--trials",
                "60",
                "--seed",
                "11",
                "--trace",
            ],
            &["simulate.csv", "simulate.json", "trace.csv"],
        ),
        (
            "simulate-uniform",
            vec![
                "simulate",
                "--spec",
                r#"{"matroid": {"kind": "uniform", "n": 3000, "cap": 1}, "weights": {"generator": "exponential"}}"#,
                "--k",
                "64,256",
                "--algos",
                "phased,dynkin,threshold,greedy,accept-all",
                "--trials",
                "80",
                "--seed",
                "3",
            ],
            &["simulate.csv", "simulate.json"],
        ),
        (
            "lemmas-mc",
            vec![
                "lemmas",
                "--spec",
                r#"{"matroid": {"kind": "uniform", "n": 200, "cap": 1}}"#,
                "--k",
                "20",
                "--p",
                "0.5,0.4",
                "--constants",
                "experimental:0.5",
                "--trials",
                "3000",
                "--seed",
                "8",
            ],
            &["lemmas.csv"],
        ),
        (
            "lemmas-exact",
            vec![
                "lemmas",
                "--spec",
                r#"{"matroid": {"kind": "complete_graph", "vertices": 4}, "weights": [6, 5, 4, 3, 2, 1]}"#,
                "--k",
                "2",
                "--p",
                "0.5,0.25",
                "--r",
                "1,2",
                "--exact",
            ],
            &["lemmas.csv"],
        ),
    ];
    let mut compared = 0;
    let mut problems = Vec::new();
    for (name, args, files) in &runs {
        let mut outputs: Vec<Vec<Vec<u8>>> = Vec::new();
        for (i, jobs) in [1usize, 4, 7, 4].into_iter().enumerate() {
            let out = dir.path().join(format!("{name}-{i}"));
            if !matsec(args, &out, jobs) {
                problems.push(format!("{name} failed with --jobs {jobs}"));
                continue;
            }
            outputs.push(files.iter().map(|f| std::fs::read(out.join(f)).unwrap_or_default()).collect());
        }
        for o in &outputs[1..] {
            compared += 1;
            if o != &outputs[0] || o.iter().any(|b| b.is_empty()) {
                problems.push(format!("{name} output differs"));
            }
        }
    }
    outcome(
        problems.is_empty() && compared == 12,
        format!("{compared} reruns (--jobs 1, 4, 7, 4) byte-identical; problems {problems:?}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("axioms and improvement test", axioms_and_improves),
        ("feasibility", feasibility),
        ("phase-length distribution", phase_distribution),
        ("known covering numbers", known_covering_numbers),
        ("dynkin baseline", dynkin),
        ("sample/threshold symmetry", symmetry),
        ("tail events", tails),
        ("competitive trend", competitive_trend),
        ("reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        failed += usize::from(!result.pass);
        println!(
            "{} {name} [{:.1}s]: {}",
            if result.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            result.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
