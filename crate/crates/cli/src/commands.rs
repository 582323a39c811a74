use std::sync::Arc;
use std::time::Instant;

use matroid_secretary::harness::lemmas::EXACT_LIMIT;
use matroid_secretary::harness::{estimate_lemmas, exact_lemma3, run_trial, run_trials};
use matroid_secretary::matroid::bits::{AXIOM_LIMIT, ENUMERATION_LIMIT};
use matroid_secretary::secretary::{epsilon, Algorithm, Constants, Instance, PlanOutcome, RunOptions};
use matroid_secretary::union::{covering_number, flats_cover_bound, nash_williams_value};
use matroid_secretary::verify::{default_suite, verify_exhaustive, VerifyReport};
use matroid_secretary::{Error, GroundSet, Matroid};
use serde_json::json;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{num, write_json, write_table, Table};

pub const SIMULATE_COLUMNS: [&str; 15] = [
    "algorithm",
    "mode",
    "n",
    "k",
    "matroid_kind",
    "constants",
    "trials",
    "mean_ratio",
    "se",
    "min",
    "max",
    "phi_max",
    "best_rate",
    "opt_weight",
    "seed",
];

pub const TRACE_COLUMNS: [&str; 11] = [
    "k",
    "phase",
    "r",
    "cap",
    "rate",
    "arrivals",
    "sample",
    "eligible",
    "improving",
    "accepted",
    "covering_number",
];

pub const LEMMA_COLUMNS: [&str; 21] = [
    "mode",
    "n",
    "k",
    "c",
    "p",
    "r",
    "trials",
    "status",
    "tail_t_freq",
    "tail_t_ci_lo",
    "tail_t_ci_hi",
    "tail_splus_freq",
    "tail_splus_ci_lo",
    "tail_splus_ci_hi",
    "mean_wT",
    "se_wT",
    "mean_wS",
    "se_wS",
    "mean_wSplus",
    "se_wSplus",
    "exact_equal",
];

pub const BENCH_COLUMNS: [&str; 7] = ["task", "n", "k", "trials", "seconds", "per_trial_ms", "mean_ratio"];

fn options(cfg: &RunConfig) -> RunOptions {
    RunOptions {
        constants: cfg.constants(),
        nsim: cfg.nsim_mode,
        trace: cfg.trace,
        threshold_eps: cfg.threshold_eps,
    }
}

fn require_k(cfg: &RunConfig) -> CliResult<()> {
    if cfg.k.is_empty() {
        return Err(CliError::Config(format!(
            "`{}` needs --k or a k in the spec",
            cfg.command
        )));
    }
    Ok(())
}

fn built(cfg: &RunConfig) -> CliResult<(GroundSet, Arc<Matroid>)> {
    Ok(cfg.require_spec()?.build()?)
}

pub fn verify(cfg: &RunConfig) -> CliResult<VerifyReport> {
    let report = match &cfg.spec {
        None => default_suite(cfg.seed, cfg.samples)?,
        Some(spec) => {
            let (ground, matroid) = spec.build_unchecked()?;
            if matroid.len() > AXIOM_LIMIT {
                return Err(CliError::Config(format!(
                    "verify checks every subset and needs n <= {AXIOM_LIMIT}, got n = {}",
                    matroid.len()
                )));
            }
            let label = format!("{} (n = {})", matroid.kind_name(), matroid.len());
            VerifyReport {
                checks: verify_exhaustive(&label, &matroid, &ground, &cfg.k)?,
            }
        }
    };
    for c in &report.checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        println!("{status}  {:<28} {:<34} cases={}", c.check, c.subject, c.cases);
        if let Some(ce) = &c.counterexample {
            println!("      {}", serde_json::to_string(ce).expect("serialisable"));
        }
    }
    write_json(cfg, "verify", &report)?;
    if let Some(bad) = report.failures().next() {
        return Err(CliError::Counterexample(
            serde_json::to_string(bad).expect("serialisable"),
        ));
    }
    Ok(report)
}

/// Runs the trial grid; returns the summary table.
pub fn simulate(cfg: &RunConfig) -> CliResult<Table> {
    require_k(cfg)?;
    let (ground, matroid) = built(cfg)?;
    let opts = options(cfg);
    let mut table = Table::new(&SIMULATE_COLUMNS);
    let mut traces = Table::new(&TRACE_COLUMNS);
    let mut cells = Vec::new();
    for &k in &cfg.k {
        let inst = Instance::new(ground.clone(), matroid.clone(), k)?;
        let plan = inst.plan(&opts)?;
        match &plan {
            None => eprintln!("k = {k}: k >= n, phased accepts everything"),
            Some(PlanOutcome::Fallback(reason)) => {
                eprintln!("k = {k}: no phase schedule ({reason}); phased runs the fallback")
            }
            Some(PlanOutcome::Plan(p)) => eprintln!(
                "k = {k}: L = {}, C = {}, capacities {:?}",
                p.phases, p.c, p.capacities
            ),
        }
        let out = run_trials(&inst, &cfg.algos, cfg.trials, cfg.seed, &opts)?;
        let opt_weight = inst.opt().weight;
        for a in &out.aggregates {
            table.push(vec![
                a.algorithm.to_string(),
                a.mode.clone(),
                inst.n().to_string(),
                k.to_string(),
                matroid.kind_name().to_string(),
                cfg.constants.clone(),
                a.trials.to_string(),
                num(a.mean_ratio),
                num(a.se),
                num(a.min),
                num(a.max),
                a.phi_max.to_string(),
                num(a.best_rate),
                num(opt_weight),
                cfg.seed.to_string(),
            ]);
        }
        if cfg.trace && cfg.algos.contains(&Algorithm::Phased) {
            let record = run_trial(&inst, &[Algorithm::Phased], cfg.seed, 0, &opts)?.remove(0);
            for t in record.trace.iter().flatten() {
                traces.push(vec![
                    k.to_string(),
                    t.phase.to_string(),
                    t.r.to_string(),
                    t.cap.to_string(),
                    num(t.rate),
                    t.arrivals.to_string(),
                    t.sample.len().to_string(),
                    t.eligible.len().to_string(),
                    t.improving.len().to_string(),
                    t.accepted.len().to_string(),
                    t.covering_number.to_string(),
                ]);
            }
        }
        cells.push(json!({
            "k": k,
            "plan": plan,
            "opt_weight": opt_weight,
            "aggregates": out.aggregates,
        }));
    }
    println!("{}", table.render());
    write_table(cfg, "simulate", &table)?;
    write_json(cfg, "simulate", &json!({ "cells": cells }))?;
    if cfg.trace {
        write_table(cfg, "trace", &traces)?;
    }
    Ok(table)
}

/// The constant used inside ε for lemma thresholds: the experimental `C`, or
/// the lower end of the proof range.
pub fn lemma_constant(constants: Constants) -> f64 {
    match constants {
        Constants::Experimental(c) => c,
        Constants::Proof => Constants::PROOF_RANGE.0,
    }
}

/// Smallest integer `r >= (1 + ε(pk)) pk`.
pub fn smallest_r(n: usize, k: usize, p: f64, c: f64) -> usize {
    let pk = p * k as f64;
    let need = (1.0 + epsilon(c, n, pk)) * pk;
    if need.is_finite() {
        (need.ceil() as usize).max(1)
    } else {
        1
    }
}

fn cell_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Precondition(_) | Error::InvalidParameter(_) | Error::TooLarge { .. }
    )
}

pub fn lemmas(cfg: &RunConfig) -> CliResult<Table> {
    require_k(cfg)?;
    let (ground, matroid) = built(cfg)?;
    let n = matroid.len();
    let c = lemma_constant(cfg.constants());
    let mut table = Table::new(&LEMMA_COLUMNS);
    let mut mismatch = None;
    let blank = || String::new();
    for &k in &cfg.k {
        let inst = Instance::new(ground.clone(), matroid.clone(), k)?;
        for &p in &cfg.p {
            let rs = if cfg.r.is_empty() {
                vec![smallest_r(n, k, p, c)]
            } else {
                cfg.r.clone()
            };
            for &r in &rs {
                let head = |mode: &str, trials: String| {
                    vec![
                        mode.to_string(),
                        n.to_string(),
                        k.to_string(),
                        num(c),
                        num(p),
                        r.to_string(),
                        trials,
                    ]
                };
                let mut row;
                if cfg.exact {
                    let outcomes = if n <= EXACT_LIMIT { 3u64.pow(n as u32).to_string() } else { blank() };
                    row = head("exact", outcomes);
                    match exact_lemma3(&inst, p, r) {
                        Ok(e) => {
                            if !e.equal() && mismatch.is_none() {
                                mismatch = Some(serde_json::to_string(&e).expect("serialisable"));
                            }
                            row.push("ok".into());
                            row.extend((0..6).map(|_| blank()));
                            row.extend([num(e.mean_wt), blank(), num(e.mean_ws), blank(), blank(), blank()]);
                            row.push(e.equal().to_string());
                        }
                        Err(e) if cell_error(&e) => {
                            row.push(format!("error: {e}"));
                            row.extend((0..13).map(|_| blank()));
                        }
                        Err(e) => return Err(e.into()),
                    }
                } else {
                    row = head("monte-carlo", cfg.trials.to_string());
                    match estimate_lemmas(&inst, p, r, cfg.trials, cfg.seed, c) {
                        Ok(e) => {
                            row.push("ok".into());
                            for t in [&e.tail_t, &e.tail_splus] {
                                row.extend([num(t.freq), num(t.ci_lo), num(t.ci_hi)]);
                            }
                            for s in [&e.mean_wt, &e.mean_ws, &e.mean_wsplus] {
                                row.extend([num(s.mean), num(s.se)]);
                            }
                            row.push(blank());
                        }
                        Err(e) if cell_error(&e) => {
                            row.push(format!("error: {e}"));
                            row.extend((0..13).map(|_| blank()));
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
                table.push(row);
            }
        }
    }
    println!("{}", table.render());
    write_table(cfg, "lemmas", &table)?;
    if let Some(m) = mismatch {
        return Err(CliError::Counterexample(format!("exact expectations differ: {m}")));
    }
    Ok(table)
}

pub fn cover(cfg: &RunConfig) -> CliResult<serde_json::Value> {
    let (_, matroid) = built(cfg)?;
    let n = matroid.len();
    let set = cfg.set.clone().unwrap_or_else(|| (0..n).collect());
    let cover = covering_number(&matroid, &set)?;
    if let Err(e) = cover.certificate.validate(&cover.union) {
        return Err(CliError::Counterexample(format!("certificate invalid: {e}")));
    }
    let parts = cover.certificate.parts().to_vec();
    println!("covering number: {}", cover.value);
    for (i, part) in parts.iter().enumerate() {
        match &*matroid {
            Matroid::Graphic(g) => {
                let edges: Vec<_> = part.iter().map(|&e| g.edges()[e]).collect();
                println!("part {}: {:?} edges {:?}", i + 1, part, edges);
            }
            _ => println!("part {}: {:?}", i + 1, part),
        }
    }
    let mut report = json!({
        "n": n,
        "set": set,
        "covering_number": cover.value,
        "parts": parts,
    });
    if !set.is_empty() && n <= ENUMERATION_LIMIT {
        let nw = nash_williams_value(&matroid, &set)?;
        let flat = flats_cover_bound(&matroid, &set)?;
        println!(
            "densest subset: {:?} with rank {} (bound {})",
            nw.subset, nw.rank, nw.value
        );
        println!("flat: {:?} with rank {} (bound {})", flat.flat, flat.rank, flat.value);
        report["nash_williams"] = json!(nw);
        report["flat"] = json!(flat);
        if nw.value != cover.value || flat.value != cover.value {
            return Err(CliError::Counterexample(report.to_string()));
        }
    }
    write_json(cfg, "cover", &report)?;
    Ok(report)
}

pub fn bench(cfg: &RunConfig) -> CliResult<Table> {
    require_k(cfg)?;
    let (ground, matroid) = built(cfg)?;
    let opts = options(cfg);
    let mut table = Table::new(&BENCH_COLUMNS);
    for &k in &cfg.k {
        let inst = Instance::new(ground.clone(), matroid.clone(), k)?;
        let start = Instant::now();
        inst.opt();
        let secs = start.elapsed().as_secs_f64();
        table.push(vec![
            "offline-opt".into(),
            inst.n().to_string(),
            k.to_string(),
            "1".into(),
            format!("{secs:.4}"),
            format!("{:.3}", secs * 1e3),
            String::new(),
        ]);
        for &a in &cfg.algos {
            let start = Instant::now();
            let out = run_trials(&inst, &[a], cfg.trials, cfg.seed, &opts)?;
            let secs = start.elapsed().as_secs_f64();
            table.push(vec![
                a.to_string(),
                inst.n().to_string(),
                k.to_string(),
                cfg.trials.to_string(),
                format!("{secs:.4}"),
                format!("{:.3}", secs * 1e3 / cfg.trials as f64),
                num(out.aggregates[0].mean_ratio),
            ]);
        }
    }
    println!("{}", table.render());
    write_table(cfg, "bench", &table)?;
    Ok(table)
}
