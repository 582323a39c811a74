//! Estimators for the sample/threshold sets used in the expected-utility
//! argument.
//!
//! Each element gets `X ~ Ber(2p)` and `Y ~ Ber(1/2)`; `S = {X = 1, Y = 1}`
//! is the sample and `T = {X = 1, Y = 0}` the fresh arrivals. `T*` is the part
//! of `T` improving `S` w.r.t. `M^r`, `S* = OPT(S, M^r)` and
//! `S+ = S ∩ OPT(N, M^k)`.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::stats::{clopper_pearson, Summary};
use crate::error::{Error, Result};
use crate::rng;
use crate::secretary::{epsilon, Instance};
use crate::union::{covering_number, UnionOracle};

pub const CI_LEVEL: f64 = 0.95;
const LEMMA_TAG: u64 = 0x6c65_6d6d;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tail {
    pub threshold: f64,
    pub hits: u64,
    pub freq: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

impl Tail {
    fn new(threshold: f64, hits: u64, trials: u64) -> Self {
        let (ci_lo, ci_hi) = clopper_pearson(hits, trials, CI_LEVEL);
        Self {
            threshold,
            hits,
            freq: hits as f64 / trials as f64,
            ci_lo,
            ci_hi,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaEstimate {
    pub n: usize,
    pub k: usize,
    pub c: f64,
    pub p: f64,
    pub r: usize,
    pub trials: usize,
    /// Event φ(T*) >= (1 + ε(r)) r.
    pub tail_t: Tail,
    /// Event φ(S+) >= (1 + ε(pk)) pk.
    pub tail_splus: Tail,
    pub mean_wt: Summary,
    pub mean_ws: Summary,
    pub mean_wsplus: Summary,
    /// Standard error of the per-trial difference w(T*) − w(S*).
    pub se_diff: f64,
    pub phi_t_max: usize,
    pub phi_splus_max: usize,
}

impl LemmaEstimate {
    /// `sqrt(se_T² + se_S²)`.
    pub fn combined_se(&self) -> f64 {
        self.mean_wt.se.hypot(self.mean_ws.se)
    }
}

/// Checks `p ∈ [ε(k), 1/2]` and `r >= (1 + ε(pk)) pk`; returns the two tail thresholds.
pub fn lemma_thresholds(n: usize, k: usize, p: f64, r: usize, c: f64) -> Result<(f64, f64)> {
    let eps_k = epsilon(c, n, k as f64);
    if !(p >= eps_k && p <= 0.5) {
        return Err(Error::Precondition(format!(
            "p = {p} must lie in [ε(k), 1/2] = [{eps_k:.6}, 0.5]"
        )));
    }
    let pk = p * k as f64;
    let need = (1.0 + epsilon(c, n, pk)) * pk;
    if (r as f64) < need {
        return Err(Error::Precondition(format!(
            "r = {r} must be at least (1 + ε(pk)) pk = {need:.3}"
        )));
    }
    Ok(((1.0 + epsilon(c, n, r as f64)) * r as f64, need))
}

struct Draw {
    wt: f64,
    ws: f64,
    wsplus: f64,
    phi_t: usize,
    phi_splus: usize,
}

/// Monte Carlo estimate over `trials` independent draws of (X, Y).
pub fn estimate_lemmas(
    instance: &Instance,
    p: f64,
    r: usize,
    trials: usize,
    seed: u64,
    c: f64,
) -> Result<LemmaEstimate> {
    let (n, k) = (instance.n(), instance.k());
    let (t_threshold, s_threshold) = lemma_thresholds(n, k, p, r, c)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let ground = instance.ground();
    let union = UnionOracle::copies(instance.matroid().clone(), r)?;
    let mut in_opt = vec![false; n];
    for &e in &instance.opt().set {
        in_opt[e] = true;
    }
    let draws: Vec<Result<Draw>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng::stream(rng::derive(seed, LEMMA_TAG), t);
            let (mut s, mut tt) = (Vec::new(), Vec::new());
            for e in 0..n {
                let x = rng.gen_bool(2.0 * p);
                let y = rng.gen_bool(0.5);
                if x && y {
                    s.push(e);
                } else if x {
                    tt.push(e);
                }
            }
            let flags = crate::secretary::improving(ground, Some(&union), &s, &tt);
            let t_star: Vec<usize> = tt.iter().zip(flags).filter(|p| p.1).map(|p| *p.0).collect();
            let s_star = union.max_weight_basis(ground, &s)?.covered();
            let s_plus: Vec<usize> = s.iter().copied().filter(|&e| in_opt[e]).collect();
            Ok(Draw {
                wt: ground.total(&t_star),
                ws: ground.total(&s_star),
                wsplus: ground.total(&s_plus),
                phi_t: covering_number(instance.matroid(), &t_star)?.value,
                phi_splus: covering_number(instance.matroid(), &s_plus)?.value,
            })
        })
        .collect();
    let draws: Vec<Draw> = draws.into_iter().collect::<Result<_>>()?;
    let col = |f: fn(&Draw) -> f64| draws.iter().map(f).collect::<Vec<f64>>();
    let hits_t = draws.iter().filter(|d| d.phi_t as f64 >= t_threshold).count() as u64;
    let hits_s = draws.iter().filter(|d| d.phi_splus as f64 >= s_threshold).count() as u64;
    Ok(LemmaEstimate {
        n,
        k,
        c,
        p,
        r,
        trials,
        tail_t: Tail::new(t_threshold, hits_t, trials as u64),
        tail_splus: Tail::new(s_threshold, hits_s, trials as u64),
        mean_wt: Summary::of(&col(|d| d.wt)),
        mean_ws: Summary::of(&col(|d| d.ws)),
        mean_wsplus: Summary::of(&col(|d| d.wsplus)),
        se_diff: Summary::of(&col(|d| d.wt - d.ws)).se,
        phi_t_max: draws.iter().map(|d| d.phi_t).max().unwrap_or(0),
        phi_splus_max: draws.iter().map(|d| d.phi_splus).max().unwrap_or(0),
    })
}

/// Exact expectations of w(T*) and w(S*), scaled by `2^(jn)` for `p = 2^-j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactLemma {
    pub n: usize,
    pub p: f64,
    pub r: usize,
    pub numerator_wt: u128,
    pub numerator_ws: u128,
    pub denominator: u128,
    pub mean_wt: f64,
    pub mean_ws: f64,
}

impl ExactLemma {
    pub fn equal(&self) -> bool {
        self.numerator_wt == self.numerator_ws
    }
}

pub const EXACT_LIMIT: usize = 14;

/// Enumerates every outcome of (X, Y) up to the symmetry that `Y` does not
/// matter when `X = 0`: each element is outside, in `S`, or in `T`, giving
/// `3^n` outcomes. An outcome with `a` elements outside has probability
/// `(1 − 2p)^a p^(n − a)`, which for `p = 2^-j` equals `(2^j − 2)^a / 2^(jn)`,
/// so integer weights give exact sums.
pub fn exact_lemma3(instance: &Instance, p: f64, r: usize) -> Result<ExactLemma> {
    let n = instance.n();
    if n > EXACT_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: EXACT_LIMIT,
        });
    }
    let j = (1..=3)
        .find(|&j| p == 0.5f64.powi(j))
        .ok_or_else(|| Error::InvalidParameter(format!("exact mode needs p in {{1/2, 1/4, 1/8}}, got {p}")))?
        as u32;
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let ground = instance.ground();
    let int_weights: Vec<u128> = ground
        .weights()
        .iter()
        .map(|&w| {
            if w.fract() == 0.0 && w < (1u64 << 32) as f64 {
                Ok(w as u128)
            } else {
                Err(Error::InvalidParameter(format!(
                    "exact mode needs integer weights below 2^32, got {w}"
                )))
            }
        })
        .collect::<Result<_>>()?;
    let union = UnionOracle::copies(instance.matroid().clone(), r)?;
    let base = (1u128 << j) - 2;
    let outcomes = 3usize.pow(n as u32);
    let (mut num_t, mut num_s) = (0u128, 0u128);
    let mut digits = vec![0u8; n];
    for _ in 0..outcomes {
        let outside = digits.iter().filter(|&&d| d == 0).count() as u32;
        let factor = base.pow(outside);
        if factor != 0 {
            let s: Vec<usize> = (0..n).filter(|&e| digits[e] == 1).collect();
            let t: Vec<usize> = (0..n).filter(|&e| digits[e] == 2).collect();
            let flags = crate::secretary::improving(ground, Some(&union), &s, &t);
            let wt: u128 = t.iter().zip(flags).filter(|p| p.1).map(|p| int_weights[*p.0]).sum();
            let ws: u128 = union
                .max_weight_basis(ground, &s)?
                .covered()
                .iter()
                .map(|&e| int_weights[e])
                .sum();
            num_t += factor * wt;
            num_s += factor * ws;
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < 3 {
                break;
            }
            *d = 0;
        }
    }
    let denominator = 1u128 << (j as usize * n);
    Ok(ExactLemma {
        n,
        p,
        r,
        numerator_wt: num_t,
        numerator_ws: num_s,
        denominator,
        mean_wt: num_t as f64 / denominator as f64,
        mean_ws: num_s as f64 / denominator as f64,
    })
}
