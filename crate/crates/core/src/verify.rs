//! Exhaustive cross-checks between the fast oracles and their brute-force
//! characterisations, reporting the first counterexample of each kind.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::harness::instance::{generate_weights, WeightGenerator};
use crate::matroid::{bits, AxiomViolation, Matroid};
use crate::rng::{self, Stream};
use crate::union::{
    covering_number, flats_cover_bound, nash_williams_value, union_rank_min_formula, UnionOracle,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Counterexample {
    Axioms {
        violation: AxiomViolation,
    },
    Covering {
        set: Vec<usize>,
        covering_number: usize,
        nash_williams: usize,
        flats: usize,
    },
    Certificate {
        set: Vec<usize>,
        parts: Vec<Vec<usize>>,
        reason: String,
    },
    UnionRank {
        k: usize,
        set: Vec<usize>,
        rank: usize,
        min_formula: usize,
    },
    FoldMembership {
        k: usize,
        set: Vec<usize>,
        covering_number: usize,
        independent: bool,
    },
    Improves {
        k: usize,
        set: Vec<usize>,
        element: usize,
        improves: bool,
        in_opt: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub check: &'static str,
    pub subject: String,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Check {
    fn new(check: &'static str, subject: &str) -> Self {
        Self {
            check,
            subject: subject.to_string(),
            cases: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, bad: Option<Counterexample>) {
        self.cases += 1;
        if self.counterexample.is_none() {
            self.counterexample = bad;
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Checks a covering number against both exhaustive characterisations and
/// validates its certificate.
fn covering_case(m: &Arc<Matroid>, set: &[usize]) -> Result<Option<Counterexample>> {
    let cover = covering_number(m, set)?;
    if let Err(e) = cover.certificate.validate(&cover.union) {
        return Ok(Some(Counterexample::Certificate {
            set: set.to_vec(),
            parts: cover.certificate.parts().to_vec(),
            reason: e.to_string(),
        }));
    }
    if cover.certificate.covered() != set {
        return Ok(Some(Counterexample::Certificate {
            set: set.to_vec(),
            parts: cover.certificate.parts().to_vec(),
            reason: "certificate does not cover the set".into(),
        }));
    }
    let nw = nash_williams_value(m, set)?.value;
    let fl = flats_cover_bound(m, set)?.value;
    Ok((cover.value != nw || nw != fl).then(|| Counterexample::Covering {
        set: set.to_vec(),
        covering_number: cover.value,
        nash_williams: nw,
        flats: fl,
    }))
}

/// Every check over every subset, for `n <= 8`. Stops after the axiom check
/// when the oracle is not a matroid, since the rest assume one.
pub fn verify_exhaustive(
    subject: &str,
    matroid: &Arc<Matroid>,
    ground: &GroundSet,
    folds: &[usize],
) -> Result<Vec<Check>> {
    let n = matroid.len();
    if n > bits::AXIOM_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: bits::AXIOM_LIMIT,
        });
    }
    if ground.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: ground.len(),
        });
    }
    let mut axioms = Check::new("axioms", subject);
    let report = matroid.check_axioms()?;
    axioms.cases = report.independent_sets as u64;
    axioms.counterexample = report
        .violation
        .map(|violation| Counterexample::Axioms { violation });
    if !axioms.passed() {
        return Ok(vec![axioms]);
    }

    let subsets: Vec<Vec<usize>> = (0..1u64 << n).map(bits::members).collect();
    let mut covering = Check::new("covering_three_way", subject);
    for set in subsets.iter().filter(|s| !s.is_empty()) {
        covering.record(covering_case(matroid, set)?);
    }

    let mut union_rank = Check::new("union_rank_min_formula", subject);
    let mut fold = Check::new("fold_membership", subject);
    let mut improves = Check::new("improves_definition", subject);
    let phis: Vec<usize> = subsets
        .iter()
        .map(|s| covering_number(matroid, s).map(|c| c.value))
        .collect::<Result<_>>()?;
    for k in std::iter::once(1).chain(folds.iter().copied()) {
        let u = UnionOracle::copies(matroid.clone(), k)?;
        for (set, &phi) in subsets.iter().zip(&phis) {
            let rank = u.rank(set)?;
            let min_formula = union_rank_min_formula(&u, set)?;
            union_rank.record((rank != min_formula).then(|| Counterexample::UnionRank {
                k,
                set: set.clone(),
                rank,
                min_formula,
            }));
            let independent = u.is_independent(set)?.is_independent();
            fold.record(((phi <= k) != independent).then(|| Counterexample::FoldMembership {
                k,
                set: set.clone(),
                covering_number: phi,
                independent,
            }));
            for i in (0..n).filter(|i| !set.contains(i)) {
                let mut with = set.clone();
                with.push(i);
                let in_opt = u.max_weight_basis(ground, &with)?.contains(i);
                let fast = if k == 1 {
                    matroid.improves(ground, set, i)?
                } else {
                    u.improves(ground, set, i)?
                };
                improves.record((fast != in_opt).then(|| Counterexample::Improves {
                    k,
                    set: set.clone(),
                    element: i,
                    improves: fast,
                    in_opt,
                }));
            }
        }
    }
    Ok(vec![axioms, covering, union_rank, fold, improves])
}

/// Three-way covering equality on `samples` random nonempty subsets (n <= 16).
pub fn verify_sampled(
    subject: &str,
    matroid: &Arc<Matroid>,
    samples: usize,
    rng: &mut Stream,
) -> Result<Check> {
    let n = matroid.len();
    if n > bits::ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: bits::ENUMERATION_LIMIT,
        });
    }
    let mut check = Check::new("covering_three_way_sampled", subject);
    if n == 0 {
        return Ok(check);
    }
    for _ in 0..samples {
        let mask = rng.gen_range(1..1u64 << n);
        check.record(covering_case(matroid, &bits::members(mask))?);
    }
    Ok(check)
}

fn random_graph(rng: &mut Stream, vertices: usize, edges: usize) -> Result<Matroid> {
    let list = (0..edges)
        .map(|_| {
            let u = rng.gen_range(0..vertices);
            let v = (u + rng.gen_range(1..vertices)) % vertices;
            (u, v)
        })
        .collect();
    Matroid::graphic(vertices, list)
}

fn random_linear(rng: &mut Stream, prime: u32, rows: usize, n: usize) -> Result<Matroid> {
    let columns = (0..n)
        .map(|_| loop {
            let c: Vec<i64> = (0..rows).map(|_| rng.gen_range(0..prime as i64)).collect();
            if c.iter().any(|&x| x != 0) {
                break c;
            }
        })
        .collect();
    Matroid::linear(prime, columns)
}

/// Built-in matroids of every kind with `n <= 8`, deterministic in `seed`.
pub fn builtin_small(seed: u64) -> Result<Vec<(String, Matroid)>> {
    let mut rng = rng::stream(seed, 1);
    let mut out = vec![
        ("uniform(5,2)".to_string(), Matroid::uniform(5, 2)?),
        ("uniform(6,1)".to_string(), Matroid::uniform(6, 1)?),
        (
            "partition[3,2,3;1,2,1]".to_string(),
            Matroid::partition_from_sizes(&[3, 2, 3], vec![1, 2, 1])?,
        ),
        ("graphic K4".to_string(), Matroid::complete_graph(4)),
        (
            "graphic doubled triangle".to_string(),
            Matroid::graphic(3, vec![(0, 1), (1, 2), (0, 2), (1, 0)])?,
        ),
        ("graphic random 5v8e".to_string(), random_graph(&mut rng, 5, 8)?),
        (
            "linear GF(2) Fano".to_string(),
            Matroid::linear(
                2,
                vec![
                    vec![1, 0, 0],
                    vec![0, 1, 0],
                    vec![0, 0, 1],
                    vec![1, 1, 0],
                    vec![1, 0, 1],
                    vec![0, 1, 1],
                    vec![1, 1, 1],
                ],
            )?,
        ),
        ("linear GF(3) random 3x8".to_string(), random_linear(&mut rng, 3, 3, 8)?),
    ];
    out.push((
        "explicit from GF(5) random 3x7".to_string(),
        random_linear(&mut rng, 5, 3, 7)?.to_explicit()?,
    ));
    Ok(out)
}

/// Default suite: exhaustive checks on [`builtin_small`] with folds 2 and 3,
/// plus `samples` sampled covering checks on random matroids with 9 to 12 elements.
pub fn default_suite(seed: u64, samples: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for (i, (name, m)) in builtin_small(seed)?.into_iter().enumerate() {
        let m = Arc::new(m);
        let mut wrng = rng::stream(seed, 100 + i as u64);
        let ground = generate_weights(WeightGenerator::Uniform, m.len(), &mut wrng)?;
        report.checks.extend(verify_exhaustive(&name, &m, &ground, &[2, 3])?);
    }
    let mut rng = rng::stream(seed, 2);
    let pool = vec![
        ("graphic random 6v12e", random_graph(&mut rng, 6, 12)?),
        ("graphic K5", Matroid::complete_graph(5)),
        ("linear GF(2) random 4x11", random_linear(&mut rng, 2, 4, 11)?),
        ("linear GF(3) random 3x12", random_linear(&mut rng, 3, 3, 12)?),
        ("partition[4,4,3;2,1,1]", Matroid::partition_from_sizes(&[4, 4, 3], vec![2, 1, 1])?),
        ("uniform(9,3)", Matroid::uniform(9, 3)?),
    ];
    let per = samples.div_ceil(pool.len());
    for (name, m) in pool {
        report.checks.push(verify_sampled(name, &Arc::new(m), per, &mut rng)?);
    }
    Ok(report)
}
