use serde::Serialize;

use super::bits::{self, AXIOM_LIMIT};
use super::Matroid;
use crate::error::{Error, Result};

/// First axiom failure found by [`Matroid::check_axioms`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    EmptySetMissing,
    /// `superset` is independent but its subset `subset` is not.
    DownwardClosure {
        subset: Vec<usize>,
        superset: Vec<usize>,
    },
    /// No element of `larger \ smaller` extends `smaller`.
    Augmentation {
        smaller: Vec<usize>,
        larger: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub n: usize,
    pub independent_sets: usize,
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl Matroid {
    /// Exhaustive check of the independence axioms over all subset pairs.
    pub fn check_axioms(&self) -> Result<AxiomReport> {
        let n = self.len();
        if n > AXIOM_LIMIT {
            return Err(Error::TooLarge {
                n,
                limit: AXIOM_LIMIT,
            });
        }
        let indep: Vec<bool> = (0..1u64 << n)
            .map(|m| self.independent_unchecked(&bits::members(m)))
            .collect();
        let report = |violation| AxiomReport {
            n,
            independent_sets: indep.iter().filter(|&&b| b).count(),
            violation,
        };
        if !indep[0] {
            return Ok(report(Some(AxiomViolation::EmptySetMissing)));
        }
        // Closure under single-element deletion implies closure under subsets.
        for t in (0..1u64 << n).filter(|&t| indep[t as usize]) {
            for e in bits::members(t) {
                let s = t & !(1 << e);
                if !indep[s as usize] {
                    return Ok(report(Some(AxiomViolation::DownwardClosure {
                        subset: bits::members(s),
                        superset: bits::members(t),
                    })));
                }
            }
        }
        let sets: Vec<u64> = (0..1u64 << n).filter(|&m| indep[m as usize]).collect();
        for &s in &sets {
            for &t in &sets {
                if s.count_ones() >= t.count_ones() {
                    continue;
                }
                let extendable = bits::members(t & !s)
                    .into_iter()
                    .any(|i| indep[(s | 1 << i) as usize]);
                if !extendable {
                    return Ok(report(Some(AxiomViolation::Augmentation {
                        smaller: bits::members(s),
                        larger: bits::members(t),
                    })));
                }
            }
        }
        Ok(report(None))
    }
}
