//! The classification engine: maps a weight config to the verdict
//! `Zero | Infinite | Unknown` through a fixed decision ladder, recording a
//! replayable trace of every predicate it evaluated.
//!
//! The dichotomy is the whole point: no config ever classifies as "finite
//! nonzero", and the verdict type admits no such value.

use crate::error::Result;
use crate::numtheory::condition_cond;
use crate::value::WeightValue;
use crate::weights::{BaseKind, WeightConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Zero,
    Infinite,
    Unknown,
}

/// Which rule of the ladder fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    BoundedBase,
    NonpolarComplement,
    OpenProblem,
    MainTheoremMu,
    GammaExceedsAtomSum,
    MainTheoremCond,
    MainTheoremNegative,
}

/// One evaluated predicate: name, canonical input rendering, result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub predicate: String,
    pub inputs: String,
    pub result: String,
}

impl TraceEntry {
    fn new(predicate: &str, inputs: String, result: impl ToString) -> Self {
        TraceEntry {
            predicate: predicate.to_string(),
            inputs,
            result: result.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    pub rule: Rule,
    pub trace: Vec<TraceEntry>,
}

/// Decision ladder, first match wins:
///
/// 1. bounded base — infinite;
/// 2. nonpolar complement — infinite;
/// 3. polar complement with harmonic weight — unknown (open problem);
/// 4. whole plane with a diffuse part — infinite;
/// 5. whole plane with gamma strictly above the atom sum — infinite
///    (mass at infinity opens the degree budget at every large level);
/// 6. whole plane where the fractional condition on atom weights holds —
///    infinite;
/// 7. otherwise — zero.
pub fn classify(config: &WeightConfig) -> Result<Classification> {
    let mut trace = Vec::new();

    let base = config.base_kind();
    trace.push(TraceEntry::new(
        "base_kind",
        String::new(),
        format!("{base:?}"),
    ));
    match base {
        BaseKind::BoundedBase => {
            return Ok(Classification {
                verdict: Verdict::Infinite,
                rule: Rule::BoundedBase,
                trace,
            });
        }
        BaseKind::NonpolarComplement => {
            return Ok(Classification {
                verdict: Verdict::Infinite,
                rule: Rule::NonpolarComplement,
                trace,
            });
        }
        BaseKind::PolarComplementHarmonicCase => {
            return Ok(Classification {
                verdict: Verdict::Unknown,
                rule: Rule::OpenProblem,
                trace,
            });
        }
        BaseKind::WholePlane => {}
    }

    let mu = config.continuous_part_present();
    trace.push(TraceEntry::new("continuous_part_present", String::new(), mu));
    if mu {
        return Ok(Classification {
            verdict: Verdict::Infinite,
            rule: Rule::MainTheoremMu,
            trace,
        });
    }

    let gamma_exceeds = config.gamma_exceeds_atom_sum()?;
    trace.push(TraceEntry::new(
        "gamma_exceeds_atom_sum",
        format!(
            "gamma = {}, atom sum = {}",
            config.resolved_gamma(),
            config.atom_weight_sum()
        ),
        gamma_exceeds,
    ));
    if gamma_exceeds {
        return Ok(Classification {
            verdict: Verdict::Infinite,
            rule: Rule::GammaExceedsAtomSum,
            trace,
        });
    }

    let weights: Vec<WeightValue> = config.atoms().iter().map(|a| a.weight.clone()).collect();
    let (holds, indices) = condition_cond(&weights);
    trace.push(TraceEntry::new(
        "condition_cond",
        format!(
            "weights = [{}]",
            weights
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
        format!("{holds} (indices {indices:?})"),
    ));
    if holds {
        return Ok(Classification {
            verdict: Verdict::Infinite,
            rule: Rule::MainTheoremCond,
            trace,
        });
    }

    Ok(Classification {
        verdict: Verdict::Zero,
        rule: Rule::MainTheoremNegative,
        trace,
    })
}
