//! Report assembly and rendering. JSON reports serialize through
//! `serde_json::Value`, whose object maps are ordered, so repeated runs with
//! identical inputs produce byte-identical documents. Floating-point
//! measurements ride as decimal strings with a fixed 17-significant-digit
//! rendering.

use hartogs_core::basis::BasisElement;
use hartogs_core::classify::{Classification, Verdict};
use hartogs_core::numtheory::{CaseTag, FractionalDecision, FractionalTriple};
use serde_json::{json, Map, Value};

pub fn render_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct VerifyCheck {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub agree: bool,
}

pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub config_echo: Value,
    pub classification: Option<Classification>,
    pub census: Option<Vec<(u64, u64)>>,
    pub elements: Option<Vec<BasisElement>>,
    pub witness: Option<(FractionalTriple, FractionalDecision)>,
    pub verification: Option<Vec<VerifyCheck>>,
}

impl RunReport {
    pub fn disagreements(&self) -> usize {
        self.verification
            .as_ref()
            .map_or(0, |checks| checks.iter().filter(|c| !c.agree).count())
    }

    pub fn failure(&self) -> bool {
        self.disagreements() > 0
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("command".into(), json!(self.command));
        map.insert("config".into(), self.config_echo.clone());
        map.insert("failure".into(), json!(self.failure()));
        map.insert("seed".into(), json!(self.seed));
        map.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));

        if let Some(c) = &self.classification {
            map.insert(
                "classification".into(),
                json!({
                    "verdict": verdict_str(c.verdict),
                    "rule": format!("{:?}", c.rule),
                    "trace": c.trace.iter().map(|t| json!({
                        "predicate": t.predicate,
                        "inputs": t.inputs,
                        "result": t.result,
                    })).collect::<Vec<_>>(),
                }),
            );
        }
        if let Some(census) = &self.census {
            map.insert(
                "census".into(),
                Value::Array(
                    census
                        .iter()
                        .map(|(k, d)| json!({"k": k, "dimension": d}))
                        .collect(),
                ),
            );
        }
        if let Some(elements) = &self.elements {
            map.insert(
                "elements".into(),
                Value::Array(elements.iter().map(element_json).collect()),
            );
        }
        if let Some((triple, decision)) = &self.witness {
            map.insert(
                "witness".into(),
                json!({
                    "triple": triple.alphas().iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                    "verdict": match decision.verdict {
                        hartogs_core::numtheory::Verdict::AlwaysAtMostOne => "always_at_most_one",
                        hartogs_core::numtheory::Verdict::InfinitelyManyExceedOne =>
                            "infinitely_many_exceed_one",
                    },
                    "case": case_str(decision.case_tag),
                    "witnesses": decision.witnesses,
                }),
            );
        }
        if let Some(checks) = &self.verification {
            map.insert(
                "verification".into(),
                json!({
                    "checks": checks.iter().map(|c| json!({
                        "name": c.name,
                        "expected": c.expected,
                        "observed": c.observed,
                        "agree": c.agree,
                    })).collect::<Vec<_>>(),
                    "disagreements": self.disagreements(),
                }),
            );
        }
        Value::Object(map)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "hartogs {} — {} (seed {})\n",
            env!("CARGO_PKG_VERSION"),
            self.command,
            self.seed
        ));
        if let Some(c) = &self.classification {
            out.push_str(&format!(
                "classification: {} (rule {:?})\n",
                verdict_str(c.verdict),
                c.rule
            ));
            for t in &c.trace {
                out.push_str(&format!("  {} {} -> {}\n", t.predicate, t.inputs, t.result));
            }
        }
        if let Some(census) = &self.census {
            out.push_str("census (k, dimension):\n");
            for (k, d) in census {
                out.push_str(&format!("  {k:>6} {d}\n"));
            }
        }
        if let Some(elements) = &self.elements {
            out.push_str(&format!("basis elements ({}):\n", elements.len()));
            for e in elements {
                out.push_str(&format!(
                    "  k={} n={:?} degree={} f = {}\n",
                    e.level,
                    e.multi_index,
                    e.degree,
                    e.polynomial.render()
                ));
            }
        }
        if let Some((triple, decision)) = &self.witness {
            out.push_str(&format!(
                "fractional triple [{}] -> {:?} ({})\n",
                triple
                    .alphas()
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
                decision.verdict,
                case_str(decision.case_tag),
            ));
            if !decision.witnesses.is_empty() {
                out.push_str(&format!("witnesses: {:?}\n", decision.witnesses));
            }
        }
        if let Some(checks) = &self.verification {
            out.push_str(&format!(
                "verification: {} checks, {} disagreements\n",
                checks.len(),
                self.disagreements()
            ));
            for c in checks.iter().filter(|c| !c.agree) {
                out.push_str(&format!(
                    "  DISAGREE {}: expected {}, observed {}\n",
                    c.name, c.expected, c.observed
                ));
            }
        }
        if self.failure() {
            out.push_str("FAILURE: oracle disagreement\n");
        }
        out
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Zero => "zero",
        Verdict::Infinite => "infinite",
        Verdict::Unknown => "unknown",
    }
}

fn case_str(tag: CaseTag) -> &'static str {
    match tag {
        CaseTag::NegCase1 => "neg_case_1",
        CaseTag::NegCase2 => "neg_case_2",
        CaseTag::Case1 => "case_1",
        CaseTag::Case2 => "case_2",
        CaseTag::Case3 => "case_3",
        CaseTag::Case4 => "case_4",
        CaseTag::Case5 => "case_5",
        CaseTag::NumericSearch => "numeric_search",
    }
}

fn element_json(e: &BasisElement) -> Value {
    json!({
        "level": e.level,
        "multi_index": e.multi_index,
        "degree": e.degree,
        "factors": e.polynomial.atom_factors.iter().map(|(p, m)| json!({
            "point": [p.re, p.im],
            "multiplicity": m,
        })).collect::<Vec<_>>(),
        "tail_power": e.polynomial.tail_power,
        "rendered": e.polynomial.render(),
    })
}
