//! The fractional-part decision procedure.
//!
//! Everything here revolves around one question about a sorted triple
//! `1 > a1 >= a2 >= a3 >= 0`: is `{k*a1} + {k*a2} + {k*a3} <= 1` for every
//! positive integer `k`, or does the sum exceed 1 for infinitely many `k`?
//! The answer is a strict dichotomy: the "at most one" verdict holds exactly
//! when `a2 = a3 = 0` or (`a1 + a2 = 1` and `a3 = 0`), and in every other
//! case witnesses exist in abundance.
//!
//! Rational triples are decided structurally and their witnesses come from a
//! complete periodic scan (the sequence `{k*a}` has period the common
//! denominator, so a finite scan is a full decision procedure). Triples with
//! declared irrationals route through constructive search plans — odd `k`,
//! `k = l*q +- 1` progressions, and the integer-relation subcases — each
//! emitted witness re-verified by direct evaluation before it leaves the
//! module. Bounded scans that come up short raise `ScanExhausted`: the
//! dichotomy guarantees infinitude, so exhaustion flags a precision bug,
//! never absence.

mod relation;

pub use relation::{
    detect_integer_relation, detect_integer_relation_with, IntegerRelation,
    DEFAULT_RELATION_BOUND,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::value::{cmp_tolerance, WeightValue};

/// Default cap for bounded witness scans.
pub const DEFAULT_SCAN_BOUND: u64 = 100_000;

/// Relation-detection bound used internally while classifying a triple.
/// Deliberately smaller than [`DEFAULT_RELATION_BOUND`]: a missed relation
/// only reroutes witness search to a slower plan, never changes a verdict.
const INTERNAL_RELATION_BOUND: u64 = 10_000;

/// Required exceedance margin for witnesses of triples containing declared
/// irrationals.
fn witness_margin() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(9))
}

/// Exactly three fractional parts in `[0, 1)`, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalTriple {
    alphas: [WeightValue; 3],
}

impl FractionalTriple {
    pub fn new(mut alphas: [WeightValue; 3]) -> Result<Self> {
        for a in &alphas {
            let s = a.surrogate();
            if s.is_negative() || s >= &BigRational::one() {
                return Err(Error::InvalidValue(format!(
                    "triple entry {a} is outside [0, 1)"
                )));
            }
        }
        alphas.sort_by(|x, y| y.surrogate().cmp(x.surrogate()));
        Ok(FractionalTriple { alphas })
    }

    /// Fractional parts of the (up to three) largest non-integral weights in
    /// the list, padded with zeros: the canonical triple a weight config
    /// feeds to the decision procedure.
    pub fn from_weights(weights: &[WeightValue]) -> Result<Self> {
        let mut fracts: Vec<WeightValue> = weights
            .iter()
            .filter(|w| !w.is_near_integer())
            .map(|w| w.fract())
            .collect();
        fracts.sort_by(|x, y| y.surrogate().cmp(x.surrogate()));
        fracts.truncate(3);
        while fracts.len() < 3 {
            fracts.push(WeightValue::zero());
        }
        FractionalTriple::new([fracts[0].clone(), fracts[1].clone(), fracts[2].clone()])
    }

    pub fn alphas(&self) -> &[WeightValue; 3] {
        &self.alphas
    }

    fn any_irrational(&self) -> bool {
        self.alphas.iter().any(|a| a.is_irrational())
    }

    /// Entries with near-integral values normalised to exact zero (the
    /// declared digits cannot distinguish them from integers), re-sorted.
    fn effective(&self) -> [WeightValue; 3] {
        let mut e: Vec<WeightValue> = self
            .alphas
            .iter()
            .map(|a| {
                if a.is_near_integer() {
                    WeightValue::zero()
                } else {
                    a.clone()
                }
            })
            .collect();
        e.sort_by(|x, y| y.surrogate().cmp(x.surrogate()));
        [e[0].clone(), e[1].clone(), e[2].clone()]
    }

    /// `sum_j {k * a_j}`, exactly on the surrogates.
    pub fn fractional_sum(&self, k: u64) -> BigRational {
        let k = BigRational::from_integer(BigInt::from(k));
        self.alphas
            .iter()
            .map(|a| {
                let s = a.surrogate() * &k;
                &s - s.floor()
            })
            .sum()
    }

    /// Does `k` witness the exceedance, with the margin required for
    /// irrational-containing triples?
    pub fn is_witness(&self, k: u64) -> bool {
        let sum = self.fractional_sum(k);
        if self.any_irrational() {
            sum > BigRational::one() + witness_margin()
        } else {
            sum > BigRational::one()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    AlwaysAtMostOne,
    InfinitelyManyExceedOne,
}

/// Which branch of the case analysis produced the decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// Negative condition: at most one nonzero fractional part.
    NegCase1,
    /// Negative condition: two parts summing to 1, third zero.
    NegCase2,
    /// All three parts equal 1/2: every odd k works.
    Case1,
    /// A rational pair with non-integral sum: periodic progressions.
    Case2,
    /// Irrational plus rational p/q: k = l*q + 1 with {k*a} > 1 - p/q.
    Case3,
    /// Two irrationals with no detected integer relation: density search.
    Case4,
    /// Two irrationals with a detected relation p*a1 + q*a2 = r.
    Case5,
    /// Generic verified scan (fallback and the p = -q relation edge).
    NumericSearch,
}

/// The decision together with verified witnesses.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalDecision {
    pub verdict: Verdict,
    pub case_tag: CaseTag,
    pub witnesses: Vec<u64>,
}

impl FractionalDecision {
    fn verified(
        triple: &FractionalTriple,
        verdict: Verdict,
        case_tag: CaseTag,
        witnesses: Vec<u64>,
    ) -> Result<Self> {
        match verdict {
            Verdict::AlwaysAtMostOne => {
                if !witnesses.is_empty() {
                    return Err(Error::InvalidValue(
                        "negative verdict cannot carry witnesses".into(),
                    ));
                }
            }
            Verdict::InfinitelyManyExceedOne => {
                for pair in witnesses.windows(2) {
                    if pair[0] >= pair[1] {
                        return Err(Error::InvalidValue(
                            "witnesses must be strictly increasing".into(),
                        ));
                    }
                }
                for &k in &witnesses {
                    if !triple.is_witness(k) {
                        return Err(Error::InvalidValue(format!(
                            "witness {k} fails re-verification"
                        )));
                    }
                }
            }
        }
        Ok(FractionalDecision {
            verdict,
            case_tag,
            witnesses,
        })
    }
}

/// The combinatorial trigger for infinite dimensionality: two non-integral
/// weights whose sum is non-integral, or (the all-halves case) three whose
/// total is non-integral. Returns the witnessing indices into `weights`.
///
/// Total by construction: with `m` non-integral weights, the condition holds
/// iff `m >= 3`, or `m = 2` and the two fractional parts do not sum to an
/// integer.
pub fn condition_cond(weights: &[WeightValue]) -> (bool, Vec<usize>) {
    let frac_indices: Vec<usize> = (0..weights.len())
        .filter(|&i| !weights[i].is_near_integer())
        .collect();
    if frac_indices.len() < 2 {
        return (false, Vec::new());
    }
    for (pos, &i) in frac_indices.iter().enumerate() {
        for &j in &frac_indices[pos + 1..] {
            let sum = weights[i].fract().add(&weights[j].fract());
            if !sum.is_near_integer() {
                return (true, vec![i, j]);
            }
        }
    }
    if frac_indices.len() >= 3 {
        // Pairwise-integral sums force every part to 1/2; the triple works.
        return (true, frac_indices[..3].to_vec());
    }
    (false, Vec::new())
}

/// Decides the triple with the default scan bound.
pub fn decide_fractional(triple: &FractionalTriple) -> Result<FractionalDecision> {
    decide_fractional_with(triple, DEFAULT_SCAN_BOUND)
}

/// Decides the triple: the negative conditions are checked structurally and
/// exactly; every other triple gets the infinite verdict with at least ten
/// verified witnesses from the case-specific search plan.
pub fn decide_fractional_with(
    triple: &FractionalTriple,
    k_scan_bound: u64,
) -> Result<FractionalDecision> {
    let effective = triple.effective();
    if let Some(tag) = negative_case(&effective) {
        return FractionalDecision::verified(triple, Verdict::AlwaysAtMostOne, tag, Vec::new());
    }
    let plan = build_plan(&effective, k_scan_bound);
    let witnesses = collect_witnesses(triple, &plan, 10, k_scan_bound)?;
    FractionalDecision::verified(
        triple,
        Verdict::InfinitelyManyExceedOne,
        plan.tag,
        witnesses,
    )
}

/// Streams `count` verified witnesses for a triple already known to exceed.
pub fn witness_stream(triple: &FractionalTriple, count: usize) -> Result<Vec<u64>> {
    witness_stream_with(triple, count, DEFAULT_SCAN_BOUND)
}

pub fn witness_stream_with(
    triple: &FractionalTriple,
    count: usize,
    k_scan_bound: u64,
) -> Result<Vec<u64>> {
    let effective = triple.effective();
    if negative_case(&effective).is_some() {
        return Err(Error::PreconditionViolated(
            "witness_stream requires the infinite verdict".into(),
        ));
    }
    let plan = build_plan(&effective, k_scan_bound);
    collect_witnesses(triple, &plan, count, k_scan_bound)
}

/// The two exceptional hypotheses under which the sum never exceeds 1.
fn negative_case(effective: &[WeightValue; 3]) -> Option<CaseTag> {
    let zero2 = effective[1].is_zero();
    let zero3 = effective[2].is_zero();
    if zero2 && zero3 {
        return Some(CaseTag::NegCase1);
    }
    if zero3 {
        let sum = effective[0].add(&effective[1]);
        let is_one = if sum.is_rational() {
            sum.surrogate() == &BigRational::one()
        } else {
            (sum.surrogate() - BigRational::one()).abs() < cmp_tolerance()
        };
        if is_one {
            return Some(CaseTag::NegCase2);
        }
    }
    None
}

/// A witness-search plan: a case tag plus a candidate generator.
struct Plan {
    tag: CaseTag,
    kind: PlanKind,
}

enum PlanKind {
    /// Every odd k.
    OddK,
    /// Complete periodic scan for an all-rational triple: candidates are
    /// every k (membership is decided exactly and cheaply).
    RationalScan,
    /// Residue classes modulo `q` found from an exact pair scan; third
    /// entry only adds to the sum.
    PairClasses { q: u64, residues: Vec<u64> },
    /// k = l*q + 1 with {k*x} > threshold (irrational x, rational p/q).
    Kronecker1 { q: u64, x: f64, threshold: f64 },
    /// {k*x1} > 1/2 and {k*x2} > 1/2.
    DensityBox { x1: f64, x2: f64 },
    /// k = step*l, keep l with {l*x} in (lo, hi).
    Progression { step: u64, x: f64, lo: f64, hi: f64 },
    /// k = step*l + 1, keep k with {k*x} in (lo, hi).
    ProgressionPlusOne { step: u64, x: f64, lo: f64, hi: f64 },
    /// Plain ascending scan with direct evaluation.
    Generic,
}

fn build_plan(effective: &[WeightValue; 3], bound: u64) -> Plan {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let all_rational = effective.iter().all(|a| a.is_rational());
    if all_rational {
        if effective.iter().all(|a| a.surrogate() == &half) {
            return Plan {
                tag: CaseTag::Case1,
                kind: PlanKind::OddK,
            };
        }
        return Plan {
            tag: CaseTag::Case2,
            kind: PlanKind::RationalScan,
        };
    }

    // Pick a pair of nonzero entries with non-integral sum, preferring the
    // most exact combination available.
    let nonzero: Vec<&WeightValue> = effective.iter().filter(|a| !a.is_zero()).collect();
    let mut best: Option<(usize, &WeightValue, &WeightValue)> = None;
    for i in 0..nonzero.len() {
        for j in (i + 1)..nonzero.len() {
            let (a, b) = (nonzero[i], nonzero[j]);
            if a.add(b).is_near_integer() {
                continue;
            }
            let rank = match (a.is_rational(), b.is_rational()) {
                (true, true) => 0,
                (true, false) | (false, true) => 1,
                (false, false) => 2,
            };
            if best.map_or(true, |(r, _, _)| rank < r) {
                best = Some((rank, a, b));
            }
        }
    }
    let Some((rank, a, b)) = best else {
        return Plan {
            tag: CaseTag::NumericSearch,
            kind: PlanKind::Generic,
        };
    };

    match rank {
        0 => {
            if let Some(plan) = rational_pair_plan(a, b) {
                plan
            } else {
                Plan {
                    tag: CaseTag::NumericSearch,
                    kind: PlanKind::Generic,
                }
            }
        }
        1 => {
            let (irr, rat) = if a.is_rational() { (b, a) } else { (a, b) };
            let q = rat.surrogate().denom().to_u64();
            let p_over_q = rat.to_f64();
            match q {
                Some(q) if q > 0 => Plan {
                    tag: CaseTag::Case3,
                    kind: PlanKind::Kronecker1 {
                        q,
                        x: irr.to_f64(),
                        threshold: 1.0 - p_over_q,
                    },
                },
                _ => Plan {
                    tag: CaseTag::NumericSearch,
                    kind: PlanKind::Generic,
                },
            }
        }
        _ => irrational_pair_plan(a, b, bound),
    }
}

/// Exact residue classes for a rational pair: scan one period of the pair
/// sum. The plan then walks those classes through every period.
fn rational_pair_plan(a: &WeightValue, b: &WeightValue) -> Option<Plan> {
    let (pa, qa) = rational_u64(a)?;
    let (pb, qb) = rational_u64(b)?;
    let q = lcm_u64(qa, qb)?;
    let ca = pa.checked_mul(q / qa)?;
    let cb = pb.checked_mul(q / qb)?;
    let mut residues = Vec::new();
    let (mut ra, mut rb) = (0u64, 0u64);
    for k in 1..=q {
        ra += ca;
        if ra >= q {
            ra -= q;
        }
        rb += cb;
        if rb >= q {
            rb -= q;
        }
        if ra + rb > q {
            residues.push(k % q);
        }
    }
    if residues.is_empty() {
        return None;
    }
    Some(Plan {
        tag: CaseTag::Case2,
        kind: PlanKind::PairClasses { q, residues },
    })
}

fn irrational_pair_plan(a: &WeightValue, b: &WeightValue, bound: u64) -> Plan {
    let rel_bound = INTERNAL_RELATION_BOUND.min(bound.max(2));
    match detect_integer_relation_with(a, b, rel_bound) {
        Ok(Some(rel)) => relation_plan(a, b, &rel),
        _ => Plan {
            tag: CaseTag::Case4,
            kind: PlanKind::DensityBox {
                x1: a.to_f64(),
                x2: b.to_f64(),
            },
        },
    }
}

/// Turns a detected relation `p*a + q*b = r` into the matching constructive
/// progression. The `p = -q` edge has no constructive form and falls back.
fn relation_plan(a: &WeightValue, b: &WeightValue, rel: &IntegerRelation) -> Plan {
    let (mut p, mut q, _r) = (rel.p, rel.q, rel.r);
    let (mut x1, mut x2) = (a.to_f64(), b.to_f64());
    if p == 0 || q == 0 {
        return Plan {
            tag: CaseTag::NumericSearch,
            kind: PlanKind::Generic,
        };
    }
    if p < 0 {
        p = -p;
        q = -q;
    }
    if q > 0 {
        // Both coefficients positive.
        if p == q {
            let r_over_p = (rel.r as f64) / (p as f64);
            let frac = r_over_p - r_over_p.floor();
            if frac <= 0.0 {
                return Plan {
                    tag: CaseTag::NumericSearch,
                    kind: PlanKind::Generic,
                };
            }
            return Plan {
                tag: CaseTag::Case5,
                kind: PlanKind::ProgressionPlusOne {
                    step: p as u64,
                    x: x1,
                    lo: frac,
                    hi: frac + 1.0 / (p as f64),
                },
            };
        }
        if p > q {
            std::mem::swap(&mut p, &mut q);
            std::mem::swap(&mut x1, &mut x2);
        }
        // 0 < p < q: k = q*l with {l * x1} < 1/(p*q).
        return Plan {
            tag: CaseTag::Case5,
            kind: PlanKind::Progression {
                step: q as u64,
                x: x1,
                lo: 0.0,
                hi: 1.0 / ((p * q) as f64),
            },
        };
    }
    // Mixed signs: p > 0, q < 0.
    let qq = -q;
    if qq == p {
        return Plan {
            tag: CaseTag::NumericSearch,
            kind: PlanKind::Generic,
        };
    }
    if qq > p {
        // Negate and swap roles so the positive coefficient dominates.
        std::mem::swap(&mut x1, &mut x2);
        let (pp, _nq) = (qq, p);
        return Plan {
            tag: CaseTag::Case5,
            kind: PlanKind::Progression {
                step: pp as u64,
                x: x2,
                lo: 1.0 / ((pp + 1) as f64),
                hi: 1.0 / (pp as f64),
            },
        };
    }
    // 0 < -q < p: k = p*l with {l * x2} in (1/(p+1), 1/p).
    Plan {
        tag: CaseTag::Case5,
        kind: PlanKind::Progression {
            step: p as u64,
            x: x2,
            lo: 1.0 / ((p + 1) as f64),
            hi: 1.0 / (p as f64),
        },
    }
}

/// Runs the plan, verifying every candidate, and tops up from a generic scan
/// if the constructive generator under-delivers within the bound.
fn collect_witnesses(
    triple: &FractionalTriple,
    plan: &Plan,
    count: usize,
    bound: u64,
) -> Result<Vec<u64>> {
    let mut found = Vec::with_capacity(count);
    match &plan.kind {
        PlanKind::OddK => {
            // Every odd k works for the all-halves triple.
            let mut k = 1u64;
            let cap = (2 * count as u64 + 2).max(bound);
            while found.len() < count && k <= cap {
                if triple.is_witness(k) {
                    found.push(k);
                }
                k += 2;
            }
        }
        PlanKind::RationalScan => {
            rational_complete_scan(triple, count, &mut found)?;
        }
        PlanKind::PairClasses { q, residues } => {
            let mut period = 0u64;
            'outer: loop {
                for &r in residues {
                    let k = period.saturating_mul(*q).saturating_add(if r == 0 { *q } else { r });
                    if k == 0 {
                        continue;
                    }
                    if triple.is_witness(k) {
                        found.push(k);
                        if found.len() >= count {
                            break 'outer;
                        }
                    }
                }
                period += 1;
                if period > count as u64 + 4 && found.is_empty() {
                    break;
                }
                if period.saturating_mul(*q) > bound.saturating_mul(16) {
                    break;
                }
            }
            found.sort_unstable();
            found.dedup();
        }
        PlanKind::Kronecker1 { q, x, threshold } => {
            let mut l = 1u64;
            while found.len() < count {
                let k = match l.checked_mul(*q).and_then(|v| v.checked_add(1)) {
                    Some(k) if k <= bound => k,
                    _ => break,
                };
                let f = (k as f64 * x).fract();
                if f > *threshold && triple.is_witness(k) {
                    found.push(k);
                }
                l += 1;
            }
        }
        PlanKind::DensityBox { x1, x2 } => {
            for k in 1..=bound {
                let f1 = (k as f64 * x1).fract();
                let f2 = (k as f64 * x2).fract();
                if f1 > 0.5 && f2 > 0.5 && triple.is_witness(k) {
                    found.push(k);
                    if found.len() >= count {
                        break;
                    }
                }
            }
        }
        PlanKind::Progression { step, x, lo, hi } => {
            let mut l = 1u64;
            loop {
                let k = match l.checked_mul(*step) {
                    Some(k) if k <= bound => k,
                    _ => break,
                };
                let f = (l as f64 * x).fract();
                if f > *lo && f < *hi && triple.is_witness(k) {
                    found.push(k);
                    if found.len() >= count {
                        break;
                    }
                }
                l += 1;
            }
        }
        PlanKind::ProgressionPlusOne { step, x, lo, hi } => {
            let mut l = 1u64;
            loop {
                let k = match l.checked_mul(*step).and_then(|v| v.checked_add(1)) {
                    Some(k) if k <= bound => k,
                    _ => break,
                };
                let f = (k as f64 * x).fract();
                if f > *lo && f < *hi && triple.is_witness(k) {
                    found.push(k);
                    if found.len() >= count {
                        break;
                    }
                }
                l += 1;
            }
        }
        PlanKind::Generic => {}
    }

    if found.len() < count {
        // Generic verified scan tops up whatever the constructive path left.
        let start = found.last().map_or(1, |&k| k + 1);
        for k in start..=bound {
            if found.contains(&k) {
                continue;
            }
            let pre: f64 = triple
                .alphas()
                .iter()
                .map(|a| (k as f64 * a.to_f64()).fract())
                .sum();
            if pre > 1.0 - 1e-7 && triple.is_witness(k) {
                found.push(k);
                if found.len() >= count {
                    break;
                }
            }
        }
    }

    if found.len() < count {
        return Err(Error::ScanExhausted {
            bound,
            context: format!(
                "found {} of {count} requested witnesses for a triple decided to exceed",
                found.len()
            ),
        });
    }
    found.sort_unstable();
    Ok(found)
}

/// Complete scanner for all-rational triples: walks k = 1, 2, ... with exact
/// incremental residues when the common denominator fits in u64, falling
/// back to exact big-rational evaluation otherwise. Guaranteed to terminate:
/// at least one residue per period witnesses the exceedance.
fn rational_complete_scan(
    triple: &FractionalTriple,
    count: usize,
    found: &mut Vec<u64>,
) -> Result<()> {
    if let Some((q, c)) = rational_triple_u64(triple) {
        let cap = q.saturating_mul(count as u64 + 1);
        let mut r = [0u64; 3];
        let mut k = 0u64;
        while k < cap {
            k += 1;
            for i in 0..3 {
                r[i] += c[i];
                if r[i] >= q {
                    r[i] -= q;
                }
            }
            if r[0] as u128 + r[1] as u128 + r[2] as u128 > q as u128 {
                found.push(k);
                if found.len() >= count {
                    return Ok(());
                }
            }
        }
        return Err(Error::ScanExhausted {
            bound: cap,
            context: "periodic scan of a rational triple found no witnesses".into(),
        });
    }
    // Oversized denominators: exact but slower path.
    let mut k = 0u64;
    let cap = 10_000_000u64;
    while k < cap {
        k += 1;
        if triple.is_witness(k) {
            found.push(k);
            if found.len() >= count {
                return Ok(());
            }
        }
    }
    Err(Error::ScanExhausted {
        bound: cap,
        context: "big-rational periodic scan found too few witnesses".into(),
    })
}

fn rational_u64(v: &WeightValue) -> Option<(u64, u64)> {
    if !v.is_rational() {
        return None;
    }
    let s = v.surrogate();
    Some((s.numer().to_u64()?, s.denom().to_u64()?))
}

fn rational_triple_u64(triple: &FractionalTriple) -> Option<(u64, [u64; 3])> {
    let mut q = 1u64;
    let mut parts = [(0u64, 1u64); 3];
    for (i, a) in triple.alphas().iter().enumerate() {
        let (p, d) = rational_u64(a)?;
        parts[i] = (p, d);
        q = lcm_u64(q, d)?;
    }
    let mut c = [0u64; 3];
    for i in 0..3 {
        let (p, d) = parts[i];
        c[i] = p.checked_mul(q / d)?;
    }
    // Incremental residues must not overflow when summed.
    if q > u64::MAX / 4 {
        return None;
    }
    Some((q, c))
}

fn lcm_u64(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(a.max(b).max(1));
    }
    let g = gcd_u64(a, b);
    (a / g).checked_mul(b)
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> WeightValue {
        WeightValue::rational(p, q).unwrap()
    }

    fn triple(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> FractionalTriple {
        FractionalTriple::new([rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1)]).unwrap()
    }

    const SQRT2_M1: &str = "0.414213562373095048801688724209";

    #[test]
    fn condition_cond_examples() {
        let halves = vec![rat(1, 2), rat(1, 2), rat(1, 2)];
        let (holds, idx) = condition_cond(&halves);
        assert!(holds);
        assert_eq!(idx.len(), 3);

        let two_halves = vec![rat(1, 2), rat(1, 2)];
        assert_eq!(condition_cond(&two_halves), (false, vec![]));

        let thirds = vec![rat(1, 3), rat(2, 3)];
        assert_eq!(condition_cond(&thirds), (false, vec![]));

        let mixed = vec![rat(1, 2), rat(1, 3)];
        let (holds, idx) = condition_cond(&mixed);
        assert!(holds);
        assert_eq!(idx, vec![0, 1]);

        let integers = vec![WeightValue::integer(2), WeightValue::integer(3), WeightValue::integer(5)];
        assert_eq!(condition_cond(&integers), (false, vec![]));
    }

    #[test]
    fn decide_all_halves_gives_odd_witnesses() {
        let t = triple((1, 2), (1, 2), (1, 2));
        let d = decide_fractional(&t).unwrap();
        assert_eq!(d.verdict, Verdict::InfinitelyManyExceedOne);
        assert_eq!(d.case_tag, CaseTag::Case1);
        assert_eq!(&d.witnesses[..3], &[1, 3, 5]);
    }

    #[test]
    fn decide_two_thirds_scan() {
        let t = triple((1, 3), (1, 3), (0, 1));
        let d = decide_fractional(&t).unwrap();
        assert_eq!(d.verdict, Verdict::InfinitelyManyExceedOne);
        assert_eq!(d.case_tag, CaseTag::Case2);
        assert_eq!(&d.witnesses[..3], &[2, 5, 8]);
    }

    #[test]
    fn decide_negative_conditions() {
        let t = triple((2, 3), (1, 3), (0, 1));
        let d = decide_fractional(&t).unwrap();
        assert_eq!(d.verdict, Verdict::AlwaysAtMostOne);
        assert_eq!(d.case_tag, CaseTag::NegCase2);
        assert!(d.witnesses.is_empty());

        let t = triple((7, 10), (0, 1), (0, 1));
        let d = decide_fractional(&t).unwrap();
        assert_eq!(d.verdict, Verdict::AlwaysAtMostOne);
        assert_eq!(d.case_tag, CaseTag::NegCase1);
    }

    #[test]
    fn decide_irrational_plus_half() {
        let t = FractionalTriple::new([
            WeightValue::irrational(SQRT2_M1).unwrap(),
            rat(1, 2),
            rat(0, 1),
        ])
        .unwrap();
        let d = decide_fractional(&t).unwrap();
        assert_eq!(d.verdict, Verdict::InfinitelyManyExceedOne);
        assert_eq!(d.case_tag, CaseTag::Case3);
        // Brute scan (independent of the plan) says the first witness is 7.
        let first_brute = (1..10_000u64).find(|&k| t.is_witness(k)).unwrap();
        assert_eq!(first_brute, 7);
        assert_eq!(d.witnesses[0], 7);
    }

    #[test]
    fn witness_stream_matches_examples() {
        let t = triple((1, 2), (1, 2), (1, 2));
        assert_eq!(witness_stream(&t, 3).unwrap(), vec![1, 3, 5]);

        let t = triple((1, 3), (1, 3), (0, 1));
        assert_eq!(witness_stream(&t, 3).unwrap(), vec![2, 5, 8]);

        let t = triple((3, 4), (1, 4), (0, 1));
        assert!(matches!(
            witness_stream(&t, 1),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn negative_pair_never_exceeds_even_with_irrationals() {
        // a1 + a2 = 1 stays at or below 1 for every k; scan a prefix.
        let a1 = WeightValue::irrational(SQRT2_M1).unwrap();
        let a2 = WeightValue::irrational("0.585786437626904951198311275790").unwrap();
        let t = FractionalTriple::new([a1, a2, WeightValue::zero()]).unwrap();
        let d = decide_fractional(&t).unwrap();
        assert_eq!(d.verdict, Verdict::AlwaysAtMostOne);
        assert_eq!(d.case_tag, CaseTag::NegCase2);
        let bound = BigRational::one() + witness_margin();
        for k in 1..=10_000u64 {
            assert!(t.fractional_sum(k) <= bound, "k = {k} exceeded");
        }
    }

    #[test]
    fn irrational_pair_without_relation_uses_density() {
        let a1 = WeightValue::irrational(SQRT2_M1).unwrap();
        // sqrt(3) - 1
        let a2 = WeightValue::irrational("0.732050807568877293527446341505").unwrap();
        let t = FractionalTriple::new([a1, a2, WeightValue::zero()]).unwrap();
        let d = decide_fractional(&t).unwrap();
        assert_eq!(d.verdict, Verdict::InfinitelyManyExceedOne);
        assert_eq!(d.case_tag, CaseTag::Case4);
        assert!(d.witnesses.len() >= 10);
    }

    #[test]
    fn irrational_pair_with_relation_uses_case5() {
        // a1 = sqrt(2)/2, a2 = sqrt(2)/4: relation a1 - 2 a2 = 0.
        let a1 = WeightValue::irrational("0.707106781186547524400844362104").unwrap();
        let a2 = WeightValue::irrational("0.353553390593273762200422181052").unwrap();
        let t = FractionalTriple::new([a1, a2, WeightValue::zero()]).unwrap();
        let d = decide_fractional(&t).unwrap();
        assert_eq!(d.verdict, Verdict::InfinitelyManyExceedOne);
        assert_eq!(d.case_tag, CaseTag::Case5);
        assert!(d.witnesses.len() >= 10);
    }

    #[test]
    fn permutation_invariance() {
        let perms = [
            [(1i64, 2i64), (1, 3), (1, 7)],
            [(1, 3), (1, 7), (1, 2)],
            [(1, 7), (1, 2), (1, 3)],
        ];
        let mut decisions = Vec::new();
        for p in perms {
            let t = triple(p[0], p[1], p[2]);
            decisions.push(decide_fractional(&t).unwrap());
        }
        assert_eq!(decisions[0], decisions[1]);
        assert_eq!(decisions[1], decisions[2]);
    }

    #[test]
    fn scaled_witnesses_map_back_under_weight_scaling() {
        // Witness covariance: if k witnesses the t-scaled triple, then t*k
        // witnesses the original.
        let base = [(1i64, 3i64), (1, 5), (0, 1)];
        for t_factor in [2u64, 3] {
            let orig = triple(base[0], base[1], base[2]);
            let scaled = FractionalTriple::new([
                rat(base[0].0 * t_factor as i64, base[0].1).fract(),
                rat(base[1].0 * t_factor as i64, base[1].1).fract(),
                rat(0, 1),
            ])
            .unwrap();
            if let Ok(d) = decide_fractional(&scaled) {
                if d.verdict == Verdict::InfinitelyManyExceedOne {
                    for &k in &d.witnesses {
                        assert!(orig.is_witness(t_factor * k));
                    }
                }
            }
        }
    }
}
