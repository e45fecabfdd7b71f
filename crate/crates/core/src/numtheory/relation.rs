//! Bounded integer-relation detection for two declared irrationals.
//!
//! Searches for the smallest-height relation `p*a1 + q*a2 = r` with
//! `|p|, |q| <= L`, where "=" means a residual below 1e-12 at the declared
//! precision. Sound but bounded: every returned relation is re-verified
//! exactly on the surrogates, and `None` means "no relation of height <= L
//! at declared precision", never a proof of independence.
//!
//! Candidates come from three generators, checked in height order:
//! an exhaustive small box, continued-fraction convergents of each value and
//! of their ratio, and — for the remaining heights — a per-`p` Euclidean
//! minimisation of `(p*a1 + q*a2) mod 1` over `q`, run in fixed point at
//! 96 bits. The minimisation is the classic continued-fraction recursion on
//! the scaled fractional parts, so the whole sweep costs `O(L log)` instead
//! of `O(L^2)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::par;
use crate::value::WeightValue;

/// Default coefficient bound.
pub const DEFAULT_RELATION_BOUND: u64 = 1_000_000;

/// Heights covered exhaustively before the fixed-point sweep takes over.
const BOX_HEIGHT: i64 = 64;

/// Fixed-point scale for the sweep.
const SCALE_BITS: u32 = 96;

/// A detected relation `p*a1 + q*a2 = r` with `(p, q) != (0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegerRelation {
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

/// Detects a relation with the default bound.
pub fn detect_integer_relation(
    a1: &WeightValue,
    a2: &WeightValue,
) -> Result<Option<IntegerRelation>> {
    detect_integer_relation_with(a1, a2, DEFAULT_RELATION_BOUND)
}

pub fn detect_integer_relation_with(
    a1: &WeightValue,
    a2: &WeightValue,
    bound: u64,
) -> Result<Option<IntegerRelation>> {
    if a1.is_rational() || a2.is_rational() {
        return Err(Error::PreconditionViolated(
            "relation detection expects two declared-irrational inputs".into(),
        ));
    }
    if bound == 0 {
        return Err(Error::InvalidValue("relation bound must be positive".into()));
    }
    let required = (2.0 * (bound as f64).log10()).ceil() as usize + 6;
    let declared = a1
        .precision()
        .unwrap_or(0)
        .min(a2.precision().unwrap_or(0));
    if declared < required {
        return Err(Error::PrecisionInsufficient { declared, required });
    }

    let x1 = a1.surrogate().clone();
    let x2 = a2.surrogate().clone();
    let l = bound as i64;

    // Height-ordered exhaustive box.
    let box_height = BOX_HEIGHT.min(l);
    for h in 1..=box_height {
        if let Some(rel) = scan_box_shell(&x1, &x2, h) {
            return Ok(Some(rel));
        }
    }

    let mut candidates: Vec<IntegerRelation> = Vec::new();

    // Single-value convergents: q*a2 = r or p*a1 = r.
    for (value, is_first) in [(&x1, true), (&x2, false)] {
        for (num, den) in convergents(value, bound) {
            let coeff = den.to_i64().unwrap_or(i64::MAX);
            let rhs = num.to_i64();
            if coeff == 0 || coeff > l || rhs.is_none() {
                continue;
            }
            let rel = if is_first {
                IntegerRelation { p: coeff, q: 0, r: rhs.unwrap() }
            } else {
                IntegerRelation { p: 0, q: coeff, r: rhs.unwrap() }
            };
            if verify_relation(&x1, &x2, &rel) {
                candidates.push(rel);
            }
        }
    }

    // Ratio convergents pick up proportionality relations: p*a1 - q*a2 = 0
    // needs p/q close to a2/a1.
    if !x1.is_zero() {
        let ratio = &x2 / &x1;
        for (num, den) in convergents(&ratio, bound) {
            let (p, q) = match (num.to_i64(), den.to_i64()) {
                (Some(p), Some(q)) => (p, q),
                _ => continue,
            };
            if p.unsigned_abs() > bound || q.unsigned_abs() > bound || (p == 0 && q == 0) {
                continue;
            }
            let rel = IntegerRelation { p, q: -q, r: 0 };
            if verify_relation(&x1, &x2, &rel) {
                candidates.push(normalize(rel));
            }
        }
    }

    // Fixed-point sweep over p, best q per p by Euclidean minimisation.
    let f1 = fixed_point_fract(&x1);
    let f2 = fixed_point_fract(&x2);
    let modulus: u128 = 1u128 << SCALE_BITS;
    // Accept anything within roughly twice the exact tolerance plus rounding
    // slop; exact verification filters the rest. 2^56 ~ 0.9e-12 * 2^96.
    let threshold = (modulus >> 40) * 2 + 4 * (bound as u128) + 16;
    let start = 1u64;
    if start <= bound {
        let chunk = 4096usize;
        let chunks = ((bound - start + 1) as usize).div_ceil(chunk);
        let hits: Vec<Vec<(u64, i64)>> = par::map_indexed(chunks, |ci| {
            let lo = start + (ci * chunk) as u64;
            let hi = (lo + chunk as u64 - 1).min(bound);
            let mut out = Vec::new();
            for p in lo..=hi {
                for (q, dist) in best_q_for_p(p, f1, f2, modulus, bound) {
                    if dist <= threshold {
                        out.push((p, q));
                    }
                }
            }
            out
        });
        for (p, q) in hits.into_iter().flatten() {
            let rel = IntegerRelation {
                p: p as i64,
                q,
                r: 0, // fixed up by verify below
            };
            if let Some(rel) = fix_rhs(&x1, &x2, rel) {
                candidates.push(normalize(rel));
            }
        }
    }

    candidates.sort_by_key(|r| (r.p.abs().max(r.q.abs()), r.p.abs(), r.q.abs(), r.r));
    candidates.dedup();
    Ok(candidates.into_iter().next())
}

/// All (p, q) with max(|p|, |q|) == h, p >= 0 canonical.
fn scan_box_shell(x1: &BigRational, x2: &BigRational, h: i64) -> Option<IntegerRelation> {
    let mut best: Option<IntegerRelation> = None;
    let mut consider = |p: i64, q: i64| {
        if p == 0 && q == 0 {
            return;
        }
        let rel = IntegerRelation { p, q, r: 0 };
        if let Some(rel) = fix_rhs(x1, x2, rel) {
            let rel = normalize(rel);
            let key = (rel.p.abs(), rel.q.abs(), rel.r.abs());
            if best.map_or(true, |b| key < (b.p.abs(), b.q.abs(), b.r.abs())) {
                best = Some(rel);
            }
        }
    };
    // p = h edge, then q = +-h edges; canonical sign keeps p >= 0.
    for q in -h..=h {
        consider(h, q);
    }
    for p in 0..h {
        consider(p, h);
        consider(p, -h);
    }
    best
}

/// Rounds the combination to the nearest integer and keeps the relation if
/// the residual passes the exact 1e-12 test.
fn fix_rhs(x1: &BigRational, x2: &BigRational, rel: IntegerRelation) -> Option<IntegerRelation> {
    let combo = x1 * BigRational::from_integer(BigInt::from(rel.p))
        + x2 * BigRational::from_integer(BigInt::from(rel.q));
    let r_big = combo.round().to_integer();
    let r = r_big.to_i64()?;
    let rel = IntegerRelation { r, ..rel };
    verify_relation(x1, x2, &rel).then_some(rel)
}

fn verify_relation(x1: &BigRational, x2: &BigRational, rel: &IntegerRelation) -> bool {
    let residual = x1 * BigRational::from_integer(BigInt::from(rel.p))
        + x2 * BigRational::from_integer(BigInt::from(rel.q))
        - BigRational::from_integer(BigInt::from(rel.r));
    residual.abs() < crate::value::cmp_tolerance()
}

/// Canonical sign: p > 0, or p == 0 and q > 0; divides out a common factor
/// when the right-hand side shares it.
fn normalize(mut rel: IntegerRelation) -> IntegerRelation {
    let g = gcd3(rel.p.unsigned_abs(), rel.q.unsigned_abs(), rel.r.unsigned_abs());
    if g > 1 {
        rel.p /= g as i64;
        rel.q /= g as i64;
        rel.r /= g as i64;
    }
    if rel.p < 0 || (rel.p == 0 && rel.q < 0) {
        rel.p = -rel.p;
        rel.q = -rel.q;
        rel.r = -rel.r;
    }
    rel
}

fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    gcd(gcd(a, b), c).max(1)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Continued-fraction convergents of the exact surrogate, up to the
/// denominator bound.
fn convergents(value: &BigRational, den_bound: u64) -> Vec<(BigInt, BigInt)> {
    use num_integer::Integer;
    let mut out = Vec::new();
    let mut num = value.numer().clone();
    let mut den = value.denom().clone();
    let (mut h0, mut h1) = (BigInt::one(), BigInt::zero());
    let (mut k0, mut k1) = (BigInt::zero(), BigInt::one());
    let bound = BigInt::from(den_bound);
    // h0/k0 converges to the value; classic Euclid on (num, den).
    let mut steps = 0;
    while !den.is_zero() && steps < 400 {
        let (a, rem) = num.div_mod_floor(&den);
        num = std::mem::replace(&mut den, rem);
        let h2 = &a * &h0 + &h1;
        let k2 = &a * &k0 + &k1;
        h1 = std::mem::replace(&mut h0, h2);
        k1 = std::mem::replace(&mut k0, k2);
        if k0 > bound {
            break;
        }
        out.push((h0.clone(), k0.clone()));
        steps += 1;
    }
    out
}

/// Fractional part of the surrogate in fixed point at `SCALE_BITS`.
fn fixed_point_fract(value: &BigRational) -> u128 {
    let fract = value - value.floor();
    let scaled = fract * BigRational::from_integer(BigInt::one() << SCALE_BITS);
    scaled.floor().to_integer().to_u128().unwrap_or(0)
}

/// For fixed p, the q in [1, L] (either sign) whose combination lands
/// closest to an integer, via the Euclidean minimisation of a linear
/// residue sequence. Returns up to four (q, distance) candidates.
fn best_q_for_p(p: u64, f1: u128, f2: u128, modulus: u128, l: u64) -> Vec<(i64, u128)> {
    let c = mulmod(p as u128, f1, modulus);
    let mut out = Vec::new();
    for (a, sign) in [(f2 % modulus, 1i64), ((modulus - f2 % modulus) % modulus, -1i64)] {
        // Sequence (c + a*(i+1)) mod m for i in [0, l).
        let start = (c + a) % modulus;
        let (vmin, imin) = min_mod_linear(a, start, modulus, l as u128);
        out.push((sign * (imin as i64 + 1), vmin));
        let (vmax, imax) = max_mod_linear(a, start, modulus, l as u128);
        out.push((sign * (imax as i64 + 1), modulus - vmax));
    }
    out
}

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    // Operands here stay below 2^96 and 2^27, so the product fits.
    (a % m).wrapping_mul(b % m) % m
}

/// Minimum of (b + a*i) mod m over i in [0, n), with its first argmin.
/// Euclidean recursion: the post-wrap minima form the same kind of sequence
/// with modulus a.
fn min_mod_linear(mut a: u128, mut b: u128, m: u128, n: u128) -> (u128, u128) {
    a %= m;
    b %= m;
    if n == 0 {
        return (b, 0);
    }
    if a == 0 || n == 1 {
        return (b, 0);
    }
    if n <= 64 {
        let (mut best, mut arg) = (b, 0u128);
        let mut v = b;
        for i in 1..n {
            v += a;
            if v >= m {
                v -= m;
            }
            if v < best {
                best = v;
                arg = i;
            }
        }
        return (best, arg);
    }
    // Number of wraps over the range.
    let total = b + a * (n - 1);
    if total < m {
        return (b, 0);
    }
    let wraps = total / m;
    // Minimum value with exactly j wraps (1 <= j <= wraps) is
    // (b - j*m) mod a, attained at i = ceil((j*m - b)/a).
    let a_step = (a - m % a) % a;
    let (v, j_idx) = min_mod_linear(a_step, (b + a_step) % a, a, wraps);
    let j = j_idx + 1;
    let i = (j * m - b).div_ceil(a);
    if v < b {
        (v, i)
    } else {
        (b, 0)
    }
}

/// Maximum of (b + a*i) mod m over i in [0, n), with an argmax.
fn max_mod_linear(a: u128, b: u128, m: u128, n: u128) -> (u128, u128) {
    // max f = m - 1 - min of the complementary sequence.
    let a = a % m;
    let b = b % m;
    let comp_a = (m - a) % m;
    let comp_b = (m - 1) - b;
    let (v, i) = min_mod_linear(comp_a, comp_b, m, n);
    (m - 1 - v, i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_mod_linear_matches_brute_force() {
        let cases = [
            (3u128, 5u128, 17u128, 40u128),
            (7, 0, 23, 100),
            (12, 11, 13, 13),
            (5, 2, 1000, 3),
            (999, 998, 1000, 500),
            (1, 0, 10, 10),
        ];
        for (a, b, m, n) in cases {
            let (mut best, mut arg) = (u128::MAX, 0);
            for i in 0..n {
                let v = (b + a * i) % m;
                if v < best {
                    best = v;
                    arg = i;
                }
            }
            let (v, i) = min_mod_linear(a, b, m, n);
            assert_eq!(v, best, "a={a} b={b} m={m} n={n}");
            assert_eq!((b + a * i) % m, best);
            let _ = arg;
        }
    }

    #[test]
    fn max_mod_linear_matches_brute_force() {
        for (a, b, m, n) in [(3u128, 5u128, 17u128, 40u128), (11, 3, 29, 70), (4, 1, 9, 5)] {
            let mut best = 0u128;
            for i in 0..n {
                best = best.max((b + a * i) % m);
            }
            let (v, i) = max_mod_linear(a, b, m, n);
            assert_eq!(v, best, "a={a} b={b} m={m} n={n}");
            assert_eq!((b + a * i) % m, best);
        }
    }

    fn irr(s: &str) -> WeightValue {
        WeightValue::irrational(s).unwrap()
    }

    #[test]
    fn detects_proportional_values() {
        let a1 = irr("0.707106781186547524400844362104");
        let a2 = irr("0.353553390593273762200422181052");
        let rel = detect_integer_relation_with(&a1, &a2, 10_000)
            .unwrap()
            .unwrap();
        assert_eq!(rel, IntegerRelation { p: 1, q: -2, r: 0 });
    }

    #[test]
    fn detects_affine_relation_summing_to_one() {
        // sqrt(2) - 1 and 2 - sqrt(2).
        let a1 = irr("0.414213562373095048801688724209");
        let a2 = irr("0.585786437626904951198311275790");
        let rel = detect_integer_relation_with(&a1, &a2, 10_000)
            .unwrap()
            .unwrap();
        assert_eq!(rel, IntegerRelation { p: 1, q: 1, r: 1 });
    }

    #[test]
    fn independent_values_give_none() {
        let a1 = irr("0.414213562373095048801688724209");
        let a2 = irr("0.732050807568877293527446341505");
        assert_eq!(detect_integer_relation_with(&a1, &a2, 10_000).unwrap(), None);
    }

    #[test]
    fn precision_gate() {
        // 30 digits support bounds up to 10^12 by the 2*log10(L)+6 rule;
        // ask beyond that.
        let a1 = irr("0.414213562373095048801688724209");
        let a2 = irr("0.732050807568877293527446341505");
        let err = detect_integer_relation_with(&a1, &a2, 1_000_000_000_000_000).unwrap_err();
        assert!(matches!(err, Error::PrecisionInsufficient { .. }));
    }

    #[test]
    fn rational_inputs_are_rejected() {
        let a1 = irr("0.414213562373095048801688724209");
        let a2 = WeightValue::rational(1, 2).unwrap();
        assert!(matches!(
            detect_integer_relation_with(&a1, &a2, 100),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
