//! Explicit basis construction. At homogeneity weight `k = N + |n|` the
//! admissible polynomials are those vanishing at each atom `a_j` to order
//! `floor(k * alpha_j)` with degree strictly below `k * gamma - 1`; the
//! level is nonempty exactly when `sum_j floor(k * alpha_j) < k*gamma - 1`,
//! and then the elements `prod_j (z - a_j)^{m_j} * z^e` span it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::FactoredPoly;
use crate::value::cmp_tolerance;
use crate::weights::{BaseKind, WeightConfig};
use crate::par;

/// Everything decided at one homogeneity weight `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisLevel {
    pub k: u64,
    /// `(atom index, floor(k * alpha_j))`.
    pub forced_multiplicities: Vec<(usize, u64)>,
    /// Largest admissible degree, or -1 when no degree is admissible.
    pub max_degree: i64,
    /// Dimension of the admissible polynomial space per multi-index.
    pub poly_space_dimension: u64,
    /// Number of fiber multi-indices n with N + |n| = k.
    pub multi_index_count: u64,
}

/// One explicit element `f_n(z) w^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisElement {
    /// Homogeneity weight k = N + |n|.
    pub level: u64,
    pub multi_index: Vec<u32>,
    pub polynomial: FactoredPoly,
    pub degree: u32,
}

fn check_preconditions(config: &WeightConfig) -> Result<()> {
    if config.base_kind() != BaseKind::WholePlane {
        return Err(Error::UnsupportedConfig(
            "basis construction requires the whole-plane base".into(),
        ));
    }
    if config.continuous_part_present() {
        return Err(Error::UnsupportedConfig(
            "basis construction requires a purely atomic weight".into(),
        ));
    }
    Ok(())
}

/// Largest integer strictly below `t`, floored at -1 (degrees are >= 0).
/// Declared-irrational `t` within 1e-12 of an integer is refused.
fn strict_floor(t: &BigRational, irrational: bool) -> Result<i64> {
    if irrational {
        let nearest = t.round();
        let gap = (t - &nearest).abs();
        if !gap.is_zero() && gap < cmp_tolerance() {
            return Err(Error::BoundaryUndecidable(
                "degree bound k*gamma - 1 sits within 1e-12 of an integer".into(),
            ));
        }
    }
    if t <= &BigRational::zero() {
        return Ok(-1);
    }
    let floor = t.floor().to_integer();
    let d = if &BigRational::from_integer(floor.clone()) == t {
        floor - BigInt::from(1)
    } else {
        floor
    };
    Ok(d.to_i64().unwrap_or(i64::MAX).max(-1))
}

/// Computes the level data for weight `k`.
pub fn basis_level(config: &WeightConfig, k: u64) -> Result<BasisLevel> {
    check_preconditions(config)?;
    if k == 0 {
        return Err(Error::InvalidValue("level weight k must be positive".into()));
    }
    let mut forced = Vec::with_capacity(config.atoms().len());
    let mut forced_sum = BigInt::zero();
    for (j, atom) in config.atoms().iter().enumerate() {
        let m = atom.weight.floor_scaled(k)?;
        forced_sum += &m;
        forced.push((
            j,
            m.to_u64().ok_or_else(|| {
                Error::InvalidValue("forced multiplicity overflows u64".into())
            })?,
        ));
    }
    let gamma = config.resolved_gamma();
    let t = gamma.surrogate() * BigRational::from_integer(BigInt::from(k))
        - BigRational::from_integer(BigInt::from(1));
    let max_degree = strict_floor(&t, gamma.is_irrational())?;
    let dim: BigInt = BigInt::from(max_degree) + 1 - &forced_sum;
    let poly_space_dimension = if dim.is_positive() {
        dim.to_u64()
            .ok_or_else(|| Error::InvalidValue("level dimension overflows u64".into()))?
    } else {
        0
    };
    let multi_index_count = binomial(k - 1, u64::from(config.fiber_dimension()) - 1)?;
    Ok(BasisLevel {
        k,
        forced_multiplicities: forced,
        max_degree,
        poly_space_dimension,
        multi_index_count,
    })
}

/// All basis elements with `N + |n| <= k_max`, in canonical order:
/// ascending level, lexicographic multi-index, ascending tail power.
pub fn enumerate_basis(config: &WeightConfig, k_max: u64) -> Result<Vec<BasisElement>> {
    check_preconditions(config)?;
    let n_dim = config.fiber_dimension() as usize;
    let mut out = Vec::new();
    for k in 1..=k_max {
        let level = basis_level(config, k)?;
        if level.poly_space_dimension == 0 || level.multi_index_count == 0 {
            continue;
        }
        let atom_factors: Vec<_> = config
            .atoms()
            .iter()
            .zip(&level.forced_multiplicities)
            .filter(|(_, (_, m))| *m > 0)
            .map(|(atom, (_, m))| {
                (atom.point, u32::try_from(*m).expect("multiplicity fits u32"))
            })
            .collect();
        let base_degree: u32 = atom_factors.iter().map(|(_, m)| m).sum();
        if k < n_dim as u64 {
            continue;
        }
        for n in compositions((k - n_dim as u64) as u32, n_dim) {
            for e in 0..level.poly_space_dimension {
                let e = u32::try_from(e).expect("tail power fits u32");
                out.push(BasisElement {
                    level: k,
                    multi_index: n.clone(),
                    polynomial: FactoredPoly {
                        atom_factors: atom_factors.clone(),
                        tail_power: e,
                    },
                    degree: base_degree + e,
                });
            }
        }
    }
    Ok(out)
}

/// Per-level dimension totals `multi_index_count * poly_space_dimension`
/// for k = 1..=k_max.
pub fn dimension_census(config: &WeightConfig, k_max: u64) -> Result<Vec<(u64, u64)>> {
    check_preconditions(config)?;
    if let Some(fast) = RationalCensus::try_new(config) {
        return (1..=k_max).map(|k| Ok((k, fast.level_total(k)?))).collect();
    }
    let rows = par::map_indexed(k_max as usize, |i| {
        let k = i as u64 + 1;
        basis_level(config, k).map(|lvl| (k, lvl.multi_index_count * lvl.poly_space_dimension))
    });
    rows.into_iter().collect()
}

/// Integer-only census for small rational configs; the hot path in the
/// exhaustive consistency sweeps.
struct RationalCensus {
    atoms: Vec<(u128, u128)>,
    gamma: (u128, u128),
    fiber_dimension: u64,
}

impl RationalCensus {
    fn try_new(config: &WeightConfig) -> Option<Self> {
        let mut atoms = Vec::with_capacity(config.atoms().len());
        for a in config.atoms() {
            let s = a.weight.surrogate();
            if a.weight.is_irrational() {
                return None;
            }
            atoms.push((s.numer().to_u128()?, s.denom().to_u128()?));
        }
        let gamma = config.resolved_gamma();
        if gamma.is_irrational() {
            return None;
        }
        let g = (
            gamma.surrogate().numer().to_u128()?,
            gamma.surrogate().denom().to_u128()?,
        );
        Some(RationalCensus {
            atoms,
            gamma: g,
            fiber_dimension: u64::from(config.fiber_dimension()),
        })
    }

    fn level_total(&self, k: u64) -> Result<u64> {
        let k128 = k as u128;
        let mut forced_sum: u128 = 0;
        for &(p, q) in &self.atoms {
            forced_sum += k128
                .checked_mul(p)
                .ok_or_else(|| Error::InvalidValue("census overflow".into()))?
                / q;
        }
        let (pg, qg) = self.gamma;
        // t = (k*pg - qg) / qg; max_degree = largest integer < t, >= -1.
        let num = k128
            .checked_mul(pg)
            .ok_or_else(|| Error::InvalidValue("census overflow".into()))? as i128
            - qg as i128;
        let max_degree: i128 = if num <= 0 {
            -1
        } else {
            let q = qg as i128;
            if num % q == 0 {
                num / q - 1
            } else {
                num / q
            }
        };
        let dim = max_degree + 1 - forced_sum as i128;
        if dim <= 0 {
            return Ok(0);
        }
        let count = binomial(k - 1, self.fiber_dimension - 1)?;
        (count as u128)
            .checked_mul(dim as u128)
            .and_then(|v| v.to_u64())
            .ok_or_else(|| Error::InvalidValue("census total overflows u64".into()))
    }
}

/// C(n, r) with overflow detection.
fn binomial(n: u64, r: u64) -> Result<u64> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or_else(|| Error::InvalidValue("binomial overflow".into()))?;
        acc /= (i + 1) as u128;
    }
    acc.to_u64()
        .ok_or_else(|| Error::InvalidValue("binomial overflows u64".into()))
}

/// Nonnegative integer vectors of length `parts` summing to `total`, in
/// lexicographic order.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            let mut v = prefix.clone();
            v.push(total);
            out.push(v);
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        return out;
    }
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ComplexRat;
    use crate::value::WeightValue;
    use crate::weights::{Atom, GammaSpec};
    use num_complex::Complex64;

    fn rat(p: i64, q: i64) -> WeightValue {
        WeightValue::rational(p, q).unwrap()
    }

    fn atom(re: f64, p: i64, q: i64) -> Atom {
        Atom::new(Complex64::new(re, 0.0), rat(p, q)).unwrap()
    }

    fn config(atoms: Vec<Atom>, gamma: GammaSpec) -> WeightConfig {
        WeightConfig::new(1, atoms, false, gamma, BaseKind::WholePlane).unwrap()
    }

    fn worked_config() -> WeightConfig {
        config(
            vec![atom(0.0, 1, 2), atom(1.0, 1, 3)],
            GammaSpec::Explicit(rat(5, 6)),
        )
    }

    #[test]
    fn worked_case_level_five() {
        let cfg = worked_config();
        let lvl = basis_level(&cfg, 5).unwrap();
        assert_eq!(
            lvl.forced_multiplicities,
            vec![(0, 2), (1, 1)],
            "floor(5/2) = 2, floor(5/3) = 1"
        );
        assert_eq!(lvl.max_degree, 3, "largest degree below 25/6 - 1 = 19/6");
        assert_eq!(lvl.poly_space_dimension, 1);
        assert_eq!(lvl.multi_index_count, 1);

        let lvl1 = basis_level(&cfg, 1).unwrap();
        assert_eq!(lvl1.poly_space_dimension, 0);
    }

    #[test]
    fn integer_weight_levels_are_empty() {
        let cfg = config(vec![atom(0.0, 1, 1)], GammaSpec::Auto);
        for k in 1..=20 {
            let lvl = basis_level(&cfg, k).unwrap();
            assert_eq!(lvl.poly_space_dimension, 0, "k = {k}");
        }
    }

    #[test]
    fn three_halves_level_one() {
        let cfg = config(
            vec![atom(0.0, 1, 2), atom(1.0, 1, 2), atom(2.0, 1, 2)],
            GammaSpec::Auto,
        );
        let lvl = basis_level(&cfg, 1).unwrap();
        assert_eq!(lvl.forced_multiplicities, vec![(0, 0), (1, 0), (2, 0)]);
        assert_eq!(lvl.max_degree, 0, "largest integer below 1/2");
        assert_eq!(lvl.poly_space_dimension, 1);
    }

    #[test]
    fn worked_case_enumeration() {
        let cfg = worked_config();
        let elements = enumerate_basis(&cfg, 5).unwrap();
        assert_eq!(elements.len(), 1);
        let e = &elements[0];
        assert_eq!(e.level, 5);
        assert_eq!(e.multi_index, vec![4]);
        assert_eq!(e.degree, 3);
        // f = z^2 (z - 1).
        assert_eq!(e.polynomial.atom_factors.len(), 2);
        assert_eq!(e.polynomial.tail_power, 0);
        let dense = e.polynomial.expand();
        assert_eq!(
            dense.vanishing_order(&ComplexRat::from_f64_pair(0.0, 0.0).unwrap(), 10),
            2
        );
        assert_eq!(
            dense.vanishing_order(&ComplexRat::from_f64_pair(1.0, 0.0).unwrap(), 10),
            1
        );
    }

    #[test]
    fn sum_to_one_pair_has_no_elements() {
        let cfg = config(vec![atom(0.0, 2, 3), atom(1.0, 1, 3)], GammaSpec::Auto);
        assert!(enumerate_basis(&cfg, 30).unwrap().is_empty());
    }

    #[test]
    fn census_of_three_halves() {
        let cfg = config(
            vec![atom(0.0, 1, 2), atom(1.0, 1, 2), atom(2.0, 1, 2)],
            GammaSpec::Auto,
        );
        let census = dimension_census(&cfg, 3).unwrap();
        // Independently recomputed: k=1 admits the constants (degree 0 below
        // 1/2, no forced zeros); k=2 forces one zero at each atom with
        // degrees below 2, impossible; k=3 forces the same multiplicities
        // with degrees below 7/2, leaving exactly z(z-1)(z-2).
        assert_eq!(census, vec![(1, 1), (2, 0), (3, 1)]);
    }

    #[test]
    fn census_matches_general_path() {
        let cfg = config(
            vec![atom(0.0, 1, 2), atom(1.0, 1, 3)],
            GammaSpec::Explicit(rat(5, 6)),
        );
        let fast = dimension_census(&cfg, 40).unwrap();
        for (k, total) in fast {
            let lvl = basis_level(&cfg, k).unwrap();
            assert_eq!(total, lvl.multi_index_count * lvl.poly_space_dimension);
        }
    }

    #[test]
    fn equivalence_of_dimension_and_floor_criterion() {
        // dim > 0 at level k iff sum floor(k a_j) < k gamma - 1, recomputed
        // here straight from the inequality.
        let cfg = worked_config();
        for k in 1..=60u64 {
            let lvl = basis_level(&cfg, k).unwrap();
            let lhs: u64 = lvl.forced_multiplicities.iter().map(|(_, m)| m).sum();
            let gamma = cfg.resolved_gamma();
            let rhs = gamma.surrogate() * BigRational::from_integer(BigInt::from(k))
                - BigRational::from_integer(BigInt::from(1));
            let holds = BigRational::from_integer(BigInt::from(lhs)) < rhs;
            assert_eq!(lvl.poly_space_dimension > 0, holds, "k = {k}");
        }
    }

    #[test]
    fn multi_index_counts() {
        let cfg2 = WeightConfig::new(
            2,
            vec![atom(0.0, 1, 2)],
            false,
            GammaSpec::Auto,
            BaseKind::WholePlane,
        )
        .unwrap();
        let lvl = basis_level(&cfg2, 3).unwrap();
        assert_eq!(lvl.multi_index_count, 2, "n in {{(0,1), (1,0)}}");
        assert_eq!(compositions(1, 2), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn empty_config_with_zero_gamma() {
        let cfg = config(vec![], GammaSpec::Explicit(rat(0, 1)));
        let census = dimension_census(&cfg, 10).unwrap();
        assert!(census.iter().all(|(_, d)| *d == 0));
    }

    fn raw_dim(lvl: &BasisLevel) -> i64 {
        lvl.max_degree + 1
            - lvl
                .forced_multiplicities
                .iter()
                .map(|(_, m)| *m as i64)
                .sum::<i64>()
    }

    #[test]
    fn dimension_is_periodic_when_gamma_is_the_atom_sum() {
        // Over one common-denominator period every floor advances by exactly
        // q*alpha_j and the degree budget by q*gamma; with gamma equal to
        // the atom sum the two cancel.
        let cfg = config(vec![atom(0.0, 1, 2), atom(1.0, 1, 3)], GammaSpec::Auto);
        let q = 6u64;
        for k in 1..=30 {
            let a = basis_level(&cfg, k).unwrap();
            let b = basis_level(&cfg, k + q).unwrap();
            assert_eq!(a.poly_space_dimension, b.poly_space_dimension, "k = {k}");
        }
    }

    #[test]
    fn excess_gamma_adds_a_fixed_correction_per_period() {
        // gamma = 1 against an atom sum of 5/6: the raw dimension gains
        // q*gamma - sum(q*alpha_j) = 6 - 5 = 1 every period.
        let cfg = config(
            vec![atom(0.0, 1, 2), atom(1.0, 1, 3)],
            GammaSpec::Explicit(rat(1, 1)),
        );
        let q = 6u64;
        for k in 1..=30 {
            let a = basis_level(&cfg, k).unwrap();
            let b = basis_level(&cfg, k + q).unwrap();
            assert_eq!(raw_dim(&b) - raw_dim(&a), 1, "k = {k}");
        }
    }
}
