//! The weight model: a subharmonic weight on the base is represented by its
//! Riesz data — point masses (atoms), a diffuse-part flag, and the
//! logarithmic growth rate — plus the exact integrability predicates that
//! consume it.
//!
//! The config *is* the function for classification purposes: every theorem
//! implemented downstream reads only `(a_j, alpha_j, mu-flag, gamma)`.
//! Callable weights appear only in the quadrature oracle.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::value::WeightValue;

/// Engineering bound on the atom list length.
pub const MAX_ATOMS: usize = 10_000;

/// Which class of base domain the user asserts. Polarity of complements is
/// not computable from a general description, so it is input metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    WholePlane,
    BoundedBase,
    NonpolarComplement,
    PolarComplementHarmonicCase,
}

/// A point mass of the Riesz measure: position and strength.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub point: Complex64,
    pub weight: WeightValue,
}

impl Atom {
    pub fn new(point: Complex64, weight: WeightValue) -> Result<Self> {
        if !point.re.is_finite() || !point.im.is_finite() {
            return Err(Error::InvalidValue("atom point must be finite".into()));
        }
        if !weight.is_positive() {
            return Err(Error::InvalidValue(format!(
                "atom weight {weight} must be positive"
            )));
        }
        Ok(Atom { point, weight })
    }
}

/// Log growth of the weight at infinity: either derived from the atom sum or
/// given explicitly (possibly exceeding it, which reads as mass at infinity).
#[derive(Debug, Clone, PartialEq)]
pub enum GammaSpec {
    Auto,
    Explicit(WeightValue),
}

/// The full Riesz description of a weight, plus fiber dimension and the
/// asserted base-domain class.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightConfig {
    fiber_dimension: u32,
    atoms: Vec<Atom>,
    continuous_part_present: bool,
    log_growth_gamma: GammaSpec,
    base_kind: BaseKind,
}

impl WeightConfig {
    pub fn new(
        fiber_dimension: u32,
        atoms: Vec<Atom>,
        continuous_part_present: bool,
        log_growth_gamma: GammaSpec,
        base_kind: BaseKind,
    ) -> Result<Self> {
        if fiber_dimension == 0 {
            return Err(Error::InvalidValue("fiber dimension must be positive".into()));
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::InvalidValue(format!(
                "atom list exceeds the engineering bound of {MAX_ATOMS}"
            )));
        }
        for (i, a) in atoms.iter().enumerate() {
            for b in atoms.iter().skip(i + 1) {
                if a.point.re == b.point.re && a.point.im == b.point.im {
                    return Err(Error::InvalidValue(format!(
                        "duplicate atom point ({}, {})",
                        a.point.re, a.point.im
                    )));
                }
            }
        }
        let config = WeightConfig {
            fiber_dimension,
            atoms,
            continuous_part_present,
            log_growth_gamma,
            base_kind,
        };
        if let GammaSpec::Explicit(gamma) = &config.log_growth_gamma {
            let sum = config.atom_weight_sum();
            let diff = gamma.surrogate() - sum.surrogate();
            let exact = gamma.is_rational() && sum.is_rational();
            if exact {
                if diff < BigRational::zero() {
                    return Err(Error::InvalidValue(format!(
                        "gamma {gamma} is below the atom weight sum {sum}"
                    )));
                }
            } else if diff < -crate::value::cmp_tolerance() {
                return Err(Error::InvalidValue(format!(
                    "gamma {gamma} is below the atom weight sum {sum} beyond tolerance"
                )));
            }
        }
        Ok(config)
    }

    pub fn fiber_dimension(&self) -> u32 {
        self.fiber_dimension
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn continuous_part_present(&self) -> bool {
        self.continuous_part_present
    }

    pub fn gamma_spec(&self) -> &GammaSpec {
        &self.log_growth_gamma
    }

    pub fn base_kind(&self) -> BaseKind {
        self.base_kind
    }

    /// Sum of the atom weights (exact; irrational taint propagates).
    pub fn atom_weight_sum(&self) -> WeightValue {
        self.atoms
            .iter()
            .fold(WeightValue::zero(), |acc, a| acc.add(&a.weight))
    }

    /// `Auto` resolves to the atom weight sum: an entire weight with finite
    /// atomic Riesz measure and logarithmic growth has no room for more.
    pub fn resolved_gamma(&self) -> WeightValue {
        match &self.log_growth_gamma {
            GammaSpec::Auto => self.atom_weight_sum(),
            GammaSpec::Explicit(g) => g.clone(),
        }
    }

    /// True when gamma was given explicitly and strictly exceeds the atom
    /// sum; errors if the comparison is inside the tolerance band.
    pub fn gamma_exceeds_atom_sum(&self) -> Result<bool> {
        match &self.log_growth_gamma {
            GammaSpec::Auto => Ok(false),
            GammaSpec::Explicit(g) => {
                let sum = self.atom_weight_sum();
                let irrational = g.is_irrational() || sum.is_irrational();
                g.gt_with_tolerance(sum.surrogate(), irrational, "gamma vs atom sum")
            }
        }
    }

    /// The same config with every atom weight (and explicit gamma) scaled by
    /// the positive integer `t`.
    pub fn scale_weights(&self, t: u32) -> Result<WeightConfig> {
        if t == 0 {
            return Err(Error::InvalidValue("scale factor must be positive".into()));
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom {
                point: a.point,
                weight: a.weight.mul_int(t as i64),
            })
            .collect();
        let gamma = match &self.log_growth_gamma {
            GammaSpec::Auto => GammaSpec::Auto,
            GammaSpec::Explicit(g) => GammaSpec::Explicit(g.mul_int(t as i64)),
        };
        WeightConfig::new(
            self.fiber_dimension,
            atoms,
            self.continuous_part_present,
            gamma,
            self.base_kind,
        )
    }
}

/// Lelong number of the weight at a point: the Riesz mass sitting exactly
/// there. For the atomic-plus-diffuse model this is the atom weight at the
/// point (the diffuse part assigns zero to points).
pub fn lelong_number(config: &WeightConfig, point: Complex64) -> WeightValue {
    for atom in config.atoms() {
        if atom.point.re == point.re && atom.point.im == point.im {
            return atom.weight.clone();
        }
    }
    WeightValue::zero()
}

/// Integrability index at a point. Equal to the Lelong number in one
/// complex variable; the equality is the implemented theorem.
pub fn integrability_index(config: &WeightConfig, point: Complex64) -> WeightValue {
    lelong_number(config, point)
}

/// Is `|z-a|^{2k} e^{-2u}` integrable near `a` when `nu` is the Lelong
/// number of `u` at `a`? True iff `k > nu - 1`, strictly.
pub fn local_integrability(k: i64, nu: &WeightValue) -> Result<bool> {
    // k > nu - 1  <=>  k + 1 > nu.
    let threshold = BigRational::from_integer(BigInt::from(k) + 1);
    let gt = nu.gt_with_tolerance(&threshold, nu.is_irrational(), "k+1 vs nu")?;
    let eq = nu.surrogate() == &threshold;
    Ok(!gt && !eq)
}

/// Is `|z|^{2k} e^{-2u}` integrable near infinity when `u` grows like
/// `B log|z|`? True iff `k < B - 1`, strictly.
pub fn integrability_at_infinity(k: i64, b: &WeightValue) -> Result<bool> {
    let threshold = BigRational::from_integer(BigInt::from(k) + 1);
    b.gt_with_tolerance(&threshold, b.is_irrational(), "B-1 vs k")
}

/// Leading behaviour of a pure atomic whole-plane weight at infinity:
/// `u(z) = B log|z| + C + o(1)` along the circle maxima, with `B` the atom
/// sum and `C = 0` (the maxima of `sum alpha_j log(|z-a_j|/|z|)` tend to 0).
pub fn asymptotic_expansion(config: &WeightConfig) -> Result<(WeightValue, f64)> {
    if config.base_kind() != BaseKind::WholePlane {
        return Err(Error::UnsupportedConfig(
            "asymptotic expansion requires the whole-plane base".into(),
        ));
    }
    if config.continuous_part_present() {
        return Err(Error::UnsupportedConfig(
            "asymptotic expansion requires a purely atomic weight".into(),
        ));
    }
    let sum = config.atom_weight_sum();
    match config.gamma_spec() {
        GammaSpec::Auto => {}
        GammaSpec::Explicit(g) => {
            if g.surrogate() != sum.surrogate() {
                return Err(Error::UnsupportedConfig(
                    "asymptotic expansion requires gamma equal to the atom sum".into(),
                ));
            }
        }
    }
    Ok((sum, 0.0))
}

/// Sampled circle maxima (or means) of a weight around a center, used by the
/// slope estimator. Radii must be strictly monotone: decreasing toward 0 for
/// the local variant or increasing toward infinity for the other.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    pub center: Complex64,
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
}

impl RadialProfile {
    pub fn new(center: Complex64, radii: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if radii.len() != values.len() {
            return Err(Error::InvalidValue(
                "radii and values must have equal length".into(),
            ));
        }
        if radii.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
            return Err(Error::InvalidValue("radii must be positive and finite".into()));
        }
        let decreasing = radii.windows(2).all(|w| w[0] > w[1]);
        let increasing = radii.windows(2).all(|w| w[0] < w[1]);
        if radii.len() > 1 && !decreasing && !increasing {
            return Err(Error::InvalidValue("radii must be strictly monotone".into()));
        }
        Ok(RadialProfile {
            center,
            radii,
            values,
        })
    }
}

/// Least-squares slope of the profile values against `log r` — an estimator
/// of the Lelong number at the center (exact only in the limit; no
/// exactness guarantee).
pub fn estimate_lelong_number(profile: &RadialProfile) -> Result<f64> {
    let n = profile.radii.len();
    if n < 4 {
        return Err(Error::InsufficientData(format!(
            "need at least 4 radial samples, got {n}"
        )));
    }
    let xs: Vec<f64> = profile.radii.iter().map(|r| r.ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / n as f64;
    let y_mean = profile.values.iter().sum::<f64>() / n as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(profile.values.iter()) {
        num += (x - x_mean) * (y - y_mean);
        den += (x - x_mean) * (x - x_mean);
    }
    if den == 0.0 {
        return Err(Error::InsufficientData("radii are all equal".into()));
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn atom(re: f64, num: i64, den: i64) -> Atom {
        Atom::new(c(re, 0.0), WeightValue::rational(num, den).unwrap()).unwrap()
    }

    fn plain_config(atoms: Vec<Atom>) -> WeightConfig {
        WeightConfig::new(1, atoms, false, GammaSpec::Auto, BaseKind::WholePlane).unwrap()
    }

    #[test]
    fn lelong_number_is_the_atom_mass() {
        let cfg = plain_config(vec![atom(0.0, 1, 2)]);
        assert_eq!(
            lelong_number(&cfg, c(0.0, 0.0)),
            WeightValue::rational(1, 2).unwrap()
        );
        assert_eq!(lelong_number(&cfg, c(1.0, 0.0)), WeightValue::zero());

        let cfg = plain_config(vec![atom(0.0, 3, 2), atom(1.0, 2, 3)]);
        assert_eq!(
            lelong_number(&cfg, c(1.0, 0.0)),
            WeightValue::rational(2, 3).unwrap()
        );
    }

    #[test]
    fn integrability_index_equals_lelong_number() {
        let cfg = plain_config(vec![atom(0.0, 9, 10)]);
        assert_eq!(
            integrability_index(&cfg, c(0.0, 0.0)),
            WeightValue::rational(9, 10).unwrap()
        );
        let empty = plain_config(vec![]);
        assert_eq!(integrability_index(&empty, c(0.0, 0.0)), WeightValue::zero());
        let cfg = plain_config(vec![atom(2.0, 7, 3)]);
        assert_eq!(
            integrability_index(&cfg, c(2.0, 0.0)),
            WeightValue::rational(7, 3).unwrap()
        );
    }

    #[test]
    fn local_integrability_is_strict() {
        let half = WeightValue::rational(1, 2).unwrap();
        assert!(local_integrability(0, &half).unwrap());
        let one = WeightValue::integer(1);
        assert!(!local_integrability(0, &one).unwrap());
        let five_halves = WeightValue::rational(5, 2).unwrap();
        assert!(local_integrability(2, &five_halves).unwrap());
    }

    #[test]
    fn infinity_integrability_thresholds() {
        let b = WeightValue::rational(5, 2).unwrap();
        assert!(integrability_at_infinity(0, &b).unwrap());
        let b = WeightValue::rational(25, 6).unwrap();
        assert!(integrability_at_infinity(3, &b).unwrap());
        assert!(!integrability_at_infinity(4, &b).unwrap());
        let b = WeightValue::integer(1);
        assert!(!integrability_at_infinity(0, &b).unwrap());
    }

    #[test]
    fn boundary_band_raises_for_irrationals() {
        let nu = WeightValue::irrational("0.999999999999999100000000000000").unwrap();
        assert!(matches!(
            local_integrability(0, &nu),
            Err(Error::BoundaryUndecidable(_))
        ));
    }

    #[test]
    fn monotone_in_k() {
        let nu = WeightValue::rational(7, 5).unwrap();
        let mut prev = false;
        for k in -3..6 {
            let now = local_integrability(k, &nu).unwrap();
            assert!(now >= prev, "local integrability must not flip back off");
            prev = now;
        }
        let b = WeightValue::rational(13, 5).unwrap();
        let mut prev = true;
        for k in -3..6 {
            let now = integrability_at_infinity(k, &b).unwrap();
            assert!(now <= prev, "infinity integrability must not flip back on");
            prev = now;
        }
    }

    #[test]
    fn asymptotic_expansion_of_atomic_weights() {
        let cfg = plain_config(vec![atom(0.0, 1, 1)]);
        let (b, c0) = asymptotic_expansion(&cfg).unwrap();
        assert_eq!(b, WeightValue::integer(1));
        assert_eq!(c0, 0.0);

        let cfg = plain_config(vec![atom(0.0, 1, 2), atom(1.0, 1, 2)]);
        let (b, c0) = asymptotic_expansion(&cfg).unwrap();
        assert_eq!(b, WeightValue::integer(1));
        assert_eq!(c0, 0.0);

        let cfg = WeightConfig::new(
            1,
            vec![atom(0.0, 1, 3)],
            false,
            GammaSpec::Explicit(WeightValue::rational(1, 3).unwrap()),
            BaseKind::WholePlane,
        )
        .unwrap();
        let (b, _) = asymptotic_expansion(&cfg).unwrap();
        assert_eq!(b, WeightValue::rational(1, 3).unwrap());
    }

    #[test]
    fn asymptotic_expansion_rejects_unsupported_configs() {
        let cfg = WeightConfig::new(
            1,
            vec![atom(0.0, 1, 2)],
            true,
            GammaSpec::Auto,
            BaseKind::WholePlane,
        )
        .unwrap();
        assert!(matches!(
            asymptotic_expansion(&cfg),
            Err(Error::UnsupportedConfig(_))
        ));
    }

    /// Circle maxima of `u`-like callables sampled on a log grid; the slope
    /// estimator must recover the coefficient of `log|z|`.
    fn profile_of(f: impl Fn(f64) -> f64, radii: &[f64]) -> RadialProfile {
        let values = radii.iter().map(|&r| f(r)).collect();
        RadialProfile::new(c(0.0, 0.0), radii.to_vec(), values).unwrap()
    }

    #[test]
    fn slope_estimator_recovers_pure_log_profiles() {
        let radii: Vec<f64> = (1..=4).map(|d| 10f64.powi(-d)).collect();
        let p = profile_of(|r| 0.5 * r.ln(), &radii);
        assert_abs_diff_eq!(estimate_lelong_number(&p).unwrap(), 0.5, epsilon = 1e-9);

        // Quarter-decade sampling over the same range keeps the smooth
        // perturbation's slope bias below 1e-3.
        let fine: Vec<f64> = (0..=12).map(|i| 10f64.powf(-1.0 - 0.25 * i as f64)).collect();
        let p = profile_of(|r| 0.5 * r.ln() + r * r, &fine);
        assert_abs_diff_eq!(estimate_lelong_number(&p).unwrap(), 0.5, epsilon = 1e-3);

        let p = profile_of(|_| 3.25, &radii);
        assert_abs_diff_eq!(estimate_lelong_number(&p).unwrap(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn slope_estimator_needs_four_samples() {
        let radii = vec![0.1, 0.01, 0.001];
        let p = profile_of(|r| r.ln(), &radii);
        assert!(matches!(
            estimate_lelong_number(&p),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn finiteness_of_superlevel_sets() {
        let cfg = plain_config(vec![atom(0.0, 1, 2), atom(1.0, 3, 2), atom(2.0, 1, 10)]);
        let delta = WeightValue::rational(1, 2).unwrap();
        let count = cfg
            .atoms()
            .iter()
            .filter(|a| a.weight.surrogate() >= delta.surrogate())
            .count();
        assert_eq!(count, 2);
    }

    #[test]
    fn weight_scaling_is_linear_in_the_riesz_mass() {
        let cfg = plain_config(vec![atom(0.0, 1, 2), atom(1.0, 2, 3)]);
        let scaled = cfg.scale_weights(3).unwrap();
        for (a, b) in cfg.atoms().iter().zip(scaled.atoms()) {
            assert_eq!(b.weight, a.weight.mul_int(3));
            assert_eq!(
                lelong_number(&scaled, a.point),
                lelong_number(&cfg, a.point).mul_int(3)
            );
        }
    }

    #[test]
    fn config_rejects_duplicate_points_and_bad_gamma() {
        let dup = WeightConfig::new(
            1,
            vec![atom(0.0, 1, 2), atom(0.0, 1, 3)],
            false,
            GammaSpec::Auto,
            BaseKind::WholePlane,
        );
        assert!(dup.is_err());

        let low_gamma = WeightConfig::new(
            1,
            vec![atom(0.0, 2, 3)],
            false,
            GammaSpec::Explicit(WeightValue::rational(1, 2).unwrap()),
            BaseKind::WholePlane,
        );
        assert!(low_gamma.is_err());
    }
}
