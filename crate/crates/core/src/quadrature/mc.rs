//! Monte Carlo pieces of the oracle: polydisc fiber volumes and inner
//! products of base/fiber monomials over truncated Hartogs domains.
//!
//! Sampling is deterministic per `(seed, samples)`: samples are drawn in
//! fixed-size batches, each batch on its own counter-derived stream, and
//! batch sums are reduced in batch order. Thread count never changes a
//! reported number.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::par;
use crate::weights::WeightConfig;

use super::WeightEval;

/// Default seed for every Monte Carlo entry point.
pub const DEFAULT_SEED: u64 = 42;

const BATCH: u64 = 1 << 16;

/// Exact volume of the fiber factor: `integral over the unit polydisc of
/// |w^n|^2` equals `prod_j pi / (n_j + 1)`.
pub fn fiber_constant(n: &[u32]) -> f64 {
    n.iter()
        .map(|&nj| std::f64::consts::PI / (nj as f64 + 1.0))
        .product()
}

/// A monomial `z^i w^n` on the Hartogs domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIndex {
    pub base_power: u32,
    pub fiber_powers: Vec<u32>,
}

impl MonomialIndex {
    pub fn new(base_power: u32, fiber_powers: Vec<u32>) -> Self {
        MonomialIndex {
            base_power,
            fiber_powers,
        }
    }
}

/// Monte Carlo estimate of
/// `integral over D_phi ∩ {|z| < R} of z^i conj(z)^j w^n conj(w)^m`.
/// Distinct monomials are orthogonal, so the true value vanishes off the
/// diagonal; the returned complex estimate carries the sampling noise.
pub fn monomial_inner_product(
    e1: &MonomialIndex,
    e2: &MonomialIndex,
    config: &WeightConfig,
    truncation_radius: f64,
    samples: u64,
    seed: u64,
) -> Result<Complex64> {
    let fiber_dim = config.fiber_dimension() as usize;
    if e1.fiber_powers.len() != fiber_dim || e2.fiber_powers.len() != fiber_dim {
        return Err(Error::InvalidValue(format!(
            "fiber multi-index length must equal the fiber dimension {fiber_dim}"
        )));
    }
    if !(truncation_radius > 0.0) || samples == 0 {
        return Err(Error::InvalidValue(
            "truncation radius and sample count must be positive".into(),
        ));
    }
    let weight = WeightEval::new(config);
    let batches = samples.div_ceil(BATCH);
    let base_area = std::f64::consts::PI * truncation_radius * truncation_radius;

    let partials: Vec<Complex64> = par::map_indexed(batches as usize, |b| {
        let b = b as u64;
        let count = if (b + 1) * BATCH <= samples {
            BATCH
        } else {
            samples - b * BATCH
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b + 1);
        let mut acc = Complex64::new(0.0, 0.0);
        for _ in 0..count {
            let z = sample_disk(&mut rng, truncation_radius);
            let rho = (-weight.phi(z)).exp();
            if !rho.is_finite() {
                continue;
            }
            let fiber_area = std::f64::consts::PI * rho * rho;
            let mut value = z.powu(e1.base_power) * z.conj().powu(e2.base_power);
            let mut importance = base_area;
            for l in 0..fiber_dim {
                let w = sample_disk(&mut rng, rho);
                value *= w.powu(e1.fiber_powers[l]) * w.conj().powu(e2.fiber_powers[l]);
                importance *= fiber_area;
            }
            acc += value * importance;
        }
        acc
    });

    let total: Complex64 = partials.into_iter().sum();
    Ok(total / samples as f64)
}

/// Monte Carlo moment of the unit polydisc: mean of `prod |w_l|^{2 n_l}`
/// times the polydisc volume. The independent check behind
/// [`fiber_constant`].
pub fn polydisc_moment_mc(n: &[u32], samples: u64, seed: u64) -> f64 {
    let dims = n.len();
    let batches = samples.div_ceil(BATCH);
    let partials: Vec<f64> = par::map_indexed(batches as usize, |b| {
        let b = b as u64;
        let count = if (b + 1) * BATCH <= samples {
            BATCH
        } else {
            samples - b * BATCH
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b + 1);
        let mut acc = 0.0;
        for _ in 0..count {
            let mut term = 1.0;
            for &nl in n.iter().take(dims) {
                // |w|^2 is uniform on [0, 1] for w uniform on the disk.
                let u: f64 = rng.gen();
                term *= u.powi(nl as i32);
            }
            acc += term;
        }
        acc
    });
    let mean = partials.into_iter().sum::<f64>() / samples as f64;
    mean * std::f64::consts::PI.powi(dims as i32)
}

fn sample_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let u: f64 = rng.gen();
    let v: f64 = rng.gen();
    Complex64::from_polar(radius * u.sqrt(), 2.0 * std::f64::consts::PI * v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::WeightValue;
    use crate::weights::{BaseKind, GammaSpec};
    use std::f64::consts::PI;

    #[test]
    fn fiber_constants_match_closed_forms() {
        assert!((fiber_constant(&[0]) - PI).abs() < 1e-15);
        assert!((fiber_constant(&[1]) - PI / 2.0).abs() < 1e-15);
        assert!((fiber_constant(&[1, 2]) - PI * PI / 6.0).abs() < 1e-14);
    }

    #[test]
    fn monte_carlo_confirms_fiber_constants() {
        for n in [vec![0u32], vec![1], vec![1, 2]] {
            let exact = fiber_constant(&n);
            let mc = polydisc_moment_mc(&n, 2_000_000, DEFAULT_SEED);
            assert!(
                (mc - exact).abs() / exact < 2e-3,
                "n = {n:?}: mc {mc} vs exact {exact}"
            );
        }
    }

    fn log_plus_config(gamma_num: i64) -> WeightConfig {
        WeightConfig::new(
            1,
            vec![],
            false,
            GammaSpec::Explicit(WeightValue::rational(gamma_num, 1).unwrap()),
            BaseKind::WholePlane,
        )
        .unwrap()
    }

    #[test]
    fn distinct_base_powers_are_orthogonal() {
        let cfg = log_plus_config(2);
        let e0 = MonomialIndex::new(0, vec![0]);
        let e1 = MonomialIndex::new(1, vec![0]);
        let off = monomial_inner_product(&e0, &e1, &cfg, 10.0, 400_000, DEFAULT_SEED).unwrap();
        let n0 = monomial_inner_product(&e0, &e0, &cfg, 10.0, 400_000, DEFAULT_SEED).unwrap();
        let n1 = monomial_inner_product(&e1, &e1, &cfg, 10.0, 400_000, DEFAULT_SEED).unwrap();
        assert!(n0.re > 0.0 && n1.re > 0.0);
        let normalized = off.norm() / (n0.re * n1.re).sqrt();
        assert!(normalized < 0.05, "normalized off-diagonal {normalized}");
    }

    #[test]
    fn distinct_fiber_powers_are_orthogonal() {
        let cfg = WeightConfig::new(
            2,
            vec![],
            false,
            GammaSpec::Explicit(WeightValue::integer(1)),
            BaseKind::WholePlane,
        )
        .unwrap();
        let e1 = MonomialIndex::new(0, vec![1, 0]);
        let e2 = MonomialIndex::new(0, vec![0, 1]);
        let off = monomial_inner_product(&e1, &e2, &cfg, 5.0, 400_000, DEFAULT_SEED).unwrap();
        let n1 = monomial_inner_product(&e1, &e1, &cfg, 5.0, 400_000, DEFAULT_SEED).unwrap();
        let n2 = monomial_inner_product(&e2, &e2, &cfg, 5.0, 400_000, DEFAULT_SEED).unwrap();
        let normalized = off.norm() / (n1.re * n2.re).sqrt();
        assert!(normalized < 0.05, "normalized off-diagonal {normalized}");
    }

    #[test]
    fn repeated_runs_are_bit_identical() {
        let cfg = log_plus_config(2);
        let e = MonomialIndex::new(1, vec![1]);
        let a = monomial_inner_product(&e, &e, &cfg, 8.0, 100_000, 7).unwrap();
        let b = monomial_inner_product(&e, &e, &cfg, 8.0, 100_000, 7).unwrap();
        assert_eq!(a, b);
    }
}
