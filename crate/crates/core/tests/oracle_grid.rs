//! Oracle-agreement grid: the quadrature classifier must reproduce the
//! strict integrability predicates on every margin-respecting cell.

use hartogs_core::quadrature::{
    classify_convergence, ConvergenceVerdict, IntegrandSpec, Numerator, Region, DEFAULT_DECADES,
};
use hartogs_core::weights::{integrability_at_infinity, local_integrability};
use hartogs_core::{Atom, BaseKind, GammaSpec, WeightConfig, WeightValue};
use num_complex::Complex64;

fn origin() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn atom_config(p: i64, q: i64) -> WeightConfig {
    WeightConfig::new(
        1,
        vec![Atom::new(origin(), WeightValue::rational(p, q).unwrap()).unwrap()],
        false,
        GammaSpec::Auto,
        BaseKind::WholePlane,
    )
    .unwrap()
}

fn growth_config(p: i64, q: i64) -> WeightConfig {
    WeightConfig::new(
        1,
        vec![],
        false,
        GammaSpec::Explicit(WeightValue::rational(p, q).unwrap()),
        BaseKind::WholePlane,
    )
    .unwrap()
}

/// |z|^{2k} e^{-2 nu log|z|} near 0 for k in [-3, 6], nu on the 0.05 grid:
/// the empirical verdict must match `local_integrability` whenever the
/// margin |k - (nu - 1)| is at least 0.05.
#[test]
fn local_grid_agrees_with_the_predicate() {
    let mut cells = 0;
    for k in -3..=6i64 {
        for j in 1..=59u32 {
            // nu = j / 20.
            if (20 * k - j as i64 + 20).abs() < 1 {
                continue; // margin below 0.05
            }
            let nu = WeightValue::rational(j as i64, 20).unwrap();
            let expected = local_integrability(k, &nu).unwrap();
            let cfg = atom_config(j as i64, 20);
            let spec = IntegrandSpec {
                config: &cfg,
                scale: 1,
                numerator: Numerator::CenterPower { exponent: k as i32 },
                region: Region::Annulus {
                    center: origin(),
                    r_in: 1e-4,
                    r_out: 1.0,
                },
            };
            let report = classify_convergence(&spec, DEFAULT_DECADES, 8_000).unwrap();
            let want = if expected {
                ConvergenceVerdict::Converges
            } else {
                ConvergenceVerdict::Diverges
            };
            assert_eq!(
                report.verdict, want,
                "k = {k}, nu = {}, slope {}",
                j as f64 / 20.0,
                report.slope
            );
            cells += 1;
        }
    }
    assert_eq!(cells, 588, "every margin-respecting cell must be checked");
}

/// |z|^{2k} e^{-2 B log|z|} near infinity, same contract.
#[test]
fn infinity_grid_agrees_with_the_predicate() {
    let mut cells = 0;
    for k in -3..=6i64 {
        for j in 1..=59u32 {
            if (20 * k - j as i64 + 20).abs() < 1 {
                continue;
            }
            let b = WeightValue::rational(j as i64, 20).unwrap();
            let expected = integrability_at_infinity(k, &b).unwrap();
            let cfg = growth_config(j as i64, 20);
            let spec = IntegrandSpec {
                config: &cfg,
                scale: 1,
                numerator: Numerator::CenterPower { exponent: k as i32 },
                region: Region::ExteriorTail {
                    r_start: 1.0,
                    r_end: 1e16,
                },
            };
            let report = classify_convergence(&spec, DEFAULT_DECADES, 8_000).unwrap();
            let want = if expected {
                ConvergenceVerdict::Converges
            } else {
                ConvergenceVerdict::Diverges
            };
            assert_eq!(
                report.verdict, want,
                "k = {k}, B = {}, slope {}",
                j as f64 / 20.0,
                report.slope
            );
            cells += 1;
        }
    }
    assert_eq!(cells, 588);
}
