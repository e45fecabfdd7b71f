//! Command implementations over the core library.

use hartogs_core::basis;
use hartogs_core::classify;
use hartogs_core::numtheory::{self, FractionalDecision, FractionalTriple, Verdict};
use hartogs_core::quadrature::{
    self, ConvergenceVerdict, IntegrandSpec, Numerator, Region,
};
use hartogs_core::weights::{self, BaseKind};
use hartogs_core::{WeightConfig, WeightValue};
use num_complex::Complex64;

use crate::report::{render_f64, RunReport, VerifyCheck};
use crate::{config::serialize_config, CliError};

pub struct VerifyOptions {
    pub grid_margin: f64,
    pub samples: u32,
    pub seed: u64,
}

fn base_report(command: &str, config: &WeightConfig, seed: u64) -> RunReport {
    RunReport {
        command: command.into(),
        seed,
        config_echo: serialize_config(config),
        classification: None,
        census: None,
        elements: None,
        witness: None,
        verification: None,
    }
}

pub fn run_classify(config: &WeightConfig) -> Result<RunReport, CliError> {
    let mut report = base_report("classify", config, 0);
    report.classification = Some(classify::classify(config)?);
    Ok(report)
}

pub fn run_basis(config: &WeightConfig, k_max: u64) -> Result<RunReport, CliError> {
    let mut report = base_report("basis", config, 0);
    report.census = Some(basis::dimension_census(config, k_max)?);
    report.elements = Some(basis::enumerate_basis(config, k_max)?);
    Ok(report)
}

pub fn run_witness(
    config: &WeightConfig,
    count: usize,
    scan_bound: u64,
) -> Result<RunReport, CliError> {
    let mut report = base_report("witness", config, 0);
    report.witness = Some(witness_decision(config, count, scan_bound)?);
    Ok(report)
}

fn witness_decision(
    config: &WeightConfig,
    count: usize,
    scan_bound: u64,
) -> Result<(FractionalTriple, FractionalDecision), CliError> {
    let weights: Vec<WeightValue> = config.atoms().iter().map(|a| a.weight.clone()).collect();
    let triple = FractionalTriple::from_weights(&weights)?;
    let mut decision = numtheory::decide_fractional_with(&triple, scan_bound)?;
    if decision.verdict == Verdict::InfinitelyManyExceedOne && count != decision.witnesses.len() {
        decision.witnesses = numtheory::witness_stream_with(&triple, count, scan_bound)?;
    }
    Ok((triple, decision))
}

pub fn run_verify(config: &WeightConfig, opts: &VerifyOptions) -> Result<RunReport, CliError> {
    let mut report = base_report("verify", config, opts.seed);
    report.verification = Some(verification_checks(config, opts)?);
    Ok(report)
}

pub fn run_report(
    config: &WeightConfig,
    k_max: u64,
    count: usize,
    scan_bound: u64,
    opts: &VerifyOptions,
) -> Result<RunReport, CliError> {
    let mut report = base_report("report", config, opts.seed);
    report.classification = Some(classify::classify(config)?);
    if config.base_kind() == BaseKind::WholePlane && !config.continuous_part_present() {
        report.census = Some(basis::dimension_census(config, k_max)?);
        report.elements = Some(basis::enumerate_basis(config, k_max)?);
    }
    report.witness = Some(witness_decision(config, count, scan_bound)?);
    report.verification = Some(verification_checks(config, opts)?);
    Ok(report)
}

fn verdict_name(v: ConvergenceVerdict) -> &'static str {
    match v {
        ConvergenceVerdict::Converges => "converges",
        ConvergenceVerdict::Diverges => "diverges",
        ConvergenceVerdict::Inconclusive => "inconclusive",
    }
}

/// The oracle cross-checks: the standard (k, nu) and (k, B) soundness grids
/// plus config-specific spot checks of the predicates the config exercises.
fn verification_checks(
    config: &WeightConfig,
    opts: &VerifyOptions,
) -> Result<Vec<VerifyCheck>, CliError> {
    let mut checks = Vec::new();
    let decades = quadrature::DEFAULT_DECADES;
    let per_cell = (opts.samples / 4).max(2_000);

    // Local grid: single atom of mass nu at the origin.
    for k in -2..=5i64 {
        for j in 1..=29u32 {
            let nu = j as f64 / 10.0;
            if (k as f64 - (nu - 1.0)).abs() < opts.grid_margin - 1e-12 {
                continue;
            }
            let nu_val = WeightValue::rational(j as i64, 10).map_err(CliError::Math)?;
            let expected = weights::local_integrability(k, &nu_val)?;
            let cfg = single_atom(j as i64, 10)?;
            let spec = IntegrandSpec {
                config: &cfg,
                scale: 1,
                numerator: Numerator::CenterPower { exponent: k as i32 },
                region: Region::Annulus {
                    center: Complex64::new(0.0, 0.0),
                    r_in: 1e-4,
                    r_out: 1.0,
                },
            };
            let observed = quadrature::classify_convergence(&spec, decades, per_cell)?;
            push_check(
                &mut checks,
                format!("local_grid k={k} nu={nu}"),
                expected,
                observed.verdict,
            );
        }
    }

    // Infinity grid: pure log growth B.
    for k in -2..=5i64 {
        for j in 1..=29u32 {
            let b = j as f64 / 10.0;
            if (k as f64 - (b - 1.0)).abs() < opts.grid_margin - 1e-12 {
                continue;
            }
            let b_val = WeightValue::rational(j as i64, 10).map_err(CliError::Math)?;
            let expected = weights::integrability_at_infinity(k, &b_val)?;
            let cfg = growth_only(j as i64, 10)?;
            let spec = IntegrandSpec {
                config: &cfg,
                scale: 1,
                numerator: Numerator::CenterPower { exponent: k as i32 },
                region: Region::ExteriorTail {
                    r_start: 1.0,
                    r_end: 1e16,
                },
            };
            let observed = quadrature::classify_convergence(&spec, decades, per_cell)?;
            push_check(
                &mut checks,
                format!("infinity_grid k={k} B={b}"),
                expected,
                observed.verdict,
            );
        }
    }

    // Config-specific: each atom's local integrability at its forced
    // multiplicity, margin-respecting cells only.
    if config.base_kind() == BaseKind::WholePlane && !config.continuous_part_present() {
        for (idx, atom) in config.atoms().iter().enumerate() {
            let nu = atom.weight.to_f64();
            let m = nu.floor() as i64;
            if (m as f64 - (nu - 1.0)).abs() < opts.grid_margin {
                continue;
            }
            let r_out = config
                .atoms()
                .iter()
                .filter(|other| other.point != atom.point)
                .map(|other| (other.point - atom.point).norm())
                .fold(1.0f64, f64::min)
                * 0.4;
            let expected = weights::local_integrability(m, &atom.weight)?;
            let spec = IntegrandSpec {
                config,
                scale: 1,
                numerator: Numerator::CenterPower { exponent: m as i32 },
                region: Region::Annulus {
                    center: atom.point,
                    r_in: r_out * 1e-4,
                    r_out,
                },
            };
            let observed = quadrature::classify_convergence(&spec, decades, per_cell)?;
            push_check(
                &mut checks,
                format!("atom[{idx}] local order {m}"),
                expected,
                observed.verdict,
            );
        }
    }

    // Fiber volumes: closed form against Monte Carlo (seeded).
    for n in [vec![0u32], vec![2]] {
        let exact = quadrature::fiber_constant(&n);
        let mc = quadrature::mc::polydisc_moment_mc(&n, 400_000, opts.seed);
        let agree = (mc - exact).abs() / exact < 2e-2;
        checks.push(VerifyCheck {
            name: format!("fiber_constant n={n:?}"),
            expected: render_f64(exact),
            observed: render_f64(mc),
            agree,
        });
    }

    Ok(checks)
}

fn push_check(
    checks: &mut Vec<VerifyCheck>,
    name: String,
    expected_integrable: bool,
    observed: ConvergenceVerdict,
) {
    let expected = if expected_integrable {
        ConvergenceVerdict::Converges
    } else {
        ConvergenceVerdict::Diverges
    };
    checks.push(VerifyCheck {
        name,
        expected: verdict_name(expected).into(),
        observed: verdict_name(observed).into(),
        agree: expected == observed,
    });
}

fn single_atom(p: i64, q: i64) -> Result<WeightConfig, CliError> {
    let atom = hartogs_core::Atom::new(
        Complex64::new(0.0, 0.0),
        WeightValue::rational(p, q).map_err(CliError::Math)?,
    )
    .map_err(CliError::Math)?;
    WeightConfig::new(
        1,
        vec![atom],
        false,
        hartogs_core::GammaSpec::Auto,
        BaseKind::WholePlane,
    )
    .map_err(CliError::Math)
}

fn growth_only(p: i64, q: i64) -> Result<WeightConfig, CliError> {
    WeightConfig::new(
        1,
        vec![],
        false,
        hartogs_core::GammaSpec::Explicit(WeightValue::rational(p, q).map_err(CliError::Math)?),
        BaseKind::WholePlane,
    )
    .map_err(CliError::Math)
}
