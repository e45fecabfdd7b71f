//! Independent numerical oracle: 2-D integration of `numerator * e^{-2k*phi}`
//! in polar coordinates, plus an empirical convergence/divergence classifier
//! for the integrability predicates.
//!
//! The integrands are radially power-like near their singularities, so the
//! radial grids are geometric and the quadrature runs in the log-radius
//! domain, where `r^beta` becomes a smooth exponential. Cells are
//! independent and evaluated in parallel; accumulation order is fixed, so
//! results are deterministic regardless of thread count.

pub mod mc;

pub use mc::{fiber_constant, monomial_inner_product, MonomialIndex, DEFAULT_SEED};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::par;
use crate::poly::FactoredPoly;
use crate::weights::WeightConfig;

/// Verdict thresholds and family depth, fixed constants of the artifact.
pub const CONVERGE_INCREMENT_TOL: f64 = 1e-2;
pub const DIVERGE_SLOPE: f64 = 0.05;
pub const MIN_CUTOFF_DECADES: u32 = 4;
/// Default cutoff depth. Deep enough that a margin of 0.05 in the exponent
/// separates the two verdicts under the fixed thresholds above.
pub const DEFAULT_DECADES: u32 = 16;

const BOUNDARY_ATOM_TOL: f64 = 1e-9;

/// Integration region. Disks and annuli carry their own center; the
/// exterior tail is centered at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    Disk { center: Complex64, radius: f64 },
    Annulus { center: Complex64, r_in: f64, r_out: f64 },
    ExteriorTail { r_start: f64, r_end: f64 },
}

impl Region {
    fn center(&self) -> Complex64 {
        match self {
            Region::Disk { center, .. } | Region::Annulus { center, .. } => *center,
            Region::ExteriorTail { .. } => Complex64::new(0.0, 0.0),
        }
    }

    fn radial_range(&self) -> (f64, f64) {
        match self {
            Region::Disk { radius, .. } => (0.0, *radius),
            Region::Annulus { r_in, r_out, .. } => (*r_in, *r_out),
            Region::ExteriorTail { r_start, r_end } => (*r_start, *r_end),
        }
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.radial_range();
        let ok = match self {
            Region::Disk { .. } => hi > 0.0,
            _ => lo > 0.0 && lo < hi,
        };
        if !ok || !hi.is_finite() {
            return Err(Error::InvalidValue(format!("degenerate region {self:?}")));
        }
        Ok(())
    }
}

/// What multiplies the weight factor under the integral sign.
#[derive(Debug, Clone, Copy)]
pub enum Numerator<'a> {
    One,
    /// `|z - center|^{2 * exponent}` about the region center; the exponent
    /// may be negative.
    CenterPower { exponent: i32 },
    /// `|f(z)|^2` for a factored polynomial.
    AbsSquared(&'a FactoredPoly),
}

/// A full integrand: `numerator * e^{-2 * scale * phi}` over a region,
/// where `phi` is the canonical realization of the config's Riesz data —
/// `sum_j alpha_j log|z - a_j|` plus `(gamma - sum alpha) log+|z|` when the
/// declared growth exceeds the atom sum.
#[derive(Debug, Clone, Copy)]
pub struct IntegrandSpec<'a> {
    pub config: &'a WeightConfig,
    pub scale: u32,
    pub numerator: Numerator<'a>,
    pub region: Region,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub value: f64,
    pub error: f64,
}

/// Floating-point view of the weight.
pub(crate) struct WeightEval {
    atoms: Vec<(Complex64, f64)>,
    surplus: f64,
}

impl WeightEval {
    pub(crate) fn new(config: &WeightConfig) -> Self {
        let atoms: Vec<(Complex64, f64)> = config
            .atoms()
            .iter()
            .map(|a| (a.point, a.weight.to_f64()))
            .collect();
        let sum: f64 = atoms.iter().map(|(_, w)| w).sum();
        let surplus = (config.resolved_gamma().to_f64() - sum).max(0.0);
        WeightEval { atoms, surplus }
    }

    pub(crate) fn phi(&self, z: Complex64) -> f64 {
        let mut acc = 0.0;
        for (a, alpha) in &self.atoms {
            let d2 = (z - a).norm_sqr().max(f64::MIN_POSITIVE);
            acc += alpha * 0.5 * d2.ln();
        }
        if self.surplus > 0.0 {
            let r2 = z.norm_sqr();
            if r2 > 1.0 {
                acc += self.surplus * 0.5 * r2.ln();
            }
        }
        acc
    }
}

fn log_numerator(num: &Numerator, z: Complex64, center: Complex64, t: f64) -> f64 {
    match num {
        Numerator::One => 0.0,
        // |z - c| = e^t exactly on the polar grid.
        Numerator::CenterPower { exponent } => 2.0 * (*exponent as f64) * t,
        Numerator::AbsSquared(poly) => {
            let _ = center;
            let mut acc = 0.0;
            for (point, mult) in &poly.atom_factors {
                let d2 = (z - point).norm_sqr().max(f64::MIN_POSITIVE);
                acc += (*mult as f64) * d2.ln();
            }
            if poly.tail_power > 0 {
                acc += (poly.tail_power as f64) * z.norm_sqr().max(f64::MIN_POSITIVE).ln();
            }
            acc
        }
    }
}

/// Is the integrand a function of the center distance alone?
fn is_radial(spec: &IntegrandSpec) -> bool {
    let c = spec.region.center();
    let at_center = |p: &Complex64| p.re == c.re && p.im == c.im;
    let atoms_ok = spec.config.atoms().iter().all(|a| at_center(&a.point));
    let surplus = WeightEval::new(spec.config).surplus;
    let origin_centered = c.re == 0.0 && c.im == 0.0;
    let surplus_ok = surplus == 0.0 || origin_centered;
    let num_ok = match &spec.numerator {
        Numerator::One | Numerator::CenterPower { .. } => true,
        Numerator::AbsSquared(poly) => {
            poly.atom_factors.iter().all(|(p, _)| at_center(p))
                && (poly.tail_power == 0 || origin_centered)
        }
    };
    atoms_ok && surplus_ok && num_ok
}

fn check_boundary_atoms(spec: &IntegrandSpec) -> Result<()> {
    let c = spec.region.center();
    let (lo, hi) = spec.region.radial_range();
    for a in spec.config.atoms() {
        let d = (a.point - c).norm();
        if d == 0.0 {
            // A singularity at the center is resolved by the radial grid.
            continue;
        }
        if (d - lo).abs() < BOUNDARY_ATOM_TOL || (d - hi).abs() < BOUNDARY_ATOM_TOL {
            return Err(Error::SingularityOnBoundary {
                re: a.point.re,
                im: a.point.im,
            });
        }
    }
    Ok(())
}

/// 12-point Gauss-Legendre nodes and weights on [-1, 1].
const GL_NODES: [(f64, f64); 12] = [
    (-0.9815606342467192, 0.04717533638651183),
    (-0.9041172563704748, 0.10693932599531843),
    (-0.7699026741943047, 0.16007832854334622),
    (-0.5873179542866175, 0.20316742672306592),
    (-0.3678314989981802, 0.23349253653835481),
    (-0.1252334085114689, 0.24914704581340277),
    (0.1252334085114689, 0.24914704581340277),
    (0.3678314989981802, 0.23349253653835481),
    (0.5873179542866175, 0.20316742672306592),
    (0.7699026741943047, 0.16007832854334622),
    (0.9041172563704748, 0.10693932599531843),
    (0.9815606342467192, 0.04717533638651183),
];

/// Radial breakpoints in log space, geometric with clustering at the radii
/// of off-center singular rings.
fn breakpoints(spec: &IntegrandSpec, cells_per_decade: usize) -> Vec<f64> {
    let (lo, hi) = spec.region.radial_range();
    let c = spec.region.center();
    // Disks are truncated at a harmless relative core.
    let lo = if lo <= 0.0 { hi * 1e-14 } else { lo };
    let (t0, t1) = (lo.ln(), hi.ln());
    let decades = (t1 - t0) / std::f64::consts::LN_10;
    let n = ((decades * cells_per_decade as f64).ceil() as usize).clamp(1, 4000);
    let mut ts: Vec<f64> = (0..=n)
        .map(|i| t0 + (t1 - t0) * i as f64 / n as f64)
        .collect();
    let mut ring_radii: Vec<f64> = spec
        .config
        .atoms()
        .iter()
        .map(|a| (a.point - c).norm())
        .collect();
    if let Numerator::AbsSquared(poly) = &spec.numerator {
        ring_radii.extend(poly.atom_factors.iter().map(|(p, _)| (p - c).norm()));
        if poly.tail_power > 0 {
            ring_radii.push(c.norm());
        }
    }
    for s in ring_radii {
        if s <= lo || s >= hi {
            continue;
        }
        for delta in [0.0, -0.3, 0.3, -0.1, 0.1, -0.03, 0.03, -0.01, 0.01] {
            let r = s * (1.0 + delta);
            if r > lo && r < hi {
                ts.push(r.ln());
            }
        }
    }
    ts.sort_by(|a, b| a.total_cmp(b));
    ts.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
    ts
}

fn integrate_at_level(
    spec: &IntegrandSpec,
    cells_per_decade: usize,
    theta_nodes: usize,
) -> Result<f64> {
    let radial = is_radial(spec);
    let m_theta = if radial { 1 } else { theta_nodes.max(8) };
    let ts = breakpoints(spec, cells_per_decade);
    let weight = WeightEval::new(spec.config);
    let c = spec.region.center();
    let scale = spec.scale as f64;
    let two_pi = 2.0 * std::f64::consts::PI;

    let cells: Vec<(f64, f64)> = ts.windows(2).map(|w| (w[0], w[1])).collect();
    let values: Vec<f64> = par::map_slice(&cells, |&(ta, tb)| {
        let half = 0.5 * (tb - ta);
        let mid = 0.5 * (ta + tb);
        let mut cell_sum = 0.0;
        for (node, gw) in GL_NODES {
            let t = mid + half * node;
            let r = t.exp();
            let mut theta_sum = 0.0;
            for m in 0..m_theta {
                let theta = two_pi * (m as f64 + 0.5) / m_theta as f64;
                let z = c + Complex64::from_polar(r, theta);
                let log_f =
                    log_numerator(&spec.numerator, z, c, t) - 2.0 * scale * weight.phi(z) + 2.0 * t;
                theta_sum += log_f.exp();
            }
            cell_sum += gw * theta_sum * (two_pi / m_theta as f64);
        }
        cell_sum * half
    });
    Ok(values.iter().sum())
}

/// Estimates the integral with an error bound from comparing two refinement
/// levels (Richardson-style difference).
pub fn integrate(spec: &IntegrandSpec, samples: u32) -> Result<IntegralEstimate> {
    spec.region.validate()?;
    check_boundary_atoms(spec)?;
    let budget = samples.max(1_000) as usize;
    // Split the node budget between the two levels, biased to the finer one.
    let theta = ((budget / 600) as f64).sqrt() as usize;
    let theta = theta.clamp(16, 512);
    let coarse = integrate_at_level(spec, 4, theta)?;
    let fine = integrate_at_level(spec, 8, 2 * theta)?;
    let error = (fine - coarse).abs() + 1e-15 * fine.abs();
    Ok(IntegralEstimate { value: fine, error })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceVerdict {
    Converges,
    Diverges,
    Inconclusive,
}

/// Partial integrals against a moving cutoff, and what they say.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// `(cutoff parameter, integral up to that cutoff)`; the estimates are
    /// nondecreasing because the integrand is nonnegative.
    pub partial_sums: Vec<(f64, f64)>,
    pub verdict: ConvergenceVerdict,
    /// Log-log growth rate of the partials over the last cutoffs.
    pub slope: f64,
}

/// Classifies convergence by accumulating one shell per decade: inward
/// toward the center singularity for disks/annuli, outward for tails.
/// `Converges` needs a final relative increment below 1e-2; `Diverges`
/// needs a log-log slope above 0.05 sustained over the last three cutoffs.
pub fn classify_convergence(
    spec: &IntegrandSpec,
    decades: u32,
    samples: u32,
) -> Result<ConvergenceReport> {
    if decades < MIN_CUTOFF_DECADES {
        return Err(Error::InvalidValue(format!(
            "cutoff family must span at least {MIN_CUTOFF_DECADES} decades, got {decades}"
        )));
    }
    spec.region.validate()?;
    let shell_budget = (samples / decades).max(500);
    let c = spec.region.center();
    let mut partials = Vec::with_capacity(decades as usize);
    let mut total = 0.0;

    let inward = !matches!(spec.region, Region::ExteriorTail { .. });
    let anchor = match spec.region {
        Region::Disk { radius, .. } => radius,
        Region::Annulus { r_out, .. } => r_out,
        Region::ExteriorTail { r_start, .. } => r_start,
    };

    for m in 1..=decades {
        let (lo, hi) = if inward {
            (anchor * 10f64.powi(-(m as i32)), anchor * 10f64.powi(1 - m as i32))
        } else {
            (anchor * 10f64.powi(m as i32 - 1), anchor * 10f64.powi(m as i32))
        };
        let shell = IntegrandSpec {
            region: Region::Annulus {
                center: c,
                r_in: lo,
                r_out: hi,
            },
            ..*spec
        };
        check_boundary_atoms(&shell)?;
        let est = integrate(&shell, shell_budget)?;
        total += est.value.max(0.0);
        let cutoff = if inward { lo } else { hi };
        partials.push((cutoff, total));
    }

    let n = partials.len();
    let last = partials[n - 1].1;
    if last <= 0.0 {
        return Ok(ConvergenceReport {
            partial_sums: partials,
            verdict: ConvergenceVerdict::Converges,
            slope: 0.0,
        });
    }
    let rel_inc = (partials[n - 1].1 - partials[n - 2].1) / last;
    // Growth per decade of cutoff extension, in log10.
    let slope_between = |a: usize, b: usize| -> f64 {
        let (ia, ib) = (partials[a].1, partials[b].1);
        if ia <= 0.0 || ib <= 0.0 {
            return 0.0;
        }
        (ib / ia).log10()
    };
    let s1 = slope_between(n - 3, n - 2);
    let s2 = slope_between(n - 2, n - 1);

    let verdict = if rel_inc < CONVERGE_INCREMENT_TOL {
        ConvergenceVerdict::Converges
    } else if s1 > DIVERGE_SLOPE && s2 > DIVERGE_SLOPE {
        ConvergenceVerdict::Diverges
    } else {
        ConvergenceVerdict::Inconclusive
    };
    Ok(ConvergenceReport {
        partial_sums: partials,
        verdict,
        slope: s2,
    })
}
