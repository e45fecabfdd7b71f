//! Exact polynomial arithmetic over complex rationals.
//!
//! Basis elements are canonical in *factored* form; expansion into a dense
//! coefficient list is exact because every f64 coordinate is itself a
//! rational. Synthetic division against exact roots is what the
//! vanishing-order checks run on.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A complex number with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRat {
    pub fn zero() -> Self {
        ComplexRat {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        ComplexRat {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// Exact conversion: every finite f64 is a rational number.
    pub fn from_f64_pair(re: f64, im: f64) -> Option<Self> {
        Some(ComplexRat {
            re: BigRational::from_float(re)?,
            im: BigRational::from_float(im)?,
        })
    }

    pub fn from_complex(z: Complex64) -> Option<Self> {
        Self::from_f64_pair(z.re, z.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &ComplexRat) -> ComplexRat {
        ComplexRat {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    pub fn sub(&self, other: &ComplexRat) -> ComplexRat {
        ComplexRat {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }

    pub fn mul(&self, other: &ComplexRat) -> ComplexRat {
        ComplexRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }
}

/// Dense polynomial with exact complex-rational coefficients, constant term
/// first. The zero polynomial is an empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly {
    coeffs: Vec<ComplexRat>,
}

impl DensePoly {
    pub fn one() -> Self {
        DensePoly {
            coeffs: vec![ComplexRat::one()],
        }
    }

    pub fn coeffs(&self) -> &[ComplexRat] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    /// Multiply by (z - root).
    pub fn mul_linear(&self, root: &ComplexRat) -> DensePoly {
        let mut out = vec![ComplexRat::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] = out[i + 1].add(c);
            out[i] = out[i].sub(&root.mul(c));
        }
        DensePoly { coeffs: out }.trim()
    }

    /// Multiply by z^e.
    pub fn mul_power(&self, e: usize) -> DensePoly {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut out = vec![ComplexRat::zero(); e];
        out.extend(self.coeffs.iter().cloned());
        DensePoly { coeffs: out }
    }

    /// Synthetic division by (z - root): quotient and exact remainder.
    pub fn synthetic_div(&self, root: &ComplexRat) -> (DensePoly, ComplexRat) {
        if self.coeffs.is_empty() {
            return (DensePoly { coeffs: vec![] }, ComplexRat::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![ComplexRat::zero(); n - 1];
        let mut carry = self.coeffs[n - 1].clone();
        for i in (0..n - 1).rev() {
            quot[i] = carry.clone();
            carry = self.coeffs[i].add(&root.mul(&carry));
        }
        (DensePoly { coeffs: quot }.trim(), carry)
    }

    /// Exact order of vanishing at `root` (capped to avoid looping on the
    /// zero polynomial, which vanishes to every order).
    pub fn vanishing_order(&self, root: &ComplexRat, cap: usize) -> usize {
        let mut order = 0;
        let mut poly = self.clone().trim();
        while order < cap {
            if poly.coeffs.is_empty() {
                return cap;
            }
            let (quot, rem) = poly.synthetic_div(root);
            if !rem.is_zero() {
                break;
            }
            poly = quot;
            order += 1;
        }
        order
    }

    pub fn eval(&self, z: &ComplexRat) -> ComplexRat {
        let mut acc = ComplexRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(c);
        }
        acc
    }
}

/// A polynomial in the canonical factored form
/// `prod_j (z - a_j)^{m_j} * z^e`. Expansion is available and exact, but the
/// factored form is the source of truth.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredPoly {
    pub atom_factors: Vec<(Complex64, u32)>,
    pub tail_power: u32,
}

impl FactoredPoly {
    pub fn degree(&self) -> u32 {
        self.atom_factors.iter().map(|(_, m)| *m).sum::<u32>() + self.tail_power
    }

    /// Exact dense expansion.
    pub fn expand(&self) -> DensePoly {
        let mut poly = DensePoly::one();
        for (point, mult) in &self.atom_factors {
            let root = ComplexRat::from_complex(*point)
                .expect("atom coordinates are finite by construction");
            for _ in 0..*mult {
                poly = poly.mul_linear(&root);
            }
        }
        poly.mul_power(self.tail_power as usize)
    }

    /// |f(z)|^2 in floating point, straight off the factors.
    pub fn eval_abs2(&self, z: Complex64) -> f64 {
        let mut log_abs = 0.0f64;
        for (point, mult) in &self.atom_factors {
            let d = (z - point).norm_sqr();
            log_abs += (*mult as f64) * d.max(f64::MIN_POSITIVE).ln();
        }
        if self.tail_power > 0 {
            log_abs += (self.tail_power as f64) * z.norm_sqr().max(f64::MIN_POSITIVE).ln();
        }
        log_abs.exp()
    }

    /// Human-readable factored rendering, e.g. `(z)^2 * (z-1)`.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (point, mult) in &self.atom_factors {
            let base = if point.re == 0.0 && point.im == 0.0 {
                "z".to_string()
            } else if point.im == 0.0 {
                if point.re < 0.0 {
                    format!("z+{}", -point.re)
                } else {
                    format!("z-{}", point.re)
                }
            } else {
                format!("z-({}+{}i)", point.re, point.im)
            };
            if *mult == 1 {
                parts.push(format!("({base})"));
            } else {
                parts.push(format!("({base})^{mult}"));
            }
        }
        if self.tail_power == 1 {
            parts.push("z".into());
        } else if self.tail_power > 1 {
            parts.push(format!("z^{}", self.tail_power));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" * ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn crat(re: f64) -> ComplexRat {
        ComplexRat::from_f64_pair(re, 0.0).unwrap()
    }

    #[test]
    fn expansion_of_z2_times_z_minus_1() {
        let f = FactoredPoly {
            atom_factors: vec![(Complex64::new(0.0, 0.0), 2), (Complex64::new(1.0, 0.0), 1)],
            tail_power: 0,
        };
        // z^2 (z - 1) = z^3 - z^2.
        let dense = f.expand();
        assert_eq!(dense.degree(), Some(3));
        let c = dense.coeffs();
        assert!(c[0].is_zero());
        assert!(c[1].is_zero());
        assert_eq!(c[2].re, BigRational::from_integer(BigInt::from(-1)));
        assert_eq!(c[3].re, BigRational::from_integer(BigInt::from(1)));
    }

    #[test]
    fn vanishing_orders_are_exact() {
        let f = FactoredPoly {
            atom_factors: vec![(Complex64::new(0.0, 0.0), 3), (Complex64::new(2.0, 0.0), 1)],
            tail_power: 0,
        };
        let dense = f.expand();
        assert_eq!(dense.vanishing_order(&crat(0.0), 10), 3);
        assert_eq!(dense.vanishing_order(&crat(2.0), 10), 1);
        assert_eq!(dense.vanishing_order(&crat(1.0), 10), 0);
    }

    #[test]
    fn synthetic_division_round_trips() {
        let f = FactoredPoly {
            atom_factors: vec![(Complex64::new(1.5, 0.0), 2)],
            tail_power: 1,
        };
        let dense = f.expand();
        let (quot, rem) = dense.synthetic_div(&crat(1.5));
        assert!(rem.is_zero());
        let back = quot.mul_linear(&crat(1.5));
        assert_eq!(back, dense);
    }

    #[test]
    fn abs2_matches_expanded_evaluation() {
        let f = FactoredPoly {
            atom_factors: vec![(Complex64::new(0.0, 0.0), 2), (Complex64::new(1.0, 0.0), 1)],
            tail_power: 0,
        };
        let z = Complex64::new(0.3, -0.7);
        let direct = f.eval_abs2(z);
        let via_expand = {
            let w = z.powu(2) * (z - Complex64::new(1.0, 0.0));
            w.norm_sqr()
        };
        assert!((direct - via_expand).abs() <= 1e-12 * via_expand.abs().max(1.0));
    }
}
