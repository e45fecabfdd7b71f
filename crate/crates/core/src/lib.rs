//! Decides whether the Bergman space of a Hartogs domain over a
//! one-dimensional base is trivial or infinite dimensional — the dimension
//! is never anything in between — and backs every analytic predicate with
//! an independent numerical oracle.
//!
//! A weight is described by its Riesz data: point masses `(a_j, alpha_j)`,
//! a diffuse-part flag, and the log growth `gamma` at infinity. From that:
//!
//! - [`classify`](classify::classify) runs the decision ladder over the
//!   base-domain class, the diffuse part, excess growth, and the
//!   fractional-part condition on the atom weights;
//! - [`numtheory`] decides whether `sum_j {k * alpha_j}` exceeds 1 for
//!   infinitely many `k` and streams verified witnesses;
//! - [`basis`] constructs the explicit polynomial basis elements
//!   `f_n(z) w^n` level by level and counts dimensions;
//! - [`quadrature`] cross-checks integrability predicates by direct 2-D
//!   integration and Monte Carlo.
//!
//! All types are immutable after construction and all operations are pure;
//! with the default `parallel` feature the heavy loops fan out over rayon
//! without changing any reported number.

pub mod basis;
pub mod classify;
pub mod error;
pub mod numtheory;
pub mod poly;
pub mod quadrature;
pub mod value;
pub mod weights;

mod par;

pub use error::{Error, Result};
pub use value::WeightValue;
pub use weights::{Atom, BaseKind, GammaSpec, WeightConfig};
