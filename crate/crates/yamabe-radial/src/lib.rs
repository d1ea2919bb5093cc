//! Numerical study of sign-changing solutions for critical elliptic problems
//! of the form -div_g(a∇u) + bu = λ f|u|^{2♯-2}u with Dirichlet data on
//! radially symmetric model manifolds.
//!
//! The crate provides, as separately usable layers:
//!
//! * [`geometry`] — constant-curvature balls and annuli and their radial
//!   volume elements (sign convention Δ_g = -div_g(∇));
//! * [`special`] — Gamma/Beta closed forms, unit-sphere volumes ω_n, the
//!   sharp Sobolev constant K₀ and the integrals I_p^q with recurrences;
//! * [`problem`] — piecewise-linear finite elements on a radial mesh and the
//!   weighted forms of the energy and the constraint;
//! * [`linsolve`] — tridiagonal solves, the boundary-data extension h, the
//!   first eigenpair of -div_g(a∇), and the coercivity check;
//! * [`solver`] — constrained minimization over {∫f|w+h|^q = γ} by
//!   preconditioned projected gradients, multiplier extraction, continuation
//!   q → 2♯, and sign-change detection;
//! * [`bubbles`] — concentrating test functions, the energy/constraint
//!   asymptotics as ε → 0, the geometric quantity H(x₀), and coefficient
//!   fits for the n > 4 and n = 4 expansion branches;
//! * [`config`] / [`cli`] — the flat key-value run configuration and the
//!   command-line front end (`check`, `solve`, `continue`, `bubble-scan`,
//!   `oracle`).
//!
//! The `examples/` directory contains one runnable walk-through per
//! capability; `cargo run --example` is the quickest way to explore.

// published quadrature/Lanczos tables keep their source digits, and
// `!(x > 0)`-style guards deliberately reject NaN
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod bubbles;
pub mod cli;
pub mod coeffs;
pub mod config;
pub mod error;
pub mod geometry;
pub mod linsolve;
pub mod mesh;
pub mod problem;
pub mod quad;
pub mod solver;
pub mod special;
pub mod tridiag;

pub use coeffs::{CoefficientField, EvenPolynomial};
pub use error::{Error, Result};
pub use geometry::RadialManifold;
pub use linsolve::{coercivity_check, extend_boundary_data, first_eigenpair, EigenPair};
pub use mesh::RadialMesh;
pub use problem::{assemble, DiscreteProblem};
pub use solver::{
    continuation_to_critical, detect_sign_change, feasible_point, minimize_subcritical,
    nontriviality_condition, project_to_constraint, ConstraintSpec, SolveOptions, SolveResult,
};
pub use special::critical_exponent;
