//! Numerical and symbolic toolkit for the spectral geometry of
//! noncommutative two-tori.
//!
//! The crate is organized around seven subsystems:
//!
//! * [`algebra`] — truncated Fourier-series model of the smooth torus
//!   algebras, with product, involution, trace, derivations and the
//!   Hermitian connection solver;
//! * [`modular`] — the modular derivation `∇ = -ad h` and functions of it
//!   applied to algebra elements, by two independent methods;
//! * [`functions`] — the scalar registry of curvature functions (modified
//!   logarithms, divided differences, the F/G and K/H families) with
//!   singularity-safe evaluation, Taylor data and quadrature oracles;
//! * [`symbols`] — the symbolic term algebra for the twisted
//!   pseudodifferential multiplier calculus and the resolvent expansion;
//! * [`heisenberg`] — sampled Schwartz sections of Heisenberg bimodules,
//!   module actions, connections, lattice inner products and trace formulas;
//! * [`spectral`] — Hermite-basis realizations, heat traces, expansion fits
//!   and the numerical log-determinant;
//! * [`functional`] — curvature densities, the closed-form determinant
//!   functional, its gradient and the extremizing flow.

pub mod algebra;
pub mod error;
pub mod functional;
pub mod functions;
pub mod geometry;
pub mod heisenberg;
pub mod modular;
pub mod spectral;
pub mod symbols;

pub use error::{Error, Result};
pub use geometry::ModuleGeometry;

/// Complex scalar used throughout the numerical layers.
pub type C64 = num_complex::Complex<f64>;
