//! Exact decision procedures for the truncated realizability problem on
//! finite site spaces.
//!
//! A point configuration is a vector of particle counts over a finite set of
//! sites. Given the first moment functionals `(ℓ₀, ℓ₁, ℓ₂)` of an unknown
//! point process and an admissible set `K` of configurations, the solver
//! either produces a nonnegative measure on `K` that reproduces the moments
//! exactly, or a polynomial that is nonnegative on `K` but pairs negatively
//! with the functional. On a finite `K` the moment cone is polyhedral, so one
//! of the two always exists and both are checked in exact rational
//! arithmetic.
//!
//! Modules:
//! - [`config`]: site spaces, configurations and enumeration of `K`.
//! - [`moments`]: tensor and factorial powers, moment and correlation
//!   functions, and conversion between them.
//! - [`poly`]: polynomials on configurations, restricted cubics, linear
//!   functionals and the ratio bound `λ_b`.
//! - [`lp`]: exact rational simplex with Farkas certificates.
//! - [`realize`]: representing measures, positivity certificates and the
//!   cubic extension criterion.
//! - [`generators`]: known-realizable point processes used as forward oracles.
//! - [`format`]: JSON schemas for instances, measures and results.

pub mod config;
pub mod error;
pub mod format;
pub mod generators;
pub mod lp;
pub mod moments;
pub mod poly;
pub mod rational;
pub mod realize;

pub use config::{
    count_configurations, enumerate_configurations, enumerate_configurations_with_cap, total_mass,
    Configuration, KSpec, SiteSpace, DEFAULT_ENUMERATION_CAP,
};
pub use error::{Error, Result};
pub use lp::{LinearProgram, LpOutcome, RowSense, SolveOptions};
pub use moments::{
    correlation_functions, factorial_power, factorial_to_power, power_moments, power_to_factorial,
    tensor_power, FiniteMeasure, MomentTensor, MAX_ORDER,
};
pub use poly::{MomentFunctional, Polynomial, RestrictedCubic};
pub use rational::Rational;
pub use realize::{
    Certificate, KPositivity, MinimalThirdMoment, RealizabilityInstance,
    RepresentingMeasure, Solver, Verdict, VerificationReport,
};
