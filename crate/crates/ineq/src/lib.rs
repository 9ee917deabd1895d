//! Inequality analytics over weighted income distributions, centred on the
//! relative-to-maximum inequality index (IDRM).
//!
//! The IDRM measures inequality as the population-weighted average of each
//! unit's income shortfall relative to the richest unit:
//!
//! ```text
//! IDRM = Σ pᵢ · (x_max − xᵢ) / x_max = 1 − x̄ / x_max
//! ```
//!
//! It is 0 on egalitarian distributions, approaches 1 as income concentrates,
//! and — unlike rank-based indices — decomposes additively into within-group
//! and between-group components over any partition. Its complement
//! `U = x̄/x_max` reads as a welfare level, and the same ratio scales the
//! Lorenz diagram into an absolute-welfare version of the curve.
//!
//! Alongside the IDRM the crate computes the usual reference indices (Gini,
//! Theil and the generalized entropy family, mean log deviation, Atkinson,
//! Palma ratios) over the same weighted-record representation, plus:
//!
//! - [`decomposition`]: exact within/between splits, one or two levels deep
//! - [`axioms`]: a randomized harness that checks nine classical axioms
//!   against any index and renders a compliance matrix
//! - [`resampling`]: bootstrap standard errors and quantile-grouping bias
//!   curves
//! - [`analytics`]: welfare and tolerance companions, equivalent incomes,
//!   Lorenz curves, and Palma-form bounds on the IDRM
//! - [`dataset`]: CSV ingestion with optional weights and group paths
//! - [`report`]: JSON/CSV report rendering for the `ineq` binary
//!
//! # Example
//!
//! ```
//! use ineq::{indices, WeightedDistribution};
//!
//! let d = WeightedDistribution::unweighted(&[0.0, 10.0, 25.0, 50.0, 80.0])?;
//! assert!((indices::idrm(&d)? - 0.5875).abs() < 1e-12);
//! assert!((indices::gini(&d)? - 32.0 / 66.0).abs() < 1e-12);
//!
//! // A progressive transfer below the maximum moves the Gini but not the
//! // IDRM: nobody's distance to the richest unit changes on average.
//! let after = WeightedDistribution::unweighted(&[4.0, 6.0, 25.0, 50.0, 80.0])?;
//! assert!(indices::gini(&after)? < indices::gini(&d)?);
//! assert_eq!(indices::idrm(&after)?, indices::idrm(&d)?);
//! # Ok::<(), ineq::Error>(())
//! ```
//!
//! Determinism: every randomized routine (axiom trials, bootstrap) takes an
//! explicit seed and derives one ChaCha12 stream per trial or replicate, so
//! results are identical across runs and thread counts.

pub mod analytics;
pub mod axioms;
pub mod dataset;
pub mod decomposition;
pub mod distribution;
pub mod error;
pub mod indices;
pub mod report;
pub mod resampling;

pub use distribution::{
    GroupedPopulation, Hierarchy, OrderedDistribution, Record, WeightedDistribution,
};
pub use error::{Error, Result};
pub use indices::{IndexKind, IndexParams};
