//! Variance-ratio analytics for segmented, linearly interpolated time series.
//!
//! Historical series are often observed only once per segment of `s`
//! sub-periods (one benchmark per decade, per year, per quarter, ...), with
//! the gaps filled by segmented linear interpolation. This crate answers,
//! exactly and by simulation, what that interpolation does to two standard
//! summary statistics of a series: its volatility (the variance of one-period
//! changes) and its shock persistence (Cochrane's variance ratio
//! `V = var(Y_T - Y_{T-s}) / (s var(Y_T - Y_{T-1}))`).
//!
//! Five data-generating processes are covered — AR(1), MA(1), ARMA(1,1), a
//! random walk with drift, and a random walk with ARMA(1,1) errors — each in
//! original and interpolated form:
//!
//! * [`dgp`] simulates the processes deterministically from a seed;
//! * [`interp`] interpolates benchmark observations and converts indices;
//! * [`analytic`] evaluates the closed-form variances and variance ratios,
//!   including the per-phase variances that make interpolated series
//!   periodically heteroskedastic;
//! * [`estimate`] computes sample counterparts from any series and runs the
//!   Monte Carlo harness that cross-checks the closed forms;
//! * [`grids`] reproduces the reference tables and emits surface grids;
//! * [`cli`] wires everything into the `vratio` binary.
//!
//! The headline facts, each encoded in the closed forms and verified by the
//! test suite: interpolation always *lowers* both variances but lowers the
//! short one more, so the variance ratio *rises* — an interpolated stationary
//! series looks more persistent than a random walk (`V > 1`), and an
//! interpolated random walk has `V = (2s^2 + 1) / (3s)` instead of 1.
//!
//! ```
//! use vratio::analytic::{variance_ratio, Variant};
//! use vratio::dgp::DgpSpec;
//!
//! let rw = DgpSpec::rw(0.0, 1.0);
//! let original = variance_ratio(&rw, Variant::Original, 4)?;
//! let interpolated = variance_ratio(&rw, Variant::Interpolated, 4)?;
//! assert_eq!(original.vr, 1.0);
//! assert_eq!(interpolated.vr, 2.75);
//! # Ok::<(), vratio::Error>(())
//! ```

pub mod analytic;
pub mod cli;
pub mod dgp;
pub mod error;
pub mod estimate;
pub mod grids;
pub mod interp;

pub use analytic::{AgSums, ArmaMoments, Shrinkage, VarianceSummary, Variant};
pub use dgp::{DgpSpec, Model, SegmentedSeries};
pub use error::{Error, Result};
