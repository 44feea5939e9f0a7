//! Exact-arithmetic stability analysis for vector bundles and kernel bundles
//! on chain-like nodal curves.
//!
//! A chain-like curve has smooth components `C_1, ..., C_n` (each of genus at
//! least two) where consecutive components meet in a single node. Everything
//! here works from numerical invariants only: genera, ranks, degrees, Euler
//! characteristics, and a handful of declared geometric hypotheses. From those
//! the crate decides whether a polarization exists that makes a bundle
//! w-semistable, certifies strong instability when one of the known criteria
//! applies, and cross-checks both directions with a brute-force grid oracle.
//!
//! All arithmetic is exact: integers are [`num_bigint::BigInt`] and rationals
//! are reduced [`num_rational::BigRational`] values.

pub mod cli;
pub mod curve;
pub mod error;
pub mod feasibility;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod scenario;
pub mod stability;

pub use curve::{ChainCurve, GeneratedPairData, LineBundleTwist, SheafNumerics};
pub use error::{Error, Result};
pub use feasibility::{
    FeasibleRegion, InfeasibilityCertificate, Polarization, RationalInterval, RegionStatus,
    WeightBound, WeightBoundKind,
};
pub use scenario::{Scenario, SheafInput, Subject};
pub use stability::{analyze, Criterion, Report, Verdict, VerdictKind};
