//! Polarizations, the Bigas inequality system, and the interval engine that
//! decides whether some polarization satisfies it.

mod bigas;
mod interval;
mod polarization;
mod subsheaf;
mod system;

pub use bigas::{
    bigas_intervals, bigas_region, check_bigas, find_polarization,
    prove_infeasible_with_certificate, slope,
};
pub use interval::RationalInterval;
pub use polarization::Polarization;
pub use subsheaf::{
    kernel_target_slope, subsheaf_numerator, subsheaf_slope, subsheaf_slope_constraints,
    subsheaf_weight_bound,
};
pub use system::{
    simplex_intersect, Constraint, DerivedBound, FeasibleRegion, InfeasibilityCertificate,
    Quantity, RegionStatus, WeightBound, WeightBoundKind,
};
