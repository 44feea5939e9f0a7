//! Stability criteria for kernel bundles and plain sheaves, each returning a
//! [`Verdict`], plus the orchestration that runs them in a fixed order.

mod analyze;
mod h0;
mod rules;
mod verdict;

pub use analyze::{analyze, analyze_scenario, analyze_sheaf, Report, SubjectKind};
pub use h0::{
    clifford_h0_bound, h0_bound, k_bound_check, H0Bound, H0Estimate, H0Method, KBoundCase,
    KBoundCheck, KBoundOutcome,
};
pub use rules::{
    certify_w_semistable, kernel_region, restriction_obstruction, screen_contradictions,
    strongly_unstable_all_twists, strongly_unstable_endpoint, strongly_unstable_genus_bound,
    strongly_unstable_middle, strongly_unstable_two_component,
};
pub use verdict::{Criterion, Verdict, VerdictKind};
