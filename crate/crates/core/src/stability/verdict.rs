use std::fmt;

use crate::feasibility::{InfeasibilityCertificate, Polarization};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    WSemistable,
    WStable,
    /// Not w-semistable for any polarization.
    StronglyUnstable,
    Inconclusive,
}

impl VerdictKind {
    pub fn name(self) -> &'static str {
        match self {
            VerdictKind::WSemistable => "w_semistable",
            VerdictKind::WStable => "w_stable",
            VerdictKind::StronglyUnstable => "strongly_unstable",
            VerdictKind::Inconclusive => "inconclusive",
        }
    }

    pub fn is_semistable(self) -> bool {
        matches!(self, VerdictKind::WSemistable | VerdictKind::WStable)
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The rule a verdict comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// Sections vanishing at the node of an end component, `k - r < d_1`.
    EndpointSections,
    /// Sections vanishing at both nodes of a middle component, `k - r < d_j/2`.
    MiddleSections,
    /// `Ker(rho_j|V) != 0` everywhere and `d/(k - r) > n - 1`.
    AllTwists,
    /// Two components with nonzero kernels and semistable restrictions.
    TwoComponent,
    /// `p_a > (n - 2)(k - r)/r` with vanishing `H^1(E_j)`.
    GenusBound,
    /// The Bigas system plus subsheaf bounds admits no polarization.
    BigasEngine,
    /// Kernel restrictions semistable and the Bigas system feasible.
    KernelSemistability,
    /// Sheaf restrictions semistable and the Bigas system feasible.
    BigasSufficiency,
    None,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::EndpointSections => "endpoint_sections",
            Criterion::MiddleSections => "middle_sections",
            Criterion::AllTwists => "all_twists",
            Criterion::TwoComponent => "two_component",
            Criterion::GenusBound => "genus_bound",
            Criterion::BigasEngine => "bigas_engine",
            Criterion::KernelSemistability => "kernel_semistability",
            Criterion::BigasSufficiency => "bigas_sufficiency",
            Criterion::None => "none",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub criterion: Criterion,
    pub witness: Option<Polarization>,
    pub certificate: Option<InfeasibilityCertificate>,
    pub notes: Vec<String>,
    /// The conclusion holds for every twist `M (x) L`, not only the one
    /// analysed.
    pub all_twists: bool,
}

impl Verdict {
    pub fn inconclusive(criterion: Criterion, note: impl Into<String>) -> Self {
        Verdict {
            kind: VerdictKind::Inconclusive,
            criterion,
            witness: None,
            certificate: None,
            notes: vec![note.into()],
            all_twists: false,
        }
    }

    pub fn strongly_unstable(
        criterion: Criterion,
        certificate: Option<InfeasibilityCertificate>,
        note: impl Into<String>,
    ) -> Self {
        Verdict {
            kind: VerdictKind::StronglyUnstable,
            criterion,
            witness: None,
            certificate,
            notes: vec![note.into()],
            all_twists: false,
        }
    }

    pub fn fired(&self) -> bool {
        self.kind != VerdictKind::Inconclusive
    }
}
