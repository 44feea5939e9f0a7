use num_bigint::BigInt;
use num_traits::Zero;

use super::h0::{h0_bound, k_bound_check, KBoundOutcome};
use super::verdict::{Criterion, Verdict, VerdictKind};
use crate::curve::{
    kernel_numerics, twist, ChainCurve, GeneratedPairData, LineBundleTwist, SheafNumerics,
};
use crate::error::{Error, Result};
use crate::feasibility::{
    bigas_region, find_polarization, kernel_target_slope, prove_infeasible_with_certificate,
    subsheaf_slope_constraints, subsheaf_weight_bound, FeasibleRegion, InfeasibilityCertificate,
    Polarization, RegionStatus,
};
use crate::oracle::destabilizer_witness;
use crate::rational::{format_ratio, ratio, Rational};

/// `M (x) L` together with its Bigas region cut down by the subsheaf bounds
/// of every component whose `Ker(rho_j|V)` is nonzero.
pub fn kernel_region(
    curve: &ChainCurve,
    pair: &GeneratedPairData,
    line: &LineBundleTwist,
) -> Result<(SheafNumerics, FeasibleRegion)> {
    curve.check_len("twist.multidegree", line.multidegree().len())?;
    let twisted = twist(&kernel_numerics(curve, pair)?, line)?;
    let target = kernel_target_slope(curve, pair, line)?;
    let bounds = subsheaf_slope_constraints(curve, pair, line, &target)?;
    let region = bigas_region(&twisted, &bounds)?;
    Ok((twisted, region))
}

/// Entry `j` is true when a nonzero twisted section on a semistable `E_j`
/// makes `M|_{C_j}` non-semistable. Claiming that restriction semistable as
/// well is rejected.
pub fn restriction_obstruction(curve: &ChainCurve, pair: &GeneratedPairData) -> Result<Vec<bool>> {
    pair.validate(curve)?;
    let obstructed: Vec<bool> = (0..curve.components())
        .map(|j| pair.twisted_sections_nonzero[j] && pair.restriction_semistable[j])
        .collect();
    if let Some(j) =
        (0..obstructed.len()).find(|&j| obstructed[j] && pair.kernel_restriction_semistable[j])
    {
        return Err(Error::Contradiction(obstruction_message(j)));
    }
    Ok(obstructed)
}

fn obstruction_message(j: usize) -> String {
    format!(
        "component {}: a nonzero twisted section on a semistable restriction makes the kernel restriction unstable, yet it is declared semistable",
        j + 1
    )
}

/// Rejects flag combinations that no actual pair can have. All problems are
/// reported together.
pub fn screen_contradictions(curve: &ChainCurve, pair: &GeneratedPairData) -> Result<()> {
    pair.validate(curve)?;
    let mut problems = Vec::new();
    for j in 0..curve.components() {
        if pair.twisted_sections_nonzero[j]
            && pair.restriction_semistable[j]
            && pair.kernel_restriction_semistable[j]
        {
            problems.push(obstruction_message(j));
        }
        if pair.ker_rho_nonzero[j]
            && pair.kernel_restriction_semistable[j]
            && pair.multidegree[j] > BigInt::zero()
        {
            problems.push(format!(
                "component {}: Ker(rho_j|V) != 0 gives a degree-0 trivial subsheaf of a kernel restriction of negative degree, yet that restriction is declared semistable",
                j + 1
            ));
        }
        let min_degree = &pair.rank * &curve.genera()[j];
        if pair.h1_vanishes[j] && pair.multidegree[j] < min_degree {
            problems.push(format!(
                "component {}: H^1(E_j) = 0 for a generated bundle needs d_j >= r g_j = {}, found {}",
                j + 1,
                min_degree,
                pair.multidegree[j]
            ));
        }
    }
    if let Some(bound) = h0_bound(curve, pair)?.global {
        if pair.dim_v > bound {
            problems.push(format!(
                "k = {} exceeds the bound h0(E) <= {} implied by the declared flags",
                pair.dim_v, bound
            ));
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::Contradiction(problems.join("; ")))
    }
}

/// Runs the Bigas engine on `M` with a single subsheaf bound on `component`.
fn single_bound_certificate(
    curve: &ChainCurve,
    pair: &GeneratedPairData,
    component: usize,
) -> Result<InfeasibilityCertificate> {
    let line = LineBundleTwist::trivial(curve.components());
    let kernel = kernel_numerics(curve, pair)?;
    let target = kernel_target_slope(curve, pair, &line)?;
    let bounds: Vec<_> = subsheaf_weight_bound(curve, &line, component, &target)
        .into_iter()
        .collect();
    prove_infeasible_with_certificate(&kernel, &bounds)?.ok_or_else(|| {
        Error::Internal(format!(
            "the subsheaf bound on component {component} should clash with the Bigas system"
        ))
    })
}

/// Fires when an end component has a nonzero twisted section, a semistable
/// restriction, and `k - r < d_j`.
pub fn strongly_unstable_endpoint(curve: &ChainCurve, pair: &GeneratedPairData) -> Result<Verdict> {
    pair.validate(curve)?;
    let n = curve.components();
    let m = pair.kernel_rank();
    for j in [1, n] {
        let i = j - 1;
        if pair.twisted_sections_nonzero[i]
            && pair.restriction_semistable[i]
            && m < pair.multidegree[i]
        {
            let certificate = single_bound_certificate(curve, pair, j)?;
            return Ok(Verdict::strongly_unstable(
                Criterion::EndpointSections,
                Some(certificate),
                format!(
                    "component {j}: k - r = {m} < d_{j} = {}",
                    pair.multidegree[i]
                ),
            ));
        }
    }
    Ok(Verdict::inconclusive(
        Criterion::EndpointSections,
        "no end component has a twisted section, semistable restriction and k - r < d_j",
    ))
}

/// Fires when a middle component has a nonzero twisted section, a
/// semistable restriction, and `k - r < d_j / 2`.
pub fn strongly_unstable_middle(curve: &ChainCurve, pair: &GeneratedPairData) -> Result<Verdict> {
    pair.validate(curve)?;
    let n = curve.components();
    if n < 3 {
        return Ok(Verdict::inconclusive(
            Criterion::MiddleSections,
            "not applicable: the curve has no middle component",
        ));
    }
    let m = pair.kernel_rank();
    for j in 2..n {
        let i = j - 1;
        let half = ratio(pair.multidegree[i].clone(), 2);
        if pair.twisted_sections_nonzero[i]
            && pair.restriction_semistable[i]
            && Rational::from_integer(m.clone()) < half
        {
            let certificate = single_bound_certificate(curve, pair, j)?;
            return Ok(Verdict::strongly_unstable(
                Criterion::MiddleSections,
                Some(certificate),
                format!(
                    "component {j}: k - r = {m} < d_{j}/2 = {}",
                    format_ratio(&half)
                ),
            ));
        }
    }
    Ok(Verdict::inconclusive(
        Criterion::MiddleSections,
        "no middle component has a twisted section, semistable restriction and k - r < d_j/2",
    ))
}

fn all_twists_condition(curve: &ChainCurve, pair: &GeneratedPairData) -> bool {
    let nodes = BigInt::from(curve.components() - 1);
    pair.ker_rho_nonzero.iter().all(|&x| x) && pair.total_degree() > nodes * pair.kernel_rank()
}

/// Certificate for a twist already known to satisfy the all-twists
/// hypotheses, plus a concrete destabilizer at the uniform polarization.
fn all_twists_verdict(
    curve: &ChainCurve,
    pair: &GeneratedPairData,
    line: Option<&LineBundleTwist>,
    criterion: Criterion,
    reason: String,
) -> Result<Verdict> {
    let trivial = LineBundleTwist::trivial(curve.components());
    let concrete = line.unwrap_or(&trivial);
    let (_, region) = kernel_region(curve, pair, concrete)?;
    if region.status == RegionStatus::Feasible {
        return Err(Error::Internal(
            "all-twists hypotheses hold but the engine found a polarization".into(),
        ));
    }
    let mut verdict = Verdict::strongly_unstable(criterion, region.certificate, reason);
    verdict.all_twists = true;
    if let Some(line) = line {
        let n = curve.components();
        let uniform = Polarization::new(vec![ratio(1, n as u64); n])?;
        match destabilizer_witness(curve, pair, &uniform, line)? {
            Some(found) => verdict.notes.push(format!(
                "at w = ({}) the component {} subsheaf has slope {} > {}",
                uniform.to_strings().join(", "),
                found.component,
                format_ratio(&found.subsheaf_slope),
                format_ratio(&found.target_slope)
            )),
            None => {
                return Err(Error::Internal(
                    "no destabilizing subsheaf at the uniform polarization".into(),
                ))
            }
        }
    }
    Ok(verdict)
}

/// Fires when every `Ker(rho_j|V)` is nonzero and `d/(k - r) > n - 1`; the
/// conclusion covers `M (x) L` for every line bundle `L`.
pub fn strongly_unstable_all_twists(
    curve: &ChainCurve,
    pair: &GeneratedPairData,
    line: Option<&LineBundleTwist>,
) -> Result<Verdict> {
    pair.validate(curve)?;
    if !pair.ker_rho_nonzero.iter().all(|&x| x) {
        return Ok(Verdict::inconclusive(
            Criterion::AllTwists,
            "hypothesis not met: Ker(rho_j|V) is not declared nonzero on every component",
        ));
    }
    let n = curve.components();
    let d = pair.total_degree();
    let m = pair.kernel_rank();
    let quotient = Rational::new(d.clone(), m.clone());
    if !all_twists_condition(curve, pair) {
        return Ok(Verdict::inconclusive(
            Criterion::AllTwists,
            format!(
                "hypothesis not met: d/(k - r) = {} <= n - 1 = {}",
                format_ratio(&quotient),
                n - 1
            ),
        ));
    }
    all_twists_verdict(
        curve,
        pair,
        line,
        Criterion::AllTwists,
        format!(
            "d/(k - r) = {} > n - 1 = {}",
            format_ratio(&quotient),
            n - 1
        ),
    )
}

/// Two components, both kernels nonzero and both restrictions semistable:
/// the `k < d + r` bound gives `d > k - r`, which is the all-twists
/// hypothesis for `n = 2`.
pub fn strongly_unstable_two_component(
    curve: &ChainCurve,
    pair: &GeneratedPairData,
    line: Option<&LineBundleTwist>,
) -> Result<Verdict> {
    pair.validate(curve)?;
    if curve.components() != 2 {
        return Ok(Verdict::inconclusive(
            Criterion::TwoComponent,
            "not applicable: the curve does not have exactly two components",
        ));
    }
    if !(pair.ker_rho_nonzero.iter().all(|&x| x) && pair.restriction_semistable.iter().all(|&x| x))
    {
        return Ok(Verdict::inconclusive(
            Criterion::TwoComponent,
            "hypothesis not met: needs Ker(rho_j|V) != 0 and semistable E_j on both components",
        ));
    }
    let check = match k_bound_check(curve, pair)? {
        KBoundOutcome::Checked(check) => check,
        KBoundOutcome::NotApplicable(why) => {
            return Ok(Verdict::inconclusive(
                Criterion::TwoComponent,
                format!("k < d + r bound not applicable: {why}"),
            ))
        }
    };
    if !(check.holds && check.k_within_bound && all_twists_condition(curve, pair)) {
        return Err(Error::Internal(format!(
            "two-component hypotheses hold but d = {} > k - r = {} was not derived",
            pair.total_degree(),
            pair.kernel_rank()
        )));
    }
    all_twists_verdict(
        curve,
        pair,
        line,
        Criterion::TwoComponent,
        format!(
            "k <= h0 bound {} < d + r = {}, so d > k - r",
            check.bound, check.threshold
        ),
    )
}

/// `p_a > (n - 2)(k - r)/r` with `H^1(E_j) = 0` and `Ker(rho_j|V) != 0`
/// everywhere.
pub fn strongly_unstable_genus_bound(
    curve: &ChainCurve,
    pair: &GeneratedPairData,
    line: Option<&LineBundleTwist>,
) -> Result<Verdict> {
    pair.validate(curve)?;
    if !pair.h1_vanishes.iter().all(|&x| x) {
        return Ok(Verdict::inconclusive(
            Criterion::GenusBound,
            "hypothesis not met: H^1(E_j) = 0 is not declared on every component",
        ));
    }
    if !pair.ker_rho_nonzero.iter().all(|&x| x) {
        return Ok(Verdict::inconclusive(
            Criterion::GenusBound,
            "hypothesis not met: Ker(rho_j|V) is not declared nonzero on every component",
        ));
    }
    let n = curve.components();
    let p_a = curve.arithmetic_genus();
    let rhs = Rational::new(BigInt::from(n - 2) * pair.kernel_rank(), pair.rank.clone());
    if Rational::from_integer(p_a.clone()) <= rhs {
        return Ok(Verdict::inconclusive(
            Criterion::GenusBound,
            format!(
                "hypothesis not met: p_a = {p_a} <= (n - 2)(k - r)/r = {}",
                format_ratio(&rhs)
            ),
        ));
    }
    if !all_twists_condition(curve, pair) {
        return Err(Error::Internal(
            "genus bound holds but d/(k - r) > n - 1 does not follow".into(),
        ));
    }
    all_twists_verdict(
        curve,
        pair,
        line,
        Criterion::GenusBound,
        format!("p_a = {p_a} > (n - 2)(k - r)/r = {}", format_ratio(&rhs)),
    )
}

/// Kernel restrictions all semistable plus a feasible Bigas system give
/// w-semistability of `M`; a stable restriction upgrades it to w-stable.
pub fn certify_w_semistable(curve: &ChainCurve, pair: &GeneratedPairData) -> Result<Verdict> {
    certify_twisted(curve, pair, None)
}

pub(crate) fn certify_twisted(
    curve: &ChainCurve,
    pair: &GeneratedPairData,
    line: Option<&LineBundleTwist>,
) -> Result<Verdict> {
    pair.validate(curve)?;
    if let Some(j) = pair.kernel_restriction_semistable.iter().position(|s| !s) {
        return Ok(Verdict::inconclusive(
            Criterion::KernelSemistability,
            format!(
                "hypothesis not met: kernel restriction to component {} is not declared semistable",
                j + 1
            ),
        ));
    }
    let kernel = kernel_numerics(curve, pair)?;
    let sheaf = match line {
        Some(l) => twist(&kernel, l)?,
        None => kernel,
    };
    let region = find_polarization(&sheaf)?;
    let Some(witness) = region.witness.clone() else {
        if line.is_none() {
            return Err(Error::Internal(
                "the kernel bundle has negative chi everywhere, so a polarization must exist"
                    .into(),
            ));
        }
        let mut verdict = Verdict::inconclusive(
            Criterion::KernelSemistability,
            "the Bigas system of the twisted kernel has no polarization",
        );
        verdict.certificate = region.certificate;
        return Ok(verdict);
    };
    let stable = pair.kernel_restriction_stable.iter().any(|&x| x);
    Ok(Verdict {
        kind: if stable {
            VerdictKind::WStable
        } else {
            VerdictKind::WSemistable
        },
        criterion: Criterion::KernelSemistability,
        witness: Some(witness),
        certificate: None,
        notes: vec![if stable {
            "kernel restrictions semistable with one stable; Bigas system satisfied".to_string()
        } else {
            "kernel restrictions semistable; Bigas system satisfied".to_string()
        }],
        all_twists: false,
    })
}

/// Generic engine verdict from an already computed region.
pub(crate) fn engine_verdict(region: &FeasibleRegion) -> Verdict {
    match region.status {
        RegionStatus::Feasible => {
            let mut verdict = Verdict::inconclusive(
                Criterion::BigasEngine,
                "every necessary condition holds at the witness polarization",
            );
            verdict.witness = region.witness.clone();
            verdict
        }
        RegionStatus::Infeasible => Verdict::strongly_unstable(
            Criterion::BigasEngine,
            region.certificate.clone(),
            "no polarization satisfies the necessary conditions",
        ),
        RegionStatus::BoundaryOnly => Verdict::strongly_unstable(
            Criterion::BigasEngine,
            region.certificate.clone(),
            "the necessary conditions only hold on the boundary of the simplex",
        ),
    }
}
