use num_bigint::BigInt;
use num_traits::One;

use super::h0::{h0_bound, k_bound_check, H0Bound, KBoundOutcome};
use super::rules::{
    certify_twisted, engine_verdict, kernel_region, restriction_obstruction, screen_contradictions,
    strongly_unstable_all_twists, strongly_unstable_endpoint, strongly_unstable_genus_bound,
    strongly_unstable_middle, strongly_unstable_two_component,
};
use super::verdict::{Criterion, Verdict, VerdictKind};
use crate::curve::{twist, ChainCurve, GeneratedPairData, LineBundleTwist, SheafNumerics};
use crate::error::{Error, Result};
use crate::feasibility::{check_bigas, find_polarization, FeasibleRegion, RegionStatus};
use crate::scenario::{Scenario, SheafInput, Subject};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubjectKind {
    Sheaf,
    /// The kernel bundle of a generated pair.
    Pair,
}

impl SubjectKind {
    pub fn name(self) -> &'static str {
        match self {
            SubjectKind::Sheaf => "sheaf",
            SubjectKind::Pair => "pair",
        }
    }
}

/// Everything `analyze` computed, in a form the front ends serialize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub subject: SubjectKind,
    pub curve: ChainCurve,
    pub twist: Option<LineBundleTwist>,
    /// The sheaf whose stability is decided: the input sheaf, or `M (x) L`.
    pub numerics: SheafNumerics,
    pub region: FeasibleRegion,
    pub verdict: Verdict,
    /// Every rule that ran, in evaluation order.
    pub rules: Vec<Verdict>,
    /// Per component, whether `M|_{C_j}` is certified non-semistable.
    pub obstructed: Vec<bool>,
    pub h0: Option<H0Bound>,
    pub k_bound: Option<KBoundOutcome>,
}

fn check_witness(sheaf: &SheafNumerics, verdict: &Verdict) -> Result<()> {
    if verdict.kind.is_semistable() {
        let ok = match &verdict.witness {
            Some(w) => check_bigas(sheaf, w)?,
            None => false,
        };
        if !ok {
            return Err(Error::Internal(format!(
                "{} verdict without a valid witness",
                verdict.criterion
            )));
        }
    }
    Ok(())
}

/// Full analysis of the kernel bundle of `pair`, twisted by `line` when
/// given.
///
/// Contradictory hypotheses are rejected first. Then the strong-instability
/// rules run (endpoint, middle, all twists, two components, genus bound),
/// then the semistability certificate, then the generic engine. The first
/// rule that fires decides the verdict.
pub fn analyze(
    curve: &ChainCurve,
    pair: &GeneratedPairData,
    line: Option<&LineBundleTwist>,
) -> Result<Report> {
    if let Some(l) = line {
        curve.check_len("twist.multidegree", l.multidegree().len())?;
    }
    screen_contradictions(curve, pair)?;
    let obstructed = restriction_obstruction(curve, pair)?;
    let trivial = LineBundleTwist::trivial(curve.components());
    let concrete = line.unwrap_or(&trivial);

    let mut rules = Vec::new();
    if concrete.is_degree_zero() {
        rules.push(strongly_unstable_endpoint(curve, pair)?);
        rules.push(strongly_unstable_middle(curve, pair)?);
    } else {
        let note = "not applicable: the rule concerns M itself and the twist has nonzero degree";
        rules.push(Verdict::inconclusive(Criterion::EndpointSections, note));
        rules.push(Verdict::inconclusive(Criterion::MiddleSections, note));
    }
    rules.push(strongly_unstable_all_twists(curve, pair, line)?);
    rules.push(strongly_unstable_two_component(curve, pair, line)?);
    rules.push(strongly_unstable_genus_bound(curve, pair, line)?);
    let semistable = certify_twisted(curve, pair, line)?;
    let (numerics, region) = kernel_region(curve, pair, concrete)?;
    let engine = engine_verdict(&region);

    if semistable.kind.is_semistable() {
        if let Some(strong) = rules.iter().find(|v| v.fired()) {
            return Err(Error::Contradiction(format!(
                "the declared flags make M both w-semistable and strongly unstable ({})",
                strong.criterion
            )));
        }
        if region.status != RegionStatus::Feasible {
            return Err(Error::Contradiction(
                "kernel restrictions are declared semistable but the declared nonzero kernels rule out every polarization".into(),
            ));
        }
    }
    let verdict = rules
        .iter()
        .find(|v| v.fired())
        .cloned()
        .unwrap_or_else(|| {
            if semistable.kind.is_semistable() {
                semistable.clone()
            } else {
                engine.clone()
            }
        });
    check_witness(&numerics, &verdict)?;
    rules.push(semistable);
    rules.push(engine);

    Ok(Report {
        subject: SubjectKind::Pair,
        curve: curve.clone(),
        twist: line.cloned(),
        numerics,
        region,
        verdict,
        rules,
        obstructed,
        h0: Some(h0_bound(curve, pair)?),
        k_bound: Some(k_bound_check(curve, pair)?),
    })
}

/// Analysis of a plain sheaf: only the Bigas system applies. Semistable
/// restrictions (automatic in rank one) turn a feasible system into a
/// w-semistability certificate.
pub fn analyze_sheaf(
    curve: &ChainCurve,
    input: &SheafInput,
    line: Option<&LineBundleTwist>,
) -> Result<Report> {
    input.validate(curve)?;
    let base =
        SheafNumerics::from_multidegree(curve, input.multirank.clone(), input.multidegree.clone())?;
    let numerics = match line {
        Some(l) => twist(&base, l)?,
        None => base,
    };
    let region = find_polarization(&numerics)?;
    let engine = engine_verdict(&region);
    let rank_one = numerics.uniform_rank() == Some(&BigInt::one());
    let all_semistable = rank_one || input.restriction_semistable.iter().all(|&x| x);
    let any_stable = rank_one || input.restriction_stable.iter().any(|&x| x);
    let sufficiency = match (&region.witness, all_semistable) {
        (Some(w), true) => Verdict {
            kind: if any_stable {
                VerdictKind::WStable
            } else {
                VerdictKind::WSemistable
            },
            criterion: Criterion::BigasSufficiency,
            witness: Some(w.clone()),
            certificate: None,
            notes: vec![if rank_one {
                "line bundle restrictions are stable; Bigas system satisfied".to_string()
            } else {
                "restrictions semistable; Bigas system satisfied".to_string()
            }],
            all_twists: false,
        },
        (Some(_), false) => Verdict::inconclusive(
            Criterion::BigasSufficiency,
            "hypothesis not met: restrictions are not all declared semistable",
        ),
        (None, _) => Verdict::inconclusive(
            Criterion::BigasSufficiency,
            "the Bigas system has no polarization",
        ),
    };
    let verdict = if engine.fired() {
        engine.clone()
    } else if sufficiency.fired() {
        sufficiency.clone()
    } else {
        engine.clone()
    };
    check_witness(&numerics, &verdict)?;
    Ok(Report {
        subject: SubjectKind::Sheaf,
        curve: curve.clone(),
        twist: line.cloned(),
        numerics,
        region,
        verdict,
        rules: vec![engine, sufficiency],
        obstructed: Vec::new(),
        h0: None,
        k_bound: None,
    })
}

pub fn analyze_scenario(scenario: &Scenario) -> Result<Report> {
    match &scenario.subject {
        Subject::Sheaf(input) => analyze_sheaf(&scenario.curve, input, scenario.twist.as_ref()),
        Subject::Pair(pair) => analyze(&scenario.curve, pair, scenario.twist.as_ref()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().copied().map(BigInt::from).collect()
    }

    fn curve(genera: &[i64]) -> ChainCurve {
        ChainCurve::new(ints(genera)).unwrap()
    }

    #[test]
    fn endpoint_scenario_reports_strong_instability() {
        let mut pair = GeneratedPairData::new(1, 3, ints(&[6, 6]));
        pair.twisted_sections_nonzero[0] = true;
        pair.restriction_semistable[0] = true;
        pair.ker_rho_nonzero[0] = true;
        let report = analyze(&curve(&[2, 2]), &pair, None).unwrap();
        assert_eq!(report.verdict.kind, VerdictKind::StronglyUnstable);
        assert_eq!(report.verdict.criterion, Criterion::EndpointSections);
        assert_eq!(report.region.status, RegionStatus::Infeasible);
        assert!(report.region.certificate.as_ref().unwrap().verify());
    }

    #[test]
    fn semistable_kernel_reports_witness() {
        let mut pair = GeneratedPairData::new(1, 3, ints(&[6, 6]));
        pair.kernel_restriction_semistable = vec![true, true];
        let report = analyze(&curve(&[2, 2]), &pair, None).unwrap();
        assert_eq!(report.verdict.kind, VerdictKind::WSemistable);
        assert_eq!(
            report.verdict.witness.unwrap().to_strings(),
            vec!["1/2", "1/2"]
        );
    }

    #[test]
    fn no_flags_is_inconclusive() {
        let pair = GeneratedPairData::new(1, 3, ints(&[6, 6]));
        let report = analyze(&curve(&[2, 2]), &pair, None).unwrap();
        assert_eq!(report.verdict.kind, VerdictKind::Inconclusive);
        assert!(report.region.is_feasible());
    }

    #[test]
    fn line_bundle_of_degree_zero_four_is_strongly_unstable() {
        let input = SheafInput::new(ints(&[1, 1]), ints(&[0, 4]));
        let report = analyze_sheaf(&curve(&[2, 2]), &input, None).unwrap();
        assert_eq!(report.numerics.chi_global().unwrap(), &BigInt::from(1));
        assert_eq!(report.verdict.kind, VerdictKind::StronglyUnstable);
        assert!(report.verdict.certificate.unwrap().verify());
    }

    #[test]
    fn structure_sheaf_is_w_stable() {
        let input = SheafInput::new(ints(&[1, 1]), ints(&[0, 0]));
        let report = analyze_sheaf(&curve(&[2, 2]), &input, None).unwrap();
        assert_eq!(report.verdict.kind, VerdictKind::WStable);
    }
}
