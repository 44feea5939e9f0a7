//! Upper bounds on `h^0` of component restrictions and of the glued bundle.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::curve::{ChainCurve, GeneratedPairData};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum H0Method {
    /// `floor(d/2) + r` for semistable bundles with slope in `[0, 2g - 2]`.
    Clifford,
    /// `h^0 = chi = d + r(1 - g)` when `h^1` vanishes.
    RiemannRochH1Zero,
    Unbounded,
}

impl H0Method {
    pub fn name(self) -> &'static str {
        match self {
            H0Method::Clifford => "clifford",
            H0Method::RiemannRochH1Zero => "riemann_roch_h1_zero",
            H0Method::Unbounded => "unbounded",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum H0Estimate {
    Bounded { value: BigInt, method: H0Method },
    Unbounded,
}

impl H0Estimate {
    pub fn value(&self) -> Option<&BigInt> {
        match self {
            H0Estimate::Bounded { value, .. } => Some(value),
            H0Estimate::Unbounded => None,
        }
    }

    pub fn method(&self) -> H0Method {
        match self {
            H0Estimate::Bounded { method, .. } => *method,
            H0Estimate::Unbounded => H0Method::Unbounded,
        }
    }
}

fn in_clifford_range(g: &BigInt, r: &BigInt, d: &BigInt) -> bool {
    !d.is_negative() && *d <= r * (g * 2 - 2)
}

/// Bound on `h^0` of a rank-`r`, degree-`d` bundle on a genus-`g` curve.
///
/// Vanishing `h^1` gives the exact value `d + r(1 - g)`, which is also the
/// smallest available bound. Otherwise semistability gives Clifford in the
/// range `0 <= d/r <= 2g - 2` and Riemann-Roch above it.
pub fn clifford_h0_bound(
    g: &BigInt,
    r: &BigInt,
    d: &BigInt,
    semistable: bool,
    h1_vanishes: bool,
) -> H0Estimate {
    let riemann_roch = || H0Estimate::Bounded {
        value: d + r * (BigInt::one() - g),
        method: H0Method::RiemannRochH1Zero,
    };
    if h1_vanishes {
        return riemann_roch();
    }
    if !semistable || d.is_negative() {
        return H0Estimate::Unbounded;
    }
    if in_clifford_range(g, r, d) {
        H0Estimate::Bounded {
            value: d.div_floor(&BigInt::from(2)) + r,
            method: H0Method::Clifford,
        }
    } else {
        riemann_roch()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H0Bound {
    pub per_component: Vec<H0Estimate>,
    /// `sum h^0(E_j) - (n - 1) r` when every component is bounded.
    pub global: Option<BigInt>,
}

/// Per-component estimates from the declared flags, glued along the nodes.
pub fn h0_bound(curve: &ChainCurve, pair: &GeneratedPairData) -> Result<H0Bound> {
    pair.validate(curve)?;
    let per_component: Vec<H0Estimate> = (0..curve.components())
        .map(|j| {
            clifford_h0_bound(
                &curve.genera()[j],
                &pair.rank,
                &pair.multidegree[j],
                pair.restriction_semistable[j],
                pair.h1_vanishes[j],
            )
        })
        .collect();
    let global = per_component
        .iter()
        .map(H0Estimate::value)
        .collect::<Option<Vec<_>>>()
        .map(|values| {
            values.into_iter().sum::<BigInt>() - &pair.rank * BigInt::from(curve.components() - 1)
        });
    Ok(H0Bound {
        per_component,
        global,
    })
}

/// Which slope regime the components fall in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KBoundCase {
    /// Every `d_j/r > 2g_j - 2`.
    AboveRange,
    /// Every `d_j/r` in `[0, 2g_j - 2]`.
    InRange,
    Mixed,
}

impl KBoundCase {
    pub fn name(self) -> &'static str {
        match self {
            KBoundCase::AboveRange => "above_range",
            KBoundCase::InRange => "in_range",
            KBoundCase::Mixed => "mixed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KBoundCheck {
    pub bound: BigInt,
    /// `d + r`.
    pub threshold: BigInt,
    /// `bound < d + r`.
    pub holds: bool,
    /// `k <= bound`, as it must be since `V` is a subspace of `H^0(E)`.
    pub k_within_bound: bool,
    pub case: KBoundCase,
    pub per_component: Vec<H0Estimate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KBoundOutcome {
    Checked(KBoundCheck),
    NotApplicable(String),
}

/// The `k < d + r` bound for pairs whose restrictions are all semistable and
/// whose degree is positive somewhere.
pub fn k_bound_check(curve: &ChainCurve, pair: &GeneratedPairData) -> Result<KBoundOutcome> {
    pair.validate(curve)?;
    if let Some(j) = pair.restriction_semistable.iter().position(|s| !s) {
        return Ok(KBoundOutcome::NotApplicable(format!(
            "restriction to component {} is not declared semistable",
            j + 1
        )));
    }
    if pair.multidegree.iter().all(Zero::is_zero) {
        return Ok(KBoundOutcome::NotApplicable(
            "every component degree is zero".into(),
        ));
    }
    let bound = h0_bound(curve, pair)?;
    let Some(global) = bound.global else {
        return Err(crate::error::Error::Internal(
            "semistable restrictions must give a finite h0 bound".into(),
        ));
    };
    let in_range: Vec<bool> = curve
        .genera()
        .iter()
        .zip(&pair.multidegree)
        .map(|(g, d)| in_clifford_range(g, &pair.rank, d))
        .collect();
    let case = if in_range.iter().all(|&x| x) {
        KBoundCase::InRange
    } else if in_range.iter().all(|&x| !x) {
        KBoundCase::AboveRange
    } else {
        KBoundCase::Mixed
    };
    let threshold = pair.total_degree() + &pair.rank;
    Ok(KBoundOutcome::Checked(KBoundCheck {
        holds: global < threshold,
        k_within_bound: pair.dim_v <= global,
        bound: global,
        threshold,
        case,
        per_component: bound.per_component,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn semistable_pair(r: i64, k: i64, d: &[i64]) -> GeneratedPairData {
        let mut pair = GeneratedPairData::new(r, k, d.iter().copied().map(BigInt::from).collect());
        pair.restriction_semistable = vec![true; d.len()];
        pair
    }

    fn curve(genera: &[i64]) -> ChainCurve {
        ChainCurve::new(genera.iter().copied().map(BigInt::from).collect()).unwrap()
    }

    fn checked(outcome: KBoundOutcome) -> KBoundCheck {
        match outcome {
            KBoundOutcome::Checked(c) => c,
            KBoundOutcome::NotApplicable(why) => panic!("not applicable: {why}"),
        }
    }

    #[test]
    fn clifford_examples() {
        let est = clifford_h0_bound(&b(3), &b(2), &b(4), true, false);
        assert_eq!(
            est,
            H0Estimate::Bounded {
                value: b(4),
                method: H0Method::Clifford
            }
        );
        let est = clifford_h0_bound(&b(2), &b(1), &b(6), false, true);
        assert_eq!(est.value(), Some(&b(5)));
        assert_eq!(est.method(), H0Method::RiemannRochH1Zero);
        assert_eq!(
            clifford_h0_bound(&b(2), &b(1), &b(0), true, false).value(),
            Some(&b(1))
        );
        assert_eq!(
            clifford_h0_bound(&b(2), &b(1), &b(3), true, false).value(),
            Some(&b(2))
        );
        assert_eq!(
            clifford_h0_bound(&b(2), &b(1), &b(6), false, false),
            H0Estimate::Unbounded
        );
    }

    #[test]
    fn k_bound_three_cases() {
        let c = checked(k_bound_check(&curve(&[2, 2]), &semistable_pair(1, 3, &[6, 6])).unwrap());
        assert_eq!(
            (c.bound, c.threshold, c.case),
            (b(9), b(13), KBoundCase::AboveRange)
        );
        assert!(c.holds && c.k_within_bound);

        let c = checked(k_bound_check(&curve(&[2, 2]), &semistable_pair(2, 3, &[4, 0])).unwrap());
        assert_eq!(
            (c.bound, c.threshold, c.case),
            (b(4), b(6), KBoundCase::InRange)
        );

        let c = checked(k_bound_check(&curve(&[2, 3]), &semistable_pair(1, 2, &[6, 2])).unwrap());
        assert_eq!(
            (c.bound, c.threshold, c.case),
            (b(6), b(9), KBoundCase::Mixed)
        );
        assert!(c.holds);
    }

    #[test]
    fn k_bound_preconditions() {
        let mut pair = semistable_pair(1, 3, &[6, 6]);
        pair.restriction_semistable[1] = false;
        assert!(matches!(
            k_bound_check(&curve(&[2, 2]), &pair).unwrap(),
            KBoundOutcome::NotApplicable(_)
        ));
        assert!(matches!(
            k_bound_check(&curve(&[2, 2]), &semistable_pair(1, 3, &[0, 0])).unwrap(),
            KBoundOutcome::NotApplicable(_)
        ));
    }
}
