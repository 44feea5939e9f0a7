//! Weight bounds coming from the subsheaves `Ker(rho_j|V) (x) O_{C_j}(-nodes) (x) L_j`
//! of a twisted kernel bundle.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::polarization::Polarization;
use super::system::WeightBound;
use crate::curve::{kernel_numerics, twist, ChainCurve, GeneratedPairData, LineBundleTwist};
use crate::error::Result;
use crate::rational::{from_int, Rational};

fn check_twist(curve: &ChainCurve, line: &LineBundleTwist) -> Result<()> {
    curve.check_len("twist.multidegree", line.multidegree().len())
}

/// `deg L_j - delta_j + 1 - g_j`: the Euler characteristic of the rank-one
/// subsheaf on component `j` (1-based), so its w-slope is this over `w_j`.
pub fn subsheaf_numerator(curve: &ChainCurve, line: &LineBundleTwist, component: usize) -> BigInt {
    let j = component - 1;
    &line.multidegree()[j] - BigInt::from(curve.node_count(j)) + BigInt::one() - &curve.genera()[j]
}

/// w-slope of the component-`j` subsheaf.
pub fn subsheaf_slope(
    curve: &ChainCurve,
    line: &LineBundleTwist,
    component: usize,
    w: &Polarization,
) -> Rational {
    from_int(subsheaf_numerator(curve, line, component)) / &w.weights()[component - 1]
}

/// `chi(M (x) L) / (k - r)`, the w-slope of the twisted kernel bundle for
/// every polarization.
pub fn kernel_target_slope(
    curve: &ChainCurve,
    pair: &GeneratedPairData,
    line: &LineBundleTwist,
) -> Result<Rational> {
    check_twist(curve, line)?;
    let twisted = twist(&kernel_numerics(curve, pair)?, line)?;
    Ok(Rational::new(
        twisted.chi_global()?.clone(),
        pair.kernel_rank(),
    ))
}

/// Turns `numerator / w_j <= target` into a constraint on `w_j`. Returns
/// `None` when the inequality holds for every polarization.
pub fn subsheaf_weight_bound(
    curve: &ChainCurve,
    line: &LineBundleTwist,
    component: usize,
    target: &Rational,
) -> Option<WeightBound> {
    let numerator = subsheaf_numerator(curve, line, component);
    if target.is_zero() {
        return numerator
            .is_positive()
            .then(|| WeightBound::unsatisfiable(component, numerator));
    }
    let value = from_int(numerator) / target;
    Some(if target.is_negative() {
        WeightBound::at_most(component, value)
    } else {
        WeightBound::at_least(component, value)
    })
}

/// One bound per component with `ker_rho_nonzero` set.
pub fn subsheaf_slope_constraints(
    curve: &ChainCurve,
    pair: &GeneratedPairData,
    line: &LineBundleTwist,
    target: &Rational,
) -> Result<Vec<WeightBound>> {
    pair.validate(curve)?;
    check_twist(curve, line)?;
    Ok((1..=curve.components())
        .filter(|&j| pair.ker_rho_nonzero[j - 1])
        .filter_map(|j| subsheaf_weight_bound(curve, line, j, target))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::system::WeightBoundKind;
    use crate::rational::ratio;

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().copied().map(BigInt::from).collect()
    }

    fn flagged(r: i64, k: i64, d: &[i64]) -> GeneratedPairData {
        let mut pair = GeneratedPairData::new(r, k, ints(d));
        pair.ker_rho_nonzero = vec![true; d.len()];
        pair
    }

    #[test]
    fn endpoint_bound_is_two_ninths() {
        let curve = ChainCurve::new(ints(&[2, 2])).unwrap();
        let pair = flagged(1, 3, &[6, 6]);
        let line = LineBundleTwist::trivial(2);
        let target = kernel_target_slope(&curve, &pair, &line).unwrap();
        assert_eq!(target, ratio(-9, 1));
        let bounds = subsheaf_slope_constraints(&curve, &pair, &line, &target).unwrap();
        assert_eq!(bounds[0], WeightBound::at_most(1, ratio(2, 9)));
        // (k-r) g_1 / ((k-r)(p_a-1) + d)
        assert_eq!(bounds[0].value, ratio(2 * 2, 2 * 3 + 12));
    }

    #[test]
    fn middle_bound_is_six_nineteenths() {
        let curve = ChainCurve::new(ints(&[2, 2, 2])).unwrap();
        let pair = flagged(2, 4, &[3, 3, 3]);
        let line = LineBundleTwist::trivial(3);
        let target = kernel_target_slope(&curve, &pair, &line).unwrap();
        assert_eq!(target, ratio(-19, 2));
        let bounds = subsheaf_slope_constraints(&curve, &pair, &line, &target).unwrap();
        assert_eq!(bounds[1], WeightBound::at_most(2, ratio(6, 19)));
        assert_eq!(bounds[1].value, ratio(2 * 3, 2 * 5 + 9));
    }

    #[test]
    fn zero_numerator_forces_zero_weight() {
        let curve = ChainCurve::new(ints(&[2, 2])).unwrap();
        // deg L_1 = delta_1 - 1 + g_1 = 2
        let line = LineBundleTwist::new(ints(&[2, 0]));
        assert_eq!(subsheaf_numerator(&curve, &line, 1), BigInt::zero());
        let bound = subsheaf_weight_bound(&curve, &line, 1, &ratio(-9, 1)).unwrap();
        assert_eq!(bound, WeightBound::at_most(1, ratio(0, 1)));
    }

    #[test]
    fn zero_and_positive_targets() {
        let curve = ChainCurve::new(ints(&[2, 2])).unwrap();
        let line = LineBundleTwist::new(ints(&[5, 0]));
        let bound = subsheaf_weight_bound(&curve, &line, 1, &ratio(0, 1)).unwrap();
        assert_eq!(bound.kind, WeightBoundKind::Unsatisfiable);
        let none = subsheaf_weight_bound(&curve, &LineBundleTwist::trivial(2), 1, &ratio(0, 1));
        assert!(none.is_none());
        let lower = subsheaf_weight_bound(&curve, &line, 1, &ratio(6, 1)).unwrap();
        assert_eq!(lower, WeightBound::at_least(1, ratio(1, 2)));
    }
}
