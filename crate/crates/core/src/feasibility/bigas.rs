use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::interval::RationalInterval;
use super::polarization::Polarization;
use super::system::{simplex_intersect, FeasibleRegion, InfeasibilityCertificate, WeightBound};
use crate::curve::SheafNumerics;
use crate::error::{Error, Result};
use crate::rational::{from_int, Rational};

/// `mu_w(F) = chi(F) / sum w_j r_j`.
pub fn slope(sheaf: &SheafNumerics, w: &Polarization) -> Result<Rational> {
    check_components(sheaf, w)?;
    let weighted: Rational = w
        .weights()
        .iter()
        .zip(sheaf.multirank())
        .map(|(wj, r)| wj * from_int(r.clone()))
        .sum();
    if weighted.is_zero() {
        return Err(Error::SlopeUndefined);
    }
    Ok(from_int(sheaf.chi_global()?.clone()) / weighted)
}

fn check_components(sheaf: &SheafNumerics, w: &Polarization) -> Result<()> {
    if sheaf.components() != w.components() {
        return Err(Error::invalid(
            "polarization",
            format!(
                "expected {} weights, found {}",
                sheaf.components(),
                w.components()
            ),
        ));
    }
    Ok(())
}

/// Row `i` of the Bigas system: `X_i - m i <= S_i chi <= X_i - m (i - 1)`
/// with `X_i = chi_1 + ... + chi_i`. Returns `(lhs, rhs)` for `i = 1..n-1`.
fn bigas_rows(sheaf: &SheafNumerics) -> Result<(BigInt, Vec<(BigInt, BigInt)>)> {
    let m = sheaf.require_uniform_rank()?;
    if !m.is_positive() {
        return Err(Error::Unsupported(
            "the Bigas system needs rank at least 1".into(),
        ));
    }
    let chi = sheaf.chi_global()?.clone();
    let n = sheaf.components();
    let mut partial = BigInt::zero();
    let rows = sheaf.chi_components()[..n - 1]
        .iter()
        .enumerate()
        .map(|(idx, chi_j)| {
            partial += chi_j;
            let i = BigInt::from(idx + 1);
            (&partial - m * &i, &partial - m * (i - 1))
        })
        .collect();
    Ok((chi, rows))
}

/// Solves each Bigas row for `S_i`. Endpoints are closed; the orientation
/// follows the sign of `chi`. With `chi = 0` a row is either the whole line
/// or empty (`None`).
pub fn bigas_intervals(sheaf: &SheafNumerics) -> Result<Vec<Option<RationalInterval>>> {
    let (chi, rows) = bigas_rows(sheaf)?;
    let chi_q = from_int(chi.clone());
    Ok(rows
        .into_iter()
        .map(|(lhs, rhs)| {
            if chi.is_zero() {
                (!lhs.is_positive() && !rhs.is_negative()).then(RationalInterval::full)
            } else {
                let a = from_int(lhs) / &chi_q;
                let b = from_int(rhs) / &chi_q;
                let (lo, hi) = if chi.is_negative() { (b, a) } else { (a, b) };
                RationalInterval::closed(lo, hi)
            }
        })
        .collect())
}

/// Evaluates every Bigas inequality at `w` directly.
pub fn check_bigas(sheaf: &SheafNumerics, w: &Polarization) -> Result<bool> {
    check_components(sheaf, w)?;
    let (chi, rows) = bigas_rows(sheaf)?;
    let chi = from_int(chi);
    Ok(rows
        .into_iter()
        .zip(w.partial_sums())
        .all(|((lhs, rhs), s)| {
            let value = s * &chi;
            from_int(lhs) <= value && value <= from_int(rhs)
        }))
}

/// Bigas intervals intersected with the open simplex chain and `bounds`.
/// Empty-row certificates carry the failing row.
pub fn bigas_region(sheaf: &SheafNumerics, bounds: &[WeightBound]) -> Result<FeasibleRegion> {
    let intervals = bigas_intervals(sheaf)?;
    let mut region = simplex_intersect(&intervals, bounds)?;
    if let Some(InfeasibilityCertificate::EmptyBigasRow {
        partial_sum,
        lhs,
        rhs,
    }) = &mut region.certificate
    {
        let (_, rows) = bigas_rows(sheaf)?;
        let (l, r) = rows[*partial_sum - 1].clone();
        *lhs = Some(l);
        *rhs = Some(r);
    }
    Ok(region)
}

/// The Bigas region with no extra bounds, plus a midpoint witness when
/// feasible.
pub fn find_polarization(sheaf: &SheafNumerics) -> Result<FeasibleRegion> {
    bigas_region(sheaf, &[])
}

/// A certificate that no polarization satisfies the Bigas system together
/// with `bounds`, or `None` when one does.
pub fn prove_infeasible_with_certificate(
    sheaf: &SheafNumerics,
    bounds: &[WeightBound],
) -> Result<Option<InfeasibilityCertificate>> {
    Ok(bigas_region(sheaf, bounds)?.certificate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{kernel_numerics, ChainCurve, GeneratedPairData};
    use crate::feasibility::system::{Constraint, Quantity, RegionStatus};
    use crate::rational::ratio;

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().copied().map(BigInt::from).collect()
    }

    fn sheaf(genera: &[i64], ranks: &[i64], degrees: &[i64]) -> SheafNumerics {
        let curve = ChainCurve::new(ints(genera)).unwrap();
        SheafNumerics::from_multidegree(&curve, ints(ranks), ints(degrees)).unwrap()
    }

    fn endpoint_kernel() -> SheafNumerics {
        let curve = ChainCurve::new(ints(&[2, 2])).unwrap();
        kernel_numerics(&curve, &GeneratedPairData::new(1, 3, ints(&[6, 6]))).unwrap()
    }

    fn w(values: &[(i64, i64)]) -> Polarization {
        Polarization::new(values.iter().map(|&(p, q)| ratio(p, q)).collect()).unwrap()
    }

    #[test]
    fn slopes() {
        assert_eq!(
            slope(&endpoint_kernel(), &w(&[(1, 2), (1, 2)])).unwrap(),
            ratio(-9, 1)
        );
        let trivial = sheaf(&[2, 2], &[3, 3], &[0, 0]);
        assert_eq!(
            slope(&trivial, &w(&[(1, 5), (4, 5)])).unwrap(),
            ratio(-3, 1)
        );
        let curve = ChainCurve::new(ints(&[2, 2])).unwrap();
        // rank (t, 0) with chi = -t g_1
        let supported =
            SheafNumerics::supported_on(&curve, 1, BigInt::from(3), BigInt::from(-3)).unwrap();
        assert_eq!(supported.chi_global().unwrap(), &BigInt::from(-6));
        assert_eq!(
            slope(&supported, &w(&[(1, 3), (2, 3)])).unwrap(),
            ratio(-6, 1)
        );
        let zero = sheaf(&[2, 2], &[0, 0], &[1, 1]);
        assert_eq!(
            slope(&zero, &w(&[(1, 2), (1, 2)])),
            Err(Error::SlopeUndefined)
        );
    }

    #[test]
    fn intervals_for_each_sign_of_chi() {
        let trivial = sheaf(&[2, 2], &[1, 1], &[0, 0]);
        assert_eq!(
            bigas_intervals(&trivial).unwrap()[0]
                .as_ref()
                .unwrap()
                .to_string(),
            "[1/3, 2/3]"
        );
        assert_eq!(
            bigas_intervals(&endpoint_kernel()).unwrap()[0]
                .as_ref()
                .unwrap()
                .to_string(),
            "[4/9, 5/9]"
        );
        let positive = sheaf(&[2, 2], &[1, 1], &[0, 4]);
        assert_eq!(
            bigas_intervals(&positive).unwrap()[0]
                .as_ref()
                .unwrap()
                .to_string(),
            "[-2/1, -1/1]"
        );
    }

    #[test]
    fn zero_chi_rows_are_full_or_empty() {
        // chi = d - 3 on (2,2) rank 1; d = (1,2): chi_1 = 0, rows 0-1 <= 0 <= 0.
        let full = sheaf(&[2, 2], &[1, 1], &[1, 2]);
        assert_eq!(full.chi_global().unwrap(), &BigInt::zero());
        assert_eq!(
            bigas_intervals(&full).unwrap()[0],
            Some(RationalInterval::full())
        );
        let empty = sheaf(&[2, 2], &[1, 1], &[3, 0]);
        assert_eq!(bigas_intervals(&empty).unwrap()[0], None);
        let region = find_polarization(&empty).unwrap();
        assert_eq!(region.status, RegionStatus::Infeasible);
        let cert = region.certificate.unwrap();
        assert_eq!(
            cert,
            InfeasibilityCertificate::EmptyBigasRow {
                partial_sum: 1,
                lhs: Some(BigInt::from(1)),
                rhs: Some(BigInt::from(2)),
            }
        );
        assert!(cert.verify());
    }

    #[test]
    fn check_bigas_examples() {
        let trivial = sheaf(&[2, 2], &[1, 1], &[0, 0]);
        assert!(check_bigas(&trivial, &w(&[(1, 2), (1, 2)])).unwrap());
        assert!(!check_bigas(&trivial, &w(&[(1, 5), (4, 5)])).unwrap());
        assert!(check_bigas(&trivial, &w(&[(1, 3), (2, 3)])).unwrap());
    }

    #[test]
    fn find_polarization_examples() {
        let region = find_polarization(&endpoint_kernel()).unwrap();
        assert_eq!(region.witness.unwrap().to_strings(), vec!["1/2", "1/2"]);
        let region = find_polarization(&sheaf(&[2, 3], &[1, 1], &[0, 0])).unwrap();
        assert_eq!(region.witness.unwrap().to_strings(), vec!["3/8", "5/8"]);
        let region = find_polarization(&sheaf(&[2, 2], &[1, 1], &[0, 4])).unwrap();
        assert_eq!(region.status, RegionStatus::Infeasible);
    }

    #[test]
    fn endpoint_certificate_clashes_eight_vs_four_eighteenths() {
        let cert = prove_infeasible_with_certificate(
            &endpoint_kernel(),
            &[WeightBound::at_most(1, ratio(2, 9))],
        )
        .unwrap()
        .unwrap();
        assert!(cert.verify());
        match cert {
            InfeasibilityCertificate::Clash {
                quantity,
                lower,
                upper,
            } => {
                assert_eq!(quantity, Quantity::PartialSum(1));
                assert_eq!(lower.value, ratio(8, 18));
                assert_eq!(upper.value, ratio(4, 18));
                assert!(matches!(
                    lower.constraints[..],
                    [Constraint::BigasLower { .. }]
                ));
                assert!(matches!(
                    upper.constraints[..],
                    [Constraint::WeightUpper { .. }]
                ));
            }
            other => panic!("unexpected {other:?}"),
        }
        let trivial = sheaf(&[2, 2], &[1, 1], &[0, 0]);
        assert!(prove_infeasible_with_certificate(&trivial, &[])
            .unwrap()
            .is_none());
    }

    #[test]
    fn rejects_non_uniform_rank() {
        let mixed = sheaf(&[2, 2], &[1, 2], &[0, 0]);
        assert!(matches!(
            bigas_intervals(&mixed),
            Err(Error::Unsupported(_))
        ));
    }
}
