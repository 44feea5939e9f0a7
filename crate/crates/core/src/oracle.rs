//! Brute-force checks over bounded-denominator polarizations, used to
//! cross-validate the interval engine and the strong-instability rules.

use num_bigint::BigInt;

use crate::curve::{
    kernel_numerics, twist, ChainCurve, GeneratedPairData, LineBundleTwist, SheafNumerics,
};
use crate::error::{Error, Result};
use crate::feasibility::{
    check_bigas, find_polarization, kernel_target_slope, subsheaf_slope, Polarization, RegionStatus,
};
use crate::rational::Rational;
use crate::scenario::{Scenario, Subject};
use crate::stability::kernel_region;

/// Default grid denominator; divisible by 2, 3, 4 and 5.
pub const DEFAULT_DENOMINATOR: u64 = 60;
/// Default bound on `|deg L_j|` for the twist sweep.
pub const DEFAULT_TWIST_RANGE: i64 = 3;

/// Polarizations `(a_1/D, ..., a_n/D)` with every `a_j >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridSpec {
    denominator: u64,
    n: usize,
}

impl GridSpec {
    pub fn new(denominator: u64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("grid.n", format!("need n >= 2, found {n}")));
        }
        if denominator < n as u64 {
            return Err(Error::invalid(
                "denominator",
                format!("need D >= n = {n} for a positive composition, found {denominator}"),
            ));
        }
        Ok(GridSpec { denominator, n })
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn components(&self) -> usize {
        self.n
    }

    /// `C(D - 1, n - 1)`.
    pub fn size(&self) -> BigInt {
        let (top, k) = (self.denominator - 1, self.n as u64 - 1);
        (0..k).fold(BigInt::from(1u8), |acc, i| acc * (top - i) / (i + 1))
    }
}

/// Positive compositions of `D` into `n` parts, in lexicographic order.
#[derive(Debug, Clone)]
pub struct Compositions {
    spec: GridSpec,
    parts: Option<Vec<u64>>,
}

impl Iterator for Compositions {
    type Item = Polarization;

    fn next(&mut self) -> Option<Polarization> {
        let parts = self.parts.as_mut()?;
        let current = Polarization::from_grid(parts, self.spec.denominator);
        let n = parts.len();
        // Rightmost part whose suffix still has slack gets bumped; the parts
        // after it reset to 1 and the last absorbs the remainder.
        let mut suffix = 0;
        let pivot = (0..n - 1).rev().find(|&i| {
            suffix += parts[i + 1];
            suffix > (n - 1 - i) as u64
        });
        match pivot {
            Some(i) => {
                parts[i] += 1;
                for p in &mut parts[i + 1..n - 1] {
                    *p = 1;
                }
                let used: u64 = parts[..n - 1].iter().sum();
                parts[n - 1] = self.spec.denominator - used;
            }
            None => self.parts = None,
        }
        Some(current)
    }
}

pub fn enumerate_polarizations(spec: GridSpec) -> Compositions {
    let mut parts = vec![1; spec.n];
    parts[spec.n - 1] = spec.denominator - (spec.n as u64 - 1);
    Compositions {
        spec,
        parts: Some(parts),
    }
}

/// Grid polarizations satisfying every Bigas inequality of `sheaf`.
pub fn brute_force_region(sheaf: &SheafNumerics, spec: GridSpec) -> Result<Vec<Polarization>> {
    check_spec(spec, sheaf.components())?;
    let mut found = Vec::new();
    for w in enumerate_polarizations(spec) {
        if check_bigas(sheaf, &w)? {
            found.push(w);
        }
    }
    Ok(found)
}

fn check_spec(spec: GridSpec, n: usize) -> Result<()> {
    if spec.n != n {
        return Err(Error::invalid(
            "grid.n",
            format!("grid has {} components but the curve has {n}", spec.n),
        ));
    }
    Ok(())
}

/// A subsheaf whose w-slope exceeds that of the bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DestabilizerWitness {
    pub component: usize,
    pub subsheaf_slope: Rational,
    pub target_slope: Rational,
}

fn first_destabilizer(
    curve: &ChainCurve,
    pair: &GeneratedPairData,
    w: &Polarization,
    line: &LineBundleTwist,
    target: &Rational,
) -> Option<DestabilizerWitness> {
    (1..=curve.components())
        .filter(|&j| pair.ker_rho_nonzero[j - 1])
        .map(|j| (j, subsheaf_slope(curve, line, j, w)))
        .find(|(_, s)| s > target)
        .map(|(component, subsheaf_slope)| DestabilizerWitness {
            component,
            subsheaf_slope,
            target_slope: target.clone(),
        })
}

/// The lowest-index component whose `Ker(rho_j|V)` subsheaf destabilizes
/// `M (x) L` at `w`.
pub fn destabilizer_witness(
    curve: &ChainCurve,
    pair: &GeneratedPairData,
    w: &Polarization,
    line: &LineBundleTwist,
) -> Result<Option<DestabilizerWitness>> {
    if w.components() != curve.components() {
        return Err(Error::invalid(
            "polarization",
            "length differs from the curve",
        ));
    }
    let target = kernel_target_slope(curve, pair, line)?;
    Ok(first_destabilizer(curve, pair, w, line, &target))
}

/// Grid polarizations that pass the Bigas system of `M (x) L` and every
/// declared subsheaf inequality.
pub fn brute_force_pair_region(
    curve: &ChainCurve,
    pair: &GeneratedPairData,
    line: &LineBundleTwist,
    spec: GridSpec,
) -> Result<Vec<Polarization>> {
    check_spec(spec, curve.components())?;
    let sheaf = twist(&kernel_numerics(curve, pair)?, line)?;
    let target = kernel_target_slope(curve, pair, line)?;
    let mut found = Vec::new();
    for w in enumerate_polarizations(spec) {
        if first_destabilizer(curve, pair, &w, line, &target).is_none() && check_bigas(&sheaf, &w)?
        {
            found.push(w);
        }
    }
    Ok(found)
}

/// Result of sweeping every grid polarization against every twist in a box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistSweep {
    pub twist_range: i64,
    pub twists_checked: u64,
    pub polarizations_checked: u64,
    /// `(w, L)` pairs without a destabilizer; at most 20 are kept.
    pub absences: Vec<(Polarization, LineBundleTwist)>,
    pub absence_count: u64,
}

/// For every `L` with `|deg L_j| <= range` and every grid `w`, looks for a
/// destabilizing kernel subsheaf.
pub fn sweep_twists(
    curve: &ChainCurve,
    pair: &GeneratedPairData,
    spec: GridSpec,
    range: i64,
) -> Result<TwistSweep> {
    check_spec(spec, curve.components())?;
    if range < 0 {
        return Err(Error::invalid("twist_range", "must be non-negative"));
    }
    let grid: Vec<Polarization> = enumerate_polarizations(spec).collect();
    let n = curve.components();
    let mut degrees = vec![-range; n];
    let mut sweep = TwistSweep {
        twist_range: range,
        twists_checked: 0,
        polarizations_checked: grid.len() as u64,
        absences: Vec::new(),
        absence_count: 0,
    };
    loop {
        let line = LineBundleTwist::new(degrees.iter().map(|&d| BigInt::from(d)).collect());
        let target = kernel_target_slope(curve, pair, &line)?;
        for w in &grid {
            if first_destabilizer(curve, pair, w, &line, &target).is_none() {
                sweep.absence_count += 1;
                if sweep.absences.len() < 20 {
                    sweep.absences.push((w.clone(), line.clone()));
                }
            }
        }
        sweep.twists_checked += 1;
        let Some(i) = degrees.iter().rposition(|&d| d < range) else {
            break;
        };
        degrees[i] += 1;
        for d in &mut degrees[i + 1..] {
            *d = -range;
        }
    }
    Ok(sweep)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub denominator: u64,
    pub grid_size: u64,
    pub region_status: RegionStatus,
    /// Grid points passing the brute-force filter.
    pub grid_points: Vec<Polarization>,
    /// Whether the engine's region contains a point of denominator `D`.
    pub region_has_grid_point: bool,
    pub agreement: bool,
    pub discrepancies: Vec<String>,
    pub twist_sweep: Option<TwistSweep>,
}

/// Compares the engine against the brute-force grid, point by point, and for
/// pairs meeting the all-twists hypotheses sweeps a box of twists.
pub fn cross_validate(
    scenario: &Scenario,
    spec: GridSpec,
    twist_range: i64,
) -> Result<ValidationReport> {
    let curve = &scenario.curve;
    check_spec(spec, curve.components())?;
    let line = scenario
        .twist
        .clone()
        .unwrap_or_else(|| LineBundleTwist::trivial(curve.components()));
    let (region, grid_points, sweep) = match &scenario.subject {
        Subject::Sheaf(input) => {
            input.validate(curve)?;
            let base = SheafNumerics::from_multidegree(
                curve,
                input.multirank.clone(),
                input.multidegree.clone(),
            )?;
            let sheaf = match &scenario.twist {
                Some(l) => twist(&base, l)?,
                None => base,
            };
            (
                find_polarization(&sheaf)?,
                brute_force_region(&sheaf, spec)?,
                None,
            )
        }
        Subject::Pair(pair) => {
            let (_, region) = kernel_region(curve, pair, &line)?;
            let grid = brute_force_pair_region(curve, pair, &line, spec)?;
            let nodes = BigInt::from(curve.components() - 1);
            let sweep = if pair.ker_rho_nonzero.iter().all(|&x| x)
                && pair.total_degree() > nodes * pair.kernel_rank()
            {
                Some(sweep_twists(curve, pair, spec, twist_range)?)
            } else {
                None
            };
            (region, grid, sweep)
        }
    };
    let mut discrepancies = Vec::new();
    let grid_count = enumerate_polarizations(spec)
        .filter(|w| {
            let inside = region.admits(w);
            let listed = grid_points.contains(w);
            if inside != listed {
                discrepancies.push(format!(
                    "w = ({}): engine {} but brute force {}",
                    w.to_strings().join(", "),
                    if inside { "admits" } else { "excludes" },
                    if listed { "admits" } else { "excludes" }
                ));
            }
            true
        })
        .count() as u64;
    let region_has_grid_point = region.has_grid_point(spec.denominator());
    if region_has_grid_point != !grid_points.is_empty() {
        discrepancies.push(format!(
            "integer sweep says {} grid point, brute force found {}",
            if region_has_grid_point { "some" } else { "no" },
            grid_points.len()
        ));
    }
    if region.status != RegionStatus::Feasible && !grid_points.is_empty() {
        discrepancies.push(format!(
            "engine reports {} but brute force found {} points",
            region.status.name(),
            grid_points.len()
        ));
    }
    if let Some(s) = &sweep {
        if s.absence_count > 0 {
            for (w, l) in &s.absences {
                discrepancies.push(format!(
                    "no destabilizer at w = ({}) for twist ({})",
                    w.to_strings().join(", "),
                    l.multidegree()
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
            }
        }
    }
    Ok(ValidationReport {
        denominator: spec.denominator(),
        grid_size: grid_count,
        region_status: region.status,
        grid_points,
        region_has_grid_point,
        agreement: discrepancies.is_empty(),
        discrepancies,
        twist_sweep: sweep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().copied().map(BigInt::from).collect()
    }

    fn curve(genera: &[i64]) -> ChainCurve {
        ChainCurve::new(ints(genera)).unwrap()
    }

    fn strings(ws: &[Polarization]) -> Vec<Vec<String>> {
        ws.iter().map(Polarization::to_strings).collect()
    }

    #[test]
    fn enumeration_examples() {
        let all: Vec<_> = enumerate_polarizations(GridSpec::new(3, 2).unwrap()).collect();
        assert_eq!(strings(&all), vec![vec!["1/3", "2/3"], vec!["2/3", "1/3"]]);
        let all: Vec<_> = enumerate_polarizations(GridSpec::new(2, 2).unwrap()).collect();
        assert_eq!(strings(&all), vec![vec!["1/2", "1/2"]]);
        assert_eq!(
            enumerate_polarizations(GridSpec::new(4, 3).unwrap()).count(),
            3
        );
        assert!(GridSpec::new(2, 3).is_err());
    }

    #[test]
    fn enumeration_counts_match_binomials() {
        for (d, n) in [(24, 3), (10, 4), (7, 7), (12, 2), (9, 5)] {
            let spec = GridSpec::new(d, n).unwrap();
            let all: Vec<_> = enumerate_polarizations(spec).collect();
            assert_eq!(BigInt::from(all.len()), spec.size(), "D={d} n={n}");
            let unique: std::collections::HashSet<_> = all.iter().cloned().collect();
            assert_eq!(unique.len(), all.len());
        }
    }

    #[test]
    fn brute_force_examples() {
        let c = curve(&[2, 2]);
        let trivial = SheafNumerics::from_multidegree(&c, ints(&[1, 1]), ints(&[0, 0])).unwrap();
        let found = brute_force_region(&trivial, GridSpec::new(6, 2).unwrap()).unwrap();
        let s1: Vec<_> = found.iter().map(|w| w.partial_sums()[0].clone()).collect();
        assert_eq!(s1, vec![ratio(1, 3), ratio(1, 2), ratio(2, 3)]);

        let positive = SheafNumerics::from_multidegree(&c, ints(&[1, 1]), ints(&[0, 4])).unwrap();
        assert!(brute_force_region(&positive, GridSpec::new(60, 2).unwrap())
            .unwrap()
            .is_empty());

        let kernel = kernel_numerics(&c, &GeneratedPairData::new(1, 3, ints(&[6, 6]))).unwrap();
        let found = brute_force_region(&kernel, GridSpec::new(18, 2).unwrap()).unwrap();
        let s1: Vec<_> = found.iter().map(|w| w.partial_sums()[0].clone()).collect();
        assert_eq!(s1, vec![ratio(8, 18), ratio(9, 18), ratio(10, 18)]);
    }

    #[test]
    fn destabilizer_examples() {
        let c = curve(&[2, 2, 2]);
        let mut pair = GeneratedPairData::new(2, 4, ints(&[3, 3, 3]));
        pair.ker_rho_nonzero = vec![true; 3];
        let line = LineBundleTwist::trivial(3);
        let w = Polarization::new(vec![ratio(1, 3); 3]).unwrap();
        let found = destabilizer_witness(&c, &pair, &w, &line).unwrap().unwrap();
        assert_eq!(found.component, 1);
        assert_eq!(found.subsheaf_slope, ratio(-6, 1));
        assert_eq!(found.target_slope, ratio(-19, 2));
        let w = Polarization::new(vec![ratio(1, 6), ratio(1, 6), ratio(4, 6)]).unwrap();
        assert!(destabilizer_witness(&c, &pair, &w, &line)
            .unwrap()
            .is_some());
    }

    #[test]
    fn twist_sweep_covers_the_box() {
        let c = curve(&[2, 2, 2]);
        let mut pair = GeneratedPairData::new(2, 4, ints(&[3, 3, 3]));
        pair.ker_rho_nonzero = vec![true; 3];
        let sweep = sweep_twists(&c, &pair, GridSpec::new(12, 3).unwrap(), 1).unwrap();
        assert_eq!(sweep.twists_checked, 27);
        assert_eq!(sweep.polarizations_checked, 55);
        assert_eq!(sweep.absence_count, 0);
    }
}
