//! Interval propagation over the partial-sum chain
//! `0 = S_0 < S_1 < ... < S_{n-1} < S_n = 1`.
//!
//! Every constraint is either a window on a single `S_i` or a window on a
//! single step `w_j = S_j - S_{j-1}`, so the feasible set projects onto each
//! `S_i` as an interval and a forward sweep of reachable intervals decides
//! feasibility exactly. Each reachable endpoint remembers the constraints it
//! was derived from, which is what turns a failed sweep into a certificate.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::RationalInterval;
use super::polarization::Polarization;
use crate::error::{Error, Result};
use crate::rational::{ceil_bound, floor_bound, format_ratio, from_int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightBoundKind {
    /// `w_j <= value` (`<` when open).
    Upper,
    /// `w_j >= value` (`>` when open).
    Lower,
    /// No polarization satisfies the constraint; `value` holds the positive
    /// numerator of the violated w-free inequality `numerator <= 0`.
    Unsatisfiable,
}

/// A constraint on a single polarization weight. `component` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightBound {
    pub component: usize,
    pub kind: WeightBoundKind,
    pub value: Rational,
    pub open: bool,
}

impl WeightBound {
    pub fn at_most(component: usize, value: Rational) -> Self {
        WeightBound {
            component,
            kind: WeightBoundKind::Upper,
            value,
            open: false,
        }
    }

    pub fn at_least(component: usize, value: Rational) -> Self {
        WeightBound {
            component,
            kind: WeightBoundKind::Lower,
            value,
            open: false,
        }
    }

    pub fn unsatisfiable(component: usize, numerator: BigInt) -> Self {
        WeightBound {
            component,
            kind: WeightBoundKind::Unsatisfiable,
            value: Rational::from_integer(numerator),
            open: false,
        }
    }

    pub fn admits(&self, weight: &Rational) -> bool {
        match self.kind {
            WeightBoundKind::Upper if self.open => *weight < self.value,
            WeightBoundKind::Upper => *weight <= self.value,
            WeightBoundKind::Lower if self.open => *weight > self.value,
            WeightBoundKind::Lower => *weight >= self.value,
            WeightBoundKind::Unsatisfiable => false,
        }
    }
}

impl fmt::Display for WeightBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = self.component;
        let v = format_ratio(&self.value);
        match (self.kind, self.open) {
            (WeightBoundKind::Upper, false) => write!(f, "w_{j} <= {v}"),
            (WeightBoundKind::Upper, true) => write!(f, "w_{j} < {v}"),
            (WeightBoundKind::Lower, false) => write!(f, "w_{j} >= {v}"),
            (WeightBoundKind::Lower, true) => write!(f, "w_{j} > {v}"),
            (WeightBoundKind::Unsatisfiable, _) => {
                write!(f, "component {j}: {v} <= 0 required for every w")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionStatus {
    Feasible,
    Infeasible,
    /// The closure of the system is solvable, but only with some `w_j = 0`
    /// or with a partial sum sitting on an excluded open endpoint.
    BoundaryOnly,
}

impl RegionStatus {
    pub fn name(self) -> &'static str {
        match self {
            RegionStatus::Feasible => "feasible",
            RegionStatus::Infeasible => "infeasible",
            RegionStatus::BoundaryOnly => "boundary_only",
        }
    }
}

/// One atomic constraint of the system, as cited by a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// `S_n = 1`.
    Total,
    BigasLower {
        partial_sum: usize,
        value: Rational,
    },
    BigasUpper {
        partial_sum: usize,
        value: Rational,
    },
    /// `w_j > 0`.
    Positive {
        component: usize,
    },
    WeightUpper {
        component: usize,
        value: Rational,
        open: bool,
    },
    WeightLower {
        component: usize,
        value: Rational,
        open: bool,
    },
}

impl Constraint {
    /// What the constraint adds to a telescoped bound.
    pub fn contribution(&self) -> Rational {
        match self {
            Constraint::Total => Rational::one(),
            Constraint::Positive { .. } => Rational::zero(),
            Constraint::BigasLower { value, .. }
            | Constraint::BigasUpper { value, .. }
            | Constraint::WeightUpper { value, .. }
            | Constraint::WeightLower { value, .. } => value.clone(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Constraint::Total => "total",
            Constraint::BigasLower { .. } => "bigas_lower",
            Constraint::BigasUpper { .. } => "bigas_upper",
            Constraint::Positive { .. } => "positive_weight",
            Constraint::WeightUpper { .. } => "weight_upper",
            Constraint::WeightLower { .. } => "weight_lower",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Total => write!(f, "S_n = 1"),
            Constraint::BigasLower { partial_sum, value } => {
                write!(f, "S_{partial_sum} >= {}", format_ratio(value))
            }
            Constraint::BigasUpper { partial_sum, value } => {
                write!(f, "S_{partial_sum} <= {}", format_ratio(value))
            }
            Constraint::Positive { component } => write!(f, "w_{component} > 0"),
            Constraint::WeightUpper {
                component,
                value,
                open,
            } => {
                let op = if *open { "<" } else { "<=" };
                write!(f, "w_{component} {op} {}", format_ratio(value))
            }
            Constraint::WeightLower {
                component,
                value,
                open,
            } => {
                let op = if *open { ">" } else { ">=" };
                write!(f, "w_{component} {op} {}", format_ratio(value))
            }
        }
    }
}

/// A bound on one quantity obtained by adding up the cited constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedBound {
    pub value: Rational,
    pub open: bool,
    pub constraints: Vec<Constraint>,
}

/// The quantity two derived bounds disagree about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// `S_i`, 1-based; `S_n` is the total weight.
    PartialSum(usize),
    /// `w_j`, 1-based.
    Weight(usize),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::PartialSum(i) => write!(f, "S_{i}"),
            Quantity::Weight(j) => write!(f, "w_{j}"),
        }
    }
}

/// Why no polarization satisfies a system. Every variant re-verifies with a
/// single rational comparison via [`InfeasibilityCertificate::verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfeasibilityCertificate {
    /// `quantity >= lower.value` and `quantity <= upper.value` cannot both
    /// hold.
    Clash {
        quantity: Quantity,
        lower: DerivedBound,
        upper: DerivedBound,
    },
    /// The Bigas row for `S_i` has `chi = 0` and asks for
    /// `lhs <= 0 <= rhs`, which fails. Limits are absent when the row was
    /// only known to be empty.
    EmptyBigasRow {
        partial_sum: usize,
        lhs: Option<BigInt>,
        rhs: Option<BigInt>,
    },
    /// A w-free subsheaf inequality `numerator <= 0` fails.
    UnsatisfiableWeight { component: usize, numerator: BigInt },
}

impl InfeasibilityCertificate {
    /// Re-checks the certificate from its own contents.
    pub fn verify(&self) -> bool {
        match self {
            InfeasibilityCertificate::Clash {
                quantity,
                lower,
                upper,
            } => {
                let sums_match = |b: &DerivedBound| {
                    b.constraints
                        .iter()
                        .map(Constraint::contribution)
                        .sum::<Rational>()
                        == b.value
                };
                sums_match(lower)
                    && sums_match(upper)
                    && telescopes(*quantity, &lower.constraints, true)
                    && telescopes(*quantity, &upper.constraints, false)
                    && (lower.value > upper.value
                        || (lower.value == upper.value && (lower.open || upper.open)))
            }
            InfeasibilityCertificate::EmptyBigasRow { lhs, rhs, .. } => match (lhs, rhs) {
                (Some(l), Some(r)) => l.is_positive() || r.is_negative(),
                _ => true,
            },
            InfeasibilityCertificate::UnsatisfiableWeight { numerator, .. } => {
                numerator.is_positive()
            }
        }
    }

    /// True when the contradiction survives closing every strict inequality.
    pub fn is_strict_clash(&self) -> bool {
        match self {
            InfeasibilityCertificate::Clash { lower, upper, .. } => lower.value > upper.value,
            _ => true,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            InfeasibilityCertificate::Clash { .. } => "clash",
            InfeasibilityCertificate::EmptyBigasRow { .. } => "empty_bigas_row",
            InfeasibilityCertificate::UnsatisfiableWeight { .. } => "unsatisfiable_weight",
        }
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        match self {
            InfeasibilityCertificate::Clash {
                quantity,
                lower,
                upper,
            } => {
                let lo = if lower.open { ">" } else { ">=" };
                let hi = if upper.open { "<" } else { "<=" };
                let cite = |b: &DerivedBound| {
                    if b.constraints.is_empty() {
                        "S_0 = 0".to_string()
                    } else {
                        b.constraints
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(" + ")
                    }
                };
                format!(
                    "{quantity} {lo} {} [{}] contradicts {quantity} {hi} {} [{}]",
                    format_ratio(&lower.value),
                    cite(lower),
                    format_ratio(&upper.value),
                    cite(upper)
                )
            }
            InfeasibilityCertificate::EmptyBigasRow { partial_sum, lhs, rhs } => match (lhs, rhs) {
                (Some(l), Some(r)) => format!(
                    "chi = 0 and the row for S_{partial_sum} needs {l} <= 0 <= {r}"
                ),
                _ => format!("the Bigas interval for S_{partial_sum} is empty"),
            },
            InfeasibilityCertificate::UnsatisfiableWeight {
                component,
                numerator,
            } => format!(
                "subsheaf on component {component} has slope {numerator}/w_{component} > 0 = target for every w"
            ),
        }
    }
}

/// Checks that a derivation is a valid telescoping chain for `quantity`.
fn telescopes(quantity: Quantity, constraints: &[Constraint], lower: bool) -> bool {
    match quantity {
        Quantity::Weight(j) => match constraints {
            [Constraint::Positive { component }] => lower && *component == j,
            [Constraint::WeightLower { component, .. }] => lower && *component == j,
            [Constraint::WeightUpper { component, .. }] => !lower && *component == j,
            _ => false,
        },
        Quantity::PartialSum(i) => {
            let (anchor, steps) = match constraints.first() {
                Some(Constraint::BigasLower { partial_sum, .. }) if lower => {
                    (*partial_sum, &constraints[1..])
                }
                Some(Constraint::BigasUpper { partial_sum, .. }) if !lower => {
                    (*partial_sum, &constraints[1..])
                }
                Some(Constraint::Total) => return constraints.len() == 1,
                _ => (0, constraints),
            };
            if anchor > i || steps.len() != i - anchor {
                return false;
            }
            steps.iter().zip(anchor + 1..=i).all(|(c, j)| match c {
                Constraint::Positive { component } | Constraint::WeightLower { component, .. } => {
                    lower && *component == j
                }
                Constraint::WeightUpper { component, .. } => !lower && *component == j,
                _ => false,
            })
        }
    }
}

/// Result of intersecting Bigas intervals with the open simplex chain and
/// any per-weight bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleRegion {
    /// Input windows for `S_1..S_{n-1}`; `None` marks an empty row.
    pub s_intervals: Vec<Option<RationalInterval>>,
    pub bounds: Vec<WeightBound>,
    pub status: RegionStatus,
    pub witness: Option<Polarization>,
    /// Exact range of each `S_i` over all polarizations in the region
    /// (present only when feasible).
    pub projections: Vec<RationalInterval>,
    pub certificate: Option<InfeasibilityCertificate>,
}

impl FeasibleRegion {
    pub fn components(&self) -> usize {
        self.s_intervals.len() + 1
    }

    pub fn is_feasible(&self) -> bool {
        self.status == RegionStatus::Feasible
    }

    /// Direct membership test of a polarization against every stored
    /// constraint.
    pub fn admits(&self, w: &Polarization) -> bool {
        if w.components() != self.components() {
            return false;
        }
        let sums = w.partial_sums();
        let rows = self
            .s_intervals
            .iter()
            .zip(&sums)
            .all(|(i, s)| i.as_ref().is_some_and(|i| i.contains(s)));
        rows && self
            .bounds
            .iter()
            .all(|b| b.admits(&w.weights()[b.component - 1]))
    }

    /// Whether some polarization with all weights in `(1/D) Z` lies in the
    /// region. Decided by the same sweep run over integers `a_i = D S_i`.
    pub fn has_grid_point(&self, denominator: u64) -> bool {
        grid_point_exists(&self.s_intervals, &self.bounds, denominator)
    }
}

#[derive(Debug, Clone)]
struct End {
    value: Rational,
    open: bool,
    why: Vec<Constraint>,
}

impl End {
    fn into_bound(self) -> DerivedBound {
        DerivedBound {
            value: self.value,
            open: self.open,
            constraints: self.why,
        }
    }

    fn plus(&self, other: &End) -> End {
        let mut why = self.why.clone();
        why.extend(other.why.iter().cloned());
        End {
            value: &self.value + &other.value,
            open: self.open || other.open,
            why,
        }
    }
}

/// Prefers the larger value, then the open end, then the shorter derivation.
fn tighter_lower(a: End, b: End) -> End {
    use std::cmp::Ordering::*;
    match a.value.cmp(&b.value) {
        Greater => a,
        Less => b,
        Equal if a.open != b.open => {
            if a.open {
                a
            } else {
                b
            }
        }
        Equal => {
            if b.why.len() < a.why.len() {
                b
            } else {
                a
            }
        }
    }
}

fn tighter_upper(a: End, b: End) -> End {
    use std::cmp::Ordering::*;
    match a.value.cmp(&b.value) {
        Less => a,
        Greater => b,
        Equal if a.open != b.open => {
            if a.open {
                a
            } else {
                b
            }
        }
        Equal => {
            if b.why.len() < a.why.len() {
                b
            } else {
                a
            }
        }
    }
}

fn tighter_upper_opt(a: Option<End>, b: Option<End>) -> Option<End> {
    match (a, b) {
        (Some(a), Some(b)) => Some(tighter_upper(a, b)),
        (a, None) => a,
        (None, b) => b,
    }
}

fn clashes(lower: &End, upper: &End) -> bool {
    lower.value > upper.value || (lower.value == upper.value && (lower.open || upper.open))
}

/// Window on `w_j` assembled from positivity and the supplied bounds.
#[derive(Debug, Clone)]
struct StepWindow {
    lower: End,
    upper: Option<End>,
}

impl StepWindow {
    fn interval(&self) -> RationalInterval {
        RationalInterval::new(
            Some(self.lower.value.clone()),
            self.lower.open,
            self.upper.as_ref().map(|u| u.value.clone()),
            self.upper.as_ref().map_or(true, |u| u.open),
        )
        .expect("step windows are checked nonempty before use")
    }
}

fn step_windows(
    components: usize,
    bounds: &[WeightBound],
    closed: bool,
) -> std::result::Result<Vec<StepWindow>, Box<InfeasibilityCertificate>> {
    let mut windows: Vec<StepWindow> = (1..=components)
        .map(|j| StepWindow {
            lower: End {
                value: Rational::zero(),
                open: !closed,
                why: vec![Constraint::Positive { component: j }],
            },
            upper: None,
        })
        .collect();
    for b in bounds {
        let window = &mut windows[b.component - 1];
        let open = b.open && !closed;
        match b.kind {
            WeightBoundKind::Upper => {
                let end = End {
                    value: b.value.clone(),
                    open,
                    why: vec![Constraint::WeightUpper {
                        component: b.component,
                        value: b.value.clone(),
                        open: b.open,
                    }],
                };
                window.upper = tighter_upper_opt(window.upper.take(), Some(end));
            }
            WeightBoundKind::Lower => {
                let end = End {
                    value: b.value.clone(),
                    open,
                    why: vec![Constraint::WeightLower {
                        component: b.component,
                        value: b.value.clone(),
                        open: b.open,
                    }],
                };
                let current = std::mem::replace(
                    &mut window.lower,
                    End {
                        value: Rational::zero(),
                        open: false,
                        why: Vec::new(),
                    },
                );
                window.lower = tighter_lower(current, end);
            }
            WeightBoundKind::Unsatisfiable => {
                return Err(Box::new(InfeasibilityCertificate::UnsatisfiableWeight {
                    component: b.component,
                    numerator: b.value.to_integer(),
                }));
            }
        }
    }
    for (j, w) in windows.iter().enumerate() {
        if let Some(upper) = &w.upper {
            if clashes(&w.lower, upper) {
                return Err(Box::new(InfeasibilityCertificate::Clash {
                    quantity: Quantity::Weight(j + 1),
                    lower: w.lower.clone().into_bound(),
                    upper: upper.clone().into_bound(),
                }));
            }
        }
    }
    Ok(windows)
}

/// Forward sweep. On success returns the reachable interval of every `S_i`,
/// `i = 1..n`.
fn forward_sweep(
    intervals: &[Option<RationalInterval>],
    windows: &[StepWindow],
    closed: bool,
) -> std::result::Result<Vec<RationalInterval>, Box<InfeasibilityCertificate>> {
    let n = windows.len();
    let mut lower = End {
        value: Rational::zero(),
        open: false,
        why: Vec::new(),
    };
    let mut upper = Some(lower.clone());
    let mut reached = Vec::with_capacity(n);
    for i in 1..=n {
        let window = &windows[i - 1];
        let mut next_lower = lower.plus(&window.lower);
        let mut next_upper = match (&upper, &window.upper) {
            (Some(u), Some(w)) => Some(u.plus(w)),
            _ => None,
        };
        let (row_lower, row_upper) = if i == n {
            let one = End {
                value: Rational::one(),
                open: false,
                why: vec![Constraint::Total],
            };
            (Some(one.clone()), Some(one))
        } else {
            let Some(row) = &intervals[i - 1] else {
                return Err(Box::new(InfeasibilityCertificate::EmptyBigasRow {
                    partial_sum: i,
                    lhs: None,
                    rhs: None,
                }));
            };
            let row = if closed { row.closure() } else { row.clone() };
            (
                row.lower().map(|v| End {
                    value: v.clone(),
                    open: row.lower_open(),
                    why: vec![Constraint::BigasLower {
                        partial_sum: i,
                        value: v.clone(),
                    }],
                }),
                row.upper().map(|v| End {
                    value: v.clone(),
                    open: row.upper_open(),
                    why: vec![Constraint::BigasUpper {
                        partial_sum: i,
                        value: v.clone(),
                    }],
                }),
            )
        };
        if let Some(r) = row_lower {
            next_lower = tighter_lower(r, next_lower);
        }
        next_upper = tighter_upper_opt(row_upper, next_upper);
        if let Some(u) = &next_upper {
            if clashes(&next_lower, u) {
                return Err(Box::new(InfeasibilityCertificate::Clash {
                    quantity: Quantity::PartialSum(i),
                    lower: next_lower.into_bound(),
                    upper: u.clone().into_bound(),
                }));
            }
        }
        reached.push(
            RationalInterval::new(
                Some(next_lower.value.clone()),
                next_lower.open,
                next_upper.as_ref().map(|u| u.value.clone()),
                next_upper.as_ref().map_or(true, |u| u.open),
            )
            .expect("clash check guarantees a nonempty interval"),
        );
        lower = next_lower;
        upper = next_upper;
    }
    Ok(reached)
}

/// Backward pass: trims every reachable interval to the points that extend
/// to a full solution, then walks forward taking midpoints.
fn extract_witness(
    reached: &[RationalInterval],
    windows: &[StepWindow],
) -> Result<(Vec<RationalInterval>, Polarization)> {
    let n = windows.len();
    let steps: Vec<RationalInterval> = windows.iter().map(StepWindow::interval).collect();
    let mut projections = vec![RationalInterval::point(Rational::one()); n];
    for i in (1..n).rev() {
        let back = projections[i].add(&steps[i].neg());
        projections[i - 1] = reached[i - 1]
            .intersect(&back)
            .ok_or_else(|| Error::Internal(format!("backward pass emptied the range of S_{i}")))?;
    }
    let mut prev = Rational::zero();
    let mut sums = Vec::with_capacity(n - 1);
    for i in 1..n {
        let choice = projections[i - 1]
            .intersect(&steps[i - 1].shift(&prev))
            .and_then(|c| c.midpoint())
            .ok_or_else(|| Error::Internal(format!("no bounded choice for S_{i}")))?;
        sums.push(choice.clone());
        prev = choice;
    }
    projections.truncate(n - 1);
    let witness = Polarization::from_partial_sums(&sums)
        .map_err(|e| Error::Internal(format!("witness is not a polarization: {e}")))?;
    Ok((projections, witness))
}

/// Decides whether some polarization satisfies every interval and bound.
///
/// The result is `Feasible` with a midpoint witness, `BoundaryOnly` when only
/// the closure of the system is solvable, or `Infeasible`. Whenever no
/// polarization exists a certificate is attached.
pub fn simplex_intersect(
    intervals: &[Option<RationalInterval>],
    bounds: &[WeightBound],
) -> Result<FeasibleRegion> {
    let n = intervals.len() + 1;
    if n < 2 {
        return Err(Error::invalid("intervals", "need at least one partial sum"));
    }
    for b in bounds {
        if b.component == 0 || b.component > n {
            return Err(Error::invalid(
                "bounds",
                format!("component {} outside 1..={n}", b.component),
            ));
        }
    }
    let strict = step_windows(n, bounds, false)
        .and_then(|windows| forward_sweep(intervals, &windows, false).map(|r| (windows, r)));
    let mut region = FeasibleRegion {
        s_intervals: intervals.to_vec(),
        bounds: bounds.to_vec(),
        status: RegionStatus::Feasible,
        witness: None,
        projections: Vec::new(),
        certificate: None,
    };
    match strict {
        Ok((windows, reached)) => {
            let (projections, witness) = extract_witness(&reached, &windows)?;
            if !region.admits(&witness) {
                return Err(Error::Internal("witness violates the region".into()));
            }
            region.projections = projections;
            region.witness = Some(witness);
        }
        Err(strict_certificate) => {
            let closed = step_windows(n, bounds, true)
                .and_then(|windows| forward_sweep(intervals, &windows, true));
            match closed {
                Ok(_) => {
                    region.status = RegionStatus::BoundaryOnly;
                    region.certificate = Some(*strict_certificate);
                }
                Err(closed_certificate) => {
                    region.status = RegionStatus::Infeasible;
                    // The strict run keeps the original openness, so prefer it
                    // whenever it already clashes strictly.
                    region.certificate = Some(if strict_certificate.is_strict_clash() {
                        *strict_certificate
                    } else {
                        *closed_certificate
                    });
                }
            }
        }
    }
    Ok(region)
}

type IntRange = (Option<BigInt>, Option<BigInt>);

fn scale(interval: &RationalInterval, denominator: &Rational) -> IntRange {
    (
        interval
            .lower()
            .map(|a| ceil_bound(&(a * denominator), interval.lower_open())),
        interval
            .upper()
            .map(|b| floor_bound(&(b * denominator), interval.upper_open())),
    )
}

fn meet(a: IntRange, b: IntRange) -> Option<IntRange> {
    let lower = match (a.0, b.0) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    };
    let upper = match (a.1, b.1) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    };
    match (&lower, &upper) {
        (Some(l), Some(u)) if l > u => None,
        _ => Some((lower, upper)),
    }
}

fn grid_point_exists(
    intervals: &[Option<RationalInterval>],
    bounds: &[WeightBound],
    denominator: u64,
) -> bool {
    let n = intervals.len() + 1;
    let Ok(windows) = step_windows(n, bounds, false) else {
        return false;
    };
    let d = from_int(denominator);
    let mut reach: IntRange = (Some(BigInt::zero()), Some(BigInt::zero()));
    for i in 1..=n {
        let Some(step) = meet(scale(&windows[i - 1].interval(), &d), (None, None)) else {
            return false;
        };
        let moved = (
            reach.0.as_ref().zip(step.0.as_ref()).map(|(a, b)| a + b),
            reach.1.as_ref().zip(step.1.as_ref()).map(|(a, b)| a + b),
        );
        let row = if i == n {
            (
                Some(BigInt::from(denominator)),
                Some(BigInt::from(denominator)),
            )
        } else {
            match &intervals[i - 1] {
                Some(row) => scale(row, &d),
                None => return false,
            }
        };
        match meet(moved, row) {
            Some(r) => reach = r,
            None => return false,
        }
    }
    true
}
