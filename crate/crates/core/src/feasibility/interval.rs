use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{format_ratio, from_int, Rational};

/// A nonempty interval of rationals with independently open or closed ends.
///
/// A missing endpoint means the interval is unbounded on that side; infinite
/// ends are always reported as open. Empty sets are never represented by this
/// type, so constructors that can produce one return `Option`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lower: Option<Rational>,
    upper: Option<Rational>,
    lower_open: bool,
    upper_open: bool,
}

impl RationalInterval {
    pub fn new(
        lower: Option<Rational>,
        lower_open: bool,
        upper: Option<Rational>,
        upper_open: bool,
    ) -> Option<Self> {
        let lower_open = lower_open || lower.is_none();
        let upper_open = upper_open || upper.is_none();
        if let (Some(a), Some(b)) = (&lower, &upper) {
            if a > b || (a == b && (lower_open || upper_open)) {
                return None;
            }
        }
        Some(RationalInterval {
            lower,
            upper,
            lower_open,
            upper_open,
        })
    }

    pub fn closed(lower: Rational, upper: Rational) -> Option<Self> {
        Self::new(Some(lower), false, Some(upper), false)
    }

    pub fn open(lower: Rational, upper: Rational) -> Option<Self> {
        Self::new(Some(lower), true, Some(upper), true)
    }

    pub fn point(value: Rational) -> Self {
        RationalInterval {
            lower: Some(value.clone()),
            upper: Some(value),
            lower_open: false,
            upper_open: false,
        }
    }

    pub fn full() -> Self {
        RationalInterval {
            lower: None,
            upper: None,
            lower_open: true,
            upper_open: true,
        }
    }

    /// The open unit interval `(0, 1)`.
    pub fn open_unit() -> Self {
        Self::open(Rational::zero(), Rational::one()).expect("0 < 1")
    }

    pub fn at_least(value: Rational, open: bool) -> Self {
        RationalInterval {
            lower: Some(value),
            upper: None,
            lower_open: open,
            upper_open: true,
        }
    }

    pub fn at_most(value: Rational, open: bool) -> Self {
        RationalInterval {
            lower: None,
            upper: Some(value),
            lower_open: true,
            upper_open: open,
        }
    }

    pub fn lower(&self) -> Option<&Rational> {
        self.lower.as_ref()
    }

    pub fn upper(&self) -> Option<&Rational> {
        self.upper.as_ref()
    }

    pub fn lower_open(&self) -> bool {
        self.lower_open
    }

    pub fn upper_open(&self) -> bool {
        self.upper_open
    }

    pub fn is_bounded(&self) -> bool {
        self.lower.is_some() && self.upper.is_some()
    }

    pub fn is_closed(&self) -> bool {
        !self.lower_open && !self.upper_open
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = match &self.lower {
            None => true,
            Some(a) if self.lower_open => x > a,
            Some(a) => x >= a,
        };
        let below = match &self.upper {
            None => true,
            Some(b) if self.upper_open => x < b,
            Some(b) => x <= b,
        };
        above && below
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let (lower, lower_open) = tighter_lower(
            (self.lower.as_ref(), self.lower_open),
            (other.lower.as_ref(), other.lower_open),
        );
        let (upper, upper_open) = tighter_upper(
            (self.upper.as_ref(), self.upper_open),
            (other.upper.as_ref(), other.upper_open),
        );
        Self::new(lower.cloned(), lower_open, upper.cloned(), upper_open)
    }

    /// Minkowski sum `{x + y : x in self, y in other}`.
    pub fn add(&self, other: &Self) -> Self {
        let lower = match (&self.lower, &other.lower) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        let upper = match (&self.upper, &other.upper) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Self::new(
            lower,
            self.lower_open || other.lower_open,
            upper,
            self.upper_open || other.upper_open,
        )
        .expect("sum of nonempty intervals is nonempty")
    }

    /// `{-x : x in self}`.
    pub fn neg(&self) -> Self {
        RationalInterval {
            lower: self.upper.as_ref().map(|b| -b),
            upper: self.lower.as_ref().map(|a| -a),
            lower_open: self.upper_open,
            upper_open: self.lower_open,
        }
    }

    pub fn shift(&self, by: &Rational) -> Self {
        self.add(&Self::point(by.clone()))
    }

    /// The interval with every finite endpoint made closed.
    pub fn closure(&self) -> Self {
        RationalInterval {
            lower_open: self.lower.is_none(),
            upper_open: self.upper.is_none(),
            ..self.clone()
        }
    }

    /// Midpoint of a bounded interval, which always lies inside it.
    pub fn midpoint(&self) -> Option<Rational> {
        match (&self.lower, &self.upper) {
            (Some(a), Some(b)) => Some((a + b) / from_int(2)),
            _ => None,
        }
    }
}

fn tighter_lower<'a>(
    a: (Option<&'a Rational>, bool),
    b: (Option<&'a Rational>, bool),
) -> (Option<&'a Rational>, bool) {
    match (a.0, b.0) {
        (None, _) => b,
        (_, None) => a,
        (Some(x), Some(y)) if x > y => a,
        (Some(x), Some(y)) if x < y => b,
        (Some(x), Some(_)) => (Some(x), a.1 || b.1),
    }
}

fn tighter_upper<'a>(
    a: (Option<&'a Rational>, bool),
    b: (Option<&'a Rational>, bool),
) -> (Option<&'a Rational>, bool) {
    match (a.0, b.0) {
        (None, _) => b,
        (_, None) => a,
        (Some(x), Some(y)) if x < y => a,
        (Some(x), Some(y)) if x > y => b,
        (Some(x), Some(_)) => (Some(x), a.1 || b.1),
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lower_open { '(' } else { '[' };
        let close = if self.upper_open { ')' } else { ']' };
        let lower = self.lower.as_ref().map_or("-inf".to_string(), format_ratio);
        let upper = self.upper.as_ref().map_or("+inf".to_string(), format_ratio);
        write!(f, "{open}{lower}, {upper}{close}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn empty_and_degenerate_construction() {
        assert!(RationalInterval::closed(ratio(1, 2), ratio(1, 3)).is_none());
        assert!(RationalInterval::new(Some(ratio(1, 2)), true, Some(ratio(1, 2)), false).is_none());
        let p = RationalInterval::closed(ratio(1, 2), ratio(1, 2)).unwrap();
        assert!(p.contains(&ratio(1, 2)));
        assert_eq!(p.midpoint(), Some(ratio(1, 2)));
    }

    #[test]
    fn membership_honours_openness() {
        let i = RationalInterval::new(Some(ratio(0, 1)), true, Some(ratio(1, 4)), false).unwrap();
        assert!(!i.contains(&ratio(0, 1)));
        assert!(i.contains(&ratio(1, 4)));
        assert!(!i.contains(&ratio(1, 3)));
        assert_eq!(i.to_string(), "(0/1, 1/4]");
    }

    #[test]
    fn intersection_picks_tighter_ends() {
        let a = RationalInterval::closed(ratio(1, 3), ratio(2, 3)).unwrap();
        let b = RationalInterval::open_unit();
        assert_eq!(a.intersect(&b), Some(a.clone()));
        let c = RationalInterval::at_most(ratio(1, 3), true);
        assert!(a.intersect(&c).is_none());
        let d = RationalInterval::at_most(ratio(1, 3), false);
        assert_eq!(a.intersect(&d), Some(RationalInterval::point(ratio(1, 3))));
        let e = RationalInterval::closed(ratio(-2, 1), ratio(-1, 1)).unwrap();
        assert!(e.intersect(&b).is_none());
    }

    #[test]
    fn minkowski_sum_and_negation() {
        let a = RationalInterval::new(Some(ratio(0, 1)), true, Some(ratio(1, 2)), false).unwrap();
        let b = RationalInterval::closed(ratio(1, 4), ratio(1, 4)).unwrap();
        let s = a.add(&b);
        assert_eq!(s.to_string(), "(1/4, 3/4]");
        assert_eq!(s.neg().to_string(), "[-3/4, -1/4)");
        let u = RationalInterval::at_least(ratio(0, 1), true).add(&a);
        assert_eq!(u.to_string(), "(0/1, +inf)");
        assert!(u.midpoint().is_none());
        assert_eq!(a.closure().to_string(), "[0/1, 1/2]");
    }
}
