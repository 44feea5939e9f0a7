use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_ratio, ratio, Rational};

/// Rational weights `(w_1, ..., w_n)` with `0 < w_j < 1` and `sum w_j = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polarization {
    weights: Vec<Rational>,
}

impl Polarization {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::invalid(
                "polarization",
                "a polarization needs at least 2 weights",
            ));
        }
        let zero = Rational::zero();
        let one = Rational::one();
        for (j, w) in weights.iter().enumerate() {
            if *w <= zero || *w >= one {
                return Err(Error::invalid(
                    format!("polarization[{j}]"),
                    format!(
                        "weight must lie strictly between 0 and 1, found {}",
                        format_ratio(w)
                    ),
                ));
            }
        }
        let total: Rational = weights.iter().sum();
        if total != one {
            return Err(Error::invalid(
                "polarization",
                format!("weights must sum to 1, found {}", format_ratio(&total)),
            ));
        }
        Ok(Polarization { weights })
    }

    /// Builds weights from partial sums `S_1 < ... < S_{n-1}` (with `S_0 = 0`,
    /// `S_n = 1` implied).
    pub fn from_partial_sums(partial_sums: &[Rational]) -> Result<Self> {
        let mut weights = Vec::with_capacity(partial_sums.len() + 1);
        let mut prev = Rational::zero();
        for s in partial_sums.iter().chain(std::iter::once(&Rational::one())) {
            weights.push(s - &prev);
            prev = s.clone();
        }
        Polarization::new(weights)
    }

    /// Grid point `(a_1/D, ..., a_n/D)`. Callers guarantee `a_j >= 1` and
    /// `sum a_j = D`.
    pub(crate) fn from_grid(parts: &[u64], denominator: u64) -> Self {
        debug_assert!(parts.iter().all(|&a| a >= 1));
        debug_assert_eq!(parts.iter().sum::<u64>(), denominator);
        Polarization {
            weights: parts.iter().map(|&a| ratio(a, denominator)).collect(),
        }
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn components(&self) -> usize {
        self.weights.len()
    }

    /// `S_i = w_1 + ... + w_i` for `i = 1..n-1`.
    pub fn partial_sums(&self) -> Vec<Rational> {
        let mut acc = Rational::zero();
        self.weights[..self.weights.len() - 1]
            .iter()
            .map(|w| {
                acc += w;
                acc.clone()
            })
            .collect()
    }

    /// Canonical `"p/q"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.weights.iter().map(format_ratio).collect()
    }
}
