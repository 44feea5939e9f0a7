//! Chain-like curves and the numerical invariants of sheaves on them.
//!
//! Components are numbered `1..=n` in every user-facing value (error fields,
//! reports). Slices are indexed from zero as usual.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A chain of `n >= 2` smooth components, each of genus at least two.
///
/// Component `j` meets component `j + 1` in a single node; the node chain is
/// implicit in the ordering of `genera`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainCurve {
    genera: Vec<BigInt>,
}

impl ChainCurve {
    pub fn new(genera: Vec<BigInt>) -> Result<Self> {
        if genera.len() < 2 {
            return Err(Error::invalid(
                "curve.genera",
                format!(
                    "a chain needs at least 2 components, found {}",
                    genera.len()
                ),
            ));
        }
        let two = BigInt::from(2);
        for (j, g) in genera.iter().enumerate() {
            if *g < two {
                return Err(Error::invalid(
                    format!("curve.genera[{j}]"),
                    format!("component genus must be at least 2, found {g}"),
                ));
            }
        }
        Ok(ChainCurve { genera })
    }

    pub fn from_genera<I, T>(genera: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        ChainCurve::new(genera.into_iter().map(Into::into).collect())
    }

    /// Number of smooth components `n`.
    pub fn components(&self) -> usize {
        self.genera.len()
    }

    pub fn genera(&self) -> &[BigInt] {
        &self.genera
    }

    /// Number of nodes on component at zero-based `index`: one at either end
    /// of the chain, two in the middle.
    pub fn node_count(&self, index: usize) -> u32 {
        if index == 0 || index + 1 == self.genera.len() {
            1
        } else {
            2
        }
    }

    /// `p_a(C) = g_1 + ... + g_n`.
    pub fn arithmetic_genus(&self) -> BigInt {
        self.genera.iter().sum()
    }

    /// `chi(O_C) = 1 - p_a(C)`.
    pub fn chi_structure_sheaf(&self) -> BigInt {
        BigInt::one() - self.arithmetic_genus()
    }

    pub(crate) fn check_len(&self, field: &str, len: usize) -> Result<()> {
        if len != self.components() {
            return Err(Error::invalid(
                field,
                format!("expected {} entries, found {len}", self.components()),
            ));
        }
        Ok(())
    }
}

/// Free-function form of [`ChainCurve::arithmetic_genus`].
pub fn arithmetic_genus(curve: &ChainCurve) -> BigInt {
    curve.arithmetic_genus()
}

/// Free-function form of [`ChainCurve::chi_structure_sheaf`].
pub fn chi_structure_sheaf(curve: &ChainCurve) -> BigInt {
    curve.chi_structure_sheaf()
}

/// Multirank, multidegree and Euler characteristics of a pure sheaf of
/// dimension one.
///
/// `chi_components[j] = multidegree[j] + multirank[j] * (1 - g_j)` always
/// holds. The global Euler characteristic is only known for uniform rank
/// (where it is `sum chi_j - r (n - 1)`) and for sheaves supported on a
/// single component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafNumerics {
    multirank: Vec<BigInt>,
    multidegree: Vec<BigInt>,
    chi_components: Vec<BigInt>,
    chi_global: Option<BigInt>,
}

fn riemann_roch(degree: &BigInt, rank: &BigInt, genus: &BigInt) -> BigInt {
    degree + rank * (BigInt::one() - genus)
}

impl SheafNumerics {
    /// Fills in the Euler characteristics from multirank and multidegree.
    ///
    /// Non-uniform multirank still yields the per-component values, but the
    /// global value stays unknown and [`SheafNumerics::chi_global`] reports
    /// it as unsupported.
    pub fn from_multidegree(
        curve: &ChainCurve,
        multirank: Vec<BigInt>,
        multidegree: Vec<BigInt>,
    ) -> Result<Self> {
        curve.check_len("multirank", multirank.len())?;
        curve.check_len("multidegree", multidegree.len())?;
        for (j, r) in multirank.iter().enumerate() {
            if r.is_negative() {
                return Err(Error::invalid(
                    format!("multirank[{j}]"),
                    format!("rank must be non-negative, found {r}"),
                ));
            }
        }
        let chi_components: Vec<BigInt> = multidegree
            .iter()
            .zip(&multirank)
            .zip(curve.genera())
            .map(|((d, r), g)| riemann_roch(d, r, g))
            .collect();
        let chi_global = if multirank.iter().all(|r| *r == multirank[0]) {
            let r = &multirank[0];
            let nodes = BigInt::from(curve.components() - 1);
            Some(chi_components.iter().sum::<BigInt>() - r * nodes)
        } else {
            None
        };
        Ok(SheafNumerics {
            multirank,
            multidegree,
            chi_components,
            chi_global,
        })
    }

    /// A locally free sheaf of the given rank and degree on one component
    /// (`component` is 1-based), extended by zero. Its Euler characteristic
    /// is that of the component bundle.
    pub fn supported_on(
        curve: &ChainCurve,
        component: usize,
        rank: BigInt,
        degree: BigInt,
    ) -> Result<Self> {
        let n = curve.components();
        if component == 0 || component > n {
            return Err(Error::invalid(
                "component",
                format!("expected 1..={n}, found {component}"),
            ));
        }
        if rank.is_negative() {
            return Err(Error::invalid(
                "rank",
                format!("must be non-negative, found {rank}"),
            ));
        }
        let mut multirank = vec![BigInt::zero(); n];
        let mut multidegree = vec![BigInt::zero(); n];
        multirank[component - 1] = rank;
        multidegree[component - 1] = degree;
        let chi_components: Vec<BigInt> = multidegree
            .iter()
            .zip(&multirank)
            .zip(curve.genera())
            .map(|((d, r), g)| riemann_roch(d, r, g))
            .collect();
        let chi_global = Some(chi_components[component - 1].clone());
        Ok(SheafNumerics {
            multirank,
            multidegree,
            chi_components,
            chi_global,
        })
    }

    pub fn components(&self) -> usize {
        self.multirank.len()
    }

    pub fn multirank(&self) -> &[BigInt] {
        &self.multirank
    }

    pub fn multidegree(&self) -> &[BigInt] {
        &self.multidegree
    }

    pub fn chi_components(&self) -> &[BigInt] {
        &self.chi_components
    }

    pub fn chi_global(&self) -> Result<&BigInt> {
        self.chi_global.as_ref().ok_or_else(|| {
            Error::Unsupported(
                "global Euler characteristic of a sheaf with non-uniform multirank".into(),
            )
        })
    }

    /// The common rank when the multirank is uniform.
    pub fn uniform_rank(&self) -> Option<&BigInt> {
        let first = self.multirank.first()?;
        self.multirank.iter().all(|r| r == first).then_some(first)
    }

    pub(crate) fn require_uniform_rank(&self) -> Result<&BigInt> {
        self.uniform_rank()
            .ok_or_else(|| Error::Unsupported("operation requires uniform multirank".into()))
    }

    pub fn total_degree(&self) -> BigInt {
        self.multidegree.iter().sum()
    }

    /// Re-checks Riemann-Roch per component and, for uniform rank, the
    /// gluing identity against `curve`.
    pub fn verify_identities(&self, curve: &ChainCurve) -> Result<()> {
        curve.check_len("multirank", self.components())?;
        for (j, ((d, r), g)) in self
            .multidegree
            .iter()
            .zip(&self.multirank)
            .zip(curve.genera())
            .enumerate()
        {
            if self.chi_components[j] != riemann_roch(d, r, g) {
                return Err(Error::Internal(format!(
                    "Riemann-Roch fails on component {}",
                    j + 1
                )));
            }
        }
        if let (Some(r), Some(chi)) = (self.uniform_rank(), &self.chi_global) {
            let nodes = BigInt::from(curve.components() - 1);
            if *chi != self.chi_components.iter().sum::<BigInt>() - r * nodes {
                return Err(Error::Internal("gluing identity for chi fails".into()));
            }
        }
        Ok(())
    }
}

/// Free-function form of [`SheafNumerics::from_multidegree`].
pub fn sheaf_from_multidegree(
    curve: &ChainCurve,
    multirank: Vec<BigInt>,
    multidegree: Vec<BigInt>,
) -> Result<SheafNumerics> {
    SheafNumerics::from_multidegree(curve, multirank, multidegree)
}

/// Numerical data of a generated pair `(E, V)` plus the geometric hypotheses
/// the criteria consume. Flags are per component, in chain order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedPairData {
    /// Rank `r` of `E`.
    pub rank: BigInt,
    /// Dimension `k` of the generating subspace `V`.
    pub dim_v: BigInt,
    /// Degrees `d_j` of the restrictions `E_j`.
    pub multidegree: Vec<BigInt>,
    /// `E_j` is semistable.
    pub restriction_semistable: Vec<bool>,
    /// `E_j` is stable.
    pub restriction_stable: Vec<bool>,
    /// The kernel bundle restricted to `C_j` is semistable.
    pub kernel_restriction_semistable: Vec<bool>,
    /// The kernel bundle restricted to `C_j` is stable.
    pub kernel_restriction_stable: Vec<bool>,
    /// `Ker(rho_j|V) != 0`.
    pub ker_rho_nonzero: Vec<bool>,
    /// `V` meets `H^0(E_j(-p_{j-1} - p_j))` nontrivially (one node at the ends).
    pub twisted_sections_nonzero: Vec<bool>,
    /// `H^1(E_j) = 0`.
    pub h1_vanishes: Vec<bool>,
}

impl GeneratedPairData {
    /// Pair data with every hypothesis flag cleared.
    pub fn new(
        rank: impl Into<BigInt>,
        dim_v: impl Into<BigInt>,
        multidegree: Vec<BigInt>,
    ) -> Self {
        let n = multidegree.len();
        GeneratedPairData {
            rank: rank.into(),
            dim_v: dim_v.into(),
            multidegree,
            restriction_semistable: vec![false; n],
            restriction_stable: vec![false; n],
            kernel_restriction_semistable: vec![false; n],
            kernel_restriction_stable: vec![false; n],
            ker_rho_nonzero: vec![false; n],
            twisted_sections_nonzero: vec![false; n],
            h1_vanishes: vec![false; n],
        }
    }

    /// `k - r`, the rank of the kernel bundle.
    pub fn kernel_rank(&self) -> BigInt {
        &self.dim_v - &self.rank
    }

    /// `d = d_1 + ... + d_n`.
    pub fn total_degree(&self) -> BigInt {
        self.multidegree.iter().sum()
    }

    fn flags(&self) -> [(&'static str, &Vec<bool>); 7] {
        [
            ("restriction_semistable", &self.restriction_semistable),
            ("restriction_stable", &self.restriction_stable),
            (
                "kernel_restriction_semistable",
                &self.kernel_restriction_semistable,
            ),
            ("kernel_restriction_stable", &self.kernel_restriction_stable),
            ("ker_rho_nonzero", &self.ker_rho_nonzero),
            ("twisted_sections_nonzero", &self.twisted_sections_nonzero),
            ("h1_vanishes", &self.h1_vanishes),
        ]
    }

    /// Structural validation: list lengths, `k > r >= 1`, `d_j >= 0`, stable
    /// implies semistable, and the degree bound `d_j >= r` forced by a
    /// nonzero twisted section on a semistable restriction.
    ///
    /// On a two-component curve `Ker(rho_j|V)` is exactly the space of
    /// sections vanishing on the other component, so a nonzero kernel at `j`
    /// also forces `d_i >= r` on the other component `i` when `E_i` is
    /// semistable.
    pub fn validate(&self, curve: &ChainCurve) -> Result<()> {
        let n = curve.components();
        curve.check_len("pair.multidegree", self.multidegree.len())?;
        for (name, flags) in self.flags() {
            curve.check_len(&format!("pair.{name}"), flags.len())?;
        }
        if self.rank < BigInt::one() {
            return Err(Error::invalid(
                "pair.rank",
                format!("must be positive, found {}", self.rank),
            ));
        }
        if self.dim_v <= self.rank {
            return Err(Error::invalid(
                "pair.dim_v",
                format!("need k > r, found k = {} and r = {}", self.dim_v, self.rank),
            ));
        }
        for (j, d) in self.multidegree.iter().enumerate() {
            if d.is_negative() {
                return Err(Error::invalid(
                    format!("pair.multidegree[{j}]"),
                    format!("a globally generated restriction has degree >= 0, found {d}"),
                ));
            }
        }
        for j in 0..n {
            if self.restriction_stable[j] && !self.restriction_semistable[j] {
                return Err(Error::invalid(
                    format!("pair.restriction_stable[{j}]"),
                    "stable restriction must also be flagged semistable",
                ));
            }
            if self.kernel_restriction_stable[j] && !self.kernel_restriction_semistable[j] {
                return Err(Error::invalid(
                    format!("pair.kernel_restriction_stable[{j}]"),
                    "stable kernel restriction must also be flagged semistable",
                ));
            }
            if self.twisted_sections_nonzero[j]
                && self.restriction_semistable[j]
                && self.multidegree[j] < self.rank
            {
                return Err(Error::invalid(
                    format!("pair.multidegree[{j}]"),
                    format!(
                        "a nonzero twisted section on a semistable restriction forces d_j >= r = {}, found {}",
                        self.rank, self.multidegree[j]
                    ),
                ));
            }
        }
        if n == 2 {
            for j in 0..2 {
                let other = 1 - j;
                if self.ker_rho_nonzero[j]
                    && self.restriction_semistable[other]
                    && self.multidegree[other] < self.rank
                {
                    return Err(Error::invalid(
                        format!("pair.multidegree[{other}]"),
                        format!(
                            "on two components Ker(rho_{}) != 0 is a section vanishing on the other component; with a semistable restriction this forces d >= r = {}, found {}",
                            j + 1,
                            self.rank,
                            self.multidegree[other]
                        ),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Numerical data of a line bundle `L`: its degree on each component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineBundleTwist {
    multidegree: Vec<BigInt>,
}

impl LineBundleTwist {
    pub fn new(multidegree: Vec<BigInt>) -> Self {
        LineBundleTwist { multidegree }
    }

    /// The structure sheaf: degree zero everywhere.
    pub fn trivial(components: usize) -> Self {
        LineBundleTwist {
            multidegree: vec![BigInt::zero(); components],
        }
    }

    pub fn multidegree(&self) -> &[BigInt] {
        &self.multidegree
    }

    pub fn deg_total(&self) -> BigInt {
        self.multidegree.iter().sum()
    }

    pub fn is_degree_zero(&self) -> bool {
        self.multidegree.iter().all(Zero::is_zero)
    }

    pub fn inverse(&self) -> Self {
        LineBundleTwist {
            multidegree: self.multidegree.iter().map(|d| -d).collect(),
        }
    }
}

/// Numerics of the kernel bundle `M_{E,V}`: uniform rank `k - r`, multidegree
/// `-d_j`, `chi_j = (k - r)(1 - g_j) - d_j` and
/// `chi = (k - r)(1 - p_a) - d`.
pub fn kernel_numerics(curve: &ChainCurve, pair: &GeneratedPairData) -> Result<SheafNumerics> {
    pair.validate(curve)?;
    let m = pair.kernel_rank();
    let chi_components: Vec<BigInt> = pair
        .multidegree
        .iter()
        .zip(curve.genera())
        .map(|(d, g)| &m * (BigInt::one() - g) - d)
        .collect();
    let chi = &m * curve.chi_structure_sheaf() - pair.total_degree();
    let numerics = SheafNumerics {
        multirank: vec![m; curve.components()],
        multidegree: pair.multidegree.iter().map(|d| -d).collect(),
        chi_components,
        chi_global: Some(chi),
    };
    numerics.verify_identities(curve)?;
    Ok(numerics)
}

/// `F (x) L` for uniform-rank `F`: degrees and Euler characteristics shift by
/// `r * deg L_j` per component and `r * deg L` globally.
pub fn twist(sheaf: &SheafNumerics, line: &LineBundleTwist) -> Result<SheafNumerics> {
    if line.multidegree.len() != sheaf.components() {
        return Err(Error::invalid(
            "twist.multidegree",
            format!(
                "expected {} entries, found {}",
                sheaf.components(),
                line.multidegree.len()
            ),
        ));
    }
    let r = sheaf.require_uniform_rank()?.clone();
    let chi = sheaf.chi_global()?;
    let shift: Vec<BigInt> = line.multidegree.iter().map(|l| &r * l).collect();
    Ok(SheafNumerics {
        multirank: sheaf.multirank.clone(),
        multidegree: sheaf
            .multidegree
            .iter()
            .zip(&shift)
            .map(|(d, s)| d + s)
            .collect(),
        chi_components: sheaf
            .chi_components
            .iter()
            .zip(&shift)
            .map(|(c, s)| c + s)
            .collect(),
        chi_global: Some(chi + &r * line.deg_total()),
    })
}
