//! Polynomials on configurations, restricted cubics and linear functionals.
//!
//! A polynomial of degree `N ≤ 3` is a ladder of symmetric coefficient
//! tensors `(f₀, f₁, …, f_N)` acting on a configuration `η` with counts `k`
//! as `Σⱼ ⟨fⱼ, k^{⊗j}⟩`. Coefficients are symmetrized on construction, so two
//! polynomials are equal exactly when they agree on every configuration.

use num_traits::{Signed, Zero};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::moments::{tensor_power, MomentTensor, MAX_ORDER};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    dim: usize,
    levels: Vec<MomentTensor>,
}

fn check_ladder(dim: usize, levels: &[MomentTensor]) -> Result<()> {
    if levels.is_empty() {
        return Err(Error::DimensionMismatch("missing constant level".into()));
    }
    if levels.len() > MAX_ORDER + 1 {
        return Err(Error::DegreeOverflow(levels.len() - 1));
    }
    for (j, level) in levels.iter().enumerate() {
        if level.order() != j {
            return Err(Error::DimensionMismatch(format!(
                "coefficient at level {j} has order {}",
                level.order()
            )));
        }
        if j > 0 && level.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "coefficient at level {j} is over {} sites, expected {dim}",
                level.dim()
            )));
        }
    }
    Ok(())
}

fn check_config(dim: usize, eta: &Configuration) -> Result<()> {
    if eta.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "configuration {eta} has {} sites, expected {dim}",
            eta.len()
        )));
    }
    Ok(())
}

impl Polynomial {
    /// Builds a polynomial from its coefficient ladder. Coefficients are
    /// symmetrized and trailing zero levels dropped.
    pub fn new(dim: usize, levels: Vec<MomentTensor>) -> Result<Self> {
        check_ladder(dim, &levels)?;
        let mut levels = levels
            .into_iter()
            .enumerate()
            .map(|(j, t)| MomentTensor::from_entries(j, dim, t.into_entries()))
            .collect::<Result<Vec<_>>>()?;
        while levels.len() > 1 && levels.last().is_some_and(MomentTensor::is_zero) {
            levels.pop();
        }
        Ok(Self { dim, levels })
    }

    pub fn constant(dim: usize, value: Rational) -> Self {
        Self {
            dim,
            levels: vec![MomentTensor::scalar_in(value, dim)],
        }
    }

    /// `f₀ + ⟨f₁, k⟩ + ⟨f₂, k⊗k⟩`, with `f₂` given row by row.
    pub fn quadratic(f0: Rational, f1: Vec<Rational>, f2: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = f1.len();
        if f2.len() != dim || f2.iter().any(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "quadratic coefficient must be {dim}x{dim}"
            )));
        }
        Self::new(
            dim,
            vec![
                MomentTensor::scalar_in(f0, dim),
                MomentTensor::vector(f1),
                MomentTensor::from_entries(2, dim, f2.into_iter().flatten().collect())?,
            ],
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[MomentTensor] {
        &self.levels
    }

    /// Coefficient tensor of order `j`, or a zero tensor above the degree.
    pub fn coefficient(&self, j: usize) -> Result<MomentTensor> {
        match self.levels.get(j) {
            Some(t) => Ok(t.clone()),
            None => MomentTensor::zeros(j, self.dim),
        }
    }

    pub fn evaluate(&self, eta: &Configuration) -> Result<Rational> {
        check_config(self.dim, eta)?;
        self.levels.iter().enumerate().try_fold(Rational::zero(), |acc, (j, f)| {
            Ok(acc + f.pair(&tensor_power(eta, j)?)?)
        })
    }

    /// Product in the algebra: the order-`n+m` coefficient collects the
    /// symmetrized `fₙ ⊗ gₘ`.
    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply polynomials over {} and {} sites",
                self.dim, other.dim
            )));
        }
        let degree = self.degree() + other.degree();
        if degree > MAX_ORDER {
            return Err(Error::DegreeOverflow(degree));
        }
        let mut levels = (0..=degree)
            .map(|j| MomentTensor::zeros(j, self.dim))
            .collect::<Result<Vec<_>>>()?;
        for (n, f) in self.levels.iter().enumerate() {
            for (m, g) in other.levels.iter().enumerate() {
                levels[n + m].add_assign(&f.symmetric_outer(g)?)?;
            }
        }
        Polynomial::new(self.dim, levels)
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        rational::max_abs(self.levels.iter().flat_map(|t| t.entries()))
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        Polynomial {
            dim: self.dim,
            levels: self.levels.iter().map(|t| t.scale(factor)).collect(),
        }
    }
}

/// The linear functional `L` given by its moment data `(ℓ₀, ℓ₁, ℓ₂[, ℓ₃])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentFunctional {
    dim: usize,
    levels: Vec<MomentTensor>,
}

impl MomentFunctional {
    /// Accepts a ladder of order 2 or 3. Higher levels must already be
    /// symmetric.
    pub fn new(levels: Vec<MomentTensor>) -> Result<Self> {
        if levels.len() < 3 {
            return Err(Error::DimensionMismatch(
                "a moment functional needs at least ell0, ell1 and ell2".into(),
            ));
        }
        let dim = levels[1].dim();
        check_ladder(dim, &levels)?;
        if let Some(bad) = levels.iter().find(|t| !t.is_symmetric()) {
            return Err(Error::DimensionMismatch(format!(
                "moment tensor of order {} is not symmetric",
                bad.order()
            )));
        }
        let mut levels = levels;
        levels[0] = MomentTensor::scalar_in(levels[0].entries()[0].clone(), dim);
        Ok(Self { dim, levels })
    }

    pub fn quadratic(ell0: Rational, ell1: Vec<Rational>, ell2: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = ell1.len();
        if ell2.len() != dim || ell2.iter().any(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "ell2 must be {dim}x{dim}"
            )));
        }
        Self::new(vec![
            MomentTensor::scalar_in(ell0, dim),
            MomentTensor::vector(ell1),
            MomentTensor::from_symmetric(2, dim, ell2.into_iter().flatten().collect())?,
        ])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Highest order with data.
    pub fn order(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[MomentTensor] {
        &self.levels
    }

    pub fn ell0(&self) -> &Rational {
        &self.levels[0].entries()[0]
    }

    pub fn ell1(&self) -> &MomentTensor {
        &self.levels[1]
    }

    pub fn ell2(&self) -> &MomentTensor {
        &self.levels[2]
    }

    pub fn ell3(&self) -> Option<&MomentTensor> {
        self.levels.get(3)
    }

    /// Restriction to orders `0..=2`.
    pub fn truncate_quadratic(&self) -> MomentFunctional {
        MomentFunctional {
            dim: self.dim,
            levels: self.levels[..3].to_vec(),
        }
    }

    /// `L(p) = Σⱼ ⟨fⱼ, ℓⱼ⟩`.
    pub fn apply(&self, p: &Polynomial) -> Result<Rational> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "polynomial over {} sites, functional over {}",
                p.dim(),
                self.dim
            )));
        }
        if p.degree() > self.order() {
            return Err(Error::DegreeExceedsFunctional {
                degree: p.degree(),
                available: self.order(),
            });
        }
        p.levels()
            .iter()
            .zip(&self.levels)
            .try_fold(Rational::zero(), |acc, (f, l)| Ok(acc + f.pair(l)?))
    }
}

/// `Σₓ γ(x) k(x)`.
pub fn weighted_mass(gamma: &[Rational], eta: &Configuration) -> Rational {
    gamma
        .iter()
        .zip(&eta.counts)
        .fold(Rational::zero(), |acc, (g, &k)| acc + g * Rational::from_integer(k.into()))
}

/// `(Σₓ γ(x) k(x))³`, the cubic term of a restricted cubic polynomial.
pub fn cubed_weighted_mass(gamma: &[Rational], eta: &Configuration) -> Rational {
    rational::pow(&weighted_mass(gamma, eta), 3)
}

pub fn check_gamma(gamma: &[Rational]) -> Result<()> {
    match gamma.iter().position(|g| !g.is_positive()) {
        Some(index) => Err(Error::NonPositiveGamma { index }),
        None => Ok(()),
    }
}

/// `f₀ + f₁·k + ⟨f₂, k⊗k⟩ + f₃ (Σ γ k)³`.
///
/// With `γ ≡ 1` the cubic term is the cube of the total mass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedCubic {
    pub quadratic: Polynomial,
    pub f3: Rational,
    pub gamma: Vec<Rational>,
}

impl RestrictedCubic {
    pub fn new(quadratic: Polynomial, f3: Rational, gamma: Vec<Rational>) -> Result<Self> {
        check_gamma(&gamma)?;
        if quadratic.degree() > 2 {
            return Err(Error::DegreeOverflow(quadratic.degree()));
        }
        if gamma.len() != quadratic.dim() {
            return Err(Error::DimensionMismatch(format!(
                "gamma has {} entries, polynomial is over {} sites",
                gamma.len(),
                quadratic.dim()
            )));
        }
        Ok(Self {
            quadratic,
            f3,
            gamma,
        })
    }

    pub fn dim(&self) -> usize {
        self.quadratic.dim()
    }

    pub fn evaluate(&self, eta: &Configuration) -> Result<Rational> {
        Ok(self.quadratic.evaluate(eta)? + &self.f3 * cubed_weighted_mass(&self.gamma, eta))
    }

    /// `L(f₀ + f₁η + f₂η^{⊗2}) + f₃ R`.
    pub fn pair(&self, functional: &MomentFunctional, r: &Rational) -> Result<Rational> {
        Ok(functional.apply(&self.quadratic)? + &self.f3 * r)
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        let q = self.quadratic.max_abs_coefficient();
        let f3 = self.f3.abs();
        if f3 > q {
            f3
        } else {
            q
        }
    }
}

/// An upper bound `λ_b` for `|b(η)| / (1 + (Σ γ k)³)` over all
/// configurations, for `b` of degree at most 2.
///
/// Returns `|f₀| + λ₁ + λ₂` with `λ₁ = maxₓ |f₁(x)|/γ(x)` and
/// `λ₂ = max_{x,y} |f₂(x,y)|/(γ(x)γ(y))`. With `t = Σ γ k ≥ 0`,
/// `|b(η)| ≤ |f₀| + λ₁t + λ₂t²` and each of `1, t, t²` is at most `1 + t³`.
pub fn ratio_bound(b: &Polynomial, gamma: &[Rational]) -> Result<Rational> {
    check_gamma(gamma)?;
    if b.degree() > 2 {
        return Err(Error::DegreeOverflow(b.degree()));
    }
    if gamma.len() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "gamma has {} entries, polynomial is over {} sites",
            gamma.len(),
            b.dim()
        )));
    }
    let f0 = b.coefficient(0)?.entries()[0].abs();
    let f1 = b.coefficient(1)?;
    let f2 = b.coefficient(2)?;
    let lambda1 = rational::max_abs(
        &f1.entries()
            .iter()
            .zip(gamma)
            .map(|(f, g)| f / g)
            .collect::<Vec<_>>(),
    );
    let n = b.dim();
    let lambda2 = rational::max_abs(
        &(0..n * n)
            .map(|o| f2.entries()[o].clone() / (&gamma[o / n] * &gamma[o % n]))
            .collect::<Vec<_>>(),
    );
    Ok(f0 + lambda1 + lambda2)
}
