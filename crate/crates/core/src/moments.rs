//! Tensor powers, factorial powers and the moment / correlation functions of
//! finite measures on configurations.

use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Highest tensor order handled anywhere in the crate.
pub const MAX_ORDER: usize = 3;

/// A dense symmetric tensor of order `0..=3` over the sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentTensor {
    order: usize,
    dim: usize,
    data: Vec<Rational>,
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        Err(Error::OrderOutOfRange(order))
    } else {
        Ok(())
    }
}

impl MomentTensor {
    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        check_order(order)?;
        Ok(Self {
            order,
            dim,
            data: vec![Rational::zero(); dim.pow(order as u32)],
        })
    }

    /// Order-0 tensor. It still records the site count so that it compares
    /// equal to the zeroth level of a moment ladder over `dim` sites.
    pub fn scalar_in(value: Rational, dim: usize) -> Self {
        Self {
            order: 0,
            dim,
            data: vec![value],
        }
    }

    pub fn vector(values: Vec<Rational>) -> Self {
        Self {
            order: 1,
            dim: values.len(),
            data: values,
        }
    }

    /// Builds a tensor from row-major entries and replaces it by its
    /// symmetrization.
    pub fn from_entries(order: usize, dim: usize, data: Vec<Rational>) -> Result<Self> {
        let mut t = Self::from_raw(order, dim, data)?;
        t.symmetrize();
        Ok(t)
    }

    /// Builds a tensor from row-major entries, rejecting asymmetric input.
    pub fn from_symmetric(order: usize, dim: usize, data: Vec<Rational>) -> Result<Self> {
        let t = Self::from_raw(order, dim, data)?;
        if let Some(index) = t.first_asymmetry() {
            return Err(Error::DimensionMismatch(format!(
                "order-{order} tensor is not symmetric at index {index:?}"
            )));
        }
        Ok(t)
    }

    fn from_raw(order: usize, dim: usize, data: Vec<Rational>) -> Result<Self> {
        check_order(order)?;
        let expected = dim.pow(order as u32);
        if data.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "order-{order} tensor over {dim} sites needs {expected} entries, got {}",
                data.len()
            )));
        }
        Ok(Self { order, dim, data })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.data
    }

    pub fn offset(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.order);
        index.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, index: &[usize]) -> &Rational {
        &self.data[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], value: Rational) {
        let at = self.offset(index);
        self.data[at] = value;
    }

    /// Multi-index of a row-major offset.
    pub fn index_of(&self, mut offset: usize) -> Vec<usize> {
        let mut index = vec![0; self.order];
        for slot in index.iter_mut().rev() {
            *slot = offset % self.dim;
            offset /= self.dim;
        }
        index
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    fn first_asymmetry(&self) -> Option<Vec<usize>> {
        (0..self.data.len()).map(|o| self.index_of(o)).find(|index| {
            permutations(index)
                .iter()
                .any(|p| self.get(p) != self.get(index))
        })
    }

    fn symmetrize(&mut self) {
        if self.order < 2 {
            return;
        }
        let mut out = self.data.clone();
        for (offset, slot) in out.iter_mut().enumerate() {
            let index = self.index_of(offset);
            let perms = permutations(&index);
            let sum = perms
                .iter()
                .fold(Rational::zero(), |acc, p| acc + self.get(p));
            *slot = sum / Rational::from_integer(perms.len().into());
        }
        self.data = out;
    }

    /// Full contraction `Σ self[i] · other[i]`.
    pub fn pair(&self, other: &MomentTensor) -> Result<Rational> {
        if self.order != other.order || self.data.len() != other.data.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot pair order-{} tensor over {} sites with order-{} tensor over {} sites",
                self.order, self.dim, other.order, other.dim
            )));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }

    pub fn scale(&self, factor: &Rational) -> MomentTensor {
        MomentTensor {
            order: self.order,
            dim: self.dim,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &MomentTensor) -> Result<()> {
        if self.order != other.order || self.data.len() != other.data.len() {
            return Err(Error::DimensionMismatch(
                "cannot add tensors of different shape".into(),
            ));
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(())
    }

    /// Symmetrized outer product; orders must sum to at most 3.
    pub fn symmetric_outer(&self, other: &MomentTensor) -> Result<MomentTensor> {
        let order = self.order + other.order;
        if order > MAX_ORDER {
            return Err(Error::DegreeOverflow(order));
        }
        let dim = self.dim.max(other.dim);
        if self.order > 0 && other.order > 0 && self.dim != other.dim {
            return Err(Error::DimensionMismatch(
                "outer product of tensors over different site counts".into(),
            ));
        }
        let mut data = Vec::with_capacity(dim.pow(order as u32));
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        MomentTensor::from_entries(order, dim, data)
    }
}

/// Distinct permutations of a multi-index (at most 6 for order 3).
fn permutations(index: &[usize]) -> Vec<Vec<usize>> {
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    let n = index.len();
    match n {
        0 | 1 => {
            out.insert(index.to_vec());
        }
        2 => {
            out.insert(vec![index[0], index[1]]);
            out.insert(vec![index[1], index[0]]);
        }
        _ => {
            for (a, b, c) in [
                (0, 1, 2),
                (0, 2, 1),
                (1, 0, 2),
                (1, 2, 0),
                (2, 0, 1),
                (2, 1, 0),
            ] {
                out.insert(vec![index[a], index[b], index[c]]);
            }
        }
    }
    out.into_iter().collect()
}

fn falling(k: u32, m: u32) -> i64 {
    (0..m).map(|j| i64::from(k) - i64::from(j)).product()
}

fn from_counts(config: &Configuration, n: usize, entry: impl Fn(&[usize]) -> i64) -> Result<MomentTensor> {
    let dim = config.len();
    let mut t = MomentTensor::zeros(n, dim)?;
    for offset in 0..t.data.len() {
        let index = t.index_of(offset);
        t.data[offset] = Rational::from_integer(entry(&index).into());
    }
    Ok(t)
}

/// `η^{⊗n}`: entry `(i₁,…,iₙ)` is `∏ k(i_j)`.
pub fn tensor_power(config: &Configuration, n: usize) -> Result<MomentTensor> {
    from_counts(config, n, |index| {
        index.iter().map(|&i| i64::from(config.counts[i])).product()
    })
}

/// `η^{⊙n}`: counts ordered n-tuples of distinct particles at the indexed
/// sites, i.e. the product of per-site falling factorials.
pub fn factorial_power(config: &Configuration, n: usize) -> Result<MomentTensor> {
    from_counts(config, n, |index| {
        let mut mult = vec![0u32; config.len()];
        for &i in index {
            mult[i] += 1;
        }
        mult.iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(s, &m)| falling(config.counts[s], m))
            .product()
    })
}

/// A nonnegative measure with finite support on configurations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMeasure {
    dim: usize,
    support: Vec<(Configuration, Rational)>,
}

impl FiniteMeasure {
    /// Weights must be strictly positive and configurations distinct. The
    /// support is kept in lexicographic order.
    pub fn new(dim: usize, mut support: Vec<(Configuration, Rational)>) -> Result<Self> {
        for (config, weight) in &support {
            if config.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "configuration {config} does not have {dim} sites"
                )));
            }
            if !weight.is_positive() {
                return Err(Error::InvalidParameter(format!(
                    "weight {weight} of configuration {config} is not positive"
                )));
            }
        }
        support.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = support.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidParameter(format!(
                "configuration {} appears twice",
                w[0].0
            )));
        }
        Ok(Self { dim, support })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support(&self) -> &[(Configuration, Rational)] {
        &self.support
    }

    pub fn total_weight(&self) -> Rational {
        self.support
            .iter()
            .fold(Rational::zero(), |acc, (_, w)| acc + w)
    }

    pub fn is_probability(&self) -> bool {
        self.total_weight().is_one()
    }

    /// `Σ w · f(η)` over the support.
    pub fn integrate(&self, f: impl Fn(&Configuration) -> Rational) -> Rational {
        self.support
            .iter()
            .fold(Rational::zero(), |acc, (c, w)| acc + w * f(c))
    }
}

fn accumulate(
    mu: &FiniteMeasure,
    max_order: usize,
    per_config: fn(&Configuration, usize) -> Result<MomentTensor>,
) -> Result<Vec<MomentTensor>> {
    check_order(max_order)?;
    (0..=max_order)
        .map(|n| {
            let mut acc = MomentTensor::zeros(n, mu.dim)?;
            for (config, weight) in &mu.support {
                acc.add_assign(&per_config(config, n)?.scale(weight))?;
            }
            Ok(acc)
        })
        .collect()
}

/// Moment functions `m₀..m_N` with `m_n = Σ w · η^{⊗n}`.
pub fn power_moments(mu: &FiniteMeasure, max_order: usize) -> Result<Vec<MomentTensor>> {
    accumulate(mu, max_order, tensor_power)
}

/// Correlation functions `ρ⁽⁰⁾..ρ⁽ᴺ⁾` with `ρ⁽ⁿ⁾ = Σ w · η^{⊙n}`.
pub fn correlation_functions(mu: &FiniteMeasure, max_order: usize) -> Result<Vec<MomentTensor>> {
    accumulate(mu, max_order, factorial_power)
}

fn check_ladder(tensors: &[MomentTensor]) -> Result<usize> {
    if tensors.is_empty() {
        return Err(Error::DimensionMismatch("no tensors given".into()));
    }
    check_order(tensors.len() - 1)?;
    let dim = tensors
        .iter()
        .find(|t| t.order > 0)
        .map_or(tensors[0].dim, |t| t.dim);
    for (n, t) in tensors.iter().enumerate() {
        if t.order != n {
            return Err(Error::DimensionMismatch(format!(
                "tensor at position {n} has order {}",
                t.order
            )));
        }
        if n > 0 && t.dim != dim {
            return Err(Error::DimensionMismatch(format!(
                "tensor of order {n} is over {} sites, expected {dim}",
                t.dim
            )));
        }
    }
    Ok(dim)
}

/// Sum of the diagonal-embedded lower-order terms that separate `m_n` from
/// `ρ⁽ⁿ⁾` at one index (set partitions of the index positions with at least
/// one merged block).
fn lower_terms(index: &[usize], corr: &[MomentTensor]) -> Rational {
    match index.len() {
        2 => {
            let (x, y) = (index[0], index[1]);
            if x == y {
                corr[1].get(&[x]).clone()
            } else {
                Rational::zero()
            }
        }
        3 => {
            let (x, y, z) = (index[0], index[1], index[2]);
            let mut acc = Rational::zero();
            if x == y {
                acc += corr[2].get(&[x, z]);
            }
            if x == z {
                acc += corr[2].get(&[x, y]);
            }
            if y == z {
                acc += corr[2].get(&[y, x]);
            }
            if x == y && y == z {
                acc += corr[1].get(&[x]);
            }
            acc
        }
        _ => Rational::zero(),
    }
}

/// Converts moment functions `m₀..m_N` to correlation functions.
pub fn power_to_factorial(moments: &[MomentTensor]) -> Result<Vec<MomentTensor>> {
    check_ladder(moments)?;
    let mut corr: Vec<MomentTensor> = Vec::with_capacity(moments.len());
    for m in moments {
        let mut rho = m.clone();
        for offset in 0..rho.data.len() {
            let index = rho.index_of(offset);
            rho.data[offset] = &m.data[offset] - lower_terms(&index, &corr);
        }
        corr.push(rho);
    }
    Ok(corr)
}

/// Converts correlation functions `ρ⁽⁰⁾..ρ⁽ᴺ⁾` to moment functions.
pub fn factorial_to_power(corr: &[MomentTensor]) -> Result<Vec<MomentTensor>> {
    check_ladder(corr)?;
    corr.iter()
        .map(|rho| {
            let mut m = rho.clone();
            for offset in 0..m.data.len() {
                let index = m.index_of(offset);
                m.data[offset] = &rho.data[offset] + lower_terms(&index, corr);
            }
            Ok(m)
        })
        .collect()
}
