//! Point processes with known moments, used as forward oracles.

use num_traits::{One, Signed, Zero};

use crate::config::{enumerate_configurations, Configuration, KSpec, SiteSpace};
use crate::error::{Error, Result};
use crate::moments::{power_moments, FiniteMeasure};
use crate::poly::MomentFunctional;
use crate::rational::{self, Rational};
use crate::realize::RealizabilityInstance;

/// 64-bit linear congruential generator
/// `state ← state · 6364136223846793005 + 1442695040888963407 (mod 2⁶⁴)`,
/// emitting the high 32 bits of the new state. Seeds are used as the
/// initial state unchanged, so fixtures reproduce across implementations.
#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
    pub const INCREMENT: u64 = 1_442_695_040_888_963_407;

    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform in `0..bound` (modulo reduction; the bias is irrelevant for
    /// fixture generation).
    pub fn below(&mut self, bound: u32) -> u32 {
        assert!(bound > 0);
        self.next_u32() % bound
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + i64::from(self.below((hi - lo + 1) as u32))
    }

    pub fn coin(&mut self) -> bool {
        self.next_u32() & 1 == 1
    }

    /// A rational `p/q` with `p ∈ lo..=hi` and `q ∈ 1..=max_denominator`.
    pub fn rational(&mut self, lo: i64, hi: i64, max_denominator: i64) -> Rational {
        let p = self.range(lo, hi);
        let q = self.range(1, max_denominator);
        rational::ratio(p, q)
    }
}

fn normalize(dim: usize, weights: Vec<(Configuration, Rational)>) -> Result<FiniteMeasure> {
    let total = weights.iter().fold(Rational::zero(), |acc, (_, w)| acc + w);
    let support = weights
        .into_iter()
        .filter(|(_, w)| w.is_positive())
        .map(|(c, w)| (c, w / &total))
        .collect();
    FiniteMeasure::new(dim, support)
}

/// Independent sites, site `x` occupied with probability `p_x`.
pub fn bernoulli_field(space: &SiteSpace, probs: &[Rational]) -> Result<FiniteMeasure> {
    let n = space.len();
    if probs.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} probabilities for {n} sites",
            probs.len()
        )));
    }
    if let Some(p) = probs.iter().find(|p| p.is_negative() || **p > Rational::one()) {
        return Err(Error::ProbabilityOutOfRange(p.to_string()));
    }
    let simple = enumerate_configurations(space, &KSpec::Simple { q: n as u32 })?;
    let weights = simple
        .into_iter()
        .map(|c| {
            let w = c.counts.iter().zip(probs).fold(Rational::one(), |acc, (&k, p)| {
                if k == 1 {
                    acc * p
                } else {
                    acc * (Rational::one() - p)
                }
            });
            (c, w)
        })
        .collect();
    normalize(n, weights)
}

/// Independent Poisson counts truncated at `cap` per site and renormalized:
/// weight `∏ₓ λₓ^{kₓ}/kₓ!` on every count vector with entries `≤ cap`.
pub fn truncated_poisson(space: &SiteSpace, intensities: &[Rational], cap: u32) -> Result<FiniteMeasure> {
    let n = space.len();
    if intensities.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} intensities for {n} sites",
            intensities.len()
        )));
    }
    if let Some(l) = intensities.iter().find(|l| !l.is_positive()) {
        return Err(Error::InvalidParameter(format!("intensity {l} is not positive")));
    }
    let per_site: Vec<Vec<Rational>> = intensities
        .iter()
        .map(|l| {
            let mut w = vec![Rational::one()];
            for k in 1..=cap {
                let next = w[k as usize - 1].clone() * l / Rational::from_integer(k.into());
                w.push(next);
            }
            w
        })
        .collect();
    let mut weights = Vec::new();
    let mut counts = vec![0u32; n];
    loop {
        let w = counts
            .iter()
            .zip(&per_site)
            .fold(Rational::one(), |acc, (&k, site)| acc * &site[k as usize]);
        weights.push((Configuration::new(counts.clone()), w));
        // Odometer increment, last site fastest (lexicographic order).
        let Some(pos) = (0..n).rev().find(|&i| counts[i] < cap) else {
            break;
        };
        counts[pos] += 1;
        counts[pos + 1..].iter_mut().for_each(|c| *c = 0);
    }
    normalize(n, weights)
}

/// Hard-core lattice gas: weight `z^{η(X)}` on `HardCore(D, Q)`.
pub fn gibbs_hardcore(space: &SiteSpace, activity: &Rational, d: &Rational, q: u32) -> Result<FiniteMeasure> {
    if !activity.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "activity {activity} is not positive"
        )));
    }
    let configs = enumerate_configurations(space, &KSpec::HardCore { d: d.clone(), q })?;
    let weights = configs
        .into_iter()
        .map(|c| {
            let w = rational::pow(activity, c.total_mass() as u32);
            (c, w)
        })
        .collect();
    normalize(space.len(), weights)
}

/// Random probability measure on a random nonempty subset of `K`, with
/// integer weights in `1..=16` before normalization.
pub fn random_measure(space: &SiteSpace, kspec: &KSpec, seed: u64) -> Result<FiniteMeasure> {
    let configs = enumerate_configurations(space, kspec)?;
    let mut rng = Lcg::new(seed);
    let mut weights: Vec<(Configuration, Rational)> = Vec::new();
    for c in &configs {
        if rng.coin() {
            weights.push((c.clone(), rational::int(rng.range(1, 16))));
        }
    }
    if weights.is_empty() {
        let pick = rng.below(configs.len() as u32) as usize;
        weights.push((configs[pick].clone(), Rational::one()));
    }
    normalize(space.len(), weights)
}

/// The degree-2 moment problem whose data are the moments of `mu`.
pub fn instance_from_measure(
    mu: &FiniteMeasure,
    space: &SiteSpace,
    kspec: &KSpec,
    gamma: Option<Vec<Rational>>,
) -> Result<RealizabilityInstance> {
    kspec.validate(space)?;
    if mu.dim() != space.len() {
        return Err(Error::DimensionMismatch(format!(
            "measure over {} sites, space has {}",
            mu.dim(),
            space.len()
        )));
    }
    if let Some((c, _)) = mu.support().iter().find(|(c, _)| !kspec.contains(space, c)) {
        return Err(Error::SupportOutsideK(c.to_string()));
    }
    let functional = MomentFunctional::new(power_moments(mu, 2)?)?;
    let instance = RealizabilityInstance::new(space.clone(), kspec.clone(), functional)?;
    match gamma {
        Some(g) => instance.with_gamma(g),
        None => Ok(instance),
    }
}
