//! Finite site spaces and the admissible configuration sets `K`.

use num_traits::{Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest number of configurations an enumeration may produce unless the
/// caller raises the cap.
pub const DEFAULT_ENUMERATION_CAP: u128 = 2_000_000;

/// A finite set of labelled sites with an optional metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteSpace {
    sites: Vec<String>,
    distances: Option<Vec<Vec<Rational>>>,
}

impl SiteSpace {
    pub fn new(sites: Vec<String>) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::InvalidSpace("at least one site is required".into()));
        }
        Ok(Self {
            sites,
            distances: None,
        })
    }

    /// Sites labelled `s0, s1, …`.
    pub fn anonymous(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("s{i}")).collect())
    }

    pub fn with_distances(sites: Vec<String>, distances: Vec<Vec<Rational>>) -> Result<Self> {
        let mut space = Self::new(sites)?;
        let n = space.len();
        if distances.len() != n || distances.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSpace(format!(
                "distance matrix must be {n}x{n}"
            )));
        }
        for i in 0..n {
            if !distances[i][i].is_zero() {
                return Err(Error::InvalidSpace(format!(
                    "distance matrix diagonal entry ({i},{i}) is nonzero"
                )));
            }
            for j in 0..n {
                if distances[i][j].is_negative() {
                    return Err(Error::InvalidSpace(format!(
                        "distance ({i},{j}) is negative"
                    )));
                }
                if distances[i][j] != distances[j][i] {
                    return Err(Error::InvalidSpace(format!(
                        "distance matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        space.distances = Some(distances);
        Ok(space)
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn sites(&self) -> &[String] {
        &self.sites
    }

    pub fn distances(&self) -> Option<&[Vec<Rational>]> {
        self.distances.as_deref()
    }

    pub fn distance(&self, i: usize, j: usize) -> Option<&Rational> {
        self.distances.as_ref().map(|d| &d[i][j])
    }
}

/// A point configuration: the number of particles at each site.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub counts: Vec<u32>,
}

impl Configuration {
    pub fn new(counts: Vec<u32>) -> Self {
        Self { counts }
    }

    pub fn empty(n: usize) -> Self {
        Self { counts: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total_mass(&self) -> u64 {
        total_mass(self)
    }
}

impl From<Vec<u32>> for Configuration {
    fn from(counts: Vec<u32>) -> Self {
        Self { counts }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

pub fn total_mass(config: &Configuration) -> u64 {
    config.counts.iter().map(|&c| u64::from(c)).sum()
}

/// The admissible configuration set. Every variant carries a cap `q` on the
/// total mass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KSpec {
    /// Total mass at most `q`.
    AtMostQ { q: u32 },
    /// Total mass exactly `q`.
    ExactlyQ { q: u32 },
    /// At most one particle per site, total mass at most `q`.
    Simple { q: u32 },
    /// At most one particle per site, occupied sites pairwise farther apart
    /// than `d`, total mass at most `q`.
    HardCore { d: Rational, q: u32 },
}

impl KSpec {
    pub fn cap(&self) -> u32 {
        match self {
            KSpec::AtMostQ { q }
            | KSpec::ExactlyQ { q }
            | KSpec::Simple { q }
            | KSpec::HardCore { q, .. } => *q,
        }
    }

    pub fn validate(&self, space: &SiteSpace) -> Result<()> {
        if let KSpec::HardCore { d, .. } = self {
            if !d.is_positive() {
                return Err(Error::InvalidKSpec(format!(
                    "hard-core distance must be positive, got {d}"
                )));
            }
            if space.distances().is_none() {
                return Err(Error::MissingDistances);
            }
        }
        Ok(())
    }

    pub fn contains(&self, space: &SiteSpace, config: &Configuration) -> bool {
        if config.len() != space.len() {
            return false;
        }
        let mass = config.total_mass();
        match self {
            KSpec::AtMostQ { q } => mass <= u64::from(*q),
            KSpec::ExactlyQ { q } => mass == u64::from(*q),
            KSpec::Simple { q } => mass <= u64::from(*q) && config.counts.iter().all(|&c| c <= 1),
            KSpec::HardCore { d, q } => {
                if mass > u64::from(*q) || config.counts.iter().any(|&c| c > 1) {
                    return false;
                }
                let Some(dist) = space.distances() else {
                    return false;
                };
                let occupied: Vec<usize> = (0..config.len())
                    .filter(|&i| config.counts[i] == 1)
                    .collect();
                occupied.iter().enumerate().all(|(a, &i)| {
                    occupied[a + 1..].iter().all(|&j| dist[i][j] > *d)
                })
            }
        }
    }
}

impl fmt::Display for KSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KSpec::AtMostQ { q } => write!(f, "AtMostQ(Q={q})"),
            KSpec::ExactlyQ { q } => write!(f, "ExactlyQ(Q={q})"),
            KSpec::Simple { q } => write!(f, "Simple(Q={q})"),
            KSpec::HardCore { d, q } => write!(f, "HardCore(D={d}, Q={q})"),
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Closed-form size of the enumeration; for hard-core sets this is the size
/// of the enclosing simple set and therefore an upper bound.
fn predicted_count(n: usize, kspec: &KSpec) -> u128 {
    let n = n as u128;
    match kspec {
        KSpec::AtMostQ { q } => binomial(n + u128::from(*q), u128::from(*q)),
        KSpec::ExactlyQ { q } => {
            if *q == 0 {
                1
            } else {
                binomial(n + u128::from(*q) - 1, u128::from(*q))
            }
        }
        KSpec::Simple { q } | KSpec::HardCore { q, .. } => (0..=u128::from(*q).min(n))
            .map(|k| binomial(n, k))
            .fold(0u128, |acc, v| acc.saturating_add(v)),
    }
}

/// Number of configurations in `K`. Closed form where one exists, otherwise
/// a counting pass that does not materialize the set.
pub fn count_configurations(space: &SiteSpace, kspec: &KSpec) -> Result<u128> {
    kspec.validate(space)?;
    if let KSpec::HardCore { .. } = kspec {
        let mut count = 0u128;
        walk(space, kspec, &mut |_| count += 1);
        return Ok(count);
    }
    Ok(predicted_count(space.len(), kspec))
}

pub fn enumerate_configurations(space: &SiteSpace, kspec: &KSpec) -> Result<Vec<Configuration>> {
    enumerate_configurations_with_cap(space, kspec, DEFAULT_ENUMERATION_CAP)
}

/// All configurations of `K` in strictly increasing lexicographic order.
pub fn enumerate_configurations_with_cap(
    space: &SiteSpace,
    kspec: &KSpec,
    cap: u128,
) -> Result<Vec<Configuration>> {
    kspec.validate(space)?;
    let predicted = predicted_count(space.len(), kspec);
    if predicted > cap {
        return Err(Error::CapExceeded { predicted, cap });
    }
    let mut out = Vec::with_capacity(predicted as usize);
    walk(space, kspec, &mut |counts| out.push(Configuration::new(counts.to_vec())));
    Ok(out)
}

fn walk(space: &SiteSpace, kspec: &KSpec, visit: &mut dyn FnMut(&[u32])) {
    let mut counts = vec![0u32; space.len()];
    descend(space, kspec, 0, 0, &mut counts, visit);
}

fn descend(
    space: &SiteSpace,
    kspec: &KSpec,
    site: usize,
    mass: u32,
    counts: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]),
) {
    let q = kspec.cap();
    if site == counts.len() {
        if !matches!(kspec, KSpec::ExactlyQ { .. }) || mass == q {
            visit(counts);
        }
        return;
    }
    let remaining = q - mass;
    let max_here = match kspec {
        KSpec::AtMostQ { .. } | KSpec::ExactlyQ { .. } => remaining,
        KSpec::Simple { .. } => remaining.min(1),
        KSpec::HardCore { d, .. } => {
            let dist = space.distances().expect("validated");
            let clear = (0..site).all(|j| counts[j] == 0 || dist[site][j] > *d);
            if clear {
                remaining.min(1)
            } else {
                0
            }
        }
    };
    for c in 0..=max_here {
        counts[site] = c;
        descend(space, kspec, site + 1, mass + c, counts, visit);
    }
    counts[site] = 0;
}
