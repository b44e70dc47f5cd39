//! Representing measures and positivity certificates for the truncated
//! moment problem on a finite configuration set `K`.
//!
//! For each configuration `η ∈ K` with counts `k` the moment LP has one
//! column `(1, k, vec(k⊗k))`; its rows are `(ℓ₀, ℓ₁, vec(ℓ₂))`. A feasible
//! point is a representing measure. An infeasible LP yields a Farkas vector
//! `y`, which read as coefficients `(f₀, f₁, f₂)` is a polynomial that is
//! nonnegative on every configuration of `K` and pairs negatively with `L`.
//! Because `K` is finite the cone of moment vectors is finitely generated
//! and closed, so exactly one of the two exists.
//!
//! The cubic extension adds the row `Σ_η x_η (Σ γ k)³ ≤ R_max`. Its
//! multiplier in a Farkas vector is nonnegative by the sign convention of
//! [`crate::lp`] and becomes the coefficient `f₃` of a restricted cubic.

use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::config::{
    enumerate_configurations_with_cap, Configuration, KSpec, SiteSpace, DEFAULT_ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::lp::{solve_with, LinearProgram, LpOutcome, RowSense, SolveOptions};
use crate::moments::{power_moments, FiniteMeasure, MomentTensor};
use crate::poly::{check_gamma, cubed_weighted_mass, MomentFunctional, Polynomial, RestrictedCubic};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizabilityInstance {
    pub space: SiteSpace,
    pub kspec: KSpec,
    pub functional: MomentFunctional,
    pub gamma: Option<Vec<Rational>>,
    pub r_max: Option<Rational>,
}

impl RealizabilityInstance {
    pub fn new(space: SiteSpace, kspec: KSpec, functional: MomentFunctional) -> Result<Self> {
        kspec.validate(&space)?;
        if functional.dim() != space.len() {
            return Err(Error::DimensionMismatch(format!(
                "functional is over {} sites, space has {}",
                functional.dim(),
                space.len()
            )));
        }
        Ok(Self {
            space,
            kspec,
            functional,
            gamma: None,
            r_max: None,
        })
    }

    pub fn with_gamma(mut self, gamma: Vec<Rational>) -> Result<Self> {
        check_gamma(&gamma)?;
        if gamma.len() != self.space.len() {
            return Err(Error::DimensionMismatch(format!(
                "gamma has {} entries, space has {} sites",
                gamma.len(),
                self.space.len()
            )));
        }
        self.gamma = Some(gamma);
        Ok(self)
    }

    pub fn with_r_max(mut self, r_max: Rational) -> Result<Self> {
        if !r_max.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "third-moment cap must be positive, got {r_max}"
            )));
        }
        self.r_max = Some(r_max);
        Ok(self)
    }

    /// The same instance without a third-moment cap.
    pub fn uncapped(&self) -> Self {
        Self {
            r_max: None,
            ..self.clone()
        }
    }

    fn gamma_required(&self) -> Result<&[Rational]> {
        self.gamma
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("instance has no gamma weights".into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentingMeasure {
    pub measure: FiniteMeasure,
    /// `Σ w · (Σ γ k)³`, reported whenever the instance carries `gamma`.
    pub realized_r: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Quadratic(Polynomial),
    RestrictedCubic(RestrictedCubic),
}

impl Certificate {
    pub fn evaluate(&self, eta: &Configuration) -> Result<Rational> {
        match self {
            Certificate::Quadratic(p) => p.evaluate(eta),
            Certificate::RestrictedCubic(q) => q.evaluate(eta),
        }
    }

    pub fn quadratic_part(&self) -> &Polynomial {
        match self {
            Certificate::Quadratic(p) => p,
            Certificate::RestrictedCubic(q) => &q.quadratic,
        }
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        match self {
            Certificate::Quadratic(p) => p.max_abs_coefficient(),
            Certificate::RestrictedCubic(q) => q.max_abs_coefficient(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Measure(RepresentingMeasure),
    Certificate(Certificate),
}

impl Verdict {
    pub fn is_measure(&self) -> bool {
        matches!(self, Verdict::Measure(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KPositivity {
    KPositive(RepresentingMeasure),
    NotKPositive(Certificate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalThirdMoment {
    Minimum {
        r_star: Rational,
        measure: RepresentingMeasure,
    },
    Infeasible(Certificate),
}

/// Solver configuration shared by all decision procedures.
#[derive(Debug, Clone)]
pub struct Solver {
    pub enumeration_cap: u128,
    pub lp: SolveOptions,
}

impl Default for Solver {
    fn default() -> Self {
        Self {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            lp: SolveOptions::default(),
        }
    }
}

fn column(eta: &Configuration) -> Vec<Rational> {
    let k: Vec<Rational> = eta
        .counts
        .iter()
        .map(|&c| Rational::from_integer(c.into()))
        .collect();
    let mut col = Vec::with_capacity(1 + k.len() + k.len() * k.len());
    col.push(Rational::one());
    col.extend(k.iter().cloned());
    for a in &k {
        for b in &k {
            col.push(a * b);
        }
    }
    col
}

fn moment_rhs(functional: &MomentFunctional) -> Vec<Rational> {
    let mut rhs = vec![functional.ell0().clone()];
    rhs.extend(functional.ell1().entries().iter().cloned());
    rhs.extend(functional.ell2().entries().iter().cloned());
    rhs
}

/// Reads `(f₀, f₁, f₂)` off the first `1 + n + n²` entries of a Farkas vector.
fn quadratic_from_farkas(n: usize, y: &[Rational]) -> Result<Polynomial> {
    Polynomial::new(
        n,
        vec![
            MomentTensor::scalar_in(y[0].clone(), n),
            MomentTensor::vector(y[1..=n].to_vec()),
            MomentTensor::from_entries(2, n, y[n + 1..1 + n + n * n].to_vec())?,
        ],
    )
}

fn normalized(cert: Certificate) -> Certificate {
    let scale = cert.max_abs_coefficient();
    if scale.is_zero() || scale.is_one() {
        return cert;
    }
    let inv = scale.recip();
    match cert {
        Certificate::Quadratic(p) => Certificate::Quadratic(p.scale(&inv)),
        Certificate::RestrictedCubic(q) => Certificate::RestrictedCubic(RestrictedCubic {
            quadratic: q.quadratic.scale(&inv),
            f3: q.f3 * &inv,
            gamma: q.gamma,
        }),
    }
}

/// `L(1) = ℓ₀ < 0` is refuted by the constant polynomial 1.
fn negative_mass_certificate(instance: &RealizabilityInstance) -> Option<Polynomial> {
    instance
        .functional
        .ell0()
        .is_negative()
        .then(|| Polynomial::constant(instance.space.len(), Rational::one()))
}

impl Solver {
    pub fn configurations(&self, instance: &RealizabilityInstance) -> Result<Vec<Configuration>> {
        enumerate_configurations_with_cap(&instance.space, &instance.kspec, self.enumeration_cap)
    }

    fn measure_from(
        &self,
        instance: &RealizabilityInstance,
        configs: &[Configuration],
        x: &[Rational],
    ) -> Result<RepresentingMeasure> {
        let support: Vec<(Configuration, Rational)> = configs
            .iter()
            .zip(x)
            .filter(|(_, w)| w.is_positive())
            .map(|(c, w)| (c.clone(), w.clone()))
            .collect();
        let measure = FiniteMeasure::new(instance.space.len(), support)?;
        let realized_r = instance
            .gamma
            .as_deref()
            .map(|g| measure.integrate(|eta| cubed_weighted_mass(g, eta)));
        Ok(RepresentingMeasure {
            measure,
            realized_r,
        })
    }

    fn moment_lp(
        &self,
        instance: &RealizabilityInstance,
        configs: &[Configuration],
    ) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let columns: Vec<Vec<Rational>> = configs.iter().map(column).collect();
        let rows = 1 + instance.space.len() * (instance.space.len() + 1);
        let a = (0..rows)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        (a, moment_rhs(&instance.functional))
    }

    fn reverify(&self, instance: &RealizabilityInstance, verdict: &Verdict) -> Result<()> {
        let report = self.verify_verdict(instance, verdict);
        if report.passed() {
            Ok(())
        } else {
            Err(Error::Internal(format!("verdict failed re-verification:\n{report}")))
        }
    }

    /// Decides the degree-2 moment problem on `K`.
    pub fn find_representing_measure(&self, instance: &RealizabilityInstance) -> Result<Verdict> {
        let configs = self.configurations(instance)?;
        let plain = instance.uncapped();
        if let Some(p) = negative_mass_certificate(instance) {
            return Ok(Verdict::Certificate(Certificate::Quadratic(p)));
        }
        let (a, b) = self.moment_lp(instance, &configs);
        let lp = LinearProgram::equalities(a, b)?;
        let verdict = match solve_with(&lp, &self.lp)? {
            LpOutcome::Feasible { x, .. } => {
                Verdict::Measure(self.measure_from(instance, &configs, &x)?)
            }
            LpOutcome::Infeasible { y } => Verdict::Certificate(normalized(Certificate::Quadratic(
                quadratic_from_farkas(instance.space.len(), &y)?,
            ))),
        };
        self.reverify(&plain, &verdict)?;
        Ok(verdict)
    }

    pub fn check_k_positivity(&self, instance: &RealizabilityInstance) -> Result<KPositivity> {
        Ok(match self.find_representing_measure(instance)? {
            Verdict::Measure(m) => KPositivity::KPositive(m),
            Verdict::Certificate(c) => KPositivity::NotKPositive(c),
        })
    }

    /// Decides whether a representing measure with `Σ w (Σ γ k)³ ≤ R_max`
    /// exists. Requires `gamma` and `r_max` on the instance.
    pub fn extend_with_cubic(&self, instance: &RealizabilityInstance) -> Result<Verdict> {
        let gamma = instance.gamma_required()?;
        let r_max = instance
            .r_max
            .clone()
            .ok_or_else(|| Error::InvalidParameter("instance has no r_max".into()))?;
        let configs = self.configurations(instance)?;
        if let Some(p) = negative_mass_certificate(instance) {
            let q = RestrictedCubic::new(p, Rational::zero(), gamma.to_vec())?;
            return Ok(Verdict::Certificate(Certificate::RestrictedCubic(q)));
        }
        let (mut a, mut b) = self.moment_lp(instance, &configs);
        let mut senses = vec![RowSense::Eq; a.len()];
        a.push(configs.iter().map(|eta| cubed_weighted_mass(gamma, eta)).collect());
        b.push(r_max);
        senses.push(RowSense::Le);
        let lp = LinearProgram::new(a, b, senses)?;
        let verdict = match solve_with(&lp, &self.lp)? {
            LpOutcome::Feasible { x, .. } => {
                Verdict::Measure(self.measure_from(instance, &configs, &x)?)
            }
            LpOutcome::Infeasible { y } => {
                let n = instance.space.len();
                let quadratic = quadratic_from_farkas(n, &y)?;
                let f3 = y[y.len() - 1].clone();
                let q = RestrictedCubic::new(quadratic, f3, gamma.to_vec())?;
                Verdict::Certificate(normalized(Certificate::RestrictedCubic(q)))
            }
        };
        self.reverify(instance, &verdict)?;
        Ok(verdict)
    }

    /// Smallest `Σ w (Σ γ k)³` over all representing measures on `K`.
    pub fn minimal_third_moment(
        &self,
        instance: &RealizabilityInstance,
    ) -> Result<MinimalThirdMoment> {
        let gamma = instance.gamma_required()?;
        let configs = self.configurations(instance)?;
        let plain = instance.uncapped();
        if let Some(p) = negative_mass_certificate(instance) {
            return Ok(MinimalThirdMoment::Infeasible(Certificate::Quadratic(p)));
        }
        let (a, b) = self.moment_lp(instance, &configs);
        let cost = configs.iter().map(|eta| cubed_weighted_mass(gamma, eta)).collect();
        let lp = LinearProgram::equalities(a, b)?.with_objective(cost)?;
        let out = match solve_with(&lp, &self.lp)? {
            LpOutcome::Feasible { x, objective } => {
                let measure = self.measure_from(instance, &configs, &x)?;
                self.reverify(&plain, &Verdict::Measure(measure.clone()))?;
                MinimalThirdMoment::Minimum {
                    r_star: objective.unwrap_or_default(),
                    measure,
                }
            }
            LpOutcome::Infeasible { y } => {
                let cert = normalized(Certificate::Quadratic(quadratic_from_farkas(
                    instance.space.len(),
                    &y,
                )?));
                self.reverify(&plain, &Verdict::Certificate(cert.clone()))?;
                MinimalThirdMoment::Infeasible(cert)
            }
        };
        Ok(out)
    }

    /// Independent re-check of a verdict against the instance. A measure
    /// must reproduce every moment row exactly and live on `K`; when the
    /// instance carries `r_max` its realized third moment must not exceed
    /// it. A certificate must be nonnegative on every configuration of `K`
    /// and pair negatively with `L` (with `f₃ R_max` added for restricted
    /// cubics).
    pub fn verify_verdict(
        &self,
        instance: &RealizabilityInstance,
        verdict: &Verdict,
    ) -> VerificationReport {
        let mut report = VerificationReport::default();
        match verdict {
            Verdict::Measure(m) => self.verify_measure(instance, m, &mut report),
            Verdict::Certificate(c) => self.verify_certificate(instance, c, &mut report),
        }
        report
    }

    fn verify_measure(
        &self,
        instance: &RealizabilityInstance,
        rep: &RepresentingMeasure,
        report: &mut VerificationReport,
    ) {
        let n = instance.space.len();
        let mu = &rep.measure;
        if mu.dim() != n {
            report.fail("dimension", format!("measure over {} sites, space has {n}", mu.dim()));
            return;
        }
        report.pass("dimension");

        let outside: Vec<String> = mu
            .support()
            .iter()
            .filter(|(c, _)| !instance.kspec.contains(&instance.space, c))
            .map(|(c, _)| c.to_string())
            .collect();
        report.record(
            "support in K",
            outside.is_empty(),
            format!("configurations outside {}: {}", instance.kspec, outside.join(" ")),
        );

        let moments = match power_moments(mu, 2) {
            Ok(m) => m,
            Err(e) => {
                report.fail("moments", e.to_string());
                return;
            }
        };
        let sites = instance.space.sites();
        let l = &instance.functional;
        report.record(
            "moment ell0",
            &moments[0].entries()[0] == l.ell0(),
            format!("measure gives {}, functional has {}", moments[0].entries()[0], l.ell0()),
        );
        let mut bad1 = Vec::new();
        for x in 0..n {
            let (got, want) = (moments[1].get(&[x]), l.ell1().get(&[x]));
            if got != want {
                bad1.push(format!("ell1[{}]: measure gives {got}, functional has {want}", sites[x]));
            }
        }
        report.record("moment ell1", bad1.is_empty(), bad1.join("; "));
        let mut bad2 = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let (got, want) = (moments[2].get(&[x, y]), l.ell2().get(&[x, y]));
                if got != want {
                    bad2.push(format!(
                        "ell2[{},{}]: measure gives {got}, functional has {want}",
                        sites[x], sites[y]
                    ));
                }
            }
        }
        report.record("moment ell2", bad2.is_empty(), bad2.join("; "));

        let realized = instance
            .gamma
            .as_deref()
            .map(|g| mu.integrate(|eta| cubed_weighted_mass(g, eta)));
        if let Some(claimed) = &rep.realized_r {
            match &realized {
                Some(actual) => report.record(
                    "realized third moment",
                    claimed == actual,
                    format!("reported {claimed}, measure gives {actual}"),
                ),
                None => report.fail("realized third moment", "instance has no gamma".into()),
            }
        }
        if let Some(r_max) = &instance.r_max {
            match &realized {
                Some(actual) => report.record(
                    "third moment within r_max",
                    actual <= r_max,
                    format!("third moment {actual} exceeds {r_max}"),
                ),
                None => report.fail("third moment within r_max", "instance has no gamma".into()),
            }
        }
    }

    fn verify_certificate(
        &self,
        instance: &RealizabilityInstance,
        cert: &Certificate,
        report: &mut VerificationReport,
    ) {
        let n = instance.space.len();
        if cert.quadratic_part().dim() != n {
            report.fail(
                "dimension",
                format!("certificate over {} sites, space has {n}", cert.quadratic_part().dim()),
            );
            return;
        }
        report.pass("dimension");
        if cert.quadratic_part().degree() > 2 {
            report.fail("degree", format!("degree {} exceeds 2", cert.quadratic_part().degree()));
            return;
        }
        let scale = cert.max_abs_coefficient();
        report.record(
            "normalization",
            scale.is_one(),
            format!("max absolute coefficient is {scale}"),
        );

        if let Certificate::RestrictedCubic(q) = cert {
            report.record(
                "f3 nonnegative",
                !q.f3.is_negative(),
                format!("f3 = {}", q.f3),
            );
            if let Some(g) = &instance.gamma {
                report.record(
                    "gamma matches instance",
                    *g == q.gamma,
                    "certificate gamma differs from the instance".into(),
                );
            }
        }

        match self.configurations(instance) {
            Ok(configs) => {
                let mut witness = None;
                for eta in &configs {
                    match cert.evaluate(eta) {
                        Ok(v) if v.is_negative() => {
                            witness = Some(format!("q{eta} = {v} < 0"));
                            break;
                        }
                        Ok(_) => {}
                        Err(e) => {
                            witness = Some(format!("cannot evaluate at {eta}: {e}"));
                            break;
                        }
                    }
                }
                report.record(
                    "nonnegative on K",
                    witness.is_none(),
                    witness.unwrap_or_default(),
                );
            }
            Err(e) => report.fail("nonnegative on K", e.to_string()),
        }

        let pairing = match cert {
            Certificate::Quadratic(p) => instance.functional.apply(p),
            Certificate::RestrictedCubic(q) => match &instance.r_max {
                Some(r) => q.pair(&instance.functional, r),
                None => Err(Error::InvalidParameter(
                    "restricted cubic certificate needs r_max".into(),
                )),
            },
        };
        match pairing {
            Ok(v) => report.record(
                "pairing negative",
                v.is_negative(),
                format!("pairing with the functional is {v}"),
            ),
            Err(e) => report.fail("pairing negative", e.to_string()),
        }
    }
}

pub fn find_representing_measure(instance: &RealizabilityInstance) -> Result<Verdict> {
    Solver::default().find_representing_measure(instance)
}

pub fn check_k_positivity(instance: &RealizabilityInstance) -> Result<KPositivity> {
    Solver::default().check_k_positivity(instance)
}

pub fn extend_with_cubic(instance: &RealizabilityInstance) -> Result<Verdict> {
    Solver::default().extend_with_cubic(instance)
}

pub fn minimal_third_moment(instance: &RealizabilityInstance) -> Result<MinimalThirdMoment> {
    Solver::default().minimal_third_moment(instance)
}

pub fn verify_verdict(instance: &RealizabilityInstance, verdict: &Verdict) -> VerificationReport {
    Solver::default().verify_verdict(instance, verdict)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Per-condition outcome of [`Solver::verify_verdict`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: if passed { String::new() } else { detail },
        });
    }

    fn pass(&mut self, name: &str) {
        self.record(name, true, String::new());
    }

    fn fail(&mut self, name: &str, detail: String) {
        self.record(name, false, detail);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                writeln!(f, "PASS {}", c.name)?;
            } else {
                writeln!(f, "FAIL {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}
