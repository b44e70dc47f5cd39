//! JSON file formats.
//!
//! All rationals are strings `"p/q"` (integers may be written as `"p"` or as
//! bare JSON integers). Floating-point numbers are rejected.
//!
//! Instance:
//! ```json
//! { "sites": ["a", "b"],
//!   "distances": [["0", "1"], ["1", "0"]],
//!   "kspec": { "variant": "HardCore", "Q": 2, "D": "2" },
//!   "L": { "ell0": "1", "ell1": ["1/2", "1/2"],
//!          "ell2": [["1/2", "1/4"], ["1/4", "1/2"]] },
//!   "gamma": ["1", "1"], "r_max": "4", "meta": {} }
//! ```
//! `variant` is one of `AtMostQ`, `ExactlyQ`, `Simple`, `HardCore`; `D` is
//! required for `HardCore` only. `distances`, `ell0`, `ell3`, `gamma`,
//! `r_max` and `meta` are optional.
//!
//! Result:
//! ```json
//! { "problem": "realize", "verdict": "measure",
//!   "support": [{ "counts": [0, 1], "weight": "1/2" }],
//!   "realized_R": "1/2",
//!   "certificate": { "f0": "0", "f1": ["-1"], "f2": [["1"]], "f3": "0", "gamma": ["1"] },
//!   "caps": { "Q": 2, "enumeration": 2000000, "configurations": 3 } }
//! ```
//! Exactly one of `support` and `certificate` is present. `f3` and `gamma`
//! appear only on restricted cubic certificates.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt;

use crate::config::{Configuration, KSpec, SiteSpace};
use crate::error::Error;
use crate::moments::{factorial_to_power, FiniteMeasure, MomentTensor};
use crate::poly::{MomentFunctional, Polynomial, RestrictedCubic};
use crate::rational::{self, Rational};
use crate::realize::{Certificate, RealizabilityInstance, RepresentingMeasure, Verdict};

/// A schema or content error together with the JSON path it refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub path: String,
    pub message: String,
}

impl FormatError {
    pub fn new(path: impl Into<String>, message: impl fmt::Display) -> Self {
        Self {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() || self.path == "." {
            write!(f, "{}", self.message)
        } else {
            write!(f, "at {}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for FormatError {}

type FResult<T> = std::result::Result<T, FormatError>;

fn at<T>(path: &str, r: crate::error::Result<T>) -> FResult<T> {
    r.map_err(|e| FormatError::new(path, e))
}

/// Deserializes `text`, reporting errors with their JSON path.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> FResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        FormatError::new(path, e.into_inner())
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// A rational in string form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Q(#[serde(with = "rational::serde_str")] pub Rational);

fn qs(values: &[Rational]) -> Vec<Q> {
    values.iter().cloned().map(Q).collect()
}

fn unq(values: &[Q]) -> Vec<Rational> {
    values.iter().map(|q| q.0.clone()).collect()
}

fn matrix_rows(t: &MomentTensor) -> Vec<Vec<Q>> {
    t.entries().chunks(t.dim().max(1)).map(qs).collect()
}

fn square(path: &str, rows: &[Vec<Q>], n: usize) -> FResult<Vec<Rational>> {
    if rows.len() != n {
        return Err(FormatError::new(path, format!("expected {n} rows, got {}", rows.len())));
    }
    let mut out = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(FormatError::new(
                format!("{path}[{i}]"),
                format!("expected {n} entries, got {}", row.len()),
            ));
        }
        out.extend(unq(row));
    }
    Ok(out)
}

fn cube(path: &str, slabs: &[Vec<Vec<Q>>], n: usize) -> FResult<Vec<Rational>> {
    if slabs.len() != n {
        return Err(FormatError::new(path, format!("expected {n} slabs, got {}", slabs.len())));
    }
    let mut out = Vec::with_capacity(n * n * n);
    for (i, slab) in slabs.iter().enumerate() {
        out.extend(square(&format!("{path}[{i}]"), slab, n)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KSpecJson {
    pub variant: String,
    #[serde(rename = "Q")]
    pub q: u32,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Q>,
}

impl KSpecJson {
    pub fn to_kspec(&self) -> FResult<KSpec> {
        let q = self.q;
        match self.variant.as_str() {
            "AtMostQ" => Ok(KSpec::AtMostQ { q }),
            "ExactlyQ" => Ok(KSpec::ExactlyQ { q }),
            "Simple" => Ok(KSpec::Simple { q }),
            "HardCore" => match &self.d {
                Some(d) => Ok(KSpec::HardCore { d: d.0.clone(), q }),
                None => Err(FormatError::new("kspec.D", "HardCore requires D")),
            },
            other => Err(FormatError::new(
                "kspec.variant",
                format!("unknown variant {other:?}; expected AtMostQ, ExactlyQ, Simple or HardCore"),
            )),
        }
    }
}

impl From<&KSpec> for KSpecJson {
    fn from(k: &KSpec) -> Self {
        let (variant, d) = match k {
            KSpec::AtMostQ { .. } => ("AtMostQ", None),
            KSpec::ExactlyQ { .. } => ("ExactlyQ", None),
            KSpec::Simple { .. } => ("Simple", None),
            KSpec::HardCore { d, .. } => ("HardCore", Some(Q(d.clone()))),
        };
        Self {
            variant: variant.into(),
            q: k.cap(),
            d,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell0: Option<Q>,
    pub ell1: Vec<Q>,
    pub ell2: Vec<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell3: Option<Vec<Vec<Vec<Q>>>>,
}

impl From<&MomentFunctional> for FunctionalJson {
    fn from(l: &MomentFunctional) -> Self {
        Self {
            ell0: Some(Q(l.ell0().clone())),
            ell1: qs(l.ell1().entries()),
            ell2: matrix_rows(l.ell2()),
            ell3: l.ell3().map(|t| {
                let n = t.dim();
                t.entries().chunks(n * n).map(|slab| slab.chunks(n).map(qs).collect()).collect()
            }),
        }
    }
}

/// How to read the `L` block of an instance.
#[derive(Debug, Clone)]
pub struct IngestOptions {
    /// Used when the file has no `ell0`.
    pub default_ell0: Rational,
    /// Replaces the file's `ell0` when set.
    pub ell0_override: Option<Rational>,
    /// The file holds correlation functions `ρ⁽ⁿ⁾` rather than moments.
    pub factorial: bool,
}

impl Default for IngestOptions {
    fn default() -> Self {
        Self {
            default_ell0: rational::one(),
            ell0_override: None,
            factorial: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub sites: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distances: Option<Vec<Vec<Q>>>,
    pub kspec: KSpecJson,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub l: Option<FunctionalJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> FResult<Self> {
        from_json(text)
    }

    pub fn space(&self) -> FResult<SiteSpace> {
        match &self.distances {
            Some(rows) => {
                let n = self.sites.len();
                let flat = square("distances", rows, n)?;
                let matrix = flat.chunks(n.max(1)).map(<[Rational]>::to_vec).collect();
                at("distances", SiteSpace::with_distances(self.sites.clone(), matrix))
            }
            None => at("sites", SiteSpace::new(self.sites.clone())),
        }
    }

    pub fn kspec(&self) -> FResult<KSpec> {
        self.kspec.to_kspec()
    }

    pub fn functional(&self, options: &IngestOptions) -> FResult<MomentFunctional> {
        let l = self
            .l
            .as_ref()
            .ok_or_else(|| FormatError::new("L", "missing moment functional"))?;
        let n = self.sites.len();
        if l.ell1.len() != n {
            return Err(FormatError::new(
                "L.ell1",
                format!("expected {n} entries, got {}", l.ell1.len()),
            ));
        }
        let ell0 = options
            .ell0_override
            .clone()
            .or_else(|| l.ell0.as_ref().map(|q| q.0.clone()))
            .unwrap_or_else(|| options.default_ell0.clone());
        let mut ladder = vec![
            MomentTensor::scalar_in(ell0, n),
            MomentTensor::vector(unq(&l.ell1)),
            at("L.ell2", MomentTensor::from_symmetric(2, n, square("L.ell2", &l.ell2, n)?))?,
        ];
        if let Some(ell3) = &l.ell3 {
            ladder.push(at("L.ell3", MomentTensor::from_symmetric(3, n, cube("L.ell3", ell3, n)?))?);
        }
        if options.factorial {
            ladder = at("L", factorial_to_power(&ladder))?;
        }
        at("L", MomentFunctional::new(ladder))
    }

    pub fn to_instance(&self, options: &IngestOptions) -> FResult<RealizabilityInstance> {
        let mut instance = at(
            "kspec",
            RealizabilityInstance::new(self.space()?, self.kspec()?, self.functional(options)?),
        )?;
        if let Some(g) = &self.gamma {
            instance = at("gamma", instance.with_gamma(unq(g)))?;
        }
        if let Some(r) = &self.r_max {
            instance = at("r_max", instance.with_r_max(r.0.clone()))?;
        }
        Ok(instance)
    }

    pub fn from_instance(instance: &RealizabilityInstance, meta: Option<Value>) -> Self {
        Self {
            sites: instance.space.sites().to_vec(),
            distances: instance
                .space
                .distances()
                .map(|d| d.iter().map(|row| qs(row)).collect()),
            kspec: KSpecJson::from(&instance.kspec),
            l: Some(FunctionalJson::from(&instance.functional)),
            gamma: instance.gamma.as_deref().map(qs),
            r_max: instance.r_max.clone().map(Q),
            meta,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportEntry {
    pub counts: Vec<u32>,
    pub weight: Q,
}

fn support_entries(mu: &FiniteMeasure) -> Vec<SupportEntry> {
    mu.support()
        .iter()
        .map(|(c, w)| SupportEntry {
            counts: c.counts.clone(),
            weight: Q(w.clone()),
        })
        .collect()
}

fn measure_from_entries(path: &str, dim: usize, entries: &[SupportEntry]) -> FResult<FiniteMeasure> {
    let support = entries
        .iter()
        .map(|e| (Configuration::new(e.counts.clone()), e.weight.0.clone()))
        .collect();
    at(path, FiniteMeasure::new(dim, support))
}

/// A standalone measure, as consumed by `moments` and emitted by `generate`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sites: Option<Vec<String>>,
    pub support: Vec<SupportEntry>,
}

impl MeasureFile {
    pub fn from_measure(mu: &FiniteMeasure, sites: Option<Vec<String>>) -> Self {
        Self {
            sites,
            support: support_entries(mu),
        }
    }

    pub fn to_measure(&self) -> FResult<FiniteMeasure> {
        let dim = match (&self.sites, self.support.first()) {
            (Some(s), _) => s.len(),
            (None, Some(e)) => e.counts.len(),
            (None, None) => {
                return Err(FormatError::new("sites", "empty support needs an explicit site list"))
            }
        };
        measure_from_entries("support", dim, &self.support)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub f0: Q,
    pub f1: Vec<Q>,
    pub f2: Vec<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f3: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Q>>,
}

impl CertificateJson {
    pub fn from_certificate(cert: &Certificate) -> Self {
        let p = cert.quadratic_part();
        let coef = |j| p.coefficient(j).expect("order within range");
        let (f3, gamma) = match cert {
            Certificate::Quadratic(_) => (None, None),
            Certificate::RestrictedCubic(q) => (Some(Q(q.f3.clone())), Some(qs(&q.gamma))),
        };
        Self {
            f0: Q(coef(0).entries()[0].clone()),
            f1: qs(coef(1).entries()),
            f2: matrix_rows(&coef(2)),
            f3,
            gamma,
        }
    }

    pub fn polynomial(&self, path: &str) -> FResult<Polynomial> {
        let n = self.f1.len();
        let f2 = square(&format!("{path}.f2"), &self.f2, n)?;
        at(
            path,
            Polynomial::new(
                n,
                vec![
                    MomentTensor::scalar_in(self.f0.0.clone(), n),
                    MomentTensor::vector(unq(&self.f1)),
                    at(&format!("{path}.f2"), MomentTensor::from_entries(2, n, f2))?,
                ],
            ),
        )
    }

    pub fn to_certificate(&self, path: &str) -> FResult<Certificate> {
        let p = self.polynomial(path)?;
        match (&self.f3, &self.gamma) {
            (None, None) => Ok(Certificate::Quadratic(p)),
            (Some(f3), Some(g)) => Ok(Certificate::RestrictedCubic(at(
                path,
                RestrictedCubic::new(p, f3.0.clone(), unq(g)),
            )?)),
            _ => Err(FormatError::new(path, "f3 and gamma must be given together")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    /// Degree-2 moment problem.
    Realize,
    /// Moment problem with the third-moment cap `r_max`.
    ExtendCubic,
    /// Minimal third moment over all representing measures.
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    Measure,
    Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    #[serde(rename = "Q")]
    pub q: u32,
    pub enumeration: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub configurations: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub problem: Problem,
    pub verdict: VerdictKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<SupportEntry>>,
    #[serde(rename = "realized_R", default, skip_serializing_if = "Option::is_none")]
    pub realized_r: Option<Q>,
    #[serde(rename = "minimal_R", default, skip_serializing_if = "Option::is_none")]
    pub minimal_r: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    pub caps: Caps,
}

impl ResultFile {
    pub fn parse(text: &str) -> FResult<Self> {
        from_json(text)
    }

    pub fn from_verdict(problem: Problem, verdict: &Verdict, caps: Caps) -> Self {
        match verdict {
            Verdict::Measure(m) => Self {
                problem,
                verdict: VerdictKind::Measure,
                support: Some(support_entries(&m.measure)),
                realized_r: m.realized_r.clone().map(Q),
                minimal_r: None,
                certificate: None,
                caps,
            },
            Verdict::Certificate(c) => Self {
                problem,
                verdict: VerdictKind::Certificate,
                support: None,
                realized_r: None,
                minimal_r: None,
                certificate: Some(CertificateJson::from_certificate(c)),
                caps,
            },
        }
    }

    pub fn to_verdict(&self, dim: usize) -> FResult<Verdict> {
        match self.verdict {
            VerdictKind::Measure => {
                let entries = self
                    .support
                    .as_ref()
                    .ok_or_else(|| FormatError::new("support", "measure verdict without support"))?;
                if self.certificate.is_some() {
                    return Err(FormatError::new("certificate", "measure verdict with a certificate"));
                }
                Ok(Verdict::Measure(RepresentingMeasure {
                    measure: measure_from_entries("support", dim, entries)?,
                    realized_r: self.realized_r.as_ref().map(|q| q.0.clone()),
                }))
            }
            VerdictKind::Certificate => {
                let cert = self.certificate.as_ref().ok_or_else(|| {
                    FormatError::new("certificate", "certificate verdict without a certificate")
                })?;
                if self.support.is_some() {
                    return Err(FormatError::new("support", "certificate verdict with a support"));
                }
                Ok(Verdict::Certificate(cert.to_certificate("certificate")?))
            }
        }
    }
}

/// Nested-array form of a tensor: a string for order 0, arrays otherwise.
pub fn tensor_to_json(t: &MomentTensor) -> Value {
    let n = t.dim();
    let s = |v: &Rational| Value::String(rational::format(v));
    let e = t.entries();
    match t.order() {
        0 => s(&e[0]),
        1 => Value::Array(e.iter().map(s).collect()),
        2 => Value::Array(e.chunks(n).map(|r| Value::Array(r.iter().map(s).collect())).collect()),
        _ => Value::Array(
            e.chunks(n * n)
                .map(|slab| {
                    Value::Array(
                        slab.chunks(n).map(|r| Value::Array(r.iter().map(s).collect())).collect(),
                    )
                })
                .collect(),
        ),
    }
}

fn flatten(path: &str, value: &Value, depth: usize, n: usize, out: &mut Vec<Rational>) -> FResult<()> {
    if depth == 0 {
        let q: Q = serde_json::from_value(value.clone()).map_err(|e| FormatError::new(path, e))?;
        out.push(q.0);
        return Ok(());
    }
    let items = value
        .as_array()
        .ok_or_else(|| FormatError::new(path, "expected an array"))?;
    if items.len() != n {
        return Err(FormatError::new(path, format!("expected {n} entries, got {}", items.len())));
    }
    for (i, item) in items.iter().enumerate() {
        flatten(&format!("{path}[{i}]"), item, depth - 1, n, out)?;
    }
    Ok(())
}

/// Reads a ladder `[t₀, t₁, …]` of tensors of orders `0, 1, …`. The site
/// count is taken from `t₁` (or `dim` when only `t₀` is present).
pub fn tensor_ladder_from_json(path: &str, value: &Value, dim: Option<usize>) -> FResult<Vec<MomentTensor>> {
    let items = value
        .as_array()
        .ok_or_else(|| FormatError::new(path, "expected an array of tensors"))?;
    if items.is_empty() {
        return Err(FormatError::new(path, "no tensors given"));
    }
    let n = match (items.get(1).and_then(Value::as_array), dim) {
        (Some(v), _) => v.len(),
        (None, Some(d)) => d,
        (None, None) => 0,
    };
    items
        .iter()
        .enumerate()
        .map(|(order, item)| {
            let p = format!("{path}[{order}]");
            let mut flat = Vec::new();
            flatten(&p, item, order, n, &mut flat)?;
            if order > 3 {
                return Err(FormatError::new(&p, Error::OrderOutOfRange(order)));
            }
            if order == 0 {
                Ok(MomentTensor::scalar_in(flat.remove(0), n))
            } else {
                at(&p, MomentTensor::from_symmetric(order, n, flat))
            }
        })
        .collect()
}

pub fn tensor_ladder_to_json(ladder: &[MomentTensor]) -> Value {
    Value::Array(ladder.iter().map(tensor_to_json).collect())
}

/// Input of `ratio-bound`: a polynomial of degree at most 2 and weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatioBoundFile {
    pub f0: Q,
    pub f1: Vec<Q>,
    pub f2: Vec<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Q>>,
}

impl RatioBoundFile {
    pub fn polynomial(&self) -> FResult<Polynomial> {
        CertificateJson {
            f0: self.f0.clone(),
            f1: self.f1.clone(),
            f2: self.f2.clone(),
            f3: None,
            gamma: None,
        }
        .polynomial("")
    }

    /// Weights, defaulting to all ones.
    pub fn gamma(&self) -> Vec<Rational> {
        match &self.gamma {
            Some(g) => unq(g),
            None => vec![rational::one(); self.f1.len()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::realize::find_representing_measure;

    const HARD_CORE: &str = r#"{
        "sites": ["a", "b"],
        "distances": [["0", "1"], ["1", "0"]],
        "kspec": {"variant": "HardCore", "Q": 2, "D": "2"},
        "L": {"ell1": ["1/2", "1/2"], "ell2": [["1/2", "1/4"], ["1/4", "1/2"]]}
    }"#;

    #[test]
    fn parses_instance_with_default_ell0() {
        let file = InstanceFile::parse(HARD_CORE).unwrap();
        let inst = file.to_instance(&IngestOptions::default()).unwrap();
        assert_eq!(inst.functional.ell0(), &int(1));
        assert_eq!(inst.kspec, KSpec::HardCore { d: int(2), q: 2 });
        let over = IngestOptions {
            ell0_override: Some(ratio(1, 2)),
            ..IngestOptions::default()
        };
        assert_eq!(file.to_instance(&over).unwrap().functional.ell0(), &ratio(1, 2));
    }

    #[test]
    fn factorial_input_is_converted() {
        // ρ⁽¹⁾ = 2, ρ⁽²⁾ = 2 is the point mass at k = 2.
        let text = r#"{"sites": ["a"], "kspec": {"variant": "AtMostQ", "Q": 2},
                       "L": {"ell0": 1, "ell1": ["2"], "ell2": [["2"]]}}"#;
        let file = InstanceFile::parse(text).unwrap();
        let options = IngestOptions {
            factorial: true,
            ..IngestOptions::default()
        };
        let inst = file.to_instance(&options).unwrap();
        assert_eq!(inst.functional.ell2().entries(), &[int(4)]);
    }

    #[test]
    fn errors_carry_paths() {
        let text = r#"{"sites": ["a"], "kspec": {"variant": "AtMostQ", "Q": 1},
                       "L": {"ell1": ["1/2"], "ell2": [[0.25]]}}"#;
        let err = InstanceFile::parse(text).unwrap_err();
        assert_eq!(err.path, "L.ell2[0][0]");
        assert!(err.message.contains("floating-point"));

        let text = r#"{"sites": ["a", "b"], "kspec": {"variant": "AtMostQ", "Q": 1},
                       "L": {"ell1": ["1", "0"], "ell2": [["0", "1"], ["0", "0"]]}}"#;
        let err = InstanceFile::parse(text)
            .unwrap()
            .to_instance(&IngestOptions::default())
            .unwrap_err();
        assert_eq!(err.path, "L.ell2");

        let text = r#"{"sites": ["a"], "kspec": {"variant": "Nope", "Q": 1}}"#;
        let err = InstanceFile::parse(text).unwrap().kspec().unwrap_err();
        assert_eq!(err.path, "kspec.variant");

        let text = r#"{"sites": ["a"], "kspec": {"variant": "HardCore", "Q": 1, "D": "1"},
                       "L": {"ell1": ["0"], "ell2": [["0"]]}}"#;
        let err = InstanceFile::parse(text)
            .unwrap()
            .to_instance(&IngestOptions::default())
            .unwrap_err();
        assert!(err.message.contains("distance matrix"));
    }

    #[test]
    fn result_round_trip() {
        let inst = InstanceFile::parse(HARD_CORE)
            .unwrap()
            .to_instance(&IngestOptions::default())
            .unwrap();
        let verdict = find_representing_measure(&inst).unwrap();
        let caps = Caps {
            q: 2,
            enumeration: 2_000_000,
            configurations: Some(3),
        };
        let file = ResultFile::from_verdict(Problem::Realize, &verdict, caps);
        let text = to_json(&file);
        let back = ResultFile::parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_verdict(2).unwrap(), verdict);
    }

    #[test]
    fn tensor_ladder_round_trip() {
        let ladder = vec![
            MomentTensor::scalar_in(int(1), 2),
            MomentTensor::vector(vec![ratio(1, 2), int(3)]),
            MomentTensor::from_entries(2, 2, vec![int(1), ratio(1, 3), ratio(1, 3), int(0)]).unwrap(),
        ];
        let value = tensor_ladder_to_json(&ladder);
        assert_eq!(tensor_ladder_from_json("t", &value, None).unwrap(), ladder);
    }
}
