//! Plain-text summaries for `--format table`.

use std::fmt::Write;

use realiz_core::format::{ResultFile, VerdictKind};
use realiz_core::{Configuration, FiniteMeasure, KSpec, MomentTensor, RealizabilityInstance};

pub fn configurations(kspec: &KSpec, configs: &[Configuration]) -> String {
    let mut out = format!("{kspec}: {} configurations\n", configs.len());
    for c in configs {
        let _ = writeln!(out, "  {c}");
    }
    out
}

pub fn ladder(tensors: &[MomentTensor]) -> String {
    let mut out = String::new();
    for t in tensors {
        let entries: Vec<String> = t.entries().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  order {}: [{}]", t.order(), entries.join(", "));
    }
    out
}

pub fn verdict_line(result: &ResultFile) -> String {
    match result.verdict {
        VerdictKind::Measure => {
            let atoms = result.support.as_ref().map_or(0, Vec::len);
            match &result.minimal_r {
                Some(r) => format!("measure ({atoms} atoms), minimal R = {}", r.0),
                None => format!("measure ({atoms} atoms)"),
            }
        }
        VerdictKind::Certificate => "certificate".to_string(),
    }
}

fn row(values: &[realiz_core::format::Q]) -> String {
    values.iter().map(|q| q.0.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn result(result: &ResultFile) -> String {
    let mut out = format!("verdict: {}\n", verdict_line(result));
    if let Some(support) = &result.support {
        for entry in support {
            let counts: Vec<String> = entry.counts.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  ({})  {}", counts.join(","), entry.weight.0);
        }
    }
    if let Some(r) = &result.realized_r {
        let _ = writeln!(out, "realized R: {}", r.0);
    }
    if let Some(cert) = &result.certificate {
        let _ = writeln!(out, "f0: {}", cert.f0.0);
        let _ = writeln!(out, "f1: [{}]", row(&cert.f1));
        let rows: Vec<String> = cert.f2.iter().map(|r| format!("[{}]", row(r))).collect();
        let _ = writeln!(out, "f2: [{}]", rows.join(", "));
        if let Some(f3) = &cert.f3 {
            let _ = writeln!(out, "f3: {}", f3.0);
        }
        if let Some(g) = &cert.gamma {
            let _ = writeln!(out, "gamma: [{}]", row(g));
        }
    }
    let _ = writeln!(
        out,
        "caps: Q = {}, enumeration = {}{}",
        result.caps.q,
        result.caps.enumeration,
        result.caps.configurations.map_or(String::new(), |c| format!(", configurations = {c}"))
    );
    out
}

pub fn instance(instance: &RealizabilityInstance, mu: &FiniteMeasure) -> String {
    let l = &instance.functional;
    let mut out = format!(
        "{} sites, {}, measure with {} atoms\n",
        instance.space.len(),
        instance.kspec,
        mu.support().len()
    );
    let _ = writeln!(out, "ell0: {}", l.ell0());
    out.push_str(&ladder(&l.levels()[1..]));
    out
}
