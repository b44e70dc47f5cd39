use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use realiz_core::format::{
    self, Caps, FormatError, IngestOptions, InstanceFile, KSpecJson, MeasureFile, Problem, ResultFile,
    RatioBoundFile, Q,
};
use realiz_core::generators::{bernoulli_field, gibbs_hardcore, instance_from_measure, random_measure, truncated_poisson};
use realiz_core::moments::{correlation_functions, factorial_to_power, power_moments, power_to_factorial};
use realiz_core::poly::{cubed_weighted_mass, ratio_bound};
use realiz_core::rational::{self, Rational};
use realiz_core::realize::Check;
use realiz_core::{
    count_configurations, enumerate_configurations_with_cap, Error, KSpec, MinimalThirdMoment,
    RealizabilityInstance, SiteSpace, SolveOptions, Solver, Verdict, VerificationReport,
    DEFAULT_ENUMERATION_CAP,
};

use crate::render;
use crate::{
    CertifyCheckArgs, Cli, Command, ConvertArgs, EnumerateArgs, ExtendCubicArgs, Family, GenerateArgs,
    IngestArgs, MomentsArgs, OutputFormat, RatioBoundArgs, RealizeArgs, Target, Variant,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CERTIFICATE: u8 = 1;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Cap(String),
    Verify(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
            Failure::Verify(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Cap(m) => f.write_str(m),
            Failure::Verify(m) => write!(f, "verification failed\n{m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::LpTooLarge { .. } | Error::PivotLimit(_) => Failure::Cap(e.to_string()),
            Error::Internal(_) => Failure::Verify(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

struct Context {
    format: OutputFormat,
    solver: Solver,
    cap: u128,
}

pub fn run(cli: &Cli) -> Outcome<u8> {
    let cap = cli.enum_cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
    let solver = Solver {
        enumeration_cap: cap,
        lp: SolveOptions {
            trace: cli.debug_lp,
            ..SolveOptions::default()
        },
    };
    let ctx = Context {
        format: cli.format,
        solver,
        cap,
    };
    match &cli.command {
        Command::Enumerate(a) => enumerate(&ctx, a),
        Command::Moments(a) => moments(&ctx, a),
        Command::Convert(a) => convert(&ctx, a),
        Command::Realize(a) => realize(&ctx, a),
        Command::ExtendCubic(a) => extend_cubic(&ctx, a),
        Command::CertifyCheck(a) => certify_check(&ctx, a),
        Command::Generate(a) => generate(&ctx, a),
        Command::RatioBound(a) => ratio_bound_cmd(&ctx, a),
    }
}

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome<()> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialize")
}

/// Writes `doc` to `output` when given; stdout receives the table in table
/// mode and the JSON document otherwise (unless it went to a file).
fn emit(ctx: &Context, output: Option<&Path>, doc: &str, table: impl FnOnce() -> String) -> Outcome<()> {
    if let Some(path) = output {
        write(path, doc)?;
    }
    match ctx.format {
        OutputFormat::Table => print!("{}", table()),
        OutputFormat::Json if output.is_none() => println!("{doc}"),
        OutputFormat::Json => {}
    }
    Ok(())
}

fn line_space(n: usize) -> Outcome<SiteSpace> {
    let sites = (0..n).map(|i| format!("s{i}")).collect();
    let distances = (0..n)
        .map(|i| (0..n).map(|j| rational::int(i.abs_diff(j) as i64)).collect())
        .collect();
    Ok(SiteSpace::with_distances(sites, distances)?)
}

fn kspec_from(variant: Variant, q: u32, d: Option<&Rational>) -> Outcome<KSpec> {
    Ok(match variant {
        Variant::AtMostQ => KSpec::AtMostQ { q },
        Variant::ExactlyQ => KSpec::ExactlyQ { q },
        Variant::Simple => KSpec::Simple { q },
        Variant::HardCore => KSpec::HardCore {
            d: d.cloned()
                .ok_or_else(|| Failure::Usage("hard-core sets need --d".into()))?,
            q,
        },
    })
}

fn ingest_options(args: &IngestArgs) -> IngestOptions {
    IngestOptions {
        ell0_override: args.ell0.clone(),
        factorial: args.factorial,
        ..IngestOptions::default()
    }
}

fn load_instance(path: &Path, ingest: &IngestArgs) -> Outcome<RealizabilityInstance> {
    let file = InstanceFile::parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    file.to_instance(&ingest_options(ingest))
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn caps(ctx: &Context, instance: &RealizabilityInstance) -> Outcome<Caps> {
    let count = count_configurations(&instance.space, &instance.kspec)?;
    Ok(Caps {
        q: instance.kspec.cap(),
        enumeration: u64::try_from(ctx.cap).unwrap_or(u64::MAX),
        configurations: u64::try_from(count).ok(),
    })
}

fn check_report(report: VerificationReport) -> Outcome<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verify(report.to_string()))
    }
}

fn verdict_code(verdict: &Verdict) -> u8 {
    if verdict.is_measure() {
        EXIT_OK
    } else {
        EXIT_CERTIFICATE
    }
}

fn enumerate(ctx: &Context, args: &EnumerateArgs) -> Outcome<u8> {
    let (space, kspec) = match &args.input {
        Some(path) => {
            let file = InstanceFile::parse(&read(path)?)?;
            (file.space()?, file.kspec()?)
        }
        None => {
            let n = args
                .sites
                .ok_or_else(|| Failure::Usage("give an instance file or --sites".into()))?;
            let q = args.q.ok_or_else(|| Failure::Usage("--q is required with --sites".into()))?;
            (line_space(n)?, kspec_from(args.variant, q, args.d.as_ref())?)
        }
    };
    kspec.validate(&space)?;
    if args.count {
        println!("{}", count_configurations(&space, &kspec)?);
        return Ok(EXIT_OK);
    }
    let configs = enumerate_configurations_with_cap(&space, &kspec, ctx.cap)?;
    let doc = json!({
        "sites": space.sites(),
        "kspec": KSpecJson::from(&kspec),
        "count": configs.len(),
        "configurations": configs.iter().map(|c| c.counts.clone()).collect::<Vec<_>>(),
    });
    emit(ctx, None, &pretty(&doc), || render::configurations(&kspec, &configs))?;
    Ok(EXIT_OK)
}

fn moments(ctx: &Context, args: &MomentsArgs) -> Outcome<u8> {
    let file: MeasureFile = format::from_json(&read(&args.input)?)?;
    let mu = file.to_measure()?;
    let power = power_moments(&mu, args.order)?;
    let factorial = correlation_functions(&mu, args.order)?;
    let doc = json!({
        "power": format::tensor_ladder_to_json(&power),
        "factorial": format::tensor_ladder_to_json(&factorial),
    });
    emit(ctx, args.output.as_deref(), &pretty(&doc), || {
        format!("power\n{}factorial\n{}", render::ladder(&power), render::ladder(&factorial))
    })?;
    Ok(EXIT_OK)
}

fn convert(ctx: &Context, args: &ConvertArgs) -> Outcome<u8> {
    let value: Value = format::from_json(&read(&args.input)?)?;
    let (path, ladder) = match &value {
        Value::Object(map) => {
            let key = match args.to {
                Target::Factorial => "power",
                Target::Power => "factorial",
            };
            let inner = map
                .get(key)
                .ok_or_else(|| Failure::Usage(format!("{key}: missing from input object")))?;
            (key, inner)
        }
        _ => ("", &value),
    };
    let tensors = format::tensor_ladder_from_json(path, ladder, None)?;
    let converted = match args.to {
        Target::Factorial => power_to_factorial(&tensors)?,
        Target::Power => factorial_to_power(&tensors)?,
    };
    let doc = format::tensor_ladder_to_json(&converted);
    emit(ctx, args.output.as_deref(), &pretty(&doc), || render::ladder(&converted))?;
    Ok(EXIT_OK)
}

fn realize_one(ctx: &Context, path: &Path, args: &RealizeArgs) -> Outcome<(ResultFile, u8)> {
    // The degree-2 problem ignores any third-moment cap in the file.
    let instance = load_instance(path, &args.ingest)?.uncapped();
    let verdict = ctx.solver.find_representing_measure(&instance)?;
    if args.verify {
        check_report(ctx.solver.verify_verdict(&instance, &verdict))?;
    }
    let result = ResultFile::from_verdict(Problem::Realize, &verdict, caps(ctx, &instance)?);
    Ok((result, verdict_code(&verdict)))
}

fn result_path(dir: &Path, input: &Path) -> PathBuf {
    let stem = input.file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
    dir.join(format!("{stem}.result.json"))
}

fn realize(ctx: &Context, args: &RealizeArgs) -> Outcome<u8> {
    if args.inputs.len() == 1 && args.out_dir.is_none() {
        let (result, code) = realize_one(ctx, &args.inputs[0], args)?;
        emit(ctx, args.output.as_deref(), &format::to_json(&result), || render::result(&result))?;
        return Ok(code);
    }
    if args.output.is_some() {
        return Err(Failure::Usage("-o takes a single input; use --out-dir for batches".into()));
    }
    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let outcomes: Vec<Outcome<(ResultFile, u8)>> =
        pool.install(|| args.inputs.par_iter().map(|p| realize_one(ctx, p, args)).collect());

    let mut worst = EXIT_OK;
    let mut entries = Vec::new();
    let mut table = String::new();
    for (input, outcome) in args.inputs.iter().zip(outcomes) {
        let shown = input.display().to_string();
        match outcome {
            Ok((result, code)) => {
                worst = worst.max(code);
                let written = match &args.out_dir {
                    Some(dir) => {
                        let target = result_path(dir, input);
                        write(&target, &format::to_json(&result))?;
                        Some(target.display().to_string())
                    }
                    None => None,
                };
                table.push_str(&format!("{shown}: {}\n", render::verdict_line(&result)));
                let mut entry = json!({ "input": shown, "exit": code });
                match written {
                    Some(w) => entry["result_file"] = json!(w),
                    None => entry["result"] = serde_json::to_value(&result).expect("result serializes"),
                }
                entries.push(entry);
            }
            Err(failure) => {
                worst = worst.max(failure.code());
                table.push_str(&format!("{shown}: error (exit {}): {failure}\n", failure.code()));
                entries.push(json!({ "input": shown, "exit": failure.code(), "error": failure.to_string() }));
            }
        }
    }
    emit(ctx, None, &pretty(&Value::Array(entries)), || table)?;
    Ok(worst)
}

fn extend_cubic(ctx: &Context, args: &ExtendCubicArgs) -> Outcome<u8> {
    let mut instance = load_instance(&args.input, &args.ingest)?;
    if let Some(gamma) = &args.gamma {
        instance = instance.with_gamma(gamma.clone())?;
    }
    if instance.gamma.is_none() {
        return Err(Failure::Usage("gamma: required (in the file or via --gamma)".into()));
    }
    if let Some(r) = &args.r_max {
        instance = instance.with_r_max(r.clone())?;
    }
    let (result, verdict) = if args.minimize {
        let uncapped = instance.uncapped();
        match ctx.solver.minimal_third_moment(&uncapped)? {
            MinimalThirdMoment::Minimum { r_star, measure } => {
                let verdict = Verdict::Measure(measure);
                if args.verify {
                    let mut report = ctx.solver.verify_verdict(&uncapped, &verdict);
                    report.checks.push(realized_matches(&verdict, &r_star));
                    check_report(report)?;
                }
                let mut result = ResultFile::from_verdict(Problem::Minimize, &verdict, caps(ctx, &uncapped)?);
                result.minimal_r = Some(Q(r_star));
                (result, verdict)
            }
            MinimalThirdMoment::Infeasible(cert) => {
                let verdict = Verdict::Certificate(cert);
                if args.verify {
                    check_report(ctx.solver.verify_verdict(&uncapped, &verdict))?;
                }
                let result = ResultFile::from_verdict(Problem::Minimize, &verdict, caps(ctx, &uncapped)?);
                (result, verdict)
            }
        }
    } else {
        if instance.r_max.is_none() {
            return Err(Failure::Usage("r_max: required (in the file or via --r-max) unless --minimize".into()));
        }
        let verdict = ctx.solver.extend_with_cubic(&instance)?;
        if args.verify {
            check_report(ctx.solver.verify_verdict(&instance, &verdict))?;
        }
        let result = ResultFile::from_verdict(Problem::ExtendCubic, &verdict, caps(ctx, &instance)?);
        (result, verdict)
    };
    emit(ctx, args.output.as_deref(), &format::to_json(&result), || render::result(&result))?;
    Ok(verdict_code(&verdict))
}

fn realized_matches(verdict: &Verdict, r_star: &Rational) -> Check {
    let realized = match verdict {
        Verdict::Measure(m) => m.realized_r.clone(),
        Verdict::Certificate(_) => None,
    };
    let passed = realized.as_ref() == Some(r_star);
    Check {
        name: "minimal third moment".into(),
        passed,
        detail: if passed {
            String::new()
        } else {
            format!(
                "realized {} but minimum is {r_star}",
                realized.map_or("nothing".into(), |r| r.to_string())
            )
        },
    }
}

fn certify_check(ctx: &Context, args: &CertifyCheckArgs) -> Outcome<u8> {
    let instance = load_instance(&args.instance, &args.ingest)?;
    let result = ResultFile::parse(&read(&args.result)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.result.display())))?;
    let verdict = result.to_verdict(instance.space.len())?;
    let mut report = match result.problem {
        Problem::Realize => ctx.solver.verify_verdict(&instance.uncapped(), &verdict),
        Problem::ExtendCubic => {
            if instance.r_max.is_none() {
                return Err(Failure::Usage("r_max: the instance has no third-moment cap".into()));
            }
            ctx.solver.verify_verdict(&instance, &verdict)
        }
        Problem::Minimize => {
            let uncapped = instance.uncapped();
            let mut report = ctx.solver.verify_verdict(&uncapped, &verdict);
            if let Some(Q(claimed)) = &result.minimal_r {
                report.checks.push(realized_matches(&verdict, claimed));
                if let MinimalThirdMoment::Minimum { r_star, .. } = ctx.solver.minimal_third_moment(&uncapped)? {
                    let passed = &r_star == claimed;
                    report.checks.push(Check {
                        name: "minimum recomputed".into(),
                        passed,
                        detail: if passed { String::new() } else { format!("claimed {claimed}, recomputed {r_star}") },
                    });
                }
            }
            report
        }
    };
    let q_ok = result.caps.q == instance.kspec.cap();
    report.checks.push(Check {
        name: "caps match instance".into(),
        passed: q_ok,
        detail: if q_ok {
            String::new()
        } else {
            format!("result Q = {}, instance Q = {}", result.caps.q, instance.kspec.cap())
        },
    });
    let doc = json!({
        "passed": report.passed(),
        "checks": report.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect::<Vec<_>>(),
    });
    emit(ctx, None, &pretty(&doc), || report.to_string())?;
    if report.passed() {
        Ok(EXIT_OK)
    } else {
        Err(Failure::Verify(report.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect::<Vec<_>>().join("\n")))
    }
}

#[derive(Deserialize)]
struct SpaceFile {
    sites: Vec<String>,
    #[serde(default)]
    distances: Option<Vec<Vec<Q>>>,
}

fn generator_space(args: &GenerateArgs) -> Outcome<SiteSpace> {
    match (&args.space, args.sites) {
        (Some(path), _) => {
            let file: SpaceFile = format::from_json(&read(path)?)?;
            Ok(match file.distances {
                Some(d) => SiteSpace::with_distances(
                    file.sites,
                    d.into_iter().map(|row| row.into_iter().map(|q| q.0).collect()).collect(),
                )?,
                None => SiteSpace::new(file.sites)?,
            })
        }
        (None, Some(n)) => line_space(n),
        (None, None) => Err(Failure::Usage("give --sites or --space".into())),
    }
}

fn q_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(rational::format).collect()
}

fn generate(ctx: &Context, args: &GenerateArgs) -> Outcome<u8> {
    let space = generator_space(args)?;
    let n = space.len() as u32;
    let (mu, kspec, meta) = match &args.family {
        Family::Bernoulli { probs } => (
            bernoulli_field(&space, probs)?,
            KSpec::Simple { q: n },
            json!({ "generator": "bernoulli", "probs": q_strings(probs) }),
        ),
        Family::Poisson { intensities, cap } => (
            truncated_poisson(&space, intensities, *cap)?,
            KSpec::AtMostQ { q: n * cap },
            json!({ "generator": "poisson", "intensities": q_strings(intensities), "cap": cap }),
        ),
        Family::GibbsHardcore { activity, d, q } => (
            gibbs_hardcore(&space, activity, d, *q)?,
            KSpec::HardCore { d: d.clone(), q: *q },
            json!({ "generator": "gibbs-hardcore", "activity": rational::format(activity) }),
        ),
        Family::Random { seed, variant, q, d } => {
            let kspec = kspec_from(*variant, *q, d.as_ref())?;
            (
                random_measure(&space, &kspec, *seed)?,
                kspec,
                json!({ "generator": "random", "seed": seed }),
            )
        }
    };
    let mut instance = instance_from_measure(&mu, &space, &kspec, args.gamma.clone())?;
    if let Some(r) = &args.r_max {
        instance = instance.with_r_max(r.clone())?;
    }
    if let Some(path) = &args.measure_out {
        write(path, &format::to_json(&MeasureFile::from_measure(&mu, Some(space.sites().to_vec()))))?;
    }
    let file = InstanceFile::from_instance(&instance, Some(meta));
    emit(ctx, args.output.as_deref(), &format::to_json(&file), || render::instance(&instance, &mu))?;
    Ok(EXIT_OK)
}

fn ratio_bound_cmd(ctx: &Context, args: &RatioBoundArgs) -> Outcome<u8> {
    let file: RatioBoundFile = format::from_json(&read(&args.input)?)?;
    let b = file.polynomial()?;
    let gamma = file.gamma();
    let lambda = ratio_bound(&b, &gamma)?;
    let space = SiteSpace::anonymous(b.dim())?;
    let configs = enumerate_configurations_with_cap(&space, &KSpec::AtMostQ { q: args.scan_q }, ctx.cap)?;
    let mut best = rational::zero();
    let mut argmax = configs[0].clone();
    for eta in &configs {
        let v = b.evaluate(eta)?;
        let r = num_abs(&v) / (rational::one() + cubed_weighted_mass(&gamma, eta));
        if r > best {
            best = r;
            argmax = eta.clone();
        }
    }
    let doc = json!({
        "lambda_b": rational::format(&lambda),
        "empirical_max": rational::format(&best),
        "argmax": argmax.counts,
        "scan_Q": args.scan_q,
        "configurations": configs.len(),
    });
    emit(ctx, None, &pretty(&doc), || {
        format!(
            "lambda_b       {lambda}\nempirical max  {best} at {argmax}\nscan           AtMostQ({}) over {} configurations\n",
            args.scan_q,
            configs.len()
        )
    })?;
    Ok(EXIT_OK)
}

fn num_abs(v: &Rational) -> Rational {
    if v < &rational::zero() {
        -v.clone()
    } else {
        v.clone()
    }
}
