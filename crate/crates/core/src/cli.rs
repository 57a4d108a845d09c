//! Batch front-end. Every subcommand reads an optional JSON config, runs one
//! experiment, and writes a JSON or CSV report.
//!
//! Exit codes: 0 success or PASS, 1 FAIL, 2 usage or config error,
//! 3 numeric failure.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::criteria::{criterion_berezin, criterion_general, criterion_radial, poisson_jensen_residual, PjFunction, Verdict};
use crate::error::{Error, Result};
use crate::geometry::{random_domain_family, FamilySpec, Point, UnionDomain};
use crate::green::{green_union, kappa_hat, EstimateWithError, MonteCarloConfig};
use crate::kernels::{eval_kernel, q_function, q_upper_bound, KernelId};
use crate::measures::{Measure, RadialWeight, ZeroSequence};
use crate::products::{growth_norm, log_product, GridSpec, GrowthReport};
use crate::quadrature::QuadConfig;
use crate::report::{emit_report, Cell, Format, Report, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

pub const THREADS_ENV: &str = "DISKZEROES_THREADS";

#[derive(Debug, Parser)]
#[command(name = "diskzeroes", version, about = "Zero-set criteria and potential theory on the unit disk")]
struct Cli {
    /// JSON experiment config.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the seed in the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads. Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one kernel k(ζ, z).
    KernelEval(KernelEvalArgs),
    /// Green's function g_D(ζ, 0) of a union of disks at given points.
    GreenEval,
    /// κ̂ of the Green's function for each domain.
    KappaHat,
    /// Run a zero-set criterion over a domain family.
    Criterion {
        #[arg(value_enum)]
        kind: CriterionArg,
    },
    /// Growth norm of a canonical product on a grid.
    ProductVerify,
    /// Poisson–Jensen residuals on a centered disk.
    PjCheck,
    /// Generate a seeded family of admissible domains.
    FamilyGen,
    /// Compare Q(x) with its upper bound near the boundary.
    QBoundCheck,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum CriterionArg {
    Radial,
    Berezin,
    General,
}

#[derive(Debug, Args)]
struct KernelEvalArgs {
    #[arg(long)]
    kernel: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    param: Option<f64>,
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_hyphen_values = true)]
    zeta: Option<Vec<f64>>,
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_hyphen_values = true)]
    z: Option<Vec<f64>>,
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run_with_pool(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_numeric() {
                EXIT_NUMERIC
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn thread_count(cli: &Cli) -> Result<Option<usize>> {
    if let Some(n) = cli.threads {
        return Ok(Some(n));
    }
    match std::env::var(THREADS_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Config(format!("{THREADS_ENV} must be a thread count, got {s:?}"))),
        Err(_) => Ok(None),
    }
}

fn run_with_pool(cli: &Cli) -> Result<i32> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count(cli)? {
        if n == 0 {
            return Err(Error::Config("thread count must be positive".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?;
    pool.install(|| dispatch(cli))
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::KernelEval(args) => kernel_eval(cli, args),
        Command::GreenEval => green_eval(cli),
        Command::KappaHat => kappa_hat_cmd(cli),
        Command::Criterion { kind } => criterion_cmd(cli, *kind),
        Command::ProductVerify => product_verify(cli),
        Command::PjCheck => pj_check(cli),
        Command::FamilyGen => family_gen(cli),
        Command::QBoundCheck => q_bound_check(cli),
    }
}

/// Parses a JSON config with the failing field path and line in the message.
pub fn parse_config<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        Error::Config(format!(
            "at `{}` (line {}, column {}): {inner}",
            e.path(),
            inner.line(),
            inner.column()
        ))
    })?;
    Ok(value)
}

fn read_config<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| match e {
        Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn load<T: DeserializeOwned + Default>(cli: &Cli) -> Result<T> {
    cli.config.as_deref().map_or_else(|| Ok(T::default()), read_config)
}

fn load_required<T: DeserializeOwned>(cli: &Cli) -> Result<T> {
    match cli.config.as_deref() {
        Some(p) => read_config(p),
        None => Err(Error::Config("this command needs --config".into())),
    }
}

fn emit<R: Report + ?Sized>(cli: &Cli, report: &R) -> Result<()> {
    emit_report(report, cli.format.unwrap_or_default(), cli.out.as_deref()).map_err(|e| match (e, &cli.out) {
        (Error::Io(io), Some(path)) => Error::Config(format!("cannot write {}: {io}", path.display())),
        (e, _) => e,
    })
}

fn mc_config(cli: &Cli, mc: Option<MonteCarloConfig>) -> Result<MonteCarloConfig> {
    let mut mc = mc.unwrap_or_default();
    if let Some(s) = cli.seed {
        mc.seed = s;
    }
    mc.validate()?;
    Ok(mc)
}

/// Zero sequence given explicitly or by a named generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SequenceSpec {
    Generated { generator: Generator, count: u32 },
    Explicit(ZeroSequence),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// `1 - 2^-k`.
    Geometric,
    /// `k/(k+1)`.
    Harmonic,
}

impl SequenceSpec {
    pub fn build(&self) -> Result<ZeroSequence> {
        match self {
            SequenceSpec::Generated { generator, count } => Ok(match generator {
                Generator::Geometric => ZeroSequence::geometric(*count),
                Generator::Harmonic => ZeroSequence::harmonic(*count),
            }),
            SequenceSpec::Explicit(seq) => {
                seq.validate()?;
                Ok(seq.clone())
            }
        }
    }
}

/// Domain family: centered disks `D(0, 1 - 2^-j)`, a seeded random family,
/// or an explicit list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySource {
    Ladder { j_min: i32, j_max: i32 },
    Random(FamilySpec),
    Domains(Vec<UnionDomain>),
}

impl FamilySource {
    pub fn build(&self, seed_override: Option<u64>) -> Result<Vec<UnionDomain>> {
        match self {
            FamilySource::Ladder { j_min, j_max } => {
                if *j_min < 1 || j_max < j_min || *j_max > 40 {
                    return Err(Error::Config(format!("ladder needs 1 <= j_min <= j_max <= 40, got {j_min}..{j_max}")));
                }
                (*j_min..=*j_max).map(|j| UnionDomain::centered(1.0 - 0.5f64.powi(j))).collect()
            }
            FamilySource::Random(spec) => random_domain_family(seed_override.unwrap_or(spec.seed), spec.count, spec.a),
            FamilySource::Domains(list) => Ok(list.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasureSpec {
    /// Counting measure of a zero sequence.
    Zeros(SequenceSpec),
    /// Riesz measure of a radial weight.
    Weight(RadialWeight),
}

impl MeasureSpec {
    fn build(&self) -> Result<Measure> {
        match self {
            MeasureSpec::Zeros(s) => Ok(Measure::counting(&s.build()?)),
            MeasureSpec::Weight(w) => Ok(Measure::Radial(w.riesz_measure()?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
struct KernelEvalConfig {
    #[serde(flatten)]
    kernel: KernelId,
    zeta: Point,
    z: Point,
}

#[derive(Debug, Serialize)]
struct KernelValue {
    kernel: KernelId,
    zeta: Point,
    z: Point,
    value: f64,
}

impl Report for KernelValue {
    fn table(&self) -> Table {
        Table {
            header: vec!["zeta_re", "zeta_im", "z_re", "z_im", "value"],
            rows: vec![vec![self.zeta.re.into(), self.zeta.im.into(), self.z.re.into(), self.z.im.into(), self.value.into()]],
        }
    }
}

fn point_arg(v: &Option<Vec<f64>>, name: &str) -> Result<Point> {
    match v.as_deref() {
        Some([re, im]) => Ok(Point::new(*re, *im)),
        _ => Err(Error::Config(format!("--{name} RE IM is required without --config"))),
    }
}

fn kernel_eval(cli: &Cli, args: &KernelEvalArgs) -> Result<i32> {
    let (kernel, zeta, z) = match (&cli.config, &args.kernel) {
        (Some(path), None) => {
            let c: KernelEvalConfig = read_config(path)?;
            (c.kernel, c.zeta, c.z)
        }
        (_, Some(name)) => (
            KernelId::from_name(name, args.param)?,
            point_arg(&args.zeta, "zeta")?,
            point_arg(&args.z, "z")?,
        ),
        (None, None) => return Err(Error::Config("kernel-eval needs --kernel or --config".into())),
    };
    kernel.validate()?;
    let value = eval_kernel(&kernel, zeta, z)?;
    if cli.format.is_none() && cli.out.is_none() {
        println!("{value}");
    } else {
        emit(cli, &KernelValue { kernel, zeta, z, value })?;
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GreenEvalConfig {
    domain: UnionDomain,
    points: Vec<Point>,
    #[serde(default)]
    mc: Option<MonteCarloConfig>,
}

#[derive(Debug, Serialize)]
struct GreenValue {
    zeta: Point,
    green: EstimateWithError,
}

#[derive(Debug, Serialize)]
struct GreenReport {
    domain: UnionDomain,
    values: Vec<GreenValue>,
}

impl Report for GreenReport {
    fn table(&self) -> Table {
        Table {
            header: vec!["zeta_re", "zeta_im", "value", "stderr", "walks"],
            rows: self
                .values
                .iter()
                .map(|v| {
                    vec![
                        v.zeta.re.into(),
                        v.zeta.im.into(),
                        v.green.value.into(),
                        v.green.stderr.into(),
                        v.green.walks_used.into(),
                    ]
                })
                .collect(),
        }
    }
}

fn green_eval(cli: &Cli) -> Result<i32> {
    let c: GreenEvalConfig = load_required(cli)?;
    let mc = mc_config(cli, c.mc)?;
    c.domain.check_invariants().map_err(|reason| Error::InadmissibleDomain { index: 0, reason })?;
    let values = c
        .points
        .iter()
        .enumerate()
        .map(|(i, &zeta)| {
            let cfg = mc.with_seed(crate::rng::derive_seed(mc.seed, i as u64));
            Ok(GreenValue {
                zeta,
                green: green_union(&c.domain, zeta, &cfg)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    emit(cli, &GreenReport { domain: c.domain, values })?;
    Ok(EXIT_OK)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct KappaHatConfig {
    family: FamilySource,
    #[serde(default)]
    mc: Option<MonteCarloConfig>,
}

#[derive(Debug, Serialize)]
struct KappaRecord {
    domain: usize,
    radius: f64,
    kappa_hat: EstimateWithError,
}

#[derive(Debug, Serialize)]
struct KappaReport {
    records: Vec<KappaRecord>,
}

impl Report for KappaReport {
    fn table(&self) -> Table {
        Table {
            header: vec!["domain", "radius", "value", "stderr", "walks"],
            rows: self
                .records
                .iter()
                .map(|r| {
                    vec![
                        r.domain.into(),
                        r.radius.into(),
                        r.kappa_hat.value.into(),
                        r.kappa_hat.stderr.into(),
                        r.kappa_hat.walks_used.into(),
                    ]
                })
                .collect(),
        }
    }
}

fn kappa_hat_cmd(cli: &Cli) -> Result<i32> {
    let c: KappaHatConfig = load_required(cli)?;
    let mc = mc_config(cli, c.mc)?;
    let family = c.family.build(cli.seed)?;
    let records = family
        .iter()
        .enumerate()
        .map(|(i, d)| {
            d.check_invariants().map_err(|reason| Error::InadmissibleDomain { index: i, reason })?;
            let cfg = mc.with_seed(crate::rng::derive_seed(mc.seed, i as u64));
            Ok(KappaRecord {
                domain: i,
                radius: d.outer_radius(),
                kappa_hat: kappa_hat(d, &cfg)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    emit(cli, &KappaReport { records })?;
    Ok(EXIT_OK)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CriterionConfig {
    #[serde(default)]
    sequence: Option<SequenceSpec>,
    #[serde(default)]
    weight: Option<RadialWeight>,
    #[serde(default)]
    p: Option<f64>,
    #[serde(default)]
    nu_u: Option<MeasureSpec>,
    #[serde(default)]
    nu_m: Option<MeasureSpec>,
    family: FamilySource,
    #[serde(default)]
    mc: Option<MonteCarloConfig>,
}

fn required<'a, T>(v: &'a Option<T>, field: &str, kind: &str) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| Error::Config(format!("`{field}` is required for the {kind} criterion")))
}

fn criterion_cmd(cli: &Cli, kind: CriterionArg) -> Result<i32> {
    let c: CriterionConfig = load_required(cli)?;
    let mc = mc_config(cli, c.mc)?;
    let family = c.family.build(cli.seed)?;
    let report = match kind {
        CriterionArg::Radial => {
            let seq = required(&c.sequence, "sequence", "radial")?.build()?;
            let weight = required(&c.weight, "weight", "radial")?;
            criterion_radial(&seq, weight, &family, &mc)?
        }
        CriterionArg::Berezin => {
            let seq = required(&c.sequence, "sequence", "berezin")?.build()?;
            criterion_berezin(&seq, *required(&c.p, "p", "berezin")?, &family, &mc)?
        }
        CriterionArg::General => {
            let nu_u = required(&c.nu_u, "nu_u", "general")?.build()?;
            let nu_m = required(&c.nu_m, "nu_m", "general")?.build()?;
            criterion_general(&nu_u, &nu_m, &family, &mc)?
        }
    };
    emit(cli, &report)?;
    eprintln!("verdict: {}", report.verdict);
    Ok(if report.verdict == Verdict::Fail { EXIT_FAIL } else { EXIT_OK })
}

#[derive(Debug, Deserialize)]
struct ProductConfig {
    #[serde(flatten)]
    kernel: KernelId,
    sequence: SequenceSpec,
    p: f64,
    #[serde(default)]
    grid: GridSpec,
}

#[derive(Debug, Serialize)]
struct ProductReport {
    kernel: KernelId,
    zeros: u64,
    growth: GrowthReport,
}

impl Report for ProductReport {
    fn table(&self) -> Table {
        self.growth.table()
    }
}

fn product_verify(cli: &Cli) -> Result<i32> {
    let c: ProductConfig = load_required(cli)?;
    c.kernel.validate()?;
    let seq = c.sequence.build()?;
    for e in seq.entries() {
        // Surfaces support errors before the grid swallows them.
        eval_kernel(&c.kernel, e.z, Point::new(0.5, 0.5))?;
    }
    let zeros: Vec<Point> = seq.entries().iter().map(|e| e.z).collect();
    let logf = |z: Point| log_product(&c.kernel, &seq, z).unwrap_or(f64::NAN);
    let growth = growth_norm(&logf, c.p, &zeros, c.grid)?;
    emit(
        cli,
        &ProductReport {
            kernel: c.kernel,
            zeros: seq.total_multiplicity(),
            growth,
        },
    )?;
    Ok(EXIT_OK)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PjConfig {
    #[serde(default = "default_pj_cases")]
    cases: Vec<PjFunction>,
    #[serde(default = "default_pj_radius")]
    r: f64,
    #[serde(default = "default_pj_tol")]
    tol: f64,
    #[serde(default = "default_pj_threshold")]
    threshold: f64,
}

impl Default for PjConfig {
    fn default() -> Self {
        Self {
            cases: default_pj_cases(),
            r: default_pj_radius(),
            tol: default_pj_tol(),
            threshold: default_pj_threshold(),
        }
    }
}

fn default_pj_cases() -> Vec<PjFunction> {
    let a = Point::new(0.3, 0.0);
    vec![
        PjFunction::LogDistance { a },
        PjFunction::LogBlaschke {
            zeros: ZeroSequence::from_points([(a, 1)]).expect("0.3 lies in the disk"),
        },
        PjFunction::LogDistance { a: Point::new(0.7, 0.0) },
    ]
}

fn default_pj_radius() -> f64 {
    0.5
}

fn default_pj_tol() -> f64 {
    1e-12
}

fn default_pj_threshold() -> f64 {
    1e-6
}

#[derive(Debug, Serialize)]
struct PjRecord {
    case: usize,
    #[serde(flatten)]
    function: PjFunction,
    residual: f64,
}

#[derive(Debug, Serialize)]
struct PjReport {
    r: f64,
    threshold: f64,
    records: Vec<PjRecord>,
}

impl Report for PjReport {
    fn table(&self) -> Table {
        Table {
            header: vec!["case", "function", "residual"],
            rows: self
                .records
                .iter()
                .map(|rec| {
                    let name = match rec.function {
                        PjFunction::LogDistance { .. } => "log_distance",
                        PjFunction::LogBlaschke { .. } => "log_blaschke",
                    };
                    vec![rec.case.into(), name.into(), rec.residual.into()]
                })
                .collect(),
        }
    }
}

fn pj_check(cli: &Cli) -> Result<i32> {
    let c: PjConfig = load(cli)?;
    let quad = QuadConfig::with_tol(c.tol);
    let records = c
        .cases
        .into_iter()
        .enumerate()
        .map(|(case, function)| {
            let residual = poisson_jensen_residual(&function, c.r, quad)?;
            Ok(PjRecord { case, function, residual })
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = records.iter().all(|r| r.residual < c.threshold);
    emit(cli, &PjReport { r: c.r, threshold: c.threshold, records })?;
    if ok {
        Ok(EXIT_OK)
    } else {
        eprintln!("error: a residual exceeds {:e}", c.threshold);
        Ok(EXIT_NUMERIC)
    }
}

#[derive(Debug, Serialize)]
struct FamilyReport {
    seed: u64,
    a: f64,
    domains: Vec<UnionDomain>,
}

impl Report for FamilyReport {
    fn table(&self) -> Table {
        let mut rows = Vec::new();
        for (i, d) in self.domains.iter().enumerate() {
            for (k, disk) in d.disks.iter().enumerate() {
                rows.push(vec![
                    Cell::from(i),
                    Cell::from(k),
                    disk.center.re.into(),
                    disk.center.im.into(),
                    disk.radius.into(),
                ]);
            }
        }
        Table {
            header: vec!["domain", "disk", "center_re", "center_im", "radius"],
            rows,
        }
    }
}

fn family_gen(cli: &Cli) -> Result<i32> {
    let mut spec: FamilySpec = load_required(cli)?;
    if let Some(s) = cli.seed {
        spec.seed = s;
    }
    let domains = random_domain_family(spec.seed, spec.count, spec.a)?;
    emit(
        cli,
        &FamilyReport {
            seed: spec.seed,
            a: spec.a,
            domains,
        },
    )?;
    Ok(EXIT_OK)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct QBoundConfig {
    #[serde(default = "default_q_p")]
    p: f64,
    #[serde(default = "default_q_eps")]
    eps: Vec<f64>,
    #[serde(default = "default_q_x")]
    x: Vec<f64>,
    #[serde(default = "default_q_tol")]
    tol: f64,
}

impl Default for QBoundConfig {
    fn default() -> Self {
        Self {
            p: default_q_p(),
            eps: default_q_eps(),
            x: default_q_x(),
            tol: default_q_tol(),
        }
    }
}

fn default_q_p() -> f64 {
    1.0
}

fn default_q_eps() -> Vec<f64> {
    vec![0.25, 0.5]
}

fn default_q_x() -> Vec<f64> {
    vec![0.92, 0.95, 0.98]
}

fn default_q_tol() -> f64 {
    1e-3
}

#[derive(Debug, Serialize)]
struct QRecord {
    x: f64,
    eps: f64,
    q: f64,
    bound: f64,
    holds: bool,
}

#[derive(Debug, Serialize)]
struct QReport {
    p: f64,
    records: Vec<QRecord>,
}

impl Report for QReport {
    fn table(&self) -> Table {
        Table {
            header: vec!["x", "eps", "q", "bound", "holds"],
            rows: self
                .records
                .iter()
                .map(|r| vec![r.x.into(), r.eps.into(), r.q.into(), r.bound.into(), r.holds.to_string().into()])
                .collect(),
        }
    }
}

fn q_bound_check(cli: &Cli) -> Result<i32> {
    let c: QBoundConfig = load(cli)?;
    let m = RadialWeight::PowerLog { p: c.p };
    let nu = Measure::Radial(m.riesz_measure()?);
    let quad = QuadConfig::with_tol(c.tol);
    let kernel = KernelId::Bomash { s: 2.0 };
    let mut records = Vec::new();
    for &x in &c.x {
        let z = Point::new(x, 0.0);
        let q = q_function(&kernel, &nu, z, quad)?;
        for &eps in &c.eps {
            let bound = q_upper_bound(&m, z, eps, quad)?;
            records.push(QRecord {
                x,
                eps,
                q,
                bound,
                holds: q <= bound,
            });
        }
    }
    let ok = records.iter().all(|r| r.holds);
    emit(cli, &QReport { p: c.p, records })?;
    Ok(if ok { EXIT_OK } else { EXIT_FAIL })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_errors_name_the_field() {
        let text = "{\n  \"family\": {\"ladder\": {\"j_min\": 1, \"j_max\": \"ten\"}}\n}";
        let err = parse_config::<CriterionConfig>(text).unwrap_err().to_string();
        assert!(err.contains("family.ladder.j_max"), "{err}");
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn sequence_specs() {
        let g: SequenceSpec = parse_config(r#"{"generator":"geometric","count":20}"#).unwrap();
        assert_eq!(g.build().unwrap(), ZeroSequence::geometric(20));
        let e: SequenceSpec = parse_config(r#"{"points":[{"z":[0.5,0.0],"m":2}]}"#).unwrap();
        assert_eq!(e.build().unwrap().total_multiplicity(), 2);
        let bad: SequenceSpec = parse_config(r#"{"points":[{"z":[1.5,0.0],"m":1}]}"#).unwrap();
        assert!(bad.build().is_err());
    }

    #[test]
    fn kernel_config_is_flat() {
        let c: KernelEvalConfig = parse_config(r#"{"kernel":"bomash","s":2.0,"zeta":[0.5,0.0],"z":[0.0,0.0]}"#).unwrap();
        assert_eq!(c.kernel, KernelId::Bomash { s: 2.0 });
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["diskzeroes", "kernel-eval", "--kernel", "blaschke", "--zeta", "0.5", "0", "--z", "0", "0"]), 0);
        assert_eq!(run(["diskzeroes", "no-such-command"]), EXIT_USAGE);
        assert_eq!(run(["diskzeroes", "kernel-eval", "--kernel", "nope", "--zeta", "0.5", "0", "--z", "0", "0"]), EXIT_USAGE);
        assert_eq!(run(["diskzeroes", "criterion", "radial"]), EXIT_USAGE);
    }
}
