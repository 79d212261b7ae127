// Copyright 2026 The quasiprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command-line interface.
//!
//! Every command prints one report on stdout (JSON by default) and exits
//! with 0 when the report was produced, 2 on invalid input and 3 when a
//! requested construction is mathematically impossible.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::affine::{
    linear_extension_exists, translated_linear_extend, PointValueSet, TranslatedLinearMap,
};
use crate::counterexamples::{constant_one_example, duplication_fixture, sic_baseline, SicFrame};
use crate::error::Error;
use crate::nogo;
use crate::ontic::{
    check_convex_linearity, check_normalization, check_qpr3, check_unit_sum, effect_negativity,
    negativity, qpr3_probe_pairs, AffineEffectRep, AffineStateRep, EffectRep, StateRep,
    TabulatedStateRep,
};
use crate::pauli::{random_density, random_effect, DensityOp, Povm, PovmElement};
use crate::reduction::{
    frame_representation, random_density_matrix, random_effect_matrix, random_povm,
    restrict_representation, trace_preservation_check, Embedding, MatrixOp,
};
use crate::report::CheckReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IMPOSSIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "quasiprob", version, about = "Checks and certifies qubit quasiprobability representations")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Numerical tolerance for every pass/fail decision.
    #[arg(long, global = true, default_value_t = crate::DEFAULT_TOL)]
    pub tol: f64,

    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Directory for report and fixture files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Random samples used by sampled checks.
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify a candidate representation or a seeded battery of candidates.
    Certify(CertifyArgs),
    /// Extend point/value data to a translated-linear map.
    Extend(ExtendArgs),
    /// Restrict a frame representation of a d-level system to a qubit subspace.
    Reduce(ReduceArgs),
    /// Emit and verify one of the standard fixtures.
    Counterexample(CounterexampleArgs),
    /// Report the most negative values of an affine representation.
    Negativity(RepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    Sic,
    Nonnegative,
    Perturbed,
}

#[derive(Debug, Args)]
pub struct RepArgs {
    /// Built-in candidate.
    #[arg(long, value_enum, conflicts_with_all = ["state", "effect"])]
    pub demo: Option<Demo>,

    /// State representation JSON (affine or tabulated).
    #[arg(long, requires = "effect")]
    pub state: Option<PathBuf>,

    /// Effect representation JSON (affine).
    #[arg(long, requires = "state")]
    pub effect: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub rep: RepArgs,

    /// Certify seeded random nonnegative candidates instead.
    #[arg(long, conflicts_with_all = ["demo", "state", "effect"])]
    pub random_nonnegative: bool,

    #[arg(long, default_value_t = 1000)]
    pub trials: usize,

    /// Attach the contradiction chain report.
    #[arg(long)]
    pub chain: bool,
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    /// Point/value JSON `{"points": [[..]], "values": [..]}`.
    pub file: PathBuf,

    /// Query point as comma-separated coordinates; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub query: Vec<String>,

    /// Fail with exit 3 unless a purely linear extension exists.
    #[arg(long)]
    pub require_linear: bool,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Use a seeded random informationally complete POVM in dimension d.
    #[arg(long, conflicts_with = "rep")]
    pub frame: Option<usize>,

    /// Frame JSON `{"frame": [matrix, ..]}` with matrices as rows of [re, im].
    #[arg(long)]
    pub rep: Option<PathBuf>,

    /// Two standard basis vectors spanning the subspace, e.g. `e1,e2`.
    #[arg(long, conflicts_with = "isometry")]
    pub subspace: Option<String>,

    /// Isometry JSON `{"V": matrix, "alpha": [[re, im], ..]}`.
    #[arg(long)]
    pub isometry: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    Duplication,
    ConstantOne,
    Sic,
}

#[derive(Debug, Args)]
pub struct CounterexampleArgs {
    #[arg(value_enum)]
    pub name: Fixture,
}

/// Error carrying the exit code it maps to and an optional report.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    pub report: Option<Value>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into(), report: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::input(e.to_string())
    }
}

type CmdResult = std::result::Result<Output, Failure>;

/// A report plus any fixture files to write next to it.
pub struct Output {
    pub report: Value,
    pub files: Vec<(String, Value)>,
    pub code: i32,
}

impl Output {
    fn report(report: Value) -> Self {
        Self { report, files: Vec::new(), code: EXIT_OK }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Either kind of state representation accepted from files.
enum AnyStateRep {
    Affine(AffineStateRep),
    Tabulated(TabulatedStateRep),
}

impl StateRep for AnyStateRep {
    fn space(&self) -> &crate::ontic::OnticSpace {
        match self {
            Self::Affine(r) => r.space(),
            Self::Tabulated(r) => r.space(),
        }
    }

    fn mu(&self, rho: &DensityOp) -> crate::Result<crate::ontic::OnticFunction> {
        match self {
            Self::Affine(r) => r.mu(rho),
            Self::Tabulated(r) => r.mu(rho),
        }
    }

    fn catalog(&self) -> Option<Vec<DensityOp>> {
        match self {
            Self::Affine(r) => r.catalog(),
            Self::Tabulated(r) => r.catalog(),
        }
    }
}

fn load_reps(args: &RepArgs) -> std::result::Result<(AnyStateRep, AffineEffectRep, String), Failure> {
    match (&args.demo, &args.state, &args.effect) {
        (Some(demo), _, _) => {
            let (s, e) = demo_reps(*demo);
            Ok((s, e, format!("{demo:?}").to_lowercase()))
        }
        (None, Some(sp), Some(ep)) => {
            let raw: Value = read_json(sp)?;
            let state = if raw.get("catalog").is_some() {
                AnyStateRep::Tabulated(
                    serde_json::from_value(raw).map_err(|e| Failure::input(format!("{}: {e}", sp.display())))?,
                )
            } else {
                AnyStateRep::Affine(
                    serde_json::from_value(raw).map_err(|e| Failure::input(format!("{}: {e}", sp.display())))?,
                )
            };
            let effect: AffineEffectRep = read_json(ep)?;
            state.space().ensure_same(effect.space())?;
            Ok((state, effect, "files".into()))
        }
        _ => Err(Failure::input("give --demo or both --state and --effect")),
    }
}

fn demo_reps(demo: Demo) -> (AnyStateRep, AffineEffectRep) {
    match demo {
        Demo::Sic => {
            let (s, e) = sic_baseline();
            (AnyStateRep::Affine(s), e)
        }
        Demo::Nonnegative => {
            let (_, e) = sic_baseline();
            let n = e.space().len();
            let s = AffineStateRep::new(e.space().clone(), [vec![0.0; n], vec![0.0; n], vec![0.0; n]], vec![0.25; n])
                .expect("consistent lengths");
            (AnyStateRep::Affine(s), e)
        }
        Demo::Perturbed => {
            let fx = duplication_fixture();
            (AnyStateRep::Tabulated(fx.state_rep), fx.effect_rep)
        }
    }
}

fn cmd_certify(args: &CertifyArgs, cfg: &RunConfig) -> CmdResult {
    if args.random_nonnegative {
        let report = nogo::run_battery(args.trials, cfg.seed, cfg.tol)?;
        return Ok(Output::report(to_value(&report)));
    }
    let (s, e, source) = load_reps(&args.rep)?;
    let cert = if args.chain {
        nogo::certify_with_chain(&s, &e, cfg.tol)?
    } else {
        nogo::certify(&s, &e, cfg.tol)?
    };
    let mut report = to_value(&cert);
    report["source"] = json!(source);
    Ok(Output::report(report))
}

fn parse_point(text: &str) -> std::result::Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Failure::input(format!("bad query coordinate {t:?}: {e}")))
        })
        .collect()
}

fn cmd_extend(args: &ExtendArgs, cfg: &RunConfig) -> CmdResult {
    let pvs: PointValueSet = read_json(&args.file)?;
    let queries = args.query.iter().map(|q| parse_point(q)).collect::<std::result::Result<Vec<_>, _>>()?;
    let linear = linear_extension_exists(&pvs, cfg.tol);
    let map = match translated_linear_extend(&pvs, cfg.tol) {
        Ok(map) => map,
        Err(Error::ExtensionImpossible { residual, witness }) => {
            return Err(Failure {
                code: EXIT_IMPOSSIBLE,
                message: format!("data are not convex-linear (residual {residual:e})"),
                report: Some(json!({
                    "extension": "impossible",
                    "residual": residual,
                    "witness": witness,
                })),
            })
        }
        Err(e) => return Err(e.into()),
    };
    let evaluations = evaluate(&map, &queries, cfg.tol)?;
    let report = json!({
        "map": map,
        "hull_dim": map.hull().dim(),
        "evaluations": evaluations,
        "linear_extension": linear,
    });
    if args.require_linear && !linear.exists {
        return Err(Failure {
            code: EXIT_IMPOSSIBLE,
            message: "no linear extension exists".into(),
            report: Some(report),
        });
    }
    Ok(Output::report(report))
}

fn evaluate(map: &TranslatedLinearMap, queries: &[Vec<f64>], tol: f64) -> std::result::Result<Vec<Value>, Failure> {
    queries
        .iter()
        .map(|q| {
            let value = map.eval(q, tol.max(1e-9))?;
            Ok(json!({"point": q, "value": value}))
        })
        .collect()
}

fn parse_subspace(spec: &str, d: usize) -> std::result::Result<Embedding, Failure> {
    let indices = spec
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.strip_prefix('e')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|n| *n >= 1)
                .map(|n| n - 1)
                .ok_or_else(|| Failure::input(format!("bad basis vector {t:?}; expected e1, e2, ...")))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut sorted = indices.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != indices.len() {
        return Err(Failure::input("subspace basis vectors must be distinct"));
    }
    Ok(Embedding::coordinate(d, &indices)?)
}

#[derive(serde::Deserialize)]
struct FrameFile {
    frame: Vec<MatrixOp>,
}

fn cmd_reduce(args: &ReduceArgs, cfg: &RunConfig) -> CmdResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let frame = match (args.frame, &args.rep) {
        (Some(d), None) => {
            if d < 2 {
                return Err(Failure::input("--frame needs d >= 2"));
            }
            random_povm(&mut rng, d, d * d)
        }
        (None, Some(path)) => read_json::<FrameFile>(path)?.frame,
        _ => return Err(Failure::input("give --frame d or --rep FILE")),
    };
    let d = frame.first().map_or(0, MatrixOp::dim);
    let big = frame_representation(d, frame, cfg.tol.max(1e-9))?;
    let emb = match (&args.subspace, &args.isometry) {
        (Some(spec), None) => parse_subspace(spec, d)?,
        (None, Some(path)) => read_json(path)?,
        _ => return Err(Failure::input("give --subspace or --isometry")),
    };
    if emb.small_dim() != 2 {
        return Err(Failure::input(format!(
            "the subspace must be 2-dimensional, got {}",
            emb.small_dim()
        )));
    }
    let restricted = restrict_representation(&big, emb.clone())?;
    let ex = nogo::extract_coefficients(&restricted, &restricted)?;
    let (srep, erep) = (ex.state_rep(), ex.effect_rep());

    let mut trace_worst = 0.0f64;
    for _ in 0..cfg.samples {
        let rho = random_density_matrix(&mut rng, 2);
        let e = random_effect_matrix(&mut rng, 2);
        trace_worst = trace_worst.max(trace_preservation_check(&rho, &e, &emb, cfg.tol)?.worst_defect);
    }
    let checks = qpr_checks(&restricted, &restricted, cfg.seed, cfg.samples, cfg.tol)?;
    let report = json!({
        "dimension": d,
        "subspace_dimension": emb.small_dim(),
        "fit_residual": ex.fit_residual,
        "trace_preservation": CheckReport::new(trace_worst, cfg.tol, json!({"samples": cfg.samples})),
        "checks": checks,
        "state_rep": srep,
        "effect_rep": erep,
    });
    let mut out = Output::report(report);
    out.files = vec![
        ("restricted_state.json".into(), to_value(&srep)),
        ("restricted_effect.json".into(), to_value(&erep)),
    ];
    Ok(out)
}

#[derive(Debug, Serialize)]
struct NamedCheck {
    check: String,
    pass: bool,
    expected_pass: bool,
    worst_defect: f64,
}

fn named(check: &str, r: &CheckReport, expected_pass: bool) -> NamedCheck {
    NamedCheck { check: check.into(), pass: r.pass, expected_pass, worst_defect: r.worst_defect }
}

/// Normalization, unit sum and Born reproduction, sampled with `seed`.
/// Catalog-backed representations are queried on their catalog only.
fn qpr_checks<S, E>(s: &S, e: &E, seed: u64, samples: usize, tol: f64) -> crate::Result<Vec<NamedCheck>>
where
    S: StateRep + ?Sized,
    E: EffectRep + ?Sized,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let effects: Vec<PovmElement> = (0..samples).map(|_| random_effect(&mut rng)).collect();
    let (states, pairs): (Vec<DensityOp>, Vec<(DensityOp, PovmElement)>) = match s.catalog() {
        Some(cat) => {
            let pairs = effects.iter().enumerate().map(|(k, e)| (cat[k % cat.len()], *e)).collect();
            (cat, pairs)
        }
        None => {
            let states: Vec<DensityOp> = (0..samples).map(|_| random_density(&mut rng)).collect();
            let pairs = states.iter().copied().zip(effects.iter().copied()).chain(qpr3_probe_pairs()).collect();
            (states, pairs)
        }
    };
    let mut unit = CheckReport::vacuous();
    let sic = SicFrame::tetrahedron().bloch_vectors;
    let povms = (0..3)
        .map(|i| Povm::projective(crate::pauli::axis(i)))
        .chain([Povm::trivial()])
        .chain([Povm::new(
            sic.iter()
                .map(|a| PovmElement::new(0.25, crate::pauli::scale(0.25, a)).expect("SIC element"))
                .collect(),
        )])
        .chain(effects.iter().take(samples.min(100)).map(|e| Povm::new(vec![*e, e.complement()])));
    for povm in povms {
        let r = check_unit_sum(e, &povm, tol)?;
        if r.worst_defect > unit.worst_defect || unit.witness.is_null() {
            unit = r;
        }
    }
    Ok(vec![
        named("normalization", &check_normalization(s, &states, tol)?, true),
        named("unit_sum", &unit, true),
        named("born_rule", &check_qpr3(s, e, &pairs, tol)?, true),
    ])
}

fn cmd_counterexample(args: &CounterexampleArgs, cfg: &RunConfig) -> CmdResult {
    match args.name {
        Fixture::Sic => {
            let (s, e) = sic_baseline();
            let mut checks = qpr_checks(&s, &e, cfg.seed, cfg.samples, cfg.tol)?;
            let neg = negativity(&s);
            checks.push(named(
                "state_nonnegativity",
                &CheckReport::new((-neg.min_value).max(0.0), cfg.tol, Value::Null),
                false,
            ));
            let eneg = effect_negativity(&e);
            checks.push(named(
                "effect_nonnegativity",
                &CheckReport::new((-eneg.min_value).max(0.0), cfg.tol, Value::Null),
                true,
            ));
            let mut out = Output::report(json!({
                "name": "sic",
                "checks": checks,
                "state_negativity": neg,
                "effect_negativity": eneg,
            }));
            out.files = vec![("sic_state.json".into(), to_value(&s)), ("sic_effect.json".into(), to_value(&e))];
            Ok(out)
        }
        Fixture::Duplication => {
            let fx = duplication_fixture();
            let mut checks = qpr_checks(&fx.state_rep, &fx.effect_rep, cfg.seed, cfg.samples, cfg.tol)?;
            let cl = check_convex_linearity(&fx.state_rep, cfg.samples, cfg.seed, cfg.tol)?;
            checks.push(named("convex_linearity", &cl, false));
            let mut out = Output::report(json!({
                "name": "duplication",
                "checks": checks,
                "convex_linearity_witness": cl.witness,
                "sigma": fx.sigma,
            }));
            out.files = vec![
                ("duplication_state.json".into(), to_value(&fx.state_rep)),
                ("duplication_effect.json".into(), to_value(&fx.effect_rep)),
            ];
            Ok(out)
        }
        Fixture::ConstantOne => {
            let pvs = constant_one_example();
            let linear = linear_extension_exists(&pvs, cfg.tol);
            let map = translated_linear_extend(&pvs, cfg.tol)?;
            let zero = vec![0.0; pvs.domain_dim()];
            let at_zero = map.eval(&zero, cfg.tol.max(1e-9))?;
            let checks = vec![
                NamedCheck {
                    check: "linear_extension".into(),
                    pass: linear.exists,
                    expected_pass: false,
                    worst_defect: linear.residual,
                },
                NamedCheck {
                    check: "translated_linear_extension".into(),
                    pass: true,
                    expected_pass: true,
                    worst_defect: 0.0,
                },
            ];
            let mut out = Output::report(json!({
                "name": "constant-one",
                "checks": checks,
                "linear_extension": linear,
                "translated_linear_map": map,
                "value_at_zero_operator": at_zero,
            }));
            out.files = vec![("constant_one.json".into(), to_value(&pvs))];
            Ok(out)
        }
    }
}

fn cmd_negativity(args: &RepArgs, _cfg: &RunConfig) -> CmdResult {
    let (s, e, source) = load_reps(args)?;
    let ex = nogo::extract_coefficients(&s, &e)?;
    let report = json!({
        "source": source,
        "fit_residual": ex.fit_residual,
        "state": negativity(&ex.state_rep()),
        "effect": effect_negativity(&ex.effect_rep()),
    });
    Ok(Output::report(report))
}

/// Twelve significant digits, shortest form.
fn sig12(x: f64) -> String {
    if !x.is_finite() || x == 0.0 {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if (1e-4..1e12).contains(&rounded.abs()) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, out);
            }
        }
        Value::Number(n) => {
            let text = match n.as_f64() {
                Some(f) if !n.is_i64() && !n.is_u64() => sig12(f),
                _ => n.to_string(),
            };
            let _ = writeln!(out, "{prefix}\t{text}");
        }
        Value::String(s) => {
            let _ = writeln!(out, "{prefix}\t{s}");
        }
        other => {
            let _ = writeln!(out, "{prefix}\t{other}");
        }
    }
}

/// Renders a report in the requested format.
pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Table => {
            let mut s = String::new();
            flatten("", report, &mut s);
            s
        }
    }
}

fn write_files(dir: &Path, report: &Value, files: &[(String, Value)]) -> std::result::Result<(), Failure> {
    let io = |e: std::io::Error| Failure::input(format!("cannot write to {}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join("report.json"), render(report, Format::Json)).map_err(io)?;
    for (name, v) in files {
        fs::write(dir.join(name), render(v, Format::Json)).map_err(io)?;
    }
    Ok(())
}

/// Runs a parsed command, writes its output and returns the exit code.
pub fn run(cli: &Cli, stdout: &mut impl std::io::Write, stderr: &mut impl std::io::Write) -> i32 {
    let cfg = &cli.config;
    if !(cfg.tol.is_finite() && cfg.tol > 0.0) {
        let _ = writeln!(stderr, "error: --tol must be positive and finite");
        return EXIT_INPUT;
    }
    let result = match &cli.command {
        Command::Certify(a) => cmd_certify(a, cfg),
        Command::Extend(a) => cmd_extend(a, cfg),
        Command::Reduce(a) => cmd_reduce(a, cfg),
        Command::Counterexample(a) => cmd_counterexample(a, cfg),
        Command::Negativity(a) => cmd_negativity(a, cfg),
    };
    let (report, files, code) = match result {
        Ok(out) => (Some(out.report), out.files, out.code),
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            (f.report, Vec::new(), f.code)
        }
    };
    if let Some(report) = report {
        let _ = stdout.write_all(render(&report, cfg.format).as_bytes());
        if let Some(dir) = &cfg.out {
            if let Err(f) = write_files(dir, &report, &files) {
                let _ = writeln!(stderr, "error: {}", f.message);
                return EXIT_INPUT;
            }
        }
    }
    code
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
