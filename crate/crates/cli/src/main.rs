use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use tamegamma::constructions::{self, build_better, build_cusp, build_g2, build_noncusp, build_ramakrishnan, build_so2n, build_so6};
use tamegamma::{selftest, Error, FamilyBounds, Group, MultChar, Parity, RamBeta, Report, Scene, TestFamily, WeilRep, Q};

#[derive(Parser, Debug)]
#[command(name = "tamegamma", version, about = "Exact twisted gamma factors of tame Weil-group representations")]
struct Cli {
    /// TOML file with default values for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Residue characteristic.
    #[arg(long, global = true, env = "TAMEGAMMA_P")]
    p: Option<u64>,
    /// Required p-adic working precision, in digits.
    #[arg(long, global = true, env = "TAMEGAMMA_PRECISION")]
    precision: Option<u32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(flatten)]
    family: FamilyArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
struct FamilyArgs {
    #[arg(long, global = true)]
    max_dim: Option<u32>,
    /// Largest twist depth, e.g. `2` or `3/2`.
    #[arg(long, global = true)]
    max_depth: Option<String>,
    #[arg(long, global = true)]
    max_order: Option<u64>,
    #[arg(long, global = true)]
    unif_order: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Build a scenario and verify its hypotheses and conclusions.
    Verify(VerifyArgs),
    /// Twisted gamma factor of a serialized representation.
    Gamma {
        /// JSON file `{"rep": ..., "twist": ...}`.
        input: PathBuf,
    },
    /// Dump the test family of twists.
    Family,
    /// Run the randomized arithmetic suites.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Scenario {
    Noncusp,
    Cusp,
    Better,
    So6,
    So2n,
    G2,
    Ramakrishnan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum GroupKind {
    Sp,
    SoEven,
    SoOdd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ParityArg {
    Orthogonal,
    Symplectic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum BetaArg {
    Deep,
    Shallow,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    scenario: Scenario,
    /// Rank parameter N.
    #[arg(long = "N", alias = "n")]
    n: Option<u32>,
    #[arg(long, value_enum)]
    group: Option<GroupKind>,
    #[arg(long, value_enum)]
    parity: Option<ParityArg>,
    /// Order of the padding characters (so2n).
    #[arg(long = "M", alias = "m")]
    m: Option<u64>,
    #[arg(long, value_enum)]
    beta: Option<BetaArg>,
    /// Wild exponents of the two ramified characters (so6), e.g. `1,3`.
    #[arg(long)]
    depths: Option<String>,
    /// Perturb one hypothesis (negative control).
    #[arg(long)]
    perturb: bool,
    /// Also search for a distinguishing twist one dimension up (better).
    #[arg(long)]
    search_witness: bool,
}

/// Mirror of the flags, read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    p: Option<u64>,
    precision: Option<u32>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    #[serde(rename = "N")]
    n: Option<u32>,
    group: Option<GroupKind>,
    parity: Option<ParityArg>,
    #[serde(rename = "M")]
    m: Option<u64>,
    beta: Option<BetaArg>,
    depths: Option<String>,
    perturb: Option<bool>,
    search_witness: Option<bool>,
    family: Option<FamilyArgs>,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
enum Failure {
    Config(anyhow::Error),
    Precision(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Precision(_) => Failure::Precision(anyhow!(e)),
            _ => Failure::Config(anyhow!(e)),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Failure {
        Failure::Config(e)
    }
}

/// The resolved run configuration; serialized into every report.
#[derive(Debug, Clone, Serialize)]
struct RunConfig {
    p: u64,
    precision: Option<u32>,
    seed: u64,
    params: BTreeMap<String, Value>,
    family: FamilyBounds,
}

fn parse_q(s: &str) -> anyhow::Result<Q> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i128>()?, d.trim().parse::<i128>()?),
        None => (s.trim().parse::<i128>()?, 1),
    };
    if d == 0 {
        return Err(anyhow!("zero denominator in {s:?}"));
    }
    Ok(Q::new(n, d))
}

fn bounds(cli: &FamilyArgs, file: &FamilyArgs, default: FamilyBounds) -> anyhow::Result<FamilyBounds> {
    let mut b = default;
    if let Some(v) = cli.max_dim.or(file.max_dim) {
        b.max_dim = v;
    }
    if let Some(v) = cli.max_depth.as_ref().or(file.max_depth.as_ref()) {
        b.max_depth = parse_q(v).context("--max-depth")?;
    }
    if let Some(v) = cli.max_order.or(file.max_order) {
        b.max_order = v;
    }
    if let Some(v) = cli.unif_order.or(file.unif_order) {
        b.unif_order = v;
    }
    Ok(b)
}

fn default_p(s: Option<Scenario>) -> u64 {
    match s {
        Some(Scenario::So6 | Scenario::So2n) => 7,
        Some(Scenario::Better | Scenario::Ramakrishnan) => 13,
        _ => 5,
    }
}

fn check_precision(scene: &Scene, precision: Option<u32>) -> Result<(), Failure> {
    let Some(want) = precision else { return Ok(()) };
    let amb = scene.ambient(&[tamegamma::FieldSpec::base()])?;
    if want > amb.k {
        return Err(Failure::Precision(anyhow!("precision {want} exceeds the {} digits available at p = {}", amb.k, scene.p)));
    }
    Ok(())
}

fn parse_depths(s: &str) -> anyhow::Result<(i64, i64)> {
    let v: Vec<i64> = s.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().context("--depths")?;
    match v.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(anyhow!("--depths takes two comma-separated integers")),
    }
}

fn verify(args: &VerifyArgs, file: &FileConfig, scene: &Scene, fam: &FamilyBounds, params: &mut BTreeMap<String, Value>) -> Result<Report, Failure> {
    let perturb = args.perturb || file.perturb.unwrap_or(false);
    params.insert("perturb".into(), json!(perturb));
    let n = args.n.or(file.n);
    let report = match args.scenario {
        Scenario::Noncusp => {
            let n = n.unwrap_or(3);
            params.insert("N".into(), json!(n));
            build_noncusp(scene, n, fam, perturb)?
        }
        Scenario::Cusp => {
            let n = n.unwrap_or(4);
            let g = args.group.or(file.group).unwrap_or(GroupKind::Sp);
            params.insert("N".into(), json!(n));
            params.insert("group".into(), json!(g));
            let group = match g {
                GroupKind::Sp => Group::Sp(n),
                GroupKind::SoEven => Group::SOEven(n),
                GroupKind::SoOdd => Group::SOOdd(n),
            };
            build_cusp(scene, group, fam, perturb)?
        }
        Scenario::Better => {
            let n = n.unwrap_or(4);
            let par = args.parity.or(file.parity).unwrap_or(ParityArg::Orthogonal);
            let search = args.search_witness || file.search_witness.unwrap_or(false);
            params.insert("N".into(), json!(n));
            params.insert("parity".into(), json!(par));
            params.insert("search_witness".into(), json!(search));
            let parity = match par {
                ParityArg::Orthogonal => Parity::Orthogonal,
                ParityArg::Symplectic => Parity::Symplectic,
            };
            build_better(scene, n, parity, fam, perturb, search)?
        }
        Scenario::So6 => {
            let d = args.depths.as_ref().or(file.depths.as_ref()).map(|s| parse_depths(s)).transpose()?.unwrap_or((1, 3));
            params.insert("depths".into(), json!([d.0, d.1]));
            build_so6(scene, d, perturb)?
        }
        Scenario::So2n => {
            let n = n.unwrap_or(4);
            let m = args.m.or(file.m).unwrap_or(9);
            params.insert("N".into(), json!(n));
            params.insert("M".into(), json!(m));
            build_so2n(scene, n, m, perturb)?
        }
        Scenario::G2 => build_g2(scene, fam, perturb)?,
        Scenario::Ramakrishnan => {
            let b = args.beta.or(file.beta).unwrap_or(BetaArg::Deep);
            params.insert("beta".into(), json!(b));
            let which = match b {
                BetaArg::Deep => RamBeta::Deep,
                BetaArg::Shallow => RamBeta::Shallow,
            };
            build_ramakrishnan(scene, which, fam, perturb)?
        }
    };
    Ok(report)
}

fn scenario_body(report: &Report, config: &RunConfig) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            let mut v = json!({
                "name": c.name,
                "verdict": if c.passed { "pass" } else { "fail" },
                "detail": c.detail,
            });
            if let Some(w) = &c.witness {
                v["witness"] = json!(w);
            }
            v
        })
        .collect();
    json!({
        "scenario": report.scenario,
        "config": config,
        "params": report.params,
        "data": report.data,
        "checks": checks,
        "comparisons": report.comparisons,
        "notes": report.notes,
        "verdict": if report.passed { "pass" } else { "fail" },
    })
}

/// Writes `body` plus a timing block; the file appears atomically.
fn emit(out: Option<&Path>, mut body: Value, started: SystemTime, t0: Instant) -> anyhow::Result<()> {
    body["timing"] = json!({
        "started_unix_ms": started.duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0),
        "elapsed_ms": t0.elapsed().as_millis(),
    });
    let text = serde_json::to_string_pretty(&body)? + "\n";
    match out {
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
        Some(path) => {
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            std::fs::create_dir_all(dir)?;
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.persist(path).map_err(|e| e.error).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(())
}

#[derive(Deserialize)]
struct GammaInput {
    rep: WeilRep,
    twist: MultChar,
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let started = SystemTime::now();
    let t0 = Instant::now();
    let file: FileConfig = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => FileConfig::default(),
    };
    let scenario = match &cli.cmd {
        Cmd::Verify(a) => Some(a.scenario),
        _ => None,
    };
    let p = cli.p.or(file.p).unwrap_or_else(|| default_p(scenario));
    let precision = cli.precision.or(file.precision);
    let seed = cli.seed.or(file.seed).unwrap_or(1);
    let out = cli.out.clone().or(file.out.clone());
    let file_family = file.family.clone().unwrap_or_default();
    let scene = Scene::new(p)?;
    check_precision(&scene, precision)?;

    match &cli.cmd {
        Cmd::Verify(args) => {
            let default = match args.scenario {
                Scenario::Better => FamilyBounds::new(2, Q::from_integer(1), 4),
                _ => FamilyBounds::default(),
            };
            let fam = bounds(&cli.family, &file_family, default)?;
            let mut params = BTreeMap::new();
            let report = verify(args, &file, &scene, &fam, &mut params)?;
            let config = RunConfig { p, precision, seed, params, family: fam };
            for c in &report.checks {
                eprintln!("[{}] {}", if c.passed { "pass" } else { "FAIL" }, c.name);
            }
            eprintln!("{}: {}", report.scenario, if report.passed { "pass" } else { "fail" });
            emit(out.as_deref(), scenario_body(&report, &config), started, t0)?;
            Ok(report.passed)
        }
        Cmd::Gamma { input } => {
            let text = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
            let g: GammaInput = serde_json::from_str(&text).context("parsing the gamma input")?;
            let mut specs = g.rep.specs();
            specs.push(g.twist.field);
            let amb = scene.ambient(&specs)?;
            let l = amb.embed(&g.twist.field)?;
            let prod = amb.gamma_rep_twist(&g.rep, &l, &g.twist)?;
            let body = json!({
                "command": "gamma",
                "p": p,
                "rep": g.rep.to_string(),
                "twist": g.twist.to_string(),
                "lambdas": prod.lambdas,
                "factor": prod.factor.to_string(),
            });
            emit(out.as_deref(), body, started, t0)?;
            Ok(true)
        }
        Cmd::Family => {
            let fam = bounds(&cli.family, &file_family, FamilyBounds::default())?;
            let tf = TestFamily::build(&scene, &fam)?;
            let members: Vec<String> = tf.members.iter().map(|m| m.to_string()).collect();
            let body = json!({
                "command": "family",
                "p": p,
                "bounds": fam,
                "size": members.len(),
                "specs": (1..=fam.max_dim).flat_map(|n| constructions::tame_specs(p, n)).collect::<Vec<_>>(),
                "members": members,
            });
            emit(out.as_deref(), body, started, t0)?;
            Ok(true)
        }
        Cmd::Selftest => {
            let checks = selftest::run_all(seed);
            for c in &checks {
                eprintln!("[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
            }
            let passed = checks.iter().all(|c| c.passed);
            let body = json!({
                "command": "selftest",
                "seed": seed,
                "checks": checks,
                "verdict": if passed { "pass" } else { "fail" },
            });
            emit(out.as_deref(), body, started, t0)?;
            Ok(passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Precision(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
