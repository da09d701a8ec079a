use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use advice_core::engine::algorithms::{opt_bitmap, AcceptAll, BitmapAdvice, Greedy, RejectAll, SeededPreemptive};
use advice_core::engine::tape::parse_bits;
use advice_core::engine::{run_game, AdviceTape, ObjectiveKind, OnlineAlgorithm, OnlineInstance, Preemption};
use advice_core::error::Error;
use advice_core::exact_advice::{
    bits_vs_ratio_curve, default_grid, min_advice_bits_with, replay, InstanceFamily, SearchOrder, Target, SEARCH_BUDGET,
};
use advice_core::fixtures::{construct, verify, FixtureKind, FixtureParams, Sidecar};
use advice_core::guessing::bounds::{canonical_formula, evaluate, BoundParams, BoundReport, CParam, CSV_HEADER};
use advice_core::guessing::Variant;
use advice_core::property::builtin;
use advice_core::reductions::obligatory::{obligatory_advice, ObligatorySubgraphAlgorithm};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Overrides the default search and sampling budgets.
const BUDGET_ENV: &str = "ADVICE_LAB_BUDGET";

const ALL_FORMULAS: &[&str] = &[
    "F",
    "entropy",
    "sgkh",
    "anti-sgkh",
    "Bc",
    "maxasg",
    "preemptive-maxpi",
    "preemptive-indset",
    "indset-alpha",
    "h-of-c",
    "anti-maxpi",
];

#[derive(Parser)]
#[command(name = "advice-lab", version, about = "Online induced-subgraph problems with advice")]
struct Cli {
    /// Seed for every random choice of the run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate closed-form advice bounds.
    Bounds(BoundsArgs),
    /// Build a fixture and write the instance plus a JSON sidecar.
    Construct(ConstructArgs),
    /// Re-derive every sidecar claim from scratch.
    Verify(VerifyArgs),
    /// Play one online game and write the transcript.
    Simulate(SimulateArgs),
    /// Exact minimum advice for a small instance family.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct BoundsArgs {
    /// Formula id or alias; repeat or separate by commas. `all` lists every formula.
    #[arg(long, required = true, value_delimiter = ',')]
    formula: Vec<String>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// A number, or a table `n:c,n:c,...`.
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    n: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    kappa1: Option<f64>,
    #[arg(long)]
    kappa2: Option<f64>,
    #[arg(long)]
    nprime: Option<f64>,
    #[arg(long)]
    x: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    /// marked, layered, clique-layers, anti or ramsey (aliases thm5, thm8, appendix, thm10).
    #[arg(long)]
    kind: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    sigma: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Number of layers for clique-layers.
    #[arg(long)]
    nprime: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    kappa1: Option<f64>,
    #[arg(long)]
    kappa2: Option<f64>,
    #[arg(long)]
    property: Option<String>,
    #[arg(long)]
    budget: Option<usize>,
    /// Source string as digits, e.g. 0101 or 1,3,2.
    #[arg(long)]
    string: Option<String>,
    /// Instance file; the sidecar goes next to it unless --sidecar is given.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    RejectAll,
    AcceptAll,
    Greedy,
    Bitmap,
    SeededPreemptive,
    Obligatory,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Plain,
    Preemptive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Objective {
    Max,
    Min,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum)]
    alg: Algorithm,
    #[arg(long, default_value = "independent-set")]
    property: String,
    /// Defaults to preemptive for seeded-preemptive, plain otherwise.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Defaults to min for cohereditary properties, max otherwise.
    #[arg(long, value_enum)]
    objective: Option<Objective>,
    /// Advice bits as a 0/1 string.
    #[arg(long, conflicts_with_all = ["advice_file", "oracle_advice"])]
    advice: Option<String>,
    #[arg(long, conflicts_with = "oracle_advice")]
    advice_file: Option<PathBuf>,
    /// Let the offline oracle write the advice (bitmap and obligatory).
    #[arg(long)]
    oracle_advice: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// sgkh, anti-sgkh, maxasg-known, maxasg-blind or maxpi.
    #[arg(long)]
    game: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    sigma: u32,
    /// Target ratio: an integer, a fraction such as 3/2, or inf.
    #[arg(long, default_value = "1")]
    c: String,
    /// Property for the maxpi game.
    #[arg(long, default_value = "independent-set")]
    property: String,
    /// Emit the bits-versus-ratio curve over the default grid instead.
    #[arg(long)]
    curve: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bounds(a) => cmd_bounds(a),
        Command::Construct(a) => cmd_construct(a, cli.seed),
        Command::Verify(a) => cmd_verify(a),
        Command::Simulate(a) => cmd_simulate(a, cli.seed),
        Command::Oracle(a) => cmd_oracle(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("advice-lab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Unverified(_) | Error::Soundness(_) => 3,
        Error::Resource(_) => 4,
        _ => 2,
    }
}

fn env_budget() -> Result<Option<u64>, Error> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| Error::Input(format!("{BUDGET_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Input(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => {
            let mut stdout = io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(io_err(Path::new("stdout"), e)),
                _ => Ok(()),
            }
        }
    }
}

fn parse_c(text: &str) -> Result<CParam, Error> {
    if text.contains(':') {
        let mut table = BTreeMap::new();
        for entry in text.split(',') {
            let (n, c) = entry.split_once(':').ok_or_else(|| Error::Input(format!("bad c table entry {entry:?}")))?;
            let n = n.trim().parse().map_err(|_| Error::Input(format!("bad n in c table entry {entry:?}")))?;
            let c = c.trim().parse().map_err(|_| Error::Input(format!("bad c in c table entry {entry:?}")))?;
            table.insert(n, c);
        }
        Ok(CParam::Table(table))
    } else {
        text.trim().parse().map(CParam::Scalar).map_err(|_| Error::Input(format!("c must be a number or n:c table, got {text:?}")))
    }
}

fn cmd_bounds(a: BoundsArgs) -> Result<u8, Error> {
    let params = BoundParams {
        sigma: a.sigma,
        gamma: a.gamma,
        c: a.c.as_deref().map(parse_c).transpose()?,
        n: a.n,
        k: a.k,
        kappa1: a.kappa1,
        kappa2: a.kappa2,
        nprime: a.nprime,
        x: a.x,
    };
    let ids: Vec<String> = if a.formula.iter().any(|f| f == "all") {
        ALL_FORMULAS.iter().map(|s| s.to_string()).collect()
    } else {
        a.formula.clone()
    };
    let mut rows: Vec<BoundReport> = Vec::new();
    let mut failed = false;
    for id in &ids {
        match canonical_formula(id).and_then(|_| evaluate(id, &params)) {
            Ok(r) => rows.push(r),
            Err(e) => {
                failed = true;
                eprintln!("{id}: {e}");
            }
        }
    }
    let text = match a.format {
        Format::Csv => {
            let mut s = format!("{CSV_HEADER}\n");
            for r in &rows {
                s.push_str(&r.csv_row());
                s.push('\n');
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(&rows).expect("reports serialize") + "\n",
    };
    emit(a.out.as_deref(), &text)?;
    Ok(if failed { 2 } else { 0 })
}

fn parse_string(text: &str) -> Result<Vec<u32>, Error> {
    let parts: Vec<&str> = if text.contains(',') { text.split(',').collect() } else { text.split("").filter(|s| !s.is_empty()).collect() };
    parts
        .iter()
        .map(|p| p.trim().parse().map_err(|_| Error::Input(format!("bad symbol {p:?} in string"))))
        .collect()
}

fn sidecar_path(instance: &Path) -> PathBuf {
    instance.with_extension("sidecar.json")
}

fn cmd_construct(a: ConstructArgs, seed: u64) -> Result<u8, Error> {
    let kind = FixtureKind::parse(&a.kind)?;
    let mut p = FixtureParams::new(kind, seed);
    p.n = a.n;
    p.sigma = a.sigma;
    p.k = a.k;
    p.alpha = a.alpha;
    p.kappa1 = a.kappa1;
    p.kappa2 = a.kappa2;
    p.property = a.property;
    p.budget = match a.budget {
        Some(b) => Some(b),
        None => env_budget()?.map(|b| b as usize),
    };
    p.string = a.string.as_deref().map(parse_string).transpose()?;
    if let Some(layers) = a.nprime {
        if kind != FixtureKind::CliqueLayers {
            return Err(Error::Input("--nprime applies to clique-layers only; use --n and --sigma".into()));
        }
        p.n = Some(layers * p.sigma.unwrap_or(3));
    }
    let fixture = construct(&p)?;
    fs::write(&a.out, fixture.instance.to_text()).map_err(|e| io_err(&a.out, e))?;
    let side = a.sidecar.unwrap_or_else(|| sidecar_path(&a.out));
    fs::write(&side, fixture.sidecar.to_json() + "\n").map_err(|e| io_err(&side, e))?;
    for c in &fixture.sidecar.certificates {
        eprintln!("{} {}: {}", if c.holds { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    Ok(if fixture.sidecar.all_hold() { 0 } else { 3 })
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Error> {
    let instance = read(&a.instance)?;
    let side_path = a.sidecar.unwrap_or_else(|| sidecar_path(&a.instance));
    let sidecar = Sidecar::from_json(&read(&side_path)?)?;
    let report = verify(&instance, &sidecar)?;
    let lines: String =
        report.checks.iter().map(|c| format!("{} {}: {}\n", if c.holds { "ok  " } else { "FAIL" }, c.name, c.detail)).collect();
    emit(None, &lines)?;
    Ok(if report.ok() { 0 } else { 3 })
}

fn cmd_simulate(a: SimulateArgs, seed: u64) -> Result<u8, Error> {
    let inst = OnlineInstance::from_text(&read(&a.instance)?)?;
    let property = builtin::by_name(&a.property)?;
    let mode = match a.mode {
        Some(Mode::Plain) => Preemption::Plain,
        Some(Mode::Preemptive) => Preemption::Preemptive,
        None if a.alg == Algorithm::SeededPreemptive => Preemption::Preemptive,
        None => Preemption::Plain,
    };
    let objective = match a.objective {
        Some(Objective::Max) => ObjectiveKind::Max,
        Some(Objective::Min) => ObjectiveKind::Min,
        None if property.is_hereditary() => ObjectiveKind::Max,
        None => ObjectiveKind::Min,
    };
    let advice = if let Some(bits) = &a.advice {
        parse_bits(bits)?
    } else if let Some(path) = &a.advice_file {
        parse_bits(read(path)?.trim())?
    } else if a.oracle_advice {
        match a.alg {
            Algorithm::Bitmap => opt_bitmap(&inst, &property)?,
            Algorithm::Obligatory => obligatory_advice(&inst, &property)?,
            _ => return Err(Error::Input("--oracle-advice applies to bitmap and obligatory".into())),
        }
    } else {
        Vec::new()
    };
    let mut alg: Box<dyn OnlineAlgorithm> = match a.alg {
        Algorithm::RejectAll => Box::new(RejectAll),
        Algorithm::AcceptAll => Box::new(AcceptAll),
        Algorithm::Greedy => Box::new(Greedy::new(property.clone())),
        Algorithm::Bitmap => Box::new(BitmapAdvice),
        Algorithm::SeededPreemptive => Box::new(SeededPreemptive::new(property.clone(), seed)),
        Algorithm::Obligatory => Box::new(ObligatorySubgraphAlgorithm::new(property.clone())?),
    };
    let mut tape = AdviceTape::new(advice);
    let t = run_game(&inst, alg.as_mut(), &property, mode, &mut tape, objective)?;
    emit(a.out.as_deref(), &(t.to_json() + "\n"))?;
    Ok(0)
}

fn cmd_oracle(a: OracleArgs) -> Result<u8, Error> {
    let fam = if a.game == "maxpi" {
        InstanceFamily::all_graphs(builtin::by_name(&a.property)?, a.n)?
    } else {
        let v = Variant::parse(&a.game)?;
        let sigma = if v.is_maxasg() { 2 } else { a.sigma };
        InstanceFamily::all_strings(v, sigma, a.n)?
    };
    let budget = env_budget()?.unwrap_or(SEARCH_BUDGET);
    let mut code = 0;
    let text = if a.curve {
        let curve = bits_vs_ratio_curve(&fam, &default_grid())?;
        let rows: Vec<serde_json::Value> =
            curve.iter().map(|(c, bits)| serde_json::json!({"c": c.to_string(), "bits": bits})).collect();
        serde_json::to_string_pretty(&rows).expect("curve serializes")
    } else {
        let target = Target::parse(&a.c)?;
        let r = min_advice_bits_with(&fam, target, SearchOrder::LargestFirst, budget)?;
        replay(&fam, &r, target)?;
        if !r.optimal {
            eprintln!("search budget {budget} exhausted; the cover is not certified minimal");
            code = 4;
        }
        serde_json::to_string_pretty(&r).expect("cover serializes")
    };
    emit(a.out.as_deref(), &(text + "\n"))?;
    Ok(code)
}
