use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symqubit::models::{Family, ImbExponent, ModelSpec};
use symqubit::separability::classify;

use symqubit_cli::report::{classification_json, classification_text, invariants_report};
use symqubit_cli::selftest::{self, Suite};
use symqubit_cli::statefile::{load_density, StateFile};
use symqubit_cli::sweep::{self, DickeM};
use symqubit_cli::Failure;

#[derive(Parser)]
#[command(name = "symq", version, about = "Entanglement invariants of two-qubit and symmetric states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the 18 local-unitary invariants of a state file
    Invariants(InputArgs),
    /// Classify a symmetric state as separable or entangled
    Classify(InputArgs),
    /// Write the pair state of a model family
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Evaluate a model family over a parameter grid
    Sweep(SweepArgs),
    /// Run the seeded property suites
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct InputArgs {
    /// State file (JSON)
    input: PathBuf,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args)]
struct Output {
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenerateCommand {
    Dicke {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        m: f64,
        #[command(flatten)]
        output: Output,
    },
    Oat {
        #[arg(long)]
        n: usize,
        /// Accumulated phase χt in radians
        #[arg(long, allow_negative_numbers = true)]
        chit: f64,
        /// Use the exponent N−1 in Im b as originally printed
        #[arg(long)]
        paper_literal: bool,
        #[command(flatten)]
        output: Output,
    },
    Ising {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        chit: f64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Dicke,
    Oat,
    Ising,
}

#[derive(Args)]
struct SweepArgs {
    family: FamilyArg,
    /// Qubit counts: `4,8,16` or `start:stop[:step]`
    #[arg(long)]
    n: String,
    /// Dicke M values, comma separated
    #[arg(long, allow_hyphen_values = true, conflicts_with = "m_frac")]
    m: Option<String>,
    /// Dicke M as a fraction of N
    #[arg(long)]
    m_frac: Option<f64>,
    /// χt values in radians, comma separated
    #[arg(long, allow_hyphen_values = true, conflicts_with = "chit_range")]
    chit: Option<String>,
    /// Evenly spaced χt: `start,stop,count`
    #[arg(long, allow_hyphen_values = true)]
    chit_range: Option<String>,
    /// Exclude the endpoints of --chit-range
    #[arg(long, requires = "chit_range")]
    interior: bool,
    #[arg(long)]
    paper_literal: bool,
    /// Write rows as JSON instead of CSV
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    Invariance,
    Positivity,
    XformEquivalence,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    /// Where to write a counterexample on failure
    #[arg(long, default_value = "selftest-counterexample.json")]
    out: PathBuf,
    #[arg(long, hide = true)]
    inject_fault: Option<FaultArg>,
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialise") + "\n"
}

fn check_tol(tol: f64) -> Result<f64, Failure> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(Failure::validation(format!("--tol must be positive, got {tol}")))
    }
}

fn cmd_invariants(args: &InputArgs) -> Result<(), Failure> {
    let tol = check_tol(args.tol)?;
    let report = invariants_report(&load_density(&args.input)?, tol)?;
    let text = if args.json { pretty(&report.to_json()) } else { report.to_text() };
    emit(&text, None)
}

fn cmd_classify(args: &InputArgs) -> Result<(), Failure> {
    let tol = check_tol(args.tol)?;
    let c = classify(&load_density(&args.input)?, tol)?;
    let text = if args.json { pretty(&classification_json(&c)) } else { classification_text(&c) };
    emit(&text, None)
}

fn cmd_generate(cmd: &GenerateCommand) -> Result<(), Failure> {
    let (spec, exponent, output) = match cmd {
        GenerateCommand::Dicke { n, m, output } => (ModelSpec::dicke(*n, *m)?, ImbExponent::default(), output),
        GenerateCommand::Oat { n, chit, paper_literal, output } => {
            let exponent = if *paper_literal { ImbExponent::NMinusOne } else { ImbExponent::NMinusTwo };
            (ModelSpec::Oat { n: *n, chi_t: *chit }, exponent, output)
        }
        GenerateCommand::Ising { n, chit, output } => {
            (ModelSpec::Ising { n: *n, chi_t: *chit }, ImbExponent::default(), output)
        }
    };
    spec.validate()?;
    for w in spec.warnings() {
        eprintln!("warning: {w}");
    }
    let pair = spec.pair(exponent)?;
    emit(&StateFile::from_xform(&pair).to_json(), output.out.as_deref())
}

fn chi_t_values(args: &SweepArgs) -> Result<Vec<f64>, Failure> {
    if let Some(list) = &args.chit {
        return sweep::parse_real_list(list);
    }
    let Some(range) = &args.chit_range else {
        return Err(Failure::validation("OAT and Ising sweeps need --chit or --chit-range"));
    };
    let parts: Vec<&str> = range.split(',').collect();
    let bad = || Failure::validation(format!("invalid --chit-range {range:?} (expected start,stop,count)"));
    let [start, stop, count] = parts.as_slice() else { return Err(bad()) };
    let start: f64 = start.trim().parse().map_err(|_| bad())?;
    let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    if count == 0 || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    Ok(sweep::linspace(start, stop, count, args.interior))
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), Failure> {
    let tol = check_tol(args.tol)?;
    let ns = sweep::parse_int_grid(&args.n)?;
    let grid = match args.family {
        FamilyArg::Dicke => {
            if args.chit.is_some() || args.chit_range.is_some() {
                return Err(Failure::validation("Dicke sweeps take --m or --m-frac, not chi_t"));
            }
            let m = match (&args.m, args.m_frac) {
                (Some(list), _) => DickeM::Values(sweep::parse_real_list(list)?),
                (None, Some(f)) => DickeM::Fraction(f),
                (None, None) => DickeM::All,
            };
            sweep::dicke_grid(&ns, &m)?
        }
        FamilyArg::Oat => sweep::timed_grid(Family::Oat, &ns, &chi_t_values(args)?)?,
        FamilyArg::Ising => sweep::timed_grid(Family::Ising, &ns, &chi_t_values(args)?)?,
    };
    if let Some(w) = grid.iter().flat_map(ModelSpec::warnings).next() {
        eprintln!("warning: {w}");
    }
    let exponent = if args.paper_literal { ImbExponent::NMinusOne } else { ImbExponent::NMinusTwo };
    let rows = sweep::run(&grid, exponent, tol)?;
    let text = if args.json { sweep::to_json(&rows) } else { sweep::to_csv(&rows) };
    emit(&text, args.output.out.as_deref())
}

fn cmd_selftest(args: &SelftestArgs) -> Result<(), Failure> {
    let fault = args.inject_fault.map(|f| match f {
        FaultArg::Invariance => Suite::Invariance,
        FaultArg::Positivity => Suite::Positivity,
        FaultArg::XformEquivalence => Suite::Equivalence,
    });
    let reports = selftest::run(args.seed, args.count, fault);
    emit(&selftest::summary(args.seed, args.count, &reports), None)?;
    let Some(failed) = reports.iter().find(|r| !r.passed()) else { return Ok(()) };
    let ce = failed.first_failure.as_ref().expect("failing suites record a counterexample");
    StateFile::from_matrix(ce.state.matrix()).write(&args.out)?;
    Err(Failure::property(format!(
        "{} failed at sample {}: {}; state written to {}",
        failed.suite.name(),
        ce.index,
        ce.detail,
        args.out.display()
    )))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Invariants(a) => cmd_invariants(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Generate(g) => cmd_generate(g),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Selftest(a) => cmd_selftest(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
