//! `sftkit` command-line front end.
//!
//! Exit status: 0 yes / success, 1 no, 2 unknown (budget ran out), 64 usage
//! error, 65 malformed input, 74 I/O error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sftkit::constructions::{counter_layer, east_deterministic_base, kari_nw, robinson, y_k};
use sftkit::period::{
    bounded_lattice_refute, build_strip_graph, count_strong_with, horizontal_period_with, one_period, parse_walk, stabilizer,
    strong_period_exists, verify_one_period_walk, write_walk, CountMode, HorizontalStrategy, PatternSource, PeriodError, PeriodGroup,
    SearchBudget, Verdict, Witness, WitnessReport,
};
use sftkit::render::{render_ppm, render_svg, RenderOptions};
use sftkit::sft::{
    check_deterministic, is_locally_valid, parse_any, parse_torus, write_sft, write_torus, write_wang, DeterminismMode, SftError, SftSpec,
    TorusConfig,
};
use sftkit::tm::{compile_tm, count_accepting, count_tm_tilings, parse_tm, tm_period_sft, TmError};

const EXIT_NO: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 74;

#[derive(Parser, Debug)]
#[command(name = "sftkit", version, about = "Periodic points of multidimensional subshifts of finite type")]
struct Cli {
    #[command(flatten)]
    budget: BudgetArgs,
    /// Solver worker threads; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Append `seconds=` to report lines.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    #[arg(long, global = true, env = "SFTKIT_MAX_NODES", default_value_t = 10_000_000)]
    max_nodes: u64,
    #[arg(long, global = true, env = "SFTKIT_MAX_SECONDS", default_value_t = 60.0)]
    max_seconds: f64,
    #[arg(long, global = true, env = "SFTKIT_MAX_VERTICAL", default_value_t = 64)]
    max_vertical: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a period question; prints a report.
    Periods {
        #[command(subcommand)]
        kind: PeriodKind,
    },
    /// Number of orbits with period group exactly pℤ^d.
    Count {
        spec: PathBuf,
        #[arg(short, long)]
        p: usize,
        #[arg(long, value_enum, default_value_t = CountArg::Stabilizer)]
        mode: CountArg,
    },
    /// Write a generated tileset or SFT.
    Construct {
        /// robinson, kari-nw, east, counter:K, yk:K or tm-period:K
        name: String,
        /// Machine for tm-period.
        #[arg(long)]
        tm: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Draw a `%torus` configuration.
    Render {
        spec: PathBuf,
        torus: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        #[arg(long, default_value_t = 8)]
        scale: usize,
        /// Layer name or index that picks the colours.
        #[arg(long)]
        layer: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Export the strip graph G_{m,n} as DOT.
    Stripgraph {
        spec: PathBuf,
        #[arg(short)]
        m: i64,
        #[arg(short, allow_hyphen_values = true)]
        n: i64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compile a `%tm` machine to Wang tiles, or count bordered rectangle tilings.
    CompileTm {
        tm: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Count tilings of the (W+2)×T rectangle instead of writing tiles.
        #[arg(long, num_args = 2, value_names = ["W", "T"])]
        count: Option<Vec<usize>>,
        /// Input word for --count, tokens separated by spaces or one per character.
        #[arg(long, default_value = "")]
        input: String,
    },
    /// Check NW- or East-determinism of a radius-1 spec.
    CheckDet {
        spec: PathBuf,
        #[arg(value_enum)]
        mode: DetArg,
    },
    /// Search the fillings of ℤ^d modulo a lattice.
    RefuteLattice {
        spec: PathBuf,
        /// Generators, e.g. `2,0;1,3`.
        #[arg(long)]
        basis: String,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum PeriodKind {
    /// Period group exactly pℤ^d.
    Strong {
        spec: PathBuf,
        #[arg(short, long)]
        p: usize,
        #[command(flatten)]
        io: WitnessArgs,
    },
    /// Least horizontal period n.
    Horizontal {
        spec: PathBuf,
        #[arg(short, long)]
        n: i64,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        #[command(flatten)]
        io: WitnessArgs,
    },
    /// Period group exactly ℤ·(m, n).
    One {
        spec: PathBuf,
        #[arg(short, allow_hyphen_values = true)]
        m: i64,
        #[arg(short, allow_hyphen_values = true)]
        n: i64,
        #[command(flatten)]
        io: WitnessArgs,
    },
}

#[derive(Args, Debug)]
struct WitnessArgs {
    /// Write the witness of a yes answer here.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Check this witness file instead of searching.
    #[arg(long, conflicts_with = "witness")]
    verify: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CountArg {
    Stabilizer,
    LexMin,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Svg,
    Ppm,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DetArg {
    Nw,
    East,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Auto,
    Strip,
    Scan,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
    Io(String),
    Unknown(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Data(_) => EXIT_DATA,
            Failure::Io(_) => EXIT_IO,
            Failure::Unknown(_) => EXIT_UNKNOWN,
        }
    }
}

impl From<SftError> for Failure {
    fn from(e: SftError) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<TmError> for Failure {
    fn from(e: TmError) -> Self {
        match e {
            TmError::Unsupported(m) => Failure::Usage(m),
            other => Failure::Data(other.to_string()),
        }
    }
}

impl From<PeriodError> for Failure {
    fn from(e: PeriodError) -> Self {
        match e {
            PeriodError::Sft(e) => e.into(),
            PeriodError::InvalidArgument(m) => Failure::Usage(m),
            e @ PeriodError::BudgetExhausted { .. } => Failure::Unknown(e.to_string()),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<SftSpec, Failure> {
    parse_any(&read(path)?).and_then(|p| p.into_sft()).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, bytes).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(bytes).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Yes => 0,
        Verdict::No => EXIT_NO,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn report(spec: &SftSpec, r: &WitnessReport, timing: bool, witness: Option<&Path>) -> Outcome {
    print!("{}", r.render(spec, timing));
    if let (Some(path), Some(w)) = (witness, &r.witness) {
        let text = match w {
            Witness::Torus(t) => write_torus(t, spec),
            Witness::Walk(w) => write_walk(w, spec),
        };
        emit(Some(path), text.as_bytes())?;
    }
    Ok(verdict_code(r.verdict))
}

/// Prints `valid` or `invalid: <reason>`.
fn verified(check: Result<(), String>) -> Outcome {
    match check {
        Ok(()) => {
            println!("valid");
            Ok(0)
        }
        Err(why) => {
            println!("invalid: {why}");
            Ok(EXIT_NO)
        }
    }
}

fn valid_torus(spec: &SftSpec, t: &TorusConfig) -> Result<(), String> {
    let v = is_locally_valid(t, spec).map_err(|e| e.to_string())?;
    match v.first() {
        None => Ok(()),
        Some(first) => Err(format!("{} violations, first at {:?}", v.len(), first.position)),
    }
}

fn verify_strong(spec: &SftSpec, t: &TorusConfig, p: usize) -> Result<(), String> {
    if t.dims().iter().any(|&d| d != p) {
        return Err(format!("torus is not a {p}-cube"));
    }
    valid_torus(spec, t)?;
    if stabilizer(t) != PeriodGroup::scaled(spec.dim(), p as i64) {
        return Err("period group is larger than pℤ^d".into());
    }
    Ok(())
}

fn verify_horizontal(spec: &SftSpec, t: &TorusConfig, n: i64) -> Result<(), String> {
    if spec.dim() != 2 || t.dims()[0] as i64 != n {
        return Err(format!("torus width is not {n}"));
    }
    valid_torus(spec, t)?;
    let g = stabilizer(t);
    if let Some(k) = (1..n).find(|&k| g.contains(&[k, 0])) {
        return Err(format!("horizontal period {k} divides the torus width"));
    }
    Ok(())
}

fn budget_of(cli: &Cli) -> SearchBudget {
    SearchBudget { max_nodes: cli.budget.max_nodes, max_seconds: cli.budget.max_seconds, max_vertical: cli.budget.max_vertical }
}

fn periods(kind: &PeriodKind, budget: &SearchBudget, timing: bool) -> Outcome {
    match kind {
        PeriodKind::Strong { spec, p, io } => {
            let sft = load_spec(spec)?;
            if let Some(path) = &io.verify {
                let t = parse_torus(&read(path)?, &sft)?;
                return verified(verify_strong(&sft, &t, *p));
            }
            report(&sft, &strong_period_exists(&sft, *p, budget)?, timing, io.witness.as_deref())
        }
        PeriodKind::Horizontal { spec, n, strategy, io } => {
            let sft = load_spec(spec)?;
            if let Some(path) = &io.verify {
                let t = parse_torus(&read(path)?, &sft)?;
                return verified(verify_horizontal(&sft, &t, *n));
            }
            let strategy = match strategy {
                StrategyArg::Auto => HorizontalStrategy::Auto,
                StrategyArg::Strip => HorizontalStrategy::StripGraph,
                StrategyArg::Scan => HorizontalStrategy::TorusScan,
            };
            report(&sft, &horizontal_period_with(&sft, *n, strategy, budget)?, timing, io.witness.as_deref())
        }
        PeriodKind::One { spec, m, n, io } => {
            let sft = load_spec(spec)?;
            if let Some(path) = &io.verify {
                let w = parse_walk(&read(path)?, &sft)?;
                if (w.m, w.n) != (*m, *n) && (w.m, w.n) != (-*m, -*n) && !w.transpose && !w.reflect {
                    return verified(Err("walk is for another vector".into()));
                }
                let ok = verify_one_period_walk(&sft, &w, budget)?;
                return verified(if ok { Ok(()) } else { Err("walk fails the path conditions".into()) });
            }
            report(&sft, &one_period(&sft, *m, *n, budget)?, timing, io.witness.as_deref())
        }
    }
}

fn construct(name: &str, tm: Option<&Path>) -> Result<String, Failure> {
    let k_of = |s: &str| s.parse::<u32>().map_err(|_| Failure::Usage(format!("bad counter base `{s}`")));
    Ok(match name.split_once(':') {
        None if name == "robinson" => write_wang(&robinson()),
        None if name == "kari-nw" => write_wang(&kari_nw()),
        None if name == "east" => write_sft(&east_deterministic_base()),
        Some(("counter", k)) => write_sft(&counter_layer(k_of(k)?)?),
        Some(("yk", k)) => write_sft(&y_k(k_of(k)?)?.product()?),
        Some(("tm-period", k)) => {
            let path = tm.ok_or_else(|| Failure::Usage("tm-period needs --tm".into()))?;
            let machine = parse_tm(&read(path)?)?;
            write_sft(&tm_period_sft(&machine, k_of(k)?)?)
        }
        _ => return Err(Failure::Usage(format!("unknown construction `{name}`"))),
    })
}

fn parse_basis(text: &str, dim: usize) -> Result<PeriodGroup, Failure> {
    let gens = text
        .split(';')
        .map(|g| g.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Usage(format!("bad basis `{text}`")))?;
    if gens.iter().any(|g| g.len() != dim) {
        return Err(Failure::Usage(format!("basis vectors must have {dim} entries")));
    }
    Ok(PeriodGroup::from_generators(dim, &gens))
}

fn run(cli: &Cli) -> Outcome {
    let budget = budget_of(cli);
    match &cli.command {
        Command::Periods { kind } => periods(kind, &budget, cli.timing),
        Command::Count { spec, p, mode } => {
            let sft = load_spec(spec)?;
            let mode = match mode {
                CountArg::Stabilizer => CountMode::Stabilizer,
                CountArg::LexMin => CountMode::LexMin,
            };
            println!("{}", count_strong_with(&sft, *p, mode, &budget)?);
            Ok(0)
        }
        Command::Construct { name, tm, out } => {
            emit(out.as_deref(), construct(name, tm.as_deref())?.as_bytes())?;
            Ok(0)
        }
        Command::Render { spec, torus, format, scale, layer, out } => {
            let sft = load_spec(spec)?;
            let t = parse_torus(&read(torus)?, &sft)?;
            let layer = match layer {
                None => 0,
                Some(l) => l.parse::<usize>().ok().or_else(|| sft.layer_index(l)).ok_or_else(|| Failure::Usage(format!("no layer `{l}`")))?,
            };
            let opts = RenderOptions { scale: *scale, layer };
            let bytes = match format {
                Format::Svg => render_svg(&t, &sft, &opts)?.into_bytes(),
                Format::Ppm => render_ppm(&t, &sft, &opts)?,
            };
            emit(out.as_deref(), &bytes)?;
            Ok(0)
        }
        Command::Stripgraph { spec, m, n, out } => {
            let sft = load_spec(spec)?;
            let g = build_strip_graph(&sft, *m, *n, &budget)?;
            emit(out.as_deref(), g.to_dot(&sft).as_bytes())?;
            Ok(0)
        }
        Command::CompileTm { tm, out, count, input } => {
            let machine = parse_tm(&read(tm)?)?;
            let tiles = compile_tm(&machine);
            match count.as_deref() {
                None => emit(out.as_deref(), write_wang(&tiles).as_bytes())?,
                Some(&[w, t]) => {
                    let word = machine.word(input)?;
                    if word.len() > w || w == 0 || t == 0 {
                        return Err(Failure::Usage("the input must fit W ≥ 1 cells and T must be positive".into()));
                    }
                    let tilings = count_tm_tilings(&machine, &tiles, w, t, &word);
                    let runs = count_accepting(&machine, &word, t, w)?;
                    let text = format!("tilings={tilings} accepted_runs={runs}\n");
                    emit(out.as_deref(), text.as_bytes())?;
                }
                Some(_) => unreachable!("clap takes exactly two values"),
            }
            Ok(0)
        }
        Command::CheckDet { spec, mode } => {
            let sft = load_spec(spec)?;
            let mode = match mode {
                DetArg::Nw => DeterminismMode::NorthWest,
                DetArg::East => DeterminismMode::East,
            };
            let d = check_deterministic(&sft, mode)?;
            match d.counterexample {
                None => {
                    println!("deterministic");
                    Ok(0)
                }
                Some(c) => {
                    println!("not deterministic: a={} b={} c={} or {}", sft.token(&c.a), sft.token(&c.b), sft.token(&c.c1), sft.token(&c.c2));
                    Ok(EXIT_NO)
                }
            }
        }
        Command::RefuteLattice { spec, basis, witness } => {
            let sft = load_spec(spec)?;
            let g = parse_basis(basis, sft.dim())?;
            let r = bounded_lattice_refute(PatternSource::Spec(&sft), &g, &budget)?;
            report(&sft, &r, cli.timing, witness.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if cli.threads == 0 {
        eprintln!("sftkit: --threads must be positive");
        return ExitCode::from(EXIT_USAGE);
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
        eprintln!("sftkit: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) | Failure::Data(m) | Failure::Io(m) | Failure::Unknown(m) => m,
            };
            if let Failure::Unknown(_) = f {
                println!("verdict=unknown");
            }
            eprintln!("sftkit: {msg}");
            ExitCode::from(f.code())
        }
    }
}
