use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fssp_core::cni::{cni_verdict, hand_status};
use fssp_core::extension::fg_table;
use fssp_core::grid::render_ascii;
use fssp_core::mft::{is_safe, mft_formula, mft_localmap, FormulaOutcome, Limits, MftResult, Safeness, Witness};
use fssp_core::solution::{
    build_cc, build_reflection, format_big, simulate_cc, simulate_lm, simulate_reflection, state_bounds,
    StateBoundKind, PATH_WRAPPER, REGION_WRAPPER,
};
use fssp_core::{parse_config, Config, Error, PathConfig, Variation};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "fssp", version, about = "Minimum firing times of grid path and region configurations")]
struct Cli {
    /// Worker threads for f/g tables.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Maximum configurations one search may generate.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_nodes: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Configuration file, one record per line; `-` reads stdin.
    file: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariationArg {
    #[value(name = "2path")]
    TwoPath,
    #[value(name = "g2path")]
    GTwoPath,
    #[value(name = "line-ab")]
    LineAb,
    #[value(name = "2reg")]
    TwoReg,
}

impl From<VariationArg> for Variation {
    fn from(v: VariationArg) -> Self {
        match v {
            VariationArg::TwoPath => Variation::TwoPath,
            VariationArg::GTwoPath => Variation::GTwoPath,
            VariationArg::LineAb => Variation::LineAb,
            VariationArg::TwoReg => Variation::TwoReg,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Localmap,
    Formula,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolutionKind {
    Ref,
    Cc,
    Lm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Spec,
    Simulate,
    Bounds,
}

#[derive(Subcommand)]
enum Command {
    /// Check each record against the configuration invariants.
    Validate(Input),
    /// Draw each record, general as G.
    Render(Input),
    /// Minimum firing time.
    Mft {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "g2path")]
        variation: VariationArg,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Print the safeness chain or the minimizing windows.
        #[arg(long)]
        trace: bool,
    },
    /// Decide noninterference of extensions.
    Cni(Input),
    /// Hand status and type.
    Classify(Input),
    /// f, g and h for every window, tab separated.
    Fgtable(Input),
    /// Equivalence class at time t.
    Equivclass {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "g2path")]
        variation: VariationArg,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        trace: bool,
    },
    /// Build and run a partial solution.
    Solution {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        kind: SolutionKind,
        #[arg(long, value_enum, default_value = "g2path")]
        variation: VariationArg,
        /// Configurations to simulate on; defaults to the input itself.
        #[arg(long)]
        on: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "spec")]
        emit: Emit,
        /// Horizon of the local-map solution; defaults to the minimum firing time.
        #[arg(long)]
        t: Option<u32>,
    },
    /// State-count bounds for a horizon.
    Bounds {
        #[arg(long)]
        t: u32,
        /// reg-lm, gpath-lm, path-lm, ref-gpath, ref-path or cc:<n>
        #[arg(long)]
        kind: String,
    },
}

enum Failure {
    Usage(String),
    Budget(u64),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { limit } => Failure::Budget(limit),
            Error::Unsupported(m) => Failure::Usage(format!("UNSUPPORTED: {m}")),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Run = Result<bool, Failure>;

fn read_records(path: &PathBuf) -> Result<Vec<String>, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
    };
    Ok(text.lines().filter(|l| !l.trim().is_empty()).map(str::to_owned).collect())
}

fn configs(path: &PathBuf) -> Result<Vec<Config>, Failure> {
    read_records(path)?.iter().map(|l| parse_config(l).map_err(Failure::from)).collect()
}

fn as_path(c: &Config) -> Result<&PathConfig, Failure> {
    c.as_path().ok_or_else(|| Failure::Usage("this command needs a PATH configuration".into()))
}

fn member(c: &Config, gamma: Variation) -> Result<(), Failure> {
    if gamma.member(c) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("configuration {c} is not in {gamma}")))
    }
}

fn validate(out: &mut impl Write, input: &Input) -> Run {
    let mut ok = true;
    for line in read_records(&input.file)? {
        match parse_config(&line) {
            Ok(_) => writeln!(out, "VALID")?,
            Err(Error::Invalid(v)) => {
                ok = false;
                writeln!(out, "INVALID {v}")?;
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(ok)
}

fn print_mft(out: &mut impl Write, m: &MftResult, trace: bool) -> io::Result<()> {
    writeln!(out, "MFT {} METHOD {}", m.value, m.method)?;
    if !trace {
        return Ok(());
    }
    match &m.witness {
        Witness::Windows(ws) => {
            for w in ws {
                writeln!(out, "WINDOW {w}")?;
            }
        }
        Witness::Search { chain, class_size } => {
            if let Some(chain) = chain {
                writeln!(out, "CHAIN t={}", chain.t)?;
                for c in &chain.configs {
                    writeln!(out, "{c}")?;
                }
            }
            writeln!(out, "CLASS {class_size}")?;
        }
        Witness::None => {}
    }
    Ok(())
}

fn mft(out: &mut impl Write, input: &Input, gamma: Variation, method: MethodArg, trace: bool, limits: &Limits) -> Run {
    let formula_ok = matches!(gamma, Variation::TwoPath | Variation::GTwoPath);
    if method == MethodArg::Formula && !formula_ok {
        return Err(Failure::Usage(format!("no closed form for {gamma}")));
    }
    for c in configs(&input.file)? {
        member(&c, gamma)?;
        if method != MethodArg::Localmap && formula_ok {
            match mft_formula(as_path(&c)?) {
                FormulaOutcome::Exact(m) => {
                    print_mft(out, &m, trace)?;
                    continue;
                }
                FormulaOutcome::Inconclusive { lower, upper, .. } if method == MethodArg::Formula => {
                    writeln!(out, "MFT INCONCLUSIVE LOWER {lower} UPPER {upper}")?;
                    continue;
                }
                FormulaOutcome::Inconclusive { .. } => {}
            }
        }
        print_mft(out, &mft_localmap(&c, gamma, limits)?, trace)?;
    }
    Ok(true)
}

fn cni(out: &mut impl Write, input: &Input) -> Run {
    let mut ok = true;
    for c in configs(&input.file)? {
        let report = cni_verdict(as_path(&c)?);
        if report.verdict {
            writeln!(out, "CNI SATISFIED")?;
            continue;
        }
        ok = false;
        writeln!(out, "CNI VIOLATED")?;
        for f in &report.failures {
            let cells = |x: &[fssp_core::Position]| x.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
            writeln!(
                out,
                "FAIL {:?} {} LEFT {} RIGHT {}",
                f.clause,
                f.window,
                cells(&f.witness.0.cells),
                cells(&f.witness.1.cells)
            )?;
        }
    }
    Ok(ok)
}

fn fgtable(out: &mut impl Write, input: &Input) -> Run {
    for c in configs(&input.file)? {
        let table = fg_table(as_path(&c)?);
        writeln!(out, "i\tj\tf\tg\tA\tB\th")?;
        for e in table.entries() {
            let w = e.window;
            writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}\t{}", w.i, w.j, e.f, e.g, e.a(), e.b(), e.h())?;
        }
    }
    Ok(true)
}

fn equivclass(out: &mut impl Write, input: &Input, gamma: Variation, t: u32, trace: bool, limits: &Limits) -> Run {
    for c in configs(&input.file)? {
        member(&c, gamma)?;
        match is_safe(&c, t, gamma, limits)? {
            Safeness::Safe(chain) => {
                writeln!(out, "SAFE t={t}")?;
                if trace {
                    for d in &chain.configs {
                        writeln!(out, "{d}")?;
                    }
                }
            }
            Safeness::Unsafe { class } => {
                writeln!(out, "CLASS {}", class.len())?;
                for d in &class {
                    writeln!(out, "{d}")?;
                }
            }
        }
    }
    Ok(true)
}

fn print_bounds(out: &mut impl Write, t: u32, kind: StateBoundKind) -> io::Result<()> {
    let (lower, upper) = state_bounds(t, kind);
    match lower {
        Some(l) => writeln!(out, "LOWER {}", format_big(&l))?,
        None => writeln!(out, "LOWER NONE")?,
    }
    writeln!(out, "UPPER {}", format_big(&upper))
}

struct SolutionArgs {
    kind: SolutionKind,
    gamma: Variation,
    on: Option<PathBuf>,
    emit: Emit,
    t: Option<u32>,
}

fn solution(out: &mut impl Write, input: &Input, a: &SolutionArgs, limits: &Limits) -> Run {
    let targets = match &a.on {
        Some(p) => Some(configs(p)?),
        None => None,
    };
    for c in configs(&input.file)? {
        member(&c, a.gamma)?;
        let targets = targets.clone().unwrap_or_else(|| vec![c.clone()]);
        match a.kind {
            SolutionKind::Ref => {
                let spec = build_reflection(as_path(&c)?);
                match a.emit {
                    Emit::Spec => {
                        writeln!(out, "REF i0={} j0={} T={}", spec.i0, spec.j0, spec.t_tilde)?;
                        writeln!(out, "DOMAIN {}", spec.domain().len())?;
                        writeln!(out, "STATES {}", spec.state_count_bound)?;
                    }
                    Emit::Simulate => {
                        for d in &targets {
                            writeln!(out, "{}", simulate_reflection(&spec, as_path(d)?))?;
                        }
                    }
                    Emit::Bounds => {
                        writeln!(out, "STATES {}", spec.state_count_bound)?;
                        writeln!(out, "WRAPPED {}", spec.state_count_bound * PATH_WRAPPER)?;
                    }
                }
            }
            SolutionKind::Cc => {
                let spec = build_cc(&c, a.gamma, limits)?;
                match a.emit {
                    Emit::Spec => {
                        writeln!(out, "CC T={} CLASS {} AUTOMATA {}", spec.t, spec.class.len(), spec.automata.len())?;
                        for row in &spec.rows {
                            let mark = if row.selected { " *" } else { "" };
                            let (lo, hi) = row.interval;
                            writeln!(out, "C{} A({}, {}) [{lo}, {hi}]{mark}", row.member, row.a, row.b)?;
                        }
                        writeln!(out, "STATES {}", format_big(&spec.state_count))?;
                    }
                    Emit::Simulate => {
                        for d in &targets {
                            writeln!(out, "{}", simulate_cc(&spec, as_path(d)?))?;
                        }
                    }
                    Emit::Bounds => {
                        writeln!(out, "STATES {}", format_big(&spec.state_count))?;
                        writeln!(out, "WRAPPED {}", format_big(&(&spec.state_count * PATH_WRAPPER)))?;
                    }
                }
            }
            SolutionKind::Lm => {
                let horizon = match a.t {
                    Some(t) => t,
                    None => mft_localmap(&c, a.gamma, limits)?.value,
                };
                match a.emit {
                    Emit::Spec => writeln!(out, "LM T={horizon} VARIATION {}", a.gamma)?,
                    Emit::Simulate => {
                        for d in &targets {
                            member(d, a.gamma)?;
                            writeln!(out, "{}", simulate_lm(horizon, d, a.gamma, limits, false)?)?;
                        }
                    }
                    Emit::Bounds => {
                        let kind = match a.gamma {
                            Variation::TwoReg => StateBoundKind::RegLm,
                            Variation::TwoPath => StateBoundKind::PathLm,
                            _ => StateBoundKind::GpathLm,
                        };
                        print_bounds(out, horizon, kind)?;
                        let wrapper = if kind == StateBoundKind::RegLm { REGION_WRAPPER } else { PATH_WRAPPER };
                        writeln!(out, "WRAPPED {}", format_big(&(state_bounds(horizon, kind).1 * wrapper)))?;
                    }
                }
            }
        }
    }
    Ok(true)
}

fn run(cli: Cli, out: &mut impl Write) -> Run {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let limits = Limits { max_nodes: cli.max_nodes };
    match cli.command {
        Command::Validate(input) => validate(out, &input),
        Command::Render(input) => {
            for c in configs(&input.file)? {
                writeln!(out, "{}", render_ascii(&c))?;
            }
            Ok(true)
        }
        Command::Mft { input, variation, method, trace } => mft(out, &input, variation.into(), method, trace, &limits),
        Command::Cni(input) => cni(out, &input),
        Command::Classify(input) => {
            for c in configs(&input.file)? {
                writeln!(out, "{}", hand_status(as_path(&c)?))?;
            }
            Ok(true)
        }
        Command::Fgtable(input) => fgtable(out, &input),
        Command::Equivclass { input, variation, t, trace } => {
            equivclass(out, &input, variation.into(), t, trace, &limits)
        }
        Command::Solution { input, kind, variation, on, emit, t } => {
            let args = SolutionArgs { kind, gamma: variation.into(), on, emit, t };
            solution(out, &input, &args, &limits)
        }
        Command::Bounds { t, kind } => {
            let kind: StateBoundKind = kind.parse()?;
            print_bounds(out, t, kind)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_NEGATIVE),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Budget(limit)) => {
            eprintln!("error: search budget of {limit} configurations exceeded");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
