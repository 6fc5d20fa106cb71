//! `pqn`: rational base numeration, automata and logic from the command line.
//!
//! Exit status: 0 on success, 1 on a negative answer (not a member, not
//! equivalent, rejected), 2 on usage or data errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use pqn::analysis;
use pqn::automata::set_state_budget;
use pqn::builtins;
use pqn::logic::{self, EmitOptions};
use pqn::numeration::{self, Base, QkNumber, TupleWord, Word};
use pqn::MultiTapeAutomaton;

// println!/print! panic when the reader goes away (`pqn enum ... | head`)
macro_rules! outln {
    ($($t:tt)*) => { write_out(format_args!("{}\n", format_args!($($t)*))) };
}

macro_rules! out {
    ($($t:tt)*) => { write_out(format_args!($($t)*)) };
}

fn write_out(args: std::fmt::Arguments) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("pqn: error: {e}");
        std::process::exit(2);
    }
}

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(name = "pqn", version, about = "Rational base numeration systems, automata and logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Representation of a value ("m" or "m/q^k").
    Rep {
        #[arg(long)]
        base: Base,
        value: String,
    },
    /// Value of a digit string.
    Eval {
        #[arg(long)]
        base: Base,
        word: String,
    },
    /// Is the value a member of the numeration system?
    Member {
        #[arg(long)]
        base: Base,
        value: String,
    },
    /// Build one of the basic automata.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
        #[arg(long, global = true, default_value = "3/2")]
        base: Base,
        /// Write the automaton as JSON here instead of standard output.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        /// Also write a Graphviz rendering.
        #[arg(long, global = true)]
        dot: Option<PathBuf>,
    },
    /// Compile a formula into an automaton.
    Compile {
        #[arg(long)]
        base: Base,
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        formula: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Comma-separated variable order; tape i carries the i-th variable.
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run an automaton on a tuple of words (comma separated, or one per argument).
    Run {
        automaton: PathBuf,
        #[arg(required = true, allow_hyphen_values = true)]
        words: Vec<String>,
    },
    /// List accepted words up to a length.
    Enum {
        automaton: PathBuf,
        #[arg(long)]
        max_len: usize,
        /// Print the accepted values instead of the words.
        #[arg(long)]
        values: bool,
    },
    /// Decide whether two automata accept the same tuples of values.
    Equiv { a: PathBuf, b: PathBuf },
    /// Print a formula defining the automaton's relation.
    ToFormula {
        automaton: PathBuf,
        /// Use the weaker initial-state condition (for demonstrations).
        #[arg(long)]
        literal_xi: bool,
    },
    /// Run one of the experiments.
    Experiment {
        #[command(subcommand)]
        kind: ExperimentKind,
        #[arg(long, global = true, default_value = "3/2")]
        base: Base,
        /// Print CSV instead of text.
        #[arg(long, global = true)]
        csv: bool,
    },
    /// Draw the refinement figure as SVG.
    Figure {
        #[arg(long)]
        base: Base,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long, default_value_t = 10)]
        xmax: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BuildKind {
    /// x + y = z
    Add,
    /// x0 = x1 = ... on D tapes
    Eq {
        #[arg(long, default_value_t = 2)]
        tapes: usize,
    },
    /// |rep x| <= |rep y|
    Lelen,
    /// |rep x| < |rep y|
    Ltlen,
    /// V(x) = y
    Vpq,
    /// Residue modulo N lies in the remainders
    Mod {
        n: u64,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        remainders: Vec<u64>,
    },
    /// The singleton {C}
    Const { value: String },
    /// Members strictly between LO and HI (rationals like 3/4)
    Interval { lo: String, hi: String },
    /// (y, z) with z = (S/T) y
    Mulrat { ratio: String },
}

#[derive(Subcommand)]
enum ExperimentKind {
    /// Residual classes of the order relation, with a regular control.
    NerodeOrder {
        #[arg(long, default_value_t = 4)]
        prefix_max: usize,
        #[arg(long, default_value_t = 4)]
        suffix_max: usize,
    },
    /// Modulo automaton against modular arithmetic.
    ModuloOracle {
        #[arg(long, default_value_t = 5)]
        n: u64,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
    /// Which n/q^k are members.
    MkDensity {
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 500)]
        window: u64,
    },
    /// Automaton to formula and back.
    Roundtrip {
        /// Automaton to convert (default: the basis set and the length order).
        #[arg(long)]
        automaton: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        #[arg(long)]
        literal_xi: bool,
    },
    /// Does a candidate accept exactly the multiples of q among integers?
    Separator {
        /// Candidate automaton (default: the modulo automaton below).
        #[arg(long)]
        automaton: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        n: u64,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        remainders: Vec<u64>,
        #[arg(long, default_value_t = 100)]
        max_value: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("PQN_STATE_BUDGET") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => set_state_budget(n),
            _ => {
                eprintln!("pqn: error: PQN_STATE_BUDGET must be a positive integer, got {v:?}");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("pqn: error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CliResult<bool> {
    match command {
        Command::Rep { base, value } => {
            let x = QkNumber::parse(&value, base)?;
            match numeration::represent(&x, base) {
                Some(w) => {
                    outln!("{w}");
                    Ok(true)
                }
                None => {
                    outln!("not a member");
                    Ok(false)
                }
            }
        }
        Command::Eval { base, word } => {
            outln!("{}", numeration::evaluate(&Word::parse(&word, base)?));
            Ok(true)
        }
        Command::Member { base, value } => {
            let member = numeration::is_member(&QkNumber::parse(&value, base)?, base);
            outln!("{}", if member { "yes" } else { "no" });
            Ok(member)
        }
        Command::Build { kind, base, out, dot } => {
            let aut = build(kind, base)?;
            emit(&aut, out.as_deref(), dot.as_deref())?;
            Ok(true)
        }
        Command::Compile { base, formula, file, vars, out, dot } => {
            let text = match (formula, file) {
                (Some(f), _) => f,
                (None, Some(path)) => fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?,
                (None, None) => return Err("either --formula or --file is required".into()),
            };
            let f = logic::parse(&text)?;
            let refs: Vec<&str> = vars.iter().map(|v| v.trim()).filter(|v| !v.is_empty()).collect();
            let aut = logic::compile(&f, &refs, base)?;
            eprintln!("compiled to {} states, {} tape(s)", aut.states(), aut.tapes());
            emit(&aut, out.as_deref(), dot.as_deref())?;
            Ok(true)
        }
        Command::Run { automaton, words } => {
            let aut = load(&automaton)?;
            let items: Vec<&str> = words.iter().map(String::as_str).collect();
            let t = TupleWord::parse_tapes(&items, aut.base())?;
            let end = aut.run(&t)?;
            let accepted = end.is_some_and(|s| aut.is_final(s));
            let state = end.map_or("no run".to_string(), |s| format!("state {s}"));
            outln!("{} ({state})", if accepted { "accept" } else { "reject" });
            Ok(accepted)
        }
        Command::Enum { automaton, max_len, values } => {
            let aut = load(&automaton)?;
            if values {
                for v in aut.accepted_values(max_len)? {
                    let parts: Vec<String> = v.iter().map(QkNumber::to_string).collect();
                    outln!("{}", parts.join(" "));
                }
            } else {
                for w in aut.enumerate(max_len)? {
                    if w.tape_count() == 1 {
                        outln!("{}", w.tape(0));
                    } else {
                        outln!("{w}");
                    }
                }
            }
            Ok(true)
        }
        Command::Equiv { a, b } => {
            let (a, b) = (load(&a)?, load(&b)?);
            match a.equivalent(&b)? {
                None => {
                    outln!("equivalent");
                    Ok(true)
                }
                Some(w) => {
                    outln!("not equivalent");
                    let vals: Vec<String> = w.values().iter().map(QkNumber::to_string).collect();
                    outln!("distinguishing word: {w} = ({})", vals.join(", "));
                    Ok(false)
                }
            }
        }
        Command::ToFormula { automaton, literal_xi } => {
            let aut = load(&automaton)?;
            outln!("{}", logic::emit_formula_with(&aut, EmitOptions { literal_xi })?);
            Ok(true)
        }
        Command::Experiment { kind, base, csv } => experiment(kind, base, csv),
        Command::Figure { base, depth, xmax, out } => {
            let svg = analysis::refinement_figure(base, depth, xmax)?;
            write_or_print(out.as_deref(), &svg)?;
            Ok(true)
        }
    }
}

fn build(kind: BuildKind, base: Base) -> CliResult<MultiTapeAutomaton> {
    Ok(match kind {
        BuildKind::Add => builtins::build_addition(base)?,
        BuildKind::Eq { tapes } => builtins::build_equality(base, tapes)?,
        BuildKind::Lelen => builtins::build_le_len(base)?,
        BuildKind::Ltlen => builtins::build_lt_len(base)?,
        BuildKind::Vpq => builtins::build_vpq(base)?,
        BuildKind::Mod { n, remainders } => builtins::build_modulo(base, n, &remainders)?,
        BuildKind::Const { value } => builtins::build_constant(base, &QkNumber::parse(&value, base)?)?,
        BuildKind::Interval { lo, hi } => builtins::build_interval(base, &rational(&lo)?, &rational(&hi)?)?,
        BuildKind::Mulrat { ratio } => {
            let (s, t) = ratio.split_once('/').unwrap_or((ratio.as_str(), "1"));
            let s: u64 = s.trim().parse().map_err(|_| format!("malformed ratio {ratio:?}"))?;
            let t: u64 = t.trim().parse().map_err(|_| format!("malformed ratio {ratio:?}"))?;
            builtins::build_mult_by_rational(base, s, t)?
        }
    })
}

fn rational(s: &str) -> CliResult<BigRational> {
    let r: BigRational = s.trim().parse().map_err(|_| format!("malformed rational {s:?}"))?;
    Ok(r)
}

fn experiment(kind: ExperimentKind, base: Base, csv: bool) -> CliResult<bool> {
    match kind {
        ExperimentKind::NerodeOrder { prefix_max, suffix_max } => {
            let order = analysis::nerode_order_growth(base, prefix_max, suffix_max)?;
            let control = analysis::nerode_automaton_growth(&builtins::build_le_len(base)?, prefix_max, suffix_max)?;
            if csv {
                out!("{}", order.to_csv());
                out!("{}", control.to_csv().lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
            } else {
                outln!("{order}\n");
                outln!("control: {control}");
            }
            Ok(true)
        }
        ExperimentKind::ModuloOracle { n, max_len } => {
            let r = analysis::modulo_cross_check(base, n, max_len)?;
            print_report(csv, &r.to_csv(), &r.to_string());
            Ok(r.mismatches == 0)
        }
        ExperimentKind::MkDensity { k, window } => {
            let r = analysis::mk_density_scan(base, k, window)?;
            print_report(csv, &r.to_csv(), &r.to_string());
            Ok(r.violations.is_empty())
        }
        ExperimentKind::Roundtrip { automaton, max_len, literal_xi } => {
            let cases = match automaton {
                Some(path) => vec![load(&path)?],
                None => vec![
                    logic::compile(&logic::parse("beta(x)")?, &["x"], base)?.with_name("beta"),
                    builtins::build_le_len(base)?,
                ],
            };
            let mut ok = true;
            if csv {
                outln!("name,states,formula_size,compiled_states,checked,disagreements,equivalent");
            }
            for a in &cases {
                let r = analysis::roundtrip_check(a, max_len, EmitOptions { literal_xi })?;
                ok &= r.disagreements == 0 && r.equivalent;
                if csv {
                    outln!(
                        "{},{},{},{},{},{},{}",
                        r.name,
                        r.states,
                        r.formula_size,
                        r.compiled_states,
                        r.checked,
                        r.disagreements,
                        r.equivalent
                    );
                } else {
                    outln!("{r}");
                }
            }
            Ok(ok)
        }
        ExperimentKind::Separator { automaton, n, remainders, max_value } => {
            let candidate = match automaton {
                Some(path) => load(&path)?,
                None => builtins::build_modulo(base, n, &remainders)?,
            };
            let v = analysis::mq_separator_probe(base, &candidate, max_value)?;
            print_report(csv, &v.to_csv(), &v.to_string());
            Ok(true)
        }
    }
}

fn print_report(csv: bool, csv_text: &str, text: &str) {
    if csv {
        out!("{csv_text}");
    } else {
        outln!("{text}");
    }
}

fn load(path: &Path) -> CliResult<MultiTapeAutomaton> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(MultiTapeAutomaton::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn emit(aut: &MultiTapeAutomaton, out: Option<&Path>, dot: Option<&Path>) -> CliResult<()> {
    write_or_print(out, &format!("{}\n", aut.to_json()))?;
    if let Some(path) = dot {
        fs::write(path, aut.to_dot()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

fn write_or_print(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => out!("{text}"),
    }
    Ok(())
}
