//! Command-line front end: replay derivation scripts, run bounded searches,
//! build near-triangulations from scripts, compute shelling orders, verify
//! string-engine/coloring-oracle round-trips, and enumerate colorings.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or usage error.
//! Machine-readable output is a block of `key=value` lines sorted by key;
//! identical invocations produce byte-identical blocks.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lsets::coloring::{enumerate_colorings, roundtrip_check};
use lsets::formats::{
    deriv_from_text, deriv_to_text, lset_from_text, lset_stream_to_text, rot_from_text, rot_to_text,
};
use lsets::search::{reachable_states, Probe, SearchConfig, SearchReport};
use lsets::shelling::{build_from_derivation, compute_shelling_order, derivation_from_order};
use lsets::{count_colorings, Alphabet, DerivationScript, LSet, SymmetryGroup};

#[derive(Parser)]
#[command(
    name = "lsets",
    version,
    about = "String-set derivations, bounded reachability search, and the matching plane-triangulation machinery",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a derivation script and print the state sequence as an
    /// `.lset` stream with `---` separators.
    Derive(DeriveArgs),
    /// Bounded breadth-first search for the empty set.
    Search(SearchArgs),
    /// Build a near-triangulation from a derivation script and print it
    /// as `.rot` text.
    Build(BuildArgs),
    /// Compute a shelling order of a 4-connected plane triangulation.
    Order(OrderArgs),
    /// Check that the coloring oracle reproduces every replayed state of a
    /// script (exit 1 on mismatch).
    VerifyRoundtrip(VerifyArgs),
    /// Enumerate or count proper colorings of a `.rot` graph.
    Colorings(ColoringsArgs),
}

#[derive(Args)]
struct DeriveArgs {
    /// Start state: the literal `S` (the 3-set {acb}) or a path to an `.lset` file.
    #[arg(long, default_value = "S")]
    start: String,
    /// Path to the `.deriv` script.
    #[arg(long)]
    script: PathBuf,
    /// Alphabet size used when `--start S` is given.
    #[arg(long, default_value_t = 4)]
    alphabet: usize,
}

#[derive(Args)]
struct SearchArgs {
    /// Start state: the literal `S` or a path to an `.lset` file.
    #[arg(long, default_value = "S")]
    start: String,
    #[arg(long, default_value_t = 6)]
    max_depth: usize,
    /// Prune successor states longer than this.
    #[arg(long, default_value_t = 7)]
    max_length: usize,
    /// Stop (with a truncation flag) after storing this many states.
    #[arg(long, default_value_t = 4_000_000)]
    max_states: usize,
    /// Canonicalization group for state deduplication.
    #[arg(long, value_enum, default_value_t = CanonArg::Cd)]
    canon: CanonArg,
    /// Alphabet size (4 is the classic setting, 5 the five-letter variant).
    #[arg(long, default_value_t = 4)]
    alphabet: usize,
    /// Evaluate a named probe on every stored state (repeatable).
    #[arg(long, value_enum)]
    probe: Vec<ProbeArg>,
    /// Write every stored canonical state to this path as an `.lset` stream.
    #[arg(long)]
    emit_states: Option<PathBuf>,
    /// Write the witness script to this path as `.deriv` when the goal is found.
    #[arg(long)]
    emit_witness: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CanonArg {
    None,
    Cd,
    CdRev,
    Full,
}

impl CanonArg {
    fn group(self) -> SymmetryGroup {
        match self {
            CanonArg::None => SymmetryGroup::None,
            CanonArg::Cd => SymmetryGroup::CdSwap,
            CanonArg::CdRev => SymmetryGroup::CdSwapReversal,
            CanonArg::Full => SymmetryGroup::FullPermutations,
        }
    }

    fn name(self) -> &'static str {
        match self {
            CanonArg::None => "none",
            CanonArg::Cd => "cd",
            CanonArg::CdRev => "cd-rev",
            CanonArg::Full => "full",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeArg {
    MissingLetter,
}

#[derive(Args)]
struct BuildArgs {
    /// Path to the `.deriv` script (applied from the start set {acb}).
    #[arg(long)]
    script: PathBuf,
    /// Alphabet size for the start set.
    #[arg(long, default_value_t = 4)]
    alphabet: usize,
    /// Write the `.rot` text here instead of stdout (prints a summary block).
    #[arg(long)]
    emit_rot: Option<PathBuf>,
}

#[derive(Args)]
struct OrderArgs {
    /// Path to the `.rot` graph.
    #[arg(long)]
    graph: PathBuf,
    /// First vertex of the starting outer edge.
    #[arg(long, default_value_t = 1)]
    v1: u32,
    /// Second vertex of the starting outer edge.
    #[arg(long, default_value_t = 2)]
    v2: u32,
    /// Also write the derivation script of the order as `.deriv`.
    #[arg(long)]
    emit_deriv: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Path to the `.deriv` script (applied from the start set {acb}).
    #[arg(long)]
    script: PathBuf,
    /// Alphabet size for the start set.
    #[arg(long, default_value_t = 4)]
    alphabet: usize,
}

#[derive(Args)]
struct ColoringsArgs {
    /// Path to the `.rot` graph.
    #[arg(long)]
    graph: PathBuf,
    /// Print only the number of proper colorings.
    #[arg(long)]
    count: bool,
    /// Alphabet size (number of colors).
    #[arg(long, default_value_t = 4)]
    alphabet: usize,
    /// Fixed assignments, e.g. `1:a,2:b,3:c`.
    #[arg(long)]
    seed: Option<String>,
}

enum Failure {
    /// Exit 2: unreadable files, malformed formats, bad flags or domain input.
    Input(String),
    /// Exit 1: a verification the user asked for did not hold.
    Verification(String),
}

impl Failure {
    fn input(err: impl std::fmt::Display) -> Failure {
        Failure::Input(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(message)) => {
            eprintln!("verification failed: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Derive(args) => cmd_derive(args),
        Command::Search(args) => cmd_search(args),
        Command::Build(args) => cmd_build(args),
        Command::Order(args) => cmd_order(args),
        Command::VerifyRoundtrip(args) => cmd_verify_roundtrip(args),
        Command::Colorings(args) => cmd_colorings(args),
    }
}

fn alphabet_arg(k: usize) -> Result<Alphabet, Failure> {
    Alphabet::new(k).map_err(Failure::input)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|err| Failure::Input(format!("cannot read {}: {err}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|err| Failure::Input(format!("cannot write {}: {err}", path.display())))
}

fn parse_in_file<T>(
    path: &Path,
    result: Result<T, lsets::formats::ParseError>,
) -> Result<T, Failure> {
    result.map_err(|err| Failure::Input(format!("{}: {err}", path.display())))
}

/// Resolves `--start`: the literal `S` or an `.lset` file path.
fn resolve_start(text: &str, alphabet: Alphabet) -> Result<LSet, Failure> {
    if text == "S" {
        return LSet::start(alphabet).map_err(Failure::input);
    }
    let path = Path::new(text);
    let set = parse_in_file(path, lset_from_text(&read_file(path)?))?;
    if set.alphabet() != alphabet {
        return Err(Failure::Input(format!(
            "start file uses a {}-letter alphabet but --alphabet is {}",
            set.alphabet().size(),
            alphabet.size()
        )));
    }
    Ok(set)
}

fn read_script(path: &Path, alphabet: Alphabet, start: &str) -> Result<DerivationScript, Failure> {
    let steps = parse_in_file(path, deriv_from_text(&read_file(path)?))?;
    let start = resolve_start(start, alphabet)?;
    Ok(DerivationScript::new(start, steps))
}

fn emit_kv(block: &BTreeMap<String, String>) {
    for (key, value) in block {
        println!("{key}={value}");
    }
}

fn cmd_derive(args: DeriveArgs) -> Result<(), Failure> {
    let alphabet = alphabet_arg(args.alphabet)?;
    let script = read_script(&args.script, alphabet, &args.start)?;
    let states = script.replay().map_err(Failure::input)?;
    print!("{}", lset_stream_to_text(&states));
    Ok(())
}

fn cmd_search(args: SearchArgs) -> Result<(), Failure> {
    let alphabet = alphabet_arg(args.alphabet)?;
    let start = resolve_start(&args.start, alphabet)?;
    let probes: Vec<Probe> = args
        .probe
        .iter()
        .map(|ProbeArg::MissingLetter| Probe::missing_letter())
        .collect();
    let config = SearchConfig {
        max_depth: args.max_depth,
        max_length: args.max_length,
        max_states: args.max_states,
        canon: args.canon.group(),
        probes,
        alphabet,
        ..SearchConfig::default()
    };

    // streaming when states are dumped; plain search otherwise — the report
    // is identical either way
    let report: SearchReport = if let Some(states_path) = &args.emit_states {
        let mut stream = reachable_states(&start, &config).map_err(Failure::input)?;
        let mut states = Vec::new();
        for (_, state) in stream.by_ref() {
            states.push(state);
        }
        write_file(states_path, &lset_stream_to_text(&states))?;
        stream.report()
    } else {
        lsets::bfs(&start, &config).map_err(Failure::input)?
    };

    if let (Some(witness_path), Some(witness)) = (&args.emit_witness, &report.witness) {
        write_file(witness_path, &deriv_to_text(&witness.steps))?;
    }

    // human-readable table
    println!("bounded search from {} (k={})", args.start, alphabet.size());
    println!("  depth  states");
    for (depth, count) in report.depth_counts.iter().enumerate() {
        println!("  {depth:>5}  {count}");
    }
    println!(
        "  goal: {}",
        if report.goal_found {
            "EMPTY SET REACHED"
        } else {
            "not reached within bounds"
        }
    );
    for probe in &report.probes {
        if probe.violations > 0 {
            println!(
                "  PROBE VIOLATION: {} failed on {} of {} states, first at depth {}",
                probe.id,
                probe.violations,
                probe.checked,
                probe.first_violation.as_ref().map(|(d, _)| *d).unwrap_or(0)
            );
        } else {
            println!(
                "  probe {}: holds on all {} states",
                probe.id, probe.checked
            );
        }
    }
    println!();

    let mut block = BTreeMap::new();
    block.insert("alphabet".into(), alphabet.size().to_string());
    block.insert("canon".into(), args.canon.name().to_string());
    block.insert("max_depth".into(), args.max_depth.to_string());
    block.insert("max_length".into(), args.max_length.to_string());
    block.insert("max_states".into(), args.max_states.to_string());
    block.insert("goal_found".into(), report.goal_found.to_string());
    block.insert("states_total".into(), report.states_total.to_string());
    block.insert(
        "transitions_expanded".into(),
        report.transitions_expanded.to_string(),
    );
    block.insert(
        "pruned_by_length".into(),
        report.pruned_by_length.to_string(),
    );
    block.insert(
        "truncated_by_depth".into(),
        report.truncated_by_depth.to_string(),
    );
    block.insert(
        "truncated_by_states".into(),
        report.truncated_by_states.to_string(),
    );
    block.insert("dedup_exact".into(), report.dedup_exact.to_string());
    for (depth, count) in report.depth_counts.iter().enumerate() {
        block.insert(format!("depth_count_{depth:02}"), count.to_string());
    }
    for probe in &report.probes {
        block.insert(
            format!("probe_{}_checked", probe.id),
            probe.checked.to_string(),
        );
        block.insert(
            format!("probe_{}_violations", probe.id),
            probe.violations.to_string(),
        );
    }
    block.insert("witness_found".into(), report.witness.is_some().to_string());
    if let Some(witness) = &report.witness {
        let steps: Vec<String> = witness
            .steps
            .iter()
            .map(|l| format!("{},{}", l.i(), l.j()))
            .collect();
        block.insert("witness_steps".into(), steps.join(";"));
    }
    emit_kv(&block);
    Ok(())
}

fn cmd_build(args: BuildArgs) -> Result<(), Failure> {
    let alphabet = alphabet_arg(args.alphabet)?;
    let script = read_script(&args.script, alphabet, "S")?;
    let (graph, order) = build_from_derivation(&script).map_err(Failure::input)?;
    let rot = rot_to_text(&graph);
    match &args.emit_rot {
        Some(path) => {
            write_file(path, &rot)?;
            let mut block = BTreeMap::new();
            block.insert("vertices".into(), graph.vertex_count().to_string());
            block.insert("edges".into(), graph.edge_count().to_string());
            block.insert("steps".into(), order.labels.len().to_string());
            block.insert(
                "outer".into(),
                graph
                    .outer_face()
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            );
            emit_kv(&block);
        }
        None => print!("{rot}"),
    }
    Ok(())
}

fn cmd_order(args: OrderArgs) -> Result<(), Failure> {
    let graph = parse_in_file(&args.graph, rot_from_text(&read_file(&args.graph)?))?;
    let order = compute_shelling_order(&graph, args.v1, args.v2).map_err(Failure::input)?;
    let script =
        derivation_from_order(&graph, &order, Alphabet::default()).map_err(Failure::input)?;
    if let Some(path) = &args.emit_deriv {
        write_file(path, &deriv_to_text(&script.steps))?;
    }

    println!(
        "shelling order of {} from edge {}-{}",
        args.graph.display(),
        args.v1,
        args.v2
    );
    for (idx, v) in order.order.iter().enumerate() {
        match idx.checked_sub(3) {
            Some(step) => println!(
                "  v{:<3} = {v}   attach {{{},{}}}",
                idx + 1,
                order.labels[step].i(),
                order.labels[step].j()
            ),
            None => println!("  v{:<3} = {v}", idx + 1),
        }
    }
    println!();

    let mut block = BTreeMap::new();
    block.insert(
        "order".into(),
        order
            .order
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(","),
    );
    block.insert(
        "labels".into(),
        order
            .labels
            .iter()
            .map(|l| format!("{},{}", l.i(), l.j()))
            .collect::<Vec<_>>()
            .join(";"),
    );
    emit_kv(&block);
    Ok(())
}

fn cmd_verify_roundtrip(args: VerifyArgs) -> Result<(), Failure> {
    let alphabet = alphabet_arg(args.alphabet)?;
    let script = read_script(&args.script, alphabet, "S")?;
    let outcome = roundtrip_check(&script).map_err(Failure::input)?;
    let mut block = BTreeMap::new();
    block.insert("steps".into(), script.steps.len().to_string());
    block.insert("roundtrip_ok".into(), outcome.ok.to_string());
    if let Some(prefix) = outcome.first_mismatch {
        block.insert("first_mismatch_prefix".into(), prefix.to_string());
    }
    emit_kv(&block);
    if outcome.ok {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "coloring oracle and string engine disagree after {} steps",
            outcome.first_mismatch.unwrap_or(0)
        )))
    }
}

fn parse_seed(text: &str, alphabet: Alphabet) -> Result<Vec<(u32, u8)>, Failure> {
    let mut seed = Vec::new();
    for part in text.split(',') {
        let (vertex, letter) = part.split_once(':').ok_or_else(|| {
            Failure::Input(format!(
                "seed entry {part:?} is not of the form <vertex>:<letter>"
            ))
        })?;
        let vertex: u32 = vertex
            .parse()
            .map_err(|_| Failure::Input(format!("bad seed vertex {vertex:?}")))?;
        let mut chars = letter.chars();
        let (Some(ch), None) = (chars.next(), chars.next()) else {
            return Err(Failure::Input(format!("bad seed letter {letter:?}")));
        };
        let letter = alphabet.parse_letter(ch).map_err(Failure::input)?;
        seed.push((vertex, letter));
    }
    Ok(seed)
}

fn cmd_colorings(args: ColoringsArgs) -> Result<(), Failure> {
    let alphabet = alphabet_arg(args.alphabet)?;
    let graph = parse_in_file(&args.graph, rot_from_text(&read_file(&args.graph)?))?;
    let seed = match &args.seed {
        Some(text) => parse_seed(text, alphabet)?,
        None => Vec::new(),
    };
    if args.count {
        let count = count_colorings(&graph, &seed, alphabet).map_err(Failure::input)?;
        println!("count={count}");
        return Ok(());
    }
    let mut line = String::new();
    for coloring in enumerate_colorings(&graph, &seed, alphabet).map_err(Failure::input)? {
        line.clear();
        for &letter in &coloring.colors {
            write!(line, "{}", Alphabet::letter_char(letter)).expect("string formatting");
        }
        println!("{line}");
    }
    Ok(())
}
