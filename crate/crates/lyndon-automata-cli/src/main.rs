//! `lynaut`: Lyndon factorizations and factor counting for automatic
//! sequences, from the command line.
//!
//! Exit codes: 0 success, 2 input error, 3 resource or cap exhaustion,
//! 4 divergent or unbounded counting outcomes.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lyndon_automata::enumeration::{
    counting_pair_automaton, CountKind, LinearRepresentation, SynthesisOutcome,
};
use lyndon_automata::factorization::{FactorizationEncoding, PrefixFactorizer};
use lyndon_automata::oracle;
use lyndon_automata::sequence::{Letter, BUILTIN_NAMES};
use lyndon_automata::{Error, Limits, SequenceDfao, Session};

#[derive(Parser)]
#[command(
    name = "lynaut",
    about = "Lyndon factorizations and factor counts of k-automatic sequences",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect and export built-in or user-supplied sequences.
    Seq {
        #[command(subcommand)]
        command: SeqCommand,
    },
    /// Compile a predicate to a multi-track automaton.
    Compile(CompileArgs),
    /// Lyndon factorization of a sequence: encoding, prefixes, finiteness.
    Factorize {
        #[command(subcommand)]
        command: FactorizeCommand,
    },
    /// Evaluate factor-counting sequences.
    Count(CountArgs),
    /// Synthesize an output automaton for a bounded counting sequence.
    Synthesize(SynthesizeArgs),
    /// Brute-force checks on finite words.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand)]
enum SeqCommand {
    /// Print the first letters of a sequence.
    Show {
        /// Built-in name (t, tbar, r, rbar, p, pbar, d, dbar) or file path.
        seq: String,
        #[arg(long, default_value_t = 32)]
        length: usize,
    },
    /// Write a sequence automaton in the text format.
    Export {
        seq: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CompileArgs {
    /// Predicate text, e.g. `E d (d + i = j & t[i] = t[d])`.
    predicate: String,
    /// Extra sequences as name=path; built-ins are always registered.
    #[arg(long = "seq")]
    seqs: Vec<String>,
    /// Emit DOT instead of the text format.
    #[arg(long)]
    dot: bool,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Subset-construction state cap.
    #[arg(long, default_value_t = 1_000_000)]
    cap: usize,
}

#[derive(Subcommand)]
enum FactorizeCommand {
    /// Print the 0/1 marker word (1 where a new term starts) or export the
    /// marker automaton.
    Encoding {
        seq: String,
        #[arg(long, default_value_t = 64)]
        length: usize,
        /// Write the marker automaton to this path instead.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Factorize the prefix of the given length.
    Prefix { seq: String, n: u64 },
    /// Decide whether the factorization is finite; print the terms if so.
    Finite { seq: String },
}

#[derive(Args)]
struct CountArgs {
    seq: String,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Single index to evaluate.
    #[arg(long, conflicts_with = "range")]
    n: Option<u64>,
    /// Inclusive range, e.g. 1..10.
    #[arg(long)]
    range: Option<String>,
    /// Re-derive every printed value by brute force on a prefix.
    #[arg(long)]
    check_oracle: bool,
    /// Also write the linear representation in the matrix text format.
    #[arg(long)]
    export: Option<PathBuf>,
}

#[derive(Args)]
struct SynthesizeArgs {
    seq: String,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, default_value_t = 100_000)]
    cap: usize,
    /// Write the synthesized sequence automaton here.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Lyndon,
    Primitive,
    Terms,
}

impl From<KindArg> for CountKind {
    fn from(kind: KindArg) -> CountKind {
        match kind {
            KindArg::Lyndon => CountKind::Lyndon,
            KindArg::Primitive => CountKind::Primitive,
            KindArg::Terms => CountKind::TermCount,
        }
    }
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Is the word primitive (not a proper power)?
    IsPrimitive { word: String },
    /// Is the word Lyndon (less than all proper suffixes)?
    IsLyndon { word: String },
    /// Duval's Lyndon factorization of the word.
    Duval { word: String },
    /// Start index of the lexicographically least suffix.
    LeastSuffix { word: String },
    /// Count distinct length-n factors of a sequence prefix.
    CountFactors {
        seq: String,
        n: usize,
        #[arg(long, value_enum)]
        kind: OracleKindArg,
        #[arg(long, default_value_t = 4096)]
        prefix_len: usize,
    },
    /// Return words of a factor within a sequence prefix.
    ReturnWords {
        seq: String,
        /// The factor, as a string of digits.
        factor: String,
        #[arg(long, default_value_t = 4096)]
        prefix_len: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKindArg {
    Primitive,
    Lyndon,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::StateCap { .. } => ExitCode::from(3),
                Error::DivergentCount(_) => ExitCode::from(4),
                _ => ExitCode::from(2),
            }
        }
    }
}

/// A built-in sequence by name, or a sequence automaton loaded from a file.
fn load_sequence(spec: &str) -> Result<Arc<SequenceDfao>, Error> {
    if BUILTIN_NAMES.contains(&spec) {
        return SequenceDfao::builtin(spec);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::Input(format!("cannot read `{spec}`: {e}")))?;
    Ok(Arc::new(SequenceDfao::from_text(&text)?))
}

fn emit(output: Option<&PathBuf>, content: &str) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Input(format!("cannot write `{}`: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn letters_line(letters: &[Letter]) -> String {
    let mut out = String::new();
    let wide = letters.iter().any(|&l| l > 9);
    for (pos, l) in letters.iter().enumerate() {
        if wide && pos > 0 {
            out.push(' ');
        }
        write!(out, "{l}").unwrap();
    }
    out
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Seq { command } => match command {
            SeqCommand::Show { seq, length } => {
                let seq = load_sequence(&seq)?;
                println!("{}", letters_line(&seq.prefix(length)));
                Ok(ExitCode::SUCCESS)
            }
            SeqCommand::Export { seq, output } => {
                let seq = load_sequence(&seq)?;
                emit(output.as_ref(), &seq.to_text())?;
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Compile(args) => {
            let mut session = Session::with_builtins();
            session.set_state_cap(args.cap);
            for spec in &args.seqs {
                let (name, path) = spec.split_once('=').ok_or_else(|| {
                    Error::Input(format!("expected name=path, got `{spec}`"))
                })?;
                session.register_sequence(name, load_sequence(path)?)?;
            }
            let compiled = session.compile_str(&args.predicate)?;
            let content = if args.dot {
                compiled.automaton().to_dot("predicate")
            } else {
                format!(
                    "# free variables: {}\n{}",
                    compiled.free_vars().join(" "),
                    compiled.automaton().to_text()
                )
            };
            emit(args.output.as_ref(), &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Factorize { command } => run_factorize(command),
        Command::Count(args) => run_count(args),
        Command::Synthesize(args) => run_synthesize(args),
        Command::Oracle { command } => run_oracle(command),
    }
}

fn run_factorize(command: FactorizeCommand) -> Result<ExitCode, Error> {
    let limits = Limits::default();
    match command {
        FactorizeCommand::Encoding {
            seq,
            length,
            export,
        } => {
            let seq = load_sequence(&seq)?;
            let enc = FactorizationEncoding::compute(&seq, &limits)?;
            if let Some(path) = export {
                emit(Some(&path), &enc.marker_automaton().to_text())?;
            } else {
                let bits: String = enc
                    .marker_bits(length)
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect();
                println!("{bits}");
            }
            Ok(ExitCode::SUCCESS)
        }
        FactorizeCommand::Prefix { seq, n } => {
            let seq = load_sequence(&seq)?;
            let pf = PrefixFactorizer::new(&seq, &limits)?;
            let terms = pf.factorization(n)?;
            let line: String = terms.iter().map(|t| t.to_string()).collect();
            println!("{line}");
            Ok(ExitCode::SUCCESS)
        }
        FactorizeCommand::Finite { seq } => {
            let seq = load_sequence(&seq)?;
            let enc = FactorizationEncoding::compute(&seq, &limits)?;
            match enc.terms_if_finite() {
                Some(terms) => {
                    let list: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
                    println!("finite: {}", list.join(","));
                }
                None => println!("infinite"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_range(text: &str) -> Result<(u64, u64), Error> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| Error::Input(format!("expected a..b, got `{text}`")))?;
    let lo: u64 = lo
        .trim()
        .parse()
        .map_err(|_| Error::Input(format!("bad range start `{lo}`")))?;
    let hi: u64 = hi
        .trim()
        .parse()
        .map_err(|_| Error::Input(format!("bad range end `{hi}`")))?;
    if hi < lo {
        return Err(Error::Input("empty range".into()));
    }
    Ok((lo, hi))
}

fn oracle_count(seq: &SequenceDfao, kind: CountKind, n: u64) -> Result<u64, Error> {
    let window = std::cmp::max(4096, 40 * n) as usize;
    match kind {
        CountKind::TermCount => {
            let prefix = seq.prefix(n as usize + 1);
            Ok(oracle::duval_factorization(&prefix)?.len() as u64)
        }
        CountKind::Primitive | CountKind::Lyndon => {
            let fk = if kind == CountKind::Primitive {
                oracle::FactorKind::Primitive
            } else {
                oracle::FactorKind::Lyndon
            };
            if n == 0 {
                return Ok(0);
            }
            let prefix = seq.prefix(window);
            Ok(oracle::count_factors(&prefix, n as usize, fk)? as u64)
        }
    }
}

fn run_count(args: CountArgs) -> Result<ExitCode, Error> {
    let seq = load_sequence(&args.seq)?;
    let kind: CountKind = args.kind.into();
    let limits = Limits::default();
    let pair = counting_pair_automaton(&seq, kind, &limits)?;
    let rep = LinearRepresentation::from_pair_automaton(&pair, 1)?;
    if let Some(path) = &args.export {
        emit(Some(path), &rep.to_text())?;
    }

    let (lo, hi) = match (args.n, args.range.as_deref()) {
        (Some(n), None) => (n, n),
        (None, Some(range)) => parse_range(range)?,
        (None, None) => return Err(Error::Input("give --n or --range".into())),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };

    let values = rep.evaluate_prefix(hi + 1);
    let printed: Vec<String> = (lo..=hi)
        .map(|n| values[n as usize].to_string())
        .collect();
    println!("{}", printed.join(","));

    if args.check_oracle {
        for n in lo..=hi {
            let expected = oracle_count(&seq, kind, n)?;
            let got = &values[n as usize];
            if *got != expected.into() {
                eprintln!("oracle mismatch at n = {n}: automaton {got}, brute force {expected}");
                return Ok(ExitCode::FAILURE);
            }
        }
        eprintln!("oracle check passed for {lo}..{hi}");
    }
    Ok(ExitCode::SUCCESS)
}

fn run_synthesize(args: SynthesizeArgs) -> Result<ExitCode, Error> {
    let seq = load_sequence(&args.seq)?;
    let limits = Limits::default();
    let pair = counting_pair_automaton(&seq, args.kind.into(), &limits)?;
    let rep = LinearRepresentation::from_pair_automaton(&pair, 1)?;
    match rep.synthesize_bounded(args.cap) {
        SynthesisOutcome::Bounded(dfao) => {
            let max = dfao.output_alphabet().last().copied().unwrap_or(0);
            println!("bounded");
            println!("states: {}", dfao.n_states());
            println!("max-output: {max}");
            if let Some(path) = args.output {
                emit(Some(&path), &dfao.to_text())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        SynthesisOutcome::Unbounded(evidence) => {
            println!("unbounded: {evidence}");
            Ok(ExitCode::from(4))
        }
        SynthesisOutcome::CapExceeded { states_explored } => {
            println!("cap-exceeded: explored {states_explored} states");
            Ok(ExitCode::from(3))
        }
    }
}

fn ascii_word(word: &str) -> Vec<u8> {
    word.bytes().collect()
}

fn digit_word(seq_letters: &str) -> Result<Vec<Letter>, Error> {
    seq_letters
        .chars()
        .map(|c| {
            c.to_digit(10)
                .map(Letter::from)
                .ok_or_else(|| Error::Input(format!("bad letter `{c}`")))
        })
        .collect()
}

fn run_oracle(command: OracleCommand) -> Result<ExitCode, Error> {
    match command {
        OracleCommand::IsPrimitive { word } => {
            println!("{}", oracle::is_primitive(&ascii_word(&word))?);
        }
        OracleCommand::IsLyndon { word } => {
            println!("{}", oracle::is_lyndon(&ascii_word(&word))?);
        }
        OracleCommand::Duval { word } => {
            let w = ascii_word(&word);
            let terms = oracle::duval_factorization(&w)?;
            let parts: Vec<&str> = terms
                .iter()
                .map(|t| std::str::from_utf8(t).expect("ascii in, ascii out"))
                .collect();
            println!("{}", parts.join(" "));
        }
        OracleCommand::LeastSuffix { word } => {
            println!("{}", oracle::least_suffix(&ascii_word(&word))?);
        }
        OracleCommand::CountFactors {
            seq,
            n,
            kind,
            prefix_len,
        } => {
            let seq = load_sequence(&seq)?;
            let prefix = seq.prefix(prefix_len);
            let kind = match kind {
                OracleKindArg::Primitive => oracle::FactorKind::Primitive,
                OracleKindArg::Lyndon => oracle::FactorKind::Lyndon,
                OracleKindArg::All => oracle::FactorKind::All,
            };
            println!("{}", oracle::count_factors(&prefix, n, kind)?);
        }
        OracleCommand::ReturnWords {
            seq,
            factor,
            prefix_len,
        } => {
            let seq = load_sequence(&seq)?;
            let prefix = seq.prefix(prefix_len);
            let factor = digit_word(&factor)?;
            let words = oracle::return_words(&prefix, &factor)?;
            let parts: Vec<String> = words.iter().map(|w| letters_line(w)).collect();
            println!("{}", parts.join(" "));
        }
    }
    Ok(ExitCode::SUCCESS)
}
