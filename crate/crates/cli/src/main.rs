use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use prmachine::codec::{
    bit_len, code_symbols, decode_code, decode_value, encode_code, encode_value, parse_value,
    value_symbols, XValue,
};
use prmachine::deduction::{
    check_tree, enumerate_trees, eval_tree, parse_tree, print_tree, soundness_search, ArgVerdict,
};
use prmachine::evaluator::{eval_counted, trace, Val};
use prmachine::partial::{mu, while_loop};
use prmachine::term::{
    parse_code, parse_term, print_term, stdlib, stdlib_entries, typecheck,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Sexp,
}

#[derive(Debug, Parser)]
#[command(name = "prmachine", version, about = "Categorical primitive recursion: evaluate, encode and prove")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    /// Step budget for evaluations.
    #[arg(long, env = "PRMACHINE_BUDGET", default_value_t = 1_000_000, global = true,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,

    /// Largest Gödel integer, in bits, printed without --allow-big.
    #[arg(long, default_value_t = 4096, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    print_limit_bits: u64,

    #[arg(long, global = true)]
    allow_big: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Evaluate a term (or code) on an argument.
    Eval { term: String, arg: String },
    /// Print the step trace as TSV.
    Trace { term: String, arg: String },
    /// Infer the type of a term.
    Check { term: String },
    /// Gödel-encode a value or a term.
    Encode { input: String },
    /// Decode a Gödel integer into a code or a value.
    Decode { int: String },
    /// List the library, or print one entry.
    Stdlib { name: Option<String> },
    /// Validate a proof file.
    ProveCheck { file: PathBuf },
    /// Argumented evaluation of a proof file.
    ProveEval { file: PathBuf, arg: String },
    /// Stream all valid trees within the bounds.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_nodes: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_code_size: u64,
    },
    /// Soundness and consistency search.
    Search {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_nodes: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_code_size: u64,
        /// File with one value literal per line; sampled from --seed otherwise.
        #[arg(long)]
        args: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        samples: usize,
    },
    /// Least n ≤ budget with PHI(a, n) ≠ 0.
    Mu { phi: String, arg: String },
    /// Run `while CHI do BODY od` with at most budget iterations.
    While { chi: String, body: String, arg: String },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    User(String),
    #[error("{0}")]
    Finding(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn user<E: std::fmt::Display>(e: E) -> CliError {
    CliError::User(e.to_string())
}

fn quote(s: &str) -> String {
    format!("{s:?}")
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::User(format!("{}: {e}", path.display())))
}

/// Number-like output for a Gödel integer, subject to the print limit.
fn godel(cli: &Cli, g: &BigUint) -> Result<String, CliError> {
    let bits = bit_len(g);
    if bits > cli.print_limit_bits && !cli.allow_big {
        return Err(too_big(cli, bits));
    }
    Ok(g.to_string())
}

fn too_big(cli: &Cli, bits: u64) -> CliError {
    CliError::User(format!(
        "encoding has at least {bits} bits, above the print limit of {}; pass --allow-big",
        cli.print_limit_bits
    ))
}

fn sample_args(seed: u64, count: usize) -> Vec<XValue> {
    fn value(rng: &mut ChaCha8Rng, depth: usize) -> XValue {
        if depth == 0 || rng.gen_bool(0.5) {
            XValue::Num(rng.gen_range(0..=5))
        } else {
            XValue::pair(value(rng, depth - 1), value(rng, depth - 1))
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| value(&mut rng, 2)).collect()
}

fn verdict_sexp(v: &ArgVerdict) -> String {
    match v {
        ArgVerdict::Sound(a, b) => format!("(sound {a} {b})"),
        ArgVerdict::Unsound(a, b) => format!("(unsound {a} {b})"),
        ArgVerdict::Exhausted(m) => format!("(exhausted {m})"),
        ArgVerdict::IllArgumented => "(ill-argumented)".to_string(),
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<(), CliError> {
    let sexp = cli.format == Format::Sexp;
    let mut emit = |s: String| writeln!(out, "{s}").map_err(CliError::Io);
    match &cli.cmd {
        Cmd::Eval { term, arg } => {
            let code = parse_code(term).map_err(user)?;
            let x = parse_value(arg).map_err(user)?;
            match eval_counted(&code, &x, cli.budget) {
                Ok((v, steps)) if sexp => emit(format!("(value {v} (steps {steps}))")),
                Ok((v, _)) => emit(v.to_string()),
                Err(e) if sexp => emit(format!(
                    "(exhausted {} (code {}) (arg {}))",
                    e.budget,
                    quote(&e.last.code.to_string()),
                    e.last.arg
                )),
                Err(e) => emit(format!("EXHAUSTED after {} steps at {}", e.budget, e.last)),
            }
        }
        Cmd::Trace { term, arg } => {
            let code = parse_code(term).map_err(user)?;
            let x = parse_value(arg).map_err(user)?;
            let t = trace(&code, &x, cli.budget).map_err(|e| CliError::Finding(e.to_string()))?;
            if sexp {
                let mut s = String::from("(trace");
                for (i, (st, c)) in t.steps.iter().enumerate() {
                    s.push_str(&format!(
                        "\n  (step {i} {} {} {} {})",
                        quote(&c.to_string()),
                        st.code.size(),
                        quote(&st.code.to_string()),
                        st.arg
                    ));
                }
                s.push_str(&format!("\n  (exhausted {}))", t.exhausted));
                emit(s)
            } else {
                Ok(write!(out, "{}", t.to_tsv())?)
            }
        }
        Cmd::Check { term } => {
            let t = parse_term(term).map_err(user)?;
            let (a, b) = typecheck(&t).map_err(user)?;
            emit(if sexp { format!("(type {} {})", quote(&a.to_string()), quote(&b.to_string())) } else { format!("{a} -> {b}") })
        }
        Cmd::Encode { input } => {
            let (symbols, g): (usize, Box<dyn Fn() -> BigUint>) = match parse_value(input) {
                Ok(x) => (value_symbols(&x).len(), Box::new(move || encode_value(&x))),
                Err(_) => {
                    let c = parse_code(input).map_err(user)?;
                    (code_symbols(&c).len(), Box::new(move || encode_code(&c)))
                }
            };
            // every symbol contributes a prime factor, so at least one bit
            if symbols as u64 > cli.print_limit_bits && !cli.allow_big {
                return Err(too_big(cli, symbols as u64));
            }
            let g = g();
            let g = godel(cli, &g)?;
            emit(if sexp { format!("(godel {g})") } else { g })
        }
        Cmd::Decode { int } => {
            let g = BigUint::from_str(int.trim()).map_err(|e| CliError::User(format!("not a natural number: {e}")))?;
            if let Ok(c) = decode_code(&g) {
                emit(if sexp { format!("(code {})", quote(&c.to_string())) } else { c.to_string() })
            } else {
                let x = decode_value(&g).map_err(user)?;
                emit(if sexp { format!("(value {x})") } else { x.to_string() })
            }
        }
        Cmd::Stdlib { name: None } => {
            for e in stdlib_entries() {
                let term = print_term(&e.term);
                if sexp {
                    emit(format!("(entry {} {} {} {})", e.name, quote(&e.dom.to_string()), quote(&e.cod.to_string()), quote(&term)))?;
                } else {
                    emit(format!("{} : {} -> {} = {}", e.name, e.dom, e.cod, term))?;
                }
            }
            Ok(())
        }
        Cmd::Stdlib { name: Some(name) } => {
            let e = stdlib(name).map_err(user)?;
            let term = print_term(&e.term);
            emit(if sexp { format!("(entry {} {})", e.name, quote(&term)) } else { term })
        }
        Cmd::ProveCheck { file } => {
            let t = parse_tree(&read(file)?).map_err(user)?;
            match check_tree(&t) {
                Ok(()) if sexp => emit(format!("(valid (nodes {}))", t.nodes())),
                Ok(()) => emit(format!("OK: {} nodes, {} = {}", t.nodes(), t.lhs, t.rhs)),
                Err(vs) => {
                    for v in &vs {
                        emit(if sexp { format!("(violation {} {})", quote(&v.path), quote(&v.message)) } else { v.to_string() })?;
                    }
                    Err(CliError::User(format!("{} rule violation(s)", vs.len())))
                }
            }
        }
        Cmd::ProveEval { file, arg } => {
            let t = parse_tree(&read(file)?).map_err(user)?;
            let x = parse_value(arg).map_err(user)?;
            let v = eval_tree(&t, &x, cli.budget);
            emit(if sexp { verdict_sexp(&v) } else { v.to_string() })?;
            match v {
                ArgVerdict::Unsound(..) => Err(CliError::Finding("sides disagree".to_string())),
                _ => Ok(()),
            }
        }
        Cmd::Enumerate { max_nodes, max_code_size } => {
            for (i, t) in enumerate_trees(*max_nodes as usize, *max_code_size as usize).enumerate() {
                let text = print_tree(&t);
                if sexp {
                    emit(text)?;
                } else {
                    emit(format!("# {i}\n{text}"))?;
                }
            }
            Ok(())
        }
        Cmd::Search { max_nodes, max_code_size, args, seed, samples } => {
            let xs = match args {
                Some(path) => read(path)?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(|l| parse_value(l).map_err(user))
                    .collect::<Result<Vec<_>, _>>()?,
                None => sample_args(*seed, *samples),
            };
            let r = soundness_search(*max_nodes as usize, *max_code_size as usize, &xs, cli.budget);
            write!(out, "{}", if sexp { r.to_sexp() } else { r.to_text() })?;
            if r.is_clean() {
                Ok(())
            } else {
                Err(CliError::Finding("counterexample found".to_string()))
            }
        }
        Cmd::Mu { phi, arg } => {
            let phi = parse_term(phi).map_err(user)?;
            let a = guess_val(arg).ok_or_else(|| CliError::User(format!("not a natural-number tuple: {arg}")))?;
            let r = mu(&phi, &a, cli.budget).map_err(user)?;
            emit(if sexp { partial_sexp(&r) } else { r.to_string() })
        }
        Cmd::While { chi, body, arg } => {
            let chi = parse_term(chi).map_err(user)?;
            let body = parse_term(body).map_err(user)?;
            let a = guess_val(arg).ok_or_else(|| CliError::User(format!("not a natural-number tuple: {arg}")))?;
            let r = while_loop(&chi, &body, &a, cli.budget).map_err(user)?;
            emit(if sexp { partial_sexp(&r) } else { r.to_string() })
        }
    }
}

/// Reads a value literal as nested pairs of naturals.
fn guess_val(text: &str) -> Option<Val> {
    fn go(x: &XValue) -> Option<Val> {
        match x {
            XValue::Num(n) => Some(Val::Nat(*n)),
            XValue::Pair(a, b) => Some(Val::pair(go(a)?, go(b)?)),
            XValue::Bottom => None,
        }
    }
    go(&parse_value(text).ok()?)
}

fn partial_sexp<T: std::fmt::Display>(r: &prmachine::partial::PartialResult<T>) -> String {
    match r {
        prmachine::partial::PartialResult::Defined(v) => format!("(defined {v})"),
        prmachine::partial::PartialResult::Undefined(n) => format!("(undefined {n})"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out).and_then(|()| Ok(out.flush()?));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::User(_) | CliError::Io(_) => ExitCode::from(1),
                CliError::Finding(_) => ExitCode::from(2),
            }
        }
    }
}
