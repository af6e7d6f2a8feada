//! `insep`: every construction and check as a subcommand emitting a JSON
//! certificate.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource
//! exhaustion.

mod cert;
mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use insep::Error;

#[derive(Debug, Parser)]
#[command(
    name = "insep",
    version,
    about = "Effectively inseparable theories and interpretability-weaker constructions"
)]
struct Cli {
    /// Write the certificate here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    group: Group,
}

#[derive(Debug, Subcommand)]
enum Group {
    /// Register machine, s-m-n and the recursion theorem.
    #[command(subcommand)]
    Recfun(RecfunCmd),
    /// Effectively inseparable pairs.
    #[command(subcommand)]
    Pairs(PairsCmd),
    /// Formulas, translations and theories.
    #[command(subcommand)]
    Logic(LogicCmd),
    /// Janiczak's theory J.
    #[command(subcommand)]
    Janiczak(JaniczakCmd),
    /// The set X, the theory V and the weaker theory U ⊕ V.
    #[command(subcommand)]
    Construct(ConstructCmd),
}

/// A program given by index or by file (textual format or JSON).
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ProgramArg {
    /// Index of the program.
    #[arg(long)]
    pub index: Option<String>,
    /// File holding the program as text or as JSON `{"index": n}` / `{"arity": k, "instructions": [...]}`.
    #[arg(long)]
    pub program: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum RecfunCmd {
    /// Run a program on arguments with a step budget.
    Run {
        #[command(flatten)]
        prog: ProgramArg,
        /// Comma-separated arguments.
        #[arg(long, default_value = "")]
        args: String,
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
    },
    /// Specialize a program at leading arguments.
    Smn {
        #[command(flatten)]
        prog: ProgramArg,
        /// Comma-separated fixed arguments.
        #[arg(long)]
        fixed: String,
        /// Random argument tuples on which both sides are compared.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
    },
    /// Fixed point `n` of a transform `t`: `φ_n ≃ φ_{φ_t(n)}`.
    Fix {
        #[command(flatten)]
        prog: ProgramArg,
        /// Arity of the fixed point.
        #[arg(long, default_value_t = 1)]
        arity: usize,
        #[arg(long, default_value_t = 100_000)]
        fuel: u64,
    },
}

#[derive(Debug, Subcommand)]
enum PairsCmd {
    /// The diagonal pair `({x : φ_x(x) = 0}, {x : φ_x(x) = 1})`.
    K {
        /// Enumeration stage for the disjointness probe.
        #[arg(long, default_value_t = 2_000)]
        budget: u64,
    },
    /// Apply the witness of the diagonal pair to decidable sets.
    Witness {
        /// `W_i` as `mod M: r,...`, `finite: a,...`, `below N`, `all`, `empty`, or Decidable JSON.
        #[arg(long)]
        wi: String,
        /// `W_j`, same syntax.
        #[arg(long)]
        wj: String,
        /// Push the pair forward along `n ↦ 2n` first.
        #[arg(long)]
        double: bool,
        #[arg(long, default_value_t = 1_000_000)]
        fuel: u64,
    },
}

#[derive(Debug, Subcommand)]
enum LogicCmd {
    /// Parse and print a sentence, with its code.
    Parse {
        #[arg(long)]
        sentence: String,
    },
    /// Translate a sentence.
    Translate {
        #[arg(long)]
        sentence: String,
        /// Source signature, e.g. `E/2,P/0`.
        #[arg(long, default_value = "E/2")]
        source: String,
        /// Target signature.
        #[arg(long, default_value = "E/2")]
        target: String,
        /// Position in the canonical enumeration of translations.
        #[arg(long, conflicts_with = "translation")]
        position: Option<usize>,
        /// Translation as JSON.
        #[arg(long)]
        translation: Option<PathBuf>,
    },
    /// `U ⊕ V` of two theories.
    Oplus {
        /// Theory JSON file or a builtin name (`J`, `J'`, `U`).
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Theorems of each side checked under `P` or `¬P`.
        #[arg(long, default_value_t = 6)]
        sample: usize,
    },
    /// The first theorems of a theory.
    Theorems {
        #[arg(long)]
        theory: String,
        #[arg(long, default_value_t = 16)]
        count: usize,
    },
}

#[derive(Debug, Subcommand)]
enum JaniczakCmd {
    /// Decide `J + context ⊢ sentence`.
    Decide {
        #[arg(long)]
        sentence: String,
        /// File of context sentences, one per line.
        #[arg(long)]
        context: Option<PathBuf>,
    },
    /// Normal form as a boolean combination of the `A_n`.
    Nf {
        #[arg(long)]
        sentence: String,
    },
    /// All size profiles of the given bound.
    Profiles {
        #[arg(long)]
        bound: usize,
    },
}

#[derive(Debug, Subcommand)]
enum ConstructCmd {
    /// Compute `F(0..=depth)` and the set `X`.
    BuildX {
        #[arg(long, default_value_t = insep::construct::xbuild::DEFAULT_DEPTH)]
        depth: usize,
        /// Subject theory JSON; defaults to the built-in subject.
        #[arg(long)]
        subject: Option<String>,
    },
    /// Build the EI theory `V` inside `X`.
    BuildV {
        #[arg(long, default_value_t = insep::construct::xbuild::DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long)]
        subject: Option<String>,
    },
    /// Build `T = U ⊕ V` with its witnesses and evidence.
    Weaker {
        #[arg(long)]
        subject: Option<String>,
        #[arg(long, default_value_t = insep::construct::xbuild::DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Run the staged witness of `U ⊕ V` on constructed extensions.
    WitnessOplus {
        #[arg(long)]
        subject: Option<String>,
        /// Only the instance at this position.
        #[arg(long)]
        instance: Option<usize>,
    },
    /// Check the witness transforms and independence on extensions.
    EetTei {
        #[arg(long)]
        subject: Option<String>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) | Error::Syntax { .. } | Error::Undecidable(_) => 2,
        Error::Resource(_) | Error::OutOfFuel(_) => 3,
    }
}

fn dispatch(cli: &Cli) -> insep::Result<cert::Certificate> {
    use commands::*;
    let seed = cli.seed;
    match &cli.group {
        Group::Recfun(c) => match c {
            RecfunCmd::Run { prog, args, fuel } => recfun_run(prog, args, *fuel),
            RecfunCmd::Smn { prog, fixed, samples, fuel } => recfun_smn(prog, fixed, *samples, *fuel, seed),
            RecfunCmd::Fix { prog, arity, fuel } => recfun_fix(prog, *arity, *fuel),
        },
        Group::Pairs(c) => match c {
            PairsCmd::K { budget } => pairs_k(*budget),
            PairsCmd::Witness { wi, wj, double, fuel } => pairs_witness(wi, wj, *double, *fuel),
        },
        Group::Logic(c) => match c {
            LogicCmd::Parse { sentence } => logic_parse(sentence),
            LogicCmd::Translate { sentence, source, target, position, translation } => {
                logic_translate(sentence, source, target, *position, translation.as_deref())
            }
            LogicCmd::Oplus { left, right, sample } => logic_oplus(left, right, *sample),
            LogicCmd::Theorems { theory, count } => logic_theorems(theory, *count),
        },
        Group::Janiczak(c) => match c {
            JaniczakCmd::Decide { sentence, context } => janiczak_decide(sentence, context.as_deref()),
            JaniczakCmd::Nf { sentence } => janiczak_nf(sentence),
            JaniczakCmd::Profiles { bound } => janiczak_profiles(*bound),
        },
        Group::Construct(c) => match c {
            ConstructCmd::BuildX { depth, subject } => construct_build_x(*depth, subject.as_deref()),
            ConstructCmd::BuildV { depth, subject } => construct_build_v(*depth, subject.as_deref()),
            ConstructCmd::Weaker { subject, depth } => construct_weaker(*depth, subject.as_deref()),
            ConstructCmd::WitnessOplus { subject, instance } => construct_witness_oplus(subject.as_deref(), *instance),
            ConstructCmd::EetTei { subject } => construct_eet_tei(subject.as_deref()),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cert = match dispatch(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("insep: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = cert.render();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("insep: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if cert.passed() {
        ExitCode::SUCCESS
    } else {
        eprintln!("insep: verification failed");
        ExitCode::from(1)
    }
}
