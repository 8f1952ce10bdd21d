//! `prenex`: batch front-end for prenex-core.
//!
//! Every job prints line-oriented text, or with `--json` a single JSON
//! document. Exit status is 0 on success, 1 when a check fails and 2 on bad
//! input.

mod golden;
mod jobs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prenex_core::OracleConfig;

#[derive(Parser, Debug)]
#[command(name = "prenex", version, about = "Classify, prenex and translate first-order arithmetic formulas")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
    #[command(flatten)]
    pub opts: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Signature file; defaults to the built-in arithmetic signature.
    #[arg(long, global = true)]
    pub sig: Option<PathBuf>,
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Domain sizes swept by the oracle.
    #[arg(long, global = true, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    /// Most free predicates swept exhaustively.
    #[arg(long, global = true)]
    pub atom_budget: Option<usize>,
    /// Interpretations sampled per size when a sweep is not exhaustive.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

impl Common {
    pub fn oracle(&self) -> Result<OracleConfig, CliError> {
        let mut cfg = OracleConfig::default();
        if let Some(s) = &self.sizes {
            if s.is_empty() {
                return Err(CliError::Usage("--sizes needs at least one size".into()));
            }
            cfg.sizes = s.clone();
        }
        if let Some(a) = self.atom_budget {
            cfg.atom_budget = a;
        }
        if let Some(n) = self.samples {
            cfg.samples = n;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        Ok(cfg)
    }
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Alternation paths, degree, class flags and prenex shape.
    Classify {
        /// A formula, or a file holding one.
        input: String,
        /// Level for the class flags; defaults to the degree.
        #[arg(long)]
        level: Option<usize>,
        /// Report the shape without empty blocks.
        #[arg(long)]
        strict: bool,
    },
    /// Prenex a formula and report its certificate against the budget.
    Prenex {
        input: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Target level; defaults to the least level the mode accepts.
        #[arg(long)]
        level: Option<usize>,
        /// Contract quantifier blocks with pairing afterwards.
        #[arg(long)]
        contract: bool,
        /// Replay the chain with the oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Negative translation, A-translation, placeholder substitution or the
    /// conservation chain.
    Translate {
        input: String,
        #[command(flatten)]
        which: TranslateArg,
        /// Level for `--conservation`; defaults to the least that fits.
        #[arg(long)]
        level: Option<usize>,
        /// Check the result with the oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Check two formulas for equivalence, or one for validity.
    Verify {
        a: String,
        b: Option<String>,
        #[arg(long, default_value = "pure-logic")]
        scope: String,
    },
    /// Replay a stored chain (JSON from `prenex --json`, or a bare chain).
    Chain { file: PathBuf },
    /// Run every `.fol` golden file in a directory.
    Corpus { dir: PathBuf },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    E,
    U,
    DfE,
    DfU,
    NnU,
    NegE,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct TranslateArg {
    #[arg(long)]
    pub kuroda: bool,
    /// Only the inner part, with `¬¬` after each universal quantifier.
    #[arg(long)]
    pub kuroda_inner: bool,
    #[arg(long)]
    pub atrans: bool,
    /// Replace the placeholder by this formula.
    #[arg(long, value_name = "PSI")]
    pub subst: Option<String>,
    /// Input must read `ψ -> forall x. exists y. φ1`.
    #[arg(long)]
    pub conservation: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] prenex_core::Error),
    #[error("{context}: {source}")]
    In {
        context: String,
        source: prenex_core::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: malformed golden file: {msg}")]
    MalformedGoldenFile { path: String, line: usize, msg: String },
    #[error("{path}: bad chain file: {msg}")]
    BadChain { path: String, msg: String },
    #[error("{0}")]
    Usage(String),
}

/// What a job produced: text lines, the JSON document and whether every
/// check passed.
pub struct Report {
    pub ok: bool,
    pub lines: Vec<String>,
    pub json: serde_json::Value,
    pub warnings: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match jobs::run(&cli) {
        Ok(r) => {
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            if cli.opts.json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("report serializes"));
            } else {
                for l in &r.lines {
                    println!("{l}");
                }
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
