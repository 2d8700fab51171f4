mod input;
mod lab;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use bstable::classify::{report, CharacterSpec, TorusCharacter};
use bstable::limitchar::{classify_exact, extract_pattern, f_sequence, is_compatible, nonzero_counts};
use bstable::rank1lab::{Gate, Verdict, DEFAULT_GATE};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::CharacterInput;
use crate::suites::Suite;

/// Samples per randomized irreducibility test.
const RANDOMIZED_SAMPLES: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "bstable", version)]
#[command(about = "Classify irreducible modules with a B-stable line and run the finite-level checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest |F|^dim for exhaustive irreducibility checks.
    #[arg(long, global = true, default_value_t = DEFAULT_GATE)]
    gate: u64,
    /// Seed for randomized irreducibility checks above the gate. Without it
    /// such checks are refused.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify the module attached to a torus character.
    Classify {
        /// Cartan type (`A2`, `B3`, …), JSON datum, or a file holding one.
        #[arg(long)]
        datum: String,
        /// `{"restrictions": {"1": …}}` inline, in a file, or `-`.
        #[arg(long)]
        character: String,
        #[arg(long)]
        p: u64,
    },
    /// Run a verification suite over a grid of cases.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// JSON array of case objects; the built-in grid is used if absent.
        #[arg(long)]
        grid: Option<String>,
        /// Only run cases with this prime.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Truncate a character and read off its digit data.
    CharInspect {
        /// An integer λ, a closed form, or `{"p": …, "residues": […]}`.
        #[arg(long, allow_hyphen_values = true)]
        character: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        level: usize,
    },
    /// Single computations on the rank-one modules.
    Lab {
        #[command(subcommand)]
        command: lab::LabCommand,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(bstable::Error),
    Io(String),
}

impl From<bstable::Error> for CliError {
    fn from(e: bstable::Error) -> Self {
        Self::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use bstable::Error as E;
        match self {
            Self::Usage(_) | Self::Io(_) => 2,
            Self::Lib(E::Argument(_) | E::Precondition(_) | E::Domain(_)) => 2,
            Self::Lib(E::Capability(_)) => 3,
            Self::Lib(E::Consistency(_)) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(m) | Self::Io(m) => f.write_str(m),
            Self::Lib(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Serialize)]
struct Inspection {
    schema: &'static str,
    p: u64,
    level: usize,
    residues: Vec<u64>,
    f: Vec<u64>,
    nonzero_counts: Vec<usize>,
    compatible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    failing_pair: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_class: Option<Value>,
    pattern: Option<Value>,
}

fn char_inspect(character: &str, p: Option<u64>, level: usize) -> Result<Value, CliError> {
    let ch = input::character(character)?;
    let p = input::prime(p, Some(&ch))?;
    let tc = ch.at_level(p, level)?;
    let compat = is_compatible(&tc);
    let exact_class = match &ch {
        CharacterInput::Symbolic(sc) => Some(serde_json::to_value(classify_exact(sc, p)?).expect("serializable")),
        CharacterInput::Truncated(_) => None,
    };
    let pattern = if compat.compatible {
        Some(serde_json::to_value(extract_pattern(&tc)?).expect("serializable"))
    } else {
        None
    };
    let out = Inspection {
        schema: "v1",
        p,
        level,
        residues: tc.residues().to_vec(),
        f: f_sequence(&tc),
        nonzero_counts: nonzero_counts(&tc),
        compatible: compat.compatible,
        failing_pair: compat.failing_pair,
        exact_class,
        pattern,
    };
    Ok(serde_json::to_value(out).expect("serializable"))
}

/// The report and whether it counts as a pass.
fn execute(cli: &Cli) -> Result<(Value, bool), CliError> {
    let gate = Gate {
        max_vectors: cli.gate,
        randomized: cli.seed.map(|s| (s, RANDOMIZED_SAMPLES)),
    };
    match &cli.command {
        Command::Classify { datum, character, p } => {
            let datum = input::datum(datum)?;
            let spec: CharacterSpec = input::parse_json(character, "character")?;
            let theta = TorusCharacter::from_spec(&datum, &spec)?;
            let r = report(&theta, *p)?;
            Ok((serde_json::to_value(r).expect("serializable"), true))
        }
        Command::Verify { suite, grid, p } => {
            let cases: Vec<Value> = match grid {
                Some(g) => input::parse_json(g, "grid")?,
                None => suites::default_grid(*suite, *p),
            };
            let r = suites::run(*suite, &cases, *p, &gate)?;
            let passed = r.passed;
            Ok((serde_json::to_value(r).expect("serializable"), passed))
        }
        Command::CharInspect { character, p, level } => Ok((char_inspect(character, *p, *level)?, true)),
        Command::Lab { command } => {
            let r = lab::run(command, &gate)?;
            let passed = r.verdict != Verdict::Fail;
            Ok((json!({"schema": "v1", "record": r}), passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|(value, passed)| {
        let text = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
        match &cli.out {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("bstable: verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("bstable: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
