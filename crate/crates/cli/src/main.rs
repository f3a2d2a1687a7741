//! `admcube`: runs the checks of `admcube-core` on JSON instance files.

mod commands;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use admcube::cubes::AdmissibilityMethod;
use admcube::io::InstanceFile;
use admcube::Ring;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(
    name = "admcube",
    version,
    about = "Exact checks on cubes of finitely presented modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Also write the report to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Admissibility of a cube.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "recursive")]
        method: AdmissibilityMethod,
    },
    /// Homology of the total complex, compared with iterated `H_0`.
    Tot(Input),
    /// Homology of a complex.
    Homology(Input),
    /// Koszul complex of a scalar family and the sequence conditions.
    Koszul(Input),
    /// Fiberedness of a cube, or `Fib` of a family of subobjects.
    Fib(Input),
    /// Adjugate axioms and regularity for a cube with an adjugate.
    AdjugateVerify(Input),
    /// Cofactor adjugate of a cube of equal-rank free modules.
    AdjugateConstruct(Input),
    /// Monic cube and admissible patched cubes from a regular adjugate.
    MainTheorem(Input),
    /// Double cube theorems on a double cube or the patch of an adjugate bundle.
    Dct(Input),
    /// Exactness of a free complex against the grade condition.
    Be(Input),
    /// Modular law and family conditions in a finite lattice.
    Lattice(Input),
    /// Randomised invariant suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Size::Small)]
        size: Size,
    },
}

#[derive(clap::Args)]
struct Input {
    #[arg(long)]
    input: PathBuf,
    /// Reinterpret every entry over this ring, e.g. `Z/6` or `Q`.
    #[arg(long)]
    ring_override: Option<Ring>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Size {
    Small,
    Medium,
}

/// A finished check: whether the property held, and the report body.
pub struct Outcome {
    pub passed: bool,
    pub body: Value,
}

pub type CmdResult = Result<Outcome, String>;

struct Loaded {
    instance: InstanceFile,
    digest: String,
}

fn load(input: &Input) -> Result<Loaded, String> {
    let bytes = std::fs::read(&input.input)
        .map_err(|e| format!("cannot read {}: {e}", input.input.display()))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| format!("input is not UTF-8: {e}"))?;
    let mut instance = InstanceFile::parse(text).map_err(|e| e.to_string())?;
    if let Some(ring) = input.ring_override {
        instance.override_ring(ring);
    }
    Ok(Loaded {
        instance,
        digest: hex::encode(Sha256::digest(&bytes)),
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Tot(_) => "tot",
        Command::Homology(_) => "homology",
        Command::Koszul(_) => "koszul",
        Command::Fib(_) => "fib",
        Command::AdjugateVerify(_) => "adjugate-verify",
        Command::AdjugateConstruct(_) => "adjugate-construct",
        Command::MainTheorem(_) => "main-theorem",
        Command::Dct(_) => "dct",
        Command::Be(_) => "be",
        Command::Lattice(_) => "lattice",
        Command::Selftest { .. } => "selftest",
    }
}

fn run(command: &Command) -> Result<(Outcome, Option<String>), String> {
    let with_input = |input: &Input, f: fn(InstanceFile) -> CmdResult| {
        let loaded = load(input)?;
        Ok((f(loaded.instance)?, Some(loaded.digest)))
    };
    match command {
        Command::Check { input, method } => {
            let loaded = load(input)?;
            Ok((
                commands::check(loaded.instance, *method)?,
                Some(loaded.digest),
            ))
        }
        Command::Tot(i) => with_input(i, commands::tot),
        Command::Homology(i) => with_input(i, commands::homology),
        Command::Koszul(i) => with_input(i, commands::koszul),
        Command::Fib(i) => with_input(i, commands::fib),
        Command::AdjugateVerify(i) => with_input(i, commands::adjugate_verify),
        Command::AdjugateConstruct(i) => with_input(i, commands::adjugate_construct),
        Command::MainTheorem(i) => with_input(i, commands::main_theorem),
        Command::Dct(i) => with_input(i, commands::dct),
        Command::Be(i) => with_input(i, commands::be),
        Command::Lattice(i) => with_input(i, commands::lattice),
        Command::Selftest { seed, size } => Ok((selftest::run(*seed, *size)?, None)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, digest) = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = json!({
        "command": command_name(&cli.command),
        "input_digest": digest,
        "passed": outcome.passed,
        "report": outcome.body,
        "version": env!("CARGO_PKG_VERSION"),
    });
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    print!("{text}");
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
