use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::Outcome;

#[derive(Parser)]
#[command(name = "weylcurv", version, about = "Classify, decompose and realize Weyl curvature models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ClassArg {
    #[value(name = "R")]
    R,
    #[value(name = "W")]
    W,
    #[value(name = "A")]
    A,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum TargetArg {
    Weyl,
    Riemann,
    Affine,
}

#[derive(Subcommand)]
enum Command {
    /// Test membership in the class tower A ⊂ W ⊂ R.
    Classify {
        /// Model document, or "-" for stdin.
        input: String,
    },
    /// Split a Weyl model as A1 + σ(ψ).
    Decompose { input: String },
    /// Build a 2-jet realizing the model.
    Realize {
        input: String,
        #[arg(long, value_enum)]
        target: TargetArg,
        /// Write the jet here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Check a jet document, or every *.json jet in a directory.
    Verify {
        #[arg(long)]
        jet: String,
        /// Worker threads for directories.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Emit a random model of the given class.
    Gen {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        dim: usize,
        /// "p,q" with p + q = dim; defaults to "dim,0".
        #[arg(long)]
        signature: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Apply g -> e^{2f} g, φ -> φ - df to a Weyl or Riemann jet.
    Gauge {
        #[arg(long)]
        jet: String,
        /// Gauge document as inline JSON or a path.
        #[arg(long)]
        f: String,
        #[arg(long)]
        out: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Classify { input } => commands::classify(&input),
        Command::Decompose { input } => commands::decompose(&input),
        Command::Realize { input, target, out } => commands::realize(&input, target, out.as_deref()),
        Command::Verify { jet, jobs } => commands::verify(&jet, jobs),
        Command::Gen {
            class,
            dim,
            signature,
            seed,
            out,
        } => commands::gen(class, dim, signature.as_deref(), seed, out.as_deref()),
        Command::Gauge { jet, f, out } => commands::gauge(&jet, &f, out.as_deref()),
    };
    match outcome {
        Ok(Outcome { code, stdout }) => {
            if let Some(text) = stdout {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("weylcurv: {}", failure.message);
            print!("{}", failure.document());
            ExitCode::from(failure.code)
        }
    }
}
