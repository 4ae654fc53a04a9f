//! `monosim` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 negative verification or
//! certification (or an unsuccessful search), 3 degenerate geometry.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "monosim", version, about = "Monotone and parallel simultaneous embeddings of paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
pub struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum KindArg {
    Monotone,
    Parallel,
}

#[derive(Subcommand)]
pub enum Command {
    /// Write a counterexample instance (dual2d, primal2d, dual3d, primal3d,
    /// dual-general, primal-general).
    Gen {
        family: String,
        /// Dimension of the general families.
        #[arg(long)]
        d: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Rank construction for at most d permutations.
    Embed {
        /// Instance file; standard input when omitted.
        input: Option<PathBuf>,
        #[arg(long)]
        d: usize,
        /// Build the parallel embedding instead of the monotone one.
        #[arg(long)]
        dual: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Turn a parallel embedding file into a monotone embedding file.
    Dualize {
        input: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Turn a monotone embedding file into a parallel embedding file, tilting
    /// horizontal directions first. Reversed permutations are reported.
    Primalize {
        input: Option<PathBuf>,
        /// Instance file, overriding the one carried by the embedding.
        #[arg(long)]
        instance: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Check an embedding against an instance.
    ///
    /// With --embedding the positional input (or standard input) is the
    /// instance; otherwise it is the embedding.
    Verify {
        input: Option<PathBuf>,
        #[arg(long)]
        embedding: Option<PathBuf>,
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Try to certify that an instance has no embedding.
    Certify {
        input: Option<PathBuf>,
        /// Embedding kind to refute; defaults to the one the family targets.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Placement spot checks in dimension 3 and up.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Refute one base point for the last vertical line.
    Refute {
        input: Option<PathBuf>,
        /// Comma-separated rational coordinates, e.g. "1/2,3".
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[command(flatten)]
        output: Output,
    },
    /// Randomized search for an embedding.
    Search {
        input: Option<PathBuf>,
        /// Dimension; defaults to the instance's.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[command(flatten)]
        output: Output,
    },
    /// Draw a planar embedding file as SVG.
    Render {
        input: Option<PathBuf>,
        #[arg(long)]
        instance: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
