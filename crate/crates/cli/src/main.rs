//! `corpuscle`: build keyword corpora from essays and posts, then compare them.
//!
//! Exit codes: 0 ok, 1 input error, 2 output error, 3 configuration or key error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::GlobalFlags;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Output(String),
    #[error("{0}")]
    Config(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Output(_) => 2,
            CliError::Config(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "corpuscle", version, about = "Keyword corpora from reference essays and social-media posts")]
struct Cli {
    #[command(flatten)]
    flags: GlobalFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Index a directory of .txt essays and print its top keywords
    BuildStandard { essays_dir: PathBuf, out_snapshot: PathBuf },
    /// Index the posts of a JSONL file that carry a seed hashtag
    BuildSocial { tweets_jsonl: PathBuf, out_snapshot: PathBuf },
    /// Compare a social snapshot against a standard one
    Validate { standard_snapshot: PathBuf, social_snapshot: PathBuf, out_dir: PathBuf },
    /// Compare the standard snapshot against samples of increasing size
    Sweep { standard_snapshot: PathBuf, tweets_jsonl: PathBuf, out_dir: PathBuf },
    /// Compare users' keywords with the rest of a social snapshot
    Screen {
        social_snapshot: PathBuf,
        /// A pseudonym, or `all`
        target: String,
        out_dir: PathBuf,
        /// Screen this many users drawn at random (with --seed)
        #[arg(long)]
        sample: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let flags = &cli.flags;
    match cli.command {
        Command::BuildStandard { essays_dir, out_snapshot } => commands::build_standard(flags, &essays_dir, &out_snapshot),
        Command::BuildSocial { tweets_jsonl, out_snapshot } => commands::build_social(flags, &tweets_jsonl, &out_snapshot),
        Command::Validate { standard_snapshot, social_snapshot, out_dir } => {
            commands::validate(flags, &standard_snapshot, &social_snapshot, &out_dir)
        }
        Command::Sweep { standard_snapshot, tweets_jsonl, out_dir } => commands::sweep(flags, &standard_snapshot, &tweets_jsonl, &out_dir),
        Command::Screen { social_snapshot, target, out_dir, sample } => {
            commands::screen(flags, &social_snapshot, &target, &out_dir, sample)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
