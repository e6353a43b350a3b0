use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gcluster::cli::{
    cmd_example, cmd_fpoly, cmd_mutate, cmd_verify, exit_code, Check, FpolyMode, RandomOptions, SeedFile,
    VerifySource,
};
use gcluster::error::{Error, Result};
use gcluster::gqca::ExtractOptions;

#[derive(Parser)]
#[command(name = "gcluster", version, about = "Generalized (quantum) cluster algebra mutation and F-polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Extraction {
    /// Fixed truncation degree for quantum extraction.
    #[arg(long)]
    truncation: Option<u32>,
    /// Allow h with h_{i,s}(1) <= 0.
    #[arg(long)]
    experimental: bool,
}

impl Extraction {
    fn options(&self) -> ExtractOptions {
        ExtractOptions {
            truncation: self.truncation,
            experimental: self.experimental,
            ..ExtractOptions::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dump B~, Lambda, C, G, G~ at every vertex of a path.
    Mutate {
        seed: PathBuf,
        /// Comma-separated 1-based directions.
        #[arg(long, default_value = "")]
        path: String,
    },
    /// Print F_{index;t} at the end of a path.
    Fpoly {
        seed: PathBuf,
        #[arg(long, default_value = "")]
        path: String,
        /// 1-based cluster index.
        #[arg(long)]
        index: usize,
        #[arg(long, group = "mode")]
        direct: bool,
        #[arg(long, group = "mode")]
        gupta: bool,
        #[arg(long, group = "mode")]
        expansion: bool,
        #[arg(long, group = "mode")]
        quantum: bool,
        #[command(flatten)]
        extraction: Extraction,
        /// Print the full JSON record.
        #[arg(long)]
        json: bool,
    },
    /// Run identity checks and print a JSON report.
    Verify {
        /// Seed file (omit with --seed-random).
        seed: Option<PathBuf>,
        #[arg(long, default_value = "")]
        path: String,
        /// duality, gbbc, separation, q1, structure, triple (comma-separated) or all.
        #[arg(long, default_value = "all")]
        check: String,
        /// Verify a random corpus drawn from this RNG seed.
        #[arg(long)]
        seed_random: Option<u64>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Fix the rank of random seeds.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[command(flatten)]
        extraction: Extraction,
    },
    /// Write a bundled seed file: g2 or rank2.
    Example {
        name: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn read_seed(path: &PathBuf) -> Result<SeedFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    SeedFile::from_json(&text)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Mutate { seed, path } => {
            let dump = cmd_mutate(&read_seed(&seed)?, &path)?;
            println!("{}", serde_json::to_string_pretty(&dump).expect("serializes"));
            Ok(0)
        }
        Command::Fpoly {
            seed,
            path,
            index,
            gupta,
            expansion,
            quantum,
            extraction,
            json,
            ..
        } => {
            let mode = if gupta {
                FpolyMode::Gupta
            } else if expansion {
                FpolyMode::Expansion
            } else if quantum {
                FpolyMode::Quantum
            } else {
                FpolyMode::Direct
            };
            let out = cmd_fpoly(&read_seed(&seed)?, &path, index, mode, extraction.options())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
            } else {
                println!("{}", out.f);
                if let Some(c) = &out.certificate {
                    println!("certificate: {}", serde_json::to_string(c).expect("serializes"));
                }
            }
            Ok(0)
        }
        Command::Verify {
            seed,
            path,
            check,
            seed_random,
            trials,
            rank,
            max_len,
            extraction,
        } => {
            let checks = Check::parse_list(&check)?;
            let source = match (seed_random, seed) {
                (Some(s), _) => {
                    let mut options = RandomOptions {
                        max_len,
                        ..RandomOptions::default()
                    };
                    if let Some(n) = rank {
                        if n < 2 {
                            return Err(Error::Input("random seeds need rank >= 2".into()));
                        }
                        options.min_rank = n;
                        options.max_rank = n;
                    }
                    VerifySource::Random {
                        seed: s,
                        trials,
                        options,
                    }
                }
                (None, Some(file)) => VerifySource::File {
                    file: read_seed(&file)?,
                    path,
                },
                (None, None) => return Err(Error::Input("give a seed file or --seed-random".into())),
            };
            let report = cmd_verify(&source, &checks, extraction.options())?;
            println!("{}", report.to_json());
            Ok(report.exit_code())
        }
        Command::Example { name, output } => {
            let text = cmd_example(&name)?;
            match output {
                Some(p) => std::fs::write(&p, text + "\n")
                    .map_err(|e| Error::Input(format!("{}: {e}", p.display())))?,
                None => println!("{text}"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
