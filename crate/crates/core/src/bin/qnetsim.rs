use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qnetsim::pipeline::{self, RunConfig};
use qnetsim::Result;

#[derive(Parser)]
#[command(
    name = "qnetsim",
    version,
    about = "Hubbard-model spectroscopy on a simulated quantum network"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// TOML run configuration; defaults apply when omitted.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Override a config key, e.g. `--set lattice.nx=2`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Shorthand for `--set output.directory=DIR`.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<RunConfig> {
        let mut overrides = self.overrides.clone();
        if let Some(dir) = &self.out {
            overrides.push(format!("output.directory={:?}", dir.display().to_string()));
        }
        match &self.config {
            Some(path) => RunConfig::load(path, &overrides),
            None => RunConfig::from_toml_with("", &overrides),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Prepare, evolve, measure and Fourier-analyze the configured lattice.
    Spectrum(ConfigArgs),
    /// Sweep Thouless slice counts and report the preparation overlap.
    PrepareCheck(ConfigArgs),
    /// Dense sector eigenvalues with weights against the prepared state.
    Oracle(ConfigArgs),
    /// Spectral analysis of an existing `t,re,im` file.
    Fft {
        input: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Print the resolved configuration.
    Config(ConfigArgs),
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Spectrum(args) => {
            let config = args.resolve()?;
            let run = pipeline::cmd_spectrum(&config)?;
            println!("{:>14} {:>10} {:>6}", "lambda", "weight", "bin");
            for p in &run.peaks {
                println!("{:>14.6} {:>10.4} {:>6}", p.lambda, p.weight, p.bin);
            }
            eprintln!(
                "{} qubits, {} samples, wrote {}",
                run.metadata.qubits,
                run.series.len(),
                config.output.directory.display()
            );
        }
        Command::PrepareCheck(args) => {
            let config = args.resolve()?;
            for (steps, overlap) in pipeline::cmd_prepare_check(&config)? {
                println!("{steps:>6} {overlap:.12}");
            }
        }
        Command::Oracle(args) => {
            let config = args.resolve()?;
            for l in pipeline::cmd_oracle(&config)? {
                if l.weight > 1e-6 {
                    println!("{:>6} {:>14.8} {:>10.6}", l.index, l.lambda, l.weight);
                }
            }
        }
        Command::Fft { input, config } => {
            let resolved = config.resolve()?;
            let out: &Path = &resolved.output.directory;
            let (_, peaks) = pipeline::cmd_fft(&input, &resolved.fft, out)?;
            for p in &peaks {
                println!("{:>14.6} {:>10.4} {:>6}", p.lambda, p.weight, p.bin);
            }
        }
        Command::Config(args) => print!("{}", args.resolve()?.to_toml()),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
