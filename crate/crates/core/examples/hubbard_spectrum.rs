//! Full pipeline on a small lattice: prepare, evolve, Fourier transform,
//! and compare peaks with exact diagonalization.
//!
//! `cargo run --release --example hubbard_spectrum -- 4 2` runs the 4x2 lattice
//! (minutes for the evolution, longer for the dense check).

use qnetsim::oracle::SectorOracle;
use qnetsim::pipeline::{self, RunConfig};

fn main() -> qnetsim::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (nx, ny) = match args[..] {
        [nx, ny, ..] => (nx, ny),
        _ => (2, 2),
    };
    let config = RunConfig::from_toml_with(
        "",
        &[format!("lattice.nx={nx}"), format!("lattice.ny={ny}")],
    )?;
    let run = pipeline::run_spectrum(&config)?;
    let m = &run.metadata;
    println!(
        "{nx}x{ny}: {} qubits, stride {}, spacing {:.3}, {:.1}s",
        m.qubits, m.stride, m.sample_spacing, m.wall_seconds
    );
    println!("{:>12} {:>8}", "lambda", "weight");
    for p in &run.peaks {
        println!("{:>12.5} {:>8.4}", p.lambda, p.weight);
    }

    let prepared = pipeline::prepare(&config)?;
    let oracle = SectorOracle::for_spec(&config.spec())?;
    println!("\nexact levels with weight > 0.01");
    for (l, w) in oracle
        .eigenvalues
        .iter()
        .zip(oracle.weights(&prepared.state)?)
    {
        if w > 0.01 {
            println!("{l:>12.5} {w:>8.4}");
        }
    }
    Ok(())
}
