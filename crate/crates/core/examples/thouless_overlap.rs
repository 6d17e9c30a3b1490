//! Thouless preparation of a four-mode determinant: generator, then overlap
//! with the exact Slater state as the slice count grows.

use qnetsim::prep::{exact_slater_state, four_site_example, logm_unitary, thouless_prepare};
use qnetsim::state::StateVector;

fn main() -> qnetsim::Result<()> {
    let b = four_site_example();
    let m = logm_unitary(&b)?;
    println!("M / (pi/4):");
    for r in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|c| format!("{:+.6}", m[(r, c)].re / std::f64::consts::FRAC_PI_4))
            .collect();
        println!("  {}", row.join(" "));
    }
    let exact = exact_slater_state(&b, &[1, 2], 4)?;
    let boot = StateVector::basis_state(4, 0b0011)?;
    println!("steps   dt1      |<exact|prepared>|   deficit");
    for steps in [1, 2, 5, 10, 20, 50, 100] {
        let prepared = thouless_prepare(&boot, &m, steps)?;
        let o = exact.inner(&prepared)?.norm();
        println!(
            "{steps:>5}  {:<7.3}  {o:.12}       {:.3e}",
            1.0 / steps as f64,
            1.0 - o
        );
    }
    Ok(())
}
