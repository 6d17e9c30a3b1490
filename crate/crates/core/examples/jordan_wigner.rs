//! Fermion operators as Pauli strings, and the Hubbard Hamiltonian they build.

use num_complex::Complex64;
use qnetsim::fermion::{lower_operator, number_operator, quadratic_to_pauli, raise_operator};
use qnetsim::hubbard::{build_hamiltonian, partition_bonds, HubbardSpec};

fn main() -> qnetsim::Result<()> {
    for s in 1..=3 {
        println!("a_{s}     = {}", lower_operator(s)?);
        println!("a_{s}^dag = {}", raise_operator(s)?);
    }
    println!("n_2       = {}", number_operator(2)?);
    println!(
        "a_1^dag a_3 + h.c. = {}",
        quadratic_to_pauli(1, 3, Complex64::new(1.0, 0.0))?
    );

    let spec = HubbardSpec::new(2, 2, 1.0, 1.0, 4.0);
    let h = build_hamiltonian(&spec)?;
    println!("\n2x2 Hubbard model, U = 4: {} Pauli terms", h.len());
    for g in partition_bonds(&spec)? {
        let spin = g.spin.map(|s| s.to_string()).unwrap_or_default();
        println!(
            "  group {} {spin}: {} fermion terms, {} Pauli terms",
            g.label,
            g.terms.len(),
            g.to_pauli()?.len()
        );
    }
    Ok(())
}
