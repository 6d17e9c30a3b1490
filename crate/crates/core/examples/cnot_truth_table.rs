//! C-NOT built from Ising and single-qubit rotations, printed as a truth table.

use qnetsim::state::StateVector;
use qnetsim::synth::{cnot_circuit, gate_profile};

fn main() -> qnetsim::Result<()> {
    let c = cnot_circuit(1, 2)?;
    let (one, two) = gate_profile(&c);
    println!(
        "{one} single-qubit gates, {two} two-qubit gate(s), global phase {:.4}",
        c.global_phase()
    );
    println!("{c}");
    // qubit value v is stored as bit 1 - v
    let index = |ctrl: usize, tgt: usize| (1 - ctrl) | (1 - tgt) << 1;
    println!("ctrl tgt -> ctrl tgt   amplitude");
    for ctrl in 0..2 {
        for tgt in 0..2 {
            let mut s = StateVector::basis_state(2, index(ctrl, tgt))?;
            c.apply(&mut s)?;
            let out = tgt ^ ctrl;
            let a = s.amplitude(index(ctrl, out));
            println!(
                "  {ctrl}   {tgt}  ->  {ctrl}   {out}    {:+.6}{:+.6}i",
                a.re, a.im
            );
        }
    }
    Ok(())
}
