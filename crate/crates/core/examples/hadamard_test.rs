//! One-ancilla interferometry: <psi|U^dag V|psi> from an ancilla coherence,
//! exact and with finite shots.

use std::f64::consts::PI;

use qnetsim::circuit::Circuit;
use qnetsim::measure::{hadamard_test, hadamard_test_with, MeasurementMode};
use qnetsim::state::{Axis, StateVector};

fn main() -> qnetsim::Result<()> {
    let mut psi = StateVector::basis_state(2, 0)?;
    let mut prep = Circuit::new();
    prep.rotation(1, Axis::Y, PI / 3.0)
        .rotation(2, Axis::X, 0.7);
    prep.apply(&mut psi)?;

    let mut u = Circuit::new();
    u.zz(1, 2, 0.4);
    let mut v = Circuit::new();
    v.rotation(1, Axis::Z, 1.1).rotation(2, Axis::Y, -0.3);

    let exact = hadamard_test(&psi, &u, &v)?;
    println!(
        "exact        {:+.6} {:+.6}i",
        exact.value.re, exact.value.im
    );
    for shots in [100, 10_000, 1_000_000] {
        let r = hadamard_test_with(&psi, &u, &v, MeasurementMode::Sampled { shots, seed: 7 })?;
        println!(
            "{shots:>8} shots {:+.6} {:+.6}i  (stderr {:.4})",
            r.value.re,
            r.value.im,
            r.standard_error.unwrap_or(0.0)
        );
    }
    Ok(())
}
