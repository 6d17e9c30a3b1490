//! Ground-state expectation of Z_1 from an imperfect trial state, using the
//! mixed estimator and its first-order correction.

use std::f64::consts::PI;

use num_complex::Complex64;
use qnetsim::circuit::Circuit;
use qnetsim::hubbard::{trotter_terms, HubbardSpec};
use qnetsim::measure::{mixed_estimator, Engine, SeriesConfig};
use qnetsim::oracle::SectorOracle;
use qnetsim::pauli::{PauliString, PauliSum};
use qnetsim::state::{Axis, StateVector};
use qnetsim::trotter::TrotterOrder;

fn main() -> qnetsim::Result<()> {
    let spec = HubbardSpec::new(2, 1, 1.0, 1.0, 4.0);
    let nq = spec.modes();
    let oracle = SectorOracle::for_spec(&spec)?;
    let ground = oracle.eigenstate(0, nq)?;
    let excited = oracle.eigenstate(1, nq)?;
    let eps = 0.15;
    let amps: Vec<Complex64> = ground
        .amplitudes()
        .iter()
        .zip(excited.amplitudes())
        .map(|(g, e)| g + e * eps)
        .collect();
    let mut trial = StateVector::from_amplitudes(nq, amps)?;
    trial.normalize();

    let mut o = Circuit::new();
    o.rotation(1, Axis::Z, PI).add_phase(PI / 2.0);
    let cfg = SeriesConfig {
        dt: 0.05,
        stride: 2,
        samples: 512,
        order: TrotterOrder::Second,
        engine: Engine::Fused,
    };
    let est = mixed_estimator(&trial, &o, &trotter_terms(&spec)?, &cfg, 0.05)?;
    let z1 = PauliSum::from_string(PauliString::parse("Z1")?);
    println!(
        "lambda0   {:+.5}  (exact {:+.5})",
        est.lambda0, oracle.eigenvalues[0]
    );
    println!("trial     {:+.5}", est.trial.re);
    println!("mixed     {:+.5}", est.mixed.re);
    println!("corrected {:+.5}", est.corrected.re);
    println!("exact     {:+.5}", ground.expectation(&z1)?.re);
    Ok(())
}
