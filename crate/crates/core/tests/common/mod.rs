#![allow(dead_code)]

use num_complex::Complex64;
use qnetsim::circuit::Circuit;
use qnetsim::state::{Axis, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_state(n: usize, rng: &mut impl Rng) -> StateVector {
    let amps = (0..1usize << n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let mut s = StateVector::from_amplitudes(n, amps).unwrap();
    s.normalize();
    s
}

/// Random rotations and zz couplings on qubits `1..=n`.
pub fn random_circuit(n: usize, gates: usize, rng: &mut impl Rng) -> Circuit {
    let mut c = Circuit::new();
    for _ in 0..gates {
        let q = rng.gen_range(1..=n);
        let angle = rng.gen_range(-3.2..3.2);
        if n > 1 && rng.gen_bool(0.3) {
            let mut r = rng.gen_range(1..=n);
            while r == q {
                r = rng.gen_range(1..=n);
            }
            c.zz(q, r, angle);
        } else {
            let axis = [Axis::X, Axis::Y, Axis::Z][rng.gen_range(0..3)];
            c.rotation(q, axis, angle);
        }
    }
    c.add_phase(rng.gen_range(-1.0..1.0));
    c
}
