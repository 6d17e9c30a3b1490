mod common;

use common::{random_circuit, random_state, rng};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use qnetsim::circuit::ControlValue;
use qnetsim::dense::{self, CMatrix};
use qnetsim::fermion::{lower_operator, raise_operator};
use qnetsim::hubbard::{number_total, spin_z, trotter_terms, HubbardSpec};
use qnetsim::pauli::{Pauli, PauliString, PauliSum, Phase};
use qnetsim::prep::{expm_i, logm_unitary, unitarity_deviation};
use qnetsim::state::StateVector;
use qnetsim::synth::{
    controlled_exponential, decompose_exponential, euler_circuit, euler_decompose,
};
use qnetsim::trotter::TrotterOrder;
use rand::Rng;

fn pauli_string(n: usize) -> impl Strategy<Value = PauliString> {
    (proptest::collection::vec(0u8..4, n), 0u8..4).prop_map(|(codes, phase)| {
        let factors = codes.iter().enumerate().filter_map(|(q, &c)| {
            let p = match c {
                1 => Pauli::X,
                2 => Pauli::Y,
                3 => Pauli::Z,
                _ => return None,
            };
            Some((q + 1, p))
        });
        PauliString::from_factors(factors)
            .unwrap()
            .with_phase(Phase::from_power(phase as u32))
    })
}

fn real_string(n: usize) -> impl Strategy<Value = PauliString> {
    pauli_string(n).prop_map(|p| p.unphased())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pauli_product_is_associative(a in pauli_string(5), b in pauli_string(5), c in pauli_string(5)) {
        prop_assert_eq!((a * b) * c, a * (b * c));
    }

    #[test]
    fn pauli_product_matches_matrices(a in pauli_string(3), b in pauli_string(3)) {
        let lhs = dense::pauli_matrix(&(a * b), 3);
        let rhs = dense::pauli_matrix(&a, 3) * dense::pauli_matrix(&b, 3);
        prop_assert!(dense::max_abs_diff(&lhs, &rhs) < 1e-14);
        let commute = dense::max_abs_diff(
            &(dense::pauli_matrix(&a, 3) * dense::pauli_matrix(&b, 3)),
            &(dense::pauli_matrix(&b, 3) * dense::pauli_matrix(&a, 3)),
        ) < 1e-14;
        prop_assert_eq!(a.commutes_with(&b), commute);
    }

    #[test]
    fn pauli_exponential_kernel_matches_gates_and_dense(p in real_string(5), theta in -3.2f64..3.2, seed in 0u64..1000) {
        let mut r = rng(seed);
        let psi = random_state(5, &mut r);
        let mut fused = psi.clone();
        fused.apply_pauli_exp(&p, theta).unwrap();
        let mut gates = psi.clone();
        decompose_exponential(&p, theta).unwrap().apply(&mut gates).unwrap();
        let h = dense::pauli_matrix(&p, 5);
        let want = dense::apply(&dense::expm_i_hermitian(&h, theta), &psi).unwrap();
        for i in 0..psi.dim() {
            prop_assert!((fused.amplitude(i) - want.amplitude(i)).norm() < 1e-12);
            prop_assert!((gates.amplitude(i) - want.amplitude(i)).norm() < 1e-12);
        }
    }

    #[test]
    fn decomposition_unitary_matches_exponential(p in real_string(4), theta in -3.2f64..3.2) {
        let c = decompose_exponential(&p, theta).unwrap();
        let got = dense::circuit_matrix(&c, 4).unwrap();
        let want = dense::expm_i_hermitian(&dense::pauli_matrix(&p, 4), theta);
        prop_assert!(dense::max_abs_diff(&got, &want) < 1e-12);
    }

    #[test]
    fn circuits_preserve_norm_and_are_linear(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let c = random_circuit(4, 20, &mut r);
        let a = random_state(4, &mut r);
        let b = random_state(4, &mut r);
        let (x, y) = (Complex64::new(0.3, -0.7), Complex64::new(-1.1, 0.2));
        let combo: Vec<Complex64> = a.amplitudes().iter().zip(b.amplitudes()).map(|(p, q)| x * p + y * q).collect();
        let mut combo = StateVector::from_amplitudes(4, combo).unwrap();
        let (mut ca, mut cb) = (a.clone(), b.clone());
        c.apply(&mut ca).unwrap();
        c.apply(&mut cb).unwrap();
        c.apply(&mut combo).unwrap();
        prop_assert!((ca.norm() - 1.0).abs() < 1e-12);
        for i in 0..16 {
            prop_assert!((combo.amplitude(i) - (x * ca.amplitude(i) + y * cb.amplitude(i))).norm() < 1e-12);
        }
    }

    #[test]
    fn basis_states_round_trip(n in 1usize..8, seed in 0u64..1000) {
        let index = (seed as usize) % (1 << n);
        let s = StateVector::basis_state(n, index).unwrap();
        let occ = qnetsim::state::occupancies(index, n);
        prop_assert_eq!(qnetsim::state::basis_index(&occ), index);
        prop_assert_eq!(s.amplitude(index), Complex64::new(1.0, 0.0));
        prop_assert!((s.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn euler_angles_rebuild_random_unitaries(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let m = random_unitary(2, &mut r);
        let u = [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]];
        let angles = euler_decompose(&u).unwrap();
        let c = euler_circuit(1, angles);
        let got = dense::circuit_matrix(&c, 1).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((dense::from_qubit_basis(&u, i, j) - got[(i, j)]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn matrix_logarithm_round_trips(seed in 0u64..10_000, n in 1usize..6) {
        let mut r = rng(seed);
        let b = random_unitary(n, &mut r);
        let m = logm_unitary(&b).unwrap();
        let back = expm_i(&m).unwrap();
        prop_assert!(dense::max_abs_diff(&back, &b) < 1e-10);
        // eigenphases stay in (-pi, pi]
        let eig = m.clone().symmetric_eigen();
        prop_assert!(eig.eigenvalues.iter().all(|&e| e > -std::f64::consts::PI - 1e-9 && e <= std::f64::consts::PI + 1e-9));
    }
}

fn random_unitary(n: usize, r: &mut impl Rng) -> CMatrix {
    let g = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
    });
    let h = (&g + g.adjoint()) * Complex64::new(0.5, 0.0);
    let u = expm_i(&h).unwrap();
    assert!(unitarity_deviation(&u) < 1e-12);
    u
}

#[test]
fn logm_is_stable_under_basis_permutation() {
    let mut r = rng(12);
    let b = random_unitary(4, &mut r);
    let perm = DMatrix::from_fn(4, 4, |i, j| {
        if j == (i + 1) % 4 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let m = logm_unitary(&b).unwrap();
    let mp = logm_unitary(&(&perm * &b * perm.adjoint())).unwrap();
    assert!(dense::max_abs_diff(&(&perm * m * perm.adjoint()), &mp) < 1e-9);
}

#[test]
fn anticommutators_as_dense_matrices() {
    for n in 1..=4 {
        let id = CMatrix::identity(1 << n, 1 << n);
        let mat = |s: &PauliSum| dense::sum_matrix(s, n);
        for j in 1..=n {
            for k in 1..=n {
                let (aj, ak) = (
                    mat(&lower_operator(j).unwrap()),
                    mat(&lower_operator(k).unwrap()),
                );
                let ajd = mat(&raise_operator(j).unwrap());
                let mixed = &ajd * &ak + &ak * &ajd;
                let want = if j == k {
                    id.clone()
                } else {
                    CMatrix::zeros(1 << n, 1 << n)
                };
                assert!(dense::max_abs_diff(&mixed, &want) < 1e-12);
                let same = &aj * &ak + &ak * &aj;
                assert!(same.iter().all(|z| z.norm() < 1e-12));
            }
        }
    }
}

#[test]
fn controlled_exponential_acts_on_control_branch() {
    let q = PauliSum::from_terms([
        (
            Complex64::new(0.6, 0.0),
            PauliString::parse("X1 Z2").unwrap(),
        ),
        (Complex64::new(-0.4, 0.0), PauliString::parse("Y2").unwrap()),
    ]);
    let h = dense::sum_matrix(&q, 2);
    let exact = dense::expm_i_hermitian(&h, -0.8);
    let slices = 200;
    for value in [ControlValue::One, ControlValue::Zero] {
        let c = controlled_exponential(&q, 0.8, 3, value, slices).unwrap();
        let full = dense::circuit_matrix(&c, 3).unwrap();
        // ancilla bit 2 set means |0>
        let (on, off) = match value {
            ControlValue::One => (0usize, 4usize),
            ControlValue::Zero => (4, 0),
        };
        for i in 0..4 {
            for j in 0..4 {
                let idle = if i == j { 1.0 } else { 0.0 };
                assert!((full[(i + off, j + off)] - idle).norm() < 1e-12);
                assert!((full[(i + on, j + on)] - exact[(i, j)]).norm() < 1e-4);
                assert!(full[(i + on, j + off)].norm() < 1e-12);
            }
        }
    }
}

#[test]
fn trotter_steps_conserve_number_and_spin() {
    let spec = HubbardSpec::new(2, 2, 1.0, 0.7, 3.0);
    let terms = trotter_terms(&spec).unwrap();
    let n_op = number_total(&spec).unwrap();
    let sz = spin_z(&spec).unwrap();
    let mut r = rng(1);
    // superposition inside the (2, 1) sector
    let mut amps = vec![Complex64::new(0.0, 0.0); 256];
    for (i, a) in amps.iter_mut().enumerate() {
        if (i & 0xf).count_ones() == 2 && (i >> 4).count_ones() == 1 {
            *a = Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        }
    }
    let mut s = StateVector::from_amplitudes(8, amps).unwrap();
    s.normalize();
    let (n0, s0) = (
        s.expectation(&n_op).unwrap().re,
        s.expectation(&sz).unwrap().re,
    );
    for order in [TrotterOrder::First, TrotterOrder::Second] {
        let step = terms.step(0.05, order).unwrap();
        let mut st = s.clone();
        for _ in 0..50 {
            step.apply(&mut st).unwrap();
        }
        assert!((st.norm() - 1.0).abs() < 1e-12);
        assert!((st.expectation(&n_op).unwrap().re - n0).abs() < 1e-10);
        assert!((st.expectation(&sz).unwrap().re - s0).abs() < 1e-10);
        let leak =
            st.weight_where(|i| !((i & 0xf).count_ones() == 2 && (i >> 4).count_ones() == 1));
        assert!(leak < 1e-20);
    }
}
