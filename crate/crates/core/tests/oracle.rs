use qnetsim::hubbard::{build_hamiltonian, HubbardSpec};
use qnetsim::oracle::{dense_hamiltonian, restrict, sector_basis, SectorOracle};
use qnetsim::state::StateVector;

fn cross_check(spec: HubbardSpec) -> f64 {
    let h = build_hamiltonian(&spec).unwrap();
    let n = spec.sites();
    let mut worst: f64 = 0.0;
    for up in 0..=n {
        for down in 0..=n {
            let basis = sector_basis(&spec, up, down).unwrap();
            let dense = dense_hamiltonian(&spec, &basis).unwrap();
            let pauli = restrict(&h, &basis, spec.modes()).unwrap();
            for i in 0..basis.len() {
                for j in 0..basis.len() {
                    worst = worst.max((pauli[(i, j)] - dense[(i, j)]).norm());
                }
            }
        }
    }
    worst
}

#[test]
fn dense_matches_pauli_on_small_lattices() {
    for (nx, ny) in [(2, 1), (1, 2), (2, 2), (4, 1), (1, 4), (6, 1)] {
        let spec = HubbardSpec::new(nx, ny, 1.0, 0.6, 4.0);
        let err = cross_check(spec);
        assert!(err < 1e-10, "{nx}x{ny}: {err}");
    }
}

#[test]
fn weights_sum_to_one() {
    let spec = HubbardSpec::new(2, 2, 1.0, 1.0, 4.0);
    let oracle = SectorOracle::for_spec(&spec).unwrap();
    // modes 1, 2 up and 5, 6 down
    let phi = StateVector::basis_state(8, 0b0011_0011).unwrap();
    let total: f64 = oracle.weights(&phi).unwrap().iter().sum();
    assert!((total - 1.0).abs() < 1e-10);
    let series = oracle.loschmidt(&phi, 0.1, 8).unwrap();
    assert!((series.values()[0] - 1.0).norm() < 1e-12);
}

#[test]
fn eigenstate_loschmidt_is_a_phase() {
    let spec = HubbardSpec::new(2, 2, 1.0, 1.0, 4.0);
    let oracle = SectorOracle::for_spec(&spec).unwrap();
    let psi = oracle.eigenstate(3, 8).unwrap();
    let s = oracle.loschmidt(&psi, 0.2, 16).unwrap();
    for (j, v) in s.values().iter().enumerate() {
        let want = num_complex::Complex64::from_polar(1.0, -oracle.eigenvalues[3] * 0.2 * j as f64);
        assert!((v - want).norm() < 1e-10);
    }
}

#[test]
fn leaking_state_rejected() {
    let spec = HubbardSpec::new(2, 2, 1.0, 1.0, 4.0);
    let oracle = SectorOracle::for_spec(&spec).unwrap();
    let phi = StateVector::basis_state(8, 0b0001_0011).unwrap();
    assert!(oracle.weights(&phi).is_err());
}
