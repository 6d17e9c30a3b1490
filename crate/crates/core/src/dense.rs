//! Dense reference matrices for small registers.
//!
//! Everything here is built from Kronecker products of 2x2 matrices and is
//! independent of the bitmask kernels in [`crate::state`], so it serves as a
//! cross-check for them. Matrices are indexed by the same basis index as
//! [`StateVector`]: bit `q-1` set means qubit `q` is in `|0>`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::circuit::{Circuit, ControlValue, Gate};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::state::{rotation_matrix, Matrix2, StateVector};

pub type CMatrix = DMatrix<Complex64>;

/// Largest register accepted here; a `2^12` square matrix is already 256 MiB.
pub const MAX_DENSE_QUBITS: usize = 12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Element `(i, j)` of a one-qubit matrix given in the `{|0>, |1>}` basis,
/// re-indexed by the bit value (bit 1 is `|0>`).
pub fn from_qubit_basis(m: &Matrix2, i: usize, j: usize) -> Complex64 {
    m[1 - i][1 - j]
}

fn local(m: &Matrix2) -> CMatrix {
    CMatrix::from_fn(2, 2, |i, j| from_qubit_basis(m, i, j))
}

fn pauli_2x2(p: Option<Pauli>) -> Matrix2 {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    match p {
        None => [[o, z], [z, o]],
        Some(Pauli::X) => [[z, o], [o, z]],
        Some(Pauli::Y) => [[z, c(0.0, -1.0)], [c(0.0, 1.0), z]],
        Some(Pauli::Z) => [[o, z], [z, -o]],
    }
}

fn check(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DENSE_QUBITS {
        return Err(Error::UnsupportedRegister(n));
    }
    Ok(())
}

/// `m_n (x) ... (x) m_1` where `factor(q)` gives the matrix on qubit `q`.
fn kron_chain<F>(n: usize, factor: F) -> CMatrix
where
    F: Fn(usize) -> Matrix2,
{
    let mut out = CMatrix::identity(1, 1);
    for q in (1..=n).rev() {
        out = out.kronecker(&local(&factor(q)));
    }
    out
}

/// Matrix of a Pauli string, phase included.
pub fn pauli_matrix(p: &PauliString, n: usize) -> CMatrix {
    kron_chain(n, |q| pauli_2x2(p.factor(q))) * p.phase().to_complex()
}

/// Matrix of a Pauli sum.
pub fn sum_matrix(op: &PauliSum, n: usize) -> CMatrix {
    let dim = 1usize << n;
    let mut out = CMatrix::zeros(dim, dim);
    for (coef, p) in op.terms() {
        out += pauli_matrix(p, n) * *coef;
    }
    out
}

/// One-qubit matrix `m` acting on qubit `q` of an `n`-qubit register.
pub fn single_matrix(m: &Matrix2, q: usize, n: usize) -> CMatrix {
    let id = pauli_2x2(None);
    kron_chain(n, |k| if k == q { *m } else { id })
}

/// Unitary of one gate.
pub fn gate_matrix(gate: &Gate, n: usize) -> Result<CMatrix> {
    check(n)?;
    let in_range = |q: usize| {
        if q == 0 || q > n {
            Err(Error::QubitOutOfRange {
                qubit: q,
                num_qubits: n,
            })
        } else {
            Ok(())
        }
    };
    match gate {
        Gate::Rotation { qubit, axis, angle } => {
            in_range(*qubit)?;
            Ok(single_matrix(&rotation_matrix(*axis, *angle), *qubit, n))
        }
        Gate::ZZ {
            first,
            second,
            angle,
        } => {
            in_range(*first)?;
            in_range(*second)?;
            let zz = PauliString::from_factors([(*first, Pauli::Z), (*second, Pauli::Z)])?;
            let m = pauli_matrix(&zz, n);
            let dim = 1usize << n;
            Ok(CMatrix::identity(dim, dim) * c(angle.cos(), 0.0) + m * c(0.0, angle.sin()))
        }
        Gate::Controlled {
            ancilla,
            value,
            body,
        } => {
            in_range(*ancilla)?;
            let b = circuit_matrix(body, n)?;
            let bit_value = match value {
                ControlValue::Zero => 1,
                ControlValue::One => 0,
            };
            let dim = 1usize << n;
            let proj = CMatrix::from_fn(dim, dim, |i, j| {
                if i == j && (i >> (ancilla - 1)) & 1 == bit_value {
                    c(1.0, 0.0)
                } else {
                    c(0.0, 0.0)
                }
            });
            let id = CMatrix::identity(dim, dim);
            Ok(&proj * b + (id - &proj))
        }
    }
}

/// Unitary of a whole circuit, global phase included.
pub fn circuit_matrix(circuit: &Circuit, n: usize) -> Result<CMatrix> {
    check(n)?;
    let dim = 1usize << n;
    let mut u = CMatrix::identity(dim, dim);
    for g in circuit.gates() {
        u = gate_matrix(g, n)? * u;
    }
    Ok(u * Complex64::from_polar(1.0, circuit.global_phase()))
}

/// `exp(i theta H)` for Hermitian `H`.
pub fn expm_i_hermitian(h: &CMatrix, theta: f64) -> CMatrix {
    let eig = h.clone().symmetric_eigen();
    let phases = eig
        .eigenvalues
        .map(|e| Complex64::from_polar(1.0, theta * e));
    let v = &eig.eigenvectors;
    v * CMatrix::from_diagonal(&phases) * v.adjoint()
}

/// Matrix-vector product on a state.
pub fn apply(m: &CMatrix, state: &StateVector) -> Result<StateVector> {
    let v = nalgebra::DVector::from_column_slice(state.amplitudes());
    if m.ncols() != v.len() {
        return Err(Error::SizeMismatch {
            left: m.ncols().trailing_zeros() as usize,
            right: state.num_qubits(),
        });
    }
    StateVector::from_amplitudes(state.num_qubits(), (m * v).as_slice().to_vec())
}

/// Largest elementwise distance between two matrices.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Axis;

    #[test]
    fn z_is_plus_one_on_set_bit() {
        let z = pauli_matrix(&PauliString::parse("Z1").unwrap(), 1);
        assert_eq!(z[(1, 1)], c(1.0, 0.0));
        assert_eq!(z[(0, 0)], c(-1.0, 0.0));
    }

    #[test]
    fn kernels_match_dense_rotations() {
        let n = 3;
        let amps: Vec<Complex64> = (0..8)
            .map(|i| c(i as f64 * 0.1 + 0.2, 0.3 - i as f64 * 0.05))
            .collect();
        let mut s = StateVector::from_amplitudes(n, amps).unwrap();
        s.normalize();
        for (q, axis, a) in [(1, Axis::X, 0.3), (2, Axis::Y, -1.1), (3, Axis::Z, 0.7)] {
            let g = Gate::Rotation {
                qubit: q,
                axis,
                angle: a,
            };
            let expect = apply(&gate_matrix(&g, n).unwrap(), &s).unwrap();
            let mut got = s.clone();
            got.apply_rotation(q, axis, a).unwrap();
            for (x, y) in got.amplitudes().iter().zip(expect.amplitudes()) {
                assert!((x - y).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn cnot_truth_table() {
        let u = circuit_matrix(&crate::synth::cnot_circuit(1, 2).unwrap(), 2).unwrap();
        // qubit basis |c t>, index bit set = |0>
        let idx = |cq: usize, tq: usize| (1 - cq) | (1 - tq) << 1;
        for cq in 0..2 {
            for tq in 0..2 {
                let out_t = tq ^ cq;
                let col = idx(cq, tq);
                for row in 0..4 {
                    let want = if row == idx(cq, out_t) { 1.0 } else { 0.0 };
                    assert!((u[(row, col)] - c(want, 0.0)).norm() < 1e-14);
                }
            }
        }
    }
}
