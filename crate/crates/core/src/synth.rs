//! Compilation of unitaries into rotations and zz interactions.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::circuit::{Circuit, ControlValue, Gate};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::state::{qubit_bit, Axis, Matrix2};

/// Circuit for `exp(i theta P)`.
///
/// Every non-pivot factor is rotated to Z, then a ladder of
/// `exp(i pi/4 Z_p Z_q)` interactions folds the string onto the pivot qubit,
/// which is finally rotated to Z. The conjugating gates `G` satisfy
/// `G P G^dag = s Z_p`, so the circuit is `G`, `exp(i s theta Z_p)`, `G^dag`.
/// The pivot is the lowest qubit carrying an X or Y (the lowest qubit for
/// pure-Z strings); the ladder visits the others in ascending order.
///
/// The result is exact, with no leftover global phase. An identity string
/// yields a phase-only circuit.
pub fn decompose_exponential(p: &PauliString, theta: f64) -> Result<Circuit> {
    if !p.phase().is_real() {
        return Err(Error::NotHermitian(1.0));
    }
    let theta = if p.phase().power() == 2 {
        -theta
    } else {
        theta
    };
    let mut out = Circuit::new();
    let factors: Vec<(usize, Pauli)> = p.factors().collect();
    match factors.as_slice() {
        [] => {
            out.add_phase(theta);
            return Ok(out);
        }
        [(q, Pauli::Z)] => {
            out.rotation(*q, Axis::Z, -2.0 * theta);
            return Ok(out);
        }
        [(a, Pauli::Z), (b, Pauli::Z)] => {
            out.zz(*a, *b, theta);
            return Ok(out);
        }
        _ => {}
    }

    let (pivot, mut pivot_factor) = factors
        .iter()
        .copied()
        .find(|&(_, f)| f != Pauli::Z)
        .unwrap_or(factors[0]);

    let mut pre = Circuit::new();
    for &(q, f) in factors.iter().filter(|&&(q, _)| q != pivot) {
        match f {
            // exp(i pi/4 Y) X exp(-i pi/4 Y) = Z
            Pauli::X => {
                pre.rotation(q, Axis::Y, -FRAC_PI_2);
            }
            // exp(-i pi/4 X) Y exp(i pi/4 X) = Z
            Pauli::Y => {
                pre.rotation(q, Axis::X, FRAC_PI_2);
            }
            Pauli::Z => {}
        }
    }
    let mut sign = 1.0;
    if factors.len() > 1 {
        if pivot_factor == Pauli::Z {
            // exp(-i pi/4 Y) Z exp(i pi/4 Y) = X
            pre.rotation(pivot, Axis::Y, FRAC_PI_2);
            pivot_factor = Pauli::X;
        }
        for &(q, _) in factors.iter().filter(|&&(q, _)| q != pivot) {
            pre.zz(pivot, q, FRAC_PI_4);
            // X_p Z_q -> -Y_p, Y_p Z_q -> X_p
            pivot_factor = match pivot_factor {
                Pauli::X => {
                    sign = -sign;
                    Pauli::Y
                }
                _ => Pauli::X,
            };
        }
    }
    match pivot_factor {
        Pauli::X => {
            pre.rotation(pivot, Axis::Y, -FRAC_PI_2);
        }
        Pauli::Y => {
            pre.rotation(pivot, Axis::X, FRAC_PI_2);
        }
        Pauli::Z => {}
    }
    out.append(&pre);
    out.rotation(pivot, Axis::Z, -2.0 * sign * theta);
    out.append(&pre.inverse());
    Ok(out)
}

/// Angles `(alpha, beta, gamma, delta)` with
/// `V = e^{i alpha} R_z(beta) R_y(gamma) R_z(delta)`.
pub fn euler_decompose(v: &Matrix2) -> Result<(f64, f64, f64, f64)> {
    let dev = unitarity_deviation(v);
    if dev > 1e-10 {
        return Err(Error::NotUnitary(dev));
    }
    let det = v[0][0] * v[1][1] - v[0][1] * v[1][0];
    let alpha = det.arg() / 2.0;
    let w = Complex64::from_polar(1.0, -alpha);
    let (a, b) = (v[0][0] * w, v[1][0] * w);
    let gamma = 2.0 * b.norm().atan2(a.norm());
    const EPS: f64 = 1e-14;
    let (beta, delta) = if b.norm() < EPS {
        (-2.0 * a.arg(), 0.0)
    } else if a.norm() < EPS {
        (2.0 * b.arg(), 0.0)
    } else {
        let sum = -2.0 * a.arg();
        let diff = 2.0 * b.arg();
        ((sum + diff) / 2.0, (sum - diff) / 2.0)
    };
    Ok((alpha, beta, gamma, delta))
}

fn unitarity_deviation(v: &Matrix2) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                s += v[k][i].conj() * v[k][j];
            }
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((s - target).norm());
        }
    }
    dev
}

/// The circuit `e^{i alpha} R_z(beta) R_y(gamma) R_z(delta)` on qubit `q`.
pub fn euler_circuit(q: usize, angles: (f64, f64, f64, f64)) -> Circuit {
    let (alpha, beta, gamma, delta) = angles;
    let mut c = Circuit::new();
    c.rotation(q, Axis::Z, delta)
        .rotation(q, Axis::Y, gamma)
        .rotation(q, Axis::Z, beta)
        .add_phase(alpha);
    c
}

/// Controlled `exp(-i Q t)` built from the identity
/// `C-U = U(t/2) U(t/2)^{-sigma_z^a}`, with `U(t)^{-sigma_z^a} = exp(i Q (x) sigma_z^a t)`.
///
/// Each of the `slices` slices applies `exp(-i c P dt/2)` for every term in
/// order, then `exp(+-i c P Z_a dt/2)` for every term in reverse order. With the
/// ancilla outside the control state the two halves cancel exactly; in the
/// control state they form a symmetric product, so a multi-term `Q` carries a
/// second-order splitting error in `dt = t/slices` (none if the terms commute).
pub fn controlled_exponential(
    q: &PauliSum,
    t: f64,
    ancilla: usize,
    value: ControlValue,
    slices: usize,
) -> Result<Circuit> {
    let terms = q.real_terms(1e-12)?;
    if q.support_mask() & qubit_bit(ancilla) as u64 != 0 {
        return Err(Error::AncillaInSupport { ancilla });
    }
    if slices == 0 {
        return Err(Error::InvalidArgument(
            "at least one slice is required".into(),
        ));
    }
    let za = PauliString::single(ancilla, Pauli::Z)?;
    let dt = t / slices as f64;
    let ctrl_sign = match value {
        ControlValue::One => 1.0,
        ControlValue::Zero => -1.0,
    };
    let mut slice = Circuit::new();
    for &(c, p) in &terms {
        slice.append(&decompose_exponential(&p, -c * dt / 2.0)?);
    }
    for &(c, p) in terms.iter().rev() {
        slice.append(&decompose_exponential(&(p * za), ctrl_sign * c * dt / 2.0)?);
    }
    let mut out = Circuit::new();
    for _ in 0..slices {
        out.append(&slice);
    }
    Ok(out)
}

/// C-NOT as the six-factor product
/// `e^{i pi/4} e^{-i pi/4 Z_c} e^{-i pi/4 X_t} e^{i pi/4 Y_t} e^{-i pi/4 Z_c Z_t} e^{-i pi/4 Y_t}`.
///
/// The leading `e^{i pi/4}` is kept as the circuit's global phase, so the
/// circuit is exactly C-NOT; its gates alone give `e^{-i pi/4}` C-NOT.
pub fn cnot_circuit(control: usize, target: usize) -> Result<Circuit> {
    if control == target || control == 0 || target == 0 {
        return Err(Error::InvalidGate(format!(
            "C-NOT needs distinct qubits, got control {control} and target {target}"
        )));
    }
    let mut c = Circuit::new();
    c.rotation(target, Axis::Y, FRAC_PI_2)
        .zz(control, target, -FRAC_PI_4)
        .rotation(target, Axis::Y, -FRAC_PI_2)
        .rotation(target, Axis::X, FRAC_PI_2)
        .rotation(control, Axis::Z, FRAC_PI_2)
        .add_phase(FRAC_PI_4);
    Ok(c)
}

/// Hadamard as `i e^{-i pi/2 X} e^{-i pi/4 Y}`.
pub fn hadamard_circuit(q: usize) -> Circuit {
    let mut c = Circuit::new();
    c.rotation(q, Axis::Y, FRAC_PI_2)
        .rotation(q, Axis::X, PI)
        .add_phase(FRAC_PI_2);
    c
}

/// The Pauli string itself as a circuit: `P = i^k exp(-i pi/2 P)` up to its phase.
pub fn pauli_circuit(p: &PauliString) -> Result<Circuit> {
    let mut c = Circuit::new();
    if p.is_identity() {
        c.add_phase(p.phase().power() as f64 * FRAC_PI_2);
        return Ok(c);
    }
    // sigma = i exp(-i pi/2 sigma), one factor per qubit
    for (q, f) in p.factors() {
        let axis = match f {
            Pauli::X => Axis::X,
            Pauli::Y => Axis::Y,
            Pauli::Z => Axis::Z,
        };
        c.rotation(q, axis, PI).add_phase(FRAC_PI_2);
    }
    c.add_phase(p.phase().power() as f64 * FRAC_PI_2);
    Ok(c)
}

/// Counts `(single-qubit, two-qubit)` gates, used by the synthesis bounds.
pub fn gate_profile(c: &Circuit) -> (usize, usize) {
    let mut single = 0;
    let mut double = 0;
    for g in c.gates() {
        match g {
            Gate::Rotation { .. } => single += 1,
            Gate::ZZ { .. } => double += 1,
            Gate::Controlled { body, .. } => {
                let (s, d) = gate_profile(body);
                single += s;
                double += d;
            }
        }
    }
    (single, double)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense;

    #[test]
    fn single_z_is_one_rotation() {
        let c = decompose_exponential(&PauliString::parse("Z3").unwrap(), 0.4).unwrap();
        assert_eq!(c.gate_count(), 1);
        assert_eq!(
            c.gates()[0],
            Gate::Rotation {
                qubit: 3,
                axis: Axis::Z,
                angle: -0.8
            }
        );
    }

    #[test]
    fn identity_string_is_phase_only() {
        let c = decompose_exponential(&PauliString::identity(), 0.3).unwrap();
        assert!(c.is_empty());
        assert_eq!(c.global_phase(), 0.3);
        let neg = decompose_exponential(&-PauliString::identity(), 0.3).unwrap();
        assert_eq!(neg.global_phase(), -0.3);
    }

    #[test]
    fn imaginary_phase_rejected() {
        let p = PauliString::parse("iX1").unwrap();
        assert!(matches!(
            decompose_exponential(&p, 0.1),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn worked_ladder_is_linear() {
        // X1 Z2 ... Z_{j-1} X_j
        let mut counts = Vec::new();
        for j in 2..=8 {
            let mut f = vec![(1, Pauli::X)];
            f.extend((2..j).map(|q| (q, Pauli::Z)));
            f.push((j, Pauli::X));
            let p = PauliString::from_factors(f).unwrap();
            let c = decompose_exponential(&p, 0.2).unwrap();
            let (s, d) = gate_profile(&c);
            assert_eq!(d, 2 * (j - 1));
            assert!(s <= 2 * j + 1);
            // first basis change is exp(i pi/4 Y_j), the first ladder rung exp(i pi/4 Z1 Z2)
            assert_eq!(
                c.gates()[0],
                Gate::Rotation {
                    qubit: j,
                    axis: Axis::Y,
                    angle: -FRAC_PI_2
                }
            );
            assert_eq!(
                c.gates()[1],
                Gate::ZZ {
                    first: 1,
                    second: 2,
                    angle: FRAC_PI_4
                }
            );
            counts.push(c.gate_count());
        }
        let diffs: Vec<usize> = counts.windows(2).map(|w| w[1] - w[0]).collect();
        assert!(diffs.iter().all(|&d| d == diffs[0]), "{counts:?}");
    }

    #[test]
    fn euler_identity_is_zero() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let (a, b, g, d) = euler_decompose(&[[one, zero], [zero, one]]).unwrap();
        assert_eq!((a, b, g, d), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn euler_rejects_non_unitary() {
        let one = Complex64::new(1.0, 0.0);
        let two = Complex64::new(2.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert!(matches!(
            euler_decompose(&[[two, zero], [zero, one]]),
            Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn euler_hadamard_reconstructs() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = [
            [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
            [Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
        ];
        let angles = euler_decompose(&m).unwrap();
        let u = dense::circuit_matrix(&euler_circuit(1, angles), 1).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((u[(i, j)] - dense::from_qubit_basis(&m, i, j)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn hadamard_circuit_matches_matrix() {
        let u = dense::circuit_matrix(&hadamard_circuit(1), 1).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = [
            [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
            [Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
        ];
        for i in 0..2 {
            for j in 0..2 {
                assert!((u[(i, j)] - dense::from_qubit_basis(&m, i, j)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn cnot_same_qubit_rejected() {
        assert!(matches!(cnot_circuit(2, 2), Err(Error::InvalidGate(_))));
    }

    #[test]
    fn controlled_exponential_rejects_ancilla_in_support() {
        let q = PauliSum::from_string(PauliString::parse("Z1 X2").unwrap());
        assert!(matches!(
            controlled_exponential(&q, 1.0, 2, ControlValue::One, 1),
            Err(Error::AncillaInSupport { ancilla: 2 })
        ));
    }

    #[test]
    fn pauli_circuit_is_the_string() {
        for text in ["X1", "Y1 Z2", "-Z1 X3", "iX2"] {
            let p = PauliString::parse(text).unwrap();
            let c = pauli_circuit(&p).unwrap();
            let u = dense::circuit_matrix(&c, 3).unwrap();
            let m = dense::pauli_matrix(&p, 3);
            assert!((&u - &m).norm() < 1e-13, "{text}");
        }
    }
}
