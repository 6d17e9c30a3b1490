//! Slater-determinant preparation through `exp(i a^dag M a)`.
//!
//! An orbital matrix `B` defines `b_k^dag = sum_p B_pk a_p^dag`. With
//! `B = e^{iM}`, applying `exp(i sum_jk M_jk a_j^dag a_k)` to a basis state
//! that occupies modes `k_1..k_n` gives `b_{k_1}^dag ... b_{k_n}^dag |vac>`
//! up to a global phase.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::fermion::quadratic_exponential;
use crate::state::StateVector;

pub type CMatrix = DMatrix<Complex64>;

const UNITARY_TOLERANCE: f64 = 1e-10;
const HERMITIAN_TOLERANCE: f64 = 1e-12;

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn unitarity_deviation(b: &CMatrix) -> f64 {
    max_abs(&(b.adjoint() * b - CMatrix::identity(b.nrows(), b.ncols())))
}

pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// Hermitian `M` with `e^{iM} = B`, eigenphases in `(-pi, pi]`.
///
/// Eigenvalues within `1e-9` of `-1` get phase `+pi`.
pub fn logm_unitary(b: &CMatrix) -> Result<CMatrix> {
    if !b.is_square() {
        return Err(Error::InvalidArgument("matrix must be square".into()));
    }
    let dev = unitarity_deviation(b);
    if dev > UNITARY_TOLERANCE {
        return Err(Error::NotUnitary(dev));
    }
    let n = b.nrows();
    // A unitary matrix is normal, so its Schur form is diagonal.
    let (q, t) = b.clone().schur().unpack();
    let phases: Vec<f64> = (0..n)
        .map(|i| {
            let z = t[(i, i)];
            if (z + 1.0).norm() < 1e-9 {
                std::f64::consts::PI
            } else {
                z.arg()
            }
        })
        .collect();
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        phases.iter().map(|&p| Complex64::new(p, 0.0)),
    ));
    let mut m = &q * d * q.adjoint();
    // symmetrize away rounding
    m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let back = expm_i(&m)?;
    let residual = max_abs(&(back - b));
    if residual > UNITARY_TOLERANCE {
        return Err(Error::Eigensolver(format!(
            "matrix logarithm residual {residual:e}"
        )));
    }
    Ok(m)
}

/// `e^{iM}` for Hermitian `M`.
pub fn expm_i(m: &CMatrix) -> Result<CMatrix> {
    let dev = hermiticity_deviation(m);
    if dev > 1e-9 {
        return Err(Error::NotHermitian(dev));
    }
    let eig = m.clone().symmetric_eigen();
    let phases = eig.eigenvalues.map(|e| Complex64::from_polar(1.0, e));
    let v = &eig.eigenvectors;
    Ok(v * CMatrix::from_diagonal(&phases) * v.adjoint())
}

/// Generator `M` and orbital matrix `B = e^{iM}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitalRotation {
    pub generator: CMatrix,
    pub unitary: CMatrix,
}

impl OrbitalRotation {
    pub fn from_unitary(b: CMatrix) -> Result<Self> {
        let generator = logm_unitary(&b)?;
        Ok(Self {
            generator,
            unitary: b,
        })
    }

    pub fn from_generator(m: CMatrix) -> Result<Self> {
        let dev = hermiticity_deviation(&m);
        if dev > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian(dev));
        }
        let unitary = expm_i(&m)?;
        Ok(Self {
            generator: m,
            unitary,
        })
    }

    pub fn modes(&self) -> usize {
        self.generator.nrows()
    }
}

/// One slice `prod exp(i/steps (M_jk a_j^dag a_k + h.c.))`: diagonal terms
/// first, then pairs `j < k` in lexicographic order. Modes are 1-based.
pub fn thouless_slice(m: &CMatrix, steps: usize) -> Result<Circuit> {
    let dev = hermiticity_deviation(m);
    if dev > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian(dev));
    }
    let n = m.nrows();
    let theta = 1.0 / steps as f64;
    let mut c = Circuit::new();
    // zero entries are identity factors
    for j in 0..n {
        if m[(j, j)].re != 0.0 {
            c.append(&quadratic_exponential(j + 1, j + 1, m[(j, j)], theta)?);
        }
    }
    for j in 0..n {
        for k in j + 1..n {
            if m[(j, k)] != Complex64::new(0.0, 0.0) {
                c.append(&quadratic_exponential(j + 1, k + 1, m[(j, k)], theta)?);
            }
        }
    }
    Ok(c)
}

/// Trotterized `exp(i a^dag M a)` applied to `boot` with `steps` slices,
/// i.e. a step `dt1 = 1/steps`. `steps = 0` returns `boot` unchanged.
pub fn thouless_prepare(boot: &StateVector, m: &CMatrix, steps: usize) -> Result<StateVector> {
    if m.nrows() > boot.num_qubits() || !m.is_square() {
        return Err(Error::SizeMismatch {
            left: m.nrows(),
            right: boot.num_qubits(),
        });
    }
    let nonzero: Vec<usize> = (0..boot.dim())
        .filter(|&i| boot.amplitude(i).norm() > 0.0)
        .collect();
    if nonzero.len() != 1 {
        return Err(Error::InvalidArgument(
            "boot state must be a basis state".into(),
        ));
    }
    let mut state = boot.clone();
    if steps == 0 {
        return Ok(state);
    }
    let slice = thouless_slice(m, steps)?;
    for _ in 0..steps {
        slice.apply(&mut state)?;
    }
    Ok(state)
}

/// `prod_{k in occupied} b_k^dag |vac>` on `num_qubits` qubits, from
/// determinants of `B` restricted to the occupied columns (1-based).
pub fn exact_slater_state(
    b: &CMatrix,
    occupied: &[usize],
    num_qubits: usize,
) -> Result<StateVector> {
    let n = b.nrows();
    if n > num_qubits || !b.is_square() {
        return Err(Error::SizeMismatch {
            left: n,
            right: num_qubits,
        });
    }
    if occupied.iter().any(|&k| k == 0 || k > n) {
        return Err(Error::InvalidArgument(format!(
            "occupied orbitals must lie in 1..={n}"
        )));
    }
    let ne = occupied.len();
    let mut state = StateVector::basis_state(num_qubits, 0)?;
    let amps = state.amplitudes_mut();
    amps[0] = Complex64::new(0.0, 0.0);
    for config in 0usize..1 << n {
        if config.count_ones() as usize != ne {
            continue;
        }
        let rows: Vec<usize> = (0..n).filter(|&p| config >> p & 1 == 1).collect();
        // a^dag_{p_1} ... a^dag_{p_n} |vac> with p ascending is +|config>
        let sub = CMatrix::from_fn(ne, ne, |i, j| b[(rows[i], occupied[j] - 1)]);
        amps[config] = if ne == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            sub.determinant()
        };
    }
    let norm = state.norm();
    if norm == 0.0 {
        return Err(Error::InvalidArgument(
            "occupied orbitals are linearly dependent".into(),
        ));
    }
    state.normalize();
    Ok(state)
}

/// Plain-text grid of a complex matrix, one row per line, `re+imi` entries.
pub fn format_matrix(m: &CMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| format!("{:.16e}{:+.16e}i", m[(i, j)].re, m[(i, j)].im))
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// Plane-wave orbitals `c_k^dag = 1/2 sum_j e^{i k (j-1)} a_j^dag` on a
/// four-site ring, `k = 0, pi/2, pi, 3pi/2`, as the column-orbital matrix `B`.
pub fn four_site_example() -> CMatrix {
    CMatrix::from_fn(4, 4, |p, k| {
        Complex64::from_polar(0.5, std::f64::consts::FRAC_PI_2 * (k * p) as f64)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_log_is_zero() {
        let m = logm_unitary(&CMatrix::identity(3, 3)).unwrap();
        assert!(max_abs(&m) < 1e-14);
    }

    #[test]
    fn non_unitary_rejected() {
        let b = CMatrix::identity(2, 2) * Complex64::new(2.0, 0.0);
        assert!(matches!(logm_unitary(&b), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn minus_one_maps_to_pi() {
        let b = CMatrix::identity(2, 2) * Complex64::new(-1.0, 0.0);
        let m = logm_unitary(&b).unwrap();
        assert!((m[(0, 0)].re - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn zero_generator_keeps_boot() {
        let boot = StateVector::basis_state(4, 3).unwrap();
        let s = thouless_prepare(&boot, &CMatrix::zeros(4, 4), 5).unwrap();
        assert_eq!(s, boot);
    }

    #[test]
    fn identity_slater_is_basis_state() {
        let s = exact_slater_state(&CMatrix::identity(4, 4), &[1, 2], 4).unwrap();
        assert!((s.amplitude(3) - 1.0).norm() < 1e-15);
    }

    #[test]
    fn matrix_dump_has_rows() {
        let text = format_matrix(&CMatrix::identity(2, 2));
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("1.0000000000000000e0+0.0000000000000000e0i"));
    }

    #[test]
    fn four_site_generator() {
        let m = logm_unitary(&four_site_example()).unwrap();
        let golden = [
            [1.0, -1.0, -1.0, -1.0],
            [-1.0, 2.0, 1.0, 0.0],
            [-1.0, 1.0, 1.0, 1.0],
            [-1.0, 0.0, 1.0, 2.0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                let want = Complex64::new(std::f64::consts::FRAC_PI_4 * golden[i][j], 0.0);
                assert!((m[(i, j)] - want).norm() < 1e-9, "{i} {j} {}", m[(i, j)]);
            }
        }
    }
}
