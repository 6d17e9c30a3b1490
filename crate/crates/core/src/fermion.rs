//! Jordan-Wigner encoding of spin-1/2 fermions on a rectangular lattice.
//!
//! Mode `S` is qubit `S`; `a_S = (-1)^{S-1} Z_1 ... Z_{S-1} sigma_-^S` with
//! `sigma_- = (X - iY)/2`, so an occupied mode is qubit state `|0>`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::state::{StateVector, MAX_QUBITS};
use crate::synth::decompose_exponential;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }

    /// `sigma` as `+1/2` or `-1/2`.
    pub fn value(self) -> f64 {
        match self {
            Spin::Up => 0.5,
            Spin::Down => -0.5,
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spin::Up => "up",
            Spin::Down => "down",
        })
    }
}

/// Site `(x, y)` (1-based) with a spin label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeLabel {
    pub x: usize,
    pub y: usize,
    pub spin: Spin,
}

impl LatticeLabel {
    pub fn new(x: usize, y: usize, spin: Spin) -> Self {
        Self { x, y, spin }
    }
}

/// Chain index `S = x + (y-1) Nx + (1/2 - sigma) Nx Ny`.
pub fn site_to_chain(label: LatticeLabel, nx: usize, ny: usize) -> Result<usize> {
    if label.x == 0 || label.x > nx || label.y == 0 || label.y > ny {
        return Err(Error::InvalidArgument(format!(
            "site ({}, {}) outside a {nx}x{ny} lattice",
            label.x, label.y
        )));
    }
    let spin_block = match label.spin {
        Spin::Up => 0,
        Spin::Down => nx * ny,
    };
    Ok(label.x + (label.y - 1) * nx + spin_block)
}

/// Inverse of [`site_to_chain`].
pub fn chain_to_site(s: usize, nx: usize, ny: usize) -> Result<LatticeLabel> {
    let n = nx * ny;
    if s == 0 || s > 2 * n {
        return Err(Error::InvalidArgument(format!(
            "chain index {s} outside 1..={}",
            2 * n
        )));
    }
    let (spin, r) = if s > n {
        (Spin::Down, s - n - 1)
    } else {
        (Spin::Up, s - 1)
    };
    Ok(LatticeLabel::new(r % nx + 1, r / nx + 1, spin))
}

fn check_mode(s: usize) -> Result<()> {
    if s == 0 || s > MAX_QUBITS {
        return Err(Error::QubitOutOfRange {
            qubit: s,
            num_qubits: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Jordan-Wigner image of the annihilation operator `a_s`.
pub fn lower_operator(s: usize) -> Result<PauliSum> {
    ladder(s, -1.0)
}

/// Jordan-Wigner image of the creation operator `a_s^dag`.
pub fn raise_operator(s: usize) -> Result<PauliSum> {
    ladder(s, 1.0)
}

fn ladder(s: usize, y_sign: f64) -> Result<PauliSum> {
    check_mode(s)?;
    let sign = if (s - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    let string =
        |p: Pauli| PauliString::from_factors((1..s).map(|q| (q, Pauli::Z)).chain([(s, p)]));
    Ok(PauliSum::from_terms([
        (Complex64::new(0.5 * sign, 0.0), string(Pauli::X)?),
        (Complex64::new(0.0, 0.5 * sign * y_sign), string(Pauli::Y)?),
    ]))
}

/// `n_s = (1 + Z_s)/2`.
pub fn number_operator(s: usize) -> Result<PauliSum> {
    check_mode(s)?;
    Ok(PauliSum::from_terms([
        (Complex64::new(0.5, 0.0), PauliString::identity()),
        (Complex64::new(0.5, 0.0), PauliString::single(s, Pauli::Z)?),
    ]))
}

/// `c a_j^dag a_k + conj(c) a_k^dag a_j`; for `j == k` this is `Re(c) n_j`.
pub fn quadratic_to_pauli(j: usize, k: usize, c: Complex64) -> Result<PauliSum> {
    if j == k {
        return Ok(number_operator(j)?.scale_real(c.re));
    }
    let forward = &raise_operator(j)? * &lower_operator(k)?;
    let backward = &raise_operator(k)? * &lower_operator(j)?;
    Ok(forward.scale(c) + backward.scale(c.conj()))
}

/// Product of ladder operators with a coefficient, e.g. `U a_1^dag a_1 a_5^dag a_5`.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionTerm {
    pub coefficient: Complex64,
    /// `(mode, creation)` factors, leftmost first.
    pub factors: Vec<(usize, bool)>,
}

impl FermionTerm {
    pub fn new(coefficient: Complex64, factors: Vec<(usize, bool)>) -> Self {
        Self {
            coefficient,
            factors,
        }
    }

    /// `c a_j^dag a_k`.
    pub fn hopping(j: usize, k: usize, c: Complex64) -> Self {
        Self::new(c, vec![(j, true), (k, false)])
    }

    /// `c n_j n_k`.
    pub fn density_density(j: usize, k: usize, c: Complex64) -> Self {
        Self::new(c, vec![(j, true), (j, false), (k, true), (k, false)])
    }

    pub fn to_pauli(&self) -> Result<PauliSum> {
        let mut out = PauliSum::identity(self.coefficient);
        for &(mode, creation) in &self.factors {
            let op = if creation {
                raise_operator(mode)?
            } else {
                lower_operator(mode)?
            };
            out = &out * &op;
        }
        Ok(out)
    }
}

/// The empty state: every mode `|1>`, basis index 0.
pub fn vacuum_state(num_modes: usize) -> Result<StateVector> {
    StateVector::basis_state(num_modes, 0)
}

/// Exact circuit for `exp(i theta (c a_j^dag a_k + h.c.))`.
///
/// For `j != k` the complex phase of `c = |c| e^{i phi}` is moved into a pair
/// of `exp(-+ i phi n_j)` factors around the real hopping, whose two Pauli
/// strings commute. Terms below `1e-15` give an empty circuit.
pub fn quadratic_exponential(j: usize, k: usize, c: Complex64, theta: f64) -> Result<Circuit> {
    let mut out = Circuit::new();
    if c.norm() < 1e-15 {
        return Ok(out);
    }
    if j == k {
        // exp(i theta Re(c) (1 + Z)/2)
        let a = theta * c.re / 2.0;
        out.add_phase(a);
        out.append(&decompose_exponential(
            &PauliString::single(j, Pauli::Z)?,
            a,
        )?);
        return Ok(out);
    }
    let phi = c.arg();
    let zj = PauliString::single(j, Pauli::Z)?;
    let hop = quadratic_to_pauli(j, k, Complex64::new(c.norm(), 0.0))?;
    if phi != 0.0 {
        out.append(&decompose_exponential(&zj, -phi / 2.0)?);
    }
    for (coef, p) in hop.real_terms(1e-12)? {
        out.append(&decompose_exponential(&p, theta * coef)?);
    }
    if phi != 0.0 {
        out.append(&decompose_exponential(&zj, phi / 2.0)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_round_trip() {
        for (nx, ny) in [(1, 1), (2, 2), (4, 2), (2, 4), (6, 1)] {
            for s in 1..=2 * nx * ny {
                let l = chain_to_site(s, nx, ny).unwrap();
                assert_eq!(site_to_chain(l, nx, ny).unwrap(), s);
            }
        }
        let l = LatticeLabel::new(2, 1, Spin::Down);
        assert_eq!(site_to_chain(l, 2, 2).unwrap(), 6);
        assert!(site_to_chain(LatticeLabel::new(3, 1, Spin::Up), 2, 2).is_err());
    }

    #[test]
    fn first_mode_lower_is_sigma_minus() {
        let a1 = lower_operator(1).unwrap();
        let expect = PauliSum::from_terms([
            (Complex64::new(0.5, 0.0), PauliString::parse("X1").unwrap()),
            (Complex64::new(0.0, -0.5), PauliString::parse("Y1").unwrap()),
        ]);
        assert_eq!(a1, expect);
    }

    #[test]
    fn number_operator_matches_product() {
        for s in 1..5 {
            let n = &raise_operator(s).unwrap() * &lower_operator(s).unwrap();
            assert_eq!(n, number_operator(s).unwrap());
        }
    }

    #[test]
    fn anticommutation() {
        let one = PauliSum::identity(Complex64::new(1.0, 0.0));
        for j in 1..5 {
            for k in 1..5 {
                let aj = lower_operator(j).unwrap();
                let ak_dag = raise_operator(k).unwrap();
                let ac = &(&aj * &ak_dag) + &(&ak_dag * &aj);
                if j == k {
                    assert_eq!(ac, one);
                } else {
                    assert!(ac.is_empty(), "{j} {k}: {ac}");
                }
                let ak = lower_operator(k).unwrap();
                assert!((&(&aj * &ak) + &(&ak * &aj)).is_empty());
            }
        }
    }

    #[test]
    fn hopping_on_adjacent_modes() {
        // a1^dag a2 + h.c. = (X1 X2 + Y1 Y2)/2 up to the string sign
        let h = quadratic_to_pauli(1, 2, Complex64::new(1.0, 0.0)).unwrap();
        assert_eq!(h.len(), 2);
        assert!(h.is_hermitian(1e-14));
        let diag = quadratic_to_pauli(3, 3, Complex64::new(2.0, 5.0)).unwrap();
        assert_eq!(diag, number_operator(3).unwrap().scale_real(2.0));
    }

    #[test]
    fn vacuum_is_index_zero() {
        let v = vacuum_state(4).unwrap();
        assert_eq!(v.amplitude(0), Complex64::new(1.0, 0.0));
    }
}
