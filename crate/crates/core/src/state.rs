//! Dense state vector of an L-qubit register and the elementary gate kernels.
//!
//! # Basis encoding
//!
//! Qubits are labelled `1..=L`. A basis state is addressed by the integer
//! `I = sum_i n(i) * 2^(i-1)` where the *occupancy* `n(i)` is **1 when qubit
//! `i` is in `|0>`** (spin up, mode occupied) and **0 when it is in `|1>`**
//! (spin down, mode empty). So bit `i - 1` of `I` being set means qubit `i` is
//! in `|0>`. This is inverted with respect to the usual computational-basis
//! convention, and every kernel in this module is written against it:
//! `I = 0` is `|11...1>`, the fermionic vacuum.
//!
//! Ancilla qubits are appended above the system qubits (labels `L+1, ...`).

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum};

/// Largest register the dense representation accepts.
pub const MAX_QUBITS: usize = 30;

/// Below this many amplitudes kernels run on the calling thread.
const PARALLEL_THRESHOLD: usize = 1 << 14;

/// Parity of the set bits of a basis index (indices stay below `2^32`).
#[inline(always)]
fn odd(v: usize) -> bool {
    let mut v = v as u32;
    v ^= v >> 16;
    v ^= v >> 8;
    v ^= v >> 4;
    (0x6996u32 >> (v & 0xf)) & 1 == 1
}

#[inline(always)]
fn sign(odd: bool) -> f64 {
    1.0 - 2.0 * (odd as u8 as f64)
}

fn parallel(len: usize) -> bool {
    len >= PARALLEL_THRESHOLD && rayon::current_num_threads() > 1
}

/// Fixed block size for reductions, so summation order never depends on the
/// worker count.
const REDUCTION_BLOCK: usize = 1 << 12;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Rotation axis of a single-qubit rotation `R_mu(theta) = exp(-i theta/2 sigma_mu)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn as_char(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }
}

/// 2x2 matrix in the `{|0>, |1>}` basis, row-major.
pub type Matrix2 = [[Complex64; 2]; 2];

/// `R_mu(theta)` as a 2x2 matrix.
pub fn rotation_matrix(axis: Axis, theta: f64) -> Matrix2 {
    let c = Complex64::new((theta / 2.0).cos(), 0.0);
    let s = (theta / 2.0).sin();
    match axis {
        Axis::X => [[c, Complex64::new(0.0, -s)], [Complex64::new(0.0, -s), c]],
        Axis::Y => [[c, Complex64::new(-s, 0.0)], [Complex64::new(s, 0.0), c]],
        Axis::Z => [
            [Complex64::from_polar(1.0, -theta / 2.0), ZERO],
            [ZERO, Complex64::from_polar(1.0, theta / 2.0)],
        ],
    }
}

/// Restricts a kernel to basis states whose masked bits equal `value`.
///
/// Used for ancilla control: a gate under `Condition { mask, value }` acts only
/// on amplitudes with `index & mask == value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Condition {
    pub mask: usize,
    pub value: usize,
}

impl Condition {
    pub const ALWAYS: Condition = Condition { mask: 0, value: 0 };

    #[inline]
    fn holds(self, index: usize) -> bool {
        index & self.mask == self.value
    }
}

/// Bit position (0-based) of qubit `q` in the basis index.
#[inline]
pub fn qubit_bit(q: usize) -> usize {
    1usize << (q - 1)
}

/// Basis index for the given occupancies (`occ[i-1]` is `n(i)`).
pub fn basis_index(occupancies: &[bool]) -> usize {
    occupancies
        .iter()
        .enumerate()
        .filter(|(_, &n)| n)
        .map(|(i, _)| 1usize << i)
        .sum()
}

/// Occupancies `n(1), ..., n(L)` of basis index `index`.
pub fn occupancies(index: usize, num_qubits: usize) -> Vec<bool> {
    (0..num_qubits).map(|i| index >> i & 1 == 1).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Basis state `|I>` on `num_qubits` qubits.
    pub fn basis_state(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::UnsupportedRegister(num_qubits));
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::BasisIndexOutOfRange { index, num_qubits });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(StateVector { num_qubits, amps })
    }

    /// All qubits in `|0>`.
    pub fn all_up(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::UnsupportedRegister(num_qubits));
        }
        Self::basis_state(num_qubits, (1usize << num_qubits) - 1)
    }

    pub fn from_amplitudes(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::UnsupportedRegister(num_qubits));
        }
        if amps.len() != 1usize << num_qubits {
            return Err(Error::InvalidArgument(format!(
                "{} amplitudes for {} qubits",
                amps.len(),
                num_qubits
            )));
        }
        Ok(StateVector { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        reduce(&self.amps, |_, a| Complex64::new(a.norm_sqr(), 0.0)).re
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            let inv = 1.0 / n;
            self.amps.iter_mut().for_each(|a| *a *= inv);
        }
    }

    pub fn scale(&mut self, c: Complex64) {
        self.amps.iter_mut().for_each(|a| *a *= c);
    }

    /// Appends `extra` qubits in `|0>` (bits set) above the existing register.
    pub fn with_ancillas_up(&self, extra: usize) -> Result<Self> {
        let n = self.num_qubits + extra;
        if n > MAX_QUBITS {
            return Err(Error::UnsupportedRegister(n));
        }
        let offset = ((1usize << extra) - 1) << self.num_qubits;
        let mut amps = vec![ZERO; 1usize << n];
        for (i, &a) in self.amps.iter().enumerate() {
            amps[i | offset] = a;
        }
        Ok(StateVector {
            num_qubits: n,
            amps,
        })
    }

    /// Tensor product with a state on higher-labelled qubits: `self` keeps
    /// labels `1..=L`, `upper` is relabelled to `L+1..`.
    pub fn tensor(&self, upper: &StateVector) -> Result<Self> {
        let n = self.num_qubits + upper.num_qubits;
        if n > MAX_QUBITS {
            return Err(Error::UnsupportedRegister(n));
        }
        let mut amps = Vec::with_capacity(1usize << n);
        for &u in &upper.amps {
            amps.extend(self.amps.iter().map(|&a| a * u));
        }
        Ok(StateVector {
            num_qubits: n,
            amps,
        })
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q == 0 || q > self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    fn check_condition(&self, cond: Condition) -> Result<()> {
        if cond.mask >= self.dim() || cond.value & !cond.mask != 0 {
            return Err(Error::InvalidGate(format!(
                "control mask {:#x} outside a {}-qubit register",
                cond.mask, self.num_qubits
            )));
        }
        Ok(())
    }

    /// `R_axis(theta)` on qubit `q`.
    pub fn apply_rotation(&mut self, q: usize, axis: Axis, theta: f64) -> Result<()> {
        self.apply_rotation_if(Condition::ALWAYS, q, axis, theta)
    }

    pub fn apply_rotation_if(
        &mut self,
        cond: Condition,
        q: usize,
        axis: Axis,
        theta: f64,
    ) -> Result<()> {
        self.check_qubit(q)?;
        self.check_condition(cond)?;
        if cond.mask & qubit_bit(q) != 0 {
            return Err(Error::InvalidGate(format!("qubit {q} is its own control")));
        }
        match axis {
            Axis::Z => {
                let bit = qubit_bit(q);
                let up = Complex64::from_polar(1.0, -theta / 2.0);
                let down = Complex64::from_polar(1.0, theta / 2.0);
                for_each_indexed(&mut self.amps, |i, a| {
                    if cond.holds(i) {
                        *a *= if i & bit != 0 { up } else { down };
                    }
                });
            }
            _ => apply_matrix(
                &mut self.amps,
                cond,
                qubit_bit(q),
                &rotation_matrix(axis, theta),
            ),
        }
        Ok(())
    }

    /// Arbitrary single-qubit unitary on qubit `q` (matrix in the `{|0>,|1>}` basis).
    pub fn apply_single(&mut self, q: usize, m: &Matrix2) -> Result<()> {
        self.check_qubit(q)?;
        apply_matrix(&mut self.amps, Condition::ALWAYS, qubit_bit(q), m);
        Ok(())
    }

    /// `R_{z^j z^k}(omega) = exp(i omega sigma_z^j sigma_z^k)`.
    pub fn apply_zz(&mut self, j: usize, k: usize, omega: f64) -> Result<()> {
        self.apply_zz_if(Condition::ALWAYS, j, k, omega)
    }

    pub fn apply_zz_if(&mut self, cond: Condition, j: usize, k: usize, omega: f64) -> Result<()> {
        self.check_qubit(j)?;
        self.check_qubit(k)?;
        self.check_condition(cond)?;
        if j == k {
            return Err(Error::InvalidGate(format!(
                "zz interaction needs two distinct qubits, got {j} twice"
            )));
        }
        let mask = qubit_bit(j) | qubit_bit(k);
        if cond.mask & mask != 0 {
            return Err(Error::InvalidGate("zz gate acts on its control".into()));
        }
        let same = Complex64::from_polar(1.0, omega);
        let diff = Complex64::from_polar(1.0, -omega);
        for_each_indexed(&mut self.amps, |i, a| {
            if cond.holds(i) {
                // z_j z_k = +1 when both bits agree
                *a *= if !odd(i & mask) { same } else { diff };
            }
        });
        Ok(())
    }

    /// Multiplies the amplitudes satisfying `cond` by `exp(i phi)`.
    pub fn apply_phase_if(&mut self, cond: Condition, phi: f64) -> Result<()> {
        self.check_condition(cond)?;
        let p = Complex64::from_polar(1.0, phi);
        for_each_indexed(&mut self.amps, |i, a| {
            if cond.holds(i) {
                *a *= p;
            }
        });
        Ok(())
    }

    fn check_string(&self, p: &PauliString) -> Result<()> {
        if p.max_qubit() > self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: p.max_qubit(),
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    /// `exp(i theta P)` for a Pauli string `P` (its phase must be real).
    pub fn apply_pauli_exp(&mut self, p: &PauliString, theta: f64) -> Result<()> {
        self.apply_pauli_exp_if(Condition::ALWAYS, p, theta)
    }

    pub fn apply_pauli_exp_if(
        &mut self,
        cond: Condition,
        p: &PauliString,
        theta: f64,
    ) -> Result<()> {
        self.check_string(p)?;
        self.check_condition(cond)?;
        if !p.phase().is_real() {
            return Err(Error::NotHermitian(1.0));
        }
        if cond.mask & p.support_mask() as usize != 0 {
            return Err(Error::InvalidGate(
                "Pauli exponential acts on its control".into(),
            ));
        }
        let theta = if p.phase().power() == 2 {
            -theta
        } else {
            theta
        };
        let x = p.x_mask() as usize;
        let z = p.z_mask() as usize;
        let ny = p.y_count();
        let (c, s) = (theta.cos(), theta.sin());
        if x == 0 {
            // diagonal: eigenvalue (-1)^{|~i & z|}
            let plus = Complex64::from_polar(1.0, theta);
            let minus = Complex64::from_polar(1.0, -theta);
            for_each_indexed(&mut self.amps, |i, a| {
                if cond.holds(i) {
                    *a *= if !odd(!i & z) { plus } else { minus };
                }
            });
            return Ok(());
        }
        // P|i> = coef(i) |i ^ x>, coef(i) = i^{ny} (-1)^{|~i & z|}; the
        // parities of i and i ^ x differ by |x & z|.
        let k = Complex64::new(0.0, s) * crate::pauli::Phase::from_power(ny).to_complex();
        let flip = odd(x & z);
        let pivot = 1usize << (usize::BITS - 1 - x.leading_zeros());
        let low = x & (pivot - 1);
        let always = cond == Condition::ALWAYS;
        for_each_pair_block(&mut self.amps, pivot, |block_start, lo, hi| {
            for (off, a_lo) in lo.iter_mut().enumerate() {
                let i = block_start + off;
                if !always && !cond.holds(i) {
                    continue;
                }
                // branch-free: the parity is effectively random in i
                let si = sign(odd(!i & z));
                let sj = if flip { -si } else { si };
                let a_hi = &mut hi[off ^ low];
                let (ai, aj) = (*a_lo, *a_hi);
                *a_lo = ai * c + k * (aj * sj);
                *a_hi = aj * c + k * (ai * si);
            }
        });
        Ok(())
    }

    /// `prod_l exp(i theta_l P_l)` for commuting diagonal strings (`Z` and
    /// identity factors only) in a single pass.
    pub fn apply_diagonal_exps(&mut self, terms: &[(PauliString, f64)]) -> Result<()> {
        let mut masks = Vec::with_capacity(terms.len());
        let mut constant = 0.0;
        for (p, theta) in terms {
            self.check_string(p)?;
            if p.x_mask() != 0 || !p.phase().is_real() {
                return Err(Error::InvalidGate(format!(
                    "{p} is not a real diagonal string"
                )));
            }
            let theta = if p.phase().power() == 2 {
                -theta
            } else {
                *theta
            };
            if p.z_mask() == 0 {
                constant += theta;
            } else {
                masks.push((p.z_mask() as usize, theta));
            }
        }
        for_each_indexed(&mut self.amps, |i, a| {
            let mut phase = constant;
            for &(z, theta) in &masks {
                phase += sign(odd(!i & z)) * theta;
            }
            *a *= Complex64::from_polar(1.0, phase);
        });
        Ok(())
    }

    /// Multiplies the state by the Pauli string (including its phase).
    pub fn apply_pauli(&mut self, p: &PauliString) -> Result<()> {
        self.check_string(p)?;
        let x = p.x_mask() as usize;
        let z = p.z_mask() as usize;
        let base = (p.phase() * crate::pauli::Phase::from_power(p.y_count())).to_complex();
        let mut out = vec![ZERO; self.dim()];
        for (i, &a) in self.amps.iter().enumerate() {
            let sign = if !odd(!i & z) { 1.0 } else { -1.0 };
            out[i ^ x] = base * sign * a;
        }
        self.amps = out;
        Ok(())
    }

    /// `O|self>` for a weighted Pauli sum `O`.
    pub fn apply_pauli_sum(&self, op: &PauliSum) -> Result<StateVector> {
        let mut out = vec![ZERO; self.dim()];
        for &(w, s) in op.terms() {
            self.check_string(&s)?;
            let x = s.x_mask() as usize;
            let z = s.z_mask() as usize;
            let base = w * (s.phase() * crate::pauli::Phase::from_power(s.y_count())).to_complex();
            for (i, &a) in self.amps.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let sign = if !odd(!i & z) { 1.0 } else { -1.0 };
                out[i ^ x] += base * sign * a;
            }
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amps: out,
        })
    }

    /// `<self| P |self>` for a single string, reduced in a fixed order.
    pub fn expectation_string(&self, p: &PauliString) -> Result<Complex64> {
        self.check_string(p)?;
        let x = p.x_mask() as usize;
        let z = p.z_mask() as usize;
        let base = (p.phase() * crate::pauli::Phase::from_power(p.y_count())).to_complex();
        let amps = &self.amps;
        // <psi|P|psi> = sum_i conj(psi[i^x]) coef(i) psi[i]
        let s = reduce(amps, |i, a| {
            let sign = if !odd(!i & z) { 1.0 } else { -1.0 };
            amps[i ^ x].conj() * a * sign
        });
        Ok(base * s)
    }

    /// `<self| O |self>`.
    pub fn expectation(&self, op: &PauliSum) -> Result<Complex64> {
        let mut total = ZERO;
        for (w, s) in op.terms() {
            total += w * self.expectation_string(s)?;
        }
        Ok(total)
    }

    /// `<self|other>` (conjugate-linear in `self`).
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::SizeMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        let b = &other.amps;
        Ok(reduce(&self.amps, |i, a| a.conj() * b[i]))
    }

    /// Probability weight on basis states satisfying `keep`.
    pub fn weight_where<F>(&self, keep: F) -> f64
    where
        F: Fn(usize) -> bool + Sync,
    {
        reduce(&self.amps, |i, a| {
            if keep(i) {
                Complex64::new(a.norm_sqr(), 0.0)
            } else {
                ZERO
            }
        })
        .re
    }

    /// `<2 sigma_+^q> = <sigma_x^q> + i <sigma_y^q>` for qubit `q`.
    pub fn two_sigma_plus(&self, q: usize) -> Result<Complex64> {
        self.check_qubit(q)?;
        let bit = qubit_bit(q);
        let amps = &self.amps;
        // sigma_+ = |0><1|; |0> has the bit set
        let s = reduce(amps, |i, a| {
            if i & bit == 0 {
                amps[i | bit].conj() * a
            } else {
                ZERO
            }
        });
        Ok(s * 2.0)
    }

    /// Probability that qubit `q` is found in `|0>`.
    pub fn probability_up(&self, q: usize) -> Result<f64> {
        self.check_qubit(q)?;
        let bit = qubit_bit(q);
        Ok(self.weight_where(|i| i & bit != 0))
    }
}

/// Sum of `f(i, a_i)` over all amplitudes in a deterministic order.
fn reduce<F>(amps: &[Complex64], f: F) -> Complex64
where
    F: Fn(usize, Complex64) -> Complex64 + Sync,
{
    let block_sum = |(b, chunk): (usize, &[Complex64])| {
        let start = b * REDUCTION_BLOCK;
        chunk
            .iter()
            .enumerate()
            .fold(ZERO, |acc, (k, &a)| acc + f(start + k, a))
    };
    let partials: Vec<Complex64> = if parallel(amps.len()) {
        amps.par_chunks(REDUCTION_BLOCK)
            .enumerate()
            .map(block_sum)
            .collect()
    } else {
        amps.chunks(REDUCTION_BLOCK)
            .enumerate()
            .map(block_sum)
            .collect()
    };
    partials.into_iter().fold(ZERO, |acc, p| acc + p)
}

fn for_each_indexed<F>(amps: &mut [Complex64], f: F)
where
    F: Fn(usize, &mut Complex64) + Sync,
{
    if parallel(amps.len()) {
        amps.par_iter_mut().enumerate().for_each(|(i, a)| f(i, a));
    } else {
        amps.iter_mut().enumerate().for_each(|(i, a)| f(i, a));
    }
}

/// Splits the amplitudes into blocks of `2 * pivot` and hands each block's
/// lower half (pivot bit clear) and upper half (pivot bit set) to `f`.
fn for_each_pair_block<F>(amps: &mut [Complex64], pivot: usize, f: F)
where
    F: Fn(usize, &mut [Complex64], &mut [Complex64]) + Sync,
{
    let block = 2 * pivot;
    let run = |(b, chunk): (usize, &mut [Complex64])| {
        let (lo, hi) = chunk.split_at_mut(pivot);
        f(b * block, lo, hi);
    };
    if parallel(amps.len()) {
        amps.par_chunks_mut(block).enumerate().for_each(run);
    } else {
        amps.chunks_mut(block).enumerate().for_each(run);
    }
}

fn apply_matrix(amps: &mut [Complex64], cond: Condition, bit: usize, m: &Matrix2) {
    // a0 lives at the index with the bit set (|0>), a1 with it clear (|1>)
    let m = *m;
    for_each_pair_block(amps, bit, |start, lo, hi| {
        for (off, (a1, a0)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
            if !cond.holds(start + off) {
                continue;
            }
            let (v0, v1) = (*a0, *a1);
            *a0 = m[0][0] * v0 + m[0][1] * v1;
            *a1 = m[1][0] * v0 + m[1][1] * v1;
        }
    });
}
