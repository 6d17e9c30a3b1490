//! Phase-exact Pauli strings and weighted sums of them.
//!
//! A [`PauliString`] is stored in symplectic form: bit `q - 1` of `x` marks an
//! X or Y factor on qubit `q`, bit `q - 1` of `z` marks a Z or Y factor. A
//! qubit with both bits set carries a Y (not XZ); the product bookkeeping below
//! converts through the XZ form only internally.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::MAX_QUBITS;

/// Single-qubit Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Option<Pauli> {
        match (x, z) {
            (true, false) => Some(Pauli::X),
            (true, true) => Some(Pauli::Y),
            (false, true) => Some(Pauli::Z),
            (false, false) => None,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        };
        write!(f, "{c}")
    }
}

/// A power of `i`: one of `+1, +i, -1, -i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(k: u32) -> Phase {
        Phase((k % 4) as u8)
    }

    pub fn power(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// A phased tensor product of Pauli factors on qubits `1..=64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PauliString {
    x: u64,
    z: u64,
    phase: Phase,
}

impl PauliString {
    pub fn identity() -> Self {
        Self::default()
    }

    /// A single factor on qubit `q` (1-based).
    pub fn single(q: usize, p: Pauli) -> Result<Self> {
        Self::from_factors([(q, p)])
    }

    /// Builds a string from `(qubit, factor)` pairs. Repeated qubits are
    /// multiplied together in the order given.
    pub fn from_factors<I>(factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Pauli)>,
    {
        let mut s = Self::identity();
        for (q, p) in factors {
            if q == 0 || q > MAX_QUBITS {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits: MAX_QUBITS,
                });
            }
            let (bx, bz) = p.bits();
            let bit = 1u64 << (q - 1);
            let f = PauliString {
                x: if bx { bit } else { 0 },
                z: if bz { bit } else { 0 },
                phase: Phase::ONE,
            };
            s = s * f;
        }
        Ok(s)
    }

    /// Parses compact text such as `"X1 Z2 Y5"`, `"-iZ3"` or `"I"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rest = text.trim();
        let mut phase = Phase::ONE;
        for (prefix, ph) in [
            ("-i", Phase::MINUS_I),
            ("+i", Phase::I),
            ("i", Phase::I),
            ("-", Phase::MINUS_ONE),
            ("+", Phase::ONE),
        ] {
            if let Some(r) = rest.strip_prefix(prefix) {
                if prefix.ends_with('i') && r.starts_with(|c: char| c.is_ascii_digit()) {
                    continue;
                }
                phase = ph;
                rest = r.trim_start();
                break;
            }
        }
        let mut factors = Vec::new();
        for tok in rest.split_whitespace() {
            if tok == "I" {
                continue;
            }
            let (head, num) = tok.split_at(1);
            let p = match head {
                "X" => Pauli::X,
                "Y" => Pauli::Y,
                "Z" => Pauli::Z,
                _ => return Err(Error::InvalidArgument(format!("bad Pauli token {tok:?}"))),
            };
            let q: usize = num
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad qubit in {tok:?}")))?;
            factors.push((q, p));
        }
        Ok(Self::from_factors(factors)?.with_phase(phase))
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = self.phase * phase;
        self
    }

    /// Same factors with phase `+1`.
    pub fn unphased(self) -> Self {
        PauliString {
            phase: Phase::ONE,
            ..self
        }
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn support_mask(&self) -> u64 {
        self.x | self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn weight(&self) -> usize {
        self.support_mask().count_ones() as usize
    }

    /// Highest qubit label acted on, or 0 for the identity.
    pub fn max_qubit(&self) -> usize {
        64 - self.support_mask().leading_zeros() as usize
    }

    pub fn factor(&self, q: usize) -> Option<Pauli> {
        if q == 0 || q > 64 {
            return None;
        }
        let bit = 1u64 << (q - 1);
        Pauli::from_bits(self.x & bit != 0, self.z & bit != 0)
    }

    /// Non-identity factors in ascending qubit order.
    pub fn factors(&self) -> impl Iterator<Item = (usize, Pauli)> + '_ {
        let mut mask = self.support_mask();
        std::iter::from_fn(move || {
            if mask == 0 {
                return None;
            }
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            let q = b + 1;
            Some((q, self.factor(q).expect("support bit")))
        })
    }

    pub fn support(&self) -> Vec<usize> {
        self.factors().map(|(q, _)| q).collect()
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z) ^ (self.z & other.x))
            .count_ones()
            .is_multiple_of(2)
    }

    /// Number of Y factors; used by the state kernels.
    pub(crate) fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }
}

impl Mul for PauliString {
    type Output = PauliString;

    fn mul(self, rhs: PauliString) -> PauliString {
        // Y = i X Z, so p * prod(sigma) = p * i^{-ny} * X^x Z^z.
        // Moving Z^{z1} past X^{x2} costs (-1)^{|z1 & x2|}.
        let x = self.x ^ rhs.x;
        let z = self.z ^ rhs.z;
        let ny_l = self.y_count();
        let ny_r = rhs.y_count();
        let ny_out = (x & z).count_ones();
        let swaps = (self.z & rhs.x).count_ones();
        // exponent of i: ny_l + ny_r - ny_out + 2*swaps (mod 4)
        let k = (ny_l + ny_r + 2 * swaps + 4 * 64 - ny_out) % 4;
        PauliString {
            x,
            z,
            phase: self.phase * rhs.phase * Phase::from_power(k),
        }
    }
}

impl Neg for PauliString {
    type Output = PauliString;
    fn neg(self) -> PauliString {
        self.with_phase(Phase::MINUS_ONE)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.phase.power() {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        if self.is_identity() {
            return write!(f, "{sign}I");
        }
        write!(f, "{sign}")?;
        for (n, (q, p)) in self.factors().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}{q}")?;
        }
        Ok(())
    }
}

/// Coefficients below this magnitude are dropped on canonicalization.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// A complex-weighted sum of Pauli strings.
///
/// The canonical form stores phase-free strings (phases are folded into the
/// coefficients), merges duplicates, drops near-zero terms, and orders terms by
/// their symplectic masks.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PauliSum {
    terms: Vec<(Complex64, PauliString)>,
}

impl PauliSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity(c: Complex64) -> Self {
        Self::from_terms([(c, PauliString::identity())])
    }

    pub fn from_string(s: PauliString) -> Self {
        Self::from_terms([(Complex64::new(1.0, 0.0), s)])
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Complex64, PauliString)>,
    {
        Self::from_terms_with_tolerance(terms, DEFAULT_TOLERANCE)
    }

    pub fn from_terms_with_tolerance<I>(terms: I, tol: f64) -> Self
    where
        I: IntoIterator<Item = (Complex64, PauliString)>,
    {
        let mut merged: BTreeMap<(u64, u64), Complex64> = BTreeMap::new();
        for (c, s) in terms {
            let c = c * s.phase().to_complex();
            *merged
                .entry((s.x_mask(), s.z_mask()))
                .or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| c.norm() > tol)
            .map(|((x, z), c)| {
                (
                    c,
                    PauliString {
                        x,
                        z,
                        phase: Phase::ONE,
                    },
                )
            })
            .collect();
        PauliSum { terms }
    }

    pub fn terms(&self) -> &[(Complex64, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Complex64) -> PauliSum {
        PauliSum::from_terms(self.terms.iter().map(|&(a, s)| (a * c, s)))
    }

    pub fn scale_real(&self, c: f64) -> PauliSum {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn adjoint(&self) -> PauliSum {
        // canonical strings are Hermitian, so only the weights conjugate
        PauliSum {
            terms: self.terms.iter().map(|&(c, s)| (c.conj(), s)).collect(),
        }
    }

    /// Largest |imaginary part| among the coefficients; zero for Hermitian sums.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.terms
            .iter()
            .map(|(c, _)| c.im.abs())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Coefficient of the identity string.
    pub fn identity_coefficient(&self) -> Complex64 {
        self.terms
            .iter()
            .find(|(_, s)| s.is_identity())
            .map(|&(c, _)| c)
            .unwrap_or_default()
    }

    pub fn max_qubit(&self) -> usize {
        self.terms
            .iter()
            .map(|(_, s)| s.max_qubit())
            .max()
            .unwrap_or(0)
    }

    pub fn support_mask(&self) -> u64 {
        self.terms.iter().fold(0, |m, (_, s)| m | s.support_mask())
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &PauliSum) -> PauliSum {
        let mut out = Vec::new();
        for &(a, s) in &self.terms {
            for &(b, t) in &other.terms {
                if !s.commutes_with(&t) {
                    // st - ts = 2 st when they anticommute
                    out.push((a * b * 2.0, s * t));
                }
            }
        }
        PauliSum::from_terms(out)
    }

    /// Real coefficients paired with their strings; fails if any weight has an
    /// imaginary part above `tol`.
    pub fn real_terms(&self, tol: f64) -> Result<Vec<(f64, PauliString)>> {
        let dev = self.hermiticity_deviation();
        if dev > tol {
            return Err(Error::NotHermitian(dev));
        }
        Ok(self.terms.iter().map(|&(c, s)| (c.re, s)).collect())
    }
}

impl Add for &PauliSum {
    type Output = PauliSum;
    fn add(self, rhs: &PauliSum) -> PauliSum {
        PauliSum::from_terms(self.terms.iter().chain(rhs.terms.iter()).copied())
    }
}

impl Add for PauliSum {
    type Output = PauliSum;
    fn add(self, rhs: PauliSum) -> PauliSum {
        &self + &rhs
    }
}

impl Sub for &PauliSum {
    type Output = PauliSum;
    fn sub(self, rhs: &PauliSum) -> PauliSum {
        PauliSum::from_terms(
            self.terms
                .iter()
                .copied()
                .chain(rhs.terms.iter().map(|&(c, s)| (-c, s))),
        )
    }
}

impl Mul for &PauliSum {
    type Output = PauliSum;
    fn mul(self, rhs: &PauliSum) -> PauliSum {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for &(a, s) in &self.terms {
            for &(b, t) in &rhs.terms {
                out.push((a * b, s * t));
            }
        }
        PauliSum::from_terms(out)
    }
}

impl std::iter::Sum for PauliSum {
    fn sum<I: Iterator<Item = PauliSum>>(iter: I) -> PauliSum {
        PauliSum::from_terms(iter.flat_map(|p| p.terms))
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (c, s)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i) {}", c.re, c.im, s)?;
        }
        Ok(())
    }
}
