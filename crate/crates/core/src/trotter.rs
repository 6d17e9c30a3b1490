//! Product-formula evolution `exp(-i H t)` for a Hamiltonian given as an
//! ordered list of real-weighted Pauli strings.

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::state::{qubit_bit, StateVector};
use crate::synth::decompose_exponential;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrotterOrder {
    /// `prod_l exp(-i c_l P_l dt)`.
    First,
    /// Forward half step then reversed half step.
    Second,
}

impl TrotterOrder {
    pub fn from_int(order: u32) -> Result<Self> {
        match order {
            1 => Ok(TrotterOrder::First),
            2 => Ok(TrotterOrder::Second),
            _ => Err(Error::InvalidArgument(format!(
                "Trotter order must be 1 or 2, got {order}"
            ))),
        }
    }

    pub fn as_int(self) -> u32 {
        match self {
            TrotterOrder::First => 1,
            TrotterOrder::Second => 2,
        }
    }
}

/// Terms in application order: the first entry acts on the state first.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TermList {
    terms: Vec<(f64, PauliString)>,
}

impl TermList {
    pub fn new() -> Self {
        Self::default()
    }

    /// Concatenates Hermitian sums in the given order.
    pub fn from_sums<'a, I>(sums: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a PauliSum>,
    {
        let mut terms = Vec::new();
        for s in sums {
            terms.extend(s.real_terms(1e-12)?);
        }
        Ok(Self { terms })
    }

    pub fn push(&mut self, c: f64, p: PauliString) {
        self.terms.push((c, p));
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The Hamiltonian these terms add up to.
    pub fn hamiltonian(&self) -> PauliSum {
        PauliSum::from_terms(
            self.terms
                .iter()
                .map(|&(c, p)| (num_complex::Complex64::new(c, 0.0), p)),
        )
    }

    /// `c P -> factor c P Z_a`, keeping identity terms as `factor c Z_a`.
    pub fn tensor_z(&self, ancilla: usize, factor: f64) -> Result<Self> {
        let za = PauliString::single(ancilla, Pauli::Z)?;
        let mut out = Vec::with_capacity(self.terms.len());
        for &(c, p) in &self.terms {
            if p.support_mask() & qubit_bit(ancilla) as u64 != 0 {
                return Err(Error::AncillaInSupport { ancilla });
            }
            out.push((factor * c, p * za));
        }
        Ok(Self { terms: out })
    }

    /// Exponent sequence `(c_l dt_l, P_l)` of one step, in application order.
    fn schedule(&self, dt: f64, order: TrotterOrder) -> Vec<(f64, PauliString)> {
        match order {
            TrotterOrder::First => self.terms.iter().map(|&(c, p)| (c * dt, p)).collect(),
            TrotterOrder::Second => {
                let half = dt / 2.0;
                self.terms
                    .iter()
                    .chain(self.terms.iter().rev())
                    .map(|&(c, p)| (c * half, p))
                    .collect()
            }
        }
    }

    /// One step approximating `exp(-i H dt)`.
    pub fn step(&self, dt: f64, order: TrotterOrder) -> Result<Circuit> {
        let mut c = Circuit::new();
        for (a, p) in self.schedule(dt, order) {
            c.append(&decompose_exponential(&p, -a)?);
        }
        Ok(c)
    }

    /// `steps` repetitions of [`TermList::step`] with `dt = t / steps`.
    pub fn evolution(&self, t: f64, steps: usize, order: TrotterOrder) -> Result<Circuit> {
        if steps == 0 {
            return Err(Error::InvalidArgument(
                "at least one step is required".into(),
            ));
        }
        let one = self.step(t / steps as f64, order)?;
        let mut c = Circuit::new();
        for _ in 0..steps {
            c.append(&one);
        }
        Ok(c)
    }

    /// Applies one step through the fused Pauli-exponential kernel. Equal to
    /// compiling with [`TermList::step`] and running the gates, but faster.
    pub fn apply_step(&self, state: &mut StateVector, dt: f64, order: TrotterOrder) -> Result<()> {
        let mut diagonal: Vec<(PauliString, f64)> = Vec::new();
        for (a, p) in self.schedule(dt, order) {
            if p.x_mask() == 0 {
                diagonal.push((p, -a));
                continue;
            }
            if !diagonal.is_empty() {
                state.apply_diagonal_exps(&diagonal)?;
                diagonal.clear();
            }
            state.apply_pauli_exp(&p, -a)?;
        }
        if !diagonal.is_empty() {
            state.apply_diagonal_exps(&diagonal)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense;
    use num_complex::Complex64;

    fn toy() -> TermList {
        let mut t = TermList::new();
        t.push(0.7, PauliString::parse("X1 X2").unwrap());
        t.push(-0.4, PauliString::parse("Z1").unwrap());
        t.push(0.3, PauliString::parse("Y2").unwrap());
        t.push(0.2, PauliString::identity());
        t
    }

    #[test]
    fn second_order_beats_first() {
        let terms = toy();
        let h = dense::sum_matrix(&terms.hamiltonian(), 2);
        let exact = dense::expm_i_hermitian(&h, -1.0);
        let err = |order| {
            let c = terms.evolution(1.0, 10, order).unwrap();
            dense::max_abs_diff(&dense::circuit_matrix(&c, 2).unwrap(), &exact)
        };
        let (e1, e2) = (err(TrotterOrder::First), err(TrotterOrder::Second));
        assert!(e2 < e1 / 5.0, "{e1} {e2}");
    }

    #[test]
    fn fused_matches_gates() {
        let terms = toy();
        let mut a = StateVector::from_amplitudes(
            2,
            vec![
                Complex64::new(0.5, 0.1),
                Complex64::new(0.2, -0.3),
                Complex64::new(-0.4, 0.0),
                Complex64::new(0.1, 0.6),
            ],
        )
        .unwrap();
        a.normalize();
        let mut b = a.clone();
        terms.apply_step(&mut a, 0.3, TrotterOrder::Second).unwrap();
        terms
            .step(0.3, TrotterOrder::Second)
            .unwrap()
            .apply(&mut b)
            .unwrap();
        assert!((a.inner(&b).unwrap().norm() - 1.0).abs() < 1e-13);
        assert!((a.inner(&b).unwrap() - 1.0).norm() < 1e-13);
    }

    #[test]
    fn tensor_keeps_identity() {
        let t = toy().tensor_z(3, -0.5).unwrap();
        assert_eq!(t.terms()[3], (-0.1, PauliString::parse("Z3").unwrap()));
        assert!(toy().tensor_z(2, 1.0).is_err());
    }
}
