//! Gate sequences over the elementary set `{R_mu(theta), R_{z,z}(omega)}` plus
//! ancilla-controlled blocks.
//!
//! A circuit carries an explicit global phase. It is irrelevant for a bare
//! circuit but becomes a relative phase once the circuit is controlled, which
//! the ancilla measurements depend on.
//!
//! Text form, one gate per line:
//!
//! ```text
//! phase 0.7853981633974483
//! rot 1 z -1.5707963267948966
//! zz 1 2 0.7853981633974483
//! ctrl 3 1 {
//! rot 2 x 3.141592653589793
//! }
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::state::{qubit_bit, Axis, Condition, StateVector};

/// Computational state an ancilla must be in for a controlled block to act.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ControlValue {
    Zero,
    One,
}

impl ControlValue {
    pub fn flipped(self) -> ControlValue {
        match self {
            ControlValue::Zero => ControlValue::One,
            ControlValue::One => ControlValue::Zero,
        }
    }

    /// Condition on the basis index. `|0>` has the qubit's bit set.
    pub fn condition(self, ancilla: usize) -> Condition {
        let mask = qubit_bit(ancilla);
        Condition {
            mask,
            value: match self {
                ControlValue::Zero => mask,
                ControlValue::One => 0,
            },
        }
    }

    fn as_digit(self) -> u8 {
        match self {
            ControlValue::Zero => 0,
            ControlValue::One => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    /// `R_axis(angle) = exp(-i angle/2 sigma_axis)` on `qubit`.
    Rotation {
        qubit: usize,
        axis: Axis,
        angle: f64,
    },
    /// `exp(i angle sigma_z^first sigma_z^second)`.
    ZZ {
        first: usize,
        second: usize,
        angle: f64,
    },
    /// `body` applied only when `ancilla` is in `value`.
    Controlled {
        ancilla: usize,
        value: ControlValue,
        body: Circuit,
    },
}

impl Gate {
    fn max_qubit(&self) -> usize {
        match self {
            Gate::Rotation { qubit, .. } => *qubit,
            Gate::ZZ { first, second, .. } => (*first).max(*second),
            Gate::Controlled { ancilla, body, .. } => (*ancilla).max(body.max_qubit()),
        }
    }

    fn inverse(&self) -> Gate {
        match self {
            Gate::Rotation { qubit, axis, angle } => Gate::Rotation {
                qubit: *qubit,
                axis: *axis,
                angle: -angle,
            },
            Gate::ZZ {
                first,
                second,
                angle,
            } => Gate::ZZ {
                first: *first,
                second: *second,
                angle: -angle,
            },
            Gate::Controlled {
                ancilla,
                value,
                body,
            } => Gate::Controlled {
                ancilla: *ancilla,
                value: *value,
                body: body.inverse(),
            },
        }
    }

    fn touches(&self, q: usize) -> bool {
        match self {
            Gate::Rotation { qubit, .. } => *qubit == q,
            Gate::ZZ { first, second, .. } => *first == q || *second == q,
            Gate::Controlled { ancilla, body, .. } => *ancilla == q || body.touches(q),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    gates: Vec<Gate>,
    global_phase: f64,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn rotation(&mut self, qubit: usize, axis: Axis, angle: f64) -> &mut Self {
        self.gates.push(Gate::Rotation { qubit, axis, angle });
        self
    }

    pub fn zz(&mut self, first: usize, second: usize, angle: f64) -> &mut Self {
        self.gates.push(Gate::ZZ {
            first,
            second,
            angle,
        });
        self
    }

    pub fn add_phase(&mut self, phi: f64) -> &mut Self {
        self.global_phase += phi;
        self
    }

    /// Appends `body` controlled on `ancilla` being in `value`.
    pub fn controlled(
        &mut self,
        ancilla: usize,
        value: ControlValue,
        body: Circuit,
    ) -> Result<&mut Self> {
        if body.has_control() {
            return Err(Error::InvalidGate(
                "controlled blocks nest at most once".into(),
            ));
        }
        if body.touches(ancilla) {
            return Err(Error::AncillaInSupport { ancilla });
        }
        self.gates.push(Gate::Controlled {
            ancilla,
            value,
            body,
        });
        Ok(self)
    }

    /// Appends another circuit (gates and phase) after this one.
    pub fn append(&mut self, other: &Circuit) -> &mut Self {
        self.gates.extend(other.gates.iter().cloned());
        self.global_phase += other.global_phase;
        self
    }

    pub fn then(mut self, other: &Circuit) -> Circuit {
        self.append(other);
        self
    }

    /// The adjoint circuit: reversed order, negated angles and phase.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            global_phase: -self.global_phase,
        }
    }

    /// Wraps the whole circuit as one controlled block.
    pub fn into_controlled(self, ancilla: usize, value: ControlValue) -> Result<Circuit> {
        let mut c = Circuit::new();
        c.controlled(ancilla, value, self)?;
        Ok(c)
    }

    pub fn has_control(&self) -> bool {
        self.gates
            .iter()
            .any(|g| matches!(g, Gate::Controlled { .. }))
    }

    pub fn touches(&self, q: usize) -> bool {
        self.gates.iter().any(|g| g.touches(q))
    }

    pub fn max_qubit(&self) -> usize {
        self.gates.iter().map(Gate::max_qubit).max().unwrap_or(0)
    }

    /// Number of elementary gates, counting inside controlled blocks.
    pub fn gate_count(&self) -> usize {
        self.gates
            .iter()
            .map(|g| match g {
                Gate::Controlled { body, .. } => body.gate_count(),
                _ => 1,
            })
            .sum()
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates
            .iter()
            .map(|g| match g {
                Gate::ZZ { .. } => 1,
                Gate::Controlled { body, .. } => body.two_qubit_count(),
                _ => 0,
            })
            .sum()
    }

    /// Runs the circuit on `state` in place, global phase included.
    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        if self.max_qubit() > state.num_qubits() {
            return Err(Error::QubitOutOfRange {
                qubit: self.max_qubit(),
                num_qubits: state.num_qubits(),
            });
        }
        self.apply_if(state, Condition::ALWAYS)
    }

    /// Runs the circuit only on the branch where every listed qubit is in the
    /// given state.
    pub fn apply_controlled(
        &self,
        state: &mut StateVector,
        controls: &[(usize, ControlValue)],
    ) -> Result<()> {
        let mut cond = Condition::ALWAYS;
        for &(q, v) in controls {
            if q == 0 || q > state.num_qubits() {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits: state.num_qubits(),
                });
            }
            if self.touches(q) {
                return Err(Error::AncillaInSupport { ancilla: q });
            }
            let c = v.condition(q);
            if cond.mask & c.mask != 0 {
                return Err(Error::InvalidGate("repeated control qubit".into()));
            }
            cond.mask |= c.mask;
            cond.value |= c.value;
        }
        if self.max_qubit() > state.num_qubits() {
            return Err(Error::QubitOutOfRange {
                qubit: self.max_qubit(),
                num_qubits: state.num_qubits(),
            });
        }
        self.apply_if(state, cond)
    }

    fn apply_if(&self, state: &mut StateVector, cond: Condition) -> Result<()> {
        for g in &self.gates {
            match g {
                Gate::Rotation { qubit, axis, angle } => {
                    state.apply_rotation_if(cond, *qubit, *axis, *angle)?
                }
                Gate::ZZ {
                    first,
                    second,
                    angle,
                } => state.apply_zz_if(cond, *first, *second, *angle)?,
                Gate::Controlled {
                    ancilla,
                    value,
                    body,
                } => {
                    let inner = value.condition(*ancilla);
                    if cond.mask & inner.mask != 0 {
                        return Err(Error::InvalidGate("repeated control qubit".into()));
                    }
                    let merged = Condition {
                        mask: cond.mask | inner.mask,
                        value: cond.value | inner.value,
                    };
                    body.apply_if(state, merged)?;
                }
            }
        }
        if self.global_phase != 0.0 {
            state.apply_phase_if(cond, self.global_phase)?;
        }
        Ok(())
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.global_phase != 0.0 {
            writeln!(f, "phase {:?}", self.global_phase)?;
        }
        for g in &self.gates {
            match g {
                Gate::Rotation { qubit, axis, angle } => {
                    writeln!(f, "rot {qubit} {} {angle:?}", axis.as_char())?
                }
                Gate::ZZ {
                    first,
                    second,
                    angle,
                } => writeln!(f, "zz {first} {second} {angle:?}")?,
                Gate::Controlled {
                    ancilla,
                    value,
                    body,
                } => {
                    writeln!(f, "ctrl {ancilla} {} {{", value.as_digit())?;
                    write!(f, "{body}")?;
                    writeln!(f, "}}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(text: &str) -> Result<Circuit> {
        let mut stack: Vec<(usize, ControlValue, Circuit)> = Vec::new();
        let mut current = Circuit::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| Error::Parse {
                line: line_no,
                message: message.to_string(),
            };
            let tok: Vec<&str> = line.split_whitespace().collect();
            let qubit = |s: &str| -> Result<usize> {
                s.parse::<usize>()
                    .ok()
                    .filter(|&q| q > 0)
                    .ok_or_else(|| err(&format!("bad qubit {s:?}")))
            };
            let angle = |s: &str| -> Result<f64> {
                s.parse::<f64>()
                    .map_err(|_| err(&format!("bad angle {s:?}")))
            };
            match tok.as_slice() {
                ["phase", a] => {
                    current.add_phase(angle(a)?);
                }
                ["rot", q, ax, a] => {
                    let axis = match *ax {
                        "x" => Axis::X,
                        "y" => Axis::Y,
                        "z" => Axis::Z,
                        _ => return Err(err(&format!("bad axis {ax:?}"))),
                    };
                    current.rotation(qubit(q)?, axis, angle(a)?);
                }
                ["zz", j, k, a] => {
                    let (j, k) = (qubit(j)?, qubit(k)?);
                    if j == k {
                        return Err(err("zz needs distinct qubits"));
                    }
                    current.zz(j, k, angle(a)?);
                }
                ["ctrl", q, v, "{"] => {
                    if !stack.is_empty() {
                        return Err(err("controlled blocks nest at most once"));
                    }
                    let value = match *v {
                        "0" => ControlValue::Zero,
                        "1" => ControlValue::One,
                        _ => return Err(err("control value must be 0 or 1")),
                    };
                    stack.push((qubit(q)?, value, std::mem::take(&mut current)));
                }
                ["}"] => {
                    let (anc, value, outer) = stack.pop().ok_or_else(|| err("unmatched '}'"))?;
                    let body = std::mem::replace(&mut current, outer);
                    current
                        .controlled(anc, value, body)
                        .map_err(|e| err(&e.to_string()))?;
                }
                _ => return Err(err(&format!("unrecognised gate line {line:?}"))),
            }
        }
        if !stack.is_empty() {
            return Err(Error::Parse {
                line: text.lines().count(),
                message: "unterminated controlled block".into(),
            });
        }
        Ok(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn text_round_trip() {
        let mut body = Circuit::new();
        body.rotation(1, Axis::X, 0.25)
            .zz(1, 2, -0.5)
            .add_phase(0.1);
        let mut c = Circuit::new();
        c.rotation(2, Axis::Y, 1.0e-3)
            .add_phase(std::f64::consts::FRAC_PI_4);
        c.controlled(3, ControlValue::One, body).unwrap();
        let text = c.to_string();
        let back: Circuit = text.parse().unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let e = "rot 1 x 0.5\nrot 2 w 0.1\n".parse::<Circuit>().unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = "ctrl 3 1 {\nrot 1 x 1\n".parse::<Circuit>().unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        let e = "ctrl 3 1 {\nctrl 4 0 {\n}\n}\n"
            .parse::<Circuit>()
            .unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn nested_control_rejected() {
        let mut inner = Circuit::new();
        inner.rotation(1, Axis::X, 1.0);
        let inner = inner.into_controlled(2, ControlValue::One).unwrap();
        assert!(inner.into_controlled(3, ControlValue::One).is_err());
    }

    #[test]
    fn control_on_own_qubit_rejected() {
        let mut body = Circuit::new();
        body.rotation(2, Axis::X, 1.0);
        assert!(matches!(
            body.into_controlled(2, ControlValue::One),
            Err(Error::AncillaInSupport { ancilla: 2 })
        ));
    }

    #[test]
    fn controlled_phase_is_relative() {
        // phase pi under control of |1> on qubit 2: a Z-like sign on that branch
        let mut body = Circuit::new();
        body.add_phase(std::f64::consts::PI);
        let c = body.into_controlled(2, ControlValue::One).unwrap();
        let mut s = StateVector::from_amplitudes(2, vec![Complex64::new(0.5, 0.0); 4]).unwrap();
        c.apply(&mut s).unwrap();
        // indices with bit 1 clear are ancilla |1>
        assert!((s.amplitude(0) + Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((s.amplitude(1) + Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((s.amplitude(2) - Complex64::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn inverse_undoes() {
        let mut c = Circuit::new();
        c.rotation(1, Axis::X, 0.3)
            .rotation(2, Axis::Y, -1.1)
            .zz(1, 2, 0.7)
            .add_phase(0.4);
        let mut s = StateVector::from_amplitudes(
            2,
            vec![
                Complex64::new(0.1, 0.2),
                Complex64::new(0.3, -0.4),
                Complex64::new(0.5, 0.1),
                Complex64::new(-0.2, 0.6),
            ],
        )
        .unwrap();
        let orig = s.clone();
        c.apply(&mut s).unwrap();
        c.inverse().apply(&mut s).unwrap();
        for i in 0..4 {
            assert!((s.amplitude(i) - orig.amplitude(i)).norm() < 1e-14);
        }
    }
}
