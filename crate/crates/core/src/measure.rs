//! Ancilla interferometry.
//!
//! With the ancilla prepared in `|+>`, branch `|0>` carrying `U|psi>` and branch
//! `|1>` carrying `V|psi>`, the ancilla coherence
//! `<2 sigma_+> = <sigma_x> + i <sigma_y>` equals `<psi| U^dag V |psi>`.
//! Ancillas sit above the system register.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, ControlValue};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::spectral::{self, RefineMethod, TimeSeries};
use crate::state::{Axis, StateVector};
use crate::synth::hadamard_circuit;
use crate::trotter::{TermList, TrotterOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MeasurementMode {
    Deterministic,
    Sampled { shots: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementResult {
    pub value: Complex64,
    pub mode: MeasurementMode,
    /// Standard error of each component, sampled mode only.
    pub standard_error: Option<f64>,
}

impl MeasurementResult {
    pub fn exact(value: Complex64) -> Self {
        Self {
            value,
            mode: MeasurementMode::Deterministic,
            standard_error: None,
        }
    }
}

/// Estimates `<sigma_x> + i <sigma_y>` from `shots` simulated single-shot
/// measurements of each Pauli, given the exact value.
pub fn sampled_expectation(value: Complex64, shots: u64, seed: u64) -> Result<MeasurementResult> {
    if shots == 0 {
        return Err(Error::InvalidArgument(
            "at least one shot is required".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut estimate = |mean: f64| {
        let p_up = ((1.0 + mean) / 2.0).clamp(0.0, 1.0);
        let ups = (0..shots).filter(|_| rng.gen::<f64>() < p_up).count() as f64;
        2.0 * ups / shots as f64 - 1.0
    };
    let x = estimate(value.re);
    let y = estimate(value.im);
    let var = ((1.0 - value.re * value.re).max(0.0)).max((1.0 - value.im * value.im).max(0.0));
    Ok(MeasurementResult {
        value: Complex64::new(x, y),
        mode: MeasurementMode::Sampled { shots, seed },
        standard_error: Some((var / shots as f64).sqrt()),
    })
}

fn check_system(c: &Circuit, n: usize) -> Result<()> {
    if c.max_qubit() > n {
        return Err(Error::AncillaInSupport {
            ancilla: c.max_qubit(),
        });
    }
    Ok(())
}

/// `psi (x) |+>` on a register with one extra qubit.
fn with_plus_ancilla(psi: &StateVector) -> Result<(StateVector, usize)> {
    let mut s = psi.with_ancillas_up(1)?;
    let a = s.num_qubits();
    hadamard_circuit(a).apply(&mut s)?;
    Ok((s, a))
}

/// Hadamard test returning the final register as well.
pub fn hadamard_test_state(
    psi0: &StateVector,
    u: &Circuit,
    v: &Circuit,
) -> Result<(Complex64, StateVector)> {
    let n = psi0.num_qubits();
    check_system(u, n)?;
    check_system(v, n)?;
    let (mut s, a) = with_plus_ancilla(psi0)?;
    v.clone()
        .into_controlled(a, ControlValue::One)?
        .apply(&mut s)?;
    u.clone()
        .into_controlled(a, ControlValue::Zero)?
        .apply(&mut s)?;
    Ok((s.two_sigma_plus(a)?, s))
}

/// `<psi0| U^dag V |psi0>` read from one ancilla.
pub fn hadamard_test(psi0: &StateVector, u: &Circuit, v: &Circuit) -> Result<MeasurementResult> {
    Ok(MeasurementResult::exact(hadamard_test_state(psi0, u, v)?.0))
}

/// Like [`hadamard_test`] in the requested mode.
pub fn hadamard_test_with(
    psi0: &StateVector,
    u: &Circuit,
    v: &Circuit,
    mode: MeasurementMode,
) -> Result<MeasurementResult> {
    let exact = hadamard_test(psi0, u, v)?;
    match mode {
        MeasurementMode::Deterministic => Ok(exact),
        MeasurementMode::Sampled { shots, seed } => sampled_expectation(exact.value, shots, seed),
    }
}

/// Terms of `H (x) |c><c|_a`: each `c P` becomes `c/2 P -+ c/2 P Z_a`, which
/// is `c P` in the control branch and cancels exactly in the other.
pub fn controlled_terms(terms: &TermList, ancilla: usize, value: ControlValue) -> Result<TermList> {
    let za = PauliString::single(ancilla, Pauli::Z)?;
    let sign = match value {
        ControlValue::One => -1.0,
        ControlValue::Zero => 1.0,
    };
    let mut out = TermList::new();
    for &(c, p) in terms.terms() {
        if p.support_mask() & za.support_mask() != 0 {
            return Err(Error::AncillaInSupport { ancilla });
        }
        out.push(c / 2.0, p);
        out.push(sign * c / 2.0, p * za);
    }
    Ok(out)
}

/// Terms of `-H (x) Z_a / 2`, whose evolution for time `t` is
/// `exp(i H t/2)` on ancilla `|0>` and `exp(-i H t/2)` on `|1>`.
pub fn spectrum_terms(terms: &TermList, ancilla: usize) -> Result<TermList> {
    terms.tensor_z(ancilla, -0.5)
}

/// How Trotter steps are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Compiled rotations and zz gates.
    Gates,
    /// One fused kernel call per Pauli exponential.
    #[default]
    Fused,
}

/// A Trotter step bound to a term list.
#[derive(Debug, Clone)]
pub struct Stepper {
    terms: TermList,
    dt: f64,
    order: TrotterOrder,
    compiled: Option<Circuit>,
}

impl Stepper {
    pub fn new(terms: TermList, dt: f64, order: TrotterOrder, engine: Engine) -> Result<Self> {
        let compiled = match engine {
            Engine::Gates => Some(terms.step(dt, order)?),
            Engine::Fused => None,
        };
        Ok(Self {
            terms,
            dt,
            order,
            compiled,
        })
    }

    pub fn apply(&self, state: &mut StateVector, steps: usize) -> Result<()> {
        for _ in 0..steps {
            match &self.compiled {
                Some(c) => c.apply(state)?,
                None => self.terms.apply_step(state, self.dt, self.order)?,
            }
        }
        Ok(())
    }
}

/// Number of slices of at most `dt` covering `t`.
pub fn slices_for(t: f64, dt: f64) -> usize {
    if t == 0.0 {
        0
    } else {
        ((t.abs() / dt) - 1e-9).ceil().max(1.0) as usize
    }
}

/// The reduced spectrum circuit on ancilla `a`: `|+>` preparation followed by
/// Trotterized `exp(i Q (x) Z_a t/2)`.
pub fn spectrum_circuit(
    q: &PauliSum,
    t: f64,
    dt: f64,
    order: TrotterOrder,
    ancilla: usize,
) -> Result<Circuit> {
    let terms = spectrum_terms(&TermList::from_sums([q])?, ancilla)?;
    let mut c = hadamard_circuit(ancilla);
    let slices = slices_for(t, dt);
    if slices > 0 {
        c.append(&terms.evolution(t, slices, order)?);
    }
    Ok(c)
}

/// `<phi| exp(-iQt) |phi>` from the reduced circuit, Trotter slices of at most `dt`.
pub fn spectrum_expectation(
    phi: &StateVector,
    q: &PauliSum,
    t: f64,
    dt: f64,
    order: TrotterOrder,
) -> Result<MeasurementResult> {
    q.real_terms(1e-12)?;
    let mut s = phi.with_ancillas_up(1)?;
    let a = s.num_qubits();
    if q.max_qubit() >= a {
        return Err(Error::AncillaInSupport { ancilla: a });
    }
    spectrum_circuit(q, t, dt, order, a)?.apply(&mut s)?;
    Ok(MeasurementResult::exact(s.two_sigma_plus(a)?))
}

/// Sampling of a time series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    /// Trotter step.
    pub dt: f64,
    /// Trotter steps between samples.
    pub stride: usize,
    /// Number of samples (a power of two).
    pub samples: usize,
    pub order: TrotterOrder,
    pub engine: Engine,
}

impl SeriesConfig {
    pub fn spacing(&self) -> f64 {
        self.dt * self.stride as f64
    }

    fn validate(&self) -> Result<()> {
        if self.samples < 2 || !self.samples.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(self.samples));
        }
        if self.stride == 0 || !(self.dt > 0.0) {
            return Err(Error::InvalidArgument(
                "dt and stride must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Loschmidt series `<phi| exp(-iHt_j) |phi>`, `t_j = j stride dt`, read from
/// the reduced spectrum circuit. Sample `j+1` continues from the register of
/// sample `j`, so each Trotter step is applied once.
pub fn loschmidt_series(
    phi: &StateVector,
    terms: &TermList,
    cfg: &SeriesConfig,
) -> Result<TimeSeries> {
    cfg.validate()?;
    let (mut s, a) = with_plus_ancilla(phi)?;
    let stepper = Stepper::new(spectrum_terms(terms, a)?, cfg.dt, cfg.order, cfg.engine)?;
    let mut values = Vec::with_capacity(cfg.samples);
    for j in 0..cfg.samples {
        if j > 0 {
            stepper.apply(&mut s, cfg.stride)?;
        }
        values.push(s.two_sigma_plus(a)?);
    }
    TimeSeries::new(cfg.spacing(), values)
}

/// `<T^dag A T B>` with a single uncontrolled `T`: controlled `B` on `|1>`,
/// then `T`, then controlled `A^dag` on `|0>`.
pub fn correlation_function(
    psi0: &StateVector,
    t: &Circuit,
    a: &Circuit,
    b: &Circuit,
) -> Result<Complex64> {
    let n = psi0.num_qubits();
    for c in [t, a, b] {
        check_system(c, n)?;
    }
    let (mut s, anc) = with_plus_ancilla(psi0)?;
    b.clone()
        .into_controlled(anc, ControlValue::One)?
        .apply(&mut s)?;
    t.apply(&mut s)?;
    a.inverse()
        .into_controlled(anc, ControlValue::Zero)?
        .apply(&mut s)?;
    s.two_sigma_plus(anc)
}

/// The same correlation as a plain Hadamard test with `U = T`, `V = A T B`,
/// which controls `T` twice.
pub fn correlation_function_unmerged(
    psi0: &StateVector,
    t: &Circuit,
    a: &Circuit,
    b: &Circuit,
) -> Result<Complex64> {
    let v = b.clone().then(t).then(a);
    Ok(hadamard_test(psi0, t, &v)?.value)
}

/// One block of a multi-controlled circuit.
pub type ControlledBlock = (Vec<(usize, ControlValue)>, Circuit);

/// Binary tree of controlled y-rotations taking `J` qubits starting at
/// `first` from `|0...0>` to `sum_i alpha_i |i>`, where bit `b` of `i` is the
/// state of qubit `first + b`. Amplitudes must be nonnegative with
/// `sum alpha_i^2 = 1` and `alpha.len() = 2^J`.
pub fn load_amplitudes(alpha: &[f64], first: usize) -> Result<Vec<ControlledBlock>> {
    let len = alpha.len();
    if !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    if alpha.iter().any(|&a| a < 0.0 || !a.is_finite()) {
        return Err(Error::InvalidArgument(
            "amplitudes must be nonnegative".into(),
        ));
    }
    let j_bits = len.trailing_zeros() as usize;
    let w: Vec<f64> = alpha.iter().map(|a| a * a).collect();
    let mut blocks = Vec::new();
    // level l fixes bit (J-1-l) given the higher bits `prefix`
    for level in 0..j_bits {
        let bit = j_bits - 1 - level;
        for prefix in 0..1usize << level {
            let base = prefix << (bit + 1);
            let span = 1usize << bit;
            let w0: f64 = w[base..base + span].iter().sum();
            let w1: f64 = w[base + span..base + 2 * span].iter().sum();
            if w0 + w1 == 0.0 {
                continue;
            }
            let theta = 2.0 * w1.sqrt().atan2(w0.sqrt());
            if theta == 0.0 {
                continue;
            }
            let controls = (0..level)
                .map(|k| {
                    let b = j_bits - 1 - k;
                    let v = if prefix >> (level - 1 - k) & 1 == 1 {
                        ControlValue::One
                    } else {
                        ControlValue::Zero
                    };
                    (first + b, v)
                })
                .collect();
            let mut c = Circuit::new();
            c.rotation(first + bit, Axis::Y, theta);
            blocks.push((controls, c));
        }
    }
    Ok(blocks)
}

/// `sum_i a_i <psi0| U_i^dag V_i |psi0>` with one readout ancilla and
/// `J = ceil(log2 M)` index ancillas holding `sqrt(a_i / sum a)`.
pub fn l_ancilla_measure(
    psi0: &StateVector,
    weights: &[f64],
    pairs: &[(Circuit, Circuit)],
) -> Result<Complex64> {
    if weights.len() != pairs.len() || pairs.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{} weights for {} circuit pairs",
            weights.len(),
            pairs.len()
        )));
    }
    if weights.iter().any(|&a| a < 0.0 || !a.is_finite()) {
        return Err(Error::InvalidArgument("weights must be nonnegative".into()));
    }
    let total: f64 = weights.iter().sum();
    if total == 0.0 {
        return Err(Error::InvalidArgument("weights are all zero".into()));
    }
    let n = psi0.num_qubits();
    for (u, v) in pairs {
        check_system(u, n)?;
        check_system(v, n)?;
    }
    let m = pairs.len();
    let j_bits = m.next_power_of_two().trailing_zeros() as usize;
    let mut alpha = vec![0.0; 1 << j_bits];
    for (a, w) in alpha.iter_mut().zip(weights) {
        *a = (w / total).sqrt();
    }
    let mut s = psi0.with_ancillas_up(1 + j_bits)?;
    let readout = n + 1;
    let first = n + 2;
    hadamard_circuit(readout).apply(&mut s)?;
    for (controls, c) in load_amplitudes(&alpha, first)? {
        c.apply_controlled(&mut s, &controls)?;
    }
    for (i, (u, v)) in pairs.iter().enumerate() {
        let index: Vec<(usize, ControlValue)> = (0..j_bits)
            .map(|b| {
                let val = if i >> b & 1 == 1 {
                    ControlValue::One
                } else {
                    ControlValue::Zero
                };
                (first + b, val)
            })
            .collect();
        let mut ctrl = index.clone();
        ctrl.push((readout, ControlValue::One));
        v.apply_controlled(&mut s, &ctrl)?;
        let mut ctrl = index;
        ctrl.push((readout, ControlValue::Zero));
        u.apply_controlled(&mut s, &ctrl)?;
    }
    Ok(s.two_sigma_plus(readout)? * total)
}

/// `F(t'_j) = <Psi_T| U(t'_j) O |Psi_T>` with `U(t) = exp(-iHt)`, sampled on
/// `t'_j = j stride dt`. Both `O` and the evolution act on the ancilla's `|1>`
/// branch.
pub fn mixed_estimator_series(
    psi_t: &StateVector,
    o: &Circuit,
    terms: &TermList,
    cfg: &SeriesConfig,
) -> Result<TimeSeries> {
    cfg.validate()?;
    check_system(o, psi_t.num_qubits())?;
    let (mut s, a) = with_plus_ancilla(psi_t)?;
    o.clone()
        .into_controlled(a, ControlValue::One)?
        .apply(&mut s)?;
    let stepper = Stepper::new(
        controlled_terms(terms, a, ControlValue::One)?,
        cfg.dt,
        cfg.order,
        cfg.engine,
    )?;
    let mut values = Vec::with_capacity(cfg.samples);
    for j in 0..cfg.samples {
        if j > 0 {
            stepper.apply(&mut s, cfg.stride)?;
        }
        values.push(s.two_sigma_plus(a)?);
    }
    TimeSeries::new(cfg.spacing(), values)
}

/// Ground-state estimate from a trial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedEstimate {
    /// Refined lowest eigenvalue carrying weight in the trial state.
    pub lambda0: f64,
    /// `<Psi_0|O|Psi_T> / <Psi_0|Psi_T>`.
    pub mixed: Complex64,
    /// `<Psi_T|O|Psi_T>`.
    pub trial: Complex64,
    /// `2 mixed - trial`, the ground-state expectation to second order.
    pub corrected: Complex64,
}

/// Mixed estimator at the lowest spectral line of `Psi_T` whose weight is
/// at least `threshold` of the strongest line.
pub fn mixed_estimator(
    psi_t: &StateVector,
    o: &Circuit,
    terms: &TermList,
    cfg: &SeriesConfig,
    threshold: f64,
) -> Result<MixedEstimate> {
    let with_o = mixed_estimator_series(psi_t, o, terms, cfg)?;
    let plain = mixed_estimator_series(psi_t, &Circuit::new(), terms, cfg)?;
    let (_, peaks) = spectral::analyze(&plain, threshold, Some(RefineMethod::Exact))?;
    let lambda0 = peaks
        .iter()
        .map(|p| p.lambda)
        .min_by(f64::total_cmp)
        .ok_or_else(|| Error::InvalidArgument("no spectral line above threshold".into()))?;
    let mixed = spectral::fourier_at(&with_o, lambda0) / spectral::fourier_at(&plain, lambda0);
    let trial = hadamard_test(psi_t, &Circuit::new(), o)?.value;
    Ok(MixedEstimate {
        lambda0,
        mixed,
        trial,
        corrected: 2.0 * mixed - trial,
    })
}

/// `F(t'_j, t''_k) = <Psi_T| U(t'_j) O U^dag(t''_k) |Psi_T>`, indexed `[k][j]`.
///
/// Branch `|0>` carries `U^dag(t') Psi_T`, branch `|1>` carries
/// `O U^dag(t'') Psi_T`.
pub fn exact_estimator_series(
    psi_t: &StateVector,
    o: &Circuit,
    terms: &TermList,
    outer: &SeriesConfig,
    inner: &SeriesConfig,
) -> Result<Vec<Vec<Complex64>>> {
    outer.validate()?;
    inner.validate()?;
    check_system(o, psi_t.num_qubits())?;
    let backwards = {
        let mut t = TermList::new();
        for &(c, p) in terms.terms() {
            t.push(-c, p);
        }
        t
    };
    let (mut base, a) = with_plus_ancilla(psi_t)?;
    let branch1 = Stepper::new(
        controlled_terms(&backwards, a, ControlValue::One)?,
        outer.dt,
        outer.order,
        outer.engine,
    )?;
    let branch0 = Stepper::new(
        controlled_terms(&backwards, a, ControlValue::Zero)?,
        inner.dt,
        inner.order,
        inner.engine,
    )?;
    let controlled_o = o.clone().into_controlled(a, ControlValue::One)?;
    let mut grid = Vec::with_capacity(outer.samples);
    for k in 0..outer.samples {
        if k > 0 {
            branch1.apply(&mut base, outer.stride)?;
        }
        let mut s = base.clone();
        controlled_o.apply(&mut s)?;
        let mut row = Vec::with_capacity(inner.samples);
        for j in 0..inner.samples {
            if j > 0 {
                branch0.apply(&mut s, inner.stride)?;
            }
            row.push(s.two_sigma_plus(a)?);
        }
        grid.push(row);
    }
    Ok(grid)
}

/// `sum_{j,k} F(t'_j, t''_k) e^{i l1 t'_j} e^{-i l2 t''_k} dt' dt''`, which
/// peaks at `l1 = lambda_n`, `l2 = lambda_n'` for the `(n, n')` element.
pub fn double_fourier_at(
    grid: &[Vec<Complex64>],
    dt_inner: f64,
    dt_outer: f64,
    l1: f64,
    l2: f64,
) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for (k, row) in grid.iter().enumerate() {
        let outer = Complex64::from_polar(1.0, -l2 * k as f64 * dt_outer);
        let inner: Complex64 = row
            .iter()
            .enumerate()
            .map(|(j, f)| f * Complex64::from_polar(1.0, l1 * j as f64 * dt_inner))
            .sum();
        total += outer * inner;
    }
    total * dt_inner * dt_outer
}
