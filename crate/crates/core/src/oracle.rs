//! Exact diagonalization of the Hubbard model inside a fixed `(N_up, N_down)`
//! sector.
//!
//! Matrix elements are computed directly from occupation bit patterns; only
//! the list of bonds is shared with [`crate::hubbard`].

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hubbard::{bonds, Direction, HubbardSpec};
use crate::pauli::PauliSum;
use crate::spectral::TimeSeries;
use crate::state::StateVector;

/// Largest sector the dense oracle accepts.
pub const MAX_SECTOR_DIM: usize = 8192;

/// Basis integers with `N_up` set bits among the spin-up modes and `N_down`
/// among the spin-down modes, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorBasis {
    pub n_up: usize,
    pub n_down: usize,
    pub sites: usize,
    configurations: Vec<usize>,
    lookup: HashMap<usize, usize>,
}

impl SectorBasis {
    pub fn configurations(&self) -> &[usize] {
        &self.configurations
    }

    pub fn len(&self) -> usize {
        self.configurations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configurations.is_empty()
    }

    pub fn position(&self, config: usize) -> Option<usize> {
        self.lookup.get(&config).copied()
    }

    /// Whether basis integer `index` (possibly with ancilla bits above the
    /// lattice modes) lies in the sector.
    pub fn contains(&self, index: usize) -> bool {
        let n = self.sites;
        let up = index & ((1 << n) - 1);
        let down = (index >> n) & ((1 << n) - 1);
        up.count_ones() as usize == self.n_up && down.count_ones() as usize == self.n_down
    }
}

pub fn sector_basis(spec: &HubbardSpec, n_up: usize, n_down: usize) -> Result<SectorBasis> {
    let n = spec.sites();
    if n_up > n || n_down > n {
        return Err(Error::InvalidArgument(format!(
            "sector ({n_up}, {n_down}) does not fit on {n} sites"
        )));
    }
    let block: Vec<usize> = (0usize..1 << n)
        .filter(|c| c.count_ones() as usize == n_up)
        .collect();
    let block_down: Vec<usize> = (0usize..1 << n)
        .filter(|c| c.count_ones() as usize == n_down)
        .collect();
    let mut configurations = Vec::with_capacity(block.len() * block_down.len());
    for &d in &block_down {
        for &u in &block {
            configurations.push(u | d << n);
        }
    }
    let lookup = configurations
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    Ok(SectorBasis {
        n_up,
        n_down,
        sites: n,
        configurations,
        lookup,
    })
}

/// Sign of `a_p^dag a_q` acting on `config` (bits are 0-based modes), or
/// `None` if it annihilates the state.
fn hop(config: usize, p: usize, q: usize) -> Option<(usize, f64)> {
    if config >> q & 1 == 0 {
        return None;
    }
    let removed = config & !(1 << q);
    if removed >> p & 1 == 1 {
        return None;
    }
    let below = |c: usize, k: usize| (c & ((1usize << k) - 1)).count_ones();
    let parity = below(config, q) + below(removed, p);
    let sign = if parity % 2 == 0 { 1.0 } else { -1.0 };
    Some((removed | 1 << p, sign))
}

/// Real symmetric sector Hamiltonian.
pub fn dense_hamiltonian(spec: &HubbardSpec, basis: &SectorBasis) -> Result<DMatrix<f64>> {
    spec.validate()?;
    let dim = basis.len();
    if dim > MAX_SECTOR_DIM {
        return Err(Error::SectorTooLarge {
            dim,
            limit: MAX_SECTOR_DIM,
        });
    }
    let n = spec.sites();
    let mut h = DMatrix::zeros(dim, dim);
    let all = bonds(spec);
    for (col, &config) in basis.configurations().iter().enumerate() {
        let doubles = ((config & ((1 << n) - 1)) & (config >> n)).count_ones();
        h[(col, col)] += spec.u * doubles as f64;
        for b in &all {
            let t = match b.direction {
                Direction::X => spec.tx,
                Direction::Y => spec.ty,
            };
            for offset in [0, n] {
                let (i, j) = (b.from - 1 + offset, b.to - 1 + offset);
                for (p, q) in [(i, j), (j, i)] {
                    if let Some((out, sign)) = hop(config, p, q) {
                        let row = basis.position(out).expect("hopping preserves the sector");
                        h[(row, col)] -= t * sign;
                    }
                }
            }
        }
    }
    Ok(h)
}

/// A Pauli operator restricted to the sector, `<c_i| P |c_j>`.
pub fn restrict(
    op: &PauliSum,
    basis: &SectorBasis,
    num_qubits: usize,
) -> Result<DMatrix<Complex64>> {
    let dim = basis.len();
    let mut out = DMatrix::zeros(dim, dim);
    for (col, &config) in basis.configurations().iter().enumerate() {
        let image = StateVector::basis_state(num_qubits, config)?.apply_pauli_sum(op)?;
        for (row, &c) in basis.configurations().iter().enumerate() {
            out[(row, col)] = image.amplitude(c);
        }
    }
    Ok(out)
}

/// Eigenvalues ascending with matching eigenvector columns.
pub fn eigensystem(h: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let dim = h.nrows();
    if dim == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    let asym = (h - h.transpose()).amax();
    if asym > 1e-12 * (1.0 + h.amax()) {
        return Err(Error::NotHermitian(asym));
    }
    let eig = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(dim, dim, |i, j| eig.eigenvectors[(i, order[j])]);
    let scale = 1.0 + h.amax() * dim as f64;
    for (j, &l) in values.iter().enumerate() {
        let v = vectors.column(j);
        let res = (h * v - v * l).norm();
        if res > 1e-9 * scale {
            return Err(Error::Eigensolver(format!(
                "residual {res:e} for eigenvalue {l}"
            )));
        }
    }
    Ok((values, vectors))
}

/// Eigensystem of one sector with helpers for states on the full register.
#[derive(Debug, Clone)]
pub struct SectorOracle {
    pub spec: HubbardSpec,
    pub basis: SectorBasis,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
}

impl SectorOracle {
    pub fn new(spec: &HubbardSpec, n_up: usize, n_down: usize) -> Result<Self> {
        let basis = sector_basis(spec, n_up, n_down)?;
        let h = dense_hamiltonian(spec, &basis)?;
        let (eigenvalues, eigenvectors) = eigensystem(&h)?;
        Ok(Self {
            spec: *spec,
            basis,
            eigenvalues,
            eigenvectors,
        })
    }

    /// Sector at the spec's filling and `S_z` closest to zero.
    pub fn for_spec(spec: &HubbardSpec) -> Result<Self> {
        let (up, down) = spec.spin_counts();
        Self::new(spec, up, down)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Sector components of `state`; fails if more than `1e-10` of the weight
    /// lies outside. Bits above the lattice modes must all be `|0>` or all
    /// `|1>` consistently; only the lattice part is read.
    pub fn project(&self, state: &StateVector) -> Result<DVector<Complex64>> {
        let mask = (1usize << (2 * self.basis.sites)) - 1;
        let mut v = DVector::zeros(self.dim());
        let mut leak = 0.0;
        for (i, a) in state.amplitudes().iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            match self.basis.position(i & mask) {
                Some(k) => v[k] += a,
                None => leak += a.norm_sqr(),
            }
        }
        if leak > 1e-10 {
            return Err(Error::OutsideSector { leak });
        }
        Ok(v)
    }

    /// Overlaps `gamma_n = <Psi_n|phi>`.
    pub fn overlaps(&self, state: &StateVector) -> Result<Vec<Complex64>> {
        let v = self.project(state)?;
        Ok((0..self.dim())
            .map(|n| {
                self.eigenvectors
                    .column(n)
                    .iter()
                    .zip(v.iter())
                    .map(|(&e, &a)| a * e)
                    .sum()
            })
            .collect())
    }

    /// `|gamma_n|^2`.
    pub fn weights(&self, state: &StateVector) -> Result<Vec<f64>> {
        Ok(self.overlaps(state)?.iter().map(|g| g.norm_sqr()).collect())
    }

    /// `<phi| e^{-iHt} |phi>` on `t_j = j dt`.
    pub fn loschmidt(&self, state: &StateVector, dt: f64, samples: usize) -> Result<TimeSeries> {
        let w = self.weights(state)?;
        let values = (0..samples)
            .map(|j| {
                let t = j as f64 * dt;
                w.iter()
                    .zip(&self.eigenvalues)
                    .map(|(&g, &l)| Complex64::from_polar(g, -l * t))
                    .sum()
            })
            .collect();
        TimeSeries::new(dt, values)
    }

    /// `e^{-iHt}` restricted to the sector.
    pub fn propagator(&self, t: f64) -> DMatrix<Complex64> {
        let v = self.eigenvectors.map(|x| Complex64::new(x, 0.0));
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            self.dim(),
            self.eigenvalues
                .iter()
                .map(|&l| Complex64::from_polar(1.0, -l * t)),
        ));
        &v * d * v.transpose()
    }

    /// Eigenvector `n` placed on a register of `num_qubits` qubits.
    pub fn eigenstate(&self, n: usize, num_qubits: usize) -> Result<StateVector> {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        for (k, &c) in self.basis.configurations().iter().enumerate() {
            amps[c] = Complex64::new(self.eigenvectors[(k, n)], 0.0);
        }
        StateVector::from_amplitudes(num_qubits, amps)
    }

    /// Sector vector placed on a register of `num_qubits` qubits.
    pub fn embed(&self, v: &DVector<Complex64>, num_qubits: usize) -> Result<StateVector> {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        for (k, &c) in self.basis.configurations().iter().enumerate() {
            amps[c] = v[k];
        }
        StateVector::from_amplitudes(num_qubits, amps)
    }
}

/// Loschmidt series of `phi` from the exact spectrum of its sector.
pub fn exact_loschmidt(
    phi: &StateVector,
    spec: &HubbardSpec,
    dt: f64,
    samples: usize,
) -> Result<TimeSeries> {
    let (up, down) = dominant_sector(phi, spec.sites());
    SectorOracle::new(spec, up, down)?.loschmidt(phi, dt, samples)
}

/// `(N_up, N_down)` of the largest amplitude of `phi`.
pub fn dominant_sector(phi: &StateVector, sites: usize) -> (usize, usize) {
    let (mut best, mut best_w) = (0, -1.0);
    for (i, a) in phi.amplitudes().iter().enumerate() {
        if a.norm_sqr() > best_w {
            best = i;
            best_w = a.norm_sqr();
        }
    }
    let m = (1usize << sites) - 1;
    (
        (best & m).count_ones() as usize,
        ((best >> sites) & m).count_ones() as usize,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sector_sizes() {
        let s22 = HubbardSpec::new(2, 2, 1.0, 1.0, 4.0);
        assert_eq!(sector_basis(&s22, 2, 2).unwrap().len(), 36);
        assert_eq!(sector_basis(&s22, 0, 0).unwrap().configurations(), &[0]);
        let s42 = HubbardSpec::new(4, 2, 1.0, 1.0, 4.0);
        assert_eq!(sector_basis(&s42, 4, 4).unwrap().len(), 4900);
    }

    #[test]
    fn atomic_limit_is_diagonal() {
        let spec = HubbardSpec::new(2, 2, 0.0, 0.0, 3.0);
        let basis = sector_basis(&spec, 2, 2).unwrap();
        let h = dense_hamiltonian(&spec, &basis).unwrap();
        for i in 0..h.nrows() {
            for j in 0..h.ncols() {
                if i != j {
                    assert_eq!(h[(i, j)], 0.0);
                }
            }
            assert!([0.0, 3.0, 6.0].contains(&h[(i, i)]));
        }
    }

    #[test]
    fn hop_signs() {
        // a_3^dag a_0 on modes {0, 1}: one occupied mode in between
        assert_eq!(hop(0b011, 3, 0), Some((0b1010, -1.0)));
        assert_eq!(hop(0b001, 1, 0), Some((0b010, 1.0)));
        assert_eq!(hop(0b010, 1, 0), None);
    }

    #[test]
    fn free_ground_state_fills_levels() {
        let spec = HubbardSpec::new(2, 2, 1.0, 1.0, 0.0);
        let oracle = SectorOracle::new(&spec, 2, 2).unwrap();
        let h1 = crate::hubbard::hopping_matrix(&spec).symmetric_eigen();
        let mut e: Vec<f64> = h1.eigenvalues.iter().cloned().collect();
        e.sort_by(f64::total_cmp);
        let filled = 2.0 * (e[0] + e[1]);
        assert!((oracle.eigenvalues[0] - filled).abs() < 1e-10);
        let trace: f64 = oracle.eigenvalues.iter().sum();
        assert!(trace.abs() < 1e-9);
    }
}
