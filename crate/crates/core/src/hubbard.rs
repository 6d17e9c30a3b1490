//! Hubbard model on an `Nx x Ny` periodic lattice.
//!
//! Bonds follow the literal periodic sum over sites: each site `(i, j)` has
//! an x-bond to `(i+1, j)` and a y-bond to `(i, j+1)`, wrapping at the edge.
//! For a dimension of 2 this counts the same pair twice, so the hopping is
//! effectively doubled; a dimension of 1 has no bonds in that direction.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::fermion::{number_operator, site_to_chain, FermionTerm, LatticeLabel, Spin};
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::state::{StateVector, MAX_QUBITS};
use crate::trotter::{TermList, TrotterOrder};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HubbardSpec {
    pub nx: usize,
    pub ny: usize,
    pub tx: f64,
    pub ty: f64,
    pub u: f64,
    /// Total particle count, split evenly between the spins.
    pub electrons: usize,
}

impl HubbardSpec {
    /// Half-filled lattice.
    pub fn new(nx: usize, ny: usize, tx: f64, ty: f64, u: f64) -> Self {
        Self {
            nx,
            ny,
            tx,
            ty,
            u,
            electrons: nx * ny,
        }
    }

    pub fn with_electrons(mut self, electrons: usize) -> Self {
        self.electrons = electrons;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, n) in [("nx", self.nx), ("ny", self.ny)] {
            if n == 0 || (n != 1 && n % 2 != 0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} = {n}: lattice dimensions must be 1 or even"
                )));
            }
        }
        if 2 * self.sites() + 1 > MAX_QUBITS {
            return Err(Error::UnsupportedRegister(2 * self.sites() + 1));
        }
        for (name, v) in [("tx", self.tx), ("ty", self.ty), ("u", self.u)] {
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!("{name} must be finite")));
            }
        }
        if self.electrons > 2 * self.sites() {
            return Err(Error::InvalidArgument(format!(
                "{} electrons do not fit on {} sites",
                self.electrons,
                self.sites()
            )));
        }
        Ok(())
    }

    pub fn sites(&self) -> usize {
        self.nx * self.ny
    }

    pub fn modes(&self) -> usize {
        2 * self.sites()
    }

    /// `(N_up, N_down)`; an odd particle goes to spin up.
    pub fn spin_counts(&self) -> (usize, usize) {
        let down = self.electrons / 2;
        (self.electrons - down, down)
    }

    /// 1-based site index `x + (y-1) Nx`.
    pub fn site(&self, x: usize, y: usize) -> usize {
        x + (y - 1) * self.nx
    }

    /// Chain index of a site and spin.
    pub fn mode(&self, site: usize, spin: Spin) -> usize {
        let x = (site - 1) % self.nx + 1;
        let y = (site - 1) / self.nx + 1;
        site_to_chain(LatticeLabel::new(x, y, spin), self.nx, self.ny).expect("site inside lattice")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    X,
    Y,
}

/// Hop between two sites (1-based site indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bond {
    pub direction: Direction,
    /// The starting coordinate along `direction` is odd.
    pub odd: bool,
    pub from: usize,
    pub to: usize,
}

/// Every bond of the literal periodic sum, site by site.
pub fn bonds(spec: &HubbardSpec) -> Vec<Bond> {
    let mut out = Vec::new();
    for y in 1..=spec.ny {
        for x in 1..=spec.nx {
            if spec.nx > 1 {
                out.push(Bond {
                    direction: Direction::X,
                    odd: x % 2 == 1,
                    from: spec.site(x, y),
                    to: spec.site(x % spec.nx + 1, y),
                });
            }
            if spec.ny > 1 {
                out.push(Bond {
                    direction: Direction::Y,
                    odd: y % 2 == 1,
                    from: spec.site(x, y),
                    to: spec.site(x, y % spec.ny + 1),
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupLabel {
    KxOdd,
    KxEven,
    KyOdd,
    KyEven,
    V,
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupLabel::KxOdd => "Kx_odd",
            GroupLabel::KxEven => "Kx_even",
            GroupLabel::KyOdd => "Ky_odd",
            GroupLabel::KyEven => "Ky_even",
            GroupLabel::V => "V",
        })
    }
}

/// A set of mutually commuting Hamiltonian terms.
#[derive(Debug, Clone, PartialEq)]
pub struct TermGroup {
    pub label: GroupLabel,
    /// `None` for the interaction group.
    pub spin: Option<Spin>,
    pub terms: Vec<FermionTerm>,
}

impl TermGroup {
    pub fn to_pauli(&self) -> Result<PauliSum> {
        let mut out = PauliSum::zero();
        for t in &self.terms {
            out = out + t.to_pauli()?;
        }
        Ok(out)
    }
}

/// Groups in the written order `Kx_odd, Kx_even, Ky_odd, Ky_even` for spin up,
/// the same for spin down, then `V`. Empty groups are omitted.
pub fn partition_bonds(spec: &HubbardSpec) -> Result<Vec<TermGroup>> {
    spec.validate()?;
    let all = bonds(spec);
    let mut groups = Vec::new();
    for spin in [Spin::Up, Spin::Down] {
        for (label, dir, odd) in [
            (GroupLabel::KxOdd, Direction::X, true),
            (GroupLabel::KxEven, Direction::X, false),
            (GroupLabel::KyOdd, Direction::Y, true),
            (GroupLabel::KyEven, Direction::Y, false),
        ] {
            let t = match dir {
                Direction::X => spec.tx,
                Direction::Y => spec.ty,
            };
            let c = Complex64::new(-t, 0.0);
            let terms: Vec<FermionTerm> = all
                .iter()
                .filter(|b| b.direction == dir && b.odd == odd)
                .flat_map(|b| {
                    let p = spec.mode(b.from, spin);
                    let q = spec.mode(b.to, spin);
                    [FermionTerm::hopping(p, q, c), FermionTerm::hopping(q, p, c)]
                })
                .collect();
            if !terms.is_empty() {
                groups.push(TermGroup {
                    label,
                    spin: Some(spin),
                    terms,
                });
            }
        }
    }
    let v = (1..=spec.sites())
        .map(|s| {
            FermionTerm::density_density(
                spec.mode(s, Spin::Up),
                spec.mode(s, Spin::Down),
                Complex64::new(spec.u, 0.0),
            )
        })
        .collect();
    groups.push(TermGroup {
        label: GroupLabel::V,
        spin: None,
        terms: v,
    });
    Ok(groups)
}

/// Jordan-Wigner image of the Hamiltonian.
pub fn build_hamiltonian(spec: &HubbardSpec) -> Result<PauliSum> {
    let mut h = PauliSum::zero();
    for g in partition_bonds(spec)? {
        h = h + g.to_pauli()?;
    }
    Ok(h)
}

/// Trotter terms in application order.
///
/// The written product `[Kx_odd Kx_even Ky_odd Ky_even]_sigma ... V` acts on a
/// state from the right, so `V` is applied first and the kinetic groups follow
/// in reverse. The second-order step is then `e^{-iV dt/2} e^{-iK dt} e^{-iV dt/2}`.
pub fn trotter_terms(spec: &HubbardSpec) -> Result<TermList> {
    let sums: Vec<PauliSum> = partition_bonds(spec)?
        .iter()
        .rev()
        .map(TermGroup::to_pauli)
        .collect::<Result<_>>()?;
    TermList::from_sums(&sums)
}

/// One Trotter step approximating `exp(-i H dt)`.
pub fn trotter_step(spec: &HubbardSpec, dt: f64, order: TrotterOrder) -> Result<Circuit> {
    if !(dt > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "time step must be positive, got {dt}"
        )));
    }
    trotter_terms(spec)?.step(dt, order)
}

/// Total particle number `sum_S n_S` over the lattice modes.
pub fn number_total(spec: &HubbardSpec) -> Result<PauliSum> {
    let mut out = PauliSum::zero();
    for s in 1..=spec.modes() {
        out = out + number_operator(s)?;
    }
    Ok(out)
}

/// `S_z = (N_up - N_down)/2`.
pub fn spin_z(spec: &HubbardSpec) -> Result<PauliSum> {
    let n = spec.sites();
    let mut out = PauliSum::zero();
    for s in 1..=n {
        out = out + PauliSum::from_string(PauliString::single(s, Pauli::Z)?).scale_real(0.25);
        out = out + PauliSum::from_string(PauliString::single(s + n, Pauli::Z)?).scale_real(-0.25);
    }
    Ok(out)
}

/// Single-particle hopping matrix over sites (0-based), identical for both spins.
pub fn hopping_matrix(spec: &HubbardSpec) -> DMatrix<f64> {
    let n = spec.sites();
    let mut h = DMatrix::zeros(n, n);
    for b in bonds(spec) {
        let t = match b.direction {
            Direction::X => spec.tx,
            Direction::Y => spec.ty,
        };
        h[(b.from - 1, b.to - 1)] -= t;
        h[(b.to - 1, b.from - 1)] -= t;
    }
    h
}

/// Staggered starting magnetization of the self-consistency loop.
pub const MEAN_FIELD_M0: f64 = 0.5;
pub const MEAN_FIELD_MIXING: f64 = 0.5;
pub const MEAN_FIELD_TOLERANCE: f64 = 1e-10;
pub const MEAN_FIELD_MAX_ITERATIONS: usize = 10_000;
const DEGENERACY_TOLERANCE: f64 = 1e-9;

/// Converged mean-field solution.
#[derive(Debug, Clone)]
pub struct MeanField {
    /// Orbitals as columns, occupied ones first, sorted by energy.
    pub orbitals_up: DMatrix<Complex64>,
    pub orbitals_down: DMatrix<Complex64>,
    pub energies_up: Vec<f64>,
    pub energies_down: Vec<f64>,
    pub density_up: Vec<f64>,
    pub density_down: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
    /// `sum of occupied levels - U sum_i <n_up><n_down>`.
    pub energy: f64,
    /// A partially filled degenerate level was resolved by plane-wave projection.
    pub fermi_tie: bool,
    pub n_up: usize,
    pub n_down: usize,
}

impl MeanField {
    /// Block-diagonal orbital matrix over all `2N` modes, spin up first.
    pub fn unitary(&self) -> DMatrix<Complex64> {
        let n = self.orbitals_up.nrows();
        let mut b = DMatrix::zeros(2 * n, 2 * n);
        b.view_mut((0, 0), (n, n)).copy_from(&self.orbitals_up);
        b.view_mut((n, n), (n, n)).copy_from(&self.orbitals_down);
        b
    }

    /// Modes occupied in the boot state: `1..=N_up` and `N+1..=N+N_down`.
    pub fn boot_modes(&self) -> Vec<usize> {
        let n = self.orbitals_up.nrows();
        (1..=self.n_up).chain(n + 1..=n + self.n_down).collect()
    }

    /// Boot basis state on `num_qubits >= 2N` qubits.
    pub fn boot_state(&self, num_qubits: usize) -> Result<StateVector> {
        let index = self.boot_modes().iter().map(|&m| 1usize << (m - 1)).sum();
        StateVector::basis_state(num_qubits, index)
    }

    /// `(1/N) sum_i (-1)^{x+y} (n_up - n_down)` with `x, y` 1-based.
    pub fn staggered_magnetization(&self, spec: &HubbardSpec) -> f64 {
        let n = spec.sites();
        (0..n)
            .map(|i| {
                let (x, y) = (i % spec.nx + 1, i / spec.nx + 1);
                let sign = if (x + y) % 2 == 0 { 1.0 } else { -1.0 };
                sign * (self.density_up[i] - self.density_down[i])
            })
            .sum::<f64>()
            / n as f64
    }
}

/// Self-consistent antiferromagnetic mean-field solution of
/// `H_MF = K + U sum_i (n_up <n_down> + n_down <n_up> - <n_up><n_down>)`.
///
/// Starts from densities `1/2 +- m0/2 (-1)^{x+y}` and mixes linearly.
pub fn mean_field_solve(spec: &HubbardSpec) -> Result<MeanField> {
    spec.validate()?;
    let n = spec.sites();
    if spec.u < 0.0 {
        return Err(Error::InvalidArgument("mean field needs U >= 0".into()));
    }
    if spec.electrons != n {
        return Err(Error::InvalidArgument(format!(
            "mean field is defined at half filling ({n} electrons), got {}",
            spec.electrons
        )));
    }
    let (n_up, n_down) = spec.spin_counts();
    let h0 = hopping_matrix(spec);
    let stagger: Vec<f64> = (0..n)
        .map(|i| {
            let (x, y) = (i % spec.nx + 1, i / spec.nx + 1);
            if (x + y) % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        })
        .collect();
    let mut up: Vec<f64> = stagger
        .iter()
        .map(|s| 0.5 + 0.5 * MEAN_FIELD_M0 * s)
        .collect();
    let mut down: Vec<f64> = stagger
        .iter()
        .map(|s| 0.5 - 0.5 * MEAN_FIELD_M0 * s)
        .collect();

    let mut residual = f64::INFINITY;
    for iteration in 1..=MEAN_FIELD_MAX_ITERATIONS {
        let sol_up = solve_spin(spec, &h0, &down, n_up);
        let sol_down = solve_spin(spec, &h0, &up, n_down);
        residual = max_diff(&sol_up.density, &up).max(max_diff(&sol_down.density, &down));
        if residual < MEAN_FIELD_TOLERANCE {
            let energy = sol_up.energies[..n_up].iter().sum::<f64>()
                + sol_down.energies[..n_down].iter().sum::<f64>()
                - spec.u
                    * sol_up
                        .density
                        .iter()
                        .zip(&sol_down.density)
                        .map(|(a, b)| a * b)
                        .sum::<f64>();
            return Ok(MeanField {
                orbitals_up: sol_up.orbitals,
                orbitals_down: sol_down.orbitals,
                energies_up: sol_up.energies,
                energies_down: sol_down.energies,
                density_up: sol_up.density,
                density_down: sol_down.density,
                iterations: iteration,
                residual,
                energy,
                fermi_tie: sol_up.tie || sol_down.tie,
                n_up,
                n_down,
            });
        }
        for (old, new) in up.iter_mut().zip(&sol_up.density) {
            *old = (1.0 - MEAN_FIELD_MIXING) * *old + MEAN_FIELD_MIXING * new;
        }
        for (old, new) in down.iter_mut().zip(&sol_down.density) {
            *old = (1.0 - MEAN_FIELD_MIXING) * *old + MEAN_FIELD_MIXING * new;
        }
    }
    Err(Error::NotConverged {
        iterations: MEAN_FIELD_MAX_ITERATIONS,
        residual,
    })
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

struct SpinSolution {
    orbitals: DMatrix<Complex64>,
    energies: Vec<f64>,
    density: Vec<f64>,
    tie: bool,
}

fn solve_spin(spec: &HubbardSpec, h0: &DMatrix<f64>, other: &[f64], count: usize) -> SpinSolution {
    let n = h0.nrows();
    let mut h = h0.clone();
    for i in 0..n {
        h[(i, i)] += spec.u * other[i];
    }
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let energies: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut orbitals = DMatrix::<Complex64>::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        for i in 0..n {
            orbitals[(i, col)] = Complex64::new(eig.eigenvectors[(i, k)], 0.0);
        }
    }
    let mut tie = false;
    if count > 0 && count < n && energies[count] - energies[count - 1] < DEGENERACY_TOLERANCE {
        tie = true;
        let ef = energies[count - 1];
        let block: Vec<usize> = (0..n)
            .filter(|&c| (energies[c] - ef).abs() < DEGENERACY_TOLERANCE)
            .collect();
        let chosen = plane_wave_basis(spec, &orbitals, &block);
        for (&col, v) in block.iter().zip(chosen) {
            orbitals.set_column(col, &v);
        }
    }
    let mut density = vec![0.0; n];
    for c in 0..count {
        for (i, d) in density.iter_mut().enumerate() {
            *d += orbitals[(i, c)].norm_sqr();
        }
    }
    SpinSolution {
        orbitals,
        energies,
        density,
        tie,
    }
}

/// Orthonormal basis of a degenerate block built by projecting plane waves
/// `e^{i(kx x + ky y)}` onto it in lexicographic `(mx, my)` order.
fn plane_wave_basis(
    spec: &HubbardSpec,
    orbitals: &DMatrix<Complex64>,
    block: &[usize],
) -> Vec<DVector<Complex64>> {
    let n = spec.sites();
    let norm = (n as f64).sqrt();
    let mut basis: Vec<DVector<Complex64>> = Vec::new();
    'waves: for mx in 0..spec.nx {
        for my in 0..spec.ny {
            if basis.len() == block.len() {
                break 'waves;
            }
            let wave = DVector::from_fn(n, |i, _| {
                let (x, y) = ((i % spec.nx) as f64, (i / spec.nx) as f64);
                let phase =
                    2.0 * PI * (mx as f64 * x / spec.nx as f64 + my as f64 * y / spec.ny as f64);
                Complex64::from_polar(1.0 / norm, phase)
            });
            let mut v = DVector::zeros(n);
            for &c in block {
                let col = orbitals.column(c);
                v += col * col.dotc(&wave);
            }
            for b in &basis {
                v -= b * b.dotc(&v);
            }
            let len = v.norm();
            if len > 1e-6 {
                basis.push(v / Complex64::new(len, 0.0));
            }
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bond_counts() {
        let spec = HubbardSpec::new(4, 2, 1.0, 1.0, 4.0);
        let b = bonds(&spec);
        let x_row1: Vec<_> = b
            .iter()
            .filter(|b| b.direction == Direction::X && b.from <= 4)
            .collect();
        assert_eq!(x_row1.len(), 4);
        assert_eq!(x_row1.iter().filter(|b| b.odd).count(), 2);
        assert_eq!(b.len(), 16);
        assert!(bonds(&HubbardSpec::new(2, 1, 1.0, 1.0, 0.0))
            .iter()
            .all(|b| b.direction == Direction::X));
    }

    #[test]
    fn odd_dimension_rejected() {
        assert!(HubbardSpec::new(3, 2, 1.0, 1.0, 4.0).validate().is_err());
        assert!(HubbardSpec::new(1, 4, 1.0, 1.0, 4.0).validate().is_ok());
    }

    #[test]
    fn groups_sum_to_hamiltonian_and_commute() {
        for (nx, ny) in [(2, 1), (2, 2), (4, 2), (2, 4), (4, 1)] {
            let spec = HubbardSpec::new(nx, ny, 1.0, 0.7, 4.0);
            let groups = partition_bonds(&spec).unwrap();
            let mut total = PauliSum::zero();
            for g in &groups {
                let p = g.to_pauli().unwrap();
                for (_, a) in p.terms() {
                    for (_, b) in p.terms() {
                        assert!(a.commutes_with(b), "{nx}x{ny} {}: {a} {b}", g.label);
                    }
                }
                total = total + p;
            }
            assert!((&total - &build_hamiltonian(&spec).unwrap()).is_empty());
        }
    }

    #[test]
    fn spin_sectors_decouple() {
        let spec = HubbardSpec::new(4, 2, 1.0, 1.0, 4.0);
        let groups = partition_bonds(&spec).unwrap();
        let k = |s: Spin| {
            groups
                .iter()
                .filter(|g| g.spin == Some(s))
                .map(|g| g.to_pauli().unwrap())
                .sum::<PauliSum>()
        };
        assert!(k(Spin::Up).commutator(&k(Spin::Down)).is_empty());
        let h = build_hamiltonian(&spec).unwrap();
        assert!(h.commutator(&number_total(&spec).unwrap()).is_empty());
        assert!(h.commutator(&spin_z(&spec).unwrap()).is_empty());
    }

    #[test]
    fn free_mean_field_is_uniform() {
        let spec = HubbardSpec::new(2, 2, 1.0, 1.0, 0.0);
        let mf = mean_field_solve(&spec).unwrap();
        assert!(mf.fermi_tie);
        for d in mf.density_up.iter().chain(&mf.density_down) {
            assert!((d - 0.5).abs() < 1e-10);
        }
        let b = mf.unitary();
        let dev = (b.adjoint() * &b - DMatrix::identity(8, 8)).norm();
        assert!(dev < 1e-12);
    }

    #[test]
    fn antiferromagnet_at_u4() {
        let spec = HubbardSpec::new(4, 2, 1.0, 1.0, 4.0);
        let mf = mean_field_solve(&spec).unwrap();
        assert!(mf.staggered_magnetization(&spec) > 0.1);
        for i in 0..spec.sites() {
            assert!((mf.density_up[i] + mf.density_down[i] - 1.0).abs() < 1e-8);
        }
        assert_eq!(mf.boot_modes(), vec![1, 2, 3, 4, 9, 10, 11, 12]);
    }
}
