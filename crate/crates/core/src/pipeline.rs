//! End-to-end runs: mean-field preparation, Trotter evolution, ancilla
//! readout and spectral analysis, driven by a TOML [`RunConfig`].

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hubbard::{hopping_matrix, mean_field_solve, trotter_terms, HubbardSpec, MeanField};
use crate::measure::{self, Engine, MeasurementMode, SeriesConfig};
use crate::oracle::SectorOracle;
use crate::prep::{exact_slater_state, four_site_example, logm_unitary, thouless_prepare, CMatrix};
use crate::spectral::{self, Peak, RefineMethod, Spectrum, TimeSeries};
use crate::state::{StateVector, MAX_QUBITS};
use crate::trotter::TrotterOrder;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LatticeConfig {
    pub nx: usize,
    pub ny: usize,
    /// Electron count, half filling when absent.
    pub electrons: Option<usize>,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        Self {
            nx: 4,
            ny: 2,
            electrons: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelConfig {
    pub tx: f64,
    pub ty: f64,
    pub u: f64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            tx: 1.0,
            ty: 1.0,
            u: 4.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum PrepMethod {
    #[default]
    Trotter,
    Exact,
}

/// System swept by `prepare-check`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum CheckSystem {
    /// Mean-field determinant of the configured lattice.
    #[default]
    Lattice,
    /// Two plane waves on a four-site ring.
    FourSite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PrepConfig {
    /// Slice of the unit-time Thouless evolution; `1/dt1` must be an integer.
    pub dt1: f64,
    pub method: PrepMethod,
    pub check: CheckSystem,
    /// Slice counts swept by `prepare-check`.
    pub sweep: Vec<usize>,
}

impl Default for PrepConfig {
    fn default() -> Self {
        Self {
            dt1: 0.05,
            method: PrepMethod::Trotter,
            check: CheckSystem::Lattice,
            sweep: vec![1, 2, 5, 10, 20, 50, 100],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolveConfig {
    pub dt2: f64,
    pub order: u32,
    pub samples: usize,
    /// Trotter steps per sample, from [`auto_stride`] when absent.
    pub stride: Option<usize>,
    pub engine: Engine,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        Self {
            dt2: 0.05,
            order: 2,
            samples: 1024,
            stride: None,
            engine: Engine::Fused,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    #[default]
    Deterministic,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MeasureConfig {
    pub mode: ModeName,
    pub shots: u64,
    pub seed: u64,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        Self {
            mode: ModeName::Deterministic,
            shots: 10_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FftConfig {
    pub refine: bool,
    pub method: RefineMethod,
    pub peak_threshold: f64,
}

impl Default for FftConfig {
    fn default() -> Self {
        Self {
            refine: true,
            method: RefineMethod::Exact,
            peak_threshold: 0.05,
        }
    }
}

impl FftConfig {
    pub fn refine_method(&self) -> Option<RefineMethod> {
        self.refine.then_some(self.method)
    }

    fn validate(&self) -> Result<()> {
        if !(self.peak_threshold > 0.0 && self.peak_threshold < 1.0) {
            return Err(Error::config("fft.peak_threshold", "must lie in (0, 1)"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub directory: PathBuf,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            directory: PathBuf::from("out"),
        }
    }
}

/// Full run configuration. Every section and key is optional; the defaults
/// describe the 4x2 half-filled model with `tx = ty = 1`, `U = 4`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub lattice: LatticeConfig,
    pub model: ModelConfig,
    pub prep: PrepConfig,
    pub evolve: EvolveConfig,
    pub measure: MeasureConfig,
    pub fft: FftConfig,
    pub output: OutputConfig,
}

fn parse_override_value(raw: &str) -> toml::Value {
    let doc = format!("v = {raw}");
    match doc.parse::<toml::Table>() {
        Ok(mut t) => t
            .remove("v")
            .unwrap_or_else(|| toml::Value::String(raw.to_string())),
        Err(_) => toml::Value::String(raw.to_string()),
    }
}

impl RunConfig {
    /// Parses TOML text, applies `key.path=value` overrides and validates.
    pub fn from_toml_with(text: &str, overrides: &[String]) -> Result<Self> {
        let mut table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| Error::config("<file>", e.message().to_string()))?;
        for item in overrides {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::config(item, "override must look like key.path=value"))?;
            let path: Vec<&str> = key.trim().split('.').collect();
            let mut node = &mut table;
            for part in &path[..path.len() - 1] {
                let entry = node
                    .entry(part.to_string())
                    .or_insert_with(|| toml::Value::Table(toml::Table::new()));
                node = entry
                    .as_table_mut()
                    .ok_or_else(|| Error::config(key, format!("`{part}` is not a section")))?;
            }
            node.insert(
                path[path.len() - 1].to_string(),
                parse_override_value(value.trim()),
            );
        }
        let config: RunConfig = toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| Error::config("<file>", e.message().to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        Self::from_toml_with(text, &[])
    }

    pub fn load(path: &Path, overrides: &[String]) -> Result<Self> {
        let text =
            fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml_with(&text, overrides)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn spec(&self) -> HubbardSpec {
        let spec = HubbardSpec::new(
            self.lattice.nx,
            self.lattice.ny,
            self.model.tx,
            self.model.ty,
            self.model.u,
        );
        match self.lattice.electrons {
            Some(n) => spec.with_electrons(n),
            None => spec,
        }
    }

    /// Lattice qubits plus the readout ancilla.
    pub fn qubit_count(&self) -> usize {
        2 * self.lattice.nx * self.lattice.ny + 1
    }

    pub fn order(&self) -> Result<TrotterOrder> {
        TrotterOrder::from_int(self.evolve.order)
            .map_err(|_| Error::config("evolve.order", "must be 1 or 2"))
    }

    /// Number of Thouless slices, `1/dt1`.
    pub fn prep_steps(&self) -> Result<usize> {
        let inv = 1.0 / self.prep.dt1;
        let steps = inv.round();
        if !(self.prep.dt1 > 0.0) || steps < 1.0 || (inv - steps).abs() > 1e-9 * inv {
            return Err(Error::config(
                "prep.dt1",
                "must be 1/k for a positive integer k",
            ));
        }
        Ok(steps as usize)
    }

    pub fn validate(&self) -> Result<()> {
        let spec = self.spec();
        if self.lattice.nx == 0 || self.lattice.ny == 0 {
            return Err(Error::config("lattice", "dimensions must be positive"));
        }
        if let Err(e) = spec.validate() {
            return Err(Error::config("lattice", e.to_string()));
        }
        if self.qubit_count() > MAX_QUBITS {
            return Err(Error::config(
                "lattice",
                format!(
                    "{} qubits exceed the {MAX_QUBITS}-qubit register limit",
                    self.qubit_count()
                ),
            ));
        }
        for (field, v) in [
            ("model.tx", self.model.tx),
            ("model.ty", self.model.ty),
            ("model.u", self.model.u),
        ] {
            if !v.is_finite() {
                return Err(Error::config(field, "must be finite"));
            }
        }
        self.prep_steps()?;
        if self.prep.sweep.contains(&0) {
            return Err(Error::config("prep.sweep", "slice counts must be positive"));
        }
        if !(self.evolve.dt2 > 0.0 && self.evolve.dt2.is_finite()) {
            return Err(Error::config("evolve.dt2", "must be positive"));
        }
        self.order()?;
        if self.evolve.samples < 2 || !self.evolve.samples.is_power_of_two() {
            return Err(Error::config(
                "evolve.samples",
                "must be a power of two >= 2",
            ));
        }
        if self.evolve.stride == Some(0) {
            return Err(Error::config("evolve.stride", "must be positive"));
        }
        if self.measure.mode == ModeName::Sampled && self.measure.shots == 0 {
            return Err(Error::config(
                "measure.shots",
                "must be positive in sampled mode",
            ));
        }
        self.fft.validate()
    }

    pub fn measurement_mode(&self) -> MeasurementMode {
        match self.measure.mode {
            ModeName::Deterministic => MeasurementMode::Deterministic,
            ModeName::Sampled => MeasurementMode::Sampled {
                shots: self.measure.shots,
                seed: self.measure.seed,
            },
        }
    }
}

/// Interval containing the sector spectrum: kinetic energy between the sums
/// of the lowest and highest single-particle levels per spin, interaction
/// between the least and most double occupancy the filling allows.
pub fn spectral_bounds(spec: &HubbardSpec) -> (f64, f64) {
    let mut levels: Vec<f64> = hopping_matrix(spec)
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    levels.sort_by(f64::total_cmp);
    let (up, down) = spec.spin_counts();
    let sites = spec.sites();
    let (mut lo, mut hi) = (0.0, 0.0);
    for n in [up, down] {
        lo += levels[..n].iter().sum::<f64>();
        hi += levels[sites - n..].iter().sum::<f64>();
    }
    let least = (up + down).saturating_sub(sites) as f64;
    let most = up.min(down) as f64;
    let (a, b) = (spec.u * least, spec.u * most);
    (lo + a.min(b), hi + a.max(b))
}

/// Largest stride whose sampling band `(-pi/(stride dt), pi/(stride dt)]`
/// still contains [`spectral_bounds`] with a 10% margin.
pub fn auto_stride(spec: &HubbardSpec, dt: f64) -> usize {
    let (lo, hi) = spectral_bounds(spec);
    let reach = lo.abs().max(hi.abs());
    if reach == 0.0 {
        return 1;
    }
    ((std::f64::consts::PI / (dt * reach * 1.1)).floor() as usize).max(1)
}

/// A prepared lattice state with the mean-field data behind it.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub state: StateVector,
    pub mean_field: MeanField,
    pub steps: usize,
}

/// Mean-field determinant on the lattice qubits, via Trotterized Thouless
/// rotation or exactly.
pub fn prepare(config: &RunConfig) -> Result<Prepared> {
    let spec = config.spec();
    let mf = mean_field_solve(&spec)?;
    let nq = spec.modes();
    let b = mf.unitary();
    let steps = config.prep_steps()?;
    let state = match config.prep.method {
        PrepMethod::Trotter => {
            let m = logm_unitary(&b)?;
            thouless_prepare(&mf.boot_state(nq)?, &m, steps)?
        }
        PrepMethod::Exact => exact_slater_state(&b, &mf.boot_modes(), nq)?,
    };
    Ok(Prepared {
        state,
        mean_field: mf,
        steps,
    })
}

/// Resolved settings and bookkeeping written next to every output.
#[derive(Debug, Clone, Serialize)]
pub struct RunMetadata {
    pub command: String,
    pub config: RunConfig,
    pub qubits: usize,
    pub prep_steps: usize,
    pub stride: usize,
    pub sample_spacing: f64,
    pub mean_field_iterations: usize,
    pub mean_field_energy: f64,
    pub fermi_tie: bool,
    pub reproducibility_tolerance: f64,
    pub wall_seconds: f64,
    pub version: String,
}

#[derive(Debug, Clone)]
pub struct SpectrumRun {
    pub series: TimeSeries,
    pub spectrum: Spectrum,
    pub peaks: Vec<Peak>,
    pub metadata: RunMetadata,
}

/// Runs the spectrum pipeline without touching the disk.
pub fn run_spectrum(config: &RunConfig) -> Result<SpectrumRun> {
    config.validate()?;
    let start = Instant::now();
    let spec = config.spec();
    let prepared = prepare(config)?;
    let stride = match config.evolve.stride {
        Some(s) => s,
        None => auto_stride(&spec, config.evolve.dt2),
    };
    let cfg = SeriesConfig {
        dt: config.evolve.dt2,
        stride,
        samples: config.evolve.samples,
        order: config.order()?,
        engine: config.evolve.engine,
    };
    let mut series = measure::loschmidt_series(&prepared.state, &trotter_terms(&spec)?, &cfg)?;
    if let MeasurementMode::Sampled { shots, seed } = config.measurement_mode() {
        let values = series
            .values()
            .iter()
            .enumerate()
            .map(|(j, &v)| {
                measure::sampled_expectation(v, shots, seed.wrapping_add(j as u64)).map(|r| r.value)
            })
            .collect::<Result<Vec<Complex64>>>()?;
        series = TimeSeries::new(series.dt(), values)?;
    }
    let (spectrum, peaks) = spectral::analyze(
        &series,
        config.fft.peak_threshold,
        config.fft.refine_method(),
    )?;
    let metadata = RunMetadata {
        command: "spectrum".into(),
        config: config.clone(),
        qubits: config.qubit_count(),
        prep_steps: prepared.steps,
        stride,
        sample_spacing: cfg.spacing(),
        mean_field_iterations: prepared.mean_field.iterations,
        mean_field_energy: prepared.mean_field.energy,
        fermi_tie: prepared.mean_field.fermi_tie,
        reproducibility_tolerance: 1e-12,
        wall_seconds: start.elapsed().as_secs_f64(),
        version: env!("CARGO_PKG_VERSION").into(),
    };
    Ok(SpectrumRun {
        series,
        spectrum,
        peaks,
        metadata,
    })
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    let path = dir.join(name);
    File::create(&path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<()> {
    let w = create(dir, name)?;
    serde_json::to_writer_pretty(w, value).map_err(|e| Error::Io(e.to_string()))
}

/// Runs the spectrum pipeline and writes `timeseries.csv`, `spectrum.csv`,
/// `peaks.csv` and `run.json` into the output directory.
pub fn cmd_spectrum(config: &RunConfig) -> Result<SpectrumRun> {
    let run = run_spectrum(config)?;
    let dir = &config.output.directory;
    ensure_dir(dir)?;
    run.series.write_csv(create(dir, "timeseries.csv")?)?;
    run.spectrum.write_csv(create(dir, "spectrum.csv")?)?;
    spectral::write_peaks_csv(&run.peaks, create(dir, "peaks.csv")?)?;
    write_json(dir, "run.json", &run.metadata)?;
    Ok(run)
}

/// `(slices, |<exact|prepared>|)` pairs.
pub fn prepare_check(config: &RunConfig) -> Result<Vec<(usize, f64)>> {
    config.validate()?;
    let (b, boot_modes, nq) = match config.prep.check {
        CheckSystem::FourSite => (four_site_example(), vec![1, 2], 4),
        CheckSystem::Lattice => {
            let spec = config.spec();
            let mf = mean_field_solve(&spec)?;
            (mf.unitary(), mf.boot_modes(), spec.modes())
        }
    };
    let exact = exact_slater_state(&b, &boot_modes, nq)?;
    let index = boot_modes.iter().map(|&m| 1usize << (m - 1)).sum();
    let boot = StateVector::basis_state(nq, index)?;
    let m: CMatrix = logm_unitary(&b)?;
    config
        .prep
        .sweep
        .iter()
        .map(|&steps| {
            let prepared = match config.prep.method {
                PrepMethod::Trotter => thouless_prepare(&boot, &m, steps)?,
                PrepMethod::Exact => exact.clone(),
            };
            Ok((steps, exact.inner(&prepared)?.norm()))
        })
        .collect()
}

/// Writes `overlap.csv` (`steps,dt1,overlap`) and `prepare.json`.
pub fn cmd_prepare_check(config: &RunConfig) -> Result<Vec<(usize, f64)>> {
    let start = Instant::now();
    let rows = prepare_check(config)?;
    let dir = &config.output.directory;
    ensure_dir(dir)?;
    let mut w = csv::Writer::from_writer(create(dir, "overlap.csv")?);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["steps", "dt1", "overlap"]).map_err(io)?;
    for &(steps, overlap) in &rows {
        w.write_record([
            steps.to_string(),
            format!("{:.16e}", 1.0 / steps as f64),
            format!("{overlap:.16e}"),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    write_json(
        dir,
        "prepare.json",
        &serde_json::json!({
            "command": "prepare-check",
            "config": config,
            "wall_seconds": start.elapsed().as_secs_f64(),
        }),
    )?;
    Ok(rows)
}

/// One row of the oracle dump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleLine {
    pub index: usize,
    pub lambda: f64,
    /// `|<Psi_n|phi>|^2` for the prepared state.
    pub weight: f64,
}

/// Sector eigenvalues with weights against the prepared state.
pub fn oracle_lines(config: &RunConfig) -> Result<Vec<OracleLine>> {
    config.validate()?;
    let spec = config.spec();
    let oracle = SectorOracle::for_spec(&spec)?;
    let prepared = prepare(config)?;
    let weights = oracle.weights(&prepared.state)?;
    Ok(oracle
        .eigenvalues
        .iter()
        .zip(weights)
        .enumerate()
        .map(|(index, (&lambda, weight))| OracleLine {
            index,
            lambda,
            weight,
        })
        .collect())
}

/// Writes `oracle.csv` (`index,lambda,weight`) and `oracle.json`.
pub fn cmd_oracle(config: &RunConfig) -> Result<Vec<OracleLine>> {
    let start = Instant::now();
    let lines = oracle_lines(config)?;
    let dir = &config.output.directory;
    ensure_dir(dir)?;
    let mut w = csv::Writer::from_writer(create(dir, "oracle.csv")?);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["index", "lambda", "weight"]).map_err(io)?;
    for l in &lines {
        w.write_record([
            l.index.to_string(),
            format!("{:.16e}", l.lambda),
            format!("{:.16e}", l.weight),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    write_json(
        dir,
        "oracle.json",
        &serde_json::json!({
            "command": "oracle",
            "config": config,
            "sector_dimension": lines.len(),
            "wall_seconds": start.elapsed().as_secs_f64(),
        }),
    )?;
    Ok(lines)
}

/// Analyzes a `t,re,im` file into `spectrum.csv` and `peaks.csv` in `out_dir`.
pub fn cmd_fft(input: &Path, fft: &FftConfig, out_dir: &Path) -> Result<(Spectrum, Vec<Peak>)> {
    fft.validate()?;
    let file = File::open(input).map_err(|e| Error::Io(format!("{}: {e}", input.display())))?;
    let series = TimeSeries::read_csv(std::io::BufReader::new(file))?;
    let (spectrum, peaks) = spectral::analyze(&series, fft.peak_threshold, fft.refine_method())?;
    ensure_dir(out_dir)?;
    spectrum.write_csv(create(out_dir, "spectrum.csv")?)?;
    spectral::write_peaks_csv(&peaks, create(out_dir, "peaks.csv")?)?;
    write_json(
        out_dir,
        "fft.json",
        &serde_json::json!({
            "command": "fft",
            "input": input.display().to_string(),
            "fft": fft,
            "samples": series.len(),
            "dt": series.dt(),
        }),
    )?;
    Ok((spectrum, peaks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_the_four_by_two_run() {
        let c = RunConfig::from_toml("").unwrap();
        assert_eq!((c.lattice.nx, c.lattice.ny), (4, 2));
        assert_eq!(c.qubit_count(), 17);
        assert_eq!(c.prep_steps().unwrap(), 20);
        assert_eq!(c.evolve.order, 2);
    }

    #[test]
    fn overrides_and_field_errors() {
        let c = RunConfig::from_toml_with(
            "[lattice]\nnx = 2\n",
            &[
                "lattice.ny=2".into(),
                "prep.method=exact".into(),
                "output.directory=/tmp/x".into(),
            ],
        )
        .unwrap();
        assert_eq!(c.lattice.ny, 2);
        assert_eq!(c.prep.method, PrepMethod::Exact);
        assert_eq!(c.output.directory, PathBuf::from("/tmp/x"));
        let e = RunConfig::from_toml_with("", &["evolve.samples=1000".into()]).unwrap_err();
        assert!(matches!(&e, Error::Config { field, .. } if field == "evolve.samples"));
        assert_eq!(e.exit_code(), 2);
        let e = RunConfig::from_toml("[evolve]\nbogus = 1\n").unwrap_err();
        assert!(e.to_string().contains("bogus"));
        let e = RunConfig::from_toml_with("", &["prep.dt1=0.3".into()]).unwrap_err();
        assert!(matches!(&e, Error::Config { field, .. } if field == "prep.dt1"));
    }

    #[test]
    fn bounds_contain_oracle_spectrum() {
        let spec = HubbardSpec::new(2, 2, 1.0, 1.0, 4.0);
        let (lo, hi) = spectral_bounds(&spec);
        let oracle = SectorOracle::for_spec(&spec).unwrap();
        assert!(lo <= oracle.eigenvalues[0] + 1e-9);
        assert!(hi >= *oracle.eigenvalues.last().unwrap() - 1e-9);
        assert_eq!(auto_stride(&spec, 0.05), 3);
    }

    #[test]
    fn round_trips_through_toml() {
        let mut c = RunConfig::default();
        c.evolve.stride = Some(3);
        assert_eq!(RunConfig::from_toml(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn exact_preparation_has_unit_overlap() {
        let c = RunConfig::from_toml_with(
            "",
            &[
                "prep.method=exact".into(),
                "prep.check=\"four-site\"".into(),
            ],
        )
        .unwrap();
        for (_, o) in prepare_check(&c).unwrap() {
            assert!((o - 1.0).abs() < 1e-10);
        }
    }
}
