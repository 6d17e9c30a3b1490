//! Fourier analysis of sampled amplitudes `F(t_j) = sum_n w_n e^{-i lambda_n t_j}`.
//!
//! `F~(Omega_m) = dt sum_j F(t_j) e^{i Omega_m t_j}` with `Omega_m = 2 pi m/(N dt)`,
//! so a mode at `lambda_n` shows up as a peak near `Omega = lambda_n`.

use std::f64::consts::PI;
use std::io::{Read, Write};

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_len(n: usize) -> Result<()> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(())
}

/// Uniformly sampled series starting at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    dt: f64,
    values: Vec<Complex64>,
}

impl TimeSeries {
    pub fn new(dt: f64, values: Vec<Complex64>) -> Result<Self> {
        check_len(values.len())?;
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "sample spacing must be positive, got {dt}"
            )));
        }
        Ok(Self { dt, values })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, j: usize) -> f64 {
        j as f64 * self.dt
    }

    /// Writes `t,re,im` rows with a header.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "re", "im"]).map_err(io_error)?;
        for (j, v) in self.values.iter().enumerate() {
            w.write_record([fmt_f64(self.time(j)), fmt_f64(v.re), fmt_f64(v.im)])
                .map_err(io_error)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads `t,re,im` rows. The spacing is taken from the first two rows
    /// and every row must sit on that grid.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(input);
        let mut times = Vec::new();
        let mut values = Vec::new();
        for (i, rec) in r.records().enumerate() {
            // header is line 1
            let line = i + 2;
            let rec = rec.map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
            if rec.len() < 3 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected 3 columns (t, re, im), found {}", rec.len()),
                });
            }
            let num = |k: usize| -> Result<f64> {
                rec[k].parse::<f64>().map_err(|e| Error::Parse {
                    line,
                    message: format!("column {}: {e}", k + 1),
                })
            };
            times.push(num(0)?);
            values.push(Complex64::new(num(1)?, num(2)?));
        }
        if values.len() < 2 {
            return Err(Error::NotPowerOfTwo(values.len()));
        }
        let dt = times[1] - times[0];
        for (j, &t) in times.iter().enumerate() {
            if (t - times[0] - j as f64 * dt).abs() > 1e-9 * (1.0 + t.abs()) {
                return Err(Error::Parse {
                    line: j + 2,
                    message: format!("time {t} is off the uniform grid"),
                });
            }
        }
        TimeSeries::new(dt, values)
    }
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_error(e: csv::Error) -> Error {
    Error::Io(format!("csv: {e}"))
}

/// Fourier transform of a [`TimeSeries`].
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    dt: f64,
    bins: Vec<Complex64>,
}

impl Spectrum {
    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn bins(&self) -> &[Complex64] {
        &self.bins
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// Grid spacing `2 pi/(N dt)`.
    pub fn spacing(&self) -> f64 {
        2.0 * PI / (self.len() as f64 * self.dt)
    }

    /// `Omega_m` folded into `(-pi/dt, pi/dt]`.
    pub fn omega(&self, m: usize) -> f64 {
        let n = self.len();
        let k = if m <= n / 2 {
            m as f64
        } else {
            m as f64 - n as f64
        };
        k * self.spacing()
    }

    fn at(&self, m: isize) -> Complex64 {
        let n = self.len() as isize;
        self.bins[m.rem_euclid(n) as usize]
    }

    /// Writes `omega,re,im,abs` rows in bin order.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["omega", "re", "im", "abs"])
            .map_err(io_error)?;
        for (m, b) in self.bins.iter().enumerate() {
            w.write_record([
                fmt_f64(self.omega(m)),
                fmt_f64(b.re),
                fmt_f64(b.im),
                fmt_f64(b.norm()),
            ])
            .map_err(io_error)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `F~(Omega_m) = dt sum_j F(t_j) e^{+i 2 pi m j/N}`.
pub fn dfft(series: &TimeSeries) -> Spectrum {
    let mut buf = series.values.clone();
    FftPlanner::new()
        .plan_fft_inverse(buf.len())
        .process(&mut buf);
    for b in &mut buf {
        *b *= series.dt;
    }
    Spectrum {
        dt: series.dt,
        bins: buf,
    }
}

/// Inverse of [`dfft`].
pub fn inverse(spectrum: &Spectrum) -> TimeSeries {
    let mut buf = spectrum.bins.clone();
    FftPlanner::new()
        .plan_fft_forward(buf.len())
        .process(&mut buf);
    let scale = 1.0 / (buf.len() as f64 * spectrum.dt);
    for b in &mut buf {
        *b *= scale;
    }
    TimeSeries {
        dt: spectrum.dt,
        values: buf,
    }
}

/// `dt sum_j F(t_j) e^{i omega t_j}` at an arbitrary frequency.
pub fn fourier_at(series: &TimeSeries, omega: f64) -> Complex64 {
    let step = Complex64::from_polar(1.0, omega * series.dt);
    let mut phase = Complex64::new(1.0, 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    for (j, v) in series.values.iter().enumerate() {
        if j % 64 == 0 {
            phase = Complex64::from_polar(1.0, omega * series.time(j));
        }
        total += v * phase;
        phase *= step;
    }
    total * series.dt
}

/// Local maxima of `|F~|` at or above `threshold * max`, at least two bins
/// apart (the stronger one wins), in bin order.
pub fn find_peaks(spectrum: &Spectrum, threshold: f64) -> Result<Vec<usize>> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "peak threshold must lie in (0, 1), got {threshold}"
        )));
    }
    let n = spectrum.len() as isize;
    let mag: Vec<f64> = spectrum.bins.iter().map(|b| b.norm()).collect();
    let max = mag.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return Ok(Vec::new());
    }
    let mut candidates: Vec<usize> = (0..n)
        .filter(|&m| {
            let here = mag[m as usize];
            here >= threshold * max
                && here > mag[(m - 1).rem_euclid(n) as usize]
                && here >= mag[(m + 1).rem_euclid(n) as usize]
        })
        .map(|m| m as usize)
        .collect();
    candidates.sort_by(|&a, &b| mag[b].total_cmp(&mag[a]).then(a.cmp(&b)));
    let mut kept: Vec<usize> = Vec::new();
    for m in candidates {
        let far = kept.iter().all(|&k| {
            let d = (m as isize - k as isize).rem_euclid(n);
            d.min(n - d) >= 2
        });
        if far {
            kept.push(m);
        }
    }
    kept.sort_unstable();
    Ok(kept)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RefineMethod {
    /// Solves the single-mode neighbour ratio exactly.
    #[default]
    Exact,
    /// First-order expansion `ln(1 + z) ~ z` of the same ratio.
    Linearized,
}

/// A refined spectral line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub lambda: f64,
    /// Estimate of `|gamma_n|^2`.
    pub weight: f64,
    pub bin: usize,
    pub raw_magnitude: f64,
    /// `false` if the neighbour condition failed and `lambda` is the raw bin.
    pub refined: bool,
}

/// Sub-grid eigenvalue estimate at peak bin `m`.
///
/// For a single mode the ratio `r = F~(Omega_{m+s})/F~(Omega_m)` with the
/// larger neighbour `s = +-1` fixes the offset: with `x = (Omega_m - lambda) dt`
/// and `h = 2 pi s/N`, `e^{ix} = (1 - r)/(1 - r e^{ih})`. The linearized form
/// is `lambda - Omega_m ~ Re[i r (e^{ih} - 1)]/dt`. The weight inverts the
/// single-mode sum `|F~_m| = |gamma|^2 dt |sum_j e^{i x j}|`.
pub fn refine_eigenvalue(spectrum: &Spectrum, m: usize, method: RefineMethod) -> Peak {
    let n = spectrum.len();
    let dt = spectrum.dt;
    let here = spectrum.bins[m];
    let up = spectrum.at(m as isize + 1);
    let down = spectrum.at(m as isize - 1);
    let (neighbour, s) = if up.norm() >= down.norm() {
        (up, 1.0)
    } else {
        (down, -1.0)
    };
    let omega = spectrum.omega(m);
    let raw = Peak {
        lambda: omega,
        weight: here.norm() / (dt * n as f64),
        bin: m,
        raw_magnitude: here.norm(),
        refined: false,
    };
    if here.norm() == 0.0 || neighbour.norm() >= here.norm() {
        return raw;
    }
    let r = neighbour / here;
    let h = 2.0 * PI * s / n as f64;
    let eih = Complex64::from_polar(1.0, h);
    let x = match method {
        RefineMethod::Exact => ((1.0 - r) / (1.0 - r * eih)).arg(),
        RefineMethod::Linearized => -(Complex64::i() * r * (eih - 1.0)).re,
    };
    let lambda = omega - x / dt;
    let dirichlet = if x.abs() < 1e-12 {
        n as f64
    } else {
        ((n as f64 * x / 2.0).sin() / (x / 2.0).sin()).abs()
    };
    Peak {
        lambda,
        weight: here.norm() / (dt * dirichlet),
        bin: m,
        raw_magnitude: here.norm(),
        refined: true,
    }
}

/// Peaks above `threshold`, refined or raw, in bin order.
pub fn analyze(
    series: &TimeSeries,
    threshold: f64,
    refine: Option<RefineMethod>,
) -> Result<(Spectrum, Vec<Peak>)> {
    let spectrum = dfft(series);
    let peaks = find_peaks(&spectrum, threshold)?
        .into_iter()
        .map(|m| match refine {
            Some(method) => refine_eigenvalue(&spectrum, m, method),
            None => refine_eigenvalue(&spectrum, m, RefineMethod::Exact).raw_bin(&spectrum),
        })
        .collect();
    Ok((spectrum, peaks))
}

impl Peak {
    fn raw_bin(self, spectrum: &Spectrum) -> Peak {
        Peak {
            lambda: spectrum.omega(self.bin),
            weight: self.raw_magnitude / (spectrum.dt * spectrum.len() as f64),
            refined: false,
            ..self
        }
    }
}

/// Writes `lambda,weight,bin,raw_magnitude,refined` rows.
pub fn write_peaks_csv<W: Write>(peaks: &[Peak], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["lambda", "weight", "bin", "raw_magnitude", "refined"])
        .map_err(io_error)?;
    for p in peaks {
        w.write_record([
            fmt_f64(p.lambda),
            fmt_f64(p.weight),
            p.bin.to_string(),
            fmt_f64(p.raw_magnitude),
            p.refined.to_string(),
        ])
        .map_err(io_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a peaks file written by [`write_peaks_csv`].
pub fn read_peaks_csv<R: Read>(input: R) -> Result<Vec<Peak>> {
    let mut r = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        let bad = |k: usize, e: String| Error::Parse {
            line,
            message: format!("column {}: {e}", k + 1),
        };
        let f = |k: usize| rec[k].parse::<f64>().map_err(|e| bad(k, e.to_string()));
        out.push(Peak {
            lambda: f(0)?,
            weight: f(1)?,
            bin: rec[2]
                .parse()
                .map_err(|e: std::num::ParseIntError| bad(2, e.to_string()))?,
            raw_magnitude: f(3)?,
            refined: rec[4]
                .parse()
                .map_err(|e: std::str::ParseBoolError| bad(4, e.to_string()))?,
        });
    }
    Ok(out)
}
