//! Band-limited Gaussian noise synthesis and spectral estimation.
//!
//! Traces are built in the frequency domain: each positive-frequency bin up
//! to the band edge receives an independent complex Gaussian amplitude, bins
//! above the edge stay zero, and an inverse FFT produces the time series.
//! That gives an exactly Gaussian process with a brick-wall one-sided
//! spectrum, and the per-bin powers are weighted by each bin's overlap with
//! [0, bandwidth] so the ensemble mean square equals
//! `spectral_density * bandwidth` exactly, not just to leading order.
//!
//! The same trace container is used for channel currents; the unit is then
//! A instead of V and densities are A^2/Hz.

use crate::error::Error;
use crate::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use std::io::Write;

/// One-sided thermal noise density 4 k T R in V^2/Hz.
pub fn johnson_spectral_density(resistance_ohms: f64, temperature_kelvin: f64) -> Result<f64> {
    if !(resistance_ohms.is_finite() && resistance_ohms > 0.0) {
        return Err(Error::InvalidParameter {
            name: "resistance_ohms",
            value: resistance_ohms,
            reason: "must be finite and positive",
        });
    }
    if !(temperature_kelvin.is_finite() && temperature_kelvin > 0.0) {
        return Err(Error::InvalidParameter {
            name: "temperature_kelvin",
            value: temperature_kelvin,
            reason: "must be finite and positive",
        });
    }
    Ok(4.0 * crate::BOLTZMANN * temperature_kelvin * resistance_ohms)
}

/// Recipe for one synthesized trace: a flat one-sided density over
/// [0, bandwidth], zero above, sampled at `sample_rate` for `n_samples`.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSpec {
    /// One-sided density inside the band, V^2/Hz.
    pub spectral_density: f64,
    /// Hard band edge, Hz.
    pub bandwidth: f64,
    /// Samples per second; must satisfy Nyquist for the band.
    pub sample_rate: f64,
    pub n_samples: usize,
}

impl NoiseSpec {
    pub fn new(
        spectral_density: f64,
        bandwidth: f64,
        sample_rate: f64,
        n_samples: usize,
    ) -> Result<Self> {
        if !(spectral_density.is_finite() && spectral_density >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "spectral_density",
                value: spectral_density,
                reason: "must be finite and non-negative",
            });
        }
        if !(bandwidth.is_finite() && bandwidth > 0.0) {
            return Err(Error::InvalidParameter {
                name: "bandwidth",
                value: bandwidth,
                reason: "must be finite and positive",
            });
        }
        if !(sample_rate.is_finite() && sample_rate >= 2.0 * bandwidth) {
            return Err(Error::InvalidParameter {
                name: "sample_rate",
                value: sample_rate,
                reason: "must be at least twice the bandwidth",
            });
        }
        if n_samples < 2 {
            return Err(Error::InvalidParameter {
                name: "n_samples",
                value: n_samples as f64,
                reason: "need at least two samples",
            });
        }
        Ok(Self {
            spectral_density,
            bandwidth,
            sample_rate,
            n_samples,
        })
    }

    /// Total in-band power, the ensemble mean square of a trace.
    pub fn power(&self) -> f64 {
        self.spectral_density * self.bandwidth
    }
}

/// A sampled waveform with uniform spacing `dt` seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseTrace {
    pub samples: Vec<f64>,
    pub dt: f64,
}

impl NoiseTrace {
    pub fn new(samples: Vec<f64>, dt: f64) -> Self {
        assert!(dt > 0.0 && !samples.is_empty());
        Self { samples, dt }
    }

    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 * self.dt
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Synthesize one trace. Identical (spec, seed) pairs give bit-identical
/// traces; the per-bin Gaussian draws do not depend on the density, so
/// scaling the density by c^2 scales the trace by c.
pub fn synthesize(spec: &NoiseSpec, seed: u64) -> NoiseTrace {
    let n = spec.n_samples;
    let nf = n as f64;
    let df = spec.sample_rate / nf;
    let half = n / 2;
    let even = n % 2 == 0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bins = vec![Complex64::new(0.0, 0.0); n];

    for k in 0..=half {
        let fk = k as f64 * df;
        let real_bin = k == 0 || (even && k == half);
        // one-sided cell for this bin; DC and Nyquist own half-width cells
        let lo = if k == 0 { 0.0 } else { fk - 0.5 * df };
        let hi = if even && k == half { fk } else { fk + 0.5 * df };
        let overlap = (hi.min(spec.bandwidth) - lo).max(0.0);
        if overlap <= 0.0 {
            continue;
        }
        // cell power (bin plus its mirror) contributes S * overlap to the
        // ensemble mean square
        let target = spec.spectral_density * overlap * nf * nf;
        if real_bin {
            let g: f64 = StandardNormal.sample(&mut rng);
            bins[k] = Complex64::new(target.sqrt() * g, 0.0);
        } else {
            let g_re: f64 = StandardNormal.sample(&mut rng);
            let g_im: f64 = StandardNormal.sample(&mut rng);
            let amp = (target / 2.0).sqrt();
            bins[k] = Complex64::new(amp * g_re, amp * g_im);
            bins[n - k] = bins[k].conj();
        }
    }

    FftPlanner::new().plan_fft_inverse(n).process(&mut bins);
    let samples = bins.iter().map(|c| c.re / nf).collect();
    NoiseTrace::new(samples, 1.0 / spec.sample_rate)
}

/// Arithmetic mean of the squared samples.
pub fn mean_square(trace: &NoiseTrace) -> f64 {
    trace.samples.iter().map(|x| x * x).sum::<f64>() / trace.samples.len() as f64
}

/// One-sided averaged-periodogram PSD estimate over `n_segments`
/// non-overlapping rectangular-window segments. Returns (frequency, density)
/// pairs for 0 <= f <= sample_rate/2; the integral over frequency equals the
/// mean square of the covered samples exactly.
pub fn estimate_psd(trace: &NoiseTrace, n_segments: usize) -> Result<Vec<(f64, f64)>> {
    if n_segments == 0 {
        return Err(Error::InvalidParameter {
            name: "n_segments",
            value: 0.0,
            reason: "need at least one segment",
        });
    }
    let seg_len = trace.samples.len() / n_segments;
    if seg_len < 16 {
        return Err(Error::InsufficientData {
            detail: format!(
                "{} samples over {} segments leaves {} per segment; need at least 16",
                trace.samples.len(),
                n_segments,
                seg_len
            ),
        });
    }
    let fs = 1.0 / trace.dt;
    let df = fs / seg_len as f64;
    let half = seg_len / 2;
    let even = seg_len % 2 == 0;
    let fft = FftPlanner::new().plan_fft_forward(seg_len);
    let mut acc = vec![0.0f64; half + 1];
    let mut buf = vec![Complex64::new(0.0, 0.0); seg_len];
    for s in 0..n_segments {
        let start = s * seg_len;
        for (b, &x) in buf.iter_mut().zip(&trace.samples[start..start + seg_len]) {
            *b = Complex64::new(x, 0.0);
        }
        fft.process(&mut buf);
        for (k, a) in acc.iter_mut().enumerate() {
            // fold the mirror into one-sided density; DC and Nyquist have none
            let fold = if k == 0 || (even && k == half) { 1.0 } else { 2.0 };
            *a += fold * buf[k].norm_sqr() * trace.dt / seg_len as f64;
        }
    }
    Ok(acc
        .iter()
        .enumerate()
        .map(|(k, a)| (k as f64 * df, a / n_segments as f64))
        .collect())
}

/// Write a trace as CSV with full double precision.
pub fn write_trace_csv<W: Write>(trace: &NoiseTrace, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "t_seconds,value")?;
    for (j, x) in trace.samples.iter().enumerate() {
        writeln!(out, "{:.17e},{:.17e}", j as f64 * trace.dt, x)?;
    }
    Ok(())
}
