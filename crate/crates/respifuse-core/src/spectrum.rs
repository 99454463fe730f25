//! Slow-time spectral helpers: band-limited DFTs, phase unwrapping, and
//! detrending.
//!
//! Respiration lives in a narrow band (fractions of a hertz), so spectra are
//! evaluated directly at the bins of interest instead of through a full FFT.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::flt;
use crate::C64;

/// One DFT bin: index within the evaluated band plus its frequency in Hz.
#[derive(Debug, Clone, Copy)]
pub struct BandBin {
    pub k: usize,
    pub freq_hz: f64,
}

/// DFT of `samples` evaluated at bins `k` of an `n_fft`-point transform
/// whose frequency `k / (n_fft * dt)` falls inside `[f_lo, f_hi]`.
///
/// `samples` may be shorter than `n_fft`; the remainder is implicit zero
/// padding. Returns the bin list and the complex spectrum values.
pub fn dft_band(
    samples: &[C64],
    dt: f64,
    n_fft: usize,
    f_lo: f64,
    f_hi: f64,
) -> (Vec<BandBin>, Vec<C64>) {
    let df = 1.0 / (n_fft as f64 * dt);
    let k_lo = flt::ceil(f_lo / df - 1e-9) as usize;
    let k_hi_f = flt::floor(f_hi / df + 1e-9);
    let k_hi = if k_hi_f < 0.0 {
        0
    } else {
        (k_hi_f as usize).min(n_fft / 2)
    };

    let mut bins = Vec::new();
    let mut values = Vec::new();
    if k_lo > k_hi {
        return (bins, values);
    }
    for k in k_lo..=k_hi {
        let w = -TAU * k as f64 / n_fft as f64;
        let mut acc = C64::new(0.0, 0.0);
        for (n, s) in samples.iter().enumerate() {
            let (si, co) = flt::sin_cos(w * n as f64);
            acc += s * C64::new(co, si);
        }
        bins.push(BandBin {
            k,
            freq_hz: k as f64 * df,
        });
        values.push(acc);
    }
    (bins, values)
}

/// Remove the mean of a real series in place.
pub fn mean_remove(series: &mut [f64]) {
    if series.is_empty() {
        return;
    }
    let mean = series.iter().sum::<f64>() / series.len() as f64;
    for v in series.iter_mut() {
        *v -= mean;
    }
}

/// Remove the complex mean of a series in place.
pub fn mean_remove_complex(series: &mut [C64]) {
    if series.is_empty() {
        return;
    }
    let mean = series.iter().sum::<C64>() / series.len() as f64;
    for v in series.iter_mut() {
        *v -= mean;
    }
}

/// Subtract the least-squares line from a real series in place.
pub fn detrend_linear(series: &mut [f64]) {
    let n = series.len();
    if n < 2 {
        mean_remove(series);
        return;
    }
    let nf = n as f64;
    let t_mean = (nf - 1.0) / 2.0;
    let mut s_ty = 0.0;
    let mut s_y = 0.0;
    for (i, v) in series.iter().enumerate() {
        s_ty += (i as f64 - t_mean) * *v;
        s_y += *v;
    }
    // sum of (t - t_mean)^2 for t = 0..n-1
    let s_tt = nf * (nf * nf - 1.0) / 12.0;
    let slope = s_ty / s_tt;
    let intercept = s_y / nf - slope * t_mean;
    for (i, v) in series.iter_mut().enumerate() {
        *v -= intercept + slope * i as f64;
    }
}

/// Unwrap a phase series in place by removing jumps larger than pi.
pub fn unwrap_phase(phases: &mut [f64]) {
    let mut offset = 0.0;
    let mut prev_raw = match phases.first() {
        Some(&p) => p,
        None => return,
    };
    for p in phases.iter_mut().skip(1) {
        let raw = *p;
        let mut delta = raw - prev_raw;
        while delta > PI {
            delta -= TAU;
            offset -= TAU;
        }
        while delta < -PI {
            delta += TAU;
            offset += TAU;
        }
        prev_raw = raw;
        *p = raw + offset;
    }
}

/// Hann window of length `n`, peak-normalized.
pub fn hann(n: usize) -> Vec<f64> {
    if n == 1 {
        return alloc::vec![1.0];
    }
    (0..n)
        .map(|i| 0.5 * (1.0 - flt::cos(TAU * i as f64 / (n as f64 - 1.0))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tone(n: usize, dt: f64, f: f64) -> Vec<C64> {
        (0..n)
            .map(|i| {
                let ph = TAU * f * i as f64 * dt;
                C64::new(ph.cos(), ph.sin())
            })
            .collect()
    }

    #[test]
    fn dft_band_peaks_at_tone_frequency() {
        let n = 300;
        let dt = 0.1;
        // 0.25 Hz is exactly bin 7.5 of a 300-point transform; use a bin
        // center instead: k=6 -> 0.2 Hz.
        let samples = tone(n, dt, 0.2);
        let (bins, vals) = dft_band(&samples, dt, n, 0.1, 0.5);
        let (imax, _) = vals
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().partial_cmp(&b.1.norm_sqr()).unwrap())
            .unwrap();
        assert!((bins[imax].freq_hz - 0.2).abs() < 1e-12);
        // A bin-centered complex tone concentrates all in-band energy there.
        let total: f64 = vals.iter().map(|v| v.norm_sqr()).sum();
        assert!(vals[imax].norm_sqr() / total > 0.999);
    }

    #[test]
    fn unwrap_restores_linear_ramp() {
        let true_phase: Vec<f64> = (0..200).map(|i| 0.37 * i as f64).collect();
        let mut wrapped: Vec<f64> = true_phase
            .iter()
            .map(|&p| {
                let mut w = p % TAU;
                if w > PI {
                    w -= TAU;
                }
                w
            })
            .collect();
        unwrap_phase(&mut wrapped);
        for (w, t) in wrapped.iter().zip(true_phase.iter()) {
            assert!((w - t).abs() < 1e-9);
        }
    }

    #[test]
    fn detrend_kills_line() {
        let mut series: Vec<f64> = (0..100).map(|i| 3.0 + 0.2 * i as f64).collect();
        detrend_linear(&mut series);
        for v in &series {
            assert!(v.abs() < 1e-9);
        }
    }

    #[test]
    fn hann_is_symmetric_and_peaked() {
        let w = hann(64);
        for i in 0..64 {
            assert!((w[i] - w[63 - i]).abs() < 1e-12);
        }
        assert!(w.iter().cloned().fold(0.0, f64::max) <= 1.0 + 1e-12);
        assert!(w[0].abs() < 1e-12);
    }
}
