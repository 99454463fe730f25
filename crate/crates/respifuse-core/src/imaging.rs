//! Radar imaging: static-clutter suppression and Taylor-weighted
//! beamforming of slow-time cubes onto a Cartesian pixel grid.
//!
//! The image is formed in the radar's local frame (x along the array
//! baseline, y along boresight); each pixel is steered in angle with weights
//! `alpha_i * exp(-j (2 pi x_i / lambda) sin phi)` and sampled in range by
//! linear interpolation between adjacent bins.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::geom::Vec2;
use crate::scene::SlowTimeCube;
use crate::{flt, CoreError, Result, C64};

/// Cartesian pixel grid in the radar's local frame.
///
/// All pixel centers must lie strictly forward of the array (`y > 0`), which
/// keeps their polar angles inside (-pi/2, pi/2).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ImageGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub pixel_size: f64,
}

impl ImageGrid {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, pixel_size: f64) -> Result<Self> {
        let grid = ImageGrid {
            x_min,
            x_max,
            y_min,
            y_max,
            pixel_size,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.pixel_size <= 0.0 {
            return Err(CoreError::InvalidParam("pixel size must be > 0"));
        }
        if self.x_max <= self.x_min || self.y_max <= self.y_min {
            return Err(CoreError::InvalidParam("grid extents are empty"));
        }
        if self.y_min <= 0.0 {
            return Err(CoreError::InvalidParam(
                "grid must lie forward of the array (y_min > 0)",
            ));
        }
        Ok(())
    }

    pub fn nx(&self) -> usize {
        (flt::round((self.x_max - self.x_min) / self.pixel_size) as usize).max(1)
    }

    pub fn ny(&self) -> usize {
        (flt::round((self.y_max - self.y_min) / self.pixel_size) as usize).max(1)
    }

    pub fn n_pixels(&self) -> usize {
        self.nx() * self.ny()
    }

    /// Center of pixel `(ix, iy)`.
    pub fn pixel_center(&self, ix: usize, iy: usize) -> Vec2 {
        Vec2::new(
            self.x_min + (ix as f64 + 0.5) * self.pixel_size,
            self.y_min + (iy as f64 + 0.5) * self.pixel_size,
        )
    }

    /// Pixel containing point `p`, if inside the grid.
    pub fn pixel_containing(&self, p: Vec2) -> Option<(usize, usize)> {
        let fx = (p.x - self.x_min) / self.pixel_size;
        let fy = (p.y - self.y_min) / self.pixel_size;
        if fx < 0.0 || fy < 0.0 {
            return None;
        }
        let ix = fx as usize;
        let iy = fy as usize;
        if ix >= self.nx() || iy >= self.ny() {
            return None;
        }
        Some((ix, iy))
    }

    #[inline]
    pub fn pixel_index(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx() + ix
    }
}

/// Complex beamformed image sequence for one radar.
#[derive(Debug, Clone, PartialEq)]
pub struct RadarImage {
    pub radar_id: usize,
    pub grid: ImageGrid,
    /// Frames in `[frame][pixel]` order with pixel index `iy * nx + ix`.
    pub frames: Vec<C64>,
    pub n_frames: usize,
    pub slow_dt: f64,
    pub t0: f64,
}

impl RadarImage {
    #[inline]
    pub fn at(&self, frame: usize, pixel: usize) -> C64 {
        self.frames[frame * self.grid.n_pixels() + pixel]
    }

    pub fn duration(&self) -> f64 {
        self.n_frames as f64 * self.slow_dt
    }

    /// Complex slow-time series at one pixel.
    pub fn pixel_series(&self, pixel: usize) -> Vec<C64> {
        let np = self.grid.n_pixels();
        (0..self.n_frames).map(|f| self.frames[f * np + pixel]).collect()
    }

    /// Mean `|I|^2` per pixel over the frame range `[frame_lo, frame_hi)`.
    pub fn mean_power(&self, frame_lo: usize, frame_hi: usize) -> Result<Vec<f64>> {
        if frame_lo >= frame_hi || frame_hi > self.n_frames {
            return Err(CoreError::WindowOutOfRange);
        }
        let np = self.grid.n_pixels();
        let mut acc = vec![0.0f64; np];
        for f in frame_lo..frame_hi {
            let base = f * np;
            for (p, a) in acc.iter_mut().enumerate() {
                *a += self.frames[base + p].norm_sqr();
            }
        }
        let inv = 1.0 / (frame_hi - frame_lo) as f64;
        for a in acc.iter_mut() {
            *a *= inv;
        }
        Ok(acc)
    }
}

/// Subtract the slow-time mean per (range bin, element).
///
/// Removes static clutter exactly; the output has zero slow-time mean per
/// cell up to rounding.
pub fn suppress_clutter(cube: &SlowTimeCube) -> Result<SlowTimeCube> {
    if cube.n_frames < 2 {
        return Err(CoreError::SingleFrame);
    }
    let stride = cube.n_bins * cube.n_elements;
    let mut means = vec![C64::new(0.0, 0.0); stride];
    for f in 0..cube.n_frames {
        let base = f * stride;
        for (i, m) in means.iter_mut().enumerate() {
            *m += cube.samples[base + i];
        }
    }
    let inv = 1.0 / cube.n_frames as f64;
    for m in means.iter_mut() {
        *m *= inv;
    }
    let mut out = cube.clone();
    for f in 0..cube.n_frames {
        let base = f * stride;
        for (i, m) in means.iter().enumerate() {
            out.samples[base + i] -= m;
        }
    }
    Ok(out)
}

/// Taylor taper of length `k` with the given sidelobe level (dB, sign
/// ignored) and `nbar` nearly-constant sidelobes, peak-normalized.
pub fn taylor_window(k: usize, sidelobe_db: f64, nbar: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(CoreError::InvalidParam("window length must be >= 1"));
    }
    if nbar < 1 {
        return Err(CoreError::InvalidParam("taylor nbar must be >= 1"));
    }
    if k == 1 {
        return Ok(vec![1.0]);
    }

    let sll = flt::abs(sidelobe_db);
    let a = flt::acosh(flt::powf(10.0, sll / 20.0)) / PI;
    let sigma_sqr = (nbar * nbar) as f64 / (a * a + (nbar as f64 - 0.5) * (nbar as f64 - 0.5));

    let mut coeffs = vec![0.0f64; nbar];
    for m in 1..nbar {
        let mf = m as f64;
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        let mut num = 1.0;
        for n in 1..nbar {
            let nf = n as f64;
            num *= 1.0 - mf * mf / (sigma_sqr * (a * a + (nf - 0.5) * (nf - 0.5)));
        }
        let mut den = 1.0;
        for n in 1..nbar {
            if n == m {
                continue;
            }
            let nf = n as f64;
            den *= 1.0 - mf * mf / (nf * nf);
        }
        coeffs[m] = sign * num / (2.0 * den);
    }

    let kf = k as f64;
    let mid = (kf - 1.0) / 2.0;
    let mut w: Vec<f64> = (0..k)
        .map(|i| {
            let mut v = 1.0;
            for (m, &f) in coeffs.iter().enumerate().skip(1) {
                v += 2.0 * f * flt::cos(2.0 * PI * m as f64 * (i as f64 - mid) / kf);
            }
            v
        })
        .collect();
    let peak = w.iter().cloned().fold(f64::MIN, f64::max);
    for v in w.iter_mut() {
        *v /= peak;
    }
    Ok(w)
}

/// Beamform a slow-time cube onto `grid` with the given taper.
///
/// `I(t, pixel) = sum_i alpha_i exp(-j (2 pi x_i / lambda) sin phi) s_i(t, rho)`
/// with `s_i` linearly interpolated in range. Pixels whose range falls
/// outside the cube extent are zero.
pub fn beamform(cube: &SlowTimeCube, grid: &ImageGrid, window: &[f64]) -> Result<RadarImage> {
    grid.validate()?;
    if window.len() != cube.n_elements {
        return Err(CoreError::LengthMismatch);
    }
    let nx = grid.nx();
    let ny = grid.ny();
    let np = nx * ny;
    let n_el = cube.n_elements;

    // Per-pixel range interpolation and steering weights.
    struct PixelPlan {
        bin_lo: usize,
        frac: f64,
        weights_start: usize,
    }
    let mut plans: Vec<Option<PixelPlan>> = Vec::with_capacity(np);
    let mut weights: Vec<C64> = Vec::new();
    let two_pi_over_lambda = 2.0 * PI / cube.wavelength;
    for iy in 0..ny {
        for ix in 0..nx {
            let p = grid.pixel_center(ix, iy);
            let rho = p.norm();
            let rb = rho / cube.range_bin_size - 0.5;
            if rb < 0.0 || rb + 1.0 >= cube.n_bins as f64 {
                plans.push(None);
                continue;
            }
            let bin_lo = rb as usize;
            let frac = rb - bin_lo as f64;
            let sin_phi = p.x / rho;
            let start = weights.len();
            for (el, &alpha) in window.iter().enumerate().take(n_el) {
                let ph = -two_pi_over_lambda * cube.element_positions[el] * sin_phi;
                let (s, c) = flt::sin_cos(ph);
                weights.push(C64::new(c * alpha, s * alpha));
            }
            plans.push(Some(PixelPlan {
                bin_lo,
                frac,
                weights_start: start,
            }));
        }
    }

    let mut frames = vec![C64::new(0.0, 0.0); cube.n_frames * np];
    let cube_stride = cube.n_bins * n_el;
    for f in 0..cube.n_frames {
        let cube_base = f * cube_stride;
        let img_base = f * np;
        for (pix, plan) in plans.iter().enumerate() {
            let Some(plan) = plan else { continue };
            let lo = cube_base + plan.bin_lo * n_el;
            let hi = lo + n_el;
            let w0 = 1.0 - plan.frac;
            let w1 = plan.frac;
            let mut acc = C64::new(0.0, 0.0);
            for el in 0..n_el {
                let s = cube.samples[lo + el] * w0 + cube.samples[hi + el] * w1;
                acc += weights[plan.weights_start + el] * s;
            }
            frames[img_base + pix] = acc;
        }
    }

    Ok(RadarImage {
        radar_id: cube.radar_id,
        grid: grid.clone(),
        frames,
        n_frames: cube.n_frames,
        slow_dt: cube.slow_dt,
        t0: cube.t0,
    })
}
