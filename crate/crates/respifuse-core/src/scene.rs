//! Synthetic multiradar scene generation.
//!
//! Produces slow-time cubes (frame x range bin x virtual element) for
//! configurable layouts of breathing targets and radar placements, in the
//! range-profile domain: each echo is a Gaussian range point-spread carrying
//! the two-way carrier phase of the element-to-chest distance. A seeded
//! line-of-sight shadowing model attenuates targets whose echo path crosses
//! another person's body disk, and full ground truth is available for
//! evaluation.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand_chacha::ChaCha8Rng;

use crate::geom::{point_segment_distance, Mat2, Vec2};
use crate::rng::{gaussian_pair, substream, Stage};
use crate::{flt, CoreError, Result, C64};

/// Default range bin size / resolution for the 3.9 GHz occupied bandwidth.
pub const DEFAULT_RANGE_RESOLUTION: f64 = 299_792_458.0 / (2.0 * 3.9e9);

/// One seated breathing person.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BreathingTarget {
    pub id: u32,
    /// Chest position in the scene frame, meters.
    pub position: Vec2,
    /// Extra range offset added to every radar-to-chest distance, meters.
    #[cfg_attr(feature = "serde", serde(default))]
    pub rest_range_offset: f64,
    /// Respiration rate, respirations per minute.
    pub rate_rpm: f64,
    /// Chest displacement amplitude, meters (typically 1-5 mm).
    pub amplitude: f64,
    /// Initial breathing phase, radians.
    #[cfg_attr(feature = "serde", serde(default))]
    pub phase0: f64,
    /// Body disk radius used by the shadowing model, meters.
    #[cfg_attr(feature = "serde", serde(default = "default_body_radius"))]
    pub body_radius: f64,
    /// Echo amplitude scale.
    #[cfg_attr(feature = "serde", serde(default = "default_reflectivity"))]
    pub reflectivity: f64,
    /// Amplitude ratio of an optional second breathing harmonic.
    #[cfg_attr(feature = "serde", serde(default))]
    pub second_harmonic: f64,
}

fn default_body_radius() -> f64 {
    0.25
}

fn default_reflectivity() -> f64 {
    1.0
}

impl BreathingTarget {
    pub fn validate(&self) -> Result<()> {
        if !(6.0..=40.0).contains(&self.rate_rpm) {
            return Err(CoreError::InvalidParam("target rate outside 6..=40 rpm"));
        }
        if self.amplitude <= 0.0 {
            return Err(CoreError::InvalidParam("target amplitude must be > 0"));
        }
        if self.body_radius <= 0.0 {
            return Err(CoreError::InvalidParam("target body radius must be > 0"));
        }
        Ok(())
    }

    /// Chest displacement at time `t` seconds.
    pub fn displacement(&self, t: f64) -> f64 {
        let w = 2.0 * PI * self.rate_rpm / 60.0;
        self.amplitude
            * (flt::sin(w * t + self.phase0)
                + self.second_harmonic * flt::sin(2.0 * (w * t) + 2.0 * self.phase0))
    }
}

/// Placement and array geometry of one radar.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RadarPlacement {
    /// Radar position in the scene frame, meters.
    pub position: Vec2,
    /// Boresight direction in the scene frame, radians.
    pub orientation: f64,
    /// Carrier wavelength, meters.
    #[cfg_attr(feature = "serde", serde(default = "default_wavelength"))]
    pub wavelength: f64,
    #[cfg_attr(feature = "serde", serde(default = "default_n_tx"))]
    pub n_tx: usize,
    #[cfg_attr(feature = "serde", serde(default = "default_n_rx"))]
    pub n_rx: usize,
    /// Transmit element spacing, meters.
    #[cfg_attr(feature = "serde", serde(default = "default_tx_spacing"))]
    pub tx_spacing: f64,
    /// Receive element spacing, meters.
    #[cfg_attr(feature = "serde", serde(default = "default_rx_spacing"))]
    pub rx_spacing: f64,
    /// Range resolution (and range bin size), meters.
    #[cfg_attr(feature = "serde", serde(default = "default_range_resolution"))]
    pub range_resolution: f64,
    /// Slow-time sampling interval, seconds.
    #[cfg_attr(feature = "serde", serde(default = "default_slow_dt"))]
    pub slow_dt: f64,
}

fn default_wavelength() -> f64 {
    3.8e-3
}
fn default_n_tx() -> usize {
    3
}
fn default_n_rx() -> usize {
    4
}
fn default_tx_spacing() -> f64 {
    7.6e-3
}
fn default_rx_spacing() -> f64 {
    1.9e-3
}
fn default_range_resolution() -> f64 {
    DEFAULT_RANGE_RESOLUTION
}
fn default_slow_dt() -> f64 {
    0.1
}

impl RadarPlacement {
    /// The 79 GHz MIMO parameterization: 3 Tx at 2 lambda, 4 Rx at lambda/2,
    /// forming a 12-element lambda/2 virtual array; 100 ms slow time.
    pub fn default_79ghz(position: Vec2, orientation: f64) -> Self {
        RadarPlacement {
            position,
            orientation,
            wavelength: default_wavelength(),
            n_tx: default_n_tx(),
            n_rx: default_n_rx(),
            tx_spacing: default_tx_spacing(),
            rx_spacing: default_rx_spacing(),
            range_resolution: default_range_resolution(),
            slow_dt: default_slow_dt(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_tx == 0 || self.n_rx == 0 {
            return Err(CoreError::InvalidParam("array needs tx and rx elements"));
        }
        if self.wavelength <= 0.0 || self.range_resolution <= 0.0 || self.slow_dt <= 0.0 {
            return Err(CoreError::InvalidParam(
                "wavelength, range resolution, and slow dt must be > 0",
            ));
        }
        Ok(())
    }

    /// Virtual array size.
    pub fn n_elements(&self) -> usize {
        self.n_tx * self.n_rx
    }

    /// Rotation taking local radar coordinates (x along the array baseline,
    /// y along boresight) into the scene frame.
    pub fn scene_from_local(&self) -> Mat2 {
        Mat2::rotation(self.orientation - PI / 2.0)
    }

    /// Map a scene-frame point into this radar's local frame.
    pub fn to_local(&self, p: Vec2) -> Vec2 {
        self.scene_from_local().transpose().apply(p - self.position)
    }

    /// Map a local-frame point into the scene frame.
    pub fn to_scene(&self, p: Vec2) -> Vec2 {
        self.position + self.scene_from_local().apply(p)
    }

    /// Zero-mean transmit element coordinates along the baseline.
    fn tx_coords(&self) -> Vec<f64> {
        centered_coords(self.n_tx, self.tx_spacing)
    }

    /// Zero-mean receive element coordinates along the baseline.
    fn rx_coords(&self) -> Vec<f64> {
        centered_coords(self.n_rx, self.rx_spacing)
    }
}

fn centered_coords(n: usize, spacing: f64) -> Vec<f64> {
    let mid = (n as f64 - 1.0) / 2.0;
    (0..n).map(|i| (i as f64 - mid) * spacing).collect()
}

/// Virtual element coordinates along the array baseline, meters.
///
/// Element `i = j * n_rx + k` is the (tx `j`, rx `k`) pair; its coordinate is
/// the sum of the pair's element coordinates, re-centered to zero mean. For
/// the default MIMO layout this yields 12 uniform lambda/2 positions.
pub fn virtual_array_positions(placement: &RadarPlacement) -> Vec<f64> {
    let tx = placement.tx_coords();
    let rx = placement.rx_coords();
    let mut out = Vec::with_capacity(tx.len() * rx.len());
    for t in &tx {
        for r in &rx {
            out.push(t + r);
        }
    }
    // tx and rx coordinates are individually zero-mean, so the sums are too;
    // re-center anyway to absorb rounding.
    let mean = out.iter().sum::<f64>() / out.len() as f64;
    for v in out.iter_mut() {
        *v -= mean;
    }
    out
}

/// True when the open line of sight from `radar` to `target` crosses the
/// body disk of any of `others`.
pub fn los_blocked(
    target: &BreathingTarget,
    radar: &RadarPlacement,
    others: &[&BreathingTarget],
) -> bool {
    others.iter().any(|other| {
        other.id != target.id
            && point_segment_distance(other.position, radar.position, target.position)
                <= other.body_radius
    })
}

/// Full synthetic scene description.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SceneConfig {
    pub targets: Vec<BreathingTarget>,
    pub radars: Vec<RadarPlacement>,
    /// Measurement time, seconds.
    #[cfg_attr(feature = "serde", serde(default = "default_duration"))]
    pub duration: f64,
    /// Per-sample circular complex noise power.
    #[cfg_attr(feature = "serde", serde(default))]
    pub noise_power: f64,
    /// Echo attenuation applied to shadowed targets, dB (negative).
    #[cfg_attr(feature = "serde", serde(default = "default_occlusion_attenuation"))]
    pub occlusion_attenuation_db: f64,
    /// Static clutter amplitude as a multiple of the strongest target echo.
    #[cfg_attr(feature = "serde", serde(default = "default_clutter_scale"))]
    pub clutter_scale: f64,
    #[cfg_attr(feature = "serde", serde(default))]
    pub rng_seed: u64,
}

fn default_duration() -> f64 {
    120.0
}
fn default_occlusion_attenuation() -> f64 {
    -40.0
}
fn default_clutter_scale() -> f64 {
    10.0
}

impl SceneConfig {
    pub fn validate(&self) -> Result<()> {
        if self.targets.is_empty() {
            return Err(CoreError::EmptyTargets);
        }
        if self.radars.is_empty() {
            return Err(CoreError::InvalidParam("scene needs at least one radar"));
        }
        if self.duration <= 0.0 {
            return Err(CoreError::InvalidParam("duration must be > 0"));
        }
        if self.noise_power < 0.0 {
            return Err(CoreError::InvalidParam("noise power must be >= 0"));
        }
        for t in &self.targets {
            t.validate()?;
        }
        for r in &self.radars {
            r.validate()?;
        }
        Ok(())
    }
}

/// Complex slow-time samples for one radar: `[frame][range bin][element]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlowTimeCube {
    pub radar_id: usize,
    pub samples: Vec<C64>,
    pub n_frames: usize,
    pub n_bins: usize,
    pub n_elements: usize,
    /// Range bin size, meters.
    pub range_bin_size: f64,
    /// Time of the first frame, seconds.
    pub t0: f64,
    /// Slow-time sampling interval, seconds.
    pub slow_dt: f64,
    /// Carrier wavelength, meters.
    pub wavelength: f64,
    /// Virtual element coordinates along the baseline, meters.
    pub element_positions: Vec<f64>,
}

impl SlowTimeCube {
    #[inline]
    pub fn index(&self, frame: usize, bin: usize, element: usize) -> usize {
        (frame * self.n_bins + bin) * self.n_elements + element
    }

    #[inline]
    pub fn at(&self, frame: usize, bin: usize, element: usize) -> C64 {
        self.samples[self.index(frame, bin, element)]
    }

    /// Maximum range covered by the cube, meters.
    pub fn max_range(&self) -> f64 {
        self.n_bins as f64 * self.range_bin_size
    }

    /// Extract the frames `[frame_lo, frame_hi)` as a new cube.
    pub fn window(&self, frame_lo: usize, frame_hi: usize) -> Result<SlowTimeCube> {
        if frame_lo >= frame_hi || frame_hi > self.n_frames {
            return Err(CoreError::WindowOutOfRange);
        }
        let stride = self.n_bins * self.n_elements;
        Ok(SlowTimeCube {
            radar_id: self.radar_id,
            samples: self.samples[frame_lo * stride..frame_hi * stride].to_vec(),
            n_frames: frame_hi - frame_lo,
            n_bins: self.n_bins,
            n_elements: self.n_elements,
            range_bin_size: self.range_bin_size,
            t0: self.t0 + frame_lo as f64 * self.slow_dt,
            slow_dt: self.slow_dt,
            wavelength: self.wavelength,
            element_positions: self.element_positions.clone(),
        })
    }
}

/// Ground truth for one target.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetTruth {
    pub id: u32,
    pub scene_position: Vec2,
    /// Position in each radar's local frame, indexed like `config.radars`.
    pub local_positions: Vec<Vec2>,
    /// Whether the line of sight from each radar is blocked.
    pub occluded: Vec<bool>,
    /// Chest displacement per slow-time frame, meters.
    pub displacement: Vec<f64>,
    pub rate_rpm: f64,
}

/// Deterministic ground-truth table for a scene.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    pub slow_dt: f64,
    pub n_frames: usize,
    pub targets: Vec<TargetTruth>,
}

impl GroundTruth {
    /// True rate of target `idx` in any window (rates are constant here).
    pub fn rate_in_window(&self, target_idx: usize, _window: usize) -> f64 {
        self.targets[target_idx].rate_rpm
    }
}

fn occlusion_table(config: &SceneConfig) -> Vec<Vec<bool>> {
    config
        .targets
        .iter()
        .map(|t| {
            let others: Vec<&BreathingTarget> =
                config.targets.iter().filter(|o| o.id != t.id).collect();
            config
                .radars
                .iter()
                .map(|r| los_blocked(t, r, &others))
                .collect()
        })
        .collect()
}

/// Ground truth as a pure function of the scene configuration.
pub fn ground_truth(config: &SceneConfig) -> Result<GroundTruth> {
    config.validate()?;
    let slow_dt = config.radars[0].slow_dt;
    let n_frames = (config.duration / slow_dt) as usize;
    let occ = occlusion_table(config);
    let targets = config
        .targets
        .iter()
        .enumerate()
        .map(|(ti, t)| TargetTruth {
            id: t.id,
            scene_position: t.position,
            local_positions: config.radars.iter().map(|r| r.to_local(t.position)).collect(),
            occluded: occ[ti].clone(),
            displacement: (0..n_frames)
                .map(|f| t.displacement(f as f64 * slow_dt))
                .collect(),
            rate_rpm: t.rate_rpm,
        })
        .collect();
    Ok(GroundTruth {
        slow_dt,
        n_frames,
        targets,
    })
}

/// Synthesize the slow-time cubes for every radar in the scene.
///
/// Per frame and virtual element, each visible target contributes
/// `reflectivity / d * psf(r - d_i(t)) * exp(-j 4 pi d_i(t) / lambda)` to the
/// range profile, where `d_i(t)` is the element-to-chest distance (mean of
/// the tx and rx one-way paths) plus the breathing displacement. Shadowed
/// targets are attenuated by the configured amount, a static clutter profile
/// is added, and circular white noise of the configured power closes it out.
pub fn synthesize(config: &SceneConfig) -> Result<Vec<SlowTimeCube>> {
    config.validate()?;
    let occ = occlusion_table(config);
    let occlusion_gain = flt::powf(10.0, config.occlusion_attenuation_db / 20.0);

    config
        .radars
        .iter()
        .enumerate()
        .map(|(m, radar)| synthesize_radar(config, m, radar, &occ, occlusion_gain))
        .collect()
}

fn synthesize_radar(
    config: &SceneConfig,
    radar_idx: usize,
    radar: &RadarPlacement,
    occlusion: &[Vec<bool>],
    occlusion_gain: f64,
) -> Result<SlowTimeCube> {
    let n_frames = (config.duration / radar.slow_dt) as usize;
    if n_frames == 0 {
        return Err(CoreError::InvalidParam("duration shorter than one frame"));
    }
    let n_el = radar.n_elements();
    let bin_size = radar.range_resolution;
    let virtual_xs = virtual_array_positions(radar);

    // Physical element positions along the baseline in the scene frame.
    let baseline = radar.scene_from_local().apply(Vec2::new(1.0, 0.0));
    let tx_pos: Vec<Vec2> = radar
        .tx_coords()
        .iter()
        .map(|&c| radar.position + baseline * c)
        .collect();
    let rx_pos: Vec<Vec2> = radar
        .rx_coords()
        .iter()
        .map(|&c| radar.position + baseline * c)
        .collect();

    // Static half-path per (target, element) and per-target echo amplitude.
    let n_targets = config.targets.len();
    let mut static_path = vec![0.0f64; n_targets * n_el];
    let mut amp = vec![0.0f64; n_targets];
    let mut max_dist = 0.0f64;
    for (ti, t) in config.targets.iter().enumerate() {
        let center_dist = radar.position.distance(t.position) + t.rest_range_offset;
        max_dist = max_dist.max(center_dist);
        let d = center_dist.max(0.1);
        amp[ti] = t.reflectivity / d;
        if occlusion[ti][radar_idx] {
            amp[ti] *= occlusion_gain;
        }
        for (j, tp) in tx_pos.iter().enumerate() {
            for (k, rp) in rx_pos.iter().enumerate() {
                let half_path =
                    0.5 * (tp.distance(t.position) + rp.distance(t.position)) + t.rest_range_offset;
                static_path[ti * n_el + j * rx_pos.len() + k] = half_path;
            }
        }
    }

    let n_bins = (flt::ceil((max_dist + 1.0) / bin_size) as usize).max(4);
    let mut samples = vec![C64::new(0.0, 0.0); n_frames * n_bins * n_el];

    // Static clutter: one complex profile over (bin, element), repeated on
    // every frame so that mean subtraction removes it exactly.
    let unoccluded_peak = config
        .targets
        .iter()
        .enumerate()
        .map(|(ti, t)| {
            let d = (radar.position.distance(t.position) + t.rest_range_offset).max(0.1);
            let _ = ti;
            t.reflectivity / d
        })
        .fold(0.0f64, f64::max);
    let clutter_amp = config.clutter_scale * unoccluded_peak;
    let mut clutter = vec![C64::new(0.0, 0.0); n_bins * n_el];
    if clutter_amp > 0.0 {
        let mut crng = substream(config.rng_seed, Stage::ClutterProfile, radar_idx as u64, 0);
        let sigma = clutter_amp / flt::sqrt(2.0);
        for c in clutter.iter_mut() {
            let (re, im) = gaussian_pair(&mut crng);
            *c = C64::new(re * sigma, im * sigma);
        }
    }

    let psf_sigma = radar.range_resolution * 0.5;
    let psf_reach = (flt::ceil(4.0 * psf_sigma / bin_size) as isize).max(1);
    let four_pi_over_lambda = 4.0 * PI / radar.wavelength;

    for frame in 0..n_frames {
        let t = frame as f64 * radar.slow_dt;
        let frame_base = frame * n_bins * n_el;

        // Clutter first: constant in slow time.
        samples[frame_base..frame_base + n_bins * n_el].copy_from_slice(&clutter);

        for (ti, target) in config.targets.iter().enumerate() {
            if amp[ti] == 0.0 {
                continue;
            }
            let disp = target.displacement(t);
            for el in 0..n_el {
                let d = static_path[ti * n_el + el] + disp;
                let phase = -four_pi_over_lambda * d;
                let (s, c) = flt::sin_cos(phase);
                let carrier = C64::new(c, s) * amp[ti];
                let center_bin = d / bin_size;
                let lo = ((center_bin as isize) - psf_reach).max(0) as usize;
                let hi = (((center_bin as isize) + psf_reach + 1) as usize).min(n_bins);
                for bin in lo..hi {
                    let r = (bin as f64 + 0.5) * bin_size;
                    let dr = (r - d) / psf_sigma;
                    let psf = flt::exp(-0.5 * dr * dr);
                    samples[frame_base + bin * n_el + el] += carrier * psf;
                }
            }
        }
    }

    if config.noise_power > 0.0 {
        let mut nrng = substream(config.rng_seed, Stage::ReceiverNoise, radar_idx as u64, 0);
        let sigma = flt::sqrt(config.noise_power / 2.0);
        for s in samples.iter_mut() {
            let (re, im) = gaussian_pair(&mut nrng);
            *s += C64::new(re * sigma, im * sigma);
        }
    }

    Ok(SlowTimeCube {
        radar_id: radar_idx,
        samples,
        n_frames,
        n_bins,
        n_elements: n_el,
        range_bin_size: bin_size,
        t0: 0.0,
        slow_dt: radar.slow_dt,
        wavelength: radar.wavelength,
        element_positions: virtual_xs,
    })
}

#[allow(unused)]
fn gaussian_noise(rng: &mut ChaCha8Rng, sigma: f64) -> C64 {
    let (re, im) = gaussian_pair(rng);
    C64::new(re * sigma, im * sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_target_scene(rate_rpm: f64, amplitude: f64, noise: f64) -> SceneConfig {
        SceneConfig {
            targets: vec![BreathingTarget {
                id: 1,
                position: Vec2::new(0.0, 2.0),
                rest_range_offset: 0.0,
                rate_rpm,
                amplitude,
                phase0: 0.4,
                body_radius: 0.25,
                reflectivity: 1.0,
                second_harmonic: 0.0,
            }],
            radars: vec![RadarPlacement::default_79ghz(Vec2::ZERO, PI / 2.0)],
            duration: 30.0,
            noise_power: noise,
            occlusion_attenuation_db: -40.0,
            clutter_scale: 0.0,
            rng_seed: 11,
        }
    }

    #[test]
    fn default_virtual_array_is_uniform_half_lambda() {
        let p = RadarPlacement::default_79ghz(Vec2::ZERO, PI / 2.0);
        let xs = virtual_array_positions(&p);
        assert_eq!(xs.len(), 12);
        let half_lambda = p.wavelength / 2.0;
        for w in xs.windows(2) {
            assert!((w[1] - w[0] - half_lambda).abs() < 1e-12);
        }
        let mean: f64 = xs.iter().sum::<f64>() / xs.len() as f64;
        assert!(mean.abs() < 1e-12);
    }

    #[test]
    fn single_pair_virtual_array_is_origin() {
        let mut p = RadarPlacement::default_79ghz(Vec2::ZERO, 0.0);
        p.n_tx = 1;
        p.n_rx = 1;
        let xs = virtual_array_positions(&p);
        assert_eq!(xs.len(), 1);
        assert!(xs[0].abs() < 1e-15);
    }

    #[test]
    fn two_by_two_virtual_array_matches_hand_enumeration() {
        // 2 tx at lambda, 2 rx at lambda/2: sums {0, l/2, l, 3l/2} re-centered.
        let lambda = 3.8e-3;
        let mut p = RadarPlacement::default_79ghz(Vec2::ZERO, 0.0);
        p.n_tx = 2;
        p.n_rx = 2;
        p.tx_spacing = lambda;
        p.rx_spacing = lambda / 2.0;
        let xs = virtual_array_positions(&p);
        let expected = [-0.75 * lambda, -0.25 * lambda, 0.25 * lambda, 0.75 * lambda];
        assert_eq!(xs.len(), 4);
        for (x, e) in xs.iter().zip(expected.iter()) {
            assert!((x - e).abs() < 1e-12, "{x} vs {e}");
        }
    }

    fn make_target(id: u32, x: f64, y: f64) -> BreathingTarget {
        BreathingTarget {
            id,
            position: Vec2::new(x, y),
            rest_range_offset: 0.0,
            rate_rpm: 15.0,
            amplitude: 0.003,
            phase0: 0.0,
            body_radius: 0.25,
            reflectivity: 1.0,
            second_harmonic: 0.0,
        }
    }

    #[test]
    fn los_blocked_midpoint_and_offset() {
        let radar = RadarPlacement::default_79ghz(Vec2::ZERO, PI / 2.0);
        let target = make_target(1, 0.0, 4.0);
        let mid = make_target(2, 0.0, 2.0);
        let off = make_target(3, 1.0, 2.0);
        assert!(los_blocked(&target, &radar, &[&mid]));
        assert!(!los_blocked(&target, &radar, &[&off]));
    }

    #[test]
    fn los_blocked_boundary_cases() {
        let radar = RadarPlacement::default_79ghz(Vec2::ZERO, PI / 2.0);
        let target = make_target(1, 0.0, 4.0);
        let near = make_target(2, 0.249, 2.0);
        let far = make_target(3, 0.251, 2.0);
        assert!(los_blocked(&target, &radar, &[&near]));
        assert!(!los_blocked(&target, &radar, &[&far]));
    }

    #[test]
    fn los_blocked_matches_independent_oracle_on_random_triples() {
        // Independent oracle: sample the segment densely and compare point
        // distances against the disk radius.
        let mut rng = substream(5, Stage::PointCloud, 9, 9);
        let radar_base = RadarPlacement::default_79ghz(Vec2::ZERO, PI / 2.0);
        for _ in 0..1000 {
            let mut draw = || 6.0 * unit_f64_for_test(&mut rng) - 3.0;
            let mut radar = radar_base.clone();
            radar.position = Vec2::new(draw(), draw());
            let target = make_target(1, draw(), draw());
            let blocker = make_target(2, draw(), draw());

            let fast = los_blocked(&target, &radar, &[&blocker]);
            let mut slow = false;
            let steps = 4000;
            for i in 0..=steps {
                let s = i as f64 / steps as f64;
                let p = radar.position + (target.position - radar.position) * s;
                if p.distance(blocker.position) <= blocker.body_radius {
                    slow = true;
                    break;
                }
            }
            // The dense sampling can only miss by a hair at tangency; allow
            // disagreement only within a tolerance ring around the radius.
            if fast != slow {
                let d = point_segment_distance(
                    blocker.position,
                    radar.position,
                    target.position,
                );
                assert!(
                    (d - blocker.body_radius).abs() < 1e-3,
                    "oracle disagreement away from the boundary: d={d}"
                );
            }
        }
    }

    fn unit_f64_for_test(rng: &mut ChaCha8Rng) -> f64 {
        crate::rng::unit_f64(rng)
    }

    #[test]
    fn static_target_yields_time_invariant_cube() {
        let mut cfg = one_target_scene(15.0, 1e-12, 0.0);
        // Effectively zero amplitude (validation requires > 0).
        cfg.duration = 2.0;
        let cube = &synthesize(&cfg).unwrap()[0];
        let stride = cube.n_bins * cube.n_elements;
        for f in 1..cube.n_frames {
            for i in 0..stride {
                let a = cube.samples[i];
                let b = cube.samples[f * stride + i];
                assert!((a - b).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn breathing_phase_oscillates_at_target_rate() {
        let cfg = one_target_scene(15.0, 0.002, 0.0);
        let cube = &synthesize(&cfg).unwrap()[0];
        // Phase series at the target's range bin, averaged over elements.
        let target_bin = (2.0 / cube.range_bin_size) as usize;
        let mut phases: Vec<f64> = (0..cube.n_frames)
            .map(|f| {
                let mut acc = C64::new(0.0, 0.0);
                for e in 0..cube.n_elements {
                    acc += cube.at(f, target_bin, e);
                }
                flt::atan2(acc.im, acc.re)
            })
            .collect();
        crate::spectrum::unwrap_phase(&mut phases);
        crate::spectrum::mean_remove(&mut phases);
        let series: Vec<C64> = phases.iter().map(|&p| C64::new(p, 0.0)).collect();
        let (bins, vals) =
            crate::spectrum::dft_band(&series, cube.slow_dt, cube.n_frames, 0.05, 0.7);
        let (imax, _) = vals
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().partial_cmp(&b.1.norm_sqr()).unwrap())
            .unwrap();
        // 15 rpm = 0.25 Hz; allow one DFT bin (1/30 s window = 0.033 Hz).
        assert!(
            (bins[imax].freq_hz - 0.25).abs() <= 1.0 / (cube.n_frames as f64 * cube.slow_dt) + 1e-9,
            "peak at {} Hz",
            bins[imax].freq_hz
        );
    }

    #[test]
    fn synthesis_is_deterministic() {
        let mut cfg = one_target_scene(15.0, 0.002, 1e-4);
        cfg.clutter_scale = 10.0;
        cfg.duration = 3.0;
        let a = synthesize(&cfg).unwrap();
        let b = synthesize(&cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn occlusion_attenuation_is_monotone() {
        // Target 2 hides behind target 1; stronger attenuation must never
        // increase the occluded echo power at its range bin.
        let mut powers = Vec::new();
        for att in [-20.0, -40.0, -60.0] {
            let mut cfg = one_target_scene(15.0, 0.002, 0.0);
            cfg.targets.push(make_target(2, 0.0, 4.0));
            cfg.targets[1].rate_rpm = 12.0;
            cfg.occlusion_attenuation_db = att;
            cfg.duration = 2.0;
            let cube = &synthesize(&cfg).unwrap()[0];
            let bin = (4.0 / cube.range_bin_size) as usize;
            let p: f64 = (0..cube.n_frames)
                .map(|f| {
                    (0..cube.n_elements)
                        .map(|e| cube.at(f, bin, e).norm_sqr())
                        .sum::<f64>()
                })
                .sum();
            powers.push(p);
        }
        assert!(powers[0] >= powers[1] && powers[1] >= powers[2], "{powers:?}");
    }

    #[test]
    fn rejects_empty_target_list() {
        let mut cfg = one_target_scene(15.0, 0.002, 0.0);
        cfg.targets.clear();
        assert_eq!(synthesize(&cfg).unwrap_err(), CoreError::EmptyTargets);
    }

    #[test]
    fn ground_truth_matches_closed_forms() {
        let mut cfg = one_target_scene(15.0, 0.002, 0.0);
        cfg.targets[0].phase0 = 0.9;
        let gt = ground_truth(&cfg).unwrap();
        let t = &gt.targets[0];
        assert!((t.displacement[0] - 0.002 * 0.9f64.sin()).abs() < 1e-15);
        assert_eq!(t.rate_rpm, 15.0);
        for w in 0..4 {
            assert_eq!(gt.rate_in_window(0, w), 15.0);
        }
        // Radar at origin looking +y: local frame coincides with scene frame.
        assert!((t.local_positions[0].x - 0.0).abs() < 1e-12);
        assert!((t.local_positions[0].y - 2.0).abs() < 1e-12);

        let gt2 = ground_truth(&cfg).unwrap();
        assert_eq!(gt, gt2);
    }

    #[test]
    fn local_frame_round_trip() {
        let radar = RadarPlacement::default_79ghz(Vec2::new(-2.0, 1.0), 0.6);
        let p = Vec2::new(0.7, 2.9);
        let back = radar.to_scene(radar.to_local(p));
        assert!((back.x - p.x).abs() < 1e-12);
        assert!((back.y - p.y).abs() < 1e-12);
    }
}
