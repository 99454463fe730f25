//! Algorithms for simultaneous respiratory measurement of multiple people
//! with a pair of FMCW array radars.
//!
//! The crate covers the full measurement chain on synthetic data:
//!
//! * [`scene`] — seeded synthesis of slow-time radar cubes for configurable
//!   target layouts, including a line-of-sight shadowing model.
//! * [`imaging`] — static-clutter suppression and Taylor-weighted
//!   beamforming into complex image sequences.
//! * [`cluster`] — power-weighted point clouds and X-means clustering into
//!   per-target clusters with representative positions.
//! * [`fusion`] — cross-radar cluster association by respiratory-waveform
//!   correlation and rigid alignment via orthogonal Procrustes analysis.
//! * [`resp`] — per-window radar selection by spectral peakiness and
//!   respiration-rate estimation.
//!
//! Everything is deterministic given a seed and `no_std`-compatible
//! (allocation required); IO, file formats, and the CLI live in the
//! companion `respifuse` crate.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod cluster;
pub mod error;
pub mod fusion;
pub mod geom;
pub mod imaging;
pub mod resp;
pub mod rng;
pub mod scene;
pub mod spectrum;

pub(crate) mod flt;

pub use error::{CoreError, Result};
pub use geom::Vec2;

/// Complex sample type used throughout the crate.
pub type C64 = num_complex::Complex<f64>;
