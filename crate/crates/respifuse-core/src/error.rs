use core::fmt;

/// Errors produced by the measurement-chain algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreError {
    /// A configuration or argument failed validation.
    InvalidParam(&'static str),
    /// Scene synthesis was asked to run without any targets.
    EmptyTargets,
    /// Clutter suppression needs at least two slow-time frames.
    SingleFrame,
    /// The requested time window falls outside the recorded data.
    WindowOutOfRange,
    /// A queried position lies outside the image grid.
    PositionOutsideGrid,
    /// Point-cloud sampling was given an image with no energy.
    AllZeroImage,
    /// Cross-radar alignment needs at least two clusters on each radar.
    TooFewClusters,
    /// Procrustes analysis needs at least two point correspondences.
    TooFewCorrespondences,
    /// The correspondences carry no rotational information (all points of a
    /// set coincide).
    RotationUnobservable,
    /// Two series that must have equal length do not.
    LengthMismatch,
    /// A slow-time series is too short for spectral analysis.
    SeriesTooShort,
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::InvalidParam(what) => write!(f, "invalid parameter: {what}"),
            CoreError::EmptyTargets => write!(f, "scene has no targets"),
            CoreError::SingleFrame => {
                write!(f, "clutter suppression needs at least two frames")
            }
            CoreError::WindowOutOfRange => write!(f, "time window outside recorded data"),
            CoreError::PositionOutsideGrid => write!(f, "position outside image grid"),
            CoreError::AllZeroImage => write!(f, "image has no energy to sample"),
            CoreError::TooFewClusters => {
                write!(f, "alignment needs at least two clusters per radar")
            }
            CoreError::TooFewCorrespondences => {
                write!(f, "Procrustes analysis needs at least two point pairs")
            }
            CoreError::RotationUnobservable => {
                write!(f, "rotation unobservable: coincident correspondence points")
            }
            CoreError::LengthMismatch => write!(f, "series lengths differ"),
            CoreError::SeriesTooShort => write!(f, "series too short for spectral analysis"),
        }
    }
}

#[cfg(any(test, feature = "std"))]
impl std::error::Error for CoreError {}

pub type Result<T> = core::result::Result<T, CoreError>;
