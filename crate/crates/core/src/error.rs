use thiserror::Error;

/// Errors raised by the simulators, protocols and sampling engine.
///
/// Variants split into argument errors (bad indices, sizes or parameters
/// supplied by the caller) and domain errors (a valid call that would take
/// the state outside the single-photon sector). See [`Error::is_domain`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode {mode} out of range for a {num_modes}-mode register (modes are 1-based)")]
    ModeOutOfRange { mode: usize, num_modes: usize },

    #[error("two-mode operation needs distinct modes, got {mode} twice")]
    SameMode { mode: usize },

    #[error("register size mismatch: {left} vs {right} modes")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{num_modes} modes exceeds the dense simulator cap of {cap}")]
    TooManyModes { num_modes: usize, cap: usize },

    #[error("register needs at least one mode")]
    NoModes,

    #[error("the local protocol needs an even number of modes >= 2, got {0}")]
    OddModeCount(usize),

    #[error("cascade W-state preparation needs N = 2^m, got N = {0}")]
    NotPowerOfTwo(usize),

    #[error("expected {expected} phases, got {actual}")]
    PhaseLengthMismatch { expected: usize, actual: usize },

    #[error("amplitude vector length {len} is not 2^{num_modes}")]
    AmplitudeLength { len: usize, num_modes: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("beam splitter outside single-photon sector: modes ({mode_a}, {mode_b}) both occupied with amplitude {amplitude:e}")]
    TwoPhotonBeamSplitter {
        mode_a: usize,
        mode_b: usize,
        amplitude: f64,
    },

    #[error("bit-flip would create two photons: mode {occupied} carries amplitude {amplitude:e} while flipping mode {mode}")]
    BitFlipLeavesSector {
        mode: usize,
        occupied: usize,
        amplitude: f64,
    },
}

impl Error {
    /// True for errors where the arguments were well-formed but the requested
    /// operation would leave the modelled (<= 1 photon) sector.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::TwoPhotonBeamSplitter { .. } | Error::BitFlipLeavesSector { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
