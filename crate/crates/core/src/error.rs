use thiserror::Error;

/// Errors raised by the symbolic and numeric layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("pole: denominator {denominator} vanishes at ({x}, {y})")]
    Pole {
        denominator: String,
        x: String,
        y: String,
    },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("geodesic hit a pole of the connection at step {step} (t = {t})")]
    GeodesicPole { step: usize, t: f64 },

    #[error("singular Jacobian for map `{tag}` at ({x}, {y})")]
    SingularJacobian { tag: String, x: f64, y: f64 },

    #[error("jet lies outside the solved Killing subspace")]
    OutsideSolvedSpace,

    #[error("Killing basis is not closed under the bracket")]
    NotBracketClosed,

    #[error("inadmissible family parameters: torsion and curvature both vanish")]
    Inadmissible,

    #[error("rescaling factor must be nonzero")]
    ZeroRescale,

    #[error("group elements belong to different regimes")]
    RegimeMismatch,

    #[error("point {0} leaves the affine chart")]
    ChartEscape(String),

    #[error("point {0} is outside the model space")]
    OutsideModel(String),

    #[error("no invariant submersion is known for {0}")]
    UnsupportedPair(String),

    #[error("certificate failed: {0}")]
    CertificateFailed(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
