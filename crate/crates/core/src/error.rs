use crate::duality::MeasurementBasis;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// `max p + min p` vanishes: the monitored port never fires, so the
    /// contrast ratio is 0/0.
    #[error("visibility undefined: {0}")]
    UndefinedVisibility(String),

    /// Both detector states coincide; every orthonormal basis is optimal.
    #[error("minimum-error basis is degenerate (eigenvalue gap {gap:.3e})")]
    DegenerateBasis { gap: f64, canonical: MeasurementBasis },

    #[error("no interior extremum: {0}")]
    NoExtremum(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
