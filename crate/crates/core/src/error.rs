use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// Both the imaginary frequency and the transverse wavevector vanish.
    #[error("reflection coefficients are undefined at xi = k_parallel = 0")]
    DegenerateInput,

    /// Adaptive quadrature stopped before reaching the requested tolerance.
    #[error(
        "quadrature did not converge: requested rel. tol {requested:e}, achieved {achieved:e}"
    )]
    Quadrature { requested: f64, achieved: f64 },

    /// A denominator of a closed-form expression (or the moment matrix) vanishes.
    #[error("singular parameters: {0}")]
    Singular(String),

    /// Invalid input record (configuration, sheet, drive parameters).
    #[error("invalid {what}: {msg}")]
    Invalid { what: &'static str, msg: String },

    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain {
        op,
        msg: msg.into(),
    }
}

pub(crate) fn invalid(what: &'static str, msg: impl Into<String>) -> Error {
    Error::Invalid {
        what,
        msg: msg.into(),
    }
}
