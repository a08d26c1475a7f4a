use thiserror::Error;

/// Errors raised by the algebra and the operation calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A variety descriptor the catalog does not support.
    #[error("catalog error: {0}")]
    Catalog(String),

    /// A ring element whose unit part is not invertible over the coefficients.
    #[error("inversion error: {0}")]
    Inversion(String),

    /// An operation requested outside the subring where it is implemented.
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    /// A filtration-drop statement failed on a catalog input.
    #[error("model falsification: {0}")]
    ModelFalsification(String),

    /// A filtration certificate does not reproduce its element.
    #[error("certificate error: {0}")]
    Certificate(String),

    /// Half-degree requested on a zero-cycle of odd degree.
    #[error("odd-degree: half of the degree is undefined (degree {0})")]
    OddDegree(String),
}

pub type Result<T> = std::result::Result<T, Error>;
