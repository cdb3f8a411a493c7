use thiserror::Error;

/// Errors surfaced by the engine.
///
/// The variants are grouped by how a caller should react:
/// * `Structural` / `UnknownGenerator` / `InvalidRule` / `MissingTopValue` —
///   the input data does not describe a valid ring, tower, or bundle
///   operation.
/// * `Parameter` / `Domain` / `H0Range` — the input is well-formed but lies
///   outside the mathematical domain of the requested operation.
/// * `Capacity` — an enumeration would exceed a configured size cap.
/// * `Internal` — a cross-check inside the engine failed; this always
///   indicates a bug, never bad user input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown generator: class uses generator index {index}, ring has {count}")]
    UnknownGenerator { index: usize, count: usize },

    #[error("invalid rewrite rule: {0}")]
    InvalidRule(String),

    #[error("missing top-degree value for normal-form monomial {0}")]
    MissingTopValue(String),

    #[error("enumeration needs {needed} entries, cap is {cap}")]
    Capacity { needed: usize, cap: usize },

    #[error("structural error: {0}")]
    Structural(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("h0 rule inapplicable: {0}")]
    H0Range(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
