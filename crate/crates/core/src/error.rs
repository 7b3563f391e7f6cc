use alloc::string::String;

/// Errors raised by constructions, verifiers and searches.
///
/// Invariant failures of a decomposition are not errors; they are reported as
/// [`Violation`](crate::Violation)s inside a
/// [`VerificationReport`](crate::VerificationReport).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Structurally malformed input (vertex out of range, self-loop, edge
    /// missing from the host graph, ...).
    #[error("malformed input: {0}")]
    MalformedInput(String),
    /// Parameters outside a construction's or operation's domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// A requested object exceeds the configured size budget.
    #[error("resource limit: {what} needs {needed}, budget is {budget}")]
    Resource {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    /// The operation needs a verified decomposition (or similar) and did
    /// not get one.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// `2r > n`: no matching of size `r` fits on `n` vertices.
    #[error("impossible parameters: a matching of size {r} needs {needed} vertices, only {n} available", needed = 2 * r)]
    ImpossibleParameters { n: u64, r: u64 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
