use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("root-of-unity order must be at least 1")]
    ZeroOrder,
    #[error("order mismatch: Z[ζ_{left}] vs Z[ζ_{right}] (lift both to a common order first)")]
    OrderMismatch { left: usize, right: usize },
    #[error("cannot lift Z[ζ_{from}] into Z[ζ_{to}]: {to} is not a multiple of {from}")]
    NotAMultiple { from: usize, to: usize },
    #[error("coefficient vector has {got} entries, expected {expected}")]
    CoeffLength { expected: usize, got: usize },
    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group mismatch: Z_{left} vs Z_{right}")]
    GroupMismatch { left: u32, right: u32 },
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("GH(g, λ) with g = {0} gives no S-Hadamard matrix: g > 2 is required since ζ_g² = 1 for g ≤ 2")]
    GroupTooSmall(u32),
    #[error("order {0} is odd; the Kochen-Specker construction needs an even order")]
    OddOrder(usize),
    #[error("input is not a verified {0}")]
    NotVerified(&'static str),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("no imported matrix registered under `{0}`")]
    MissingImport(String),
    #[error("search for GH({g}, {lambda}) failed: {reason}")]
    SearchFailed { g: u32, lambda: u32, reason: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
