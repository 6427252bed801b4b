use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("matrix is not special unitary (unitarity deviation {unitarity:e}, |det - 1| = {det:e})")]
    NotSpecialUnitary { unitarity: f64, det: f64 },

    #[error("trace is {0} (expected 1)")]
    InvalidTrace(f64),

    #[error("not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("non-finite matrix entry")]
    NonFinite,

    #[error("not of X form (max off-pattern magnitude {0:e})")]
    NotXForm(f64),

    #[error("invalid X-form parameters: {0}")]
    InvalidXForm(String),

    #[error("state is not exchange-symmetric (deviation {0:e})")]
    NotSymmetricState(f64),

    #[error("invariant I4 is zero; fall back to (I1, I2) or PPT")]
    I4Zero,

    #[error("invariants (I1 = {i1}, I2 = {i2}) admit no real unit-trace spectrum")]
    NoRealSpectrum { i1: f64, i2: f64 },

    #[error("equivalence hypotheses fail: (a-d)^2 = {ad_sq:e}, c + |b| = {c_plus_b:e}")]
    DegenerateHypothesis { ad_sq: f64, c_plus_b: f64 },

    #[error("invalid Dicke state: N = {n}, M = {m}")]
    InvalidDicke { n: usize, m: f64 },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("brute-force oracle limited to N <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },

    #[error("invalid separable ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("invariant criteria {fired:?} fired but PPT minimum eigenvalue is {ppt_min:e}")]
    InconsistentVerdict { fired: Vec<String>, ppt_min: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
