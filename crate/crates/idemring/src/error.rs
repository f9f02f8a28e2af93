use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n must be at least 2, got {0}")]
    NTooSmall(u64),

    #[error("n = {n} exceeds the scan ceiling {ceiling}")]
    AboveScanCeiling { n: u64, ceiling: u64 },

    #[error("ext_gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("split sides must be coprime: gcd({p}, {m}) = {g}")]
    NotCoprime { p: u64, m: u64, g: u64 },

    #[error("both sides of a split must be at least 2: p = {p}, m = {m}")]
    DegenerateSplit { p: u64, m: u64 },

    #[error("mask {mask:#b} does not select a nonempty proper subset of {k} factors")]
    InvalidMask { mask: u32, k: u32 },

    #[error("family size h = {h} outside [1, {max}]")]
    FamilySizeOutOfRange { h: u32, max: u32 },

    #[error("{what} does not fit in 64 bits")]
    Overflow { what: &'static str },

    #[error("mirrored cofactor is {m1}, need at least 2")]
    MirrorDegenerate { m1: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
