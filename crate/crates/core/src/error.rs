use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the exact core.
///
/// Index fields are 0-based; the rendered messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("entry ({}, {}) = {value} lies outside {allowed}", .row + 1, .col + 1)]
    Range {
        row: usize,
        col: usize,
        value: String,
        allowed: &'static str,
    },

    #[error("p[{}][{}] + p[{}][{}] = {sum}, expected 1", .i + 1, .j + 1, .j + 1, .i + 1)]
    Complement { i: usize, j: usize, sum: String },

    #[error("diagonal entry ({}, {}) = {value}, expected 1", .index + 1, .index + 1)]
    Diagonal { index: usize, value: String },

    #[error("matrix is not skew-symmetric at ({}, {})", .i + 1, .k + 1)]
    NotSkew { i: usize, k: usize },

    #[error("point is not on the simplex: {0}")]
    Simplex(String),

    #[error("index {} is out of range for dimension {dim}", .index + 1)]
    Index { index: usize, dim: usize },

    #[error("{what}: {requested} exceeds the cap of {cap}")]
    Capacity {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("tournament undefined: zero skew entries at {}", fmt_pairs(.pairs))]
    ZeroEntry { pairs: Vec<(usize, usize)> },

    #[error("dimension {found} not supported here (expected {expected})")]
    Dimension {
        expected: &'static str,
        found: usize,
    },

    #[error("coordinate {} became non-finite at step {step}", .coord + 1)]
    NonFinite { step: usize, coord: usize },

    #[error("cannot parse rational: {0}")]
    Parse(String),
}

fn fmt_pairs(pairs: &[(usize, usize)]) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    for (n, (i, k)) in pairs.iter().enumerate() {
        if n > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "({}, {})", i + 1, k + 1);
    }
    out
}
