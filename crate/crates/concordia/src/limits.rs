//! Resource caps for the recursive word-problem machinery.
//!
//! Exceeding a cap is reported as a distinct error, never a silent wrong
//! answer.

/// Caps on derived-series depth and group-ring term counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Deepest finite quotient level `k` that may be requested.
    pub max_depth: u32,
    /// Largest number of terms a group-ring element may hold.
    pub max_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_depth: 4,
            max_terms: 100_000,
        }
    }
}

impl Limits {
    /// Defaults overridden by `CONCORDIA_MAX_DEPTH` / `CONCORDIA_MAX_TERMS`.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Ok(v) = std::env::var("CONCORDIA_MAX_DEPTH") {
            if let Ok(n) = v.trim().parse() {
                limits.max_depth = n;
            }
        }
        if let Ok(v) = std::env::var("CONCORDIA_MAX_TERMS") {
            if let Ok(n) = v.trim().parse() {
                limits.max_terms = n;
            }
        }
        limits
    }
}
