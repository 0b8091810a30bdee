use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside the domain of the function being evaluated.
    #[error("{what}: argument {value} outside [{lo}, {hi}]")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Two independent routes to the same quantity disagreed.
    #[error("consistency check `{check}` failed: {left} vs {right} (tolerance {tolerance})")]
    Consistency {
        check: &'static str,
        left: f64,
        right: f64,
        tolerance: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Slack allowed on domain endpoints before an argument is rejected.
pub const DOMAIN_SLACK: f64 = 1e-15;

/// Checks `value ∈ [lo, hi]` up to [`DOMAIN_SLACK`] and clamps it into the interval.
pub(crate) fn check_domain(what: &'static str, value: f64, lo: f64, hi: f64) -> Result<f64> {
    if value.is_nan() || value < lo - DOMAIN_SLACK || value > hi + DOMAIN_SLACK {
        return Err(Error::Domain {
            what,
            value,
            lo,
            hi,
        });
    }
    Ok(value.clamp(lo, hi))
}
