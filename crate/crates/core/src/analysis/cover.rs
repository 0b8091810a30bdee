use crate::error::{Error, Result};
use crate::real_fn::{Interval, PiecewiseFn};

pub const MAX_COVER_LEVEL: u32 = 20;

/// Finite family of pairwise-disjoint closed intervals, sorted left to right.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverFamily {
    intervals: Vec<Interval>,
    total_length: f64,
}

impl CoverFamily {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if let Some(w) = intervals.windows(2).find(|w| w[0].hi() > w[1].lo()) {
            return Err(Error::Precondition(format!(
                "cover intervals {} and {} overlap",
                w[0], w[1]
            )));
        }
        let total_length = intervals.iter().map(Interval::len).sum();
        Ok(CoverFamily {
            intervals,
            total_length,
        })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn total_length(&self) -> f64 {
        self.total_length
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

/// The `2^level` intervals of the `level`-th Cantor dissection stage, moved to `[2, 3]`.
pub fn singular_cover(level: u32) -> Result<CoverFamily> {
    if level > MAX_COVER_LEVEL {
        return Err(Error::Precondition(format!(
            "cover level {level} exceeds {MAX_COVER_LEVEL}"
        )));
    }
    let denominator = 3u64.pow(level) as f64;
    let intervals = (0..1u64 << level)
        .map(|mask| {
            // bit i of the mask picks ternary digit 0 or 2 at place level − i
            let numerator: u64 = (0..level)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| 2 * 3u64.pow(i))
                .sum();
            let lo = 2.0 + numerator as f64 / denominator;
            let hi = 2.0 + (numerator + 1) as f64 / denominator;
            Interval::new(lo, hi)
        })
        .collect::<Result<Vec<_>>>()?;
    CoverFamily::new(intervals)
}

/// `Σ (fun(hi) − fun(lo))` over the cover.
pub fn increment_sum(fun: &PiecewiseFn, cover: &CoverFamily) -> Result<f64> {
    cover
        .intervals()
        .iter()
        .map(|iv| Ok(fun.eval(iv.hi())? - fun.eval(iv.lo())?))
        .sum()
}
