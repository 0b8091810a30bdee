//! Sparse tables for O(1) range-maximum and range-minimum queries.

/// Stores the maximum and minimum of every window `[i, i + 2^k)`.
///
/// Construction is O(n log n); a query on `[i, j]` covers the range with two
/// overlapping power-of-two windows.
pub struct SparseMinMax {
    max: Vec<Vec<f64>>,
    min: Vec<Vec<f64>>,
}

impl SparseMinMax {
    pub fn new(values: &[f64]) -> Self {
        let n = values.len();
        let mut max = vec![values.to_vec()];
        let mut min = vec![values.to_vec()];
        let mut width = 1;
        while 2 * width <= n {
            let (prev_max, prev_min) = (max.last().unwrap(), min.last().unwrap());
            let count = n - 2 * width + 1;
            let next_max = (0..count)
                .map(|i| prev_max[i].max(prev_max[i + width]))
                .collect();
            let next_min = (0..count)
                .map(|i| prev_min[i].min(prev_min[i + width]))
                .collect();
            max.push(next_max);
            min.push(next_min);
            width *= 2;
        }
        SparseMinMax { max, min }
    }

    /// `(max, min)` over the inclusive index range `[lo, hi]`.
    #[inline]
    pub fn query(&self, lo: usize, hi: usize) -> (f64, f64) {
        debug_assert!(lo <= hi);
        let level = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        let right = hi + 1 - (1 << level);
        let (mx, mn) = (&self.max[level], &self.min[level]);
        (mx[lo].max(mx[right]), mn[lo].min(mn[right]))
    }
}
