use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::real_fn::PiecewiseFn;
use crate::sparse::SparseMinMax;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableSource {
    GridOracle,
    ClosedForm,
    ConcaveMajorant,
}

/// Sampled minimal modulus of continuity on a sorted δ-grid.
#[derive(Debug, Clone)]
pub struct ModulusTable {
    deltas: Vec<f64>,
    values: Vec<f64>,
    grid_n: usize,
    source: TableSource,
    nondecreasing: bool,
}

impl ModulusTable {
    pub fn new(
        deltas: Vec<f64>,
        values: Vec<f64>,
        grid_n: usize,
        source: TableSource,
    ) -> Result<Self> {
        if deltas.is_empty() || deltas.len() != values.len() {
            return Err(Error::Precondition(format!(
                "modulus table needs matching non-empty columns, got {} deltas and {} values",
                deltas.len(),
                values.len()
            )));
        }
        if deltas.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Precondition(
                "modulus table deltas must be strictly increasing".into(),
            ));
        }
        let nondecreasing = values.windows(2).all(|w| w[0] <= w[1]);
        Ok(ModulusTable {
            deltas,
            values,
            grid_n,
            source,
            nondecreasing,
        })
    }

    /// Tabulates `omega` on `grid_n` equally spaced δ in `[0, length]`.
    pub fn from_fn(
        length: f64,
        grid_n: usize,
        source: TableSource,
        omega: impl Fn(f64) -> f64 + Sync,
    ) -> Result<Self> {
        if grid_n < 2 {
            return Err(Error::Precondition(format!(
                "grid_n must be at least 2, got {grid_n}"
            )));
        }
        let deltas = uniform_grid(0.0, length, grid_n);
        let values = deltas.par_iter().map(|&d| omega(d)).collect();
        ModulusTable::new(deltas, values, grid_n, source)
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    pub fn grid_n(&self) -> usize {
        self.grid_n
    }

    pub fn source(&self) -> TableSource {
        self.source
    }

    /// Whether the stored values are nondecreasing in δ.
    pub fn is_nondecreasing(&self) -> bool {
        self.nondecreasing
    }

    /// Spacing of the δ-grid (for uniform tables).
    pub fn spacing(&self) -> f64 {
        match self.deltas.len() {
            0 | 1 => 0.0,
            n => (self.deltas[n - 1] - self.deltas[0]) / (n - 1) as f64,
        }
    }

    pub fn max_delta(&self) -> f64 {
        *self.deltas.last().expect("non-empty table")
    }

    /// Piecewise-linear interpolant, constant beyond the table ends.
    pub fn value_at(&self, delta: f64) -> f64 {
        let (d, v) = (&self.deltas, &self.values);
        if delta <= d[0] {
            return v[0];
        }
        if delta >= d[d.len() - 1] {
            return v[v.len() - 1];
        }
        let i = d.partition_point(|&x| x <= delta);
        let (d0, d1) = (d[i - 1], d[i]);
        let w = (delta - d0) / (d1 - d0);
        v[i - 1] + w * (v[i] - v[i - 1])
    }

    /// Largest excess of `ω(δ₁ + δ₂)` over `ω(δ₁) + ω(δ₂)` on a uniform grid,
    /// checking index pairs on a lattice of the given stride.
    pub fn max_subadditivity_violation(&self, stride: usize) -> f64 {
        let n = self.values.len();
        let stride = stride.max(1);
        (0..n)
            .into_par_iter()
            .step_by(stride)
            .map(|i| {
                (i..n - i)
                    .step_by(stride)
                    .filter(|j| i + j < n)
                    .map(|j| self.values[i + j] - self.values[i] - self.values[j])
                    .fold(0.0f64, f64::max)
            })
            .reduce(|| 0.0, f64::max)
    }
}

/// `n` points from `lo` to `hi` inclusive; both ends are exact.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n)
        .map(|j| {
            if j == n - 1 {
                hi
            } else {
                lo + (hi - lo) * (j as f64 / last)
            }
        })
        .collect()
}

/// Minimal modulus of continuity of `fun` on a uniform grid of `grid_n` points.
///
/// Every grid-aligned `δ = k · spacing` gets `max |fun(x) − fun(y)|` over grid
/// pairs with `|x − y| ≤ δ`. For monotone functions this is
/// `max_i fun(x_{i+k}) − fun(x_i)`; otherwise each window's spread is read from
/// a sparse min/max table in O(1).
pub fn modulus_grid(fun: &PiecewiseFn, grid_n: usize) -> Result<ModulusTable> {
    if grid_n < 2 {
        return Err(Error::Precondition(format!(
            "grid_n must be at least 2, got {grid_n}"
        )));
    }
    let domain = fun.domain();
    let xs = uniform_grid(domain.lo(), domain.hi(), grid_n);
    let samples: Vec<f64> = xs.par_iter().map(|&x| fun.eval_clamped(x)).collect();
    let deltas = uniform_grid(0.0, domain.len(), grid_n);
    let values = if fun.is_monotone_nondecreasing() {
        monotone_increments(&samples)
    } else {
        window_spreads(&samples)
    };
    ModulusTable::new(deltas, values, grid_n, TableSource::GridOracle)
}

fn monotone_increments(samples: &[f64]) -> Vec<f64> {
    let n = samples.len();
    (0..n)
        .into_par_iter()
        .map(|k| {
            samples[k..]
                .iter()
                .zip(samples)
                .map(|(hi, lo)| hi - lo)
                .fold(0.0f64, f64::max)
        })
        .collect()
}

fn window_spreads(samples: &[f64]) -> Vec<f64> {
    let n = samples.len();
    let table = SparseMinMax::new(samples);
    (0..n)
        .into_par_iter()
        .map(|k| {
            (0..n - k)
                .map(|i| {
                    let (mx, mn) = table.query(i, i + k);
                    mx - mn
                })
                .fold(0.0f64, f64::max)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real_fn::{build_cantor, build_identity, Interval};

    /// O(n²) pair scan straight from the definition.
    fn brute(samples: &[f64]) -> Vec<f64> {
        let n = samples.len();
        let mut out = vec![0.0; n];
        for i in 0..n {
            for j in i..n {
                let d = (samples[j] - samples[i]).abs();
                for slot in out.iter_mut().skip(j - i) {
                    if d > *slot {
                        *slot = d;
                    }
                }
            }
        }
        out
    }

    #[test]
    fn identity_modulus_is_delta() {
        let id = build_identity(Interval::new(0.0, 1.0).unwrap());
        let t = modulus_grid(&id, 101).unwrap();
        for (d, v) in t.deltas().iter().zip(t.values()) {
            assert!((d - v).abs() < 1e-15);
        }
        assert_eq!(t.values()[0], 0.0);
        assert!(t.is_nondecreasing());
        assert_eq!(t.source(), TableSource::GridOracle);
    }

    #[test]
    fn cantor_third() {
        let t = modulus_grid(&build_cantor(), 3usize.pow(7) + 1).unwrap();
        assert!((t.value_at(1.0 / 3.0) - 0.5).abs() < 1e-2);
        assert!((t.values()[729] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn both_paths_match_brute_force() {
        let saw = PiecewiseFn::piecewise_linear(&[(0.0, 0.0), (0.3, 1.0), (0.5, -0.2), (1.0, 0.4)])
            .unwrap();
        let xs = uniform_grid(0.0, 1.0, 97);
        let samples: Vec<f64> = xs.iter().map(|&x| saw.eval(x).unwrap()).collect();
        let t = modulus_grid(&saw, 97).unwrap();
        for (a, b) in t.values().iter().zip(brute(&samples)) {
            assert!((a - b).abs() < 1e-15);
        }
        let cantor = build_cantor();
        let samples: Vec<f64> = uniform_grid(0.0, 1.0, 82)
            .iter()
            .map(|&x| cantor.eval(x).unwrap())
            .collect();
        let t = modulus_grid(&cantor, 82).unwrap();
        for (a, b) in t.values().iter().zip(brute(&samples)) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn interpolation_and_errors() {
        let t = ModulusTable::new(
            vec![0.0, 1.0, 2.0],
            vec![0.0, 1.0, 1.5],
            3,
            TableSource::ClosedForm,
        )
        .unwrap();
        assert_eq!(t.value_at(0.5), 0.5);
        assert_eq!(t.value_at(1.5), 1.25);
        assert_eq!(t.value_at(5.0), 1.5);
        assert_eq!(t.spacing(), 1.0);
        assert!(
            ModulusTable::new(vec![0.0, 0.0], vec![0.0, 0.0], 2, TableSource::ClosedForm).is_err()
        );
        assert!(ModulusTable::new(vec![], vec![], 0, TableSource::ClosedForm).is_err());
        assert!(modulus_grid(&build_cantor(), 1).is_err());
    }
}
