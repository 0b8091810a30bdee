use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::VerificationReport;
use crate::error::{Error, Result};
use crate::modulus::{modulus_grid, uniform_grid};
use crate::real_fn::PiecewiseFn;

/// Grid Lipschitz constants of a function and of its grid modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LipschitzConstants {
    /// Largest slope among the pieces.
    pub exact: f64,
    /// Largest grid difference quotient of the function.
    pub function: f64,
    /// Largest grid difference quotient of its modulus of continuity.
    pub modulus: f64,
}

impl LipschitzConstants {
    /// Underestimate of the grid quotients, floored at a relative `1e-9`.
    pub fn grid_error(&self) -> f64 {
        (self.exact - self.function)
            .abs()
            .max(1e-9 * self.exact.max(1.0))
    }
}

pub fn lipschitz_constants(fun: &PiecewiseFn, grid_n: usize) -> Result<LipschitzConstants> {
    let exact = fun.lipschitz_constant().ok_or_else(|| {
        Error::Precondition("Lipschitz check needs a function built from Lipschitz pieces".into())
    })?;
    let table = modulus_grid(fun, grid_n)?;
    let domain = fun.domain();
    let spacing = domain.len() / (grid_n - 1) as f64;
    let samples: Vec<f64> = uniform_grid(domain.lo(), domain.hi(), grid_n)
        .into_iter()
        .map(|x| fun.eval_clamped(x))
        .collect();
    let steepest = |values: &[f64], abs: bool| {
        values
            .windows(2)
            .map(|w| {
                if abs {
                    (w[1] - w[0]).abs()
                } else {
                    w[1] - w[0]
                }
            })
            .fold(0.0f64, f64::max)
            / spacing
    };
    Ok(LipschitzConstants {
        exact,
        function: steepest(&samples, true),
        modulus: steepest(table.values(), false),
    })
}

/// Compares the grid Lipschitz constant of `fun` with that of its modulus;
/// they agree within twice the grid error.
pub fn lipschitz_check(fun: &PiecewiseFn, grid_n: usize) -> Result<VerificationReport> {
    let c = lipschitz_constants(fun, grid_n)?;
    Ok(VerificationReport::new(
        "lipschitz_equivalence",
        grid_n as u64,
        (c.function - c.modulus).abs(),
        2.0 * c.grid_error(),
    ))
}

/// Continuous piecewise-linear function on `[0, 1]` with `knots` random
/// interior breakpoints and values in `[−1, 1]`.
pub fn random_piecewise_linear(rng: &mut impl Rng, knots: usize) -> PiecewiseFn {
    let mut xs: Vec<f64> = (0..knots).map(|_| rng.gen_range(0.01..0.99)).collect();
    xs.push(0.0);
    xs.push(1.0);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let points: Vec<(f64, f64)> = xs
        .into_iter()
        .map(|x| (x, rng.gen_range(-1.0..=1.0)))
        .collect();
    PiecewiseFn::piecewise_linear(&points).expect("sorted distinct knots")
}

/// [`lipschitz_check`] over `count` seeded random piecewise-linear functions.
pub fn verify_lipschitz_family(
    count: usize,
    grid_n: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violation = 0.0f64;
    let mut tolerance = f64::INFINITY;
    for _ in 0..count {
        let knots = rng.gen_range(1..8);
        let fun = random_piecewise_linear(&mut rng, knots);
        let c = lipschitz_constants(&fun, grid_n)?;
        violation = violation.max((c.function - c.modulus).abs());
        tolerance = tolerance.min(2.0 * c.grid_error());
    }
    Ok(VerificationReport::new(
        "lipschitz_equivalence",
        (count * grid_n) as u64,
        violation,
        tolerance,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real_fn::{build_f, build_identity, Interval};

    #[test]
    fn identity() {
        let c =
            lipschitz_constants(&build_identity(Interval::new(0.0, 1.0).unwrap()), 1001).unwrap();
        assert!((c.function - 1.0).abs() < 1e-9 && (c.modulus - 1.0).abs() < 1e-9);
    }

    #[test]
    fn sawtooth_has_constant_two() {
        let saw = PiecewiseFn::piecewise_linear(&[(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)]).unwrap();
        let c = lipschitz_constants(&saw, 10_001).unwrap();
        // brute-force difference quotients over the same grid
        let xs = uniform_grid(0.0, 1.0, 10_001);
        let mut brute = 0.0f64;
        for i in (0..xs.len()).step_by(37) {
            for j in (i + 1..xs.len()).step_by(41) {
                let q =
                    (saw.eval(xs[j]).unwrap() - saw.eval(xs[i]).unwrap()).abs() / (xs[j] - xs[i]);
                brute = brute.max(q);
            }
        }
        assert!((brute - 2.0).abs() < 1e-9);
        assert!((c.function - 2.0).abs() < 1e-9);
        assert!((c.modulus - 2.0).abs() < 1e-9);
        assert!(lipschitz_check(&saw, 10_001).unwrap().passed);
    }

    #[test]
    fn constant_function() {
        let flat = PiecewiseFn::piecewise_linear(&[(0.0, 0.5), (1.0, 0.5)]).unwrap();
        let c = lipschitz_constants(&flat, 1001).unwrap();
        assert_eq!((c.exact, c.function, c.modulus), (0.0, 0.0, 0.0));
    }

    #[test]
    fn rejects_non_lipschitz_pieces() {
        assert!(lipschitz_check(&build_f(), 1001).is_err());
    }
}
