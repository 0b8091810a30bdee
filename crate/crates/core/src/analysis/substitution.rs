use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{VerificationReport, Worst};
use crate::error::{check_domain, Error, Result};
use crate::real_fn::{F, G};

pub const SUBSTITUTION_TOLERANCE: f64 = 1e-12;

/// Replaces a pair `(x, y)` with `x ∈ [2, 3]` by a pair at the same distance
/// that avoids `(2, 3)` and has at least as large an increment for both `f`
/// and `g`.
///
/// The replacement depends on the unit interval holding `y`; an integer `y`
/// belongs to the lower interval.
pub fn substitute_pair(x: f64, y: f64) -> Result<(f64, f64)> {
    let x = check_domain("substitute_pair: x", x, 2.0, 3.0)?;
    let y = check_domain("substitute_pair: y", y, 0.0, 7.0)?;
    let (x1, y1) = substitution_rule(x, y);
    let violation = substitution_violation(x, y, x1, y1);
    if !(violation <= SUBSTITUTION_TOLERANCE) {
        return Err(Error::Consistency {
            check: "substitution pair postconditions",
            left: violation,
            right: 0.0,
            tolerance: SUBSTITUTION_TOLERANCE,
        });
    }
    Ok((x1, y1))
}

fn substitution_rule(x: f64, y: f64) -> (f64, f64) {
    let unit = if y <= 1.0 {
        0
    } else {
        (y.ceil() as u32 - 1).min(6)
    };
    match unit {
        0 => (x + 3.0, y + 3.0),
        1 => (x - 1.0, y - 1.0),
        2 => (1.0, 1.0 + (x - y).abs()),
        3 => (x - 2.0, y - 2.0),
        4 | 5 => (x + 1.0, y + 1.0),
        _ => (x - 2.0, y - 2.0),
    }
}

/// Largest failure among: both points in `[0, 7] \ (2, 3)`, equal distance,
/// and the increment inequalities for `f` and `g`.
fn substitution_violation(x: f64, y: f64, x1: f64, y1: f64) -> f64 {
    let outside_middle = |t: f64| {
        let range = (-t).max(t - 7.0).max(0.0);
        let inside = if t > 2.0 && t < 3.0 {
            (t - 2.0).min(3.0 - t)
        } else {
            0.0
        };
        range.max(inside)
    };
    if !(0.0..=7.0).contains(&x1) || !(0.0..=7.0).contains(&y1) {
        return outside_middle(x1)
            .max(outside_middle(y1))
            .max(f64::MIN_POSITIVE);
    }
    let distance = ((x - y).abs() - (x1 - y1).abs()).abs();
    let increment = |fun: &crate::PiecewiseFn| {
        let before = (fun.eval_clamped(x) - fun.eval_clamped(y)).abs();
        let after = (fun.eval_clamped(x1) - fun.eval_clamped(y1)).abs();
        (before - after).max(0.0)
    };
    outside_middle(x1)
        .max(outside_middle(y1))
        .max(distance)
        .max(increment(&F))
        .max(increment(&G))
}

/// Runs [`substitute_pair`]'s postconditions on `samples` seeded pairs plus
/// the integer tie cases.
pub fn verify_substitution_pairs(samples: usize, seed: u64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(f64, f64)> = (0..samples)
        .map(|_| (rng.gen_range(2.0..=3.0), rng.gen_range(0.0..=7.0)))
        .collect();
    for k in 0..=7 {
        pairs.push((2.0, f64::from(k)));
        pairs.push((3.0, f64::from(k)));
        pairs.push((2.5, f64::from(k)));
    }
    let worst = pairs
        .par_iter()
        .map(|&(x, y)| {
            let (x1, y1) = substitution_rule(x, y);
            let mut w = Worst::default();
            w.push(substitution_violation(x, y, x1, y1));
            w
        })
        .reduce(Worst::default, Worst::merge);
    worst.report("substitution_pairs", SUBSTITUTION_TOLERANCE)
}
