use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{VerificationReport, Worst};
use crate::cantor::{cantor_eval, DEFAULT_CANTOR_DIGITS};
use crate::error::{Error, Result};
use crate::modulus::uniform_grid;
use crate::real_fn::{f2_eval, f3_eval};

pub const LEMMA_TOLERANCE: f64 = 1e-12;

fn f1(x: f64) -> f64 {
    cantor_eval(x, DEFAULT_CANTOR_DIGITS).expect("argument in [0, 1]")
}

fn f2(x: f64) -> f64 {
    f2_eval(x).expect("argument in [0, 1]")
}

fn f3(x: f64) -> f64 {
    f3_eval(x).expect("argument in [0, 1]")
}

/// Checks the pointwise and Hölder-type bounds relating the Cantor function
/// `f₁`, the identity, `f₂(x) = x^α` and `f₃(x) = 1 − f₂(1 − x)`.
///
/// Points are a uniform grid of `samples` points plus `samples` seeded uniform
/// draws; pairs mix random–random, grid–random, diagonal and ternary pairs.
pub fn check_lemma_bounds(samples: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    if samples == 0 {
        return Err(Error::Precondition(
            "check_lemma_bounds needs at least one sample".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = uniform_grid(0.0, 1.0, samples.max(2));
    let random: Vec<f64> = (0..samples).map(|_| rng.gen::<f64>()).collect();
    let points: Vec<f64> = grid.iter().chain(&random).copied().collect();

    let mut pairs: Vec<(f64, f64)> = (0..samples)
        .map(|_| (rng.gen::<f64>(), rng.gen::<f64>()))
        .collect();
    pairs.extend(grid.iter().zip(&random).map(|(&x, &y)| (x, y)));
    pairs.extend(random.iter().map(|&x| (x, x)));
    for k in 1..=20 {
        let t = 3f64.powi(-k);
        pairs.push((t, 0.0));
        pairs.push((1.0, 1.0 - t));
        pairs.push((2.0 * t, t));
    }

    let endpoint = |a: f64, b: f64| {
        let mut w = Worst::default();
        w.push(a.abs());
        w.push((b - 1.0).abs());
        w
    };
    let excess = |lhs: f64, rhs: f64| (lhs - rhs).max(0.0);

    let mut f1_le_f2 = Worst::default();
    let mut id_le_f2 = Worst::default();
    let mut f3_le_f1 = Worst::default();
    let mut f3_le_id = Worst::default();
    for &x in &points {
        let (v1, v2, v3) = (f1(x), f2(x), f3(x));
        f1_le_f2.push(excess(v1, v2));
        id_le_f2.push(excess(x, v2));
        f3_le_f1.push(excess(v3, v1));
        f3_le_id.push(excess(v3, x));
    }
    let mut f1_holder = Worst::default();
    let mut id_holder = Worst::default();
    for &(x, y) in &pairs {
        let gap = f2((x - y).abs());
        f1_holder.push(excess((f1(x) - f1(y)).abs(), gap));
        id_holder.push(excess((x - y).abs(), gap));
    }

    Ok(vec![
        endpoint(f2(0.0), f2(1.0)).report("f2_endpoints", LEMMA_TOLERANCE),
        f1_le_f2.report("f1_le_f2", LEMMA_TOLERANCE),
        f1_holder.report("f1_holder_f2", LEMMA_TOLERANCE),
        id_le_f2.report("identity_le_f2", LEMMA_TOLERANCE),
        id_holder.report("identity_holder_f2", LEMMA_TOLERANCE),
        endpoint(f3(0.0), f3(1.0)).report("f3_endpoints", LEMMA_TOLERANCE),
        f3_le_f1.report("f3_le_f1", LEMMA_TOLERANCE),
        f3_le_id.report("f3_le_identity", LEMMA_TOLERANCE),
    ])
}
