//! Empirical ε–δ probe for absolute continuity: the largest increment sum
//! found over random disjoint interval families of a prescribed total length.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::cover::{singular_cover, CoverFamily};
use crate::error::{Error, Result};
use crate::modulus::{delta_star, omega_g_closed_with, ModulusTable};
use crate::real_fn::{Interval, PiecewiseFn};

/// Intervals per random family.
pub const FAMILY_SIZE: usize = 20;

/// A real function on a compact interval that can be probed pointwise.
pub trait RealFunction: Sync {
    fn domain(&self) -> Interval;

    /// Value at `x`, which the caller keeps inside [`RealFunction::domain`].
    fn value(&self, x: f64) -> f64;

    fn increment_sum(&self, family: &CoverFamily) -> f64 {
        family
            .intervals()
            .iter()
            .map(|iv| self.value(iv.hi()) - self.value(iv.lo()))
            .sum()
    }
}

impl RealFunction for PiecewiseFn {
    fn domain(&self) -> Interval {
        PiecewiseFn::domain(self)
    }

    fn value(&self, x: f64) -> f64 {
        let d = PiecewiseFn::domain(self);
        self.eval_clamped(x.clamp(d.lo(), d.hi()))
    }
}

/// Tables are probed through their piecewise-linear interpolant.
impl RealFunction for ModulusTable {
    fn domain(&self) -> Interval {
        Interval::new(self.deltas()[0], self.max_delta()).expect("sorted table")
    }

    fn value(&self, x: f64) -> f64 {
        self.value_at(x)
    }
}

/// The closed form of `ω_g` on `[0, 7]`.
#[derive(Debug, Clone, Copy)]
pub struct OmegaGClosed {
    delta_star: f64,
}

impl OmegaGClosed {
    pub fn new() -> Self {
        OmegaGClosed {
            delta_star: delta_star(),
        }
    }
}

impl Default for OmegaGClosed {
    fn default() -> Self {
        Self::new()
    }
}

impl RealFunction for OmegaGClosed {
    fn domain(&self) -> Interval {
        Interval::new(0.0, 7.0).expect("static interval")
    }

    fn value(&self, x: f64) -> f64 {
        omega_g_closed_with(x.clamp(0.0, 7.0), self.delta_star)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub length: f64,
    pub sup_increment_sum: f64,
}

/// `FAMILY_SIZE` disjoint intervals of total length `total` inside `domain`.
///
/// Interval lengths and the gaps between them are independent uniform
/// splits of `total` and of the remaining free length.
pub fn random_family(rng: &mut impl Rng, domain: Interval, total: f64) -> CoverFamily {
    let lengths = uniform_split(rng, FAMILY_SIZE, total);
    let gaps = uniform_split(rng, FAMILY_SIZE + 1, (domain.len() - total).max(0.0));
    let mut cursor = domain.lo();
    let mut intervals = Vec::with_capacity(FAMILY_SIZE);
    for (len, gap) in lengths.into_iter().zip(gaps) {
        let lo = (cursor + gap).min(domain.hi());
        let hi = (lo + len).min(domain.hi());
        intervals.push(Interval::new(lo, hi).expect("ordered endpoints"));
        cursor = hi;
    }
    CoverFamily::new(intervals).expect("families are laid out left to right")
}

fn uniform_split(rng: &mut impl Rng, parts: usize, amount: f64) -> Vec<f64> {
    let weights: Vec<f64> = (0..parts).map(|_| rng.gen::<f64>() + 1e-12).collect();
    let sum: f64 = weights.iter().sum();
    weights.into_iter().map(|w| amount * w / sum).collect()
}

fn trial_seed(seed: u64, length_index: usize, trial: usize) -> u64 {
    // splitmix64 finaliser over the packed indices
    let mut z = seed ^ ((length_index as u64) << 40) ^ (trial as u64);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// For every total length, the largest increment sum over `trials` random families.
pub fn ac_profile<F: RealFunction + ?Sized>(
    fun: &F,
    lengths: &[f64],
    trials: usize,
    seed: u64,
) -> Result<Vec<ProfilePoint>> {
    let domain = fun.domain();
    if trials == 0 {
        return Err(Error::Precondition(
            "ac_profile needs at least one trial".into(),
        ));
    }
    if lengths.windows(2).any(|w| !(w[0] > w[1])) {
        return Err(Error::Precondition(
            "ac_profile lengths must be strictly decreasing".into(),
        ));
    }
    if let Some(bad) = lengths.iter().find(|&&l| !(l > 0.0 && l <= domain.len())) {
        return Err(Error::Precondition(format!(
            "length {bad} outside (0, {}]",
            domain.len()
        )));
    }
    Ok(lengths
        .iter()
        .enumerate()
        .map(|(li, &length)| {
            let sup = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, li, t));
                    fun.increment_sum(&random_family(&mut rng, domain, length))
                })
                .reduce(|| f64::NEG_INFINITY, f64::max);
            ProfilePoint {
                length,
                sup_increment_sum: sup,
            }
        })
        .collect())
}

/// Increment sums of `fun` on the singular covers of levels `0..=max_level`.
pub fn singular_cover_profile<F: RealFunction + ?Sized>(
    fun: &F,
    max_level: u32,
) -> Result<Vec<ProfilePoint>> {
    (0..=max_level)
        .map(|level| {
            let cover = singular_cover(level)?;
            Ok(ProfilePoint {
                length: cover.total_length(),
                sup_increment_sum: fun.increment_sum(&cover),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real_fn::{build_f, build_identity};

    const LADDER: [f64; 4] = [0.1, 0.01, 0.001, 0.0001];

    #[test]
    fn identity_profile_is_the_length() {
        let id = build_identity(Interval::new(0.0, 1.0).unwrap());
        for p in ac_profile(&id, &LADDER, 20, 1).unwrap() {
            assert!((p.sup_increment_sum - p.length).abs() < 1e-12, "{p:?}");
        }
    }

    #[test]
    fn families_are_disjoint_with_requested_length() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let domain = Interval::new(0.0, 7.0).unwrap();
        for &len in &LADDER {
            let fam = random_family(&mut rng, domain, len);
            assert_eq!(fam.len(), FAMILY_SIZE);
            assert!((fam.total_length() - len).abs() < 1e-12);
            assert!(fam
                .intervals()
                .iter()
                .all(|iv| iv.lo() >= 0.0 && iv.hi() <= 7.0));
        }
    }

    #[test]
    fn omega_profile_decreases() {
        let p = ac_profile(&OmegaGClosed::new(), &LADDER, 50, 42).unwrap();
        assert!(p
            .windows(2)
            .all(|w| w[1].sup_increment_sum < w[0].sup_increment_sum));
        // 20 · 2 f₂(ℓ/40) bounds the last entry
        assert!(p[3].sup_increment_sum < 40.0 * (1e-4f64 / 40.0).powf(crate::alpha()));
    }

    #[test]
    fn cantor_covers_pin_f_at_one() {
        for p in singular_cover_profile(&build_f(), 10).unwrap() {
            assert!((p.sup_increment_sum - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn preconditions() {
        let o = OmegaGClosed::new();
        assert!(ac_profile(&o, &[0.1, 0.2], 1, 0).is_err());
        assert!(ac_profile(&o, &[8.0], 1, 0).is_err());
        assert!(ac_profile(&o, &[0.1], 0, 0).is_err());
    }

    #[test]
    fn seeded_runs_repeat() {
        let o = OmegaGClosed::new();
        assert_eq!(
            ac_profile(&o, &LADDER, 30, 5).unwrap(),
            ac_profile(&o, &LADDER, 30, 5).unwrap()
        );
    }
}
