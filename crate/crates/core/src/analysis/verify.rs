//! End-to-end checks of the construction, each producing a [`VerificationReport`].

use rayon::prelude::*;

use super::cover::{increment_sum, singular_cover};
use super::profile::{ac_profile, OmegaGClosed};
use super::report::{VerificationReport, Worst};
use crate::cantor::{cantor_of_ternary_rational, DEFAULT_CANTOR_DIGITS};
use crate::error::{Error, Result};
use crate::modulus::{
    delta_star, find_delta_star, max_phi_boundary, max_phi_critical, modulus_grid,
    omega_g_closed_with, psi, ModulusTable, CASE_TOLERANCE,
};
use crate::real_fn::{build_cantor, build_f, build_g, build_h, power_alpha};

/// Grid-oracle tolerance for `grid_n ≈ 2·10^4` tables on `[0, 7]` and `10^4` on `[0, 2]`.
pub const GRID_TOLERANCE: f64 = 5e-3;
pub const SELF_MODULUS_TOLERANCE: f64 = 1e-2;
pub const DELTA_STAR_RESIDUAL: f64 = 1e-10;
pub const DELTA_STAR_BRACKET: (f64, f64) = (0.17, 0.19);
pub const COVER_F_TOLERANCE: f64 = 1e-10;
pub const COVER_G_TOLERANCE: f64 = 1e-12;
pub const AC_LADDER: [f64; 4] = [0.1, 0.01, 0.001, 0.0001];
pub const AC_PROFILE_CEILING: f64 = 0.05;
pub const MIN_VERIFY_GRID: usize = 1000;

fn require_grid(grid_n: usize) -> Result<()> {
    if grid_n < MIN_VERIFY_GRID {
        return Err(Error::Precondition(format!(
            "grid_n must be at least {MIN_VERIFY_GRID}, got {grid_n}"
        )));
    }
    Ok(())
}

fn max_abs_difference(a: &[f64], b: &[f64], indices: impl Iterator<Item = usize>) -> Worst {
    let mut w = Worst::default();
    for i in indices {
        w.push((a[i] - b[i]).abs());
    }
    w
}

fn sampled_indices(len: usize, delta_samples: Option<usize>) -> Vec<usize> {
    match delta_samples {
        Some(k) if k >= 2 && k < len => {
            let mut idx: Vec<usize> = (0..k).map(|i| i * (len - 1) / (k - 1)).collect();
            idx.dedup();
            idx
        }
        _ => (0..len).collect(),
    }
}

/// The Cantor function is its own minimal modulus: compares the grid modulus
/// on `3^fine + 1` points with `f₁` at every `δ = k/3^coarse`.
pub fn verify_self_modulus(fine_power: u32, coarse_power: u32) -> Result<VerificationReport> {
    if coarse_power > fine_power || fine_power > 15 {
        return Err(Error::Precondition(format!(
            "self-modulus check needs coarse ≤ fine ≤ 15, got {coarse_power} and {fine_power}"
        )));
    }
    let table = modulus_grid(&build_cantor(), 3usize.pow(fine_power) + 1)?;
    let stride = 3usize.pow(fine_power - coarse_power);
    let mut w = Worst::default();
    for k in 0..=3u64.pow(coarse_power) {
        let exact = cantor_of_ternary_rational(k, coarse_power, DEFAULT_CANTOR_DIGITS);
        w.push((table.values()[k as usize * stride] - exact).abs());
    }
    Ok(w.report("self_modulus", SELF_MODULUS_TOLERANCE))
}

/// Grid moduli of `f` and `g` coincide up to the grid error.
pub fn verify_same_modulus(
    grid_n: usize,
    delta_samples: Option<usize>,
) -> Result<VerificationReport> {
    require_grid(grid_n)?;
    let (tf, tg) = (
        modulus_grid(&build_f(), grid_n)?,
        modulus_grid(&build_g(), grid_n)?,
    );
    Ok(same_modulus_report(&tf, &tg, delta_samples))
}

pub(crate) fn same_modulus_report(
    tf: &ModulusTable,
    tg: &ModulusTable,
    delta_samples: Option<usize>,
) -> VerificationReport {
    let idx = sampled_indices(tf.len(), delta_samples);
    max_abs_difference(tf.values(), tg.values(), idx.into_iter())
        .report("same_modulus", GRID_TOLERANCE)
}

/// Grid modulus of `g` against the closed form.
pub fn verify_omega_closed_form(grid_n: usize) -> Result<VerificationReport> {
    require_grid(grid_n)?;
    Ok(closed_form_report(&modulus_grid(&build_g(), grid_n)?))
}

pub(crate) fn closed_form_report(grid_g: &ModulusTable) -> VerificationReport {
    let ds = delta_star();
    let mut w = Worst::default();
    for (&d, &v) in grid_g.deltas().iter().zip(grid_g.values()) {
        w.push((v - omega_g_closed_with(d, ds)).abs());
    }
    w.report("omega_closed_form", GRID_TOLERANCE)
}

/// At `samples` uniform `δ ∈ (0, 7)`: the boundary maximum never beats the
/// critical maximum, and the closed form equals the larger of the two.
///
/// Each maximum is itself cross-checked against direct evaluation of `φ`; a
/// disagreement surfaces as an error.
pub fn verify_candidate_maxima(samples: usize) -> Result<Vec<VerificationReport>> {
    let ds = delta_star();
    let rows = (1..=samples)
        .into_par_iter()
        .map(|i| {
            let d = 7.0 * i as f64 / (samples + 1) as f64;
            let (a, c) = (max_phi_boundary(d)?, max_phi_critical(d)?);
            Ok((
                (a - c).max(0.0),
                (omega_g_closed_with(d, ds) - a.max(c)).abs(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let (mut order, mut closed) = (Worst::default(), Worst::default());
    for (o, c) in rows {
        order.push(o);
        closed.push(c);
    }
    Ok(vec![
        order.report("boundary_le_critical", CASE_TOLERANCE),
        closed.report("closed_form_candidates", CASE_TOLERANCE),
    ])
}

/// `δ*` lies in its bracket, is a root of `ψ(1 + ·)`, and joins the first two closed-form branches.
pub fn verify_delta_star(tol: f64) -> Result<VerificationReport> {
    let ds = find_delta_star(tol)?;
    let (lo, hi) = DELTA_STAR_BRACKET;
    let mut w = Worst::default();
    w.push(if ds > lo && ds < hi {
        0.0
    } else {
        f64::INFINITY
    });
    w.push(psi(1.0 + ds)?.abs());
    let left = 2.0 * power_alpha((1.0 + ds) / 2.0);
    let right = 1.0 + 2.0 * power_alpha(ds / 2.0);
    w.push((left - right).abs());
    Ok(w.report("delta_star", DELTA_STAR_RESIDUAL))
}

/// On the Cantor covers of levels `0..=max_level`, `f` keeps increment sum 1
/// while `g`'s increment sum equals the total length.
pub fn verify_singular_covers(max_level: u32) -> Result<Vec<VerificationReport>> {
    let (f, g) = (build_f(), build_g());
    let (mut wf, mut wg) = (Worst::default(), Worst::default());
    for level in 0..=max_level {
        let cover = singular_cover(level)?;
        wf.push((increment_sum(&f, &cover)? - 1.0).abs());
        wg.push((increment_sum(&g, &cover)? - (2.0f64 / 3.0).powi(level as i32)).abs());
    }
    Ok(vec![
        wf.report("singular_cover_f", COVER_F_TOLERANCE),
        wg.report("singular_cover_g", COVER_G_TOLERANCE),
    ])
}

/// Random-family profile of the closed-form `ω_g` must be strictly decreasing
/// along [`AC_LADDER`] and finish below [`AC_PROFILE_CEILING`].
///
/// The reported violation is the excess of the last entry over the ceiling,
/// or the largest non-decrease along the ladder (at least one ulp when two
/// entries tie).
pub fn verify_ac_profile(trials: usize, seed: u64) -> Result<VerificationReport> {
    let profile = ac_profile(&OmegaGClosed::new(), &AC_LADDER, trials, seed)?;
    let sums: Vec<f64> = profile.iter().map(|p| p.sup_increment_sum).collect();
    let mut violation = (sums[sums.len() - 1] - AC_PROFILE_CEILING).max(0.0);
    for w in sums.windows(2) {
        if w[1] >= w[0] {
            violation = violation.max((w[1] - w[0]).max(f64::EPSILON));
        }
    }
    Ok(VerificationReport::new(
        "ac_profile_omega",
        (trials * AC_LADDER.len()) as u64,
        violation,
        0.0,
    ))
}

/// `ω_h(δ) = f₂(δ)` on `[0, 1]` and `1` beyond, through the two-sided grid oracle.
pub fn verify_h_modulus(grid_n: usize) -> Result<VerificationReport> {
    require_grid(grid_n)?;
    let table = modulus_grid(&build_h(), grid_n)?;
    let mut w = Worst::default();
    for (&d, &v) in table.deltas().iter().zip(table.values()) {
        let closed = if d <= 1.0 { power_alpha(d) } else { 1.0 };
        w.push((v - closed).abs());
    }
    Ok(w.report("h_modulus", GRID_TOLERANCE))
}
