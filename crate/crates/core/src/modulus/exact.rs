//! Exact analysis of `ω_g` through `φ(x) = g(x + δ) − g(x)`.
//!
//! For `δ ∈ (0, 7)` the maximiser of `φ` over `[0, 7 − δ]` is either a point of
//! the boundary set `A_δ` (endpoints and kinks of `φ`) or a stationary point
//! where `g′(x + δ) = g′(x)`. Stationary points with `x` or `x + δ` inside
//! `(2, 3)` are discarded: on that unit `g` can be traded for `f` without
//! changing the modulus, and the substitution argument covers those pairs.

use std::sync::OnceLock;

use crate::error::{check_domain, Error, Result};
use crate::real_fn::{alpha, power_alpha, Interval, G};

/// Agreement required between a case formula and direct maximisation of `φ`.
pub const CASE_TOLERANCE: f64 = 1e-9;

pub const DEFAULT_DELTA_STAR_TOL: f64 = 1e-12;

/// `g(x + δ) − g(x)`.
pub fn phi(x: f64, delta: f64) -> Result<f64> {
    let delta = check_domain("phi: delta", delta, 0.0, 7.0)?;
    let x = check_domain("phi: x", x, 0.0, 7.0 - delta)?;
    Ok(G.eval_clamped((x + delta).min(7.0)) - G.eval_clamped(x))
}

fn open_delta(what: &'static str, delta: f64) -> Result<f64> {
    if delta.is_nan() || delta <= 0.0 || delta >= 7.0 {
        return Err(Error::Domain {
            what,
            value: delta,
            lo: 0.0,
            hi: 7.0,
        });
    }
    Ok(delta)
}

/// Endpoints and non-differentiability points of `φ` on `[0, 7 − δ]`.
pub fn boundary_set(delta: f64) -> Result<Vec<f64>> {
    let delta = open_delta("boundary_set", delta)?;
    let right = 7.0 - delta;
    let mut points: Vec<f64> = (0..7)
        .map(f64::from)
        .chain((1..7).map(|k| (f64::from(k) - delta).max(0.0)))
        .chain(std::iter::once(right))
        .filter(|&x| x <= right)
        .collect();
    points.sort_by(f64::total_cmp);
    points.dedup();
    Ok(points)
}

/// Maximum of `φ` over the boundary set, `⌊δ⌋ + f₂(δ − ⌊δ⌋)`, checked
/// against direct evaluation.
pub fn max_phi_boundary(delta: f64) -> Result<f64> {
    let delta = open_delta("max_phi_boundary", delta)?;
    let whole = delta.floor();
    let formula = whole + power_alpha(delta - whole);
    let direct = boundary_set(delta)?
        .into_iter()
        .map(|x| phi(x, delta))
        .try_fold(f64::NEG_INFINITY, |acc, v| v.map(|v| acc.max(v)))?;
    agree("max of phi over the boundary set", formula, direct)?;
    Ok(formula)
}

/// An open interval on which `φ` is constant, with the point used to sample it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatComponent {
    pub interval: Interval,
    pub representative: f64,
}

/// Stationary points of `φ` for one `δ`, reduced as described in the module docs.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalSet {
    pub delta: f64,
    pub points: Vec<f64>,
    pub flat_components: Vec<FlatComponent>,
}

impl CriticalSet {
    /// Points and flat-component representatives together.
    pub fn candidates(&self) -> impl Iterator<Item = f64> + '_ {
        self.points
            .iter()
            .copied()
            .chain(self.flat_components.iter().map(|c| c.representative))
    }
}

/// Analytic `g′` away from the integer breakpoints.
pub fn g_derivative(x: f64) -> Option<f64> {
    if !(x > 0.0 && x < 7.0) || x.fract() == 0.0 {
        return None;
    }
    let a = alpha();
    let unit = x.floor();
    let t = x - unit;
    let power_slope = |s: f64| a * s.powf(a - 1.0);
    Some(match unit as u32 {
        0 | 3 => power_slope(1.0 - t),
        2 => 1.0,
        _ => power_slope(t),
    })
}

fn flat(lo: f64, hi: f64) -> FlatComponent {
    let interval = Interval::new(lo, hi).expect("static interval");
    FlatComponent {
        interval,
        representative: interval.midpoint(),
    }
}

/// Reduced critical set `C_δ`, case by case.
pub fn critical_set(delta: f64) -> Result<CriticalSet> {
    let d = open_delta("critical_set", delta)?;
    let (points, flat_components) = if d < 1.0 {
        (vec![1.0 - d / 2.0, 4.0 - d / 2.0], vec![])
    } else if d == 1.0 {
        (
            vec![1.0 - d / 2.0, 4.0 - d / 2.0],
            vec![flat(4.0, 5.0), flat(5.0, 6.0)],
        )
    } else if d < 2.0 {
        (
            vec![
                1.0 - d / 2.0,
                2.0 - (d - 1.0) / 2.0,
                4.0 - d / 2.0,
                4.0 - (d - 1.0) / 2.0,
            ],
            vec![],
        )
    } else if d == 2.0 {
        (
            vec![2.0 - (d - 1.0) / 2.0, 4.0 - (d - 1.0) / 2.0],
            vec![flat(4.0, 5.0)],
        )
    } else if d < 3.0 {
        (
            vec![
                2.0 - (d - 1.0) / 2.0,
                4.0 - (d - 1.0) / 2.0,
                4.0 - (d - 2.0) / 2.0,
            ],
            vec![],
        )
    } else if d == 3.0 {
        (
            vec![4.0 - (d - 2.0) / 2.0],
            vec![flat(0.0, 1.0), flat(1.0, 2.0)],
        )
    } else if d < 4.0 {
        (vec![1.0 - (d - 3.0) / 2.0, 4.0 - (d - 2.0) / 2.0], vec![])
    } else if d == 4.0 {
        (vec![1.0 - (d - 3.0) / 2.0], vec![flat(1.0, 2.0)])
    } else if d < 5.0 {
        (vec![1.0 - (d - 3.0) / 2.0, 1.0 - (d - 4.0) / 2.0], vec![])
    } else if d == 5.0 {
        (vec![1.0 - (d - 4.0) / 2.0], vec![flat(1.0, 2.0)])
    } else if d < 6.0 {
        (vec![1.0 - (d - 4.0) / 2.0, 1.0 - (d - 5.0) / 2.0], vec![])
    } else {
        (vec![1.0 - (d - 5.0) / 2.0], vec![])
    };
    let set = CriticalSet {
        delta: d,
        points,
        flat_components,
    };
    for x in set.candidates() {
        let (left, right) = match (g_derivative(x), g_derivative(x + d)) {
            (Some(l), Some(r)) => (l, r),
            _ => {
                return Err(Error::Consistency {
                    check: "critical point away from breakpoints",
                    left: x,
                    right: x + d,
                    tolerance: 0.0,
                })
            }
        };
        let scale = left.abs().max(right.abs()).max(1.0);
        if (left - right).abs() > CASE_TOLERANCE * scale {
            return Err(Error::Consistency {
                check: "stationarity g'(x + delta) = g'(x)",
                left,
                right,
                tolerance: CASE_TOLERANCE * scale,
            });
        }
    }
    Ok(set)
}

/// `m + 2 f₂((δ − m)/2)`, the value of `φ` at the stationary point pairing unit `m` with unit `m + 1`.
fn branch(m: u32, delta: f64) -> f64 {
    let m = f64::from(m);
    m + 2.0 * power_alpha((delta - m) / 2.0)
}

/// Maximum of `φ` over the critical set, from its case expression, checked
/// against direct evaluation on [`critical_set`].
pub fn max_phi_critical(delta: f64) -> Result<f64> {
    let d = open_delta("max_phi_critical", delta)?;
    let formula = if d <= 1.0 {
        branch(0, d)
    } else if d > 6.0 {
        branch(5, d)
    } else {
        // δ ∈ (k, k + 1] for k = 1..=5
        let k = (d.ceil() as u32) - 1;
        branch(k - 1, d).max(branch(k, d))
    };
    let direct = critical_set(d)?
        .candidates()
        .map(|x| phi(x, d))
        .try_fold(f64::NEG_INFINITY, |acc, v| v.map(|v| acc.max(v)))?;
    agree("max of phi over the critical set", formula, direct)?;
    Ok(formula)
}

fn agree(check: &'static str, formula: f64, direct: f64) -> Result<()> {
    if (formula - direct).abs() > CASE_TOLERANCE {
        return Err(Error::Consistency {
            check,
            left: formula,
            right: direct,
            tolerance: CASE_TOLERANCE,
        });
    }
    Ok(())
}

/// `ψ(δ) = 2 f₂(δ/2) − 1 − 2 f₂((δ − 1)/2)` on `[1, 2]`.
pub fn psi(delta: f64) -> Result<f64> {
    let delta = check_domain("psi", delta, 1.0, 2.0)?;
    Ok(psi_unchecked(delta))
}

fn psi_unchecked(delta: f64) -> f64 {
    2.0 * power_alpha(delta / 2.0) - 1.0 - 2.0 * power_alpha((delta - 1.0) / 2.0)
}

/// Locates the sign change of `ψ` on `[1, 2]` by bisection and returns `δ*`,
/// the offset of the root from 1.
pub fn find_delta_star(tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(Error::Precondition(format!(
            "delta* tolerance must lie in (0, 1e-6], got {tol}"
        )));
    }
    let (mut lo, mut hi) = (1.0, 2.0);
    let (at_lo, at_hi) = (psi_unchecked(lo), psi_unchecked(hi));
    if !(at_lo > 0.0 && at_hi < 0.0) {
        return Err(Error::Consistency {
            check: "psi bracket signs",
            left: at_lo,
            right: at_hi,
            tolerance: 0.0,
        });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let value = psi_unchecked(mid);
        if value == 0.0 {
            return Ok(mid - 1.0);
        }
        if value > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi) - 1.0)
}

static DELTA_STAR: OnceLock<f64> = OnceLock::new();

/// `δ*` at the default tolerance, computed once per process.
pub fn delta_star() -> f64 {
    *DELTA_STAR.get_or_init(|| {
        find_delta_star(DEFAULT_DELTA_STAR_TOL).expect("psi changes sign on [1, 2]")
    })
}

/// Closed form of `ω_g` on `[0, 7]`: `k + 2 f₂((δ − k)/2)` on `(k + δ*, k + 1 + δ*]`.
pub fn omega_g_closed(delta: f64) -> Result<f64> {
    let delta = check_domain("omega_g_closed", delta, 0.0, 7.0)?;
    Ok(omega_g_closed_with(delta, delta_star()))
}

/// Closed form for a caller-supplied `δ*`.
pub fn omega_g_closed_with(delta: f64, delta_star: f64) -> f64 {
    let k = (1..=5)
        .find(|&k| delta <= f64::from(k) + delta_star)
        .map_or(5, |k| k - 1);
    branch(k, delta)
}
