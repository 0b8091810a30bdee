//! Evaluation of the Cantor staircase `f₁ : [0,1] → [0,1]` from the ternary
//! expansion of its argument.
//!
//! A ternary expansion `0.t₁t₂t₃…` is read left to right; the first digit equal
//! to 1 at position `k` stops the scan and contributes `2^(−k)`, every digit 2
//! before it contributes `2^(−i)`. Digits are extracted exactly from the binary
//! representation of the argument, so the only error left is truncation after
//! `digits` ternary places, bounded by `2^(−digits)`.
//!
//! Floating point cannot represent ternary rationals such as `1/3` or
//! `2 + 5/3^12 − 2`. Arguments lying within [`TERNARY_SNAP_TOLERANCE`] of a
//! ternary rational `j/3^m` with `m ≤` [`TERNARY_SNAP_MAX_POWER`] are evaluated
//! at that rational instead, which makes the staircase exact on the endpoints
//! of the Cantor construction (and on every grid of the form `k/3^m`).

use num_bigint::BigUint;

use crate::error::{check_domain, Error, Result};

pub const DEFAULT_CANTOR_DIGITS: u32 = 64;

/// Largest power of three recognised as a ternary-rational denominator.
pub const TERNARY_SNAP_MAX_POWER: u32 = 20;

/// Absolute distance under which an argument is identified with a ternary rational.
pub const TERNARY_SNAP_TOLERANCE: f64 = 2e-15;

const SNAP_DENOMINATOR: u64 = 3u64.pow(TERNARY_SNAP_MAX_POWER);

/// Evaluates the Cantor function at `x` using at most `digits` ternary digits.
pub fn cantor_eval(x: f64, digits: u32) -> Result<f64> {
    if digits == 0 {
        return Err(Error::Precondition(
            "cantor_eval needs at least one ternary digit".into(),
        ));
    }
    let x = check_domain("cantor_eval", x, 0.0, 1.0)?;
    Ok(cantor_unchecked(x, digits))
}

/// `x` must already lie in `[0, 1]`.
pub(crate) fn cantor_unchecked(x: f64, digits: u32) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    if let Some(numerator) = snap_ternary(x) {
        return cantor_of_ternary_rational(numerator, TERNARY_SNAP_MAX_POWER, digits);
    }
    let (mantissa, exponent) = binary_fraction(x);
    if exponent <= 125 {
        cantor_of_dyadic_u128(mantissa, exponent, digits)
    } else {
        cantor_of_dyadic_big(mantissa, exponent, digits)
    }
}

fn snap_ternary(x: f64) -> Option<u64> {
    let scaled = x * SNAP_DENOMINATOR as f64;
    let nearest = scaled.round();
    // The endpoints 0 and 1 are never snapped to: floats near them are
    // resolved to full relative precision already.
    let interior = nearest >= 1.0 && nearest < SNAP_DENOMINATOR as f64;
    if interior && (scaled - nearest).abs() <= TERNARY_SNAP_TOLERANCE * SNAP_DENOMINATOR as f64 {
        Some(nearest as u64)
    } else {
        None
    }
}

/// Cantor value of `numerator / 3^power`, with `0 ≤ numerator ≤ 3^power`.
pub fn cantor_of_ternary_rational(numerator: u64, power: u32, digits: u32) -> f64 {
    let denominator = 3u64.pow(power);
    if numerator >= denominator {
        return 1.0;
    }
    let mut place = denominator;
    let mut rest = numerator;
    let mut acc = 0.0;
    let mut weight = 1.0;
    for _ in 0..power.min(digits) {
        place /= 3;
        let digit = rest / place;
        rest %= place;
        weight *= 0.5;
        match digit {
            1 => return acc + weight,
            2 => acc += weight,
            _ => {}
        }
        if rest == 0 {
            break;
        }
    }
    acc
}

/// Writes a finite `x ∈ (0, 1)` as `mantissa · 2^(−exponent)` with an odd mantissa.
fn binary_fraction(x: f64) -> (u64, u32) {
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as u32;
    let fraction = bits & ((1u64 << 52) - 1);
    let (mut mantissa, mut exponent) = if biased == 0 {
        (fraction, 1074)
    } else {
        (fraction | (1u64 << 52), 1075 - biased)
    };
    let shift = mantissa.trailing_zeros();
    mantissa >>= shift;
    exponent -= shift;
    (mantissa, exponent)
}

fn cantor_of_dyadic_u128(mantissa: u64, exponent: u32, digits: u32) -> f64 {
    let mask = (1u128 << exponent) - 1;
    let mut rest = mantissa as u128;
    let mut acc = 0.0;
    let mut weight = 1.0;
    for _ in 0..digits {
        rest *= 3;
        let digit = rest >> exponent;
        rest &= mask;
        weight *= 0.5;
        match digit {
            1 => return acc + weight,
            2 => acc += weight,
            _ => {}
        }
        if rest == 0 {
            break;
        }
    }
    acc
}

fn cantor_of_dyadic_big(mantissa: u64, exponent: u32, digits: u32) -> f64 {
    let modulus = BigUint::from(1u8) << exponent;
    let three = BigUint::from(3u8);
    let mut rest = BigUint::from(mantissa);
    let mut acc = 0.0;
    let mut weight = 1.0;
    for _ in 0..digits {
        rest *= &three;
        let digit = &rest >> exponent;
        rest %= &modulus;
        weight *= 0.5;
        if digit == BigUint::from(1u8) {
            return acc + weight;
        } else if digit == BigUint::from(2u8) {
            acc += weight;
        }
        if rest.bits() == 0 {
            break;
        }
    }
    acc
}
