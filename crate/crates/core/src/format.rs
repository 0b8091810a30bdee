//! Decimal formatting shared by the CLI and the CSV writers.

/// Formats `v` with 15 significant digits, dropping trailing zeros.
///
/// `1/3` prints as `0.333333333333333`, `7.0` as `7`.
pub fn sig15(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    if !(-20..=15).contains(&magnitude) {
        return format!("{v:.14e}");
    }
    let decimals = (14 - magnitude).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}
