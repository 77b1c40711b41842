//! Small numeric helpers shared across modules.

/// Interprets `x` as an exact integer if it is one (and small enough for
/// `powi`), otherwise `None`.
pub(crate) fn as_integer(x: f64) -> Option<i32> {
    if x.fract() == 0.0 && x.abs() <= i32::MAX as f64 {
        Some(x as i32)
    } else {
        None
    }
}

/// Real power with sign-correct integer exponentiation.
///
/// Positive bases go through `powf`. Negative (or zero) bases are only
/// admitted for integer exponents; `None` signals a negative base raised
/// to a non-integer power, or `0^k` with `k < 0`.
pub(crate) fn real_pow(base: f64, exponent: f64) -> Option<f64> {
    if base > 0.0 {
        return Some(base.powf(exponent));
    }
    let k = as_integer(exponent)?;
    if base == 0.0 && k < 0 {
        return None;
    }
    Some(base.powi(k))
}

/// Relative closeness with absolute floor 1: |a - b| <= tol * max(1, |a|, |b|).
#[cfg(test)]
pub(crate) fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1.0_f64.max(a.abs()).max(b.abs())
}
