//! Exact integer helpers shared by the family formulas.

use crate::error::{Error, Result};

/// `⌊a / b⌋` for `b > 0`.
#[inline]
pub fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// `⌈a / b⌉` for `b > 0`.
#[inline]
pub fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

pub fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Horner evaluation of `coeffs[0]·x^n + ... + coeffs[n]` in checked `i128`.
pub fn eval_poly(coeffs: &[i128], x: i128) -> Result<i128> {
    coeffs.iter().try_fold(0i128, |acc, &c| {
        acc.checked_mul(x)
            .and_then(|v| v.checked_add(c))
            .ok_or(Error::Overflow("polynomial evaluation"))
    })
}

/// Exact division that fails loudly if `den` does not divide `num`.
pub fn exact_div(num: i128, den: i128, what: &str) -> Result<i128> {
    if num % den != 0 {
        return Err(Error::DivisibilityViolation(format!("{what}: {num} is not divisible by {den}")));
    }
    Ok(num / den)
}

pub(crate) fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("128-bit product"))
}

pub(crate) fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow("128-bit sum"))
}

pub(crate) fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow("128-bit difference"))
}
