//! Height-selection functions of the general ranker.
//!
//! `f(α) = (α ln 2 − 1) / (1 − 2α ln(2e/α))` and
//! `g(α) = 1 / (1 − 2α ln(2e/α))` on `(α₀, ∞)`, where `α₀` is the root of
//! the shared denominator above 2.

use std::f64::consts::{E, LN_2};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Lower edge of the solver bracket, relative to `α₀`.
const BRACKET_OFFSET: f64 = 1e-9;
/// Upper edge of the solver bracket.
const BRACKET_HIGH: f64 = 1e100;
const MAX_RELATIVE_RESIDUAL: f64 = 1e-6;

/// Root of `func` on `[lo, hi]` by bisection. `func(lo)` and `func(hi)` must
/// have opposite signs (or one must vanish).
pub fn bisect<F>(mut func: F, mut lo: f64, mut hi: f64, tol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut f_lo = func(lo);
    let f_hi = func(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::NoSolution(format!(
            "no sign change on [{lo}, {hi}] (f = {f_lo}, {f_hi})"
        )));
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let f_mid = func(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn denominator(alpha: f64) -> f64 {
    1.0 - 2.0 * alpha * (2.0 * E / alpha).ln()
}

/// `α₀ ≈ 4.910`, solved once to full double precision.
pub fn alpha_zero() -> f64 {
    static ALPHA_ZERO: OnceLock<f64> = OnceLock::new();
    *ALPHA_ZERO.get_or_init(|| {
        // denominator is increasing for α > 2: -3 at 2, +1 at 2e
        bisect(denominator, 2.0, 2.0 * E, 0.0, 200).expect("sign change on [2, 2e]")
    })
}

fn check_domain(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha <= alpha_zero() {
        return Err(Error::Domain(format!(
            "α = {alpha} is outside (α₀, ∞) with α₀ = {}",
            alpha_zero()
        )));
    }
    Ok(())
}

pub fn f_alpha(alpha: f64) -> Result<f64> {
    check_domain(alpha)?;
    Ok((alpha * LN_2 - 1.0) / denominator(alpha))
}

pub fn g_alpha(alpha: f64) -> Result<f64> {
    check_domain(alpha)?;
    Ok(1.0 / denominator(alpha))
}

/// Solves `m / (9 n ln n) = n^{f(α)}` for `α ∈ (α₀, ∞)`.
///
/// `f` is decreasing, so the bisection runs on `ln α` over
/// `[α₀ + 10⁻⁹, 10¹⁰⁰]`; the result is accepted only if it reproduces the
/// target to a relative error of `10⁻⁶`.
pub fn solve_alpha(n: usize, m: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Precondition(format!("n = {n}: need n >= 2")));
    }
    let ln_n = (n as f64).ln();
    let floor = 10.0 * n as f64 * ln_n;
    if (m as f64) < floor {
        return Err(Error::Precondition(format!(
            "m = {m} is below 10 n ln n = {floor:.1}"
        )));
    }
    let target = m as f64 / (9.0 * n as f64 * ln_n);
    let wanted_f = target.ln() / ln_n;

    let lo = (alpha_zero() + BRACKET_OFFSET).ln();
    let hi = BRACKET_HIGH.ln();
    let f_of_log = |u: f64| {
        let alpha = u.exp();
        (alpha * LN_2 - 1.0) / denominator(alpha) - wanted_f
    };
    let u = bisect(f_of_log, lo, hi, 0.0, 400)?;
    let alpha = u.exp();
    let reproduced = ((f_alpha(alpha)? - wanted_f) * ln_n).exp_m1().abs();
    if reproduced > MAX_RELATIVE_RESIDUAL {
        return Err(Error::NoSolution(format!(
            "bisection ended at α = {alpha} with relative residual {reproduced:e}"
        )));
    }
    Ok(alpha)
}
