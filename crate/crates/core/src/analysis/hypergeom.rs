use std::io::Write;

use serde::Serialize;
use statrs::function::factorial::ln_factorial;

use crate::error::{Error, Result};

/// Drawing `t` of `n` balls without replacement when `r` are red; `k` is the
/// number of red balls drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HypergeomParams {
    pub n: u64,
    pub r: u64,
    pub t: u64,
    pub k: u64,
}

impl HypergeomParams {
    pub fn new(n: u64, r: u64, t: u64, k: u64) -> Result<Self> {
        if r > n || t > n || k > t {
            return Err(Error::Precondition(format!(
                "need 0 <= k <= t <= n and r <= n, got n={n} r={r} t={t} k={k}"
            )));
        }
        Ok(Self { n, r, t, k })
    }
}

fn ln_choose(a: u64, b: u64) -> f64 {
    ln_factorial(a) - ln_factorial(b) - ln_factorial(a - b)
}

/// `C(r, k)·C(n−r, t−k) / C(n, t)`, evaluated in log space.
pub fn hypergeom_pmf(p: HypergeomParams) -> f64 {
    let HypergeomParams { n, r, t, k } = p;
    if k > r || t - k > n - r {
        return 0.0;
    }
    (ln_choose(r, k) + ln_choose(n - r, t - k) - ln_choose(n, t)).exp()
}

/// Most likely red count and its probability. Ties go to the smaller `k`.
pub fn max_pmf_over_k(n: u64, r: u64, t: u64) -> Result<(u64, f64)> {
    if r > n || t > n {
        return Err(Error::Precondition(format!("need r, t <= n, got n={n} r={r} t={t}")));
    }
    let lo = t.saturating_sub(n - r);
    let hi = t.min(r);
    let mut best = (lo, f64::NEG_INFINITY);
    for k in lo..=hi {
        let pk = hypergeom_pmf(HypergeomParams { n, r, t, k });
        if pk > best.1 {
            best = (k, pk);
        }
    }
    Ok(best)
}

/// One row of an anti-concentration scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AntiConcentrationRow {
    pub n: u64,
    pub r: u64,
    pub t: u64,
    pub k_star: u64,
    pub p_star: f64,
    pub sqrt_n_p_star: f64,
}

/// For each `n`, sets `r = ⌊ρ_r n⌋`, `t = ⌊ρ_t n⌋` and reports
/// `√n · max_k Pr[k red]`. Requires `t <= min(r, n − r)`.
pub fn anti_concentration_scan(sizes: &[u64], rho_r: f64, rho_t: f64) -> Result<Vec<AntiConcentrationRow>> {
    for rho in [rho_r, rho_t] {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::InvalidFraction(rho));
        }
    }
    sizes
        .iter()
        .map(|&n| {
            let r = (rho_r * n as f64).floor() as u64;
            let t = (rho_t * n as f64).floor() as u64;
            if t > r.min(n - r) {
                return Err(Error::Precondition(format!(
                    "n = {n}: t = {t} exceeds min(r, n - r) = {}",
                    r.min(n - r)
                )));
            }
            let (k_star, p_star) = max_pmf_over_k(n, r, t)?;
            Ok(AntiConcentrationRow {
                n,
                r,
                t,
                k_star,
                p_star,
                sqrt_n_p_star: (n as f64).sqrt() * p_star,
            })
        })
        .collect()
}

/// Writes `n,r,t,k_star,p_star,sqrt_n_p_star` rows.
pub fn write_scan_csv<W: Write>(mut out: W, rows: &[AntiConcentrationRow]) -> std::io::Result<()> {
    writeln!(out, "n,r,t,k_star,p_star,sqrt_n_p_star")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{:e},{}",
            row.n, row.r, row.t, row.k_star, row.p_star, row.sqrt_n_p_star
        )?;
    }
    Ok(())
}
