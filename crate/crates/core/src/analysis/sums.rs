/// `Σ_{t=1}^{n−√n} (t / (n − t))²`, with the upper limit `⌊n − √n⌋`.
pub fn squared_ratio_sum(n: u64) -> f64 {
    let root = (n as f64).sqrt();
    let upper = (n as f64 - root).floor() as u64;
    (1..=upper)
        .map(|t| {
            let ratio = t as f64 / (n - t) as f64;
            ratio * ratio
        })
        .sum()
}

/// [`squared_ratio_sum`] divided by `n^{3/2}`; stays bounded as `n` grows.
pub fn squared_ratio_sum_scaled(n: u64) -> f64 {
    squared_ratio_sum(n) / (n as f64).powf(1.5)
}
