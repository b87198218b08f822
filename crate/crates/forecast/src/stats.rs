//! Small numeric helpers shared by the forecasting models and metrics.

/// Linear-interpolation sample quantile (the common spreadsheet/NumPy
/// default). `sorted` must be ascending and non-empty; `q` in [0, 1].
///
/// With `h = (n - 1) q`, returns `x[floor(h)] + frac(h) * (x[floor(h)+1] -
/// x[floor(h)])`.
pub fn quantile_type7(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty sample");
    assert!((0.0..=1.0).contains(&q), "quantile level outside [0, 1]");
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * q;
    let lo = h.floor() as usize;
    if lo + 1 >= n {
        return sorted[n - 1];
    }
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
}

/// Inverse empirical CDF: the smallest sample value `x` with
/// `F_n(x) >= q`. `sorted` must be ascending and non-empty; `q` in (0, 1].
///
/// Unlike the interpolating estimator this always returns an observed
/// sample point, which is what makes it the minimizer of the pinball loss
/// over the empirical distribution at every level.
pub fn empirical_quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty sample");
    assert!(q > 0.0 && q <= 1.0, "quantile level outside (0, 1]");
    let n = sorted.len();
    let idx = (q * n as f64).ceil() as usize;
    sorted[idx.saturating_sub(1).min(n - 1)]
}

/// Sorts a copy of `values` ascending (NaN-free input assumed).
pub fn sorted_copy(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("non-finite value in sample"));
    v
}

/// Arithmetic mean; 0.0 for an empty slice.
pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

/// Ordinary least-squares line fit `y ~ intercept + slope * t` over
/// `t = 0..n`. Returns `(intercept, slope)`; slope is 0 for n < 2.
pub fn linear_fit(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    if n == 1 {
        return (values[0], 0.0);
    }
    let tbar = (n - 1) as f64 / 2.0;
    let ybar = mean(values);
    let mut stt = 0.0;
    let mut sty = 0.0;
    for (t, &y) in values.iter().enumerate() {
        let dt = t as f64 - tbar;
        stt += dt * dt;
        sty += dt * (y - ybar);
    }
    let slope = sty / stt;
    (ybar - slope * tbar, slope)
}
