//! Derivative-free bounded minimization (Nelder–Mead with box clipping).
//!
//! The smoothing-model likelihood surface is cheap to evaluate, low
//! dimensional (at most six free coordinates), and non-smooth at the
//! admissibility boundary, which is exactly the regime where a clipped
//! simplex search is the pragmatic choice. Coupled constraints (e.g. one
//! coordinate bounded by another) are handled by the objective returning
//! `f64::INFINITY` outside the feasible region.

/// Minimizes `f` over the box `[lower, upper]`, starting from `x0`
/// (already inside the box). Returns the best point and its value.
pub fn nelder_mead<F>(
    mut f: F,
    x0: &[f64],
    lower: &[f64],
    upper: &[f64],
    max_iter: usize,
) -> (Vec<f64>, f64)
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    assert_eq!(lower.len(), n);
    assert_eq!(upper.len(), n);
    assert!(n > 0, "cannot optimize over zero coordinates");

    let clip = |x: &mut [f64]| {
        for i in 0..n {
            x[i] = x[i].clamp(lower[i], upper[i]);
        }
    };

    // Initial simplex: perturb each coordinate by 5% of its box width,
    // flipping direction when that would leave the box.
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        let step = 0.05 * (upper[i] - lower[i]).max(1e-8);
        v[i] = if v[i] + step <= upper[i] {
            v[i] + step
        } else {
            v[i] - step
        };
        clip(&mut v);
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    for _ in 0..max_iter {
        // Order ascending by value; index 0 best, index n worst.
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(std::cmp::Ordering::Equal));
        let reordered: Vec<Vec<f64>> = order.iter().map(|&i| simplex[i].clone()).collect();
        let revalues: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        simplex = reordered;
        values = revalues;

        let spread = values[n] - values[0];
        if spread.is_finite() && spread < 1e-10 * (1.0 + values[0].abs()) {
            break;
        }

        // Centroid of all but the worst vertex.
        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for i in 0..n {
                centroid[i] += v[i] / n as f64;
            }
        }

        let worst = simplex[n].clone();
        let point_along = |t: f64| {
            let mut p: Vec<f64> = (0..n)
                .map(|i| centroid[i] + t * (centroid[i] - worst[i]))
                .collect();
            clip(&mut p);
            p
        };

        let reflected = point_along(1.0);
        let f_reflected = f(&reflected);

        if f_reflected < values[0] {
            let expanded = point_along(2.0);
            let f_expanded = f(&expanded);
            if f_expanded < f_reflected {
                simplex[n] = expanded;
                values[n] = f_expanded;
            } else {
                simplex[n] = reflected;
                values[n] = f_reflected;
            }
            continue;
        }
        if f_reflected < values[n - 1] {
            simplex[n] = reflected;
            values[n] = f_reflected;
            continue;
        }

        let contracted = if f_reflected < values[n] {
            point_along(0.5)
        } else {
            point_along(-0.5)
        };
        let f_contracted = f(&contracted);
        if f_contracted < values[n].min(f_reflected) {
            simplex[n] = contracted;
            values[n] = f_contracted;
            continue;
        }

        // Shrink toward the best vertex.
        for k in 1..=n {
            let mut v: Vec<f64> = (0..n)
                .map(|i| simplex[0][i] + 0.5 * (simplex[k][i] - simplex[0][i]))
                .collect();
            clip(&mut v);
            values[k] = f(&v);
            simplex[k] = v;
        }
    }

    let best = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
        .map(|(i, _)| i)
        .unwrap_or(0);
    (simplex[best].clone(), values[best])
}
