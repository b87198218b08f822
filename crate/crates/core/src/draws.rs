//! Zero-safe wrappers over the distribution crates, plus the multinomial
//! scatter used by every delay stage.

use rand::Rng;
use rand_distr::{Binomial, Distribution, Gamma, Poisson};

/// Transition probability for a daily rate: `1 - exp(-rate)`.
pub(crate) fn prob_from_rate(rate: f64) -> f64 {
    -(-rate).exp_m1()
}

pub(crate) fn binomial<R: Rng + ?Sized>(n: u64, p: f64, rng: &mut R) -> u64 {
    if n == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    Binomial::new(n, p).expect("p in (0,1)").sample(rng)
}

pub(crate) fn poisson<R: Rng + ?Sized>(lambda: f64, rng: &mut R) -> u64 {
    if lambda <= 0.0 {
        return 0;
    }
    let x: f64 = Poisson::new(lambda).expect("positive finite lambda").sample(rng);
    x as u64
}

/// Failures before `n` successes at success probability `p`, with real-valued
/// `n`, via the gamma–Poisson mixture. Mean is `n * (1 - p) / p`.
pub(crate) fn neg_binomial<R: Rng + ?Sized>(n: f64, p: f64, rng: &mut R) -> u64 {
    if n <= 0.0 || p >= 1.0 {
        return 0;
    }
    let scale = (1.0 - p) / p;
    let lambda = Gamma::new(n, scale).expect("positive gamma parameters").sample(rng);
    poisson(lambda, rng)
}

/// Scatters `n` items over the cells of `pmf`, emitting `(cell, count)`.
///
/// Counts across all emissions sum to exactly `n`; the same cell may be
/// emitted more than once. Small totals draw per-item cells; large totals
/// walk conditional binomials over the cells.
pub(crate) fn multinomial_scatter<R: Rng + ?Sized, F: FnMut(usize, u64)>(
    n: u64,
    pmf: &[f64],
    rng: &mut R,
    mut emit: F,
) {
    if n == 0 || pmf.is_empty() {
        return;
    }
    let last = pmf.len() - 1;
    if n <= 32 {
        for _ in 0..n {
            let mut u: f64 = rng.random();
            let mut cell = last;
            for (k, &p) in pmf.iter().enumerate() {
                if u < p {
                    cell = k;
                    break;
                }
                u -= p;
            }
            emit(cell, 1);
        }
        return;
    }
    let mut rem_n = n;
    let mut rem_p = 1.0f64;
    for (k, &p) in pmf.iter().enumerate() {
        if rem_n == 0 {
            return;
        }
        // Remaining mass can drift below the cell mass; both cases mean
        // everything left lands here.
        let x = if k == last || rem_p <= p {
            rem_n
        } else {
            binomial(rem_n, (p / rem_p).clamp(0.0, 1.0), rng)
        };
        if x > 0 {
            emit(k, x);
        }
        rem_n -= x;
        rem_p -= p;
        if rem_p <= 0.0 && rem_n > 0 {
            emit(last, rem_n);
            return;
        }
    }
    if rem_n > 0 {
        emit(last, rem_n);
    }
}
