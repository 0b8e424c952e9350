//! Statistical kernels: Gaussian tails, Wilson score intervals, and the
//! two-sample Kolmogorov-Smirnov machinery.

use std::f64::consts::SQRT_2;

/// Two-sided 95% normal quantile (97.5th percentile).
pub const Z_95: f64 = 1.959963984540054;

/// P(Z > x) for standard normal Z, accurate to near machine precision.
pub fn gaussian_upper_tail(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// Wilson score interval for `successes` out of `trials` at normal quantile
/// `z`. Returns (low, high).
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    assert!(trials > 0 && successes <= trials);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Sample mean and standard deviation (n-1 denominator).
pub fn mean_and_std(xs: &[f64]) -> (f64, f64) {
    assert!(xs.len() >= 2);
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let ss = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
    (mean, (ss / (n - 1.0)).sqrt())
}

/// Two-sample KS statistic, sup over x of |F_a(x) - F_b(x)|.
/// Both slices must be sorted ascending and free of NaN.
pub fn ks_statistic_sorted(a: &[f64], b: &[f64]) -> f64 {
    let (n, m) = (a.len(), b.len());
    assert!(n > 0 && m > 0);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < n && j < m {
        if a[i] < b[j] {
            i += 1;
        } else if b[j] < a[i] {
            j += 1;
        } else {
            let v = a[i];
            while i < n && a[i] == v {
                i += 1;
            }
            while j < m && b[j] == v {
                j += 1;
            }
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    d
}

/// Asymptotic two-sided p-value for the two-sample statistic `d`, with the
/// Stephens small-sample argument correction.
pub fn ks_p_value(d: f64, n: usize, m: usize) -> f64 {
    let ne = (n as f64 * m as f64) / (n as f64 + m as f64);
    let sqrt_ne = ne.sqrt();
    let lambda = d * (sqrt_ne + 0.12 + 0.11 / sqrt_ne);
    kolmogorov_tail(lambda)
}

/// Q_KS(lambda) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 lambda^2).
fn kolmogorov_tail(lambda: f64) -> f64 {
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=100 {
        let term = (-2.0 * (j as f64) * (j as f64) * lambda * lambda).exp();
        sum += sign * term;
        if term < 1e-18 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn tail_reference_values() {
        assert_relative_eq!(gaussian_upper_tail(0.0), 0.5, max_relative = 1e-15);
        assert_relative_eq!(
            gaussian_upper_tail(1.0),
            0.15865525393145705,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            gaussian_upper_tail(3.0),
            1.3498980316300933e-3,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            gaussian_upper_tail(5.0),
            2.8665157187919391e-7,
            max_relative = 1e-12
        );
    }

    #[test]
    fn wilson_zero_successes() {
        // 0 of 1000 at 95%: upper bound z^2 / (n + z^2)
        let (lo, hi) = wilson_interval(0, 1000, Z_95);
        assert_eq!(lo, 0.0);
        assert_relative_eq!(hi, 3.8267584855551252e-3, max_relative = 1e-12);
    }

    #[test]
    fn wilson_brackets_the_point_estimate() {
        let (lo, hi) = wilson_interval(37, 200, Z_95);
        let p = 37.0 / 200.0;
        assert!(lo < p && p < hi);
        assert!(lo >= 0.0 && hi <= 1.0);
    }

    #[test]
    fn ks_identical_samples() {
        let a = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(ks_statistic_sorted(&a, &a), 0.0);
        assert_eq!(ks_p_value(0.0, 4, 4), 1.0);
    }

    #[test]
    fn ks_disjoint_samples() {
        let a = [1.0, 2.0, 3.0];
        let b = [10.0, 11.0, 12.0];
        assert_eq!(ks_statistic_sorted(&a, &b), 1.0);
    }

    #[test]
    fn ks_interleaved_statistic() {
        // ECDF walk computed by hand: sup difference is 1/5.
        let a = [1.0, 3.0, 5.0, 7.0, 9.0];
        let b = [2.0, 4.0, 6.0, 8.0, 10.0];
        assert_relative_eq!(ks_statistic_sorted(&a, &b), 0.2, max_relative = 1e-15);
    }

    #[test]
    fn ks_ties_across_samples() {
        let a = [1.0, 2.0, 2.0, 3.0];
        let b = [2.0, 3.0, 3.0, 4.0];
        // after the tied run at 2: F_a = 3/4, F_b = 1/4
        assert_relative_eq!(ks_statistic_sorted(&a, &b), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn kolmogorov_tail_reference() {
        // independently computed from the series definition
        assert_relative_eq!(kolmogorov_tail(1.0), 0.26999967167735456, max_relative = 1e-10);
        assert_relative_eq!(kolmogorov_tail(0.5), 0.9639452436648751, max_relative = 1e-10);
        assert!(kolmogorov_tail(4.0) < 1e-13);
    }

    #[test]
    fn mean_std_reference() {
        let (m, s) = mean_and_std(&[1.0, 2.0, 3.0, 4.0]);
        assert_relative_eq!(m, 2.5, max_relative = 1e-15);
        assert_relative_eq!(s, (5.0f64 / 3.0).sqrt(), max_relative = 1e-15);
    }
}
