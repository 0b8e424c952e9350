//! Quadrature helpers: adaptive Simpson for smooth closures, composite
//! Simpson for tabulated spectra.

/// Integrate a smooth function over [a, b] to the requested relative
/// tolerance (with a small absolute floor for integrals near zero).
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    assert!(b >= a && rel_tol > 0.0);
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    let scale = whole.abs().max(1e-300);
    recurse(&f, a, b, fa, fm, fb, whole, rel_tol * scale, 50)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}

/// Composite Simpson over tabulated (x, y) points, ascending in x.
/// Consecutive interval pairs are integrated by the quadratic through their
/// three points; a leftover final interval falls back to the trapezoid.
/// Exact for quadratics whenever the interval count is even.
pub fn tabulated_integral(points: &[(f64, f64)]) -> f64 {
    assert!(points.len() >= 2, "need at least two points");
    debug_assert!(points.windows(2).all(|w| w[1].0 > w[0].0));
    let mut total = 0.0;
    let mut i = 0;
    while i + 2 < points.len() {
        let (x0, y0) = points[i];
        let (x1, y1) = points[i + 1];
        let (x2, y2) = points[i + 2];
        let h0 = x1 - x0;
        let h1 = x2 - x1;
        let h = h0 + h1;
        total += h / 6.0
            * ((2.0 - h1 / h0) * y0 + (h * h / (h0 * h1)) * y1 + (2.0 - h0 / h1) * y2);
        i += 2;
    }
    if i + 1 < points.len() {
        let (x0, y0) = points[i];
        let (x1, y1) = points[i + 1];
        total += 0.5 * (x1 - x0) * (y0 + y1);
    }
    total
}

/// Integral of x^2 y(x) over a tabulated curve, used by the level-crossing
/// rate's spectral moment.
pub fn tabulated_second_moment(points: &[(f64, f64)]) -> f64 {
    let weighted: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x, x * x * y)).collect();
    tabulated_integral(&weighted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn adaptive_matches_polynomial() {
        let got = adaptive_simpson(|x| 3.0 * x * x, 0.0, 2.0, 1e-12);
        assert_relative_eq!(got, 8.0, max_relative = 1e-12);
    }

    #[test]
    fn adaptive_matches_sine() {
        let got = adaptive_simpson(f64::sin, 0.0, std::f64::consts::PI, 1e-11);
        assert_relative_eq!(got, 2.0, max_relative = 1e-10);
    }

    #[test]
    fn adaptive_handles_empty_interval() {
        assert_eq!(adaptive_simpson(|x| x, 1.0, 1.0, 1e-10), 0.0);
    }

    #[test]
    fn tabulated_is_exact_for_quadratics() {
        let n = 2048;
        let pts: Vec<(f64, f64)> = (0..=n)
            .map(|k| {
                let x = k as f64 / n as f64;
                (x, 1.0 + x + x * x)
            })
            .collect();
        // integral of 1 + x + x^2 on [0,1]
        assert_relative_eq!(tabulated_integral(&pts), 1.0 + 0.5 + 1.0 / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn second_moment_of_flat_curve() {
        let n = 2048;
        let f_max = 0.25;
        let pts: Vec<(f64, f64)> = (0..=n)
            .map(|k| (f_max * k as f64 / n as f64, 2.0))
            .collect();
        // ∫ x^2 * 2 dx = 2 f^3 / 3
        assert_relative_eq!(
            tabulated_second_moment(&pts),
            2.0 * f_max.powi(3) / 3.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn trapezoid_fallback_on_odd_interval_count() {
        let pts = [(0.0, 1.0), (1.0, 1.0), (2.0, 1.0), (3.0, 1.0)];
        assert_relative_eq!(tabulated_integral(&pts), 3.0, max_relative = 1e-14);
    }
}
