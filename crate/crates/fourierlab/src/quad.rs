//! Quadrature rules used across the library.
//!
//! Periodic integrands use the composite trapezoid rule on a uniform grid,
//! which is spectrally accurate for smooth periodic functions. Non-periodic
//! integrals get composite Simpson, adaptive Simpson, or Gauss-Legendre.

/// Trapezoid rule for a periodic integrand over one period `[0, p)`.
///
/// Endpoint weights merge, so this is just the mean of `m` uniform samples
/// times the period.
pub fn trapezoid_periodic(f: impl Fn(f64) -> f64, p: f64, m: usize) -> f64 {
    let h = p / m as f64;
    (0..m).map(|j| f(j as f64 * h)).sum::<f64>() * h
}

/// Composite trapezoid on `[a, b]` with `m` panels.
pub fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / m as f64;
    let mut acc = 0.5 * (f(a) + f(b));
    for j in 1..m {
        acc += f(a + j as f64 * h);
    }
    acc * h
}

/// Composite Simpson on `[a, b]` with `m` panels (`m` must be even).
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    assert!(m >= 2 && m.is_multiple_of(2), "simpson needs an even panel count");
    let h = (b - a) / m as f64;
    let mut acc = f(a) + f(b);
    for j in 1..m {
        let w = if j % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + j as f64 * h);
    }
    acc * h / 3.0
}

/// Adaptive Simpson with absolute tolerance `tol`.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson3(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
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
        let left = simpson3(fa, flm, fm, a, m);
        let right = simpson3(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson3(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Gauss-Legendre quadrature on `[a, b]` with `n` nodes.
///
/// Nodes are the roots of the Legendre polynomial `P_n`, found by Newton
/// iteration from the Chebyshev initial guess.
pub fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let (nodes, weights) = gauss_legendre_rule(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    nodes
        .iter()
        .zip(&weights)
        .map(|(&x, &w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev guess for the i-th root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_value_deriv(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_value_deriv(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_value_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn trapezoid_periodic_is_spectral_on_smooth() {
        // exp(cos x) over [0, 2pi] equals 2*pi*I_0(1)
        let v = trapezoid_periodic(|x| x.cos().exp(), 2.0 * PI, 32);
        let i0 = 1.2660658777520084; // I_0(1)
        assert!((v - 2.0 * PI * i0).abs() < 1e-13);
    }

    #[test]
    fn simpson_matches_polynomial() {
        let v = simpson(|x| x * x * x, 0.0, 1.0, 2);
        assert!((v - 0.25).abs() < 1e-15);
    }

    #[test]
    fn adaptive_simpson_sin() {
        let v = adaptive_simpson(&|x: f64| x.sin(), 0.0, PI, 1e-13);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn gauss_legendre_exact_for_degree_2n_minus_1() {
        let v = gauss_legendre(|x| x.powi(9) + x.powi(4), -1.0, 1.0, 5);
        assert!((v - 0.4).abs() < 1e-14);
    }

    #[test]
    fn gauss_and_simpson_agree_on_sinc() {
        let f = |t: f64| if t == 0.0 { 1.0 } else { t.sin() / t };
        let g = gauss_legendre(f, 0.0, PI, 64);
        let s = simpson(f, 0.0, PI, 4096);
        assert!((g - s).abs() < 1e-12);
    }
}
