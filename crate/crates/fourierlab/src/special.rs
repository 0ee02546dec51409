//! Special functions: Bessel J, Chebyshev and Legendre polynomials, the Haar
//! system, the wrapped Gaussian, and partial sums/products of the classical
//! constants.

use crate::error::{Error, Result};
use crate::periodic::TAU;
use std::f64::consts::PI;

/// Largest |x| accepted by the power-series evaluation. Beyond this the
/// alternating series loses too many digits to cancellation.
pub const BESSEL_SERIES_REGIME: f64 = 50.0;

/// Bessel function of the first kind by its power series,
/// `J_k(x) = sum_j (-1)^j (x/2)^{2j+|k|} / (j! (j+|k|)!)`,
/// truncated adaptively once the next term falls below 1e-16 of the
/// accumulated value. Negative orders use `J_{-k} = (-1)^k J_k`.
pub fn bessel_j(k: i64, x: f64) -> Result<f64> {
    if x.abs() > BESSEL_SERIES_REGIME {
        return Err(Error::invalid(format!(
            "|x| = {} is outside the series regime |x| <= {BESSEL_SERIES_REGIME}",
            x.abs()
        )));
    }
    let ka = k.unsigned_abs();
    let sign = if k < 0 && k % 2 != 0 { -1.0 } else { 1.0 };
    let half = 0.5 * x;
    // leading term (x/2)^|k| / |k|!
    let mut term = 1.0;
    for j in 1..=ka {
        term *= half / j as f64;
    }
    let mut acc = term;
    let mut j = 0u64;
    loop {
        j += 1;
        term *= -half * half / (j as f64 * (j + ka) as f64);
        acc += term;
        if term.abs() < 1e-16 * acc.abs().max(1e-30) && j > half.abs() as u64 {
            break;
        }
        if j > 300 {
            break;
        }
    }
    Ok(sign * acc)
}

/// First zeros of `J_0` by bisection. `J_0` changes sign in every bracket
/// `(m pi, (m+1) pi)` for small m, which provides the initial intervals.
pub fn j0_zeros(count: usize) -> Result<Vec<f64>> {
    if count > 10 {
        return Err(Error::invalid("at most 10 zeros supported"));
    }
    let f = |x: f64| bessel_j(0, x).expect("inside regime");
    let mut zeros = Vec::with_capacity(count);
    for m in 0..count {
        let mut a = m as f64 * PI;
        let b = a + PI;
        // the first bracket starts away from 0 where J_0 > 0
        if m == 0 {
            a = 1e-9;
        }
        let (fa, fb) = (f(a), f(b));
        if fa.signum() == fb.signum() {
            return Err(Error::Numerical(format!(
                "no sign change in bracket ({a}, {b})"
            )));
        }
        let mut lo = a;
        let mut hi = b;
        let mut flo = fa;
        while hi - lo > 1e-13 {
            let mid = 0.5 * (lo + hi);
            let fm = f(mid);
            if fm.signum() == flo.signum() {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        zeros.push(0.5 * (lo + hi));
    }
    Ok(zeros)
}

/// Chebyshev polynomial of the first kind, by the three-branch closed form:
/// `cosh(m arccosh x)` for `x > 1`, `cos(m arccos x)` on `[-1, 1]`, and
/// `(-1)^m cosh(m arccosh(-x))` for `x < -1`.
pub fn chebyshev_t(m: u32, x: f64) -> f64 {
    let mf = m as f64;
    if x > 1.0 {
        (mf * x.acosh()).cosh()
    } else if x >= -1.0 {
        (mf * x.acos()).cos()
    } else {
        let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * (mf * (-x).acosh()).cosh()
    }
}

/// Same polynomial by the recurrence `T_{m+1} = 2x T_m - T_{m-1}`, used as a
/// cross-check of the closed form.
pub fn chebyshev_t_recurrence(m: u32, x: f64) -> f64 {
    match m {
        0 => 1.0,
        1 => x,
        _ => {
            let mut t0 = 1.0;
            let mut t1 = x;
            for _ in 1..m {
                let t2 = 2.0 * x * t1 - t0;
                t0 = t1;
                t1 = t2;
            }
            t1
        }
    }
}

/// Integer polynomial coefficients (ascending powers) of `d^k/dx^k (x^2-1)^k`,
/// computed exactly; `k <= 12` keeps everything inside i128.
fn rodrigues_poly(k: usize) -> Vec<i128> {
    // (x^2 - 1)^k by binomial expansion
    let mut poly = vec![0i128; 2 * k + 1];
    let mut binom = 1i128;
    for j in 0..=k {
        // coefficient of x^{2j}: C(k, j) * (-1)^{k - j}
        let sign = if (k - j).is_multiple_of(2) { 1 } else { -1 };
        poly[2 * j] = sign * binom;
        binom = binom * (k - j) as i128 / (j + 1) as i128;
    }
    // differentiate k times
    for _ in 0..k {
        for p in 1..poly.len() {
            poly[p - 1] = poly[p] * p as i128;
        }
        let l = poly.len();
        poly[l - 1] = 0;
    }
    poly.truncate(k + 1);
    poly
}

/// Orthonormal systems on their natural intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthonormalSystem {
    /// Normalized Legendre polynomial of degree `k` on `[-1, 1]`,
    /// `sqrt(2k+1) / (2^{k+1/2} k!) d^k/dx^k (x^2-1)^k`.
    Legendre { k: usize },
    /// Haar function `h_{k,n}` on `[0, 1]`, `n >= 0`, `1 <= k <= 2^n`.
    Haar { k: usize, n: u32 },
}

pub fn orthonormal_system_eval(system: OrthonormalSystem, x: f64) -> Result<f64> {
    match system {
        OrthonormalSystem::Legendre { k } => {
            if k > 12 {
                return Err(Error::invalid(
                    "legendre degree capped at 12 (exact integer coefficients)",
                ));
            }
            let poly = rodrigues_poly(k);
            let mut val = 0.0;
            for &c in poly.iter().rev() {
                val = val * x + c as f64;
            }
            let mut fact = 1.0;
            for j in 1..=k {
                fact *= j as f64;
            }
            let norm = ((2 * k + 1) as f64).sqrt() / (2f64.powf(k as f64 + 0.5) * fact);
            Ok(norm * val)
        }
        OrthonormalSystem::Haar { k, n } => {
            let blocks = 1usize << n;
            if k < 1 || k > blocks {
                return Err(Error::invalid(format!(
                    "haar index k={k} outside 1..=2^{n}"
                )));
            }
            let scale = 2f64.powf(n as f64 / 2.0);
            let lo = (k - 1) as f64 / blocks as f64;
            let mid = lo + 0.5 / blocks as f64;
            let hi = k as f64 / blocks as f64;
            Ok(if x > lo && x < mid {
                scale
            } else if x > mid && x < hi {
                -scale
            } else {
                0.0
            })
        }
    }
}

/// Truncation used by the wrapped-Gaussian series; both representations are
/// far below 1e-16 beyond it.
pub const WRAPPED_TRUNCATION: i64 = 8;

/// Wrapped standard Gaussian on the unit circle, by the lattice sum
/// `(1/sqrt(2 pi)) sum_k e^{-(x+k)^2/2}`.
pub fn wrapped_gaussian_pdf(x: f64) -> f64 {
    let u = x - x.round();
    let norm = 1.0 / TAU.sqrt();
    (-WRAPPED_TRUNCATION..=WRAPPED_TRUNCATION)
        .map(|k| {
            let d = u + k as f64;
            norm * (-0.5 * d * d).exp()
        })
        .sum()
}

/// The same density by its Fourier expansion
/// `1 + 2 sum_{m >= 1} e^{-2 pi^2 m^2} cos(2 pi m x)`.
pub fn wrapped_gaussian_pdf_frequency(x: f64) -> f64 {
    1.0 + 2.0
        * (1..=WRAPPED_TRUNCATION)
            .map(|m| (-2.0 * PI * PI * (m * m) as f64).exp() * (TAU * m as f64 * x).cos())
            .sum::<f64>()
}

/// Fourier coefficient of the wrapped Gaussian: `e^{-2 pi^2 m^2}`.
pub fn wrapped_gaussian_coefficient(m: i64) -> f64 {
    (-2.0 * PI * PI * (m * m) as f64).exp()
}

/// CDF of the wrapped Gaussian on `[0, 1]`:
/// `F(x) = x + sum_{m >= 1} e^{-2 pi^2 m^2} sin(2 pi m x) / (pi m)`.
pub fn wrapped_gaussian_cdf(x: f64) -> f64 {
    x + (1..=WRAPPED_TRUNCATION)
        .map(|m| wrapped_gaussian_coefficient(m) * (TAU * m as f64 * x).sin() / (PI * m as f64))
        .sum::<f64>()
}

/// `sum_{k=1}^{K} 1/k^2`, converging to pi^2/6.
pub fn zeta2_partial(k: u64) -> f64 {
    // sum small-to-large for accuracy
    (1..=k).rev().map(|j| 1.0 / (j * j) as f64).sum()
}

/// `sum_{k=1}^{K} 1/k^4`, converging to pi^4/90.
pub fn zeta4_partial(k: u64) -> f64 {
    (1..=k).rev().map(|j| 1.0 / ((j * j) as f64 * (j * j) as f64)).sum()
}

/// Wallis product `prod_{j=1}^{n} 4j^2 / (4j^2 - 1)`, converging to pi/2.
pub fn wallis_partial(n: u64) -> f64 {
    (1..=n)
        .map(|j| {
            let s = 4.0 * (j * j) as f64;
            s / (s - 1.0)
        })
        .product()
}

/// Partial Euler sine product `prod_{j=1}^{n} (1 - z^2/j^2)`, converging to
/// `sin(pi z) / (pi z)`.
pub fn sine_product_partial(z: f64, n: u64) -> f64 {
    (1..=n).map(|j| 1.0 - z * z / (j * j) as f64).product()
}

/// Stirling ratio `sqrt(2 pi n) (n/e)^n / n!`, converging to 1.
pub fn stirling_ratio(n: u64) -> f64 {
    let nf = n as f64;
    let mut log_fact = 0.0;
    for j in 1..=n {
        log_fact += (j as f64).ln();
    }
    ((TAU * nf).sqrt().ln() + nf * (nf.ln() - 1.0) - log_fact).exp()
}
