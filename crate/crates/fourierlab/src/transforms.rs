//! Discrete Fourier analysis: direct DFT, the factorized divide-and-conquer
//! DFT over an arbitrary factor list with operation counting, inversion, and
//! harmonic extraction from time series.

use crate::error::{Error, Result};
use crate::periodic::TAU;
use num_complex::Complex64;
use std::cell::Cell;

/// A factorization plan for a length-`n` transform.
///
/// The op counter tallies complex multiply-adds with a non-unit twiddle
/// factor, the same convention in the direct and factorized paths, so the
/// two are directly comparable.
#[derive(Debug, Clone)]
pub struct DftPlan {
    n: usize,
    factors: Vec<usize>,
    ops: Cell<u64>,
}

impl DftPlan {
    /// Auto plan: repeatedly strip the smallest prime factor. A prime `n`
    /// yields the trivial plan and falls back to the direct transform.
    pub fn auto(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("transform length must be positive"));
        }
        let mut factors = Vec::new();
        let mut rest = n;
        let mut p = 2;
        while p * p <= rest {
            while rest.is_multiple_of(p) {
                factors.push(p);
                rest /= p;
            }
            p += 1;
        }
        if rest > 1 {
            factors.push(rest);
        }
        Ok(DftPlan {
            n,
            factors,
            ops: Cell::new(0),
        })
    }

    /// Plan with an explicit factor list; the product must equal `n` and
    /// every factor must be at least 2 (unless `n` is 1).
    pub fn with_factors(n: usize, factors: Vec<usize>) -> Result<Self> {
        let prod: usize = factors.iter().product();
        if n == 0 || (n > 1 && prod != n) || (n > 1 && factors.iter().any(|&f| f < 2)) {
            return Err(Error::invalid(format!(
                "factor list {factors:?} does not multiply to {n}"
            )));
        }
        Ok(DftPlan {
            n,
            factors,
            ops: Cell::new(0),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    /// Multiply-add count accumulated by the most recent execution.
    pub fn ops(&self) -> u64 {
        self.ops.get()
    }

    pub fn reset_ops(&self) {
        self.ops.set(0);
    }
}

/// Direct DFT: `C_h = (1/N) sum_j f_j e^{-2 pi i h j / N}`.
pub fn dft_forward(samples: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = samples.len();
    if n == 0 {
        return Err(Error::invalid("empty input"));
    }
    Ok(dft_unnormalized(samples, -1.0, None)
        .into_iter()
        .map(|c| c / n as f64)
        .collect())
}

/// Inverse synthesis: `f_j = sum_h C_h e^{2 pi i h j / N}`.
pub fn dft_inverse(coeffs: &[Complex64]) -> Vec<Complex64> {
    if coeffs.is_empty() {
        return Vec::new();
    }
    dft_unnormalized(coeffs, 1.0, None)
}

/// Shared direct kernel. `sign` is the exponent sign; ops (multiply-adds
/// with non-unit twiddle) are tallied into `counter` when present.
fn dft_unnormalized(input: &[Complex64], sign: f64, counter: Option<&Cell<u64>>) -> Vec<Complex64> {
    let n = input.len();
    let mut out = Vec::with_capacity(n);
    let mut ops = 0u64;
    for h in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &f) in input.iter().enumerate() {
            let e = (h * j) % n;
            if e == 0 {
                acc += f;
            } else {
                acc += f * Complex64::from_polar(1.0, sign * TAU * e as f64 / n as f64);
                ops += 1;
            }
        }
        out.push(acc);
    }
    if let Some(c) = counter {
        c.set(c.get() + ops);
    }
    out
}

/// Factorized DFT following the classical two-stage split `N = N1 * N2`:
/// with `j = N2 j1 + j2` and `h = N1 h1 + h2`, the inner stage forms
/// `B[j2][h2]` as length-`N1` transforms of the stride-`N2` subsequences,
/// applies the twiddle `e^{-2 pi i h2 j2 / N}`, and the outer stage is a
/// length-`N2` transform over `j2`, recursively factorized in turn.
///
/// Output matches [`dft_forward`]; the plan's op counter accumulates
/// non-unit-twiddle multiply-adds.
pub fn fft_gauss(samples: &[Complex64], plan: &DftPlan) -> Result<Vec<Complex64>> {
    if samples.len() != plan.n {
        return Err(Error::invalid(format!(
            "plan length {} does not match input length {}",
            plan.n,
            samples.len()
        )));
    }
    plan.reset_ops();
    let out = fft_recursive(samples, &plan.factors, &plan.ops);
    Ok(out.into_iter().map(|c| c / plan.n as f64).collect())
}

fn fft_recursive(input: &[Complex64], factors: &[usize], ops: &Cell<u64>) -> Vec<Complex64> {
    let n = input.len();
    if n <= 1 {
        return input.to_vec();
    }
    if factors.len() <= 1 {
        return dft_unnormalized(input, -1.0, Some(ops));
    }
    let n1 = factors[0];
    let n2 = n / n1;

    // Inner stage: for each residue j2, a length-N1 direct transform of the
    // subsequence f[N2 j1 + j2], then the twiddle in h2.
    // b[j2][h2] = sum_{j1} f[N2 j1 + j2] e^{-2 pi i h2 j1 / N1} * w^{h2 j2}
    let mut b = vec![vec![Complex64::new(0.0, 0.0); n1]; n2];
    let mut tally = 0u64;
    for (j2, row) in b.iter_mut().enumerate() {
        for (h2, slot) in row.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for j1 in 0..n1 {
                let e = (h2 * j1) % n1;
                let f = input[n2 * j1 + j2];
                if e == 0 {
                    acc += f;
                } else {
                    acc += f * Complex64::from_polar(1.0, -TAU * e as f64 / n1 as f64);
                    tally += 1;
                }
            }
            let e = (h2 * j2) % n;
            if e != 0 {
                acc *= Complex64::from_polar(1.0, -TAU * e as f64 / n as f64);
                tally += 1;
            }
            *slot = acc;
        }
    }
    ops.set(ops.get() + tally);

    // Outer stage: for each h2, a length-N2 transform over j2, recursively
    // factorized. X[N1 h1 + h2] = Z_{h2}[h1].
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for h2 in 0..n1 {
        let col: Vec<Complex64> = (0..n2).map(|j2| b[j2][h2]).collect();
        let z = fft_recursive(&col, &factors[1..], ops);
        for (h1, &v) in z.iter().enumerate() {
            out[n1 * h1 + h2] = v;
        }
    }
    out
}

/// Direct DFT with the same op-count instrumentation as [`fft_gauss`],
/// for complexity comparisons.
pub fn dft_forward_counted(samples: &[Complex64]) -> (Vec<Complex64>, u64) {
    let counter = Cell::new(0u64);
    let n = samples.len() as f64;
    let out = dft_unnormalized(samples, -1.0, Some(&counter))
        .into_iter()
        .map(|c| c / n)
        .collect();
    (out, counter.get())
}

/// One extracted harmonic: amplitude estimate and the leakage bound from the
/// other modes.
#[derive(Debug, Clone)]
pub struct HarmonicModel {
    pub frequencies: Vec<f64>,
    pub amplitudes: Vec<Complex64>,
    /// Per-mode bound `sum_{k != m} 2 |amp_k| / (T |w_k - w_m|)`.
    pub error_bounds: Vec<f64>,
}

/// Estimate amplitudes of known angular frequencies from a time series:
/// `amp_m ~ (1/T) int_0^T h(t) e^{-i w_m t} dt` by the trapezoid rule on
/// `nodes` points. Frequencies must be pairwise distinct.
pub fn tide_extract(
    h: impl Fn(f64) -> f64,
    frequencies: &[f64],
    t_end: f64,
    nodes: usize,
) -> Result<HarmonicModel> {
    if t_end <= 0.0 {
        return Err(Error::invalid("averaging horizon must be positive"));
    }
    if nodes < 2 {
        return Err(Error::invalid("need at least 2 quadrature nodes"));
    }
    let mut sorted = frequencies.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if sorted.windows(2).any(|w| (w[1] - w[0]).abs() < 1e-12) {
        return Err(Error::invalid("frequencies must be pairwise distinct"));
    }
    let dt = t_end / nodes as f64;
    let samples: Vec<f64> = (0..=nodes).map(|j| h(j as f64 * dt)).collect();
    let mut amplitudes = Vec::with_capacity(frequencies.len());
    for &w in frequencies {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &s) in samples.iter().enumerate() {
            let weight = if j == 0 || j == nodes { 0.5 } else { 1.0 };
            acc += weight * s * Complex64::from_polar(1.0, -w * j as f64 * dt);
        }
        amplitudes.push(acc * dt / t_end);
    }
    let error_bounds = (0..frequencies.len())
        .map(|m| {
            (0..frequencies.len())
                .filter(|&k| k != m)
                .map(|k| {
                    2.0 * amplitudes[k].norm()
                        / (t_end * (frequencies[k] - frequencies[m]).abs())
                })
                .sum()
        })
        .collect();
    Ok(HarmonicModel {
        frequencies: frequencies.to_vec(),
        amplitudes,
        error_bounds,
    })
}
