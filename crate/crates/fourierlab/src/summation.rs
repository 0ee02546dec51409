//! Reconstruction from coefficients: partial sums, Cesàro and Abel means,
//! conjugate sums, error diagnostics, and Gibbs-overshoot measurement.

use crate::error::{Error, Result};
use crate::periodic::{CoefficientTable, PeriodicSignal, Waveform, TAU};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Imaginary residue tolerated when summing a conjugate-symmetric table.
/// Anything larger signals a corrupted table.
const IMAG_RESIDUE: f64 = 1e-12;

fn real_part_checked(z: Complex64, what: &str) -> Result<f64> {
    let scale = z.re.abs().max(1.0);
    if z.im.abs() > IMAG_RESIDUE * scale {
        return Err(Error::Numerical(format!(
            "{what}: imaginary residue {} exceeds tolerance; table is not conjugate-symmetric",
            z.im
        )));
    }
    Ok(z.re)
}

/// `S_N(x) = sum_{|k| <= N} c_k e^{2 pi i k x}`.
pub fn partial_sum(t: &CoefficientTable, n: usize, x: f64) -> Result<f64> {
    if n > t.kmax() {
        return Err(Error::OrderExceedsTable {
            requested: n,
            available: t.kmax(),
        });
    }
    let s: Complex64 = (-(n as i64)..=n as i64)
        .map(|k| t.get(k) * Complex64::from_polar(1.0, TAU * k as f64 * x))
        .sum();
    real_part_checked(s, "partial_sum")
}

/// Fejér/Cesàro mean `sigma_N(x) = sum_{|k| < N} (1 - |k|/N) c_k e^{2 pi i k x}`.
pub fn cesaro_mean(t: &CoefficientTable, n: usize, x: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::invalid("cesaro_mean needs N >= 1"));
    }
    if n > t.kmax() + 1 {
        return Err(Error::OrderExceedsTable {
            requested: n,
            available: t.kmax() + 1,
        });
    }
    let s: Complex64 = (-(n as i64 - 1)..=n as i64 - 1)
        .map(|k| {
            let w = 1.0 - k.unsigned_abs() as f64 / n as f64;
            w * t.get(k) * Complex64::from_polar(1.0, TAU * k as f64 * x)
        })
        .sum();
    real_part_checked(s, "cesaro_mean")
}

/// Abel-Poisson mean `sum r^{|k|} c_k e^{2 pi i k x}`, truncated where
/// `r^k < 1e-16`.
pub fn abel_mean(t: &CoefficientTable, r: f64, x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::invalid("abel_mean needs r in [0, 1)"));
    }
    let kcut = if r == 0.0 {
        0
    } else {
        ((-16.0 * std::f64::consts::LN_10 / r.ln()).ceil() as usize).min(t.kmax())
    };
    let s: Complex64 = (-(kcut as i64)..=kcut as i64)
        .map(|k| {
            r.powi(k.unsigned_abs() as i32) * t.get(k)
                * Complex64::from_polar(1.0, TAU * k as f64 * x)
        })
        .sum();
    real_part_checked(s, "abel_mean")
}

/// Conjugate trigonometric polynomial `-i sum sign(k) c_k e^{2 pi i k x}`.
pub fn conjugate_sum(t: &CoefficientTable, n: usize, x: f64) -> Result<f64> {
    if n > t.kmax() {
        return Err(Error::OrderExceedsTable {
            requested: n,
            available: t.kmax(),
        });
    }
    let s: Complex64 = (-(n as i64)..=n as i64)
        .map(|k| {
            let sign = (k.signum()) as f64;
            Complex64::new(0.0, -sign) * t.get(k) * Complex64::from_polar(1.0, TAU * k as f64 * x)
        })
        .sum();
    real_part_checked(s, "conjugate_sum")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummationMethod {
    PartialSum,
    Cesaro,
    Abel,
}

/// Per-order sup and L2 errors of a summation method against the signal,
/// measured on a uniform grid.
#[derive(Debug, Clone)]
pub struct SummationReport {
    pub method: SummationMethod,
    pub orders: Vec<usize>,
    pub sup_error: Vec<f64>,
    pub l2_error: Vec<f64>,
}

/// Grid used for norm measurement; resolves sums of degree up to 512
/// without aliasing.
pub const NORM_GRID: usize = 4096;

pub fn error_norms(
    signal: &PeriodicSignal,
    t: &CoefficientTable,
    method: SummationMethod,
    orders: &[usize],
) -> Result<SummationReport> {
    let mut sup_error = Vec::with_capacity(orders.len());
    let mut l2_error = Vec::with_capacity(orders.len());
    for &n in orders {
        let mut sup: f64 = 0.0;
        let mut l2 = 0.0;
        for j in 0..NORM_GRID {
            let x = j as f64 / NORM_GRID as f64;
            let approx = match method {
                SummationMethod::PartialSum => partial_sum(t, n, x)?,
                SummationMethod::Cesaro => cesaro_mean(t, n, x)?,
                // interpret order N as radius r = 1 - 1/N
                SummationMethod::Abel => abel_mean(t, 1.0 - 1.0 / n.max(1) as f64, x)?,
            };
            let e = (approx - signal.eval(x)).abs();
            sup = sup.max(e);
            l2 += e * e;
        }
        sup_error.push(sup);
        l2_error.push((l2 / NORM_GRID as f64).sqrt());
    }
    Ok(SummationReport {
        method,
        orders: orders.to_vec(),
        sup_error,
        l2_error,
    })
}

/// Overshoot diagnostics at a jump of a catalog waveform.
#[derive(Debug, Clone, Copy)]
pub struct GibbsReport {
    pub jump_location: f64,
    pub jump_size: f64,
    pub measured_overshoot: f64,
    pub reference_overshoot: f64,
    pub probe_value: f64,
}

/// Number of probes in the overshoot search window.
const GIBBS_PROBES: usize = 10_000;

/// Measure the overshoot of `S_N` just past the first jump of `entry`.
///
/// The search window is `(x0, x0 + 5/(2N))`: the first local maximum of the
/// partial sum sits near `x0 + 1/(2N)`, so the window covers it with margin.
/// The overshoot is measured in the direction of the jump.
pub fn gibbs_measure(entry: Waveform, n: usize) -> Result<GibbsReport> {
    let jumps = entry.jumps();
    let (x0, sigma) = *jumps
        .first()
        .ok_or_else(|| Error::invalid("gibbs_measure requires a waveform with jumps"))?;
    if n < 50 {
        return Err(Error::invalid("gibbs_measure needs N >= 50"));
    }
    let t = entry.exact_table(n);
    let signal = PeriodicSignal::catalog(entry);
    let dir = sigma.signum();
    let mut measured: f64 = f64::NEG_INFINITY;
    for j in 1..=GIBBS_PROBES {
        let x = x0 + j as f64 / GIBBS_PROBES as f64 * 5.0 / (2.0 * n as f64);
        let over = dir * (partial_sum(&t, n, x)? - signal.eval(x));
        measured = measured.max(over);
    }
    let consts = gibbs_constants();
    Ok(GibbsReport {
        jump_location: x0,
        jump_size: sigma,
        measured_overshoot: measured,
        reference_overshoot: sigma.abs() * consts.lambda,
        probe_value: partial_sum(&t, n, x0 + 1.0 / (2.0 * n as f64))?,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct GibbsConstants {
    /// `(2/pi) int_0^pi sin(t)/t dt`, about 1.17898.
    pub g: f64,
    /// `G/2 - 1/2`, the per-unit-jump overshoot, about 0.0894899.
    pub lambda: f64,
}

pub fn gibbs_constants() -> GibbsConstants {
    let sinc = |t: f64| if t == 0.0 { 1.0 } else { t.sin() / t };
    let g = 2.0 / PI * crate::quad::adaptive_simpson(&sinc, 0.0, PI, 1e-13);
    GibbsConstants {
        g,
        lambda: 0.5 * g - 0.5,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{kernel_eval, KernelSpec};
    use crate::periodic::{convert_exp_to_trig, table_numeric, CoefficientTable};

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn partial_sum_examples() {
        let sq = Waveform::Square.exact_table(16);
        close(partial_sum(&sq, 1, 0.25).unwrap(), 4.0 / PI, 1e-14);
        for n in [0, 3, 16] {
            close(partial_sum(&sq, n, 0.0).unwrap(), 0.0, 1e-14);
        }
        let par = Waveform::ParabolaX1mx.exact_table(4);
        close(partial_sum(&par, 0, 0.77).unwrap(), 1.0 / 6.0, 1e-15);
        assert!(partial_sum(&sq, 17, 0.0).is_err());
    }

    #[test]
    fn partial_sum_rejects_corrupt_table() {
        let mut t = CoefficientTable::zeros(2, true);
        t.set(1, Complex64::new(0.0, 1.0)); // no conjugate partner
        assert!(partial_sum(&t, 2, 0.3).is_err());
    }

    #[test]
    fn cesaro_examples() {
        let sq = Waveform::Square.exact_table(200);
        let mut sup: f64 = 0.0;
        for j in 0..2048 {
            sup = sup.max(cesaro_mean(&sq, 200, j as f64 / 2048.0).unwrap().abs());
        }
        assert!(sup <= 1.0 + 1e-9, "sup {sup}");

        let con = Waveform::Constant.exact_table(4);
        for n in 1..=5 {
            close(cesaro_mean(&con, n, 0.3).unwrap(), 1.0, 1e-14);
        }

        // equals the average of S_0..S_{N-1}
        let t = Waveform::Sawtooth.exact_table(12);
        for &x in &[0.1, 0.37, 0.9] {
            let n = 9;
            let avg = (0..n)
                .map(|m| partial_sum(&t, m, x).unwrap())
                .sum::<f64>()
                / n as f64;
            close(cesaro_mean(&t, n, x).unwrap(), avg, 1e-12);
        }
        assert!(cesaro_mean(&t, 0, 0.0).is_err());
    }

    #[test]
    fn abel_examples() {
        let sq = Waveform::Square.exact_table(4000);
        close(abel_mean(&sq, 0.0, 0.9).unwrap(), 0.0, 1e-15);
        let v = abel_mean(&sq, 0.99, 0.25).unwrap();
        assert!((v - 1.0).abs() < 5e-2, "abel at r=0.99: {v}");
        assert!(abel_mean(&sq, 1.0, 0.0).is_err());

        // equals the Poisson integral for smooth signals
        let f = PeriodicSignal::periodic_extend(|x| (TAU * x).cos().exp(), 1.0).unwrap();
        let t = table_numeric(&f, 32, 512).unwrap();
        let r = 0.5;
        for &x in &[0.0, 0.3, 0.71] {
            let poisson = crate::quad::trapezoid_periodic(
                |y| f.eval(x - y) * kernel_eval(KernelSpec::Poisson(r), y),
                1.0,
                2048,
            );
            close(abel_mean(&t, r, x).unwrap(), poisson, 1e-8);
        }
    }

    #[test]
    fn conjugate_sum_examples() {
        // conjugate of cos(2 pi x) is sin(2 pi x)
        let t = Waveform::Cosine.exact_table(2);
        for &x in &[0.0, 0.2, 0.55] {
            close(conjugate_sum(&t, 1, x).unwrap(), (TAU * x).sin(), 1e-14);
        }
        let c0 = Waveform::Constant.exact_table(2);
        close(conjugate_sum(&c0, 2, 0.4).unwrap(), 0.0, 1e-15);

        // trig form: a_k cos + b_k sin maps to a_k sin - b_k cos
        let t = Waveform::Sawtooth.exact_table(6);
        let trig = convert_exp_to_trig(&t).unwrap();
        for &x in &[0.11, 0.62] {
            let want: f64 = (1..=6)
                .map(|k| {
                    let ang = TAU * k as f64 * x;
                    trig.a[k] * ang.sin() - trig.b[k] * ang.cos()
                })
                .sum();
            close(conjugate_sum(&t, 6, x).unwrap(), want, 1e-13);
        }
    }

    #[test]
    fn error_norms_examples() {
        let f = PeriodicSignal::periodic_extend(|x| (TAU * x).cos().exp(), 1.0).unwrap();
        let t = table_numeric(&f, 32, 512).unwrap();
        let rep = error_norms(&f, &t, SummationMethod::PartialSum, &[8, 16, 32]).unwrap();
        assert!(rep.sup_error[2] < 1e-8, "sup at N=32: {}", rep.sup_error[2]);

        // square wave L2 error ~ Parseval tail
        let sq = PeriodicSignal::catalog(Waveform::Square);
        let t = Waveform::Square.exact_table(512);
        let rep = error_norms(&sq, &t, SummationMethod::PartialSum, &[16, 64]).unwrap();
        for (i, &n) in [16usize, 64].iter().enumerate() {
            let tail: f64 = ((n + 1) as i64..20_000)
                .map(|k| Waveform::Square.coeff_exact(k).norm_sqr() * 2.0)
                .sum();
            let l2 = rep.l2_error[i];
            assert!(
                l2 * l2 > tail / 2.0 && l2 * l2 < tail * 2.0,
                "N={n}: l2^2={} tail={tail}",
                l2 * l2
            );
        }

        // Fejer tames the square wave away from jumps
        let rep = error_norms(&sq, &t, SummationMethod::Cesaro, &[400]).unwrap();
        let mut sup: f64 = 0.0;
        for j in 0..NORM_GRID {
            let x = j as f64 / NORM_GRID as f64;
            if (0.1..=0.4).contains(&x) {
                sup = sup.max((cesaro_mean(&t, 400, x).unwrap() - sq.eval(x)).abs());
            }
        }
        assert!(sup < 0.02, "fejer sup on [0.1,0.4]: {sup}");
        assert!(rep.sup_error[0] < 1.1); // no overshoot beyond the jump size
    }

    #[test]
    fn fejer_sup_error_monotone_on_continuous_signal() {
        let f = PeriodicSignal::catalog(Waveform::Triangular);
        let t = Waveform::Triangular.exact_table(256);
        let rep = error_norms(&f, &t, SummationMethod::Cesaro, &[16, 32, 64, 128, 256]).unwrap();
        for w in rep.sup_error.windows(2) {
            assert!(w[1] <= w[0] + 1e-6, "{:?}", rep.sup_error);
        }
    }

    #[test]
    fn gibbs_constants_paper_values() {
        let c = gibbs_constants();
        close(c.lambda, 0.08948987, 1e-7);
        close(c.g - 1.0, 0.17898, 1e-4);
        // dual quadrature routes agree
        let sinc = |t: f64| if t == 0.0 { 1.0 } else { t.sin() / t };
        let g2 = 2.0 / PI * crate::quad::gauss_legendre(sinc, 0.0, PI, 64);
        close(c.g, g2, 1e-12);
    }

    #[test]
    fn gibbs_measure_examples() {
        let rep = gibbs_measure(Waveform::Square, 200).unwrap();
        close(rep.measured_overshoot, 0.17898, 5e-3);
        close(rep.probe_value, 1.17898, 5e-3);
        close(rep.reference_overshoot, 2.0 * 0.08948987, 1e-6);

        let rep = gibbs_measure(Waveform::Sawtooth, 200).unwrap();
        close(rep.measured_overshoot, 0.08949, 3e-3);

        assert!(gibbs_measure(Waveform::Sine, 200).is_err());
        assert!(gibbs_measure(Waveform::Square, 10).is_err());
    }

    #[test]
    fn partial_sum_matches_dirichlet_convolution() {
        let f = PeriodicSignal::periodic_extend(|x| (TAU * x).cos().exp(), 1.0).unwrap();
        let t = table_numeric(&f, 16, 1024).unwrap();
        let n = 7u32;
        for &x in &[0.0, 0.21, 0.83] {
            let conv = crate::quad::trapezoid_periodic(
                |y| f.eval(x - y) * kernel_eval(KernelSpec::Dirichlet(n), y),
                1.0,
                1024,
            );
            close(partial_sum(&t, n as usize, x).unwrap(), conv, 1e-8);
        }
    }

    #[test]
    fn bernstein_inequality_on_truncations() {
        for (w, n) in [(Waveform::Square, 12usize), (Waveform::Sawtooth, 20)] {
            let t = w.exact_table(n);
            let deriv = crate::periodic::coefficient_algebra(
                crate::periodic::CoefficientRule::Differentiate(1),
                &t,
            );
            let mut max_s: f64 = 0.0;
            let mut max_ds: f64 = 0.0;
            for j in 0..4096 {
                let x = j as f64 / 4096.0;
                max_s = max_s.max(partial_sum(&t, n, x).unwrap().abs());
                max_ds = max_ds.max(partial_sum(&deriv, n, x).unwrap().abs());
            }
            assert!(
                max_ds <= TAU * n as f64 * max_s + 1e-9,
                "bernstein: {max_ds} vs {}",
                TAU * n as f64 * max_s
            );
        }
    }

    #[test]
    fn abel_and_cesaro_agree_away_from_jumps() {
        for w in [Waveform::Square, Waveform::Triangular] {
            let n = 64usize;
            let t = w.exact_table(n);
            let mut sup: f64 = 0.0;
            for j in 0..512 {
                let x = j as f64 / 512.0;
                // stay away from the jumps at 0 and 1/2
                if w.jumps().iter().any(|&(x0, _)| {
                    let d = (x - x0).rem_euclid(1.0);
                    d.min(1.0 - d) < 0.1
                }) {
                    continue;
                }
                let a = abel_mean(&t, 1.0 - 1.0 / n as f64, x).unwrap();
                let c = cesaro_mean(&t, n, x).unwrap();
                sup = sup.max((a - c).abs());
            }
            assert!(sup < 0.05, "{w}: {sup}");
        }
    }

    #[test]
    fn lacunary_example_partial_sums_stay_away_from_zero() {
        // f(x) = sum_{k=1}^{2} k^{-2} sin((2^{k^3} + 1) pi x) on [0, 1/2],
        // extended evenly across 0 and periodically with period 1. This is
        // the first two blocks of the classical continuous function whose
        // Fourier series diverges at 0: although f(0) = 0, the partial sums
        // at the resonant orders 2^{k^3 - 1} are pushed to a fixed positive
        // height by each lacunary block, and the cumulative coefficient sums
        // are nonnegative at every order.
        let freq = |k: u32| 2u64.pow(k * k * k) + 1; // 3, 257
        let f = PeriodicSignal::periodic_extend(
            move |x| {
                let u = x.min(1.0 - x); // even reflection across 0
                (1..=2u32)
                    .map(|k| (freq(k) as f64 * PI * u).sin() / (k * k) as f64)
                    .sum()
            },
            1.0,
        )
        .unwrap();
        let kmax = 300usize;
        let t = table_numeric(&f, kmax, 4096).unwrap();
        let s = |n: usize| partial_sum(&t, n, 0.0).unwrap();
        assert!(f.eval(0.0).abs() < 1e-12);
        // resonant orders 2^{1^3 - 1} = 1 and 2^{2^3 - 1} = 128
        assert!(s(1) > 0.5, "first resonance: {}", s(1));
        assert!(s(128) > 0.5, "second resonance: {}", s(128));
        // the cumulative coefficient sums S_N(0) + a_0/2 stay nonnegative
        let a0_half = t.get(0).re;
        for n in [1usize, 2, 64, 128, 256, 300] {
            assert!(s(n) + a0_half >= -1e-10, "N={n}: {}", s(n) + a0_half);
        }
    }
}
