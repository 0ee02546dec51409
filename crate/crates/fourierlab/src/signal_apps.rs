//! Coefficient-side signal processing: ideal low-pass filtering, amplitude
//! thresholding, the spectral edge detector, and FM sideband expansion.

use crate::error::{Error, Result};
use crate::periodic::{CoefficientTable, TrigCoefficientTable, TAU};
use crate::transforms::HarmonicModel;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Keep `c_k` for `|k| <= k0`, zero the rest. A projection: idempotent and
/// energy non-increasing.
pub fn lowpass(t: &CoefficientTable, k0: usize) -> CoefficientTable {
    let mut out = CoefficientTable::zeros(t.kmax(), t.real_signal());
    for (k, c) in t.iter() {
        if k.unsigned_abs() as usize <= k0 {
            out.set(k, c);
        }
    }
    out
}

/// Keep `c_k` iff `|c_k| >= alpha0`.
pub fn threshold_denoise(t: &CoefficientTable, alpha0: f64) -> Result<CoefficientTable> {
    if alpha0 < 0.0 {
        return Err(Error::invalid("threshold must be nonnegative"));
    }
    let mut out = CoefficientTable::zeros(t.kmax(), t.real_signal());
    for (k, c) in t.iter() {
        if c.norm() >= alpha0 {
            out.set(k, c);
        }
    }
    Ok(out)
}

/// Spectral edge detector
/// `E_N(x) = (i pi / N) sum_{|k| <= N} k c_k e^{2 pi i k x}`,
/// sampled on a uniform grid. `E_N` converges to the jump size at each jump
/// and to 0 elsewhere.
pub fn edge_detect(
    t: &CoefficientTable,
    n: usize,
    grid: usize,
) -> Result<Vec<(f64, f64)>> {
    if n > t.kmax() {
        return Err(Error::OrderExceedsTable {
            requested: n,
            available: t.kmax(),
        });
    }
    if n == 0 || grid == 0 {
        return Err(Error::invalid("edge_detect needs N >= 1 and a nonempty grid"));
    }
    (0..grid)
        .map(|j| {
            let x = j as f64 / grid as f64;
            Ok((x, edge_detect_at(t, n, x)?))
        })
        .collect()
}

pub fn edge_detect_at(t: &CoefficientTable, n: usize, x: f64) -> Result<f64> {
    let s: Complex64 = (-(n as i64)..=n as i64)
        .map(|k| k as f64 * t.get(k) * Complex64::from_polar(1.0, TAU * k as f64 * x))
        .sum();
    let v = Complex64::new(0.0, PI / n as f64) * s;
    if v.im.abs() > 1e-12 * v.re.abs().max(1.0) {
        return Err(Error::Numerical(format!(
            "edge detector imaginary residue {}; table is not conjugate-symmetric",
            v.im
        )));
    }
    Ok(v.re)
}

/// Trigonometric form of the same detector:
/// `E_N(x) = -(pi/N) sum_{k=1}^{N} k (a_k sin(2 pi k x) - b_k cos(2 pi k x))`.
pub fn edge_detect_trig(t: &TrigCoefficientTable, n: usize, x: f64) -> Result<f64> {
    if n > t.kmax() {
        return Err(Error::OrderExceedsTable {
            requested: n,
            available: t.kmax(),
        });
    }
    let s: f64 = (1..=n)
        .map(|k| {
            let ang = TAU * k as f64 * x;
            k as f64 * (t.a[k] * ang.sin() - t.b[k] * ang.cos())
        })
        .sum();
    Ok(-PI / n as f64 * s)
}

/// Frequency-modulated wave `sin(2 pi w t + eps sin(2 pi w' t))` expanded as
/// a superposition of sidebands `J_k(eps)` at frequencies `w + k w'`.
///
/// The returned model synthesizes as
/// `sum_k J_k(eps) sin(2 pi (w + k w') t)`; amplitudes are stored real in
/// the complex slots.
pub fn fm_sidebands(eps: f64, omega: f64, omega_p: f64, kmax: usize) -> Result<HarmonicModel> {
    if eps < 0.0 {
        return Err(Error::invalid("modulation index must be nonnegative"));
    }
    let mut frequencies = Vec::with_capacity(2 * kmax + 1);
    let mut amplitudes = Vec::with_capacity(2 * kmax + 1);
    for k in -(kmax as i64)..=kmax as i64 {
        frequencies.push(omega + k as f64 * omega_p);
        amplitudes.push(Complex64::new(crate::special::bessel_j(k, eps)?, 0.0));
    }
    Ok(HarmonicModel {
        frequencies,
        amplitudes,
        error_bounds: vec![0.0; 2 * kmax + 1],
    })
}

/// Evaluate the sideband superposition at time `t`.
pub fn fm_synthesize(model: &HarmonicModel, t: f64) -> f64 {
    model
        .frequencies
        .iter()
        .zip(&model.amplitudes)
        .map(|(&w, a)| a.re * (TAU * w * t).sin())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::gauss_weierstrass_multiplier;
    use crate::periodic::{
        coefficient_algebra, convert_exp_to_trig, table_numeric, CoefficientRule,
        PeriodicSignal, Waveform,
    };
    use crate::summation::partial_sum;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn lowpass_examples() {
        let t = Waveform::Square.exact_table(16);
        let id = lowpass(&t, 16);
        assert_eq!(id, t);
        let mean = lowpass(&t, 0);
        assert_eq!(mean.energy(), 0.0); // square wave has zero mean
        // lowpass at k0 = 5 equals S_5 on a grid
        let lp = lowpass(&t, 5);
        for j in 0..64 {
            let x = j as f64 / 64.0;
            let full = partial_sum(&lp, 16, x).unwrap();
            let s5 = partial_sum(&t, 5, x).unwrap();
            close(full, s5, 1e-12);
        }
        // projection: idempotent and energy non-increasing
        assert_eq!(lowpass(&lp, 5), lp);
        assert!(lp.energy() <= t.energy());
    }

    #[test]
    fn threshold_examples() {
        let t = Waveform::Sawtooth.exact_table(32);
        assert_eq!(threshold_denoise(&t, 0.0).unwrap(), t);
        let max = t.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max);
        let zero = threshold_denoise(&t, max * 1.01).unwrap();
        assert_eq!(zero.energy(), 0.0);

        // spike survives, small tail dies
        let mut spiked = t.clone();
        spiked.set(7, Complex64::new(0.0, -5.0));
        spiked.set(-7, Complex64::new(0.0, 5.0));
        let alpha0 = 0.1;
        let cleaned = threshold_denoise(&spiked, alpha0).unwrap();
        assert_eq!(cleaned.get(7), Complex64::new(0.0, -5.0));
        for (k, c) in cleaned.iter() {
            assert!(c.norm() == 0.0 || c.norm() >= alpha0, "k={k}");
        }
        assert!(cleaned.energy() <= spiked.energy());
        assert!(threshold_denoise(&t, -1.0).is_err());
    }

    #[test]
    fn edge_detect_examples() {
        // step of size 2 at x = 0.3: translate the square wave (jump 2 at 0)
        let n = 400;
        let t = Waveform::Square.exact_table(n);
        let shifted = coefficient_algebra(CoefficientRule::Translate(-0.3), &t);
        close(edge_detect_at(&shifted, n, 0.3).unwrap(), 2.0, 0.05);

        // smooth signal: detector stays small
        let f = PeriodicSignal::periodic_extend(|x| (TAU * x).cos().exp(), 1.0).unwrap();
        let smooth = table_numeric(&f, n, 2048).unwrap();
        let profile = edge_detect(&smooth, n, 512).unwrap();
        let sup = profile.iter().map(|&(_, e)| e.abs()).fold(0.0, f64::max);
        assert!(sup < 0.05, "sup |E_N| = {sup}");

        // zero signal
        let z = CoefficientTable::zeros(8, true);
        for (_, e) in edge_detect(&z, 8, 32).unwrap() {
            assert_eq!(e, 0.0);
        }
        assert!(edge_detect(&z, 9, 32).is_err());
    }

    #[test]
    fn edge_detect_is_linear_and_matches_trig_form() {
        let t1 = Waveform::Square.exact_table(64);
        let t2 = Waveform::Sawtooth.exact_table(64);
        let mut combo = CoefficientTable::zeros(64, true);
        for k in -64i64..=64 {
            combo.set(k, 2.0 * t1.get(k) - 3.0 * t2.get(k));
        }
        for &x in &[0.13, 0.5, 0.81] {
            let lhs = edge_detect_at(&combo, 64, x).unwrap();
            let rhs = 2.0 * edge_detect_at(&t1, 64, x).unwrap()
                - 3.0 * edge_detect_at(&t2, 64, x).unwrap();
            close(lhs, rhs, 1e-12);
            // trig-form agreement
            let trig = convert_exp_to_trig(&combo).unwrap();
            close(edge_detect_trig(&trig, 64, x).unwrap(), lhs, 1e-12);
        }
    }

    #[test]
    fn smoothing_commutes_with_lowpass() {
        // both are Fourier multipliers, so the order cannot matter
        let t = Waveform::Sawtooth.exact_table(32);
        let eps = 0.01;
        let smooth = |t: &CoefficientTable| {
            let mut out = CoefficientTable::zeros(t.kmax(), t.real_signal());
            for (k, c) in t.iter() {
                out.set(k, c * gauss_weierstrass_multiplier(k, eps));
            }
            out
        };
        let a = lowpass(&smooth(&t), 10);
        let b = smooth(&lowpass(&t, 10));
        for (k, c) in a.iter() {
            assert!((c - b.get(k)).norm() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn gauss_weierstrass_heat_identity() {
        // 4 dG/deps = d^2G/dx^2 by finite differences
        use crate::kernels::gauss_weierstrass_periodic as g;
        let eps = 0.05;
        let he = 1e-6;
        let hx = 1e-4;
        for &x in &[0.1, 0.3, 0.45] {
            let deps = (g(x, eps + he) - g(x, eps - he)) / (2.0 * he);
            let dxx = (g(x + hx, eps) - 2.0 * g(x, eps) + g(x - hx, eps)) / (hx * hx);
            assert!(
                (4.0 * deps - dxx).abs() < 1e-5 * dxx.abs().max(1.0),
                "x={x}: {} vs {dxx}",
                4.0 * deps
            );
        }
    }

    #[test]
    fn fm_examples() {
        // eps = 0: single carrier
        let m = fm_sidebands(0.0, 5.0, 1.0, 4).unwrap();
        for (k, a) in m.amplitudes.iter().enumerate() {
            let want = if k == 4 { 1.0 } else { 0.0 };
            close(a.re, want, 1e-15);
        }

        // synthesized sum matches the modulated wave
        let (eps, w, wp) = (1.0, 3.0, 0.5);
        let m = fm_sidebands(eps, w, wp, 12).unwrap();
        for i in 0..50 {
            let t = i as f64 * 0.04;
            let truth = (TAU * w * t + eps * (TAU * wp * t).sin()).sin();
            close(fm_synthesize(&m, t), truth, 1e-8);
        }

        // k = 1 sideband amplitude is J_1(eps)
        close(
            m.amplitudes[13].re,
            crate::special::bessel_j(1, eps).unwrap(),
            1e-15,
        );
        assert!(fm_sidebands(-1.0, 1.0, 1.0, 4).is_err());
    }
}
