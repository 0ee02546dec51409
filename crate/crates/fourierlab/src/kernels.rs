//! Classical summation kernels and periodic convolution.
//!
//! All kernels live on the unit period. The Dirichlet and Fejér kernels are
//! evaluated through their sine-ratio closed forms with a series fallback
//! near the removable singularities at integers, where the ratio form loses
//! every digit.

use crate::error::{Error, Result};
use crate::periodic::{PeriodicSignal, TAU};
use std::f64::consts::PI;

/// Kernel family plus its order or radius parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSpec {
    /// `D_N(x) = sin((2N+1) pi x) / sin(pi x)`.
    Dirichlet(u32),
    /// `F_N(x) = (1/N) (sin(N pi x) / sin(pi x))^2`, `N >= 1`.
    Fejer(u32),
    /// `P(r, x) = (1 - r^2) / ((1-r)^2 + 4 r sin^2(pi x))`, `0 <= r < 1`.
    Poisson(f64),
    /// `Q(r, x) = 2 r sin(2 pi x) / ((1-r)^2 + 4 r sin^2(pi x))`.
    ConjugatePoisson(f64),
    /// Periodized heat kernel of width `eps > 0`.
    GaussWeierstrass(f64),
}

impl KernelSpec {
    pub fn validate(self) -> Result<()> {
        match self {
            KernelSpec::Fejer(n) if n < 1 => Err(Error::invalid("fejer order must be >= 1")),
            KernelSpec::Poisson(r) | KernelSpec::ConjugatePoisson(r)
                if !(0.0..1.0).contains(&r) =>
            {
                Err(Error::invalid("poisson radius must lie in [0, 1)"))
            }
            KernelSpec::GaussWeierstrass(eps) if eps <= 0.0 => {
                Err(Error::invalid("gauss-weierstrass width must be positive"))
            }
            _ => Ok(()),
        }
    }

    pub fn eval(self, x: f64) -> f64 {
        kernel_eval(self, x)
    }
}

/// Threshold on |sin(pi x)| below which the ratio forms switch to direct
/// series summation.
const SINGULARITY_GUARD: f64 = 1e-9;

pub fn kernel_eval(spec: KernelSpec, x: f64) -> f64 {
    match spec {
        KernelSpec::Dirichlet(n) => {
            let s = (PI * x).sin();
            if s.abs() < SINGULARITY_GUARD {
                // sum_{|k| <= N} e^{2 pi i k x} termwise; real by pairing
                (1..=n as i64).fold(1.0, |acc, k| acc + 2.0 * (TAU * k as f64 * x).cos())
            } else {
                ((2 * n + 1) as f64 * PI * x).sin() / s
            }
        }
        KernelSpec::Fejer(n) => {
            let s = (PI * x).sin();
            if s.abs() < SINGULARITY_GUARD {
                // sum_{|k| < N} (1 - |k|/N) e^{2 pi i k x} termwise
                (1..n as i64).fold(1.0, |acc, k| {
                    acc + 2.0 * (1.0 - k as f64 / n as f64) * (TAU * k as f64 * x).cos()
                })
            } else {
                let t = (n as f64 * PI * x).sin() / s;
                t * t / n as f64
            }
        }
        KernelSpec::Poisson(r) => {
            let s = (PI * x).sin();
            (1.0 - r * r) / ((1.0 - r) * (1.0 - r) + 4.0 * r * s * s)
        }
        KernelSpec::ConjugatePoisson(r) => {
            let s = (PI * x).sin();
            2.0 * r * (TAU * x).sin() / ((1.0 - r) * (1.0 - r) + 4.0 * r * s * s)
        }
        KernelSpec::GaussWeierstrass(eps) => gauss_weierstrass_periodic(x, eps),
    }
}

/// Periodization of the heat kernel `(1/sqrt(pi eps)) e^{-x^2/eps}` over the
/// integer lattice. The sum truncates at `|k| <= ceil(6 sqrt(eps)) + 3`,
/// leaving a tail below `e^{-36}`.
pub fn gauss_weierstrass_periodic(x: f64, eps: f64) -> f64 {
    let kmax = (6.0 * eps.sqrt()).ceil() as i64 + 3;
    let norm = 1.0 / (PI * eps).sqrt();
    let u = x - x.round(); // nearest-integer reduction keeps terms small
    (-kmax..=kmax)
        .map(|k| {
            let d = u + k as f64;
            norm * (-d * d / eps).exp()
        })
        .sum()
}

/// Fourier multiplier of the periodized heat kernel: `e^{-pi^2 k^2 eps}`.
pub fn gauss_weierstrass_multiplier(k: i64, eps: f64) -> f64 {
    (-PI * PI * (k * k) as f64 * eps).exp()
}

/// Trapezoid estimate of the periodic convolution
/// `(f * g)(x) = int_0^1 f(x - y) g(y) dy` sampled on `m` output nodes.
pub fn periodic_convolution(
    f: &PeriodicSignal,
    g: &PeriodicSignal,
    m: usize,
) -> Result<PeriodicSignal> {
    if m < 16 {
        return Err(Error::GridTooCoarse { needed: 16, got: m });
    }
    if (f.period() - 1.0).abs() > 1e-12 || (g.period() - 1.0).abs() > 1e-12 {
        return Err(Error::invalid("periodic_convolution expects unit periods"));
    }
    let fv: Vec<f64> = (0..m).map(|j| f.eval(j as f64 / m as f64)).collect();
    let gv: Vec<f64> = (0..m).map(|j| g.eval(j as f64 / m as f64)).collect();
    let out: Vec<f64> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| fv[(i + m - j) % m] * gv[j])
                .sum::<f64>()
                / m as f64
        })
        .collect();
    PeriodicSignal::from_grid(out, 1.0)
}

/// Convolve an explicit evaluator with a kernel at a single point.
pub fn convolve_at(f: &PeriodicSignal, spec: KernelSpec, x: f64, m: usize) -> f64 {
    crate::quad::trapezoid_periodic(|y| f.eval(x - y) * kernel_eval(spec, y), 1.0, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodic::Waveform;
    use crate::quad::trapezoid_periodic;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn kernel_eval_examples() {
        close(kernel_eval(KernelSpec::Dirichlet(5), 0.0), 11.0, 1e-12);
        for n in [1u32, 4, 16] {
            close(kernel_eval(KernelSpec::Fejer(n), 0.0), n as f64, 1e-12);
        }
        close(kernel_eval(KernelSpec::Poisson(0.5), 0.0), 3.0, 1e-15);
        for r in [0.1, 0.5, 0.9] {
            close(kernel_eval(KernelSpec::ConjugatePoisson(r), 0.0), 0.0, 1e-15);
        }
        assert!(KernelSpec::Poisson(1.0).validate().is_err());
        assert!(KernelSpec::Fejer(0).validate().is_err());
    }

    #[test]
    fn dirichlet_mass_and_energy() {
        for n in [1u32, 8, 32, 64] {
            let mass = trapezoid_periodic(|x| kernel_eval(KernelSpec::Dirichlet(n), x), 1.0, 4096);
            close(mass, 1.0, 1e-10);
            let energy = trapezoid_periodic(
                |x| kernel_eval(KernelSpec::Dirichlet(n), x).powi(2),
                1.0,
                4096,
            );
            close(energy, (2 * n + 1) as f64, 1e-10);
        }
    }

    #[test]
    fn fejer_nonnegative_unit_mass_and_average_of_dirichlet() {
        for n in [1u32, 7, 32] {
            let mut sup_gap: f64 = 0.0;
            for j in 0..512 {
                let x = j as f64 / 512.0;
                let f = kernel_eval(KernelSpec::Fejer(n), x);
                assert!(f >= -1e-12, "F_{n}({x}) = {f}");
                let avg = (0..n)
                    .map(|k| kernel_eval(KernelSpec::Dirichlet(k), x))
                    .sum::<f64>()
                    / n as f64;
                sup_gap = sup_gap.max((f - avg).abs());
            }
            assert!(sup_gap < 1e-11, "sup gap {sup_gap}");
            let mass = trapezoid_periodic(|x| kernel_eval(KernelSpec::Fejer(n), x), 1.0, 2048);
            close(mass, 1.0, 1e-10);
        }
    }

    #[test]
    fn dirichlet_symmetries() {
        for n in [3u32, 10] {
            for j in 1..40 {
                let x = j as f64 / 83.0;
                let d = |y: f64| kernel_eval(KernelSpec::Dirichlet(n), y);
                close(d(x), d(-x), 1e-11);
                close(d(0.5 - x), d(0.5 + x), 1e-11);
            }
        }
    }

    #[test]
    fn poisson_mass_and_positivity() {
        for r in [0.1, 0.5, 0.9] {
            let mass = trapezoid_periodic(|x| kernel_eval(KernelSpec::Poisson(r), x), 1.0, 8192);
            close(mass, 1.0, 1e-10);
            for j in 0..256 {
                assert!(kernel_eval(KernelSpec::Poisson(r), j as f64 / 256.0) > 0.0);
            }
        }
    }

    #[test]
    fn dirichlet_l1_grows_logarithmically() {
        // int |D_N| >= c ln N with a positive fitted c, while int |F_N| = 1
        let l1 = |n: u32| {
            trapezoid_periodic(|x| kernel_eval(KernelSpec::Dirichlet(n), x).abs(), 1.0, 8192)
        };
        let ns = [4u32, 8, 16, 32, 64];
        let vals: Vec<f64> = ns.iter().map(|&n| l1(n)).collect();
        assert!(vals.windows(2).all(|w| w[1] > w[0]));
        // least-squares slope of L1 vs ln N
        let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
        let n = xs.len() as f64;
        let sx: f64 = xs.iter().sum();
        let sy: f64 = vals.iter().sum();
        let sxy: f64 = xs.iter().zip(&vals).map(|(a, b)| a * b).sum();
        let sxx: f64 = xs.iter().map(|a| a * a).sum();
        let c = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        assert!(c > 0.1, "fitted log coefficient {c}");
        for n in [4u32, 64] {
            let f1 = trapezoid_periodic(
                |x| kernel_eval(KernelSpec::Fejer(n), x).abs(),
                1.0,
                8192,
            );
            close(f1, 1.0, 1e-10);
        }
    }

    #[test]
    fn gauss_weierstrass_mass_and_multiplier() {
        for eps in [0.01, 0.1, 1.0] {
            let mass = trapezoid_periodic(|x| gauss_weierstrass_periodic(x, eps), 1.0, 4096);
            close(mass, 1.0, 1e-10);
            // k-th coefficient is the heat multiplier
            for k in 0..4i64 {
                let c = trapezoid_periodic(
                    |x| gauss_weierstrass_periodic(x, eps) * (TAU * k as f64 * x).cos(),
                    1.0,
                    4096,
                );
                close(c, gauss_weierstrass_multiplier(k, eps), 1e-10);
            }
        }
    }

    #[test]
    fn convolution_examples() {
        // f * 1 = mean of f (the parabola's corner limits trapezoid accuracy
        // to O(1/M^2))
        let f = PeriodicSignal::catalog(Waveform::ParabolaX1mx);
        let one = PeriodicSignal::catalog(Waveform::Constant);
        let c = periodic_convolution(&f, &one, 2048).unwrap();
        for j in 0..10 {
            close(c.eval(j as f64 / 10.0), 1.0 / 6.0, 1e-6);
        }
        assert!(periodic_convolution(&f, &one, 8).is_err());

        // coefficients multiply under convolution (smooth factors)
        let smooth = PeriodicSignal::periodic_extend(|x| (TAU * x).cos().exp(), 1.0).unwrap();
        let g = PeriodicSignal::catalog(Waveform::Sine);
        let h = periodic_convolution(&smooth, &g, 512).unwrap();
        let want =
            crate::periodic::coeff_numeric(&smooth, 1, 512).unwrap() * Waveform::Sine.coeff_exact(1);
        let got = crate::periodic::coeff_numeric(&h, 1, 512).unwrap();
        assert!((got - want).norm() < 1e-10);

        // commutativity
        let hg = periodic_convolution(&g, &smooth, 512).unwrap();
        for j in 0..32 {
            let x = j as f64 / 32.0;
            close(h.eval(x), hg.eval(x), 1e-10);
        }
    }

    #[test]
    fn convolving_with_dirichlet_gives_partial_sum() {
        // smooth signal: f * D_N samples S_N(f)
        let f = PeriodicSignal::periodic_extend(|x| (TAU * x).cos().exp(), 1.0).unwrap();
        let t = crate::periodic::table_numeric(&f, 8, 1024).unwrap();
        let n = 5u32;
        let mut sup: f64 = 0.0;
        for j in 0..64 {
            let x = j as f64 / 64.0;
            let conv = convolve_at(&f, KernelSpec::Dirichlet(n), x, 1024);
            let s: f64 = (-(n as i64)..=n as i64)
                .map(|k| {
                    (t.get(k)
                        * num_complex::Complex64::from_polar(1.0, TAU * k as f64 * x))
                    .re
                })
                .sum();
            sup = sup.max((conv - s).abs());
        }
        assert!(sup < 1e-8, "sup gap {sup}");
    }
}
