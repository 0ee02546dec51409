//! Spectral solvers for the classical boundary-value problems: heat on a
//! rod, the seasonal cellar model, the Dirichlet problem on disk and square,
//! and the fundamental membrane mode.

use crate::error::{Error, Result};
use crate::periodic::{table_numeric, PeriodicSignal, TAU};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Heat equation `u_t = u_xx` on `(0, l)` with zero boundary values and
/// initial datum `f(x) = sum b_k sin(pi k x / l)`.
#[derive(Debug, Clone)]
pub struct HeatProblem {
    pub length: f64,
    /// Sine coefficients `b_1..b_K` of the initial datum.
    pub b: Vec<f64>,
    pub horizon: f64,
    /// Set when the last coefficient is not yet negligible, i.e. the series
    /// was cut by the truncation rather than by decay.
    pub truncation_limited: bool,
}

impl HeatProblem {
    pub fn new(length: f64, b: Vec<f64>, horizon: f64) -> Result<Self> {
        if length <= 0.0 || horizon <= 0.0 {
            return Err(Error::invalid("length and horizon must be positive"));
        }
        if b.is_empty() {
            return Err(Error::invalid("need at least one sine coefficient"));
        }
        let truncation_limited = b.last().map(|v| v.abs() >= 1e-12).unwrap_or(false);
        Ok(HeatProblem {
            length,
            b,
            horizon,
            truncation_limited,
        })
    }

    /// Sine coefficients of a sampled datum by odd-extension quadrature:
    /// `b_k = (2/l) int_0^l f(x) sin(pi k x / l) dx`.
    pub fn from_datum(
        f: impl Fn(f64) -> f64,
        length: f64,
        kmax: usize,
        nodes: usize,
        horizon: f64,
    ) -> Result<Self> {
        if kmax == 0 {
            return Err(Error::invalid("need at least one mode"));
        }
        let b = (1..=kmax)
            .map(|k| {
                2.0 / length
                    * crate::quad::trapezoid(
                        |x| f(x) * (PI * k as f64 * x / length).sin(),
                        0.0,
                        length,
                        nodes,
                    )
            })
            .collect();
        HeatProblem::new(length, b, horizon)
    }

    /// Reconstruct the initial datum from the stored coefficients.
    pub fn datum(&self, x: f64) -> f64 {
        self.solve(x, 0.0).expect("t = 0 is always in range")
    }

    /// `u(x, t) = sum b_k e^{-pi^2 k^2 t / l^2} sin(pi k x / l)`.
    pub fn solve(&self, x: f64, t: f64) -> Result<f64> {
        if !(0.0..=self.length).contains(&x) || !(0.0..=self.horizon).contains(&t) {
            return Err(Error::invalid(format!(
                "query ({x}, {t}) outside [0, {}] x [0, {}]",
                self.length, self.horizon
            )));
        }
        let l2 = self.length * self.length;
        Ok(self
            .b
            .iter()
            .enumerate()
            .map(|(i, &bk)| {
                let k = (i + 1) as f64;
                bk * (-PI * PI * k * k * t / l2).exp() * (PI * k * x / self.length).sin()
            })
            .sum())
    }

    /// Quadrature estimate of `int_0^l u(x, t)^2 dx`.
    pub fn energy(&self, t: f64, nodes: usize) -> Result<f64> {
        let l = self.length;
        let mut acc = 0.0;
        for j in 0..=nodes {
            let x = j as f64 * l / nodes as f64;
            let w = if j == 0 || j == nodes { 0.5 } else { 1.0 };
            acc += w * self.solve(x, t)?.powi(2);
        }
        Ok(acc * l / nodes as f64)
    }
}

/// Underground-cellar design: surface temperature oscillates with amplitude
/// `a0` and period `p`; at depth y the oscillation is damped by
/// `e^{-y sqrt(pi / (c p))}`. The classical design depth inverts the phase
/// (half-period shift).
#[derive(Debug, Clone, Copy)]
pub struct CellarSpec {
    /// Soil diffusivity in cm^2/s.
    pub diffusivity: f64,
    /// Forcing period in seconds.
    pub period: f64,
    /// Surface oscillation amplitude in degrees.
    pub amplitude: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct CellarDesign {
    /// Phase-inverting depth `sqrt(pi c p)` in cm.
    pub depth: f64,
    /// Damping factor at that depth, `e^{-pi}`.
    pub damping: f64,
    /// Residual oscillation amplitude at that depth.
    pub oscillation: f64,
}

pub fn cellar_design(s: CellarSpec) -> Result<CellarDesign> {
    if s.diffusivity <= 0.0 || s.period <= 0.0 || s.amplitude <= 0.0 {
        return Err(Error::invalid("cellar parameters must be positive"));
    }
    let depth = (PI * s.diffusivity * s.period).sqrt();
    let damping = (-(PI / (s.diffusivity * s.period)).sqrt() * depth).exp();
    Ok(CellarDesign {
        depth,
        damping,
        oscillation: s.amplitude * damping,
    })
}

/// Solution of the Dirichlet problem on the unit disk with boundary datum
/// `f`: `u(r, theta) = sum r^{|k|} c_k e^{2 pi i k theta}` (theta measured
/// in turns). Terms with `r^k < 1e-16` are dropped.
pub struct DiskDirichlet {
    table: crate::periodic::CoefficientTable,
}

impl DiskDirichlet {
    pub fn new(boundary: &PeriodicSignal, kmax: usize, nodes: usize) -> Result<Self> {
        Ok(DiskDirichlet {
            table: table_numeric(boundary, kmax, nodes)?,
        })
    }

    pub fn eval(&self, r: f64, theta: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::invalid("disk evaluation needs r in [0, 1)"));
        }
        let kmax = self.table.kmax() as i64;
        let kcut = if r == 0.0 {
            0
        } else {
            (((-16.0 * std::f64::consts::LN_10) / r.ln()).ceil() as i64).min(kmax)
        };
        let s: Complex64 = (-kcut..=kcut)
            .map(|k| {
                r.powi(k.unsigned_abs() as i32)
                    * self.table.get(k)
                    * Complex64::from_polar(1.0, TAU * k as f64 * theta)
            })
            .sum();
        Ok(s.re)
    }
}

/// Steady state on the unit square with `u = 1` on the top edge and `u = 0`
/// on the other three:
/// `u(x,y) = (4/pi) sum 1/(2k+1) sinh((2k+1) pi y)/sinh((2k+1) pi) sin((2k+1) pi x)`.
///
/// The hyperbolic ratio is computed as
/// `e^{a(y-1)} (1 - e^{-2ay}) / (1 - e^{-2a})` with `a = (2k+1) pi`; the
/// naive `sinh` overflows near `k = 350`.
pub fn square_dirichlet(x: f64, y: f64, kmax: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&x) || !(0.0..1.0).contains(&y) || x == 0.0 {
        return Err(Error::invalid(
            "square_dirichlet expects an interior point of (0,1)x(0,1)",
        ));
    }
    let mut acc = 0.0;
    for k in 0..=kmax {
        let a = (2 * k + 1) as f64 * PI;
        let ratio = (a * (y - 1.0)).exp() * (1.0 - (-2.0 * a * y).exp())
            / (1.0 - (-2.0 * a).exp());
        acc += ratio * (a * x).sin() / (2 * k + 1) as f64;
    }
    Ok(4.0 / PI * acc)
}

/// Diagnostics of the corner behaviour at `(0, 1)` in the polar frame
/// `x = r sin(theta)`, `y = 1 - r cos(theta)`.
#[derive(Debug, Clone, Copy)]
pub struct CornerReport {
    /// Accurate solution value at the polar point.
    pub u: f64,
    /// The limiting rescaled angle `2 theta / pi`.
    pub angular: f64,
    /// `u - 2 theta / pi`, which vanishes like `r^2`.
    pub residual: f64,
}

/// Corner evaluation through the closed logarithmic form: the dominant part
/// of the series sums exactly to `(4/pi) Im atanh(Z)` with
/// `Z = e^{pi ((y-1) + i x)}`, and the remainder
/// `(4/pi) sum (e^{a(y-3)} - e^{-a(y+1)}) / ((1 - e^{-2a}) (2k+1)) sin(a x)`
/// (`a = (2k+1) pi`) converges geometrically like `e^{-2 pi (2k+1)}`, so it
/// is evaluated to machine precision with a handful of terms. This avoids
/// the slow `e^{-(2k+1) pi r}` convergence of the raw series at small `r`.
pub fn corner_asymptotic(r: f64, theta: f64) -> Result<CornerReport> {
    if r <= 0.0 || r >= 1.0 || theta <= 0.0 || theta >= PI / 2.0 {
        return Err(Error::invalid(
            "corner frame needs r in (0,1) and theta in (0, pi/2)",
        ));
    }
    let x = r * theta.sin();
    let y = 1.0 - r * theta.cos();
    let z = Complex64::new(PI * (y - 1.0), PI * x).exp();
    let main = 4.0 / PI * z.atanh().im;
    let mut correction = 0.0;
    for k in 0..8usize {
        let a = (2 * k + 1) as f64 * PI;
        let bracket = ((a * (y - 3.0)).exp() - (-a * (y + 1.0)).exp()) / (1.0 - (-2.0 * a).exp());
        correction += bracket * (a * x).sin() / (2 * k + 1) as f64;
    }
    let u = main + 4.0 / PI * correction;
    let angular = 2.0 * theta / PI;
    Ok(CornerReport {
        u,
        angular,
        residual: u - angular,
    })
}

/// Fundamental vibrating-membrane mode `U(r, t) = J_0(lambda r) cos(sqrt(c) lambda t)`
/// on the unit disk, clamped at the rim: `lambda` must be a zero of `J_0`.
#[derive(Debug, Clone, Copy)]
pub struct MembraneMode {
    pub elasticity: f64,
    pub lambda: f64,
}

impl MembraneMode {
    pub fn new(elasticity: f64, lambda: f64) -> Result<Self> {
        if elasticity <= 0.0 {
            return Err(Error::invalid("elasticity must be positive"));
        }
        if crate::special::bessel_j(0, lambda)?.abs() >= 1e-10 {
            return Err(Error::invalid(format!(
                "lambda = {lambda} is not a zero of J_0"
            )));
        }
        Ok(MembraneMode { elasticity, lambda })
    }

    pub fn eval(&self, r: f64, t: f64) -> Result<f64> {
        Ok(crate::special::bessel_j(0, self.lambda * r)?
            * (self.elasticity.sqrt() * self.lambda * t).cos())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodic::Waveform;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn heat_single_mode_exact() {
        let p = HeatProblem::new(1.0, vec![1.0], 1.0).unwrap();
        for &(x, t) in &[(0.5, 0.0), (0.25, 0.1), (0.9, 1.0)] {
            let want = (-PI * PI * t).exp() * (PI * x).sin();
            close(p.solve(x, t).unwrap(), want, 1e-14);
        }
        assert!(p.solve(1.5, 0.0).is_err());
        assert!(p.solve(0.5, 2.0).is_err());
    }

    #[test]
    fn heat_zero_datum() {
        let p = HeatProblem::new(1.0, vec![0.0, 0.0], 1.0).unwrap();
        for i in 0..10 {
            assert_eq!(p.solve(i as f64 / 10.0, 0.3).unwrap(), 0.0);
        }
    }

    #[test]
    fn heat_matches_finite_differences() {
        // explicit FTCS on dx = 1/200, dt = 1e-5, datum x(1 - x)
        let p = HeatProblem::from_datum(|x| x * (1.0 - x), 1.0, 64, 4096, 1.0).unwrap();
        assert!(!p.truncation_limited);
        let m = 200usize;
        let dx = 1.0 / m as f64;
        let dt: f64 = 1e-5;
        let mut u: Vec<f64> = (0..=m).map(|j| {
            let x = j as f64 * dx;
            x * (1.0 - x)
        }).collect();
        let steps = (0.01 / dt).round() as usize;
        let r = dt / (dx * dx);
        for _ in 0..steps {
            let mut next = u.clone();
            for j in 1..m {
                next[j] = u[j] + r * (u[j + 1] - 2.0 * u[j] + u[j - 1]);
            }
            next[0] = 0.0;
            next[m] = 0.0;
            u = next;
        }
        close(p.solve(0.5, 0.01).unwrap(), u[m / 2], 2e-4);
    }

    #[test]
    fn heat_energy_decays_and_datum_vanishes_at_ends() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let b: Vec<f64> = (0..8).map(|_| rng.gen::<f64>() - 0.5).collect();
            let p = HeatProblem::new(1.0, b, 1.0).unwrap();
            let times = [0.0, 0.01, 0.05, 0.2, 1.0];
            let energies: Vec<f64> =
                times.iter().map(|&t| p.energy(t, 512).unwrap()).collect();
            for w in energies.windows(2) {
                assert!(w[1] < w[0] + 1e-14, "{energies:?}");
            }
            // sup |u| non-increasing too
            let sup = |t: f64| {
                (0..=256)
                    .map(|j| p.solve(j as f64 / 256.0, t).unwrap().abs())
                    .fold(0.0, f64::max)
            };
            let sups: Vec<f64> = times.iter().map(|&t| sup(t)).collect();
            for w in sups.windows(2) {
                assert!(w[1] <= w[0] + 1e-12, "{sups:?}");
            }
            close(p.datum(0.0), 0.0, 1e-14);
            close(p.datum(1.0), 0.0, 1e-13);
        }
    }

    #[test]
    fn cellar_paper_values() {
        let spec = CellarSpec {
            diffusivity: 2e-3,
            period: 3600.0 * 24.0 * 365.0,
            amplitude: 37.0,
        };
        let d = cellar_design(spec).unwrap();
        close(d.depth, 445.0, 1.0);
        close(d.damping, (-PI).exp(), 1e-14);
        close(d.oscillation, 37.0 * (-PI).exp(), 1e-10);
        assert!(d.oscillation > 1.5 && d.oscillation < 1.7);

        let d = cellar_design(CellarSpec {
            amplitude: 104.0,
            ..spec
        })
        .unwrap();
        close(d.oscillation, 104.0 * (-PI).exp(), 1e-10);
        assert!(d.oscillation < 4.5);
        assert!(cellar_design(CellarSpec {
            diffusivity: 0.0,
            ..spec
        })
        .is_err());
    }

    #[test]
    fn disk_single_mode_and_constant() {
        let f = PeriodicSignal::catalog(Waveform::Cosine);
        let d = DiskDirichlet::new(&f, 8, 256).unwrap();
        for &(r, th) in &[(0.3, 0.1), (0.9, 0.7), (0.0, 0.2)] {
            close(d.eval(r, th).unwrap(), r * (TAU * th).cos(), 1e-12);
        }
        let one = PeriodicSignal::catalog(Waveform::Constant);
        let d = DiskDirichlet::new(&one, 4, 64).unwrap();
        for &(r, th) in &[(0.0, 0.0), (0.5, 0.3), (0.99, 0.9)] {
            close(d.eval(r, th).unwrap(), 1.0, 1e-12);
        }
        assert!(d.eval(1.0, 0.0).is_err());
    }

    #[test]
    fn disk_mean_value_and_center() {
        let f = PeriodicSignal::periodic_extend(|t| (TAU * t).cos().exp(), 1.0).unwrap();
        let d = DiskDirichlet::new(&f, 32, 512).unwrap();
        // center value is the boundary average
        let avg = crate::quad::trapezoid_periodic(|t| f.eval(t), 1.0, 1024);
        close(d.eval(0.0, 0.37).unwrap(), avg, 1e-10);

        // mean value property at p0 = (0.2, 0.1), radius 0.3
        let (px, py, rho): (f64, f64, f64) = (0.2, 0.1, 0.3);
        let u_p0 = {
            let r0 = (px * px + py * py).sqrt();
            let th0 = py.atan2(px) / TAU;
            d.eval(r0, th0).unwrap()
        };
        let m = 2048;
        let circle_avg: f64 = (0..m)
            .map(|j| {
                let phi = TAU * j as f64 / m as f64;
                let (qx, qy) = (px + rho * phi.cos(), py + rho * phi.sin());
                let r = (qx * qx + qy * qy).sqrt();
                let th = qy.atan2(qx) / TAU;
                d.eval(r, th).unwrap()
            })
            .sum::<f64>()
            / m as f64;
        close(u_p0, circle_avg, 1e-6);
    }

    #[test]
    fn disk_maximum_principle() {
        let f = PeriodicSignal::periodic_extend(|t| 1.0 + (TAU * t).sin(), 1.0).unwrap();
        let d = DiskDirichlet::new(&f, 16, 256).unwrap();
        for i in 0..20 {
            for j in 0..20 {
                let r = i as f64 / 20.0;
                let th = j as f64 / 20.0;
                assert!(d.eval(r, th).unwrap() >= -1e-10);
            }
        }
    }

    #[test]
    fn disk_matches_poisson_integral() {
        let f = PeriodicSignal::periodic_extend(|t| (TAU * t).cos().exp(), 1.0).unwrap();
        let d = DiskDirichlet::new(&f, 64, 1024).unwrap();
        let r = 0.6;
        for &th in &[0.0, 0.21, 0.9] {
            let poisson = crate::quad::trapezoid_periodic(
                |y| {
                    f.eval(th - y)
                        * crate::kernels::kernel_eval(crate::kernels::KernelSpec::Poisson(r), y)
                },
                1.0,
                4096,
            );
            close(d.eval(r, th).unwrap(), poisson, 1e-8);
        }
    }

    #[test]
    fn square_boundary_and_symmetry() {
        for &x in &[0.2, 0.5, 0.8] {
            let u = square_dirichlet(x, 0.999, 2000).unwrap();
            close(u, 1.0, 0.01);
        }
        for &(x, y) in &[(0.3, 0.4), (0.1, 0.9), (0.45, 0.2)] {
            let a = square_dirichlet(x, y, 500).unwrap();
            let b = square_dirichlet(1.0 - x, y, 500).unwrap();
            close(a, b, 1e-12);
        }
        assert!(square_dirichlet(0.0, 0.5, 100).is_err());
    }

    #[test]
    fn square_matches_finite_differences() {
        // 5-point Laplace on a 257^2 grid, SOR iteration
        let m = 256usize; // nodes 0..=m
        let mut u = vec![vec![0.0f64; m + 1]; m + 1];
        for row in u.iter_mut() {
            row[m] = 1.0; // top edge y = 1
        }
        let omega = 2.0 / (1.0 + (PI / m as f64).sin());
        for _ in 0..2000 {
            for i in 1..m {
                for j in 1..m {
                    let res =
                        0.25 * (u[i + 1][j] + u[i - 1][j] + u[i][j + 1] + u[i][j - 1]) - u[i][j];
                    u[i][j] += omega * res;
                }
            }
        }
        let fd = u[m / 2][m / 2];
        let series = square_dirichlet(0.5, 0.5, 2000).unwrap();
        close(series, fd, 1e-3);
    }

    #[test]
    fn corner_quadratic_rate() {
        let theta = PI / 4.0;
        let rs = [1e-2, 1e-3, 1e-4];
        let residuals: Vec<f64> = rs
            .iter()
            .map(|&r| corner_asymptotic(r, theta).unwrap().residual.abs())
            .collect();
        // log-log slope across the decade pairs
        for w in 0..2 {
            let slope = (residuals[w + 1] / residuals[w]).ln() / (rs[w + 1] / rs[w]).ln();
            assert!((slope - 2.0).abs() < 0.2, "slope {slope}, {residuals:?}");
        }
        // the closed form agrees with the raw series where the latter is
        // still accurate
        let r = 0.05;
        let rep = corner_asymptotic(r, theta).unwrap();
        let x = r * theta.sin();
        let y = 1.0 - r * theta.cos();
        let raw = square_dirichlet(x, y, 20_000).unwrap();
        close(rep.u, raw, 1e-8);
        assert!(corner_asymptotic(0.0, theta).is_err());
    }

    #[test]
    fn membrane_examples() {
        let lambda = crate::special::j0_zeros(1).unwrap()[0];
        let m = MembraneMode::new(2.0, lambda).unwrap();
        for &t in &[0.0, 0.5, 2.3] {
            close(m.eval(1.0, t).unwrap(), 0.0, 1e-10);
        }
        // zero initial velocity
        let h = 1e-5;
        for &r in &[0.1, 0.5, 0.9] {
            let dudt = (m.eval(r, h).unwrap() - m.eval(r, -h).unwrap()) / (2.0 * h);
            assert!(dudt.abs() < 1e-8, "{dudt}");
        }
        // wave-equation residual on an interior grid
        let c = m.elasticity;
        let hr = 1e-4;
        let ht = 1e-4;
        for i in 1..10 {
            let r = i as f64 / 10.0;
            let t = 0.3;
            let u = |r: f64, t: f64| m.eval(r, t).unwrap();
            let utt = (u(r, t + ht) - 2.0 * u(r, t) + u(r, t - ht)) / (ht * ht);
            let urr = (u(r + hr, t) - 2.0 * u(r, t) + u(r - hr, t)) / (hr * hr);
            let ur = (u(r + hr, t) - u(r - hr, t)) / (2.0 * hr);
            let res = utt - c * (urr + ur / r);
            assert!(res.abs() < 1e-5, "r={r}: {res}");
        }
        assert!(MembraneMode::new(1.0, 3.0).is_err());
    }
}
