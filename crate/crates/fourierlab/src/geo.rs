//! Integral geometry and stochastics on the circle: Radon transform forward
//! and inverse, Crofton and Buffon length/probability estimators, closed-curve
//! Fourier fitting with isoperimetric diagnostics, equidistribution counts,
//! and the central limit theorem on the circle.

use crate::error::{Error, Result};
use crate::periodic::TAU;
use crate::special::{chebyshev_t, wrapped_gaussian_cdf};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Line integral of a planar density along the line at signed offset `p`
/// with normal angle `phi`, parameterized as
/// `t -> (-sin phi, cos phi) t + (cos phi, sin phi) p`,
/// by the trapezoid rule on `[-l, l]` with `m` panels.
pub fn radon_forward(
    density: impl Fn(f64, f64) -> f64,
    p: f64,
    phi: f64,
    l: f64,
    m: usize,
) -> Result<f64> {
    if m < 32 {
        return Err(Error::GridTooCoarse { needed: 32, got: m });
    }
    let (s, c) = phi.sin_cos();
    Ok(crate::quad::trapezoid(
        |t| density(-s * t + c * p, c * t + s * p),
        -l,
        l,
        m,
    ))
}

/// Sampled Radon data on a uniform `(p, phi)` grid: `p` on `[0, 1]`
/// inclusive, `phi` on `[0, 2 pi)`.
#[derive(Debug, Clone)]
pub struct Sinogram {
    pub p: Vec<f64>,
    pub phi: Vec<f64>,
    /// `values[i][j] = R_f(p[i], phi[j])`.
    pub values: Vec<Vec<f64>>,
}

impl Sinogram {
    pub fn from_grids(p: Vec<f64>, phi: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        if p.is_empty() || phi.is_empty() {
            return Err(Error::invalid("sinogram grids must be non-empty"));
        }
        if values.len() != p.len() || values.iter().any(|r| r.len() != phi.len()) {
            return Err(Error::invalid("sinogram value shape mismatch"));
        }
        for g in [&p, &phi] {
            if g.len() > 1 {
                let h = g[1] - g[0];
                if g.windows(2).any(|w| (w[1] - w[0] - h).abs() > 1e-9) {
                    return Err(Error::invalid("sinogram grids must be uniform"));
                }
            }
        }
        Ok(Sinogram { p, phi, values })
    }

    /// Scan a density with support in the unit disk: `np` offsets on
    /// `[0, 1]`, `nphi` angles on `[0, 2 pi)`.
    pub fn scan(
        density: impl Fn(f64, f64) -> f64,
        np: usize,
        nphi: usize,
        line_nodes: usize,
    ) -> Result<Self> {
        if np < 2 || nphi < 1 {
            return Err(Error::invalid("sinogram needs np >= 2, nphi >= 1"));
        }
        let p: Vec<f64> = (0..np).map(|i| i as f64 / (np - 1) as f64).collect();
        let phi: Vec<f64> = (0..nphi).map(|j| TAU * j as f64 / nphi as f64).collect();
        let values = p
            .iter()
            .map(|&pi| {
                phi.iter()
                    .map(|&ph| radon_forward(&density, pi, ph, 1.2, line_nodes))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Sinogram { p, phi, values })
    }

    /// Angular Fourier coefficient `R_hat_k(p[i])`, by the discrete transform
    /// over the phi grid.
    fn angular_mode(&self, k: i64) -> Vec<Complex64> {
        let n = self.phi.len();
        self.values
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(j, &v)| v * Complex64::from_polar(1.0, -k as f64 * TAU * j as f64 / n as f64))
                    .sum::<Complex64>()
                    / n as f64
            })
            .collect()
    }
}

/// Per-mode radial reconstruction samples `F_hat_k(tau)`.
#[derive(Debug, Clone)]
pub struct PolarCoefficients {
    pub k: i64,
    pub tau: Vec<f64>,
    pub values: Vec<Complex64>,
}

/// Invert a sinogram on a `tau` grid inside `(0, 1)`, for angular modes
/// `|k| <= kmax`.
///
/// Per mode: the weighted integral
/// `I_k(tau) = int_tau^1 tau T_k(p/tau) R_hat_k(p) / (p sqrt(p^2 - tau^2)) dp`
/// is computed with the substitution `p = tau cosh(u)`, which turns it into
/// `int_0^{arccosh(1/tau)} cosh(k u) R_hat_k(tau cosh u) / cosh(u) du`
/// and removes the inverse-square-root endpoint singularity; the outer
/// `-(1/pi) d/dtau` uses central differences with step equal to the `tau`
/// spacing, matching the quadrature resolution. `R_hat_k` between `p` nodes
/// is linearly interpolated.
pub fn radon_invert(s: &Sinogram, tau: &[f64], kmax: usize) -> Result<Vec<PolarCoefficients>> {
    if tau.iter().any(|&t| !(0.0..1.0).contains(&t) || t == 0.0) {
        return Err(Error::invalid("tau grid must lie in (0, 1)"));
    }
    let h = if tau.len() > 1 {
        tau[1] - tau[0]
    } else {
        1e-3
    };
    let mut out = Vec::new();
    for k in -(kmax as i64)..=kmax as i64 {
        let rhat = s.angular_mode(k);
        let interp = |p: f64| -> Complex64 {
            let n = s.p.len();
            let lo = s.p[0];
            let hi = s.p[n - 1];
            if p >= hi {
                return rhat[n - 1];
            }
            let pos = (p - lo) / (hi - lo) * (n - 1) as f64;
            let i = (pos.floor() as usize).min(n - 2);
            let frac = pos - i as f64;
            rhat[i] * (1.0 - frac) + rhat[i + 1] * frac
        };
        let inner = |t: f64| -> Complex64 {
            let umax = (1.0 / t).acosh();
            let n = 96;
            // Gauss-Legendre in u
            let (nodes, weights) = crate::quad::gauss_legendre_rule(n);
            let mid = 0.5 * umax;
            nodes
                .iter()
                .zip(&weights)
                .map(|(&xu, &w)| {
                    let u = mid + mid * xu;
                    let ch = u.cosh();
                    w * chebyshev_t(k.unsigned_abs() as u32, ch) / ch * interp(t * ch)
                })
                .sum::<Complex64>()
                * mid
        };
        let values = tau
            .iter()
            .map(|&t| {
                let tp = (t + h).min(1.0 - 1e-9);
                let tm = (t - h).max(1e-9);
                -(inner(tp) - inner(tm)) / (PI * (tp - tm))
            })
            .collect();
        out.push(PolarCoefficients {
            k,
            tau: tau.to_vec(),
            values,
        });
    }
    Ok(out)
}

/// Synthesize the density at `(tau_index, theta)` from per-mode samples.
pub fn polar_synthesize(modes: &[PolarCoefficients], tau_index: usize, theta: f64) -> f64 {
    modes
        .iter()
        .map(|m| m.values[tau_index] * Complex64::from_polar(1.0, m.k as f64 * theta))
        .sum::<Complex64>()
        .re
}

/// A closed plane curve given by Fourier coefficients of its coordinate
/// functions, parameter period 1.
#[derive(Debug, Clone)]
pub struct CurveFourier {
    /// `x_hat[k + kmax]`, `y_hat[k + kmax]` for `k` in `[-kmax, kmax]`.
    pub kmax: usize,
    pub x_hat: Vec<Complex64>,
    pub y_hat: Vec<Complex64>,
}

impl CurveFourier {
    /// Fit from uniformly spaced samples of a closed curve; needs at least
    /// `2 kmax + 1` samples.
    pub fn fit(samples: &[(f64, f64)], kmax: usize) -> Result<Self> {
        let n = samples.len();
        if n < 2 * kmax + 1 {
            return Err(Error::invalid(format!(
                "need at least {} samples for kmax = {kmax}",
                2 * kmax + 1
            )));
        }
        let xs: Vec<Complex64> = samples.iter().map(|&(x, _)| Complex64::new(x, 0.0)).collect();
        let ys: Vec<Complex64> = samples.iter().map(|&(_, y)| Complex64::new(y, 0.0)).collect();
        let fx = crate::transforms::dft_forward(&xs)?;
        let fy = crate::transforms::dft_forward(&ys)?;
        let pick = |bins: &[Complex64], k: i64| bins[k.rem_euclid(n as i64) as usize];
        let x_hat = (-(kmax as i64)..=kmax as i64).map(|k| pick(&fx, k)).collect();
        let y_hat = (-(kmax as i64)..=kmax as i64).map(|k| pick(&fy, k)).collect();
        Ok(CurveFourier {
            kmax,
            x_hat,
            y_hat,
        })
    }

    pub fn eval(&self, t: f64) -> (f64, f64) {
        let mut x = Complex64::new(0.0, 0.0);
        let mut y = Complex64::new(0.0, 0.0);
        for (i, k) in (-(self.kmax as i64)..=self.kmax as i64).enumerate() {
            let e = Complex64::from_polar(1.0, TAU * k as f64 * t);
            x += self.x_hat[i] * e;
            y += self.y_hat[i] * e;
        }
        (x.re, y.re)
    }

    pub fn derivative(&self, t: f64) -> (f64, f64) {
        let mut x = Complex64::new(0.0, 0.0);
        let mut y = Complex64::new(0.0, 0.0);
        for (i, k) in (-(self.kmax as i64)..=self.kmax as i64).enumerate() {
            let e = Complex64::new(0.0, TAU * k as f64) * Complex64::from_polar(1.0, TAU * k as f64 * t);
            x += self.x_hat[i] * e;
            y += self.y_hat[i] * e;
        }
        (x.re, y.re)
    }

    /// Length (quadrature of the speed), coefficient-formula area, and the
    /// isoperimetric defect `L^2 - 4 pi A`.
    pub fn geometry(&self) -> CurveGeometry {
        let m = 4096;
        let length = crate::quad::trapezoid_periodic(
            |t| {
                let (dx, dy) = self.derivative(t);
                (dx * dx + dy * dy).sqrt()
            },
            1.0,
            m,
        );
        let mut area_c = Complex64::new(0.0, 0.0);
        for (i, k) in (-(self.kmax as i64)..=self.kmax as i64).enumerate() {
            area_c += k as f64
                * (self.x_hat[i].conj() * self.y_hat[i] - self.x_hat[i] * self.y_hat[i].conj());
        }
        let area = (Complex64::new(0.0, PI) * area_c).re;
        CurveGeometry {
            length,
            area,
            isoperimetric_defect: length * length - 4.0 * PI * area,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CurveGeometry {
    pub length: f64,
    pub area: f64,
    pub isoperimetric_defect: f64,
}

/// Curve length by the Crofton formula: half the `(p, phi)` integral of the
/// number of intersections with the line at offset `p`, normal angle `phi`.
///
/// Intersections are counted as sign changes of
/// `p - (cos phi, sin phi) . gamma(t)` over a dense parameter grid;
/// tangential contacts (measure zero in `(p, phi)`) may be miscounted.
pub fn crofton_length(curve: &CurveFourier, np: usize, nphi: usize) -> Result<f64> {
    if np < 4 || nphi < 4 {
        return Err(Error::invalid("crofton needs np, nphi >= 4"));
    }
    let samples = 4096;
    let pts: Vec<(f64, f64)> = (0..samples)
        .map(|i| curve.eval(i as f64 / samples as f64))
        .collect();
    let pmax = pts
        .iter()
        .map(|&(x, y)| (x * x + y * y).sqrt())
        .fold(0.0, f64::max)
        * 1.01;
    if pmax == 0.0 {
        return Err(Error::invalid("degenerate curve"));
    }
    let dp = pmax / np as f64;
    let dphi = TAU / nphi as f64;
    let mut total = 0u64;
    for j in 0..nphi {
        let phi = j as f64 * dphi;
        let (s, c) = phi.sin_cos();
        let proj: Vec<f64> = pts.iter().map(|&(x, y)| c * x + s * y).collect();
        for i in 0..np {
            let p = (i as f64 + 0.5) * dp; // midpoint rule in p
            let mut count = 0u64;
            for t in 0..samples {
                let a = proj[t] - p;
                let b = proj[(t + 1) % samples] - p;
                if a.signum() != b.signum() && a != 0.0 {
                    count += 1;
                }
            }
            total += count;
        }
    }
    Ok(0.5 * total as f64 * dp * dphi)
}

/// Buffon needle experiment: needle of length `ell <= 1` dropped on lines of
/// unit spacing. Hit probability `2 ell / pi`.
#[derive(Debug, Clone, Copy)]
pub struct BuffonReport {
    pub hit_fraction: f64,
    pub target: f64,
    pub stderr: f64,
}

pub fn buffon_sim(ell: f64, tosses: u64, seed: u64) -> Result<BuffonReport> {
    if !(0.0..=1.0).contains(&ell) || ell == 0.0 {
        return Err(Error::invalid("needle length must lie in (0, 1]"));
    }
    if tosses < 1 {
        return Err(Error::invalid("need at least one toss"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..tosses {
        let u: f64 = rng.gen::<f64>() * 0.5; // distance from center to nearest line
        let theta: f64 = rng.gen::<f64>() * PI;
        if 0.5 * ell * theta.sin() >= u {
            hits += 1;
        }
    }
    let f = hits as f64 / tosses as f64;
    Ok(BuffonReport {
        hit_fraction: f,
        target: 2.0 * ell / PI,
        stderr: (f * (1.0 - f) / tosses as f64).sqrt(),
    })
}

/// Equidistribution of the irrational rotation: count of `k < trials` with
/// `{gamma k}` in `[a, b]`.
#[derive(Debug, Clone, Copy)]
pub struct EquidistributionReport {
    pub gamma: f64,
    pub a: f64,
    pub b: f64,
    pub trials: u64,
    pub count: u64,
    pub ratio: f64,
}

pub fn weyl_count(gamma: f64, a: f64, b: f64, trials: u64) -> Result<EquidistributionReport> {
    if a > b {
        return Err(Error::invalid("interval must satisfy a <= b"));
    }
    if trials < 1 {
        return Err(Error::invalid("need at least one trial"));
    }
    let mut count = 0u64;
    let mut frac = 0.0f64;
    for _ in 0..trials {
        if (a..=b).contains(&frac) {
            count += 1;
        }
        frac += gamma;
        frac -= frac.floor();
    }
    Ok(EquidistributionReport {
        gamma,
        a,
        b,
        trials,
        count,
        ratio: count as f64 / trials as f64,
    })
}

/// Mean-zero, variance-one samplers for the circle CLT.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CltSampler {
    /// Uniform on `[-sqrt(3), sqrt(3)]`.
    UniformCentered,
    /// Normalized coin-flip digit: the raw digit takes values in
    /// `{0, 1/2}` (mean 1/4, second moment 1/8); centered and scaled it is
    /// a fair +-1 variable.
    BinaryDigit,
}

impl CltSampler {
    pub fn parse(id: &str) -> Result<Self> {
        match id {
            "uniform" => Ok(CltSampler::UniformCentered),
            "digit" => Ok(CltSampler::BinaryDigit),
            other => Err(Error::invalid(format!("unknown sampler: {other}"))),
        }
    }

    fn draw(self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            CltSampler::UniformCentered => (rng.gen::<f64>() - 0.5) * (12.0f64).sqrt(),
            CltSampler::BinaryDigit => {
                let raw: f64 = if rng.gen::<bool>() { 0.5 } else { 0.0 };
                (raw - 0.25) * 4.0
            }
        }
    }
}

/// Empirical law of `Z_N = (1/sqrt N) sum X_j mod 1` against the wrapped
/// Gaussian.
#[derive(Debug, Clone)]
pub struct CircleCltReport {
    /// Sorted samples on `[0, 1)`.
    pub samples: Vec<f64>,
    /// Sup over circle intervals of `|P_emp(J) - integral of W over J|`,
    /// computed as `max(F_emp - F_W) - min(F_emp - F_W)` over the sample
    /// points (the interval-based distance respects the circle topology).
    pub distance: f64,
}

pub fn circle_clt(
    sampler: CltSampler,
    n: usize,
    draws: usize,
    seed: u64,
) -> Result<CircleCltReport> {
    if n < 1 {
        return Err(Error::invalid("need N >= 1 summands"));
    }
    if draws < 1000 {
        return Err(Error::invalid("need at least 1000 draws"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = 1.0 / (n as f64).sqrt();
    let mut samples: Vec<f64> = (0..draws)
        .map(|_| {
            let s: f64 = (0..n).map(|_| sampler.draw(&mut rng)).sum();
            let z = s * scale;
            z - z.floor()
        })
        .collect();
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // F_emp - F_W immediately before and after each step
    let m = draws as f64;
    let mut hi = f64::NEG_INFINITY;
    let mut lo = f64::INFINITY;
    for (i, &x) in samples.iter().enumerate() {
        let fw = wrapped_gaussian_cdf(x);
        let before = i as f64 / m - fw;
        let after = (i + 1) as f64 / m - fw;
        hi = hi.max(after);
        lo = lo.min(before);
    }
    // endpoints of the fundamental interval
    hi = hi.max(0.0);
    lo = lo.min(0.0);
    Ok(CircleCltReport {
        samples,
        distance: hi - lo,
    })
}
