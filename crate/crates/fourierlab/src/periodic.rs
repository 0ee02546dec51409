//! Periodic signals and their Fourier coefficients.
//!
//! Signals carry a declared period and are backed by a catalog waveform, a
//! uniform sample grid over one period, a coefficient table, or an arbitrary
//! closure on `[0, P)`. Coefficients live in dense tables over `[-K, K]` in
//! exponential form, with a trigonometric view for real signals.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

pub const TAU: f64 = 2.0 * PI;

/// Fractional part mapping into `[0, 1)`, also for negative input.
pub fn frac_part(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::invalid("frac_part requires finite input"));
    }
    Ok(x - x.floor())
}

/// Catalog of waveforms with closed-form coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Waveform {
    Square,
    Sawtooth,
    Triangular,
    ParabolaX1mx,
    Sine,
    Cosine,
    Constant,
}

impl Waveform {
    pub fn parse(id: &str) -> Result<Self> {
        match id {
            "square" => Ok(Waveform::Square),
            "sawtooth" => Ok(Waveform::Sawtooth),
            "triangular" => Ok(Waveform::Triangular),
            "parabola_x1mx" => Ok(Waveform::ParabolaX1mx),
            "sine" => Ok(Waveform::Sine),
            "cosine" => Ok(Waveform::Cosine),
            "constant" => Ok(Waveform::Constant),
            other => Err(Error::UnknownWaveform(other.to_string())),
        }
    }

    /// Value on the fundamental interval `[0, 1)`.
    pub fn eval_unit(self, x: f64) -> f64 {
        let x = x - x.floor();
        match self {
            Waveform::Square => {
                if x < 0.5 {
                    1.0
                } else {
                    -1.0
                }
            }
            Waveform::Sawtooth => x - 0.5,
            Waveform::Triangular => x.min(1.0 - x) - 0.25,
            Waveform::ParabolaX1mx => x * (1.0 - x),
            Waveform::Sine => (TAU * x).sin(),
            Waveform::Cosine => (TAU * x).cos(),
            Waveform::Constant => 1.0,
        }
    }

    /// Closed-form exponential Fourier coefficient `c_k`.
    pub fn coeff_exact(self, k: i64) -> Complex64 {
        let kf = k as f64;
        match self {
            Waveform::Square => {
                if k != 0 && k.rem_euclid(2) == 1 {
                    Complex64::new(0.0, -2.0 / (PI * kf))
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            Waveform::Sawtooth => {
                if k == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(0.0, 1.0 / (TAU * kf))
                }
            }
            Waveform::Triangular => {
                if k != 0 && k.rem_euclid(2) == 1 {
                    Complex64::new(-1.0 / (PI * PI * kf * kf), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            Waveform::ParabolaX1mx => {
                if k == 0 {
                    Complex64::new(1.0 / 6.0, 0.0)
                } else {
                    Complex64::new(-1.0 / (2.0 * PI * PI * kf * kf), 0.0)
                }
            }
            Waveform::Sine => match k {
                1 => Complex64::new(0.0, -0.5),
                -1 => Complex64::new(0.0, 0.5),
                _ => Complex64::new(0.0, 0.0),
            },
            Waveform::Cosine => match k {
                1 | -1 => Complex64::new(0.5, 0.0),
                _ => Complex64::new(0.0, 0.0),
            },
            Waveform::Constant => {
                if k == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
        }
    }

    /// Jump discontinuities as `(location, jump size l+ - l-)` on `[0, 1)`.
    pub fn jumps(self) -> Vec<(f64, f64)> {
        match self {
            Waveform::Square => vec![(0.0, 2.0), (0.5, -2.0)],
            Waveform::Sawtooth => vec![(0.0, -1.0)],
            _ => vec![],
        }
    }

    pub fn exact_table(self, kmax: usize) -> CoefficientTable {
        let mut t = CoefficientTable::zeros(kmax, true);
        for k in -(kmax as i64)..=kmax as i64 {
            t.set(k, self.coeff_exact(k));
        }
        t
    }
}

impl fmt::Display for Waveform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Waveform::Square => "square",
            Waveform::Sawtooth => "sawtooth",
            Waveform::Triangular => "triangular",
            Waveform::ParabolaX1mx => "parabola_x1mx",
            Waveform::Sine => "sine",
            Waveform::Cosine => "cosine",
            Waveform::Constant => "constant",
        };
        f.write_str(s)
    }
}

/// Dense complex Fourier coefficients for `|k| <= kmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    kmax: usize,
    values: Vec<Complex64>,
    real_signal: bool,
}

impl CoefficientTable {
    pub fn zeros(kmax: usize, real_signal: bool) -> Self {
        CoefficientTable {
            kmax,
            values: vec![Complex64::new(0.0, 0.0); 2 * kmax + 1],
            real_signal,
        }
    }

    pub fn from_values(kmax: usize, values: Vec<Complex64>, real_signal: bool) -> Result<Self> {
        if values.len() != 2 * kmax + 1 {
            return Err(Error::invalid(format!(
                "expected {} coefficients, got {}",
                2 * kmax + 1,
                values.len()
            )));
        }
        Ok(CoefficientTable {
            kmax,
            values,
            real_signal,
        })
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn real_signal(&self) -> bool {
        self.real_signal
    }

    pub fn get(&self, k: i64) -> Complex64 {
        if k.unsigned_abs() as usize > self.kmax {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[(k + self.kmax as i64) as usize]
        }
    }

    pub fn set(&mut self, k: i64, v: Complex64) {
        assert!(k.unsigned_abs() as usize <= self.kmax);
        self.values[(k + self.kmax as i64) as usize] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let kmax = self.kmax as i64;
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - kmax, c))
    }

    /// Largest deviation from the reality symmetry `c_{-k} = conj(c_k)`.
    pub fn reality_defect(&self) -> f64 {
        (0..=self.kmax as i64)
            .map(|k| (self.get(-k) - self.get(k).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn energy(&self) -> f64 {
        self.values.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Synthesize the full series `sum c_k e^{2 pi i k x}`.
    pub fn synthesize(&self, x: f64) -> Complex64 {
        self.iter()
            .map(|(k, c)| c * Complex64::from_polar(1.0, TAU * k as f64 * x))
            .sum()
    }
}

/// Trigonometric form `a_0/?.. a_K`, `b_1..b_K` with
/// `a_k = 2 Re c_k`, `b_k = -2 Im c_k` (and `a_0 = c_0`... see below).
///
/// We store `a_0 = 2 c_0` so that the round trip is uniform in `k`; the
/// series reads `a_0/2 + sum a_k cos + b_k sin`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigCoefficientTable {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl TrigCoefficientTable {
    pub fn kmax(&self) -> usize {
        self.a.len() - 1
    }

    pub fn synthesize(&self, x: f64) -> f64 {
        let mut acc = 0.5 * self.a[0];
        for k in 1..self.a.len() {
            let ang = TAU * k as f64 * x;
            acc += self.a[k] * ang.cos() + self.b[k] * ang.sin();
        }
        acc
    }
}

/// Exponential table to trigonometric form. Requires a real-signal table.
pub fn convert_exp_to_trig(t: &CoefficientTable) -> Result<TrigCoefficientTable> {
    if !t.real_signal() {
        return Err(Error::invalid(
            "trigonometric form is only defined for real-signal tables",
        ));
    }
    let kmax = t.kmax();
    let mut a = vec![0.0; kmax + 1];
    let mut b = vec![0.0; kmax + 1];
    a[0] = 2.0 * t.get(0).re;
    for k in 1..=kmax {
        let c = t.get(k as i64);
        a[k] = 2.0 * c.re;
        b[k] = -2.0 * c.im;
    }
    Ok(TrigCoefficientTable { a, b })
}

/// Inverse of [`convert_exp_to_trig`].
pub fn convert_trig_to_exp(t: &TrigCoefficientTable) -> CoefficientTable {
    let kmax = t.kmax();
    let mut out = CoefficientTable::zeros(kmax, true);
    out.set(0, Complex64::new(0.5 * t.a[0], 0.0));
    for k in 1..=kmax {
        let c = Complex64::new(0.5 * t.a[k], -0.5 * t.b[k]);
        out.set(k as i64, c);
        out.set(-(k as i64), c.conj());
    }
    out
}

/// What a [`PeriodicSignal`] evaluates through.
#[derive(Clone)]
pub enum Backing {
    Catalog(Waveform),
    /// Uniform samples over one period; evaluation wraps by index and
    /// interpolates linearly between nodes.
    Grid(Arc<Vec<f64>>),
    Coefficients(Arc<CoefficientTable>),
    Map(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for Backing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backing::Catalog(w) => write!(f, "Catalog({w})"),
            Backing::Grid(g) => write!(f, "Grid({} nodes)", g.len()),
            Backing::Coefficients(t) => write!(f, "Coefficients(kmax={})", t.kmax()),
            Backing::Map(_) => write!(f, "Map"),
        }
    }
}

/// An evaluable real-valued map with a declared period.
#[derive(Debug, Clone)]
pub struct PeriodicSignal {
    period: f64,
    backing: Backing,
}

impl PeriodicSignal {
    pub fn catalog(w: Waveform) -> Self {
        PeriodicSignal {
            period: 1.0,
            backing: Backing::Catalog(w),
        }
    }

    /// Uniform sample grid over one period; needs at least two nodes.
    pub fn from_grid(samples: Vec<f64>, period: f64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::invalid("sample grids need at least 2 nodes"));
        }
        if period <= 0.0 {
            return Err(Error::invalid("period must be positive"));
        }
        Ok(PeriodicSignal {
            period,
            backing: Backing::Grid(Arc::new(samples)),
        })
    }

    pub fn from_table(t: CoefficientTable) -> Self {
        PeriodicSignal {
            period: 1.0,
            backing: Backing::Coefficients(Arc::new(t)),
        }
    }

    /// Periodic extension of a map given on `[0, P)`.
    pub fn periodic_extend(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        period: f64,
    ) -> Result<Self> {
        if period <= 0.0 {
            return Err(Error::invalid("period must be positive"));
        }
        Ok(PeriodicSignal {
            period,
            backing: Backing::Map(Arc::new(f)),
        })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn backing(&self) -> &Backing {
        &self.backing
    }

    pub fn catalog_waveform(&self) -> Option<Waveform> {
        match self.backing {
            Backing::Catalog(w) => Some(w),
            _ => None,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let u = (x / self.period) - (x / self.period).floor();
        match &self.backing {
            Backing::Catalog(w) => w.eval_unit(u),
            Backing::Grid(samples) => {
                let m = samples.len();
                let pos = u * m as f64;
                let i = pos.floor() as usize % m;
                let frac = pos - pos.floor();
                let a = samples[i];
                let b = samples[(i + 1) % m];
                a + frac * (b - a)
            }
            Backing::Coefficients(t) => t.synthesize(u).re,
            Backing::Map(f) => f(u * self.period),
        }
    }

    /// Rescale to a new period; `g(x) = f(x P / newP)`.
    pub fn rescale_period(&self, new_period: f64) -> Result<Self> {
        if new_period <= 0.0 {
            return Err(Error::invalid("period must be positive"));
        }
        Ok(PeriodicSignal {
            period: new_period,
            backing: self.backing.clone(),
        })
    }
}

/// Minimum node count for the trapezoid estimate of `c_k`.
pub fn coeff_min_nodes(k: i64) -> usize {
    16usize.max(4 * (k.unsigned_abs() as usize + 1))
}

/// Trapezoid estimate of the k-th Fourier coefficient
/// `(1/P) int_0^P f(x) e^{-2 pi i k x / P} dx` on `m` uniform nodes.
///
/// Endpoint weights merge by periodicity; spectrally accurate for smooth
/// signals, first-order for jump discontinuities.
pub fn coeff_numeric(signal: &PeriodicSignal, k: i64, m: usize) -> Result<Complex64> {
    let needed = coeff_min_nodes(k);
    if m < needed {
        return Err(Error::GridTooCoarse { needed, got: m });
    }
    let p = signal.period();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let x = j as f64 * p / m as f64;
        let phase = Complex64::from_polar(1.0, -TAU * k as f64 * j as f64 / m as f64);
        acc += signal.eval(x) * phase;
    }
    Ok(acc / m as f64)
}

/// Build a full numeric table up to `kmax`.
pub fn table_numeric(signal: &PeriodicSignal, kmax: usize, m: usize) -> Result<CoefficientTable> {
    let mut t = CoefficientTable::zeros(kmax, true);
    for k in 0..=kmax as i64 {
        let c = coeff_numeric(signal, k, m)?;
        t.set(k, c);
        t.set(-k, c.conj());
    }
    Ok(t)
}

/// Coefficient-side rules: translation, periodic convolution, termwise
/// differentiation.
pub enum CoefficientRule<'a> {
    /// `f(x - a)`: multiplies `c_k` by `e^{-2 pi i k a}`... see note below.
    Translate(f64),
    Convolve(&'a CoefficientTable),
    Differentiate(u32),
}

/// Apply a coefficient rule. `Translate(a)` maps `c_k` to `e^{2 pi i k a} c_k`
/// (the coefficients of `x -> f(x + a)`), `Convolve` multiplies tables
/// entrywise, `Differentiate(m)` multiplies by `(2 pi i k)^m`.
///
/// Termwise differentiation of a table that came from a signal with jumps
/// does not converge; callers differentiating catalog entries with jumps get
/// the result anyway together with a warning flag from
/// [`differentiation_warning`].
pub fn coefficient_algebra(rule: CoefficientRule<'_>, t: &CoefficientTable) -> CoefficientTable {
    let kmax = t.kmax();
    let mut out = CoefficientTable::zeros(kmax, t.real_signal());
    match rule {
        CoefficientRule::Translate(a) => {
            for (k, c) in t.iter() {
                out.set(k, c * Complex64::from_polar(1.0, TAU * k as f64 * a));
            }
        }
        CoefficientRule::Convolve(other) => {
            for (k, c) in t.iter() {
                out.set(k, c * other.get(k));
            }
        }
        CoefficientRule::Differentiate(m) => {
            for (k, c) in t.iter() {
                let factor = Complex64::new(0.0, TAU * k as f64).powu(m);
                out.set(k, c * factor);
            }
        }
    }
    out
}

/// True when termwise differentiation is applied to a catalog entry with
/// jumps, where the derivative rule loses its hypothesis.
pub fn differentiation_warning(w: Waveform) -> bool {
    !w.jumps().is_empty()
}

/// Parseval/Bessel diagnostic: `lhs = sum |c_k|^2`, `rhs` is the quadrature
/// squared L^2 norm, `defect = rhs - lhs` (nonnegative up to tolerance by
/// Bessel's inequality).
#[derive(Debug, Clone, Copy)]
pub struct ParsevalReport {
    pub lhs: f64,
    pub rhs: f64,
    pub defect: f64,
}

pub fn parseval_report(t: &CoefficientTable, signal: &PeriodicSignal, m: usize) -> ParsevalReport {
    let lhs = t.energy();
    let p = signal.period();
    let rhs = crate::quad::trapezoid_periodic(|x| signal.eval(x).powi(2), p, m) / p;
    ParsevalReport {
        lhs,
        rhs,
        defect: rhs - lhs,
    }
}

/// Least-squares fit of `log |c_k| ~ log C - alpha log k` over the nonzero
/// entries with `k >= 1`.
#[derive(Debug, Clone, Copy)]
pub struct DecayFit {
    pub alpha: f64,
    pub c: f64,
    /// Set when the fitted decay is faster than any low-order polynomial.
    pub super_polynomial: bool,
}

pub fn decay_fit(t: &CoefficientTable) -> Result<DecayFit> {
    // Structural zeros (even harmonics of the square wave and friends) are
    // excluded from the fit.
    let pts: Vec<(f64, f64)> = (1..=t.kmax() as i64)
        .filter_map(|k| {
            let mag = t.get(k).norm();
            (mag > 1e-300).then(|| ((k as f64).ln(), mag.ln()))
        })
        .collect();
    if pts.len() < 2 {
        return Err(Error::Numerical(
            "decay_fit needs at least two nonzero coefficients".into(),
        ));
    }
    if t.kmax() < 16 {
        return Err(Error::invalid("decay_fit requires kmax >= 16"));
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let alpha = -slope;
    Ok(DecayFit {
        alpha,
        c: intercept.exp(),
        super_polynomial: alpha > 4.0,
    })
}
