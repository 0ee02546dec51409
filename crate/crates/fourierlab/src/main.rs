//! `fourierlab`: every library operation behind one executable with
//! reproducible CSV/JSON outputs.

use clap::{Args, Parser, Subcommand};
use fourierlab::io::{self, JsonField};
use fourierlab::{geo, kernels, pde, signal_apps, special, summation, transforms};
use fourierlab::{Error, PeriodicSignal, Waveform};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fourierlab", version, about = "Numerical harmonic analysis toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fourier coefficients of a catalog waveform as CSV `k,re,im`.
    Coeffs(CoeffsArgs),
    /// Evaluate a summation method of a coefficient table on a grid.
    Sum(SumArgs),
    /// Overshoot diagnostics of the partial sums at a jump.
    Gibbs(GibbsArgs),
    /// Sample a summation kernel on a grid.
    Kernel(KernelArgs),
    /// Factorized discrete Fourier transform of a sample file.
    Fft(FftArgs),
    /// Extract amplitudes of known frequencies from a time series.
    Tide(TideArgs),
    /// Evaluate special functions and classical constants.
    Special(SpecialArgs),
    /// Low-pass or threshold filtering of a coefficient table.
    Filter(FilterArgs),
    /// Spectral edge detector profile as CSV `x,E`.
    Edge(EdgeArgs),
    /// Sideband expansion of a frequency-modulated wave.
    Fm(FmArgs),
    /// Heat equation on an interval with zero boundary values.
    Heat(HeatArgs),
    /// Phase-inverting cellar depth for periodic surface temperature.
    Cellar(CellarArgs),
    /// Dirichlet problem on the unit disk.
    Disk(DiskArgs),
    /// Dirichlet problem on the unit square with one hot edge.
    Square(SquareArgs),
    /// Fundamental vibrating-membrane mode on the unit disk.
    Membrane(MembraneArgs),
    /// Radon transform of a phantom, forward or inverse.
    Radon(RadonArgs),
    /// Curve length by the Crofton line-intersection formula.
    Crofton(CroftonArgs),
    /// Buffon needle Monte Carlo experiment.
    Buffon(BuffonArgs),
    /// Fourier fit of a closed curve with isoperimetric diagnostics.
    Epicycle(EpicycleArgs),
    /// Equidistribution count of an irrational rotation.
    Weyl(WeylArgs),
    /// Central limit theorem on the circle.
    Clt(CltArgs),
}

#[derive(Args)]
struct CoeffsArgs {
    /// square | sawtooth | triangular | parabola | sine | cosine | constant
    #[arg(long)]
    waveform: String,
    #[arg(long)]
    kmax: usize,
    /// Compute by quadrature instead of the closed forms.
    #[arg(long)]
    numeric: bool,
    /// Quadrature nodes (with --numeric).
    #[arg(long, default_value_t = 4096)]
    nodes: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SumArgs {
    /// Coefficient CSV `k,re,im`.
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    /// partial | cesaro | abel
    #[arg(long, default_value = "partial")]
    method: String,
    /// Order N (Abel radius is 1 - 1/N).
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 512)]
    grid: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GibbsArgs {
    #[arg(long)]
    waveform: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct KernelArgs {
    /// dirichlet | fejer | poisson | conjugate | gauss
    #[arg(long)]
    kind: String,
    /// Order (dirichlet, fejer).
    #[arg(long)]
    n: Option<u32>,
    /// Radius in [0, 1) (poisson, conjugate).
    #[arg(long)]
    r: Option<f64>,
    /// Time parameter (gauss).
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, default_value_t = 512)]
    grid: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FftArgs {
    #[arg(long)]
    n: usize,
    /// Explicit factorization, e.g. 8,4,32 (product must be N).
    #[arg(long, value_delimiter = ',')]
    factors: Option<Vec<usize>>,
    /// Sample CSV `j,re,im` with N rows.
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Optional flat JSON with instrumented operation counts.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct TideArgs {
    /// Time series CSV `x,value`, uniform samples on [0, T].
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    /// Observation length T.
    #[arg(long)]
    period: f64,
    /// Known angular frequencies, comma separated.
    #[arg(long, value_delimiter = ',')]
    frequencies: Vec<f64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SpecialArgs {
    /// besselj | cheb | legendre | haar | wrapped | zeros | constants
    #[arg(long = "fn")]
    function: String,
    /// Comma-separated numeric arguments (see README).
    #[arg(long, value_delimiter = ',', default_value = "")]
    args: Vec<f64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FilterArgs {
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    /// Keep modes |k| <= K0.
    #[arg(long)]
    lowpass: Option<usize>,
    /// Keep modes with |c_k| >= threshold.
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EdgeArgs {
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 512)]
    grid: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FmArgs {
    /// Modulation index.
    #[arg(long)]
    eps: f64,
    /// Carrier frequency.
    #[arg(long)]
    omega: f64,
    /// Modulation frequency.
    #[arg(long)]
    omega_prime: f64,
    #[arg(long, default_value_t = 12)]
    kmax: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct HeatArgs {
    /// Initial datum CSV `x,value` on [0, L).
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    #[arg(long)]
    length: f64,
    #[arg(long, default_value_t = 64)]
    kmax: usize,
    /// Evaluation time.
    #[arg(long)]
    time: f64,
    /// Time horizon (defaults to the evaluation time).
    #[arg(long)]
    horizon: Option<f64>,
    #[arg(long, default_value_t = 256)]
    grid: usize,
    /// Output CSV `x,t,u`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CellarArgs {
    /// Soil diffusivity, cm^2/s.
    #[arg(long)]
    diffusivity: f64,
    /// Forcing period, seconds.
    #[arg(long)]
    period: f64,
    /// Surface oscillation amplitude, degrees.
    #[arg(long)]
    amplitude: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DiskArgs {
    /// Boundary data CSV `x,value`, angle in turns on [0, 1).
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    #[arg(long, default_value_t = 64)]
    kmax: usize,
    /// Evaluation radius in [0, 1).
    #[arg(long)]
    r: f64,
    #[arg(long, default_value_t = 256)]
    grid: usize,
    /// Output CSV `x,y,u` on the circle of radius r.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SquareArgs {
    #[arg(long, default_value_t = 2000)]
    kmax: usize,
    /// Interior grid resolution per axis.
    #[arg(long, default_value_t = 32)]
    grid: usize,
    /// Output CSV `x,y,u`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct MembraneArgs {
    /// Elasticity constant c.
    #[arg(long)]
    elasticity: f64,
    /// Which zero of J_0 sets the frequency (1-based).
    #[arg(long, default_value_t = 1)]
    mode: usize,
    #[arg(long)]
    time: f64,
    #[arg(long, default_value_t = 128)]
    grid: usize,
    /// Output CSV `x,t,u` with x the radius.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RadonArgs {
    #[command(subcommand)]
    action: RadonAction,
}

#[derive(Subcommand)]
enum RadonAction {
    /// Scan a named phantom into a sinogram CSV `p,phi,value`.
    Forward {
        /// parabolic | gaussian | disk
        #[arg(long)]
        phantom: String,
        #[arg(long, default_value_t = 201)]
        np: usize,
        #[arg(long, default_value_t = 16)]
        nphi: usize,
        #[arg(long, default_value_t = 2048)]
        line_nodes: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reconstruct a radial profile from a sinogram CSV.
    Invert {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[arg(long, default_value_t = 16)]
        tau_count: usize,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
        /// Angle at which to synthesize the reconstruction.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Output CSV `x,value` with x the radius.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CroftonArgs {
    /// circle | ellipse | flower
    #[arg(long)]
    curve: String,
    #[arg(long, default_value_t = 400)]
    np: usize,
    #[arg(long, default_value_t = 64)]
    nphi: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BuffonArgs {
    /// Needle length in (0, 1].
    #[arg(long)]
    ell: f64,
    #[arg(long)]
    tosses: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EpicycleArgs {
    /// Closed-curve samples CSV `x,y`.
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    #[arg(long, default_value_t = 16)]
    kmax: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct WeylArgs {
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CltArgs {
    /// uniform | digit
    #[arg(long, default_value = "uniform")]
    sampler: String,
    /// Number of summands.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    draws: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap exits with status 2 on usage errors
    if let Err(e) = check_thread_cap() {
        eprintln!("fourierlab: {e}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fourierlab: {e}");
            match e {
                Error::Numerical(_) | Error::Io(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

/// `FOURIERLAB_THREADS` caps internal parallelism; every current operation is
/// single-threaded, so the cap only needs validation.
fn check_thread_cap() -> Result<(), Error> {
    match std::env::var("FOURIERLAB_THREADS") {
        Err(_) => Ok(()),
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(()),
            _ => Err(Error::invalid(format!(
                "FOURIERLAB_THREADS must be an integer >= 1, got {v:?}"
            ))),
        },
    }
}

fn run(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Coeffs(a) => {
            let w = Waveform::parse(&a.waveform)?;
            let table = if a.numeric {
                fourierlab::periodic::table_numeric(
                    &PeriodicSignal::catalog(w),
                    a.kmax,
                    a.nodes,
                )?
            } else {
                w.exact_table(a.kmax)
            };
            io::write_coefficients_csv(&a.out, &table)
        }
        Command::Sum(a) => {
            let table = io::read_coefficients_csv(&a.r#in)?;
            if a.grid < 2 {
                return Err(Error::GridTooCoarse {
                    needed: 2,
                    got: a.grid,
                });
            }
            let eval = |x: f64| match a.method.as_str() {
                "partial" => summation::partial_sum(&table, a.n, x),
                "cesaro" => summation::cesaro_mean(&table, a.n, x),
                "abel" => summation::abel_mean(&table, 1.0 - 1.0 / a.n.max(1) as f64, x),
                other => Err(Error::invalid(format!("unknown method: {other}"))),
            };
            let rows: Vec<(f64, f64)> = (0..a.grid)
                .map(|j| {
                    let x = j as f64 / a.grid as f64;
                    Ok((x, eval(x)?))
                })
                .collect::<Result<_, Error>>()?;
            io::write_pairs_csv(&a.out, "x,value", &rows)
        }
        Command::Gibbs(a) => {
            let report = summation::gibbs_measure(Waveform::parse(&a.waveform)?, a.n)?;
            io::write_flat_json(
                &a.out,
                &[
                    ("jump_location", report.jump_location.into()),
                    ("jump_size", report.jump_size.into()),
                    ("measured_overshoot", report.measured_overshoot.into()),
                    ("reference_overshoot", report.reference_overshoot.into()),
                    ("probe_value", report.probe_value.into()),
                ],
            )
        }
        Command::Kernel(a) => {
            let need = |v: Option<f64>, flag: &str| {
                v.ok_or_else(|| Error::invalid(format!("--{flag} is required for this kernel")))
            };
            let spec = match a.kind.as_str() {
                "dirichlet" => kernels::KernelSpec::Dirichlet(
                    a.n.ok_or_else(|| Error::invalid("--n is required for this kernel"))?,
                ),
                "fejer" => kernels::KernelSpec::Fejer(
                    a.n.ok_or_else(|| Error::invalid("--n is required for this kernel"))?,
                ),
                "poisson" => kernels::KernelSpec::Poisson(need(a.r, "r")?),
                "conjugate" => kernels::KernelSpec::ConjugatePoisson(need(a.r, "r")?),
                "gauss" => kernels::KernelSpec::GaussWeierstrass(need(a.eps, "eps")?),
                other => return Err(Error::invalid(format!("unknown kernel: {other}"))),
            };
            spec.validate()?;
            io::emit_grid(|x| spec.eval(x), a.grid, 1.0, &a.out)
        }
        Command::Fft(a) => {
            let samples = io::read_samples_csv(&a.r#in)?;
            if samples.len() != a.n {
                return Err(Error::invalid(format!(
                    "--n {} does not match {} input rows",
                    a.n,
                    samples.len()
                )));
            }
            let plan = match a.factors {
                Some(f) => transforms::DftPlan::with_factors(a.n, f)?,
                None => transforms::DftPlan::auto(a.n)?,
            };
            let coeffs = transforms::fft_gauss(&samples, &plan)?;
            io::write_samples_csv(&a.out, &coeffs)?;
            if let Some(report) = a.report {
                let direct = (a.n as u64 - 1).pow(2);
                let factors = plan
                    .factors()
                    .iter()
                    .map(|f| f.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                io::write_flat_json(
                    &report,
                    &[
                        ("n", (a.n as i64).into()),
                        ("factors", factors.as_str().into()),
                        ("ops", (plan.ops() as i64).into()),
                        ("direct_ops", (direct as i64).into()),
                        ("ratio", (direct as f64 / plan.ops().max(1) as f64).into()),
                    ],
                )?;
            }
            Ok(())
        }
        Command::Tide(a) => {
            let series = io::read_pairs_csv(&a.r#in, "x,value")?;
            if series.len() < 2 {
                return Err(Error::GridTooCoarse {
                    needed: 2,
                    got: series.len(),
                });
            }
            let t_end = a.period;
            let values: Vec<f64> = series.iter().map(|&(_, v)| v).collect();
            let h = move |t: f64| {
                // linear interpolation on the uniform series
                let pos = (t / t_end).clamp(0.0, 1.0) * (values.len() - 1) as f64;
                let i = (pos.floor() as usize).min(values.len() - 2);
                let frac = pos - i as f64;
                values[i] * (1.0 - frac) + values[i + 1] * frac
            };
            let model = transforms::tide_extract(h, &a.frequencies, t_end, series.len() - 1)?;
            let rows: Vec<String> = model
                .frequencies
                .iter()
                .zip(model.amplitudes.iter().zip(&model.error_bounds))
                .map(|(&w, (amp, &bound))| {
                    format!(
                        "{},{},{},{}",
                        io::fmt_f64(w),
                        io::fmt_f64(amp.re),
                        io::fmt_f64(amp.im),
                        io::fmt_f64(bound)
                    )
                })
                .collect();
            let mut text = String::from("frequency,re,im,bound\n");
            for r in rows {
                text.push_str(&r);
                text.push('\n');
            }
            std::fs::write(&a.out, text)?;
            Ok(())
        }
        Command::Special(a) => run_special(a),
        Command::Filter(a) => {
            let table = io::read_coefficients_csv(&a.r#in)?;
            let out = match (a.lowpass, a.threshold) {
                (Some(k0), None) => signal_apps::lowpass(&table, k0),
                (None, Some(alpha)) => signal_apps::threshold_denoise(&table, alpha)?,
                _ => {
                    return Err(Error::invalid(
                        "exactly one of --lowpass and --threshold is required",
                    ))
                }
            };
            io::write_coefficients_csv(&a.out, &out)
        }
        Command::Edge(a) => {
            let table = io::read_coefficients_csv(&a.r#in)?;
            let profile = signal_apps::edge_detect(&table, a.n, a.grid)?;
            io::write_pairs_csv(&a.out, "x,E", &profile)
        }
        Command::Fm(a) => {
            let model = signal_apps::fm_sidebands(a.eps, a.omega, a.omega_prime, a.kmax)?;
            let rows: Vec<(f64, f64)> = model
                .frequencies
                .iter()
                .zip(&model.amplitudes)
                .map(|(&w, amp)| (w, amp.re))
                .collect();
            io::write_pairs_csv(&a.out, "frequency,amplitude", &rows)
        }
        Command::Heat(a) => {
            let datum = io::read_pairs_csv(&a.r#in, "x,value")?;
            if datum.len() < 16 {
                return Err(Error::GridTooCoarse {
                    needed: 16,
                    got: datum.len(),
                });
            }
            let length = a.length;
            let values: Vec<f64> = datum.iter().map(|&(_, v)| v).collect();
            let f = move |x: f64| {
                let pos = (x / length).clamp(0.0, 1.0) * (values.len() - 1) as f64;
                let i = (pos.floor() as usize).min(values.len() - 2);
                let frac = pos - i as f64;
                values[i] * (1.0 - frac) + values[i + 1] * frac
            };
            let horizon = a.horizon.unwrap_or(a.time).max(a.time);
            let problem =
                pde::HeatProblem::from_datum(f, a.length, a.kmax, 4096, horizon.max(1e-12))?;
            let rows: Vec<(f64, f64, f64)> = (0..=a.grid)
                .map(|j| {
                    let x = a.length * j as f64 / a.grid as f64;
                    Ok((x, a.time, problem.solve(x, a.time)?))
                })
                .collect::<Result<_, Error>>()?;
            io::write_triples_csv(&a.out, "x,t,u", &rows)
        }
        Command::Cellar(a) => {
            let design = pde::cellar_design(pde::CellarSpec {
                diffusivity: a.diffusivity,
                period: a.period,
                amplitude: a.amplitude,
            })?;
            io::write_flat_json(
                &a.out,
                &[
                    ("depth", design.depth.into()),
                    ("damping", design.damping.into()),
                    ("oscillation", design.oscillation.into()),
                ],
            )
        }
        Command::Disk(a) => {
            let boundary = io::read_pairs_csv(&a.r#in, "x,value")?;
            let samples: Vec<f64> = boundary.iter().map(|&(_, v)| v).collect();
            let signal = PeriodicSignal::from_grid(samples, 1.0)?;
            let nodes = boundary.len().max(4 * (a.kmax + 1));
            let solution = pde::DiskDirichlet::new(&signal, a.kmax, nodes)?;
            let rows: Vec<(f64, f64, f64)> = (0..a.grid)
                .map(|j| {
                    let theta = j as f64 / a.grid as f64;
                    let u = solution.eval(a.r, theta)?;
                    let ang = fourierlab::periodic::TAU * theta;
                    Ok((a.r * ang.cos(), a.r * ang.sin(), u))
                })
                .collect::<Result<_, Error>>()?;
            io::write_triples_csv(&a.out, "x,y,u", &rows)
        }
        Command::Square(a) => {
            if a.grid < 2 {
                return Err(Error::GridTooCoarse {
                    needed: 2,
                    got: a.grid,
                });
            }
            let mut rows = Vec::with_capacity(a.grid * a.grid);
            for i in 0..a.grid {
                let x = (i as f64 + 0.5) / a.grid as f64;
                for j in 0..a.grid {
                    let y = (j as f64 + 0.5) / a.grid as f64;
                    rows.push((x, y, pde::square_dirichlet(x, y, a.kmax)?));
                }
            }
            io::write_triples_csv(&a.out, "x,y,u", &rows)
        }
        Command::Membrane(a) => {
            if a.mode < 1 || a.mode > 10 {
                return Err(Error::invalid("--mode must lie in 1..=10"));
            }
            let lambda = special::j0_zeros(a.mode)?[a.mode - 1];
            let mode = pde::MembraneMode::new(a.elasticity, lambda)?;
            let rows: Vec<(f64, f64, f64)> = (0..=a.grid)
                .map(|j| {
                    let r = j as f64 / a.grid as f64;
                    Ok((r, a.time, mode.eval(r, a.time)?))
                })
                .collect::<Result<_, Error>>()?;
            io::write_triples_csv(&a.out, "x,t,u", &rows)
        }
        Command::Radon(a) => run_radon(a.action),
        Command::Crofton(a) => {
            let curve = named_curve(&a.curve)?;
            let length = geo::crofton_length(&curve, a.np, a.nphi)?;
            let quad = curve.geometry().length;
            io::write_flat_json(
                &a.out,
                &[
                    ("length", length.into()),
                    ("arclength_quadrature", quad.into()),
                ],
            )
        }
        Command::Buffon(a) => {
            let report = geo::buffon_sim(a.ell, a.tosses, a.seed)?;
            io::write_flat_json(
                &a.out,
                &[
                    ("hit_fraction", report.hit_fraction.into()),
                    ("target", report.target.into()),
                    ("stderr", report.stderr.into()),
                ],
            )
        }
        Command::Epicycle(a) => {
            let points = io::read_pairs_csv(&a.r#in, "x,y")?;
            let curve = geo::CurveFourier::fit(&points, a.kmax)?;
            let g = curve.geometry();
            io::write_flat_json(
                &a.out,
                &[
                    ("length", g.length.into()),
                    ("area", g.area.into()),
                    ("isoperimetric_defect", g.isoperimetric_defect.into()),
                ],
            )
        }
        Command::Weyl(a) => {
            let report = geo::weyl_count(a.gamma, a.a, a.b, a.trials)?;
            io::write_flat_json(
                &a.out,
                &[
                    ("gamma", report.gamma.into()),
                    ("a", report.a.into()),
                    ("b", report.b.into()),
                    ("trials", (report.trials as i64).into()),
                    ("count", (report.count as i64).into()),
                    ("ratio", report.ratio.into()),
                ],
            )
        }
        Command::Clt(a) => {
            let sampler = geo::CltSampler::parse(&a.sampler)?;
            let report = geo::circle_clt(sampler, a.n, a.draws, a.seed)?;
            io::write_flat_json(
                &a.out,
                &[
                    ("n", (a.n as i64).into()),
                    ("draws", (a.draws as i64).into()),
                    ("distance", report.distance.into()),
                ],
            )
        }
    }
}

fn run_special(a: SpecialArgs) -> Result<(), Error> {
    let args = &a.args;
    let need = |count: usize| -> Result<(), Error> {
        if args.len() != count {
            return Err(Error::invalid(format!(
                "--fn {} takes {count} argument(s), got {}",
                a.function,
                args.len()
            )));
        }
        Ok(())
    };
    let fields: Vec<(String, JsonField)> = match a.function.as_str() {
        "besselj" => {
            need(2)?;
            vec![(
                "value".into(),
                special::bessel_j(args[0] as i64, args[1])?.into(),
            )]
        }
        "cheb" => {
            need(2)?;
            vec![(
                "value".into(),
                special::chebyshev_t(args[0] as u32, args[1]).into(),
            )]
        }
        "legendre" => {
            need(2)?;
            vec![(
                "value".into(),
                special::orthonormal_system_eval(
                    special::OrthonormalSystem::Legendre {
                        k: args[0] as usize,
                    },
                    args[1],
                )?
                .into(),
            )]
        }
        "haar" => {
            need(3)?;
            vec![(
                "value".into(),
                special::orthonormal_system_eval(
                    special::OrthonormalSystem::Haar {
                        k: args[0] as usize,
                        n: args[1] as u32,
                    },
                    args[2],
                )?
                .into(),
            )]
        }
        "wrapped" => {
            need(1)?;
            vec![
                ("pdf".into(), special::wrapped_gaussian_pdf(args[0]).into()),
                (
                    "pdf_frequency".into(),
                    special::wrapped_gaussian_pdf_frequency(args[0]).into(),
                ),
                ("cdf".into(), special::wrapped_gaussian_cdf(args[0]).into()),
            ]
        }
        "zeros" => {
            need(1)?;
            let zeros = special::j0_zeros(args[0] as usize)?;
            zeros
                .iter()
                .enumerate()
                .map(|(i, &z)| (format!("zero_{}", i + 1), z.into()))
                .collect()
        }
        "constants" => {
            need(0)?;
            vec![
                ("zeta2_partial_1e6".into(), special::zeta2_partial(1_000_000).into()),
                ("zeta4_partial_1e4".into(), special::zeta4_partial(10_000).into()),
                ("wallis_partial_1e3".into(), special::wallis_partial(1_000).into()),
                (
                    "sine_product_half_1e5".into(),
                    special::sine_product_partial(0.5, 100_000).into(),
                ),
                ("stirling_ratio_20".into(), special::stirling_ratio(20).into()),
            ]
        }
        other => return Err(Error::invalid(format!("unknown function: {other}"))),
    };
    let borrowed: Vec<(&str, JsonField)> = fields
        .iter()
        .map(|(k, v)| (k.as_str(), v.clone()))
        .collect();
    io::write_flat_json(&a.out, &borrowed)
}

fn named_phantom(id: &str) -> Result<impl Fn(f64, f64) -> f64 + Copy, Error> {
    let tag = match id {
        "parabolic" => 0u8,
        "gaussian" => 1,
        "disk" => 2,
        other => return Err(Error::invalid(format!("unknown phantom: {other}"))),
    };
    Ok(move |x: f64, y: f64| {
        let r2 = x * x + y * y;
        if r2 > 1.0 {
            return 0.0;
        }
        match tag {
            0 => 1.0 - r2,
            1 => (-4.0 * r2).exp(),
            _ => 1.0,
        }
    })
}

fn named_curve(id: &str) -> Result<geo::CurveFourier, Error> {
    let samples: Vec<(f64, f64)> = (0..256)
        .map(|i| {
            let t = fourierlab::periodic::TAU * i as f64 / 256.0;
            match id {
                "circle" => (t.cos(), t.sin()),
                "ellipse" => (t.cos(), 0.5 * t.sin()),
                _ => {
                    let r = 1.0 + 0.3 * (2.0 * t).cos();
                    (r * t.cos(), r * t.sin())
                }
            }
        })
        .collect();
    if !matches!(id, "circle" | "ellipse" | "flower") {
        return Err(Error::invalid(format!("unknown curve: {id}")));
    }
    geo::CurveFourier::fit(&samples, 8)
}

fn run_radon(action: RadonAction) -> Result<(), Error> {
    match action {
        RadonAction::Forward {
            phantom,
            np,
            nphi,
            line_nodes,
            out,
        } => {
            let density = named_phantom(&phantom)?;
            let sinogram = geo::Sinogram::scan(density, np, nphi, line_nodes)?;
            let mut rows = Vec::with_capacity(np * nphi);
            for (i, &p) in sinogram.p.iter().enumerate() {
                for (j, &phi) in sinogram.phi.iter().enumerate() {
                    rows.push((p, phi, sinogram.values[i][j]));
                }
            }
            io::write_triples_csv(&out, "p,phi,value", &rows)
        }
        RadonAction::Invert {
            r#in,
            tau_count,
            kmax,
            theta,
            out,
        } => {
            let rows = io::read_triples_csv(&r#in, "p,phi,value")?;
            let mut p: Vec<f64> = rows.iter().map(|&(p, _, _)| p).collect();
            p.sort_by(|a, b| a.partial_cmp(b).unwrap());
            p.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
            let mut phi: Vec<f64> = rows.iter().map(|&(_, phi, _)| phi).collect();
            phi.sort_by(|a, b| a.partial_cmp(b).unwrap());
            phi.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
            let mut values = vec![vec![0.0; phi.len()]; p.len()];
            let locate = |grid: &[f64], x: f64| {
                grid.iter()
                    .position(|&g| (g - x).abs() < 1e-12)
                    .ok_or_else(|| Error::Parse("ragged sinogram grid".into()))
            };
            for &(pv, phv, v) in &rows {
                values[locate(&p, pv)?][locate(&phi, phv)?] = v;
            }
            let sinogram = geo::Sinogram::from_grids(p, phi, values)?;
            if tau_count < 2 {
                return Err(Error::GridTooCoarse {
                    needed: 2,
                    got: tau_count,
                });
            }
            let tau: Vec<f64> = (1..=tau_count)
                .map(|i| 0.9 * i as f64 / tau_count as f64)
                .collect();
            let modes = geo::radon_invert(&sinogram, &tau, kmax)?;
            let profile: Vec<(f64, f64)> = tau
                .iter()
                .enumerate()
                .map(|(i, &t)| (t, geo::polar_synthesize(&modes, i, theta)))
                .collect();
            io::write_pairs_csv(&out, "x,value", &profile)
        }
    }
}
