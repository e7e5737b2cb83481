//! Command-line front end: distances and metrics on the Neile parabola,
//! mixed interpolation, bounded extension to the bidisk, F-grids for
//! plotting, and the oracle verification suite.

mod literal;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use neile_core::{
    caratheodory_metric_at, caratheodory_mobius, extremal_parameters, f_eval,
    kobayashi_distance, lower_bound_certificate, parameterize, realize_extension, run_suite,
    suite_passes, BlaschkeProduct, Error as CoreError, FlatDiskFunction, MixedProblem,
    NeilePoint, Profile, Regime, SolutionKind, TransferRealization,
};

use literal::{format_complex, human_complex, parse_complex};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "neile",
    version,
    about = "Caratheodory geometry of the Neile parabola {z^2 = w^3} in the bidisk"
)]
struct Cli {
    /// Emit a machine-readable JSON record on stdout, or into FILE if given.
    #[arg(long, global = true, value_name = "FILE", num_args = 0..=1, default_missing_value = "-")]
    json: Option<String>,

    /// Seed for all sampled quantities.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Override the tolerance a command classifies against.
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two points of the variety.
    Distance {
        #[arg(value_enum)]
        kind: DistanceKind,
        /// First point: a uniformizer literal, or coordinates "z;w".
        #[arg(allow_hyphen_values = true)]
        a: String,
        /// Second point, same forms.
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Infinitesimal Caratheodory metric at a point of the variety.
    Metric {
        /// Base point: a uniformizer literal, or coordinates "z;w".
        #[arg(allow_hyphen_values = true)]
        base: String,
        /// First tangent component.
        #[arg(allow_hyphen_values = true)]
        v1: String,
        /// Second tangent component.
        #[arg(allow_hyphen_values = true)]
        v2: String,
    },
    /// Feasibility (and optionally the solution) of f(z1)=w1, f(z2)=w2, f'(z3)=0.
    Interpolate {
        #[arg(allow_hyphen_values = true)]
        z1: String,
        #[arg(allow_hyphen_values = true)]
        z2: String,
        #[arg(allow_hyphen_values = true)]
        z3: String,
        #[arg(allow_hyphen_values = true)]
        w1: String,
        #[arg(allow_hyphen_values = true)]
        w2: String,
        /// Also construct the interpolant and report its residuals.
        #[arg(long)]
        solve: bool,
    },
    /// Bounded holomorphic extension of a function on the variety to the bidisk.
    Extend {
        /// Function spec: zero | lower-bound | const:<c> | blaschke:<mu>:<z,...> | series:<a0>:<c2,c3,...>
        function: String,
        /// File of sample nodes, one per line (uniformizer literal or "z;w").
        /// Defaults to the twelve certificate nodes.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Route through the general branch (bound 2*sqrt(2) + |f(0,0)|).
        #[arg(long)]
        general: bool,
        /// Number of bidisk samples behind the reported sup.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Tabulate F(alpha) = m(lambda^2 phi_alpha(lambda), delta^2 phi_alpha(delta)) on a polar grid.
    Grid {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        delta: String,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n_r: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n_theta: u32,
        out: PathBuf,
    },
    /// Run the oracle suite against the closed forms.
    Verify {
        #[arg(value_enum, default_value_t = ProfileArg::Quick)]
        profile: ProfileArg,
        /// Suite seed; overrides --seed.
        suite_seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DistanceKind {
    /// atanh of the extremal pseudo-hyperbolic value c*.
    Caratheodory,
    /// The pseudo-hyperbolic value c* itself.
    Mobius,
    /// Poincare distance of the uniformizers.
    Kobayashi,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Thorough,
}

enum Failure {
    Usage(String),
    Domain(CoreError),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "{msg}"),
            Failure::Domain(err) => write!(f, "{err}"),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(err: CoreError) -> Self {
        Failure::Domain(err)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Distance { kind, a, b } => cmd_distance(cli, *kind, a, b),
        Command::Metric { base, v1, v2 } => cmd_metric(cli, base, v1, v2),
        Command::Interpolate {
            z1,
            z2,
            z3,
            w1,
            w2,
            solve,
        } => cmd_interpolate(cli, [z1, z2, z3, w1, w2], *solve),
        Command::Extend {
            function,
            points,
            general,
            samples,
        } => cmd_extend(cli, function, points.as_deref(), *general, *samples),
        Command::Grid {
            lambda,
            delta,
            n_r,
            n_theta,
            out,
        } => cmd_grid(cli, lambda, delta, *n_r, *n_theta, out),
        Command::Verify {
            profile,
            suite_seed,
        } => cmd_verify(cli, *profile, suite_seed.unwrap_or(cli.seed)),
    }
}

#[derive(Serialize)]
struct Record<I: Serialize, O: Serialize> {
    command: String,
    inputs: I,
    outputs: O,
    tolerances: BTreeMap<&'static str, f64>,
    version: &'static str,
}

fn emit<I: Serialize, O: Serialize>(
    cli: &Cli,
    record: &Record<I, O>,
    human: &str,
) -> Result<(), Failure> {
    match cli.json.as_deref() {
        None => println!("{human}"),
        Some("-") => println!(
            "{}",
            serde_json::to_string(record).expect("records serialize")
        ),
        Some(path) => {
            let text = serde_json::to_string_pretty(record).expect("records serialize");
            std::fs::write(path, text.as_bytes())
                .map_err(|e| Failure::Usage(format!("cannot write {path}: {e}")))?;
            println!("{human}");
        }
    }
    Ok(())
}

/// A complex value serialized as its 17-significant-digit literal, so machine
/// records round-trip through `parse_complex` exactly.
struct Cx(Complex64);

impl Serialize for Cx {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_complex(self.0))
    }
}

impl From<Complex64> for Cx {
    fn from(c: Complex64) -> Self {
        Cx(c)
    }
}

fn parse_literal(name: &str, text: &str) -> Result<Complex64, Failure> {
    parse_complex(text).map_err(|e| Failure::Usage(format!("{name}: {e}")))
}

/// A variety point: either a uniformizer literal or a "z;w" coordinate pair.
fn parse_point(name: &str, text: &str) -> Result<NeilePoint, Failure> {
    if let Some((z, w)) = text.split_once(';') {
        let z = parse_literal(name, z)?;
        let w = parse_literal(name, w)?;
        Ok(NeilePoint::from_coordinates(z, w)?)
    } else {
        Ok(parameterize(parse_literal(name, text)?)?)
    }
}

#[derive(Serialize)]
struct DistanceInputs {
    kind: &'static str,
    lambda: Cx,
    delta: Cx,
}

#[derive(Serialize)]
struct DistanceOutputs {
    value: f64,
    mobius_value: f64,
    distance: f64,
    regime: Option<Regime>,
    alpha0: Option<Cx>,
    extremal_alpha: Option<Cx>,
    extremal_function: Option<String>,
}

fn cmd_distance(cli: &Cli, kind: DistanceKind, a: &str, b: &str) -> Result<u8, Failure> {
    let x = parse_point("first point", a)?;
    let y = parse_point("second point", b)?;
    let (lambda, delta) = (x.uniformizer(), y.uniformizer());
    let mobius_value = caratheodory_mobius(lambda, delta)?;
    let distance = mobius_value.atanh();

    let data = if lambda != delta && lambda != Complex64::ZERO && delta != Complex64::ZERO {
        Some(extremal_parameters(lambda, delta)?)
    } else {
        None
    };
    let (kind_name, value) = match kind {
        DistanceKind::Caratheodory => ("caratheodory", distance),
        DistanceKind::Mobius => ("mobius", mobius_value),
        DistanceKind::Kobayashi => ("kobayashi", kobayashi_distance(&x, &y)),
    };
    let extremal_function = data.as_ref().map(|d| match d.regime {
        Regime::Interior => "zeta^2 phi_alpha0(zeta)".to_string(),
        Regime::Boundary => "zeta^2 (up to rotation)".to_string(),
    });

    let human = match kind {
        DistanceKind::Kobayashi => format!("kobayashi distance = {value:.6}"),
        _ => {
            let mut text = format!(
                "c* = {mobius_value:.6} (pseudo-hyperbolic), c = atanh c* = {distance:.6}"
            );
            match &data {
                Some(d) => text.push_str(&format!(
                    "\nregime {}, alpha0 = {}, extremal {}",
                    d.regime,
                    human_complex(d.alpha0),
                    extremal_function.as_deref().unwrap_or("")
                )),
                None if lambda == delta => text.push_str("\ncoincident points"),
                None => text.push_str("\nzero case: c = atanh |lambda|^2"),
            }
            text
        }
    };

    let mut tolerances = BTreeMap::new();
    tolerances.insert("regime_edge", neile_core::REGIME_EDGE);
    let record = Record {
        command: format!("distance {kind_name}"),
        inputs: DistanceInputs {
            kind: kind_name,
            lambda: lambda.into(),
            delta: delta.into(),
        },
        outputs: DistanceOutputs {
            value,
            mobius_value,
            distance,
            regime: data.as_ref().map(|d| d.regime),
            alpha0: data.as_ref().map(|d| d.alpha0.into()),
            extremal_alpha: data.as_ref().map(|d| d.extremal_alpha.into()),
            extremal_function,
        },
        tolerances,
        version: env!("CARGO_PKG_VERSION"),
    };
    emit(cli, &record, &human)?;
    Ok(0)
}

#[derive(Serialize)]
struct MetricInputs {
    lambda: Cx,
    z: Cx,
    w: Cx,
    v1: Cx,
    v2: Cx,
}

#[derive(Serialize)]
struct MetricOutputs {
    value: f64,
    at_cusp: bool,
}

fn cmd_metric(cli: &Cli, base: &str, v1: &str, v2: &str) -> Result<u8, Failure> {
    let x = parse_point("base point", base)?;
    let v1 = parse_literal("v1", v1)?;
    let v2 = parse_literal("v2", v2)?;
    let value = caratheodory_metric_at(&x, v1, v2)?;
    let record = Record {
        command: "metric".to_string(),
        inputs: MetricInputs {
            lambda: x.uniformizer().into(),
            z: x.z().into(),
            w: x.w().into(),
            v1: v1.into(),
            v2: v2.into(),
        },
        outputs: MetricOutputs {
            value,
            at_cusp: x.is_origin(),
        },
        tolerances: BTreeMap::new(),
        version: env!("CARGO_PKG_VERSION"),
    };
    let place = if x.is_origin() { "cusp" } else { "smooth point" };
    emit(cli, &record, &format!("E = {value:.6} ({place})"))?;
    Ok(0)
}

#[derive(Serialize)]
struct InterpolateInputs {
    z1: Cx,
    z2: Cx,
    z3: Cx,
    w1: Cx,
    w2: Cx,
    solve: bool,
}

#[derive(Serialize)]
struct SolutionRecord {
    kind: &'static str,
    order: Option<u8>,
    regime: Regime,
    alpha0: Cx,
    scale: Cx,
    inner_center: Cx,
    outer_center: Cx,
    residual_w1: f64,
    residual_w2: f64,
    residual_derivative: f64,
}

#[derive(Serialize)]
struct InterpolateOutputs {
    feasible: bool,
    margin: f64,
    cap: f64,
    separation: f64,
    solution: Option<SolutionRecord>,
}

fn cmd_interpolate(cli: &Cli, args: [&String; 5], solve: bool) -> Result<u8, Failure> {
    let names = ["z1", "z2", "z3", "w1", "w2"];
    let mut vals = [Complex64::ZERO; 5];
    for (slot, (name, text)) in vals.iter_mut().zip(names.iter().zip(args)) {
        *slot = parse_literal(name, text)?;
    }
    let [z1, z2, z3, w1, w2] = vals;
    let problem = MixedProblem::new(z1, z2, z3, w1, w2)?;
    let feas = problem.feasible();

    let mut human = if feas.feasible {
        format!(
            "feasible, margin {:.6} (cap {:.6}, separation {:.6}, Poincare units)",
            feas.margin, feas.cap, feas.separation
        )
    } else {
        format!(
            "infeasible, margin {:.6} (cap {:.6} < separation {:.6})",
            feas.margin, feas.cap, feas.separation
        )
    };

    let solution = if solve && feas.feasible {
        let sol = problem.solve()?;
        let (scale, inner, outer) = sol.pick_parameters();
        let order_text = sol
            .order
            .map(|o| o.to_string())
            .unwrap_or_else(|| "unconstrained".to_string());
        let rec = SolutionRecord {
            kind: match sol.kind {
                SolutionKind::Extremal => "extremal",
                SolutionKind::Slack => "slack",
            },
            order: sol.order,
            regime: sol.regime,
            alpha0: sol.alpha0.into(),
            scale: scale.into(),
            inner_center: inner.into(),
            outer_center: outer.into(),
            residual_w1: (sol.eval(z1) - w1).norm(),
            residual_w2: (sol.eval(z2) - w2).norm(),
            residual_derivative: sol.derivative(z3).norm(),
        };
        human.push_str(&format!(
            "\n{} solution f = phi_w1 . (c phi_a) . h . phi_z3, regime {}, Blaschke order {}",
            rec.kind, sol.regime, order_text
        ));
        human.push_str(&format!(
            "\nresiduals: |f(z1)-w1| = {:.3e}, |f(z2)-w2| = {:.3e}, |f'(z3)| = {:.3e}",
            rec.residual_w1, rec.residual_w2, rec.residual_derivative
        ));
        Some(rec)
    } else {
        None
    };

    let mut tolerances = BTreeMap::new();
    tolerances.insert(
        "extremal_margin",
        cli.tol.unwrap_or(neile_core::EXTREMAL_MARGIN_TOL),
    );
    let record = Record {
        command: "interpolate".to_string(),
        inputs: InterpolateInputs {
            z1: z1.into(),
            z2: z2.into(),
            z3: z3.into(),
            w1: w1.into(),
            w2: w2.into(),
            solve,
        },
        outputs: InterpolateOutputs {
            feasible: feas.feasible,
            margin: feas.margin,
            cap: feas.cap,
            separation: feas.separation,
            solution,
        },
        tolerances,
        version: env!("CARGO_PKG_VERSION"),
    };
    emit(cli, &record, &human)?;
    Ok(if feas.feasible { 0 } else { EXIT_NEGATIVE })
}

fn parse_function(spec: &str) -> Result<FlatDiskFunction, Failure> {
    let usage = || {
        Failure::Usage(format!(
            "function spec `{spec}` not recognized; expected zero | lower-bound | \
             const:<c> | blaschke:<mu>:<z,...> | series:<a0>:<c2,c3,...>"
        ))
    };
    if spec == "zero" {
        return Ok(FlatDiskFunction::from_series(Complex64::ZERO, &[]));
    }
    if spec == "lower-bound" {
        return Ok(lower_bound_certificate().1);
    }
    if let Some(c) = spec.strip_prefix("const:") {
        return Ok(FlatDiskFunction::from_series(
            parse_literal("constant", c)?,
            &[],
        ));
    }
    if let Some(rest) = spec.strip_prefix("blaschke:") {
        let (mu, zeros) = rest.split_once(':').ok_or_else(usage)?;
        let mu = parse_literal("mu", mu)?;
        let zeros = zeros
            .split(',')
            .map(|z| parse_literal("zero", z))
            .collect::<Result<Vec<_>, _>>()?;
        let product = BlaschkeProduct::new(mu, zeros)?;
        return Ok(FlatDiskFunction::from_blaschke(product)?);
    }
    if let Some(rest) = spec.strip_prefix("series:") {
        let (a0, tail) = rest.split_once(':').ok_or_else(usage)?;
        let a0 = parse_literal("a0", a0)?;
        let tail = tail
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| parse_literal("coefficient", t))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(FlatDiskFunction::from_series(a0, &tail));
    }
    Err(usage())
}

fn read_points(path: &std::path::Path) -> Result<Vec<NeilePoint>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut points = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        points.push(parse_point("node", line)?);
    }
    Ok(points)
}

#[derive(Serialize)]
struct ExtendInputs {
    function: String,
    nodes: usize,
    general: bool,
    samples: usize,
    seed: u64,
}

#[derive(Serialize)]
struct CertificateRecord {
    bound: f64,
    partial_z: Cx,
    partial_w: Cx,
    measured_partial_z: Cx,
    measured_partial_w: Cx,
}

#[derive(Serialize)]
struct ExtendOutputs {
    bound: f64,
    scale: f64,
    offset: Cx,
    state_dims: (usize, usize),
    isometry_defect: f64,
    node_residual: f64,
    sampled_sup: f64,
    certificate: Option<CertificateRecord>,
}

fn sample_sup(real: &TransferRealization, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sup = 0.0f64;
    for _ in 0..samples {
        let rz = 0.999 - 0.049 * rng.random::<f64>().powi(2);
        let rw = 0.999 - 0.049 * rng.random::<f64>().powi(2);
        let z = Complex64::from_polar(rz, rng.random_range(0.0..std::f64::consts::TAU));
        let w = Complex64::from_polar(rw, rng.random_range(0.0..std::f64::consts::TAU));
        let value = real
            .eval(z, w)
            .expect("samples lie inside the open bidisk")
            .norm();
        sup = sup.max(value);
    }
    sup
}

fn cmd_extend(
    cli: &Cli,
    function: &str,
    points: Option<&std::path::Path>,
    general: bool,
    samples: usize,
) -> Result<u8, Failure> {
    let f = parse_function(function)?;
    let nodes = match points {
        Some(path) => read_points(path)?,
        None => neile_core::certificate_points(),
    };
    let real = if general {
        neile_core::extend_general(&nodes, &f)?
    } else {
        realize_extension(&nodes, &f)?
    };

    let mut node_residual = 0.0f64;
    for p in &nodes {
        let target = f.eval(p.uniformizer());
        let got = real.eval(p.z(), p.w())?;
        node_residual = node_residual.max((got - target).norm());
    }
    let sampled_sup = sample_sup(&real, samples, cli.seed);

    let mut human = format!(
        "bound {:.6} (scale {:.6}, offset {}), state dims ({}, {})",
        real.bound(),
        real.scale(),
        human_complex(real.offset()),
        real.dims().0,
        real.dims().1
    );
    human.push_str(&format!(
        "\nnode residual {:.3e}, isometry defect {:.3e}, sampled sup {:.6} over {} draws",
        node_residual,
        real.isometry_defect(),
        sampled_sup,
        samples
    ));

    let certificate = if function == "lower-bound" {
        let (cert, _) = lower_bound_certificate();
        let (pz, pw) = cert.partials.expect("the lower certificate carries partials");
        let check = neile_core::schwarz_bidisk_check(
            |z, w| real.eval(z, w).expect("probes lie inside the bidisk"),
            real.bound(),
        )?;
        human.push_str(&format!(
            "\nlower certificate: bound {:.6}, measured origin partials ({}, {})",
            cert.bound,
            human_complex(check.partial_z),
            human_complex(check.partial_w),
        ));
        Some(CertificateRecord {
            bound: cert.bound,
            partial_z: pz.into(),
            partial_w: pw.into(),
            measured_partial_z: check.partial_z.into(),
            measured_partial_w: check.partial_w.into(),
        })
    } else {
        None
    };

    let mut tolerances = BTreeMap::new();
    tolerances.insert("interpolation", 1e-8);
    tolerances.insert("isometry_defect", neile_core::ISOMETRY_DEFECT_TOL);
    let record = Record {
        command: "extend".to_string(),
        inputs: ExtendInputs {
            function: function.to_string(),
            nodes: nodes.len(),
            general,
            samples,
            seed: cli.seed,
        },
        outputs: ExtendOutputs {
            bound: real.bound(),
            scale: real.scale(),
            offset: real.offset().into(),
            state_dims: real.dims(),
            isometry_defect: real.isometry_defect(),
            node_residual,
            sampled_sup,
            certificate,
        },
        tolerances,
        version: env!("CARGO_PKG_VERSION"),
    };
    emit(cli, &record, &human)?;
    Ok(0)
}

#[derive(Serialize)]
struct GridInputs {
    lambda: Cx,
    delta: Cx,
    n_r: u32,
    n_theta: u32,
}

#[derive(Serialize)]
struct GridOutputs {
    rows: usize,
    max_f: f64,
    argmax_r: f64,
    argmax_theta: f64,
    path: String,
}

fn cmd_grid(
    cli: &Cli,
    lambda: &str,
    delta: &str,
    n_r: u32,
    n_theta: u32,
    out: &std::path::Path,
) -> Result<u8, Failure> {
    let lambda = parse_literal("lambda", lambda)?;
    let delta = parse_literal("delta", delta)?;
    f_eval(Complex64::ZERO, lambda, delta)?;

    // one chunk per radius, evaluated in parallel, concatenated in index order
    let chunks: Vec<(String, f64, f64, f64)> = (0..=n_r)
        .into_par_iter()
        .map(|i| {
            let r = f64::from(i) / f64::from(n_r);
            let mut text = String::new();
            let mut best = f64::NEG_INFINITY;
            let mut best_theta = 0.0f64;
            for j in 0..n_theta {
                let theta = std::f64::consts::TAU * f64::from(j) / f64::from(n_theta);
                let alpha = Complex64::from_polar(r, theta);
                let value =
                    f_eval(alpha, lambda, delta).expect("grid points lie in the closed disk");
                if value > best {
                    best = value;
                    best_theta = theta;
                }
                text.push_str(&format!(
                    "{r:.16e},{theta:.16e},{:.16e},{:.16e},{value:.16e}\n",
                    alpha.re, alpha.im
                ));
            }
            (text, best, r, best_theta)
        })
        .collect();

    let mut text = String::from("r,theta,re_alpha,im_alpha,F\n");
    let mut max_f = f64::NEG_INFINITY;
    let (mut argmax_r, mut argmax_theta) = (0.0f64, 0.0f64);
    for (chunk, best, r, best_theta) in &chunks {
        text.push_str(chunk);
        if *best > max_f {
            max_f = *best;
            argmax_r = *r;
            argmax_theta = *best_theta;
        }
    }
    let rows = (n_r as usize + 1) * n_theta as usize;
    std::fs::write(out, text.as_bytes())
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", out.display())))?;

    let record = Record {
        command: "grid".to_string(),
        inputs: GridInputs {
            lambda: lambda.into(),
            delta: delta.into(),
            n_r,
            n_theta,
        },
        outputs: GridOutputs {
            rows,
            max_f,
            argmax_r,
            argmax_theta,
            path: out.display().to_string(),
        },
        tolerances: BTreeMap::new(),
        version: env!("CARGO_PKG_VERSION"),
    };
    emit(
        cli,
        &record,
        &format!(
            "wrote {} ({rows} rows); max F = {max_f:.6} at r = {argmax_r:.6}, theta = {argmax_theta:.6}",
            out.display()
        ),
    )?;
    Ok(0)
}

#[derive(Serialize)]
struct VerifyInputs {
    profile: &'static str,
    seed: u64,
}

#[derive(Serialize)]
struct VerifyOutputs {
    passed: bool,
    reports: Vec<neile_core::OracleReport>,
}

fn cmd_verify(cli: &Cli, profile: ProfileArg, seed: u64) -> Result<u8, Failure> {
    let (profile_name, profile) = match profile {
        ProfileArg::Quick => ("quick", Profile::Quick),
        ProfileArg::Thorough => ("thorough", Profile::Thorough),
    };
    let reports = run_suite(profile, seed);
    let passed = suite_passes(&reports);

    let mut human = String::new();
    for report in &reports {
        human.push_str(&format!(
            "{:<28} {}  closed {:.9e}  oracle {:.9e}  gap {:.3e}  ({})\n",
            report.quantity,
            if report.pass { "pass" } else { "FAIL" },
            report.closed_form,
            report.oracle_value,
            report.abs_gap,
            report.details
        ));
    }
    human.push_str(if passed {
        "suite: all checks passed"
    } else {
        "suite: FAILURES present"
    });

    let record = Record {
        command: "verify".to_string(),
        inputs: VerifyInputs {
            profile: profile_name,
            seed,
        },
        outputs: VerifyOutputs { passed, reports },
        tolerances: BTreeMap::new(),
        version: env!("CARGO_PKG_VERSION"),
    };
    emit(cli, &record, &human)?;
    Ok(if passed { 0 } else { EXIT_NEGATIVE })
}
