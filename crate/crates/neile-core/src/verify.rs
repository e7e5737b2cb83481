//! Reproducible verification suite tying every closed form to its oracle.
//!
//! `run_suite` draws all randomness from one counter-based generator per row,
//! keeps reductions index-ordered, and therefore produces byte-identical
//! reports for a fixed profile and seed.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::caratheodory::{cstar_raw, extremal_parameters, Regime};
use crate::disk::{mobius_raw, BlaschkeProduct};
use crate::extension::{
    lower_bound_certificate, psd_check, realize_extension, schwarz_bidisk_check, PSD_REL_TOL,
};
use crate::interpolation::MixedProblem;
use crate::oracle::{
    boundary_comparison, critical_scan, flat_candidate_probe, laplacian_identity_check,
    metric_oracle, oracle_cstar, sample_disk,
};
use crate::variety::{parameterize, FlatDiskFunction, NeilePoint, TangentVector};

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Suite size: Quick keeps the whole run in seconds, Thorough multiplies the
/// sample counts for release-grade confidence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Thorough,
}

impl Profile {
    fn pairs(self) -> usize {
        match self {
            Profile::Quick => 24,
            Profile::Thorough => 96,
        }
    }

    fn grid(self) -> (usize, usize) {
        match self {
            Profile::Quick => (64, 96),
            Profile::Thorough => (128, 160),
        }
    }

    fn interior_pairs(self) -> usize {
        match self {
            Profile::Quick => 8,
            Profile::Thorough => 24,
        }
    }

    fn instances(self) -> usize {
        match self {
            Profile::Quick => 50,
            Profile::Thorough => 250,
        }
    }

    fn extensions(self) -> usize {
        match self {
            Profile::Quick => 6,
            Profile::Thorough => 20,
        }
    }
}

/// One oracle-versus-closed-form comparison.
#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub quantity: String,
    pub closed_form: f64,
    pub oracle_value: f64,
    pub abs_gap: f64,
    pub samples: usize,
    pub seed: u64,
    pub pass: bool,
    pub details: String,
}

pub fn suite_passes(reports: &[OracleReport]) -> bool {
    !reports.is_empty() && reports.iter().all(|r| r.pass)
}

fn row_rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn sample_pair(rng: &mut ChaCha8Rng) -> (Complex64, Complex64) {
    loop {
        let lambda = sample_disk(rng, 0.9);
        let delta = sample_disk(rng, 0.9);
        if lambda.norm() > 0.05 && delta.norm() > 0.05 && (lambda - delta).norm() > 0.05 {
            return (lambda, delta);
        }
    }
}

fn sample_interior_pair(rng: &mut ChaCha8Rng) -> (Complex64, Complex64) {
    loop {
        let (lambda, delta) = sample_pair(rng);
        if let Ok(data) = extremal_parameters(lambda, delta) {
            if data.regime == Regime::Interior {
                return (lambda, delta);
            }
        }
    }
}

fn sample_flat_blaschke(rng: &mut ChaCha8Rng) -> FlatDiskFunction {
    let degree = rng.random_range(0..3usize);
    let mut zeros = vec![Complex64::ZERO, Complex64::ZERO];
    for _ in 0..degree {
        zeros.push(sample_disk(rng, 0.9));
    }
    let mu = Complex64::from_polar(1.0, TAU * rng.random::<f64>());
    FlatDiskFunction::from_blaschke(
        BlaschkeProduct::new(mu, zeros).expect("sampled zeros lie in the open disk"),
    )
    .expect("a double zero at the origin is flat")
}

fn sample_points(rng: &mut ChaCha8Rng, count: usize) -> Vec<NeilePoint> {
    let mut lambdas: Vec<Complex64> = Vec::with_capacity(count);
    while lambdas.len() < count {
        let l = sample_disk(rng, 0.8);
        if lambdas.iter().all(|p| (p - l).norm() > 1e-3) {
            lambdas.push(l);
        }
    }
    lambdas
        .into_iter()
        .map(|l| parameterize(l).expect("sampled uniformizers lie in the open disk"))
        .collect()
}

/// Runs every oracle row and returns the reports in a fixed order.
pub fn run_suite(profile: Profile, seed: u64) -> Vec<OracleReport> {
    vec![
        distance_row(profile, seed),
        zero_case_row(profile, seed),
        acute_angle_row(profile, seed),
        critical_point_row(profile, seed),
        laplacian_row(profile, seed),
        boundary_row(profile, seed),
        dominance_row(profile, seed),
        candidate_row(profile, seed),
        metric_cusp_row(profile, seed),
        metric_smooth_row(profile, seed),
        interpolation_row(profile, seed),
        extension_positivity_row(profile, seed),
        extension_interpolation_row(profile, seed),
        extension_bound_row(profile, seed),
        certificate_row(profile, seed),
        determinism_row(profile, seed),
    ]
}

fn distance_row(profile: Profile, seed: u64) -> OracleReport {
    let mut rng = row_rng(seed, 1);
    let (n_r, n_theta) = profile.grid();
    let mut worst = (0.0f64, Complex64::ZERO, Complex64::ZERO, 0.0, 0.0);
    for _ in 0..profile.pairs() {
        let (lambda, delta) = sample_pair(&mut rng);
        let closed = cstar_raw(lambda, delta);
        let got = oracle_cstar(lambda, delta, n_r, n_theta)
            .expect("sampled parameters lie in the open disk");
        let gap = (closed - got.value).abs();
        if gap > worst.0 {
            worst = (gap, lambda, delta, closed, got.value);
        }
    }
    OracleReport {
        quantity: "distance-grid-oracle".into(),
        closed_form: worst.3,
        oracle_value: worst.4,
        abs_gap: worst.0,
        samples: profile.pairs(),
        seed,
        pass: worst.0 <= 1e-6,
        details: format!(
            "worst pair ({:.4}{:+.4}i, {:.4}{:+.4}i)",
            worst.1.re, worst.1.im, worst.2.re, worst.2.im
        ),
    }
}

fn zero_case_row(profile: Profile, seed: u64) -> OracleReport {
    let mut rng = row_rng(seed, 2);
    let (n_r, n_theta) = profile.grid();
    let mut worst = (0.0f64, 0.0, 0.0);
    let samples = profile.pairs() / 2;
    for _ in 0..samples {
        let delta = sample_disk(&mut rng, 0.9);
        let closed = delta.norm_sqr();
        let got = oracle_cstar(Complex64::ZERO, delta, n_r, n_theta)
            .expect("sampled parameters lie in the open disk");
        let gap = (closed - got.value).abs();
        if gap > worst.0 {
            worst = (gap, closed, got.value);
        }
    }
    OracleReport {
        quantity: "distance-zero-case".into(),
        closed_form: worst.1,
        oracle_value: worst.2,
        abs_gap: worst.0,
        samples,
        seed,
        pass: worst.0 <= 1e-8,
        details: "c*(0, delta) = |delta|^2 against the grid oracle".into(),
    }
}

fn acute_angle_row(profile: Profile, seed: u64) -> OracleReport {
    let mut rng = row_rng(seed, 3);
    let samples = 10_000 * if profile == Profile::Thorough { 4 } else { 1 };
    let mut violations = 0usize;
    for _ in 0..samples {
        let (lambda, delta) = sample_pair(&mut rng);
        if lambda.re * delta.re + lambda.im * delta.im > 0.0 {
            let data =
                extremal_parameters(lambda, delta).expect("sampled parameters are nonzero");
            if data.regime != Regime::Boundary {
                violations += 1;
            }
        }
    }
    OracleReport {
        quantity: "acute-angle-regime".into(),
        closed_form: 0.0,
        oracle_value: violations as f64,
        abs_gap: violations as f64,
        samples,
        seed,
        pass: violations == 0,
        details: "Re(lambda conj(delta)) > 0 forces the boundary regime".into(),
    }
}

fn critical_point_row(profile: Profile, seed: u64) -> OracleReport {
    let mut rng = row_rng(seed, 4);
    let mut worst_gap = 0.0f64;
    let mut escapes = 0usize;
    let mut empty = 0usize;
    let pairs = profile.interior_pairs();
    for _ in 0..pairs {
        let (lambda, delta) = sample_interior_pair(&mut rng);
        let data = extremal_parameters(lambda, delta)
            .expect("sampled parameters are valid for the closed form");
        let scan = critical_scan(lambda, delta, 48, 200)
            .expect("sampled parameters are valid for the scan");
        // Past 0.99 the radius test cannot tell alpha_0 from a boundary
        // escape, so emptiness is only meaningful inside it.
        if data.alpha0.norm() < 0.99 && scan.interior_points.is_empty() {
            empty += 1;
        }
        escapes += scan.boundary_escapes;
        worst_gap = worst_gap.max(scan.max_gap_to_alpha0);
    }
    OracleReport {
        quantity: "critical-point-uniqueness".into(),
        closed_form: 0.0,
        oracle_value: worst_gap,
        abs_gap: worst_gap,
        samples: pairs,
        seed,
        pass: worst_gap <= 1e-6 && empty == 0,
        details: format!(
            "48 sunflower starts plus alpha_0 per pair; {escapes} boundary escapes; every interior endpoint sits at alpha_0"
        ),
    }
}

fn laplacian_row(profile: Profile, seed: u64) -> OracleReport {
    let mut rng = row_rng(seed, 5);
    let mut worst = (0.0f64, 0.0, 0.0);
    let pairs = profile.interior_pairs();
    for _ in 0..pairs {
        let (lambda, delta) = sample_interior_pair(&mut rng);
        let report = laplacian_identity_check(lambda, delta, 1e-4)
            .expect("sampled parameters are valid for the check");
        if report.gap > worst.0 {
            worst = (report.gap, report.closed_form, report.finite_difference);
        }
    }
    OracleReport {
        quantity: "laplacian-identity".into(),
        closed_form: worst.1,
        oracle_value: worst.2,
        abs_gap: worst.0,
        samples: pairs,
        seed,
        pass: worst.0 <= 1e-5,
        details: "five-point Laplacian of log G at z = 0 vs -8(1/G2 - 1/G1)".into(),
    }
}

fn boundary_row(profile: Profile, seed: u64) -> OracleReport {
    let mut rng = row_rng(seed, 6);
    let mut worst_spread = 0.0f64;
    for _ in 0..profile.pairs() {
        let (lambda, delta) = sample_pair(&mut rng);
        let cmp = boundary_comparison(lambda, delta, 256)
            .expect("sampled parameters are valid for the comparison");
        worst_spread = worst_spread.max(cmp.spread);
    }
    OracleReport {
        quantity: "boundary-constancy".into(),
        closed_form: 0.0,
        oracle_value: worst_spread,
        abs_gap: worst_spread,
        samples: profile.pairs(),
        seed,
        pass: worst_spread <= 1e-11,
        details: "F is constant on |alpha| = 1 (256 samples per pair)".into(),
    }
}

fn dominance_row(profile: Profile, seed: u64) -> OracleReport {
    let mut rng = row_rng(seed, 7);
    let mut min_excess = f64::INFINITY;
    for _ in 0..profile.pairs() {
        let (lambda, delta) = sample_pair(&mut rng);
        let cmp = boundary_comparison(lambda, delta, 8)
            .expect("sampled parameters are valid for the comparison");
        min_excess = min_excess.min(cmp.excess);
    }
    OracleReport {
        quantity: "interior-dominance".into(),
        closed_form: 0.0,
        oracle_value: min_excess,
        abs_gap: min_excess.min(0.0).abs(),
        samples: profile.pairs(),
        seed,
        pass: min_excess >= -1e-12,
        details: "c* >= m(lambda^2, delta^2), with equality in the boundary regime".into(),
    }
}

fn candidate_row(profile: Profile, seed: u64) -> OracleReport {
    let mut rng = row_rng(seed, 8);
    let mut max_excess = f64::NEG_INFINITY;
    let mut max_shortfall = 0.0f64;
    for k in 0..profile.pairs() {
        let (lambda, delta) = sample_pair(&mut rng);
        let probe = flat_candidate_probe(lambda, delta, 200, seed.wrapping_add(k as u64))
            .expect("sampled parameters are valid for the probe");
        max_excess = max_excess.max(probe.excess);
        max_shortfall = max_shortfall.max(probe.closed_form - probe.best);
    }
    OracleReport {
        quantity: "candidate-lower-bounds".into(),
        closed_form: 0.0,
        oracle_value: max_excess,
        abs_gap: max_excess.max(0.0),
        samples: profile.pairs(),
        seed,
        pass: max_excess <= 1e-12 && max_shortfall <= 1e-12,
        details: "random flat candidates never beat c*; the extremal function attains it".into(),
    }
}

fn metric_cusp_row(profile: Profile, seed: u64) -> OracleReport {
    let mut rng = row_rng(seed, 9);
    let mut worst = (0.0f64, 0.0, 0.0);
    let mut excess = f64::NEG_INFINITY;
    for k in 0..profile.pairs() {
        let v1 = sample_disk(&mut rng, 2.0);
        let v2 = sample_disk(&mut rng, 2.0);
        if v1.norm() < 1e-3 && v2.norm() < 1e-3 {
            continue;
        }
        let v = TangentVector::new(NeilePoint::origin(), v1, v2)
            .expect("every pair is tangent at the cusp");
        let probe = metric_oracle(&v, 200, seed.wrapping_add(k as u64));
        if probe.gap > worst.0 {
            worst = (probe.gap, probe.closed_form, probe.oracle_value);
        }
        excess = excess.max(probe.candidate_excess);
    }
    OracleReport {
        quantity: "metric-cusp".into(),
        closed_form: worst.1,
        oracle_value: worst.2,
        abs_gap: worst.0,
        samples: profile.pairs(),
        seed,
        pass: worst.0 <= 1e-9 && excess <= 1e-12,
        details: "Schur-region sweep at the cusp; candidates stay below".into(),
    }
}

fn metric_smooth_row(profile: Profile, seed: u64) -> OracleReport {
    let mut rng = row_rng(seed, 10);
    let mut worst = (0.0f64, 0.0, 0.0);
    let mut excess = f64::NEG_INFINITY;
    for k in 0..profile.pairs() {
        let lambda = loop {
            let l = sample_disk(&mut rng, 0.85);
            if l.norm() > 0.05 {
                break l;
            }
        };
        let base = parameterize(lambda).expect("sampled uniformizer lies in the open disk");
        let factor = sample_disk(&mut rng, 1.0) + Complex64::new(0.2, 0.0);
        let (t1, t2) = base.tangent_basis()[0];
        let v = TangentVector::new(base, factor * t1, factor * t2)
            .expect("scaled tangent directions are colinear");
        let probe = metric_oracle(&v, 200, seed.wrapping_add(k as u64));
        if probe.gap > worst.0 {
            worst = (probe.gap, probe.closed_form, probe.oracle_value);
        }
        excess = excess.max(probe.candidate_excess);
    }
    OracleReport {
        quantity: "metric-smooth".into(),
        closed_form: worst.1,
        oracle_value: worst.2,
        abs_gap: worst.0,
        samples: profile.pairs(),
        seed,
        pass: worst.0 <= 1e-9 && excess <= 1e-12,
        details: "Schwarz-Pick sweep at smooth points; candidates stay below".into(),
    }
}

fn interpolation_row(profile: Profile, seed: u64) -> OracleReport {
    let mut rng = row_rng(seed, 11);
    let mut worst_residual = 0.0f64;
    let mut worst_modulus = 0.0f64;
    let instances = profile.instances();
    for k in 0..instances {
        let (z1, z2, z3) = loop {
            let a = sample_disk(&mut rng, 0.8);
            let b = sample_disk(&mut rng, 0.8);
            let c = sample_disk(&mut rng, 0.8);
            if (a - b).norm() > 0.05 && (a - c).norm() > 0.05 && (b - c).norm() > 0.05 {
                break (a, b, c);
            }
        };
        let w1 = sample_disk(&mut rng, 0.8);
        let cap = cstar_raw(mobius_raw(z3, z1), mobius_raw(z3, z2));
        let s = if k % 5 == 0 {
            1.0
        } else {
            0.9 * rng.random::<f64>()
        };
        let w2 = mobius_raw(
            w1,
            Complex64::from_polar(s * cap, TAU * rng.random::<f64>()),
        );
        let problem =
            MixedProblem::new(z1, z2, z3, w1, w2).expect("sampled nodes are pairwise distinct");
        let solution = problem.solve().expect("sampled data is feasible");
        let r1 = (solution.eval(z1) - w1).norm();
        let r2 = (solution.eval(z2) - w2).norm();
        let r3 = solution.derivative(z3).norm();
        worst_residual = worst_residual.max(r1).max(r2).max(r3);
        for j in 0..32 {
            let zeta = Complex64::from_polar(0.97, TAU * j as f64 / 32.0);
            worst_modulus = worst_modulus.max(solution.eval(zeta).norm());
        }
    }
    OracleReport {
        quantity: "interpolation-residuals".into(),
        closed_form: 0.0,
        oracle_value: worst_residual,
        abs_gap: worst_residual,
        samples: instances,
        seed,
        pass: worst_residual <= 1e-9 && worst_modulus <= 1.0 + 1e-10,
        details: format!("max |f| on the 0.97 circle: {worst_modulus:.12}"),
    }
}

fn extension_positivity_row(profile: Profile, seed: u64) -> OracleReport {
    let mut rng = row_rng(seed, 12);
    let mut min_eig = f64::INFINITY;
    let trials = profile.extensions();
    for _ in 0..trials {
        let count = 6 + rng.random_range(0..7usize);
        let points = sample_points(&mut rng, count);
        let f = sample_flat_blaschke(&mut rng);
        let kd = crate::extension::kernel_matrices(&points, &f)
            .expect("sampled points are distinct and f is flat");
        let report = psd_check(&kd.delta, PSD_REL_TOL).expect("Delta is Hermitian");
        min_eig = min_eig.min(report.min_eigenvalue / report.scale.max(1.0));
    }
    OracleReport {
        quantity: "extension-positivity".into(),
        closed_form: 0.0,
        oracle_value: min_eig,
        abs_gap: min_eig.min(0.0).abs(),
        samples: trials,
        seed,
        pass: min_eig >= -PSD_REL_TOL,
        details: "scaled minimum eigenvalue of sampled Delta kernels".into(),
    }
}

fn extension_interpolation_row(profile: Profile, seed: u64) -> OracleReport {
    let mut rng = row_rng(seed, 13);
    let mut worst = 0.0f64;
    let trials = profile.extensions();
    for _ in 0..trials {
        let count = 6 + rng.random_range(0..7usize);
        let points = sample_points(&mut rng, count);
        let f = sample_flat_blaschke(&mut rng);
        let ext = realize_extension(&points, &f).expect("sampled data realizes");
        for x in &points {
            let want = {
                let l = x.uniformizer();
                f.eval(l)
            };
            let got = ext
                .eval(x.z(), x.w())
                .expect("sample points lie inside the bidisk");
            worst = worst.max((got - want).norm());
        }
    }
    OracleReport {
        quantity: "extension-interpolation".into(),
        closed_form: 0.0,
        oracle_value: worst,
        abs_gap: worst,
        samples: trials,
        seed,
        pass: worst <= 1e-8,
        details: "realized G reproduces f at the sampled points".into(),
    }
}

fn extension_bound_row(profile: Profile, seed: u64) -> OracleReport {
    let mut rng = row_rng(seed, 14);
    let mut sup = 0.0f64;
    let trials = profile.extensions();
    for _ in 0..trials {
        let count = 6 + rng.random_range(0..7usize);
        let points = sample_points(&mut rng, count);
        let f = sample_flat_blaschke(&mut rng);
        let ext = realize_extension(&points, &f).expect("sampled data realizes");
        let probes: Vec<(Complex64, Complex64)> = (0..400)
            .map(|_| {
                (
                    Complex64::from_polar(0.999 * rng.random::<f64>().sqrt(), TAU * rng.random::<f64>()),
                    Complex64::from_polar(0.999 * rng.random::<f64>().sqrt(), TAU * rng.random::<f64>()),
                )
            })
            .collect();
        let local = probes
            .par_iter()
            .map(|&(z, w)| {
                ext.eval(z, w)
                    .expect("probes lie inside the bidisk")
                    .norm()
            })
            .reduce(|| 0.0f64, f64::max);
        sup = sup.max(local);
    }
    OracleReport {
        quantity: "extension-bound".into(),
        closed_form: SQRT2,
        oracle_value: sup,
        abs_gap: (sup - SQRT2).max(0.0),
        samples: trials,
        seed,
        pass: sup <= SQRT2 + 1e-8,
        details: "sampled sup of |G| over the bidisk stays within sqrt(2)".into(),
    }
}

fn certificate_row(_profile: Profile, seed: u64) -> OracleReport {
    let (cert, witness) = lower_bound_certificate();
    let points = certificate_points();
    let ext = realize_extension(&points, &witness).expect("the witness realizes");
    let check = schwarz_bidisk_check(
        |z, w| {
            ext.eval(z, w)
                .expect("Schwarz probes lie inside the bidisk")
        },
        SQRT2,
    )
    .expect("the realized extension vanishes at the origin");
    let (pz, pw) = cert.partials.expect("the lower certificate carries partials");
    let partial_gap = (check.partial_z - pz)
        .norm()
        .max((check.partial_w - pw).norm());
    let mut sup = 0.0f64;
    for j in 0..4096 {
        let zeta = Complex64::from_polar(0.999, TAU * j as f64 / 4096.0);
        let val = ext
            .eval(-zeta, zeta)
            .expect("diagonal probes lie inside the bidisk")
            .norm();
        sup = sup.max(val);
    }
    OracleReport {
        quantity: "certificate-gap".into(),
        closed_form: cert.bound,
        oracle_value: check.sum,
        abs_gap: (check.sum - cert.bound).abs(),
        samples: points.len(),
        seed,
        pass: check.pass && partial_gap <= 1e-6 && sup >= 1.2 && sup <= SQRT2 + 1e-8,
        details: format!(
            "forced origin partials reproduced (gap {partial_gap:.3e}); diagonal sup {sup:.6} in [5/4 - eps, sqrt(2)]"
        ),
    }
}

/// Twelve nodes: the origin, a ring at 0.18 that pins the origin Taylor data
/// of the realization, and a ring at 0.55 that anchors the kernels away from
/// the cusp.
pub fn certificate_points() -> Vec<NeilePoint> {
    let mut points = vec![NeilePoint::origin()];
    for k in 0..8 {
        let zeta = Complex64::from_polar(0.18, TAU * k as f64 / 8.0);
        points.push(parameterize(zeta).expect("ring points lie in the open disk"));
    }
    for k in 0..3 {
        let zeta = Complex64::from_polar(0.55, TAU * (k as f64 + 0.5) / 3.0);
        points.push(parameterize(zeta).expect("ring points lie in the open disk"));
    }
    points
}

fn determinism_row(profile: Profile, seed: u64) -> OracleReport {
    let mut rng = row_rng(seed, 16);
    let (lambda, delta) = sample_pair(&mut rng);
    let a = oracle_cstar(lambda, delta, 48, 64).expect("sampled parameters are valid");
    let b = oracle_cstar(lambda, delta, 48, 64).expect("sampled parameters are valid");
    let same_oracle = a.value.to_bits() == b.value.to_bits() && a.argmax == b.argmax;

    let problem = MixedProblem::new(
        Complex64::new(0.3, 0.1),
        Complex64::new(-0.2, 0.4),
        Complex64::new(0.1, -0.3),
        Complex64::new(0.2, 0.2),
        Complex64::new(0.25, 0.15),
    )
    .expect("fixed nodes are pairwise distinct");
    let s1 = problem.solve().expect("fixed data is feasible");
    let s2 = problem.solve().expect("fixed data is feasible");
    let same_solve = s1.pick_parameters() == s2.pick_parameters();

    let mismatches = usize::from(!same_oracle) + usize::from(!same_solve);
    OracleReport {
        quantity: "determinism".into(),
        closed_form: 0.0,
        oracle_value: mismatches as f64,
        abs_gap: mismatches as f64,
        samples: profile.pairs().min(2),
        seed,
        pass: mismatches == 0,
        details: "repeated runs agree bitwise".into(),
    }
}
