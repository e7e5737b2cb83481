//! Brute-force oracles for the closed forms.
//!
//! Every derived quantity is recomputed here from its definition and the
//! results are compared elsewhere: the extremal value by maximizing F over
//! the closed disk (polar grid plus Nelder-Mead refinement), the critical
//! point claim by multi-start gradient ascent, the curvature identity by
//! finite differences, the boundary behaviour by direct sampling, and the
//! metric by sweeping the Schur coefficient region and by running genuine
//! disk-ball candidates through the definition.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::caratheodory::{
    caratheodory_metric, cstar_raw, extremal_function, extremal_parameters, f_raw, g_ratio,
    log_g_laplacian_closed_form, Regime,
};
use crate::disk::{m_raw, BlaschkeProduct, UnitDiskPoint};
use crate::error::Result;
use crate::variety::TangentVector;

/// Simplex diameter at which Nelder-Mead refinement stops.
pub const NM_DIAMETER_TOL: f64 = 1e-9;

/// Iteration cap for one Nelder-Mead run.
pub const NM_MAX_ITERS: usize = 400;

/// Ascent endpoints at or beyond this radius count as boundary escapes.
pub const ESCAPE_RADIUS: f64 = 0.995;

const GOLDEN_ANGLE: f64 = 2.399963229728653;

fn clamp_disk(alpha: Complex64) -> Complex64 {
    let n = alpha.norm();
    if n > 1.0 {
        alpha / n
    } else {
        alpha
    }
}

/// Result of a maximization oracle.
#[derive(Clone, Copy, Debug)]
pub struct OracleExtremum {
    pub value: f64,
    pub argmax: Complex64,
    pub evaluations: usize,
}

/// Maximizes F(alpha) = m(lambda^2 phi_alpha(lambda), delta^2 phi_alpha(delta))
/// over the closed disk: an inclusive polar grid picks the basin, Nelder-Mead
/// runs from the grid argmax and from alpha_0 (when interior) finish the job.
/// The grid reduction is index-ordered, so results are bitwise reproducible.
pub fn oracle_cstar(
    lambda: Complex64,
    delta: Complex64,
    n_r: usize,
    n_theta: usize,
) -> Result<OracleExtremum> {
    let lambda = UnitDiskPoint::new(lambda)?.value();
    let delta = UnitDiskPoint::new(delta)?.value();
    let objective = move |a: Complex64| f_raw(clamp_disk(a), lambda, delta);

    let rows: Vec<(f64, Complex64)> = (0..=n_r)
        .into_par_iter()
        .map(|i| {
            let r = i as f64 / n_r as f64;
            let mut best = (f64::NEG_INFINITY, Complex64::ZERO);
            for j in 0..n_theta {
                let a = Complex64::from_polar(r, TAU * j as f64 / n_theta as f64);
                let v = f_raw(a, lambda, delta);
                if v > best.0 {
                    best = (v, a);
                }
            }
            best
        })
        .collect();
    let mut best = rows[0];
    for row in &rows[1..] {
        if row.0 > best.0 {
            best = *row;
        }
    }
    let mut evaluations = (n_r + 1) * n_theta;

    let mut seeds = vec![best.1];
    if let Ok(data) = extremal_parameters(lambda, delta) {
        if data.alpha0.norm() < 1.0 {
            seeds.push(data.alpha0);
        }
    }
    for seed in seeds {
        let (arg, val, evals) = nelder_mead_max(&objective, seed, 0.5 / n_r.max(1) as f64);
        evaluations += evals;
        if val > best.0 {
            best = (val, clamp_disk(arg));
        }
    }
    Ok(OracleExtremum {
        value: best.0,
        argmax: best.1,
        evaluations,
    })
}

/// Hand-rolled Nelder-Mead maximization in the plane. Plenty for a smooth
/// two-variable objective; terminates on simplex diameter or iteration cap.
fn nelder_mead_max<F>(f: &F, start: Complex64, step: f64) -> (Complex64, f64, usize)
where
    F: Fn(Complex64) -> f64,
{
    let mut evals = 0usize;
    let mut g = |p: Complex64| {
        evals += 1;
        -f(p)
    };
    let mut simplex = [
        (start, 0.0),
        (start + Complex64::new(step, 0.0), 0.0),
        (start + Complex64::new(0.0, step), 0.0),
    ];
    for v in simplex.iter_mut() {
        v.1 = g(v.0);
    }
    for _ in 0..NM_MAX_ITERS {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diameter = (simplex[0].0 - simplex[1].0)
            .norm()
            .max((simplex[0].0 - simplex[2].0).norm())
            .max((simplex[1].0 - simplex[2].0).norm());
        if diameter < NM_DIAMETER_TOL {
            break;
        }
        let centroid = (simplex[0].0 + simplex[1].0) / 2.0;
        let worst = simplex[2];
        let reflected = centroid + (centroid - worst.0);
        let fr = g(reflected);
        if fr < simplex[0].1 {
            let expanded = centroid + (centroid - worst.0) * 2.0;
            let fe = g(expanded);
            simplex[2] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
        } else if fr < simplex[1].1 {
            simplex[2] = (reflected, fr);
        } else {
            let contracted = if fr < worst.1 {
                centroid + (reflected - centroid) * 0.5
            } else {
                centroid + (worst.0 - centroid) * 0.5
            };
            let fc = g(contracted);
            if fc < worst.1.min(fr) {
                simplex[2] = (contracted, fc);
            } else {
                for k in 1..3 {
                    let shrunk = simplex[0].0 + (simplex[k].0 - simplex[0].0) * 0.5;
                    simplex[k] = (shrunk, g(shrunk));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    (simplex[0].0, -simplex[0].1, evals)
}

/// Outcome of the multi-start ascent scan for critical points of F.
#[derive(Clone, Debug)]
pub struct CriticalScan {
    /// Deduplicated interior endpoints (within 1e-5 of each other).
    pub interior_points: Vec<Complex64>,
    pub boundary_escapes: usize,
    /// Largest distance from an interior endpoint to alpha_0.
    pub max_gap_to_alpha0: f64,
    pub starts: usize,
}

/// Runs steepest-ascent trajectories of F from a sunflower pattern of seeds,
/// plus one seeded at alpha_0 when the regime is interior so the known
/// critical point is always represented even when its basin is tiny. Each
/// trajectory either converges to an interior critical point or escapes to
/// the boundary circle, where F is constant.
pub fn critical_scan(
    lambda: Complex64,
    delta: Complex64,
    n_starts: usize,
    max_iters: usize,
) -> Result<CriticalScan> {
    let lambda = UnitDiskPoint::new(lambda)?.value();
    let delta = UnitDiskPoint::new(delta)?.value();
    let data = extremal_parameters(lambda, delta)?;
    let objective = move |a: Complex64| f_raw(clamp_disk(a), lambda, delta);

    let mut seeds: Vec<Complex64> = (0..n_starts)
        .map(|k| {
            let r = 0.97 * (((k as f64) + 0.5) / n_starts as f64).sqrt();
            Complex64::from_polar(r, GOLDEN_ANGLE * k as f64)
        })
        .collect();
    if data.regime == Regime::Interior {
        seeds.push(data.alpha0);
    }
    let starts = seeds.len();

    let finals: Vec<Complex64> = seeds
        .into_par_iter()
        .map(|seed| {
            let mut x = seed;
            let h = 1e-6;
            let mut step = 0.1;
            for _ in 0..max_iters {
                let gx = (objective(x + Complex64::new(h, 0.0))
                    - objective(x - Complex64::new(h, 0.0)))
                    / (2.0 * h);
                let gy = (objective(x + Complex64::new(0.0, h))
                    - objective(x - Complex64::new(0.0, h)))
                    / (2.0 * h);
                let grad = Complex64::new(gx, gy);
                if grad.norm() < 1e-10 {
                    break;
                }
                let dir = grad / grad.norm();
                let f0 = objective(x);
                let mut t = step;
                while t > 1e-14 && objective(clamp_disk(x + dir * t)) <= f0 {
                    t *= 0.5;
                }
                if t <= 1e-14 {
                    break;
                }
                x = clamp_disk(x + dir * t);
                step = (t * 2.0).min(0.2);
            }
            let (polished, _, _) = nelder_mead_max(&objective, x, 1e-4);
            clamp_disk(polished)
        })
        .collect();

    let mut interior = Vec::new();
    let mut boundary_escapes = 0;
    for x in finals {
        if x.norm() >= ESCAPE_RADIUS {
            boundary_escapes += 1;
        } else {
            interior.push(x);
        }
    }
    let max_gap_to_alpha0 = interior
        .iter()
        .map(|x| (x - data.alpha0).norm())
        .fold(0.0f64, f64::max);
    let mut interior_points: Vec<Complex64> = Vec::new();
    for x in &interior {
        if !interior_points.iter().any(|r| (r - x).norm() < 1e-5) {
            interior_points.push(*x);
        }
    }
    Ok(CriticalScan {
        interior_points,
        boundary_escapes,
        max_gap_to_alpha0,
        starts,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct LaplacianReport {
    pub finite_difference: f64,
    pub closed_form: f64,
    pub gap: f64,
}

/// Five-point finite-difference Laplacian of log G at the recentred critical
/// point z = 0 against the closed form -8 (1 - 3|z|^2)(1/G_2 - 1/G_1).
pub fn laplacian_identity_check(
    lambda: Complex64,
    delta: Complex64,
    step: f64,
) -> Result<LaplacianReport> {
    let lambda = UnitDiskPoint::new(lambda)?.value();
    let delta = UnitDiskPoint::new(delta)?.value();
    let data = extremal_parameters(lambda, delta)?;
    let u = |z: Complex64| g_ratio(z, &data).ln();
    let h = step;
    let finite_difference = (u(Complex64::new(h, 0.0))
        + u(Complex64::new(-h, 0.0))
        + u(Complex64::new(0.0, h))
        + u(Complex64::new(0.0, -h))
        - 4.0 * u(Complex64::ZERO))
        / (h * h);
    let closed_form = log_g_laplacian_closed_form(Complex64::ZERO, &data);
    Ok(LaplacianReport {
        finite_difference,
        closed_form,
        gap: (finite_difference - closed_form).abs(),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct BoundaryComparison {
    pub interior_value: f64,
    pub boundary_value: f64,
    /// max - min of F over the sampled boundary circle.
    pub spread: f64,
    /// interior_value - boundary_value; nonnegative, zero in the boundary regime.
    pub excess: f64,
}

/// Samples F on |alpha| = 1 and compares against m(lambda^2, delta^2) and the
/// extremal value.
pub fn boundary_comparison(
    lambda: Complex64,
    delta: Complex64,
    n_theta: usize,
) -> Result<BoundaryComparison> {
    let lambda = UnitDiskPoint::new(lambda)?.value();
    let delta = UnitDiskPoint::new(delta)?.value();
    let interior_value = cstar_raw(lambda, delta);
    let boundary_value = m_raw(lambda * lambda, delta * delta);
    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    for j in 0..n_theta {
        let a = Complex64::from_polar(1.0, TAU * j as f64 / n_theta as f64);
        let v = f_raw(a, lambda, delta);
        max = max.max(v);
        min = min.min(v);
    }
    Ok(BoundaryComparison {
        interior_value,
        boundary_value,
        spread: max - min,
        excess: interior_value - boundary_value,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct CandidateProbe {
    pub best: f64,
    pub closed_form: f64,
    /// best - closed_form; must never be meaningfully positive.
    pub excess: f64,
    pub trials: usize,
}

/// Feeds genuine disk-ball candidates through the definition of the distance.
/// Every candidate g = mu zeta^2 B(zeta) gives the lower bound m(g(lambda),
/// g(delta)) <= c*; post-composing with a disk automorphism leaves that value
/// unchanged, so candidates with g(0) = 0 already exhaust the supremum. The
/// closed-form extremal function is included and must attain it.
pub fn flat_candidate_probe(
    lambda: Complex64,
    delta: Complex64,
    trials: usize,
    seed: u64,
) -> Result<CandidateProbe> {
    let lambda = UnitDiskPoint::new(lambda)?.value();
    let delta = UnitDiskPoint::new(delta)?.value();
    let closed_form = cstar_raw(lambda, delta);
    let mut best = f64::NEG_INFINITY;
    if let Ok(b) = extremal_function(lambda, delta) {
        best = m_raw(b.eval(lambda), b.eval(delta));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let degree = rng.random_range(0..3usize);
        let mut zeros = vec![Complex64::ZERO, Complex64::ZERO];
        for _ in 0..degree {
            zeros.push(sample_disk(&mut rng, 0.95));
        }
        let mu = Complex64::from_polar(1.0, TAU * rng.random::<f64>());
        let b = BlaschkeProduct::new(mu, zeros).expect("sampled zeros lie in the open disk");
        best = best.max(m_raw(b.eval(lambda), b.eval(delta)));
    }
    Ok(CandidateProbe {
        best,
        closed_form,
        excess: best - closed_form,
        trials,
    })
}

pub(crate) fn sample_disk(rng: &mut ChaCha8Rng, rmax: f64) -> Complex64 {
    let r = rmax * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, TAU * rng.random::<f64>())
}

#[derive(Clone, Copy, Debug)]
pub struct MetricProbe {
    pub closed_form: f64,
    pub oracle_value: f64,
    pub gap: f64,
    /// Position of the maximizer in the swept coefficient parameter.
    pub argmax: f64,
    /// Best genuine-candidate value minus the closed form (should be <= 0
    /// up to roundoff).
    pub candidate_excess: f64,
}

/// Recomputes the infinitesimal Caratheodory metric from the definition.
///
/// At the cusp the admissible differentials are pairs (a_3, a_2) of third and
/// second Taylor coefficients of a ball function zeta^2 h, constrained by the
/// Schur bound |a_3| <= 1 - |a_2|^2; the oracle sweeps that curved boundary.
/// At a smooth point every flat function factors through v = zeta^2 k after a
/// value-preserving automorphism, and Schwarz-Pick caps |k'|; the sweep runs
/// over kappa = |k(lambda)|. Random Blaschke candidates are pushed through the
/// raw definition as a cross-check from below.
pub fn metric_oracle(v: &TangentVector, trials: usize, seed: u64) -> MetricProbe {
    let closed_form = caratheodory_metric(v);
    let (v1, v2) = v.components();
    if v.base().is_origin() {
        let objective = |a: f64| a * v2.norm() + (1.0 - a * a) * v1.norm();
        let (argmax, oracle_value) = sweep_and_golden(&objective, 0.0, 1.0, 256);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cand_best = 0.0f64;
        for _ in 0..trials {
            // g = mu zeta^2 phi_s(zeta): differential a_3 v1 + a_2 v2 with
            // a_2 = mu s, a_3 = -mu (1 - |s|^2)
            let s = sample_disk(&mut rng, 1.0);
            let mu = Complex64::from_polar(1.0, TAU * rng.random::<f64>());
            let a2 = mu * s;
            let a3 = -mu * (1.0 - s.norm_sqr());
            cand_best = cand_best.max((a3 * v1 + a2 * v2).norm());
        }
        MetricProbe {
            closed_form,
            oracle_value,
            gap: (oracle_value - closed_form).abs(),
            argmax,
            candidate_excess: cand_best - closed_form,
        }
    } else {
        let lam = v.base().uniformizer();
        let t = lam.norm();
        let factor = v
            .colinearity_factor()
            .expect("smooth-point tangents carry a colinearity factor");
        let scale = (factor * lam).norm();
        let objective = |kappa: f64| {
            let num = 2.0 * t * kappa + t * t * (1.0 - kappa * kappa) / (1.0 - t * t);
            let den = 1.0 - t.powi(4) * kappa * kappa;
            scale * num / den
        };
        let (argmax, oracle_value) = sweep_and_golden(&objective, 0.0, 1.0, 256);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cand_best = 0.0f64;
        for _ in 0..trials {
            let degree = rng.random_range(0..3usize);
            let mut zeros = vec![Complex64::ZERO, Complex64::ZERO];
            for _ in 0..degree {
                zeros.push(sample_disk(&mut rng, 0.95));
            }
            let mu = Complex64::from_polar(1.0, TAU * rng.random::<f64>());
            let b = BlaschkeProduct::new(mu, zeros).expect("sampled zeros lie in the open disk");
            let (value, derivative) = b.eval_with_derivative(lam);
            cand_best = cand_best.max(scale * derivative.norm() / (1.0 - value.norm_sqr()));
        }
        MetricProbe {
            closed_form,
            oracle_value,
            gap: (oracle_value - closed_form).abs(),
            argmax,
            candidate_excess: cand_best - closed_form,
        }
    }
}

/// Coarse sweep of [lo, hi] followed by golden-section refinement around the
/// best sample; assumes a unimodal objective on the bracket.
fn sweep_and_golden<F>(f: &F, lo: f64, hi: f64, n: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let width = hi - lo;
    let mut best_i = 0usize;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..=n {
        let x = lo + width * i as f64 / n as f64;
        let v = f(x);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let step = width / n as f64;
    let mut a = (lo + step * best_i.saturating_sub(1) as f64).max(lo);
    let mut b = (lo + step * (best_i + 1) as f64).min(hi);
    let invphi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - invphi * (b - a);
    let mut x2 = a + invphi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..100 {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid).max(best_v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::{parameterize, NeilePoint};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn nelder_mead_finds_a_quadratic_peak() {
        let f = |p: Complex64| 3.0 - (p - c(0.3, -0.2)).norm_sqr();
        let (arg, val, _) = nelder_mead_max(&f, c(0.0, 0.0), 0.2);
        assert!((arg - c(0.3, -0.2)).norm() < 1e-8);
        assert!((val - 3.0).abs() < 1e-15);
    }

    #[test]
    fn sweep_and_golden_finds_a_parabola_peak() {
        let f = |x: f64| 1.0 - (x - 0.37).powi(2);
        let (arg, val) = sweep_and_golden(&f, 0.0, 1.0, 64);
        assert!((arg - 0.37).abs() < 1e-6);
        assert!((val - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oracle_matches_the_interior_example() {
        let got = oracle_cstar(c(0.5, 0.0), c(-0.5, 0.0), 100, 128).unwrap();
        assert!((got.value - 16.0 / 65.0).abs() < 1e-7, "value {}", got.value);
        assert!(got.argmax.norm() < 1e-5, "argmax {}", got.argmax);
    }

    #[test]
    fn oracle_matches_the_boundary_example() {
        let got = oracle_cstar(c(0.3, 0.0), c(0.6, 0.0), 100, 128).unwrap();
        let closed = cstar_raw(c(0.3, 0.0), c(0.6, 0.0));
        assert!((got.value - closed).abs() < 1e-7);
        assert!((got.argmax.norm() - 1.0).abs() < 1e-6, "boundary argmax");
    }

    #[test]
    fn oracle_matches_the_zero_case() {
        let got = oracle_cstar(Complex64::ZERO, c(0.7, 0.0), 80, 96).unwrap();
        assert!((got.value - 0.49).abs() < 1e-9);
    }

    #[test]
    fn oracle_is_deterministic() {
        let a = oracle_cstar(c(0.41, 0.2), c(-0.3, 0.33), 64, 96).unwrap();
        let b = oracle_cstar(c(0.41, 0.2), c(-0.3, 0.33), 64, 96).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.argmax, b.argmax);
    }

    #[test]
    fn ascent_clusters_at_the_interior_critical_point() {
        let scan = critical_scan(c(0.5, 0.0), c(-0.5, 0.0), 48, 200).unwrap();
        assert!(!scan.interior_points.is_empty());
        assert!(
            scan.max_gap_to_alpha0 < 1e-6,
            "gap {}",
            scan.max_gap_to_alpha0
        );
    }

    #[test]
    fn ascent_escapes_in_the_boundary_regime() {
        let scan = critical_scan(c(0.3, 0.0), c(0.6, 0.0), 48, 200).unwrap();
        assert!(scan.interior_points.is_empty(), "{:?}", scan.interior_points);
        assert_eq!(scan.boundary_escapes, 48);
    }

    #[test]
    fn laplacian_closed_form_matches_finite_differences() {
        let report = laplacian_identity_check(c(0.5, 0.0), c(-0.5, 0.0), 1e-4).unwrap();
        assert!(report.gap < 1e-5, "gap {}", report.gap);
        assert!(report.closed_form < 0.0, "interior maximum is a peak");
    }

    #[test]
    fn boundary_sampling_is_constant_and_dominated() {
        let interior = boundary_comparison(c(0.5, 0.0), c(-0.5, 0.0), 128).unwrap();
        assert!(interior.spread < 1e-11);
        assert!(interior.excess > 0.0);
        let boundary = boundary_comparison(c(0.3, 0.0), c(0.6, 0.0), 128).unwrap();
        assert!(boundary.spread < 1e-11);
        assert_eq!(boundary.excess, 0.0);
    }

    #[test]
    fn candidates_never_beat_the_closed_form() {
        let probe = flat_candidate_probe(c(0.5, 0.0), c(-0.5, 0.0), 400, 7).unwrap();
        assert!(probe.excess <= 1e-12, "excess {}", probe.excess);
        assert!((probe.best - probe.closed_form).abs() < 1e-13);
    }

    #[test]
    fn metric_oracle_at_the_cusp() {
        for (v1, v2, expected, arg) in [
            (c(1.0, 0.0), c(0.0, 0.0), 1.0, 0.0),
            (c(0.0, 0.0), c(1.0, 0.0), 1.0, 1.0),
            (c(1.0, 0.0), c(1.0, 0.0), 1.25, 0.5),
        ] {
            let v = TangentVector::new(NeilePoint::origin(), v1, v2).unwrap();
            let probe = metric_oracle(&v, 200, 11);
            assert!((probe.closed_form - expected).abs() < 1e-15);
            assert!(probe.gap < 1e-12, "gap {}", probe.gap);
            assert!((probe.argmax - arg).abs() < 1e-6, "argmax {}", probe.argmax);
            assert!(probe.candidate_excess <= 1e-12);
        }
    }

    #[test]
    fn metric_oracle_at_a_smooth_point() {
        let base = parameterize(c(0.5, 0.0)).unwrap();
        let v = TangentVector::new(base, c(0.375, 0.0), c(0.5, 0.0)).unwrap();
        let probe = metric_oracle(&v, 200, 13);
        assert!((probe.closed_form - 8.0 / 15.0).abs() < 1e-15);
        assert!(probe.gap < 1e-10, "gap {}", probe.gap);
        assert!((probe.argmax - 1.0).abs() < 1e-6);
        assert!(probe.candidate_excess <= 1e-12);
    }
}
