//! The explicit Caratheodory distance and metric on the Neile parabola.
//!
//! For nonzero uniformizer parameters lambda, delta the extremal value of
//! m(lambda^2 phi_alpha(lambda), delta^2 phi_alpha(delta)) over alpha in the
//! closed disk is controlled by
//!
//!   alpha_0 = (1/conj(lambda) + lambda + 1/conj(delta) + delta) / 2,
//!   beta_1  = (1/conj(lambda) - lambda - 1/conj(delta) + delta) / 2,
//!   beta_2  = (1/conj(lambda) - lambda + 1/conj(delta) - delta) / 2.
//!
//! When |alpha_0| >= 1 the maximum sits on the boundary circle, where the
//! objective is constant, and the distance collapses to m(lambda^2, delta^2).
//! When |alpha_0| < 1 the unique interior maximum is at alpha_0 with value
//! m(lambda, delta) (1 + |beta_2|^2) / (1 + |beta_1|^2).

use num_complex::Complex64;
use serde::Serialize;

use crate::disk::{m_raw, mobius_raw, BlaschkeProduct, ClosedDiskPoint, UnitDiskPoint};
use crate::error::{Error, Result};
use crate::variety::{NeilePoint, TangentVector};

/// Classification threshold: |alpha_0| >= 1 - REGIME_EDGE counts as boundary,
/// where the two branch values agree to the same order anyway.
pub const REGIME_EDGE: f64 = 1e-12;

/// Which branch of the closed form applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    Interior,
    Boundary,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Interior => write!(f, "interior"),
            Regime::Boundary => write!(f, "boundary"),
        }
    }
}

/// Everything the closed form produces for a nonzero parameter pair.
#[derive(Clone, Copy, Debug)]
pub struct ExtremalData {
    pub alpha0: Complex64,
    pub beta1: Complex64,
    pub beta2: Complex64,
    pub regime: Regime,
    /// The maximizing alpha: alpha_0 in the interior regime, the boundary
    /// point alpha_0/|alpha_0| otherwise (the boundary value is constant).
    pub extremal_alpha: Complex64,
    /// The extremal pseudo-hyperbolic value c*.
    pub mobius_value: f64,
    /// atanh of the mobius value.
    pub distance: f64,
}

fn validate_nonzero(lambda: Complex64) -> Result<Complex64> {
    let lambda = UnitDiskPoint::new(lambda)?.value();
    if lambda == Complex64::ZERO {
        return Err(Error::ZeroParameter);
    }
    Ok(lambda)
}

/// Closed-form extremal data for lambda, delta in D \ {0}.
pub fn extremal_parameters(lambda: Complex64, delta: Complex64) -> Result<ExtremalData> {
    let lambda = validate_nonzero(lambda)?;
    let delta = validate_nonzero(delta)?;
    let li = lambda.conj().inv();
    let di = delta.conj().inv();
    let alpha0 = (li + lambda + di + delta) / 2.0;
    let beta1 = (li - lambda - di + delta) / 2.0;
    let beta2 = (li - lambda + di - delta) / 2.0;
    let (regime, extremal_alpha, mobius_value) = if alpha0.norm() >= 1.0 - REGIME_EDGE {
        (
            Regime::Boundary,
            alpha0 / alpha0.norm(),
            m_raw(lambda * lambda, delta * delta),
        )
    } else {
        let value = m_raw(lambda, delta) * (1.0 + beta2.norm_sqr()) / (1.0 + beta1.norm_sqr());
        (Regime::Interior, alpha0, value)
    };
    Ok(ExtremalData {
        alpha0,
        beta1,
        beta2,
        regime,
        extremal_alpha,
        mobius_value,
        distance: mobius_value.atanh(),
    })
}

/// The objective F(alpha) = m(lambda^2 phi_alpha(lambda), delta^2 phi_alpha(delta))
/// evaluated straight from the definition.
pub fn f_eval(alpha: Complex64, lambda: Complex64, delta: Complex64) -> Result<f64> {
    let alpha = ClosedDiskPoint::new(alpha)?.value();
    let lambda = UnitDiskPoint::new(lambda)?.value();
    let delta = UnitDiskPoint::new(delta)?.value();
    Ok(f_raw(alpha, lambda, delta))
}

pub(crate) fn f_raw(alpha: Complex64, lambda: Complex64, delta: Complex64) -> f64 {
    m_raw(
        lambda * lambda * mobius_raw(alpha, lambda),
        delta * delta * mobius_raw(alpha, delta),
    )
}

/// First algebraic rewrite of F:
///
///   F = m(lambda, delta) |(lambda+delta)(alpha + lambda delta conj(alpha)
///       - lambda - delta) + lambda delta (1 - |alpha|^2)|
///       / |(1 + lambda conj(delta))(1 + lambda conj(delta) - conj(alpha) lambda
///       - alpha conj(delta)) - lambda conj(delta)(1 - |alpha|^2)|.
pub fn f_form1(alpha: Complex64, lambda: Complex64, delta: Complex64) -> Result<f64> {
    let alpha = ClosedDiskPoint::new(alpha)?.value();
    let lambda = UnitDiskPoint::new(lambda)?.value();
    let delta = UnitDiskPoint::new(delta)?.value();
    let one = Complex64::ONE;
    let slack = 1.0 - alpha.norm_sqr();
    let num = (lambda + delta) * (alpha + lambda * delta * alpha.conj() - lambda - delta)
        + lambda * delta * slack;
    let ld = lambda * delta.conj();
    let den = (one + ld) * (one + ld - alpha.conj() * lambda - alpha * delta.conj()) - ld * slack;
    Ok(m_raw(lambda, delta) * (num / den).norm())
}

/// Second rewrite in terms of the extremal parameters:
///
///   F = m(lambda, delta)
///       |1 - (conj(alpha - alpha_0) - conj(beta_2))(alpha - alpha_0 + beta_2)|
///       / |1 - (conj(alpha - alpha_0) - conj(beta_1))(alpha - alpha_0 + beta_1)|.
pub fn f_form2(alpha: Complex64, lambda: Complex64, delta: Complex64) -> Result<f64> {
    let alpha = ClosedDiskPoint::new(alpha)?.value();
    let data = extremal_parameters(lambda, delta)?;
    let m = m_raw(lambda, delta);
    let z = alpha - data.alpha0;
    let num = Complex64::ONE - (z.conj() - data.beta2.conj()) * (z + data.beta2);
    let den = Complex64::ONE - (z.conj() - data.beta1.conj()) * (z + data.beta1);
    Ok(m * (num / den).norm())
}

/// G_k(z) = 1 + 2|beta_k|^2 - 2|z|^2 + |z^2 - beta_k^2|^2, the squared modulus
/// of the corresponding factor of F in the recentred coordinate z = alpha - alpha_0.
pub fn g_factor(z: Complex64, beta: Complex64) -> f64 {
    1.0 + 2.0 * beta.norm_sqr() - 2.0 * z.norm_sqr() + (z * z - beta * beta).norm_sqr()
}

/// G(z) = G_2(z) / G_1(z), satisfying F(alpha)^2 = m(lambda, delta)^2 G(alpha - alpha_0).
pub fn g_ratio(z: Complex64, data: &ExtremalData) -> f64 {
    g_factor(z, data.beta2) / g_factor(z, data.beta1)
}

/// Closed form for the Laplacian of log G at a critical point of G:
/// -8 (1 - 3|z|^2) (1/G_2 - 1/G_1).
pub fn log_g_laplacian_closed_form(z: Complex64, data: &ExtremalData) -> f64 {
    let g1 = g_factor(z, data.beta1);
    let g2 = g_factor(z, data.beta2);
    -8.0 * (1.0 - 3.0 * z.norm_sqr()) * (1.0 / g2 - 1.0 / g1)
}

pub(crate) fn cstar_raw(lambda: Complex64, delta: Complex64) -> f64 {
    if lambda == delta {
        return 0.0;
    }
    if lambda == Complex64::ZERO {
        return delta.norm_sqr();
    }
    if delta == Complex64::ZERO {
        return lambda.norm_sqr();
    }
    extremal_parameters(lambda, delta)
        .expect("parameters validated by caller")
        .mobius_value
}

/// The extremal pseudo-hyperbolic value c*_M(p(lambda), p(delta)).
///
/// Zero and coincident parameters short-circuit: c*(0, delta) = |delta|^2 and
/// c*(lambda, lambda) = 0; otherwise the closed form decides by regime.
pub fn caratheodory_mobius(lambda: Complex64, delta: Complex64) -> Result<f64> {
    let lambda = UnitDiskPoint::new(lambda)?.value();
    let delta = UnitDiskPoint::new(delta)?.value();
    Ok(cstar_raw(lambda, delta))
}

/// Caratheodory distance between two points of M, atanh c*.
pub fn caratheodory_distance(x: &NeilePoint, y: &NeilePoint) -> f64 {
    cstar_raw(x.uniformizer(), y.uniformizer()).atanh()
}

/// Distance in uniformizer parameters, validating the inputs.
pub fn caratheodory_distance_params(lambda: Complex64, delta: Complex64) -> Result<f64> {
    Ok(caratheodory_mobius(lambda, delta)?.atanh())
}

/// The extremal function h(zeta) = zeta^2 phi_{alpha_0}(zeta) (interior) or
/// zeta^2 (boundary) realizing c*_M(p(lambda), p(delta)) up to a rotation.
pub fn extremal_function(lambda: Complex64, delta: Complex64) -> Result<BlaschkeProduct> {
    if lambda == delta {
        return Err(Error::CoincidentNodes);
    }
    let data = extremal_parameters(lambda, delta)?;
    let mut zeros = vec![Complex64::ZERO, Complex64::ZERO];
    if data.regime == Regime::Interior {
        zeros.push(data.alpha0);
    }
    BlaschkeProduct::new(Complex64::ONE, zeros)
}

/// The infinitesimal Caratheodory metric E_M(x; v).
///
/// At the cusp, E = |v_2| when |v_2| >= 2 |v_1| and
/// (4|v_1|^2 + |v_2|^2) / (4|v_1|) otherwise. At a smooth point (a, b) with
/// v = z (3a, 2b), E = 2 |b| |z| / (1 - |b|^2).
pub fn caratheodory_metric(v: &TangentVector) -> f64 {
    let (v1, v2) = v.components();
    match v.colinearity_factor() {
        None => {
            let n1 = v1.norm();
            let n2 = v2.norm();
            if n2 >= 2.0 * n1 {
                n2
            } else {
                (4.0 * n1 * n1 + n2 * n2) / (4.0 * n1)
            }
        }
        Some(factor) => {
            let b = v.base().w();
            2.0 * b.norm() * factor.norm() / (1.0 - b.norm_sqr())
        }
    }
}

/// Convenience form taking ambient components; validates tangency.
pub fn caratheodory_metric_at(x: &NeilePoint, v1: Complex64, v2: Complex64) -> Result<f64> {
    Ok(caratheodory_metric(&TangentVector::new(*x, v1, v2)?))
}
