//! Hyperbolic geometry of the unit disk.
//!
//! Everything downstream reduces to the pseudo-hyperbolic distance
//! m(a, b) = |a - b| / |1 - conj(a) b|, the Poincare distance atanh m, disk
//! automorphisms mu * phi_a with phi_a(z) = (a - z) / (1 - conj(a) z), and
//! finite Blaschke products.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Guard band for membership checks near |z| = 1. Values inside the band are
/// accepted by [`ClosedDiskPoint`] and rejected by [`UnitDiskPoint`], so the
/// two constructors never disagree about a point within roundoff of the
/// boundary.
pub const DISK_EDGE_BAND: f64 = 1e-12;

/// A point of the open unit disk, |z| < 1 - [`DISK_EDGE_BAND`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitDiskPoint(Complex64);

impl UnitDiskPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        let modulus = value.norm();
        if modulus < 1.0 - DISK_EDGE_BAND {
            Ok(UnitDiskPoint(value))
        } else {
            Err(Error::OutsideOpenDisk { value, modulus })
        }
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

/// A point of the closed unit disk, |z| <= 1 + [`DISK_EDGE_BAND`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedDiskPoint(Complex64);

impl ClosedDiskPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        let modulus = value.norm();
        if modulus <= 1.0 + DISK_EDGE_BAND {
            Ok(ClosedDiskPoint(value))
        } else {
            Err(Error::OutsideClosedDisk { value, modulus })
        }
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

fn check_unimodular(value: Complex64) -> Result<Complex64> {
    let modulus = value.norm();
    if (modulus - 1.0).abs() <= DISK_EDGE_BAND {
        Ok(value)
    } else {
        Err(Error::NotUnimodular { value, modulus })
    }
}

/// Unvalidated pseudo-hyperbolic distance; callers guarantee |a|, |b| <= 1.
pub(crate) fn m_raw(a: Complex64, b: Complex64) -> f64 {
    ((a - b) / (Complex64::ONE - a.conj() * b)).norm()
}

pub(crate) fn mobius_raw(a: Complex64, z: Complex64) -> Complex64 {
    (a - z) / (Complex64::ONE - a.conj() * z)
}

/// Pseudo-hyperbolic distance m(a, b) = |a - b| / |1 - conj(a) b|.
pub fn pseudo_hyperbolic(a: Complex64, b: Complex64) -> Result<f64> {
    let a = UnitDiskPoint::new(a)?.value();
    let b = UnitDiskPoint::new(b)?.value();
    Ok(m_raw(a, b))
}

/// Poincare distance rho(a, b) = atanh m(a, b).
pub fn poincare_distance(a: Complex64, b: Complex64) -> Result<f64> {
    Ok(pseudo_hyperbolic(a, b)?.atanh())
}

/// Infinitesimal Poincare metric |v| / (1 - |z|^2) at z in direction v.
pub fn poincare_metric(z: Complex64, v: Complex64) -> Result<f64> {
    let z = UnitDiskPoint::new(z)?.value();
    Ok(v.norm() / (1.0 - z.norm_sqr()))
}

/// The Mobius involution phi_a(z) = (a - z) / (1 - conj(a) z).
///
/// `a` must lie in the open disk; `z` may reach the closed disk.
pub fn mobius(a: Complex64, z: Complex64) -> Result<Complex64> {
    let a = UnitDiskPoint::new(a)?.value();
    let z = ClosedDiskPoint::new(z)?.value();
    Ok(mobius_raw(a, z))
}

/// An automorphism z -> mu * phi_a(z) of the unit disk.
#[derive(Clone, Copy, Debug)]
pub struct DiskAutomorphism {
    mu: Complex64,
    center: Complex64,
}

impl DiskAutomorphism {
    pub fn new(mu: Complex64, center: Complex64) -> Result<Self> {
        Ok(DiskAutomorphism {
            mu: check_unimodular(mu)?,
            center: UnitDiskPoint::new(center)?.value(),
        })
    }

    /// The involution phi_a (mu = 1).
    pub fn involution(center: Complex64) -> Result<Self> {
        DiskAutomorphism::new(Complex64::ONE, center)
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.mu * mobius_raw(self.center, z)
    }

    pub fn apply_inverse(&self, w: Complex64) -> Complex64 {
        mobius_raw(self.center, w / self.mu)
    }

    /// d/dz [mu * phi_a(z)] = mu * (|a|^2 - 1) / (1 - conj(a) z)^2.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let den = Complex64::ONE - self.center.conj() * z;
        self.mu * (self.center.norm_sqr() - 1.0) / (den * den)
    }
}

/// A finite Blaschke product mu * prod_i phi_{z_i}(zeta).
///
/// Factors are the involutions phi_{z_i} themselves, with a single unimodular
/// constant out front; no per-factor normalization is applied.
#[derive(Clone, Debug)]
pub struct BlaschkeProduct {
    mu: Complex64,
    zeros: Vec<Complex64>,
}

impl BlaschkeProduct {
    pub fn new(mu: Complex64, zeros: Vec<Complex64>) -> Result<Self> {
        let mu = check_unimodular(mu)?;
        for &z in &zeros {
            UnitDiskPoint::new(z)?;
        }
        Ok(BlaschkeProduct { mu, zeros })
    }

    pub fn order(&self) -> usize {
        self.zeros.len()
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn eval(&self, zeta: Complex64) -> Complex64 {
        let mut value = self.mu;
        for &z in &self.zeros {
            value *= mobius_raw(z, zeta);
        }
        value
    }

    /// Value and derivative at `zeta`, accumulated by the product rule so the
    /// derivative stays exact at the zeros.
    pub fn eval_with_derivative(&self, zeta: Complex64) -> (Complex64, Complex64) {
        let mut value = self.mu;
        let mut deriv = Complex64::ZERO;
        for &z in &self.zeros {
            let den = Complex64::ONE - z.conj() * zeta;
            let f = (z - zeta) / den;
            let fp = (z.norm_sqr() - 1.0) / (den * den);
            deriv = deriv * f + value * fp;
            value *= f;
        }
        (value, deriv)
    }
}

/// Evaluates mu * prod_i phi_{zeros_i}(zeta) after validating the data.
pub fn blaschke_eval(mu: Complex64, zeros: &[Complex64], zeta: Complex64) -> Result<Complex64> {
    let b = BlaschkeProduct::new(mu, zeros.to_vec())?;
    let zeta = ClosedDiskPoint::new(zeta)?.value();
    Ok(b.eval(zeta))
}

/// Taylor coefficients of phi_a at the origin, up to degree `n` inclusive:
/// phi_a(z) = a + sum_{k>=1} conj(a)^{k-1} (|a|^2 - 1) z^k.
pub fn mobius_series(a: Complex64, n: usize) -> Result<Vec<Complex64>> {
    let a = UnitDiskPoint::new(a)?.value();
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(a);
    let lead = a.norm_sqr() - 1.0;
    let mut power = Complex64::ONE;
    for _ in 1..=n {
        coeffs.push(lead * power);
        power *= a.conj();
    }
    Ok(coeffs)
}
