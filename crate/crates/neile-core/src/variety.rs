//! The Neile parabola M = {(z, w) in D^2 : z^2 = w^3} and its uniformization.
//!
//! The parameterization p(lambda) = (lambda^3, lambda^2) is a bijection from
//! the unit disk onto M with inverse q(z, w) = z / w, q(0, 0) = 0. Analytic
//! structure on M corresponds to disk functions h with h'(0) = 0.

use num_complex::Complex64;

use crate::disk::{BlaschkeProduct, UnitDiskPoint};
use crate::error::{Error, Result};

/// Residual tolerance for |z^2 - w^3| when accepting ambient coordinates.
/// Points further from the variety are rejected, never projected.
pub const VARIETY_TOL: f64 = 1e-9;

/// Residual tolerance for tangency checks at smooth points.
pub const COLINEARITY_TOL: f64 = 1e-9;

/// Tolerance on |h'(0)| when validating flatness of a Blaschke representative.
pub const FLATNESS_TOL: f64 = 1e-10;

/// A point of M, stored in the canonical form (lambda^3, lambda^2).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NeilePoint {
    z: Complex64,
    w: Complex64,
    lambda: Complex64,
}

impl NeilePoint {
    /// The cusp (0, 0).
    pub fn origin() -> Self {
        NeilePoint {
            z: Complex64::ZERO,
            w: Complex64::ZERO,
            lambda: Complex64::ZERO,
        }
    }

    /// p(lambda) = (lambda^3, lambda^2).
    pub fn from_uniformizer(lambda: Complex64) -> Result<Self> {
        let lambda = UnitDiskPoint::new(lambda)?.value();
        Ok(NeilePoint {
            z: lambda * lambda * lambda,
            w: lambda * lambda,
            lambda,
        })
    }

    /// Validates ambient coordinates against the variety equation, then
    /// canonicalizes through the uniformizer: lambda = z / w and
    /// (z, w) := (lambda^3, lambda^2).
    pub fn from_coordinates(z: Complex64, w: Complex64) -> Result<Self> {
        let z = UnitDiskPoint::new(z)?.value();
        let w = UnitDiskPoint::new(w)?.value();
        let residual = (z * z - w * w * w).norm();
        if residual > VARIETY_TOL {
            return Err(Error::OffVariety { residual });
        }
        if w == Complex64::ZERO {
            if z == Complex64::ZERO {
                return Ok(NeilePoint::origin());
            }
            return Err(Error::UniformizerUndefined);
        }
        NeilePoint::from_uniformizer(z / w)
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn w(&self) -> Complex64 {
        self.w
    }

    /// q(z, w) = z / w, with q(0, 0) = 0.
    pub fn uniformizer(&self) -> Complex64 {
        self.lambda
    }

    pub fn is_origin(&self) -> bool {
        self.lambda == Complex64::ZERO
    }

    /// Basis of the tangent space: span{(3a, 2b)} at a smooth point (a, b),
    /// all of C^2 at the cusp.
    pub fn tangent_basis(&self) -> Vec<(Complex64, Complex64)> {
        if self.is_origin() {
            vec![
                (Complex64::ONE, Complex64::ZERO),
                (Complex64::ZERO, Complex64::ONE),
            ]
        } else {
            vec![(3.0 * self.z, 2.0 * self.w)]
        }
    }
}

/// p(lambda) as a free function.
pub fn parameterize(lambda: Complex64) -> Result<NeilePoint> {
    NeilePoint::from_uniformizer(lambda)
}

/// q(z, w) after validation and canonicalization.
pub fn uniformize(z: Complex64, w: Complex64) -> Result<Complex64> {
    Ok(NeilePoint::from_coordinates(z, w)?.uniformizer())
}

/// Kobayashi distance on M. The parameterization is a Lempert-type isometry,
/// so k_M(p(lambda), p(delta)) = rho(lambda, delta).
pub fn kobayashi_distance(x: &NeilePoint, y: &NeilePoint) -> f64 {
    crate::disk::m_raw(x.uniformizer(), y.uniformizer()).atanh()
}

/// A tangent vector v at a point of M.
///
/// At a smooth base (a, b) the vector must be colinear with (3a, 2b); the
/// complex factor is recovered by least squares and the residual must stay
/// under [`COLINEARITY_TOL`]. At the cusp every ambient vector is tangent.
#[derive(Clone, Copy, Debug)]
pub struct TangentVector {
    base: NeilePoint,
    v1: Complex64,
    v2: Complex64,
    factor: Option<Complex64>,
}

impl TangentVector {
    pub fn new(base: NeilePoint, v1: Complex64, v2: Complex64) -> Result<Self> {
        if base.is_origin() {
            return Ok(TangentVector {
                base,
                v1,
                v2,
                factor: None,
            });
        }
        let t1 = 3.0 * base.z;
        let t2 = 2.0 * base.w;
        let denom = t1.norm_sqr() + t2.norm_sqr();
        let factor = (v1 * t1.conj() + v2 * t2.conj()) / denom;
        let r1 = v1 - factor * t1;
        let r2 = v2 - factor * t2;
        let residual = (r1.norm_sqr() + r2.norm_sqr()).sqrt();
        if residual > COLINEARITY_TOL {
            return Err(Error::NotColinear { residual });
        }
        Ok(TangentVector {
            base,
            v1,
            v2,
            factor: Some(factor),
        })
    }

    pub fn base(&self) -> &NeilePoint {
        &self.base
    }

    pub fn components(&self) -> (Complex64, Complex64) {
        (self.v1, self.v2)
    }

    /// The factor z with (v1, v2) = z * (3a, 2b); `None` at the cusp.
    pub fn colinearity_factor(&self) -> Option<Complex64> {
        self.factor
    }
}

/// A holomorphic function on the disk with h'(0) = 0, i.e. the pullback of an
/// analytic function on M. Held either as a finite Blaschke product or as a
/// truncated power series a_0 + a_2 zeta^2 + a_3 zeta^3 + ...
#[derive(Clone, Debug)]
pub enum FlatDiskFunction {
    Blaschke(BlaschkeProduct),
    Series(Vec<Complex64>),
}

impl FlatDiskFunction {
    /// Wraps a Blaschke product after checking |B'(0)| <= [`FLATNESS_TOL`].
    pub fn from_blaschke(b: BlaschkeProduct) -> Result<Self> {
        let (_, deriv) = b.eval_with_derivative(Complex64::ZERO);
        if deriv.norm() > FLATNESS_TOL {
            return Err(Error::NotFlatAtOrigin {
                derivative: deriv.norm(),
            });
        }
        Ok(FlatDiskFunction::Blaschke(b))
    }

    /// Builds the series a_0 + a_2 zeta^2 + a_3 zeta^3 + ...; the linear
    /// coefficient is absent by construction.
    pub fn from_series(a0: Complex64, tail: &[Complex64]) -> Self {
        let mut coeffs = Vec::with_capacity(tail.len() + 2);
        coeffs.push(a0);
        coeffs.push(Complex64::ZERO);
        coeffs.extend_from_slice(tail);
        FlatDiskFunction::Series(coeffs)
    }

    pub fn eval(&self, zeta: Complex64) -> Complex64 {
        match self {
            FlatDiskFunction::Blaschke(b) => b.eval(zeta),
            FlatDiskFunction::Series(coeffs) => {
                let mut acc = Complex64::ZERO;
                for &ck in coeffs.iter().rev() {
                    acc = acc * zeta + ck;
                }
                acc
            }
        }
    }

    pub fn constant_term(&self) -> Complex64 {
        match self {
            FlatDiskFunction::Blaschke(b) => b.eval(Complex64::ZERO),
            FlatDiskFunction::Series(coeffs) => {
                coeffs.first().copied().unwrap_or(Complex64::ZERO)
            }
        }
    }

    /// The factor h with f(zeta) = zeta^2 h(zeta); requires a vanishing
    /// constant term. For a Blaschke representative the two origin zeros are
    /// stripped; for a series the coefficients shift down by two.
    pub fn core_factor(&self) -> Result<CoreFactor> {
        match self {
            FlatDiskFunction::Blaschke(b) => {
                let at_origin = b.eval(Complex64::ZERO);
                if at_origin != Complex64::ZERO {
                    return Err(Error::ConstantTermNotZero { value: at_origin });
                }
                let mut zeros: Vec<Complex64> = b.zeros().to_vec();
                let mut stripped = 0;
                zeros.retain(|&z| {
                    if z == Complex64::ZERO && stripped < 2 {
                        stripped += 1;
                        false
                    } else {
                        true
                    }
                });
                if stripped < 2 {
                    // a flat Blaschke product vanishing at 0 has a zero of
                    // order >= 2 there
                    return Err(Error::NotFlatAtOrigin { derivative: 0.0 });
                }
                Ok(CoreFactor::Blaschke(BlaschkeProduct::new(
                    b.mu(),
                    zeros,
                )?))
            }
            FlatDiskFunction::Series(coeffs) => {
                if let Some(&a0) = coeffs.first() {
                    if a0 != Complex64::ZERO {
                        return Err(Error::ConstantTermNotZero { value: a0 });
                    }
                }
                let tail: Vec<Complex64> = coeffs.iter().skip(2).copied().collect();
                Ok(CoreFactor::Series(tail))
            }
        }
    }
}

/// The factor h of f(zeta) = zeta^2 h(zeta), a holomorphic map of the disk
/// into the closed disk.
#[derive(Clone, Debug)]
pub enum CoreFactor {
    Blaschke(BlaschkeProduct),
    Series(Vec<Complex64>),
}

impl CoreFactor {
    pub fn eval(&self, zeta: Complex64) -> Complex64 {
        match self {
            CoreFactor::Blaschke(b) => b.eval(zeta),
            CoreFactor::Series(coeffs) => {
                let mut acc = Complex64::ZERO;
                for &ck in coeffs.iter().rev() {
                    acc = acc * zeta + ck;
                }
                acc
            }
        }
    }
}

/// Evaluates h at the uniformizer of x, the analytic functional calculus on M.
pub fn induced_eval(h: &FlatDiskFunction, x: &NeilePoint) -> Complex64 {
    h.eval(x.uniformizer())
}

/// A polynomial sum of c_{ij} z^i w^j terms on the bidisk.
#[derive(Clone, Debug)]
pub struct BivariatePolynomial {
    terms: Vec<(u32, u32, Complex64)>,
}

impl BivariatePolynomial {
    pub fn terms(&self) -> &[(u32, u32, Complex64)] {
        &self.terms
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &(i, j, c) in &self.terms {
            acc += c * z.powu(i) * w.powu(j);
        }
        acc
    }
}

/// Rewrites a series h = a_0 + a_2 zeta^2 + ... as a polynomial on the bidisk
/// that restricts to h on M: even exponents map to a_k w^{k/2} and odd
/// exponents k >= 3 to a_k z w^{(k-3)/2}, using z^i w^j -> lambda^{3i+2j}.
/// Coefficients above degree `n` are dropped.
pub fn series_extension(h: &FlatDiskFunction, n: usize) -> Result<BivariatePolynomial> {
    let coeffs = match h {
        FlatDiskFunction::Series(coeffs) => coeffs,
        FlatDiskFunction::Blaschke(_) => return Err(Error::SeriesRepresentationRequired),
    };
    let mut terms = Vec::new();
    for (k, &ak) in coeffs.iter().enumerate().take(n + 1) {
        if k == 1 {
            continue;
        }
        if k % 2 == 0 {
            terms.push((0, (k / 2) as u32, ak));
        } else {
            terms.push((1, ((k - 3) / 2) as u32, ak));
        }
    }
    Ok(BivariatePolynomial { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::{mobius_series, poincare_distance};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parameterize_half() {
        let x = parameterize(c(0.5, 0.0)).unwrap();
        assert_eq!(x.z(), c(0.125, 0.0));
        assert_eq!(x.w(), c(0.25, 0.0));
    }

    #[test]
    fn uniformize_inverts_parameterize() {
        assert_eq!(uniformize(c(0.125, 0.0), c(0.25, 0.0)).unwrap(), c(0.5, 0.0));
        assert_eq!(
            uniformize(Complex64::ZERO, Complex64::ZERO).unwrap(),
            Complex64::ZERO
        );
    }

    #[test]
    fn off_variety_coordinates_are_rejected() {
        let err = NeilePoint::from_coordinates(c(0.1, 0.0), c(0.25, 0.0)).unwrap_err();
        assert!(matches!(err, Error::OffVariety { .. }));
    }

    #[test]
    fn degenerate_uniformizer_is_rejected() {
        let err = NeilePoint::from_coordinates(c(1e-6, 0.0), Complex64::ZERO).unwrap_err();
        assert!(matches!(err, Error::UniformizerUndefined));
    }

    #[test]
    fn tangent_basis_shapes() {
        assert_eq!(NeilePoint::origin().tangent_basis().len(), 2);
        let basis = parameterize(c(0.5, 0.0)).unwrap().tangent_basis();
        assert_eq!(basis, vec![(c(0.375, 0.0), c(0.5, 0.0))]);
    }

    #[test]
    fn kobayashi_matches_poincare_on_uniformizers() {
        let x = parameterize(c(0.3, 0.0)).unwrap();
        let y = parameterize(c(0.6, 0.0)).unwrap();
        let expected = poincare_distance(c(0.3, 0.0), c(0.6, 0.0)).unwrap();
        assert!((kobayashi_distance(&x, &y) - expected).abs() < 1e-15);
    }

    #[test]
    fn tangent_vector_accepts_colinear_rejects_generic() {
        let x = parameterize(c(0.5, 0.0)).unwrap();
        let v = TangentVector::new(x, c(0.375, 0.0), c(0.5, 0.0)).unwrap();
        assert!((v.colinearity_factor().unwrap() - Complex64::ONE).norm() < 1e-14);
        let err = TangentVector::new(x, c(0.375, 0.0), c(0.4, 0.0)).unwrap_err();
        assert!(matches!(err, Error::NotColinear { .. }));
        assert!(TangentVector::new(NeilePoint::origin(), c(1.0, 0.0), c(2.0, 0.0)).is_ok());
    }

    #[test]
    fn flatness_is_enforced_on_blaschke_representatives() {
        let flat = BlaschkeProduct::new(
            Complex64::ONE,
            vec![Complex64::ZERO, Complex64::ZERO, c(0.3, 0.0)],
        )
        .unwrap();
        assert!(FlatDiskFunction::from_blaschke(flat).is_ok());

        let sloped =
            BlaschkeProduct::new(Complex64::ONE, vec![Complex64::ZERO, c(0.3, 0.0)]).unwrap();
        let err = FlatDiskFunction::from_blaschke(sloped).unwrap_err();
        assert!(matches!(err, Error::NotFlatAtOrigin { .. }));
    }

    #[test]
    fn induced_eval_example() {
        let h = FlatDiskFunction::from_blaschke(
            BlaschkeProduct::new(
                Complex64::ONE,
                vec![Complex64::ZERO, Complex64::ZERO, c(0.3, 0.0)],
            )
            .unwrap(),
        )
        .unwrap();
        let x = parameterize(c(0.5, 0.0)).unwrap();
        let v = induced_eval(&h, &x);
        assert!((v - c(0.25 * (-0.2 / 0.85), 0.0)).norm() < 1e-15);
        assert!((v.re + 0.058823529411764705).abs() < 1e-15);
    }

    #[test]
    fn series_extension_monomial_layout() {
        // a0 + a2 z^2 + a3 z^3 + a4 z^4 + a5 z^5 + a6 z^6
        let h = FlatDiskFunction::from_series(
            c(1.0, 0.0),
            &[c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0), c(5.0, 0.0), c(6.0, 0.0)],
        );
        let p = series_extension(&h, 6).unwrap();
        assert_eq!(
            p.terms(),
            &[
                (0, 0, c(1.0, 0.0)),
                (0, 1, c(2.0, 0.0)),
                (1, 0, c(3.0, 0.0)),
                (0, 2, c(4.0, 0.0)),
                (1, 1, c(5.0, 0.0)),
                (0, 3, c(6.0, 0.0)),
            ]
        );
    }

    #[test]
    fn series_extension_restricts_to_h_on_the_variety() {
        // coefficients of zeta^2 phi_{1/2}(zeta) up to degree 20
        let phi = mobius_series(c(0.5, 0.0), 18).unwrap();
        let h = FlatDiskFunction::from_series(Complex64::ZERO, &phi);
        let p = series_extension(&h, 20).unwrap();
        for k in 0..50 {
            let t = std::f64::consts::TAU * (k as f64) / 50.0;
            let lambda = Complex64::from_polar(0.6, t);
            let x = NeilePoint::from_uniformizer(lambda).unwrap();
            let on_variety = p.eval(x.z(), x.w());
            let direct = h.eval(lambda);
            assert!(
                (on_variety - direct).norm() < 1e-6,
                "truncation mismatch at lambda = {lambda}"
            );
        }
    }

    proptest! {
        #[test]
        fn coordinates_round_trip(
            r in 0.0..0.97f64,
            t in 0.0..std::f64::consts::TAU,
        ) {
            let lambda = Complex64::from_polar(r, t);
            let x = NeilePoint::from_uniformizer(lambda).unwrap();
            let y = NeilePoint::from_coordinates(x.z(), x.w()).unwrap();
            prop_assert!((y.uniformizer() - lambda).norm() < 1e-12);
            prop_assert!((y.z() - x.z()).norm() < 1e-12);
        }

        #[test]
        fn canonical_coordinates_satisfy_the_variety_equation(
            r in 0.0..0.97f64,
            t in 0.0..std::f64::consts::TAU,
        ) {
            let x = NeilePoint::from_uniformizer(Complex64::from_polar(r, t)).unwrap();
            let residual = (x.z() * x.z() - x.w() * x.w() * x.w()).norm();
            prop_assert!(residual < 1e-15);
        }
    }
}
