//! Bounded holomorphic extension from the Neile parabola to the bidisk.
//!
//! A function f on M with f(0,0) = 0 pulls back to zeta^2 h(zeta) with
//! |h| <= 1, and satisfies the two-kernel identity
//!
//!   2 - f(x) conj(f(y)) = Gamma(x,y) (1 - z1 conj(w1)) + Delta(x,y) (1 - z2 conj(w2)),
//!
//! with Gamma identically 1 and Delta positive semidefinite. Feeding sampled
//! kernels through a lurking-isometry argument produces a transfer-function
//! realization bounded by sqrt(2) on the whole bidisk that interpolates f at
//! the samples. A general f costs 2 sqrt(2) + |f(0,0)|.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::disk::UnitDiskPoint;
use crate::error::{Error, Result};
use crate::variety::{CoreFactor, FlatDiskFunction, NeilePoint};

/// Hermitian symmetry tolerance on kernel matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Relative floor for kernel eigenvalues: pass iff
/// min_eig >= -PSD_REL_TOL * n * max_diag.
pub const PSD_REL_TOL: f64 = 1e-10;

/// Hard gate on the lurking-isometry residual.
pub const ISOMETRY_DEFECT_TOL: f64 = 1e-6;

/// Tolerance on |G(0,0)| in the Schwarz check.
pub const SCHWARZ_ORIGIN_TOL: f64 = 1e-8;

/// Central-difference step for the Schwarz partials.
pub const SCHWARZ_FD_STEP: f64 = 1e-5;

/// Slack granted to the finite-difference partial sum.
pub const SCHWARZ_SLACK: f64 = 1e-4;

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Delta(x, y) for the core factor h, written in the derivation-consistent
/// pairing: the Pick-kernel term rides on z2 conj(w2) and the h-product term
/// on z1 conj(w1):
///
///   Delta = 1 + z2 conj(w2) (1 - h(q(x)) conj(h(q(y)))) / (1 - q(x) conj(q(y)))
///             + z1 conj(w1) h(q(x)) conj(h(q(y))) / (1 - z2 conj(w2)).
///
/// The denominators never vanish for interior points, and on the diagonal the
/// Pick term takes its usual value (1 - |h|^2) / (1 - |q|^2) directly.
pub fn delta_kernel(x: &NeilePoint, y: &NeilePoint, h: &CoreFactor) -> Complex64 {
    let qx = x.uniformizer();
    let qy = y.uniformizer();
    let hx = h.eval(qx);
    let hy = h.eval(qy);
    let hh = hx * hy.conj();
    let z1w1 = x.z() * y.z().conj();
    let z2w2 = x.w() * y.w().conj();
    let pick = (Complex64::ONE - hh) / (Complex64::ONE - qx * qy.conj());
    Complex64::ONE + z2w2 * pick + z1w1 * hh / (Complex64::ONE - z2w2)
}

/// The sampled kernel pair of the extension identity.
#[derive(Clone, Debug)]
pub struct KernelDecomposition {
    pub points: Vec<NeilePoint>,
    pub core: CoreFactor,
    /// Gamma is identically the all-ones matrix.
    pub gamma: DMatrix<Complex64>,
    pub delta: DMatrix<Complex64>,
}

/// Builds Gamma and Delta over the sampled points for an origin-vanishing f.
pub fn kernel_matrices(points: &[NeilePoint], f: &FlatDiskFunction) -> Result<KernelDecomposition> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    for (i, x) in points.iter().enumerate() {
        for y in points.iter().skip(i + 1) {
            if x.uniformizer() == y.uniformizer() {
                return Err(Error::CoincidentNodes);
            }
        }
    }
    let core = f.core_factor()?;
    let n = points.len();
    let gamma = DMatrix::from_element(n, n, Complex64::ONE);
    let delta = DMatrix::from_fn(n, n, |i, j| delta_kernel(&points[i], &points[j], &core));
    Ok(KernelDecomposition {
        points: points.to_vec(),
        core,
        gamma,
        delta,
    })
}

/// Result of a positivity check.
#[derive(Clone, Copy, Debug)]
pub struct PsdReport {
    pub min_eigenvalue: f64,
    /// n * max diagonal entry, the scale the tolerance multiplies.
    pub scale: f64,
    pub pass: bool,
}

/// Hermitian-validates `m` and tests min eig >= -tol * n * max_diag.
pub fn psd_check(m: &DMatrix<Complex64>, tol: f64) -> Result<PsdReport> {
    let defect = hermitian_defect(m)?;
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian { defect });
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let min_eigenvalue = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let max_diag = (0..m.nrows())
        .map(|i| m[(i, i)].re)
        .fold(0.0f64, f64::max);
    let scale = m.nrows() as f64 * max_diag;
    Ok(PsdReport {
        min_eigenvalue,
        scale,
        pass: min_eigenvalue >= -tol * scale,
    })
}

fn hermitian_defect(m: &DMatrix<Complex64>) -> Result<f64> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotHermitian { defect: f64::NAN });
    }
    let mut defect = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            defect = defect.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    Ok(defect)
}

/// Gram columns of a PSD matrix via its Hermitian eigendecomposition.
/// Eigenvalues in [-clip, 0] are flushed to zero (their columns dropped);
/// anything lower aborts. Strictly positive eigenvalues are all retained:
/// discarding small ones breaks the lurking-isometry identity by the dropped
/// mass, and the interpolation residual pays its square root.
fn gram_columns(m: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let n = m.nrows();
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let max_diag = (0..n).map(|i| m[(i, i)].re).fold(0.0f64, f64::max);
    let clip = (PSD_REL_TOL * n as f64 * max_diag).max(1e-10);
    let mut kept = Vec::new();
    for (k, &val) in eig.eigenvalues.iter().enumerate() {
        if val < -clip {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: val,
            });
        }
        if val > 0.0 {
            kept.push((k, val.sqrt()));
        }
    }
    let mut out = DMatrix::zeros(n, kept.len());
    for (col, &(k, root)) in kept.iter().enumerate() {
        for i in 0..n {
            out[(i, col)] = eig.eigenvectors[(i, k)] * root;
        }
    }
    Ok(out)
}

/// Shrinks singular values above 1 down to 1, working through the Hermitian
/// eigendecomposition of W^H W: an isometric W carries a singular cluster at
/// 1 on which the complex SVD loses orthogonality, while the shrink map
/// min(1, 1/sqrt(l)) is flat across the cluster and indifferent to
/// eigenvector mixing inside it.
fn contraction_clip(w: &mut DMatrix<Complex64>) {
    for _ in 0..2 {
        let gram = w.adjoint() * &*w;
        let sym = (&gram + gram.adjoint()).scale(0.5);
        let eig = sym.symmetric_eigen();
        if eig.eigenvalues.iter().all(|&l| l <= 1.0) {
            return;
        }
        let shrink = DVector::from_iterator(
            eig.eigenvalues.len(),
            eig.eigenvalues
                .iter()
                .map(|&l| Complex64::new(if l > 1.0 { l.sqrt().recip() } else { 1.0 }, 0.0)),
        );
        let correction =
            &eig.eigenvectors * DMatrix::from_diagonal(&shrink) * eig.eigenvectors.adjoint();
        *w *= correction;
    }
    let gram = w.adjoint() * &*w;
    let sym = (&gram + gram.adjoint()).scale(0.5);
    let lmax = sym
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(0.0f64, f64::max);
    if lmax > 1.0 {
        w.scale_mut(lmax.sqrt().recip());
    }
}

/// A contractive colligation [[A, B], [C, D]] whose transfer function
/// G(z, w) = scale * (D + C E (I - A E)^{-1} B) + offset extends the sampled
/// data to the bidisk, with E = diag(z I_{n1}, w I_{n2}).
#[derive(Clone, Debug)]
pub struct TransferRealization {
    a: DMatrix<Complex64>,
    b: DVector<Complex64>,
    c: DMatrix<Complex64>,
    d: Complex64,
    dims: (usize, usize),
    scale: f64,
    offset: Complex64,
    isometry_defect: f64,
}

impl TransferRealization {
    /// State dimensions (n1 for the z block, n2 for the w block).
    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn offset(&self) -> Complex64 {
        self.offset
    }

    /// Guaranteed sup-norm bound on the bidisk: scale + |offset|.
    pub fn bound(&self) -> f64 {
        self.scale + self.offset.norm()
    }

    /// Residual of the lurking-isometry solve that produced the colligation.
    pub fn isometry_defect(&self) -> f64 {
        self.isometry_defect
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> Result<Complex64> {
        let z = UnitDiskPoint::new(z)?.value();
        let w = UnitDiskPoint::new(w)?.value();
        let (n1, n2) = self.dims;
        let dim = n1 + n2;
        let mut resolvent = DMatrix::identity(dim, dim);
        for j in 0..dim {
            let e = if j < n1 { z } else { w };
            for i in 0..dim {
                resolvent[(i, j)] -= self.a[(i, j)] * e;
            }
        }
        let x = resolvent
            .lu()
            .solve(&self.b)
            .expect("I - A E is invertible inside the open bidisk");
        let mut acc = self.d;
        for j in 0..dim {
            let e = if j < n1 { z } else { w };
            acc += self.c[(0, j)] * e * x[j];
        }
        Ok(self.scale * acc + self.offset)
    }

    pub fn certificate(&self) -> ExtensionCertificate {
        ExtensionCertificate {
            kind: CertificateKind::UpperSqrt2,
            bound: self.bound(),
            witness: format!(
                "contractive transfer realization, state dims ({}, {}), isometry defect {:.3e}",
                self.dims.0, self.dims.1, self.isometry_defect
            ),
            partials: None,
        }
    }
}

/// Realizes an origin-vanishing f as a sqrt(2)-bounded extension that matches
/// f at the sampled points.
///
/// The identity 1 - g_i conj(g_j) = (Gamma/2)(1 - z1 conj(w1)) +
/// (Delta/2)(1 - z2 conj(w2)) for g = f / sqrt(2) makes the map
/// (z1 u_i, z2 v_i, 1) -> (u_i, v_i, g_i) on Gram columns u, v an isometry of
/// spans; the minimum-norm least-squares solution extends it by zero on the
/// orthogonal complement, and a final singular-value clip keeps the
/// colligation contractive against roundoff.
pub fn realize_extension(points: &[NeilePoint], f: &FlatDiskFunction) -> Result<TransferRealization> {
    let kd = kernel_matrices(points, f)?;
    let n = points.len();
    // Gamma/2 is the all-ones matrix halved: its Gram factor is exactly the
    // constant column 1/sqrt(2), with none of the junk directions an
    // eigendecomposition would introduce.
    let u = DMatrix::from_element(n, 1, Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
    let v = gram_columns(&kd.delta.clone().scale(0.5))?;
    let (r1, r2) = (u.ncols(), v.ncols());
    let dim = r1 + r2 + 1;

    let mut lmat = DMatrix::<Complex64>::zeros(dim, n);
    let mut rmat = DMatrix::<Complex64>::zeros(dim, n);
    for i in 0..n {
        let x = &points[i];
        let lam = x.uniformizer();
        let g = lam * lam * kd.core.eval(lam) / SQRT2;
        for k in 0..r1 {
            lmat[(k, i)] = x.z() * u[(i, k)];
            rmat[(k, i)] = u[(i, k)];
        }
        for k in 0..r2 {
            lmat[(r1 + k, i)] = x.w() * v[(i, k)];
            rmat[(r1 + k, i)] = v[(i, k)];
        }
        lmat[(dim - 1, i)] = Complex64::ONE;
        rmat[(dim - 1, i)] = g;
    }

    let svd = lmat.clone().svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0f64, f64::max);
    let pinv = svd
        .pseudo_inverse(1e-12 * smax.max(1.0))
        .expect("SVD of the span matrix was requested with both factors");
    let mut w = &rmat * &pinv;

    let residual = &w * &lmat - &rmat;
    let isometry_defect = residual.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if isometry_defect > ISOMETRY_DEFECT_TOL {
        return Err(Error::IsometryDefect {
            defect: isometry_defect,
        });
    }

    contraction_clip(&mut w);

    let a = w.view((0, 0), (dim - 1, dim - 1)).into_owned();
    let b = DVector::from_fn(dim - 1, |i, _| w[(i, dim - 1)]);
    let c = w.view((dim - 1, 0), (1, dim - 1)).into_owned();
    let d = w[(dim - 1, dim - 1)];

    Ok(TransferRealization {
        a,
        b,
        c,
        d,
        dims: (r1, r2),
        scale: SQRT2,
        offset: Complex64::ZERO,
        isometry_defect,
    })
}

/// Extends a general bounded f by realizing (f - f(0,0)) / 2 and undoing the
/// normalization afterwards; the bound becomes 2 sqrt(2) + |f(0,0)|.
pub fn extend_general(points: &[NeilePoint], f: &FlatDiskFunction) -> Result<TransferRealization> {
    let c0 = f.constant_term();
    if c0 == Complex64::ZERO {
        return realize_extension(points, f);
    }
    let coeffs = match f {
        FlatDiskFunction::Series(coeffs) => coeffs,
        FlatDiskFunction::Blaschke(_) => return Err(Error::SeriesRepresentationRequired),
    };
    let tail: Vec<Complex64> = coeffs.iter().skip(2).map(|&a| a / 2.0).collect();
    let shifted = FlatDiskFunction::from_series(Complex64::ZERO, &tail);
    let mut realization = realize_extension(points, &shifted)?;
    realization.scale = 2.0 * SQRT2;
    realization.offset = c0;
    Ok(realization)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    UpperSqrt2,
    Lower54,
}

/// A norm certificate: an upper bound realized by a colligation, or the lower
/// bound forced on every extension of the witness function.
#[derive(Clone, Debug)]
pub struct ExtensionCertificate {
    pub kind: CertificateKind,
    pub bound: f64,
    pub witness: String,
    /// Origin partials (d/dz, d/dw) forced on any extension of the witness.
    pub partials: Option<(Complex64, Complex64)>,
}

/// The witness g(zeta) = zeta^2 (1/2 - zeta) / (1 - zeta/2): its series starts
/// zeta^2 / 2 - 3 zeta^3 / 4 + ..., so any bidisk extension G has origin
/// partials exactly (-3/4, 1/2) and the bidisk Schwarz lemma forces
/// sup |G| >= 3/4 + 1/2 = 5/4.
pub fn lower_bound_certificate() -> (ExtensionCertificate, FlatDiskFunction) {
    let witness = FlatDiskFunction::from_blaschke(
        crate::disk::BlaschkeProduct::new(
            Complex64::ONE,
            vec![
                Complex64::ZERO,
                Complex64::ZERO,
                Complex64::new(0.5, 0.0),
            ],
        )
        .expect("fixed witness data is valid"),
    )
    .expect("zeta^2 phi_{1/2} is flat at the origin");
    let partials = (Complex64::new(-0.75, 0.0), Complex64::new(0.5, 0.0));
    let certificate = ExtensionCertificate {
        kind: CertificateKind::Lower54,
        bound: partials.0.norm() + partials.1.norm(),
        witness: "zeta^2 phi_{1/2}(zeta); series coefficients force the origin partials"
            .to_string(),
        partials: Some(partials),
    };
    (certificate, witness)
}

/// Measured origin partials of a candidate extension.
#[derive(Clone, Copy, Debug)]
pub struct SchwarzCheck {
    pub partial_z: Complex64,
    pub partial_w: Complex64,
    pub sum: f64,
    pub pass: bool,
}

/// Schwarz lemma on the bidisk: a candidate extension G with G(0,0) = 0 and
/// sup bound R must satisfy |dG/dz(0,0)| + |dG/dw(0,0)| <= R. Partials are
/// taken by central differences with step [`SCHWARZ_FD_STEP`].
pub fn schwarz_bidisk_check<G>(g: G, r: f64) -> Result<SchwarzCheck>
where
    G: Fn(Complex64, Complex64) -> Complex64,
{
    let origin = g(Complex64::ZERO, Complex64::ZERO);
    if origin.norm() > SCHWARZ_ORIGIN_TOL {
        return Err(Error::NonzeroOrigin {
            value: origin.norm(),
        });
    }
    let h = SCHWARZ_FD_STEP;
    let hc = Complex64::new(h, 0.0);
    let two_h = Complex64::new(2.0 * h, 0.0);
    let partial_z = (g(hc, Complex64::ZERO) - g(-hc, Complex64::ZERO)) / two_h;
    let partial_w = (g(Complex64::ZERO, hc) - g(Complex64::ZERO, -hc)) / two_h;
    let sum = partial_z.norm() + partial_w.norm();
    Ok(SchwarzCheck {
        partial_z,
        partial_w,
        sum,
        pass: sum <= r + SCHWARZ_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::BlaschkeProduct;
    use crate::variety::{parameterize, series_extension};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn flat_blaschke(zeros: &[Complex64]) -> FlatDiskFunction {
        let mut all = vec![Complex64::ZERO, Complex64::ZERO];
        all.extend_from_slice(zeros);
        FlatDiskFunction::from_blaschke(BlaschkeProduct::new(Complex64::ONE, all).unwrap())
            .unwrap()
    }

    #[test]
    fn delta_diagonal_for_constant_one_core() {
        let x = parameterize(c(0.6, 0.0)).unwrap();
        let f = flat_blaschke(&[]);
        let core = f.core_factor().unwrap();
        let d = delta_kernel(&x, &x, &core);
        let expected = 1.0 + 0.6f64.powi(6) / (1.0 - 0.6f64.powi(4));
        assert!((d - c(expected, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn delta_diagonal_for_zero_core() {
        let x = parameterize(c(0.6, 0.0)).unwrap();
        let f = FlatDiskFunction::from_series(Complex64::ZERO, &[]);
        let core = f.core_factor().unwrap();
        let d = delta_kernel(&x, &x, &core);
        let expected = 1.0 + 0.6f64.powi(4) / (1.0 - 0.6f64.powi(2));
        assert!((d - c(expected, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn two_kernel_identity_holds_off_diagonal() {
        let f = flat_blaschke(&[c(0.4, 0.2), c(-0.3, 0.5)]);
        let core = f.core_factor().unwrap();
        for (l, d) in [
            (c(0.5, 0.1), c(-0.3, 0.4)),
            (c(0.05, -0.7), c(0.6, 0.2)),
            (c(0.9, 0.0), c(0.0, 0.9)),
        ] {
            let x = parameterize(l).unwrap();
            let y = parameterize(d).unwrap();
            let fx = l * l * core.eval(l);
            let fy = d * d * core.eval(d);
            let lhs = c(2.0, 0.0) - fx * fy.conj();
            let gamma_term = Complex64::ONE - x.z() * y.z().conj();
            let delta_term = delta_kernel(&x, &y, &core)
                * (Complex64::ONE - x.w() * y.w().conj());
            assert!(
                (lhs - gamma_term - delta_term).norm() < 1e-12,
                "identity residual too large at ({l}, {d})"
            );
        }
    }

    #[test]
    fn kernel_matrices_are_psd() {
        let points: Vec<NeilePoint> = [c(0.1, 0.2), c(-0.4, 0.3), c(0.55, -0.1), c(0.0, -0.62)]
            .iter()
            .map(|&l| parameterize(l).unwrap())
            .collect();
        let f = flat_blaschke(&[c(0.3, -0.4)]);
        let kd = kernel_matrices(&points, &f).unwrap();
        let scale = kd.delta.nrows() as f64;
        assert!(psd_check(&kd.gamma, PSD_REL_TOL).unwrap().pass);
        let delta_report = psd_check(&kd.delta, PSD_REL_TOL).unwrap();
        assert!(delta_report.pass, "min eig {}", delta_report.min_eigenvalue);
        assert!(delta_report.min_eigenvalue >= -PSD_REL_TOL * scale * delta_report.scale);
    }

    #[test]
    fn psd_check_rejects_non_hermitian_input() {
        let mut m = DMatrix::from_element(2, 2, Complex64::ONE);
        m[(0, 1)] = c(0.0, 1.0);
        m[(1, 0)] = c(0.0, 1.0);
        assert!(matches!(
            psd_check(&m, PSD_REL_TOL),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn psd_check_flags_negative_directions() {
        let mut m = DMatrix::from_element(2, 2, Complex64::ZERO);
        m[(0, 0)] = c(1.0, 0.0);
        m[(1, 1)] = c(-1.0, 0.0);
        let report = psd_check(&m, PSD_REL_TOL).unwrap();
        assert!(!report.pass);
        assert!((report.min_eigenvalue + 1.0).abs() < 1e-12);
    }

    #[test]
    fn realize_zero_function() {
        let points: Vec<NeilePoint> = [c(0.2, 0.1), c(-0.3, 0.25), c(0.5, -0.4)]
            .iter()
            .map(|&l| parameterize(l).unwrap())
            .collect();
        let f = FlatDiskFunction::from_series(Complex64::ZERO, &[]);
        let ext = realize_extension(&points, &f).unwrap();
        for x in &points {
            assert!(ext.eval(x.z(), x.w()).unwrap().norm() < 1e-8);
        }
        assert!((ext.bound() - SQRT2).abs() < 1e-15);
    }

    #[test]
    fn realize_coordinate_function() {
        // f(z, w) = z restricts from the bidisk; f . p = zeta^3
        let points: Vec<NeilePoint> = [
            c(0.1, 0.3),
            c(-0.45, 0.2),
            c(0.6, 0.1),
            c(0.0, -0.5),
            c(-0.2, -0.35),
        ]
        .iter()
        .map(|&l| parameterize(l).unwrap())
        .collect();
        let f = FlatDiskFunction::from_blaschke(
            BlaschkeProduct::new(
                -Complex64::ONE,
                vec![Complex64::ZERO, Complex64::ZERO, Complex64::ZERO],
            )
            .unwrap(),
        )
        .unwrap();
        let ext = realize_extension(&points, &f).unwrap();
        assert!(ext.isometry_defect() < 1e-8);
        for x in &points {
            let got = ext.eval(x.z(), x.w()).unwrap();
            assert!(
                (got - x.z()).norm() < 1e-8,
                "interpolation residual {} at {}",
                (got - x.z()).norm(),
                x.uniformizer()
            );
        }
        // stays within the guaranteed bound away from the samples
        for k in 0..32 {
            let t = std::f64::consts::TAU * (k as f64) / 32.0;
            let z = Complex64::from_polar(0.93, t);
            let w = Complex64::from_polar(0.91, 2.3 * t + 0.4);
            assert!(ext.eval(z, w).unwrap().norm() <= SQRT2 + 1e-8);
        }
    }

    #[test]
    fn extend_general_shifts_and_rescales() {
        let points: Vec<NeilePoint> = (0..8)
            .map(|k| {
                let t = std::f64::consts::TAU * (k as f64) / 8.0;
                parameterize(Complex64::from_polar(0.45 + 0.04 * (k as f64), t)).unwrap()
            })
            .collect();
        // f . p = 0.5 + 0.3 zeta^2
        let f = FlatDiskFunction::from_series(c(0.5, 0.0), &[c(0.3, 0.0)]);
        let ext = extend_general(&points, &f).unwrap();
        assert!((ext.bound() - (2.0 * SQRT2 + 0.5)).abs() < 1e-15);
        for x in &points {
            let want = f.eval(x.uniformizer());
            let got = ext.eval(x.z(), x.w()).unwrap();
            assert!((got - want).norm() < 1e-8);
        }
    }

    #[test]
    fn lower_bound_certificate_is_exact() {
        let (cert, witness) = lower_bound_certificate();
        assert_eq!(cert.kind, CertificateKind::Lower54);
        assert_eq!(cert.bound, 1.25);
        let (pz, pw) = cert.partials.unwrap();
        assert_eq!(pz, c(-0.75, 0.0));
        assert_eq!(pw, c(0.5, 0.0));
        // the witness really has those series coefficients
        let phi = crate::disk::mobius_series(c(0.5, 0.0), 24).unwrap();
        assert!((phi[0] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((phi[1] - c(-0.75, 0.0)).norm() < 1e-15);
        let probe = witness.eval(c(0.3, 0.2));
        let series = FlatDiskFunction::from_series(Complex64::ZERO, &phi);
        let by_series = series.eval(c(0.3, 0.2));
        assert!((probe - by_series).norm() < 1e-10);
    }

    #[test]
    fn schwarz_check_on_the_series_extension_of_the_witness() {
        let phi = crate::disk::mobius_series(c(0.5, 0.0), 14).unwrap();
        let series = FlatDiskFunction::from_series(Complex64::ZERO, &phi);
        let poly = series_extension(&series, 16).unwrap();
        let check = schwarz_bidisk_check(|z, w| poly.eval(z, w), SQRT2).unwrap();
        assert!(check.pass);
        assert!((check.partial_z - c(-0.75, 0.0)).norm() < 1e-9);
        assert!((check.partial_w - c(0.5, 0.0)).norm() < 1e-9);
        assert!((check.sum - 1.25).abs() < 1e-8);
        // and 5/4 is genuinely below the realized upper bound sqrt(2)
        assert!(1.25 <= SQRT2);
    }

    #[test]
    fn schwarz_check_rejects_nonvanishing_candidates() {
        let err = schwarz_bidisk_check(|_, _| c(0.5, 0.0), SQRT2).unwrap_err();
        assert!(matches!(err, Error::NonzeroOrigin { .. }));
    }
}
