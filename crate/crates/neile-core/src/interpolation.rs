//! Mixed Caratheodory-Pick interpolation on the disk.
//!
//! Data: three pairwise distinct nodes z1, z2, z3 and two targets w1, w2.
//! Sought: f : D -> D with f(z1) = w1, f(z2) = w2, f'(z3) = 0. Feasibility is
//! exactly rho(w1, w2) <= c_M(p(phi_{z3}(z1)), p(phi_{z3}(z2))): the critical
//! derivative moves the problem onto the Neile parabola.

use num_complex::Complex64;

use crate::caratheodory::{extremal_function, extremal_parameters, Regime};
use crate::disk::{m_raw, mobius_raw, BlaschkeProduct, DiskAutomorphism, UnitDiskPoint};
use crate::error::{Error, Result};

/// Margin tolerance deciding whether feasible data counts as extremal.
pub const EXTREMAL_MARGIN_TOL: f64 = 1e-10;

/// Relative slack admitted on the Schwarz-Pick ratio before rejection.
pub const PICK_RATIO_BAND: f64 = 1e-9;

/// A mixed interpolation instance.
#[derive(Clone, Copy, Debug)]
pub struct MixedProblem {
    z1: Complex64,
    z2: Complex64,
    z3: Complex64,
    w1: Complex64,
    w2: Complex64,
}

/// Feasibility verdict: margin = c_M cap minus the target separation, both in
/// Poincare units.
#[derive(Clone, Copy, Debug)]
pub struct Feasibility {
    pub feasible: bool,
    pub margin: f64,
    /// c_M(p(phi_{z3}(z1)), p(phi_{z3}(z2))).
    pub cap: f64,
    /// rho(w1, w2).
    pub separation: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionKind {
    Extremal,
    Slack,
}

/// The solved interpolant f = phi_{w1} . (c phi_{a1}) . h . phi_{z3} where
/// h(zeta) = zeta^2 or zeta^2 phi_{alpha0}(zeta).
#[derive(Clone, Debug)]
pub struct MixedSolution {
    pub kind: SolutionKind,
    /// Blaschke order of f for extremal data (2 or 3), None for slack data.
    pub order: Option<u8>,
    pub alpha0: Complex64,
    pub regime: Regime,
    pub margin: f64,
    pre: DiskAutomorphism,
    core: BlaschkeProduct,
    scale: Complex64,
    mid: DiskAutomorphism,
    post: DiskAutomorphism,
}

impl MixedProblem {
    pub fn new(
        z1: Complex64,
        z2: Complex64,
        z3: Complex64,
        w1: Complex64,
        w2: Complex64,
    ) -> Result<Self> {
        for z in [z1, z2, z3, w1, w2] {
            UnitDiskPoint::new(z)?;
        }
        if z1 == z2 || z1 == z3 || z2 == z3 {
            return Err(Error::CoincidentNodes);
        }
        Ok(MixedProblem { z1, z2, z3, w1, w2 })
    }

    pub fn nodes(&self) -> (Complex64, Complex64, Complex64) {
        (self.z1, self.z2, self.z3)
    }

    pub fn targets(&self) -> (Complex64, Complex64) {
        (self.w1, self.w2)
    }

    /// The uniformizer parameters of the reduced problem with z3 moved to 0.
    fn reduced_parameters(&self) -> (Complex64, Complex64) {
        (
            mobius_raw(self.z3, self.z1),
            mobius_raw(self.z3, self.z2),
        )
    }

    pub fn feasible(&self) -> Feasibility {
        let (lambda, delta) = self.reduced_parameters();
        let cap = crate::caratheodory::cstar_raw(lambda, delta).atanh();
        let separation = m_raw(self.w1, self.w2).atanh();
        let margin = cap - separation;
        Feasibility {
            feasible: margin >= 0.0,
            margin,
            cap,
            separation,
        }
    }

    /// Solves the instance. The construction pins the critical point with the
    /// variety extremal function and then matches the targets with a two-point
    /// Pick map; for slack data the solution is one of many, for extremal data
    /// (margin within [`EXTREMAL_MARGIN_TOL`] of zero) it is the unique one.
    pub fn solve(&self) -> Result<MixedSolution> {
        let feas = self.feasible();
        if feas.margin < -EXTREMAL_MARGIN_TOL {
            return Err(Error::Infeasible {
                margin: feas.margin,
            });
        }
        let (lambda, delta) = self.reduced_parameters();
        let data = extremal_parameters(lambda, delta)?;
        let core = extremal_function(lambda, delta)?;
        let pre = DiskAutomorphism::involution(self.z3)?;
        let a1 = core.eval(lambda);
        let a2 = core.eval(delta);
        let pick = two_point_pick(a1, a2, self.w1, self.w2)?;
        let kind = if feas.margin.abs() <= EXTREMAL_MARGIN_TOL {
            SolutionKind::Extremal
        } else {
            SolutionKind::Slack
        };
        let order = match kind {
            SolutionKind::Extremal => Some(core.order() as u8),
            SolutionKind::Slack => None,
        };
        Ok(MixedSolution {
            kind,
            order,
            alpha0: data.alpha0,
            regime: data.regime,
            margin: feas.margin,
            pre,
            core,
            scale: pick.scale,
            mid: pick.inner,
            post: pick.outer,
        })
    }

    /// Classification of extremal data: Blaschke order 3 when |alpha0| < 1,
    /// order 2 otherwise. The margin must vanish within `tolerance`.
    pub fn extremal_classify_with_tol(&self, tolerance: f64) -> Result<ExtremalClassification> {
        let feas = self.feasible();
        if feas.margin < -tolerance {
            return Err(Error::Infeasible {
                margin: feas.margin,
            });
        }
        if feas.margin > tolerance {
            return Err(Error::NotExtremal {
                margin: feas.margin,
                tolerance,
            });
        }
        let (lambda, delta) = self.reduced_parameters();
        let data = extremal_parameters(lambda, delta)?;
        Ok(ExtremalClassification {
            order: if data.regime == Regime::Interior { 3 } else { 2 },
            alpha0: data.alpha0,
            unique: true,
        })
    }

    pub fn extremal_classify(&self) -> Result<ExtremalClassification> {
        self.extremal_classify_with_tol(EXTREMAL_MARGIN_TOL)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExtremalClassification {
    pub order: u8,
    pub alpha0: Complex64,
    pub unique: bool,
}

impl MixedSolution {
    pub fn eval(&self, zeta: Complex64) -> Complex64 {
        let t = self.pre.apply(zeta);
        let u = self.core.eval(t);
        let s = self.scale * self.mid.apply(u);
        self.post.apply(s)
    }

    /// Analytic chain-rule derivative; the double zero of the core makes
    /// f'(z3) exactly zero.
    pub fn derivative(&self, zeta: Complex64) -> Complex64 {
        let t = self.pre.apply(zeta);
        let (u, du) = self.core.eval_with_derivative(t);
        let s = self.scale * self.mid.apply(u);
        self.post.derivative(s) * self.scale * self.mid.derivative(u) * du
            * self.pre.derivative(zeta)
    }

    /// Parameters of the outer Pick map (scale, inner centre, outer centre);
    /// for extremal data these pin the unique automorphism psi.
    pub fn pick_parameters(&self) -> (Complex64, Complex64, Complex64) {
        (self.scale, self.mid.center(), self.post.center())
    }
}

struct RawPickMap {
    scale: Complex64,
    inner: DiskAutomorphism,
    outer: DiskAutomorphism,
}

/// The classical two-point Pick interpolant phi = phi_{w1} . (c phi_{a1}) with
/// c = phi_{w1}(w2) / phi_{a1}(a2); requires m(w1, w2) <= m(a1, a2).
fn two_point_pick(
    a1: Complex64,
    a2: Complex64,
    w1: Complex64,
    w2: Complex64,
) -> Result<RawPickMap> {
    for z in [a1, a2, w1, w2] {
        UnitDiskPoint::new(z)?;
    }
    if a1 == a2 {
        return Err(Error::CoincidentNodes);
    }
    let mut scale = mobius_raw(w1, w2) / mobius_raw(a1, a2);
    let ratio = scale.norm();
    if ratio > 1.0 + PICK_RATIO_BAND {
        return Err(Error::SchwarzPickViolation { ratio });
    }
    if ratio > 1.0 {
        scale /= ratio;
    }
    Ok(RawPickMap {
        scale,
        inner: DiskAutomorphism::involution(a1)?,
        outer: DiskAutomorphism::involution(w1)?,
    })
}

/// A self-map of the disk sending a1 -> w1, a2 -> w2.
#[derive(Clone, Debug)]
pub struct PickMap {
    scale: Complex64,
    inner: DiskAutomorphism,
    outer: DiskAutomorphism,
}

impl PickMap {
    pub fn new(a1: Complex64, a2: Complex64, w1: Complex64, w2: Complex64) -> Result<Self> {
        let raw = two_point_pick(a1, a2, w1, w2)?;
        Ok(PickMap {
            scale: raw.scale,
            inner: raw.inner,
            outer: raw.outer,
        })
    }

    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    pub fn eval(&self, zeta: Complex64) -> Complex64 {
        self.outer.apply(self.scale * self.inner.apply(zeta))
    }

    pub fn derivative(&self, zeta: Complex64) -> Complex64 {
        let u = self.scale * self.inner.apply(zeta);
        self.outer.derivative(u) * self.scale * self.inner.derivative(zeta)
    }
}
