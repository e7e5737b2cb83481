//! Explicit Caratheodory geometry on the Neile parabola.
//!
//! The variety M = {(z, w) in D^2 : z^2 = w^3} is parameterized by
//! p(lambda) = (lambda^3, lambda^2); its cusp at the origin makes M a
//! non-trivially embedded analytic set whose function theory is still fully
//! computable. This crate implements, in closed form and with brute-force
//! oracles for every derived formula:
//!
//! - the Caratheodory pseudo-distance and its extremal functions
//!   ([`caratheodory`]),
//! - the infinitesimal Caratheodory metric, including the two-piece rule at
//!   the cusp ([`caratheodory::caratheodory_metric`]),
//! - mixed Caratheodory-Pick interpolation with a derivative condition
//!   ([`interpolation`]),
//! - bounded holomorphic extension to the bidisk with a sqrt(2) upper bound
//!   and a 5/4 lower certificate ([`extension`]),
//! - grid/ascent/candidate oracles ([`oracle`]) and a reproducible
//!   verification suite ([`verify`]).

pub mod caratheodory;
pub mod disk;
pub mod error;
pub mod extension;
pub mod interpolation;
pub mod oracle;
pub mod variety;
pub mod verify;

pub use caratheodory::{
    caratheodory_distance, caratheodory_metric, caratheodory_metric_at, caratheodory_mobius,
    extremal_function, extremal_parameters, f_eval, ExtremalData, Regime, REGIME_EDGE,
};
pub use disk::{
    blaschke_eval, mobius, poincare_distance, poincare_metric, pseudo_hyperbolic,
    BlaschkeProduct, DiskAutomorphism, UnitDiskPoint,
};
pub use error::{Error, Result};
pub use extension::{
    extend_general, lower_bound_certificate, realize_extension, schwarz_bidisk_check,
    ExtensionCertificate, TransferRealization, ISOMETRY_DEFECT_TOL,
};
pub use interpolation::{
    Feasibility, MixedProblem, MixedSolution, PickMap, SolutionKind, EXTREMAL_MARGIN_TOL,
};
pub use variety::{
    kobayashi_distance, parameterize, series_extension, uniformize, FlatDiskFunction, NeilePoint,
    TangentVector,
};
pub use verify::{certificate_points, run_suite, suite_passes, OracleReport, Profile};
