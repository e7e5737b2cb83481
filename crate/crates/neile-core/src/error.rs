use num_complex::Complex64;
use thiserror::Error;

/// Domain and numerical failures surfaced by the library.
///
/// Every constructor and operation validates its inputs; nothing is silently
/// projected back into a domain.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("point {value} has modulus {modulus} and lies outside the open unit disk")]
    OutsideOpenDisk { value: Complex64, modulus: f64 },

    #[error("point {value} has modulus {modulus} and lies outside the closed unit disk")]
    OutsideClosedDisk { value: Complex64, modulus: f64 },

    #[error("constant {value} has modulus {modulus}, expected a unimodular constant")]
    NotUnimodular { value: Complex64, modulus: f64 },

    #[error("coordinates are off the variety z^2 = w^3 (residual {residual:.3e})")]
    OffVariety { residual: f64 },

    #[error("uniformizer z/w is undefined for w = 0, z != 0")]
    UniformizerUndefined,

    #[error("vector is not colinear with the tangent line (residual {residual:.3e})")]
    NotColinear { residual: f64 },

    #[error("disk function is not flat at the origin (|h'(0)| = {derivative:.3e})")]
    NotFlatAtOrigin { derivative: f64 },

    #[error("operation requires the power-series representation")]
    SeriesRepresentationRequired,

    #[error("function must vanish at the origin (constant term {value})")]
    ConstantTermNotZero { value: Complex64 },

    #[error("uniformizer parameters must be nonzero here; zero cases are handled by the distance directly")]
    ZeroParameter,

    #[error("nodes must be pairwise distinct")]
    CoincidentNodes,

    #[error("interpolation data is infeasible (margin {margin:.6e})")]
    Infeasible { margin: f64 },

    #[error("interpolation data is not extremal (margin {margin:.6e} exceeds tolerance {tolerance:.1e})")]
    NotExtremal { margin: f64, tolerance: f64 },

    #[error("target separation exceeds the node separation (ratio {ratio:.6})")]
    SchwarzPickViolation { ratio: f64 },

    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.6e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("lurking-isometry span map fails isometry (defect {defect:.3e})")]
    IsometryDefect { defect: f64 },

    #[error("candidate extension does not vanish at the origin (|G(0,0)| = {value:.3e})")]
    NonzeroOrigin { value: f64 },

    #[error("point set must be nonempty")]
    EmptyPointSet,
}

pub type Result<T> = std::result::Result<T, Error>;
