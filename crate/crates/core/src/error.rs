use crate::potential::AdmissibilityReport;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("quantum numbers must satisfy n_z >= 1 and n_theta >= 1")]
    InvalidQuantumNumbers,

    #[error("invalid geometry: {0}")]
    InvalidGeometry(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("z = {z} lies outside the cylinder length [0, {length}]")]
    OutsideDomain { z: f64, length: f64 },

    #[error("invalid potential: {0}")]
    InvalidPotential(&'static str),

    #[error("parse error at byte {offset}: expected {expected}")]
    Parse { offset: usize, expected: String },

    #[error("sin(gamma*theta) moments have no closed form at gamma = 1 for |m| = 1")]
    SingularGamma,

    #[error("matrix violates Hermitian symmetry beyond {max_violation:e} (allowed {tol:e})")]
    NotHermitian { max_violation: f64, tol: f64 },

    #[error("eigensolver failed to converge")]
    NoConvergence,

    #[error("states ({0}) are not degenerate within the grouping tolerance")]
    NotDegenerate(String),

    #[error(
        "state ({n_z},{n_theta}) is degenerate with ({other_n_z},{other_n_theta}) \
         and couples to it; use the degenerate pathway"
    )]
    DegenerateDenominator {
        n_z: u32,
        n_theta: u32,
        other_n_z: u32,
        other_n_theta: u32,
    },

    #[error(
        "basis {max_nz}x{max_ntheta} too small: boundary coefficient weight {weight:e} \
         exceeds {limit:e}"
    )]
    BasisTooSmall {
        max_nz: u32,
        max_ntheta: u32,
        weight: f64,
        limit: f64,
    },

    #[error("potential is not admissible: I1 = {i1}, I2 = {i2}", i1 = .0.i1, i2 = .0.i2)]
    Inadmissible(AdmissibilityReport),
}

pub type Result<T> = std::result::Result<T, Error>;
