//! Exact spectrum of a quantum particle on the surface of a cylinder and
//! its first-order response to Stark-type perturbations β z V(θ), cross
//! validated against quadrature and exact-diagonalization oracles.
//!
//! The crate is organized around five concerns:
//!
//! - [`states`]: unperturbed eigenstates, energies, spectrum enumeration,
//!   degeneracy grouping;
//! - [`potential`]: the angular profile DSL, its evaluation, angular
//!   moments and the admissibility criterion;
//! - [`perturbation`]: z-overlaps, matrix elements, non-degenerate shifts,
//!   secular blocks and the low-excitation splitting tables;
//! - [`oracle`]: brute-force quadrature and truncated-basis exact
//!   diagonalization used as independent ground truth;
//! - [`report`]: deterministic JSON/CSV/text serialization of results.
//!
//! All values are pure functions of immutable inputs; everything is safe
//! to call concurrently.

pub mod error;
pub mod linalg;
pub mod oracle;
pub mod perturbation;
pub mod potential;
pub mod quad;
pub mod report;
pub mod states;

pub use error::{Error, Result};
pub use oracle::{
    assemble_hamiltonian, exact_eigenvalues, overlap_element, perturbation_slope_check,
    quadrature_element, solve_spectrum, SlopeReport, SlopeRow, SpectralResult, TruncatedBasis,
};
pub use perturbation::{
    build_block, matrix_element, nondegenerate_correction, paper_tables, solve_block,
    splitting_rule, state_correction, z_overlap, CorrectionResult, Coupling, PerturbationBlock,
    StateCorrection,
};
pub use potential::{
    admissibility, angular_moment, angular_moment_closed, parse_potential, AdmissibilityReport,
    AngularMoment, PotentialSpec, PotentialTerm,
};
pub use report::{TableRow, TablesReport};
pub use states::{
    degeneracy_groups, normalization_residual, spectrum, CylinderGeometry, DegeneracyGroup,
    EnergyLevel, QuantumNumbers,
};
