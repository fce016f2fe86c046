//! Exact eigenstates of a free particle confined to the surface of a
//! cylinder of radius `R_o` and length `L`.
//!
//! Separation of variables gives plane waves `e^{i n_θ θ}` around the
//! circumference (single-valuedness quantizes n_θ = 1, 2, 3, …) and
//! infinite-well sine modes `sin(n_z π z / L)` along the axis, with
//!
//! ```text
//! Ψ(θ, z)     = (π R_o L)^{-1/2} sin(n_z π z / L) e^{i n_θ θ}
//! E(n_z, n_θ) = n_z² π² ħ² / (2 m L²) + ħ² n_θ² / (2 m R_o²)
//! ```
//!
//! At the special aspect ratio `R_o = L/π` the energy collapses to
//! `(π²ħ²/2mL²)(n_z² + n_θ²)`, so swapped quantum numbers become exactly
//! degenerate.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::gauss_legendre;

/// Default relative tolerance for grouping energies into degenerate sets.
///
/// Exact degeneracies are rational multiples of π²ħ²/(2mL²); at desk-scale
/// parameters 1e-9 cleanly separates them from near-misses.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

/// The pair (n_z, n_θ) labeling an unperturbed eigenstate. Both start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuantumNumbers {
    n_z: u32,
    n_theta: u32,
}

impl QuantumNumbers {
    pub fn new(n_z: u32, n_theta: u32) -> Result<Self> {
        if n_z < 1 || n_theta < 1 {
            return Err(Error::InvalidQuantumNumbers);
        }
        Ok(QuantumNumbers { n_z, n_theta })
    }

    pub fn n_z(&self) -> u32 {
        self.n_z
    }

    pub fn n_theta(&self) -> u32 {
        self.n_theta
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n_z, self.n_theta)
    }
}

/// Cylinder dimensions and physical constants, natural units by default
/// (m = ħ = 1, L = 1). All four entries are strictly positive finite reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderGeometry {
    radius: f64,
    length: f64,
    mass: f64,
    hbar: f64,
}

impl CylinderGeometry {
    pub fn new(radius: f64, length: f64) -> Result<Self> {
        Self::with_constants(radius, length, 1.0, 1.0)
    }

    pub fn with_constants(radius: f64, length: f64, mass: f64, hbar: f64) -> Result<Self> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(radius) {
            return Err(Error::InvalidGeometry("radius must be positive and finite"));
        }
        if !positive(length) {
            return Err(Error::InvalidGeometry("length must be positive and finite"));
        }
        if !positive(mass) {
            return Err(Error::InvalidGeometry("mass must be positive and finite"));
        }
        if !positive(hbar) {
            return Err(Error::InvalidGeometry("hbar must be positive and finite"));
        }
        Ok(CylinderGeometry {
            radius,
            length,
            mass,
            hbar,
        })
    }

    /// The degenerate aspect ratio R_o = L/π at which energies depend on
    /// n_z² + n_θ² only.
    pub fn degenerate(length: f64) -> Result<Self> {
        Self::new(length / PI, length)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// True when the radius is bitwise the rounded L/π, the aspect ratio
    /// that makes (a,b) and (b,a) share an energy.
    pub fn is_degenerate_aspect(&self) -> bool {
        self.radius == self.length / PI
    }

    /// Unperturbed energy E = n_z²π²ħ²/(2mL²) + ħ²n_θ²/(2mR_o²).
    ///
    /// At the exactly degenerate radius the factored form
    /// (π²ħ²/2mL²)(n_z² + n_θ²) is used so that swapped quantum numbers
    /// give bitwise-identical energies; the generic two-term form cannot
    /// guarantee that because its prefactors round differently.
    pub fn energy(&self, qn: QuantumNumbers) -> f64 {
        let nz2 = (qn.n_z as f64) * (qn.n_z as f64);
        let nt2 = (qn.n_theta as f64) * (qn.n_theta as f64);
        let axial = self.hbar * self.hbar * PI * PI / (2.0 * self.mass * self.length * self.length);
        if self.is_degenerate_aspect() {
            return axial * (nz2 + nt2);
        }
        let angular = self.hbar * self.hbar / (2.0 * self.mass * self.radius * self.radius);
        axial * nz2 + angular * nt2
    }

    /// Ψ(θ, z) = (πR_oL)^{-1/2} sin(n_zπz/L) e^{i n_θ θ}.
    ///
    /// θ is taken modulo nothing (the phase factor is total); z must lie
    /// inside [0, L].
    pub fn wavefunction(&self, qn: QuantumNumbers, theta: f64, z: f64) -> Result<Complex64> {
        if !(0.0..=self.length).contains(&z) {
            return Err(Error::OutsideDomain {
                z,
                length: self.length,
            });
        }
        let norm = 1.0 / (PI * self.radius * self.length).sqrt();
        let axial = (qn.n_z as f64 * PI * z / self.length).sin();
        let phase = Complex64::new(0.0, qn.n_theta as f64 * theta).exp();
        Ok(norm * axial * phase)
    }

    /// |Ψ|² = sin²(n_zπz/L)/(πR_oL); independent of θ.
    pub fn probability_density(&self, qn: QuantumNumbers, theta: f64, z: f64) -> Result<f64> {
        let _ = theta; // the density is θ-independent
        if !(0.0..=self.length).contains(&z) {
            return Err(Error::OutsideDomain {
                z,
                length: self.length,
            });
        }
        let axial = (qn.n_z as f64 * PI * z / self.length).sin();
        Ok(axial * axial / (PI * self.radius * self.length))
    }
}

/// One state with its unperturbed energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub qn: QuantumNumbers,
    pub energy: f64,
}

/// A maximal set of states sharing one unperturbed energy.
#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyGroup {
    members: Vec<QuantumNumbers>,
    energy: f64,
}

impl DegeneracyGroup {
    /// Builds a group from explicit members, checking that their energies
    /// agree within `rel_tol` of the largest. Members are sorted
    /// lexicographically and deduplicated.
    pub fn new(members: Vec<QuantumNumbers>, geom: &CylinderGeometry, rel_tol: f64) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::NotDegenerate("empty member list".into()));
        }
        let mut members = members;
        members.sort();
        members.dedup();
        let energies: Vec<f64> = members.iter().map(|&qn| geom.energy(qn)).collect();
        let e_min = energies.iter().cloned().fold(f64::INFINITY, f64::min);
        let e_max = energies.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if e_max - e_min > rel_tol * e_max {
            let list = members
                .iter()
                .map(|qn| qn.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            return Err(Error::NotDegenerate(list));
        }
        Ok(DegeneracyGroup {
            members,
            energy: e_min,
        })
    }

    fn from_levels(levels: &[EnergyLevel]) -> Self {
        let mut members: Vec<QuantumNumbers> = levels.iter().map(|l| l.qn).collect();
        members.sort();
        let energy = levels
            .iter()
            .map(|l| l.energy)
            .fold(f64::INFINITY, f64::min);
        DegeneracyGroup { members, energy }
    }

    pub fn members(&self) -> &[QuantumNumbers] {
        &self.members
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }
}

/// All levels with n_z ≤ max_nz and n_θ ≤ max_ntheta, ascending in energy;
/// ties broken lexicographically by (n_z, n_θ) for reproducible output.
pub fn spectrum(geom: &CylinderGeometry, max_nz: u32, max_ntheta: u32) -> Vec<EnergyLevel> {
    let mut levels = Vec::with_capacity((max_nz * max_ntheta) as usize);
    for n_z in 1..=max_nz {
        for n_theta in 1..=max_ntheta {
            let qn = QuantumNumbers { n_z, n_theta };
            levels.push(EnergyLevel {
                qn,
                energy: geom.energy(qn),
            });
        }
    }
    levels.sort_by(|a, b| {
        a.energy
            .partial_cmp(&b.energy)
            .expect("energies are finite")
            .then(a.qn.cmp(&b.qn))
    });
    levels
}

/// Partitions an ascending level list into degeneracy groups.
///
/// Adjacent levels join the same group iff |E_i − E_j| ≤ rel_tol·max(E_i,
/// E_j); membership is the transitive closure over adjacent pairs, so the
/// input must be sorted ascending.
pub fn degeneracy_groups(levels: &[EnergyLevel], rel_tol: f64) -> Vec<DegeneracyGroup> {
    debug_assert!(levels.windows(2).all(|w| w[0].energy <= w[1].energy));
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=levels.len() {
        let adjacent = i < levels.len() && {
            let (a, b) = (levels[i - 1].energy, levels[i].energy);
            (b - a).abs() <= rel_tol * a.abs().max(b.abs())
        };
        if !adjacent {
            if start < i {
                groups.push(DegeneracyGroup::from_levels(&levels[start..i]));
            }
            start = i;
        }
    }
    groups
}

/// |∫∫ |Ψ|² R_o dθ dz − 1| by explicit 2-D quadrature (Gauss–Legendre in
/// z, trapezoid in θ). Small residuals certify the normalization constant.
pub fn normalization_residual(
    qn: QuantumNumbers,
    geom: &CylinderGeometry,
    quadrature_nodes: usize,
) -> f64 {
    let rule = gauss_legendre(quadrature_nodes);
    let dtheta = TAU / quadrature_nodes as f64;
    let mut total = 0.0;
    for j in 0..quadrature_nodes {
        let theta = j as f64 * dtheta;
        let slice = rule.integrate(0.0, geom.length(), |z| {
            geom.wavefunction(qn, theta, z)
                .expect("z inside [0, L]")
                .norm_sqr()
        });
        total += slice * dtheta * geom.radius();
    }
    (total - 1.0).abs()
}
