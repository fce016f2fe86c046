//! Independent numerical ground truth: brute-force 2-D quadrature of the
//! perturbation integrals and exact diagonalization of the full Hamiltonian
//! in a truncated basis.
//!
//! Nothing here reuses the closed-form factorization being verified — the
//! quadrature integrates the raw integrand of the matrix element, and the
//! slope check extracts first-order coefficients from eigenvalues of the
//! assembled Hamiltonian at a sequence of couplings:
//!
//! ```text
//! s(β) = (λ(β) − E⁰)/β  →  E⁽¹⁾   with remainder O(β)
//! ```
//!
//! Tracked levels are identified through eigenvector overlap with the
//! unperturbed basis directions, so level crossings cannot corrupt the
//! extraction, and tracked eigenvalues are polished with a compensated
//! Rayleigh quotient to keep the O(β) remainder visible at β = 1e-4.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, rayleigh_quotient};
use crate::perturbation::{
    build_block, element_from_parts, nondegenerate_correction, solve_block, z_overlap, Coupling,
    DEGENERATE_GAP_TOL,
};
use crate::potential::{angular_moments, PotentialSpec, DEFAULT_ANGULAR_NODES};
use crate::quad::gauss_legendre;
use crate::states::{CylinderGeometry, DegeneracyGroup, QuantumNumbers, DEFAULT_DEGENERACY_TOL};

/// First-order weight allowed on the basis boundary before the slope
/// check refuses to trust the truncation.
pub const BOUNDARY_WEIGHT_LIMIT: f64 = 1e-6;

/// A row-major lexicographic enumeration of states up to
/// (max_nz, max_ntheta); matrix indices depend on this ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedBasis {
    max_nz: u32,
    max_ntheta: u32,
    states: Vec<QuantumNumbers>,
}

impl TruncatedBasis {
    pub fn new(max_nz: u32, max_ntheta: u32) -> Result<Self> {
        if max_nz < 1 || max_ntheta < 1 {
            return Err(Error::InvalidArgument("basis bounds must be at least 1"));
        }
        let mut states = Vec::with_capacity((max_nz * max_ntheta) as usize);
        for n_z in 1..=max_nz {
            for n_theta in 1..=max_ntheta {
                states.push(QuantumNumbers::new(n_z, n_theta).expect("bounds start at 1"));
            }
        }
        Ok(TruncatedBasis {
            max_nz,
            max_ntheta,
            states,
        })
    }

    pub fn max_nz(&self) -> u32 {
        self.max_nz
    }

    pub fn max_ntheta(&self) -> u32 {
        self.max_ntheta
    }

    pub fn size(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[QuantumNumbers] {
        &self.states
    }

    pub fn index_of(&self, qn: QuantumNumbers) -> Option<usize> {
        if qn.n_z() <= self.max_nz && qn.n_theta() <= self.max_ntheta {
            Some(((qn.n_z() - 1) * self.max_ntheta + (qn.n_theta() - 1)) as usize)
        } else {
            None
        }
    }

    /// States on the enumeration edge, where truncation bites first.
    pub fn is_boundary(&self, qn: QuantumNumbers) -> bool {
        qn.n_z() == self.max_nz || qn.n_theta() == self.max_ntheta
    }
}

/// H = H⁰ + βzV(θ) over the basis: unperturbed energies plus every
/// perturbation element, diagonal included. Angular moments are cached
/// per Δn_θ, so assembly is O(D²) after one pass of quadratures.
pub fn assemble_hamiltonian(
    basis: &TruncatedBasis,
    spec: &PotentialSpec,
    beta: Coupling,
    geom: &CylinderGeometry,
) -> Array2<Complex64> {
    let span = basis.max_ntheta as i32 - 1;
    let moments = angular_moments(spec, -span..=span, DEFAULT_ANGULAR_NODES);
    let moment = |order: i32| moments[(order + span) as usize].value;

    let d = basis.size();
    let mut h = Array2::<Complex64>::zeros((d, d));
    for (r, &qi) in basis.states.iter().enumerate() {
        for (c, &qj) in basis.states.iter().enumerate() {
            let axial = z_overlap(qi.n_z(), qj.n_z(), geom.length());
            let order = qj.n_theta() as i32 - qi.n_theta() as i32;
            h[[r, c]] = element_from_parts(beta.0, geom.length(), axial, moment(order));
        }
        h[[r, r]] += Complex64::from(geom.energy(qi));
    }
    h
}

/// Full ascending spectrum of a Hermitian matrix; rejects non-Hermitian
/// input rather than symmetrizing silently.
pub fn exact_eigenvalues(h: &Array2<Complex64>) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(h)?.values)
}

/// Spectrum of the perturbed Hamiltonian over a truncated basis.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub eigenvalues: Vec<f64>,
    pub basis: TruncatedBasis,
    pub beta: Coupling,
}

pub fn solve_spectrum(
    basis: &TruncatedBasis,
    spec: &PotentialSpec,
    beta: Coupling,
    geom: &CylinderGeometry,
) -> Result<SpectralResult> {
    let h = assemble_hamiltonian(basis, spec, beta, geom);
    Ok(SpectralResult {
        eigenvalues: exact_eigenvalues(&h)?,
        basis: basis.clone(),
        beta,
    })
}

/// Brute-force β R_o ∫∫ Ψ_i* z V(θ) Ψ_j dθ dz on a tensor Gauss–Legendre
/// grid, with the full surface measure and no factorization shortcuts.
pub fn quadrature_element(
    qn_i: QuantumNumbers,
    qn_j: QuantumNumbers,
    spec: &PotentialSpec,
    beta: Coupling,
    geom: &CylinderGeometry,
    nodes_theta: usize,
    nodes_z: usize,
) -> Complex64 {
    let theta_rule = gauss_legendre(nodes_theta);
    let z_rule = gauss_legendre(nodes_z);
    let mut total = Complex64::new(0.0, 0.0);
    for (theta, w_theta) in theta_rule.mapped(0.0, std::f64::consts::TAU) {
        let v = spec.evaluate(theta);
        let mut slice = Complex64::new(0.0, 0.0);
        for (z, w_z) in z_rule.mapped(0.0, geom.length()) {
            let psi_i = geom.wavefunction(qn_i, theta, z).expect("node inside [0, L]");
            let psi_j = geom.wavefunction(qn_j, theta, z).expect("node inside [0, L]");
            slice += psi_i.conj() * z * v * psi_j * w_z;
        }
        total += slice * w_theta;
    }
    beta.0 * geom.radius() * total
}

/// Norm mode of the brute-force integral: ∫∫ Ψ_i* Ψ_j R_o dθ dz, which
/// must reproduce δ_ij for the orthonormal basis.
pub fn overlap_element(
    qn_i: QuantumNumbers,
    qn_j: QuantumNumbers,
    geom: &CylinderGeometry,
    nodes_theta: usize,
    nodes_z: usize,
) -> Complex64 {
    let theta_rule = gauss_legendre(nodes_theta);
    let z_rule = gauss_legendre(nodes_z);
    let mut total = Complex64::new(0.0, 0.0);
    for (theta, w_theta) in theta_rule.mapped(0.0, std::f64::consts::TAU) {
        let mut slice = Complex64::new(0.0, 0.0);
        for (z, w_z) in z_rule.mapped(0.0, geom.length()) {
            let psi_i = geom.wavefunction(qn_i, theta, z).expect("node inside [0, L]");
            let psi_j = geom.wavefunction(qn_j, theta, z).expect("node inside [0, L]");
            slice += psi_i.conj() * psi_j * w_z;
        }
        total += slice * w_theta;
    }
    geom.radius() * total
}

/// One coupling strength of the slope check.
#[derive(Debug, Clone)]
pub struct SlopeRow {
    pub beta: f64,
    /// Tracked eigenvalues, ascending within the target group.
    pub eigenvalues: Vec<f64>,
    /// (λ(β) − E⁰)/β per tracked level.
    pub slopes: Vec<f64>,
    /// |slope − predicted| per tracked level.
    pub residuals: Vec<f64>,
}

/// Finite-coupling verification of the first-order predictions for one
/// state or degenerate group.
#[derive(Debug, Clone)]
pub struct SlopeReport {
    pub targets: Vec<QuantumNumbers>,
    pub e0: f64,
    /// First-order corrections per unit coupling, ascending.
    pub predicted: Vec<f64>,
    pub rows: Vec<SlopeRow>,
    /// Squared first-order weight on boundary basis states, per unit
    /// coupling.
    pub boundary_weight: f64,
}

/// Diagonalizes the full Hamiltonian at each coupling in `betas`
/// (positive, conventionally descending), tracks the eigenvalues
/// continuously connected to the target state(s), and compares the
/// finite-β slopes with the first-order predictions.
///
/// Fails with `BasisTooSmall` when the targets' first-order coefficients
/// put more than [`BOUNDARY_WEIGHT_LIMIT`] of squared weight on boundary
/// basis states — the truncation would then bend the slopes.
pub fn perturbation_slope_check(
    targets: &[QuantumNumbers],
    spec: &PotentialSpec,
    geom: &CylinderGeometry,
    betas: &[f64],
    basis: &TruncatedBasis,
) -> Result<SlopeReport> {
    if targets.is_empty() {
        return Err(Error::InvalidArgument("at least one target state"));
    }
    if betas.iter().any(|&b| !(b.is_finite() && b > 0.0)) {
        return Err(Error::InvalidArgument("couplings must be positive"));
    }
    let group = DegeneracyGroup::new(targets.to_vec(), geom, DEFAULT_DEGENERACY_TOL)?;
    let member_indices: Vec<usize> = group
        .members()
        .iter()
        .map(|&qn| {
            basis.index_of(qn).ok_or(Error::BasisTooSmall {
                max_nz: basis.max_nz,
                max_ntheta: basis.max_ntheta,
                weight: 1.0,
                limit: BOUNDARY_WEIGHT_LIMIT,
            })
        })
        .collect::<Result<_>>()?;
    let e0 = group.energy();

    // First-order predictions per unit coupling.
    let predicted = if group.multiplicity() == 1 {
        vec![nondegenerate_correction(
            group.members()[0],
            spec,
            Coupling(1.0),
            geom,
        )]
    } else {
        solve_block(&build_block(&group, spec, Coupling(1.0), geom)?).corrections
    };

    // Truncation audit: first-order mixing weight on the basis edge.
    let boundary_weight = boundary_mixing_weight(&group, spec, geom, basis)?;
    if boundary_weight > BOUNDARY_WEIGHT_LIMIT {
        return Err(Error::BasisTooSmall {
            max_nz: basis.max_nz,
            max_ntheta: basis.max_ntheta,
            weight: boundary_weight,
            limit: BOUNDARY_WEIGHT_LIMIT,
        });
    }

    let g = group.multiplicity();
    let mut rows = Vec::with_capacity(betas.len());
    for &beta in betas {
        let h = assemble_hamiltonian(basis, spec, Coupling(beta), geom);
        let eig = hermitian_eigen(&h)?;
        // Score every eigenvector by its weight on the target subspace.
        let mut scored: Vec<(usize, f64)> = (0..basis.size())
            .map(|k| {
                let weight: f64 = member_indices
                    .iter()
                    .map(|&i| eig.vectors[[i, k]].norm_sqr())
                    .sum();
                (k, weight)
            })
            .collect();
        scored.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("finite weights").then(a.0.cmp(&b.0)));
        let mut tracked: Vec<usize> = scored.iter().take(g).map(|&(k, _)| k).collect();
        tracked.sort();

        // Rayleigh-quotient polish keeps the tracked values accurate at
        // the local scale instead of ‖H‖.
        let eigenvalues: Vec<f64> = tracked
            .iter()
            .map(|&k| rayleigh_quotient(&h, eig.vectors.column(k)))
            .collect();
        let slopes: Vec<f64> = eigenvalues.iter().map(|&l| (l - e0) / beta).collect();
        let residuals: Vec<f64> = slopes
            .iter()
            .zip(&predicted)
            .map(|(s, p)| (s - p).abs())
            .collect();
        rows.push(SlopeRow {
            beta,
            eigenvalues,
            slopes,
            residuals,
        });
    }

    Ok(SlopeReport {
        targets: group.members().to_vec(),
        e0,
        predicted,
        rows,
    boundary_weight,
    })
}

/// Squared first-order coefficient weight on boundary states, per unit
/// coupling, summed over the group members. Out-of-group states that are
/// both coupled and degenerate with the group make first order ill-defined
/// and are reported as errors.
fn boundary_mixing_weight(
    group: &DegeneracyGroup,
    spec: &PotentialSpec,
    geom: &CylinderGeometry,
    basis: &TruncatedBasis,
) -> Result<f64> {
    let floor = 1e-12 * geom.length() / (4.0 * std::f64::consts::PI) * spec.moment_bound();
    let mut weight = 0.0;
    for &target in group.members() {
        let e_target = geom.energy(target);
        for &m in basis.states() {
            if group.members().contains(&m) {
                continue;
            }
            let element =
                crate::perturbation::matrix_element(m, target, spec, Coupling(1.0), geom);
            if element.norm() <= floor {
                continue;
            }
            let gap = e_target - geom.energy(m);
            if gap.abs() <= DEGENERATE_GAP_TOL * e_target.abs().max(geom.energy(m).abs()) {
                return Err(Error::DegenerateDenominator {
                    n_z: target.n_z(),
                    n_theta: target.n_theta(),
                    other_n_z: m.n_z(),
                    other_n_theta: m.n_theta(),
                });
            }
            if basis.is_boundary(m) {
                weight += (element / gap).norm_sqr();
            }
        }
    }
    Ok(weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perturbation::matrix_element;
    use crate::states::spectrum;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn qn(n_z: u32, n_theta: u32) -> QuantumNumbers {
        QuantumNumbers::new(n_z, n_theta).unwrap()
    }

    #[test]
    fn basis_enumeration_is_lexicographic() {
        let basis = TruncatedBasis::new(2, 3).unwrap();
        let expected = vec![
            qn(1, 1),
            qn(1, 2),
            qn(1, 3),
            qn(2, 1),
            qn(2, 2),
            qn(2, 3),
        ];
        assert_eq!(basis.states(), expected.as_slice());
        assert_eq!(basis.index_of(qn(2, 2)), Some(4));
        assert_eq!(basis.index_of(qn(3, 1)), None);
        assert!(basis.is_boundary(qn(2, 1)));
        assert!(basis.is_boundary(qn(1, 3)));
        assert!(!basis.is_boundary(qn(1, 1)));
    }

    #[test]
    fn zero_coupling_hamiltonian_is_diagonal_energies() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let basis = TruncatedBasis::new(3, 3).unwrap();
        let spec = PotentialSpec::cosine(1.0);
        let h = assemble_hamiltonian(&basis, &spec, Coupling(0.0), &geom);
        for (r, &qi) in basis.states().iter().enumerate() {
            for c in 0..basis.size() {
                if r == c {
                    assert_eq!(h[[r, c]], Complex64::from(geom.energy(qi)));
                } else {
                    assert_eq!(h[[r, c]].norm(), 0.0);
                }
            }
        }
        // Eigenvalues equal the sorted unperturbed spectrum exactly.
        let eigen = exact_eigenvalues(&h).unwrap();
        let levels = spectrum(&geom, 3, 3);
        let expected: Vec<f64> = levels.iter().map(|l| l.energy).collect();
        assert_eq!(eigen, expected);
    }

    #[test]
    fn constant_profile_two_state_off_diagonal() {
        // Basis {(1,1),(2,1)}: off-diagonal (β/πL)·z_overlap(1,2)·2πV_o.
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let basis = TruncatedBasis::new(2, 1).unwrap();
        let v_o = 1.3;
        let beta = 0.7;
        let h = assemble_hamiltonian(&basis, &PotentialSpec::constant(v_o), Coupling(beta), &geom);
        let expected = -16.0 * beta * v_o / (9.0 * PI * PI);
        assert_abs_diff_eq!(h[[0, 1]].re, expected, epsilon = 1e-13);
        assert_abs_diff_eq!(h[[0, 1]].im, 0.0, epsilon = 1e-15);
        // Diagonal carries E0 plus the uniform βLV_o/2 shift.
        let diag = geom.energy(qn(1, 1)) + beta * v_o / 2.0;
        assert_abs_diff_eq!(h[[0, 0]].re, diag, epsilon = 1e-12);
    }

    #[test]
    fn restriction_to_group_equals_secular_block() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let basis = TruncatedBasis::new(2, 2).unwrap();
        let spec = PotentialSpec::cosine(2.0);
        let beta = Coupling(0.4);
        let h = assemble_hamiltonian(&basis, &spec, beta, &geom);
        let group = DegeneracyGroup::new(
            vec![qn(1, 2), qn(2, 1)],
            &geom,
            DEFAULT_DEGENERACY_TOL,
        )
        .unwrap();
        let block = build_block(&group, &spec, beta, &geom).unwrap();
        let idx = [
            basis.index_of(qn(1, 2)).unwrap(),
            basis.index_of(qn(2, 1)).unwrap(),
        ];
        for (br, &hr) in idx.iter().enumerate() {
            for (bc, &hc) in idx.iter().enumerate() {
                let mut expected = block.matrix()[[br, bc]];
                if br == bc {
                    expected += Complex64::from(group.energy());
                }
                assert_eq!(h[[hr, hc]], expected);
            }
        }
    }

    #[test]
    fn quadrature_element_matches_closed_composition() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let spec = PotentialSpec::cosine(1.0);
        let beta = Coupling(1.0);
        let closed = matrix_element(qn(1, 2), qn(2, 1), &spec, beta, &geom);
        let brute = quadrature_element(qn(1, 2), qn(2, 1), &spec, beta, &geom, 256, 256);
        assert!((closed - brute).norm() <= 1e-10 * closed.norm());
    }

    #[test]
    fn quadrature_element_zero_coupling() {
        let geom = CylinderGeometry::new(0.9, 1.0).unwrap();
        let v = quadrature_element(
            qn(1, 1),
            qn(2, 2),
            &PotentialSpec::cosine(1.0),
            Coupling(0.0),
            &geom,
            64,
            64,
        );
        assert_eq!(v.norm(), 0.0);
    }

    #[test]
    fn overlap_element_reproduces_kronecker_delta() {
        let geom = CylinderGeometry::new(0.8, 1.4).unwrap();
        let pairs = [
            (qn(1, 1), qn(1, 1)),
            (qn(2, 3), qn(2, 3)),
            (qn(1, 1), qn(2, 1)),
            (qn(1, 2), qn(1, 3)),
            (qn(2, 2), qn(3, 3)),
        ];
        for (a, b) in pairs {
            let v = overlap_element(a, b, &geom, 96, 96);
            let expected = if a == b { 1.0 } else { 0.0 };
            assert!((v - expected).norm() <= 1e-10, "({a}, {b}) gave {v}");
        }
    }

    #[test]
    fn trace_identity_for_constant_profile() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let basis = TruncatedBasis::new(5, 5).unwrap();
        let spec = PotentialSpec::constant(2.0);
        let beta = 1e-2;
        let h0 = assemble_hamiltonian(&basis, &spec, Coupling(0.0), &geom);
        let h = assemble_hamiltonian(&basis, &spec, Coupling(beta), &geom);
        let tr0: f64 = (0..basis.size()).map(|i| h0[[i, i]].re).sum();
        let tr: f64 = (0..basis.size()).map(|i| h[[i, i]].re).sum();
        // Each diagonal element shifts by βL·I_0/(4π) = βLV_o/2.
        let expected = basis.size() as f64 * beta * 1.0 * 2.0 / 2.0;
        assert_abs_diff_eq!(tr - tr0, expected, epsilon = 1e-10 * expected.abs());
    }

    #[test]
    fn slope_check_tracks_the_split_pair() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let basis = TruncatedBasis::new(10, 10).unwrap();
        let report = perturbation_slope_check(
            &[qn(1, 2), qn(2, 1)],
            &PotentialSpec::cosine(1.0),
            &geom,
            &[1e-2, 1e-3],
            &basis,
        )
        .unwrap();
        let split = 8.0 / (9.0 * PI * PI);
        assert_abs_diff_eq!(report.predicted[0], -split, epsilon = 1e-12);
        assert_abs_diff_eq!(report.predicted[1], split, epsilon = 1e-12);
        for row in &report.rows {
            for residual in &row.residuals {
                assert!(*residual <= 5.0 * row.beta, "residual {residual} at β={}", row.beta);
            }
        }
        // Residual shrinks linearly with β.
        assert!(report.rows[1].residuals[0] < report.rows[0].residuals[0]);
    }

    #[test]
    fn slope_check_flags_tiny_basis() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let basis = TruncatedBasis::new(2, 2).unwrap();
        let err = perturbation_slope_check(
            &[qn(1, 2), qn(2, 1)],
            &PotentialSpec::cosine(1.0),
            &geom,
            &[1e-3],
            &basis,
        )
        .unwrap_err();
        assert!(matches!(err, Error::BasisTooSmall { .. }));
    }

    #[test]
    fn slope_check_rejects_nonpositive_betas() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let basis = TruncatedBasis::new(4, 4).unwrap();
        assert!(perturbation_slope_check(
            &[qn(1, 1)],
            &PotentialSpec::cosine(1.0),
            &geom,
            &[0.0],
            &basis,
        )
        .is_err());
    }

    #[test]
    fn basis_growth_shrinks_level_shifts() {
        // Enlarging the basis moves a tracked low level by less and less.
        // The coupling is kept large enough that the 8×8 → 12×12 step is
        // visible above rounding.
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let spec = PotentialSpec::cosine(1.0);
        let beta = Coupling(0.5);
        let tracked = |max: u32| -> f64 {
            let basis = TruncatedBasis::new(max, max).unwrap();
            let h = assemble_hamiltonian(&basis, &spec, beta, &geom);
            let eig = hermitian_eigen(&h).unwrap();
            let targets = [
                basis.index_of(qn(1, 2)).unwrap(),
                basis.index_of(qn(2, 1)).unwrap(),
            ];
            let (best, _) = (0..basis.size())
                .map(|k| {
                    let w: f64 = targets.iter().map(|&i| eig.vectors[[i, k]].norm_sqr()).sum();
                    (k, w)
                })
                .fold((0, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
            rayleigh_quotient(&h, eig.vectors.column(best))
        };
        let l8 = tracked(8);
        let l12 = tracked(12);
        let l16 = tracked(16);
        let d1 = (l12 - l8).abs();
        let d2 = (l16 - l12).abs();
        assert!(d2 <= d1 + 1e-13, "shifts {d1:e} then {d2:e}");
        assert!(d1 > 1e-13, "8×8 truncation should be visible: {d1:e}");
    }
}
