//! First-order perturbation theory for the cylinder-surface states under
//! the Stark-type potential Ĥ' = β z V(θ).
//!
//! Matrix elements factorize over the separable eigenbasis:
//!
//! ```text
//! H_ij = (β / πL) · ∫_0^L z sin(n_zi πz/L) sin(n_zj πz/L) dz
//!                 · ∫_0^{2π} V(θ) e^{i(n_θj − n_θi)θ} dθ
//! ```
//!
//! The 1/(πR_oL) normalization of the two wavefunctions cancels the R_o of
//! the surface measure exactly, so no radius appears. The z-overlap has a
//! closed form that vanishes unless n_zi = n_zj or n_zi + n_zj is odd —
//! the generalized splitting rule — and the angular factor selects which
//! Δn_θ transitions the profile couples.
//!
//! Non-degenerate levels shift by the diagonal element βL·I_0/(4π);
//! degenerate groups get the secular treatment: the group's Hermitian
//! block is diagonalized and its eigenvalues are the first-order
//! corrections.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, max_abs};
use crate::potential::{
    admissibility, angular_moment, PotentialSpec, DEFAULT_ADMISSIBILITY_TOL, DEFAULT_ANGULAR_NODES,
};
use crate::report::{TableRow, TablesReport};
use crate::states::{
    degeneracy_groups, CylinderGeometry, DegeneracyGroup, EnergyLevel, QuantumNumbers,
    DEFAULT_DEGENERACY_TOL,
};

/// The coupling constant β in Ĥ' = β z V(θ); any sign, finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling(pub f64);

/// Relative energy-gap tolerance below which a coupled state counts as
/// degenerate and the non-degenerate formulas refuse to proceed.
pub const DEGENERATE_GAP_TOL: f64 = 1e-9;

/// Hermiticity gate for assembled blocks, relative to the largest entry.
const BLOCK_HERMITICITY_TOL: f64 = 1e-10;

/// ∫_0^L z sin(n_iπz/L) sin(n_jπz/L) dz, in closed form.
///
/// Equal indices give L²/4. Distinct indices of equal parity give exactly
/// zero; odd-parity pairs give (L²/π²)(1/(n_i+n_j)² − 1/(n_i−n_j)²). Note
/// the selection rule is "n_i + n_j odd", not |Δn| = 1: the pair (1,4)
/// couples through Δn_z = 3.
pub fn z_overlap(n_i: u32, n_j: u32, length: f64) -> f64 {
    if n_i == n_j {
        return length * length / 4.0;
    }
    if (n_i + n_j).is_multiple_of(2) {
        return 0.0;
    }
    let p = n_i as f64 - n_j as f64;
    let q = (n_i + n_j) as f64;
    (length * length / (PI * PI)) * (1.0 / (q * q) - 1.0 / (p * p))
}

/// TRUE iff two distinct axial quantum numbers are coupled by the
/// perturbation, i.e. iff n_zi + n_zj is odd (Δn_z odd).
pub fn splitting_rule(n_zi: u32, n_zj: u32) -> bool {
    (n_zi + n_zj) % 2 == 1
}

/// The one place the element formula lives, so batch assembly and
/// per-element calls agree bitwise.
pub(crate) fn element_from_parts(
    beta: f64,
    length: f64,
    axial: f64,
    moment: Complex64,
) -> Complex64 {
    (beta / (PI * length) * axial) * moment
}

/// H_ij = (β/πL) · z_overlap(n_zi, n_zj) · moment(n_θj − n_θi).
///
/// The 1/(πR_oL) normalization cancels the measure's R_o exactly, so the
/// radius does not appear.
pub fn matrix_element(
    qn_i: QuantumNumbers,
    qn_j: QuantumNumbers,
    spec: &PotentialSpec,
    beta: Coupling,
    geom: &CylinderGeometry,
) -> Complex64 {
    let axial = z_overlap(qn_i.n_z(), qn_j.n_z(), geom.length());
    let order = qn_j.n_theta() as i32 - qn_i.n_theta() as i32;
    let moment = angular_moment(spec, order, DEFAULT_ANGULAR_NODES);
    element_from_parts(beta.0, geom.length(), axial, moment)
}

/// First-order shift of a non-degenerate level: βL·I_0/(4π).
///
/// Independent of the quantum numbers — every non-degenerate level moves
/// by the same amount, which is why the splitting diagnostic needs the
/// degenerate case. The caller is responsible for `qn` actually being
/// non-degenerate at this geometry.
pub fn nondegenerate_correction(
    qn: QuantumNumbers,
    spec: &PotentialSpec,
    beta: Coupling,
    geom: &CylinderGeometry,
) -> f64 {
    let _ = qn;
    let i0 = angular_moment(spec, 0, DEFAULT_ANGULAR_NODES);
    beta.0 * geom.length() * i0.re / (4.0 * PI)
}

/// A degenerate group together with its first-order secular matrix.
#[derive(Debug, Clone)]
pub struct PerturbationBlock {
    group: DegeneracyGroup,
    matrix: Array2<Complex64>,
}

impl PerturbationBlock {
    pub fn group(&self) -> &DegeneracyGroup {
        &self.group
    }

    /// Row/column order of the matrix.
    pub fn basis_order(&self) -> &[QuantumNumbers] {
        self.group.members()
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }
}

/// Assembles the k×k secular matrix over the group's member order.
///
/// All k² entries are computed independently and then gated on Hermitian
/// symmetry; a violation beyond 1e-10 relative cannot come from a real
/// profile and signals an internal numerical fault.
pub fn build_block(
    group: &DegeneracyGroup,
    spec: &PotentialSpec,
    beta: Coupling,
    geom: &CylinderGeometry,
) -> Result<PerturbationBlock> {
    let members = group.members();
    let k = members.len();
    let mut matrix = Array2::<Complex64>::zeros((k, k));
    for (r, &qi) in members.iter().enumerate() {
        for (c, &qj) in members.iter().enumerate() {
            matrix[[r, c]] = matrix_element(qi, qj, spec, beta, geom);
        }
    }
    let scale = max_abs(&matrix);
    if scale > 0.0 {
        let violation = crate::linalg::hermiticity_violation(&matrix);
        if violation > BLOCK_HERMITICITY_TOL * scale {
            return Err(Error::NotHermitian {
                max_violation: violation,
                tol: BLOCK_HERMITICITY_TOL * scale,
            });
        }
    }
    Ok(PerturbationBlock {
        group: group.clone(),
        matrix,
    })
}

/// First-order corrections (ascending) and their mixing coefficients;
/// column j of `mixing` is the normalized eigenvector belonging to
/// `corrections[j]`, phased with its largest entry real positive.
#[derive(Debug, Clone)]
pub struct CorrectionResult {
    pub corrections: Vec<f64>,
    pub mixing: Array2<Complex64>,
}

/// Solves the secular problem of a block. Hermitian matrices always
/// diagonalize, so this cannot fail on a block that passed `build_block`.
pub fn solve_block(block: &PerturbationBlock) -> CorrectionResult {
    let eig = hermitian_eigen(block.matrix()).expect("secular block is Hermitian by construction");
    CorrectionResult {
        corrections: eig.values,
        mixing: eig.vectors,
    }
}

/// First-order wavefunction mixing coefficients of a non-degenerate state.
#[derive(Debug, Clone)]
pub struct StateCorrection {
    pub target: QuantumNumbers,
    /// c_m = H_{m,target} / (E_target − E_m), for every coupled m ≠ target
    /// inside the enumeration rectangle. States the selection rules
    /// decouple are omitted entirely.
    pub coefficients: BTreeMap<QuantumNumbers, Complex64>,
    /// The (max_nz, max_ntheta) enumeration bound that was scanned.
    pub cutoff: (u32, u32),
}

/// Enumerates c_m over the rectangle [1, max_nz]×[1, max_ntheta].
///
/// Errors with `DegenerateDenominator` if any coupled state is degenerate
/// with the target within [`DEGENERATE_GAP_TOL`]; that state belongs in a
/// secular block, not a perturbative sum.
pub fn state_correction(
    qn: QuantumNumbers,
    spec: &PotentialSpec,
    beta: Coupling,
    geom: &CylinderGeometry,
    max_nz: u32,
    max_ntheta: u32,
) -> Result<StateCorrection> {
    let e_target = geom.energy(qn);
    // Anything below this is an exact zero of the selection rules seen
    // through quadrature noise.
    let element_floor =
        1e-12 * beta.0.abs() * geom.length() / (4.0 * PI) * spec.moment_bound();
    let mut coefficients = BTreeMap::new();
    for n_z in 1..=max_nz {
        for n_theta in 1..=max_ntheta {
            let m = QuantumNumbers::new(n_z, n_theta).expect("loop bounds start at 1");
            if m == qn {
                continue;
            }
            let element = matrix_element(m, qn, spec, beta, geom);
            if element.norm() <= element_floor {
                continue;
            }
            let e_m = geom.energy(m);
            let gap = e_target - e_m;
            if gap.abs() <= DEGENERATE_GAP_TOL * e_target.abs().max(e_m.abs()) {
                return Err(Error::DegenerateDenominator {
                    n_z: qn.n_z(),
                    n_theta: qn.n_theta(),
                    other_n_z: m.n_z(),
                    other_n_theta: m.n_theta(),
                });
            }
            coefficients.insert(m, element / gap);
        }
    }
    Ok(StateCorrection {
        target: qn,
        coefficients,
        cutoff: (max_nz, max_ntheta),
    })
}

/// The eight low-excitation states whose blocks and corrections the
/// splitting analysis tabulates.
pub const LOW_EXCITATION_STATES: [(u32, u32); 8] = [
    (1, 1),
    (1, 2),
    (2, 1),
    (2, 2),
    (1, 3),
    (3, 1),
    (2, 3),
    (3, 2),
];

/// Degenerate-aspect tabulation of blocks, corrections, and shifted
/// levels for the low-excitation states, the machine-checkable analogue
/// of the splitting tables and level diagram.
///
/// The geometry is fixed to R_o = L/π internally; the profile must be
/// admissible, otherwise the ± branch of the corrections is not a pair of
/// reals and the tabulation refuses rather than guessing.
pub fn paper_tables(
    spec: &PotentialSpec,
    beta: Coupling,
    length: f64,
) -> Result<TablesReport> {
    let geom = CylinderGeometry::degenerate(length)?;
    let report = admissibility(spec, DEFAULT_ADMISSIBILITY_TOL, DEFAULT_ADMISSIBILITY_TOL);
    if !report.admissible {
        return Err(Error::Inadmissible(report));
    }

    let mut levels: Vec<EnergyLevel> = LOW_EXCITATION_STATES
        .iter()
        .map(|&(n_z, n_theta)| {
            let qn = QuantumNumbers::new(n_z, n_theta).expect("static table");
            EnergyLevel {
                qn,
                energy: geom.energy(qn),
            }
        })
        .collect();
    levels.sort_by(|a, b| {
        a.energy
            .partial_cmp(&b.energy)
            .expect("finite energies")
            .then(a.qn.cmp(&b.qn))
    });

    let mut rows = Vec::new();
    for group in degeneracy_groups(&levels, DEFAULT_DEGENERACY_TOL) {
        let block = build_block(&group, spec, beta, &geom)?;
        let solved = solve_block(&block);
        let label = group
            .members()
            .iter()
            .map(|qn| qn.to_string())
            .collect::<Vec<_>>()
            .join("/");
        rows.push(TableRow {
            label,
            members: group.members().to_vec(),
            degenerate: group.multiplicity() > 1,
            e0: group.energy(),
            matrix: block.matrix().clone(),
            corrections: solved.corrections,
        });
    }

    Ok(TablesReport {
        length,
        beta: beta.0,
        potential: spec.to_string(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::gauss_legendre;
    use approx::assert_abs_diff_eq;

    fn qn(n_z: u32, n_theta: u32) -> QuantumNumbers {
        QuantumNumbers::new(n_z, n_theta).unwrap()
    }

    fn z_overlap_quadrature(n_i: u32, n_j: u32, length: f64, nodes: usize) -> f64 {
        gauss_legendre(nodes).integrate(0.0, length, |z| {
            z * (n_i as f64 * PI * z / length).sin() * (n_j as f64 * PI * z / length).sin()
        })
    }

    #[test]
    fn z_overlap_equal_indices() {
        assert_abs_diff_eq!(z_overlap(1, 1, 2.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(z_overlap(7, 7, 1.0), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn z_overlap_neighbor_pair_matches_quadrature() {
        let expected = -8.0 / (9.0 * PI * PI);
        assert_abs_diff_eq!(z_overlap(1, 2, 1.0), expected, epsilon = 1e-15);
        // The stated independent oracle: dense Gauss-Legendre quadrature.
        let quad = z_overlap_quadrature(1, 2, 1.0, 10_000);
        assert_abs_diff_eq!(quad, expected, epsilon = 1e-12);
    }

    #[test]
    fn z_overlap_even_gap_vanishes() {
        assert_eq!(z_overlap(1, 3, 1.0), 0.0);
        assert_eq!(z_overlap(2, 6, 3.0), 0.0);
        assert_abs_diff_eq!(z_overlap_quadrature(1, 3, 1.0, 2000), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn z_overlap_delta_three_is_nonzero() {
        // (1,4) couples: -16/(225π²) ≈ -7.2054e-3, confirmed by quadrature.
        let expected = -16.0 / (225.0 * PI * PI);
        assert_abs_diff_eq!(z_overlap(1, 4, 1.0), expected, epsilon = 1e-15);
        let quad = z_overlap_quadrature(1, 4, 1.0, 2000);
        assert_abs_diff_eq!(quad, expected, epsilon = 1e-12);
    }

    #[test]
    fn splitting_rule_examples() {
        assert!(splitting_rule(1, 2));
        assert!(!splitting_rule(1, 3));
        assert!(splitting_rule(1, 4)); // odd Δn_z beyond ±1 still couples
        assert!(!splitting_rule(2, 2));
    }

    #[test]
    fn splitting_rule_agrees_with_overlap_for_distinct_indices() {
        for n_i in 1..=12 {
            for n_j in 1..=12 {
                if n_i == n_j {
                    continue;
                }
                assert_eq!(splitting_rule(n_i, n_j), z_overlap(n_i, n_j, 1.0) != 0.0);
            }
        }
    }

    #[test]
    fn matrix_element_swapped_pair_under_cosine() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let v_o = 2.5;
        let element = matrix_element(
            qn(1, 2),
            qn(2, 1),
            &PotentialSpec::cosine(v_o),
            Coupling(1.0),
            &geom,
        );
        let expected = -8.0 * v_o / (9.0 * PI * PI);
        assert_abs_diff_eq!(element.re, expected, epsilon = 1e-12 * expected.abs());
        assert_abs_diff_eq!(element.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn matrix_element_diagonal_vanishes_for_cosine() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let element = matrix_element(
            qn(1, 2),
            qn(1, 2),
            &PotentialSpec::cosine(1.0),
            Coupling(1.0),
            &geom,
        );
        assert!(element.norm() < 1e-14);
    }

    #[test]
    fn matrix_element_even_gap_is_exactly_zero() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let spec = crate::potential::parse_potential("1.0 + 3.0*sin(2.5*theta)").unwrap();
        let element = matrix_element(qn(1, 3), qn(3, 1), &spec, Coupling(0.7), &geom);
        assert_eq!(element.norm(), 0.0);
    }

    #[test]
    fn nondegenerate_shift_for_constant_profile() {
        // βLV_o/2 from ⟨z⟩ = L/2.
        let geom = CylinderGeometry::new(1.0, 2.0).unwrap();
        let shift = nondegenerate_correction(
            qn(1, 1),
            &PotentialSpec::constant(1.5),
            Coupling(0.3),
            &geom,
        );
        assert_abs_diff_eq!(shift, 0.45, epsilon = 1e-12);
        // Independent of the quantum numbers.
        let other = nondegenerate_correction(
            qn(3, 4),
            &PotentialSpec::constant(1.5),
            Coupling(0.3),
            &geom,
        );
        assert_eq!(shift, other);
        // Cosine has I_0 = 0, hence no shift.
        let none = nondegenerate_correction(
            qn(1, 1),
            &PotentialSpec::cosine(4.0),
            Coupling(0.3),
            &geom,
        );
        assert_abs_diff_eq!(none, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn block_for_first_swapped_pair() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let group = DegeneracyGroup::new(
            vec![qn(1, 2), qn(2, 1)],
            &geom,
            DEFAULT_DEGENERACY_TOL,
        )
        .unwrap();
        let block = build_block(&group, &PotentialSpec::cosine(1.0), Coupling(1.0), &geom)
            .unwrap();
        let h = block.matrix();
        let off = -8.0 / (9.0 * PI * PI);
        assert!(h[[0, 0]].norm() < 1e-14);
        assert!(h[[1, 1]].norm() < 1e-14);
        assert_abs_diff_eq!(h[[0, 1]].re, off, epsilon = 1e-13);
        assert_abs_diff_eq!(h[[1, 0]].re, off, epsilon = 1e-13);
    }

    #[test]
    fn block_for_second_swapped_pair() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let group = DegeneracyGroup::new(
            vec![qn(2, 3), qn(3, 2)],
            &geom,
            DEFAULT_DEGENERACY_TOL,
        )
        .unwrap();
        let block = build_block(&group, &PotentialSpec::cosine(1.0), Coupling(1.0), &geom)
            .unwrap();
        let off = -24.0 / (25.0 * PI * PI);
        assert_abs_diff_eq!(block.matrix()[[0, 1]].re, off, epsilon = 1e-13);
    }

    #[test]
    fn singleton_block_equals_nondegenerate_correction() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let spec = PotentialSpec::constant(2.0);
        let group =
            DegeneracyGroup::new(vec![qn(1, 1)], &geom, DEFAULT_DEGENERACY_TOL).unwrap();
        let block = build_block(&group, &spec, Coupling(0.5), &geom).unwrap();
        let solved = solve_block(&block);
        assert_eq!(solved.corrections.len(), 1);
        let direct = nondegenerate_correction(qn(1, 1), &spec, Coupling(0.5), &geom);
        assert_abs_diff_eq!(solved.corrections[0], direct, epsilon = 1e-14);
    }

    #[test]
    fn solve_block_splits_symmetrically() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let group = DegeneracyGroup::new(
            vec![qn(1, 2), qn(2, 1)],
            &geom,
            DEFAULT_DEGENERACY_TOL,
        )
        .unwrap();
        let block = build_block(&group, &PotentialSpec::cosine(1.0), Coupling(1.0), &geom)
            .unwrap();
        let solved = solve_block(&block);
        let split = 8.0 / (9.0 * PI * PI);
        assert_abs_diff_eq!(solved.corrections[0], -split, epsilon = 1e-13);
        assert_abs_diff_eq!(solved.corrections[1], split, epsilon = 1e-13);
        // Equal-weight mixing, |c| = 1/√2 for both members.
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        for col in 0..2 {
            for row in 0..2 {
                assert_abs_diff_eq!(
                    solved.mixing[[row, col]].norm(),
                    inv_sqrt2,
                    epsilon = 1e-12
                );
            }
        }
        // Trace conservation: the split is centered on the diagonal.
        let trace: f64 = (0..2).map(|i| block.matrix()[[i, i]].re).sum();
        let sum: f64 = solved.corrections.iter().sum();
        assert_abs_diff_eq!(sum, trace, epsilon = 1e-13);
    }

    #[test]
    fn state_correction_selection_rules_for_cosine() {
        let geom = CylinderGeometry::new(1.0, 1.0).unwrap();
        let result = state_correction(
            qn(1, 1),
            &PotentialSpec::cosine(1.0),
            Coupling(1.0),
            &geom,
            6,
            4,
        )
        .unwrap();
        assert!(!result.coefficients.is_empty());
        for m in result.coefficients.keys() {
            // z couples n_z = 1 to itself (L²/4 diagonal overlap) and to
            // every even n_z; cos θ forces n_θ = 2.
            assert!(m.n_z() == 1 || m.n_z() % 2 == 0, "{m} violates the z-rule");
            assert_eq!(m.n_theta(), 2, "cos θ couples only Δn_θ = ±1");
        }
        assert!(result.coefficients.contains_key(&qn(1, 2)));
        // Spot values: c for m = (1,2) (z-diagonal route) and m = (2,2).
        let e11 = geom.energy(qn(1, 1));
        let c12 = result.coefficients[&qn(1, 2)];
        let expected12 = (PI / (PI * 1.0) * 0.25) / (e11 - geom.energy(qn(1, 2)));
        assert_abs_diff_eq!(c12.re, expected12, epsilon = 1e-12);
        let e22 = geom.energy(qn(2, 2));
        let expected = (-8.0 / (9.0 * PI * PI)) / (e11 - e22);
        let c = result.coefficients[&qn(2, 2)];
        assert_abs_diff_eq!(c.re, expected, epsilon = 1e-12);
        assert_abs_diff_eq!(c.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn state_correction_selection_rules_for_constant() {
        let geom = CylinderGeometry::new(1.0, 1.0).unwrap();
        let result = state_correction(
            qn(1, 1),
            &PotentialSpec::constant(1.0),
            Coupling(1.0),
            &geom,
            6,
            4,
        )
        .unwrap();
        for m in result.coefficients.keys() {
            assert_eq!(m.n_z() % 2, 0);
            assert_eq!(m.n_theta(), 1, "constant profile keeps Δn_θ = 0");
        }
    }

    #[test]
    fn state_correction_empty_at_zero_coupling() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let result = state_correction(
            qn(2, 2),
            &PotentialSpec::cosine(1.0),
            Coupling(0.0),
            &geom,
            8,
            8,
        )
        .unwrap();
        assert!(result.coefficients.is_empty());
    }

    #[test]
    fn state_correction_rejects_coupled_degenerate_partner() {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let err = state_correction(
            qn(1, 2),
            &PotentialSpec::cosine(1.0),
            Coupling(1.0),
            &geom,
            6,
            6,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegenerateDenominator { .. }));
    }

    #[test]
    fn paper_tables_rows_and_values() {
        let spec = PotentialSpec::cosine(1.0);
        let tables = paper_tables(&spec, Coupling(0.1), 1.0).unwrap();
        assert_eq!(tables.rows.len(), 5);
        let labels: Vec<&str> = tables.rows.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(
            labels,
            vec![
                "(1,1)",
                "(1,2)/(2,1)",
                "(2,2)",
                "(1,3)/(3,1)",
                "(2,3)/(3,2)"
            ]
        );
        assert!(!tables.rows[0].degenerate);
        assert!(tables.rows[1].degenerate);

        let split = 0.1 * 8.0 / (9.0 * PI * PI);
        assert_abs_diff_eq!(tables.rows[1].corrections[0], -split, epsilon = 1e-13);
        assert_abs_diff_eq!(tables.rows[1].corrections[1], split, epsilon = 1e-13);

        // The (1,3)/(3,1) block decouples entirely for I_0 = 0 profiles.
        for correction in &tables.rows[3].corrections {
            assert_abs_diff_eq!(*correction, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn paper_tables_zero_coupling_still_emits() {
        let tables = paper_tables(&PotentialSpec::cosine(1.0), Coupling(0.0), 1.0).unwrap();
        for row in &tables.rows {
            for correction in &row.corrections {
                assert_eq!(*correction, 0.0);
            }
        }
    }

    #[test]
    fn paper_tables_refuses_inadmissible_profile() {
        let err = paper_tables(&PotentialSpec::sine(1.0, 1.0), Coupling(0.1), 1.0).unwrap_err();
        assert!(matches!(err, Error::Inadmissible(_)));
    }
}
