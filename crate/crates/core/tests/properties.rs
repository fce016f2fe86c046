//! Property tests for the structural invariants: symmetry, linearity,
//! partition laws, and the parser round-trip.

use proptest::prelude::*;
use std::f64::consts::PI;

use qpsc::perturbation::{matrix_element, solve_block, build_block, z_overlap, Coupling};
use qpsc::potential::{angular_moment, parse_potential, PotentialSpec, PotentialTerm};
use qpsc::quad::gauss_legendre;
use qpsc::states::{
    degeneracy_groups, spectrum, CylinderGeometry, DegeneracyGroup, QuantumNumbers,
    DEFAULT_DEGENERACY_TOL,
};

fn qn(n_z: u32, n_theta: u32) -> QuantumNumbers {
    QuantumNumbers::new(n_z, n_theta).unwrap()
}

fn term_strategy() -> impl Strategy<Value = PotentialTerm> {
    let amplitude = prop_oneof![(-10.0..10.0f64), (-0.01..0.01f64)];
    prop_oneof![
        amplitude
            .clone()
            .prop_map(|amplitude| PotentialTerm::Constant { amplitude }),
        amplitude
            .clone()
            .prop_map(|amplitude| PotentialTerm::Cosine { amplitude }),
        (amplitude.clone(), 0.05..4.0f64)
            .prop_map(|(amplitude, gamma)| PotentialTerm::SineGamma { amplitude, gamma }),
        (amplitude, 0u32..5)
            .prop_map(|(amplitude, exponent)| PotentialTerm::Monomial {
                amplitude,
                exponent
            }),
    ]
}

fn spec_strategy() -> impl Strategy<Value = PotentialSpec> {
    proptest::collection::vec(term_strategy(), 1..4)
        .prop_map(|terms| PotentialSpec::new(terms).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parser_round_trips_canonical_form(spec in spec_strategy()) {
        let reparsed = parse_potential(&spec.to_string()).unwrap();
        prop_assert_eq!(spec, reparsed);
    }

    #[test]
    fn moments_have_conjugate_symmetry(spec in spec_strategy(), m in -8i32..=8) {
        let plus = angular_moment(&spec, m, 512);
        let minus = angular_moment(&spec, -m, 512);
        let scale = spec.moment_bound().max(1.0);
        prop_assert!((minus - plus.conj()).norm() <= 1e-12 * scale);
    }

    #[test]
    fn moments_are_linear_in_terms(a in spec_strategy(), b in spec_strategy(), m in -4i32..=4) {
        let mut terms = a.terms().to_vec();
        terms.extend_from_slice(b.terms());
        let combined = PotentialSpec::new(terms).unwrap();
        let lhs = angular_moment(&combined, m, 512);
        let rhs = angular_moment(&a, m, 512) + angular_moment(&b, m, 512);
        let scale = combined.moment_bound().max(1.0);
        prop_assert!((lhs - rhs).norm() <= 1e-13 * scale);
    }

    #[test]
    fn evaluate_is_linear_in_terms(a in spec_strategy(), b in spec_strategy(), theta in 0.0..std::f64::consts::TAU) {
        let mut terms = a.terms().to_vec();
        terms.extend_from_slice(b.terms());
        let combined = PotentialSpec::new(terms).unwrap();
        let direct = combined.evaluate(theta);
        let split = a.evaluate(theta) + b.evaluate(theta);
        prop_assert!((direct - split).abs() <= 1e-12 * direct.abs().max(1.0));
    }

    #[test]
    fn matrix_elements_are_hermitian(
        spec in spec_strategy(),
        nzi in 1u32..6, nti in 1u32..6,
        nzj in 1u32..6, ntj in 1u32..6,
        beta in 0.01..3.0f64,
    ) {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let forward = matrix_element(qn(nzi, nti), qn(nzj, ntj), &spec, Coupling(beta), &geom);
        let backward = matrix_element(qn(nzj, ntj), qn(nzi, nti), &spec, Coupling(beta), &geom);
        let scale = forward.norm().max(backward.norm()).max(1e-30);
        prop_assert!((forward - backward.conj()).norm() <= 1e-12 * scale);
    }

    #[test]
    fn matrix_elements_scale_linearly_in_beta(
        spec in spec_strategy(),
        beta in 0.01..4.0f64,
    ) {
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let unit = matrix_element(qn(1, 2), qn(2, 1), &spec, Coupling(1.0), &geom);
        let scaled = matrix_element(qn(1, 2), qn(2, 1), &spec, Coupling(beta), &geom);
        prop_assert!((scaled - beta * unit).norm() <= 1e-13 * unit.norm().max(1e-30));
    }

    #[test]
    fn z_overlap_matches_quadrature(ni in 1u32..10, nj in 1u32..10, length in 0.5..3.0f64) {
        let closed = z_overlap(ni, nj, length);
        let quad = gauss_legendre(256).integrate(0.0, length, |z| {
            z * (ni as f64 * PI * z / length).sin() * (nj as f64 * PI * z / length).sin()
        });
        prop_assert!((closed - quad).abs() <= 1e-11 * (length * length).max(1.0));
    }

    #[test]
    fn energy_swap_symmetry_is_exact_at_degenerate_aspect(
        a in 1u32..12, b in 1u32..12, length in 0.3..4.0f64,
    ) {
        let geom = CylinderGeometry::degenerate(length).unwrap();
        prop_assert_eq!(geom.energy(qn(a, b)), geom.energy(qn(b, a)));
    }

    #[test]
    fn spectrum_is_sorted_and_grouping_partitions(
        radius in 0.2..3.0f64, length in 0.3..3.0f64,
        max_nz in 1u32..6, max_nt in 1u32..6,
    ) {
        let geom = CylinderGeometry::new(radius, length).unwrap();
        let levels = spectrum(&geom, max_nz, max_nt);
        prop_assert_eq!(levels.len(), (max_nz * max_nt) as usize);
        for w in levels.windows(2) {
            prop_assert!(w[0].energy <= w[1].energy);
        }
        let groups = degeneracy_groups(&levels, DEFAULT_DEGENERACY_TOL);
        let total: usize = groups.iter().map(|g| g.multiplicity()).sum();
        prop_assert_eq!(total, levels.len());
        let mut members: Vec<QuantumNumbers> = groups
            .iter()
            .flat_map(|g| g.members().iter().copied())
            .collect();
        members.sort();
        members.dedup();
        prop_assert_eq!(members.len(), levels.len());
    }

    #[test]
    fn secular_blocks_conserve_trace_and_normalize_mixing(
        a in 1u32..5, delta in 1u32..4, beta in 0.01..2.0f64, v_o in 0.1..10.0f64,
    ) {
        let b = a + delta;
        let geom = CylinderGeometry::degenerate(1.0).unwrap();
        let spec = PotentialSpec::cosine(v_o);
        let group = DegeneracyGroup::new(
            vec![qn(a, b), qn(b, a)],
            &geom,
            DEFAULT_DEGENERACY_TOL,
        ).unwrap();
        let block = build_block(&group, &spec, Coupling(beta), &geom).unwrap();
        let solved = solve_block(&block);
        let trace: f64 = (0..2).map(|i| block.matrix()[[i, i]].re).sum();
        let sum: f64 = solved.corrections.iter().sum();
        let scale = qpsc::linalg::max_abs(block.matrix()).max(1e-30);
        prop_assert!((sum - trace).abs() <= 1e-10 * scale);
        for col in 0..2 {
            let norm: f64 = (0..2).map(|r| solved.mixing[[r, col]].norm_sqr()).sum();
            prop_assert!((norm - 1.0).abs() <= 1e-12);
        }
        // Corrections sit symmetrically about the diagonal: gap = 2|h|.
        let gap = solved.corrections[1] - solved.corrections[0];
        let h01 = block.matrix()[[0, 1]].norm();
        prop_assert!((gap - 2.0 * h01).abs() <= 1e-11 * h01.max(1e-30));
    }
}
