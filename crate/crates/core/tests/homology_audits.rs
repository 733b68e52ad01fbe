//! Dimension-level audits of the homology module on small algebras.

use std::sync::Arc;

use ncproj::field::{FieldKind, Scalar};
use ncproj::homology::{
    cd_estimate, chi_probe, ext_dim, global_dimension, minimal_resolution, proj_cohomology, GlobalDimension,
    GradedModulePresentation, PLATEAU_LENGTH,
};
use ncproj::poly::{FreeAlgebra, NcPolynomial};
use ncproj::rewriting::{complete_truncated, RewriteSystem};

fn ring(field: FieldKind, n: usize) -> Arc<FreeAlgebra> {
    FreeAlgebra::unit(field, &["x", "y", "z"][..n])
}

fn mono(r: &Arc<FreeAlgebra>, w: &[u16]) -> NcPolynomial {
    NcPolynomial::monomial(r, w)
}

fn k_xy(cutoff: u32) -> RewriteSystem {
    let r = ring(FieldKind::Rationals, 2);
    complete_truncated(&r, &[&mono(&r, &[1, 0]) - &mono(&r, &[0, 1])], cutoff).unwrap()
}

fn quantum_plane(cutoff: u32) -> RewriteSystem {
    let r = ring(FieldKind::RationalFunctions, 2);
    let rel = &mono(&r, &[1, 0]) - &mono(&r, &[0, 1]).scale(&Scalar::q());
    complete_truncated(&r, &[rel], cutoff).unwrap()
}

fn free2(cutoff: u32) -> RewriteSystem {
    complete_truncated(&ring(FieldKind::Rationals, 2), &[], cutoff).unwrap()
}

fn k_x(cutoff: u32) -> RewriteSystem {
    complete_truncated(&ring(FieldKind::Rationals, 1), &[], cutoff).unwrap()
}

/// `0 -> Hom(R/R>=n, M) -> M -> Hom(R>=n, M) -> Ext^1(R/R>=n, M) -> 0` in each degree.
fn audit_truncation_sequence(sys: &RewriteSystem, m: &GradedModulePresentation) {
    for n in 1..4 {
        let q = GradedModulePresentation::quotient(sys, n);
        let t = GradedModulePresentation::truncation(sys, n);
        for d in -3..3 {
            let hom_q = ext_dim(&q, m, 0, d).unwrap() as i64;
            let m_d = m.dims(d..=d).unwrap()[0] as i64;
            let hom_t = ext_dim(&t, m, 0, d).unwrap() as i64;
            let ext1 = ext_dim(&q, m, 1, d).unwrap() as i64;
            assert_eq!(hom_q - m_d + hom_t - ext1, 0, "n {n} d {d}");
            assert!(hom_q <= m_d, "Hom(R/R>=n, M) injects into M");
        }
    }
}

#[test]
fn truncation_sequence_for_free_and_cyclic_modules() {
    let sys = k_xy(14);
    let r = sys.ring().clone();
    audit_truncation_sequence(&sys, &GradedModulePresentation::free(&sys, vec![0]));
    audit_truncation_sequence(&sys, &GradedModulePresentation::free(&sys, vec![2]));
    let m = GradedModulePresentation::cokernel(&sys, vec![0], vec![vec![mono(&r, &[0])]]);
    // R/(x) = k[y] has one basis element per degree.
    assert_eq!(m.dims(0..=6).unwrap(), vec![1; 7]);
    audit_truncation_sequence(&sys, &m);
}

#[test]
fn resolutions_are_minimal_and_koszul() {
    let cases: [(RewriteSystem, Vec<Vec<i64>>); 3] = [
        (k_x(8), vec![vec![0], vec![1]]),
        (k_xy(8), vec![vec![0], vec![1, 1], vec![2]]),
        (quantum_plane(8), vec![vec![0], vec![1, 1], vec![2]]),
    ];
    for (sys, betti) in cases {
        let rep = minimal_resolution(&sys, 4, 8).unwrap();
        assert!(rep.minimal);
        assert_eq!(rep.betti, betti);
    }
}

/// Once a colimit value is constant over `PLATEAU_LENGTH` consecutive n it stays constant.
fn assert_monotone_stabilization(values: &[usize]) {
    let p = PLATEAU_LENGTH as usize;
    if let Some(i) = (0..values.len().saturating_sub(p - 1)).find(|&i| values[i..i + p].iter().all(|&v| v == values[i])) {
        assert!(values[i..].iter().all(|&v| v == values[i]), "{values:?}");
    }
}

#[test]
fn stabilization_is_monotone() {
    for sys in [k_xy(18), quantum_plane(18)] {
        let r = GradedModulePresentation::free(&sys, vec![0]);
        for (j, d) in [(0, 0), (0, 2), (0, -1), (1, -3), (1, -2), (1, 0)] {
            let rep = proj_cohomology(&sys, &r, j, d, 8).unwrap();
            assert!(!rep.is_unstable(), "j {j} d {d}: {:?}", rep.values);
            assert_monotone_stabilization(&rep.values);
        }
    }
}

#[test]
fn cd_is_bounded_by_global_dimension() {
    for sys in [k_x(16), k_xy(16), quantum_plane(16)] {
        let cd = cd_estimate(&sys, 2, -3..=2, 6).unwrap();
        match global_dimension(&sys, 4, 8).unwrap() {
            GlobalDimension::Finite(g) => assert!((cd as usize) < g, "cd {cd} gldim {g}"),
            GlobalDimension::AtLeast(_) => panic!("expected finite global dimension"),
        }
    }
}

#[test]
fn chi_probe_flags_right_boundedness() {
    for sys in [k_xy(10), quantum_plane(10)] {
        for m in [
            GradedModulePresentation::free(&sys, vec![0]),
            GradedModulePresentation::free(&sys, vec![2]),
            GradedModulePresentation::trivial(&sys),
            GradedModulePresentation::quotient(&sys, 2),
        ] {
            let rep = chi_probe(&sys, &m, 2, 10).unwrap();
            assert!(rep.right_bounded_up_to_cutoff, "{:?}", rep.per_degree_dims);
        }
    }
    let free = free2(10);
    let rep = chi_probe(&free, &GradedModulePresentation::free(&free, vec![0]), 1, 10).unwrap();
    assert!(!rep.right_bounded_up_to_cutoff);
}
