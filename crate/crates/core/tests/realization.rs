mod common;

use common::{cases, metric, model, q};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weylcurv_core::curvature::{alt_ricci, classify, conjugate, higa_decompose, residual_bianchi, residual_weyl};
use weylcurv_core::generate::random_two_form;
use weylcurv_core::realization::{
    affine_realize, compatibility_residual, curvature_at_origin, dphi, gauge_transform, levi_civita_christoffels,
    riemann_jet, riemann_realize, torsion_residual, verify_affine, verify_realization, weyl_alpha, weyl_realize,
};
use weylcurv_core::{
    CurvatureClass, CurvatureModel, GaugeFunction, InnerProduct, MetricJet, OneFormJet, Rational, Scalar, Tensor2,
    Tensor4, WeylJet,
};

fn random_gauge(n: usize, seed: u64) -> GaugeFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let linear = (0..n).map(|_| Rational::from_frac(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect();
    let upper: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-3..=3)).collect();
    let quad = Tensor2::from_fn(n, |k, l| q(upper[k.min(l) * n + k.max(l)]));
    GaugeFunction::new(linear, quad).unwrap()
}

#[test]
fn weyl_models_are_realized_exactly() {
    let all = cases(2..=4, 17);
    assert!(all.len() >= 100);
    for (h, seed) in all {
        let m = model(CurvatureClass::Weyl, &h, seed);
        let jet = weyl_realize(&m).unwrap();
        assert!(jet.metric().is_geodesic());
        let report = verify_realization(&jet);
        assert!(report.success, "n={} seed={seed}: {:?}", h.dim(), report.first_failure());
        assert_eq!(curvature_at_origin(jet.connection()), *m.tensor());
        assert!(compatibility_residual(&jet).is_negligible());
        assert!(torsion_residual(jet.connection()).is_negligible());
    }
}

#[test]
fn dphi_matches_alt_ricci_of_realized_curvature() {
    for (h, seed) in cases(2..=4, 13) {
        let n = h.dim();
        let jet = weyl_realize(&model(CurvatureClass::Weyl, &h, seed)).unwrap();
        let r0 = curvature_at_origin(jet.connection());
        let expected = alt_ricci(&r0, &h).unwrap().scale(&Rational::from_frac(-1, n as i64));
        assert_eq!(dphi(jet.phi()), expected);
        // realized curvature satisfies the Weyl identity
        assert!(residual_weyl(&r0, &h).unwrap().is_negligible());
    }
}

#[test]
fn dphi_hand_value() {
    // φ = x¹ dx², so dφ(1,2) = ½(∂₁φ₂ − ∂₂φ₁) = ½
    let m = Tensor2::from_fn(2, |l, i| if (l, i) == (0, 1) { q(1) } else { q(0) });
    let d = dphi(&OneFormJet::from_linear(m));
    assert_eq!(d.get(0, 1), &Rational::from_frac(1, 2));
    assert_eq!(d.get(1, 0), &Rational::from_frac(-1, 2));
}

#[test]
fn algebraic_model_collapses_to_levi_civita() {
    for (h, seed) in cases(2..=4, 5) {
        let m = model(CurvatureClass::Algebraic, &h, seed);
        let jet = weyl_realize(&m).unwrap();
        assert!(jet.phi().linear().is_negligible());
        assert_eq!(*jet.connection(), levi_civita_christoffels(jet.metric()));
        assert!(verify_realization(&jet).success);
        assert_eq!(riemann_jet(&m).unwrap(), jet);
    }
}

#[test]
fn riemann_round_trip_single_basis_element() {
    let h = metric(2, 0);
    let a = Tensor4::from_fn(2, |i, j, k, l| match (i, j, k, l) {
        (0, 1, 0, 1) | (1, 0, 1, 0) => q(1),
        (0, 1, 1, 0) | (1, 0, 0, 1) => q(-1),
        _ => q(0),
    });
    assert!(classify(&a, &h).in_a);
    let g = riemann_realize(&a, &h).unwrap();
    assert_eq!(curvature_at_origin(&levi_civita_christoffels(&g)), a);
}

#[test]
fn riemann_realizes_random_algebraic_models() {
    let mut count = 0;
    for (h, seed) in cases(2..=4, 9) {
        let m = model(CurvatureClass::Algebraic, &h, seed);
        let g = riemann_realize(m.tensor(), &h).unwrap();
        assert_eq!(curvature_at_origin(&levi_civita_christoffels(&g)), *m.tensor());
        count += 1;
    }
    assert!(count >= 50);
}

#[test]
fn affine_realizes_generalized_and_weyl_models() {
    for (h, seed) in cases(2..=4, 9) {
        for class in [CurvatureClass::Generalized, CurvatureClass::Weyl] {
            let m = model(class, &h, seed);
            let c = affine_realize(m.tensor(), &h).unwrap();
            assert_eq!(curvature_at_origin(&c), *m.tensor());
            assert!(verify_affine(&c, &m).unwrap().success);
        }
    }
}

#[test]
fn wrong_class_is_rejected() {
    let h = metric(3, 0);
    let r = model(CurvatureClass::Generalized, &h, 1);
    assert!(weyl_realize(&r).is_err());
    let w = model(CurvatureClass::Weyl, &h, 1);
    assert!(riemann_jet(&w).is_err());
    let junk = Tensor4::from_fn(3, |i, j, k, l| q((i + 2 * j + 3 * k + 5 * l) as i64 % 3));
    assert!(affine_realize(&junk, &h).is_err());
}

#[test]
fn tampered_connection_fails_verification() {
    let h = metric(2, 1);
    let m = model(CurvatureClass::Weyl, &h, 3);
    let c = affine_realize(m.tensor(), &h).unwrap();
    let other = model(CurvatureClass::Weyl, &h, 4);
    let report = verify_affine(&c, &other).unwrap();
    assert!(!report.success);
    assert_eq!(report.first_failure(), Some("curvature"));
}

/// α_{ijk} + α_{ikj} − 2φ_i ε_{jk}, coefficientwise.
fn weyl_condition_defect(alpha: &weylcurv_core::ConnectionJet, phi: &OneFormJet, h: &InnerProduct) -> Rational {
    let n = h.dim();
    let mut worst = q(0);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c0 = alpha.constant().get(i, j, k).clone() + alpha.constant().get(i, k, j)
                    - q(2) * &phi.constant()[i] * h.get(j, k);
                worst = worst.max(c0.abs_val());
                for l in 0..n {
                    let c1 = alpha.linear().get(l, i, j, k).clone() + alpha.linear().get(l, i, k, j)
                        - q(2) * phi.linear().get(l, i) * h.get(j, k);
                    worst = worst.max(c1.abs_val());
                }
            }
        }
    }
    worst
}

/// Unique solution of a square-or-tall consistent system, by row reduction.
fn solve(mut rows: Vec<Vec<Rational>>, unknowns: usize) -> Vec<Rational> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(p) = (pivot_row..rows.len()).find(|&r| rows[r][col] != q(0)) else {
            panic!("system is underdetermined at column {col}");
        };
        rows.swap(pivot_row, p);
        let inv = q(1) / rows[pivot_row][col].clone();
        rows[pivot_row] = rows[pivot_row].iter().map(|v| v.clone() * &inv).collect();
        for r in 0..rows.len() {
            if r != pivot_row && rows[r][col] != q(0) {
                let f = rows[r][col].clone();
                let pr = rows[pivot_row].clone();
                rows[r] = rows[r].iter().zip(&pr).map(|(a, b)| a.clone() - f.clone() * b).collect();
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    for row in &rows[pivot_row..] {
        assert_eq!(row[unknowns], q(0), "inconsistent system");
    }
    pivots.iter().map(|&r| rows[r][unknowns].clone()).collect()
}

#[test]
fn weyl_connection_is_the_unique_torsion_free_solution() {
    for (h, seed) in cases(2..=4, 4) {
        let n = h.dim();
        let flat = MetricJet::flat(h.clone());
        let phi = OneFormJet::from_linear(random_two_form::<Rational>(n, seed).into_matrix().add(&Tensor2::from_fn(
            n,
            |l, i| q(((l * 7 + i * 3 + seed as usize) % 5) as i64 - 2),
        )));
        let alpha = weyl_alpha(&phi, &flat).unwrap();
        assert!(weyl_condition_defect(&alpha, &phi, &h).is_negligible());
        assert!(torsion_residual(&alpha).is_negligible());

        // unknowns a(i,j,k) for one linear coefficient x^l
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        let unknowns = n.pow(3);
        for l in 0..n {
            let mut rows = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let mut sym = vec![q(0); unknowns + 1];
                        sym[idx(i, j, k)] = sym[idx(i, j, k)].clone() + q(1);
                        sym[idx(i, k, j)] = sym[idx(i, k, j)].clone() + q(1);
                        sym[unknowns] = q(2) * phi.linear().get(l, i) * h.get(j, k);
                        rows.push(sym);
                        let mut tf = vec![q(0); unknowns + 1];
                        tf[idx(i, j, k)] = q(1);
                        tf[idx(j, i, k)] = tf[idx(j, i, k)].clone() - q(1);
                        rows.push(tf);
                    }
                }
            }
            let sol = solve(rows, unknowns);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        assert_eq!(&sol[idx(i, j, k)], alpha.linear().get(l, i, j, k));
                    }
                }
            }
        }
    }
}

#[test]
fn gauge_keeps_compatibility() {
    let all = cases(2..=4, 17);
    assert!(all.len() >= 100);
    for (h, seed) in all {
        let jet = weyl_realize(&model(CurvatureClass::Weyl, &h, seed)).unwrap();
        let f = random_gauge(h.dim(), seed);
        let gauged = gauge_transform(&jet, &f).unwrap();
        assert!(compatibility_residual(&gauged).is_negligible(), "seed {seed}");
        assert_eq!(gauged.connection(), jet.connection());
        assert!(verify_realization(&gauged).success);

        let twice = gauge_transform(&gauged, &random_gauge(h.dim(), seed + 1)).unwrap();
        assert!(compatibility_residual(&twice).is_negligible());
    }
}

#[test]
fn zero_gauge_is_identity() {
    for (h, seed) in cases(2..=4, 3) {
        let jet = weyl_realize(&model(CurvatureClass::Weyl, &h, seed)).unwrap();
        assert_eq!(gauge_transform(&jet, &GaugeFunction::zero(h.dim())).unwrap(), jet);
    }
}

#[test]
fn gauge_rejects_dimension_mismatch() {
    let jet = weyl_realize(&model(CurvatureClass::Weyl, &metric(3, 0), 0)).unwrap();
    assert!(gauge_transform(&jet, &GaugeFunction::zero(2)).is_err());
}

#[test]
fn broken_compatibility_is_detected() {
    let h = metric(3, 0);
    let jet = weyl_realize(&model(CurvatureClass::Weyl, &h, 2)).unwrap();
    let shifted = OneFormJet::new(vec![q(1), q(0), q(0)], jet.phi().linear().clone()).unwrap();
    let bad = WeylJet::with_connection(jet.metric().clone(), shifted, jet.connection().clone(), jet.model().clone())
        .unwrap();
    assert!(!compatibility_residual(&bad).is_negligible());
    assert_eq!(verify_realization(&bad).first_failure(), Some("compatibility"));
}

#[test]
fn conjugate_bianchi_on_realized_curvature_forces_closed_phi() {
    let (mut kept, mut dropped) = (0, 0);
    for (h, seed) in cases(3..=4, 10) {
        for class in [CurvatureClass::Weyl, CurvatureClass::Algebraic] {
            let jet = weyl_realize(&model(class, &h, seed)).unwrap();
            let r0 = curvature_at_origin(jet.connection());
            if residual_bianchi(&conjugate(&r0)).is_negligible() {
                kept += 1;
                let parts = higa_decompose(&CurvatureModel::new(h.clone(), r0).unwrap()).unwrap();
                assert!(parts.psi.is_negligible());
                assert!(dphi(jet.phi()).is_negligible());
            } else {
                dropped += 1;
            }
        }
    }
    assert!(kept > 0 && dropped > 0);
}

#[test]
fn float_realization_verifies_within_tolerance() {
    let h = metric(2, 1);
    let m = model(CurvatureClass::Weyl, &h, 5);
    let hf = InnerProduct::<f64>::from_signature(2, 1).unwrap();
    let af = Tensor4::from_fn(3, |i, j, k, l| m.tensor().get(i, j, k, l).to_f64());
    let jet = weyl_realize(&CurvatureModel::new(hf, af).unwrap()).unwrap();
    assert!(verify_realization(&jet).success);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn realization_holds_for_any_seed(n in 2usize..=4, lorentz in any::<bool>(), seed in any::<u64>(), fseed in any::<u64>()) {
        let h = if lorentz { metric(n - 1, 1) } else { metric(n, 0) };
        let jet = weyl_realize(&model(CurvatureClass::Weyl, &h, seed)).unwrap();
        prop_assert!(verify_realization(&jet).success);
        let gauged = gauge_transform(&jet, &random_gauge(n, fseed)).unwrap();
        prop_assert!(verify_realization(&gauged).success);
    }
}
