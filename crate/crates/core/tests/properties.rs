use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symqubit::invariants::{makhlin_all, symmetric_six, xform_invariants, xform_relation_check};
use symqubit::models::{dicke_pair, ising_pair, oat_pair, ModelSpec};
use symqubit::qmat::{haar_su2, hermitian_eigenvalues, kron, su2_to_so3, HermitianSpectrum};
use symqubit::sampling::{random_density, random_symmetric, random_xform};
use symqubit::separability::{
    classify, invariant_criteria, partial_transpose, partial_transpose_matrix, ppt_check,
    xform_pt_eigenvalues, BlochSampling, SeparableEnsemble,
};
use symqubit::states::{
    apply_local_unitary, bloch_compose, bloch_decompose, is_symmetric, xform_extract,
};
use symqubit::{CMat2, CMat4, Complex, RMat3, Verdict};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cmat2(r: &mut ChaCha8Rng) -> CMat2 {
    CMat2::from_fn(|_, _| Complex::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)))
}

fn within(a: f64, b: f64, rel: f64, floor: f64) -> bool {
    (a - b).abs() <= (rel * a.abs().max(b.abs())).max(floor)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn kron_is_bilinear_and_mixes_products(seed in any::<u64>(), alpha in -2.0f64..2.0) {
        let mut r = rng(seed);
        let (a, b, c, d) = (cmat2(&mut r), cmat2(&mut r), cmat2(&mut r), cmat2(&mut r));
        let k = Complex::new(alpha, 0.3);
        let lhs = kron(&(a * k + c), &b);
        let rhs = kron(&a, &b) * k + kron(&c, &b);
        prop_assert!((lhs - rhs).camax() < 1e-12);
        let mixed = kron(&a, &b) * kron(&c, &d) - kron(&(a * c), &(b * d));
        prop_assert!(mixed.camax() < 1e-12);
    }

    #[test]
    fn covering_map_is_a_homomorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (u, v) = (haar_su2(&mut r), haar_su2(&mut r));
        let lhs = su2_to_so3(&(u * v)).unwrap();
        let rhs = su2_to_so3(&u).unwrap() * su2_to_so3(&v).unwrap();
        prop_assert!((lhs - rhs).amax() < 1e-10);
    }

    #[test]
    fn spectra_match_trace_and_determinant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho = random_density(&mut r);
        let ev = hermitian_eigenvalues(rho.matrix(), 1e-10).unwrap();
        prop_assert!((ev.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        let g = RMat3::from_fn(|_, _| r.random_range(-1.0..1.0));
        let t = g + g.transpose();
        let ev = t.hermitian_eigenvalues(1e-10).unwrap();
        prop_assert!((ev.iter().sum::<f64>() - t.trace()).abs() < 1e-10);
        prop_assert!((ev.iter().product::<f64>() - t.determinant()).abs() < 1e-10);
    }

    #[test]
    fn bloch_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho = random_density(&mut r);
        let f = bloch_decompose(&rho);
        let back = bloch_compose(&f).unwrap();
        prop_assert!((back.matrix() - rho.matrix()).camax() < 1e-12);
        let again = bloch_decompose(&back);
        prop_assert!((again.s - f.s).amax() < 1e-12);
        prop_assert!((again.r - f.r).amax() < 1e-12);
        prop_assert!((again.t - f.t).amax() < 1e-12);
    }

    #[test]
    fn collective_unitary_preserves_symmetry(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho = random_symmetric(&mut r);
        let u = haar_su2(&mut r);
        prop_assert!(is_symmetric(&apply_local_unitary(&rho, &u, &u).unwrap(), 1e-10));
    }

    #[test]
    fn xform_extraction_and_bloch_structure(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_xform(&mut r);
        let rho = x.density();
        let back = xform_extract(&rho, 1e-12).unwrap();
        prop_assert!((back.matrix() - rho.matrix()).camax() < 1e-12);
        let f = x.bloch();
        prop_assert!(f.s.x.abs() < 1e-15 && f.s.y.abs() < 1e-15);
        prop_assert!((f.s.z - (x.a - x.d)).abs() < 1e-15);
        prop_assert!((f.r - f.s).amax() < 1e-15);
        prop_assert!((f.t - f.t.transpose()).amax() < 1e-15);
    }

    #[test]
    fn invariants_are_local_unitary_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho = random_density(&mut r);
        let (u1, u2) = (haar_su2(&mut r), haar_su2(&mut r));
        let before = makhlin_all(&bloch_decompose(&rho));
        let after = makhlin_all(&bloch_decompose(&apply_local_unitary(&rho, &u1, &u2).unwrap()));
        for k in 1..=18 {
            prop_assert!(within(before.get(k), after.get(k), 1e-9, 1e-12), "I{}", k);
        }
        prop_assert!(before.get(2) >= 0.0 && before.get(4) >= 0.0);
    }

    #[test]
    fn symmetric_states_pair_up_invariants(seed in any::<u64>()) {
        let mut r = rng(seed);
        let inv = makhlin_all(&bloch_decompose(&random_symmetric(&mut r)));
        for (p, q) in symqubit::InvariantSet::SYMMETRIC_PAIRS {
            prop_assert!((inv.get(p) - inv.get(q)).abs() < 1e-10, "I{} vs I{}", p, q);
        }
    }

    #[test]
    fn xform_closed_forms_and_relations(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_xform(&mut r);
        let closed = xform_invariants(&x);
        let general = symmetric_six(&x.bloch()).unwrap();
        for (p, q) in closed.as_array().iter().zip(general.as_array()) {
            prop_assert!((p - q).abs() < 1e-12);
        }
        if general.i4 > 1e-8 {
            prop_assert!(xform_relation_check(&general, 1e-10).unwrap());
        }
    }

    #[test]
    fn separable_mixtures_keep_criteria_positive(seed in any::<u64>(), terms in 1usize..8) {
        let mut r = rng(seed);
        // pure terms stay on the triplet subspace; mixed terms give general separable states
        for mode in [BlochSampling::Sphere, BlochSampling::Ball] {
            let e = SeparableEnsemble::random(terms, mode, &mut r);
            let six = makhlin_all(&bloch_decompose(&e.density())).symmetric_six();
            if six.i4 > 1e-8 {
                prop_assert!(six.i12 >= -1e-10);
                prop_assert!(six.i14 >= -1e-10);
                prop_assert!(six.i12_minus_i4_sq() >= -1e-10);
            }
        }
    }

    #[test]
    fn fired_criteria_imply_ppt_entanglement(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho = if seed % 2 == 0 { random_symmetric(&mut r) } else { random_xform(&mut r).density() };
        let six = symmetric_six(&bloch_decompose(&rho)).unwrap();
        if let Ok(fired) = invariant_criteria(&six, 1e-10) {
            if !fired.is_empty() {
                prop_assert!(!ppt_check(&rho, 1e-10).separable);
            }
        }
        prop_assert!(classify(&rho, 1e-10).is_ok());
    }

    #[test]
    fn xform_ppt_is_captured_by_criteria(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_xform(&mut r);
        prop_assume!((x.a - x.d).powi(2) > 1e-8 && x.c + x.b.norm() > 1e-8);
        let rho = x.density();
        let c = classify(&rho, 1e-10).unwrap();
        prop_assert_eq!(c.verdict == Verdict::Entangled, !c.criteria_fired.is_empty());
    }

    #[test]
    fn xform_pt_spectrum(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_xform(&mut r);
        let mut closed = xform_pt_eigenvalues(&x);
        closed.sort_by(f64::total_cmp);
        let numeric = partial_transpose(&x.density()).hermitian_eigenvalues(1e-10).unwrap();
        for (p, q) in closed.iter().zip(numeric) {
            prop_assert!((p - q).abs() < 1e-10);
        }
    }

    #[test]
    fn partial_transpose_is_an_involution(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m: CMat4 = *random_density(&mut r).matrix();
        let pt = partial_transpose_matrix(&m);
        prop_assert!((partial_transpose_matrix(&pt) - m).camax() == 0.0);
        prop_assert!((pt.trace() - m.trace()).norm() < 1e-15);
    }

    #[test]
    fn model_pairs_are_physical(n in 2usize..200, chi_t in -10.0f64..10.0) {
        prop_assert!(oat_pair(n, chi_t).unwrap().density().min_eigenvalue() > -1e-10);
        if n >= 3 {
            prop_assert!(ising_pair(n, chi_t).unwrap().density().min_eigenvalue() > -1e-10);
        }
    }
}

#[test]
fn dicke_pairs_are_entangled_except_at_the_poles() {
    for n in 2..=50usize {
        for two_m in (-(n as i64)..=n as i64).step_by(2) {
            let m = two_m as f64 / 2.0;
            let c = classify(&dicke_pair(n, m).unwrap().density(), 1e-10).unwrap();
            let pole = two_m.unsigned_abs() as usize == n;
            let want = if pole { Verdict::Separable } else { Verdict::Entangled };
            assert_eq!(c.verdict, want, "N={n} M={m}");
        }
    }
}

#[test]
fn dynamical_pairs_fire_i14_when_negative() {
    let mut specs = Vec::new();
    for n in 2..=30 {
        for k in 0..60 {
            let chi_t = k as f64 * 0.105;
            specs.push(ModelSpec::Oat { n, chi_t });
            if n >= 3 {
                specs.push(ModelSpec::Ising { n, chi_t });
            }
        }
    }
    for spec in specs {
        let inv = spec.invariants().unwrap();
        if inv.i14 < -1e-10 {
            let c = classify(&spec.pair(Default::default()).unwrap().density(), 1e-10).unwrap();
            assert!(c.criteria_fired.contains(&symqubit::Criterion::I14Negative), "{spec:?}");
            assert_eq!(c.verdict, Verdict::Entangled, "{spec:?}");
        }
    }
}
