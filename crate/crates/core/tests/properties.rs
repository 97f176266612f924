//! Property tests for the state, simulator, geometry and synthesis invariants.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rq2::geometry::{normalize_angle, sheet_quadric_residuals, DEFAULT_CLASS_TOL};
use rq2::sampling::{random_local_circuit, random_state};
use rq2::sim::{reduced_eigenvalues_of, Mat4};
use rq2::synthesis::intersection_state;
use rq2::*;

fn state() -> impl Strategy<Value = RealState> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("non-degenerate", |v| {
            v.iter().map(|c| c * c).sum::<f64>() > 0.01
        })
        .prop_map(|v| RealState::from_unnormalized(v).unwrap())
}

fn sheet() -> impl Strategy<Value = Sheet> {
    prop_oneof![Just(Sheet::V34), Just(Sheet::V12)]
}

fn torus_point() -> impl Strategy<Value = TorusPoint> {
    (0.0..=FRAC_PI_4, 0.0..TAU, 0.0..TAU, sheet())
        .prop_map(|(d, a, b, sh)| TorusPoint::new(d, a, b, sh).unwrap())
}

fn local_gate() -> impl Strategy<Value = Gate> {
    let qubit = prop_oneof![Just(Qubit::Q0), Just(Qubit::Q1)];
    (qubit, -TAU..TAU, any::<bool>()).prop_map(|(qubit, angle, rot)| {
        if rot {
            Gate::Ry { qubit, angle }
        } else {
            Gate::X { qubit }
        }
    })
}

fn class_tol() -> Tolerance {
    Tolerance::new(DEFAULT_CLASS_TOL).unwrap()
}

fn max_diff(a: [f64; 4], b: [f64; 4]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn angle_diff(x: f64, y: f64) -> f64 {
    normalize_angle(x - y).abs()
}

fn orthogonality_defect(m: &Mat4) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let dot: f64 = (0..4).map(|k| m[k][i] * m[k][j]).sum();
            worst = worst.max((dot - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    worst
}

#[test]
fn bell_round_trip_ten_thousand() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10_000 {
        let s = random_state(&mut rng);
        let b = to_bell(&s);
        let norm: f64 = b.coords().iter().map(|c| c * c).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert!(max_diff(from_bell(b).amplitudes(), s.amplitudes()) < 1e-14);
    }
}

#[test]
fn entropy_is_strictly_decreasing() {
    let grid: Vec<f64> = (0..=1000)
        .map(|k| entropy_from_distance(FRAC_PI_4 * k as f64 / 1000.0).unwrap())
        .collect();
    assert!(grid.windows(2).all(|w| w[1] < w[0]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bell_inverse(s in state()) {
        let back = to_bell(&from_bell(to_bell(&s)));
        prop_assert!(max_diff(back.coords(), to_bell(&s).coords()) < 1e-14);
    }

    #[test]
    fn bell_radius_identity(s in state()) {
        let r12 = to_bell(&s).radius12_sq();
        prop_assert!((r12 - (1.0 - 2.0 * s.det()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn gates_are_orthogonal(g in local_gate()) {
        prop_assert!(orthogonality_defect(&gate_matrix(&g)) < 1e-14);
    }

    #[test]
    fn cz_is_an_involution(s in state()) {
        let c = Circuit::from_gates(vec![Gate::Cz, Gate::Cz]).unwrap();
        prop_assert!(max_diff(apply(&c, &s).amplitudes(), s.amplitudes()) < 1e-14);
    }

    #[test]
    fn partial_traces_agree(s in state()) {
        let (a1, a2) = reduced_eigenvalues_of(&s, Qubit::Q0);
        let (b1, b2) = reduced_eigenvalues_of(&s, Qubit::Q1);
        prop_assert!((a1 - b1).abs() < 1e-12 && (a2 - b2).abs() < 1e-12);
        prop_assert!((a1 + a2 - 1.0).abs() < 1e-12);
        prop_assert!(a1 >= a2 && (0.0..=1.0).contains(&a2) && (0.0..=1.0).contains(&a1));
    }

    #[test]
    fn local_gates_preserve_entanglement(s in state(), gates in prop::collection::vec(local_gate(), 0..20)) {
        let c = Circuit::from_gates(gates).unwrap();
        let out = apply(&c, &s);
        prop_assert!((entropy_oracle(&out) - entropy_oracle(&s)).abs() < 1e-10);
        prop_assert!((entanglement_distance(&out) - entanglement_distance(&s)).abs() < 1e-10);
    }

    #[test]
    fn distance_matches_concurrence(s in state()) {
        let d = entanglement_distance(&s);
        prop_assert!(((2.0 * d).cos().abs() - concurrence(&s)).abs() < 1e-10);
    }

    #[test]
    fn entropy_formula_matches_oracle(s in state()) {
        let d = entanglement_distance(&s);
        prop_assert!((entropy_from_distance(d).unwrap() - entropy_oracle(&s)).abs() < 1e-10);
    }

    #[test]
    fn x_swaps_generic_sheets(p in torus_point()) {
        let s = parametrize(&p);
        let c = classify(&s, class_tol());
        prop_assume!(c.kind == OrbitKind::Generic);
        let flipped = classify(&apply(&Circuit::from_gates(vec![Gate::X { qubit: Qubit::Q0 }]).unwrap(), &s), class_tol());
        prop_assert!((flipped.d - c.d).abs() < 1e-12);
        prop_assert_ne!(flipped.sheet, c.sheet);
        prop_assert_eq!(flipped.kind, OrbitKind::Generic);
    }

    #[test]
    fn parametrize_inverts_torus_angles(s in state()) {
        prop_assume!(entanglement_distance(&s).sin() >= 1e-9);
        let p = torus_angles(&s).unwrap();
        prop_assert!(states_equal_up_to_sign(&parametrize(&p), &s, Tolerance::default()));
    }

    #[test]
    fn parametrized_states_classify_back(p in torus_point()) {
        let s = parametrize(&p);
        let c = classify(&s, class_tol());
        prop_assert!((c.d - p.d()).abs() < 1e-12);
        if c.kind != OrbitKind::Product && c.kind != OrbitKind::MaxEntangled {
            prop_assert_eq!(c.sheet, OrbitSheet::from(p.sheet()));
        }
        let (r1, r2) = sheet_quadric_residuals(&s, p.d(), p.sheet());
        prop_assert!(r1.abs() < 1e-12 && r2.abs() < 1e-12);
    }

    #[test]
    fn phi_surface_turns_angles(d in 0.01..FRAC_PI_4, a in -PI..PI, b in -PI..PI, s in -PI..PI, t in -PI..PI) {
        let p = TorusPoint::new(d, a, b, Sheet::V34).unwrap();
        let s0 = parametrize(&p);
        let moved = phi_surface(&s0, s, t).unwrap();
        let q = torus_angles(&moved).unwrap();
        prop_assert!(angle_diff(q.a(), a + s + t) < 1e-10);
        prop_assert!(angle_diff(q.b(), b - s + t) < 1e-10);
        prop_assert!((q.d() - d).abs() < 1e-12);
    }

    #[test]
    fn immersion_identity(s0 in state(), s in -PI..PI, t in -PI..PI) {
        prop_assert!(immersion_defect(&s0, s, t) < 1e-9);
    }

    #[test]
    fn plans_are_sound_and_minimal(a in state(), b in state()) {
        let tol = Tolerance::default();
        let plan = cz_connect(&a, &b, tol).unwrap();
        prop_assert!(states_equal_up_to_sign(&apply(plan.circuit(), &a), &b, Tolerance::new(1e-9).unwrap()));
        let same_orbit = (entanglement_distance(&a) - entanglement_distance(&b)).abs() <= tol.eps();
        prop_assert_eq!(plan.cz_count(), if same_orbit { 0 } else { 1 });
        prop_assert_eq!(plan.cz_count(), plan.circuit().cz_count());
        let back = apply(&plan.circuit().inverse(), &b);
        prop_assert!(states_equal_up_to_sign(&back, &a, Tolerance::new(1e-9).unwrap()));
    }

    #[test]
    fn local_plans_use_local_gates_only(p in torus_point(), a in 0.0..TAU, b in 0.0..TAU, sh in sheet()) {
        let src = parametrize(&p);
        let dst = parametrize(&TorusPoint::new(p.d(), a, b, sh).unwrap());
        let plan = local_connect(&src, &dst, Tolerance::default()).unwrap();
        prop_assert_eq!(plan.cz_count(), 0);
        prop_assert!(plan.circuit().gates().iter().all(Gate::is_local));
        prop_assert!(plan.residual() < 1e-10);
    }

    #[test]
    fn intersection_solves_the_quadric_system(x in 0.0..FRAC_PI_4, y in 0.0..FRAC_PI_4) {
        let (d0, d1) = if x >= y { (x, y) } else { (y, x) };
        let b = to_bell(&intersection_state(d0, d1)).coords();
        let [x1, x2, x3, x4] = b;
        prop_assert!((x2 * x2 + x3 * x3 - d0.sin().powi(2)).abs() < 1e-12);
        prop_assert!((x1 * x1 + x4 * x4 - d0.cos().powi(2)).abs() < 1e-12);
        prop_assert!((x1 * x1 + x2 * x2 - d1.sin().powi(2)).abs() < 1e-12);
        prop_assert!((x3 * x3 + x4 * x4 - d1.cos().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn prepare_reaches_target(w in state()) {
        let c = prepare(&w);
        prop_assert_eq!(c.len(), 4);
        prop_assert_eq!(c.cz_count(), 1);
        prop_assert!(states_equal_up_to_sign(&apply(&c, &RealState::ZERO), &w, Tolerance::default()));
        for g in c.gates() {
            if let Gate::Ry { angle, .. } = g {
                prop_assert!(*angle > -PI && *angle <= PI);
            }
        }
    }
}

#[test]
fn random_local_circuits_keep_orbit() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10_000 {
        let s = random_state(&mut rng);
        let c = random_local_circuit(12, &mut rng);
        let out = apply(&c, &s);
        assert!((entropy_oracle(&out) - entropy_oracle(&s)).abs() < 1e-10);
    }
}

#[test]
fn prepare_of_zero_is_identity() {
    let c = prepare(&RealState::ZERO);
    assert!(states_equal_up_to_sign(
        &apply(&c, &RealState::ZERO),
        &RealState::ZERO,
        Tolerance::new(0.0).unwrap()
    ));
}

#[test]
fn circle_parametrization_limit() {
    for k in 0..16 {
        let theta = -PI + k as f64 * 0.4;
        let p = TorusPoint::new(0.0, 1.0, theta, Sheet::V34).unwrap();
        let x = to_bell(&parametrize(&p)).coords();
        assert!(max_diff(x, [0.0, 0.0, theta.cos(), theta.sin()]) < 1e-15);
        let p = TorusPoint::new(0.0, 1.0, theta, Sheet::V12).unwrap();
        let x = to_bell(&parametrize(&p)).coords();
        assert!(max_diff(x, [theta.cos(), theta.sin(), 0.0, 0.0]) < 1e-15);
    }
    // X on qubit 0 carries Σ_d(v3,v4) onto Σ_{π/2−d}(v3,v4) = Σ_d(v1,v2)
    let s = parametrize(&TorusPoint::new(0.3, 0.4, 0.5, Sheet::V34).unwrap());
    let x = Circuit::from_gates(vec![Gate::X { qubit: Qubit::Q0 }]).unwrap();
    let (r1, r2) = sheet_quadric_residuals(&apply(&x, &s), FRAC_PI_2 - 0.3, Sheet::V34);
    assert!(r1.abs() < 1e-12 && r2.abs() < 1e-12);
}
