use hxh_einstein::catalog::ideals_from_weights;
use hxh_einstein::einstein::diagonal_roots;
use hxh_einstein::{
    closed_form_einstein_metrics, compute_r, einstein_check, normalized_scalar,
    normalized_scalar_slice, ricci_components, scalar_curvature, scalar_trace_oracle, validate,
    volume_det, Metric4, SlicePoint, SpaceDescriptor, SpaceParams, SymMatrix3,
};
use proptest::prelude::*;

fn metric() -> impl Strategy<Value = Metric4> {
    (0.05f64..5.0, 0.05f64..5.0, 0.05f64..5.0, -0.98f64..0.98).prop_map(|(x1, x2, x3, t)| {
        Metric4::new(x1, x2, x3, t * (x1 * x2).sqrt()).unwrap()
    })
}

fn single_a_space() -> impl Strategy<Value = SpaceParams> {
    (0.01f64..0.99, 1.0f64..150.0).prop_map(|(a, d)| SpaceParams::with_single_a(d, a))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

// Eigenvalues of a symmetric 3×3 matrix from the trigonometric solution of
// its characteristic cubic.
fn cubic_eigenvalues(m: &SymMatrix3) -> [f64; 3] {
    let p1 = m[(0, 1)].powi(2) + m[(0, 2)].powi(2) + m[(1, 2)].powi(2);
    let q = m.trace() / 3.0;
    let p2 = (m[(0, 0)] - q).powi(2) + (m[(1, 1)] - q).powi(2) + (m[(2, 2)] - q).powi(2) + 2.0 * p1;
    if p2 == 0.0 {
        return [q; 3];
    }
    let p = (p2 / 6.0).sqrt();
    let b = SymMatrix3::from_upper(
        (m[(0, 0)] - q) / p,
        m[(0, 1)] / p,
        m[(0, 2)] / p,
        (m[(1, 1)] - q) / p,
        m[(1, 2)] / p,
        (m[(2, 2)] - q) / p,
    );
    let r = (b.det() / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let mut v = [lo, 3.0 * q - hi - lo, hi];
    v.sort_by(f64::total_cmp);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn trace_oracle_matches_closed_form(space in single_a_space(), g in metric()) {
        let scal = scalar_curvature(&space, &g);
        let oracle = scalar_trace_oracle(&space, &g).unwrap();
        prop_assert!((scal - oracle).abs() <= 1e-10 * (1.0 + scal.abs()), "{scal} vs {oracle}");
    }

    #[test]
    fn trace_oracle_with_split_ideals(
        d1 in 1u32..40, d2 in 1u32..40, d3 in 1u32..40,
        w in proptest::array::uniform3(0.0f64..1.0),
        shrink in 0.05f64..1.0,
        g in metric(),
    ) {
        let d = d1 + d2 + d3;
        // n ≤ 2d keeps Σ a_l d_l = d − n/2 non-negative
        let n = ((2.0 * f64::from(d) * shrink).round() as u32).max(1);
        if let Some(ideals) = ideals_from_weights(n, d, &[d1, d2, d3], &w) {
            let desc = SpaceDescriptor::new("split", n, d).with_ideals(ideals);
            prop_assert!(validate(&desc).is_empty());
            let space = desc.params();
            let scal = scalar_curvature(&space, &g);
            let oracle = scalar_trace_oracle(&space, &g).unwrap();
            prop_assert!((scal - oracle).abs() <= 1e-10 * (1.0 + scal.abs()));
        }
    }

    #[test]
    fn slice_closed_form_matches_general_formula(
        n in 1.0f64..200.0, d in 1.0f64..200.0,
        x1 in 0.05f64..5.0, x2 in 0.05f64..5.0, t in -0.98f64..0.98,
    ) {
        let space = SpaceParams::new(n, d);
        let p = SlicePoint::new(x1, x2, t * (x1 * x2).sqrt());
        let general = normalized_scalar(&space, &p.metric().unwrap());
        let closed = normalized_scalar_slice(&space, p);
        prop_assert!((general - closed).abs() <= 1e-12 * general.abs().max(1.0), "{general} vs {closed}");
    }

    #[test]
    fn normalized_scalar_is_scale_invariant(space in single_a_space(), g in metric()) {
        let base = normalized_scalar(&space, &g);
        for c in [0.1, 2.0, 10.0] {
            let scaled = normalized_scalar(&space, &g.scaled(c));
            prop_assert!((scaled - base).abs() <= 1e-12 * base.abs().max(1.0));
        }
    }

    #[test]
    fn r_is_degree_zero_homogeneous(g in metric(), c in 0.01f64..100.0) {
        let r = compute_r(&g);
        prop_assert!((compute_r(&g.scaled(c)) - r).abs() <= 1e-13 * r.abs().max(1.0));
    }

    #[test]
    fn factor_exchange_symmetry(space in single_a_space(), g in metric()) {
        let s = g.swapped();
        let (a, b) = (scalar_curvature(&space, &s), scalar_curvature(&space, &g));
        prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{a} vs {b}");
        prop_assert_eq!(volume_det(&space, &s).to_bits(), volume_det(&space, &g).to_bits());
    }

    #[test]
    fn cross_ricci_vanishes_on_diagonal_metrics(space in single_a_space(), x1 in 0.05f64..5.0, x2 in 0.05f64..5.0, x3 in 0.05f64..5.0) {
        let g = Metric4::new(x1, x2, x3, 0.0).unwrap();
        prop_assert_eq!(ricci_components(&space, &g).unwrap().r12, 0.0);
    }

    #[test]
    fn einstein_check_is_scale_robust(a in 0.01f64..0.99, d in 1.0f64..60.0, c in 0.05f64..20.0) {
        let space = SpaceParams::with_single_a(d, a);
        for sol in closed_form_einstein_metrics(Some(a)).unwrap() {
            let base = einstein_check(&space, &sol.metric, 1e-10).unwrap();
            let scaled = einstein_check(&space, &sol.metric.scaled(c), 1e-10).unwrap();
            prop_assert!(base.is_einstein && scaled.is_einstein, "{:?} {:?}", sol.label, scaled);
            let (l0, l1) = (base.lambda.unwrap(), scaled.lambda.unwrap());
            prop_assert!(rel(l1 * c, l0) <= 1e-10);
        }
    }

    #[test]
    fn jacobi_reconstructs_and_matches_cubic_roots(e in proptest::array::uniform6(-10.0f64..10.0)) {
        let m = SymMatrix3::from_upper(e[0], e[1], e[2], e[3], e[4], e[5]);
        let eig = m.eigen();
        let back = eig.reconstruct();
        let diff: f64 = (0..3).flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| (back[(i, j)] - m[(i, j)]).powi(2)).sum::<f64>().sqrt();
        prop_assert!(diff <= 1e-12 * m.frobenius().max(1e-300));
        let roots = cubic_eigenvalues(&m);
        for (x, y) in eig.values.iter().zip(roots) {
            prop_assert!((x - y).abs() <= 1e-10 * (1.0 + m.frobenius()), "{:?} vs {:?}", eig.values, roots);
        }
        prop_assert!(eig.values[0] <= eig.values[1] && eig.values[1] <= eig.values[2]);
    }
}

#[test]
fn normal_metrics_are_self_consistent() {
    // g_b = (z1, z2, 2 z1 z2/(z1+z2), 0)
    let space = SpaceParams::with_single_a(12.0, 0.6);
    for (z1, z2) in [(1.0, 1.0), (0.5, 2.0), (3.0, 0.25)] {
        let g = Metric4::new(z1, z2, 2.0 * z1 * z2 / (z1 + z2), 0.0).unwrap();
        let scal = scalar_curvature(&space, &g);
        let oracle = scalar_trace_oracle(&space, &g).unwrap();
        assert!((scal - oracle).abs() <= 1e-12 * scal.abs());
    }
}

#[test]
fn diagonal_solutions_solve_their_quadratic() {
    // x± are the roots of a x² − x + (3 − 2a)/4 = 0
    for a in [0.05, 0.2, 1.0 / 3.0, 0.49] {
        let (xp, xm) = diagonal_roots(a);
        for x in [xp, xm] {
            assert!((a * x * x - x + (3.0 - 2.0 * a) / 4.0).abs() < 1e-12);
        }
    }
}
