use hull_bo::geometry::{
    build_profile, check_watertight, design_bounds, export_profile_csv, export_stl,
    parse_binary_stl, parse_profile_csv, DesignVector, HullProfile,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn random_designs_export_closed_meshes_and_exact_csv() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let x: Vec<f64> = design_bounds()
            .iter()
            .map(|&(lo, hi)| rng.random_range(lo..=hi))
            .collect();
        let p = build_profile(&DesignVector::from_slice(&x)).unwrap();
        let bytes = export_stl(&p, 120, 24).unwrap();
        let mesh = parse_binary_stl(&bytes).unwrap();
        assert!(!mesh.triangles.is_empty());
        check_watertight(&bytes).unwrap();
        let rows = parse_profile_csv(&export_profile_csv(&p, 51).unwrap()).unwrap();
        assert_eq!(rows.len(), 51);
        for (xs, r) in rows {
            assert!((r - p.radius_at(xs).unwrap()).abs() <= 1e-9);
        }
    }
}

#[test]
fn cylinder_measures() {
    let p = HullProfile::from_knots(vec![0.0, 1.0], vec![0.1, 0.1]).unwrap();
    assert!((p.wetted_area(200) - 0.2 * std::f64::consts::PI).abs() < 1e-6);
    assert!((p.volume(200) - 0.01 * std::f64::consts::PI).abs() < 1e-6);
}
