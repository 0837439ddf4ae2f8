use hull_bo::drag::{evaluate_drag, FluidProps, Scenario};
use hull_bo::geometry::{design_bounds, DesignVector, DEFAULT_STATIONS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const VELOCITIES: [f64; 5] = [1.0, 2.5, 5.0, 7.5, 10.0];
const INTENSITIES: [f64; 5] = [0.1, 2.0, 5.0, 10.0, 20.0];

fn random_design(rng: &mut ChaCha8Rng) -> DesignVector<f64> {
    let x: Vec<f64> = design_bounds()
        .iter()
        .map(|&(lo, hi)| rng.random_range(lo..=hi))
        .collect();
    DesignVector::from_slice(&x)
}

fn total(d: &DesignVector<f64>, u: f64, i: f64, n: usize) -> f64 {
    evaluate_drag(d, &Scenario::new(u, i), &FluidProps::default(), n)
        .unwrap()
        .total
}

#[test]
fn components_non_negative_and_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let d = random_design(&mut rng);
        for u in VELOCITIES {
            for i in INTENSITIES {
                let b = evaluate_drag(
                    &d,
                    &Scenario::new(u, i),
                    &FluidProps::default(),
                    DEFAULT_STATIONS,
                )
                .unwrap();
                assert!(b.friction >= 0.0 && b.form >= 0.0 && b.separation >= 0.0);
                assert!((b.total - (b.friction + b.form + b.separation)).abs() <= 1e-12 * b.total);
                assert!((0.0..=1.0).contains(&b.transition_x));
            }
        }
    }
}

#[test]
fn monotone_in_velocity_and_intensity() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let d = random_design(&mut rng);
        for w in VELOCITIES.windows(2) {
            assert!(
                total(&d, w[0], 20.0, DEFAULT_STATIONS) < total(&d, w[1], 20.0, DEFAULT_STATIONS)
            );
        }
        for w in INTENSITIES.windows(2) {
            assert!(
                total(&d, 5.0, w[0], DEFAULT_STATIONS) <= total(&d, 5.0, w[1], DEFAULT_STATIONS)
            );
        }
    }
}

/// Shortest knot segment is a quarter of the nose or of the tail.
fn min_segment(d: &DesignVector<f64>) -> f64 {
    0.25 * d.nose_length.min(d.tail_length())
}

#[test]
fn station_refinement_within_one_percent_when_resolved() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    while checked < 100 {
        let d = random_design(&mut rng);
        if min_segment(&d) < 8.0 / 200.0 {
            continue;
        }
        checked += 1;
        let u = VELOCITIES[rng.random_range(0..5)];
        let i = INTENSITIES[rng.random_range(0..5)];
        let coarse = total(&d, u, i, 200);
        let fine = total(&d, u, i, 2000);
        assert!(
            (coarse - fine).abs() / fine < 0.01,
            "{d:?} at ({u}, {i}): {coarse} vs {fine}"
        );
    }
}

#[test]
fn spike_limit_is_separation_dominated() {
    let d = DesignVector::uniform(0.0, 0.5);
    let b = evaluate_drag(&d, &Scenario::new(5.0, 5.0), &FluidProps::default(), 200).unwrap();
    assert!(b.total > 0.0);
    assert!(b.separation > b.friction + b.form);
    let fine = total(&d, 5.0, 5.0, 2000);
    assert!((b.total - fine).abs() / fine < 0.01);
}

#[derive(serde::Deserialize)]
struct Witness {
    a: DesignVector<f64>,
    b: DesignVector<f64>,
}

#[test]
fn stored_witness_flips_ordering_between_scenarios() {
    let text = include_str!("fixtures/coupling_witness.json");
    let w: Witness = serde_json::from_str(text).unwrap();
    w.a.validate().unwrap();
    w.b.validate().unwrap();
    let n = DEFAULT_STATIONS;
    assert!(total(&w.a, 1.0, 0.1, n) < total(&w.b, 1.0, 0.1, n));
    assert!(total(&w.a, 10.0, 20.0, n) > total(&w.b, 10.0, 20.0, n));
}
