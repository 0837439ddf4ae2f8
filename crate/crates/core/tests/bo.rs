use hull_bo::bo::{average_regret, optimize, regret, BoConfig, Trace};

fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| (v - 0.3).powi(2)).sum()
}

fn run(seed: u64, budget: usize) -> Trace<f64> {
    let cfg = BoConfig::new(vec![(0.0, 1.0); 7], seed).with_budget(budget);
    optimize(|x: &[f64]| Ok(sphere(x)), &cfg).unwrap()
}

#[test]
fn average_regret_falls_with_budget() {
    let seeds = 0..3u64;
    let avg = |t: usize| {
        seeds
            .clone()
            .map(|s| average_regret(&run(s, t), 0.0))
            .sum::<f64>()
            / 3.0
    };
    let (a, b, c) = (avg(25), avg(50), avg(100));
    assert!(a > b && b > c, "R_T/T: {a} {b} {c}");
}

#[test]
fn sphere_trace_is_consistent() {
    let t = run(17, 60);
    assert_eq!(t.len(), 60);
    let best = t.best_so_far();
    assert!(best.windows(2).all(|w| w[1] <= w[0]));
    for r in &t.records {
        assert!(r.x.iter().all(|v| (0.0..=1.0).contains(v)));
        assert_eq!(r.drag, sphere(&r.x));
    }
    for r in &t.records[10..] {
        assert!(r.beta > 0.0);
    }
    let reg = regret(&t, 0.0);
    assert!(reg.cumulative >= reg.simple && reg.simple >= 0.0);
    assert_eq!(Trace::from_jsonl(&t.to_jsonl()).unwrap(), t);
    assert_eq!(run(17, 60).to_jsonl(), t.to_jsonl());
}
