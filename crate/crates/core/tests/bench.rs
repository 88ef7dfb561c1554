use permcanon::bench::{
    bench_hard_cycle, bench_random_riemann, instance_seeds, loglog_slope, random_riemann,
    run_instance, write_csv, ResultClass,
};
use permcanon::canon::CanonOptions;
use permcanon::tensor::Registry;

#[test]
fn random_family_is_deterministic() {
    assert_eq!(instance_seeds(7, 4, 3), instance_seeds(7, 4, 3));
    assert_ne!(instance_seeds(7, 4, 3), instance_seeds(8, 4, 3));
    for s in 0..20 {
        assert_eq!(random_riemann(3, s), random_riemann(3, s));
    }
    let strip = |seed| {
        bench_random_riemann(4, 5, seed, &CanonOptions::default())
            .unwrap()
            .into_iter()
            .map(|r| (r.n, r.seed, r.result, r.peak))
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(1), strip(1));
}

#[test]
fn memory_budget_is_recorded_as_limit() {
    let tiny = CanonOptions { mem_limit_bytes: 64 };
    let records = bench_hard_cycle(4, &tiny).unwrap();
    assert!(records.iter().all(|r| r.result == ResultClass::Limit));
    let (rec, _) = run_instance(
        "riemann",
        2,
        0,
        &random_riemann(2, 0),
        &Registry::default(),
        &CanonOptions::default(),
    )
    .unwrap();
    assert_ne!(rec.result, ResultClass::Limit);
}

#[test]
fn csv_layout() {
    let records = bench_hard_cycle(3, &CanonOptions::default()).unwrap();
    let mut buf = Vec::new();
    write_csv(&records, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "experiment,n,seed,result,micros,peak");
    assert!(lines[1].starts_with("cycle,2,0,nonzero,"));
    assert_eq!(lines.len(), 3);
}

#[test]
fn slope_of_a_power_law() {
    let pts: Vec<(f64, f64)> = (1..10).map(|x| (x as f64, 3.0 * (x as f64).powi(3))).collect();
    assert!((loglog_slope(&pts) - 3.0).abs() < 1e-9);
}
