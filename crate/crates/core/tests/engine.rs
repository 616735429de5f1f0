use std::collections::BTreeMap;

use confh_core::homology::BettiColumn;
use confh_core::presentation::CohomologyPresentation;
use confh_core::quasipoly::{slice_count_check, verify_extremal_degree, VerdictKind};
use confh_core::{preset, ComplexKind, Engine, EngineConfig, RankMode};

fn p(name: &str, params: &[u64]) -> CohomologyPresentation {
    preset(name, params).unwrap()
}

fn column(pres: &CohomologyPresentation, n: usize, config: EngineConfig) -> BettiColumn {
    Engine::new(pres, config).unwrap().betti(n).unwrap()
}

fn full(pres: &CohomologyPresentation, n: usize) -> BTreeMap<usize, u64> {
    column(pres, n, EngineConfig::exact()).values()
}

fn map(values: &[u64]) -> BTreeMap<usize, u64> {
    values.iter().copied().enumerate().collect()
}

#[test]
fn sphere_two_and_three_points() {
    assert_eq!(full(&p("s2", &[]), 2), map(&[1, 0, 0, 0, 0]));
    assert_eq!(full(&p("s2", &[]), 3), map(&[1, 0, 0, 1, 0, 0, 0]));
}

#[test]
fn plane_braid_homology() {
    assert_eq!(full(&p("r2", &[]), 3), map(&[1, 1]));
    for n in 2..=10 {
        assert_eq!(full(&p("r2", &[]), n), map(&[1, 1]), "n = {n}");
    }
}

#[test]
fn one_point_is_the_manifold() {
    assert_eq!(full(&p("t2", &[]), 1), map(&[1, 2, 1]));
    assert_eq!(full(&p("sigma", &[2]), 1), map(&[1, 4, 1]));
    assert_eq!(full(&p("cp", &[2]), 1), map(&[1, 0, 1, 0, 1]));
}

#[test]
fn table_rows_and_csv() {
    let s2 = p("s2", &[]);
    let engine = Engine::new(&s2, EngineConfig { n_range: 2..=4, ..EngineConfig::exact() }).unwrap();
    let table = engine.betti_range().unwrap();
    for n in 2..=4 {
        assert_eq!(table.columns[&n].values(), full(&s2, n));
    }
    let csv = table.to_csv();
    assert!(csv.starts_with("n,degree,betti,method\n"));
    assert!(csv.contains("2,0,1,exact\n") && csv.contains("3,3,1,exact\n"));

    #[allow(clippy::reversed_empty_ranges)]
    let empty = Engine::new(&s2, EngineConfig { n_range: 3..=2, ..EngineConfig::exact() }).unwrap();
    assert!(empty.betti_range().unwrap().is_empty());
}

#[test]
fn window_populates_only_near_top() {
    let t2 = p("t2", &[]);
    let col = column(&t2, 9, EngineConfig { window: Some(1), ..EngineConfig::default() }.auto_reduced(&t2));
    let nu = 10;
    assert_eq!(col.entries.keys().copied().collect::<Vec<_>>(), vec![nu - 1, nu]);
    // Outside the window: absent, not zero.
    assert_eq!(col.get(3), None);
    assert_eq!(col.get(col.max_degree + 1), Some(0));
}

#[test]
fn windowed_agrees_with_full_interior() {
    for (name, params) in [("t2", vec![]), ("sigma", vec![2]), ("sigma_open", vec![1]), ("cp", vec![2])] {
        let pres = p(name, &params);
        for n in 2..=7 {
            let whole = full(&pres, n);
            for t in 1..=3 {
                let col = column(&pres, n, EngineConfig { window: Some(t), ..EngineConfig::default() });
                for (d, e) in &col.entries {
                    assert_eq!(whole.get(d).copied().unwrap_or(0), e.betti, "{name} n={n} t={t} degree {d}");
                }
            }
        }
    }
}

#[test]
fn extremal_sequences() {
    let s2 = p("s2", &[]);
    let engine = Engine::new(&s2, EngineConfig::default().auto_reduced(&s2)).unwrap();
    assert!(engine.extremal_sequence(0, 2..=8).unwrap().iter().all(|(_, v)| *v == 0));

    let open = p("sigma_open", &[1]);
    let engine = Engine::new(&open, EngineConfig::default()).unwrap();
    assert!(engine.extremal_sequence(0, 2..=8).unwrap().iter().all(|(_, v)| *v == 0));
}

#[test]
fn torus_top_slice_bounds_top_betti() {
    let t2 = p("t2", &[]);
    let engine = Engine::new(&t2, EngineConfig::default().auto_reduced(&t2)).unwrap();
    for (n, value) in engine.extremal_sequence(0, 3..=11).unwrap() {
        if n % 2 == 1 {
            assert!(value <= (n / 2 + 1) as u64, "n = {n}: {value}");
        }
    }
}

#[test]
fn config_violations() {
    let r2 = p("r2", &[]);
    assert!(Engine::new(&r2, EngineConfig { reduced: true, ..EngineConfig::default() }).is_err());
    assert!(Engine::new(&r2, EngineConfig { complex: ComplexKind::Dual, ..EngineConfig::default() }).is_err());
    assert!(Engine::new(&p("s2", &[]), EngineConfig { window: Some(0), ..EngineConfig::default() }).is_err());
}

#[test]
fn euler_characteristic_is_binomial_of_chi() {
    // Σ(-1)^i b_i(B_n(M)) is the coefficient of u^n in (1+u)^χ(M).
    type Expected = fn(usize) -> i128;
    let cases: [(&str, Vec<u64>, Expected); 3] = [
        ("s2", vec![], |n| [1, 2, 1].get(n).copied().unwrap_or(0)),
        ("t2", vec![], |n| i128::from(n == 0)),
        ("sigma", vec![2], |n| if n % 2 == 0 { (n as i128) + 1 } else { -(n as i128) - 1 }),
    ];
    for (name, params, expected) in cases {
        let pres = p(name, &params);
        let engine = Engine::new(&pres, EngineConfig::default()).unwrap();
        for n in 1..=6 {
            let report = engine.euler_check(n).unwrap();
            assert!(report.pass, "{report:?}");
            assert_eq!(report.details["binomial_chi_n"].as_i64().unwrap() as i128, expected(n), "{name} n={n}");
        }
    }
}

#[test]
fn vanishing_above_top_degree() {
    for (name, params) in [("s2", vec![]), ("r2", vec![]), ("t2", vec![]), ("sigma_open", vec![1])] {
        let engine = Engine::new(&p(name, &params), EngineConfig::default()).unwrap();
        for n in 1..=5 {
            assert!(engine.vanishing_check(n).unwrap().pass, "{name} n={n}");
        }
    }
    let t2 = full(&p("t2", &[]), 2);
    assert!(t2.iter().all(|(d, b)| *d <= 3 || *b == 0));
}

#[test]
fn structural_checks_on_small_cases() {
    for (name, params) in [("s2", vec![]), ("t2", vec![]), ("cp", vec![2])] {
        let engine = Engine::new(&p(name, &params), EngineConfig::default()).unwrap();
        for n in 2..=4 {
            assert!(engine.reduced_equivalence_check(n).unwrap().pass);
            let acyclic = engine.subcomplex_acyclicity_check(n).unwrap();
            assert!(acyclic.pass, "{acyclic:?}");
            assert!(engine.duality_check(n).unwrap().pass);
            assert!(engine.boundary_squared_check(n).unwrap().pass);
        }
    }
    let s2 = Engine::new(&p("s2", &[]), EngineConfig::default()).unwrap();
    let report = s2.subcomplex_acyclicity_check(2).unwrap();
    assert_eq!(report.details["subcomplex_dims"], serde_json::json!({"3": 1, "4": 1}));
}

#[test]
fn rank_modes_agree() {
    for (name, params) in [("t2", vec![]), ("sigma", vec![2]), ("cp", vec![2])] {
        let pres = p(name, &params);
        for n in 2..=6 {
            let exact = column(&pres, n, EngineConfig::exact()).values();
            for mode in [RankMode::Hybrid, RankMode::Modular] {
                let other = column(&pres, n, EngineConfig { rank_mode: mode, seed: 17, ..EngineConfig::default() });
                assert_eq!(other.values(), exact, "{name} n={n} {mode:?}");
            }
        }
    }
}

#[test]
fn deterministic_under_seed() {
    let pres = p("sigma", &[2]);
    let config = EngineConfig { seed: 5, n_range: 2..=6, ..EngineConfig::default() };
    let a = Engine::new(&pres, config.clone()).unwrap().betti_range().unwrap();
    let b = Engine::new(&pres, EngineConfig { jobs: Some(1), ..config }).unwrap().betti_range().unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
}

#[test]
fn slice_counts() {
    let count = |name: &str, params: &[u64], n: usize| {
        let r = slice_count_check(&p(name, params), n).unwrap();
        assert!(r.pass, "{r:?}");
        r.details["expected"].as_i64().unwrap()
    };
    assert_eq!(count("t2", &[], 5), 3);
    assert_eq!(count("sigma", &[2], 3), 4);
    assert_eq!(count("sigma_open", &[1], 3), 4);
    assert!(slice_count_check(&p("s2", &[]), 3).is_err());
    assert!(slice_count_check(&p("t2", &[]), 4).is_err());
}

#[test]
fn torus_and_sphere_verdicts() {
    let t2 = p("t2", &[]);
    let v = verify_extremal_degree(&t2, 0, 16, &EngineConfig::default().auto_reduced(&t2)).unwrap();
    assert_eq!((v.expected_degree, v.fitted_degree, v.verdict), (Some(1), Some(1), VerdictKind::Pass));

    let s2 = p("s2", &[]);
    let v = verify_extremal_degree(&s2, 0, 10, &EngineConfig::default().auto_reduced(&s2)).unwrap();
    assert_eq!((v.k, v.fitted_degree, v.verdict), (0, None, VerdictKind::Pass));
}
