mod common;

use std::collections::BTreeMap;

use common::*;
use shotgun_core::reads::{oracle_identifiable, DEFAULT_ORACLE_BUDGET};
use shotgun_core::simulate::{
    run_trials, sweep, with_param, write_results, Family, Format, Mode, ScenarioConfig, SweepParam, Verdict,
    CSV_COLUMNS,
};
use shotgun_core::{Error, Instance, ProbVector};

fn custom(centers: &[i64], read: &[i64]) -> Family {
    let g = z1();
    let fmt = |xs: &[i64]| xs.iter().map(|&x| g.format(&g.lattice_point(&[x]).unwrap())).collect();
    Family::Custom { group: "Z^1".parse().unwrap(), generators: None, centers: fmt(centers), read_shape: fmt(read) }
}

#[test]
fn oracle_frequency_matches_exact_weighting() {
    let g = z1();
    let mut cfg = ScenarioConfig::uniform(custom(&[0, 1, 2, 3], &[0, 1, 2]), 2, 4000, 5);
    cfg.p = vec!["1/3".into(), "2/3".into()];
    cfg.mode = Mode::Oracle;

    let inst = Instance::new(g.clone(), interval(&g, 0, 3), interval(&g, 0, 2), 2).unwrap();
    let p = ProbVector::parse(&cfg.p).unwrap();
    let mut exact = 0.0;
    for w in all_patterns(&inst) {
        if oracle_identifiable(&inst, &w, DEFAULT_ORACLE_BUDGET).unwrap().is_identifiable() {
            exact += w.symbols().iter().map(|&s| p.weights()[s as usize]).product::<f64>();
        }
    }

    let res = run_trials(&cfg, 2).unwrap();
    assert_eq!(res.row.n_unknown, 0);
    let n = res.row.trials as f64;
    let freq = res.row.n_cert_id as f64 / n;
    let sigma = (exact * (1.0 - exact) / n).sqrt();
    assert!((freq - exact).abs() <= 3.0 * sigma, "frequency {freq} vs exact {exact}");
}

#[test]
fn oracle_mode_respects_budget() {
    let mut cfg = ScenarioConfig::uniform(custom(&(0..30).collect::<Vec<_>>(), &[0, 1]), 2, 10, 1);
    cfg.mode = Mode::Oracle;
    assert!(matches!(run_trials(&cfg, 1), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn results_do_not_depend_on_threads() {
    let family = Family::Ex1 { d: 1, r: 14, ell: 1, m: None, total: Some(300) };
    let cfg = ScenarioConfig::uniform(family, 2, 200, 42);
    let a = run_trials(&cfg, 1).unwrap();
    let b = run_trials(&cfg, 3).unwrap();
    assert_eq!(a.verdicts, b.verdicts);
    let mut ra = a.row.clone();
    let mut rb = b.row.clone();
    ra.wall_ms = 0;
    rb.wall_ms = 0;
    assert_eq!(ra, rb);
    let c = run_trials(&ScenarioConfig { seed: 43, ..cfg }, 1).unwrap();
    assert_ne!(a.verdicts, c.verdicts);
}

#[test]
fn certificates_never_conflict() {
    // run_trials turns a double certification into an error, so success here
    // is the assertion.
    let families = [
        Family::Ex1 { d: 1, r: 6, ell: 2, m: Some(40), total: None },
        Family::Ex1 { d: 2, r: 3, ell: 1, m: Some(12), total: None },
        Family::Ex3 { group: "F_2".parse().unwrap(), generators: None, big_r: 4, r: 1 },
        Family::Ex3 { group: "H3".parse().unwrap(), generators: None, big_r: 3, r: 1 },
        custom(&[0, 1, 2, 3, 4, 5], &[0, 1, 2]),
    ];
    for (i, f) in families.into_iter().enumerate() {
        for q in [2, 3] {
            let res = run_trials(&ScenarioConfig::uniform(f.clone(), q, 300, i as u64), 0).unwrap();
            assert_eq!(res.row.n_cert_id + res.row.n_cert_nonid + res.row.n_unknown, 300);
        }
    }
    let mut cfg = ScenarioConfig::uniform(custom(&[0, 1, 2, 3, 4], &[0, 1]), 2, 500, 9);
    cfg.mode = Mode::Oracle;
    run_trials(&cfg, 0).unwrap();
}

#[test]
fn csv_and_json_output() {
    let family = Family::Ex1 { d: 1, r: 10, ell: 1, m: None, total: Some(200) };
    let cfg = ScenarioConfig::uniform(family, 2, 50, 3);
    let res = run_trials(&cfg, 1).unwrap();

    let mut buf = Vec::new();
    write_results(std::slice::from_ref(&res), Format::Csv, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], CSV_COLUMNS.join(","));
    assert_eq!(lines[1].split(',').count(), CSV_COLUMNS.len());

    let mut buf = Vec::new();
    write_results(std::slice::from_ref(&res), Format::Json, &mut buf).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
    let run = &v["runs"][0];
    let back: ScenarioConfig = serde_json::from_value(run["config"].clone()).unwrap();
    assert_eq!(back, cfg);
    assert_eq!(ScenarioConfig::from_json(&back.to_json()).unwrap(), back);
    assert_eq!(run["n_unknown"].as_u64(), Some(res.row.n_unknown));
}

#[test]
fn sweep_rows_and_single_value() {
    let family = Family::Ex1 { d: 1, r: 8, ell: 1, m: None, total: Some(200) };
    let cfg = ScenarioConfig::uniform(family, 2, 20, 1);
    assert_eq!(sweep(&cfg, SweepParam::ReadSize, &[12], 1).unwrap().len(), 1);
    let rows = sweep(&cfg, SweepParam::ReadSize, &[6, 30], 1).unwrap();
    assert_eq!(rows.iter().map(|r| r.row.params.r).collect::<Vec<_>>(), vec![Some(6), Some(30)]);
    assert!(with_param(&cfg, SweepParam::Alphabet, 1).and_then(|c| c.prob_vector()).is_err());
}

#[test]
fn larger_alphabet_lowers_the_threshold() {
    // R = 1000: the threshold read length is about 19.9 for q = 2 and 10.0 for q = 4.
    let family = Family::Ex1 { d: 1, r: 16, ell: 1, m: None, total: Some(1000) };
    let cfg = ScenarioConfig::uniform(family, 2, 200, 8);
    let rows = sweep(&cfg, SweepParam::Alphabet, &[2, 4], 0).unwrap();
    let frac: BTreeMap<usize, f64> =
        rows.iter().map(|r| (r.config.alphabet, r.row.n_cert_id as f64 / r.row.trials as f64)).collect();
    assert!(frac[&2] < 0.2, "{frac:?}");
    assert!(frac[&4] > 0.8, "{frac:?}");
    let ratio = rows[0].row.lambda_c / rows[1].row.lambda_c;
    assert!((ratio - 2.0).abs() < 1e-12, "lambda_c ratio {ratio}");
    assert!(rows.iter().all(|r| r.verdicts.iter().all(|v| *v != Verdict::OracleIdentifiable)));
}
