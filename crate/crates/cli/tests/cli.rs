use std::process::{Command, Output};

use beta_ensembles::distances::single_row_tv_reference;
use serde_json::Value;

fn betaens_args(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_betaens")).args(args).output().expect("spawn betaens")
}

fn betaens(line: &str) -> Output {
    betaens_args(&line.split_whitespace().collect::<Vec<_>>())
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn single_row_tv_matches_quadrature() {
    let v = json(&betaens("distance --metric tv --beta 1 --m 1 --a1 20 --a2 2000 --n 100000 --seed 7"));
    assert_eq!(v["metric"], "tv");
    assert_eq!(v["n"], 100000);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["shards"], 1);
    assert_eq!(v["params"]["a2"], 2000.0);
    let (value, se) = (v["value"].as_f64().unwrap(), v["std_error"].as_f64().unwrap());
    let oracle = single_row_tv_reference(20.0, 2000.0).unwrap();
    assert!((value - oracle).abs() <= 3.0 * se, "{value} ± {se} vs {oracle}");
}

#[test]
fn sample_csv_has_header_and_sorted_rows() {
    let out = betaens("sample --ensemble laguerre --beta 2 --m 3 --a1 5 --n 2 --seed 1");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("draw,eig1,eig2,eig3"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').skip(1).map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 2);
    for r in &rows {
        assert_eq!(r.len(), 3);
        assert!(r.windows(2).all(|w| w[0] >= w[1]), "{r:?}");
    }
    assert!(!text.contains('\r'));
}

#[test]
fn moments_echo_closed_forms() {
    let v = json(&betaens("moments --beta 1 --m 2 --a1 1"));
    assert_eq!(v["var_sum"], 8.0);
    assert_eq!(v["e_sq"], 12.0);
    assert_eq!(v["e_cube"], 56.0);
    assert!(v["monte_carlo"].is_null());
    assert!(v["jacobi_estimates"].is_null());
}

#[test]
fn moments_with_simulation_and_jacobi() {
    let v = json(&betaens("moments --beta 2 --m 3 --a1 10 --a2 1e5 --n 20000 --seed 3"));
    let mc = &v["monte_carlo"];
    for key in ["var_sum", "e_sq", "var_sq", "cov_lin_sq", "e_cube"] {
        let exact = v[key].as_f64().unwrap();
        let (got, se) = (mc[key]["value"].as_f64().unwrap(), mc[key]["std_error"].as_f64().unwrap());
        assert!((got - exact).abs() <= 5.0 * se, "{key}: {got} ± {se} vs {exact}");
    }
    assert!(v["jacobi_estimates"]["s1"].as_f64().unwrap() > 0.0);
}

#[test]
fn validation_failure_exits_two_and_names_constraint() {
    let out = betaens("distance --metric kl --beta 2 --m 5 --a1 3 --a2 100");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("a1 must exceed β(m−1)/2"), "{err}");

    let out = betaens("distance --metric tv --beta 1 --m 2 --a1 5");
    assert_eq!(out.status.code(), Some(2), "missing a2");

    let out = betaens("scan --regime a3 --metric tv --beta 1 --x 1 --a2-min 1e4 --a2-max 1e6");
    assert_eq!(out.status.code(), Some(2), "missing --y");

    let out = betaens("distance --metric tv --beta 1 --m 1 --a1 5 --a2 50 --n 10");
    assert_eq!(out.status.code(), Some(2), "too few samples");

    assert_eq!(betaens("bogus").status.code(), Some(2));
}

#[test]
fn out_flag_writes_file_and_formats_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.csv");
    let base = "distance --metric kl --beta 1 --m 3 --a1 10 --a2 1e4 --n 500 --seed 9";
    let out = betaens(&format!("{base} --format csv --out {}", path.display()));
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "metric,value,std_error,n,seed,shards,beta,m,a1,a2,flagged");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();

    let v = json(&betaens(base));
    assert_eq!(row[1].parse::<f64>().unwrap(), v["value"].as_f64().unwrap());
}

#[test]
fn scan_and_clt_emit_estimates() {
    let v = json(&betaens(
        "scan --regime vanishing --a1 10 --m 10 --metric kl --beta 1 --a2-min 1e4 --a2-max 1e6 --n 500 --seed 2",
    ));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for r in rows {
        for key in ["value", "std_error", "n", "seed", "shards", "params"] {
            assert!(!r[key].is_null(), "{key} missing in {r}");
        }
    }

    let v = json(&betaens("clt --regime a2 --beta 2 --m 20 --a1 200 --a2 4000 --replicates 500 --seed 4"));
    assert_eq!(v["metric"], "clt");
    assert_eq!(v["n"], 500);
    assert!(v["p_value"].as_f64().unwrap() >= 0.0);
}

#[test]
fn shards_change_streams_but_not_schema() {
    let base = "distance --metric tv --beta 1 --m 4 --a1 20 --a2 4000 --n 1000 --seed 5";
    let one = json(&betaens(base));
    let four = json(&betaens(&format!("{base} --shards 4")));
    assert_eq!(four["shards"], 4);
    assert_eq!(four["n"], 1000);
    assert_ne!(one["value"], four["value"]);
    let gap = (one["value"].as_f64().unwrap() - four["value"].as_f64().unwrap()).abs();
    assert!(gap < 6.0 * one["std_error"].as_f64().unwrap());
}

#[test]
fn identical_invocations_are_byte_identical() {
    for line in [
        "sample --ensemble jacobi --beta 1.5 --m 4 --a1 8 --a2 30 --n 5 --seed 11",
        "distance --metric kl --beta 2 --m 6 --a1 30 --a2 3000 --n 300 --seed 1 --shards 3",
    ] {
        let (a, b) = (betaens(line), betaens(line));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}
