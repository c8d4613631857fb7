use assert_cmd::Command;
use hardy_cli::{OutputRecord, Payload};
use serde_json::Value;

const SMALL_VERIFY: &[&str] = &[
    "verify",
    "--trials",
    "200",
    "--max-support",
    "200",
    "--identity-trials",
    "50",
    "--increment-trials",
    "50",
    "--residual-n",
    "1000",
    "--eigen-sizes",
    "1,10,100",
    "--cutoff-lengths",
    "10,100",
];

fn hardy() -> Command {
    Command::cargo_bin("hardy").unwrap()
}

fn stdout_of(args: &[&str], code: i32) -> String {
    let out = hardy().args(args).assert().code(code).get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

fn json_record(args: &[&str], code: i32) -> (String, OutputRecord) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let text = stdout_of(&all, code);
    let record = OutputRecord::from_json(&text).unwrap();
    (text, record)
}

fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(Result::unwrap)
        .collect()
}

#[test]
fn coeffs_golden_csv() {
    assert_eq!(
        stdout_of(&["coeffs", "--k-max", "3"], 0),
        include_str!("golden/coeffs_k3.csv")
    );
}

#[test]
fn coeffs_golden_json() {
    assert_eq!(
        stdout_of(&["coeffs", "--k-max", "2", "--format", "json"], 0),
        include_str!("golden/coeffs_k2.json")
    );
}

#[test]
fn weights_golden_csv() {
    assert_eq!(
        stdout_of(&["weights", "--n-max", "3", "--k-max", "3"], 0),
        include_str!("golden/weights_n3_k3.csv")
    );
}

#[test]
fn coeffs_single_term() {
    let (_, record) = json_record(&["coeffs", "--k-max", "1"], 0);
    let Payload::Coeffs(rows) = record.payload else {
        panic!("wrong payload")
    };
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].rational, "1/4");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["coeffs", "--k-max", "0"][..],
        &["weights", "--n-max", "0"],
        &["weights", "--n-max", "3", "--k-max", "0"],
        &["verify", "--trials", "0"],
        &["eigen", "--n-list", "1,0"],
        &["eigen", "--n-list", "1", "--tol", "0"],
        &["eigen", "--n-list", "1", "--tol=-1e-3"],
        &["eigen", "--n-list", "1", "--weight", "quartic"],
        &["eigen", "--n-list", "1", "--weight", "inflated:-2"],
        &["residual", "--n-max", "0"],
        &["weights", "--n-max", "3", "--format", "xml"],
        &["verify", "--cutoff-lengths", "1"],
        &["frobnicate"],
    ] {
        hardy().args(args).assert().code(2);
    }
}

#[test]
fn boundary_row() {
    let (_, record) = json_record(&["weights", "--n-max", "1"], 0);
    let Payload::Weights(rows) = record.payload else {
        panic!("wrong payload")
    };
    assert_eq!(rows.len(), 1);
    let row = &rows[0];
    assert!((row.w_closed - (2.0 - std::f64::consts::SQRT_2)).abs() <= 1e-14);
    assert!((row.ratio - 2.343_145_750_507_62).abs() <= 1e-12);
    assert_eq!(row.w_series, None);
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        &["weights", "--n-max", "50", "--precision", "25"][..],
        &["coeffs", "--k-max", "40"],
        &["eigen", "--n-list", "1,7,30", "--weight", "inflated:0.05"],
        &["residual", "--n-max", "500", "--precision", "20"],
        SMALL_VERIFY,
    ] {
        let (text, record) = json_record(args, 0);
        assert_eq!(record.to_json(), text, "{args:?}");
        assert_eq!(record.schema, hardy_cli::SCHEMA);
    }
}

#[test]
fn weights_csv_and_json_agree() {
    let args = ["weights", "--n-max", "40", "--k-max", "7", "--precision", "20"];
    let csv = csv_rows(&stdout_of(&args, 0));
    let (_, record) = json_record(&args, 0);
    let Payload::Weights(rows) = record.payload else {
        panic!("wrong payload")
    };
    assert_eq!(csv.len(), rows.len());
    let num = |s: &str| -> Option<f64> { (!s.is_empty()).then(|| s.parse().unwrap()) };
    for (c, r) in csv.iter().zip(&rows) {
        assert_eq!(c[0].parse::<u64>().unwrap(), r.n);
        assert_eq!(num(&c[1]), Some(r.w_closed));
        assert_eq!(num(&c[2]), r.w_series);
        assert_eq!(num(&c[3]), Some(r.w_classical));
        assert_eq!(num(&c[4]), Some(r.ratio));
        assert_eq!(Some(&c[5]), r.w_extended.as_deref());
        assert_eq!(num(&c[6]), r.extended_rel_err);
    }
}

fn lookup<'a>(value: &'a Value, path: &str) -> &'a Value {
    path.split('.').fold(value, |v, key| match v {
        Value::Array(items) => &items[key.parse::<usize>().unwrap()],
        _ => &v[key],
    })
}

#[test]
fn verify_csv_and_json_agree() {
    let csv = csv_rows(&stdout_of(SMALL_VERIFY, 0));
    let (text, _) = json_record(SMALL_VERIFY, 0);
    let json: Value = serde_json::from_str(&text).unwrap();
    let report = &json["payload"]["data"];
    let checks = report["checks"].as_array().unwrap();
    let mut seen_checks = 0;
    let mut seen_fields = 0;
    for row in &csv {
        match &row[0] {
            "check" => {
                let check = &checks[seen_checks];
                assert_eq!(check["name"].as_str().unwrap(), &row[1]);
                assert_eq!(check["value"].as_f64().unwrap(), row[2].parse::<f64>().unwrap());
                assert_eq!(check["threshold"].as_f64().unwrap(), row[4].parse::<f64>().unwrap());
                assert_eq!(check["passed"].as_bool().unwrap().to_string(), &row[5]);
                seen_checks += 1;
            }
            "field" => {
                let value = lookup(report, &row[1]);
                match value {
                    Value::Number(n) => assert_eq!(n.as_f64().unwrap(), row[2].parse::<f64>().unwrap(), "{}", &row[1]),
                    Value::Bool(b) => assert_eq!(b.to_string(), &row[2]),
                    Value::Null => assert_eq!(&row[2], ""),
                    other => panic!("unexpected leaf {other}"),
                }
                seen_fields += 1;
            }
            other => panic!("unexpected section {other}"),
        }
    }
    assert_eq!(seen_checks, checks.len());
    assert!(seen_fields > 20);
}

#[test]
fn verify_is_deterministic_and_passes() {
    let first = stdout_of(SMALL_VERIFY, 0);
    let second = stdout_of(SMALL_VERIFY, 0);
    assert_eq!(first, second);
    let (_, record) = json_record(SMALL_VERIFY, 0);
    assert_eq!(record.seed, Some(42));
    let Payload::Verify(report) = record.payload else {
        panic!("wrong payload")
    };
    assert!(report.passed);
    assert_eq!(report.gap.trials, 200);
}

#[test]
fn seed_changes_the_report() {
    let mut other = SMALL_VERIFY.to_vec();
    other.extend(["--seed", "43"]);
    assert_ne!(stdout_of(SMALL_VERIFY, 0), stdout_of(&other, 0));
}

#[test]
fn impossible_tolerance_exits_one_with_failures_in_payload() {
    let mut args = SMALL_VERIFY.to_vec();
    args.extend(["--tol", "1e-30"]);
    let (_, record) = json_record(&args, 1);
    let Payload::Verify(report) = record.payload else {
        panic!("wrong payload")
    };
    assert!(!report.passed);
    assert!(report.failed_checks().any(|c| c.name == "green_formula"));
    assert_eq!(record.tolerances["identity"], 1e-30);
    hardy().args(&args).assert().code(1).stderr(predicates::str::contains("failed: green_formula"));
}

#[test]
fn eigen_one_by_one() {
    let (_, record) = json_record(&["eigen", "--n-list", "1", "--tol", "1e-13"], 0);
    let Payload::Eigen(payload) = record.payload else {
        panic!("wrong payload")
    };
    assert!((payload.rows[0].lambda_min - (2.0 + std::f64::consts::SQRT_2)).abs() <= 1e-12);
}

#[test]
fn eigen_scan_nonincreasing_above_one() {
    let (_, record) = json_record(&["eigen", "--n-list", "1000,1,100,10"], 0);
    let Payload::Eigen(payload) = record.payload else {
        panic!("wrong payload")
    };
    let sizes: Vec<u64> = payload.rows.iter().map(|r| r.size).collect();
    assert_eq!(sizes, [1, 10, 100, 1000]);
    assert!(payload.rows.windows(2).all(|p| p[1].lambda_min <= p[0].lambda_min));
    assert!(payload.rows.iter().all(|r| r.lambda_min >= 1.0 && !r.below_one));
    assert!(payload.flags_are_hard && payload.passed);
}

#[test]
fn classical_and_inflated_scans_are_informational() {
    for weight in ["classical", "inflated:0.05", "inflated:3"] {
        let (_, record) = json_record(&["eigen", "--n-list", "1,10,100", "--weight", weight], 0);
        let Payload::Eigen(payload) = record.payload else {
            panic!("wrong payload")
        };
        assert!(!payload.flags_are_hard);
        assert!(payload.passed);
    }
    // a large inflation pushes the floor below one, flagged but not fatal
    let (_, record) = json_record(&["eigen", "--n-list", "1,10,100", "--weight", "inflated:3"], 0);
    let Payload::Eigen(payload) = record.payload else {
        panic!("wrong payload")
    };
    assert!(payload.rows.iter().any(|r| r.below_one));
}

#[test]
fn residual_wrapper() {
    let (_, record) = json_record(&["residual", "--n-max", "2000", "--precision", "30"], 0);
    let Payload::Residual(payload) = record.payload else {
        panic!("wrong payload")
    };
    assert!(payload.max_residual <= 1e-12);
    assert!(payload.extended_residual.unwrap() <= 1e-25);
    assert_eq!(payload.passed, Some(true));

    let (_, record) = json_record(&["residual", "--n-max", "10", "--weight", "classical"], 0);
    let Payload::Residual(payload) = record.payload else {
        panic!("wrong payload")
    };
    assert!(payload.max_residual > 1e-3);
    assert_eq!(payload.passed, None);

    hardy()
        .args(["residual", "--n-max", "1000", "--tol", "1e-40"])
        .assert()
        .code(1);
}

#[test]
fn out_flag_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("weights.json");
    let args = ["weights", "--n-max", "5", "--format", "json"];
    let stdout = stdout_of(&args, 0);
    hardy()
        .args(args)
        .arg("--out")
        .arg(&path)
        .assert()
        .code(0)
        .stdout("");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    hardy()
        .args(args)
        .arg("--out")
        .arg(dir.path().join("missing").join("x.json"))
        .assert()
        .code(2);
}

#[test]
fn csv_is_plain_ascii_with_header() {
    let text = stdout_of(&["eigen", "--n-list", "1,2"], 0);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("weight,size,lambda_min,monotonicity_violation,below_one")
    );
    assert!(text.is_ascii());
    assert_eq!(text.lines().count(), 3);
}
