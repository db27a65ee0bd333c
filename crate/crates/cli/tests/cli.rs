use std::process::{Command, Output};

fn orbifold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbifold"))
        .args(args)
        .env_remove("ORBIFOLD_MAX_DEGREE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn verify_exit_codes() {
    assert_eq!(
        code(&orbifold(&[
            "verify",
            "--n",
            "5",
            "--map",
            "Ltri(a,b)+Cpenta(a,b)+Ctri(c)"
        ])),
        0
    );
    let fail = orbifold(&["verify", "--n", "5", "--map", "L1(a1)+Ltri(a,b)"]);
    assert_eq!(code(&fail), 1);
    let text = stdout(&fail);
    assert!(
        text.contains("condition 3 (phi(kappa_L, kappa_L) = 2 psi(kappa_C)): FAIL"),
        "{text}"
    );
    assert!(text.contains("witness: g=(1 2 3) triple=(e1,e2,e3)"), "{text}");
    assert_eq!(code(&orbifold(&["verify", "--n", "3", "--map", ""])), 0);
}

#[test]
fn exhaustive_agrees_with_representatives() {
    for map in ["Ltri(a,b)+Ctri(c)", "L1(1)+Ctri(c)"] {
        let reps = orbifold(&["verify", "--n", "4", "--map", map]);
        let all = orbifold(&["verify", "--n", "4", "--map", map, "--exhaustive"]);
        assert_eq!(code(&reps), code(&all), "{map}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "--n", "4", "--map", "Lfoo(a)"],
        vec!["verify", "--n", "4", "--map", "Ltri(a)"],
        vec!["verify", "--n", "4", "--subst", "z=1"],
        vec!["tables", "--case", "nope"],
        vec!["present", "--n", "7"],
        vec!["verify", "--n", "9", "--map", ""],
        vec!["verify", "--n", "4", "--format", "csv"],
        vec!["pbw", "--n", "3", "--map", "Ctri(c)", "--census"],
        vec!["frobnicate"],
    ] {
        let o = orbifold(&args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn degree_bound_from_environment() {
    let run = |bound: &str| {
        Command::new(env!("CARGO_BIN_EXE_orbifold"))
            .args(["cohomology", "--n", "5"])
            .env("ORBIFOLD_MAX_DEGREE", bound)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("4")), 2);
    assert_eq!(code(&run("5")), 0);
    assert_eq!(code(&run("many")), 2);
}

#[test]
fn seven_cycle_table() {
    let o = orbifold(&["tables", "--case", "7cycle"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("| x,y | e1,e2,e3 |"), "{text}");
    let sums = text.lines().find(|l| l.starts_with("| column sum")).unwrap();
    assert_eq!(sums, "| column sum | 0 | 0 | 0 | 0 | 0 |");
    let data_rows = text.lines().filter(|l| l.starts_with("| (")).count();
    assert_eq!(data_rows, 7);
    assert!(text.contains("2 (a-b)^3"), "{text}");
}

#[test]
fn two_two_table_entries() {
    let o = orbifold(&["tables", "--case", "2-2", "--json"]);
    assert_eq!(code(&o), 0);
    let tables: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let t = &tables[0];
    assert_eq!(t["rows"].as_array().unwrap().len(), 8);
    let cells: Vec<String> = t["cells"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r.as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()))
        .collect();
    assert_eq!(cells.len(), 24);
    let nonzero: Vec<&String> = cells.iter().filter(|c| *c != "0").collect();
    assert!(!nonzero.is_empty());
    for c in nonzero {
        assert!(c == "4 (a-b)^3" || c == "-4 (a-b)^3", "{c}");
    }
}

#[test]
fn tables_csv() {
    let o = orbifold(&["tables", "--case", "3cycle", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("case,alpha,x,y,triple1,value1"));
    assert!(text.contains("column sum"));
}

#[test]
fn present_examples() {
    let three = stdout(&orbifold(&["present", "--n", "3"]));
    assert!(
        three.contains("kappa(e1,e2) = kappa(e2,e3) = kappa(e3,e1) = (a*(e1+e2+e3) + c) ⊗ ((1 2 3) - (1 3 2))"),
        "{three}"
    );
    let four = stdout(&orbifold(&["present", "--n", "4"]));
    assert!(
        four.contains("(a*(e1+e2+e4) + b*e3 + c) ⊗ ((1 2 4) - (1 4 2))"),
        "{four}"
    );
    let five = stdout(&orbifold(&["present", "--n", "5"]));
    for line in [
        "  - (a-b)^2 ⊗ ((1 2 3 4 5) + (1 2 3 5 4)",
        "  + (a-b)^2 ⊗ (",
        "  - 2 (a-b)^2 ⊗ (",
        "  + 2 (a-b)^2 ⊗ (",
    ] {
        assert!(five.contains(line), "{line:?} in\n{five}");
    }
}

#[test]
fn cohomology_summary() {
    let o = orbifold(&["cohomology", "--n", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("identity: 1\n3-cycle: 3\nothers: 0"));
    let o = orbifold(&["cohomology", "--n", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let totals: Vec<u64> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["linear"].as_u64().unwrap() + c["constant"].as_u64().unwrap())
        .collect();
    assert_eq!(totals, vec![1, 0, 2]);
}

#[test]
fn classify_two_branches() {
    let o = orbifold(&["classify", "--n", "4", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let branches = v["classification"]["branches"].as_array().unwrap();
    let relations: Vec<Vec<String>> = branches
        .iter()
        .map(|b| {
            b["relations"]
                .as_array()
                .unwrap()
                .iter()
                .map(|r| r.as_str().unwrap().to_string())
                .collect()
        })
        .collect();
    assert_eq!(relations.len(), 2);
    assert!(relations.contains(&vec!["a1 = 0".to_string()]));
    assert!(relations.contains(&vec!["a = 0".into(), "b = 0".into(), "c = 0".into()]));
    assert!(branches.iter().all(|b| b["verified"] == true));
}

#[test]
fn pbw_examples() {
    assert_eq!(code(&orbifold(&["pbw", "--n", "3", "--map", "Ltri(1,0)+Ctri(2)"])), 0);
    let o = orbifold(&["pbw", "--n", "4", "--map", "L1(1)+Ltri(1,0)"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("ambiguity at"));
    let census = orbifold(&[
        "pbw",
        "--n",
        "3",
        "--map",
        "Ltri(a,b)+Ctri(c)",
        "--subst",
        "a=1,b=0,c=2",
        "--census",
        "1",
    ]);
    assert_eq!(code(&census), 0);
    assert!(stdout(&census).contains("| 1 | 24 | 24 |"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = orbifold(&[
        "verify",
        "--n",
        "4",
        "--map",
        "Ctri(c)",
        "--json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["report"]["passed"], true);
    assert_eq!(v["map"], "Ctri(c)");
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--n", "5", "--map", "L1(a1)+Ltri(a,b)+Ctri(c)", "--json"];
    let first = orbifold(&args);
    let second = orbifold(&args);
    let sequential = orbifold(&[&args[..], &["--sequential"]].concat());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, sequential.stdout);
    assert_eq!(code(&first), code(&second));
}
