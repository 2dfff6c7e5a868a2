use std::process::{Command, Output};

fn repcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repcheck"))
        .args(args)
        .env_remove("REPCHECK_OUTPUT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_text_ends_with_realizable_line() {
    let o = repcheck(&["classify"]);
    assert!(o.status.success());
    assert!(stdout(&o)
        .trim_end()
        .ends_with("realizable: K4_1234, D4_125"));
}

#[test]
fn classify_json_schema() {
    let o = repcheck(&["classify", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let fams = v["families"].as_array().unwrap();
    assert_eq!(fams.len(), 7);
    for f in fams {
        for key in [
            "family",
            "dimension",
            "realizable",
            "witness",
            "obstructions",
            "chi_conj_decomposition",
        ] {
            assert!(f.get(key).is_some(), "missing {key}");
        }
    }
    let d4_125 = fams.iter().find(|f| f["family"] == "D4_125").unwrap();
    assert_eq!(d4_125["witness"]["character_label"], "χE1");
    assert_eq!(d4_125["witness"]["projective_class"], "non-trivial");
    assert_eq!(
        d4_125["chi_conj_decomposition"]["multiplicities"],
        serde_json::json!([1, 1, 0, 0, 1])
    );
    let k4 = &fams[0];
    assert_eq!(k4["witness"]["character_label"], "χ5 of D4");
    assert!(k4["witness"]["alt_label"]
        .as_str()
        .unwrap()
        .contains("Pauli"));
    let z4 = &fams[1];
    assert_eq!(z4["witness"], serde_json::Value::Null);
    assert_eq!(z4["obstructions"][0]["kind"], "AbelianFixedProjectors");
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["classify", "--json"][..],
        &["simulate-swap", "--rounds", "6", "--seed", "42", "--json"],
        &["show-table", "D8", "--json"],
    ] {
        assert_eq!(repcheck(args).stdout, repcheck(args).stdout, "{args:?}");
    }
}

#[test]
fn env_selects_json() {
    let o = Command::new(env!("CARGO_BIN_EXE_repcheck"))
        .args(["show-table", "K4"])
        .env("REPCHECK_OUTPUT", "json")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["group"], "K4");
}

#[test]
fn show_table_d4() {
    let o = repcheck(&["show-table", "D4"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with('χ')).collect();
    assert_eq!(rows.len(), 5);
    let chi5: Vec<&str> = rows[4].split_whitespace().collect();
    assert_eq!(chi5, ["χ5", "2", "0", "-2", "0", "0"]);
}

#[test]
fn show_group_json() {
    let o = repcheck(&["show-group", "pauli1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 16);
    assert_eq!(v["classes"].as_array().unwrap().len(), 10);
}

#[test]
fn swap_single_round() {
    let o = repcheck(&["simulate-swap", "--rounds", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let outs = v["outcomes"].as_array().unwrap();
    assert_eq!(outs.len(), 8);
    for x in outs {
        assert_eq!(
            x["probability"],
            serde_json::json!({"num": "1", "den": "8"})
        );
        assert_eq!(x["chsh"]["coeffs"][1]["num"], "2");
        assert_eq!(x["chsh"]["coeffs"][3]["num"], "-2");
    }
}

#[test]
fn teleport_custom_state() {
    let o = repcheck(&["simulate-teleport", "--state", "1/3,0;0,-2", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for x in v["outcomes"].as_array().unwrap() {
        assert_eq!(x["probability"]["den"], "4");
        assert_eq!(x["restored"], true);
    }
}

#[test]
fn verify_all_passes() {
    let o = repcheck(&["verify-all"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn misuse_exits_2() {
    assert_eq!(
        repcheck(&["simulate-teleport", "--rounds", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        repcheck(&["simulate-swap", "--rounds", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        repcheck(&["simulate-teleport", "--state", "1,0;1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(repcheck(&[]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("repcheck-out-{}.json", std::process::id()));
    let o = repcheck(&["classify", "--json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        written.as_bytes(),
        repcheck(&["classify", "--json"]).stdout.as_slice()
    );
    let _ = std::fs::remove_file(path);
}
