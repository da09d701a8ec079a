use std::path::Path;
use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_advice-lab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn bounds_rows() {
    let o = lab(&["bounds", "--formula", "Bc", "--c", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "formula_id,params,value_bits\nBc,\"{\"\"c\"\":1.0}\",1\n");

    let o = lab(&["bounds", "--formula", "anti", "--sigma", "2", "--c", "2", "--n", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sigma/(sigma-1)"));

    let o = lab(&["bounds", "--formula", "thm8", "--c", "2", "--kappa1", "1", "--n", "24000", "--format", "json"]);
    assert!(o.status.success());
    let rows = json(&o);
    assert_eq!(rows[0]["pieces"]["sigma"], 24.0);
    assert_eq!(rows[0]["pieces"]["nprime"], 1000.0);
}

#[test]
fn bounds_errors_do_not_stop_other_rows() {
    let o = lab(&["bounds", "--formula", "Bc,anti,maxasg", "--c", "3", "--sigma", "2", "--n", "100"]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("\nBc,") && out.contains("\nmaxasg,"));
    assert!(!out.contains("anti-sgkh"));
}

#[test]
fn c_table_is_accepted() {
    let o = lab(&["bounds", "--formula", "maxasg", "--c", "10:2,20:3", "--n", "20"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("\"\"c\"\":3.0"));
}

#[test]
fn construct_verify_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("anti.txt");
    let o = lab(&["--seed", "7", "construct", "--kind", "thm10", "--k", "2", "--n", "12", "--out", p(&inst)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let side = dir.path().join("anti.sidecar.json");
    assert!(side.exists());
    let o = lab(&["verify", "--instance", p(&inst)]);
    assert!(o.status.success());
    for name in ["planted_independent", "layers_induce_forbidden", "spread_sets_violate", "large_sets_violate"] {
        assert!(stdout(&o).contains(&format!("ok   {name}")), "{name}");
    }

    let text = std::fs::read_to_string(&inst).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let last = lines.len() - 1;
    lines[last] = if lines[last].split_whitespace().any(|t| t == "1") {
        lines[last].split_whitespace().filter(|&t| t != "1").collect::<Vec<_>>().join(" ")
    } else {
        format!("1 {}", lines[last]).trim().to_string()
    };
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, lines.join("\n") + "\n").unwrap();
    let o = lab(&["verify", "--instance", p(&bad), "--sidecar", p(&side)]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn every_kind_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, seed) in [("marked", "1"), ("layered", "3"), ("clique-layers", "5"), ("ramsey", "2")] {
        let inst = dir.path().join(format!("{kind}.txt"));
        let o = lab(&["--seed", seed, "construct", "--kind", kind, "--out", p(&inst)]);
        assert!(o.status.success(), "{kind}: {}", String::from_utf8_lossy(&o.stderr));
        let o = lab(&["verify", "--instance", p(&inst)]);
        assert!(o.status.success(), "{kind}: {}", stdout(&o));
    }
}

#[test]
fn construction_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for out in [&a, &b] {
        assert!(lab(&["--seed", "3", "construct", "--kind", "thm8", "--out", p(out)]).status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(std::fs::read(a.with_extension("sidecar.json")).unwrap(), std::fs::read(b.with_extension("sidecar.json")).unwrap());
}

#[test]
fn simulate_transcripts() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("c5.txt");
    std::fs::write(&inst, "5\n\n1\n2\n3\n1 4\n").unwrap();
    let o = lab(&["simulate", "--instance", p(&inst), "--alg", "reject-all"]);
    assert!(o.status.success());
    let t = json(&o);
    assert_eq!(t["objective"], 0);
    assert_eq!(t["steps"].as_array().unwrap().len(), 5);

    let o = lab(&["simulate", "--instance", p(&inst), "--alg", "bitmap", "--oracle-advice"]);
    let t = json(&o);
    assert_eq!((t["objective"].as_u64(), t["bits_read"].as_u64()), (Some(2), Some(5)));

    let run = || stdout(&lab(&["--seed", "11", "simulate", "--instance", p(&inst), "--alg", "seeded-preemptive"]));
    assert_eq!(run(), run());

    let tri = dir.path().join("tri.txt");
    std::fs::write(&tri, "6\n\n1\n1 2\n\n\n\n").unwrap();
    let o = lab(&["simulate", "--instance", p(&tri), "--alg", "obligatory", "--property", "contains-cycle", "--oracle-advice"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["objective"], 3);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("bad.txt");
    std::fs::write(&inst, "3\n\n1\n7\n").unwrap();
    let o = lab(&["simulate", "--instance", p(&inst), "--alg", "greedy"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn oracle_results() {
    let o = lab(&["oracle", "--game", "maxasg-known", "--n", "2", "--c", "1"]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!((r["m"].as_u64(), r["bits"].as_u64()), (Some(4), Some(2)));
    assert_eq!(r["assignment"].as_array().unwrap().len(), 4);
    assert_eq!(r["witnesses"].as_array().unwrap().len(), 4);

    let o = lab(&["oracle", "--game", "maxasg-known", "--n", "9"]);
    assert_eq!(o.status.code(), Some(4));

    let o = Command::new(env!("CARGO_BIN_EXE_advice-lab"))
        .args(["oracle", "--game", "sgkh", "--sigma", "3", "--n", "3", "--c", "3/2"])
        .env("ADVICE_LAB_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert!(json(&o)["m"].as_u64().is_some());
}
